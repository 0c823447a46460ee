//! Dump the machine-readable presentation of an amalgam and round-trip it
//! through the parser and verifier.
//!
//! Run with: cargo run --example emit_presentation

use curtis_tits::amalgam::build_amalgam;
use curtis_tits::diagram::{Diagram, DirectedEdge};
use curtis_tits::field::FieldCtx;
use curtis_tits::path_group::{ACoord, Pointing};
use curtis_tits::presentation::{emit_presentation, parse_presentation, verify_parsed};

fn main() {
    let ctx = FieldCtx::new(2, 2).unwrap();
    let d = Diagram::path(&["a", "b"]);
    let a = build_amalgam(&d, &Pointing::trivial(), &ctx).unwrap();
    println!("{}", emit_presentation(&a));

    // round-trip a twisted amalgam on the 4-cycle
    let d = Diagram::cycle(&["a", "b", "c", "d"]);
    let mut delta = Pointing::trivial();
    delta.set(DirectedEdge::new(3, 0), ACoord::new(true, 0));
    let a = build_amalgam(&d, &delta, &ctx).unwrap();
    let dump = emit_presentation(&a);
    let parsed = parse_presentation(&dump).unwrap();
    println!(
        "twisted C4 dump: {} lines, re-verified: {}",
        dump.lines().count(),
        verify_parsed(&parsed).unwrap()
    );
}
