//! Enumerate the isomorphism classes of Curtis-Tits structures over a
//! diagram: one class per homomorphism from the fundamental group into
//! Z_2 x Aut(k).
//!
//! Run with: cargo run --example classify_diagrams

use curtis_tits::classify::enumerate_classes;
use curtis_tits::diagram::{spanning_structure, Diagram};
use curtis_tits::field::FieldCtx;

fn theta() -> Diagram {
    let mut d = Diagram::new();
    for l in ["u", "v", "p", "q", "r1", "r2"] {
        d.add_vertex(l).unwrap();
    }
    for (a, b) in [
        ("u", "p"),
        ("p", "v"),
        ("u", "q"),
        ("q", "v"),
        ("u", "r1"),
        ("r1", "r2"),
        ("r2", "v"),
    ] {
        d.add_edge(a, b).unwrap();
    }
    d
}

fn main() {
    for (d, field, name) in [
        (Diagram::cycle(&["a", "b", "c", "d"]), "2^2", "C4"),
        (Diagram::cycle(&["a", "b", "c", "d"]), "2^3", "C4"),
        (Diagram::path(&["a", "b", "c", "d"]), "2^2", "A4"),
        (theta(), "2^2", "theta"),
    ] {
        let ctx = FieldCtx::parse(field).unwrap();
        let sd = spanning_structure(&d, 0).unwrap();
        let classes = enumerate_classes(&d, &ctx, &sd).unwrap();
        let orientable = classes.iter().filter(|c| c.orientable).count();
        println!(
            "{name} over GF({field}): rank {} fundamental group, {} classes, {} orientable",
            sd.betti(),
            classes.len(),
            orientable
        );
        for c in &classes {
            println!(
                "  class {:6}  orientable={}",
                c.key(&sd),
                c.orientable
            );
        }
    }
}
