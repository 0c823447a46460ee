//! The path-group engine: normal forms, return elimination, homotopy
//! witnesses and the matrix certification of the coordinate identification.
//!
//! Run with: cargo run --example path_groups

use curtis_tits::diagram::{spanning_structure, Diagram, DirectedEdge};
use curtis_tits::field::FieldCtx;
use curtis_tits::path_group::{
    alpha_matrix_check, homotopy_witness, normal_form, normal_form_by_relations, reduce_returns,
    ACoord, GroupPath, TwistGroup,
};

fn main() {
    let tg = TwistGroup::new(2);
    let d = Diagram::cycle(&["a", "b", "c", "d"]);
    let sd = spanning_structure(&d, 0).unwrap();

    println!("=== matrix certification of the coordinate layer ===");
    for field in ["2^2", "2^3", "5"] {
        let ctx = FieldCtx::parse(field).unwrap();
        println!("alpha identification sound over GF({field}): {}", alpha_matrix_check(&ctx));
    }

    println!("\n=== normal forms ===");
    let mut p = GroupPath::at(0, ACoord::new(true, 0));
    for (k, &e) in sd.cycles[0].iter().enumerate() {
        p.push(e, ACoord::new(false, k % 2));
    }
    let nf = normal_form(&tg, &p);
    println!(
        "closed-form letter: (eps={}, r={}), edge word length {}",
        nf.g.eps as u8,
        nf.g.r,
        nf.edgeword.len()
    );
    let nf2 = normal_form_by_relations(&tg, &p);
    println!("step-by-step relation evaluation agrees: {}", nf == nf2);

    println!("\n=== return elimination ===");
    let e = DirectedEdge::new(0, 1);
    let f = DirectedEdge::new(1, 2);
    let mut q = GroupPath::at(0, ACoord::new(true, 1));
    q.push(e, ACoord::new(false, 1));
    q.push(f, ACoord::new(true, 0));
    q.push(f.reverse(), ACoord::new(false, 1));
    q.push(e.reverse(), ACoord::new(true, 1));
    let (reduced, trace) = reduce_returns(&tg, &q);
    println!(
        "nested returns removed in {} steps; residue letter (eps={}, r={})",
        trace.len(),
        reduced.head.eps as u8,
        reduced.head.r
    );

    println!("\n=== homotopy witnesses ===");
    let w = homotopy_witness(&tg, &p, &p).unwrap();
    println!("identical paths: {} edge-group letters, all zero", w.len());
    let mut shifted = p.clone();
    let last = shifted.steps.last_mut().unwrap();
    last.1 = tg.add(last.1, ACoord::new(true, 0));
    println!(
        "after shifting one letter the paths differ: witness = {:?}",
        homotopy_witness(&tg, &p, &shifted).is_none()
    );
}
