//! Diagram parsing, admissibility checking and the deterministic spanning
//! structure that frames the classification.
//!
//! Run with: cargo run --example diagrams_and_spanning

use curtis_tits::diagram::{spanning_structure, Diagram};

fn main() {
    let text = "\
# a four-cycle
vertex a
vertex b
vertex c
vertex d
edge a b
edge b c
edge c d
edge d a
";
    let d = Diagram::parse(text).unwrap();
    println!("parsed {} vertices, {} edges", d.vertex_count(), d.edge_count());
    println!("admissible: {}", d.check_admissible());

    let sd = spanning_structure(&d, 0).unwrap();
    println!("base point: {}", d.label(sd.base));
    for &(x, y) in &sd.tree {
        println!("tree edge {} - {}", d.label(x), d.label(y));
    }
    for (h, cycle) in sd.extra.iter().zip(&sd.cycles) {
        let walk: Vec<String> = cycle
            .iter()
            .map(|e| format!("{}->{}", d.label(e.from), d.label(e.to)))
            .collect();
        println!(
            "H-edge {}->{} with fundamental cycle: {}",
            d.label(h.from),
            d.label(h.to),
            walk.join(" ")
        );
    }
    println!("first Betti number: {}", sd.betti());

    // a triangle is rejected
    let bad = "vertex 1\nvertex 2\nvertex 3\nedge 1 2\nedge 2 3\nedge 1 3\n";
    let t = Diagram::parse(bad).unwrap();
    println!("\ntriangle diagram: {}", t.check_admissible());
}
