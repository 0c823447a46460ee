//! Cross-checking the invariant against brute force: the coordinate-level
//! isomorphism search and the fully independent matrix-level search.
//!
//! Run with: cargo run --example isomorphism_oracles

use curtis_tits::amalgam::build_amalgam;
use curtis_tits::classify::{oracle_matrix_iso, oracle_pointing_iso};
use curtis_tits::diagram::{spanning_structure, Diagram};
use curtis_tits::field::FieldCtx;
use curtis_tits::path_group::{phi_of_pointing, Pointing, TwistGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let ctx = FieldCtx::new(2, 2).unwrap();
    let tg = TwistGroup::for_field(&ctx);
    let d = Diagram::cycle(&["a", "b", "c", "d"]);
    let sd = spanning_structure(&d, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    let mut sample = || {
        let mut p = Pointing::trivial();
        for e in d.directed_edges() {
            p.set(e, tg.from_index(rng.gen_range(0..tg.order())));
        }
        p
    };

    for trial in 0..6 {
        let p1 = sample();
        let p2 = sample();
        let by_phi = phi_of_pointing(&tg, &p1, &sd) == phi_of_pointing(&tg, &p2, &sd);
        let by_pointing = oracle_pointing_iso(&tg, &d, &p1, &p2).unwrap();
        let a1 = build_amalgam(&d, &p1, &ctx).unwrap();
        let a2 = build_amalgam(&d, &p2, &ctx).unwrap();
        let by_matrix = oracle_matrix_iso(&a1, &a2).unwrap();
        println!(
            "pair {trial}: invariant-equal={by_phi} pointing-witness={} matrix-witness={}",
            by_pointing.is_some(),
            by_matrix.is_some()
        );
        assert_eq!(by_phi, by_pointing.is_some());
        assert_eq!(by_phi, by_matrix.is_some());
        if let (Some(w), true) = (&by_matrix, by_phi) {
            let vertex_coords: Vec<String> = w
                .vertex
                .values()
                .map(|a| format!("({},{})", a.eps as u8, a.r))
                .collect();
            println!("  matrix witness vertex coordinates: {}", vertex_coords.join(" "));
        }
    }
    println!("the three views agree on every sampled pair");
}
