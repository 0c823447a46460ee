//! The standard-pair machinery inside SL_3: subspace witnesses, the two
//! complements normalized by a torus, the unique normalized torus, and the
//! diagonal extension across an edge.
//!
//! Run with: cargo run --example standard_pairs

use curtis_tits::field::FieldCtx;
use curtis_tits::pairs::{
    centralizer_of_d1_in_s2, diag_conj, extend_diagonal, is_standard_pair,
    standard_complements_normalized, tori_normalized_by, BlockEmbedding,
};

fn main() {
    let ctx = FieldCtx::new(2, 2).unwrap();
    let s1 = BlockEmbedding::upper_left();
    let s2 = BlockEmbedding::lower_right();

    println!("=== standard pair witness ===");
    let w = is_standard_pair(
        &ctx,
        &s1.generator_images(&ctx),
        &s2.generator_images(&ctx),
    )
    .expect("the two blocks form a standard pair");
    println!("dim U1 = {}, dim V1 = {}", w.u1.dim(), w.v1.dim());
    println!("dim U2 = {}, dim V2 = {}", w.u2.dim(), w.v2.dim());

    println!("\n=== exactly two complements normalized by D1 ===");
    let comps = standard_complements_normalized(&ctx, &s1).unwrap();
    println!("found {} complements", comps.len());
    for (i, c) in comps.iter().enumerate() {
        let ok = is_standard_pair(&ctx, &s1.generator_images(&ctx), &c.generator_images(&ctx))
            .is_some();
        println!("complement {i}: standard pair with S1 = {ok}");
    }

    println!("\n=== the unique torus in S2 normalized by D1 ===");
    let tori = tori_normalized_by(&ctx, &s1, &s2).unwrap();
    println!("normalized split tori found: {}", tori.len());
    let cent = centralizer_of_d1_in_s2(&ctx, &s1, &s2);
    println!(
        "it equals the centralizer C_S2(D1) of order {}: {}",
        cent.len(),
        tori[0].len() == cent.len()
    );

    println!("\n=== diagonal extension across an edge ===");
    let zeta = ctx.gen_x();
    let zeta2 = ctx.mul(zeta, zeta);
    let ext = extend_diagonal(&ctx, (zeta, zeta2), (zeta, zeta2));
    let parts: Vec<String> = ext.iter().map(|e| ctx.elem_string(*e)).collect();
    println!("diag(a,b,1) + diag(1,c,d) glue to diag({})", parts.join(", "));
    let g = curtis_tits::matrix::sl2_generators(&ctx)[0].clone();
    let restricts = diag_conj(&ctx, &ext, &s1.embed(&ctx, &g))
        == s1.embed(&ctx, &diag_conj(&ctx, &[zeta, zeta2], &g));
    println!("restriction to the first block matches: {restricts}");
}
