//! Non-collapse certificates: the path amalgam maps into SL_n(q) and the
//! cycle amalgam into SL_n over the Laurent ring, with every compatibility
//! square verified symbolically and under evaluation.
//!
//! Run with: cargo run --example completions

use curtis_tits::completion::{
    affine_completion, spherical_completion, verify_completion, verify_evaluated,
};
use curtis_tits::field::FieldCtx;
use curtis_tits::laurent::LaurentCtx;
use curtis_tits::matrix::{mat_string, root_elem};

fn main() {
    let ctx = FieldCtx::new(2, 2).unwrap();

    println!("=== spherical: the A3 path inside SL_4(GF(4)) ===");
    let (a, w) = spherical_completion(4, &ctx).unwrap();
    let report = verify_completion(&a, &w).unwrap();
    for s in &report.squares {
        println!("  {} : {}", s.description, if s.ok { "pass" } else { "FAIL" });
    }

    println!("\n=== affine: the 4-cycle inside SL_4(GF(4)[t, t^-1]) ===");
    let (a, w) = affine_completion(4, &ctx).unwrap();
    let report = verify_completion(&a, &w).unwrap();
    println!("all {} checks pass: {}", report.squares.len(), report.ok());

    let lctx = LaurentCtx::new(ctx.clone());
    let xm = root_elem(&ctx, 2, 2, 1, ctx.one()).unwrap();
    let img = w.vertex_image(&lctx, 3, &xm);
    println!("wrap image of X_-(1): {}", mat_string(&lctx, &img));

    for c in [ctx.one(), ctx.gen_x()] {
        let eval = verify_evaluated(&a, &w, c).unwrap();
        println!(
            "evaluation t -> {} keeps every square: {}",
            ctx.elem_string(c),
            eval.ok()
        );
    }
}
