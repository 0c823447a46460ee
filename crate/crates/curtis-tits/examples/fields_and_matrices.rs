//! Exact finite-field arithmetic and the SL_n building blocks.
//!
//! Run with: cargo run --example fields_and_matrices

use curtis_tits::field::{FieldAut, FieldCtx};
use curtis_tits::matrix::{
    curly_e, enumerate_sl2, inverse, mat_mul, mat_string, omega, root_elem, SlAut,
};

fn main() {
    let ctx = FieldCtx::new(2, 2).unwrap();
    println!("=== GF(4) = GF(2)[x]/(x^2 + x + 1) ===");
    let zeta = ctx.gen_x();
    println!("zeta       = {}", ctx.elem_string(zeta));
    println!("zeta^2     = {}  (= zeta + 1)", ctx.elem_string(ctx.mul(zeta, zeta)));
    println!("zeta^3     = {}", ctx.elem_string(ctx.pow(zeta, 3)));
    println!(
        "frobenius: zeta -> {}",
        ctx.elem_string(ctx.frobenius(FieldAut(1), zeta))
    );

    println!("\n=== root elements of SL_3(GF(4)) ===");
    let x12 = root_elem(&ctx, 3, 1, 2, ctx.one()).unwrap();
    println!("X_12(1) = {}", mat_string(&ctx, &x12));
    let x12z = root_elem(&ctx, 3, 1, 2, zeta).unwrap();
    println!(
        "X_12(1) . X_12(zeta) = X_12(1 + zeta) : {}",
        mat_mul(&ctx, &x12, &x12z) == root_elem(&ctx, 3, 1, 2, ctx.add(ctx.one(), zeta)).unwrap()
    );

    println!("\n=== the transpose-inverse automorphism ===");
    let e = curly_e(&ctx);
    let einv = inverse(&ctx, &e).unwrap();
    let all = enumerate_sl2(&ctx);
    let inner = all
        .iter()
        .all(|m| omega(&ctx, m).unwrap() == mat_mul(&ctx, &mat_mul(&ctx, &e, m), &einv));
    println!("|SL_2(GF(4))| = {}", all.len());
    println!("omega = conjugation by [[0,-1],[1,0]] on every element: {inner}");

    println!("\n=== semilinear automorphism composition ===");
    let a = SlAut::new(true, 1, None);
    let twice = a.compose(&ctx, &a).unwrap();
    println!(
        "(omega . sigma) composed with itself = (eps={}, r={})",
        twice.eps, twice.frob.0
    );
}
