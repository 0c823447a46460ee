//! Standard pairs of SL_2-subgroups inside SL_3, their tori and complements.
//!
//! The operations here are deliberately heavy-handed: eigenspace computations,
//! exhaustive scans over SL_2(q) and brute-force torus enumeration. They serve
//! as matrix-level ground truth for the coordinate layer built on top.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::linalg::{self, Subspace};
use crate::matrix::{
    identity, inverse, mat_mul, sl2_generators, subgroup_closure, Mat, Matrix, CLOSURE_CAP,
};
use std::collections::BTreeSet;

/// Which 2x2 block of SL_3 an embedding occupies, relative to a frame matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockSlot {
    /// Rows/columns (1, 2): the first group of a standard pair.
    UpperLeft,
    /// Rows/columns (2, 3): the second group of a standard pair.
    LowerRight,
}

/// An embedding SL_2(q) -> SL_3(q) of the form M -> P . block(M) . P^-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEmbedding {
    pub slot: BlockSlot,
    /// Frame: columns are the images of the standard basis. None = identity.
    pub frame: Option<Mat>,
}

impl BlockEmbedding {
    pub fn upper_left() -> Self {
        BlockEmbedding {
            slot: BlockSlot::UpperLeft,
            frame: None,
        }
    }

    pub fn lower_right() -> Self {
        BlockEmbedding {
            slot: BlockSlot::LowerRight,
            frame: None,
        }
    }

    pub fn conjugated(slot: BlockSlot, frame: Mat) -> Self {
        BlockEmbedding {
            slot,
            frame: Some(frame),
        }
    }

    fn place(&self, ctx: &FieldCtx, m: &Mat) -> Mat {
        assert_eq!(m.n, 2);
        let mut out = identity(ctx, 3);
        let off = match self.slot {
            BlockSlot::UpperLeft => 0,
            BlockSlot::LowerRight => 1,
        };
        for i in 0..2 {
            for j in 0..2 {
                out.set(i + off, j + off, *m.at(i, j));
            }
        }
        out
    }

    /// Image of an SL_2 element under the embedding.
    pub fn embed(&self, ctx: &FieldCtx, m: &Mat) -> Mat {
        let placed = self.place(ctx, m);
        match &self.frame {
            None => placed,
            Some(p) => {
                let pinv = inverse(ctx, p).expect("embedding frame must be invertible");
                mat_mul(ctx, &mat_mul(ctx, p, &placed), &pinv)
            }
        }
    }

    /// Preimage of an SL_3 element, if it lies in the image of the embedding.
    pub fn preimage(&self, ctx: &FieldCtx, m: &Mat) -> Option<Mat> {
        let inner = match &self.frame {
            None => m.clone(),
            Some(p) => {
                let pinv = inverse(ctx, p).ok()?;
                mat_mul(ctx, &mat_mul(ctx, &pinv, m), p)
            }
        };
        let off = match self.slot {
            BlockSlot::UpperLeft => 0,
            BlockSlot::LowerRight => 1,
        };
        // check block pattern: identity outside the 2x2 block
        let id = identity(ctx, 3);
        for i in 0..3 {
            for j in 0..3 {
                let in_block = (off..off + 2).contains(&i) && (off..off + 2).contains(&j);
                if !in_block && inner.at(i, j) != id.at(i, j) {
                    return None;
                }
            }
        }
        let block = Matrix::from_rows(vec![
            vec![*inner.at(off, off), *inner.at(off, off + 1)],
            vec![*inner.at(off + 1, off), *inner.at(off + 1, off + 1)],
        ]);
        Some(block)
    }

    /// Images of the standard SL_2 generator set.
    pub fn generator_images(&self, ctx: &FieldCtx) -> Vec<Mat> {
        sl2_generators(ctx)
            .iter()
            .map(|g| self.embed(ctx, g))
            .collect()
    }

    /// Image of the diagonal torus generator diag(alpha, alpha^-1).
    pub fn torus_generator(&self, ctx: &FieldCtx) -> Mat {
        let alpha = ctx.primitive();
        let d = Matrix::from_rows(vec![
            vec![alpha, ctx.zero()],
            vec![ctx.zero(), ctx.inv(alpha).unwrap()],
        ]);
        self.embed(ctx, &d)
    }

    /// The full image of the diagonal torus.
    pub fn torus_elements(&self, ctx: &FieldCtx) -> Vec<Mat> {
        ctx.elements()
            .filter(|a| !ctx.is_zero(*a))
            .map(|a| {
                let d = Matrix::from_rows(vec![
                    vec![a, ctx.zero()],
                    vec![ctx.zero(), ctx.inv(a).unwrap()],
                ]);
                self.embed(ctx, &d)
            })
            .collect()
    }
}

/// Subspace data certifying that two SL_2-subgroups of SL_3 form a standard
/// pair: S_i centralizes the line U_i and preserves the plane V_i, with
/// U_1 inside V_2 and U_2 inside V_1.
#[derive(Debug, Clone)]
pub struct StandardPairWitness {
    pub e1: linalg::Vector,
    pub e2: linalg::Vector,
    pub e3: linalg::Vector,
    pub u1: Subspace,
    pub v1: Subspace,
    pub u2: Subspace,
    pub v2: Subspace,
}

impl StandardPairWitness {
    /// The standard basis as a frame matrix (columns e1, e2, e3).
    pub fn frame(&self, ctx: &FieldCtx) -> Mat {
        let mut m = identity(ctx, 3);
        for i in 0..3 {
            m.set(i, 0, self.e1[i]);
            m.set(i, 1, self.e2[i]);
            m.set(i, 2, self.e3[i]);
        }
        m
    }
}

/// Decide whether the subgroups generated by the two families form a standard
/// pair, returning the subspace witness when they do. Failure is a value.
pub fn is_standard_pair(
    ctx: &FieldCtx,
    s1_gens: &[Mat],
    s2_gens: &[Mat],
) -> Option<StandardPairWitness> {
    let u1 = linalg::fixed_space(ctx, s1_gens);
    let v1 = linalg::moved_space(ctx, s1_gens);
    let u2 = linalg::fixed_space(ctx, s2_gens);
    let v2 = linalg::moved_space(ctx, s2_gens);
    if u1.dim() != 1 || v1.dim() != 2 || u2.dim() != 1 || v2.dim() != 2 {
        return None;
    }
    if !v2.contains_subspace(ctx, &u1) || !v1.contains_subspace(ctx, &u2) {
        return None;
    }
    // S_i must preserve V_i (centralizing U_i already holds: U_i is the fixed space)
    for g in s1_gens {
        if !linalg::preserves(ctx, g, &v1) {
            return None;
        }
    }
    for g in s2_gens {
        if !linalg::preserves(ctx, g, &v2) {
            return None;
        }
    }
    let mid = v1.intersect(ctx, &v2);
    if mid.dim() != 1 {
        return None;
    }
    let e1 = u2.a_vector().clone();
    let e2 = mid.a_vector().clone();
    let e3 = u1.a_vector().clone();
    // independence check: the three lines span everything
    let all = Subspace::from_spanning(ctx, &[e1.clone(), e2.clone(), e3.clone()], 3);
    if all.dim() != 3 {
        return None;
    }
    Some(StandardPairWitness {
        e1,
        e2,
        e3,
        u1,
        v1,
        u2,
        v2,
    })
}

/// The two standard complements to S_1 that are normalized by its torus D_1,
/// constructed from the eigenspaces of a regular torus element.
///
/// Requires |k| >= 4 so that diag(alpha, alpha^-1, 1) has three distinct
/// eigenvalues; errors below that.
pub fn standard_complements_normalized(
    ctx: &FieldCtx,
    s1: &BlockEmbedding,
) -> Result<Vec<BlockEmbedding>> {
    let q = ctx.order();
    if q < 4 {
        return Err(Error::FieldTooSmall { q });
    }
    let alpha = ctx.primitive();
    let ainv = ctx.inv(alpha)?;
    let d = s1.torus_generator(ctx);
    let s1_gens = s1.generator_images(ctx);

    // three distinct eigenvalues, hence three eigenlines
    let lambdas = [alpha, ainv, ctx.one()];
    let mut eigvecs: Vec<(FieldElem, linalg::Vector)> = Vec::new();
    for lam in lambdas {
        let es = linalg::eigenspace(ctx, &d, lam);
        if es.dim() != 1 {
            return Err(Error::InvalidInput(
                "torus generator is not regular".to_string(),
            ));
        }
        eigvecs.push((lam, es.a_vector().clone()));
    }
    // the eigenline fixed vector-wise by S_1
    let fixed = linalg::fixed_space(ctx, &s1_gens);
    let fixed_idx = eigvecs
        .iter()
        .position(|(_, v)| fixed.contains(ctx, v))
        .ok_or_else(|| Error::InvalidInput("S1 fixes no torus eigenline".to_string()))?;

    let mut out = Vec::new();
    for (idx, (_, v_fixed)) in eigvecs.iter().enumerate() {
        if idx == fixed_idx {
            continue;
        }
        // complement fixing this eigenline, acting on the span of the other two
        let others: Vec<&linalg::Vector> = eigvecs
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != idx)
            .map(|(_, (_, v))| v)
            .collect();
        let mut frame = identity(ctx, 3);
        for i in 0..3 {
            frame.set(i, 0, v_fixed[i]);
            frame.set(i, 1, others[0][i]);
            frame.set(i, 2, others[1][i]);
        }
        out.push(BlockEmbedding::conjugated(BlockSlot::LowerRight, frame));
    }
    Ok(out)
}

/// Whether `x` normalizes the subgroup whose full element set is `members`.
fn normalizes(ctx: &FieldCtx, x: &Mat, member_set: &BTreeSet<Mat>, gens: &[Mat]) -> bool {
    let xinv = inverse(ctx, x).unwrap();
    gens.iter()
        .all(|g| member_set.contains(&mat_mul(ctx, &mat_mul(ctx, x, g), &xinv)))
}

/// All conjugates of the diagonal (split) torus inside the image of `s2` that
/// are normalized by the torus of `s1`. Brute force over SL_2(q).
pub fn tori_normalized_by(
    ctx: &FieldCtx,
    s1: &BlockEmbedding,
    s2: &BlockEmbedding,
) -> Result<Vec<Vec<Mat>>> {
    let q = ctx.order();
    let sl2_order = q * q * q - q;
    if sl2_order > 10_000 {
        return Err(Error::BudgetExceeded(format!(
            "|SL2({q})| = {sl2_order} exceeds the torus search budget"
        )));
    }
    let sl2 = crate::matrix::enumerate_sl2(ctx);
    let torus: Vec<Mat> = ctx
        .elements()
        .filter(|a| !ctx.is_zero(*a))
        .map(|a| {
            Matrix::from_rows(vec![vec![a, ctx.zero()], vec![ctx.zero(), ctx.inv(a).unwrap()]])
        })
        .collect();

    // all distinct conjugate tori, as sorted element lists inside SL_2
    let mut tori_sets: BTreeSet<Vec<Mat>> = BTreeSet::new();
    for g in &sl2 {
        let ginv = inverse(ctx, g).unwrap();
        let mut t: Vec<Mat> = torus
            .iter()
            .map(|d| mat_mul(ctx, &mat_mul(ctx, g, d), &ginv))
            .collect();
        t.sort();
        tori_sets.insert(t);
    }

    let d1_gen = s1.torus_generator(ctx);
    let mut result = Vec::new();
    for t in &tori_sets {
        let embedded: BTreeSet<Mat> = t.iter().map(|m| s2.embed(ctx, m)).collect();
        let gens: Vec<Mat> = embedded.iter().cloned().collect();
        if normalizes(ctx, &d1_gen, &embedded, &gens) {
            result.push(t.clone());
        }
    }
    Ok(result)
}

/// The centralizer of D_1 inside the image of `s2`, returned as SL_2 elements.
pub fn centralizer_of_d1_in_s2(
    ctx: &FieldCtx,
    s1: &BlockEmbedding,
    s2: &BlockEmbedding,
) -> Vec<Mat> {
    let d1 = s1.torus_generator(ctx);
    crate::matrix::enumerate_sl2(ctx)
        .into_iter()
        .filter(|m| {
            let x = s2.embed(ctx, m);
            mat_mul(ctx, &d1, &x) == mat_mul(ctx, &x, &d1)
        })
        .collect()
}

/// Extend a pair of diagonal automorphisms across an edge:
/// diag(a, b, 1) and diag(1, c, d) glue to diag(ac, bc, bd).
pub fn extend_diagonal(
    ctx: &FieldCtx,
    tau_i: (FieldElem, FieldElem),
    tau_j: (FieldElem, FieldElem),
) -> [FieldElem; 3] {
    let (a, b) = tau_i;
    let (c, d) = tau_j;
    [ctx.mul(a, c), ctx.mul(b, c), ctx.mul(b, d)]
}

/// Conjugation by an invertible diagonal matrix, as a map on SL_3.
pub fn diag_conj(ctx: &FieldCtx, diag: &[FieldElem], m: &Mat) -> Mat {
    let n = m.n;
    assert_eq!(diag.len(), n);
    let mut out = m.clone();
    for i in 0..n {
        for j in 0..n {
            let v = ctx.mul(ctx.mul(diag[i], *m.at(i, j)), ctx.inv(diag[j]).unwrap());
            out.set(i, j, v);
        }
    }
    out
}

/// The normalizer scan behind D_i: elements M of SL_2(q) whose image under
/// `via` normalizes the full image of `other`.
pub fn normalizer_pullback(
    ctx: &FieldCtx,
    via: &BlockEmbedding,
    other: &BlockEmbedding,
) -> Result<Vec<Mat>> {
    let q = ctx.order();
    if q > 9 {
        return Err(Error::BudgetExceeded(format!(
            "normalizer scan limited to q <= 9, got q = {q}"
        )));
    }
    let other_gens = other.generator_images(ctx);
    let other_set: BTreeSet<Mat> = subgroup_closure(ctx, &other_gens, CLOSURE_CAP)?
        .into_iter()
        .collect();
    Ok(crate::matrix::enumerate_sl2(ctx)
        .into_iter()
        .filter(|m| normalizes(ctx, &via.embed(ctx, m), &other_set, &other_gens))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{has_det_one, root_elem};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf4() -> FieldCtx {
        FieldCtx::new(2, 2).unwrap()
    }

    fn random_sl3(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> Mat {
        let gens = crate::matrix::sl3_generators(ctx);
        let mut m = identity(ctx, 3);
        for _ in 0..10 {
            m = mat_mul(ctx, &m, &gens[rng.gen_range(0..gens.len())]);
        }
        m
    }

    #[test]
    fn standard_blocks_form_a_standard_pair() {
        let ctx = gf4();
        let s1 = BlockEmbedding::upper_left();
        let s2 = BlockEmbedding::lower_right();
        let w = is_standard_pair(&ctx, &s1.generator_images(&ctx), &s2.generator_images(&ctx))
            .expect("upper-left and lower-right blocks are a standard pair");
        // U1 = <e3>, V1 = <e1,e2>, U2 = <e1>, V2 = <e2,e3>
        let e = |k: usize| {
            let mut v = vec![ctx.zero(); 3];
            v[k] = ctx.one();
            v
        };
        assert!(w.u1.contains(&ctx, &e(2)));
        assert!(w.v1.contains(&ctx, &e(0)) && w.v1.contains(&ctx, &e(1)));
        assert!(w.u2.contains(&ctx, &e(0)));
        assert!(w.v2.contains(&ctx, &e(1)) && w.v2.contains(&ctx, &e(2)));
    }

    #[test]
    fn same_block_twice_fails() {
        let ctx = gf4();
        let s1 = BlockEmbedding::upper_left();
        let imgs = s1.generator_images(&ctx);
        assert!(is_standard_pair(&ctx, &imgs, &imgs).is_none());
    }

    #[test]
    fn conjugated_pair_yields_transformed_witness() {
        let ctx = gf4();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let g = loop {
            let m = random_sl3(&ctx, &mut rng);
            if has_det_one(&ctx, &m) && !crate::matrix::is_identity(&ctx, &m) {
                break m;
            }
        };
        let s1 = BlockEmbedding::conjugated(BlockSlot::UpperLeft, g.clone());
        let s2 = BlockEmbedding::conjugated(BlockSlot::LowerRight, g.clone());
        let w = is_standard_pair(&ctx, &s1.generator_images(&ctx), &s2.generator_images(&ctx))
            .expect("conjugated standard pair");
        // the witness subspaces are the g-transforms of the standard ones
        let e3 = vec![ctx.zero(), ctx.zero(), ctx.one()];
        let ge3 = linalg::apply(&ctx, &g, &e3);
        assert!(w.u1.contains(&ctx, &ge3));
    }

    #[test]
    fn exactly_two_normalized_complements_gf4_and_gf5() {
        for ctx in [gf4(), FieldCtx::new(5, 1).unwrap()] {
            let s1 = BlockEmbedding::upper_left();
            let comps = standard_complements_normalized(&ctx, &s1).unwrap();
            assert_eq!(comps.len(), 2);
            let s1_imgs = s1.generator_images(&ctx);
            let d1 = s1.torus_generator(&ctx);
            for c in &comps {
                let imgs = c.generator_images(&ctx);
                assert!(is_standard_pair(&ctx, &s1_imgs, &imgs).is_some());
                // normalized by D1: conjugates of generators stay in the image
                for x in &imgs {
                    let d1inv = inverse(&ctx, &d1).unwrap();
                    let conj = mat_mul(&ctx, &mat_mul(&ctx, &d1, x), &d1inv);
                    assert!(c.preimage(&ctx, &conj).is_some());
                }
            }
            // one of the two complements is the plain lower-right block
            let lr = BlockEmbedding::lower_right();
            let lr_set: BTreeSet<Mat> = lr
                .torus_elements(&ctx)
                .into_iter()
                .chain(lr.generator_images(&ctx))
                .collect();
            assert!(comps.iter().any(|c| {
                lr_set.iter().all(|m| c.preimage(&ctx, m).is_some())
            }));
        }
    }

    #[test]
    fn lemma_suite_holds_in_conjugated_frames() {
        // the uniqueness statements are frame-independent: run them against a
        // randomly conjugated standard pair, the position any built edge group
        // can present
        let ctx = gf4();
        let mut rng = ChaCha8Rng::seed_from_u64(909);
        for _ in 0..3 {
            let g = loop {
                let m = random_sl3(&ctx, &mut rng);
                if has_det_one(&ctx, &m) {
                    break m;
                }
            };
            let s1 = BlockEmbedding::conjugated(BlockSlot::UpperLeft, g.clone());
            let s2 = BlockEmbedding::conjugated(BlockSlot::LowerRight, g.clone());
            let comps = standard_complements_normalized(&ctx, &s1).unwrap();
            assert_eq!(comps.len(), 2);
            let s1_imgs = s1.generator_images(&ctx);
            for c in &comps {
                assert!(is_standard_pair(&ctx, &s1_imgs, &c.generator_images(&ctx)).is_some());
            }
            let tori = tori_normalized_by(&ctx, &s1, &s2).unwrap();
            assert_eq!(tori.len(), 1);
        }
    }

    #[test]
    fn complements_require_at_least_four_elements() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let s1 = BlockEmbedding::upper_left();
        assert!(matches!(
            standard_complements_normalized(&ctx, &s1),
            Err(Error::FieldTooSmall { q: 2 })
        ));
    }

    #[test]
    fn unique_torus_normalized_by_d1() {
        for ctx in [gf4(), FieldCtx::new(5, 1).unwrap()] {
            let s1 = BlockEmbedding::upper_left();
            let s2 = BlockEmbedding::lower_right();
            let tori = tori_normalized_by(&ctx, &s1, &s2).unwrap();
            assert_eq!(tori.len(), 1, "exactly one torus in S2 normalized by D1");
            // and it is the diagonal torus itself
            let diag: BTreeSet<Mat> = ctx
                .elements()
                .filter(|a| !ctx.is_zero(*a))
                .map(|a| {
                    Matrix::from_rows(vec![
                        vec![a, ctx.zero()],
                        vec![ctx.zero(), ctx.inv(a).unwrap()],
                    ])
                })
                .collect();
            let found: BTreeSet<Mat> = tori[0].iter().cloned().collect();
            assert_eq!(found, diag);
        }
    }

    #[test]
    fn d2_is_the_centralizer_of_d1_in_s2() {
        for ctx in [gf4(), FieldCtx::new(5, 1).unwrap()] {
            let s1 = BlockEmbedding::upper_left();
            let s2 = BlockEmbedding::lower_right();
            let cent: BTreeSet<Mat> = centralizer_of_d1_in_s2(&ctx, &s1, &s2)
                .into_iter()
                .collect();
            let torus: BTreeSet<Mat> = ctx
                .elements()
                .filter(|a| !ctx.is_zero(*a))
                .map(|a| {
                    Matrix::from_rows(vec![
                        vec![a, ctx.zero()],
                        vec![ctx.zero(), ctx.inv(a).unwrap()],
                    ])
                })
                .collect();
            assert_eq!(cent, torus);
        }
    }

    #[test]
    fn extend_diagonal_componentwise() {
        let ctx = gf4();
        let one = ctx.one();
        assert_eq!(
            extend_diagonal(&ctx, (one, one), (one, one)),
            [one, one, one]
        );
        let zeta = ctx.gen_x();
        let zeta2 = ctx.mul(zeta, zeta);
        // a = zeta, b = zeta^2, c = zeta, d = zeta^2 -> diag(zeta^2, 1, zeta)
        let ext = extend_diagonal(&ctx, (zeta, zeta2), (zeta, zeta2));
        assert_eq!(ext, [zeta2, one, zeta]);
    }

    #[test]
    fn extension_restricts_to_block_conjugations_up_to_center() {
        let ctx = gf4();
        let zeta = ctx.gen_x();
        let zeta2 = ctx.mul(zeta, zeta);
        let (a, b, c, d) = (zeta, zeta2, zeta2, ctx.one());
        let ext = extend_diagonal(&ctx, (a, b), (c, d));
        let ul = BlockEmbedding::upper_left();
        let lr = BlockEmbedding::lower_right();
        for g in sl2_generators(&ctx) {
            // conjugating the embedded element by the extension equals embedding
            // the diag(a,b)- (resp. diag(c,d)-) conjugated element
            let lhs = diag_conj(&ctx, &ext, &ul.embed(&ctx, &g));
            let inner = diag_conj(&ctx, &[a, b], &g);
            assert_eq!(lhs, ul.embed(&ctx, &inner));
            let lhs = diag_conj(&ctx, &ext, &lr.embed(&ctx, &g));
            let inner = diag_conj(&ctx, &[c, d], &g);
            assert_eq!(lhs, lr.embed(&ctx, &inner));
        }
    }

    #[test]
    fn normalizer_pullback_is_the_diagonal_torus() {
        let ctx = gf4();
        let ul = BlockEmbedding::upper_left();
        let lr = BlockEmbedding::lower_right();
        let d1 = normalizer_pullback(&ctx, &ul, &lr).unwrap();
        assert_eq!(d1.len() as u64, ctx.order() - 1);
        for m in &d1 {
            assert!(ctx.is_zero(*m.at(0, 1)) && ctx.is_zero(*m.at(1, 0)));
        }
    }

    #[test]
    fn preimage_detects_pattern_violations() {
        let ctx = gf4();
        let ul = BlockEmbedding::upper_left();
        let x13 = root_elem(&ctx, 3, 1, 3, ctx.one()).unwrap();
        assert!(ul.preimage(&ctx, &x13).is_none());
        let x12 = root_elem(&ctx, 3, 1, 2, ctx.gen_x()).unwrap();
        let pre = ul.preimage(&ctx, &x12).unwrap();
        assert_eq!(pre, root_elem(&ctx, 2, 1, 2, ctx.gen_x()).unwrap());
    }
}
