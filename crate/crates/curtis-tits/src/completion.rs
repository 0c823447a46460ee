//! Explicit completion witnesses certifying non-collapse: the path amalgam
//! maps into SL_n(q) and the cycle amalgam into SL_n(GF(q)[t, t^-1]), both
//! with the trivial pointing. Every compatibility square is verified by exact
//! (symbolic, for the Laurent case) matrix computation.

use crate::amalgam::{build_amalgam, CtAmalgam};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::laurent::{LaurentCtx, LaurentPoly};
use crate::matrix::{det, identity, mat_mul, sl2_generators, Matrix};
use crate::path_group::Pointing;
use crate::ring::Ring;

/// A basis of the target space decorated with t-exponents: basis vector k is
/// `t^(exp_k) e_(pos_k)`. Embedding a matrix relative to such a basis places
/// entry (r, c) at position (pos_r, pos_c) scaled by `t^(exp_r - exp_c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedBasis {
    pub positions: Vec<(usize, i64)>,
}

impl DecoratedBasis {
    pub fn plain(coords: &[usize]) -> DecoratedBasis {
        DecoratedBasis {
            positions: coords.iter().map(|&c| (c, 0)).collect(),
        }
    }

    /// Embed a field matrix into SL(target_dim) over the Laurent ring.
    pub fn embed(
        &self,
        lctx: &LaurentCtx,
        target_dim: usize,
        m: &Matrix<FieldElem>,
    ) -> Matrix<LaurentPoly> {
        assert_eq!(m.n, self.positions.len());
        let mut out = identity(lctx, target_dim);
        for (r, &(pr, kr)) in self.positions.iter().enumerate() {
            for (c, &(pc, kc)) in self.positions.iter().enumerate() {
                out.set(pr, pc, LaurentPoly::monomial(*m.at(r, c), kr - kc));
            }
        }
        out
    }
}

/// A completion witness: evaluable maps from every vertex group and every
/// edge group of the amalgam into a single target group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionWitness {
    pub target_dim: usize,
    /// Whether the coefficient ring is the Laurent ring (true) or the field.
    pub laurent: bool,
    /// One map per diagram vertex, in vertex order.
    pub vertex_maps: Vec<DecoratedBasis>,
    /// One map per amalgam edge, parallel to the amalgam's edge list.
    pub edge_maps: Vec<DecoratedBasis>,
}

impl CompletionWitness {
    pub fn vertex_image(
        &self,
        lctx: &LaurentCtx,
        v: usize,
        m: &Matrix<FieldElem>,
    ) -> Matrix<LaurentPoly> {
        self.vertex_maps[v].embed(lctx, self.target_dim, m)
    }

    pub fn edge_image(
        &self,
        lctx: &LaurentCtx,
        e: usize,
        m: &Matrix<FieldElem>,
    ) -> Matrix<LaurentPoly> {
        self.edge_maps[e].embed(lctx, self.target_dim, m)
    }
}

/// One verified compatibility square or commutation relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareResult {
    pub description: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionReport {
    pub squares: Vec<SquareResult>,
}

impl CompletionReport {
    pub fn ok(&self) -> bool {
        self.squares.iter().all(|s| s.ok)
    }

    pub fn failed(&self) -> Vec<&SquareResult> {
        self.squares.iter().filter(|s| !s.ok).collect()
    }
}

/// The path amalgam A_(n-1) on n - 1 vertices with the trivial pointing,
/// completed into SL_n(q) by consecutive block embeddings.
pub fn spherical_completion(n: usize, ctx: &FieldCtx) -> Result<(CtAmalgam, CompletionWitness)> {
    if !(2..=8).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "spherical completion needs 2 <= n <= 8, got {n}"
        )));
    }
    let labels: Vec<String> = (1..n).map(|i| format!("v{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let d = Diagram::path(&refs);
    let amalgam = build_amalgam(&d, &Pointing::trivial(), ctx)?;
    let vertex_maps = (0..n - 1)
        .map(|i| DecoratedBasis::plain(&[i, i + 1]))
        .collect();
    let edge_maps = (0..n.saturating_sub(2))
        .map(|k| DecoratedBasis::plain(&[k, k + 1, k + 2]))
        .collect();
    let witness = CompletionWitness {
        target_dim: n,
        laurent: false,
        vertex_maps,
        edge_maps,
    };
    let report = verify_completion(&amalgam, &witness)?;
    debug_assert!(report.ok());
    Ok((amalgam, witness))
}

/// The cycle amalgam on n vertices with the trivial pointing, completed into
/// SL_n(GF(q)[t, t^-1]): consecutive blocks, with the wrap vertex acting on
/// the decorated pair (e_n, t^-1 e_1).
pub fn affine_completion(n: usize, ctx: &FieldCtx) -> Result<(CtAmalgam, CompletionWitness)> {
    if !(4..=8).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "affine completion needs 4 <= n <= 8, got {n} (a 3-cycle is not admissible)"
        )));
    }
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let d = Diagram::cycle(&refs);
    let amalgam = build_amalgam(&d, &Pointing::trivial(), ctx)?;
    let mut vertex_maps: Vec<DecoratedBasis> = (0..n - 1)
        .map(|i| DecoratedBasis::plain(&[i, i + 1]))
        .collect();
    vertex_maps.push(DecoratedBasis {
        positions: vec![(n - 1, 0), (0, -1)],
    });
    // path edges {v_k, v_(k+1)} for k = 1..n-2, then the edge into the wrap
    // vertex spanning the decorated column, then the wrap edge (v_n, v_1)
    let mut edge_maps: Vec<DecoratedBasis> = (0..n - 2)
        .map(|k| DecoratedBasis::plain(&[k, k + 1, k + 2]))
        .collect();
    edge_maps.push(DecoratedBasis {
        positions: vec![(n - 2, 0), (n - 1, 0), (0, -1)],
    });
    edge_maps.push(DecoratedBasis {
        positions: vec![(n - 1, 0), (0, -1), (1, -1)],
    });
    let witness = CompletionWitness {
        target_dim: n,
        laurent: true,
        vertex_maps,
        edge_maps,
    };
    let report = verify_completion(&amalgam, &witness)?;
    debug_assert!(report.ok(), "affine witness must verify: {report:?}");
    Ok((amalgam, witness))
}

/// Re-check every invariant of a completion witness against the amalgam's
/// actual inclusion maps: per-directed-edge compatibility squares on the
/// standard generators, determinant one for every image, commutation of
/// non-adjacent vertex images, and injectivity of the vertex maps on a
/// generator-products sample.
pub fn verify_completion(a: &CtAmalgam, w: &CompletionWitness) -> Result<CompletionReport> {
    let ctx = &a.field;
    let lctx = LaurentCtx::new(ctx.clone());
    if w.vertex_maps.len() != a.diagram.vertex_count() || w.edge_maps.len() != a.edges.len() {
        return Err(Error::DimensionMismatch(
            "witness maps do not match the amalgam".to_string(),
        ));
    }
    let gens = sl2_generators(ctx);
    let mut squares = Vec::new();

    // compatibility: edge_map(incl(g)) = vertex_map(g)
    for (k, edge) in a.edges.iter().enumerate() {
        for (v, incl) in [
            (edge.first, &edge.incl_first),
            (edge.second, &edge.incl_second),
        ] {
            let mut ok = true;
            for g in &gens {
                let through_edge = w.edge_image(&lctx, k, &incl.apply(ctx, g));
                let direct = w.vertex_image(&lctx, v, g);
                if through_edge != direct {
                    ok = false;
                }
            }
            squares.push(SquareResult {
                description: format!(
                    "square {} -> edge {}-{}",
                    a.diagram.label(v),
                    a.diagram.label(edge.first),
                    a.diagram.label(edge.second)
                ),
                ok,
            });
        }
    }

    // determinants are exactly one
    let mut det_ok = true;
    for (v, _) in w.vertex_maps.iter().enumerate() {
        for g in &gens {
            if det(&lctx, &w.vertex_image(&lctx, v, g)) != Ring::one(&lctx) {
                det_ok = false;
            }
        }
    }
    squares.push(SquareResult {
        description: "all vertex images have determinant 1".to_string(),
        ok: det_ok,
    });

    // non-adjacent vertex images commute
    for (x, y) in a.diagram.non_edges() {
        let mut ok = true;
        for g in &gens {
            for h in &gens {
                let gx = w.vertex_image(&lctx, x, g);
                let hy = w.vertex_image(&lctx, y, h);
                if mat_mul(&lctx, &gx, &hy) != mat_mul(&lctx, &hy, &gx) {
                    ok = false;
                }
            }
        }
        squares.push(SquareResult {
            description: format!(
                "non-edge {} {} commutes",
                a.diagram.label(x),
                a.diagram.label(y)
            ),
            ok,
        });
    }

    // injectivity of vertex maps on a products sample
    for v in a.diagram.vertices() {
        let mut sample: Vec<Matrix<FieldElem>> = gens.clone();
        for g in &gens {
            for h in &gens {
                sample.push(mat_mul(ctx, g, h));
            }
        }
        sample.sort();
        sample.dedup();
        let mut images: Vec<Matrix<LaurentPoly>> = sample
            .iter()
            .map(|m| w.vertex_image(&lctx, v, m))
            .collect();
        let before = images.len();
        images.sort();
        images.dedup();
        squares.push(SquareResult {
            description: format!("vertex map {} injective on sample", a.diagram.label(v)),
            ok: images.len() == before,
        });
    }

    Ok(CompletionReport { squares })
}

/// Evaluate a Laurent witness at t = c (c nonzero) and re-verify all squares
/// over the field; the decorated embeddings specialize to field matrices.
pub fn verify_evaluated(a: &CtAmalgam, w: &CompletionWitness, c: FieldElem) -> Result<CompletionReport> {
    let ctx = &a.field;
    if ctx.is_zero(c) {
        return Err(Error::ZeroInverse);
    }
    let lctx = LaurentCtx::new(ctx.clone());
    let gens = sl2_generators(ctx);
    let eval = |m: &Matrix<LaurentPoly>| -> Result<Matrix<FieldElem>> {
        let mut out = identity(ctx, m.n);
        for i in 0..m.n {
            for j in 0..m.n {
                out.set(i, j, lctx.eval(m.at(i, j), c)?);
            }
        }
        Ok(out)
    };
    let mut squares = Vec::new();
    for (k, edge) in a.edges.iter().enumerate() {
        for (v, incl) in [
            (edge.first, &edge.incl_first),
            (edge.second, &edge.incl_second),
        ] {
            let mut ok = true;
            for g in &gens {
                let through_edge = eval(&w.edge_image(&lctx, k, &incl.apply(ctx, g)))?;
                let direct = eval(&w.vertex_image(&lctx, v, g))?;
                if through_edge != direct {
                    ok = false;
                }
            }
            squares.push(SquareResult {
                description: format!(
                    "evaluated square {} -> edge {}-{}",
                    a.diagram.label(v),
                    a.diagram.label(edge.first),
                    a.diagram.label(edge.second)
                ),
                ok,
            });
        }
    }
    for (x, y) in a.diagram.non_edges() {
        let mut ok = true;
        for g in &gens {
            for h in &gens {
                let gx = eval(&w.vertex_image(&lctx, x, g))?;
                let hy = eval(&w.vertex_image(&lctx, y, h))?;
                if mat_mul(ctx, &gx, &hy) != mat_mul(ctx, &hy, &gx) {
                    ok = false;
                }
            }
        }
        squares.push(SquareResult {
            description: format!(
                "evaluated non-edge {} {} commutes",
                a.diagram.label(x),
                a.diagram.label(y)
            ),
            ok,
        });
    }
    Ok(CompletionReport { squares })
}
