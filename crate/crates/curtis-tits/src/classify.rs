//! Classification of Curtis-Tits structures up to isomorphism: enumeration of
//! the invariant values, the pointing-level isomorphism oracle and the fully
//! independent matrix-level oracle.

use crate::amalgam::CtAmalgam;
use crate::diagram::{Diagram, DirectedEdge, SpanningData, VertexId};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::matrix::{sl2_generators, SlAut};
use crate::path_group::{phi_of_pointing, ACoord, Pointing, TwistGroup};
use std::collections::BTreeMap;

/// One isomorphism class of CT structures over a fixed diagram and field:
/// the invariant value on the fundamental cycles, the orientability flag and
/// the canonical pointing representing the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub phi: BTreeMap<DirectedEdge, ACoord>,
    pub orientable: bool,
    pub canonical: Pointing,
}

impl IsoClass {
    /// Stable key: (eps, r) per H-edge in spanning order, joined by `;`.
    pub fn key(&self, sd: &SpanningData) -> String {
        sd.extra
            .iter()
            .map(|e| {
                let a = self.phi.get(e).copied().unwrap_or(ACoord::ZERO);
                format!("{},{}", a.eps as u8, a.r)
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Orientability from the invariant: every value lies in the Frobenius factor.
pub fn is_orientable_phi(c: &IsoClass) -> bool {
    c.phi.values().all(|a| !a.eps)
}

/// Enumerate all isomorphism classes over an admissible diagram: one class
/// per map from the H-edge set into Z_2 x Z_m, in lexicographic order (H-edges
/// in spanning order, coordinates (eps, r) lexicographic).
pub fn enumerate_classes(d: &Diagram, ctx: &FieldCtx, sd: &SpanningData) -> Result<Vec<IsoClass>> {
    let q = ctx.order();
    if q < 4 {
        return Err(Error::FieldTooSmall { q });
    }
    let adm = d.check_admissible();
    if !adm.is_ok() {
        return Err(Error::NotAdmissible(adm.to_string()));
    }
    let tg = TwistGroup::for_field(ctx);
    let b = sd.betti();
    let order = tg.order();
    let total = order.pow(b as u32);
    let mut out = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rem = idx;
        let mut canonical = Pointing::trivial();
        let mut phi = BTreeMap::new();
        // most significant digit on the first H-edge
        for k in (0..b).rev() {
            let digit = rem / order.pow(k as u32);
            rem %= order.pow(k as u32);
            let coord = tg.from_index(digit);
            let h = sd.extra[b - 1 - k];
            canonical.set(h, coord);
            phi.insert(h, coord);
        }
        let class = IsoClass {
            orientable: phi.values().all(|a: &ACoord| !a.eps),
            phi,
            canonical,
        };
        out.push(class);
    }
    Ok(out)
}

/// Decide isomorphism of two pointings over the same diagram by comparing
/// their invariants.
pub fn pointings_isomorphic(
    tg: &TwistGroup,
    d1: &Pointing,
    d2: &Pointing,
    sd: &SpanningData,
) -> bool {
    phi_of_pointing(tg, d1, sd) == phi_of_pointing(tg, d2, sd)
}

/// A witness for an isomorphism of pointings: one coordinate per vertex and
/// one per undirected edge, satisfying
/// `delta1_(i,j) + a_(i,j) = a_i + delta2_(i,j)` on every directed edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub vertex: BTreeMap<VertexId, ACoord>,
    pub edge: BTreeMap<(VertexId, VertexId), ACoord>,
}

/// Re-check a witness against the defining equations, exactly.
pub fn verify_pointing_witness(
    tg: &TwistGroup,
    d: &Diagram,
    d1: &Pointing,
    d2: &Pointing,
    w: &IsoWitness,
) -> bool {
    for e in d.directed_edges() {
        let a_i = w.vertex.get(&e.from).copied().unwrap_or(ACoord::ZERO);
        let a_e = w.edge.get(&e.undirected()).copied().unwrap_or(ACoord::ZERO);
        // delta1 . alpha(a_e) = a_i . delta2 with alpha the identity
        if tg.add(d1.get(e), a_e) != tg.add(a_i, d2.get(e)) {
            return false;
        }
    }
    true
}

/// Exhaustive isomorphism search over all per-vertex assignments; the edge
/// coordinates are forced by each directed edge and must agree with their
/// reverses. Success returns a re-verified witness.
pub fn oracle_pointing_iso(
    tg: &TwistGroup,
    d: &Diagram,
    d1: &Pointing,
    d2: &Pointing,
) -> Result<Option<IsoWitness>> {
    let n = d.vertex_count();
    if n > 12 {
        return Err(Error::BudgetExceeded(format!(
            "pointing isomorphism search limited to 12 vertices, got {n}"
        )));
    }
    let order = tg.order() as u64;
    let total = order.pow(n as u32);
    if total > 1 << 26 {
        return Err(Error::BudgetExceeded(format!(
            "{total} vertex assignments exceed the search budget"
        )));
    }
    'outer: for mask in 0..total {
        let mut rem = mask;
        let mut vertex = BTreeMap::new();
        for v in 0..n {
            vertex.insert(v, tg.from_index((rem % order) as usize));
            rem /= order;
        }
        let mut edge: BTreeMap<(VertexId, VertexId), ACoord> = BTreeMap::new();
        for &(a, b) in d.edges() {
            let fwd = DirectedEdge::new(a, b);
            let bwd = fwd.reverse();
            // forced: a_e = a_i + delta2(e) - delta1(e)
            let from_fwd = tg.sub(tg.add(vertex[&a], d2.get(fwd)), d1.get(fwd));
            let from_bwd = tg.sub(tg.add(vertex[&b], d2.get(bwd)), d1.get(bwd));
            if from_fwd != from_bwd {
                continue 'outer;
            }
            edge.insert(fwd.undirected(), from_fwd);
        }
        let w = IsoWitness { vertex, edge };
        if verify_pointing_witness(tg, d, d1, d2, &w) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// A matrix-level isomorphism witness between two concrete amalgams: a
/// semilinear automorphism coordinate per vertex group and per edge group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixIsoWitness {
    pub vertex: BTreeMap<VertexId, ACoord>,
    pub edge: BTreeMap<(VertexId, VertexId), ACoord>,
}

impl MatrixIsoWitness {
    /// Project to pointing coordinates: solutions of the matrix squares are
    /// the negatives of solutions of the pointing equations.
    pub fn to_iso_witness(&self, tg: &TwistGroup) -> IsoWitness {
        IsoWitness {
            vertex: self
                .vertex
                .iter()
                .map(|(&v, &a)| (v, tg.neg(a)))
                .collect(),
            edge: self.edge.iter().map(|(&e, &a)| (e, tg.neg(a))).collect(),
        }
    }
}

/// Check one defining square on the standard generators, with actual matrices:
/// edge_aut(phi1_(i,j)(g)) = phi2_(i,j)(vertex_aut(g)).
fn square_holds(
    ctx: &FieldCtx,
    a1: &CtAmalgam,
    a2: &CtAmalgam,
    e: DirectedEdge,
    vertex_coord: ACoord,
    edge_coord: ACoord,
) -> bool {
    let incl1 = a1.inclusion(e).expect("edge exists");
    let incl2 = a2.inclusion(e).expect("edge exists");
    let vert_aut = vertex_coord.to_slaut();
    let edge_aut = SlAut::new(edge_coord.eps, edge_coord.r, None);
    for g in sl2_generators(ctx) {
        let lhs = match edge_aut.apply(ctx, &incl1.apply(ctx, &g)) {
            Ok(m) => m,
            Err(_) => return false,
        };
        let rhs = incl2.apply(ctx, &vert_aut.apply(ctx, &g).unwrap());
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Exhaustive matrix-level isomorphism search between two amalgams over the
/// same diagram and field. Per-vertex automorphisms are enumerated; per-edge
/// automorphisms are whatever satisfies both directed squares. Fully
/// independent of the invariant machinery: every check multiplies matrices.
pub fn oracle_matrix_iso(a1: &CtAmalgam, a2: &CtAmalgam) -> Result<Option<MatrixIsoWitness>> {
    if a1.diagram != a2.diagram {
        return Err(Error::InvalidInput(
            "matrix oracle needs a common diagram".to_string(),
        ));
    }
    if a1.field != a2.field {
        return Err(Error::InvalidInput(
            "matrix oracle needs a common field".to_string(),
        ));
    }
    let ctx = &a1.field;
    let d = &a1.diagram;
    let n = d.vertex_count();
    if n > 6 {
        return Err(Error::BudgetExceeded(format!(
            "matrix isomorphism search limited to 6 vertices, got {n}"
        )));
    }
    let tg = TwistGroup::for_field(ctx);
    let coords = tg.elements();
    let order = coords.len();

    // precompute, per directed edge, which (vertex coord, edge coord) pairs
    // satisfy the square
    let mut feasible: BTreeMap<DirectedEdge, Vec<Vec<bool>>> = BTreeMap::new();
    for e in d.directed_edges() {
        let mut table = vec![vec![false; order]; order];
        for (vi, &vc) in coords.iter().enumerate() {
            for (ei, &ec) in coords.iter().enumerate() {
                table[vi][ei] = square_holds(ctx, a1, a2, e, vc, ec);
            }
        }
        feasible.insert(e, table);
    }

    let total = (order as u64).pow(n as u32);
    'outer: for mask in 0..total {
        let mut rem = mask;
        let mut vertex_idx = vec![0usize; n];
        for slot in vertex_idx.iter_mut() {
            *slot = (rem % order as u64) as usize;
            rem /= order as u64;
        }
        let mut edge = BTreeMap::new();
        for &(a, b) in d.edges() {
            let fwd = DirectedEdge::new(a, b);
            let bwd = fwd.reverse();
            let tf = &feasible[&fwd];
            let tb = &feasible[&bwd];
            // the shared edge coordinate must satisfy both directions
            let Some(ei) = (0..order)
                .find(|&ei| tf[vertex_idx[a]][ei] && tb[vertex_idx[b]][ei])
            else {
                continue 'outer;
            };
            edge.insert(fwd.undirected(), coords[ei]);
        }
        let witness = MatrixIsoWitness {
            vertex: (0..n).map(|v| (v, coords[vertex_idx[v]])).collect(),
            edge,
        };
        // re-verify every square directly before accepting
        let mut all_ok = true;
        for e in d.directed_edges() {
            let vc = witness.vertex[&e.from];
            let ec = witness.edge[&e.undirected()];
            if !square_holds(ctx, a1, a2, e, vc, ec) {
                all_ok = false;
                break;
            }
        }
        if all_ok {
            return Ok(Some(witness));
        }
    }
    Ok(None)
}
