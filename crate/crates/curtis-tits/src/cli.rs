//! Batch interface: parse inputs, run classification, verification, oracle
//! cross-checks, completion witnesses or presentation dumps, and emit a
//! deterministic report. Exit codes: 0 ok, 2 input error, 3 verification
//! failure.

use crate::amalgam::{
    apply_diagonal_extension, build_amalgam, compute_di, orientation_search, verify_ct_axioms,
    Sign,
};
use crate::classify::{
    enumerate_classes, oracle_matrix_iso, oracle_pointing_iso, verify_pointing_witness,
};
use crate::completion::{affine_completion, spherical_completion, verify_completion, verify_evaluated};
use crate::diagram::{spanning_structure, Diagram};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::path_group::{phi_of_pointing, Pointing, TwistGroup};
use crate::presentation::{emit_presentation, parse_presentation, verify_parsed};
use crate::report;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Classify,
    Verify,
    Oracle,
    Complete,
    Emit,
}

impl Command {
    pub fn parse(s: &str) -> Result<Command> {
        match s {
            "classify" => Ok(Command::Classify),
            "verify" => Ok(Command::Verify),
            "oracle" => Ok(Command::Oracle),
            "complete" => Ok(Command::Complete),
            "emit" => Ok(Command::Emit),
            other => Err(Error::InvalidInput(format!("unknown command '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Verify => "verify",
            Command::Oracle => "oracle",
            Command::Complete => "complete",
            Command::Emit => "emit",
        }
    }
}

/// A fully parsed run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub field: String,
    pub diagram_text: String,
    pub pointing_text: Option<String>,
    pub seed: u64,
}

/// Outcome of a run: the report text plus the process exit code.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: String,
    pub exit_code: i32,
}

fn load(config: &RunConfig) -> Result<(FieldCtx, Diagram, Pointing)> {
    let ctx = FieldCtx::parse(&config.field)?;
    if ctx.order() < 4 {
        return Err(Error::FieldTooSmall { q: ctx.order() });
    }
    let d = Diagram::parse(&config.diagram_text)?;
    let pointing = match &config.pointing_text {
        None => Pointing::trivial(),
        Some(text) => Pointing::parse(&d, ctx.m, text)?,
    };
    Ok((ctx, d, pointing))
}

/// Run a command; input errors come back as `Err`, verification failures as
/// `Ok` with exit code 3 and the failures recorded in the report.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let (ctx, d, pointing) = load(config)?;
    let sd = spanning_structure(&d, 0)?;
    let mut out = report::header(config.command.name(), &ctx, &d, &sd);
    let _ = writeln!(out, "seed: {}", config.seed);
    let tg = TwistGroup::for_field(&ctx);
    let mut failed = false;

    match config.command {
        Command::Classify => {
            let classes = enumerate_classes(&d, &ctx, &sd)?;
            let orientable = classes.iter().filter(|c| c.orientable).count();
            let _ = writeln!(out, "classes: {}", classes.len());
            let _ = writeln!(out, "orientable: {orientable}");
            for (i, c) in classes.iter().enumerate() {
                let phi: Vec<String> = sd
                    .extra
                    .iter()
                    .map(|e| {
                        let a = c.phi[e];
                        format!(
                            "phi[{}->{}]=({},{})",
                            d.label(e.from),
                            d.label(e.to),
                            a.eps as u8,
                            a.r
                        )
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "class {i}: key={} {} orientable={}",
                    c.key(&sd),
                    phi.join(" "),
                    c.orientable
                );
                let canon = c
                    .canonical
                    .delta
                    .iter()
                    .map(|(e, a)| {
                        format!(
                            "{}->{}:({},{})",
                            d.label(e.from),
                            d.label(e.to),
                            a.eps as u8,
                            a.r
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(",");
                let _ = writeln!(
                    out,
                    "class {i} canonical-pointing: {}",
                    if canon.is_empty() { "trivial" } else { &canon }
                );
            }
        }
        Command::Verify => {
            let a = build_amalgam(&d, &pointing, &ctx)?;
            let axioms = verify_ct_axioms(&a, config.seed);
            let _ = writeln!(out, "ct-axioms: {}", if axioms.ok() { "pass" } else { "FAIL" });
            for e in &axioms.edges {
                let _ = writeln!(
                    out,
                    "edge {} {}: standard-pair={} homomorphic={} injective={} concrete={}",
                    e.first, e.second, e.standard_pair, e.homomorphic, e.injective, e.concrete
                );
            }
            for ne in &axioms.non_edges {
                let _ = writeln!(out, "non-edge {} {}: commute={}", ne.a, ne.b, ne.commute);
            }
            if !axioms.ok() {
                failed = true;
            }
            if ctx.order() <= 9 {
                for v in d.vertices() {
                    if d.degree(v) == 0 {
                        continue;
                    }
                    let di = compute_di(&a, v)?;
                    let size = di.per_edge.first().map(|p| p.1.len()).unwrap_or(0);
                    let _ = writeln!(
                        out,
                        "torus {}: order={} edge-independent={} diagonal-in-edge-frames={}",
                        di.vertex, size, di.consistent, di.common_torus_diagonal
                    );
                    if !di.consistent || !di.common_torus_diagonal {
                        failed = true;
                    }
                }
            } else {
                let _ = writeln!(out, "torus scan: skipped (field too large)");
            }
            let orient = orientation_search(&a)?;
            match &orient.witness {
                Some(w) => {
                    let signs: Vec<String> = d
                        .vertices()
                        .map(|v| {
                            format!(
                                "{}:{}",
                                d.label(v),
                                match w.signs[v] {
                                    Sign::Plus => "+",
                                    Sign::Minus => "-",
                                }
                            )
                        })
                        .collect();
                    let _ = writeln!(out, "orientation: witness {}", signs.join(","));
                    for c in &w.certificates {
                        let _ = writeln!(
                            out,
                            "borel-certificate {} {}: unipotent-closure-order={}",
                            c.first,
                            c.second,
                            c.closure.len()
                        );
                    }
                }
                None => {
                    // expected for non-orientable classes; recorded as data
                    let _ = writeln!(
                        out,
                        "orientation: exhausted {} sign assignments without witness",
                        orient.assignments_tried
                    );
                }
            }
            let phi = phi_of_pointing(&tg, &pointing, &sd);
            let orientable_by_phi = phi.values().all(|a| !a.eps);
            let _ = writeln!(out, "orientable-by-invariant: {orientable_by_phi}");
            if orient.witness.is_some() != orientable_by_phi {
                let _ = writeln!(out, "orientation-dichotomy: VIOLATED");
                failed = true;
            } else {
                let _ = writeln!(out, "orientation-dichotomy: consistent");
            }
            // diagonal extension sanity on a nontrivial family
            let mut taus = BTreeMap::new();
            let zeta = ctx.primitive();
            for v in d.vertices() {
                taus.insert(v, (zeta, ctx.one()));
            }
            let ext = apply_diagonal_extension(&a, &taus)?;
            let _ = writeln!(out, "diagonal-extension: {}", if ext.ok() { "pass" } else { "FAIL" });
            if !ext.ok() {
                failed = true;
            }
        }
        Command::Oracle => {
            let b = sd.betti();
            let all_pointings = (tg.order() as u64).pow(2 * d.edge_count() as u32);
            let _ = writeln!(out, "pointings-total: {all_pointings}");
            let _ = writeln!(out, "classes-expected: {}", (tg.order() as u64).pow(b as u32));
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let directed = d.directed_edges();
            let sample_pointing = |rng: &mut ChaCha8Rng| {
                let mut p = Pointing::trivial();
                for &e in &directed {
                    p.set(e, tg.from_index(rng.gen_range(0..tg.order())));
                }
                p
            };
            // a pointing in the same class, by shifting every out-edge of each
            // vertex by a fixed coordinate; such shifts cancel in all cycles
            let coboundary_variant = |p: &Pointing, rng: &mut ChaCha8Rng| {
                let mut q = p.clone();
                for v in d.vertices() {
                    let c = tg.from_index(rng.gen_range(0..tg.order()));
                    for w in d.neighbors(v) {
                        let e = crate::diagram::DirectedEdge::new(v, w);
                        q.set(e, tg.add(q.get(e), c));
                    }
                }
                q
            };
            let mut phi_oracle_mismatch = 0usize;
            let mut check_pair = |p1: &Pointing, p2: &Pointing| -> Result<()> {
                let by_phi =
                    phi_of_pointing(&tg, p1, &sd) == phi_of_pointing(&tg, p2, &sd);
                let by_oracle = oracle_pointing_iso(&tg, &d, p1, p2)?;
                if by_phi != by_oracle.is_some() {
                    phi_oracle_mismatch += 1;
                }
                if let Some(w) = by_oracle {
                    if !verify_pointing_witness(&tg, &d, p1, p2, &w) {
                        phi_oracle_mismatch += 1;
                    }
                }
                Ok(())
            };
            // full pairwise when that stays under 10^4 pairs, else 200 + 200
            // stratified samples
            let full_pairwise =
                all_pointings <= 141 && all_pointings * (all_pointings - 1) / 2 <= 10_000;
            let trials;
            if full_pairwise {
                let order = tg.order() as u64;
                let decode = |mask: u64| {
                    let mut rem = mask;
                    let mut p = Pointing::trivial();
                    for &e in &directed {
                        p.set(e, tg.from_index((rem % order) as usize));
                        rem /= order;
                    }
                    p
                };
                let mut count = 0usize;
                for i in 0..all_pointings {
                    for j in (i + 1)..all_pointings {
                        check_pair(&decode(i), &decode(j))?;
                        count += 1;
                    }
                }
                trials = count;
                let _ = writeln!(out, "pointing-oracle-mode: full-pairwise");
            } else {
                for _ in 0..200 {
                    let p1 = sample_pointing(&mut rng);
                    let p2 = coboundary_variant(&p1, &mut rng);
                    check_pair(&p1, &p2)?;
                }
                // on trees every pointing is in the single class: no cross pairs
                let cross_target = if b == 0 { 0 } else { 200 };
                let mut cross = 0usize;
                while cross < cross_target {
                    let p1 = sample_pointing(&mut rng);
                    let p2 = sample_pointing(&mut rng);
                    if phi_of_pointing(&tg, &p1, &sd) == phi_of_pointing(&tg, &p2, &sd) {
                        continue;
                    }
                    check_pair(&p1, &p2)?;
                    cross += 1;
                }
                trials = 200 + cross_target;
                let _ = writeln!(
                    out,
                    "pointing-oracle-mode: sampled 200 same + {cross_target} cross"
                );
            }
            let _ = writeln!(
                out,
                "pointing-oracle-trials: {trials} mismatches: {phi_oracle_mismatch}"
            );
            if phi_oracle_mismatch > 0 {
                failed = true;
            }
            // matrix-level spot checks, fewer because each builds amalgams
            let matrix_trials = if d.vertex_count() <= 6 { 6 } else { 0 };
            let mut matrix_mismatch = 0usize;
            for _ in 0..matrix_trials {
                let p1 = sample_pointing(&mut rng);
                let p2 = sample_pointing(&mut rng);
                let a1 = build_amalgam(&d, &p1, &ctx)?;
                let a2 = build_amalgam(&d, &p2, &ctx)?;
                let by_matrix = oracle_matrix_iso(&a1, &a2)?;
                let by_phi =
                    phi_of_pointing(&tg, &p1, &sd) == phi_of_pointing(&tg, &p2, &sd);
                if by_matrix.is_some() != by_phi {
                    matrix_mismatch += 1;
                }
            }
            let _ = writeln!(
                out,
                "matrix-oracle-trials: {matrix_trials} mismatches: {matrix_mismatch}"
            );
            if matrix_mismatch > 0 {
                failed = true;
            }
        }
        Command::Complete => {
            if pointing != Pointing::trivial() {
                return Err(Error::InvalidInput(
                    "completion witnesses cover the trivial pointing only".to_string(),
                ));
            }
            let shape = diagram_shape(&d);
            match shape {
                DiagramShape::Path => {
                    let n = d.vertex_count() + 1;
                    let (a, w) = spherical_completion(n, &ctx)?;
                    let _ = writeln!(out, "completion: SL{}({})", n, ctx.name());
                    let rep = verify_completion(&a, &w)?;
                    for s in &rep.squares {
                        let _ = writeln!(out, "check {}: {}", s.description, if s.ok { "pass" } else { "FAIL" });
                    }
                    if !rep.ok() {
                        failed = true;
                    }
                }
                DiagramShape::Cycle => {
                    let n = d.vertex_count();
                    let (a, w) = affine_completion(n, &ctx)?;
                    let _ = writeln!(out, "completion: SL{}({}[t,t^-1])", n, ctx.name());
                    let rep = verify_completion(&a, &w)?;
                    for s in &rep.squares {
                        let _ = writeln!(out, "check {}: {}", s.description, if s.ok { "pass" } else { "FAIL" });
                    }
                    if !rep.ok() {
                        failed = true;
                    }
                    let eval = verify_evaluated(&a, &w, ctx.one())?;
                    let _ = writeln!(
                        out,
                        "evaluation-at-1: {}",
                        if eval.ok() { "pass" } else { "FAIL" }
                    );
                    if !eval.ok() {
                        failed = true;
                    }
                }
                DiagramShape::Other => {
                    return Err(Error::InvalidInput(
                        "no completion witness available: diagram is neither a path nor a cycle"
                            .to_string(),
                    ));
                }
            }
        }
        Command::Emit => {
            let a = build_amalgam(&d, &pointing, &ctx)?;
            let dump = emit_presentation(&a);
            let parsed = parse_presentation(&dump)?;
            let round_trip = verify_parsed(&parsed)?;
            let _ = writeln!(out, "round-trip: {}", if round_trip { "pass" } else { "FAIL" });
            if !round_trip {
                failed = true;
            }
            out.push_str("--- presentation ---\n");
            out.push_str(&dump);
        }
    }

    Ok(RunOutcome {
        report: out,
        exit_code: if failed { EXIT_VERIFY } else { EXIT_OK },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DiagramShape {
    Path,
    Cycle,
    Other,
}

fn diagram_shape(d: &Diagram) -> DiagramShape {
    if !d.check_admissible().is_ok() {
        return DiagramShape::Other;
    }
    let n = d.vertex_count();
    let e = d.edge_count();
    let max_deg = d.vertices().map(|v| d.degree(v)).max().unwrap_or(0);
    if e + 1 == n && max_deg <= 2 {
        DiagramShape::Path
    } else if e == n && max_deg == 2 {
        DiagramShape::Cycle
    } else {
        DiagramShape::Other
    }
}
