//! Machine-readable presentation dumps of an amalgam: vertex groups with
//! their standard generators, edge groups with the generator images under
//! both inclusion maps, and the non-edge commutation relations. Parsing a
//! dump recovers enough data to re-verify the amalgam axioms.

use crate::amalgam::CtAmalgam;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::matrix::{mat_from_string, mat_string, sl2_generators, Mat};
use crate::pairs;
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const PRESENTATION_VERSION: u32 = 1;

/// Names for the standard SL_2 generator set, in order: xp(b) for the field
/// basis elements b, then xm(1).
pub fn generator_names(ctx: &FieldCtx) -> Vec<String> {
    let mut names = Vec::new();
    let mut b = ctx.one();
    for _ in 0..ctx.m {
        names.push(format!("xp{}", ctx.elem_string(b)));
        b = ctx.mul(b, ctx.gen_x());
    }
    names.push(format!("xm{}", ctx.elem_string(ctx.one())));
    names
}

/// Emit the presentation of the amalgam as structured text.
pub fn emit_presentation(a: &CtAmalgam) -> String {
    let ctx = &a.field;
    let names = generator_names(ctx);
    let mut out = String::new();
    let _ = writeln!(out, "presentation-version: {PRESENTATION_VERSION}");
    let _ = writeln!(out, "field: {}", ctx.name());
    let _ = writeln!(
        out,
        "vertices: {}",
        a.diagram
            .vertices()
            .map(|v| a.diagram.label(v).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    for v in a.diagram.vertices() {
        let _ = writeln!(out, "VERTEX {}", a.diagram.label(v));
        let _ = writeln!(out, "group SL2({})", ctx.name());
        for (g, name) in sl2_generators(ctx).iter().zip(&names) {
            let _ = writeln!(out, "gen {} := {}", name, mat_string(ctx, g));
        }
    }
    for edge in &a.edges {
        let _ = writeln!(
            out,
            "EDGE {} {}",
            a.diagram.label(edge.first),
            a.diagram.label(edge.second)
        );
        let _ = writeln!(out, "group SL3({})", ctx.name());
        for (v, incl) in [
            (edge.first, &edge.incl_first),
            (edge.second, &edge.incl_second),
        ] {
            for (g, name) in sl2_generators(ctx).iter().zip(&names) {
                let _ = writeln!(
                    out,
                    "phi {} {} -> {}",
                    a.diagram.label(v),
                    name,
                    mat_string(ctx, &incl.apply(ctx, g))
                );
            }
        }
    }
    for (x, y) in a.diagram.non_edges() {
        let _ = writeln!(
            out,
            "NONEDGE {} {}",
            a.diagram.label(x),
            a.diagram.label(y)
        );
        let _ = writeln!(out, "relation commute");
    }
    let _ = writeln!(out, "END");
    out
}

/// The data recovered from a presentation dump.
#[derive(Debug, Clone)]
pub struct ParsedPresentation {
    pub field: FieldCtx,
    pub diagram: Diagram,
    /// Per directed edge (in dump order): the generator images of the source
    /// vertex group inside that edge group.
    pub images: BTreeMap<(String, String), Vec<Mat>>,
    pub non_edges: Vec<(String, String)>,
}

/// Parse a presentation dump back into checkable data.
pub fn parse_presentation(text: &str) -> Result<ParsedPresentation> {
    let mut field: Option<FieldCtx> = None;
    let mut diagram = Diagram::new();
    let mut vertices_declared = false;
    let mut current_edge: Option<(String, String)> = None;
    let mut images: BTreeMap<(String, String), Vec<Mat>> = BTreeMap::new();
    let mut non_edges = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: String| Error::PresentationParse {
            line: lineno + 1,
            msg,
        };
        if line.is_empty() || line == "END" {
            continue;
        }
        if let Some(rest) = line.strip_prefix("presentation-version:") {
            let v: u32 = rest
                .trim()
                .parse()
                .map_err(|_| err(format!("bad version '{rest}'")))?;
            if v != PRESENTATION_VERSION {
                return Err(err(format!("unsupported presentation version {v}")));
            }
        } else if let Some(rest) = line.strip_prefix("field:") {
            field = Some(FieldCtx::parse(rest.trim())?);
        } else if let Some(rest) = line.strip_prefix("vertices:") {
            for label in rest.split_whitespace() {
                diagram
                    .add_vertex(label)
                    .map_err(|e| err(e.to_string()))?;
            }
            vertices_declared = true;
        } else if let Some(rest) = line.strip_prefix("EDGE ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(err("EDGE needs two labels".to_string()));
            }
            if !vertices_declared {
                return Err(err("EDGE before vertices".to_string()));
            }
            diagram
                .add_edge(parts[0], parts[1])
                .map_err(|e| err(e.to_string()))?;
            current_edge = Some((parts[0].to_string(), parts[1].to_string()));
        } else if let Some(rest) = line.strip_prefix("NONEDGE ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(err("NONEDGE needs two labels".to_string()));
            }
            non_edges.push((parts[0].to_string(), parts[1].to_string()));
            current_edge = None;
        } else if let Some(rest) = line.strip_prefix("phi ") {
            let Some((ea, eb)) = current_edge.clone() else {
                return Err(err("phi outside an EDGE section".to_string()));
            };
            let ctx = field
                .as_ref()
                .ok_or_else(|| err("phi before field".to_string()))?;
            let arrow = rest
                .split_once("->")
                .ok_or_else(|| err("phi needs '->'".to_string()))?;
            let head: Vec<&str> = arrow.0.split_whitespace().collect();
            if head.len() != 2 {
                return Err(err("phi needs '<vertex> <gen> -> <matrix>'".to_string()));
            }
            let source = head[0].to_string();
            if source != ea && source != eb {
                return Err(err(format!("phi vertex '{source}' not on this edge")));
            }
            let m = mat_from_string(ctx, arrow.1.trim())?;
            if m.n != 3 {
                return Err(err("phi image must be 3 x 3".to_string()));
            }
            let target = if source == ea {
                (ea.clone(), eb.clone())
            } else {
                (eb.clone(), ea.clone())
            };
            images.entry(target).or_default().push(m);
        } else if line.starts_with("VERTEX ") || line.starts_with("group ") || line.starts_with("gen ")
            || line.starts_with("relation ")
        {
            // declarative lines; contents are fixed by the field
        } else {
            return Err(err(format!("unrecognized line '{line}'")));
        }
    }
    Ok(ParsedPresentation {
        field: field.ok_or(Error::PresentationParse {
            line: 0,
            msg: "missing field".to_string(),
        })?,
        diagram,
        images,
        non_edges,
    })
}

/// Re-verify the amalgam axioms on parsed presentation data: every edge's two
/// image families form a standard pair, every image has determinant one, and
/// the declared non-edges are really non-adjacent.
pub fn verify_parsed(p: &ParsedPresentation) -> Result<bool> {
    let ctx = &p.field;
    let mut ok = true;
    for &(a, b) in p.diagram.edges() {
        let la = p.diagram.label(a).to_string();
        let lb = p.diagram.label(b).to_string();
        let imgs_a = p
            .images
            .get(&(la.clone(), lb.clone()))
            .ok_or_else(|| Error::InvalidInput(format!("missing images for {la} -> {lb}")))?;
        let imgs_b = p
            .images
            .get(&(lb.clone(), la.clone()))
            .ok_or_else(|| Error::InvalidInput(format!("missing images for {lb} -> {la}")))?;
        for m in imgs_a.iter().chain(imgs_b) {
            if !crate::matrix::has_det_one(ctx, m) {
                ok = false;
            }
        }
        if pairs::is_standard_pair(ctx, imgs_a, imgs_b).is_none() {
            ok = false;
        }
    }
    for (x, y) in &p.non_edges {
        let vx = p.diagram.vertex(x)?;
        let vy = p.diagram.vertex(y)?;
        if p.diagram.has_edge(vx, vy) {
            ok = false;
        }
    }
    Ok(ok)
}
