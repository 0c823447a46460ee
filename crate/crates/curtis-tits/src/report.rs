//! Deterministic report rendering. Reports are line-based `key: value` text
//! with per-item lines, so golden-file comparisons are stable across runs.

use crate::diagram::{Diagram, SpanningData};
use crate::field::FieldCtx;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// SHA-256 of the canonical diagram serialization, hex-encoded.
pub fn diagram_hash(d: &Diagram) -> String {
    let mut hasher = Sha256::new();
    hasher.update(d.serialize().as_bytes());
    hex::encode(hasher.finalize())
}

/// The common report header: tool version, command, field, diagram hash and
/// the spanning-tree frame the invariants are reported against.
pub fn header(command: &str, ctx: &FieldCtx, d: &Diagram, sd: &SpanningData) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ct-report-version: 1");
    let _ = writeln!(out, "tool-version: {TOOL_VERSION}");
    let _ = writeln!(out, "command: {command}");
    let _ = writeln!(out, "field: {}", ctx.name());
    let _ = writeln!(out, "diagram-hash: {}", diagram_hash(d));
    let _ = writeln!(out, "base: {}", d.label(sd.base));
    let tree: Vec<String> = sd
        .tree
        .iter()
        .map(|&(a, b)| format!("{}-{}", d.label(a), d.label(b)))
        .collect();
    let _ = writeln!(out, "tree-edges: {}", tree.join(","));
    let h: Vec<String> = sd
        .extra
        .iter()
        .map(|e| format!("{}->{}", d.label(e.from), d.label(e.to)))
        .collect();
    let _ = writeln!(out, "h-edges: {}", h.join(","));
    let _ = writeln!(out, "betti: {}", sd.betti());
    out
}
