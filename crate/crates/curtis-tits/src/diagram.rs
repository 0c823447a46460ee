//! Dynkin diagram representation, admissibility checking and the deterministic
//! spanning structure underlying the fundamental-group computations.
//!
//! File format (UTF-8, line based): `vertex <label>` lines followed by
//! `edge <label> <label>` lines; `#` starts a comment. Vertices keep file
//! order; edges keep file order and their listed orientation, which fixes
//! which endpoint takes the first slot of the edge group downstream.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

pub type VertexId = usize;

/// A directed edge between vertex indices. Every undirected edge of the
/// diagram exists in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedEdge {
    pub from: VertexId,
    pub to: VertexId,
}

impl DirectedEdge {
    pub fn new(from: VertexId, to: VertexId) -> Self {
        DirectedEdge { from, to }
    }

    pub fn reverse(self) -> Self {
        DirectedEdge {
            from: self.to,
            to: self.from,
        }
    }

    /// Unordered endpoints, normalized.
    pub fn undirected(self) -> (VertexId, VertexId) {
        if self.from <= self.to {
            (self.from, self.to)
        } else {
            (self.to, self.from)
        }
    }
}

/// A simply laced Dynkin diagram: a simple graph with labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    labels: Vec<String>,
    index: BTreeMap<String, VertexId>,
    /// Edges in input order, with their listed orientation.
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<BTreeSet<VertexId>>,
}

/// Result of the admissibility check; violations are values, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    Ok,
    Disconnected { component_of: String, outside: String },
    Triangle(String, String, String),
    Empty,
}

impl Admissibility {
    pub fn is_ok(&self) -> bool {
        matches!(self, Admissibility::Ok)
    }
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Admissibility::Ok => write!(f, "admissible"),
            Admissibility::Disconnected {
                component_of,
                outside,
            } => write!(
                f,
                "disconnected: '{outside}' is not reachable from '{component_of}'"
            ),
            Admissibility::Triangle(a, b, c) => {
                write!(f, "circuit of length 3 on {{{a}, {b}, {c}}}")
            }
            Admissibility::Empty => write!(f, "empty diagram"),
        }
    }
}

impl Diagram {
    pub fn new() -> Diagram {
        Diagram {
            labels: Vec::new(),
            index: BTreeMap::new(),
            edges: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<VertexId> {
        if self.index.contains_key(label) {
            return Err(Error::InvalidInput(format!("duplicate vertex '{label}'")));
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        self.adjacency.push(BTreeSet::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<()> {
        let ia = self.vertex(a)?;
        let ib = self.vertex(b)?;
        if ia == ib {
            return Err(Error::InvalidInput(format!("loop at vertex '{a}'")));
        }
        if self.adjacency[ia].contains(&ib) {
            return Err(Error::InvalidInput(format!("duplicate edge {a} {b}")));
        }
        self.adjacency[ia].insert(ib);
        self.adjacency[ib].insert(ia);
        self.edges.push((ia, ib));
        Ok(())
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.labels.len()
    }

    /// Edges in input order with their listed orientation.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adjacency[a].contains(&b)
    }

    /// All directed edges (both directions of every edge), sorted by labels.
    pub fn directed_edges(&self) -> Vec<DirectedEdge> {
        let mut out: Vec<DirectedEdge> = self
            .edges
            .iter()
            .flat_map(|&(a, b)| [DirectedEdge::new(a, b), DirectedEdge::new(b, a)])
            .collect();
        out.sort_by(|x, y| {
            (self.label(x.from), self.label(x.to)).cmp(&(self.label(y.from), self.label(y.to)))
        });
        out
    }

    /// Non-adjacent unordered vertex pairs.
    pub fn non_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for a in self.vertices() {
            for b in self.vertices() {
                if a < b && !self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Parse the line-based diagram format.
    pub fn parse(text: &str) -> Result<Diagram> {
        let mut d = Diagram::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let keyword = parts.next().unwrap();
            let wrap = |e: Error| match e {
                Error::InvalidInput(msg) | Error::UnknownVertex(msg) => Error::DiagramParse {
                    line: lineno + 1,
                    msg,
                },
                other => other,
            };
            match keyword {
                "vertex" => {
                    let label = parts.next().ok_or(Error::DiagramParse {
                        line: lineno + 1,
                        msg: "vertex needs a label".to_string(),
                    })?;
                    d.add_vertex(label).map_err(wrap)?;
                }
                "edge" => {
                    let a = parts.next().ok_or(Error::DiagramParse {
                        line: lineno + 1,
                        msg: "edge needs two labels".to_string(),
                    })?;
                    let b = parts.next().ok_or(Error::DiagramParse {
                        line: lineno + 1,
                        msg: "edge needs two labels".to_string(),
                    })?;
                    d.add_edge(a, b).map_err(wrap)?;
                }
                other => {
                    return Err(Error::DiagramParse {
                        line: lineno + 1,
                        msg: format!("unknown keyword '{other}'"),
                    });
                }
            }
        }
        Ok(d)
    }

    /// Canonical serialization: the parseable form with original ordering.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            out.push_str(&format!("vertex {}\n", self.label(v)));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("edge {} {}\n", self.label(a), self.label(b)));
        }
        out
    }

    /// Connected and triangle-free (simplicity is enforced at construction).
    pub fn check_admissible(&self) -> Admissibility {
        if self.labels.is_empty() {
            return Admissibility::Empty;
        }
        // connectivity from vertex 0
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Admissibility::Disconnected {
                component_of: self.label(0).to_string(),
                outside: self.label(v).to_string(),
            };
        }
        // triangle search
        for &(a, b) in &self.edges {
            if let Some(c) = self.adjacency[a].intersection(&self.adjacency[b]).next() {
                return Admissibility::Triangle(
                    self.label(a).to_string(),
                    self.label(b).to_string(),
                    self.label(*c).to_string(),
                );
            }
        }
        Admissibility::Ok
    }

    /// A path diagram with the given vertex labels, edges along the path.
    pub fn path(labels: &[&str]) -> Diagram {
        let mut d = Diagram::new();
        for l in labels {
            d.add_vertex(l).unwrap();
        }
        for w in labels.windows(2) {
            d.add_edge(w[0], w[1]).unwrap();
        }
        d
    }

    /// A cycle diagram; edges listed along the cyclic orientation, including
    /// the wrap edge from the last vertex back to the first.
    pub fn cycle(labels: &[&str]) -> Diagram {
        let mut d = Diagram::path(labels);
        d.add_edge(labels[labels.len() - 1], labels[0]).unwrap();
        d
    }
}

impl Default for Diagram {
    fn default() -> Self {
        Diagram::new()
    }
}

/// Deterministic spanning structure: BFS tree, extra directed edges H and one
/// fundamental cycle through the base point per H-edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningData {
    pub base: VertexId,
    /// Tree edges as normalized unordered pairs.
    pub tree: BTreeSet<(VertexId, VertexId)>,
    /// Non-tree edges with chosen orientation, in label-lexicographic order.
    pub extra: Vec<DirectedEdge>,
    /// For each extra edge, the closed edge path at `base` through the tree.
    pub cycles: Vec<Vec<DirectedEdge>>,
    /// BFS parent per vertex (base maps to itself).
    parent: Vec<VertexId>,
    /// BFS discovery order per vertex.
    order: Vec<usize>,
}

impl SpanningData {
    /// First Betti number: the rank of the fundamental group.
    pub fn betti(&self) -> usize {
        self.extra.len()
    }

    /// Tree path from `base` to `v` as directed edges.
    pub fn path_from_base(&self, v: VertexId) -> Vec<DirectedEdge> {
        let mut back = Vec::new();
        let mut cur = v;
        while cur != self.base {
            let p = self.parent[cur];
            back.push(DirectedEdge::new(p, cur));
            cur = p;
        }
        back.reverse();
        back
    }

    /// Tree path from `v` back to `base`.
    pub fn path_to_base(&self, v: VertexId) -> Vec<DirectedEdge> {
        let mut out = self.path_from_base(v);
        out.reverse();
        for e in out.iter_mut() {
            *e = e.reverse();
        }
        out
    }

    pub fn discovery_order(&self, v: VertexId) -> usize {
        self.order[v]
    }
}

/// BFS spanning structure from `base`, visiting neighbors in label order.
/// H-edges are oriented from the BFS-earlier endpoint and listed in
/// label-lexicographic order.
pub fn spanning_structure(d: &Diagram, base: VertexId) -> Result<SpanningData> {
    let adm = d.check_admissible();
    if !adm.is_ok() {
        return Err(Error::NotAdmissible(adm.to_string()));
    }
    let n = d.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![usize::MAX; n];
    let mut tree = BTreeSet::new();
    parent[base] = base;
    order[base] = 0;
    let mut counter = 1usize;
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        // neighbors in label order
        let mut nb: Vec<VertexId> = d.neighbors(v).collect();
        nb.sort_by(|a, b| d.label(*a).cmp(d.label(*b)));
        for w in nb {
            if order[w] == usize::MAX {
                order[w] = counter;
                counter += 1;
                parent[w] = v;
                tree.insert(DirectedEdge::new(v, w).undirected());
                queue.push_back(w);
            }
        }
    }
    let mut extra: Vec<DirectedEdge> = d
        .edges()
        .iter()
        .filter(|&&(a, b)| !tree.contains(&DirectedEdge::new(a, b).undirected()))
        .map(|&(a, b)| {
            if order[a] <= order[b] {
                DirectedEdge::new(a, b)
            } else {
                DirectedEdge::new(b, a)
            }
        })
        .collect();
    extra.sort_by(|x, y| {
        (d.label(x.from), d.label(x.to)).cmp(&(d.label(y.from), d.label(y.to)))
    });

    let sd = SpanningData {
        base,
        tree,
        extra: extra.clone(),
        cycles: Vec::new(),
        parent,
        order,
    };
    let cycles = extra
        .iter()
        .map(|e| {
            let mut c = sd.path_from_base(e.from);
            c.push(*e);
            c.extend(sd.path_to_base(e.to));
            c
        })
        .collect();
    Ok(SpanningData { cycles, ..sd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElem;

    fn c4() -> Diagram {
        Diagram::cycle(&["a", "b", "c", "d"])
    }

    /// Theta graph: two hubs joined by three internally disjoint paths of
    /// lengths 2, 2 and 3.
    pub fn theta() -> Diagram {
        let mut d = Diagram::new();
        for l in ["u", "v", "p", "q", "r1", "r2"] {
            d.add_vertex(l).unwrap();
        }
        for (a, b) in [
            ("u", "p"),
            ("p", "v"),
            ("u", "q"),
            ("q", "v"),
            ("u", "r1"),
            ("r1", "r2"),
            ("r2", "v"),
        ] {
            d.add_edge(a, b).unwrap();
        }
        d
    }

    #[test]
    fn parse_simple_path() {
        let d = Diagram::parse("vertex a\nvertex b\nedge a b\n").unwrap();
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_count(), 1);
        assert!(d.check_admissible().is_ok());
    }

    #[test]
    fn parse_rejects_loops_and_duplicates() {
        assert!(Diagram::parse("vertex a\nedge a a\n").is_err());
        assert!(Diagram::parse("vertex a\nvertex b\nedge a b\nedge b a\n").is_err());
        assert!(Diagram::parse("vertex a\nvertex a\n").is_err());
        assert!(Diagram::parse("vertex a\nvertex b\nedge a c\n").is_err());
        assert!(Diagram::parse("frobnicate a\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let d = Diagram::parse("# a path\nvertex a # first\n\nvertex b\nedge a b\n").unwrap();
        assert_eq!(d.vertex_count(), 2);
    }

    #[test]
    fn four_cycle_parses_and_is_admissible() {
        let text = "vertex a\nvertex b\nvertex c\nvertex d\nedge a b\nedge b c\nedge c d\nedge d a\n";
        let d = Diagram::parse(text).unwrap();
        assert_eq!(d.vertex_count(), 4);
        assert_eq!(d.edge_count(), 4);
        assert!(d.check_admissible().is_ok());
    }

    #[test]
    fn triangle_is_inadmissible() {
        let mut d = Diagram::new();
        for l in ["1", "2", "3"] {
            d.add_vertex(l).unwrap();
        }
        d.add_edge("1", "2").unwrap();
        d.add_edge("2", "3").unwrap();
        d.add_edge("1", "3").unwrap();
        assert!(matches!(d.check_admissible(), Admissibility::Triangle(..)));
    }

    #[test]
    fn disjoint_edges_are_inadmissible() {
        let mut d = Diagram::new();
        for l in ["a", "b", "c", "d"] {
            d.add_vertex(l).unwrap();
        }
        d.add_edge("a", "b").unwrap();
        d.add_edge("c", "d").unwrap();
        assert!(matches!(
            d.check_admissible(),
            Admissibility::Disconnected { .. }
        ));
        let a4 = Diagram::path(&["a", "b", "c", "d"]);
        assert!(a4.check_admissible().is_ok());
    }

    #[test]
    fn spanning_c4_has_one_h_edge_and_a_4_cycle() {
        let d = c4();
        let sd = spanning_structure(&d, 0).unwrap();
        assert_eq!(sd.betti(), 1);
        assert_eq!(sd.cycles.len(), 1);
        let cycle = &sd.cycles[0];
        assert_eq!(cycle.len(), 4);
        assert_eq!(cycle.first().unwrap().from, 0);
        assert_eq!(cycle.last().unwrap().to, 0);
        // the H-edge occurs exactly once in its own cycle
        let h = sd.extra[0];
        let occurrences = cycle.iter().filter(|&&e| e == h).count();
        assert_eq!(occurrences, 1);
        assert!(!cycle.iter().any(|&e| e == h.reverse()));
    }

    #[test]
    fn tree_has_no_h_edges() {
        let d = Diagram::path(&["a", "b", "c", "d", "e"]);
        let sd = spanning_structure(&d, 0).unwrap();
        assert_eq!(sd.betti(), 0);
    }

    #[test]
    fn theta_graph_has_betti_two() {
        let d = theta();
        assert_eq!(d.vertex_count(), 6);
        assert_eq!(d.edge_count(), 7);
        let sd = spanning_structure(&d, 0).unwrap();
        assert_eq!(sd.betti(), 2);
        for (e, cycle) in sd.extra.iter().zip(&sd.cycles) {
            assert_eq!(cycle.iter().filter(|&&x| x == *e).count(), 1);
            assert_eq!(cycle.first().unwrap().from, sd.base);
            assert_eq!(cycle.last().unwrap().to, sd.base);
            // consecutive edges compose head-to-tail
            for w in cycle.windows(2) {
                assert_eq!(w[0].to, w[1].from);
            }
        }
    }

    #[test]
    fn betti_matches_gf2_cycle_space_rank() {
        // independent check: |H| equals |E| - rank of the incidence matrix
        // over GF(2)
        let gf2 = crate::field::FieldCtx::new(2, 1).unwrap();
        for d in [c4(), theta(), Diagram::path(&["a", "b", "c"])] {
            let n = d.vertex_count();
            let rows: Vec<Vec<FieldElem>> = d
                .edges()
                .iter()
                .map(|&(a, b)| {
                    let mut row = vec![gf2.zero(); n];
                    row[a] = gf2.one();
                    row[b] = gf2.one();
                    row
                })
                .collect();
            let span = crate::linalg::Subspace::from_spanning(&gf2, &rows, n);
            let cycle_dim = d.edge_count() - span.dim();
            let sd = spanning_structure(&d, 0).unwrap();
            assert_eq!(sd.betti(), cycle_dim);
        }
    }

    #[test]
    fn respanning_a_serialized_diagram_is_identical() {
        let d = theta();
        let sd1 = spanning_structure(&d, 0).unwrap();
        let d2 = Diagram::parse(&d.serialize()).unwrap();
        let sd2 = spanning_structure(&d2, 0).unwrap();
        assert_eq!(d, d2);
        assert_eq!(sd1, sd2);
    }

    #[test]
    fn spanning_rejects_inadmissible() {
        let mut d = Diagram::new();
        d.add_vertex("a").unwrap();
        d.add_vertex("b").unwrap();
        assert!(spanning_structure(&d, 0).is_err());
    }
}
