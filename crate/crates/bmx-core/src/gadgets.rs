//! Signed graphs, even cycle matroids and grafts.
//!
//! A signed graph (G, sigma) represents the binary matroid whose columns are
//! vertex-edge incidence vectors extended by one signature coordinate that is
//! set exactly on the edges in sigma. A graft (G, T) appends the incidence
//! vector of the even-sized vertex set T to the incidence matrix instead.
//! Both constructions route through `BinaryMatroid::from_columns_with_map`,
//! so parallel and zero columns collapse and the label maps report where
//! each edge landed.

use crate::matroid::BinaryMatroid;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;
use core::str::FromStr;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphError {
    NoSuchEdge(String),
    NoSuchVertex(u8),
    OddTSize,
    /// Vertex splitting needs every odd non-loop cycle to pass the vertex.
    OddCycleAvoiding { vertex: u8 },
    Parse { line: usize, msg: String },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NoSuchEdge(l) => write!(f, "no edge labelled {l}"),
            GraphError::NoSuchVertex(v) => write!(f, "no vertex {v}"),
            GraphError::OddTSize => write!(f, "graft vertex set must have even size"),
            GraphError::OddCycleAvoiding { vertex } => {
                write!(f, "an odd cycle avoids vertex {vertex}; split impossible")
            }
            GraphError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub u: u8,
    pub v: u8,
    pub label: String,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    fn touches(&self, w: u8) -> bool {
        self.u == w || self.v == w
    }
}

/// A multigraph on vertices 0..n with labelled edges; loops and parallel
/// edges are allowed, labels are unique.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multigraph {
    n: u8,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(n: u8) -> Self {
        Multigraph { n, edges: Vec::new() }
    }

    /// K_n with edges labelled `u-v`.
    pub fn complete(n: u8) -> Self {
        let mut g = Multigraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v, &format!("{u}-{v}"));
            }
        }
        g
    }

    pub fn grow_to(&mut self, n: u8) {
        assert!(n >= self.n);
        self.n = n;
    }

    pub fn add_edge(&mut self, u: u8, v: u8, label: &str) {
        assert!(u < self.n && v < self.n, "edge endpoint out of range");
        assert!(self.edge(label).is_none(), "duplicate edge label {label}");
        self.edges.push(Edge { u, v, label: label.to_string() });
    }

    pub fn vertex_count(&self) -> u8 {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, label: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.label == label)
    }

    pub fn delete_edge(&self, label: &str) -> Result<Multigraph, GraphError> {
        if self.edge(label).is_none() {
            return Err(GraphError::NoSuchEdge(label.to_string()));
        }
        let edges = self.edges.iter().filter(|e| e.label != label).cloned().collect();
        Ok(Multigraph { n: self.n, edges })
    }

    /// Contracts an edge: a loop is just removed, otherwise the larger
    /// endpoint merges into the smaller and later vertices shift down.
    pub fn contract_edge(&self, label: &str) -> Result<Multigraph, GraphError> {
        let e = self.edge(label).ok_or_else(|| GraphError::NoSuchEdge(label.to_string()))?;
        if e.is_loop() {
            return self.delete_edge(label);
        }
        let keep = e.u.min(e.v);
        let gone = e.u.max(e.v);
        let relabel = |x: u8| {
            if x == gone {
                keep
            } else if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .filter(|f| f.label != label)
            .map(|f| Edge { u: relabel(f.u), v: relabel(f.v), label: f.label.clone() })
            .collect();
        Ok(Multigraph { n: self.n - 1, edges })
    }

    /// Connected components, counting isolated vertices; loops are ignored.
    pub fn components(&self) -> u8 {
        let n = self.n as usize;
        let mut parent: Vec<u8> = (0..self.n).collect();
        fn root(parent: &mut [u8], mut x: u8) -> u8 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (root(&mut parent, e.u), root(&mut parent, e.v));
            if a != b {
                parent[a as usize] = b;
            }
        }
        (0..n).filter(|&i| parent[i] == i as u8).count() as u8
    }

    /// The graphic matroid: incidence columns, no signature coordinate.
    pub fn cycle_matroid(&self) -> BinaryMatroid {
        SignedGraph::new(self.clone(), BTreeSet::new()).even_cycle_matroid().0
    }
}

/// A signed graph: a multigraph plus the set of odd edge labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedGraph {
    graph: Multigraph,
    sigma: BTreeSet<String>,
}

impl SignedGraph {
    pub fn new(graph: Multigraph, sigma: BTreeSet<String>) -> Self {
        for l in &sigma {
            assert!(graph.edge(l).is_some(), "sigma label {l} is not an edge");
        }
        SignedGraph { graph, sigma }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn sigma(&self) -> &BTreeSet<String> {
        &self.sigma
    }

    pub fn is_odd(&self, label: &str) -> bool {
        self.sigma.contains(label)
    }

    fn incidence_column(&self, e: &Edge) -> u16 {
        let n = self.graph.n;
        let sig = if self.is_odd(&e.label) { 1u16 << n } else { 0 };
        if e.is_loop() {
            sig
        } else {
            (1u16 << e.u) ^ (1u16 << e.v) ^ sig
        }
    }

    /// The represented matroid plus where each edge label ended up; `None`
    /// marks edges whose column is zero (even loops).
    pub fn even_cycle_matroid(&self) -> (BinaryMatroid, BTreeMap<String, Option<u16>>) {
        let n = self.graph.n;
        assert!(n <= 15, "too many vertices for a 16-bit signature column");
        let cols: Vec<u16> = self.graph.edges.iter().map(|e| self.incidence_column(e)).collect();
        let (m, re) = BinaryMatroid::from_columns_with_map(n + 1, cols.iter().copied());
        let map = self
            .graph
            .edges
            .iter()
            .zip(&cols)
            .map(|(e, &c)| (e.label.clone(), if c == 0 { None } else { Some(re.apply(c)) }))
            .collect();
        (m, map)
    }

    /// Does some cycle carry an odd number of odd edges? Loops count.
    pub fn has_odd_cycle(&self) -> bool {
        self.graph.edges.iter().any(|e| e.is_loop() && self.is_odd(&e.label))
            || potentials(self, None).is_none()
    }
}

/// Parity potentials making every non-loop edge (avoiding `skip`) even, or
/// `None` when an odd cycle obstructs. Potentials of unreached vertices
/// (and of `skip`) are false.
fn potentials(sg: &SignedGraph, skip: Option<u8>) -> Option<Vec<bool>> {
    let n = sg.graph.n as usize;
    let mut adj: Vec<Vec<(u8, bool)>> = vec![Vec::new(); n];
    for e in &sg.graph.edges {
        if e.is_loop() || Some(e.u) == skip || Some(e.v) == skip {
            continue;
        }
        let odd = sg.is_odd(&e.label);
        adj[e.u as usize].push((e.v, odd));
        adj[e.v as usize].push((e.u, odd));
    }
    let mut pot: Vec<Option<bool>> = vec![None; n];
    let mut stack = Vec::new();
    for start in 0..n {
        if pot[start].is_some() || Some(start as u8) == skip {
            continue;
        }
        pot[start] = Some(false);
        stack.push(start as u8);
        while let Some(x) = stack.pop() {
            let px = pot[x as usize].unwrap();
            for &(y, odd) in &adj[x as usize] {
                let want = px ^ odd;
                match pot[y as usize] {
                    None => {
                        pot[y as usize] = Some(want);
                        stack.push(y);
                    }
                    Some(p) if p != want => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(pot.into_iter().map(|p| p.unwrap_or(false)).collect())
}

/// Replaces sigma by its symmetric difference with the cut at `cut_side`.
/// The represented matroid does not change.
pub fn resign(sg: &SignedGraph, cut_side: &BTreeSet<u8>) -> SignedGraph {
    let mut sigma = sg.sigma.clone();
    for e in sg.graph.edges() {
        if !e.is_loop() && (cut_side.contains(&e.u) ^ cut_side.contains(&e.v)) {
            if !sigma.remove(&e.label) {
                sigma.insert(e.label.clone());
            }
        }
    }
    SignedGraph { graph: sg.graph.clone(), sigma }
}

pub fn sg_delete(sg: &SignedGraph, label: &str) -> Result<SignedGraph, GraphError> {
    let graph = sg.graph.delete_edge(label)?;
    let mut sigma = sg.sigma.clone();
    sigma.remove(label);
    Ok(SignedGraph { graph, sigma })
}

/// Contracts an edge of the signed graph. An odd loop wipes the signature
/// (its column is the signature unit, so contracting it makes the matroid
/// graphic); an even loop just disappears; any other edge is first expelled
/// from sigma by resigning at its smaller endpoint.
pub fn sg_contract(sg: &SignedGraph, label: &str) -> Result<SignedGraph, GraphError> {
    let e = sg.graph.edge(label).ok_or_else(|| GraphError::NoSuchEdge(label.to_string()))?;
    if e.is_loop() {
        let graph = sg.graph.delete_edge(label)?;
        let sigma = if sg.is_odd(label) {
            BTreeSet::new()
        } else {
            let mut s = sg.sigma.clone();
            s.remove(label);
            s
        };
        return Ok(SignedGraph { graph, sigma });
    }
    let base = if sg.is_odd(label) {
        let side: BTreeSet<u8> = [e.u.min(e.v)].into_iter().collect();
        resign(sg, &side)
    } else {
        sg.clone()
    };
    debug_assert!(!base.is_odd(label));
    let graph = base.graph.contract_edge(label)?;
    // Contraction renames vertices but sigma is by label, so it carries over.
    let sigma = base.sigma.iter().filter(|l| *l != label).cloned().collect();
    Ok(SignedGraph { graph, sigma })
}

/// Splits vertex `w` into w' and the new last vertex w'': after normalizing
/// the signature to live on the star of w, odd star edges go to w', even
/// ones to w'', and odd loops become w'-w'' edges. The cycle matroid of the
/// result equals the even cycle matroid of the input. Fails when an odd
/// non-loop cycle avoids w.
pub fn split_vertex(sg: &SignedGraph, w: u8) -> Result<Multigraph, GraphError> {
    let n = sg.graph.n;
    if w >= n {
        return Err(GraphError::NoSuchVertex(w));
    }
    let pot = potentials(sg, Some(w)).ok_or(GraphError::OddCycleAvoiding { vertex: w })?;
    let side: BTreeSet<u8> = (0..n).filter(|&v| v != w && pot[v as usize]).collect();
    let norm = resign(sg, &side);
    debug_assert!(norm
        .graph
        .edges()
        .iter()
        .all(|e| e.is_loop() || e.touches(w) || !norm.is_odd(&e.label)));
    let prime = w;
    let double_prime = n;
    let mut out = Multigraph::new(n + 1);
    for e in norm.graph.edges() {
        let (u, v) = if e.is_loop() {
            if norm.is_odd(&e.label) {
                (prime, double_prime)
            } else {
                (e.u, e.v)
            }
        } else if e.touches(w) {
            let other = if e.u == w { e.v } else { e.u };
            if norm.is_odd(&e.label) {
                (prime, other)
            } else {
                (double_prime, other)
            }
        } else {
            (e.u, e.v)
        };
        out.add_edge(u, v, &e.label);
    }
    Ok(out)
}

/// A graft: a multigraph with a distinguished even-sized vertex set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graft {
    graph: Multigraph,
    t_set: BTreeSet<u8>,
}

impl Graft {
    pub fn new(graph: Multigraph, t_set: BTreeSet<u8>) -> Result<Self, GraphError> {
        if t_set.len() % 2 != 0 {
            return Err(GraphError::OddTSize);
        }
        if let Some(&v) = t_set.iter().find(|&&v| v >= graph.n) {
            return Err(GraphError::NoSuchVertex(v));
        }
        Ok(Graft { graph, t_set })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn t_set(&self) -> &BTreeSet<u8> {
        &self.t_set
    }
}

/// The graft matroid: incidence columns plus the indicator column of T.
/// Returns the matroid, the edge label map, and the point of the T column
/// (`None` when it vanishes, i.e. T is empty).
pub fn graft_matroid(
    g: &Graft,
) -> (BinaryMatroid, BTreeMap<String, Option<u16>>, Option<u16>) {
    let n = g.graph.n;
    assert!(n <= 16);
    let edge_col = |e: &Edge| -> u16 {
        if e.is_loop() {
            0
        } else {
            (1u16 << e.u) ^ (1u16 << e.v)
        }
    };
    let t_col: u16 = g.t_set.iter().fold(0, |acc, &v| acc ^ (1u16 << v));
    let cols: Vec<u16> = g.graph.edges.iter().map(edge_col).chain([t_col]).collect();
    let (m, re) = BinaryMatroid::from_columns_with_map(n, cols.iter().copied());
    let to_point = |c: u16| if c == 0 { None } else { Some(re.apply(c)) };
    let map = g
        .graph
        .edges
        .iter()
        .map(|e| (e.label.clone(), to_point(edge_col(e))))
        .collect();
    (m, map, to_point(t_col))
}

pub fn graft_delete(g: &Graft, label: &str) -> Result<Graft, GraphError> {
    Ok(Graft { graph: g.graph.delete_edge(label)?, t_set: g.t_set.clone() })
}

/// Contracts a graph edge of the graft. When exactly one endpoint lies in
/// T, the merged vertex replaces it there; when both or neither do, both
/// endpoints leave T. Loops contract by deletion.
pub fn graft_contract(g: &Graft, label: &str) -> Result<Graft, GraphError> {
    let e = g.graph.edge(label).ok_or_else(|| GraphError::NoSuchEdge(label.to_string()))?;
    if e.is_loop() {
        return graft_delete(g, label);
    }
    let keep = e.u.min(e.v);
    let gone = e.u.max(e.v);
    let in_t = (g.t_set.contains(&e.u), g.t_set.contains(&e.v));
    let mut t: BTreeSet<u8> = g.t_set.iter().copied().filter(|&x| x != e.u && x != e.v).collect();
    if in_t.0 ^ in_t.1 {
        t.insert(keep);
    }
    let t_set = t
        .into_iter()
        .map(|x| if x > gone { x - 1 } else { x })
        .collect();
    Ok(Graft { graph: g.graph.contract_edge(label)?, t_set })
}

/// Finds, by bounded exhaustive search, a signed graph on at most three
/// vertices with exactly seven edges whose even cycle matroid has rank 3
/// and seven points (hence is the full rank-3 projective space). The seven
/// possible distinct columns force the shape: one odd and one even edge on
/// each vertex pair, plus one odd loop.
pub fn find_f7_signed_graph() -> SignedGraph {
    for n in 1..=3u8 {
        // Slots: loops first, then vertex pairs, in vertex order.
        let mut slots: Vec<(u8, u8)> = (0..n).map(|v| (v, v)).collect();
        for u in 0..n {
            for v in u + 1..n {
                slots.push((u, v));
            }
        }
        let mut counts = vec![(0u8, 0u8); slots.len()]; // (edges, odd among them)
        if let Some(sg) = search_slot(&slots, &mut counts, 0, 7, n) {
            return sg;
        }
    }
    unreachable!("bounded search must find the rank-3 presentation");
}

fn search_slot(
    slots: &[(u8, u8)],
    counts: &mut Vec<(u8, u8)>,
    i: usize,
    remaining: u8,
    n: u8,
) -> Option<SignedGraph> {
    if i == slots.len() {
        if remaining != 0 {
            return None;
        }
        let mut g = Multigraph::new(n);
        let mut sigma = BTreeSet::new();
        let mut next = 0usize;
        for (s, &(c, o)) in counts.iter().enumerate() {
            for j in 0..c {
                let label = format!("s{next}");
                next += 1;
                g.add_edge(slots[s].0, slots[s].1, &label);
                if j < o {
                    sigma.insert(label);
                }
            }
        }
        let sg = SignedGraph::new(g, sigma);
        let (m, _) = sg.even_cycle_matroid();
        if m.rank() == 3 && m.len() == 7 {
            return Some(sg);
        }
        return None;
    }
    for c in 0..=remaining {
        for o in 0..=c {
            counts[i] = (c, o);
            if let Some(sg) = search_slot(slots, counts, i + 1, remaining - c, n) {
                return Some(sg);
            }
        }
    }
    counts[i] = (0, 0);
    None
}

fn parse_vertex(tok: &str, n: u8, line: usize) -> Result<u8, GraphError> {
    let v: u8 = tok.parse().map_err(|_| GraphError::Parse {
        line,
        msg: format!("bad vertex: {tok}"),
    })?;
    if v >= n {
        return Err(GraphError::Parse { line, msg: format!("vertex {v} out of range") });
    }
    Ok(v)
}

fn parse_header(first: Option<(usize, &str)>) -> Result<u8, GraphError> {
    let (line, text) = first.ok_or(GraphError::Parse { line: 1, msg: "empty input".into() })?;
    let n: u8 = text
        .strip_prefix("n=")
        .and_then(|t| t.parse().ok())
        .ok_or(GraphError::Parse { line, msg: "expected n=<vertex count>".into() })?;
    if n > 16 {
        return Err(GraphError::Parse { line, msg: format!("vertex count {n} exceeds 16") });
    }
    Ok(n)
}

/// Text form: `n=<count>`, then one `u v label [odd]` line per edge.
impl FromStr for SignedGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let n = parse_header(lines.next())?;
        let mut g = Multigraph::new(n);
        let mut sigma = BTreeSet::new();
        for (line, text) in lines {
            let toks: Vec<&str> = text.split_whitespace().collect();
            let odd = match toks.len() {
                3 => false,
                4 if toks[3] == "odd" => true,
                _ => {
                    return Err(GraphError::Parse {
                        line,
                        msg: "expected: <u> <v> <label> [odd]".into(),
                    })
                }
            };
            let u = parse_vertex(toks[0], n, line)?;
            let v = parse_vertex(toks[1], n, line)?;
            if g.edge(toks[2]).is_some() {
                return Err(GraphError::Parse { line, msg: format!("duplicate label {}", toks[2]) });
            }
            g.add_edge(u, v, toks[2]);
            if odd {
                sigma.insert(toks[2].to_string());
            }
        }
        Ok(SignedGraph { graph: g, sigma })
    }
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.graph.n)?;
        for e in &self.graph.edges {
            write!(f, "{} {} {}", e.u, e.v, e.label)?;
            if self.is_odd(&e.label) {
                write!(f, " odd")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Text form: `n=<count>`, `T=<comma separated vertices>`, then edge lines.
impl FromStr for Graft {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let n = parse_header(lines.next())?;
        let (tline, ttext) = lines.next().ok_or(GraphError::Parse {
            line: 2,
            msg: "expected T=<vertex list>".into(),
        })?;
        let tbody = ttext.strip_prefix("T=").ok_or(GraphError::Parse {
            line: tline,
            msg: "expected T=<vertex list>".into(),
        })?;
        let mut t_set = BTreeSet::new();
        if !tbody.is_empty() {
            for tok in tbody.split(',') {
                t_set.insert(parse_vertex(tok, n, tline)?);
            }
        }
        let mut g = Multigraph::new(n);
        for (line, text) in lines {
            let toks: Vec<&str> = text.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(GraphError::Parse { line, msg: "expected: <u> <v> <label>".into() });
            }
            let u = parse_vertex(toks[0], n, line)?;
            let v = parse_vertex(toks[1], n, line)?;
            if g.edge(toks[2]).is_some() {
                return Err(GraphError::Parse { line, msg: format!("duplicate label {}", toks[2]) });
            }
            g.add_edge(u, v, toks[2]);
        }
        Graft::new(g, t_set)
    }
}

impl fmt::Display for Graft {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.graph.n)?;
        write!(f, "T=")?;
        for (i, v) in self.t_set.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        writeln!(f)?;
        for e in &self.graph.edges {
            writeln!(f, "{} {} {}", e.u, e.v, e.label)?;
        }
        Ok(())
    }
}

/// The explicit matrix verifications shipped with the toolkit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fixture {
    Lifting0,
    Lifting1,
    S4CaseB3,
    K24Pivot,
    Appendix,
}

impl Fixture {
    pub const ALL: [Fixture; 5] = [
        Fixture::Lifting0,
        Fixture::Lifting1,
        Fixture::S4CaseB3,
        Fixture::K24Pivot,
        Fixture::Appendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Lifting0 => "lifting(0)",
            Fixture::Lifting1 => "lifting(1)",
            Fixture::S4CaseB3 => "s4_case_b3",
            Fixture::K24Pivot => "k24_pivot",
            Fixture::Appendix => "appendix",
        }
    }
}

/// Runs one fixture; false on any failed assertion, no panics.
pub fn verify_fixture(which: Fixture) -> bool {
    match which {
        Fixture::Lifting0 => lifting_fixture(false),
        Fixture::Lifting1 => lifting_fixture(true),
        Fixture::S4CaseB3 => s4_case_b3_fixture(),
        Fixture::K24Pivot => k24_pivot_fixture(),
        Fixture::Appendix => appendix_fixture(),
    }
}

// Nine columns over the basis rows {x, c1, c2, c3}: each {x, c_i, d_i}
// is a line, and {c_1..c_4} is a circuit modulo x with alpha recording
// whether x sits inside that circuit's span. Adding the first row to the
// others pivots the four-column with leading 1 onto the x unit; the
// eight columns away from x are line-free and form the excluded minor.
// (Dropping the pivoted four-column instead would keep the lines through
// x, so it is x's column that must go.)
fn lifting_fixture(alpha: bool) -> bool {
    use crate::canon::are_isomorphic;

    let a = alpha as u16;
    let x = 1u16;
    let (c1, c2, c3) = (2u16, 4u16, 8u16);
    let (d1, d2, d3) = (x ^ c1, x ^ c2, x ^ c3);
    let c4 = (c1 ^ c2 ^ c3) | a;
    let d4 = x ^ c4;
    let cols = [x, c1, c2, c3, d1, d2, d3, c4, d4];

    // add the first row to all subsequent rows
    let op = |v: u16| if v & 1 != 0 { v ^ 0b1110 } else { v };
    let pivoted = if c4 & 1 != 0 { c4 } else { d4 };
    if op(pivoted) != x {
        return false;
    }

    let m9 = BinaryMatroid::from_columns(4, cols);
    let post = BinaryMatroid::from_columns(4, cols.map(op));
    if m9.len() != 9 || post.len() != 9 || !are_isomorphic(&m9, &post) {
        return false;
    }
    // x lies on the four lines {x, c_i, d_i}, and they survive removing
    // the pivoted column
    if m9.line_count_through(x) != Ok(4) {
        return false;
    }
    let literal = post.delete(op(pivoted)).expect("pivoted column is a point");
    if literal.lines().is_empty() {
        return false;
    }
    let eight = post.delete(op(x)).expect("x column is a point");
    are_isomorphic(&eight, &crate::construct::ag32())
}

// Eleven columns over the basis rows {x, a1, a2, a3}; adding rows two,
// three and four to the first replaces each leading entry with the
// column's parity, after which dropping a1, a2, a3 leaves the displayed
// eight columns.
fn s4_case_b3_fixture() -> bool {
    use crate::canon::are_isomorphic;

    let x = 1u16;
    let (a1, a2, a3) = (2u16, 4u16, 8u16);
    let (b1, b2, b3) = (x ^ a1, x ^ a2, x ^ a3);
    let y = 15u16;
    let (d1, d2, d3) = (y ^ a1, y ^ a2, y ^ a3);
    let cols = [x, a1, a2, a3, b1, b2, b3, y, d1, d2, d3];
    let m11 = BinaryMatroid::from_columns(4, cols);
    if m11.len() != 11 || m11.rank() != 4 {
        return false;
    }

    let op = |v: u16| (v & !1u16) | ((v.count_ones() as u16) & 1);
    let retained = [x, b1, b2, b3, y, d1, d2, d3].map(op);
    if retained != [1, 2, 4, 8, 14, 13, 11, 7] {
        return false;
    }
    let m8 = BinaryMatroid::from_columns(4, retained);
    m8.len() == 8 && are_isomorphic(&m8, &crate::construct::ag32())
}

// The two 5x9 matrices for the graft on K_{2,4} with T the degree-two
// side: the second is the first pivoted on the leading entry of the
// graft column, so their row spaces coincide; the graft construction
// reproduces the same matroid, the graft column solves as the star at
// the degree-four vertex (a T-join), and contracting it leaves the
// excluded minor.
fn k24_pivot_fixture() -> bool {
    use crate::canon::are_isomorphic;
    use crate::construct::ag32;
    use crate::gf2::{row_reduce, solve_in_basis, Gf2Matrix, Gf2Vector};

    let m1 = Gf2Matrix::from_rows_01(&[
        &[1, 0, 0, 0, 0, 1, 1, 1, 1],
        &[0, 1, 0, 0, 0, 1, 0, 0, 1],
        &[0, 0, 1, 0, 0, 0, 1, 0, 1],
        &[0, 0, 0, 1, 0, 0, 0, 1, 1],
        &[0, 0, 0, 0, 1, 1, 1, 1, 0],
    ]);
    let m2 = Gf2Matrix::from_rows_01(&[
        &[1, 0, 0, 0, 0, 1, 1, 1, 1],
        &[1, 1, 0, 0, 0, 0, 1, 1, 0],
        &[1, 0, 1, 0, 0, 1, 0, 1, 0],
        &[1, 0, 0, 1, 0, 1, 1, 0, 0],
        &[0, 0, 0, 0, 1, 1, 1, 1, 0],
    ]);
    if row_reduce(&m1) != row_reduce(&m2) {
        return false;
    }

    let mat1 = BinaryMatroid::from_matrix(&m1);
    let mat2 = BinaryMatroid::from_matrix(&m2);
    if mat1.len() != 9 || !are_isomorphic(&mat1, &mat2) {
        return false;
    }

    let mut g = Multigraph::new(6);
    for (i, b) in (2..6).enumerate() {
        g.add_edge(0, b, &format!("a{i}"));
        g.add_edge(1, b, &format!("b{i}"));
    }
    let t_set: BTreeSet<u8> = (2..6).collect();
    let graft = match Graft::new(g, t_set) {
        Ok(g) => g,
        Err(_) => return false,
    };
    let (gm, _, t_point) = graft_matroid(&graft);
    let Some(t_point) = t_point else { return false };
    if !are_isomorphic(&gm, &mat1) {
        return false;
    }

    // the star at the degree-four vertex is a T-join: its incidence
    // columns sum to the T indicator
    let star: Vec<Gf2Vector> = (2..6u8)
        .map(|b| Gf2Vector::new(6, 1 ^ (1u16 << b)))
        .chain([Gf2Vector::new(6, 2 ^ 4)])
        .collect();
    let t_col = Gf2Vector::new(6, 0b111100);
    if solve_in_basis(&star, t_col) != Ok(Some(0b1111)) {
        return false;
    }

    // graft column values: 15 in the first display, 1 after the pivot
    let con1 = mat1.contract(15).expect("graft point of the first display");
    let con2 = mat2.contract(1).expect("graft point of the second display");
    let cong = gm.contract(t_point).expect("graft point");
    are_isomorphic(&con1, &ag32()) && are_isomorphic(&con2, &ag32()) && are_isomorphic(&cong, &ag32())
}

// The three rank-5 size-15 matroids: simple, free of the excluded minor,
// non-regular, pairwise non-isomorphic, and each carrying the rank-4
// extremal matroid in the lower four rows of its first eleven columns.
fn appendix_fixture() -> bool {
    use crate::canon::canonical_key;
    use crate::construct::{appendix5, appendix5_matrix, mk5_plus};
    use crate::gf2::{Gf2Matrix, Gf2Vector};
    use crate::minortest::{has_minor, is_regular, MinorCache, MinorQuery, MinorTarget, RegularityCache};

    let q = MinorQuery::new(MinorTarget::Ag32);
    let mut cache = MinorCache::new();
    let mut reg = RegularityCache::new();
    let mk5p = mk5_plus();
    let mut keys = Vec::new();
    for k in 1..=3u8 {
        let m = appendix5(k);
        if m.rank() != 5 || m.len() != 15 {
            return false;
        }
        if has_minor(&m, &q, &mut cache) || is_regular(&m, &mut reg) {
            return false;
        }
        let full = appendix5_matrix(k);
        let portion = Gf2Matrix::from_rows(
            (1..5)
                .map(|i| Gf2Vector::new(11, full.row(i).bits() & 0x7ff))
                .collect(),
        )
        .expect("rows share the trimmed width");
        if BinaryMatroid::from_matrix(&portion) != mk5p {
            return false;
        }
        keys.push(canonical_key(&m));
    }
    keys[0] != keys[1] && keys[0] != keys[2] && keys[1] != keys[2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::construct;

    fn path(n: u8) -> Multigraph {
        let mut g = Multigraph::new(n);
        for i in 0..n - 1 {
            g.add_edge(i, i + 1, &format!("p{i}"));
        }
        g
    }

    fn k24() -> Multigraph {
        let mut g = Multigraph::new(6);
        for (i, b) in (2..6).enumerate() {
            g.add_edge(0, b, &format!("a{i}"));
            g.add_edge(1, b, &format!("b{i}"));
        }
        g
    }

    #[test]
    fn tree_with_empty_sigma_is_a_basis() {
        let sg = SignedGraph::new(path(4), BTreeSet::new());
        let (m, map) = sg.even_cycle_matroid();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.len(), 3);
        assert!(map.values().all(|p| p.is_some()));
    }

    #[test]
    fn single_odd_loop_is_one_point() {
        let mut g = Multigraph::new(1);
        g.add_edge(0, 0, "x");
        let sg = SignedGraph::new(g, ["x".to_string()].into_iter().collect());
        let (m, map) = sg.even_cycle_matroid();
        assert_eq!((m.rank(), m.len()), (1, 1));
        assert_eq!(map["x"], Some(1));
    }

    #[test]
    fn even_loop_vanishes_and_parallel_even_edges_collapse() {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1, "a");
        g.add_edge(0, 1, "b");
        g.add_edge(0, 0, "l");
        let sg = SignedGraph::new(g, BTreeSet::new());
        let (m, map) = sg.even_cycle_matroid();
        assert_eq!(m.len(), 1);
        assert_eq!(map["l"], None);
        assert_eq!(map["a"], map["b"]);
    }

    #[test]
    fn ecycle_rank_formula() {
        // rank = vertices - components + (1 if some odd cycle).
        let mut g = Multigraph::new(5);
        g.add_edge(0, 1, "a");
        g.add_edge(1, 2, "b");
        g.add_edge(2, 0, "c");
        g.add_edge(3, 4, "d");
        for sigma in [BTreeSet::new(), ["a".to_string()].into_iter().collect::<BTreeSet<_>>()] {
            let sg = SignedGraph::new(g.clone(), sigma);
            let (m, _) = sg.even_cycle_matroid();
            let odd = u8::from(sg.has_odd_cycle());
            assert_eq!(m.rank(), 5 - sg.graph().components() + odd);
        }
    }

    #[test]
    fn searched_f7_presentation() {
        let sg = find_f7_signed_graph();
        let (m, _) = sg.even_cycle_matroid();
        assert!(are_isomorphic(&m, &construct::f7()));
        // Shape is forced: three digons plus one odd loop.
        assert_eq!(sg.graph().vertex_count(), 3);
        assert_eq!(sg.graph().edges().len(), 7);
        let loops: Vec<_> = sg.graph().edges().iter().filter(|e| e.is_loop()).collect();
        assert_eq!(loops.len(), 1);
        assert!(sg.is_odd(&loops[0].label));
        for u in 0..3 {
            for v in u + 1..3 {
                let pair: Vec<_> = sg
                    .graph()
                    .edges()
                    .iter()
                    .filter(|e| (e.u.min(e.v), e.u.max(e.v)) == (u, v))
                    .collect();
                assert_eq!(pair.len(), 2);
                assert_eq!(pair.iter().filter(|e| sg.is_odd(&e.label)).count(), 1);
            }
        }
    }

    #[test]
    fn resign_empty_cut_is_identity_and_resign_is_involutive() {
        let sg = find_f7_signed_graph();
        assert_eq!(resign(&sg, &BTreeSet::new()), sg);
        let cut: BTreeSet<u8> = [0, 2].into_iter().collect();
        let once = resign(&sg, &cut);
        assert_ne!(once, sg);
        assert_eq!(resign(&once, &cut), sg);
    }

    #[test]
    fn resign_preserves_the_matroid() {
        let sg = find_f7_signed_graph();
        for cut_bits in 0u8..8 {
            let cut: BTreeSet<u8> = (0..3).filter(|&v| cut_bits >> v & 1 == 1).collect();
            let (a, _) = sg.even_cycle_matroid();
            let (b, _) = resign(&sg, &cut).even_cycle_matroid();
            assert!(are_isomorphic(&a, &b));
        }
    }

    #[test]
    fn sg_minor_ops_follow_the_matroid() {
        let sg = find_f7_signed_graph();
        let (m, map) = sg.even_cycle_matroid();
        // All seven columns are distinct here, so every label is testable.
        for e in sg.graph().edges() {
            let p = map[&e.label].unwrap();
            let (del, _) = sg_delete(&sg, &e.label).unwrap().even_cycle_matroid();
            assert!(are_isomorphic(&del, &m.delete(p).unwrap()), "delete {}", e.label);
            let (con, _) = sg_contract(&sg, &e.label).unwrap().even_cycle_matroid();
            assert!(are_isomorphic(&con, &m.contract(p).unwrap()), "contract {}", e.label);
        }
        assert!(matches!(sg_delete(&sg, "zz"), Err(GraphError::NoSuchEdge(_))));
    }

    #[test]
    fn contract_even_loop_keeps_sigma() {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1, "a");
        g.add_edge(1, 1, "l");
        let sg = SignedGraph::new(g, ["a".to_string()].into_iter().collect());
        let c = sg_contract(&sg, "l").unwrap();
        assert_eq!(c.graph().edges().len(), 1);
        assert!(c.is_odd("a"));
        // An odd loop, by contrast, clears the signature.
        let mut g2 = Multigraph::new(2);
        g2.add_edge(0, 1, "a");
        g2.add_edge(1, 1, "l");
        let sg2 = SignedGraph::new(g2, ["a".to_string(), "l".to_string()].into_iter().collect());
        let c2 = sg_contract(&sg2, "l").unwrap();
        assert!(c2.sigma().is_empty());
    }

    #[test]
    fn split_with_empty_sigma_duplicates_the_vertex() {
        let sg = SignedGraph::new(path(4), BTreeSet::new());
        let h = split_vertex(&sg, 1).unwrap();
        assert_eq!(h.vertex_count(), 5);
        let (before, _) = sg.even_cycle_matroid();
        assert!(are_isomorphic(&h.cycle_matroid(), &before));
    }

    #[test]
    fn split_rejects_odd_cycles_elsewhere() {
        let sg = find_f7_signed_graph();
        for w in 0..3 {
            assert_eq!(
                split_vertex(&sg, w),
                Err(GraphError::OddCycleAvoiding { vertex: w }),
                "a non-graphic matroid must not split at {w}"
            );
        }
    }

    #[test]
    fn split_star_configuration_gives_next_complete_graph() {
        // K_r with a parallel odd copy of each star edge at w = 0 and one
        // odd loop; splitting at w rebuilds K_{r+1}.
        for r in [5u8, 6] {
            let mut g = Multigraph::complete(r);
            for i in 1..r {
                g.add_edge(0, i, &format!("b{i}"));
            }
            g.add_edge(0, 0, "x");
            let mut sigma: BTreeSet<String> = (1..r).map(|i| format!("b{i}")).collect();
            sigma.insert("x".to_string());
            let sg = SignedGraph::new(g, sigma);
            let h = split_vertex(&sg, 0).unwrap();
            let expected = (r as usize + 1) * (r as usize) / 2;
            assert_eq!(h.edges().len(), expected);
            let (m, _) = sg.even_cycle_matroid();
            assert!(are_isomorphic(&m, &construct::mk(r + 1)));
            assert!(are_isomorphic(&h.cycle_matroid(), &construct::mk(r + 1)));
        }
    }

    #[test]
    fn graft_with_empty_t_is_graphic() {
        let g = k24();
        let graft = Graft::new(g.clone(), BTreeSet::new()).unwrap();
        let (m, _, t) = graft_matroid(&graft);
        assert_eq!(t, None);
        assert!(are_isomorphic(&m, &g.cycle_matroid()));
    }

    #[test]
    fn graft_k4_full_vertex_set_is_the_fano_plane() {
        let graft = Graft::new(Multigraph::complete(4), (0..4).collect()).unwrap();
        let (m, _, t) = graft_matroid(&graft);
        assert!(t.is_some());
        assert!(are_isomorphic(&m, &construct::f7()));
    }

    #[test]
    fn graft_t_parity_rules_under_contraction() {
        let mut g = Multigraph::new(4);
        g.add_edge(0, 1, "a");
        g.add_edge(1, 2, "b");
        g.add_edge(2, 3, "c");
        let graft = Graft::new(g, [0, 1].into_iter().collect()).unwrap();
        // Both endpoints in T: they leave.
        assert!(graft_contract(&graft, "a").unwrap().t_set().is_empty());
        // One endpoint in T: the merged vertex takes its place.
        let c = graft_contract(&graft, "b").unwrap();
        assert_eq!(c.t_set().iter().copied().collect::<Vec<_>>(), [0, 1]);
        // Neither endpoint in T: T survives (after the index shift).
        let d = graft_contract(&graft, "c").unwrap();
        assert_eq!(d.t_set().iter().copied().collect::<Vec<_>>(), [0, 1]);
        assert!(matches!(graft_contract(&graft, "zz"), Err(GraphError::NoSuchEdge(_))));
    }

    #[test]
    fn graft_minor_ops_follow_the_matroid() {
        let graft = Graft::new(k24(), (2..6).collect()).unwrap();
        let (m, map, _) = graft_matroid(&graft);
        for e in graft.graph().edges() {
            let p = map[&e.label].unwrap();
            let (del, _, _) = graft_matroid(&graft_delete(&graft, &e.label).unwrap());
            assert!(are_isomorphic(&del, &m.delete(p).unwrap()));
            let (con, _, _) = graft_matroid(&graft_contract(&graft, &e.label).unwrap());
            assert!(are_isomorphic(&con, &m.contract(p).unwrap()));
        }
    }

    #[test]
    fn graft_rejects_odd_t() {
        assert_eq!(
            Graft::new(Multigraph::new(3), [0].into_iter().collect()).err(),
            Some(GraphError::OddTSize)
        );
        assert_eq!(
            Graft::new(Multigraph::new(3), [0, 5].into_iter().collect()).err(),
            Some(GraphError::NoSuchVertex(5))
        );
    }

    #[test]
    fn signed_graph_text_roundtrip() {
        let sg = find_f7_signed_graph();
        let parsed: SignedGraph = sg.to_string().parse().unwrap();
        assert_eq!(parsed, sg);
        assert!("".parse::<SignedGraph>().is_err());
        assert!("n=2\n0 5 a".parse::<SignedGraph>().is_err());
        assert!("n=2\n0 1 a\n0 1 a".parse::<SignedGraph>().is_err());
        assert!("n=2\n0 1 a maybe".parse::<SignedGraph>().is_err());
    }

    #[test]
    fn graft_text_roundtrip() {
        let graft = Graft::new(k24(), (2..6).collect()).unwrap();
        let parsed: Graft = graft.to_string().parse().unwrap();
        assert_eq!(parsed, graft);
        assert!("n=3\nT=0".parse::<Graft>().is_err());
        assert!("n=3\n0 1 a".parse::<Graft>().is_err());
    }

    #[test]
    fn fixtures_all_pass() {
        for f in Fixture::ALL {
            assert!(verify_fixture(f), "fixture {} failed", f.name());
        }
    }
}
