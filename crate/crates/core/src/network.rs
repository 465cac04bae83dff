//! Layered planar networks whose path generating functions reproduce
//! `L_n`, `C_n` and the Hankel matrices.
//!
//! Vertices live on the lattice: `P_h^(l)` sits at `(2l, h)` and `Q_h^(l)` at
//! `(2l + 1, h)`. The layer network for `L_n` joins level `n` to level `n + 1`
//! through the `Q^(n)` column with horizontal, diagonal and super-diagonal
//! arcs; `C_n` is obtained by padding and gluing layers `0..n`.
//!
//! Matrix row `i` of an `(n+1) x (n+1)` network always corresponds to the
//! source at height `n - i`; see [`row_height`].

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};

use petgraph::algo::toposort;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;
use petgraph::Direction;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::csmatrix::PolyMatrix;
use crate::families::{Condition, FamilyError, FamilySpec};
use crate::qpoly::QPoly;

/// Which of the five weight functions a layer uses. Weight function `i` is
/// q-nonnegative exactly when the family satisfies positivity condition `i`.
pub type WeightCase = Condition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error(
        "arc {tail} -> {head} has weight {weight} with a negative coefficient (weight case {case})"
    )]
    NegativeWeight {
        tail: Vertex,
        head: Vertex,
        weight: QPoly,
        case: u8,
    },
    #[error("weight case 5 needs witness sequences b and c")]
    MissingWitness,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("digraph has a directed cycle through {0}")]
    Cyclic(Vertex),
    #[error("vertex {0} is not in the network")]
    UnknownVertex(Vertex),
    #[error("vertex {0} occurs in both networks being glued")]
    VertexClash(Vertex),
    #[error("more than {cap} paths")]
    CapExceeded { cap: usize },
    #[error("factored Hankel network needs r_k = 1, but r_{k} = {value}")]
    RequiresUnitGamma { k: usize, value: QPoly },
    #[error(transparent)]
    Family(FamilyError),
}

impl From<FamilyError> for NetworkError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::MissingWitness => NetworkError::MissingWitness,
            other => NetworkError::Family(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexKind {
    P,
    Q,
    #[serde(rename = "Pbar")]
    PBar,
    #[serde(rename = "Qbar")]
    QBar,
}

impl VertexKind {
    fn mirrored(self) -> Self {
        match self {
            VertexKind::P => VertexKind::PBar,
            VertexKind::Q => VertexKind::QBar,
            VertexKind::PBar => VertexKind::P,
            VertexKind::QBar => VertexKind::Q,
        }
    }

    fn is_bar(self) -> bool {
        matches!(self, VertexKind::PBar | VertexKind::QBar)
    }

    fn tag(self) -> &'static str {
        match self {
            VertexKind::P => "P",
            VertexKind::Q => "Q",
            VertexKind::PBar => "Pb",
            VertexKind::QBar => "Qb",
        }
    }
}

/// A lattice vertex: `kind_height^(level)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub kind: VertexKind,
    pub level: u32,
    pub height: u32,
}

impl Vertex {
    pub fn p(height: u32, level: u32) -> Self {
        Vertex {
            kind: VertexKind::P,
            level,
            height,
        }
    }

    pub fn q(height: u32, level: u32) -> Self {
        Vertex {
            kind: VertexKind::Q,
            level,
            height,
        }
    }

    pub fn pbar(height: u32, level: u32) -> Self {
        Vertex {
            kind: VertexKind::PBar,
            level,
            height,
        }
    }

    pub fn qbar(height: u32, level: u32) -> Self {
        Vertex {
            kind: VertexKind::QBar,
            level,
            height,
        }
    }

    pub fn mirrored(self) -> Self {
        Vertex {
            kind: self.kind.mirrored(),
            ..self
        }
    }

    /// DOT identifier, e.g. `P_2_1` for `P_2^(1)`.
    pub fn dot_name(&self) -> String {
        format!("{}_{}_{}", self.kind.tag(), self.height, self.level)
    }

    /// Plane coordinates. Barred vertices are reflected in the vertical line
    /// `x = 2 * axis + 1/2`.
    pub fn position(&self, axis: u32) -> (i64, i64) {
        let l = self.level as i64;
        let x = match self.kind {
            VertexKind::P => 2 * l,
            VertexKind::Q => 2 * l + 1,
            VertexKind::PBar => 4 * axis as i64 + 1 - 2 * l,
            VertexKind::QBar => 4 * axis as i64 - 2 * l,
        };
        (x, self.height as i64)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            VertexKind::P => "P",
            VertexKind::Q => "Q",
            VertexKind::PBar => "Pbar",
            VertexKind::QBar => "Qbar",
        };
        write!(f, "{name}_{}^({})", self.height, self.level)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedArc {
    pub tail: Vertex,
    pub head: Vertex,
    pub weight: QPoly,
}

impl WeightedArc {
    pub fn new(tail: Vertex, head: Vertex, weight: QPoly) -> Self {
        WeightedArc { tail, head, weight }
    }
}

/// One directed path with the product of its arc weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPath {
    pub vertices: Vec<Vertex>,
    pub weight: QPoly,
}

/// An acyclic weighted digraph with ordered sources `U` and sinks `V`.
///
/// Arcs of weight zero are kept; they never change a generating function.
#[derive(Debug, Clone)]
pub struct PlanarNetwork {
    graph: DiGraph<Vertex, QPoly>,
    index: HashMap<Vertex, NodeIndex>,
    topo: Vec<NodeIndex>,
    topo_pos: Vec<usize>,
    sources: Vec<Vertex>,
    sinks: Vec<Vertex>,
}

impl PlanarNetwork {
    /// Builds and validates a network. Arc endpoints are added as vertices
    /// automatically; `vertices` only needs to list isolated ones.
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        arcs: Vec<WeightedArc>,
        sources: Vec<Vertex>,
        sinks: Vec<Vertex>,
    ) -> Result<Self, NetworkError> {
        let all: BTreeSet<Vertex> = vertices
            .into_iter()
            .chain(arcs.iter().flat_map(|a| [a.tail, a.head]))
            .collect();
        let mut graph = DiGraph::with_capacity(all.len(), arcs.len());
        let index: HashMap<Vertex, NodeIndex> =
            all.into_iter().map(|v| (v, graph.add_node(v))).collect();
        for a in arcs {
            graph.add_edge(index[&a.tail], index[&a.head], a.weight);
        }
        if let Some(v) = sources
            .iter()
            .chain(&sinks)
            .find(|v| !index.contains_key(v))
        {
            return Err(NetworkError::UnknownVertex(*v));
        }
        let topo = toposort(&graph, None).map_err(|c| NetworkError::Cyclic(graph[c.node_id()]))?;
        let mut topo_pos = vec![0; topo.len()];
        for (pos, node) in topo.iter().enumerate() {
            topo_pos[node.index()] = pos;
        }
        Ok(PlanarNetwork {
            graph,
            index,
            topo,
            topo_pos,
            sources,
            sinks,
        })
    }

    pub fn sources(&self) -> &[Vertex] {
        &self.sources
    }

    pub fn sinks(&self) -> &[Vertex] {
        &self.sinks
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn arc_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }

    /// All vertices in sorted order.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.graph.node_weights().copied().collect();
        vs.sort();
        vs
    }

    /// All arcs sorted by `(tail, head)`.
    pub fn arcs(&self) -> Vec<WeightedArc> {
        let mut arcs: Vec<WeightedArc> = self
            .graph
            .edge_references()
            .map(|e| {
                WeightedArc::new(
                    self.graph[e.source()],
                    self.graph[e.target()],
                    e.weight().clone(),
                )
            })
            .collect();
        arcs.sort_by_key(|a| (a.tail, a.head));
        arcs
    }

    /// Weight of the arc `tail -> head`, if present.
    pub fn arc_weight(&self, tail: &Vertex, head: &Vertex) -> Option<&QPoly> {
        let (a, b) = (self.index.get(tail)?, self.index.get(head)?);
        self.graph.find_edge(*a, *b).map(|e| &self.graph[e])
    }

    fn node(&self, v: &Vertex) -> Result<NodeIndex, NetworkError> {
        self.index
            .get(v)
            .copied()
            .ok_or(NetworkError::UnknownVertex(*v))
    }

    fn degree(&self, v: &Vertex, dir: Direction) -> usize {
        self.index
            .get(v)
            .map_or(0, |&n| self.graph.neighbors_directed(n, dir).count())
    }

    /// Generating functions `GF(u, x)` for every vertex `x`, indexed by node.
    fn gf_from_node(&self, start: NodeIndex) -> Vec<QPoly> {
        let mut gf = vec![QPoly::zero(); self.graph.node_count()];
        gf[start.index()] = QPoly::one();
        for &node in &self.topo[self.topo_pos[start.index()]..] {
            if gf[node.index()].is_zero() {
                continue;
            }
            let here = gf[node.index()].clone();
            for e in self.graph.edges(node) {
                if e.weight().is_zero() {
                    continue;
                }
                gf[e.target().index()] += &here * e.weight();
            }
        }
        gf
    }

    /// Sum over directed `u -> v` paths of the product of arc weights, with
    /// `GF(u, u) = 1`. Computed by one pass over the cached topological order.
    pub fn path_gf(&self, u: &Vertex, v: &Vertex) -> Result<QPoly, NetworkError> {
        let (a, b) = (self.node(u)?, self.node(v)?);
        if self.topo_pos[b.index()] < self.topo_pos[a.index()] {
            return Ok(QPoly::zero());
        }
        Ok(self.gf_from_node(a).swap_remove(b.index()))
    }

    /// `(GF(U_i, V_j))_{i,j}`.
    pub fn gf_matrix(&self) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.sources.len(), self.sinks.len());
        let sink_nodes: Vec<NodeIndex> = self.sinks.iter().map(|v| self.index[v]).collect();
        for (i, u) in self.sources.iter().enumerate() {
            let gf = self.gf_from_node(self.index[u]);
            for (j, node) in sink_nodes.iter().enumerate() {
                m.set(i, j, gf[node.index()].clone());
            }
        }
        m
    }

    /// Nodes from which `target` is reachable.
    fn reaching(&self, target: NodeIndex) -> HashSet<NodeIndex> {
        self.closure(target, Direction::Incoming)
    }

    fn closure(&self, start: NodeIndex, dir: Direction) -> HashSet<NodeIndex> {
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(n) = stack.pop() {
            for m in self.graph.neighbors_directed(n, dir) {
                if seen.insert(m) {
                    stack.push(m);
                }
            }
        }
        seen
    }

    /// Number of directed `u -> v` paths, ignoring weights.
    pub fn count_paths(&self, u: &Vertex, v: &Vertex) -> Result<u128, NetworkError> {
        let (a, b) = (self.node(u)?, self.node(v)?);
        let mut count = vec![0u128; self.graph.node_count()];
        count[a.index()] = 1;
        for &node in &self.topo[self.topo_pos[a.index()]..] {
            let c = count[node.index()];
            if c == 0 {
                continue;
            }
            for m in self.graph.neighbors(node) {
                count[m.index()] = count[m.index()].saturating_add(c);
            }
        }
        Ok(count[b.index()])
    }

    /// Every directed `u -> v` path exactly once, by depth-first search.
    /// Fails once more than `cap` paths have been found.
    pub fn enumerate_paths(
        &self,
        u: &Vertex,
        v: &Vertex,
        cap: usize,
    ) -> Result<Vec<WeightedPath>, NetworkError> {
        let (a, b) = (self.node(u)?, self.node(v)?);
        let useful = self.reaching(b);
        let mut out = Vec::new();
        if !useful.contains(&a) {
            return Ok(out);
        }
        let mut trail = vec![a];
        let mut weights = vec![QPoly::one()];
        self.dfs(b, &useful, &mut trail, &mut weights, &mut out, cap)?;
        Ok(out)
    }

    fn dfs(
        &self,
        target: NodeIndex,
        useful: &HashSet<NodeIndex>,
        trail: &mut Vec<NodeIndex>,
        weights: &mut Vec<QPoly>,
        out: &mut Vec<WeightedPath>,
        cap: usize,
    ) -> Result<(), NetworkError> {
        let here = *trail.last().expect("trail starts non-empty");
        if here == target {
            if out.len() == cap {
                return Err(NetworkError::CapExceeded { cap });
            }
            out.push(WeightedPath {
                vertices: trail.iter().map(|&n| self.graph[n]).collect(),
                weight: weights.last().expect("one weight per trail vertex").clone(),
            });
            return Ok(());
        }
        for e in self.graph.edges(here) {
            if !useful.contains(&e.target()) {
                continue;
            }
            let w = weights.last().expect("one weight per trail vertex") * e.weight();
            trail.push(e.target());
            weights.push(w);
            self.dfs(target, useful, trail, weights, out, cap)?;
            trail.pop();
            weights.pop();
        }
        Ok(())
    }

    /// The sub-network of arcs lying on some `from -> to` path.
    pub fn restrict_to_paths(
        &self,
        from: &Vertex,
        to: &Vertex,
        sources: Vec<Vertex>,
        sinks: Vec<Vertex>,
    ) -> Result<PlanarNetwork, NetworkError> {
        let (a, b) = (self.node(from)?, self.node(to)?);
        let forward = self.closure(a, Direction::Outgoing);
        let backward = self.reaching(b);
        let arcs = self
            .graph
            .edge_references()
            .filter(|e| forward.contains(&e.source()) && backward.contains(&e.target()))
            .map(|e| {
                WeightedArc::new(
                    self.graph[e.source()],
                    self.graph[e.target()],
                    e.weight().clone(),
                )
            })
            .collect();
        PlanarNetwork::new([*from, *to], arcs, sources, sinks)
    }

    /// Reflected copy with every arc reversed: sources and sinks swap roles.
    pub fn mirror(&self) -> Result<PlanarNetwork, NetworkError> {
        let arcs = self
            .arcs()
            .into_iter()
            .map(|a| WeightedArc::new(a.head.mirrored(), a.tail.mirrored(), a.weight))
            .collect();
        PlanarNetwork::new(
            self.vertices().into_iter().map(Vertex::mirrored),
            arcs,
            self.sinks.iter().map(|v| v.mirrored()).collect(),
            self.sources.iter().map(|v| v.mirrored()).collect(),
        )
    }

    /// Graphviz text with vertices pinned at their lattice coordinates.
    /// Output is sorted and therefore byte-stable.
    pub fn export_dot(&self) -> String {
        let vertices = self.vertices();
        let axis = if vertices.iter().any(|v| v.kind.is_bar()) {
            vertices.iter().map(|v| v.level).max().unwrap_or(0)
        } else {
            0
        };
        let names = |vs: &[Vertex]| {
            vs.iter()
                .map(Vertex::dot_name)
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::from("digraph network {\n");
        if !vertices.is_empty() {
            out.push_str("  node [shape=point];\n");
            let _ = writeln!(out, "  // sources: {}", names(&self.sources));
            let _ = writeln!(out, "  // sinks: {}", names(&self.sinks));
        }
        for v in &vertices {
            let (x, y) = v.position(axis);
            let _ = writeln!(
                out,
                "  \"{}\" [xlabel=\"{v}\", pos=\"{x},{y}!\"];",
                v.dot_name()
            );
        }
        for a in self.arcs() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                a.tail.dot_name(),
                a.head.dot_name(),
                a.weight
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices(),
            "arcs": self.arcs(),
            "sources": self.sources,
            "sinks": self.sinks,
        })
    }
}

/// Height of the vertex that carries matrix row (or column) `i` in a network
/// for an `(n+1) x (n+1)` window: row 0 sits at the top, height `n`.
pub fn row_height(n: usize, i: usize) -> u32 {
    debug_assert!(i <= n);
    (n - i) as u32
}

/// Identifies sink `i` of `x` with source `i` of `y`. The result represents
/// the matrix product of the two networks' matrices.
pub fn glue(x: &PlanarNetwork, y: &PlanarNetwork) -> Result<PlanarNetwork, NetworkError> {
    if x.sinks.len() != y.sources.len() {
        return Err(NetworkError::Shape(format!(
            "{} sinks cannot be glued to {} sources",
            x.sinks.len(),
            y.sources.len()
        )));
    }
    if let Some(v) = x
        .sinks
        .iter()
        .find(|v| x.degree(v, Direction::Outgoing) > 0)
    {
        return Err(NetworkError::Shape(format!(
            "glue point {v} has outgoing arcs in the first network"
        )));
    }
    if let Some(v) = y
        .sources
        .iter()
        .find(|v| y.degree(v, Direction::Incoming) > 0)
    {
        return Err(NetworkError::Shape(format!(
            "glue point {v} has incoming arcs in the second network"
        )));
    }
    let rename: HashMap<Vertex, Vertex> = y
        .sources
        .iter()
        .copied()
        .zip(x.sinks.iter().copied())
        .collect();
    let map = |v: Vertex| rename.get(&v).copied().unwrap_or(v);
    let y_vertices = y.vertices();
    if let Some(v) = y_vertices
        .iter()
        .find(|v| !rename.contains_key(v) && x.contains(v))
    {
        return Err(NetworkError::VertexClash(*v));
    }
    let arcs = x
        .arcs()
        .into_iter()
        .chain(
            y.arcs()
                .into_iter()
                .map(|a| WeightedArc::new(map(a.tail), map(a.head), a.weight)),
        )
        .collect();
    PlanarNetwork::new(
        x.vertices()
            .into_iter()
            .chain(y_vertices.into_iter().map(map)),
        arcs,
        x.sources.clone(),
        y.sinks.iter().map(|&v| map(v)).collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LayerArc {
    /// `P_k^(n) -> Q_k^(n)`
    Pq,
    /// `Q_k^(n) -> P_k^(n+1)`
    Qp,
    /// `P_k^(n) -> Q_{k+1}^(n)`
    DiagPq,
    /// `Q_k^(n) -> P_{k+1}^(n+1)`
    DiagQp,
    /// `P_k^(n) -> P_{k+1}^(n+1)`
    Super,
}

fn layer_weight(
    f: &FamilySpec,
    n: usize,
    case: WeightCase,
    arc: LayerArc,
    k: usize,
) -> Result<QPoly, FamilyError> {
    use LayerArc::*;
    let m = n as isize - k as isize;
    let one = QPoly::one;
    let top = k == n;
    Ok(match (case.index(), arc) {
        (_, Pq | Qp) if k == n + 1 => one(),
        (1, Pq) => f.r(m)?,
        (1, DiagPq) => f.t(m)?,
        (1, Super) => f.s(m)? - f.r(m)? - f.t(m)?,
        (2, Qp) => f.r(m)?,
        (2, DiagQp) => f.t(m + 1)?,
        (2, Super) => f.s(m)? - f.r(m - 1)? - f.t(m + 1)?,
        (2, DiagPq) if top => QPoly::zero(),
        (3, Qp) => f.r(m)?,
        (3, DiagPq) => f.t(m)?,
        (3, Super) => f.s(m)? - f.r(m - 1)? * f.t(m)? - one(),
        (4, Pq) => f.r(m)?,
        (4, DiagQp) => f.t(m + 1)?,
        (4, Super) if top => f.s(0)? - f.r(0)? * f.t(1)?,
        (4, Super) => f.s(m)? - f.r(m)? * f.t(m + 1)? - one(),
        (4, DiagPq) if top => QPoly::zero(),
        (5, DiagPq) => f.b(m)?,
        (5, DiagQp) => f.c(m)?,
        (5, Super) => QPoly::zero(),
        _ => one(),
    })
}

/// The layer network for `L_n` between levels `n` and `n + 1`, with sources
/// `(P_{n+1}^(n), ..., P_0^(n))` and sinks `(P_{n+1}^(n+1), ..., P_0^(n+1))`.
pub fn build_layer(
    f: &FamilySpec,
    n: usize,
    case: WeightCase,
) -> Result<PlanarNetwork, NetworkError> {
    if case.index() == 5 && f.witness().is_none() {
        return Err(NetworkError::MissingWitness);
    }
    let lvl = n as u32;
    let mut arcs = Vec::with_capacity(5 * n + 7);
    let mut push =
        |tail: Vertex, head: Vertex, arc: LayerArc, k: usize| -> Result<(), NetworkError> {
            let weight = layer_weight(f, n, case, arc, k)?;
            if !weight.is_q_nonnegative() {
                return Err(NetworkError::NegativeWeight {
                    tail,
                    head,
                    weight,
                    case: case.index(),
                });
            }
            arcs.push(WeightedArc::new(tail, head, weight));
            Ok(())
        };
    for k in 0..=n + 1 {
        let h = k as u32;
        push(Vertex::p(h, lvl), Vertex::q(h, lvl), LayerArc::Pq, k)?;
        push(Vertex::q(h, lvl), Vertex::p(h, lvl + 1), LayerArc::Qp, k)?;
    }
    for k in 0..=n {
        let h = k as u32;
        push(
            Vertex::p(h, lvl),
            Vertex::q(h + 1, lvl),
            LayerArc::DiagPq,
            k,
        )?;
        push(
            Vertex::q(h, lvl),
            Vertex::p(h + 1, lvl + 1),
            LayerArc::DiagQp,
            k,
        )?;
        push(
            Vertex::p(h, lvl),
            Vertex::p(h + 1, lvl + 1),
            LayerArc::Super,
            k,
        )?;
    }
    let heights = (0..=n as u32 + 1).rev();
    PlanarNetwork::new(
        [],
        arcs,
        heights.clone().map(|h| Vertex::p(h, lvl)).collect(),
        heights.map(|h| Vertex::p(h, lvl + 1)).collect(),
    )
}

/// Adds the unit chain `P_{n+1}^(0) -> ... -> P_{n+1}^(n)` above a network for
/// `C_n`, giving a network for `diag(1, C_n)`.
fn pad_top(c: &PlanarNetwork, n: usize) -> Result<PlanarNetwork, NetworkError> {
    let h = n as u32 + 1;
    let chain: Vec<Vertex> = (0..=n as u32).map(|l| Vertex::p(h, l)).collect();
    let mut arcs = c.arcs();
    arcs.extend(
        chain
            .windows(2)
            .map(|w| WeightedArc::new(w[0], w[1], QPoly::one())),
    );
    let mut sources = vec![chain[0]];
    sources.extend_from_slice(&c.sources);
    let mut sinks = vec![chain[n]];
    sinks.extend_from_slice(&c.sinks);
    PlanarNetwork::new(c.vertices().into_iter().chain(chain), arcs, sources, sinks)
}

/// The recursive network for `C_n`: layer `i` uses weight function
/// `cases[i]`, so mixed weight functions are allowed. Sources are
/// `(P_n^(0), ..., P_0^(0))`, sinks `(P_n^(n), ..., P_0^(n))`.
pub fn build_cs_network(
    f: &FamilySpec,
    n: usize,
    cases: &[WeightCase],
) -> Result<PlanarNetwork, NetworkError> {
    if cases.len() != n {
        return Err(NetworkError::Shape(format!(
            "{} weight cases given for {n} layers",
            cases.len()
        )));
    }
    let origin = Vertex::p(0, 0);
    let mut net = PlanarNetwork::new([origin], vec![], vec![origin], vec![origin])?;
    for (i, &case) in cases.iter().enumerate() {
        net = glue(&pad_top(&net, i)?, &build_layer(f, i, case)?)?;
    }
    Ok(net)
}

/// Network for `H_n` inside the network for `C_{2n+k}`: the arcs on paths
/// from `P_k^(k)` to `P_{2n+k}^(2n+k)`. Row `i` is the source
/// `P_{n+k-i}^(n+k-i)`, column `j` the sink `P_{n+k+j}^(n+k+j)`.
pub fn build_hankel_network(
    f: &FamilySpec,
    n: usize,
    k: usize,
    cases: &[WeightCase],
) -> Result<PlanarNetwork, NetworkError> {
    let full = build_cs_network(f, 2 * n + k, cases)?;
    let diag = |i: usize| Vertex::p(i as u32, i as u32);
    let sources = (0..=n).map(|i| diag(n + k - i)).collect();
    let sinks = (0..=n).map(|j| diag(n + k + j)).collect();
    full.restrict_to_paths(&diag(k), &diag(2 * n + k), sources, sinks)
}

/// The diagonal network for `T_n = diag(1, t_1, t_1 t_2, ...)`: arcs
/// `P_i^(n) -> Pbar_i^(n)` of weight `t_1 ... t_{n-i}`.
pub fn build_t_network(f: &FamilySpec, n: usize) -> Result<PlanarNetwork, NetworkError> {
    let lvl = n as u32;
    let mut prefix_products = vec![QPoly::one()];
    for j in 1..=n {
        let next = prefix_products[j - 1].clone() * f.t(j as isize)?;
        prefix_products.push(next);
    }
    let arcs = (0..=n)
        .map(|i| {
            WeightedArc::new(
                Vertex::p(i as u32, lvl),
                Vertex::pbar(i as u32, lvl),
                prefix_products[n - i].clone(),
            )
        })
        .collect();
    let heights = (0..=lvl).rev();
    PlanarNetwork::new(
        [],
        arcs,
        heights.clone().map(|h| Vertex::p(h, lvl)).collect(),
        heights.map(|h| Vertex::pbar(h, lvl)).collect(),
    )
}

/// Network for `H_n = C_n T_n C_n^T`, available when every `r_k = 1`.
pub fn build_hankel_factored(
    f: &FamilySpec,
    n: usize,
    cases: &[WeightCase],
) -> Result<PlanarNetwork, NetworkError> {
    for k in 0..=n {
        let value = f.r(k as isize)?;
        if !value.is_one() {
            return Err(NetworkError::RequiresUnitGamma { k, value });
        }
    }
    let c = build_cs_network(f, n, cases)?;
    let ct = glue(&c, &build_t_network(f, n)?)?;
    glue(&ct, &c.mirror()?)
}
