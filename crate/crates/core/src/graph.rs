//! Undirected simple graph with dense, arrival-ordered node ids.
//!
//! Node ids are assigned densely (`0..n`) in arrival order and never
//! reused, so the id order doubles as the arrival order during network
//! growth. Adjacency lists are kept sorted, which makes every iteration
//! order deterministic and keeps seeded runs byte-reproducible.
//!
//! Self-loops and parallel edges are rejected: the growth process only
//! ever links a brand-new node to existing ones, so neither can occur in
//! a valid run, and rejecting them keeps the invariants checkable.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Identifier of a graph node.
///
/// Ids are dense non-negative integers assigned in arrival order; a node
/// added later always has a larger id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl serde::Serialize for NodeId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u32(self.0)
    }
}

impl<'de> serde::Deserialize<'de> for NodeId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        u32::deserialize(deserializer).map(NodeId)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on node {0} rejected")]
    SelfLoop(NodeId),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(NodeId, NodeId),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Undirected simple graph backed by sorted adjacency lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<NodeId>>,
    edges: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with `n` isolated nodes, ids `0..n`.
    pub fn with_nodes(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        v.index() < self.adj.len()
    }

    fn check(&self, v: NodeId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(v))
        }
    }

    /// Appends a fresh node and returns its id (= previous node count).
    pub fn add_node(&mut self) -> NodeId {
        let id = NodeId(self.adj.len() as u32);
        self.adj.push(Vec::new());
        id
    }

    /// Inserts the undirected edge `(u, v)`.
    ///
    /// Rejects self-loops, duplicate edges and unknown endpoints without
    /// mutating the graph.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.check(u)?;
        self.check(v)?;
        let pos_u = match self.adj[u.index()].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(u, v)),
            Err(pos) => pos,
        };
        let pos_v = self.adj[v.index()]
            .binary_search(&u)
            .expect_err("adjacency symmetry violated");
        self.adj[u.index()].insert(pos_u, v);
        self.adj[v.index()].insert(pos_v, u);
        self.edges += 1;
        Ok(())
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.contains(u) && self.contains(v) && self.adj[u.index()].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: NodeId) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.adj[v.index()].len())
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: NodeId) -> Result<&[NodeId], GraphError> {
        self.check(v)?;
        Ok(&self.adj[v.index()])
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.adj.len() as u32).map(NodeId)
    }

    /// All edges as `(u, v)` with `u < v`, in ascending pair order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = NodeId(u as u32);
            nbrs.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Breadth-first search from `source`, truncated at distance `radius`.
    ///
    /// The result contains exactly the nodes at distance `<= radius` from
    /// `source`, with exact distances.
    pub fn truncated_bfs(&self, source: NodeId, radius: usize) -> Result<DistanceMap, GraphError> {
        self.check(source)?;
        let mut dist = BTreeMap::new();
        dist.insert(source, 0usize);
        let mut frontier = vec![source];
        let mut d = 0;
        while d < radius && !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adj[u.index()] {
                    if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                        e.insert(d);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        Ok(DistanceMap {
            source,
            radius,
            dist,
        })
    }
}

/// Exact graph distances from a source node, truncated at a radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMap {
    source: NodeId,
    radius: usize,
    dist: BTreeMap<NodeId, usize>,
}

impl DistanceMap {
    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn distance(&self, v: NodeId) -> Option<usize> {
        self.dist.get(&v).copied()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.dist.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    /// `(node, distance)` pairs in ascending node order.
    pub fn iter(&self) -> impl Iterator<Item = (NodeId, usize)> + '_ {
        self.dist.iter().map(|(&v, &d)| (v, d))
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.dist.keys().copied()
    }
}

/// An edge-list document loaded from text: the graph plus the original
/// node labels, indexed by the dense id they were remapped to.
#[derive(Debug, Clone)]
pub struct LoadedEdgeList {
    pub graph: Graph,
    /// `original_ids[dense]` is the label the input used for node `dense`.
    /// Dense ids are assigned in ascending label order, so an already
    /// dense input maps to itself.
    pub original_ids: Vec<u64>,
}

/// Parses the edge-list text format: one edge per line, two base-10
/// integers separated by whitespace. Lines starting with `#` are ignored.
/// Node labels need not be dense; they are remapped to `0..n` in ascending
/// label order.
pub fn load_edge_list(text: &str) -> Result<LoadedEdgeList, GraphError> {
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();
    let mut labels: Vec<u64> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(GraphError::Parse {
                    line: line_no,
                    reason: format!("expected two integers, got {trimmed:?}"),
                })
            }
        };
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|e| GraphError::Parse {
                line: line_no,
                reason: format!("bad node id {tok:?}: {e}"),
            })
        };
        let (a, b) = (parse(a)?, parse(b)?);
        raw_edges.push((a, b));
        labels.push(a);
        labels.push(b);
    }

    labels.sort_unstable();
    labels.dedup();
    let mut graph = Graph::with_nodes(labels.len());
    let dense = |label: u64| -> NodeId {
        let pos = labels.binary_search(&label).expect("label was collected");
        NodeId(pos as u32)
    };
    for (a, b) in raw_edges {
        graph.add_edge(dense(a), dense(b))?;
    }
    Ok(LoadedEdgeList {
        graph,
        original_ids: labels,
    })
}

/// Canonical edge-list text: one edge per line as `u v` with `u < v`,
/// lines in ascending pair order, trailing newline after each line.
pub fn store_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
