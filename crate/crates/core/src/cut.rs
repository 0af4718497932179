//! k-neighborhood balls, boundary sets and pulling powers.
//!
//! The pulling power of a node `v` at radius `k` is the size of the cut
//! between the ball `B(v,k)` (all nodes within distance `k` of `v`) and
//! the rest of the graph, counting each crossing edge once. At `k = 0`
//! the ball is `{v}` and the pulling power equals `degree(v)`.
//!
//! [`recompute_all`] is the straightforward per-node evaluation and
//! serves as the oracle; [`apply_edge_incremental`] maintains a
//! [`PullingPowerTable`] across edge insertions by only touching nodes
//! whose power can actually change, and is the path the growth engine
//! uses. The two are checked against each other step-by-step in the test
//! suites.

use thiserror::Error;

use crate::graph::{Graph, GraphError, NodeId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("stale table: built for {table_nodes} nodes / {table_edges} edges, graph has {graph_nodes} / {graph_edges}")]
    StaleTable {
        table_nodes: usize,
        table_edges: usize,
        graph_nodes: usize,
        graph_edges: usize,
    },
}

/// The k-neighborhood `B(v,k)`: all nodes within distance `k` of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    center: NodeId,
    radius: usize,
    members: Vec<NodeId>,
}

impl Ball {
    pub fn center(&self) -> NodeId {
        self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Members in ascending id order (always includes the center).
    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Per-node pulling powers for one graph state, plus their sum.
///
/// A table is an immutable snapshot: updates return a new value. The
/// node/edge counts of the graph it was computed for are recorded so a
/// mismatched incremental update is rejected as [`CutError::StaleTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullingPowerTable {
    radius: usize,
    power: Vec<u64>,
    normalizer: u64,
    nodes: usize,
    edges: usize,
}

impl PullingPowerTable {
    /// Detached snapshot built from explicit powers, for evaluating
    /// selectors against arbitrary weight profiles. Not tied to any
    /// graph: incremental updates reject it as stale.
    pub fn from_powers(radius: usize, power: Vec<u64>) -> Self {
        let normalizer = power.iter().sum();
        let nodes = power.len();
        PullingPowerTable {
            radius,
            power,
            normalizer,
            nodes,
            edges: usize::MAX,
        }
    }

    /// Empty stand-in used when threading a table through an update.
    pub(crate) fn placeholder(radius: usize) -> Self {
        PullingPowerTable {
            radius,
            power: Vec::new(),
            normalizer: 0,
            nodes: 0,
            edges: usize::MAX,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.power.len()
    }

    pub fn is_empty(&self) -> bool {
        self.power.is_empty()
    }

    /// Pulling power of `v` (`x_v`).
    pub fn power(&self, v: NodeId) -> Option<u64> {
        self.power.get(v.index()).copied()
    }

    /// `Y`, the sum of all stored powers.
    pub fn normalizer(&self) -> u64 {
        self.normalizer
    }

    /// `(node, power)` pairs in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = (NodeId, u64)> + '_ {
        self.power
            .iter()
            .enumerate()
            .map(|(i, &x)| (NodeId(i as u32), x))
    }

    fn assert_consistent(&self) {
        debug_assert_eq!(
            self.normalizer,
            self.power.iter().sum::<u64>(),
            "normalizer out of sync with stored powers"
        );
    }
}

/// Reusable BFS workspace; `stamp` marks visited nodes per epoch so the
/// buffers never need clearing between traversals.
struct BallScratch {
    stamp: Vec<u64>,
    dist: Vec<u32>,
    epoch: u64,
    queue: Vec<u32>,
}

impl BallScratch {
    fn new(n: usize) -> Self {
        BallScratch {
            stamp: vec![0; n],
            dist: vec![0; n],
            epoch: 0,
            queue: Vec::with_capacity(n),
        }
    }

    #[inline]
    fn visited(&self, v: usize) -> bool {
        self.stamp[v] == self.epoch
    }

    /// BFS from `source` up to `radius`; afterwards `queue` holds the
    /// visited nodes in traversal order and `dist` their distances.
    fn run(&mut self, g: &Graph, source: NodeId, radius: usize) {
        self.epoch += 1;
        self.queue.clear();
        self.queue.push(source.0);
        self.stamp[source.index()] = self.epoch;
        self.dist[source.index()] = 0;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            let d = self.dist[u];
            if d as usize >= radius {
                continue;
            }
            for &w in g
                .neighbors(NodeId(u as u32))
                .expect("node in scratch range")
            {
                let wi = w.index();
                if self.stamp[wi] != self.epoch {
                    self.stamp[wi] = self.epoch;
                    self.dist[wi] = d + 1;
                    self.queue.push(w.0);
                }
            }
        }
    }

    /// Cut size of the ball visited by the last `run`.
    fn cut_of_visited(&self, g: &Graph) -> u64 {
        let mut cut = 0;
        for &u in &self.queue {
            for &w in g.neighbors(NodeId(u)).expect("node in scratch range") {
                if !self.visited(w.index()) {
                    cut += 1;
                }
            }
        }
        cut
    }
}

/// The ball `B(v,k)`.
pub fn ball(g: &Graph, v: NodeId, k: usize) -> Result<Ball, CutError> {
    let dm = g.truncated_bfs(v, k)?;
    Ok(Ball {
        center: v,
        radius: k,
        members: dm.nodes().collect(),
    })
}

/// Number of edges with exactly one endpoint in `members`, each crossing
/// edge counted once. Duplicate entries in `members` are ignored.
pub fn cut_size(g: &Graph, members: &[NodeId]) -> Result<u64, CutError> {
    let mut inside = vec![false; g.node_count()];
    for &v in members {
        if !g.contains(v) {
            return Err(GraphError::UnknownNode(v).into());
        }
        inside[v.index()] = true;
    }
    let mut cut = 0;
    for (i, &is_in) in inside.iter().enumerate() {
        if !is_in {
            continue;
        }
        for &w in g.neighbors(NodeId(i as u32))? {
            if !inside[w.index()] {
                cut += 1;
            }
        }
    }
    Ok(cut)
}

/// The pulling power `x_v = |E(B(v,k), complement)|`. Equals `degree(v)`
/// at `k = 0`.
pub fn pulling_power(g: &Graph, v: NodeId, k: usize) -> Result<u64, CutError> {
    if !g.contains(v) {
        return Err(GraphError::UnknownNode(v).into());
    }
    let mut scratch = BallScratch::new(g.node_count());
    scratch.run(g, v, k);
    Ok(scratch.cut_of_visited(g))
}

/// Boundary set `B'(v,k)`: members of `B(v,k)` incident to at least one
/// cut edge of the ball. Every such node lies at distance exactly `k`
/// from `v`. Returned in ascending id order.
pub fn boundary_nodes(g: &Graph, v: NodeId, k: usize) -> Result<Vec<NodeId>, CutError> {
    if !g.contains(v) {
        return Err(GraphError::UnknownNode(v).into());
    }
    let mut scratch = BallScratch::new(g.node_count());
    scratch.run(g, v, k);
    let mut boundary: Vec<NodeId> = scratch
        .queue
        .iter()
        .filter(|&&u| {
            g.neighbors(NodeId(u))
                .expect("node in scratch range")
                .iter()
                .any(|w| !scratch.visited(w.index()))
        })
        .map(|&u| NodeId(u))
        .collect();
    boundary.sort_unstable();
    Ok(boundary)
}

/// Pulling powers of every node, evaluated from scratch.
pub fn recompute_all(g: &Graph, k: usize) -> PullingPowerTable {
    let n = g.node_count();
    let mut scratch = BallScratch::new(n);
    let mut power = Vec::with_capacity(n);
    let mut normalizer = 0u64;
    for v in g.nodes() {
        scratch.run(g, v, k);
        let x = scratch.cut_of_visited(g);
        normalizer += x;
        power.push(x);
    }
    let table = PullingPowerTable {
        radius: k,
        power,
        normalizer,
        nodes: n,
        edges: g.edge_count(),
    };
    table.assert_consistent();
    table
}

/// Updates `table` for the insertion of `new_edge` into `g`.
///
/// `g` must already contain the edge (and the new endpoint, if one was
/// added); `table` must have been computed for `g` minus exactly that
/// edge/node. The result equals [`recompute_all`] on `g`.
///
/// Two cases are handled:
///
/// * A pendant insertion (the new endpoint has degree 1): attaching a
///   leaf cannot change distances between existing nodes, so the only
///   power changes are `+1` for every node at distance exactly `k` from
///   the anchor endpoint, plus the fresh power of the leaf itself.
/// * A general insertion between existing nodes: every node within
///   distance `k + 1` of either endpoint is re-evaluated from scratch;
///   no other node's ball or cut can be affected.
pub fn apply_edge_incremental(
    table: PullingPowerTable,
    g: &Graph,
    new_edge: (NodeId, NodeId),
) -> Result<PullingPowerTable, CutError> {
    let (u, v) = new_edge;
    let (table_nodes, table_edges) = (table.nodes, table.edges);
    let stale = || CutError::StaleTable {
        table_nodes,
        table_edges,
        graph_nodes: g.node_count(),
        graph_edges: g.edge_count(),
    };
    if table.edges.checked_add(1) != Some(g.edge_count()) || !g.has_edge(u, v) {
        return Err(stale());
    }

    let k = table.radius;
    let mut table = table;
    match g.node_count() {
        n if n == table.nodes + 1 => {
            // Pendant case: one endpoint is the brand-new node.
            let (leaf, anchor) = if u.index() == table.nodes {
                (u, v)
            } else if v.index() == table.nodes {
                (v, u)
            } else {
                return Err(stale());
            };
            if g.degree(leaf)? != 1 {
                return Err(stale());
            }
            let mut scratch = BallScratch::new(n);
            scratch.run(g, anchor, k);
            for &w in &scratch.queue {
                if w != leaf.0 && scratch.dist[w as usize] as usize == k {
                    table.power[w as usize] += 1;
                    table.normalizer += 1;
                }
            }
            scratch.run(g, leaf, k);
            let leaf_power = scratch.cut_of_visited(g);
            table.power.push(leaf_power);
            table.normalizer += leaf_power;
        }
        n if n == table.nodes => {
            // General case: both endpoints already existed, so the new
            // edge may shorten distances. Re-evaluate the (k+1)-balls
            // around both endpoints.
            let mut scratch = BallScratch::new(n);
            let mut affected: Vec<u32> = Vec::new();
            scratch.run(g, u, k + 1);
            affected.extend_from_slice(&scratch.queue);
            scratch.run(g, v, k + 1);
            affected.extend(scratch.queue.iter().copied());
            affected.sort_unstable();
            affected.dedup();
            for &w in &affected {
                scratch.run(g, NodeId(w), k);
                let x = scratch.cut_of_visited(g);
                let old = std::mem::replace(&mut table.power[w as usize], x);
                table.normalizer = table.normalizer - old + x;
            }
        }
        _ => return Err(stale()),
    }

    table.nodes = g.node_count();
    table.edges = g.edge_count();
    table.assert_consistent();
    Ok(table)
}
