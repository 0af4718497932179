//! The growth process: seeded runs that add one node per step and attach
//! it according to the configured model.
//!
//! Two attachment rules are implemented on top of the pulling-power
//! table:
//!
//! * model `A` attaches the arriving node directly to the selected node;
//! * model `B` attaches it to a uniformly random member of the selected
//!   node's boundary set `B'(v,k)` (falling back to a uniform choice over
//!   all existing nodes when that set is empty).
//!
//! How the node is selected is controlled by [`SelectionMode`]:
//! `argmax` picks the maximum-power node (ties to the smallest id, which
//! keeps model `A` fully deterministic), while `proportional` samples
//! node `v` with probability `x_v / Y` (uniform when `Y = 0`). `BA` is an
//! alias for model `B` with `k = 0` and proportional selection, which is
//! exactly degree-preferential attachment.
//!
//! # Randomness contract
//!
//! A run consumes a single [`RunRng`] stream seeded from the config, in a
//! fixed order: one bounded-uniform draw per randomized decision, in the
//! order the decisions are described above (selection draw first, then
//! the boundary draw, re-draws on duplicate targets consume further
//! draws). Model `A` with `argmax` selection consumes no randomness at
//! all. The generator is pinned by [`RNG_VERSION`] and recorded in every
//! trace, so equal seed and config reproduce byte-identical runs on any
//! platform.

use std::path::PathBuf;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cut::{
    apply_edge_incremental, boundary_nodes, recompute_all, CutError, PullingPowerTable,
};
use crate::graph::{load_edge_list, Graph, GraphError, NodeId};

/// Identifier of the random stream implementation; recorded in traces
/// and manifests so replays can detect generator changes.
pub const RNG_VERSION: &str = "chacha12-u64-v1";

#[derive(Debug, Error)]
pub enum EvolutionError {
    #[error("invalid evolution config: {0}")]
    InvalidSpec(String),
    #[error("failed to load initial graph {path:?}: {source}")]
    FileLoad {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cut(#[from] CutError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialGraphKind {
    Complete,
    Ring,
    Star,
    File,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitialGraphSpec {
    pub kind: InitialGraphKind,
    pub n0: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    A,
    B,
    #[serde(rename = "BA")]
    Ba,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMode {
    Argmax,
    Proportional,
}

fn default_edges_per_arrival() -> usize {
    1
}

fn default_record_trace() -> bool {
    true
}

/// Everything that defines a run. Serializes to/from the JSON config file
/// format with exactly these keys (`N` uppercase).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolutionConfig {
    pub initial: InitialGraphSpec,
    pub k: usize,
    #[serde(rename = "N")]
    pub target_nodes: usize,
    pub model: ModelKind,
    /// Defaults to `argmax` for models A and B and to `proportional`
    /// for BA when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection_mode: Option<SelectionMode>,
    #[serde(default = "default_edges_per_arrival")]
    pub edges_per_arrival: usize,
    pub seed: u64,
    #[serde(default = "default_record_trace")]
    pub record_trace: bool,
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<(), EvolutionError> {
        let err = |msg: String| Err(EvolutionError::InvalidSpec(msg));
        if self.initial.n0 < 1 {
            return err("initial.n0 must be >= 1".into());
        }
        if self.initial.kind == InitialGraphKind::Ring && self.initial.n0 < 3 {
            return err(format!("ring requires n0 >= 3, got {}", self.initial.n0));
        }
        if self.initial.kind == InitialGraphKind::File && self.initial.path.is_none() {
            return err("initial.kind=file requires initial.path".into());
        }
        if self.target_nodes < self.initial.n0 {
            return err(format!(
                "N ({}) must be >= initial.n0 ({})",
                self.target_nodes, self.initial.n0
            ));
        }
        if self.edges_per_arrival < 1 || self.edges_per_arrival > self.initial.n0 {
            return err(format!(
                "edges_per_arrival ({}) must be in [1, n0 = {}]",
                self.edges_per_arrival, self.initial.n0
            ));
        }
        if self.model == ModelKind::Ba {
            if self.k != 0 {
                return err(format!("model BA requires k = 0, got k = {}", self.k));
            }
            if self.selection_mode == Some(SelectionMode::Argmax) {
                return err("model BA requires proportional selection".into());
            }
        }
        Ok(())
    }

    /// The selection mode actually used, resolving the model default.
    pub fn effective_selection_mode(&self) -> SelectionMode {
        self.selection_mode.unwrap_or(match self.model {
            ModelKind::A | ModelKind::B => SelectionMode::Argmax,
            ModelKind::Ba => SelectionMode::Proportional,
        })
    }

    /// SHA-256 of the canonical JSON serialization, as lowercase hex.
    pub fn config_hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Builds the deterministic initial graph for a spec.
pub fn init_graph(spec: &InitialGraphSpec) -> Result<Graph, EvolutionError> {
    if spec.n0 < 1 {
        return Err(EvolutionError::InvalidSpec(
            "initial.n0 must be >= 1".into(),
        ));
    }
    let n0 = spec.n0;
    match spec.kind {
        InitialGraphKind::Complete => {
            let mut g = Graph::with_nodes(n0);
            for i in 0..n0 as u32 {
                for j in (i + 1)..n0 as u32 {
                    g.add_edge(NodeId(i), NodeId(j))?;
                }
            }
            Ok(g)
        }
        InitialGraphKind::Ring => {
            if n0 < 3 {
                return Err(EvolutionError::InvalidSpec(format!(
                    "ring requires n0 >= 3, got {n0}"
                )));
            }
            let mut g = Graph::with_nodes(n0);
            for i in 0..n0 as u32 {
                g.add_edge(NodeId(i), NodeId((i + 1) % n0 as u32))?;
            }
            Ok(g)
        }
        InitialGraphKind::Star => {
            let mut g = Graph::with_nodes(n0);
            for leaf in 1..n0 as u32 {
                g.add_edge(NodeId(0), NodeId(leaf))?;
            }
            Ok(g)
        }
        InitialGraphKind::File => {
            let path = spec.path.as_ref().ok_or_else(|| {
                EvolutionError::InvalidSpec("initial.kind=file requires initial.path".into())
            })?;
            let text =
                std::fs::read_to_string(path).map_err(|source| EvolutionError::FileLoad {
                    path: path.clone(),
                    source,
                })?;
            let loaded = load_edge_list(&text)?;
            if loaded.graph.node_count() != n0 {
                return Err(EvolutionError::InvalidSpec(format!(
                    "initial graph file has {} nodes, expected n0 = {}",
                    loaded.graph.node_count(),
                    n0
                )));
            }
            Ok(loaded.graph)
        }
    }
}

/// Seeded deterministic random stream for one run (see the module docs
/// for the draw-order contract).
pub struct RunRng(ChaCha12Rng);

impl RunRng {
    pub fn from_seed(seed: u64) -> Self {
        RunRng(ChaCha12Rng::seed_from_u64(seed))
    }

    /// Uniform index in `0..len`. All bounded draws go through u64
    /// sampling so the stream is identical on every platform.
    pub fn index(&mut self, len: usize) -> usize {
        assert!(len > 0, "uniform draw over an empty range");
        self.0.random_range(0..len as u64) as usize
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "uniform draw over an empty range");
        self.0.random_range(0..bound)
    }
}

/// Maximum-power node, ties broken by smallest id. Since the shared
/// normalizer `Y` cancels in an argmax, this equals the argmax of
/// `x_v / Y`.
pub fn select_target_a(table: &PullingPowerTable) -> NodeId {
    assert!(!table.is_empty(), "selection over an empty table");
    let mut best = NodeId(0);
    let mut best_power = 0u64;
    for (v, x) in table.iter() {
        if x > best_power {
            best = v;
            best_power = x;
        }
    }
    best
}

/// Model B target: a uniform draw from the boundary set of the
/// maximum-power node. When that set is empty (the ball swallowed its
/// whole component) the draw falls back to a uniform choice over all
/// existing nodes so the process stays total.
pub fn select_target_b(
    table: &PullingPowerTable,
    g: &Graph,
    k: usize,
    rng: &mut RunRng,
) -> Result<NodeId, CutError> {
    let v_star = select_target_a(table);
    let boundary = boundary_nodes(g, v_star, k)?;
    Ok(if boundary.is_empty() {
        NodeId(rng.index(g.node_count()) as u32)
    } else {
        boundary[rng.index(boundary.len())]
    })
}

/// Samples node `v` with probability `x_v / Y`; uniform over all nodes
/// when `Y = 0`. With `k = 0` this is exactly degree-preferential
/// attachment.
pub fn select_target_proportional(table: &PullingPowerTable, rng: &mut RunRng) -> NodeId {
    assert!(!table.is_empty(), "selection over an empty table");
    let y = table.normalizer();
    if y == 0 {
        return NodeId(rng.index(table.len()) as u32);
    }
    let r = rng.below(y);
    let mut acc = 0u64;
    for (v, x) in table.iter() {
        acc += x;
        if r < acc {
            return v;
        }
    }
    unreachable!("cumulative powers cover [0, Y)")
}

/// One arrival: the step index, the node that arrived, the targets it
/// attached to (in attachment order) and a checksum of the power table
/// after the step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub t: usize,
    pub new_node: NodeId,
    pub targets: Vec<NodeId>,
    pub table_checksum: u64,
}

/// Full record of a run: per-arrival records plus the final graph.
#[derive(Debug, Clone)]
pub struct RunTrace {
    pub config_hash: String,
    pub rng_version: &'static str,
    pub initial_nodes: usize,
    pub initial_edges: usize,
    pub steps: Vec<StepRecord>,
    pub graph: Graph,
}

impl RunTrace {
    /// Trace file format: a `#` header carrying the config hash and RNG
    /// version, a CSV column header, then one `t,new_node,target` row
    /// per attachment.
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# config_hash={} rng={}\nt,new_node,target\n",
            self.config_hash, self.rng_version
        );
        for step in &self.steps {
            for &target in &step.targets {
                out.push_str(&format!("{},{},{}\n", step.t, step.new_node, target));
            }
        }
        out
    }

    /// Rebuilds the final graph from the initial spec plus the recorded
    /// attachments. Equality with [`RunTrace::graph`] is the trace
    /// integrity check.
    pub fn replay(&self, config: &EvolutionConfig) -> Result<Graph, EvolutionError> {
        let mut g = init_graph(&config.initial)?;
        for step in &self.steps {
            let u = g.add_node();
            if u != step.new_node {
                return Err(EvolutionError::InvalidSpec(format!(
                    "trace expects arrival {} but graph assigned {}",
                    step.new_node, u
                )));
            }
            for &target in &step.targets {
                g.add_edge(u, target)?;
            }
        }
        Ok(g)
    }
}

fn table_checksum(table: &PullingPowerTable) -> u64 {
    // FNV-1a over the table contents; cheap and stable across platforms
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut eat = |x: u64| {
        for byte in x.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    eat(table.radius() as u64);
    for (_, x) in table.iter() {
        eat(x);
    }
    eat(table.normalizer());
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AttachRule {
    /// Attach to the selected node itself (model A).
    Direct,
    /// Attach to a uniform member of the selected node's boundary set
    /// (models B and BA).
    Boundary,
}

/// Upper bound on duplicate-target re-draws within one arrival before
/// falling back to a uniform choice over the not-yet-chosen nodes.
const REDRAW_LIMIT: usize = 64;

/// Incremental growth state: graph, power table and the random stream.
pub struct Engine {
    graph: Graph,
    table: PullingPowerTable,
    rng: RunRng,
    k: usize,
    rule: AttachRule,
    mode: SelectionMode,
    edges_per_arrival: usize,
    target_nodes: usize,
    t: usize,
}

impl Engine {
    pub fn from_config(config: &EvolutionConfig) -> Result<Self, EvolutionError> {
        config.validate()?;
        let graph = init_graph(&config.initial)?;
        let table = recompute_all(&graph, config.k);
        Ok(Engine {
            table,
            rng: RunRng::from_seed(config.seed),
            k: config.k,
            rule: match config.model {
                ModelKind::A => AttachRule::Direct,
                ModelKind::B | ModelKind::Ba => AttachRule::Boundary,
            },
            mode: config.effective_selection_mode(),
            edges_per_arrival: config.edges_per_arrival,
            target_nodes: config.target_nodes,
            t: 0,
            graph,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn table(&self) -> &PullingPowerTable {
        &self.table
    }

    pub fn is_done(&self) -> bool {
        self.graph.node_count() >= self.target_nodes
    }

    fn draw_target(&mut self, chosen: &[NodeId]) -> Result<NodeId, EvolutionError> {
        for _ in 0..REDRAW_LIMIT {
            let selected = match self.mode {
                SelectionMode::Argmax => select_target_a(&self.table),
                SelectionMode::Proportional => {
                    select_target_proportional(&self.table, &mut self.rng)
                }
            };
            let candidate = match self.rule {
                AttachRule::Direct => selected,
                AttachRule::Boundary => {
                    let boundary = boundary_nodes(&self.graph, selected, self.k)?;
                    if boundary.is_empty() {
                        NodeId(self.rng.index(self.graph.node_count()) as u32)
                    } else {
                        boundary[self.rng.index(boundary.len())]
                    }
                }
            };
            if !chosen.contains(&candidate) {
                return Ok(candidate);
            }
        }
        // The candidate pool is (effectively) exhausted; keep the arrival
        // total with a uniform pick over the remaining nodes.
        let unchosen: Vec<NodeId> = self.graph.nodes().filter(|v| !chosen.contains(v)).collect();
        Ok(unchosen[self.rng.index(unchosen.len())])
    }

    fn choose_targets(&mut self) -> Result<Vec<NodeId>, EvolutionError> {
        let m = self.edges_per_arrival;
        if self.rule == AttachRule::Direct && self.mode == SelectionMode::Argmax {
            if m == 1 {
                return Ok(vec![select_target_a(&self.table)]);
            }
            // deterministic multi-attach: the m top powers, ordered by
            // power descending then id ascending
            let mut order: Vec<NodeId> = self.graph.nodes().collect();
            order.sort_by(|a, b| {
                self.table
                    .power(*b)
                    .cmp(&self.table.power(*a))
                    .then(a.cmp(b))
            });
            order.truncate(m);
            return Ok(order);
        }
        let mut chosen = Vec::with_capacity(m);
        for _ in 0..m {
            let target = self.draw_target(&chosen)?;
            chosen.push(target);
        }
        Ok(chosen)
    }

    /// Adds one node and its attachments; returns `None` once the target
    /// size is reached. The power table is maintained incrementally and
    /// stays equal to a from-scratch recomputation.
    pub fn step(&mut self) -> Result<Option<StepRecord>, EvolutionError> {
        if self.is_done() {
            return Ok(None);
        }
        let targets = self.choose_targets()?;
        let new_node = self.graph.add_node();
        for &target in &targets {
            self.graph.add_edge(new_node, target)?;
            let table = std::mem::replace(&mut self.table, PullingPowerTable::placeholder(self.k));
            self.table = apply_edge_incremental(table, &self.graph, (new_node, target))?;
        }
        let record = StepRecord {
            t: self.t,
            new_node,
            targets,
            table_checksum: table_checksum(&self.table),
        };
        self.t += 1;
        Ok(Some(record))
    }
}

/// Runs a config to completion.
///
/// The final graph has exactly `N` nodes and
/// `m0 + (N - n0) * edges_per_arrival` edges; identical seed and config
/// give a byte-identical trace.
pub fn run(config: &EvolutionConfig) -> Result<RunTrace, EvolutionError> {
    let mut engine = Engine::from_config(config)?;
    let initial_nodes = engine.graph.node_count();
    let initial_edges = engine.graph.edge_count();
    let mut steps = Vec::with_capacity(config.target_nodes.saturating_sub(initial_nodes));
    while let Some(record) = engine.step()? {
        steps.push(record);
    }
    debug_assert_eq!(
        engine.graph.edge_count(),
        initial_edges + (engine.graph.node_count() - initial_nodes) * config.edges_per_arrival,
    );
    Ok(RunTrace {
        config_hash: config.config_hash(),
        rng_version: RNG_VERSION,
        initial_nodes,
        initial_edges,
        steps,
        graph: engine.graph,
    })
}
