//! Growth models for complex networks driven by k-neighborhood cut
//! sizes, with degree-preferential attachment as the `k = 0` special
//! case, plus analysis tools that fit power-law and stretched-exponential
//! forms to the resulting degree distributions.
//!
//! Crate layout:
//!
//! * [`graph`] — undirected simple graph, truncated BFS, edge-list text
//!   format;
//! * [`cut`] — balls `B(v,k)`, boundary sets, pulling powers, and the
//!   incremental table maintenance the growth engine relies on;
//! * [`evolution`] — the models themselves: config, selectors, seeded
//!   runs, traces;
//! * [`stats`] — degree histograms, power-law and stretched-exponential
//!   fits, and the model comparison verdict;
//! * [`plot`] — deterministic SVG scatter plots.

pub mod cut;
pub mod evolution;
pub mod graph;
pub mod plot;
pub mod stats;

pub use cut::{
    apply_edge_incremental, ball, boundary_nodes, cut_size, pulling_power, recompute_all, Ball,
    CutError, PullingPowerTable,
};
pub use evolution::{
    init_graph, run, select_target_a, select_target_b, select_target_proportional, Engine,
    EvolutionConfig, EvolutionError, InitialGraphKind, InitialGraphSpec, ModelKind, RunRng,
    RunTrace, SelectionMode, StepRecord, RNG_VERSION,
};
pub use graph::{
    load_edge_list, store_edge_list, DistanceMap, Graph, GraphError, LoadedEdgeList, NodeId,
};
pub use plot::{render_svg, FitOverlay, PlotError, PlotScale, PlotSpec, Series};
pub use stats::{
    compare_fits, fit_power_law, fit_power_law_auto, fit_stretched_exponential, DegreeHistogram,
    FitComparison, FitError, FitVerdict, Normalization, PowerLawFit, StretchedExpFit,
};
