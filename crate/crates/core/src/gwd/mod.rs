//! Generalized wiring diagrams: infinitely many wires that cross at adjacent
//! levels or fall away. Simple diagrams reduce to a finite state graph whose
//! best crossings-per-fall cycle is the asymptotic density `c_k`.

mod diagram;
mod piece_graph;
mod ratio;
mod state;

pub use diagram::{
    decode_states, from_word, gwd_to_path, gwd_to_path_indexed, max_simple_crossings,
    random_reduced, simplify, ExplicitDiagram, Violation, WireEvent,
};
pub use piece_graph::{
    compute_ck, enumerate_tk, explore, extract_repeatable_pattern, state_count_bound, CkReport,
    ExtractedPattern, OptimalCycle, PieceEdge, PieceGraph,
};
pub use ratio::{max_ratio_cycle, RatioCycle, RatioEdge};
pub use state::{apply_move, apply_unchecked, is_legal, legal_moves, GwdState, Move, Ranks};
