//! A workbench for the extremal number `ex(n, C4)`, the largest number of edges in an
//! `n`-vertex graph without a 4-cycle.
//!
//! - [`gf`]: finite fields GF(p^k) as lookup tables.
//! - [`polarity`]: PG(2, q), its polarity graph and the low-degree deletion construction.
//! - [`graph`]: bitset graphs, C4 detection, 2-path counts, deficiencies, graph6.
//! - [`bounds`]: closed-form upper and lower bounds and the interval classification of `n`.
//! - [`lemmas`]: counting inequalities checked on concrete C4-free graphs.
//! - [`certify`]: exact-rational certification of the two polynomial inequalities
//!   behind the neighbourhood bounds.
//! - [`exact`]: brute force and branch-and-bound computation of `ex(n, C4)`.

pub mod bounds;
pub mod certify;
pub mod exact;
pub mod gf;
pub mod graph;
pub mod lemmas;
pub mod polarity;
pub mod rational;

pub use bounds::{best_bounds, interval_of, BoundReport, BoundsConfig, IntervalClass, IntervalPosition};
pub use certify::{certify_point, Certificate, Which};
pub use exact::{brute_force_ex, ex_c4, SearchOptions, SearchResult, SearchStatus};
pub use gf::{is_prime_power, make_field, FieldTable, PrimePower};
pub use graph::{DeficiencyProfile, Graph, VertexSet};
pub use lemmas::{C4FreeGraph, LemmaVerdict};
pub use polarity::{delete_low_degree, polarity_graph, polarity_graph_for, projective_points, ProjPoint};
pub use rational::Rational;
