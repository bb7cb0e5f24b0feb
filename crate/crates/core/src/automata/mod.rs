//! Automaton types and the generic algorithms on them: transformation
//! notation, subset construction, reversal, co-reachability and minimization.

pub mod dfa;
pub mod format;
pub mod minimize;
pub mod nfa;
pub mod stateset;
pub mod subset;
pub mod transform;

pub use dfa::Dfa;
pub use minimize::minimize;
pub use nfa::{Label, Nfa, Transition};
pub use stateset::StateSet;
pub use subset::{co_reachable_singletons, subset_construct, subset_construct_labeled, DEFAULT_CAP};
pub use transform::{parse_transform, render_map, Atom, Transform};
