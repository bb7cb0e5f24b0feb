//! Unary languages: Frobenius numbers, size formulas for concatenations of
//! unary automata, an exact engine for eventually periodic length sets, and
//! the search over tail/cycle splits of two automata.

pub mod frobenius;
pub mod lang;
pub mod search;
pub mod sizes;

pub use frobenius::{frobenius, modified_frobenius};
pub use lang::{unary_concat, unary_concat_all, unary_minimal_size, UnaryLang, HORIZON_LIMIT};
pub use search::{
    confirm_one_tail_split, one_tail_witness, search_best_unary_pair, Split, SplitReport,
    DEFAULT_SPLIT_BUDGET,
};
pub use sizes::{
    cyclic_concat_size, tailed_cyclic_size, tails_final_bound, TailsBound, UnarySize,
    MAX_TAILS_FACTORS,
};
