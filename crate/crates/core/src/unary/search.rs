use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::unary::lang::{unary_concat, UnaryLang};
use crate::unary::sizes::UnarySize;

/// Default limit on the number of splits examined by [`search_best_unary_pair`].
pub const DEFAULT_SPLIT_BUDGET: u64 = 1_000_000;

/// A pair of automaton shapes `(m − i, i)` and `(n − j, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Split {
    pub i: u64,
    pub j: u64,
    pub first: UnarySize,
    pub second: UnarySize,
    pub gcd: u64,
    /// Upper bound on the concatenation for this split.
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub m: u64,
    pub n: u64,
    pub examined: u64,
    /// Split with the largest upper bound.
    pub bound_argmax: Split,
    /// Split whose attained value beats every other split's upper bound.
    pub winner: Option<Split>,
    /// Value attained by the winner.
    pub winner_value: Option<u64>,
    /// Largest upper bound among the other splits.
    pub runner_up_bound: u64,
}

fn split(m: u64, n: u64, i: u64, j: u64) -> Split {
    let (p, q) = (m - i, n - j);
    let gcd = p.gcd(&q);
    let bound = if gcd == 1 { p * q + i + j } else { 2 * p.lcm(&q) + i + j - 1 };
    Split {
        i,
        j,
        first: UnarySize { lambda: p, mu: i },
        second: UnarySize { lambda: q, mu: j },
        gcd,
        bound,
    }
}

/// A value known to be attained by some pair of languages of this shape:
/// the bound itself when the cycle lengths are coprime, and
/// `2·lcm(m−1, n−1) − 1` for one-state tails with cycle gcd 2.
fn attained(s: &Split) -> Option<u64> {
    if s.gcd == 1 {
        Some(s.bound)
    } else if s.i == 1 && s.j == 1 && s.gcd == 2 {
        Some(2 * s.first.lambda.lcm(&s.second.lambda) - 1)
    } else {
        None
    }
}

/// Compares all ways of spending `m` and `n` states on a tail and a cycle.
pub fn search_best_unary_pair(m: u64, n: u64, budget: u64) -> Result<SplitReport> {
    if m < 8 || n < 8 {
        return Err(Error::Precondition(format!("need m, n >= 8, got ({m}, {n})")));
    }
    let examined = m.checked_mul(n).filter(|&c| c <= budget).ok_or_else(|| {
        Error::Guard(format!("{m} x {n} splits exceed the budget of {budget}"))
    })?;
    let splits: Vec<Split> = (0..m).flat_map(|i| (0..n).map(move |j| split(m, n, i, j))).collect();
    let bound_argmax = *splits
        .iter()
        .reduce(|best, s| if s.bound > best.bound { s } else { best })
        .expect("at least one split");
    let candidate = splits
        .iter()
        .filter_map(|s| attained(s).map(|v| (s, v)))
        .reduce(|best, c| if c.1 > best.1 { c } else { best });
    let (winner, winner_value, runner_up_bound) = match candidate {
        Some((w, v)) => {
            let others = splits.iter().filter(|s| (s.i, s.j) != (w.i, w.j)).map(|s| s.bound).max().unwrap_or(0);
            if v > others {
                (Some(*w), Some(v), others)
            } else {
                (None, None, others)
            }
        }
        None => (None, None, bound_argmax.bound),
    };
    Ok(SplitReport { m, n, examined, bound_argmax, winner, winner_value, runner_up_bound })
}

/// `{ε} ∪ a^{m−2}(a^{m−1})*`, accepted by an automaton of shape `(m − 1, 1)`.
pub fn one_tail_witness(m: u64) -> Result<UnaryLang> {
    if m < 3 {
        return Err(Error::Precondition(format!("need m >= 3, got {m}")));
    }
    UnaryLang::from_shape(UnarySize { lambda: m - 1, mu: 1 }, &[0, m - 2])
}

/// Concatenates the two one-tail witnesses and returns the number of states
/// of the minimal DFA together with `2·lcm(m−1, n−1) − 1`.
pub fn confirm_one_tail_split(m: u64, n: u64) -> Result<(u64, u64)> {
    let (p, q) = (m - 1, n - 1);
    if m < 3 || n < 3 || p.gcd(&q) < 2 || p % q == 0 || q % p == 0 {
        return Err(Error::Precondition(format!(
            "need gcd(m-1, n-1) > 1 with neither dividing the other, got ({m}, {n})"
        )));
    }
    let l = unary_concat(&one_tail_witness(m)?, &one_tail_witness(n)?)?;
    Ok((l.size().states(), 2 * p.lcm(&q) - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_pair() {
        let r = search_best_unary_pair(471, 315, DEFAULT_SPLIT_BUDGET).unwrap();
        assert_eq!(r.examined, 471 * 315);
        let w = r.winner.unwrap();
        assert_eq!((w.first, w.second), (UnarySize { lambda: 470, mu: 1 }, UnarySize { lambda: 314, mu: 1 }));
        assert_eq!(r.winner_value, Some(470 * 314 - 1));
        assert_eq!((r.bound_argmax.i, r.bound_argmax.j, r.bound_argmax.bound), (1, 1, 147581));
        assert!(r.runner_up_bound < 147579);
    }

    #[test]
    fn gcd_facts() {
        assert_eq!(split(471, 315, 0, 0).gcd, 3);
        assert_eq!(split(471, 315, 0, 1).gcd, 157);
        assert_eq!(split(471, 315, 1, 0).gcd, 5);
        assert_eq!(split(471, 315, 2, 0).gcd, 7);
    }

    #[test]
    fn scaled_confirmation() {
        for (m, n) in [(7, 9), (17, 13), (11, 15), (9, 11)] {
            let (observed, expected) = confirm_one_tail_split(m, n).unwrap();
            assert_eq!(observed, expected, "({m}, {n})");
        }
        assert_eq!(confirm_one_tail_split(17, 13).unwrap().0, 95);
        assert!(confirm_one_tail_split(5, 9).is_err());
        assert!(confirm_one_tail_split(8, 10).is_err());
    }

    #[test]
    fn witness_shape() {
        let l = one_tail_witness(9).unwrap();
        assert_eq!(l.size(), UnarySize { lambda: 8, mu: 1 });
        assert!(l.contains(0) && l.contains(7) && l.contains(15) && !l.contains(8));
    }

    #[test]
    fn budget_and_preconditions() {
        assert!(matches!(search_best_unary_pair(471, 315, 1000), Err(Error::Guard(_))));
        assert!(search_best_unary_pair(7, 315, DEFAULT_SPLIT_BUDGET).is_err());
    }
}
