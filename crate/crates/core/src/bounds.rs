//! Counting formulas for the valid states of the concatenation subset
//! automaton, and the bounds derived from them.
//!
//! All arithmetic is exact. Powers of two are shifts on [`BigUint`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Limit on `n₁·2^{n₂+⋯+nₖ}` for [`enumerate_valid_states`].
pub const ENUMERATION_GUARD: u64 = 1 << 24;

/// State counts `(n₁, …, nₖ)` with `k ≥ 1` and every `nᵢ ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SizeVector(Vec<usize>);

impl SizeVector {
    pub fn new(n: Vec<usize>) -> Result<Self> {
        if n.is_empty() {
            return Err(Error::Precondition("size vector is empty".into()));
        }
        if let Some(i) = n.iter().position(|&x| x == 0) {
            return Err(Error::Precondition(format!("n{} = 0", i + 1)));
        }
        Ok(SizeVector(n))
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `nᵢ` with a 1-based index.
    pub fn n(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `n₂ + ⋯ + nₖ`.
    pub fn tail_sum(&self) -> usize {
        self.0[1..].iter().sum()
    }

    fn require_k(&self, min: usize) -> Result<()> {
        if self.k() < min {
            return Err(Error::Precondition(format!("need k >= {min}, got k = {}", self.k())));
        }
        Ok(())
    }

    fn require_all_at_least(&self, min: usize) -> Result<()> {
        match self.0.iter().position(|&x| x < min) {
            Some(i) => Err(Error::Precondition(format!(
                "need every n >= {min}, but n{} = {}",
                i + 1,
                self.0[i]
            ))),
            None => Ok(()),
        }
    }
}

impl FromStr for SizeVector {
    type Err = Error;

    /// Parses a comma-separated list such as `3,4,3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        let mut pos = 0;
        for part in s.split(',') {
            let t = part.trim();
            let n = t.parse::<usize>().map_err(|_| Error::Syntax {
                pos,
                msg: format!("expected a positive integer, found `{t}`"),
            })?;
            out.push(n);
            pos += part.len() + 1;
        }
        SizeVector::new(out)
    }
}

impl fmt::Display for SizeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Serializes as a JSON number when it fits in `u64`, else as a decimal string.
pub fn serialize_big<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

fn serialize_big_vec<S: Serializer>(xs: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Big<'a>(&'a BigUint);
    impl Serialize for Big<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            serialize_big(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Big(x))?;
    }
    seq.end()
}

/// `#τₖ` with the tables behind it. `u[0]` and `v[0]` are `U₂` and `V₂`;
/// the last entries are `Uₖ` and `Vₖ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    #[serde(serialize_with = "serialize_big")]
    pub tau: BigUint,
    #[serde(rename = "U", serialize_with = "serialize_big_vec")]
    pub u: Vec<BigUint>,
    #[serde(rename = "V", serialize_with = "serialize_big_vec")]
    pub v: Vec<BigUint>,
}

/// Evaluates the U/V recursion on the 1-based positions `lo..=hi`, starting
/// from `(U_hi, V_hi)`. Returns the tables for `lo..=hi` in position order.
fn uv_tables(n: &SizeVector, lo: usize, hi: usize, top: (BigUint, BigUint)) -> (Vec<BigUint>, Vec<BigUint>) {
    let len = hi + 1 - lo;
    let mut u = vec![BigUint::zero(); len];
    let mut v = vec![BigUint::zero(); len];
    u[len - 1] = top.0;
    v[len - 1] = top.1;
    for i in (lo..hi).rev() {
        let ni = n.n(i);
        let (un, vn) = (&u[i + 1 - lo], &v[i + 1 - lo]);
        let half = pow2(ni - 1);
        let ui = BigUint::one() + (&half - 1u32) * un + &half * vn;
        let vi = pow2(ni - 2) * (un + vn);
        u[i - lo] = ui;
        v[i - lo] = vi;
    }
    (u, v)
}

fn standard_top(n: &SizeVector) -> (BigUint, BigUint) {
    let nk = n.n(n.k());
    (pow2(nk), pow2(nk - 1))
}

/// `(U_j, V_j)` for an interval that stops before `k`.
fn boundary_top(nj: usize) -> (BigUint, BigUint) {
    (pow2(nj - 1), pow2(nj - 2))
}

/// Number of valid states `#τₖ = (n₁−1)U₂ + V₂`.
pub fn count_valid_states(n: &SizeVector) -> Result<BoundResult> {
    n.require_k(2)?;
    n.require_all_at_least(2)?;
    let (u, v) = uv_tables(n, 2, n.k(), standard_top(n));
    let tau = BigUint::from(n.n(1) - 1) * &u[0] + &v[0];
    Ok(BoundResult { tau, u, v })
}

/// The closed form for three automata:
/// `n₁(1 + ¾·2^{n₂+n₃} − 2^{n₃}) − ⅜·2^{n₂+n₃} + 2^{n₃} − 1`.
pub fn count_valid_k3_closed(n1: usize, n2: usize, n3: usize) -> Result<BigUint> {
    SizeVector::new(vec![n1, n2, n3])?.require_all_at_least(2)?;
    // Scaled by 8: 8n₁ + 6n₁·2^{n₂+n₃} + 8·2^{n₃} − 8n₁·2^{n₃} − 3·2^{n₂+n₃} − 8.
    let n1b = BigUint::from(n1);
    let both = pow2(n2 + n3);
    let last = pow2(n3);
    let plus = &n1b * 8u32 + &n1b * 6u32 * &both + &last * 8u32;
    let minus = &n1b * 8u32 * &last + &both * 3u32 + 8u32;
    let scaled = plus - minus;
    assert!((&scaled % 8u32).is_zero(), "closed form is integral");
    Ok(scaled >> 3)
}

/// Brute-force count of tuples `(q, S₂, …, Sₖ)` meeting the validity
/// conditions, with `sᵢ = 1` and `fᵢ = nᵢ` in every component.
pub fn enumerate_valid_states(n: &SizeVector) -> Result<u64> {
    n.require_k(2)?;
    n.require_all_at_least(2)?;
    let total = n.tail_sum();
    if total >= 64 || (n.n(1) as u64).saturating_mul(1 << total) > ENUMERATION_GUARD {
        return Err(Error::Guard(format!(
            "{} tuples exceed the enumeration limit of {ENUMERATION_GUARD}",
            if total >= 64 { "too many".to_string() } else { (n.n(1) as u128 * (1u128 << total)).to_string() }
        )));
    }
    let k = n.k();
    let mut count = 0u64;
    for q in 0..n.n(1) {
        let mut masks = vec![0u64; k - 1];
        loop {
            if tuple_is_valid(n, q, &masks) {
                count += 1;
            }
            // Odometer over (S₂, …, Sₖ).
            let mut i = 0;
            while i < k - 1 {
                masks[i] += 1;
                if masks[i] < 1 << n.n(i + 2) {
                    break;
                }
                masks[i] = 0;
                i += 1;
            }
            if i == k - 1 {
                break;
            }
        }
    }
    Ok(count)
}

fn tuple_is_valid(n: &SizeVector, q: usize, masks: &[u64]) -> bool {
    let mut prev_empty = false;
    let mut prev_final = q == n.n(1) - 1;
    for (i, &m) in masks.iter().enumerate() {
        if prev_empty && m != 0 {
            return false;
        }
        if prev_final && m & 1 == 0 {
            return false;
        }
        prev_empty = m == 0;
        prev_final = m >> (n.n(i + 2) - 1) & 1 == 1;
    }
    true
}

/// Rounded bounds `⌈n₁2^Σ / 2^{k−1}⌉ ≤ #τₖ ≤ ⌊¾·n₁2^Σ⌋` with `Σ = n₂+⋯+nₖ`.
pub fn sandwich_bounds(n: &SizeVector) -> Result<(BigUint, BigUint)> {
    n.require_k(3)?;
    n.require_all_at_least(2)?;
    let base = BigUint::from(n.n(1)) << n.tail_sum();
    let div = pow2(n.k() - 1);
    let lower = (&base + &div - 1u32) / div;
    let upper = (base * 3u32) >> 2;
    Ok((lower, upper))
}

/// Upper bound when exactly one automaton, the `j`-th (1-based), has a
/// single state.
pub fn one_state_bound(n: &SizeVector, j: usize) -> Result<BigUint> {
    if j == 0 || j > n.k() {
        return Err(Error::Precondition(format!("j = {j} is not in 1..={}", n.k())));
    }
    for (i, &ni) in n.as_slice().iter().enumerate() {
        if i + 1 == j && ni != 1 {
            return Err(Error::Precondition(format!("n{j} = {ni}, expected 1")));
        }
        if i + 1 != j && ni < 2 {
            return Err(Error::Precondition(format!("n{} = {ni}, expected >= 2", i + 1)));
        }
    }
    interval_bound(n)
}

/// Maximal runs `[i, j]` (1-based, inclusive) of positions with `nᵢ ≥ 2`.
pub fn intervals(n: &SizeVector) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for i in 1..=n.k() {
        match (n.n(i) >= 2, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, n.k()));
    }
    out
}

/// Upper bound for a mix of one-state and larger automata.
///
/// Each maximal interval `[i, j]` of sizes `≥ 2` contributes `V_i`, computed
/// with `U_j = 2^{n_j−1}`, `V_j = 2^{n_j−2}` when `j < k` and with the usual
/// `Uₖ`, `Vₖ` when `j = k`. An interval starting at 1 contributes
/// `(n₁−1)U₂ + V₂`, or `n₁ − 1` if it is `[1, 1]`. A one-state last automaton
/// adds one final sink state.
pub fn interval_bound(n: &SizeVector) -> Result<BigUint> {
    let runs = intervals(n);
    if runs.is_empty() {
        return Err(Error::Precondition("no automaton has two or more states".into()));
    }
    let k = n.k();
    let mut total = BigUint::zero();
    for &(i, j) in &runs {
        let top = if j == k { standard_top(n) } else { boundary_top(n.n(j)) };
        if i == 1 {
            if j == 1 {
                total += n.n(1) - 1;
            } else {
                let (u, v) = uv_tables(n, 2, j, top);
                total += BigUint::from(n.n(1) - 1) * &u[0] + &v[0];
            }
        } else {
            let (_, v) = uv_tables(n, i, j, top);
            total += &v[0];
        }
    }
    if n.n(k) == 1 {
        total += 1u32;
    }
    Ok(total)
}

fn lower_bound_exponent(n: &SizeVector) -> Result<usize> {
    let drop = 2 * n.k() - 2;
    n.tail_sum().checked_sub(drop).ok_or_else(|| {
        Error::Precondition(format!("n2 + ... + nk = {} is below 2k - 2 = {drop}", n.tail_sum()))
    })
}

fn lower_bound_pre(n: &SizeVector, min_k: usize) -> Result<()> {
    n.require_k(min_k)?;
    let s = n.as_slice();
    if s[0] < 3 {
        return Err(Error::Precondition(format!("need n1 >= 3, got {}", s[0])));
    }
    if s[1] < 4 {
        return Err(Error::Precondition(format!("need n2 >= 4, got {}", s[1])));
    }
    if let Some(i) = s.iter().skip(2).position(|&x| x < 3) {
        return Err(Error::Precondition(format!("need n{} >= 3, got {}", i + 3, s[i + 2])));
    }
    Ok(())
}

/// `n₁ − 1 + 2^{n₂+⋯+nₖ−(2k−2)}`, the lower bound for a binary alphabet.
pub fn binary_lower_bound(n: &SizeVector) -> Result<BigUint> {
    lower_bound_pre(n, 3)?;
    Ok(BigUint::from(n.n(1) - 1) + pow2(lower_bound_exponent(n)?))
}

/// `n₁·2^{n₂+⋯+nₖ−(2k−2)}`, the lower bound for a ternary alphabet.
pub fn ternary_lower_bound(n: &SizeVector) -> Result<BigUint> {
    lower_bound_pre(n, 2)?;
    Ok(BigUint::from(n.n(1)) << lower_bound_exponent(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(n: &[usize]) -> SizeVector {
        SizeVector::new(n.to_vec()).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn recursion_hand_values() {
        let r = count_valid_states(&sv(&[3, 3, 3])).unwrap();
        assert_eq!(r.u, vec![big(41), big(8)]);
        assert_eq!(r.v, vec![big(24), big(4)]);
        assert_eq!(r.tau, big(106));
        let r = count_valid_states(&sv(&[2, 2, 2])).unwrap();
        assert_eq!((r.u, r.v, r.tau), (vec![big(9), big(4)], vec![big(6), big(2)], big(15)));
        let r = count_valid_states(&sv(&[3, 4, 3])).unwrap();
        assert_eq!((r.u[0].clone(), r.v[0].clone(), r.tau), (big(89), big(48), big(226)));
    }

    #[test]
    fn k2_matches_its_closed_form() {
        for n1 in 2..=10 {
            for n2 in 2..=10 {
                let tau = count_valid_states(&sv(&[n1, n2])).unwrap().tau;
                assert_eq!(tau, big(((n1 as u64 - 1) << n2) + (1 << (n2 - 1))));
            }
        }
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_valid_states(&sv(&[2, 2])).unwrap(), 6);
        assert_eq!(enumerate_valid_states(&sv(&[3, 3, 3])).unwrap(), 106);
        assert_eq!(enumerate_valid_states(&sv(&[2, 2, 2])).unwrap(), 15);
        assert!(enumerate_valid_states(&sv(&[1, 3])).is_err());
        assert!(matches!(enumerate_valid_states(&sv(&[2, 12, 13])), Err(Error::Guard(_))));
        assert!(matches!(enumerate_valid_states(&sv(&[2, 40, 40])), Err(Error::Guard(_))));
    }

    #[test]
    fn closed_k3_form() {
        assert_eq!(count_valid_k3_closed(3, 3, 3).unwrap(), big(106));
        assert_eq!(count_valid_k3_closed(2, 2, 2).unwrap(), big(15));
        assert_eq!(count_valid_k3_closed(3, 4, 3).unwrap(), big(226));
        assert!(count_valid_k3_closed(1, 3, 3).is_err());
    }

    #[test]
    fn large_vectors_stay_exact() {
        let r = count_valid_states(&sv(&[10, 10, 10])).unwrap();
        assert_eq!(r.tau, count_valid_k3_closed(10, 10, 10).unwrap());
        let r = count_valid_states(&sv(&[40, 40, 40])).unwrap();
        assert_eq!(r.tau, count_valid_k3_closed(40, 40, 40).unwrap());
        assert!(r.tau.bits() > 64);
    }

    #[test]
    fn sandwich_values() {
        assert_eq!(sandwich_bounds(&sv(&[2, 2, 2])).unwrap(), (big(8), big(24)));
        assert_eq!(sandwich_bounds(&sv(&[3, 3, 3])).unwrap(), (big(48), big(144)));
        assert!(sandwich_bounds(&sv(&[3, 3])).is_err());
    }

    #[test]
    fn one_state_cases() {
        // j = k = 2
        for n1 in 2..6 {
            assert_eq!(one_state_bound(&sv(&[n1, 1]), 2).unwrap(), big(n1 as u64));
        }
        // j = 1
        for n2 in 2..6 {
            assert_eq!(one_state_bound(&sv(&[1, n2]), 1).unwrap(), big(1 << (n2 - 1)));
        }
        // k = 4, j = 3
        for (n1, n2, n4) in [(2, 2, 2), (3, 4, 5), (5, 3, 2)] {
            let expected = ((n1 as u64 - 1) << (n2 - 1)) + (1 << (n2 - 2)) + (1 << (n4 - 1));
            assert_eq!(one_state_bound(&sv(&[n1, n2, 1, n4]), 3).unwrap(), big(expected));
        }
        // j = k >= 3: (n1-1)U2 + V2 + 1 with U2 = 2^{n2-1}, V2 = 2^{n2-2} for k = 3.
        assert_eq!(one_state_bound(&sv(&[3, 3, 1]), 3).unwrap(), big(2 * 4 + 2 + 1));
        // j = 2 with k = 3: (n1 - 1) + V3.
        assert_eq!(one_state_bound(&sv(&[3, 1, 3]), 2).unwrap(), big(2 + 4));
        assert!(one_state_bound(&sv(&[3, 3, 3]), 2).is_err());
        assert!(one_state_bound(&sv(&[1, 1, 3]), 1).is_err());
        assert!(one_state_bound(&sv(&[3, 1]), 3).is_err());
    }

    #[test]
    fn interval_cases() {
        assert_eq!(intervals(&sv(&[3, 3, 1, 1, 3])), vec![(1, 2), (5, 5)]);
        assert_eq!(interval_bound(&sv(&[3, 3, 1, 1, 3])).unwrap(), big(14));
        // Single interval [1, k-1] agrees with the one-state bound at j = k.
        assert_eq!(
            interval_bound(&sv(&[3, 4, 2, 1])).unwrap(),
            one_state_bound(&sv(&[3, 4, 2, 1]), 4).unwrap()
        );
        // First interval not at position 1: V_{i1} + ... plus the sink.
        assert_eq!(interval_bound(&sv(&[1, 3, 1])).unwrap(), big(2 + 1));
        assert!(interval_bound(&sv(&[1, 1, 1])).is_err());
        assert!(SizeVector::new(vec![2, 0]).is_err());
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(binary_lower_bound(&sv(&[3, 4, 3])).unwrap(), big(10));
        assert_eq!(binary_lower_bound(&sv(&[3, 4, 3, 3])).unwrap(), big(18));
        assert!(binary_lower_bound(&sv(&[3, 4])).is_err());
        assert!(binary_lower_bound(&sv(&[3, 3, 3])).is_err());
        assert!(binary_lower_bound(&sv(&[2, 4, 3])).is_err());
        assert!(binary_lower_bound(&sv(&[3, 4, 2])).is_err());
        assert_eq!(ternary_lower_bound(&sv(&[3, 4, 3])).unwrap(), big(24));
        assert_eq!(ternary_lower_bound(&sv(&[3, 4, 4])).unwrap(), big(48));
        assert_eq!(ternary_lower_bound(&sv(&[3, 4])).unwrap(), big(3 * 4));
    }

    #[test]
    fn ternary_ratio_is_constant() {
        for n in [[3, 4, 3], [5, 6, 7], [3, 9, 4]] {
            let v = sv(&n);
            let trivial = BigUint::from(n[0]) << v.tail_sum();
            assert_eq!(ternary_lower_bound(&v).unwrap() << 4, trivial);
        }
    }

    #[test]
    fn size_vector_parsing() {
        assert_eq!("3,4,3".parse::<SizeVector>().unwrap(), sv(&[3, 4, 3]));
        assert_eq!(" 2 , 2 ".parse::<SizeVector>().unwrap(), sv(&[2, 2]));
        assert!("".parse::<SizeVector>().is_err());
        assert!("3,,3".parse::<SizeVector>().is_err());
        assert!("3,0".parse::<SizeVector>().is_err());
        assert!("-1".parse::<SizeVector>().is_err());
        assert_eq!(sv(&[3, 4, 3]).to_string(), "3,4,3");
    }

    #[test]
    fn json_uses_numbers_then_strings() {
        let r = count_valid_states(&sv(&[3, 3, 3])).unwrap();
        assert_eq!(
            serde_json::to_value(&r).unwrap(),
            serde_json::json!({"tau": 106, "U": [41, 8], "V": [24, 4]})
        );
        let r = count_valid_states(&sv(&[40, 40, 40])).unwrap();
        assert!(serde_json::to_value(&r).unwrap()["tau"].is_string());
    }
}
