use std::fmt;

use num_integer::Integer;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::unary::sizes::UnarySize;

/// Largest number of word lengths [`unary_concat`] will tabulate.
pub const HORIZON_LIMIT: u64 = 10_000_000;

/// A unary language as an eventually periodic set of word lengths.
///
/// Length `i < tail.len()` is accepted iff `tail[i]`; a longer length `i` is
/// accepted iff `cycle[(i − tail.len()) mod cycle.len()]`. Values are always
/// canonical, so `(cycle.len(), tail.len())` is the shape of the minimal DFA.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnaryLang {
    tail: Vec<bool>,
    cycle: Vec<bool>,
}

impl UnaryLang {
    pub fn new(tail: Vec<bool>, cycle: Vec<bool>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Precondition("cycle must be non-empty".into()));
        }
        let mut l = UnaryLang { tail, cycle };
        l.canonicalize();
        Ok(l)
    }

    /// The language of the unary DFA with a tail of `mu` states and a cycle
    /// of `lambda` states, where state `j` is reached by `aʲ` (`j < μ + λ`).
    pub fn from_shape(size: UnarySize, finals: &[u64]) -> Result<Self> {
        let total = size.states();
        if size.lambda == 0 {
            return Err(Error::Precondition("cycle length must be positive".into()));
        }
        if total > HORIZON_LIMIT {
            return Err(Error::Guard(format!("{total} states exceed {HORIZON_LIMIT}")));
        }
        let mut bits = vec![false; total as usize];
        for &f in finals {
            if f >= total {
                return Err(Error::StateOutOfRange { state: f as usize, count: total as usize });
            }
            bits[f as usize] = true;
        }
        let cycle = bits.split_off(size.mu as usize);
        UnaryLang::new(bits, cycle)
    }

    /// `a^t (a^p)*`.
    pub fn arithmetic(t: u64, p: u64) -> Result<Self> {
        UnaryLang::from_shape(UnarySize { lambda: p, mu: t }, &[t])
    }

    /// The language of a DFA over a one-letter alphabet.
    pub fn from_dfa(dfa: &Dfa) -> Result<Self> {
        if dfa.alphabet().len() != 1 {
            return Err(Error::AlphabetMismatch(format!(
                "expected a unary alphabet, found {:?}",
                dfa.alphabet()
            )));
        }
        let mut seen = vec![usize::MAX; dfa.state_count()];
        let mut path = Vec::new();
        let mut q = dfa.start();
        while seen[q] == usize::MAX {
            seen[q] = path.len();
            path.push(dfa.is_final(q));
            q = dfa.next(q, 0);
        }
        let cycle = path.split_off(seen[q]);
        UnaryLang::new(path, cycle)
    }

    /// The DFA over `{a}` with states `0..μ+λ` in length order.
    pub fn to_dfa(&self) -> Dfa {
        let mu = self.tail.len();
        let total = mu + self.cycle.len();
        let delta: Vec<usize> = (0..total).map(|j| if j + 1 < total { j + 1 } else { mu }).collect();
        let finals = self.tail.iter().chain(&self.cycle).enumerate().filter(|(_, &b)| b).map(|(j, _)| j);
        Dfa::new(vec!["a".to_string()], total, delta, 0, finals).expect("well-formed unary DFA")
    }

    /// The language `{ε}`.
    pub fn epsilon() -> Self {
        UnaryLang { tail: vec![true], cycle: vec![false] }
    }

    pub fn contains(&self, len: u64) -> bool {
        let mu = self.tail.len() as u64;
        if len < mu {
            self.tail[len as usize]
        } else {
            self.cycle[((len - mu) % self.cycle.len() as u64) as usize]
        }
    }

    pub fn tail(&self) -> &[bool] {
        &self.tail
    }

    pub fn cycle(&self) -> &[bool] {
        &self.cycle
    }

    pub fn size(&self) -> UnarySize {
        UnarySize { lambda: self.cycle.len() as u64, mu: self.tail.len() as u64 }
    }

    fn canonicalize(&mut self) {
        let n = self.cycle.len();
        let period = (1..=n)
            .filter(|p| n.is_multiple_of(*p))
            .find(|&p| (0..n).all(|i| self.cycle[i] == self.cycle[(i + p) % n]))
            .expect("n is a period");
        self.cycle.truncate(period);
        while let Some(&last) = self.tail.last() {
            if last != *self.cycle.last().expect("non-empty") {
                break;
            }
            self.tail.pop();
            self.cycle.rotate_right(1);
        }
    }

    fn bits(&self, len: usize) -> Vec<u64> {
        let mut out = vec![0u64; len.div_ceil(64)];
        for i in 0..len {
            if self.contains(i as u64) {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        out
    }
}

/// Minimal DFA shape of a unary language.
pub fn unary_minimal_size(l: &UnaryLang) -> UnarySize {
    l.size()
}

/// The concatenation `{x + y : x ∈ a, y ∈ b}`.
///
/// The sum set is periodic with period `L = lcm(λa, λb)` from
/// `μa + μb + L` on, so lengths below `μa + μb + 2L` determine it. One
/// further period is tabulated and compared as a check.
pub fn unary_concat(a: &UnaryLang, b: &UnaryLang) -> Result<UnaryLang> {
    let (sa, sb) = (a.size(), b.size());
    let period = sa.lambda.lcm(&sb.lambda);
    let start = sa.mu + sb.mu + period;
    let horizon = start + 2 * period;
    if horizon > HORIZON_LIMIT {
        return Err(Error::Guard(format!("horizon of {horizon} lengths exceeds {HORIZON_LIMIT}")));
    }
    let h = horizon as usize;
    let bb = b.bits(h);
    let mut sum = vec![0u64; bb.len()];
    for x in (0..h).filter(|&x| a.contains(x as u64)) {
        or_shifted(&mut sum, &bb, x);
    }
    let bit = |i: usize| sum[i / 64] >> (i % 64) & 1 == 1;
    let (s, p) = (start as usize, period as usize);
    assert!(
        (s..s + p).all(|i| bit(i) == bit(i + p)),
        "sum set is periodic from the computed threshold"
    );
    let tail = (0..s).map(bit).collect();
    let cycle = (s..s + p).map(bit).collect();
    UnaryLang::new(tail, cycle)
}

/// `dst |= src << shift`, truncated to the length of `dst`.
fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (words, bits) = (shift / 64, shift % 64);
    for i in (words..dst.len()).rev() {
        let j = i - words;
        let mut v = src[j] << bits;
        if bits > 0 && j > 0 {
            v |= src[j - 1] >> (64 - bits);
        }
        dst[i] |= v;
    }
}

/// Left fold of [`unary_concat`].
pub fn unary_concat_all(langs: &[UnaryLang]) -> Result<UnaryLang> {
    let (first, rest) = langs
        .split_first()
        .ok_or_else(|| Error::Precondition("no languages given".into()))?;
    rest.iter().try_fold(first.clone(), |acc, l| unary_concat(&acc, l))
}

impl fmt::Display for UnaryLang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |bits: &[bool]| bits.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        write!(f, "{}[{}]", show(&self.tail), show(&self.cycle))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sz(lambda: u64, mu: u64) -> UnarySize {
        UnarySize { lambda, mu }
    }

    #[test]
    fn canonical_forms() {
        let all = UnaryLang::new(vec![true, true], vec![true, true, true]).unwrap();
        assert_eq!(all.size(), sz(1, 0));
        // a⁴(a⁵)* is the residue class 4 mod 5; a⁶(a⁵)* also needs a tail.
        assert_eq!(UnaryLang::arithmetic(4, 5).unwrap().size(), sz(5, 0));
        assert_eq!(UnaryLang::arithmetic(6, 5).unwrap().size(), sz(5, 2));
        let cyclic = UnaryLang::from_shape(sz(6, 0), &[5]).unwrap();
        assert_eq!(cyclic.size(), sz(6, 0));
        // {ε} ∪ a^{m−1}(a^{m−2})* with m = 9.
        let l = UnaryLang::from_shape(sz(7, 2), &[0, 8]).unwrap();
        assert_eq!(l.size(), sz(7, 2));
        // a (aa)* written with a redundant tail and a doubled cycle.
        let l = UnaryLang::new(vec![false, true, false], vec![true, false, true, false]).unwrap();
        assert_eq!((l.tail(), l.cycle()), (&[][..], &[false, true][..]));
    }

    #[test]
    fn membership() {
        let l = UnaryLang::arithmetic(2, 3).unwrap();
        let got: Vec<u64> = (0..12).filter(|&n| l.contains(n)).collect();
        assert_eq!(got, vec![2, 5, 8, 11]);
        assert_eq!(l.to_string(), "[001]");
    }

    #[test]
    fn dfa_round_trip() {
        let l = UnaryLang::from_shape(sz(4, 3), &[1, 4, 6]).unwrap();
        let d = l.to_dfa();
        assert_eq!(d.state_count() as u64, l.size().states());
        assert_eq!(UnaryLang::from_dfa(&d).unwrap(), l);
        for n in 0..20 {
            assert_eq!(d.accepts_indices(&vec![0; n as usize]), l.contains(n));
        }
        let binary = Dfa::new(vec!["a".into(), "b".into()], 1, vec![0, 0], 0, [0]).unwrap();
        assert!(UnaryLang::from_dfa(&binary).is_err());
    }

    #[test]
    fn epsilon_is_neutral() {
        let l = UnaryLang::from_shape(sz(4, 3), &[1, 4, 6]).unwrap();
        assert_eq!(unary_concat(&UnaryLang::epsilon(), &l).unwrap(), l);
        assert_eq!(unary_concat(&l, &UnaryLang::epsilon()).unwrap(), l);
    }

    #[test]
    fn coprime_pair() {
        let l = unary_concat(&UnaryLang::arithmetic(2, 3).unwrap(), &UnaryLang::arithmetic(4, 5).unwrap()).unwrap();
        assert_eq!(l.size(), sz(1, 14));
        assert!(!l.contains(13) && l.contains(14));
    }

    #[test]
    fn empty_language_absorbs() {
        let empty = UnaryLang::new(vec![], vec![false]).unwrap();
        let l = UnaryLang::arithmetic(2, 3).unwrap();
        assert_eq!(unary_concat(&empty, &l).unwrap(), empty);
    }

    #[test]
    fn shifted_or() {
        let src = vec![u64::MAX, 1];
        let mut dst = vec![0u64; 3];
        or_shifted(&mut dst, &src, 70);
        assert_eq!(dst, vec![0, u64::MAX << 6, (u64::MAX >> 58) | (1 << 6)]);
    }

    #[test]
    fn horizon_guard() {
        let big = UnaryLang::from_shape(sz(9_999_991, 0), &[0]);
        let big = big.unwrap();
        let other = UnaryLang::from_shape(sz(3, 0), &[0]).unwrap();
        assert!(matches!(unary_concat(&big, &other), Err(Error::Guard(_))));
    }
}
