//! Witness automata: families whose concatenation meets the counting bounds,
//! the explicit five-automaton example, and an exhaustive scan showing that
//! two letters do not suffice for three two-state automata.
//!
//! States are 0-based here. Doc comments describe transformations in the
//! 1-based notation of [`crate::automata::transform`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::automata::{Dfa, DEFAULT_CAP};
use crate::bounds::{
    binary_lower_bound, count_valid_states, interval_bound, ternary_lower_bound, SizeVector,
};
use crate::concat::{minimal_concat_dfa, ConcatInput};
use crate::error::{Error, Result};
use crate::unary::cyclic_concat_size;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessFamily {
    Kp1,
    Kp1Two,
    BinaryK2,
    Kletter,
    Kletter2State,
    BinaryLb,
    TernaryLb,
    UnaryCyclic,
    ExampleK5_14,
}

impl Serialize for WitnessFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl WitnessFamily {
    pub const ALL: [WitnessFamily; 9] = [
        WitnessFamily::Kp1,
        WitnessFamily::Kp1Two,
        WitnessFamily::BinaryK2,
        WitnessFamily::Kletter,
        WitnessFamily::Kletter2State,
        WitnessFamily::BinaryLb,
        WitnessFamily::TernaryLb,
        WitnessFamily::UnaryCyclic,
        WitnessFamily::ExampleK5_14,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            WitnessFamily::Kp1 => "kp1",
            WitnessFamily::Kp1Two => "kp1-two",
            WitnessFamily::BinaryK2 => "binary-k2",
            WitnessFamily::Kletter => "kletter",
            WitnessFamily::Kletter2State => "kletter-2state",
            WitnessFamily::BinaryLb => "binary-lb",
            WitnessFamily::TernaryLb => "ternary-lb",
            WitnessFamily::UnaryCyclic => "unary-cyclic",
            WitnessFamily::ExampleK5_14 => "example-k5-14",
        }
    }

    /// Size-vector preconditions of the generator.
    pub fn check(self, n: &SizeVector) -> Result<()> {
        let s = n.as_slice();
        let k = s.len();
        let fail = |msg: String| Err(Error::Precondition(format!("{}: {msg}", self.tag())));
        let at_least = |range: std::ops::Range<usize>, min: usize| -> Result<()> {
            match range.clone().find(|&i| s[i] < min) {
                Some(i) => fail(format!("n{} = {} but must be >= {min}", i + 1, s[i])),
                None => Ok(()),
            }
        };
        match self {
            WitnessFamily::Kp1 | WitnessFamily::Kp1Two => {
                if k < 2 {
                    return fail(format!("need k >= 2, got {k}"));
                }
                at_least(0..k, if self == WitnessFamily::Kp1 { 3 } else { 2 })
            }
            WitnessFamily::BinaryK2 => {
                if k != 2 {
                    return fail(format!("need k = 2, got {k}"));
                }
                Ok(())
            }
            WitnessFamily::Kletter => {
                if k < 3 {
                    return fail(format!("need k >= 3, got {k}"));
                }
                at_least(0..1, 2)?;
                at_least(k - 1..k, 2)?;
                at_least(1..k - 1, 3)
            }
            WitnessFamily::Kletter2State => {
                if k < 3 {
                    return fail(format!("need k >= 3, got {k}"));
                }
                match s.iter().position(|&x| x != 2) {
                    Some(i) => fail(format!("n{} = {} but every automaton has two states", i + 1, s[i])),
                    None => Ok(()),
                }
            }
            WitnessFamily::BinaryLb | WitnessFamily::TernaryLb => {
                if k < 3 {
                    return fail(format!("need k >= 3, got {k}"));
                }
                at_least(0..1, 3)?;
                at_least(1..2, 4)?;
                at_least(2..k, 3)
            }
            WitnessFamily::UnaryCyclic => Ok(()),
            WitnessFamily::ExampleK5_14 => {
                if s != EXAMPLE_K5_14_SIZES {
                    return fail(format!("sizes are fixed to {EXAMPLE_K5_14_SIZES:?}"));
                }
                Ok(())
            }
        }
    }

    /// Generates the automata `A₁, …, Aₖ`.
    pub fn generate(self, n: &SizeVector) -> Result<Vec<Dfa>> {
        self.check(n)?;
        let s = n.as_slice();
        Ok(match self {
            WitnessFamily::Kp1 => gen_kp1(s),
            WitnessFamily::Kp1Two => gen_kp1_two(s),
            WitnessFamily::BinaryK2 => {
                let (a, b) = gen_binary_k2(s[0], s[1]);
                vec![a, b]
            }
            WitnessFamily::Kletter => gen_kletter(s),
            WitnessFamily::Kletter2State => gen_kletter_2state(s.len()),
            WitnessFamily::BinaryLb => gen_lower_bound(s, false),
            WitnessFamily::TernaryLb => gen_lower_bound(s, true),
            WitnessFamily::UnaryCyclic => s.iter().map(|&m| unary_cyclic(m)).collect(),
            WitnessFamily::ExampleK5_14 => gen_example_k5_14(),
        })
    }

    /// The value the minimal DFA of the concatenation is expected to meet.
    pub fn expected(self, n: &SizeVector) -> Result<Expectation> {
        self.check(n)?;
        let s = n.as_slice();
        Ok(match self {
            WitnessFamily::Kp1
            | WitnessFamily::Kp1Two
            | WitnessFamily::Kletter
            | WitnessFamily::Kletter2State => Expectation::Exact(count_valid_states(n)?.tau),
            WitnessFamily::BinaryK2 => Expectation::Exact(match (s[0], s[1]) {
                (1, 1) => BigUint::from(1u32),
                (1, _) | (_, 1) => interval_bound(n)?,
                _ => count_valid_states(n)?.tau,
            }),
            WitnessFamily::BinaryLb => Expectation::AtLeast(binary_lower_bound(n)?),
            WitnessFamily::TernaryLb => Expectation::AtLeast(ternary_lower_bound(n)?),
            WitnessFamily::UnaryCyclic => {
                let size = cyclic_concat_size(n)?;
                Expectation::Exact(BigUint::from(size.states()))
            }
            WitnessFamily::ExampleK5_14 => Expectation::Exact(interval_bound(n)?),
        })
    }

    /// A fixed size vector for families that take none.
    pub fn default_sizes(self) -> Option<SizeVector> {
        (self == WitnessFamily::ExampleK5_14)
            .then(|| SizeVector::new(EXAMPLE_K5_14_SIZES.to_vec()).expect("positive sizes"))
    }
}

impl fmt::Display for WitnessFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for WitnessFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        WitnessFamily::ALL
            .into_iter()
            .find(|f| f.tag() == norm)
            .ok_or_else(|| Error::Precondition(format!("unknown family `{s}`")))
    }
}

/// Expected minimal size of a concatenation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Expectation {
    #[serde(serialize_with = "crate::bounds::serialize_big")]
    Exact(BigUint),
    #[serde(serialize_with = "crate::bounds::serialize_big")]
    AtLeast(BigUint),
}

impl Expectation {
    pub fn value(&self) -> &BigUint {
        match self {
            Expectation::Exact(v) | Expectation::AtLeast(v) => v,
        }
    }

    pub fn is_met_by(&self, observed: usize) -> bool {
        let observed = BigUint::from(observed);
        match self {
            Expectation::Exact(v) => observed == *v,
            Expectation::AtLeast(v) => observed >= *v,
        }
    }
}

pub const EXAMPLE_K5_14_SIZES: [usize; 5] = [3, 3, 1, 1, 3];

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// `(1, 2, …, n)`.
fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|q| (q + 1) % n).collect()
}

/// `(1 → 2 → ⋯ → n)`; `n` is fixed.
fn chain(n: usize) -> Vec<usize> {
    (0..n).map(|q| (q + 1).min(n - 1)).collect()
}

/// `({2, …, n−1} → 1)`.
fn reset_interior(n: usize) -> Vec<usize> {
    (0..n).map(|q| if q == n - 1 { q } else { 0 }).collect()
}

/// `(2 → 3 → ⋯ → n → 1)`; `1` is fixed.
fn shift_but_first(n: usize) -> Vec<usize> {
    (0..n).map(|q| if q == 0 { 0 } else { (q + 1) % n }).collect()
}

fn names(prefix: &[&str], indexed: std::ops::RangeInclusive<usize>) -> Vec<String> {
    prefix
        .iter()
        .map(|s| s.to_string())
        .chain(indexed.map(|i| format!("a{i}")))
        .collect()
}

fn build(alphabet: &[String], maps: Vec<Vec<usize>>, finals: &[usize]) -> Dfa {
    Dfa::from_maps(alphabet.to_vec(), &maps, 0, finals.iter().copied()).expect("generated DFA is well formed")
}

/// `sᵢ = 1`, `fᵢ = nᵢ`.
fn last_final(n: usize) -> [usize; 1] {
    [n - 1]
}

fn gen_kp1(s: &[usize]) -> Vec<Dfa> {
    let k = s.len();
    let sigma = names(&["b"], 1..=k);
    s.iter()
        .enumerate()
        .map(|(i, &n)| {
            let mut maps = vec![(0..n).map(|q| if q == 0 { 1 } else { q }).collect()];
            maps.extend((0..k).map(|j| if j == i { cycle(n) } else { identity(n) }));
            build(&sigma, maps, &last_final(n))
        })
        .collect()
}

fn gen_kp1_two(s: &[usize]) -> Vec<Dfa> {
    let k = s.len();
    let sigma = names(&["b"], 1..=k);
    s.iter()
        .enumerate()
        .map(|(i, &n)| {
            let pos = i + 1;
            let mut b = identity(n);
            let mut letters = vec![identity(n); k];
            if pos == k {
                b = cycle(n);
                letters[k - 1] = chain(n);
            } else if pos % 2 == k % 2 {
                letters[i] = cycle(n);
                letters[k - 1] = chain(n);
            } else {
                letters[i] = cycle(n);
                b = chain(n);
            }
            let mut maps = vec![b];
            maps.extend(letters);
            build(&sigma, maps, &last_final(n))
        })
        .collect()
}

/// Binary automata over `{a, b}` whose concatenation is as hard as possible
/// for every `n₁, n₂ ≥ 1`. A one-state automaton accepts everything.
pub fn gen_binary_k2(n1: usize, n2: usize) -> (Dfa, Dfa) {
    let sigma = vec!["a".to_string(), "b".to_string()];
    let a = build(&sigma, vec![cycle(n1), reset_interior(n1)], &last_final(n1));
    let b = build(&sigma, vec![cycle(n2), shift_but_first(n2)], &last_final(n2));
    (a, b)
}

fn gen_kletter(s: &[usize]) -> Vec<Dfa> {
    let k = s.len();
    let sigma = names(&["b"], 1..=k - 1);
    s.iter()
        .enumerate()
        .map(|(i, &n)| {
            let mut letters = vec![identity(n); k - 1];
            let b = if i + 1 < k {
                letters[i] = cycle(n);
                reset_interior(n)
            } else {
                letters[k - 2] = cycle(n);
                shift_but_first(n)
            };
            let mut maps = vec![b];
            maps.extend(letters);
            build(&sigma, maps, &last_final(n))
        })
        .collect()
}

fn gen_kletter_2state(k: usize) -> Vec<Dfa> {
    let sigma = names(&["b", "c"], 2..=k - 1);
    let swap = vec![1, 0];
    let reset = vec![0, 0];
    let id = identity(2);
    (1..=k)
        .map(|pos| {
            let (b, c) = if pos == 1 {
                (swap.clone(), id.clone())
            } else if pos % 2 == 0 {
                (id.clone(), reset.clone())
            } else {
                (reset.clone(), id.clone())
            };
            let mut maps = vec![b, c];
            maps.extend((2..=k - 1).map(|j| {
                let hit = (j == pos && j <= k - 2) || (j == k - 1 && pos >= k - 1);
                if hit {
                    swap.clone()
                } else {
                    id.clone()
                }
            }));
            build(&sigma, maps, &[1])
        })
        .collect()
}

fn gen_lower_bound(s: &[usize], ternary: bool) -> Vec<Dfa> {
    let k = s.len();
    let sigma: Vec<String> = if ternary { vec!["a", "b", "c"] } else { vec!["a", "b"] }
        .into_iter()
        .map(String::from)
        .collect();
    s.iter()
        .enumerate()
        .map(|(i, &n)| {
            let to_sink = chain(n);
            let (mut a, mut b) = (to_sink.clone(), to_sink);
            let finals;
            let mut c = identity(n);
            if i == 0 {
                a[n - 2] = 0;
                finals = n - 1;
                c = cycle(n);
            } else {
                if i == 1 {
                    b[0] = 0;
                }
                finals = n - 2;
                if i + 1 < k {
                    c[n - 2] = n - 1;
                }
            }
            let mut maps = vec![a, b];
            if ternary {
                maps.push(c);
            }
            build(&sigma, maps, &[finals])
        })
        .collect()
}

/// The `n`-state cyclic automaton for `a^{n−1}(aⁿ)*`.
pub fn unary_cyclic(n: usize) -> Dfa {
    build(&["a".to_string()], vec![cycle(n)], &last_final(n))
}

/// Five automata with sizes `(3, 3, 1, 1, 3)` over `{a, …, f}`.
pub fn gen_example_k5_14() -> Vec<Dfa> {
    let sigma: Vec<String> = ["a", "b", "c", "d", "e", "f"].map(String::from).to_vec();
    let id = identity(3);
    let one = || build(&sigma, vec![vec![0]; 6], &[0]);
    let a1 = build(
        &sigma,
        vec![cycle(3), id.clone(), id.clone(), id.clone(), id.clone(), id.clone()],
        &[2],
    );
    let a2 = build(
        &sigma,
        vec![id.clone(), cycle(3), id.clone(), id.clone(), vec![1, 0, 2], vec![0, 0, 2]],
        &[2],
    );
    let a5 = build(
        &sigma,
        vec![id.clone(), id.clone(), cycle(3), shift_but_first(3), id.clone(), id],
        &[2],
    );
    vec![a1, a2, one(), one(), a5]
}

/// Outcome of the scan over all binary triples of two-state automata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalityReport {
    pub examined: usize,
    pub max_minimal: usize,
    /// Encoding of the first triple reaching the maximum; see [`decode_triple`].
    pub argmax: u32,
    /// `histogram[m]` triples have a minimal DFA with `m` states.
    pub histogram: Vec<usize>,
    /// The tight bound for three two-state automata.
    pub tau: usize,
}

/// The two-state DFA over `{a, b}` with `s = 1`, `f = 2` and transition
/// code `code` (bits 0–1 give `a`, bits 2–3 give `b`, low bit = image of 1).
pub fn two_state_binary(code: u32, finals: &[usize]) -> Dfa {
    let map = |bits: u32| vec![(bits & 1) as usize, (bits >> 1 & 1) as usize];
    let sigma = vec!["a".to_string(), "b".to_string()];
    build(&sigma, vec![map(code & 3), map(code >> 2 & 3)], finals)
}

/// Splits a triple encoding `c₁·16² + c₂·16 + c₃` (with the finals of `A₃`
/// in bits 12–13 for the wide scan) into automata.
pub fn decode_triple(code: u32) -> [Dfa; 3] {
    let f3 = match code >> 12 & 3 {
        0 => vec![1],
        1 => vec![],
        2 => vec![0],
        _ => vec![0, 1],
    };
    [
        two_state_binary(code >> 8 & 15, &[1]),
        two_state_binary(code >> 4 & 15, &[1]),
        two_state_binary(code & 15, &f3),
    ]
}

/// Runs the full pipeline on every binary triple of two-state automata with
/// `sᵢ = 1` and `fᵢ = 2`. With `wide`, the last automaton ranges over all four
/// final-state sets as well.
pub fn check_ternary_optimality_k3(wide: bool) -> Result<OptimalityReport> {
    let count: u32 = if wide { 4 * 4096 } else { 4096 };
    let sizes: Vec<usize> = (0..count)
        .into_par_iter()
        .map(|code| {
            let input = ConcatInput::new(decode_triple(code).to_vec())?;
            Ok(minimal_concat_dfa(&input, DEFAULT_CAP)?.state_count())
        })
        .collect::<Result<_>>()?;
    let max_minimal = *sizes.iter().max().expect("non-empty scan");
    let argmax = sizes.iter().position(|&m| m == max_minimal).expect("max is attained") as u32;
    let mut histogram = vec![0; max_minimal + 1];
    for &m in &sizes {
        histogram[m] += 1;
    }
    let tau = count_valid_states(&SizeVector::new(vec![2, 2, 2])?)?.tau;
    Ok(OptimalityReport {
        examined: sizes.len(),
        max_minimal,
        argmax,
        histogram,
        tau: tau.try_into().expect("small"),
    })
}
