//! NFAs for `L(A₁)L(A₂)⋯L(Aₖ)` and the determinized automaton whose states
//! are decoded back into tuples `(q, S₂, …, Sₖ)`.
//!
//! Global NFA states are disjoint-union offsets: the states of `Aᵢ` occupy
//! `offset[i]..offset[i] + nᵢ`. A subset of the NFA is therefore a tuple of
//! per-automaton subsets, obtained by slicing at the offsets.

use std::fmt;

use serde::Serialize;

use crate::automata::{minimize, subset_construct_labeled, Dfa, Label, Nfa, StateSet, Transition};
use crate::error::{Error, Result};

/// An ordered list of DFAs over one shared alphabet.
#[derive(Debug, Clone)]
pub struct ConcatInput {
    dfas: Vec<Dfa>,
    offsets: Vec<usize>,
}

impl ConcatInput {
    pub fn new(dfas: Vec<Dfa>) -> Result<Self> {
        let Some(first) = dfas.first() else {
            return Err(Error::Precondition("need at least one automaton".into()));
        };
        if let Some((i, d)) = dfas.iter().enumerate().find(|(_, d)| d.alphabet() != first.alphabet()) {
            return Err(Error::AlphabetMismatch(format!(
                "automaton {} has alphabet {:?}, automaton 1 has {:?}",
                i + 1,
                d.alphabet(),
                first.alphabet()
            )));
        }
        let mut offsets = Vec::with_capacity(dfas.len() + 1);
        let mut acc = 0;
        for d in &dfas {
            offsets.push(acc);
            acc += d.state_count();
        }
        offsets.push(acc);
        Ok(ConcatInput { dfas, offsets })
    }

    pub fn k(&self) -> usize {
        self.dfas.len()
    }

    pub fn dfas(&self) -> &[Dfa] {
        &self.dfas
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.dfas.iter().map(Dfa::state_count).collect()
    }

    pub fn alphabet(&self) -> &[String] {
        self.dfas[0].alphabet()
    }

    pub fn total_states(&self) -> usize {
        self.offsets[self.k()]
    }

    /// Global index of the first state of automaton `i` (0-based).
    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    /// Whether the ε-free construction applies directly. Errors name the
    /// first violation; `Ok(true)` means a one-state accepting factor sits
    /// before the last position and the ε-construction must be used.
    pub fn check_strict(&self) -> Result<bool> {
        let mut fallback = false;
        for (i, d) in self.dfas.iter().enumerate().take(self.k() - 1) {
            let finals = d.finals();
            if d.state_count() == 1 {
                if finals.is_empty() {
                    return Err(Error::NotStrict(format!(
                        "automaton {} has one state and it is not final",
                        i + 1
                    )));
                }
                fallback = true;
            } else if finals.len() != 1 {
                return Err(Error::NotStrict(format!(
                    "automaton {} has {} final states, expected exactly one",
                    i + 1,
                    finals.len()
                )));
            } else if finals[0] == d.start() {
                return Err(Error::NotStrict(format!(
                    "automaton {} has its initial state final",
                    i + 1
                )));
            }
        }
        Ok(fallback)
    }
}

/// The general construction: disjoint union plus an ε-transition from every
/// final state of `Aᵢ` to the initial state of `Aᵢ₊₁`.
pub fn build_concat_eps_nfa(input: &ConcatInput) -> Nfa {
    let k = input.k();
    let sigma = input.alphabet().len();
    let mut transitions = Vec::new();
    for (i, d) in input.dfas().iter().enumerate() {
        let off = input.offset(i);
        for q in 0..d.state_count() {
            for a in 0..sigma {
                transitions.push(Transition {
                    from: off + q,
                    label: Label::Symbol(a),
                    to: off + d.next(q, a),
                });
            }
        }
        if i + 1 < k {
            let next_start = input.offset(i + 1) + input.dfas()[i + 1].start();
            for f in d.finals() {
                transitions.push(Transition {
                    from: off + f,
                    label: Label::Epsilon,
                    to: next_start,
                });
            }
        }
    }
    let last = input.k() - 1;
    let finals = input.dfas()[last]
        .finals()
        .into_iter()
        .map(|f| input.offset(last) + f);
    Nfa::new(
        input.alphabet().to_vec(),
        input.total_states(),
        transitions,
        [input.offset(0) + input.dfas()[0].start()],
        finals,
    )
    .expect("indices are within the disjoint union")
}

/// An ε-free concatenation NFA, and whether it came from the ε-construction.
#[derive(Debug, Clone)]
pub struct ConcatNfa {
    pub nfa: Nfa,
    pub epsilon_fallback: bool,
}

/// The ε-free construction: for `i < k`, every transition `q·a = fᵢ` also
/// goes to `sᵢ₊₁`; only the finals of `Aₖ` stay final.
///
/// When a one-state accepting automaton precedes the last position, the
/// ε-construction followed by ε-elimination is returned instead and
/// `epsilon_fallback` is set.
pub fn build_concat_nfa(input: &ConcatInput) -> Result<ConcatNfa> {
    if input.check_strict()? {
        return Ok(ConcatNfa {
            nfa: build_concat_eps_nfa(input).remove_epsilon(),
            epsilon_fallback: true,
        });
    }
    let k = input.k();
    let sigma = input.alphabet().len();
    let mut transitions = Vec::new();
    for (i, d) in input.dfas().iter().enumerate() {
        let off = input.offset(i);
        let hand_off = (i + 1 < k).then(|| {
            let f = d.finals()[0];
            (f, input.offset(i + 1) + input.dfas()[i + 1].start())
        });
        for q in 0..d.state_count() {
            for a in 0..sigma {
                let p = d.next(q, a);
                transitions.push(Transition {
                    from: off + q,
                    label: Label::Symbol(a),
                    to: off + p,
                });
                if let Some((f, next_start)) = hand_off {
                    if p == f {
                        transitions.push(Transition {
                            from: off + q,
                            label: Label::Symbol(a),
                            to: next_start,
                        });
                    }
                }
            }
        }
    }
    let last = k - 1;
    let finals = input.dfas()[last]
        .finals()
        .into_iter()
        .map(|f| input.offset(last) + f);
    let nfa = Nfa::new(
        input.alphabet().to_vec(),
        input.total_states(),
        transitions,
        [input.offset(0) + input.dfas()[0].start()],
        finals,
    )
    .expect("indices are within the disjoint union");
    Ok(ConcatNfa {
        nfa,
        epsilon_fallback: false,
    })
}

/// A subset-automaton state `(q, S₂, …, Sₖ)`; `sets[i]` is a subset of the
/// states of automaton `i + 2` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValidTuple {
    pub q: usize,
    pub sets: Vec<StateSet>,
}

impl ValidTuple {
    /// Splits a subset of the concatenation NFA at the automaton offsets.
    /// Fails unless exactly one state of the first automaton is present.
    pub fn decode(subset: &StateSet, input: &ConcatInput) -> std::result::Result<Self, String> {
        let sizes = input.sizes();
        let first = subset.slice(0, sizes[0]);
        if first.len() != 1 {
            return Err(format!(
                "first component has {} states, expected exactly one",
                first.len()
            ));
        }
        let sets = (1..input.k())
            .map(|i| subset.slice(input.offset(i), sizes[i]))
            .collect();
        Ok(ValidTuple {
            q: first.first().expect("non-empty"),
            sets,
        })
    }
}

impl fmt::Display for ValidTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.q + 1)?;
        for s in &self.sets {
            if s.is_empty() {
                f.write_str(", ∅")?;
            } else {
                let items: Vec<String> = s.iter().map(|q| (q + 1).to_string()).collect();
                write!(f, ", {{{}}}", items.join(","))?;
            }
        }
        f.write_str(")")
    }
}

/// Checks the three validity conditions against the automata in `input`:
/// one state of `A₁` (structural), no non-empty component after an empty
/// one, and `sᵢ₊₁ ∈ Sᵢ₊₁` whenever `Sᵢ` meets `Fᵢ`.
pub fn is_valid(t: &ValidTuple, input: &ConcatInput) -> Result<bool> {
    let sizes = input.sizes();
    let k = input.k();
    if t.sets.len() != k - 1 {
        return Err(Error::WidthMismatch {
            expected: k - 1,
            found: t.sets.len(),
        });
    }
    if t.q >= sizes[0] {
        return Err(Error::StateOutOfRange {
            state: t.q,
            count: sizes[0],
        });
    }
    for (i, s) in t.sets.iter().enumerate() {
        if s.width() != sizes[i + 1] {
            return Err(Error::WidthMismatch {
                expected: sizes[i + 1],
                found: s.width(),
            });
        }
    }
    let first = StateSet::singleton(sizes[0], t.q);
    let components: Vec<&StateSet> = std::iter::once(&first).chain(&t.sets).collect();
    for i in 0..k - 1 {
        let (cur, next) = (components[i], components[i + 1]);
        if cur.is_empty() && !next.is_empty() {
            return Ok(false);
        }
        let meets_final = input.dfas()[i].finals().iter().any(|&f| cur.contains(f));
        if meets_final && !next.contains(input.dfas()[i + 1].start()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reachable part of the subset automaton of the concatenation NFA, with
/// every state decoded into a tuple.
#[derive(Debug, Clone)]
pub struct ConcatDfa {
    pub dfa: Dfa,
    pub labels: Vec<ValidTuple>,
    pub epsilon_fallback: bool,
}

/// Determinizes [`build_concat_nfa`] and checks that every reachable state is
/// valid. A reachable invalid state is reported as `InvalidReachable`.
pub fn determinize_concat(input: &ConcatInput, cap: usize) -> Result<ConcatDfa> {
    let built = build_concat_nfa(input)?;
    let (dfa, subsets) = subset_construct_labeled(&built.nfa, cap)?;
    let mut labels = Vec::with_capacity(subsets.len());
    for (index, s) in subsets.iter().enumerate() {
        let t = ValidTuple::decode(s, input).map_err(|reason| Error::InvalidReachable { index, reason })?;
        if !is_valid(&t, input)? {
            return Err(Error::InvalidReachable {
                index,
                reason: format!("{t} violates the validity conditions"),
            });
        }
        labels.push(t);
    }
    Ok(ConcatDfa {
        dfa,
        labels,
        epsilon_fallback: built.epsilon_fallback,
    })
}

/// Minimal DFA of `L(A₁)⋯L(Aₖ)`: determinize, then minimize.
pub fn minimal_concat_dfa(input: &ConcatInput, cap: usize) -> Result<Dfa> {
    Ok(minimize(&determinize_concat(input, cap)?.dfa))
}

#[derive(Debug, Serialize)]
struct LabelJson {
    q: usize,
    #[serde(rename = "S")]
    s: Vec<Vec<usize>>,
}

/// The label table as JSON: 1-based state index → `{"q": …, "S": [[…], …]}`.
pub fn label_table_json(labels: &[ValidTuple]) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = labels
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let entry = LabelJson {
                q: t.q + 1,
                s: t.sets.iter().map(|s| s.iter().map(|q| q + 1).collect()).collect(),
            };
            ((i + 1).to_string(), serde_json::to_value(entry).expect("plain data"))
        })
        .collect();
    serde_json::Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{parse_transform, subset_construct, DEFAULT_CAP};

    fn dfa(n: usize, alphabet: &[&str], transforms: &[&str], finals: &[usize]) -> Dfa {
        let transforms: Vec<_> = transforms.iter().map(|t| parse_transform(t, n).unwrap()).collect();
        Dfa::from_transforms(
            alphabet.iter().map(|s| s.to_string()).collect(),
            n,
            &transforms,
            0,
            finals.iter().map(|f| f - 1),
        )
        .unwrap()
    }

    /// The two-automaton example over {a1, a2}: each symbol shifts its own
    /// automaton and fixes the other.
    fn fig1(n1: usize, n2: usize) -> ConcatInput {
        let c1 = format!("({})", (1..=n1).map(|i| i.to_string()).collect::<Vec<_>>().join(","));
        let c2 = format!("({})", (1..=n2).map(|i| i.to_string()).collect::<Vec<_>>().join(","));
        ConcatInput::new(vec![
            dfa(n1, &["a1", "a2"], &[&c1, "(1)"], &[n1]),
            dfa(n2, &["a1", "a2"], &["(1)", &c2], &[n2]),
        ])
        .unwrap()
    }

    #[test]
    fn single_automaton_is_unchanged() {
        let a = dfa(3, &["a"], &["(1,2,3)"], &[3]);
        let input = ConcatInput::new(vec![a.clone()]).unwrap();
        let n = build_concat_eps_nfa(&input);
        assert_eq!(n, a.to_nfa());
        let d = determinize_concat(&input, DEFAULT_CAP).unwrap();
        assert_eq!(d.dfa.state_count(), 3);
        assert!(d.labels.iter().all(|t| t.sets.is_empty()));
    }

    #[test]
    fn epsilon_free_nfa_for_two_small_automata() {
        let (n1, n2) = (4, 3);
        let input = fig1(n1, n2);
        let nfa = build_concat_nfa(&input).unwrap().nfa;
        let s2 = n1;
        // (f1 - 1, a1, s2) and (f1, a2, s2) are the only hand-off transitions.
        let hand_offs: Vec<_> = nfa
            .transitions()
            .iter()
            .filter(|t| t.from < n1 && t.to >= n1)
            .copied()
            .collect();
        assert_eq!(
            hand_offs,
            vec![
                Transition { from: n1 - 2, label: Label::Symbol(0), to: s2 },
                Transition { from: n1 - 1, label: Label::Symbol(1), to: s2 },
            ]
        );
        assert_eq!(nfa.initials(), &[0]);
        assert_eq!(nfa.finals(), &[n1 + n2 - 1]);
        assert!(!nfa.has_epsilon());
    }

    #[test]
    fn two_small_automata_reach_the_k2_count() {
        let d = determinize_concat(&fig1(3, 3), DEFAULT_CAP).unwrap();
        assert_eq!(d.dfa.state_count(), (3 - 1) * 8 + 4);
    }

    #[test]
    fn epsilon_to_one_state_factor() {
        let a = dfa(2, &["a"], &["(1,2)"], &[2]);
        let sink = dfa(1, &["a"], &["(1)"], &[1]);
        let input = ConcatInput::new(vec![a, sink]).unwrap();
        let n = build_concat_eps_nfa(&input);
        assert!(n
            .transitions()
            .contains(&Transition { from: 1, label: Label::Epsilon, to: 2 }));
    }

    #[test]
    fn one_state_prefix_uses_the_epsilon_fallback() {
        let sink = dfa(1, &["a", "b"], &["(1)", "(1)"], &[1]);
        let b = dfa(3, &["a", "b"], &["(1,2,3)", "(2->3->1)"], &[3]);
        let input = ConcatInput::new(vec![sink, b]).unwrap();
        let built = build_concat_nfa(&input).unwrap();
        assert!(built.epsilon_fallback);
        assert!(!built.nfa.has_epsilon());
        let d = determinize_concat(&input, DEFAULT_CAP).unwrap();
        assert!(d.epsilon_fallback);
    }

    #[test]
    fn strictness_violations_are_reported() {
        let two_finals = dfa(3, &["a"], &["(1,2,3)"], &[2, 3]);
        let start_final = dfa(3, &["a"], &["(1,2,3)"], &[1]);
        let empty = dfa(1, &["a"], &["(1)"], &[]);
        let last = dfa(2, &["a"], &["(1,2)"], &[2]);
        for bad in [two_finals, start_final, empty] {
            let input = ConcatInput::new(vec![bad, last.clone()]).unwrap();
            assert!(matches!(build_concat_nfa(&input), Err(Error::NotStrict(_))));
        }
    }

    #[test]
    fn alphabets_must_agree() {
        let a = dfa(2, &["a"], &["(1,2)"], &[2]);
        let b = dfa(2, &["b"], &["(1,2)"], &[2]);
        assert!(matches!(ConcatInput::new(vec![a, b]), Err(Error::AlphabetMismatch(_))));
        assert!(ConcatInput::new(vec![]).is_err());
    }

    #[test]
    fn validity_conditions() {
        let input = ConcatInput::new(vec![
            dfa(3, &["a"], &["(1,2,3)"], &[3]),
            dfa(3, &["a"], &["(1,2,3)"], &[3]),
            dfa(3, &["a"], &["(1,2,3)"], &[3]),
        ])
        .unwrap();
        let set = |xs: &[usize]| StateSet::from_states(3, xs.iter().map(|x| x - 1));
        let t = |q: usize, s2: &[usize], s3: &[usize]| ValidTuple { q: q - 1, sets: vec![set(s2), set(s3)] };
        assert!(is_valid(&t(1, &[], &[]), &input).unwrap());
        assert!(!is_valid(&t(3, &[2], &[]), &input).unwrap());
        assert!(is_valid(&t(3, &[1, 2], &[]), &input).unwrap());
        assert!(!is_valid(&t(2, &[], &[1]), &input).unwrap());
        assert!(!is_valid(&t(2, &[3], &[2]), &input).unwrap());
        assert!(is_valid(&t(2, &[3], &[1, 2]), &input).unwrap());

        let wrong = ValidTuple { q: 0, sets: vec![set(&[])] };
        assert!(matches!(is_valid(&wrong, &input), Err(Error::WidthMismatch { .. })));
        let wide = ValidTuple { q: 0, sets: vec![StateSet::empty(4), set(&[])] };
        assert!(matches!(is_valid(&wide, &input), Err(Error::WidthMismatch { .. })));
    }

    #[test]
    fn both_constructions_agree_on_language() {
        let input = fig1(3, 4);
        let eps = minimize(&subset_construct(&build_concat_eps_nfa(&input), DEFAULT_CAP).unwrap());
        let free = minimize(&subset_construct(&build_concat_nfa(&input).unwrap().nfa, DEFAULT_CAP).unwrap());
        assert!(eps.isomorphic(&free).unwrap());
    }

    #[test]
    fn label_table_is_one_based() {
        let d = determinize_concat(&fig1(3, 3), DEFAULT_CAP).unwrap();
        let json = label_table_json(&d.labels);
        assert_eq!(json["1"]["q"], 1);
        assert_eq!(json["1"]["S"], serde_json::json!([[]]));
        assert_eq!(json.as_object().unwrap().len(), d.dfa.state_count());
    }
}
