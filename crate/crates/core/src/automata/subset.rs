use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::automata::dfa::Dfa;
use crate::automata::nfa::Nfa;
use crate::automata::stateset::StateSet;
use crate::error::{Error, Result};

/// Default limit on the number of reachable subsets.
pub const DEFAULT_CAP: usize = 2_000_000;

/// Breadth-first subset construction with ε-closure. Only reachable subsets
/// become states; the empty subset, when reachable, is kept as a dead state.
pub fn subset_construct(nfa: &Nfa, cap: usize) -> Result<Dfa> {
    subset_construct_labeled(nfa, cap).map(|(dfa, _)| dfa)
}

/// Like [`subset_construct`], also returning the subset behind each DFA state.
pub fn subset_construct_labeled(nfa: &Nfa, cap: usize) -> Result<(Dfa, Vec<StateSet>)> {
    if cap == 0 {
        return Err(Error::Precondition("cap must be positive".into()));
    }
    let k = nfa.alphabet().len();
    let table = nfa.step_table();
    let finals = nfa.final_set();

    let initial = nfa.initial_closure();
    let mut index: HashMap<StateSet, usize> = HashMap::new();
    let mut subsets = vec![initial.clone()];
    index.insert(initial, 0);
    let mut delta: Vec<usize> = Vec::new();
    let mut queue = VecDeque::from([0usize]);

    while let Some(i) = queue.pop_front() {
        for a in 0..k {
            let mut next = StateSet::empty(nfa.state_count());
            for q in subsets[i].iter() {
                next.union_with(&table[q][a]);
            }
            let target = match index.entry(next) {
                Entry::Occupied(e) => *e.get(),
                Entry::Vacant(e) => {
                    let id = subsets.len();
                    if id >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    subsets.push(e.key().clone());
                    e.insert(id);
                    queue.push_back(id);
                    id
                }
            };
            // States are dequeued in creation order, so row i is written in order.
            debug_assert_eq!(delta.len(), i * k + a);
            delta.push(target);
        }
    }

    let accepting: Vec<usize> = subsets
        .iter()
        .enumerate()
        .filter(|(_, s)| s.intersects(&finals))
        .map(|(i, _)| i)
        .collect();
    let dfa = Dfa::new(nfa.alphabet().to_vec(), subsets.len(), delta, 0, accepting)?;
    Ok((dfa, subsets))
}

/// States `q` whose singleton `{q}` is reachable in the subset automaton of the
/// reversed NFA. If every state qualifies, all reachable subsets of `nfa` are
/// pairwise distinguishable.
pub fn co_reachable_singletons(nfa: &Nfa, cap: usize) -> Result<Vec<usize>> {
    let (_, subsets) = subset_construct_labeled(&nfa.reverse(), cap)?;
    let mut out: Vec<usize> = subsets
        .iter()
        .filter(|s| s.len() == 1)
        .filter_map(StateSet::first)
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::nfa::{Label, Transition};

    fn sigma(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn dfa_input_gives_isomorphic_output() {
        let d = Dfa::new(sigma(&["a", "b"]), 3, vec![1, 0, 2, 1, 0, 2], 0, [2]).unwrap();
        let e = subset_construct(&d.to_nfa(), DEFAULT_CAP).unwrap();
        assert!(d.isomorphic(&e).unwrap());
    }

    #[test]
    fn keeps_the_empty_subset_as_dead_state() {
        let n = Nfa::new(
            sigma(&["a", "b"]),
            2,
            vec![Transition { from: 0, label: Label::Symbol(0), to: 1 }],
            [0],
            [1],
        )
        .unwrap();
        let (d, subsets) = subset_construct_labeled(&n, 10).unwrap();
        assert_eq!(d.state_count(), 3);
        assert!(subsets.iter().any(StateSet::is_empty));
    }

    #[test]
    fn cap_is_enforced() {
        // The last-but-one-letter-is-a language: 2^3 reachable subsets.
        let n = Nfa::new(
            sigma(&["a", "b"]),
            3,
            vec![
                Transition { from: 0, label: Label::Symbol(0), to: 0 },
                Transition { from: 0, label: Label::Symbol(1), to: 0 },
                Transition { from: 0, label: Label::Symbol(0), to: 1 },
                Transition { from: 1, label: Label::Symbol(0), to: 2 },
                Transition { from: 1, label: Label::Symbol(1), to: 2 },
            ],
            [0],
            [2],
        )
        .unwrap();
        assert_eq!(subset_construct(&n, 100).unwrap().state_count(), 4);
        assert_eq!(subset_construct(&n, 3), Err(Error::CapExceeded { cap: 3 }));
        assert!(subset_construct(&n, 0).is_err());
    }

    #[test]
    fn one_state_accepting_loop_is_co_reachable() {
        let n = Nfa::new(
            sigma(&["a"]),
            1,
            vec![Transition { from: 0, label: Label::Symbol(0), to: 0 }],
            [0],
            [0],
        )
        .unwrap();
        assert_eq!(co_reachable_singletons(&n, 10).unwrap(), vec![0]);
    }
}
