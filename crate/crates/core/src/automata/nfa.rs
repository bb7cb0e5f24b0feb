use std::collections::VecDeque;

use serde::Serialize;

use crate::automata::dfa::check_alphabet;
use crate::automata::stateset::StateSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    Epsilon,
    Symbol(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Transition {
    pub from: usize,
    pub label: Label,
    pub to: usize,
}

/// A nondeterministic automaton, possibly with ε-transitions.
///
/// Transitions are kept sorted and deduplicated, so two NFAs with the same
/// transition relation compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Vec<String>,
    state_count: usize,
    transitions: Vec<Transition>,
    initials: Vec<usize>,
    finals: Vec<usize>,
}

impl Nfa {
    pub fn new(
        alphabet: Vec<String>,
        state_count: usize,
        transitions: Vec<Transition>,
        initials: impl IntoIterator<Item = usize>,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        check_alphabet(&alphabet)?;
        let mut transitions = transitions;
        for t in &transitions {
            for q in [t.from, t.to] {
                if q >= state_count {
                    return Err(Error::StateOutOfRange { state: q, count: state_count });
                }
            }
            if let Label::Symbol(a) = t.label {
                if a >= alphabet.len() {
                    return Err(Error::Malformed(format!("symbol index {a} outside alphabet")));
                }
            }
        }
        transitions.sort_unstable();
        transitions.dedup();
        let norm = |it: Vec<usize>| -> Result<Vec<usize>> {
            let mut v = it;
            if let Some(&q) = v.iter().find(|&&q| q >= state_count) {
                return Err(Error::StateOutOfRange { state: q, count: state_count });
            }
            v.sort_unstable();
            v.dedup();
            Ok(v)
        };
        Ok(Nfa {
            alphabet,
            state_count,
            transitions,
            initials: norm(initials.into_iter().collect())?,
            finals: norm(finals.into_iter().collect())?,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn finals(&self) -> &[usize] {
        &self.finals
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions.iter().any(|t| t.label == Label::Epsilon)
    }

    pub fn final_set(&self) -> StateSet {
        StateSet::from_states(self.state_count, self.finals.iter().copied())
    }

    /// Swaps initial and final states and flips every transition.
    pub fn reverse(&self) -> Nfa {
        let transitions = self
            .transitions
            .iter()
            .map(|t| Transition {
                from: t.to,
                label: t.label,
                to: t.from,
            })
            .collect();
        Nfa::new(
            self.alphabet.clone(),
            self.state_count,
            transitions,
            self.finals.iter().copied(),
            self.initials.iter().copied(),
        )
        .expect("reversal preserves validity")
    }

    /// The set of states reachable from `set` by zero or more ε-transitions.
    pub fn epsilon_closure(&self, set: &StateSet) -> StateSet {
        let eps = self.epsilon_successors();
        closure_with(&eps, set)
    }

    fn epsilon_successors(&self) -> Vec<Vec<usize>> {
        let mut eps = vec![Vec::new(); self.state_count];
        for t in &self.transitions {
            if t.label == Label::Epsilon {
                eps[t.from].push(t.to);
            }
        }
        eps
    }

    /// For each state and symbol, the ε-closure of its successors.
    pub(crate) fn step_table(&self) -> Vec<Vec<StateSet>> {
        let k = self.alphabet.len();
        let eps = self.epsilon_successors();
        let mut raw = vec![vec![StateSet::empty(self.state_count); k]; self.state_count];
        for t in &self.transitions {
            if let Label::Symbol(a) = t.label {
                raw[t.from][a].insert(t.to);
            }
        }
        if self.has_epsilon() {
            for row in &mut raw {
                for cell in row.iter_mut() {
                    *cell = closure_with(&eps, cell);
                }
            }
        }
        raw
    }

    pub fn initial_closure(&self) -> StateSet {
        self.epsilon_closure(&StateSet::from_states(
            self.state_count,
            self.initials.iter().copied(),
        ))
    }

    /// An equivalent NFA without ε-transitions over the same state set.
    pub fn remove_epsilon(&self) -> Nfa {
        if !self.has_epsilon() {
            return self.clone();
        }
        let eps = self.epsilon_successors();
        let table = self.step_table();
        let mut transitions = Vec::new();
        for p in 0..self.state_count {
            let from_closure = closure_with(&eps, &StateSet::singleton(self.state_count, p));
            for q in from_closure.iter() {
                for (a, targets) in table[q].iter().enumerate() {
                    for r in targets.iter() {
                        transitions.push(Transition {
                            from: p,
                            label: Label::Symbol(a),
                            to: r,
                        });
                    }
                }
            }
        }
        Nfa::new(
            self.alphabet.clone(),
            self.state_count,
            transitions,
            self.initial_closure().iter(),
            self.finals.iter().copied(),
        )
        .expect("ε-elimination preserves validity")
    }

    /// Restricts to states that are reachable from an initial state and can
    /// reach a final state. Returns the trimmed NFA and, for each new state,
    /// its index in `self`.
    pub fn trim(&self) -> (Nfa, Vec<usize>) {
        let n = self.state_count;
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for t in &self.transitions {
            succ[t.from].push(t.to);
            pred[t.to].push(t.from);
        }
        let fwd = graph_reach(&succ, &self.initials);
        let bwd = graph_reach(&pred, &self.finals);
        let keep: Vec<usize> = (0..n).filter(|&q| fwd[q] && bwd[q]).collect();
        let mut index = vec![usize::MAX; n];
        for (i, &q) in keep.iter().enumerate() {
            index[q] = i;
        }
        let transitions = self
            .transitions
            .iter()
            .filter(|t| index[t.from] != usize::MAX && index[t.to] != usize::MAX)
            .map(|t| Transition {
                from: index[t.from],
                label: t.label,
                to: index[t.to],
            })
            .collect();
        let remap = |v: &[usize]| -> Vec<usize> {
            v.iter()
                .filter(|&&q| index[q] != usize::MAX)
                .map(|&q| index[q])
                .collect()
        };
        let nfa = Nfa::new(
            self.alphabet.clone(),
            keep.len(),
            transitions,
            remap(&self.initials),
            remap(&self.finals),
        )
        .expect("trimming preserves validity");
        (nfa, keep)
    }

    /// Direct simulation, used as an independent check of determinization.
    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        let table = self.step_table();
        let mut current = self.initial_closure();
        for &a in word {
            let mut next = StateSet::empty(self.state_count);
            for q in current.iter() {
                next.union_with(&table[q][a]);
            }
            current = next;
        }
        current.intersects(&self.final_set())
    }
}

fn closure_with(eps: &[Vec<usize>], set: &StateSet) -> StateSet {
    let mut out = set.clone();
    let mut stack: Vec<usize> = set.iter().collect();
    while let Some(q) = stack.pop() {
        for &p in &eps[q] {
            if out.insert(p) {
                stack.push(p);
            }
        }
    }
    out
}

fn graph_reach(adj: &[Vec<usize>], roots: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue: VecDeque<usize> = roots.iter().copied().collect();
    for &r in roots {
        seen[r] = true;
    }
    while let Some(q) = queue.pop_front() {
        for &p in &adj[q] {
            if !seen[p] {
                seen[p] = true;
                queue.push_back(p);
            }
        }
    }
    seen
}
