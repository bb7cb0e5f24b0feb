use std::collections::VecDeque;

use crate::automata::nfa::{Label, Nfa, Transition};
use crate::automata::transform::Transform;
use crate::error::{Error, Result};

/// A complete deterministic automaton over an ordered alphabet of named symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    state_count: usize,
    /// Row-major: `delta[q * |Σ| + a]`.
    delta: Vec<usize>,
    start: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alphabet: Vec<String>,
        state_count: usize,
        delta: Vec<usize>,
        start: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if state_count == 0 {
            return Err(Error::Malformed("a DFA needs at least one state".into()));
        }
        check_alphabet(&alphabet)?;
        if delta.len() != state_count * alphabet.len() {
            return Err(Error::Malformed(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                state_count * alphabet.len()
            )));
        }
        for &q in delta.iter().chain(std::iter::once(&start)) {
            if q >= state_count {
                return Err(Error::StateOutOfRange { state: q, count: state_count });
            }
        }
        let mut accepting = vec![false; state_count];
        for f in finals {
            if f >= state_count {
                return Err(Error::StateOutOfRange { state: f, count: state_count });
            }
            accepting[f] = true;
        }
        Ok(Dfa {
            alphabet,
            state_count,
            delta,
            start,
            accepting,
        })
    }

    /// Builds a DFA from one total map per symbol (`maps[a][q]`).
    pub fn from_maps(
        alphabet: Vec<String>,
        maps: &[Vec<usize>],
        start: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if maps.len() != alphabet.len() {
            return Err(Error::Malformed(format!(
                "{} maps for {} symbols",
                maps.len(),
                alphabet.len()
            )));
        }
        let n = maps.first().map_or(0, Vec::len);
        if maps.iter().any(|m| m.len() != n) {
            return Err(Error::Malformed("maps of different widths".into()));
        }
        let n = if maps.is_empty() { 1 } else { n };
        let mut delta = vec![0; n * alphabet.len()];
        for (a, m) in maps.iter().enumerate() {
            for (q, &p) in m.iter().enumerate() {
                delta[q * alphabet.len() + a] = p;
            }
        }
        Dfa::new(alphabet, n, delta, start, finals)
    }

    /// Builds an `n`-state DFA where each symbol acts by a parsed transformation.
    pub fn from_transforms(
        alphabet: Vec<String>,
        n: usize,
        transforms: &[Transform],
        start: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if let Some(bad) = transforms.iter().find(|s| s.state_count() != n) {
            return Err(Error::WidthMismatch {
                expected: n,
                found: bad.state_count(),
            });
        }
        let maps: Vec<Vec<usize>> = transforms.iter().map(Transform::to_map).collect();
        if maps.is_empty() {
            return Dfa::new(alphabet, n, Vec::new(), start, finals);
        }
        Dfa::from_maps(alphabet, &maps, start, finals)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn finals(&self) -> Vec<usize> {
        (0..self.state_count).filter(|&q| self.accepting[q]).collect()
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    pub fn next(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    /// The transformation induced by symbol `a`.
    pub fn symbol_map(&self, a: usize) -> Vec<usize> {
        (0..self.state_count).map(|q| self.next(q, a)).collect()
    }

    pub fn run(&self, from: usize, word: &[usize]) -> usize {
        word.iter().fold(from, |q, &a| self.next(q, a))
    }

    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        self.accepting[self.run(self.start, word)]
    }

    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> Result<bool> {
        let idx = word
            .iter()
            .map(|s| {
                self.symbol_index(s.as_ref())
                    .ok_or_else(|| Error::UnknownSymbol(s.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.accepts_indices(&idx))
    }

    /// Same automaton viewed as an NFA (single initial state, no ε-moves).
    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.len();
        let transitions = (0..self.state_count)
            .flat_map(|q| {
                (0..k).map(move |a| Transition {
                    from: q,
                    label: Label::Symbol(a),
                    to: self.next(q, a),
                })
            })
            .collect();
        Nfa::new(
            self.alphabet.clone(),
            self.state_count,
            transitions,
            [self.start],
            self.finals(),
        )
        .expect("a valid DFA is a valid NFA")
    }

    /// Breadth-first order of the states reachable from the start state,
    /// exploring symbols in alphabet order.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count];
        let mut order = vec![self.start];
        seen[self.start] = true;
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let p = self.next(q, a);
                if !seen[p] {
                    seen[p] = true;
                    order.push(p);
                    queue.push_back(p);
                }
            }
        }
        order
    }

    /// The reachable part, renumbered in breadth-first order.
    pub fn canonical(&self) -> Dfa {
        let order = self.bfs_order();
        let mut index = vec![usize::MAX; self.state_count];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        let k = self.alphabet.len();
        let mut delta = Vec::with_capacity(order.len() * k);
        for &q in &order {
            for a in 0..k {
                delta.push(index[self.next(q, a)]);
            }
        }
        let finals: Vec<usize> = order
            .iter()
            .enumerate()
            .filter(|(_, &q)| self.accepting[q])
            .map(|(i, _)| i)
            .collect();
        Dfa::new(self.alphabet.clone(), order.len(), delta, 0, finals)
            .expect("renumbering preserves validity")
    }

    /// Structural equality of the canonical renumberings.
    pub fn isomorphic(&self, other: &Dfa) -> Result<bool> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(self.canonical() == other.canonical())
    }

    /// States from which some final state can be reached.
    pub fn live_states(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); self.state_count];
        for q in 0..self.state_count {
            for a in 0..k {
                preds[self.next(q, a)].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = self.finals();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }
}

pub(crate) fn check_alphabet(alphabet: &[String]) -> Result<()> {
    for (i, s) in alphabet.iter().enumerate() {
        if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == ':') {
            return Err(Error::Malformed(format!("invalid symbol name {s:?}")));
        }
        if alphabet[..i].contains(s) {
            return Err(Error::Malformed(format!("duplicate symbol `{s}`")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::transform::parse_transform;

    fn fig4_a1() -> Dfa {
        // n1 = 3 over {b, a1, a2}: a1 cycles, a2 is the identity, b: (1->2).
        let alphabet: Vec<String> = ["b", "a1", "a2"].iter().map(|s| s.to_string()).collect();
        let transforms = ["(1->2)", "(1,2,3)", "(1)"]
            .iter()
            .map(|t| parse_transform(t, 3).unwrap())
            .collect::<Vec<_>>();
        Dfa::from_transforms(alphabet, 3, &transforms, 0, [2]).unwrap()
    }

    #[test]
    fn acceptance_follows_transitions() {
        let a = fig4_a1();
        assert!(a.accepts(&["a1", "a1"]).unwrap());
        assert!(!a.accepts::<&str>(&[]).unwrap());
        assert!(!a.accepts(&["b"]).unwrap());
        assert_eq!(a.accepts(&["z"]), Err(Error::UnknownSymbol("z".into())));
    }

    #[test]
    fn construction_validates_ranges() {
        let sigma = vec!["a".to_string()];
        assert!(Dfa::new(sigma.clone(), 2, vec![0, 2], 0, [1]).is_err());
        assert!(Dfa::new(sigma.clone(), 2, vec![0, 1], 2, [1]).is_err());
        assert!(Dfa::new(sigma.clone(), 2, vec![0, 1], 0, [5]).is_err());
        assert!(Dfa::new(sigma.clone(), 2, vec![0], 0, [1]).is_err());
        assert!(Dfa::new(vec!["a".into(), "a".into()], 1, vec![0, 0], 0, []).is_err());
        assert!(Dfa::new(sigma, 0, vec![], 0, []).is_err());
    }

    #[test]
    fn isomorphism_ignores_state_order() {
        let sigma = vec!["a".to_string(), "b".to_string()];
        let d1 = Dfa::new(sigma.clone(), 2, vec![1, 0, 0, 1], 0, [1]).unwrap();
        // Same automaton with states swapped.
        let d2 = Dfa::new(sigma.clone(), 2, vec![1, 0, 0, 1], 1, [0]).unwrap();
        assert!(d1.isomorphic(&d1).unwrap());
        assert!(d1.isomorphic(&d2).unwrap());
        let d3 = Dfa::new(sigma, 2, vec![1, 0, 0, 1], 0, [0]).unwrap();
        assert!(!d1.isomorphic(&d3).unwrap());
        let other = Dfa::new(vec!["x".into(), "b".into()], 2, vec![1, 0, 0, 1], 0, [1]).unwrap();
        assert!(matches!(d1.isomorphic(&other), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn live_states_exclude_sinks() {
        let sigma = vec!["a".to_string()];
        let d = Dfa::new(sigma, 3, vec![1, 2, 2], 0, [1]).unwrap();
        assert_eq!(d.live_states(), vec![true, true, false]);
    }
}
