use std::collections::HashMap;

use crate::automata::dfa::Dfa;

/// Minimal complete DFA of the same language (Moore's partition refinement),
/// numbered breadth-first from the start state in alphabet order.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let d = dfa.canonical();
    let n = d.state_count();
    let k = d.alphabet().len();

    let finality: Vec<usize> = (0..n).map(|q| usize::from(d.is_final(q))).collect();
    let (mut class, mut class_count) = renumber(&finality);

    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::with_capacity(class_count * 2);
        let mut next_class = Vec::with_capacity(n);
        let mut sig = Vec::with_capacity(k + 1);
        for q in 0..n {
            sig.clear();
            sig.push(class[q]);
            sig.extend((0..k).map(|a| class[d.next(q, a)]));
            let fresh = ids.len();
            let id = *ids.entry(sig.clone()).or_insert(fresh);
            next_class.push(id);
        }
        let refined = ids.len();
        class = next_class;
        if refined == class_count {
            break;
        }
        class_count = refined;
    }

    let mut rep = vec![usize::MAX; class_count];
    for q in (0..n).rev() {
        rep[class[q]] = q;
    }
    let mut delta = Vec::with_capacity(class_count * k);
    for &q in &rep {
        for a in 0..k {
            delta.push(class[d.next(q, a)]);
        }
    }
    let finals = (0..class_count).filter(|&c| d.is_final(rep[c]));
    Dfa::new(d.alphabet().to_vec(), class_count, delta, class[d.start()], finals)
        .expect("quotient of a valid DFA")
        .canonical()
}

fn renumber(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut map = HashMap::new();
    let out = labels
        .iter()
        .map(|&l| {
            let fresh = map.len();
            *map.entry(l).or_insert(fresh)
        })
        .collect();
    (out, map.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn minimal_input_is_unchanged_up_to_isomorphism() {
        // Words over {a} whose length is 1 mod 3.
        let d = Dfa::new(sigma(&["a"]), 3, vec![1, 2, 0], 0, [1]).unwrap();
        let m = minimize(&d);
        assert_eq!(m.state_count(), 3);
        assert!(m.isomorphic(&d).unwrap());
    }

    #[test]
    fn duplicated_dead_states_merge() {
        // 0 -a-> 1 (final), 0 -b-> 2, 1 -> 3; states 2 and 3 are both dead sinks.
        let d = Dfa::new(sigma(&["a", "b"]), 4, vec![1, 2, 3, 3, 2, 2, 3, 3], 0, [1]).unwrap();
        let m = minimize(&d);
        assert_eq!(m.state_count(), 3);
        assert_eq!(m.live_states().iter().filter(|&&l| !l).count(), 1);
    }

    #[test]
    fn unreachable_states_are_dropped() {
        let d = Dfa::new(sigma(&["a"]), 3, vec![0, 2, 1], 0, [0, 1]).unwrap();
        assert_eq!(minimize(&d).state_count(), 1);
    }

    #[test]
    fn empty_and_universal_languages() {
        let none = Dfa::new(sigma(&["a", "b"]), 2, vec![1, 0, 0, 1], 0, []).unwrap();
        assert_eq!(minimize(&none).state_count(), 1);
        let all = Dfa::new(sigma(&["a", "b"]), 2, vec![1, 0, 0, 1], 0, [0, 1]).unwrap();
        assert_eq!(minimize(&all).state_count(), 1);
        assert!(minimize(&all).is_final(0));
    }
}
