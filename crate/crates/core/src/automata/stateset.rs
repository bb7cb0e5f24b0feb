use std::fmt;

const BITS: usize = 64;

/// A set of states over a fixed universe `0..width`, stored as packed bits.
///
/// Equality and hashing look at the content only, so two sets of the same
/// width and members are interchangeable as hash-map keys.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    width: usize,
    words: Vec<u64>,
}

impl StateSet {
    pub fn empty(width: usize) -> Self {
        StateSet {
            width,
            words: vec![0; width.div_ceil(BITS)],
        }
    }

    pub fn singleton(width: usize, q: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(q);
        s
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for q in 0..width {
            s.insert(q);
        }
        s
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(width: usize, states: I) -> Self {
        let mut s = Self::empty(width);
        for q in states {
            s.insert(q);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Panics if `q` is outside the universe.
    pub fn insert(&mut self, q: usize) -> bool {
        assert!(q < self.width, "state {q} outside universe of {}", self.width);
        let (w, b) = (q / BITS, q % BITS);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    pub fn remove(&mut self, q: usize) -> bool {
        if q >= self.width {
            return false;
        }
        let (w, b) = (q / BITS, q % BITS);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    pub fn contains(&self, q: usize) -> bool {
        q < self.width && self.words[q / BITS] >> (q % BITS) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * BITS + w.trailing_zeros() as usize)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * BITS + b)
                }
            })
        })
    }

    /// Extracts the members in `offset..offset + width` as a set over `0..width`.
    pub fn slice(&self, offset: usize, width: usize) -> StateSet {
        StateSet::from_states(
            width,
            self.iter()
                .filter(|&q| q >= offset && q < offset + width)
                .map(|q| q - offset),
        )
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
