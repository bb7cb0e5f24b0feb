//! The transformation notation used to describe how one symbol acts on a
//! state set `{1, …, n}`:
//!
//! * `(1,2,3)`: cyclic shift `1↦2, 2↦3, 3↦1`;
//! * `(1->2->3)`: chain `1↦2, 2↦3`, with `3` fixed;
//! * `({1,2}->1)`: collapse of the set onto one state;
//! * `(1)`: identity.
//!
//! Several atoms may be juxtaposed (`(1,2) (3->4)`). States not mentioned are
//! fixed. Text is 1-based; everything else in the crate is 0-based.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Cycle(Vec<usize>),
    Chain(Vec<usize>),
    Collapse { from: Vec<usize>, to: usize },
    Identity,
}

impl Atom {
    fn pairs(&self) -> Vec<(usize, usize)> {
        match self {
            Atom::Cycle(qs) => (0..qs.len())
                .map(|i| (qs[i], qs[(i + 1) % qs.len()]))
                .collect(),
            Atom::Chain(qs) => qs.windows(2).map(|w| (w[0], w[1])).collect(),
            Atom::Collapse { from, to } => from.iter().map(|&q| (q, *to)).collect(),
            Atom::Identity => Vec::new(),
        }
    }
}

/// A parsed transformation, guaranteed to induce a function on `0..state_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transform {
    state_count: usize,
    atoms: Vec<Atom>,
}

impl Transform {
    pub fn new(state_count: usize, atoms: Vec<Atom>) -> Result<Self> {
        let tf = Transform { state_count, atoms };
        tf.build_map()?;
        Ok(tf)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    /// The induced total map (0-based).
    pub fn to_map(&self) -> Vec<usize> {
        self.build_map().expect("validated at construction")
    }

    /// True when built from cycles and identities only.
    pub fn is_permutation_form(&self) -> bool {
        self.atoms
            .iter()
            .all(|a| matches!(a, Atom::Cycle(_) | Atom::Identity))
    }

    fn build_map(&self) -> Result<Vec<usize>> {
        let n = self.state_count;
        let mut image: Vec<Option<usize>> = vec![None; n];
        for atom in &self.atoms {
            for (p, q) in atom.pairs() {
                for s in [p, q] {
                    if s >= n {
                        return Err(Error::StateOutOfRange { state: s + 1, count: n });
                    }
                }
                match image[p] {
                    Some(prev) if prev != q => {
                        return Err(Error::ConflictingImage {
                            state: p + 1,
                            first: prev + 1,
                            second: q + 1,
                        })
                    }
                    _ => image[p] = Some(q),
                }
            }
        }
        Ok(image
            .into_iter()
            .enumerate()
            .map(|(p, q)| q.unwrap_or(p))
            .collect())
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |qs: &[usize], sep: &str| {
            qs.iter()
                .map(|q| (q + 1).to_string())
                .collect::<Vec<_>>()
                .join(sep)
        };
        let mut first = true;
        for atom in &self.atoms {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            match atom {
                Atom::Cycle(qs) => write!(f, "({})", one(qs, ","))?,
                Atom::Chain(qs) => write!(f, "({})", one(qs, "->"))?,
                Atom::Collapse { from, to } => write!(f, "({{{}}}->{})", one(from, ","), to + 1)?,
                Atom::Identity => f.write_str("(1)")?,
            }
        }
        if first {
            f.write_str("(1)")?;
        }
        Ok(())
    }
}

/// Parses the transformation notation for an `n`-state automaton.
pub fn parse_transform(text: &str, n: usize) -> Result<Transform> {
    let mut p = Parser { src: text, pos: 0 };
    let mut atoms = Vec::new();
    p.skip_ws();
    while !p.at_end() {
        atoms.push(p.atom()?);
        p.skip_ws();
    }
    if atoms.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "expected at least one transformation atom".into(),
        });
    }
    Transform::new(n, atoms)
}

/// Renders an arbitrary total map in the notation, such that
/// `parse_transform(render_map(m), m.len())` induces `m` again.
pub fn render_map(map: &[usize]) -> String {
    transform_for_map(map).to_string()
}

/// A readable transformation for a map: cycles when it is a permutation, otherwise one
/// collapse (or single-arrow chain) per image.
pub fn transform_for_map(map: &[usize]) -> Transform {
    let n = map.len();
    let mut atoms = Vec::new();
    let mut seen = vec![false; n];
    let is_perm = {
        let mut hit = vec![false; n];
        map.iter().all(|&q| !std::mem::replace(&mut hit[q], true))
    };
    if is_perm {
        for start in 0..n {
            if seen[start] || map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut q = start;
            while !seen[q] {
                seen[q] = true;
                cycle.push(q);
                q = map[q];
            }
            atoms.push(Atom::Cycle(cycle));
        }
    } else {
        for target in 0..n {
            let from: Vec<usize> = (0..n).filter(|&q| q != target && map[q] == target).collect();
            match from.len() {
                0 => {}
                1 => atoms.push(Atom::Chain(vec![from[0], target])),
                _ => atoms.push(Atom::Collapse { from, to: target }),
            }
        }
    }
    if atoms.is_empty() {
        atoms.push(Atom::Identity);
    }
    Transform { state_count: n, atoms }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn arrow(&mut self) -> bool {
        self.eat("->") || self.eat("→")
    }

    /// A 1-based state number, returned 0-based.
    fn state(&mut self) -> Result<usize> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.err("expected a state number");
        }
        let text = &self.rest()[..digits];
        let value: usize = match text.parse() {
            Ok(v) => v,
            Err(_) => return self.err("state number too large"),
        };
        if value == 0 {
            return self.err("states are numbered from 1");
        }
        self.pos += digits;
        Ok(value - 1)
    }

    fn atom(&mut self) -> Result<Atom> {
        self.expect("(")?;
        self.skip_ws();
        let atom = if self.eat("{") {
            let mut from = Vec::new();
            self.skip_ws();
            if !self.eat("}") {
                loop {
                    self.skip_ws();
                    from.push(self.state()?);
                    self.skip_ws();
                    if self.eat("}") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            self.skip_ws();
            if !self.arrow() {
                return self.err("expected `->` after a state set");
            }
            self.skip_ws();
            let to = self.state()?;
            Atom::Collapse { from, to }
        } else {
            let first = self.state()?;
            self.skip_ws();
            if self.arrow() {
                let mut qs = vec![first];
                loop {
                    self.skip_ws();
                    qs.push(self.state()?);
                    self.skip_ws();
                    if !self.arrow() {
                        break;
                    }
                }
                Atom::Chain(qs)
            } else {
                let mut qs = vec![first];
                while self.eat(",") {
                    self.skip_ws();
                    qs.push(self.state()?);
                    self.skip_ws();
                }
                if qs.len() == 1 {
                    Atom::Identity
                } else {
                    Atom::Cycle(qs)
                }
            }
        };
        self.skip_ws();
        self.expect(")")?;
        Ok(atom)
    }
}
