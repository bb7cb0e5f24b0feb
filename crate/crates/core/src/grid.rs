//! Parameter grids for batch verification, written as `key=value` clauses
//! separated by `;`:
//!
//! ```text
//! families=kp1,kletter-2state;k=2..3;n=2..3
//! ```
//!
//! `k` and `n` take comma-separated integers and inclusive ranges `a..b`.
//! Every family is paired with every size vector of every length in `k`
//! whose entries all lie in `n`; vectors outside a family's preconditions
//! are dropped. A family with fixed sizes contributes its single case.

use std::str::FromStr;

use crate::bounds::SizeVector;
use crate::error::{Error, Result};
use crate::witness::WitnessFamily;

/// Largest number of cases a grid may expand to.
pub const MAX_GRID_CASES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepGrid {
    pub families: Vec<WitnessFamily>,
    pub k: Vec<usize>,
    pub n: Vec<usize>,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn parse_values(text: &str, pos: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let num = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| syntax(pos, format!("expected an integer, found `{s}`")))
        };
        match item.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if hi.saturating_sub(lo) > 64 {
                    return Err(syntax(pos, format!("range `{item}` is too long")));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(item)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

impl FromStr for SweepGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut grid = SweepGrid { families: Vec::new(), k: Vec::new(), n: Vec::new() };
        let mut pos = 0;
        for clause in s.split(';') {
            let here = pos;
            pos += clause.len() + 1;
            if clause.trim().is_empty() {
                continue;
            }
            let (key, value) = clause
                .split_once('=')
                .ok_or_else(|| syntax(here, format!("expected `key=value`, found `{}`", clause.trim())))?;
            match key.trim() {
                "families" | "family" => {
                    for name in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        let f: WitnessFamily = name.parse().map_err(|_| syntax(here, format!("unknown family `{name}`")))?;
                        if !grid.families.contains(&f) {
                            grid.families.push(f);
                        }
                    }
                }
                "k" => grid.k = parse_values(value, here)?,
                "n" => grid.n = parse_values(value, here)?,
                other => return Err(syntax(here, format!("unknown key `{other}`"))),
            }
        }
        if grid.k.contains(&0) || grid.n.contains(&0) {
            return Err(Error::Precondition("k and n must be positive".into()));
        }
        Ok(grid)
    }
}

impl SweepGrid {
    /// All `(family, sizes)` cases in family order, then by length, then
    /// lexicographically.
    pub fn cases(&self) -> Result<Vec<(WitnessFamily, SizeVector)>> {
        let mut vectors = Vec::new();
        for &k in &self.k {
            let count = self.n.len().checked_pow(k as u32).filter(|&c| c <= MAX_GRID_CASES);
            if count.is_none() {
                return Err(Error::Guard(format!("grid expands past {MAX_GRID_CASES} cases")));
            }
            let mut idx = vec![0usize; k];
            if self.n.is_empty() {
                continue;
            }
            loop {
                vectors.push(SizeVector::new(idx.iter().map(|&i| self.n[i]).collect())?);
                let Some(p) = (0..k).rev().find(|&p| idx[p] + 1 < self.n.len()) else {
                    break;
                };
                idx[p] += 1;
                idx[p + 1..].fill(0);
            }
        }
        let mut out = Vec::new();
        for &f in &self.families {
            if let Some(fixed) = f.default_sizes() {
                out.push((f, fixed));
                continue;
            }
            out.extend(vectors.iter().filter(|v| f.check(v).is_ok()).map(|v| (f, v.clone())));
            if out.len() > MAX_GRID_CASES {
                return Err(Error::Guard(format!("grid expands past {MAX_GRID_CASES} cases")));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_expands() {
        let g: SweepGrid = "families=kletter-2state,kp1-two;k=2..3;n=2..3".parse().unwrap();
        assert_eq!(g.k, vec![2, 3]);
        assert_eq!(g.n, vec![2, 3]);
        let cases = g.cases().unwrap();
        let two_state: Vec<_> = cases.iter().filter(|c| c.0 == WitnessFamily::Kletter2State).collect();
        assert_eq!(two_state.len(), 1);
        assert_eq!(cases.iter().filter(|c| c.0 == WitnessFamily::Kp1Two).count(), 4 + 8);
        assert_eq!(cases[1].1.as_slice(), &[2, 2]);
        assert_eq!(cases[2].1.as_slice(), &[2, 3]);
    }

    #[test]
    fn lists_and_fixed_families() {
        let g: SweepGrid = " family = example-k5-14 ; k = 3 ; n = 4, 2..3, 3 ".parse().unwrap();
        assert_eq!(g.n, vec![2, 3, 4]);
        assert_eq!(g.cases().unwrap().len(), 1);
    }

    #[test]
    fn empty_grid() {
        let g: SweepGrid = "".parse().unwrap();
        assert!(g.cases().unwrap().is_empty());
        let g: SweepGrid = "families=kp1;k=3".parse().unwrap();
        assert!(g.cases().unwrap().is_empty());
    }

    #[test]
    fn errors() {
        assert!("families=nope".parse::<SweepGrid>().is_err());
        assert!("k".parse::<SweepGrid>().is_err());
        assert!("x=1".parse::<SweepGrid>().is_err());
        assert!("k=a..3".parse::<SweepGrid>().is_err());
        assert!("k=0".parse::<SweepGrid>().is_err());
        assert!("k=1..1000".parse::<SweepGrid>().is_err());
        let huge: SweepGrid = "families=kp1;k=40;n=2..9".parse().unwrap();
        assert!(matches!(huge.cases(), Err(Error::Guard(_))));
    }
}
