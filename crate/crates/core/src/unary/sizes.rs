use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::bounds::SizeVector;
use crate::error::{Error, Result};
use crate::unary::frobenius::modified_frobenius;

/// Most automata accepted by [`tails_final_bound`]; it visits all subsets.
pub const MAX_TAILS_FACTORS: usize = 25;

/// Shape of a unary DFA: a tail of `mu` states followed by a cycle of
/// `lambda` states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnarySize {
    pub lambda: u64,
    pub mu: u64,
}

impl UnarySize {
    pub fn states(&self) -> u64 {
        self.lambda + self.mu
    }
}

impl Serialize for UnarySize {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            lambda: u64,
            mu: u64,
            states: u64,
        }
        Repr { lambda: self.lambda, mu: self.mu, states: self.states() }.serialize(s)
    }
}

fn gcd_all(xs: impl IntoIterator<Item = u64>) -> u64 {
    xs.into_iter().fold(0, |g, x| g.gcd(&x))
}

/// `d·f(λ₁/d, …, λₖ/d) − k + 1` as a signed value, `d = gcd`.
fn scaled_frobenius_term(lambdas: &[u64]) -> Result<(u64, i128)> {
    let d = gcd_all(lambdas.iter().copied());
    let reduced: Vec<u64> = lambdas.iter().map(|l| l / d).collect();
    let f = modified_frobenius(&reduced)?;
    Ok((d, d as i128 * f as i128 - lambdas.len() as i128 + 1))
}

/// Size of the minimal DFA for a concatenation of languages accepted by
/// cyclic automata with `n₁, …, nₖ` states: `λ = d`,
/// `μ = d·f(n₁/d, …, nₖ/d) − k + 1`, `d = gcd(n₁, …, nₖ)`.
pub fn cyclic_concat_size(n: &SizeVector) -> Result<UnarySize> {
    let lambdas: Vec<u64> = n.as_slice().iter().map(|&x| x as u64).collect();
    let (d, mu) = scaled_frobenius_term(&lambdas)?;
    Ok(UnarySize { lambda: d, mu: u64::try_from(mu).expect("non-negative by construction") })
}

fn check_sizes(sizes: &[UnarySize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::Precondition("no automata given".into()));
    }
    if sizes.iter().any(|s| s.lambda == 0) {
        return Err(Error::Precondition("cycle lengths must be positive".into()));
    }
    Ok(())
}

/// Size for languages `a^{μᵢ}Yᵢ` with `Yᵢ` accepted by a cyclic automaton
/// with `λᵢ` states: `λ = d`, `μ = Σμᵢ + d·f(λ₁/d, …, λₖ/d) − k + 1`.
pub fn tailed_cyclic_size(sizes: &[UnarySize]) -> Result<UnarySize> {
    check_sizes(sizes)?;
    let lambdas: Vec<u64> = sizes.iter().map(|s| s.lambda).collect();
    let (d, term) = scaled_frobenius_term(&lambdas)?;
    let mu = sizes.iter().map(|s| s.mu as i128).sum::<i128>() + term;
    Ok(UnarySize { lambda: d, mu: u64::try_from(mu).expect("non-negative by construction") })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailsBound {
    #[serde(flatten)]
    pub size: UnarySize,
    /// Every subset attaining the maximum, 1-based, in increasing bitmask order.
    pub maximizers: Vec<Vec<usize>>,
}

/// Upper bound for automata of sizes `(λᵢ, μᵢ)` whose final states may sit
/// in the tails: `λ = lcm(λᵢ)`,
/// `μ = max over I ⊆ {1..k} of Σμᵢ − k + 1 + d_I·f(λ_I / d_I)`,
/// with `d_∅ = 1` and `f(∅) = 0`.
pub fn tails_final_bound(sizes: &[UnarySize]) -> Result<TailsBound> {
    check_sizes(sizes)?;
    let k = sizes.len();
    if k > MAX_TAILS_FACTORS {
        return Err(Error::Guard(format!(
            "{k} automata; at most {MAX_TAILS_FACTORS} are supported"
        )));
    }
    let lambda = sizes.iter().try_fold(1u64, |l, s| {
        let g = l.gcd(&s.lambda);
        (l / g).checked_mul(s.lambda)
    });
    let lambda = lambda.ok_or_else(|| Error::Guard("lcm overflows 64 bits".into()))?;
    let base = sizes.iter().map(|s| s.mu as i128).sum::<i128>() - k as i128 + 1;
    let mut best = i128::MIN;
    let mut maximizers = Vec::new();
    for mask in 0u32..1 << k {
        let chosen: Vec<u64> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| sizes[i].lambda).collect();
        let term = if chosen.is_empty() {
            0
        } else {
            let d = gcd_all(chosen.iter().copied());
            let reduced: Vec<u64> = chosen.iter().map(|l| l / d).collect();
            d as i128 * modified_frobenius(&reduced)? as i128
        };
        let value = base + term;
        if value > best {
            best = value;
            maximizers.clear();
        }
        if value == best {
            maximizers.push((0..k).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect());
        }
    }
    let mu = u64::try_from(best).map_err(|_| Error::Guard("negative tail bound".into()))?;
    Ok(TailsBound { size: UnarySize { lambda, mu }, maximizers })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sz(lambda: u64, mu: u64) -> UnarySize {
        UnarySize { lambda, mu }
    }

    fn sv(n: &[usize]) -> SizeVector {
        SizeVector::new(n.to_vec()).unwrap()
    }

    #[test]
    fn cyclic_values() {
        assert_eq!(cyclic_concat_size(&sv(&[3, 5])).unwrap(), sz(1, 14));
        assert_eq!(cyclic_concat_size(&sv(&[12, 20, 30])).unwrap(), sz(2, 118));
        assert_eq!(cyclic_concat_size(&sv(&[4, 6])).unwrap(), sz(2, 11));
        assert_eq!(cyclic_concat_size(&sv(&[7])).unwrap(), sz(7, 0));
        assert_eq!(cyclic_concat_size(&sv(&[1, 1, 1])).unwrap(), sz(1, 0));
    }

    #[test]
    fn tailed_values() {
        assert_eq!(tailed_cyclic_size(&[sz(3, 2), sz(5, 1)]).unwrap(), sz(1, 17));
        assert_eq!(tailed_cyclic_size(&[sz(3, 0), sz(5, 0)]).unwrap(), sz(1, 14));
        assert_eq!(tailed_cyclic_size(&[sz(6, 3)]).unwrap(), sz(6, 3));
        assert!(tailed_cyclic_size(&[]).is_err());
        assert!(tailed_cyclic_size(&[sz(0, 1)]).is_err());
    }

    #[test]
    fn tails_example() {
        let b = tails_final_bound(&[sz(12, 2), sz(20, 2), sz(30, 2)]).unwrap();
        assert_eq!(b.size, sz(60, 124));
        assert_eq!(b.maximizers, vec![vec![1, 2, 3]]);
        let b = tails_final_bound(&[sz(5, 3)]).unwrap();
        assert_eq!(b.size, sz(5, 3));
        assert_eq!(b.maximizers, vec![Vec::<usize>::new(), vec![1]]);
        assert!(matches!(tails_final_bound(&vec![sz(1, 0); 26]), Err(Error::Guard(_))));
    }

    #[test]
    fn json_shape() {
        assert_eq!(
            serde_json::to_value(sz(2, 118)).unwrap(),
            serde_json::json!({"lambda": 2, "mu": 118, "states": 120})
        );
    }
}
