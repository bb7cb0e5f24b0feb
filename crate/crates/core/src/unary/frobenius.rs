use num_integer::Integer;

use crate::error::{Error, Result};

fn validate(nums: &[u64]) -> Result<()> {
    if nums.is_empty() {
        return Err(Error::Precondition("no numbers given".into()));
    }
    if nums.contains(&0) {
        return Err(Error::Precondition("numbers must be positive".into()));
    }
    if nums.iter().fold(0, |g, &x| g.gcd(&x)) != 1 {
        return Err(Error::NotCoprime(nums.to_vec()));
    }
    Ok(())
}

/// The Frobenius number `g(n₁, …, nₖ)`: the largest integer that is not a
/// non-negative combination of the arguments. It is `-1` when some argument
/// is 1.
///
/// Shortest representable number per residue modulo the smallest argument,
/// filled in by the round-robin method.
pub fn frobenius(nums: &[u64]) -> Result<i64> {
    validate(nums)?;
    let a = *nums.iter().min().expect("non-empty");
    if a == 1 {
        return Ok(-1);
    }
    let m = a as usize;
    let mut best = vec![u64::MAX; m];
    best[0] = 0;
    for &b in nums {
        if b == a {
            continue;
        }
        let d = a.gcd(&b) as usize;
        for p in 0..d {
            let Some(mut cur) = (p..m).step_by(d).map(|r| best[r]).min().filter(|&v| v != u64::MAX) else {
                continue;
            };
            for _ in 0..m / d {
                cur += b;
                let r = (cur % a) as usize;
                cur = cur.min(best[r]);
                best[r] = cur;
            }
        }
    }
    let max = *best.iter().max().expect("non-empty");
    debug_assert_ne!(max, u64::MAX, "coprime inputs reach every residue");
    Ok(max as i64 - a as i64)
}

/// `f(n₁, …, nₖ) = g(n₁, …, nₖ) + n₁ + ⋯ + nₖ`. The empty argument list
/// gives 0.
pub fn modified_frobenius(nums: &[u64]) -> Result<u64> {
    if nums.is_empty() {
        return Ok(0);
    }
    let g = frobenius(nums)?;
    Ok((g + nums.iter().sum::<u64>() as i64) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(frobenius(&[3, 5]).unwrap(), 7);
        assert_eq!(frobenius(&[2, 3]).unwrap(), 1);
        assert_eq!(frobenius(&[6, 10, 15]).unwrap(), 29);
        assert_eq!(frobenius(&[6, 9, 20]).unwrap(), 43);
        assert_eq!(frobenius(&[3, 1, 3]).unwrap(), -1);
        assert!(frobenius(&[7]).is_err());
        assert_eq!(frobenius(&[1]).unwrap(), -1);
        assert_eq!(frobenius(&[5, 5, 2]).unwrap(), 3);
    }

    #[test]
    fn modified_values() {
        assert_eq!(modified_frobenius(&[3, 5]).unwrap(), 15);
        assert_eq!(modified_frobenius(&[2, 3]).unwrap(), 6);
        assert_eq!(modified_frobenius(&[6, 10, 15]).unwrap(), 60);
        assert_eq!(modified_frobenius(&[1, 1, 1]).unwrap(), 2);
        assert_eq!(modified_frobenius(&[3, 1, 3]).unwrap(), 6);
        assert_eq!(modified_frobenius(&[]).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(frobenius(&[4, 6]), Err(Error::NotCoprime(vec![4, 6])));
        assert!(frobenius(&[]).is_err());
        assert!(frobenius(&[0, 1]).is_err());
    }
}
