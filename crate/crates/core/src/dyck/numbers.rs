use super::DyckError;

fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

fn narrow(v: u128) -> Result<u64, DyckError> {
    u64::try_from(v).map_err(|_| DyckError::Overflow)
}

pub fn binomial(n: u64, k: u64) -> Result<u64, DyckError> {
    narrow(binomial_u128(n, k).ok_or(DyckError::Overflow)?)
}

/// `binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> Result<u64, DyckError> {
    let n = n as u64;
    let mut c: u128 = 1;
    for i in 0..n {
        c = c
            .checked_mul(2 * (2 * i as u128 + 1))
            .ok_or(DyckError::Overflow)?
            / (i as u128 + 2);
        narrow(c)?;
    }
    narrow(c)
}

/// `N(n,k) = binom(n,k) * binom(n,k+1) / n`, defined for `0 <= k <= n-1`.
pub fn narayana(n: usize, k: usize) -> Result<u64, DyckError> {
    if n == 0 || k >= n {
        return Err(DyckError::IndexOutOfRange { n, k });
    }
    let (n, k) = (n as u64, k as u64);
    let a = binomial_u128(n, k).ok_or(DyckError::Overflow)?;
    let b = binomial_u128(n, k + 1).ok_or(DyckError::Overflow)?;
    narrow(a.checked_mul(b).ok_or(DyckError::Overflow)? / n as u128)
}

/// Number of s-ary paths with `n` down steps: `binom((s+1)n, n) / (sn + 1)`.
pub fn fuss_catalan(s: usize, n: usize) -> Result<u64, DyckError> {
    let (s, n) = (s as u64, n as u64);
    let b = binomial_u128((s + 1) * n, n).ok_or(DyckError::Overflow)?;
    narrow(b / (s * n + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(narayana(4, 1).unwrap(), 6);
        assert_eq!(catalan(6).unwrap(), 132);
        let first: Vec<u64> = (0..10).map(|n| catalan(n).unwrap()).collect();
        assert_eq!(first, vec![1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]);
        assert_eq!(catalan(35).unwrap(), 3_116_285_494_907_301_262);
        assert_eq!(fuss_catalan(2, 4).unwrap(), 55);
        assert_eq!(fuss_catalan(1, 6).unwrap(), 132);
    }

    #[test]
    fn narayana_symmetry_and_sum() {
        for n in 1..=10 {
            let mut total = 0;
            for k in 0..n {
                assert_eq!(narayana(n, k).unwrap(), narayana(n, n - 1 - k).unwrap());
                total += narayana(n, k).unwrap();
            }
            assert_eq!(total, catalan(n).unwrap());
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            narayana(3, 3),
            Err(DyckError::IndexOutOfRange { n: 3, k: 3 })
        );
        assert_eq!(
            narayana(0, 0),
            Err(DyckError::IndexOutOfRange { n: 0, k: 0 })
        );
        assert!(catalan(36).is_ok());
        assert_eq!(catalan(37), Err(DyckError::Overflow));
    }
}
