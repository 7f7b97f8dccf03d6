use std::fmt;
use std::str::FromStr;

use super::gf::fixed_point;
use super::{BivariateSeries, SeriesError};
use crate::dyck::{enumerate_sary, EnumerationCap};

/// Which s-ary statistic `y` marks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    /// Pyramid weight.
    P,
    /// Exterior down steps.
    E,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::P => "P",
            Which::E => "E",
        })
    }
}

impl FromStr for Which {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "P" | "p" => Ok(Which::P),
            "E" | "e" => Ok(Which::E),
            other => Err(format!("expected P or E, got {other:?}")),
        }
    }
}

/// The right-hand side of the functional equation for `which`:
///
/// * `P = 1 + x (P^s - (1-y)/(1-xy)) P`
/// * `E = 1 + x (y E^s + (1-y)/(1-x)) E`
fn sary_step(s: usize, which: Which, f: &BivariateSeries) -> Result<BivariateSeries, SeriesError> {
    let order = f.order();
    let one = BivariateSeries::one(order);
    let y = BivariateSeries::y(order);
    let one_minus_y = one.checked_sub(&y)?;
    let power = f.checked_pow(s)?;
    let inner = match which {
        Which::P => {
            let xy = BivariateSeries::monomial(order, 1, 1, 1);
            let tail = one_minus_y.checked_div(&one.checked_sub(&xy)?)?;
            power.checked_sub(&tail)?
        }
        Which::E => {
            let x = BivariateSeries::x(order);
            let tail = one_minus_y.checked_div(&one.checked_sub(&x)?)?;
            y.checked_mul(&power)?.checked_add(&tail)?
        }
    };
    one.checked_add(&inner.checked_mul(f)?.shift(0))
}

pub fn sary_series(s: usize, which: Which, order: usize) -> Result<BivariateSeries, SeriesError> {
    if s == 0 {
        return Err(SeriesError::InvalidArity);
    }
    fixed_point(order, |f| sary_step(s, which, f))
}

/// `RHS(f) - f` for the functional equation of `which`.
pub fn sary_residual(
    s: usize,
    which: Which,
    f: &BivariateSeries,
) -> Result<BivariateSeries, SeriesError> {
    if s == 0 {
        return Err(SeriesError::InvalidArity);
    }
    sary_step(s, which, f)?.checked_sub(f)
}

/// Pyramid-weight or exterior-down-step census of all s-ary paths of length
/// at most `order`, as a series.
pub fn brute_sary_series(
    s: usize,
    which: Which,
    order: usize,
    cap: EnumerationCap,
) -> Result<BivariateSeries, SeriesError> {
    if s == 0 {
        return Err(SeriesError::InvalidArity);
    }
    cap.check_arity(s, order)?;
    let mut rows = vec![Vec::new(); order + 1];
    for (n, row) in rows.iter_mut().enumerate() {
        let mut counts = vec![0i64; n + 1];
        for p in enumerate_sary(s, n) {
            let k = match which {
                Which::P => p.pyramid_weight(),
                Which::E => p.exterior_down_steps(),
            };
            counts[k] = counts[k].checked_add(1).ok_or(SeriesError::Overflow)?;
        }
        *row = counts;
    }
    Ok(BivariateSeries::from_rows(order, rows))
}

/// First `(n, k)` with `e_{n,k} != p_{n,n-k}`, if any.
pub fn duality_failure(p: &BivariateSeries, e: &BivariateSeries) -> Option<(usize, usize)> {
    let order = p.order().min(e.order());
    (0..=order)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .find(|&(n, k)| e.coeff(n, k) != p.coeff(n, n - k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::ResidueSet;
    use crate::series::cf_series;

    #[test]
    fn single_pyramid_for_every_arity() {
        for s in 1..=4 {
            let p = sary_series(s, Which::P, 4).unwrap();
            assert_eq!(p.row(1), &[0, 1]);
        }
    }

    #[test]
    fn dyck_case_matches_residue_zero_mod_three() {
        let e = sary_series(1, Which::E, 9).unwrap();
        let g = cf_series(&ResidueSet::singleton(3, 0).unwrap(), 9).unwrap();
        assert_eq!(e, g);
    }

    #[test]
    fn equations_against_census() {
        let cap = EnumerationCap::default();
        for s in 1..=3 {
            let p = sary_series(s, Which::P, 6).unwrap();
            let e = sary_series(s, Which::E, 6).unwrap();
            assert!(sary_residual(s, Which::P, &p).unwrap().is_zero());
            assert!(sary_residual(s, Which::E, &e).unwrap().is_zero());
            assert_eq!(p, brute_sary_series(s, Which::P, 6, cap).unwrap());
            assert_eq!(e, brute_sary_series(s, Which::E, 6, cap).unwrap());
            assert_eq!(duality_failure(&p, &e), None);
        }
        assert_eq!(sary_series(0, Which::P, 3), Err(SeriesError::InvalidArity));
    }

    #[test]
    fn which_parses() {
        assert_eq!("P".parse::<Which>(), Ok(Which::P));
        assert_eq!("e".parse::<Which>(), Ok(Which::E));
        assert!("Q".parse::<Which>().is_err());
    }
}
