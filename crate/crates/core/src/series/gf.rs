use std::fmt;

use super::poly::c_poly;
use super::{BivariateSeries, SeriesError};
use crate::dyck::{enumerate_dyck, EnumerationCap, ResidueSet};

/// Marks `x * y^[i in R]` applied to `g`.
fn mark(r: &ResidueSet, i: usize, g: &BivariateSeries) -> BivariateSeries {
    g.shift(usize::from(r.contains(i)))
}

/// One application of the depth-`m` continued fraction:
///
/// ```text
/// 1 / (1 - x y^[1∈R] / (1 - x y^[2∈R] / ( ... / (1 - x y^[m∈R] G))))
/// ```
///
/// with `m ∈ R` read modulo `m`.
fn cf_step(r: &ResidueSet, g: &BivariateSeries) -> Result<BivariateSeries, SeriesError> {
    let one = BivariateSeries::one(g.order());
    let m = r.modulus();
    let mut t = one.checked_sub(&mark(r, 0, g))?;
    for i in (1..m).rev() {
        let inner = one.checked_div(&t)?;
        t = one.checked_sub(&mark(r, i, &inner))?;
    }
    one.checked_div(&t)
}

/// Iterates `step` from the constant series 1 until two successive iterates
/// agree, giving up after `order + 2` rounds.
pub(super) fn fixed_point<F>(order: usize, mut step: F) -> Result<BivariateSeries, SeriesError>
where
    F: FnMut(&BivariateSeries) -> Result<BivariateSeries, SeriesError>,
{
    let cap = order + 2;
    let mut g = BivariateSeries::one(order);
    for _ in 0..cap {
        let next = step(&g)?;
        if next == g {
            return Ok(g);
        }
        g = next;
    }
    Err(SeriesError::NonConvergence { iterations: cap })
}

/// Generating function of Dyck paths with `y` marking up steps whose height
/// is in `r` (mod `r.modulus()`), to order `order` in `x`.
pub fn cf_series(r: &ResidueSet, order: usize) -> Result<BivariateSeries, SeriesError> {
    fixed_point(order, |g| cf_step(r, g))
}

/// `CF(g) - g`; zero exactly when `g` solves the continued-fraction equation.
pub fn cf_residual(r: &ResidueSet, g: &BivariateSeries) -> Result<BivariateSeries, SeriesError> {
    cf_step(r, g)?.checked_sub(g)
}

/// Checks the first-return recurrence
/// `G^(R-i) = 1 / (1 - x y^[1 ∈ R-i] G^(R-i-1))` for every shift `i`.
pub fn check_first_return(r: &ResidueSet, order: usize) -> Result<bool, SeriesError> {
    let m = r.modulus();
    let shifted: Vec<BivariateSeries> = (0..m)
        .map(|i| cf_series(&r.shift_down(i), order))
        .collect::<Result<_, _>>()?;
    let one = BivariateSeries::one(order);
    for i in 0..m {
        let ri = r.shift_down(i);
        let next = &shifted[(i + 1) % m];
        let rhs = one.checked_div(&one.checked_sub(&mark(&ri, 1, next))?)?;
        if rhs != shifted[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same series counted path by path.
pub fn brute_series(
    r: &ResidueSet,
    order: usize,
    cap: EnumerationCap,
) -> Result<BivariateSeries, SeriesError> {
    cap.check_dyck(order)?;
    let mut rows = vec![Vec::new(); order + 1];
    for (n, row) in rows.iter_mut().enumerate() {
        let mut counts = vec![0i64; n + 1];
        for p in enumerate_dyck(n) {
            let k = p.up_steps_at_residue(r);
            counts[k] = counts[k].checked_add(1).ok_or(SeriesError::Overflow)?;
        }
        *row = counts;
    }
    Ok(BivariateSeries::from_rows(order, rows))
}

/// `c_h / c_{h+1}`: paths of height at most `h`, counted by semilength.
pub fn bounded_height_gf(h: usize, order: usize) -> Result<BivariateSeries, SeriesError> {
    let num = c_poly(h).to_series(order);
    let den = c_poly(h + 1).to_series(order);
    num.checked_div(&den)
}

/// `xy(1-x)G^2 - (1-2x+xy)G + (1-x)` for a candidate `G`.
pub fn quadratic_g03_residual(g: &BivariateSeries) -> Result<BivariateSeries, SeriesError> {
    let order = g.order();
    let one = BivariateSeries::one(order);
    let x = BivariateSeries::x(order);
    let one_minus_x = one.checked_sub(&x)?;
    let xy = BivariateSeries::monomial(order, 1, 1, 1);
    let quad = xy
        .checked_mul(&one_minus_x)?
        .checked_mul(&g.checked_mul(g)?)?;
    let lin_coeff = one.checked_sub(&x.checked_add(&x)?)?.checked_add(&xy)?;
    quad.checked_sub(&lin_coeff.checked_mul(g)?)?
        .checked_add(&one_minus_x)
}

/// Substitutes the `m = 3`, `R = {0}` series into its quadratic.
pub fn check_quadratic_g03(order: usize) -> Result<bool, SeriesError> {
    let r = ResidueSet::singleton(3, 0)?;
    let g = cf_series(&r, order)?;
    Ok(quadratic_g03_residual(&g)?.is_zero())
}

/// Outcome of comparing `G^(m-1;m) - y G^(0;m)` with
/// `(1-y) c_{m-2} / c_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub m: usize,
    pub order: usize,
    /// `G^(m-1;m) - y G^(0;m) - (1-y) c_{m-2}/c_{m-1}`.
    pub difference: BivariateSeries,
    /// No `y^i`, `i >= 2`, survives in `G^(m-1;m) - y G^(0;m)`.
    pub higher_powers_vanish: bool,
    /// `(n, j)` where `g^(m-1)_{n,j} != g^(0)_{n,j-1}` for some `j >= 2`, or
    /// where `g^(m-1)_{n,1} - g^(0)_{n,0}` is not minus the bounded-height count
    /// (reported with `j = 1`).
    pub identity_failures: Vec<(usize, usize)>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.difference.is_zero() && self.higher_powers_vanish && self.identity_failures.is_empty()
    }
}

impl fmt::Display for VanishingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "m={} order={}: {}",
            self.m,
            self.order,
            if self.passed() {
                "identity holds"
            } else {
                "IDENTITY FAILS"
            }
        )?;
        writeln!(f, "  difference is zero: {}", self.difference.is_zero())?;
        writeln!(
            f,
            "  y^i terms (i>=2) vanish: {}",
            self.higher_powers_vanish
        )?;
        for (n, j) in &self.identity_failures {
            writeln!(f, "  coefficient identity fails at n={n}, j={j}")?;
        }
        Ok(())
    }
}

pub fn check_vanishing_identity(m: usize, order: usize) -> Result<VanishingReport, SeriesError> {
    let top = cf_series(&ResidueSet::singleton(m, m - 1)?, order)?;
    let bottom = cf_series(&ResidueSet::singleton(m, 0)?, order)?;
    let bounded = bounded_height_gf(m - 2, order)?;

    let one = BivariateSeries::one(order);
    let y = BivariateSeries::y(order);
    let lhs = top.checked_sub(&y.checked_mul(&bottom)?)?;
    let rhs = one.checked_sub(&y)?.checked_mul(&bounded)?;
    let difference = lhs.checked_sub(&rhs)?;
    let higher_powers_vanish = lhs.nonzero().all(|(_, k, _)| k < 2);

    let mut identity_failures = Vec::new();
    for n in 0..=order {
        let width = top.row(n).len().max(bottom.row(n).len() + 1);
        for j in 2..width {
            if top.coeff(n, j) != bottom.coeff(n, j - 1) {
                identity_failures.push((n, j));
            }
        }
        let gap = top.coeff(n, 1).checked_sub(bottom.coeff(n, 0));
        if gap != Some(-bounded.coeff(n, 0)) {
            identity_failures.push((n, 1));
        }
    }
    identity_failures.sort_unstable();

    Ok(VanishingReport {
        m,
        order,
        difference,
        higher_powers_vanish,
        identity_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(m: usize, r: &[usize]) -> ResidueSet {
        ResidueSet::new(m, r).unwrap()
    }

    #[test]
    fn known_rows_from_continued_fraction() {
        let g0 = cf_series(&rs(3, &[0]), 6).unwrap();
        assert_eq!(g0.row(5), &[16, 18, 7, 1]);
        assert_eq!(g0.row(6), &[32, 56, 34, 9, 1]);
        let g1 = cf_series(&rs(3, &[1]), 6).unwrap();
        assert_eq!(g1.row(6), &[0, 16, 46, 44, 20, 5, 1]);
        let g2 = cf_series(&rs(3, &[2]), 6).unwrap();
        assert_eq!(g2.row(4), &[1, 7, 5, 1]);
        assert_eq!(g2.row(6), &[1, 31, 56, 34, 9, 1]);
    }

    #[test]
    fn everything_marked_is_catalan_on_the_diagonal() {
        let g = cf_series(&ResidueSet::full(4).unwrap(), 8).unwrap();
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (n, &c) in catalan.iter().enumerate() {
            let mut row = vec![0; n + 1];
            row[n] = c;
            assert_eq!(g.row(n), row.as_slice());
        }
    }

    #[test]
    fn residual_and_first_return() {
        for r in [rs(2, &[0]), rs(3, &[1, 2]), rs(5, &[0, 3])] {
            let g = cf_series(&r, 9).unwrap();
            assert!(cf_residual(&r, &g).unwrap().is_zero());
            assert!(check_first_return(&r, 9).unwrap());
        }
    }

    #[test]
    fn bounded_height_columns() {
        assert_eq!(bounded_height_gf(0, 6).unwrap(), BivariateSeries::one(6));
        let h1 = bounded_height_gf(1, 6).unwrap();
        assert!((0..=6).all(|n| h1.row(n) == [1]));
        let h2 = bounded_height_gf(2, 6).unwrap();
        let col: Vec<i64> = (0..=6).map(|n| h2.coeff(n, 0)).collect();
        assert_eq!(col, [1, 1, 2, 4, 8, 16, 32]);
    }

    #[test]
    fn quadratic() {
        assert!(check_quadratic_g03(0).unwrap());
        assert!(check_quadratic_g03(12).unwrap());
        let g = cf_series(&rs(3, &[0]), 8).unwrap();
        let mut rows = g.rows().to_vec();
        rows[5][1] += 1;
        let bent = BivariateSeries::from_rows(8, rows);
        assert!(!quadratic_g03_residual(&bent).unwrap().is_zero());
    }

    #[test]
    fn vanishing_identity_small() {
        for m in 2..=4 {
            let report = check_vanishing_identity(m, 10).unwrap();
            assert!(report.passed(), "{report}");
        }
        let g1 = cf_series(&rs(3, &[2]), 6).unwrap();
        let g0 = cf_series(&rs(3, &[0]), 6).unwrap();
        assert_eq!(g1.coeff(6, 1) - g0.coeff(6, 0), -1);
    }
}
