use std::fmt;

use super::poly::{c_poly, chebyshev_u, validate_c_poly, SAMPLE_POINTS};
use super::{cf_series, BivariateSeries, SeriesError};
use crate::dyck::ResidueSet;

const Y_SAMPLES: [f64; 3] = [-1.5, 0.5, 2.0];

fn min_m(part: u8) -> Result<usize, SeriesError> {
    match part {
        1 => Ok(4),
        2 => Ok(6),
        other => Err(SeriesError::InvalidPart(other)),
    }
}

fn check_m(part: u8, m: usize) -> Result<(), SeriesError> {
    let min = min_m(part)?;
    if m < min {
        return Err(SeriesError::InvalidM { part, m, min });
    }
    Ok(())
}

/// The right-hand side in its original form, with `U_k` evaluated at
/// `1/(2 sqrt x)` and `t` read as `y`.
fn rhs_chebyshev(part: u8, m: usize, x: f64, y: f64) -> f64 {
    let u = |k: usize| chebyshev_u(k, 1.0 / (2.0 * x.sqrt()));
    let r = x.sqrt();
    match part {
        1 => (1.0 - y) * u(m - 4) / (u(m - 2) - y * r * u(m - 3)),
        _ => (1.0 - y) * u(m - 6) / (u(m - 2) - y * u(m - 4) + r * u(m - 5)),
    }
}

/// The same right-hand side after clearing powers of `sqrt x`.
fn rhs_polynomial(part: u8, m: usize, x: f64, y: f64) -> f64 {
    let c = |k: usize| c_poly(k).eval(x);
    match part {
        1 => (1.0 - y) * x * c(m - 4) / (c(m - 2) - x * y * c(m - 3)),
        _ => (1.0 - y) * x * x * c(m - 6) / (c(m - 2) - x * y * c(m - 4) + x * x * c(m - 5)),
    }
}

/// Confirms numerically that the polynomial form of the right-hand side
/// equals the Chebyshev form at every sample point.
pub fn validate_rhs_rewriting(part: u8, m: usize) -> Result<(), SeriesError> {
    check_m(part, m)?;
    validate_c_poly(m)?;
    for &x in &SAMPLE_POINTS {
        for &y in &Y_SAMPLES {
            let a = rhs_chebyshev(part, m, x, y);
            let b = rhs_polynomial(part, m, x, y);
            if (a - b).abs() > 1e-9 * a.abs().max(b.abs()) {
                return Err(SeriesError::RewritingMismatch { part, m, x, y });
            }
        }
    }
    Ok(())
}

/// The polynomial form of the right-hand side as a series.
pub fn conjecture_rhs(part: u8, m: usize, order: usize) -> Result<BivariateSeries, SeriesError> {
    check_m(part, m)?;
    let c = |k: usize| c_poly(k).to_series(order);
    let one = BivariateSeries::one(order);
    let one_minus_y = one.checked_sub(&BivariateSeries::y(order))?;
    let (num, den) = match part {
        1 => {
            let num = c(m - 4).shift(0);
            let den = c(m - 2).checked_sub(&c(m - 3).shift(1))?;
            (num, den)
        }
        _ => {
            let num = c(m - 6).shift(0).shift(0);
            let den = c(m - 2)
                .checked_sub(&c(m - 4).shift(1))?
                .checked_add(&c(m - 5).shift(0).shift(0))?;
            (num, den)
        }
    };
    one_minus_y.checked_mul(&num)?.checked_div(&den)
}

/// A coefficient where the two sides differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub k: usize,
    pub lhs: i64,
    pub rhs: i64,
}

/// Coefficientwise comparison of the two sides. This is a report, not a
/// verdict: the relation is conjectural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub part: u8,
    pub m: usize,
    pub order: usize,
    pub lhs: BivariateSeries,
    pub rhs: BivariateSeries,
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ConjectureReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.agrees() {
            "agreement".to_string()
        } else {
            format!("MISMATCH in {} coefficient(s)", self.mismatches.len())
        };
        writeln!(
            f,
            "part {} m={} order={}: {status} ({} coefficients compared)",
            self.part, self.m, self.order, self.compared
        )?;
        for mm in &self.mismatches {
            writeln!(
                f,
                "  MISMATCH x^{} y^{}: lhs={} rhs={}",
                mm.n, mm.k, mm.lhs, mm.rhs
            )?;
        }
        Ok(())
    }
}

/// Compares `G^(m-2;m) - G^(1;m)` (part 1) or `G^(m-3;m) - G^(2;m)` (part 2)
/// with the conjectured right-hand side, after validating its polynomial
/// rewriting numerically.
pub fn check_conjecture(part: u8, m: usize, order: usize) -> Result<ConjectureReport, SeriesError> {
    validate_rhs_rewriting(part, m)?;
    let (a, b) = if part == 1 { (m - 2, 1) } else { (m - 3, 2) };
    let ga = cf_series(&ResidueSet::singleton(m, a)?, order)?;
    let gb = cf_series(&ResidueSet::singleton(m, b)?, order)?;
    let lhs = ga.checked_sub(&gb)?;
    let rhs = conjecture_rhs(part, m, order)?;

    let mut compared = 0;
    let mut mismatches = Vec::new();
    for n in 0..=order {
        let width = lhs.row(n).len().max(rhs.row(n).len()).max(n + 1);
        for k in 0..width {
            compared += 1;
            let (l, r) = (lhs.coeff(n, k), rhs.coeff(n, k));
            if l != r {
                mismatches.push(Mismatch {
                    n,
                    k,
                    lhs: l,
                    rhs: r,
                });
            }
        }
    }
    Ok(ConjectureReport {
        part,
        m,
        order,
        lhs,
        rhs,
        compared,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_moduli_agree() {
        for (part, m) in [(1, 4), (1, 5), (2, 6)] {
            let report = check_conjecture(part, m, 9).unwrap();
            assert!(report.agrees(), "{report}");
            assert!(report.to_string().contains("agreement"));
        }
    }

    #[test]
    fn part_one_at_four_is_a_simple_fraction() {
        // (1-y) x / ((1-x) - xy)
        let order = 8;
        let one = BivariateSeries::one(order);
        let num = one
            .checked_sub(&BivariateSeries::y(order))
            .unwrap()
            .shift(0);
        let den = one
            .checked_sub(&BivariateSeries::x(order))
            .unwrap()
            .checked_sub(&BivariateSeries::monomial(order, 1, 1, 1))
            .unwrap();
        assert_eq!(
            conjecture_rhs(1, 4, order).unwrap(),
            num.checked_div(&den).unwrap()
        );
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(
            check_conjecture(1, 3, 5),
            Err(SeriesError::InvalidM {
                part: 1,
                m: 3,
                min: 4
            })
        ));
        assert!(matches!(
            check_conjecture(2, 5, 5),
            Err(SeriesError::InvalidM { .. })
        ));
        assert!(matches!(
            check_conjecture(3, 8, 5),
            Err(SeriesError::InvalidPart(3))
        ));
    }

    #[test]
    fn mismatches_are_listed() {
        let mut report = check_conjecture(1, 4, 4).unwrap();
        report.mismatches.push(Mismatch {
            n: 3,
            k: 1,
            lhs: 2,
            rhs: 5,
        });
        let text = report.to_string();
        assert!(text.contains("MISMATCH in 1 coefficient(s)"));
        assert!(text.contains("x^3 y^1: lhs=2 rhs=5"));
    }
}
