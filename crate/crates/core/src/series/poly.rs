use std::fmt;

use super::{BivariateSeries, SeriesError};

/// Points at which the `c_k` family is compared against the closed-form
/// Chebyshev values.
pub const SAMPLE_POINTS: [f64; 3] = [0.01, 0.04, 0.1];

const RELATIVE_TOLERANCE: f64 = 1e-9;

/// A polynomial in `x` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XPolynomial {
    coeffs: Vec<i64>,
}

impl XPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        XPolynomial { coeffs }
    }

    pub fn constant(c: i64) -> Self {
        XPolynomial::new(vec![c])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }

    /// `self - x * other`.
    fn sub_shifted(&self, other: &XPolynomial) -> Result<XPolynomial, SeriesError> {
        let len = self.coeffs.len().max(other.coeffs.len() + 1);
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let b = if i == 0 { 0 } else { other.coeff(i - 1) };
            out.push(self.coeff(i).checked_sub(b).ok_or(SeriesError::Overflow)?);
        }
        Ok(XPolynomial::new(out))
    }

    pub fn to_series(&self, order: usize) -> BivariateSeries {
        BivariateSeries::from_x_coeffs(order, &self.coeffs)
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `c_0 = c_1 = 1`, `c_k = c_{k-1} - x c_{k-2}`; `c_k(x) = x^{k/2} U_k(1/(2 sqrt x))`.
pub fn c_poly(k: usize) -> XPolynomial {
    let mut prev = XPolynomial::constant(1);
    let mut cur = XPolynomial::constant(1);
    for _ in 1..k {
        let next = cur
            .sub_shifted(&prev)
            .expect("c_k coefficients are binomials and fit in i64 for any sane k");
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Chebyshev polynomial of the second kind through its closed form:
/// `sin((k+1)θ)/sin θ` with `u = cos θ` inside `[-1, 1]`, and the hyperbolic
/// continuation outside it.
pub fn chebyshev_u(k: usize, u: f64) -> f64 {
    let n = (k + 1) as f64;
    if u == 1.0 {
        return n;
    }
    if u == -1.0 {
        return if k.is_multiple_of(2) { n } else { -n };
    }
    if u.abs() < 1.0 {
        let theta = u.acos();
        return (n * theta).sin() / theta.sin();
    }
    let t = u.abs().acosh();
    let v = (n * t).sinh() / t.sinh();
    if u < 0.0 && k % 2 == 1 {
        -v
    } else {
        v
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= RELATIVE_TOLERANCE * a.abs().max(b.abs())
}

/// Checks `c_k(x0) = x0^{k/2} U_k(1/(2 sqrt x0))` for every `k <= max_k` and
/// every sample point.
pub fn validate_c_poly(max_k: usize) -> Result<(), SeriesError> {
    for k in 0..=max_k {
        let c = c_poly(k);
        for &x in &SAMPLE_POINTS {
            let direct = x.powf(k as f64 / 2.0) * chebyshev_u(k, 1.0 / (2.0 * x.sqrt()));
            if !close(c.eval(x), direct) {
                return Err(SeriesError::ChebyshevMismatch { k, x });
            }
        }
    }
    Ok(())
}
