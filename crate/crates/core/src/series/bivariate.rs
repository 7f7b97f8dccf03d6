use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::SeriesError;

type YPoly = Vec<i64>;

fn trim(p: &mut YPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_add(a: &[i64], b: &[i64], sign: i64) -> Result<YPoly, SeriesError> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        let y = y.checked_mul(sign).ok_or(SeriesError::Overflow)?;
        *slot = x.checked_add(y).ok_or(SeriesError::Overflow)?;
    }
    trim(&mut out);
    Ok(out)
}

fn poly_mul_acc(acc: &mut YPoly, a: &[i64], b: &[i64]) -> Result<(), SeriesError> {
    if a.is_empty() || b.is_empty() {
        return Ok(());
    }
    if acc.len() < a.len() + b.len() - 1 {
        acc.resize(a.len() + b.len() - 1, 0);
    }
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = x.checked_mul(y).ok_or(SeriesError::Overflow)?;
            acc[i + j] = acc[i + j].checked_add(t).ok_or(SeriesError::Overflow)?;
        }
    }
    Ok(())
}

/// A power series in `x` with polynomial coefficients in `y`, truncated
/// after `x^order`. Row `n` holds the coefficients of `x^n y^0, x^n y^1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivariateSeries {
    order: usize,
    rows: Vec<YPoly>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRecord {
    order: usize,
    coeffs: Vec<(usize, usize, i64)>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        BivariateSeries {
            order,
            rows: vec![Vec::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        BivariateSeries::monomial(order, 0, 0, 1)
    }

    /// `c * x^n * y^k`.
    pub fn monomial(order: usize, n: usize, k: usize, c: i64) -> Self {
        let mut s = BivariateSeries::zero(order);
        if n <= order && c != 0 {
            s.rows[n] = vec![0; k + 1];
            s.rows[n][k] = c;
        }
        s
    }

    pub fn x(order: usize) -> Self {
        BivariateSeries::monomial(order, 1, 0, 1)
    }

    pub fn y(order: usize) -> Self {
        BivariateSeries::monomial(order, 0, 1, 1)
    }

    /// Builds a series from rows of y-coefficients; rows beyond `order` are
    /// dropped and missing rows are zero.
    pub fn from_rows(order: usize, rows: Vec<Vec<i64>>) -> Self {
        let mut s = BivariateSeries::zero(order);
        for (n, mut row) in rows.into_iter().enumerate().take(order + 1) {
            trim(&mut row);
            s.rows[n] = row;
        }
        s
    }

    /// A polynomial in `x` alone.
    pub fn from_x_coeffs(order: usize, coeffs: &[i64]) -> Self {
        let rows = coeffs.iter().map(|&c| vec![c]).collect();
        BivariateSeries::from_rows(order, rows)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn row(&self, n: usize) -> &[i64] {
        self.rows.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rows(&self) -> &[YPoly] {
        &self.rows
    }

    /// `[x^n y^k]`.
    pub fn coeff(&self, n: usize, k: usize) -> i64 {
        self.row(n).get(k).copied().unwrap_or(0)
    }

    /// `[x^n]` with `y = 1`, i.e. the row sum.
    pub fn row_sum(&self, n: usize) -> i64 {
        self.row(n).iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Nonzero coefficients as `(n, k, c)` in increasing `(n, k)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(n, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(move |(k, &c)| (n, k, c))
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        BivariateSeries {
            order,
            rows: self.rows[..=order].to_vec(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, 1)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self, SeriesError> {
        let order = self.order.min(other.order);
        let rows = (0..=order)
            .map(|n| poly_add(self.row(n), other.row(n), sign))
            .collect::<Result<_, _>>()?;
        Ok(BivariateSeries { order, rows })
    }

    pub fn checked_neg(&self) -> Result<Self, SeriesError> {
        BivariateSeries::zero(self.order).checked_sub(self)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let order = self.order.min(other.order);
        let mut rows = vec![Vec::new(); order + 1];
        for (i, a) in self.rows.iter().enumerate().take(order + 1) {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate().take(order + 1 - i) {
                poly_mul_acc(&mut rows[i + j], a, b)?;
            }
        }
        for r in &mut rows {
            trim(r);
        }
        Ok(BivariateSeries { order, rows })
    }

    pub fn checked_pow(&self, e: usize) -> Result<Self, SeriesError> {
        let mut acc = BivariateSeries::one(self.order);
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplies by `x * y^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut rows = vec![Vec::new(); self.order + 1];
        for n in 0..self.order {
            let src = &self.rows[n];
            if !src.is_empty() {
                let mut row = vec![0; k];
                row.extend_from_slice(src);
                rows[n + 1] = row;
            }
        }
        BivariateSeries {
            order: self.order,
            rows,
        }
    }

    /// `self / divisor`; the `x^0` part of the divisor must be `±1`.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let unit = match divisor.row(0) {
            [1] => 1,
            [-1] => -1,
            _ => return Err(SeriesError::NonUnitDivisor),
        };
        let order = self.order.min(divisor.order);
        let mut q: Vec<YPoly> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.row(n).to_vec();
            for i in 1..=n {
                let b = divisor.row(i);
                if b.is_empty() {
                    continue;
                }
                let mut prod = Vec::new();
                poly_mul_acc(&mut prod, b, &q[n - i])?;
                acc = poly_add(&acc, &prod, -1)?;
            }
            let mut row = acc
                .into_iter()
                .map(|c| c.checked_mul(unit).ok_or(SeriesError::Overflow))
                .collect::<Result<YPoly, _>>()?;
            trim(&mut row);
            q.push(row);
        }
        Ok(BivariateSeries { order, rows: q })
    }

    pub fn to_json(&self) -> String {
        let record = SeriesRecord {
            order: self.order,
            coeffs: self.nonzero().collect(),
        };
        serde_json::to_string(&record).expect("series serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, SeriesError> {
        let record: SeriesRecord =
            serde_json::from_str(text).map_err(|e| SeriesError::Json(e.to_string()))?;
        let mut s = BivariateSeries::zero(record.order);
        for (n, k, c) in record.coeffs {
            if n > record.order {
                return Err(SeriesError::Json(format!(
                    "row {n} beyond order {}",
                    record.order
                )));
            }
            let row = &mut s.rows[n];
            if row.len() <= k {
                row.resize(k + 1, 0);
            }
            row[k] = c;
        }
        for r in &mut s.rows {
            trim(r);
        }
        Ok(s)
    }

    /// One line per `x`-degree: `n: c_0 c_1 ... c_n` (coefficients of `y^k`).
    pub fn to_triangle(&self) -> String {
        let mut out = String::new();
        for (n, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = if row.is_empty() {
                vec!["0".to_string()]
            } else {
                row.iter().map(|c| c.to_string()).collect()
            };
            writeln!(out, "{n}: {}", cells.join(" ")).unwrap();
        }
        out
    }
}

impl fmt::Display for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_triangle())
    }
}
