//! Exhaustive checks over bounded ranges, each reporting the first
//! counterexample it meets.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::bijection::{pi, pi_inverse, BijectionError};
use crate::dyck::{
    distribution, enumerate_dyck, narayana, DyckError, DyckPath, EnumerationCap, ResidueSet,
    Statistic,
};
use crate::omega::{classify_fjk, decompose_standard, omega, psi, FjkClass, OmegaError};
use crate::series::{
    brute_sary_series, brute_series, cf_residual, cf_series, check_conjecture, check_quadratic_g03,
    check_vanishing_identity, duality_failure, sary_residual, sary_series, SeriesError, Which,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Dyck(#[from] DyckError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
    #[error(transparent)]
    Omega(#[from] OmegaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    ThmMain,
    CfVsBrute,
    PiTransport,
    OmegaInvolution,
    PsiClasses,
    Narayana,
    SaryDuality,
    QuadraticG03,
    Conjecture1,
    Conjecture2,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::ThmMain,
        Check::CfVsBrute,
        Check::PiTransport,
        Check::OmegaInvolution,
        Check::PsiClasses,
        Check::Narayana,
        Check::SaryDuality,
        Check::QuadraticG03,
        Check::Conjecture1,
        Check::Conjecture2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::ThmMain => "thm-main",
            Check::CfVsBrute => "cf-vs-brute",
            Check::PiTransport => "pi-transport",
            Check::OmegaInvolution => "omega-involution",
            Check::PsiClasses => "psi-classes",
            Check::Narayana => "narayana",
            Check::SaryDuality => "sary-duality",
            Check::QuadraticG03 => "quadratic-g03",
            Check::Conjecture1 => "conjecture-1",
            Check::Conjecture2 => "conjecture-2",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| VerifyError::UnknownCheck(s.to_string()))
    }
}

/// Range of a check. `None` fields take the check's default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct VerifyParams {
    pub m: Option<usize>,
    pub max_n: Option<usize>,
    pub cap: EnumerationCap,
}

impl VerifyParams {
    fn moduli(&self, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        match self.m {
            Some(m) => vec![m],
            None => default.collect(),
        }
    }

    fn max_n(&self, default: usize) -> usize {
        self.max_n.unwrap_or(default)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub check: Check,
    pub passed: bool,
    /// Number of individual cases (paths, coefficients, series) examined.
    pub checked: u64,
    pub counterexample: Option<String>,
    /// Per-parameter summaries, one line each.
    pub notes: Vec<String>,
}

impl VerifyReport {
    fn new(check: Check) -> Self {
        VerifyReport {
            check,
            passed: true,
            checked: 0,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    /// Records a failure; only the first counterexample is kept.
    fn fail(&mut self, what: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(what);
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {}: {} cases checked",
            if self.passed { "PASS" } else { "FAIL" },
            self.check,
            self.checked
        )?;
        for note in &self.notes {
            writeln!(f, "  {note}")?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "  counterexample: {c}")?;
        }
        Ok(())
    }
}

pub fn run_check(check: Check, params: &VerifyParams) -> Result<VerifyReport, VerifyError> {
    match check {
        Check::ThmMain => thm_main(params),
        Check::CfVsBrute => cf_vs_brute(params),
        Check::PiTransport => pi_transport(params),
        Check::OmegaInvolution => omega_involution(params),
        Check::PsiClasses => psi_classes(params),
        Check::Narayana => narayana_check(params),
        Check::SaryDuality => sary_duality(params),
        Check::QuadraticG03 => quadratic_g03(params),
        Check::Conjecture1 => conjecture(params, 1),
        Check::Conjecture2 => conjecture(params, 2),
    }
}

fn thm_main(params: &VerifyParams) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::new(Check::ThmMain);
    let order = params.max_n(14);
    for m in params.moduli(2..=6) {
        let r = check_vanishing_identity(m, order)?;
        report.checked += 1;
        report.notes.push(format!(
            "m={m}: {}",
            if r.passed() { "holds" } else { "fails" }
        ));
        if !r.passed() {
            report.fail(r.to_string().trim_end().to_string());
        }
    }
    Ok(report)
}

/// Every singleton residue set modulo `m`, followed by up to `extra` distinct
/// non-singleton sets drawn with a fixed seed.
pub fn sample_residue_sets(
    m: usize,
    extra: usize,
    seed: u64,
) -> Result<Vec<ResidueSet>, DyckError> {
    let mut sets = (0..m)
        .map(|c| ResidueSet::singleton(m, c))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rng = StdRng::seed_from_u64(seed ^ m as u64);
    let wider: Vec<u64> = if m <= 16 {
        // Every subset with at least two residues, as a bitmask, shuffled.
        let mut all: Vec<u64> = (1u64..(1u64 << m))
            .filter(|b| b.count_ones() >= 2)
            .collect();
        all.shuffle(&mut rng);
        all.truncate(extra);
        all
    } else {
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut picked = Vec::new();
        while picked.len() < extra {
            let bits = rng.gen::<u64>() & full;
            if bits.count_ones() >= 2 && !picked.contains(&bits) {
                picked.push(bits);
            }
        }
        picked
    };
    for bits in wider {
        let residues: Vec<usize> = (0..m).filter(|i| bits >> i & 1 == 1).collect();
        sets.push(ResidueSet::new(m, &residues)?);
    }
    Ok(sets)
}

fn cf_vs_brute(params: &VerifyParams) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::new(Check::CfVsBrute);
    let order = params.max_n(10);
    params.cap.check_dyck(order)?;
    for m in params.moduli(2..=5) {
        let sets = sample_residue_sets(m, 5, 0x5eed)?;
        for r in &sets {
            let cf = cf_series(r, order)?;
            let brute = brute_series(r, order, params.cap)?;
            report.checked += 1;
            if !cf_residual(r, &cf)?.is_zero() {
                report.fail(format!(
                    "m={m} R={r}: series does not solve its continued fraction"
                ));
            }
            if let Some((n, k, _)) = cf.checked_sub(&brute)?.nonzero().next() {
                report.fail(format!(
                    "m={m} R={r}: [x^{n} y^{k}] continued fraction {} vs enumeration {}",
                    cf.coeff(n, k),
                    brute.coeff(n, k)
                ));
            }
        }
        report
            .notes
            .push(format!("m={m}: {} residue sets", sets.len()));
    }
    Ok(report)
}

fn pi_transport(params: &VerifyParams) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::new(Check::PiTransport);
    let max_n = params.max_n(9);
    params.cap.check_dyck(max_n)?;
    let zero_mod_three = ResidueSet::singleton(3, 0)?;
    for n in 0..=max_n {
        let mut seen = HashSet::new();
        for p in enumerate_dyck(n) {
            report.checked += 1;
            let image = pi(&p)?;
            let exterior = p.exterior_pairs();
            let marked = image.up_steps_at_residue(&zero_mod_three);
            if exterior != marked {
                report.fail(format!(
                    "path={p} exterior_pairs={exterior} image={image} up_steps_at_0_mod_3={marked}"
                ));
            }
            if pi_inverse(&image)? != p {
                report.fail(format!(
                    "path={p} image={image}: inverse does not return the path"
                ));
            }
            if !seen.insert(image.clone()) {
                report.fail(format!("path={p} image={image}: image already taken"));
            }
        }
    }
    report.notes.push(format!("n <= {max_n}"));
    Ok(report)
}

fn census_failure(p: &DyckPath, m: usize) -> Result<Option<String>, VerifyError> {
    let form = decompose_standard(p, m)?;
    for seg in &form.segments {
        let got = seg.residue_census(m);
        let want = seg.kind.expected_census();
        if got != want {
            return Ok(Some(format!(
                "path={p} m={m}: {} segment at step {} has census {got:?}, expected {want:?}",
                seg.kind, seg.start
            )));
        }
    }
    if form.reassemble() != *p {
        return Ok(Some(format!("path={p} m={m}: segments do not reassemble")));
    }
    Ok(None)
}

fn omega_involution(params: &VerifyParams) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::new(Check::OmegaInvolution);
    let max_n = params.max_n(9);
    params.cap.check_dyck(max_n)?;
    for m in params.moduli(2..=5) {
        for n in 0..=max_n {
            for p in enumerate_dyck(n) {
                report.checked += 1;
                let image = omega(&p, m)?;
                if omega(&image, m)? != p {
                    report.fail(format!("path={p} m={m} image={image}: not an involution"));
                }
                if p.height() + 1 < m {
                    if image != p {
                        report.fail(format!("path={p} m={m}: low path moved to {image}"));
                    }
                    continue;
                }
                let FjkClass { j, k } = classify_fjk(&p, m)?;
                let after = classify_fjk(&image, m)?;
                if j == 0 || after != (FjkClass { j: k + 1, k: j - 1 }) {
                    report.fail(format!(
                        "path={p} m={m} class=({j},{k}) image={image} class=({},{})",
                        after.j, after.k
                    ));
                }
                if let Some(msg) = census_failure(&p, m)? {
                    report.fail(msg);
                }
            }
        }
        report.notes.push(format!("m={m}: n <= {max_n}"));
    }
    Ok(report)
}

fn psi_classes(params: &VerifyParams) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::new(Check::PsiClasses);
    let max_n = params.max_n(9);
    params.cap.check_dyck(max_n)?;
    for m in params.moduli(2..=4) {
        let top = ResidueSet::singleton(m, m - 1)?;
        let zero = ResidueSet::singleton(m, 0)?;
        for n in 0..=max_n {
            let mut seen = HashSet::new();
            for p in enumerate_dyck(n).filter(|p| p.height() + 1 >= m) {
                report.checked += 1;
                let FjkClass { j, k } = classify_fjk(&p, m)?;
                let image = psi(&p, m)?;
                let after = classify_fjk(&image, m)?;
                if j == 0 || after != (FjkClass { j: k + 1, k: j - 1 }) {
                    report.fail(format!(
                        "path={p} m={m} class=({j},{k}) image={image} class=({},{})",
                        after.j, after.k
                    ));
                }
                if !seen.insert(image.clone()) {
                    report.fail(format!("path={p} m={m} image={image}: image already taken"));
                }
            }
            // Counting both sides of the class correspondence.
            let g_top = distribution(n, Statistic::UpResidue(top), params.cap)?;
            let g_zero = distribution(n, Statistic::UpResidue(zero), params.cap)?;
            for j in 2..=n + 1 {
                if g_top.get(j) != g_zero.get(j - 1) {
                    report.fail(format!(
                        "n={n} m={m}: {} paths with {j} up steps at {}, {} with {} at 0",
                        g_top.get(j),
                        m - 1,
                        g_zero.get(j - 1),
                        j - 1
                    ));
                }
            }
            if g_zero.get(0) != g_top.get(0) + g_top.get(1) {
                report.fail(format!(
                    "n={n} m={m}: zero-class count {} != {} + {}",
                    g_zero.get(0),
                    g_top.get(0),
                    g_top.get(1)
                ));
            }
        }
        report.notes.push(format!("m={m}: n <= {max_n}"));
    }
    Ok(report)
}

fn narayana_check(params: &VerifyParams) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::new(Check::Narayana);
    let max_n = params.max_n(10);
    params.cap.check_dyck(max_n)?;
    let even = Statistic::UpResidue(ResidueSet::singleton(2, 0)?);
    for n in 1..=max_n {
        let table = distribution(n, even, params.cap)?;
        for k in 0..n {
            report.checked += 1;
            let expected = narayana(n, k)?;
            if table.get(k) != expected {
                report.fail(format!(
                    "n={n} k={k}: {} paths with k up steps at even height, N(n,k)={expected}",
                    table.get(k)
                ));
            }
            if expected != narayana(n, n - 1 - k)? {
                report.fail(format!("n={n} k={k}: N(n,k) != N(n,n-1-k)"));
            }
        }
        if table.counts.keys().any(|&k| k >= n) {
            report.fail(format!("n={n}: a path has {n} up steps at even height"));
        }
    }
    report.notes.push(format!("1 <= n <= {max_n}"));
    Ok(report)
}

fn sary_duality(params: &VerifyParams) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::new(Check::SaryDuality);
    let arities: Vec<usize> = params.moduli(1..=3);
    for s in arities {
        let census_n = params.max_n(if s == 1 { 9 } else { 6 });
        let order = census_n.max(10);
        let p = sary_series(s, Which::P, order)?;
        let e = sary_series(s, Which::E, order)?;
        for (which, f) in [(Which::P, &p), (Which::E, &e)] {
            report.checked += 1;
            if !sary_residual(s, which, f)?.is_zero() {
                report.fail(format!("s={s}: {which} does not satisfy its equation"));
            }
            let brute = brute_sary_series(s, which, census_n, params.cap)?;
            let truncated = f.truncate(census_n);
            if let Some((n, k, _)) = truncated.checked_sub(&brute)?.nonzero().next() {
                report.fail(format!(
                    "s={s} {which}: [x^{n} y^{k}] series {} vs enumeration {}",
                    truncated.coeff(n, k),
                    brute.coeff(n, k)
                ));
            }
        }
        report.checked += 1;
        if let Some((n, k)) = duality_failure(&p, &e) {
            report.fail(format!(
                "s={s}: e(n={n},k={k})={} but p(n,n-k)={}",
                e.coeff(n, k),
                p.coeff(n, n - k)
            ));
        }
        report.notes.push(format!(
            "s={s}: equations to order {order}, census n <= {census_n}"
        ));
    }
    Ok(report)
}

fn quadratic_g03(params: &VerifyParams) -> Result<VerifyReport, VerifyError> {
    let mut report = VerifyReport::new(Check::QuadraticG03);
    let order = params.max_n(12);
    report.checked = 1;
    if !check_quadratic_g03(order)? {
        report.fail(format!("residual is nonzero to order {order}"));
    }
    report.notes.push(format!("order {order}"));
    Ok(report)
}

fn conjecture(params: &VerifyParams, part: u8) -> Result<VerifyReport, VerifyError> {
    let check = if part == 1 {
        Check::Conjecture1
    } else {
        Check::Conjecture2
    };
    let mut report = VerifyReport::new(check);
    let order = params.max_n(12);
    let moduli = params.moduli(if part == 1 { 4..=6 } else { 6..=7 });
    for m in moduli {
        let r = check_conjecture(part, m, order)?;
        report.checked += r.compared as u64;
        report.notes.push(r.to_string().trim_end().to_string());
        if !r.agrees() {
            let first = r.mismatches[0];
            report.fail(format!(
                "m={m}: [x^{} y^{}] lhs={} rhs={}",
                first.n, first.k, first.lhs, first.rhs
            ));
        }
    }
    Ok(report)
}
