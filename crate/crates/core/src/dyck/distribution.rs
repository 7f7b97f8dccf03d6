use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_dyck, enumerate_sary};
use super::numbers::{catalan, fuss_catalan};
use super::residue::ResidueSet;
use super::DyckError;

/// Path statistics that can be tabulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    ExteriorPairs,
    PyramidWeight,
    UpResidue(ResidueSet),
    Height,
    SAryPyramidWeight { s: usize },
    SAryExteriorDownSteps { s: usize },
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Statistic::ExteriorPairs => "exterior-pairs",
            Statistic::PyramidWeight => "pyramid-weight",
            Statistic::UpResidue(_) => "up-residue",
            Statistic::Height => "height",
            Statistic::SAryPyramidWeight { .. } => "sary-pyramid-weight",
            Statistic::SAryExteriorDownSteps { .. } => "sary-exterior-down",
        }
    }

    fn is_sary(&self) -> bool {
        matches!(
            self,
            Statistic::SAryPyramidWeight { .. } | Statistic::SAryExteriorDownSteps { .. }
        )
    }

    fn params(&self) -> Params {
        match *self {
            Statistic::UpResidue(r) => Params {
                m: Some(r.modulus()),
                residues: Some(r.residues()),
                s: None,
            },
            Statistic::SAryPyramidWeight { s } | Statistic::SAryExteriorDownSteps { s } => Params {
                s: Some(s),
                ..Params::default()
            },
            _ => Params::default(),
        }
    }

    fn from_parts(name: &str, params: &Params) -> Result<Self, DyckError> {
        let arity = || params.s.ok_or(DyckError::MissingParameter("s"));
        Ok(match name {
            "exterior-pairs" => Statistic::ExteriorPairs,
            "pyramid-weight" => Statistic::PyramidWeight,
            "height" => Statistic::Height,
            "up-residue" => {
                let m = params.m.ok_or(DyckError::MissingParameter("m"))?;
                let residues = params
                    .residues
                    .as_deref()
                    .ok_or(DyckError::MissingParameter("residues"))?;
                Statistic::UpResidue(ResidueSet::new(m, residues)?)
            }
            "sary-pyramid-weight" => Statistic::SAryPyramidWeight { s: arity()? },
            "sary-exterior-down" => Statistic::SAryExteriorDownSteps { s: arity()? },
            other => return Err(DyckError::UnknownStatistic(other.to_string())),
        })
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::UpResidue(r) => write!(f, "up-residue {r}"),
            Statistic::SAryPyramidWeight { s } | Statistic::SAryExteriorDownSteps { s } => {
                write!(f, "{} (s={s})", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residues: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableRecord {
    n: usize,
    statistic: String,
    params: Params,
    counts: BTreeMap<usize, u64>,
}

/// Largest semilength that exhaustive enumeration will accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCap {
    pub dyck: usize,
    pub sary: usize,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap { dyck: 14, sary: 8 }
    }
}

impl EnumerationCap {
    pub fn unlimited() -> Self {
        EnumerationCap {
            dyck: usize::MAX,
            sary: usize::MAX,
        }
    }

    pub fn check_dyck(&self, n: usize) -> Result<(), DyckError> {
        if n > self.dyck {
            return Err(DyckError::CapExceeded { n, cap: self.dyck });
        }
        Ok(())
    }

    pub fn check_sary(&self, n: usize) -> Result<(), DyckError> {
        if n > self.sary {
            return Err(DyckError::CapExceeded { n, cap: self.sary });
        }
        Ok(())
    }

    /// Ordinary Dyck paths (`s = 1`) fall under the Dyck cap; larger arities
    /// under the s-ary one.
    pub fn check_arity(&self, s: usize, n: usize) -> Result<(), DyckError> {
        if s == 1 {
            self.check_dyck(n)
        } else {
            self.check_sary(n)
        }
    }
}

/// Exact counts of paths of one semilength by the value of a statistic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub n: usize,
    pub statistic: Statistic,
    pub counts: BTreeMap<usize, u64>,
}

impl DistributionTable {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, k: usize) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// `k:count` pairs separated by spaces, increasing in `k`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(k, c)| format!("{k}:{c}"))
            .collect();
        parts.join(" ")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,count\n");
        for (k, c) in &self.counts {
            writeln!(out, "{k},{c}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let record = TableRecord {
            n: self.n,
            statistic: self.statistic.name().to_string(),
            params: self.statistic.params(),
            counts: self.counts.clone(),
        };
        serde_json::to_string(&record).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DyckError> {
        let record: TableRecord =
            serde_json::from_str(text).map_err(|e| DyckError::Json(e.to_string()))?;
        Ok(DistributionTable {
            n: record.n,
            statistic: Statistic::from_parts(&record.statistic, &record.params)?,
            counts: record.counts,
        })
    }
}

/// Tabulates `statistic` over every path of semilength `n` by enumeration.
pub fn distribution(
    n: usize,
    statistic: Statistic,
    cap: EnumerationCap,
) -> Result<DistributionTable, DyckError> {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut bump = |k: usize| -> Result<(), DyckError> {
        let slot = counts.entry(k).or_insert(0);
        *slot = slot.checked_add(1).ok_or(DyckError::Overflow)?;
        Ok(())
    };
    if statistic.is_sary() {
        let (s, weight) = match statistic {
            Statistic::SAryPyramidWeight { s } => (s, true),
            Statistic::SAryExteriorDownSteps { s } => (s, false),
            _ => unreachable!(),
        };
        if s == 0 {
            return Err(DyckError::InvalidArity(s));
        }
        cap.check_arity(s, n)?;
        for p in enumerate_sary(s, n) {
            bump(if weight {
                p.pyramid_weight()
            } else {
                p.exterior_down_steps()
            })?;
        }
        let table = DistributionTable {
            n,
            statistic,
            counts,
        };
        debug_assert_eq!(Ok(table.total()), fuss_catalan(s, n));
        return Ok(table);
    }
    cap.check_dyck(n)?;
    for p in enumerate_dyck(n) {
        bump(match statistic {
            Statistic::ExteriorPairs => p.exterior_pairs(),
            Statistic::PyramidWeight => p.pyramid_weight(),
            Statistic::UpResidue(r) => p.up_steps_at_residue(&r),
            Statistic::Height => p.height(),
            _ => unreachable!(),
        })?;
    }
    let table = DistributionTable {
        n,
        statistic,
        counts,
    };
    debug_assert_eq!(Ok(table.total()), catalan(n));
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, st: Statistic) -> BTreeMap<usize, u64> {
        distribution(n, st, EnumerationCap::default())
            .unwrap()
            .counts
    }

    fn map(pairs: &[(usize, u64)]) -> BTreeMap<usize, u64> {
        pairs.iter().copied().collect()
    }

    fn residue(m: usize, r: &[usize]) -> Statistic {
        Statistic::UpResidue(ResidueSet::new(m, r).unwrap())
    }

    #[test]
    fn known_residue_rows() {
        assert_eq!(
            table(5, residue(3, &[0])),
            map(&[(0, 16), (1, 18), (2, 7), (3, 1)])
        );
        assert_eq!(
            table(4, residue(3, &[1])),
            map(&[(1, 4), (2, 6), (3, 3), (4, 1)])
        );
        assert_eq!(
            table(6, residue(3, &[2])),
            map(&[(0, 1), (1, 31), (2, 56), (3, 34), (4, 9), (5, 1)])
        );
        assert_eq!(
            table(5, Statistic::ExteriorPairs),
            map(&[(0, 16), (1, 18), (2, 7), (3, 1)])
        );
    }

    #[test]
    fn cap() {
        let small = EnumerationCap { dyck: 3, sary: 2 };
        assert_eq!(
            distribution(4, Statistic::Height, small),
            Err(DyckError::CapExceeded { n: 4, cap: 3 })
        );
        assert!(distribution(3, Statistic::SAryPyramidWeight { s: 2 }, small).is_err());
    }

    #[test]
    fn json_and_csv() {
        let t = distribution(4, residue(3, &[0, 2]), EnumerationCap::default()).unwrap();
        let json = t.to_json();
        assert!(json.starts_with(
            r#"{"n":4,"statistic":"up-residue","params":{"m":3,"residues":[0,2]},"counts":{"#
        ));
        assert_eq!(DistributionTable::from_json(&json).unwrap(), t);
        let csv = t.to_csv();
        assert!(csv.starts_with("k,count\n"));
        assert_eq!(csv.lines().count(), t.counts.len() + 1);

        let s = distribution(
            3,
            Statistic::SAryExteriorDownSteps { s: 2 },
            EnumerationCap::default(),
        )
        .unwrap();
        assert_eq!(DistributionTable::from_json(&s.to_json()).unwrap(), s);
        assert!(DistributionTable::from_json(
            r#"{"n":1,"statistic":"peaks","params":{},"counts":{}}"#
        )
        .is_err());
    }
}
