use std::fmt;

use serde::{Deserialize, Serialize};

use super::DyckError;

/// A modulus `m >= 2` together with a nonempty set of residues mod `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ResidueRecord", into = "ResidueRecord")]
pub struct ResidueSet {
    modulus: usize,
    mask: u64,
}

pub const MAX_MODULUS: usize = 64;

impl ResidueSet {
    pub fn new(modulus: usize, residues: &[usize]) -> Result<Self, DyckError> {
        if !(2..=MAX_MODULUS).contains(&modulus) {
            return Err(DyckError::InvalidModulus(modulus));
        }
        if residues.is_empty() {
            return Err(DyckError::EmptyResidueSet);
        }
        let mut mask = 0u64;
        for &r in residues {
            if r >= modulus {
                return Err(DyckError::ResidueOutOfRange {
                    residue: r,
                    modulus,
                });
            }
            mask |= 1 << r;
        }
        Ok(ResidueSet { modulus, mask })
    }

    pub fn singleton(modulus: usize, residue: usize) -> Result<Self, DyckError> {
        ResidueSet::new(modulus, &[residue])
    }

    /// Every residue class mod `m`.
    pub fn full(modulus: usize) -> Result<Self, DyckError> {
        let all: Vec<usize> = (0..modulus).collect();
        ResidueSet::new(modulus, &all)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn contains(&self, h: usize) -> bool {
        self.mask >> (h % self.modulus) & 1 == 1
    }

    pub fn residues(&self) -> Vec<usize> {
        (0..self.modulus).filter(|&c| self.contains(c)).collect()
    }

    /// `R - i = { (c - i) mod m : c in R }`.
    pub fn shift_down(&self, i: usize) -> ResidueSet {
        let m = self.modulus;
        let mut mask = 0u64;
        for c in self.residues() {
            mask |= 1 << ((c + m - i % m) % m);
        }
        ResidueSet { modulus: m, mask }
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.residues().iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}} mod {}", list.join(","), self.modulus)
    }
}

#[derive(Serialize, Deserialize)]
struct ResidueRecord {
    m: usize,
    residues: Vec<usize>,
}

impl TryFrom<ResidueRecord> for ResidueSet {
    type Error = DyckError;

    fn try_from(r: ResidueRecord) -> Result<Self, Self::Error> {
        ResidueSet::new(r.m, &r.residues)
    }
}

impl From<ResidueSet> for ResidueRecord {
    fn from(r: ResidueSet) -> Self {
        ResidueRecord {
            m: r.modulus,
            residues: r.residues(),
        }
    }
}
