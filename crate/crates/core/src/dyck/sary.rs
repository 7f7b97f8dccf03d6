use std::fmt;

use super::path::{parse_steps, render_steps, scan_pyramids, DyckPath, Pyramid, Step};
use super::DyckError;

/// A path with up steps `(1,1)` and grand down steps `(1,-s)` from the origin
/// back to the axis, never going below it. `s = 1` gives Dyck paths.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SAryPath {
    s: usize,
    steps: Vec<Step>,
}

impl SAryPath {
    pub fn from_steps(s: usize, steps: Vec<Step>) -> Result<Self, DyckError> {
        if s == 0 {
            return Err(DyckError::InvalidArity(s));
        }
        let mut alt: i64 = 0;
        for (pos, st) in steps.iter().enumerate() {
            alt += if *st == Step::Up { 1 } else { -(s as i64) };
            if alt < 0 {
                return Err(DyckError::BelowAxis { pos });
            }
        }
        if alt != 0 {
            let ups = steps.iter().filter(|&&st| st == Step::Up).count();
            return Err(DyckError::NonBalanced {
                ups,
                downs: steps.len() - ups,
            });
        }
        Ok(SAryPath { s, steps })
    }

    pub(crate) fn from_steps_unchecked(s: usize, steps: Vec<Step>) -> Self {
        SAryPath { s, steps }
    }

    pub fn parse(s: usize, text: &str) -> Result<Self, DyckError> {
        SAryPath::from_steps(s, parse_steps(text)?)
    }

    pub fn arity(&self) -> usize {
        self.s
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of down steps.
    pub fn length(&self) -> usize {
        self.steps.len() / (self.s + 1)
    }

    pub fn render(&self) -> String {
        render_steps(&self.steps)
    }

    pub fn maximal_pyramids(&self) -> Vec<Pyramid> {
        scan_pyramids(&self.steps, self.s)
    }

    pub fn pyramid_weight(&self) -> usize {
        self.maximal_pyramids().iter().map(|p| p.height).sum()
    }

    /// Down steps lying outside every pyramid, counted directly from step
    /// membership.
    pub fn exterior_down_steps(&self) -> usize {
        let mut covered = vec![false; self.steps.len()];
        for pyr in self.maximal_pyramids() {
            covered[pyr.start..pyr.start + (self.s + 1) * pyr.height].fill(true);
        }
        let count = self
            .steps
            .iter()
            .zip(&covered)
            .filter(|(st, c)| **st == Step::Down && !**c)
            .count();
        assert_eq!(
            count,
            self.length() - self.pyramid_weight(),
            "exterior down steps disagree with pyramid weight"
        );
        count
    }

    pub fn to_dyck(&self) -> Option<DyckPath> {
        (self.s == 1).then(|| DyckPath::from_steps_unchecked(self.steps.clone()))
    }
}

impl From<&DyckPath> for SAryPath {
    fn from(p: &DyckPath) -> Self {
        SAryPath {
            s: 1,
            steps: p.steps().to_vec(),
        }
    }
}

impl fmt::Display for SAryPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::enumerate::{enumerate_dyck, enumerate_sary};

    #[test]
    fn single_pyramid() {
        let p = SAryPath::parse(2, "UUD").unwrap();
        assert_eq!(p.length(), 1);
        assert_eq!(p.pyramid_weight(), 1);
        assert_eq!(p.exterior_down_steps(), 0);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            SAryPath::parse(2, "UDU"),
            Err(DyckError::BelowAxis { pos: 1 })
        ));
        assert!(matches!(
            SAryPath::parse(2, "UUUD"),
            Err(DyckError::NonBalanced { .. })
        ));
        assert_eq!(SAryPath::parse(0, ""), Err(DyckError::InvalidArity(0)));
    }

    #[test]
    fn partial_runs() {
        // the second peak has a single up step before it: no pyramid for s = 2
        let p = SAryPath::parse(2, "UUUUUDUDD").unwrap();
        assert_eq!(
            p.maximal_pyramids(),
            vec![Pyramid {
                start: 3,
                height: 1
            }]
        );
        assert_eq!(p.exterior_down_steps(), 2);
        let q = SAryPath::parse(2, "UUUUUUDDD").unwrap();
        assert_eq!(
            q.maximal_pyramids(),
            vec![Pyramid {
                start: 0,
                height: 3
            }]
        );
    }

    #[test]
    fn reduces_to_dyck() {
        for n in 0..=7 {
            for d in enumerate_dyck(n) {
                let s = SAryPath::from(&d);
                assert_eq!(s.exterior_down_steps(), d.exterior_pairs());
                assert_eq!(s.pyramid_weight(), d.pyramid_weight());
            }
        }
    }

    #[test]
    fn pyramids_are_disjoint() {
        for s in 1..=3 {
            for n in 0..=7 {
                for p in enumerate_sary(s, n) {
                    let pyrs = p.maximal_pyramids();
                    for w in pyrs.windows(2) {
                        assert!(w[0].start + (s + 1) * w[0].height <= w[1].start);
                    }
                    assert_eq!(p.exterior_down_steps() + p.pyramid_weight(), n);
                }
            }
        }
    }
}
