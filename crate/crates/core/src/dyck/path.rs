use std::fmt;
use std::str::FromStr;

use super::residue::ResidueSet;
use super::DyckError;

/// A single lattice step. `Up` sorts before `Down`, which fixes the
/// lexicographic order used by enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn flip(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }

    pub(crate) fn from_char(c: char) -> Option<Step> {
        match c {
            'U' | 'u' | '(' => Some(Step::Up),
            'D' | 'd' | ')' => Some(Step::Down),
            _ => None,
        }
    }
}

pub(crate) fn render_steps(steps: &[Step]) -> String {
    steps.iter().map(|s| s.as_char()).collect()
}

pub(crate) fn parse_steps(text: &str) -> Result<Vec<Step>, DyckError> {
    text.trim()
        .chars()
        .enumerate()
        .map(|(pos, ch)| Step::from_char(ch).ok_or(DyckError::BadChar { ch, pos }))
        .collect()
}

/// A maximal run `U^h D^h` (or `U^{sh} D^h` for s-ary paths) inside a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pyramid {
    /// Index of the first up step of the pyramid.
    pub start: usize,
    pub height: usize,
}

/// Finds the maximal pyramids of a word whose down steps drop by `s`.
///
/// Every pyramid is centred on a peak, and the largest one on a peak contains
/// all others there, so growing each peak as far as possible yields exactly
/// the maximal pyramids.
pub(crate) fn scan_pyramids(steps: &[Step], s: usize) -> Vec<Pyramid> {
    let mut out: Vec<Pyramid> = Vec::new();
    for peak in 0..steps.len().saturating_sub(1) {
        if steps[peak] != Step::Up || steps[peak + 1] != Step::Down {
            continue;
        }
        let ups = steps[..=peak]
            .iter()
            .rev()
            .take_while(|&&st| st == Step::Up)
            .count();
        let downs = steps[peak + 1..]
            .iter()
            .take_while(|&&st| st == Step::Down)
            .count();
        let height = downs.min(ups / s);
        if height == 0 {
            continue;
        }
        let start = peak + 1 - s * height;
        if let Some(prev) = out.last() {
            let prev_end = prev.start + (s + 1) * prev.height;
            assert!(prev_end <= start, "maximal pyramids overlap");
        }
        out.push(Pyramid { start, height });
    }
    out
}

/// A Dyck path: equally many up and down steps, never below the axis.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    pub fn from_steps(steps: Vec<Step>) -> Result<Self, DyckError> {
        let mut alt: i64 = 0;
        for (pos, st) in steps.iter().enumerate() {
            alt += if *st == Step::Up { 1 } else { -1 };
            if alt < 0 {
                return Err(DyckError::BelowAxis { pos });
            }
        }
        if alt != 0 {
            let ups = steps.iter().filter(|&&s| s == Step::Up).count();
            return Err(DyckError::NonBalanced {
                ups,
                downs: steps.len() - ups,
            });
        }
        Ok(DyckPath { steps })
    }

    /// Callers guarantee the Dyck property.
    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(DyckPath::from_steps(steps.clone()).is_ok());
        DyckPath { steps }
    }

    /// Parses a word over `U`/`D` (either case); `(` and `)` are accepted as
    /// aliases. Surrounding whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self, DyckError> {
        DyckPath::from_steps(parse_steps(text)?)
    }

    pub fn render(&self) -> String {
        render_steps(&self.steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Altitudes after each step; entry `i` is the height reached by step `i`.
    pub fn altitudes(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().scan(0usize, |alt, st| {
            match st {
                Step::Up => *alt += 1,
                Step::Down => *alt -= 1,
            }
            Some(*alt)
        })
    }

    /// Heights of the up steps in order; an up step from `h-1` to `h` has
    /// height `h`.
    pub fn up_heights(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps
            .iter()
            .zip(self.altitudes())
            .filter(|(st, _)| **st == Step::Up)
            .map(|(_, h)| h)
    }

    pub fn height(&self) -> usize {
        self.altitudes().max().unwrap_or(0)
    }

    /// Splits the path at its returns to the axis.
    pub fn blocks(&self) -> Vec<DyckPath> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, alt) in self.altitudes().enumerate() {
            if alt == 0 {
                out.push(DyckPath::from_steps_unchecked(
                    self.steps[start..=i].to_vec(),
                ));
                start = i + 1;
            }
        }
        out
    }

    pub fn is_primitive(&self) -> bool {
        self.blocks().len() == 1
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a DyckPath>) -> DyckPath {
        let steps = parts
            .into_iter()
            .flat_map(|p| p.steps.iter().copied())
            .collect();
        DyckPath::from_steps_unchecked(steps)
    }

    /// `U p D`.
    pub fn lift(&self) -> DyckPath {
        let mut steps = Vec::with_capacity(self.steps.len() + 2);
        steps.push(Step::Up);
        steps.extend_from_slice(&self.steps);
        steps.push(Step::Down);
        DyckPath { steps }
    }

    /// For every step, the index of the step it is matched with.
    pub fn matching(&self) -> Vec<usize> {
        let mut partner = vec![0; self.steps.len()];
        let mut open = Vec::new();
        for (i, st) in self.steps.iter().enumerate() {
            match st {
                Step::Up => open.push(i),
                Step::Down => {
                    let j = open.pop().expect("valid Dyck path");
                    partner[i] = j;
                    partner[j] = i;
                }
            }
        }
        partner
    }

    pub fn maximal_pyramids(&self) -> Vec<Pyramid> {
        scan_pyramids(&self.steps, 1)
    }

    pub fn pyramid_weight(&self) -> usize {
        self.maximal_pyramids().iter().map(|p| p.height).sum()
    }

    /// Counts exterior pairs by matching every up step with its down step and
    /// testing both for membership in a maximal pyramid.
    pub fn exterior_pairs(&self) -> usize {
        let mut covered = vec![false; self.steps.len()];
        for pyr in self.maximal_pyramids() {
            covered[pyr.start..pyr.start + 2 * pyr.height].fill(true);
        }
        let partner = self.matching();
        let count = self
            .steps
            .iter()
            .enumerate()
            .filter(|(i, st)| **st == Step::Up && !covered[*i] && !covered[partner[*i]])
            .count();
        assert_eq!(
            count,
            self.semilength() - self.pyramid_weight(),
            "exterior pairs disagree with pyramid weight"
        );
        count
    }

    pub fn up_steps_at_residue(&self, residues: &ResidueSet) -> usize {
        self.up_heights().filter(|&h| residues.contains(h)).count()
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for DyckPath {
    type Err = DyckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DyckPath::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(w: &str) -> DyckPath {
        DyckPath::parse(w).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("UD").semilength(), 1);
        assert_eq!(p("").semilength(), 0);
        assert_eq!(
            DyckPath::parse("UDDU"),
            Err(DyckError::BelowAxis { pos: 2 })
        );
        assert_eq!(
            DyckPath::parse("UUD"),
            Err(DyckError::NonBalanced { ups: 2, downs: 1 })
        );
        assert_eq!(
            DyckPath::parse("UXD"),
            Err(DyckError::BadChar { ch: 'X', pos: 1 })
        );
        assert_eq!(p("(()())"), p("uudUdd"));
        assert_eq!(p("(()())").render(), "UUDUDD");
    }

    #[test]
    fn pyramids() {
        assert_eq!(
            p("UUDD").maximal_pyramids(),
            vec![Pyramid {
                start: 0,
                height: 2
            }]
        );
        assert_eq!(
            p("UUDUDD").maximal_pyramids(),
            vec![
                Pyramid {
                    start: 1,
                    height: 1
                },
                Pyramid {
                    start: 3,
                    height: 1
                }
            ]
        );
        assert_eq!(p("UDUDUD").maximal_pyramids().len(), 3);
        assert!(p("").maximal_pyramids().is_empty());
        assert_eq!(p("UUDD").pyramid_weight(), 2);
        assert_eq!(p("UUDUDD").pyramid_weight(), 2);
        assert_eq!(p("").pyramid_weight(), 0);
    }

    #[test]
    fn exterior_pairs_examples() {
        assert_eq!(p("UUDD").exterior_pairs(), 0);
        assert_eq!(p("UUDUDD").exterior_pairs(), 1);
        // three maximal pyramids (heights 2, 1, 1) and two exterior pairs
        let fig = p("UUUUDDUDDDUD");
        assert_eq!(fig.semilength(), 6);
        assert_eq!(fig.maximal_pyramids().len(), 3);
        assert_eq!(fig.pyramid_weight(), 4);
        assert_eq!(fig.exterior_pairs(), 2);
    }

    #[test]
    fn residue_counts() {
        let r0 = ResidueSet::new(3, &[0]).unwrap();
        let r2 = ResidueSet::new(3, &[2]).unwrap();
        assert_eq!(p("UUUDDD").up_steps_at_residue(&r0), 1);
        assert_eq!(p("UUDD").up_steps_at_residue(&r2), 1);
        assert_eq!(p("UUDD").up_heights().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn height_and_blocks() {
        assert_eq!(p("UDUD").height(), 1);
        assert_eq!(p("UDUD").blocks(), vec![p("UD"), p("UD")]);
        assert_eq!(p("UUDD").height(), 2);
        assert_eq!(p("UUDD").blocks().len(), 1);
        assert!(p("UUDD").is_primitive());
        assert!(p("").blocks().is_empty());
        assert_eq!(p("").height(), 0);
    }
}
