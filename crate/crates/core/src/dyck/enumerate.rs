use super::path::{DyckPath, Step};
use super::sary::SAryPath;

/// Lexicographic (U < D) enumeration of all words with `s * n` up steps and
/// `n` down steps of size `s` that never go below the axis.
#[derive(Clone, Debug)]
pub(crate) struct LatticeWords {
    s: usize,
    n: usize,
    current: Option<Vec<Step>>,
}

impl LatticeWords {
    pub(crate) fn new(s: usize, n: usize) -> Self {
        assert!(s >= 1);
        let mut first = vec![Step::Up; s * n];
        first.extend(std::iter::repeat_n(Step::Down, n));
        LatticeWords {
            s,
            n,
            current: Some(first),
        }
    }

    /// Next word: flip the rightmost feasible `U` to `D` and complete with
    /// all remaining up steps followed by all remaining down steps.
    fn advance(&self, word: &[Step]) -> Option<Vec<Step>> {
        let s = self.s as i64;
        let mut alt = Vec::with_capacity(word.len() + 1);
        let mut downs = Vec::with_capacity(word.len() + 1);
        let (mut a, mut d) = (0i64, 0usize);
        alt.push(a);
        downs.push(d);
        for st in word {
            match st {
                Step::Up => a += 1,
                Step::Down => {
                    a -= s;
                    d += 1;
                }
            }
            alt.push(a);
            downs.push(d);
        }
        let pos = (0..word.len())
            .rev()
            .find(|&i| word[i] == Step::Up && alt[i] >= s && downs[i] < self.n)?;
        let mut next = word[..pos].to_vec();
        next.push(Step::Down);
        let ups_used = pos - downs[pos];
        let ups_left = self.s * self.n - ups_used;
        let downs_left = self.n - downs[pos] - 1;
        next.extend(std::iter::repeat_n(Step::Up, ups_left));
        next.extend(std::iter::repeat_n(Step::Down, downs_left));
        Some(next)
    }
}

impl Iterator for LatticeWords {
    type Item = Vec<Step>;

    fn next(&mut self) -> Option<Vec<Step>> {
        let word = self.current.take()?;
        self.current = self.advance(&word);
        Some(word)
    }
}

/// Iterator over every Dyck path of semilength `n`, lexicographically.
#[derive(Clone, Debug)]
pub struct DyckPaths(LatticeWords);

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        self.0.next().map(DyckPath::from_steps_unchecked)
    }
}

pub fn enumerate_dyck(n: usize) -> DyckPaths {
    DyckPaths(LatticeWords::new(1, n))
}

/// Iterator over every s-ary path with `n` down steps, lexicographically.
#[derive(Clone, Debug)]
pub struct SAryPaths {
    s: usize,
    words: LatticeWords,
}

impl Iterator for SAryPaths {
    type Item = SAryPath;

    fn next(&mut self) -> Option<SAryPath> {
        self.words
            .next()
            .map(|w| SAryPath::from_steps_unchecked(self.s, w))
    }
}

pub fn enumerate_sary(s: usize, n: usize) -> SAryPaths {
    SAryPaths {
        s,
        words: LatticeWords::new(s, n),
    }
}
