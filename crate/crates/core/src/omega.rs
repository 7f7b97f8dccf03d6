//! Cut-line decomposition of Dyck paths and the block-reflecting involution.
//!
//! For a modulus `m >= 2` the lines `L_i : y = m*i - 1` (`i >= 1`) cut a path
//! of height at least `m - 1` into an initial segment (up to the first arrival
//! at `L_1`), a run of blocks and links between lines, and a terminal segment
//! (from the last departure from `L_1`). Reflecting every above/under block
//! about its line is an involution that trades up steps at heights
//! `≡ 0 (mod m)` for up steps at heights `≡ m-1 (mod m)`.

use std::borrow::Cow;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyck::{DyckPath, ResidueSet, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("path height {height} is below m - 1 = {}", .modulus - 1)]
    HeightTooLow { height: usize, modulus: usize },
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(usize),
    #[error("only above- and under-blocks can be reflected, got {0}")]
    NotReflectable(SegmentKind),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentKind {
    Initial,
    AboveBlock,
    UnderBlock,
    UpwardLink,
    DownwardLink,
    Terminal,
}

impl SegmentKind {
    /// `(j, k)` every segment of this kind carries: up steps at heights
    /// `≡ m-1` and `≡ 0 (mod m)`.
    pub fn expected_census(self) -> (usize, usize) {
        match self {
            SegmentKind::Initial => (1, 0),
            SegmentKind::AboveBlock => (0, 1),
            SegmentKind::UnderBlock => (1, 0),
            SegmentKind::UpwardLink => (1, 1),
            SegmentKind::DownwardLink | SegmentKind::Terminal => (0, 0),
        }
    }
}

impl fmt::Display for SegmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SegmentKind::Initial => "initial",
            SegmentKind::AboveBlock => "above-block",
            SegmentKind::UnderBlock => "under-block",
            SegmentKind::UpwardLink => "upward-link",
            SegmentKind::DownwardLink => "downward-link",
            SegmentKind::Terminal => "terminal",
        })
    }
}

/// A factor of a path. Segments produced by [`decompose_standard`] borrow
/// their steps from the path; reflected segments own them. Equality ignores
/// `start`.
#[derive(Clone, Debug)]
pub struct Segment<'a> {
    pub kind: SegmentKind,
    /// Index `i` of the cut line for blocks and links (the line the segment
    /// starts on).
    pub line: Option<usize>,
    /// Step offset within the parent path.
    pub start: usize,
    /// Altitude before the first step.
    pub start_altitude: usize,
    pub steps: Cow<'a, [Step]>,
}

impl PartialEq for Segment<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.line == other.line
            && self.start_altitude == other.start_altitude
            && self.steps == other.steps
    }
}

impl Eq for Segment<'_> {}

impl Segment<'_> {
    pub fn end_altitude(&self) -> usize {
        let mut alt = self.start_altitude as i64;
        for st in self.steps.iter() {
            alt += if *st == Step::Up { 1 } else { -1 };
        }
        alt as usize
    }

    /// Heights of the up steps inside the segment, in order.
    pub fn up_heights(&self) -> Vec<usize> {
        let mut alt = self.start_altitude;
        let mut out = Vec::new();
        for st in self.steps.iter() {
            match st {
                Step::Up => {
                    alt += 1;
                    out.push(alt);
                }
                Step::Down => alt -= 1,
            }
        }
        out
    }

    /// `(j, k)`: up steps at heights `≡ m-1` and `≡ 0 (mod m)`.
    pub fn residue_census(&self, m: usize) -> (usize, usize) {
        let heights = self.up_heights();
        let j = heights.iter().filter(|&&h| h % m == m - 1).count();
        let k = heights.iter().filter(|&&h| h % m == 0).count();
        (j, k)
    }

    pub fn into_owned(self) -> Segment<'static> {
        Segment {
            kind: self.kind,
            line: self.line,
            start: self.start,
            start_altitude: self.start_altitude,
            steps: Cow::Owned(self.steps.into_owned()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SegmentRecord {
    kind: SegmentKind,
    line: Option<usize>,
    steps: String,
}

/// The factorization `ω_1 ⋯ ω_d` of a path along the cut lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm<'a> {
    pub modulus: usize,
    pub segments: Vec<Segment<'a>>,
}

impl StandardForm<'_> {
    pub fn reassemble(&self) -> DyckPath {
        let steps: Vec<Step> = self
            .segments
            .iter()
            .flat_map(|s| s.steps.iter().copied())
            .collect();
        DyckPath::from_steps_unchecked(steps)
    }

    pub fn count(&self, kind: SegmentKind) -> usize {
        self.segments.iter().filter(|s| s.kind == kind).count()
    }

    /// JSON array of `{"kind", "line", "steps"}` objects.
    pub fn to_json(&self) -> String {
        let records: Vec<SegmentRecord> = self
            .segments
            .iter()
            .map(|s| SegmentRecord {
                kind: s.kind,
                line: s.line,
                steps: s.steps.iter().map(|st| st.as_char()).collect(),
            })
            .collect();
        serde_json::to_string(&records).expect("segments serialize")
    }

    /// Rebuilds a standard form from its JSON array; altitudes are recomputed
    /// by concatenation from the origin.
    pub fn from_json(modulus: usize, text: &str) -> Result<StandardForm<'static>, String> {
        let records: Vec<SegmentRecord> = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let mut alt = 0usize;
        let mut pos = 0usize;
        let mut segments = Vec::with_capacity(records.len());
        for r in records {
            let steps = crate::dyck::parse_steps(&r.steps).map_err(|e| e.to_string())?;
            let seg = Segment {
                kind: r.kind,
                line: r.line,
                start: pos,
                start_altitude: alt,
                steps: Cow::Owned(steps),
            };
            pos += seg.steps.len();
            alt = seg.end_altitude();
            segments.push(seg);
        }
        Ok(StandardForm { modulus, segments })
    }
}

fn check_modulus(m: usize) -> Result<(), OmegaError> {
    if m < 2 {
        return Err(OmegaError::InvalidModulus(m));
    }
    Ok(())
}

/// Greedy left-to-right scan; every boundary is a first arrival at a cut line.
pub fn decompose_standard(p: &DyckPath, m: usize) -> Result<StandardForm<'_>, OmegaError> {
    check_modulus(m)?;
    let height = p.height();
    if height + 1 < m {
        return Err(OmegaError::HeightTooLow { height, modulus: m });
    }
    let steps = p.steps();
    let line_alt = |i: usize| m * i - 1;
    let mut segments = Vec::new();
    let seg = |kind, line, start: usize, end: usize, alt| Segment {
        kind,
        line,
        start,
        start_altitude: alt,
        steps: Cow::Borrowed(&steps[start..end]),
    };

    // initial: up to the first arrival at L_1
    let mut alt = 0usize;
    let mut pos = 0usize;
    while alt != m - 1 {
        alt = if steps[pos] == Step::Up {
            alt + 1
        } else {
            alt - 1
        };
        pos += 1;
    }
    segments.push(seg(SegmentKind::Initial, None, 0, pos, 0));

    let mut line = 1usize;
    loop {
        debug_assert_eq!(alt, line_alt(line));
        let start = pos;
        let mut a = alt;
        if steps[pos] == Step::Up {
            // above-block (back to L_i) or upward link (reaches L_{i+1})
            let upper = line_alt(line + 1);
            loop {
                a = if steps[pos] == Step::Up { a + 1 } else { a - 1 };
                pos += 1;
                if a == alt || a == upper {
                    break;
                }
            }
            if a == alt {
                segments.push(seg(SegmentKind::AboveBlock, Some(line), start, pos, alt));
            } else {
                segments.push(seg(SegmentKind::UpwardLink, Some(line), start, pos, alt));
                line += 1;
            }
        } else {
            // under-block (back up to L_i), downward link (reaches L_{i-1}),
            // or, from L_1, the terminal segment when no return happens
            let lower = (line >= 2).then(|| line_alt(line - 1));
            let mut returned = false;
            while pos < steps.len() {
                a = if steps[pos] == Step::Up { a + 1 } else { a - 1 };
                pos += 1;
                if a == alt || Some(a) == lower {
                    returned = true;
                    break;
                }
            }
            if !returned {
                debug_assert_eq!(line, 1);
                segments.push(seg(SegmentKind::Terminal, None, start, pos, alt));
                break;
            }
            if a == alt {
                segments.push(seg(SegmentKind::UnderBlock, Some(line), start, pos, alt));
            } else {
                segments.push(seg(SegmentKind::DownwardLink, Some(line), start, pos, alt));
                line -= 1;
            }
        }
        alt = a;
    }
    debug_assert_eq!(pos, steps.len());
    Ok(StandardForm {
        modulus: m,
        segments,
    })
}

/// Reflects a block about its cut line, swapping above- and under-blocks.
pub fn gamma(seg: &Segment<'_>) -> Result<Segment<'static>, OmegaError> {
    let kind = match seg.kind {
        SegmentKind::AboveBlock => SegmentKind::UnderBlock,
        SegmentKind::UnderBlock => SegmentKind::AboveBlock,
        other => return Err(OmegaError::NotReflectable(other)),
    };
    Ok(Segment {
        kind,
        line: seg.line,
        start: seg.start,
        start_altitude: seg.start_altitude,
        steps: Cow::Owned(seg.steps.iter().map(|s| s.flip()).collect()),
    })
}

/// Reflects every block of the standard form, keeping links and the end
/// segments. Paths lower than `m - 1` are fixed.
pub fn omega(p: &DyckPath, m: usize) -> Result<DyckPath, OmegaError> {
    check_modulus(m)?;
    let form = match decompose_standard(p, m) {
        Ok(form) => form,
        Err(OmegaError::HeightTooLow { .. }) => return Ok(p.clone()),
        Err(e) => return Err(e),
    };
    Ok(omega_form(&form).reassemble())
}

/// The standard form of `omega(p)`, segment by segment.
pub fn omega_form(form: &StandardForm<'_>) -> StandardForm<'static> {
    let segments = form
        .segments
        .iter()
        .map(|s| match s.kind {
            SegmentKind::AboveBlock | SegmentKind::UnderBlock => gamma(s).expect("blocks reflect"),
            _ => s.clone().into_owned(),
        })
        .collect();
    StandardForm {
        modulus: form.modulus,
        segments,
    }
}

/// Up steps at heights `≡ m-1` (`j`) and `≡ 0` (`k`) mod `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FjkClass {
    pub j: usize,
    pub k: usize,
}

pub fn classify_fjk(p: &DyckPath, m: usize) -> Result<FjkClass, OmegaError> {
    check_modulus(m)?;
    let top = ResidueSet::singleton(m, m - 1).expect("valid residue");
    let zero = ResidueSet::singleton(m, 0).expect("valid residue");
    Ok(FjkClass {
        j: p.up_steps_at_residue(&top),
        k: p.up_steps_at_residue(&zero),
    })
}

/// Carries a path with `j >= 1` up steps at heights `≡ m-1` to one with
/// `j - 1` up steps at heights `≡ 0`; the class `(1, 0)` is fixed pointwise.
pub fn psi(p: &DyckPath, m: usize) -> Result<DyckPath, OmegaError> {
    check_modulus(m)?;
    let height = p.height();
    if height + 1 < m {
        return Err(OmegaError::HeightTooLow { height, modulus: m });
    }
    if classify_fjk(p, m)? == (FjkClass { j: 1, k: 0 }) {
        return Ok(p.clone());
    }
    omega(p, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(w: &str) -> DyckPath {
        DyckPath::parse(w).unwrap()
    }

    fn word(s: &Segment<'_>) -> String {
        s.steps.iter().map(|st| st.as_char()).collect()
    }

    #[test]
    fn decompose_uudd() {
        let p = path("UUDD");
        let form = decompose_standard(&p, 2).unwrap();
        let got: Vec<(SegmentKind, String)> =
            form.segments.iter().map(|s| (s.kind, word(s))).collect();
        assert_eq!(
            got,
            vec![
                (SegmentKind::Initial, "U".to_string()),
                (SegmentKind::AboveBlock, "UD".to_string()),
                (SegmentKind::Terminal, "D".to_string()),
            ]
        );
        assert_eq!(omega(&p, 2).unwrap(), path("UDUD"));
        assert_eq!(classify_fjk(&p, 2).unwrap(), FjkClass { j: 1, k: 1 });
    }

    // initial, above, under, upward link, above, under, downward link,
    // above, terminal
    const NINE_SEGMENTS: &str = "UUUDDUUUUUDDUDDDUDDD";

    #[test]
    fn nine_segment_census() {
        let p = path(NINE_SEGMENTS);
        let form = decompose_standard(&p, 3).unwrap();
        let kinds: Vec<SegmentKind> = form.segments.iter().map(|s| s.kind).collect();
        use SegmentKind::*;
        assert_eq!(
            kinds,
            vec![
                Initial,
                AboveBlock,
                UnderBlock,
                UpwardLink,
                AboveBlock,
                UnderBlock,
                DownwardLink,
                AboveBlock,
                Terminal
            ]
        );
        assert_eq!(form.count(AboveBlock), 3);
        assert_eq!(form.count(UnderBlock), 2);
        assert_eq!(classify_fjk(&p, 3).unwrap(), FjkClass { j: 4, k: 4 });
        let image = omega(&p, 3).unwrap();
        assert_eq!(classify_fjk(&image, 3).unwrap(), FjkClass { j: 5, k: 3 });
        assert_eq!(omega(&image, 3).unwrap(), p);
        assert_eq!(form.reassemble(), p);
        for seg in &form.segments {
            assert_eq!(
                seg.residue_census(3),
                seg.kind.expected_census(),
                "{}",
                seg.kind
            );
        }
    }

    #[test]
    fn low_paths() {
        let p = path("UUDDUD");
        assert_eq!(omega(&p, 4).unwrap(), p);
        assert!(matches!(
            decompose_standard(&p, 4),
            Err(OmegaError::HeightTooLow {
                height: 2,
                modulus: 4
            })
        ));
        assert!(matches!(psi(&p, 4), Err(OmegaError::HeightTooLow { .. })));
        assert_eq!(
            classify_fjk(&path("UD"), 3).unwrap(),
            FjkClass { j: 0, k: 0 }
        );
        // height exactly m - 1: initial, blocks on L_1, terminal
        let flat = path("UUDUDD");
        let form = decompose_standard(&flat, 3).unwrap();
        let kinds: Vec<SegmentKind> = form.segments.iter().map(|s| s.kind).collect();
        assert_eq!(
            kinds,
            vec![
                SegmentKind::Initial,
                SegmentKind::UnderBlock,
                SegmentKind::Terminal
            ]
        );
    }

    #[test]
    fn gamma_examples() {
        let p = path("UUDD");
        let form = decompose_standard(&p, 2).unwrap();
        let above = &form.segments[1];
        let under = gamma(above).unwrap();
        assert_eq!(under.kind, SegmentKind::UnderBlock);
        assert_eq!(word(&under), "DU");
        assert_eq!(gamma(&under).unwrap(), *above);
        assert!(matches!(
            gamma(&form.segments[0]),
            Err(OmegaError::NotReflectable(SegmentKind::Initial))
        ));
    }

    #[test]
    fn psi_fixes_class_one_zero() {
        // UUDD with m = 3: single up step at height 2, none at 3
        let p = path("UUDD");
        assert_eq!(classify_fjk(&p, 3).unwrap(), FjkClass { j: 1, k: 0 });
        assert_eq!(psi(&p, 3).unwrap(), p);
    }

    #[test]
    fn json_round_trip() {
        let p = path(NINE_SEGMENTS);
        let form = decompose_standard(&p, 3).unwrap();
        let json = form.to_json();
        assert!(json.starts_with(r#"[{"kind":"initial","line":null,"steps":"UU"}"#));
        let back = StandardForm::from_json(3, &json).unwrap();
        assert_eq!(back, form);
    }
}
