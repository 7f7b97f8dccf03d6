//! A recursive bijection on planted trees that carries exterior edges to
//! edges at levels divisible by three ("red" edges), lifted to ordered trees
//! by acting on each planted component, and to Dyck paths through the
//! preorder correspondence.
//!
//! For a planted tree with stalk `uv` and children `w_1..w_r` of `v`:
//!
//! * a path of length `n` maps to the bouquet of size `n`;
//! * if `vw_r` is exterior, the images of all `τ(vw_j)` are built, and a new
//!   edge `xy` is hung to the right of the rightmost level-3 edge `xz` of the
//!   last image, with the other images merged at `y`;
//! * if only `vw_{r-1}` is exterior, a path `qxy` plus `t-1` leaves is added
//!   at the top vertex `q` of the image of `τ(vw_{r-1})`, where `t` is the
//!   length of the path `τ(vw_r)`;
//! * otherwise a fresh path `pqxy` is built, with leaves at `q` standing for
//!   the two trailing paths.
//!
//! In each recursive case the stalk `uv` becomes the rightmost level-3 edge of
//! the image, which is what the inverse keys on.

use thiserror::Error;

use crate::dyck::DyckPath;
use crate::tree::{OrderedTree, PlantedTree, TreeError};

/// Recursion depth limit for the planted-tree maps.
pub const MAX_DEPTH: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error(transparent)]
    NotPlanted(#[from] TreeError),
    #[error("tree is not in the image of the forward map: {0}")]
    NotInImage(String),
    #[error("recursion deeper than {MAX_DEPTH}")]
    TooDeep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhiCase {
    Base,
    Case1,
    Case2,
    Case3,
}

impl std::fmt::Display for PhiCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PhiCase::Base => "base",
            PhiCase::Case1 => "case1",
            PhiCase::Case2 => "case2",
            PhiCase::Case3 => "case3",
        })
    }
}

/// One recursive call recorded by the traced variants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiStep {
    pub depth: usize,
    pub case: PhiCase,
    pub input: DyckPath,
    pub output: DyckPath,
}

fn is_exterior_body(body: &OrderedTree) -> bool {
    body.leaf_count() >= 2
}

/// Which rule of the forward map applies to `t`.
pub fn phi_case(t: &PlantedTree) -> PhiCase {
    if t.is_path() {
        return PhiCase::Base;
    }
    let kids = t.body().children();
    let r = kids.len();
    if is_exterior_body(&kids[r - 1]) {
        PhiCase::Case1
    } else if r >= 2 && is_exterior_body(&kids[r - 2]) {
        PhiCase::Case2
    } else {
        // r = 1 with a non-exterior child would make t a path
        assert!(r >= 2, "non-path planted tree with a single path child");
        PhiCase::Case3
    }
}

fn plant(t: &OrderedTree) -> PlantedTree {
    PlantedTree::from_body(t.clone())
}

fn bodies(parts: Vec<PlantedTree>) -> Vec<OrderedTree> {
    parts.into_iter().map(PlantedTree::into_body).collect()
}

fn leaves(count: usize) -> impl Iterator<Item = OrderedTree> {
    std::iter::repeat_n(OrderedTree::leaf(), count)
}

/// Index of the last child of `q` that is not a leaf: the parent `x` of the
/// rightmost level-3 edge of the planted tree whose top vertex is `q`.
fn rightmost_level3_parent(q: &OrderedTree) -> Option<usize> {
    q.children().iter().rposition(|x| !x.is_leaf())
}

fn phi_rec(
    t: &PlantedTree,
    depth: usize,
    trace: &mut Option<&mut Vec<PhiStep>>,
) -> Result<PlantedTree, BijectionError> {
    if depth > MAX_DEPTH {
        return Err(BijectionError::TooDeep);
    }
    let case = phi_case(t);
    let kids = t.body().children();
    let r = kids.len();
    let mut images = |range: std::ops::Range<usize>| -> Result<Vec<PlantedTree>, BijectionError> {
        kids[range]
            .iter()
            .map(|k| phi_rec(&plant(k), depth + 1, trace))
            .collect()
    };
    let out = match case {
        PhiCase::Base => PlantedTree::bouquet(t.edge_count())?,
        PhiCase::Case1 => {
            let mut parts = images(0..r)?;
            let mut top = parts.pop().expect("r >= 1");
            let y = OrderedTree::with_children(bodies(parts));
            let q = top.body_mut();
            let ix = rightmost_level3_parent(q).ok_or_else(|| {
                BijectionError::NotInImage(
                    "image of an exterior subtree has no level-3 edge".into(),
                )
            })?;
            q.children_mut()[ix].children_mut().push(y);
            top
        }
        PhiCase::Case2 => {
            let tail = kids[r - 1].edge_count() + 1;
            let mut parts = images(0..r - 1)?;
            let mut top = parts.pop().expect("r >= 2");
            let y = OrderedTree::with_children(bodies(parts));
            let x = OrderedTree::with_children(vec![y]);
            let q = top.body_mut().children_mut();
            q.push(x);
            q.extend(leaves(tail - 1));
            top
        }
        PhiCase::Case3 => {
            let left = kids[r - 2].edge_count() + 1;
            let right = kids[r - 1].edge_count() + 1;
            let parts = images(0..r - 2)?;
            let y = OrderedTree::with_children(bodies(parts));
            let x = OrderedTree::with_children(vec![y]);
            let q: Vec<OrderedTree> = leaves(left - 1)
                .chain(std::iter::once(x))
                .chain(leaves(right - 1))
                .collect();
            PlantedTree::from_body(OrderedTree::with_children(q))
        }
    };
    debug_assert_eq!(out.edge_count(), t.edge_count());
    if let Some(log) = trace.as_deref_mut() {
        log.push(PhiStep {
            depth,
            case,
            input: t.to_path(),
            output: out.to_path(),
        });
    }
    Ok(out)
}

pub fn phi(t: &PlantedTree) -> Result<PlantedTree, BijectionError> {
    phi_rec(t, 0, &mut None)
}

/// Like [`phi`], also returning every recursive call in completion order.
pub fn phi_traced(t: &PlantedTree) -> Result<(PlantedTree, Vec<PhiStep>), BijectionError> {
    let mut log = Vec::new();
    let out = phi_rec(t, 0, &mut Some(&mut log))?;
    Ok((out, log))
}

/// Which rule of the inverse map applies to `t`. The labels coincide with
/// [`phi_case`] of the preimage.
pub fn phi_inverse_case(t: &PlantedTree) -> PhiCase {
    let q = t.body();
    let Some(ix) = rightmost_level3_parent(q) else {
        return PhiCase::Base;
    };
    if q.children()[ix].children().len() > 1 {
        PhiCase::Case1
    } else if q.children()[..ix].iter().any(|c| !c.is_leaf()) {
        PhiCase::Case2
    } else {
        PhiCase::Case3
    }
}

fn phi_inverse_rec(
    t: &PlantedTree,
    depth: usize,
    trace: &mut Option<&mut Vec<PhiStep>>,
) -> Result<PlantedTree, BijectionError> {
    if depth > MAX_DEPTH {
        return Err(BijectionError::TooDeep);
    }
    let n = t.edge_count();
    let case = phi_inverse_case(t);
    let q = t.body();
    let out = match (case, rightmost_level3_parent(q)) {
        (PhiCase::Base, _) | (_, None) => {
            if !t.is_bouquet() {
                return Err(BijectionError::NotInImage(format!(
                    "{} has no red edge but is not a bouquet",
                    t.to_path()
                )));
            }
            PlantedTree::path_tree(n)?
        }
        (case, Some(ix)) => {
            let x = &q.children()[ix];
            let y = x.children().last().expect("x is not a leaf");
            let mut parts: Vec<PlantedTree> = y
                .children()
                .iter()
                .map(|w| phi_inverse_rec(&plant(w), depth + 1, trace))
                .collect::<Result<_, _>>()?;
            let right = q.children().len() - ix - 1;
            match case {
                PhiCase::Case1 => {
                    let mut rest = t.clone();
                    rest.body_mut().children_mut()[ix].children_mut().pop();
                    parts.push(phi_inverse_rec(&rest, depth + 1, trace)?);
                }
                PhiCase::Case2 => {
                    let rest = PlantedTree::from_body(OrderedTree::with_children(
                        q.children()[..ix].to_vec(),
                    ));
                    parts.push(phi_inverse_rec(&rest, depth + 1, trace)?);
                    parts.push(PlantedTree::path_tree(right + 1)?);
                }
                PhiCase::Case3 => {
                    parts.push(PlantedTree::path_tree(ix + 1)?);
                    parts.push(PlantedTree::path_tree(right + 1)?);
                }
                PhiCase::Base => unreachable!(),
            }
            PlantedTree::from_body(OrderedTree::with_children(bodies(parts)))
        }
    };
    if out.edge_count() != n {
        return Err(BijectionError::NotInImage(format!(
            "edge count changed from {n} to {}",
            out.edge_count()
        )));
    }
    if let Some(log) = trace.as_deref_mut() {
        log.push(PhiStep {
            depth,
            case,
            input: t.to_path(),
            output: out.to_path(),
        });
    }
    Ok(out)
}

pub fn phi_inverse(t: &PlantedTree) -> Result<PlantedTree, BijectionError> {
    phi_inverse_rec(t, 0, &mut None)
}

pub fn phi_inverse_traced(t: &PlantedTree) -> Result<(PlantedTree, Vec<PhiStep>), BijectionError> {
    let mut log = Vec::new();
    let out = phi_inverse_rec(t, 0, &mut Some(&mut log))?;
    Ok((out, log))
}

/// Applies `phi` to every planted component of `t` and merges the images in
/// the same order.
pub fn big_phi(t: &OrderedTree) -> Result<OrderedTree, BijectionError> {
    let parts = t
        .decompose_planted()
        .iter()
        .map(phi)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OrderedTree::merge_planted(parts))
}

pub fn big_phi_inverse(t: &OrderedTree) -> Result<OrderedTree, BijectionError> {
    let parts = t
        .decompose_planted()
        .iter()
        .map(phi_inverse)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OrderedTree::merge_planted(parts))
}

/// The path bijection: a path with `k` exterior pairs maps to one with `k` up
/// steps at heights divisible by three.
pub fn pi(p: &DyckPath) -> Result<DyckPath, BijectionError> {
    Ok(big_phi(&OrderedTree::from_path(p))?.to_path())
}

pub fn pi_inverse(p: &DyckPath) -> Result<DyckPath, BijectionError> {
    Ok(big_phi_inverse(&OrderedTree::from_path(p))?.to_path())
}

/// Traces of `phi` for each block of `p`, in block order.
pub fn pi_traced(p: &DyckPath) -> Result<(DyckPath, Vec<Vec<PhiStep>>), BijectionError> {
    let mut traces = Vec::new();
    let mut parts = Vec::new();
    for comp in OrderedTree::from_path(p).decompose_planted() {
        let (img, log) = phi_traced(&comp)?;
        parts.push(img);
        traces.push(log);
    }
    Ok((OrderedTree::merge_planted(parts).to_path(), traces))
}

pub fn pi_inverse_traced(p: &DyckPath) -> Result<(DyckPath, Vec<Vec<PhiStep>>), BijectionError> {
    let mut traces = Vec::new();
    let mut parts = Vec::new();
    for comp in OrderedTree::from_path(p).decompose_planted() {
        let (img, log) = phi_inverse_traced(&comp)?;
        parts.push(img);
        traces.push(log);
    }
    Ok((OrderedTree::merge_planted(parts).to_path(), traces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::ResidueSet;

    fn planted(w: &str) -> PlantedTree {
        PlantedTree::from_path(&DyckPath::parse(w).unwrap()).unwrap()
    }

    fn path(w: &str) -> DyckPath {
        DyckPath::parse(w).unwrap()
    }

    #[test]
    fn base_case() {
        for n in 1..=8 {
            let chain = PlantedTree::path_tree(n).unwrap();
            assert_eq!(phi(&chain).unwrap(), PlantedTree::bouquet(n).unwrap());
            assert_eq!(phi_case(&chain), PhiCase::Base);
            assert_eq!(
                phi_inverse(&PlantedTree::bouquet(n).unwrap()).unwrap(),
                chain
            );
        }
        let two = PlantedTree::path_tree(2).unwrap();
        assert_eq!(phi(&two).unwrap(), two);
    }

    #[test]
    fn case_labels() {
        // v has children [subtree with two leaves, leaf]
        assert_eq!(phi_case(&planted("UUUDUDDUDD")), PhiCase::Case2);
        // v has two single-edge children
        assert_eq!(phi_case(&planted("UUDUDD")), PhiCase::Case3);
        // v has a single child carrying two leaves
        assert_eq!(phi_case(&planted("UUUDUDDD")), PhiCase::Case1);
    }

    // Planted tree with children c, d (leaves) and e of v, where e carries a
    // leaf and a 2-chain; its image has edges xz, xy at level 3.
    const FIRST_EXAMPLE: &str = "UUDUDUUDUUDDDD";
    // Children c (leaf), d (two leaves) and e (2-chain) of v.
    const SECOND_EXAMPLE: &str = "UUDUUDUDDUUDDD";

    #[test]
    fn worked_examples() {
        let t = planted(FIRST_EXAMPLE);
        assert_eq!(t.exterior_edge_count(), 2);
        assert_eq!(phi_case(&t), PhiCase::Case1);
        let img = phi(&t).unwrap();
        assert_eq!(img.to_path(), path("UUUDUUDUDDDUDD"));
        assert_eq!(img.red_edge_count(), 2);

        let t = planted(SECOND_EXAMPLE);
        assert_eq!(t.exterior_edge_count(), 2);
        assert_eq!(phi_case(&t), PhiCase::Case2);
        let img = phi(&t).unwrap();
        assert_eq!(img.to_path(), path("UUUDDUUUDDDUDD"));
        assert_eq!(img.red_edge_count(), 2);

        // v carries the two trees above, then a 2-chain and a 3-chain
        let third = format!("U{FIRST_EXAMPLE}{SECOND_EXAMPLE}UUDDUUUDDDD");
        let t = planted(&third);
        assert_eq!(t.edge_count(), 20);
        assert_eq!(phi_case(&t), PhiCase::Case3);
        let img = phi(&t).unwrap();
        assert_eq!(img.red_edge_count(), 5);
        let level3: Vec<_> = img
            .to_tree()
            .edges()
            .into_iter()
            .filter(|e| e.level == 3)
            .collect();
        assert_eq!(level3.len(), 1);
        assert_eq!(phi_inverse(&img).unwrap(), t);
    }

    #[test]
    fn two_block_example() {
        let p = path(&format!("{FIRST_EXAMPLE}{SECOND_EXAMPLE}"));
        assert_eq!(p.semilength(), 14);
        assert_eq!(p.blocks().len(), 2);
        assert_eq!(p.exterior_pairs(), 4);
        let img = big_phi(&OrderedTree::from_path(&p)).unwrap();
        assert_eq!(img.red_edge_count(), 4);
        let r0 = ResidueSet::new(3, &[0]).unwrap();
        assert_eq!(pi(&p).unwrap().up_steps_at_residue(&r0), 4);
        assert_eq!(pi_inverse(&pi(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn pi_small() {
        assert_eq!(pi(&path("UUDD")).unwrap(), path("UUDD"));
        assert_eq!(pi(&path("UUUDDD")).unwrap(), path("UUDUDD"));
        assert_eq!(pi(&DyckPath::empty()).unwrap(), DyckPath::empty());
        assert_eq!(big_phi(&OrderedTree::leaf()).unwrap(), OrderedTree::leaf());
    }

    #[test]
    fn traces_record_cases() {
        let (img, log) = phi_traced(&planted(FIRST_EXAMPLE)).unwrap();
        assert_eq!(img, phi(&planted(FIRST_EXAMPLE)).unwrap());
        let top = log.last().unwrap();
        assert_eq!((top.depth, top.case), (0, PhiCase::Case1));
        let (back, inv_log) = phi_inverse_traced(&img).unwrap();
        assert_eq!(back, planted(FIRST_EXAMPLE));
        assert_eq!(inv_log.last().unwrap().case, PhiCase::Case1);
    }
}
