use proptest::prelude::*;

use dyckpath::bijection::{pi, pi_inverse};
use dyckpath::dyck::{distribution, DistributionTable, EnumerationCap, Statistic};
use dyckpath::omega::{classify_fjk, decompose_standard, omega, psi, FjkClass, StandardForm};
use dyckpath::series::BivariateSeries;
use dyckpath::{DyckPath, OrderedTree, ResidueSet, Step};

/// Turns a stream of coin flips into a Dyck path of semilength `flips.len() / 2`,
/// forcing steps whenever the walk would leave the valid region.
fn path_from_flips(flips: &[bool]) -> DyckPath {
    let n = flips.len() / 2;
    let (mut ups_left, mut alt) = (n, 0usize);
    let mut steps = Vec::with_capacity(2 * n);
    for &up in &flips[..2 * n] {
        let step = if ups_left == 0 {
            Step::Down
        } else if alt == 0 || up {
            Step::Up
        } else {
            Step::Down
        };
        match step {
            Step::Up => {
                ups_left -= 1;
                alt += 1;
            }
            Step::Down => alt -= 1,
        }
        steps.push(step);
    }
    DyckPath::from_steps(steps).expect("walk stays valid")
}

fn dyck_path(max_n: usize) -> impl Strategy<Value = DyckPath> {
    prop::collection::vec(any::<bool>(), 0..=2 * max_n).prop_map(|f| path_from_flips(&f))
}

fn series(order: usize) -> impl Strategy<Value = BivariateSeries> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, 0..4), 0..=order + 1)
        .prop_map(move |rows| BivariateSeries::from_rows(order, rows))
}

fn unit_series(order: usize) -> impl Strategy<Value = BivariateSeries> {
    (series(order), any::<bool>()).prop_map(move |(s, neg)| {
        let mut rows = s.rows().to_vec();
        rows[0] = vec![if neg { -1 } else { 1 }];
        BivariateSeries::from_rows(order, rows)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_render_round_trip(p in dyck_path(40)) {
        prop_assert_eq!(DyckPath::parse(&p.render()).unwrap(), p.clone());
        let parens: String = p.render().chars().map(|c| if c == 'U' { '(' } else { ')' }).collect();
        prop_assert_eq!(DyckPath::parse(&parens).unwrap(), p);
    }

    #[test]
    fn preorder_round_trip(p in dyck_path(40)) {
        let t = OrderedTree::from_path(&p);
        prop_assert_eq!(t.to_path(), p.clone());
        prop_assert_eq!(t.exterior_edges().len(), p.exterior_pairs());
    }

    #[test]
    fn pi_transports_exterior_pairs(p in dyck_path(24)) {
        let q = pi(&p).unwrap();
        let zero = ResidueSet::singleton(3, 0).unwrap();
        prop_assert_eq!(q.semilength(), p.semilength());
        prop_assert_eq!(q.up_steps_at_residue(&zero), p.exterior_pairs());
        prop_assert_eq!(pi_inverse(&q).unwrap(), p);
    }

    #[test]
    fn omega_involution_and_classes(p in dyck_path(30), m in 2usize..=6) {
        let q = omega(&p, m).unwrap();
        prop_assert_eq!(omega(&q, m).unwrap(), p.clone());
        if p.height() + 1 >= m {
            let FjkClass { j, k } = classify_fjk(&p, m).unwrap();
            prop_assert_eq!(classify_fjk(&q, m).unwrap(), FjkClass { j: k + 1, k: j - 1 });
            prop_assert_eq!(classify_fjk(&psi(&p, m).unwrap(), m).unwrap(), FjkClass { j: k + 1, k: j - 1 });
            let form = decompose_standard(&p, m).unwrap();
            for seg in &form.segments {
                prop_assert_eq!(seg.residue_census(m), seg.kind.expected_census());
            }
            let back = StandardForm::from_json(m, &form.to_json()).unwrap();
            prop_assert_eq!(back.reassemble(), p);
        }
    }

    #[test]
    fn division_undoes_multiplication(a in series(7), b in unit_series(7)) {
        let product = a.checked_mul(&b).unwrap();
        prop_assert_eq!(product.checked_div(&b).unwrap(), a);
    }

    #[test]
    fn ring_laws(a in series(6), b in series(6), c in series(6)) {
        prop_assert_eq!(a.checked_add(&b).unwrap().checked_sub(&b).unwrap(), a.clone());
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        let left = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let right = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn series_json_round_trip(a in series(9)) {
        prop_assert_eq!(BivariateSeries::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn table_json_round_trip(n in 0usize..=7, m in 2usize..=5, bits in 1u64..32) {
        let residues: Vec<usize> = (0..m).filter(|i| bits >> i & 1 == 1).collect();
        prop_assume!(!residues.is_empty());
        let st = Statistic::UpResidue(ResidueSet::new(m, &residues).unwrap());
        let t = distribution(n, st, EnumerationCap::default()).unwrap();
        prop_assert_eq!(DistributionTable::from_json(&t.to_json()).unwrap(), t);
    }
}
