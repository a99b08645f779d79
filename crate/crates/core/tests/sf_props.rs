use std::collections::BTreeSet;

use hopf_setfam::sf::classify::{is_accessible, is_intersection_closed, is_simplicial, is_union_closed};
use hopf_setfam::sf::{enumerate_compositions, enumerate_partitions, takeuchi_antipode, takeuchi_antipode_linear};
use hopf_setfam::{FormalSum, GroundSet, GroundedSetFamily, Label, Options, SetComposition, SubsetMask};
use num_bigint::BigInt;
use proptest::prelude::*;

fn family_on(labels: Vec<usize>, picks: Vec<SubsetMask>) -> GroundedSetFamily {
    let ground = GroundSet::new(labels).unwrap();
    let full = ground.full_mask();
    GroundedSetFamily::from_masks(ground, picks.into_iter().map(|m| m & full), true).unwrap()
}

fn family(max: usize) -> impl Strategy<Value = GroundedSetFamily> {
    (0..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<u64>(), 0..12).prop_map(move |picks| family_on((1..=n).collect(), picks))
    })
}

/// Two families on disjoint grounds `{1..a}` and `{11..10+b}`.
fn disjoint_pair(max: usize) -> impl Strategy<Value = (GroundedSetFamily, GroundedSetFamily)> {
    (0..=max, 0..=max).prop_flat_map(|(a, b)| {
        (prop::collection::vec(any::<u64>(), 0..8), prop::collection::vec(any::<u64>(), 0..8)).prop_map(
            move |(x, y)| (family_on((1..=a).collect(), x), family_on((11..=10 + b).collect(), y)),
        )
    })
}

/// A random composition of `full`, from a block index per element.
fn composition_from(full: SubsetMask, seeds: &[u8]) -> SetComposition {
    let mut blocks = vec![0u64; 8];
    for (i, s) in seeds.iter().enumerate() {
        if full >> i & 1 == 1 {
            blocks[*s as usize % 8] |= 1 << i;
        }
    }
    SetComposition::new(blocks.into_iter().filter(|&b| b != 0).collect()).unwrap()
}

fn label_members(f: &GroundedSetFamily) -> (BTreeSet<Label>, BTreeSet<BTreeSet<Label>>) {
    let ground = f.ground().labels().iter().cloned().collect();
    let members = f.member_labels().into_iter().map(|m| m.into_iter().collect()).collect();
    (ground, members)
}

fn flags(f: &GroundedSetFamily) -> [bool; 4] {
    [is_accessible(f), is_union_closed(f), is_intersection_closed(f), is_simplicial(f)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn outputs_stay_grounded(f in family(8), s in any::<u64>(), seeds in prop::collection::vec(any::<u8>(), 8)) {
        let s = s & f.ground().full_mask();
        prop_assert!(f.restrict(s).unwrap().contains(0));
        prop_assert!(f.contract(s).unwrap().contains(0));
        let other = GroundedSetFamily::boolean(GroundSet::new(["x"]).unwrap());
        prop_assert!(f.join(&other).unwrap().contains(0));
        let phi = composition_from(f.ground().full_mask(), &seeds);
        for part in f.iterated_coproduct(&phi).unwrap() {
            prop_assert!(part.contains(0));
        }
    }

    #[test]
    fn product_and_coproduct_commute((f1, f2) in disjoint_pair(4), s in any::<u64>()) {
        let joined = f1.join(&f2).unwrap();
        let s = s & joined.ground().full_mask();
        let g = joined.ground();
        let s1 = s & f1.ground().translate(f1.ground().full_mask(), g).unwrap();
        let s2 = s & !s1;
        let t1 = f1.ground().mask_of(g.labels_of(s1).iter()).unwrap();
        let t2 = f2.ground().mask_of(g.labels_of(s2).iter()).unwrap();
        let restricted = f1.restrict(t1).unwrap().join(&f2.restrict(t2).unwrap()).unwrap();
        let contracted = f1.contract(t1).unwrap().join(&f2.contract(t2).unwrap()).unwrap();
        prop_assert_eq!(label_members(&joined.restrict(s).unwrap()), label_members(&restricted));
        prop_assert_eq!(label_members(&joined.contract(s).unwrap()), label_members(&contracted));
    }

    #[test]
    fn iterated_coproduct_is_coassociative(f in family(6), seeds in prop::collection::vec(any::<u8>(), 8), at in any::<usize>()) {
        let phi = composition_from(f.ground().full_mask(), &seeds);
        prop_assume!(phi.len() >= 2);
        let i = at % (phi.len() - 1);
        let mut merged = phi.blocks().to_vec();
        let right = merged.remove(i + 1);
        let left = merged[i];
        merged[i] |= right;
        let psi = SetComposition::new(merged).unwrap();

        let fine = f.iterated_coproduct(&phi).unwrap();
        let coarse = f.iterated_coproduct(&psi).unwrap();
        let factor = &coarse[i];
        let g = f.ground();
        let split = SetComposition::new(vec![
            g.translate(left, factor.ground()).unwrap(),
            g.translate(right, factor.ground()).unwrap(),
        ])
        .unwrap();
        let refined = factor.iterated_coproduct(&split).unwrap();
        let mut rebuilt = coarse[..i].to_vec();
        rebuilt.extend(refined);
        rebuilt.extend_from_slice(&coarse[i + 1..]);
        prop_assert_eq!(rebuilt, fine);
    }

    #[test]
    fn product_is_commutative((f1, f2) in disjoint_pair(4)) {
        prop_assert_eq!(label_members(&f1.join(&f2).unwrap()), label_members(&f2.join(&f1).unwrap()));
    }

    #[test]
    fn antipode_is_an_involution(f in family(5)) {
        let once = takeuchi_antipode(&f).unwrap();
        let twice = takeuchi_antipode_linear(&once, &Options::default()).unwrap();
        prop_assert_eq!(twice, FormalSum::from_family(f));
    }

    #[test]
    fn phantom_flips_the_antipode(f in family(5)) {
        let wider = f.ground().with_label("p".into()).unwrap();
        let left = takeuchi_antipode(&f.add_phantom("p").unwrap()).unwrap();
        let right = takeuchi_antipode(&f).unwrap().map_basis(wider, |g| g.add_phantom("p")).unwrap().neg();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn classes_are_closed((f1, f2) in disjoint_pair(4), s in any::<u64>()) {
        let a = flags(&f1);
        let b = flags(&f2);
        let joined = flags(&f1.join(&f2).unwrap());
        let s = s & f1.ground().full_mask();
        let restricted = flags(&f1.restrict(s).unwrap());
        let contracted = flags(&f1.contract(s).unwrap());
        for k in 0..4 {
            if a[k] && b[k] {
                prop_assert!(joined[k], "join lost flag {}", k);
            }
            if a[k] {
                prop_assert!(restricted[k] && contracted[k], "flag {} lost under restriction/contraction", k);
            }
        }
    }
}

/// Ordered Bell numbers `a(n) = Σ_k C(n,k) a(n-k)` and Bell numbers
/// `B(n+1) = Σ_k C(n,k) B(k)`.
fn fubini_and_bell(max: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let choose = |n: usize, k: usize| -> BigInt { (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1)) };
    let mut fubini = vec![BigInt::from(1)];
    let mut bell = vec![BigInt::from(1)];
    for n in 1..=max {
        fubini.push((1..=n).map(|k| choose(n, k) * &fubini[n - k]).sum());
        bell.push((0..n).map(|k| choose(n - 1, k) * &bell[k]).sum());
    }
    (fubini, bell)
}

#[test]
fn enumeration_counts() {
    let (fubini, bell) = fubini_and_bell(7);
    for n in 0..=7 {
        let g = GroundSet::range(n);
        assert_eq!(BigInt::from(enumerate_compositions(&g).count()), fubini[n], "n={n}");
        assert_eq!(BigInt::from(enumerate_partitions(&g).count()), bell[n], "n={n}");
    }
    assert_eq!(fubini[7], BigInt::from(47293));
    assert_eq!(bell[7], BigInt::from(877));
}
