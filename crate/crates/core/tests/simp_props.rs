use hopf_setfam::sf::ground::submasks;
use hopf_setfam::sf::{enumerate_partitions, takeuchi_antipode};
use hopf_setfam::simp::{
    antipode_simp, antipode_simp_grouped, antipode_skeleton, complete_colorful, decomp, fundamental_inflator,
    fundamental_inflators, interval_alternating_sum, join_decomposition, join_length, skeleton,
    support_system_simp, SimplicialComplex,
};
use hopf_setfam::{GroundSet, Options, SetPartition, SubsetMask};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every complex on `{1..n}`, one per facet antichain.
fn all_complexes(n: usize) -> Vec<SimplicialComplex> {
    let g = GroundSet::range(n);
    let subsets: Vec<SubsetMask> = submasks(g.full_mask()).collect();
    let mut out = Vec::new();
    // antichains by brute force over sets of subsets; fine up to n = 4
    fn grow(
        subsets: &[SubsetMask],
        start: usize,
        chosen: &mut Vec<SubsetMask>,
        g: &GroundSet,
        out: &mut Vec<SimplicialComplex>,
    ) {
        out.push(SimplicialComplex::from_masks(g.clone(), chosen.iter().copied()).unwrap());
        for i in start..subsets.len() {
            let s = subsets[i];
            if s == 0 || chosen.iter().any(|&c| c & s == s || c & s == c) {
                continue;
            }
            chosen.push(s);
            grow(subsets, i + 1, chosen, g, out);
            chosen.pop();
        }
    }
    grow(&subsets, 0, &mut Vec::new(), &g, &mut out);
    out
}

fn random_complex(n: usize, rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let k = rng.gen_range(1..=4);
    let faces: Vec<SubsetMask> = (0..k).map(|_| rng.gen_range(0..1u64 << n)).collect();
    SimplicialComplex::from_masks(GroundSet::range(n), faces).unwrap()
}

#[test]
fn antichain_counts() {
    // Dedekind numbers count antichains including the empty one; the empty
    // antichain and {∅} give the same complex
    let counts: Vec<usize> = (0..=4).map(|n| all_complexes(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 19, 167]);
}

#[test]
fn oracle_equivalence_small() {
    for n in 0..=4 {
        for x in all_complexes(n) {
            assert_eq!(antipode_simp(&x).unwrap(), takeuchi_antipode(&x.to_family()).unwrap(), "{x}");
        }
    }
}

#[test]
fn oracle_equivalence_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..12 {
        let n = rng.gen_range(5..=6);
        let x = random_complex(n, &mut rng);
        assert_eq!(antipode_simp(&x).unwrap(), takeuchi_antipode(&x.to_family()).unwrap(), "{x}");
    }
}

#[test]
fn decomp_is_cocommutative() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let x = random_complex(5, &mut rng);
        let f = x.to_family();
        for phi in enumerate_partitions(x.ground()).step_by(7) {
            let y = decomp(&x, &phi).unwrap().to_family();
            for order in phi.orderings() {
                assert_eq!(f.mu_delta(&order).unwrap(), y);
            }
        }
    }
}

fn interval_closed(supp: &[SetPartition], ground: &GroundSet) -> bool {
    let all: Vec<SetPartition> = enumerate_partitions(ground).collect();
    supp.iter().all(|lo| {
        supp.iter().filter(|hi| lo.refines(hi)).all(|hi| {
            all.iter()
                .filter(|z| lo.refines(z) && z.refines(hi))
                .all(|z| supp.contains(z))
        })
    })
}

#[test]
fn support_systems_are_meet_and_interval_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut complexes = all_complexes(4);
    complexes.extend((0..10).map(|_| random_complex(5, &mut rng)));
    for x in complexes {
        for term in antipode_simp_grouped(&x, &Options::default()).unwrap() {
            let supp = support_system_simp(&x, &term.complex).unwrap();
            assert!(!supp.is_empty());
            for a in &supp {
                for b in &supp {
                    assert!(supp.contains(&a.meet(b)));
                }
            }
            assert!(interval_closed(&supp, x.ground()));
            // the tracked meet is the unique minimum
            assert!(supp.contains(&term.inflator));
            assert!(supp.iter().all(|p| term.inflator.refines(p)));
        }
    }
}

#[test]
fn fundamental_inflator_is_canonical_join_decomposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..15 {
        let x = random_complex(5, &mut rng);
        for phi in enumerate_partitions(x.ground()).step_by(5) {
            let y = decomp(&x, &phi).unwrap();
            let psi = fundamental_inflator(&x, &y).unwrap();
            assert_eq!(psi, join_decomposition(&y), "{x} {y}");
            for &b in psi.blocks() {
                let xs: Vec<SubsetMask> = x.facets().iter().map(|&f| f & b).collect();
                let ys: Vec<SubsetMask> = y.facets().iter().map(|&f| f & b).collect();
                let xr = SimplicialComplex::from_masks(x.ground().clone(), xs).unwrap();
                let yr = SimplicialComplex::from_masks(x.ground().clone(), ys).unwrap();
                assert_eq!(xr, yr);
            }
        }
    }
}

#[test]
fn join_decomposition_matches_brute_force() {
    for n in 0..=4 {
        for x in all_complexes(n) {
            let supp = support_system_simp(&x, &x).unwrap();
            let meet = supp.iter().skip(1).fold(supp[0].clone(), |a, p| a.meet(p));
            assert_eq!(join_decomposition(&x), meet, "{x}");
        }
    }
}

#[test]
fn self_coefficient_sign() {
    let mut complexes = all_complexes(4);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    complexes.extend((0..15).map(|_| random_complex(5, &mut rng)));
    for x in complexes {
        let expected = BigInt::from(if join_length(&x).is_multiple_of(2) { 1 } else { -1 });
        assert_eq!(antipode_simp(&x).unwrap().coefficient(&x.to_family()), expected, "{x}");
    }
}

#[test]
fn skeleton_closed_form_matches_grouped_antipode() {
    for n in 1..=6 {
        for m in 1..=n {
            let sk = skeleton(m, GroundSet::range(n)).unwrap();
            assert_eq!(antipode_skeleton(m, n).unwrap(), antipode_simp(&sk).unwrap(), "m={m} n={n}");
        }
    }
}

#[test]
fn skeleton_fundamental_inflators() {
    for n in 1..=5 {
        for m in 1..n {
            let sk = skeleton(m, GroundSet::range(n)).unwrap();
            let expected: Vec<SetPartition> = enumerate_partitions(sk.ground())
                .filter(|p| p.blocks().iter().all(|b| b.count_ones() == 1 || b.count_ones() as usize > m))
                .collect();
            let fund = fundamental_inflators(&sk).unwrap();
            assert_eq!(fund.len(), expected.len());
            assert!(expected.iter().all(|p| fund.contains(p)));
            for p in &expected {
                let y = decomp(&sk, p).unwrap();
                assert_eq!(&fundamental_inflator(&sk, &y).unwrap(), p);
            }
        }
    }
}

#[test]
fn interval_sum_against_partition_lattice() {
    let fact = |n: usize| (1..=n).fold(BigInt::from(1), |a, k| a * k);
    for k in 1..=6 {
        for b in 1..=4 {
            let direct: BigInt = enumerate_partitions(&GroundSet::range(k))
                .map(|t| {
                    let v = fact(t.len() + b - 1);
                    if (k - t.len()) % 2 == 0 { v } else { -v }
                })
                .sum();
            assert_eq!(interval_alternating_sum(k, b), direct, "k={k} b={b}");
        }
    }
}

#[test]
fn colorful_inflators_are_monochromatic() {
    for sizes in [[2usize, 2], [2, 3]] {
        let mut next = 1;
        let parts: Vec<GroundSet> = sizes
            .iter()
            .map(|&s| {
                let g = GroundSet::new(next..next + s).unwrap();
                next += s;
                g
            })
            .collect();
        let x = complete_colorful(&parts).unwrap();
        let colors: Vec<SubsetMask> = parts.iter().map(|p| x.ground().mask_of(p.labels()).unwrap()).collect();
        let fund = fundamental_inflators(&x).unwrap();
        for p in enumerate_partitions(x.ground()) {
            let mono = p.blocks().iter().all(|&b| colors.iter().any(|&c| b & c == b));
            assert_eq!(fund.contains(&p), mono, "{p:?}");
        }
    }
}
