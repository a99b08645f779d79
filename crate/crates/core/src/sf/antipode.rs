//! Brute-force antipode by Takeuchi's alternating sum over set compositions.
//!
//! The engine walks compositions block by block, so the restriction of the
//! contracted family to each new block and the running join are shared by
//! every composition with the same prefix. Each leaf is exactly one term
//! `(-1)^{|Φ|} μ_Φ Δ_Φ(F)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::compose::enumerate_compositions;
use super::family::{join_masks, GroundedSetFamily};
use super::ground::{submasks, SubsetMask};
use super::sum::FormalSum;
use crate::error::Result;
use crate::options::Options;

type Tally = HashMap<Vec<SubsetMask>, i128>;

pub fn takeuchi_antipode(family: &GroundedSetFamily) -> Result<FormalSum> {
    takeuchi_antipode_with(family, &Options::default())
}

pub fn takeuchi_antipode_with(family: &GroundedSetFamily, opts: &Options) -> Result<FormalSum> {
    opts.check_ground(family.ground().len())?;
    let full = family.ground().full_mask();
    let members = family.members();
    let tally = if opts.threads > 1 && full != 0 {
        opts.install(|| {
            let firsts: Vec<SubsetMask> = submasks(full).skip(1).collect();
            firsts
                .into_par_iter()
                .map(|first| {
                    let mut t = Tally::new();
                    step(members, full, &[0], first, -1, &mut t);
                    t
                })
                .reduce(Tally::new, merge)
        })
    } else {
        let mut t = Tally::new();
        walk(members, full, vec![0], 1, &mut t);
        t
    };
    let mut out = FormalSum::zero(family.ground().clone());
    for (masks, c) in tally {
        if c != 0 {
            out.add_term_unchecked(
                GroundedSetFamily::from_masks_unchecked(family.ground().clone(), masks),
                BigInt::from(c),
            );
        }
    }
    Ok(out)
}

fn merge(mut a: Tally, b: Tally) -> Tally {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn walk(current: &[SubsetMask], remaining: SubsetMask, joined: Vec<SubsetMask>, sign: i128, tally: &mut Tally) {
    if remaining == 0 {
        *tally.entry(joined).or_insert(0) += sign;
        return;
    }
    for block in submasks(remaining).skip(1) {
        step(current, remaining, &joined, block, -sign, tally);
    }
}

fn step(
    current: &[SubsetMask],
    remaining: SubsetMask,
    joined: &[SubsetMask],
    block: SubsetMask,
    sign: i128,
    tally: &mut Tally,
) {
    let mut part: Vec<SubsetMask> = current.iter().map(|&m| m & block).collect();
    part.sort_unstable();
    part.dedup();
    let next_joined = join_masks(joined, &part);
    let next: Vec<SubsetMask> = current.iter().copied().filter(|&m| m & block == 0).collect();
    walk(&next, remaining & !block, next_joined, sign, tally);
}

/// Takeuchi's formula evaluated literally: one `mu_delta` per composition
/// from [`enumerate_compositions`]. Slow; kept as a cross-check.
pub fn takeuchi_antipode_by_enumeration(family: &GroundedSetFamily) -> Result<FormalSum> {
    let mut out = FormalSum::zero(family.ground().clone());
    for phi in enumerate_compositions(family.ground()) {
        let sign = if phi.len() % 2 == 0 { 1 } else { -1 };
        out.add_term_unchecked(family.mu_delta(&phi)?, BigInt::from(sign));
    }
    Ok(out)
}

/// Linear extension of the Takeuchi antipode to formal sums.
pub fn takeuchi_antipode_linear(sum: &FormalSum, opts: &Options) -> Result<FormalSum> {
    sum.map_linear(sum.ground().clone(), |f| takeuchi_antipode_with(f, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sf::ground::GroundSet;
    use num_traits::One;

    #[test]
    fn empty_ground_is_fixed() {
        let unit = GroundedSetFamily::trivial(GroundSet::empty());
        let s = takeuchi_antipode(&unit).unwrap();
        assert_eq!(s, FormalSum::from_family(unit));
    }

    #[test]
    fn boolean_pair_is_fixed() {
        let b = GroundedSetFamily::boolean(GroundSet::range(2));
        let s = takeuchi_antipode(&b).unwrap();
        assert_eq!(s, FormalSum::from_family(b));
    }

    #[test]
    fn single_point_negates() {
        let p = GroundedSetFamily::boolean(GroundSet::range(1));
        let s = takeuchi_antipode(&p).unwrap();
        assert_eq!(s, FormalSum::from_term(p, -BigInt::one()));
    }

    #[test]
    fn engine_matches_literal_enumeration() {
        let f = GroundedSetFamily::from_masks(GroundSet::range(4), [0, 1, 3, 4, 12, 15], false).unwrap();
        assert_eq!(
            takeuchi_antipode(&f).unwrap(),
            takeuchi_antipode_by_enumeration(&f).unwrap()
        );
    }

    #[test]
    fn threads_do_not_change_result() {
        let f = GroundedSetFamily::from_masks(GroundSet::range(5), [0, 1, 2, 3, 7, 16, 24, 31], false).unwrap();
        let one = takeuchi_antipode(&f).unwrap();
        let four = takeuchi_antipode_with(&f, &Options::default().with_threads(4)).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn cap_enforced() {
        let f = GroundedSetFamily::trivial(GroundSet::range(5));
        let opts = Options::default().with_max_ground(4);
        assert!(matches!(
            takeuchi_antipode_with(&f, &opts),
            Err(crate::Error::GroundTooLarge { size: 5, cap: 4 })
        ));
    }
}
