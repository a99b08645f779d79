//! Cancellation-free antipodes of lattices of order ideals.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::fracture::{acyc_within, good_within, Fracturing};
use super::Poset;
use crate::error::{Error, Result};
use crate::options::Options;
use crate::sf::ground::{bits, expand, submasks, SubsetMask};
use crate::sf::{FormalSum, GroundedSetFamily};

fn parity(k: usize) -> BigInt {
    BigInt::from(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// `S(J(P)) = Σ_{Q good} (-1)^{c(Q)+|P∖Q|} (J(Q), I)`.
pub fn antipode_loi(p: &Poset) -> Result<FormalSum> {
    antipode_loi_with(p, &Options::default())
}

pub fn antipode_loi_with(p: &Poset, opts: &Options) -> Result<FormalSum> {
    opts.check_ground(p.len())?;
    let good = good_within(p, p.full_mask());
    Ok(collect_terms(p, good, opts))
}

fn collect_terms(p: &Poset, fracturings: Vec<Fracturing>, opts: &Options) -> FormalSum {
    let term = |q: &Fracturing| (q.ideals(p), BigInt::from(q.sign(p)));
    let terms: Vec<(GroundedSetFamily, BigInt)> = if opts.threads > 1 {
        opts.install(|| fracturings.par_iter().map(term).collect())
    } else {
        fracturings.iter().map(term).collect()
    };
    let mut out = FormalSum::zero(p.ground().clone());
    for (f, c) in terms {
        out.add_term_unchecked(f, c);
    }
    out
}

/// The dual-poset formula: `Σ (-1)^{c(Q)+|P∖Q|} J(Q)` over acyclic
/// fracturings of `P` containing `Max(P)`. Dualizing every term (see
/// [`dualize_loi`]) gives `S(J(P*))`.
pub fn antipode_dual(p: &Poset) -> Result<FormalSum> {
    antipode_dual_with(p, &Options::default())
}

pub fn antipode_dual_with(p: &Poset, opts: &Options) -> Result<FormalSum> {
    opts.check_ground(p.len())?;
    let max = p.max();
    let qs = acyc_within(p, p.full_mask())
        .into_iter()
        .filter(|q| max & !q.carrier() == 0)
        .collect();
    Ok(collect_terms(p, qs, opts))
}

/// `J(P) ↦ J(P*)` on the same ground set, phantoms kept.
pub fn dualize_loi(family: &GroundedSetFamily) -> Result<GroundedSetFamily> {
    let (poset, support) = Poset::from_order_ideals(family)?;
    let members = poset
        .dual()
        .order_ideals()
        .members()
        .iter()
        .map(|&m| expand(m, support))
        .collect();
    Ok(GroundedSetFamily::from_masks_unchecked(family.ground().clone(), members))
}

/// Antipode of `J(P_lo ⊕ P_hi)` assembled from pure fracturings
/// (`S(J(P_lo))` joined with the signed acyclic fracturings of `P_hi`) and
/// mixed fracturings with one hybrid component `H`.
pub fn antipode_ordinal_sum(lo: &Poset, hi: &Poset) -> Result<FormalSum> {
    antipode_ordinal_sum_with(lo, hi, &Options::default())
}

pub fn antipode_ordinal_sum_with(lo: &Poset, hi: &Poset, opts: &Options) -> Result<FormalSum> {
    let p = lo.ordinal_sum(hi)?;
    opts.check_ground(p.len())?;
    if lo.is_empty() {
        return antipode_loi_with(hi, opts);
    }
    let lo_mask = p.mask_of_ground(lo.ground())?;
    let hi_mask = p.mask_of_ground(hi.ground())?;

    let acyc_hi = collect_terms(hi, acyc_within(hi, hi.full_mask()), opts);
    let mut out = antipode_loi_with(lo, opts)?.join(&acyc_hi)?;

    let n = p.len();
    for h in submasks(p.full_mask()) {
        if h & lo_mask == 0 || h & hi_mask == 0 {
            continue;
        }
        let lo_rest = lo_mask & !p.filter_of(h);
        let hi_rest = hi_mask & !p.ideal_of(h);
        let highs = acyc_within(&p, hi_rest);
        for q_lo in good_within(&p, lo_rest) {
            for q_hi in &highs {
                let size = q_lo.carrier().count_ones() + q_hi.carrier().count_ones() + h.count_ones();
                let exponent = q_lo.components() + q_hi.components() + 1 + n - size as usize;
                let mut blocks = q_lo.blocks().to_vec();
                blocks.push(h);
                blocks.extend_from_slice(q_hi.blocks());
                out.add_term_unchecked(p.ideals_of_sum(&blocks), parity(exponent));
            }
        }
    }
    Ok(out)
}

/// Antipode of a complete ranked poset (an ordinal sum of antichains) by
/// peeling off the top rank: the upper part has every subset as an acyclic
/// fracturing, and the lower part is handled recursively.
pub fn antipode_complete_ranked(p: &Poset) -> Result<FormalSum> {
    antipode_complete_ranked_with(p, &Options::default())
}

pub fn antipode_complete_ranked_with(p: &Poset, opts: &Options) -> Result<FormalSum> {
    opts.check_ground(p.len())?;
    let hi_mask = p.max();
    let lo_mask = p.full_mask() & !hi_mask;
    if lo_mask == 0 {
        // an antichain: the only good fracturing is the antichain itself
        return Ok(FormalSum::from_term(p.order_ideals(), parity(p.len())));
    }
    let complete = bits(hi_mask).all(|y| p.below(y) == lo_mask);
    if !complete {
        return Err(Error::WrongClass("a complete ranked poset"));
    }
    let lo = p.restrict(lo_mask);
    let hi = p.restrict(hi_mask);

    let top = hi.len();
    let mut boolean_sum = FormalSum::zero(hi.ground().clone());
    for s in submasks(hi.full_mask()) {
        let family = GroundedSetFamily::from_masks_unchecked(hi.ground().clone(), submasks(s).collect());
        boolean_sum.add_term_unchecked(family, parity(top));
    }
    let mut out = antipode_complete_ranked_with(&lo, opts)?.join(&boolean_sum)?;

    for h in submasks(p.full_mask()) {
        if h & lo_mask == 0 || h & hi_mask == 0 {
            continue;
        }
        let lo_rest = lo_mask & !p.filter_of(h);
        let hi_rest = hi_mask & !p.ideal_of(h);
        let hi_outside_h = (hi_mask & !h).count_ones() as usize;
        for q_lo in good_within(p, lo_rest) {
            let lo_missing = (lo_mask & !h & !q_lo.carrier()).count_ones() as usize;
            let exponent = q_lo.components() + 1 + lo_missing + hi_outside_h;
            for q_hi in submasks(hi_rest) {
                let mut blocks: Vec<SubsetMask> = q_lo.blocks().to_vec();
                blocks.push(h);
                blocks.extend(bits(q_hi).map(|i| 1u64 << i));
                out.add_term_unchecked(p.ideals_of_sum(&blocks), parity(exponent));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sf::ground::GroundSet;
    use crate::sf::takeuchi_antipode;

    fn vee() -> Poset {
        Poset::new(GroundSet::range(3), [(1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn antichain_antipode() {
        for n in 0..5 {
            let a = Poset::antichain(GroundSet::range(n));
            let s = antipode_loi(&a).unwrap();
            assert_eq!(s, FormalSum::from_term(a.order_ideals(), parity(n)));
        }
    }

    #[test]
    fn vee_matches_takeuchi() {
        let p = vee();
        assert_eq!(antipode_loi(&p).unwrap(), takeuchi_antipode(&p.order_ideals()).unwrap());
    }

    #[test]
    fn chain_two_by_hand() {
        // S(J(C2)) = -J(C2) + J(A2) + J({1}) with phantom 2
        let c = Poset::chain(2);
        let s = antipode_loi(&c).unwrap();
        let g = GroundSet::range(2);
        let mut expected = FormalSum::zero(g.clone());
        expected.add_term(c.order_ideals(), BigInt::from(-1)).unwrap();
        expected.add_term(GroundedSetFamily::boolean(g.clone()), BigInt::from(1)).unwrap();
        expected
            .add_term(GroundedSetFamily::from_masks(g, [0, 1], false).unwrap(), BigInt::from(1))
            .unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn ordinal_sum_of_points_is_chain() {
        let lo = Poset::antichain(GroundSet::new([1]).unwrap());
        let hi = Poset::antichain(GroundSet::new([2]).unwrap());
        assert_eq!(
            antipode_ordinal_sum(&lo, &hi).unwrap(),
            antipode_loi(&Poset::chain(2)).unwrap()
        );
    }

    #[test]
    fn ordinal_sum_with_empty_top() {
        let lo = vee();
        let hi = Poset::antichain(GroundSet::empty());
        assert_eq!(antipode_ordinal_sum(&lo, &hi).unwrap(), antipode_loi(&lo).unwrap());
    }

    #[test]
    fn complete_ranked_two_by_two() {
        let lo = Poset::antichain(GroundSet::new([1, 2]).unwrap());
        let hi = Poset::antichain(GroundSet::new([3, 4]).unwrap());
        let p = lo.ordinal_sum(&hi).unwrap();
        let oracle = takeuchi_antipode(&p.order_ideals()).unwrap();
        assert_eq!(antipode_complete_ranked(&p).unwrap(), oracle);
        assert_eq!(antipode_ordinal_sum(&lo, &hi).unwrap(), oracle);
    }

    #[test]
    fn complete_ranked_rejects_others() {
        let z = Poset::new(GroundSet::range(4), [(1, 3), (2, 3), (2, 4)]).unwrap();
        assert_eq!(
            antipode_complete_ranked(&z),
            Err(Error::WrongClass("a complete ranked poset"))
        );
    }

    #[test]
    fn dual_formula_on_vee() {
        let p = vee();
        let dualized = antipode_dual(&p)
            .unwrap()
            .map_basis(p.ground().clone(), dualize_loi)
            .unwrap();
        assert_eq!(dualized, antipode_loi(&p.dual()).unwrap());
    }

    #[test]
    fn zigzag_duality_is_not_a_hopf_map() {
        let z = Poset::new(GroundSet::range(4), [(1, 3), (2, 3), (2, 4)]).unwrap();
        let a = 0b0010;
        let left = dualize_loi(&z.order_ideals().contract(a).unwrap()).unwrap();
        let right = dualize_loi(&z.order_ideals()).unwrap().contract(a).unwrap();
        // J({1}) with phantoms 3,4
        let g = GroundSet::new([1, 3, 4]).unwrap();
        assert_eq!(left, GroundedSetFamily::from_masks(g.clone(), [0, 1], false).unwrap());
        // J({3<1, 4}) on {1,3,4}
        let expected = Poset::new(g, [(3, 1)]).unwrap().order_ideals();
        assert_eq!(right, expected);
        assert_ne!(left, right);
    }
}
