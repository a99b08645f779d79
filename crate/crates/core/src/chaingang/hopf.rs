use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;

use super::{binomial, CGBasis, CGSum, CGTensor};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::sf::ground::{bits, GroundSet};
use crate::sf::{FormalSum, GroundedSetFamily};

pub fn cg_product(x: &CGSum, y: &CGSum) -> CGSum {
    x * y
}

/// Coefficient of the unit.
pub fn cg_counit(x: &CGSum) -> BigRational {
    x.coefficient(&CGBasis::unit())
}

fn phantom_coproduct() -> CGTensor {
    let mut t = CGTensor::zero();
    t.add_term(CGBasis::unit(), CGBasis::phantom(), BigRational::one());
    t.add_term(CGBasis::phantom(), CGBasis::unit(), BigRational::one());
    t
}

/// `Δ(C_n) = 1⊗C_n + Σ_m Σ_j C(n-m,j) C_{j+1} ⊗ C_{m-1} F^{n-m-j}`.
fn chain_coproduct(n: usize) -> CGTensor {
    let mut t = CGTensor::zero();
    t.add_term(CGBasis::unit(), CGBasis::chain(n), BigRational::one());
    for m in 1..=n {
        for j in 0..=n - m {
            t.add_term(
                CGBasis::chain(j + 1),
                CGBasis::new(vec![m - 1], n - m - j),
                BigRational::from_integer(binomial(n - m, j)),
            );
        }
    }
    t
}

fn basis_coproduct(b: &CGBasis, chains: &mut HashMap<usize, CGTensor>) -> CGTensor {
    let mut out = CGTensor::one();
    for &part in b.lambda() {
        let d = chains.entry(part).or_insert_with(|| chain_coproduct(part));
        out = &out * d;
    }
    let f = phantom_coproduct();
    for _ in 0..b.phantoms() {
        out = &out * &f;
    }
    out
}

/// The coproduct, extended multiplicatively from the generators.
pub fn cg_coproduct(x: &CGSum) -> CGTensor {
    let mut chains = HashMap::new();
    let mut out = CGTensor::zero();
    for (b, c) in x.iter() {
        for (l, r, k) in basis_coproduct(b, &mut chains).iter() {
            out.add_term(l.clone(), r.clone(), c * k);
        }
    }
    out
}

/// `S(C_n) = -C_n - Σ S(x') x''` over the terms of `Δ(C_n)` with both
/// legs of positive degree.
fn chain_antipode(n: usize, memo: &mut HashMap<usize, CGSum>) -> CGSum {
    if let Some(s) = memo.get(&n) {
        return s.clone();
    }
    let mut out = -&CGSum::chain(n);
    for m in 1..=n {
        for j in 0..=n - m {
            let right = CGBasis::new(vec![m - 1], n - m - j);
            if right.is_unit() {
                continue;
            }
            let k = BigRational::from_integer(binomial(n - m, j));
            let left = chain_antipode(j + 1, memo);
            let term = &left * &CGSum::basis(right);
            out = &out - &term.scale(&k);
        }
    }
    memo.insert(n, out.clone());
    out
}

/// The antipode. On generators it comes from the graded recursion
/// (`S(F) = -F`), and it is extended multiplicatively.
pub fn cg_antipode(x: &CGSum) -> CGSum {
    let mut memo = HashMap::new();
    let minus_f = -&CGSum::phantom();
    let mut out = CGSum::zero();
    for (b, c) in x.iter() {
        let mut image = CGSum::one();
        for &part in b.lambda() {
            image = &image * &chain_antipode(part, &mut memo);
        }
        for _ in 0..b.phantoms() {
            image = &image * &minus_f;
        }
        out = &out + &image.scale(c);
    }
    out
}

/// Projection onto the phantom-free terms, i.e. modulo the ideal spanned by
/// basis elements with `p > 0`. The result reads in the `h`-basis of
/// symmetric functions via `C_λ ↦ h_λ`.
pub fn quotient_to_sym(x: &CGSum) -> CGSum {
    let mut out = CGSum::zero();
    for (b, c) in x.iter().filter(|(b, _)| b.phantoms() == 0) {
        out.add_term(b.clone(), c.clone());
    }
    out
}

/// `J(P)` for the chain gang with chain sizes `λ` and `p` phantoms, on
/// `{1, ..., degree}`: chains on consecutive labels, phantoms last.
pub fn chain_gang_family(b: &CGBasis) -> GroundedSetFamily {
    let n = b.degree();
    let ground = GroundSet::range(n);
    let mut covers = Vec::new();
    let mut start = 1;
    for &part in b.lambda() {
        covers.extend((start..start + part - 1).map(|i| (i, i + 1)));
        start += part;
    }
    let support = ground.mask_of(1..start).expect("labels in range");
    let chains = Poset::new(ground.subset(support), covers).expect("chains are acyclic");
    let members = chains
        .order_ideals()
        .members()
        .iter()
        .map(|&m| crate::sf::ground::expand(m, support))
        .collect::<Vec<_>>();
    GroundedSetFamily::from_masks(ground, members, false).expect("ideals contain the empty set")
}

/// The isomorphism type `(λ, p)` of a lattice of order ideals of a chain
/// gang.
pub fn cg_class_of(family: &GroundedSetFamily) -> Result<CGBasis> {
    let wrong = Error::WrongClass("a lattice of order ideals of a chain gang");
    let (poset, support) = Poset::from_order_ideals(family).map_err(|_| wrong.clone())?;
    let mut lambda = Vec::new();
    for comp in poset.components_within(poset.full_mask()) {
        let is_chain = bits(comp).all(|i| (poset.below(i) | poset.above(i) | 1 << i) & comp == comp);
        if !is_chain {
            return Err(wrong);
        }
        lambda.push(comp.count_ones() as usize);
    }
    let phantoms = family.ground().len() - support.count_ones() as usize;
    Ok(CGBasis::new(lambda, phantoms))
}

/// The image of a formal sum of chain-gang lattices under the orbit map.
pub fn cg_image(sum: &FormalSum) -> Result<CGSum> {
    let mut out = CGSum::zero();
    for (family, c) in sum.iter() {
        out.add_term(cg_class_of(family)?, BigRational::from_integer(c.clone()));
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaingang::int;

    fn b(lambda: &[usize], p: usize) -> CGBasis {
        CGBasis::new(lambda.to_vec(), p)
    }

    #[test]
    fn products() {
        assert_eq!(cg_product(&CGSum::chain(2), &CGSum::chain(1)), CGSum::basis(b(&[2, 1], 0)));
        assert_eq!(cg_product(&CGSum::phantom(), &CGSum::phantom()), CGSum::basis(b(&[], 2)));
        let x = CGSum::basis(b(&[3, 1], 2));
        assert_eq!(cg_product(&x, &CGSum::one()), x);
    }

    #[test]
    fn small_coproducts() {
        let d1 = cg_coproduct(&CGSum::chain(1));
        assert_eq!(d1.len(), 2);
        assert_eq!(d1.coefficient(&b(&[1], 0), &CGBasis::unit()), int(1));

        let d2 = cg_coproduct(&CGSum::chain(2));
        let mut expected = CGTensor::zero();
        expected.add_term(CGBasis::unit(), b(&[2], 0), int(1));
        expected.add_term(b(&[1], 0), b(&[1], 0), int(1));
        expected.add_term(b(&[2], 0), CGBasis::unit(), int(1));
        expected.add_term(b(&[1], 0), b(&[], 1), int(1));
        assert_eq!(d2, expected);

        let dff = cg_coproduct(&CGSum::basis(b(&[], 2)));
        assert_eq!(dff.coefficient(&b(&[], 1), &b(&[], 1)), int(2));
        assert_eq!(dff.len(), 3);
    }

    #[test]
    fn small_antipodes() {
        assert_eq!(cg_antipode(&CGSum::phantom()), -&CGSum::phantom());
        assert_eq!(cg_antipode(&CGSum::chain(1)), -&CGSum::chain(1));
        let mut expected = CGSum::basis(b(&[1, 1], 0));
        expected.add_term(b(&[2], 0), int(-1));
        expected.add_term(b(&[1], 1), int(1));
        assert_eq!(cg_antipode(&CGSum::chain(2)), expected);
        let mut sym = CGSum::basis(b(&[1, 1], 0));
        sym.add_term(b(&[2], 0), int(-1));
        assert_eq!(quotient_to_sym(&expected), sym);
    }

    #[test]
    fn family_round_trip() {
        for basis in [b(&[], 0), b(&[2, 1], 0), b(&[3], 2), b(&[1, 1, 1], 1)] {
            let f = chain_gang_family(&basis);
            assert_eq!(f.ground().len(), basis.degree());
            assert_eq!(cg_class_of(&f).unwrap(), basis);
        }
        let vee = Poset::new(GroundSet::range(3), [(1, 3), (2, 3)]).unwrap();
        assert!(cg_class_of(&vee.order_ideals()).is_err());
    }

    #[test]
    fn display() {
        let mut x = CGSum::basis(b(&[2, 1], 2));
        x.add_term(b(&[], 0), int(-3));
        assert_eq!(x.to_string(), "-3*1 + C[2,1]F^2");
    }
}
