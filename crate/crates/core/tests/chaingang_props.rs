use std::collections::BTreeMap;

use hopf_setfam::chaingang::{
    cg_antipode, cg_class_of, cg_coproduct, cg_counit, cg_image, chain_gang_family, exorcism_to_series,
    geometric_convolve, quotient_to_sym, series_to_char, CGBasis, CGSum, CGTensor, Character,
};
use hopf_setfam::poset::antipode_loi;
use hopf_setfam::sf::takeuchi_antipode;
use hopf_setfam::Poset;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row[k].clone()
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn basis_up_to(degree: usize) -> Vec<CGBasis> {
    let mut out = Vec::new();
    for d in 0..=degree {
        for p in 0..=d {
            for lambda in partitions(d - p, d - p) {
                out.push(CGBasis::new(lambda, p));
            }
        }
    }
    out
}

type Triple = BTreeMap<(CGBasis, CGBasis, CGBasis), BigRational>;

fn add(t: &mut Triple, key: (CGBasis, CGBasis, CGBasis), c: BigRational) {
    *t.entry(key).or_insert_with(BigRational::zero) += c;
}

fn coassoc_sides(b: &CGBasis) -> (Triple, Triple) {
    let d = cg_coproduct(&CGSum::basis(b.clone()));
    let mut left = Triple::new();
    let mut right = Triple::new();
    for (x, y, c) in d.iter() {
        for (x1, x2, k) in cg_coproduct(&CGSum::basis(x.clone())).iter() {
            add(&mut left, (x1.clone(), x2.clone(), y.clone()), c * k);
        }
        for (y1, y2, k) in cg_coproduct(&CGSum::basis(y.clone())).iter() {
            add(&mut right, (x.clone(), y1.clone(), y2.clone()), c * k);
        }
    }
    left.retain(|_, c| !c.is_zero());
    right.retain(|_, c| !c.is_zero());
    (left, right)
}

#[test]
fn coproduct_is_multiplicative() {
    let small = basis_up_to(4);
    for a in &small {
        for b in &small {
            let x = CGSum::basis(a.clone());
            let y = CGSum::basis(b.clone());
            assert_eq!(cg_coproduct(&(&x * &y)), &cg_coproduct(&x) * &cg_coproduct(&y));
        }
    }
}

#[test]
fn coassociativity_up_to_degree_eight() {
    for b in basis_up_to(8) {
        let (l, r) = coassoc_sides(&b);
        assert_eq!(l, r, "{b}");
    }
}

#[test]
fn counit_axiom() {
    for b in basis_up_to(6) {
        let x = CGSum::basis(b.clone());
        let d = cg_coproduct(&x);
        let left = d.map(|l| CGSum::term(CGBasis::unit(), cg_counit(&CGSum::basis(l.clone()))), |r| CGSum::basis(r.clone()));
        assert_eq!(left.multiply(), x);
    }
}

#[test]
fn antipode_axioms_up_to_degree_eight() {
    for b in basis_up_to(8) {
        let x = CGSum::basis(b.clone());
        let d = cg_coproduct(&x);
        let expected = CGSum::term(CGBasis::unit(), cg_counit(&x));
        let left = d.map(|l| cg_antipode(&CGSum::basis(l.clone())), |r| CGSum::basis(r.clone()));
        assert_eq!(left.multiply(), expected, "{b}");
        let right = d.map(|l| CGSum::basis(l.clone()), |r| cg_antipode(&CGSum::basis(r.clone())));
        assert_eq!(right.multiply(), expected, "{b}");
        assert_eq!(cg_antipode(&cg_antipode(&x)), x, "{b}");
    }
}

#[test]
fn chain_antipode_matches_composition_formula() {
    for n in 1..=8usize {
        let mut expected = CGSum::zero();
        for v in 1..=n {
            let outer = binomial(n - 1, v - 1);
            for alpha in compositions(v) {
                let sign = if (n - v + alpha.len()) % 2 == 0 { 1 } else { -1 };
                expected.add_term(CGBasis::new(alpha, n - v), q(sign) * BigRational::from_integer(outer.clone()));
            }
        }
        assert_eq!(cg_antipode(&CGSum::chain(n)), expected, "n={n}");
    }
}

#[test]
fn monoid_antipode_classifies_to_algebra_antipode() {
    for n in 1..=5 {
        let family = Poset::chain(n).order_ideals();
        let image = cg_image(&takeuchi_antipode(&family).unwrap()).unwrap();
        assert_eq!(image, cg_antipode(&CGSum::chain(n)), "n={n}");
        assert_eq!(cg_image(&antipode_loi(&Poset::chain(n)).unwrap()).unwrap(), image);
    }
    // products of chains and phantoms too
    for b in basis_up_to(4) {
        let family = chain_gang_family(&b);
        assert_eq!(cg_class_of(&family).unwrap(), b);
        let image = cg_image(&takeuchi_antipode(&family).unwrap()).unwrap();
        assert_eq!(image, cg_antipode(&CGSum::basis(b.clone())), "{b}");
    }
}

#[test]
fn quotient_is_symmetric_functions() {
    for n in 0..=7usize {
        let d = cg_coproduct(&CGSum::chain(n));
        let mut projected = CGTensor::zero();
        for (l, r, c) in d.iter().filter(|(l, r, _)| l.phantoms() == 0 && r.phantoms() == 0) {
            projected.add_term(l.clone(), r.clone(), c.clone());
        }
        let mut expected = CGTensor::zero();
        for k in 0..=n {
            expected.add_term(CGBasis::new(vec![k], 0), CGBasis::new(vec![n - k], 0), BigRational::one());
        }
        assert_eq!(projected, expected);

        // S(h_n) = Σ_{α ⊨ n} (-1)^{ℓ(α)} h_α, i.e. (-1)^n e_n
        let mut sym = CGSum::zero();
        for alpha in compositions(n) {
            let sign = if alpha.len() % 2 == 0 { 1 } else { -1 };
            sym.add_term(CGBasis::new(alpha, 0), q(sign));
        }
        assert_eq!(quotient_to_sym(&cg_antipode(&CGSum::chain(n))), sym);
    }
    // ideal: anything times F projects to zero
    for b in basis_up_to(4) {
        let x = &CGSum::basis(b) * &CGSum::phantom();
        assert!(quotient_to_sym(&x).is_zero());
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=5)))
}

fn random_character(rng: &mut ChaCha8Rng, n: usize, exorcism: bool) -> Character {
    let a = if exorcism { BigRational::zero() } else { random_rational(rng) };
    Character::new(a, (0..n).map(|_| random_rational(rng)).collect())
}

#[test]
fn character_group_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..10 {
        let x = random_character(&mut rng, 10, false);
        let y = random_character(&mut rng, 10, false);
        let z = random_character(&mut rng, 10, false);
        let e = Character::counit(10);
        assert_eq!(x.convolve(&y).unwrap(), x.convolve_generic(&y).unwrap());
        let lhs = x.convolve(&y).unwrap().convolve(&z).unwrap();
        let rhs = x.convolve(&y.convolve(&z).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(x.convolve(&x.inverse()).unwrap(), e);
        assert_eq!(x.inverse().convolve(&x).unwrap(), e);
    }
}

#[test]
fn exorcism_group_is_power_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..20 {
        let x = random_character(&mut rng, 10, true);
        let y = random_character(&mut rng, 10, true);
        let xy = x.convolve(&y).unwrap();
        assert!(xy.is_exorcism() && x.inverse().is_exorcism());
        let fx = exorcism_to_series(&x).unwrap();
        let fy = exorcism_to_series(&y).unwrap();
        assert_eq!(exorcism_to_series(&xy).unwrap(), fx.mul(&fy).unwrap());
        assert_eq!(exorcism_to_series(&x.inverse()).unwrap(), fx.reciprocal());
        assert_eq!(series_to_char(&fx), x);
    }
}

#[test]
fn geometric_characters() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..10 {
        let (u, r, v, s) = (
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        );
        let conv = Character::geometric(u.clone(), &r, 8)
            .convolve(&Character::geometric(v.clone(), &s, 8))
            .unwrap();
        assert_eq!(conv.phantom_value(), &(&u + &v));
        for n in 1..=8 {
            assert_eq!(conv.chain_value(n), geometric_convolve(&u, &r, &v, &s, n));
        }
        let one = q(1);
        let lhs = Character::geometric(one.clone(), &r, 10)
            .convolve(&Character::geometric(one.clone(), &s, 10))
            .unwrap();
        let rhs = Character::geometric(one.clone(), &(&s - &one), 10)
            .convolve(&Character::geometric(one.clone(), &(&r + &one), 10))
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
