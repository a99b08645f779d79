use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::inflate::decomp_facets;
use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::options::Options;
use crate::sf::ground::{submasks, GroundSet, SubsetMask};
use crate::sf::{enumerate_partitions, FormalSum};

/// `sk(m, V)`: all subsets of `V` with at most `m` elements.
pub fn skeleton(m: usize, ground: GroundSet) -> Result<SimplicialComplex> {
    let n = ground.len();
    if m > n {
        return Err(Error::InvalidSkeletonDim { m, n });
    }
    let facets = submasks(ground.full_mask())
        .filter(|s| s.count_ones() as usize == m)
        .collect();
    Ok(SimplicialComplex::from_faces_unchecked(ground, facets))
}

/// Number of partitions of a `c`-set into `b` blocks of size at most `a`.
///
/// Recurrence on the block containing a fixed element:
/// `p(a,b,c) = Σ_{s=1}^{min(a,c)} C(c-1,s-1) p(a,b-1,c-s)`.
pub fn p_count(a: usize, b: usize, c: usize) -> BigInt {
    PCount::new(a).get(b, c)
}

struct PCount {
    a: usize,
    memo: HashMap<(usize, usize), BigInt>,
}

impl PCount {
    fn new(a: usize) -> Self {
        PCount { a, memo: HashMap::new() }
    }

    fn get(&mut self, b: usize, c: usize) -> BigInt {
        if b == 0 {
            return if c == 0 { BigInt::one() } else { BigInt::zero() };
        }
        if c < b || c > b * self.a {
            return BigInt::zero();
        }
        if let Some(v) = self.memo.get(&(b, c)) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for s in 1..=self.a.min(c) {
            total += binomial(c - 1, s - 1) * self.get(b - 1, c - s);
        }
        self.memo.insert((b, c), total.clone());
        total
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `S(sk(m, n))` from the closed form: one term per fundamental inflator
/// `Φ` (every block a singleton or larger than `m`), with coefficient
/// `Σ_j (-1)^{t+j} p_{m,j}(s) (t+j)!` where `s` counts singleton blocks and
/// `t` the others.
pub fn antipode_skeleton(m: usize, n: usize) -> Result<FormalSum> {
    antipode_skeleton_with(m, n, &Options::default())
}

pub fn antipode_skeleton_with(m: usize, n: usize, opts: &Options) -> Result<FormalSum> {
    if m > n {
        return Err(Error::InvalidSkeletonDim { m, n });
    }
    opts.check_ground(n)?;
    let ground = GroundSet::range(n);
    let sk = skeleton(m, ground.clone())?;
    if m == 0 {
        // the trivial complex: every element is a phantom
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        return Ok(FormalSum::from_term(sk.to_family(), BigInt::from(sign)));
    }
    let mut counts = PCount::new(m);
    let mut out = FormalSum::zero(ground.clone());
    for phi in enumerate_partitions(&ground) {
        if phi.blocks().iter().any(|b| (2..=m as u32).contains(&b.count_ones())) {
            continue;
        }
        let s = phi.singleton_count();
        let t = phi.len() - s;
        let mut coeff = BigInt::zero();
        for j in 0..=s {
            let term = counts.get(j, s) * factorial(t + j);
            if (t + j) % 2 == 0 {
                coeff += term;
            } else {
                coeff -= term;
            }
        }
        if coeff.is_zero() {
            continue;
        }
        let facets = decomp_facets(sk.facets(), phi.blocks());
        let y = SimplicialComplex::from_faces_unchecked(ground.clone(), facets);
        out.add_term_unchecked(y.to_family(), coeff);
    }
    Ok(out)
}

/// `Σ_{Θ ∈ Π_k} (-1)^{k-|Θ|} (|Θ|+b-1)!`, evaluated as `(b-1)! b^k`.
pub fn interval_alternating_sum(k: usize, b: usize) -> BigInt {
    assert!(b >= 1, "b must be positive");
    factorial(b - 1) * BigInt::from(b).pow(k as u32)
}

/// Faces meet every part in at most one element; facets are transversals.
pub fn complete_colorful(parts: &[GroundSet]) -> Result<SimplicialComplex> {
    let mut ground = GroundSet::empty();
    for p in parts {
        ground = ground.disjoint_union(p)?;
    }
    let mut facets: Vec<SubsetMask> = vec![0];
    for p in parts.iter().filter(|p| !p.is_empty()) {
        let singles: Vec<SubsetMask> = p
            .labels()
            .iter()
            .map(|l| ground.mask_of([l]))
            .collect::<Result<_>>()?;
        facets = facets
            .iter()
            .flat_map(|&f| singles.iter().map(move |&s| f | s))
            .collect();
    }
    Ok(SimplicialComplex::from_faces_unchecked(ground, facets))
}
