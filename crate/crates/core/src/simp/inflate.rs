use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{maximal, SimplicialComplex};
use crate::error::{Error, Result};
use crate::options::Options;
use crate::sf::ground::{submasks, SubsetMask};
use crate::sf::{enumerate_partitions, FormalSum, SetPartition};

/// `X|_{Φ_1} * ... * X|_{Φ_k}`.
pub fn decomp(x: &SimplicialComplex, phi: &SetPartition) -> Result<SimplicialComplex> {
    phi.check_partitions(x.ground())?;
    Ok(SimplicialComplex {
        ground: x.ground().clone(),
        facets: decomp_facets(x.facets(), phi.blocks()),
    })
}

/// Facets of the join of restrictions. Products of per-block antichains
/// over disjoint blocks are already antichains.
pub(crate) fn decomp_facets(facets: &[SubsetMask], blocks: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut out = vec![0];
    for &b in blocks {
        let part = maximal(facets.iter().map(|&f| f & b).collect());
        let mut next = Vec::with_capacity(out.len() * part.len());
        for &a in &out {
            for &p in &part {
                next.push(a | p);
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

fn check_same_ground(x: &SimplicialComplex, y: &SimplicialComplex) -> Result<()> {
    if x.ground() != y.ground() {
        return Err(Error::GroundSetMismatch(x.ground().to_string(), y.ground().to_string()));
    }
    Ok(())
}

/// `Supp_X(Y)`: the partitions `Φ` with `decomp(X, Φ) = Y`.
pub fn support_system_simp(x: &SimplicialComplex, y: &SimplicialComplex) -> Result<Vec<SetPartition>> {
    check_same_ground(x, y)?;
    if !y.contains_complex(x) {
        return Ok(Vec::new());
    }
    Ok(enumerate_partitions(x.ground())
        .filter(|phi| decomp_facets(x.facets(), phi.blocks()) == y.facets())
        .collect())
}

/// `FInf_X(Y)`, the meet of the support system.
pub fn fundamental_inflator(x: &SimplicialComplex, y: &SimplicialComplex) -> Result<SetPartition> {
    let supp = support_system_simp(x, y)?;
    meet_all(&supp).ok_or(Error::NotAnInflation)
}

fn meet_all(parts: &[SetPartition]) -> Option<SetPartition> {
    let (first, rest) = parts.split_first()?;
    Some(rest.iter().fold(first.clone(), |acc, p| acc.meet(p)))
}

/// A support system together with its fundamental inflator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InflationRecord {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub support: Vec<SetPartition>,
    pub fundamental: SetPartition,
}

impl InflationRecord {
    pub fn new(source: &SimplicialComplex, target: &SimplicialComplex) -> Result<Self> {
        let support = support_system_simp(source, target)?;
        let fundamental = meet_all(&support).ok_or(Error::NotAnInflation)?;
        Ok(InflationRecord {
            source: source.clone(),
            target: target.clone(),
            support,
            fundamental,
        })
    }
}

/// The finest partition `Ψ` with `Y = Y|_{Ψ_1} * ... * Y|_{Ψ_k}`.
///
/// Peels off, for the least remaining vertex, the smallest set containing
/// it that splits off as a join factor. Phantoms come out as singletons.
pub fn join_decomposition(y: &SimplicialComplex) -> SetPartition {
    let mut rest = y.ground().full_mask();
    let mut blocks = Vec::new();
    while rest != 0 {
        let x = rest & rest.wrapping_neg();
        let facets = y.restricted_facets(rest);
        let mut candidates: Vec<SubsetMask> = submasks(rest & !x).map(|s| s | x).collect();
        candidates.sort_by_key(|s| s.count_ones());
        let block = candidates
            .into_iter()
            .find(|&s| splits(&facets, s, rest & !s))
            .expect("the whole remainder always splits");
        blocks.push(block);
        rest &= !block;
    }
    SetPartition::new(blocks).expect("disjoint blocks")
}

/// `m(Y)`, the number of blocks of [`join_decomposition`].
pub fn join_length(y: &SimplicialComplex) -> usize {
    join_decomposition(y).len()
}

fn splits(facets: &[SubsetMask], a: SubsetMask, b: SubsetMask) -> bool {
    let left = maximal(facets.iter().map(|&f| f & a).collect());
    let right = maximal(facets.iter().map(|&f| f & b).collect());
    left.iter()
        .all(|&l| right.iter().all(|&r| facets.iter().any(|&f| (l | r) & !f == 0)))
}

/// One stratum of the grouped antipode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedTerm {
    pub complex: SimplicialComplex,
    pub inflator: SetPartition,
    pub coefficient: BigInt,
}

type Groups = HashMap<Vec<SubsetMask>, (BigInt, SetPartition)>;

/// Every stratum `Y` of `Supp`-grouped partitions, with `FInf_X(Y)` and the
/// combined coefficient `Σ_{Φ ∈ Supp_X(Y)} (-1)^{|Φ|} |Φ|!`. Strata whose
/// coefficient cancels are kept.
pub fn antipode_simp_grouped(x: &SimplicialComplex, opts: &Options) -> Result<Vec<GroupedTerm>> {
    opts.check_ground(x.ground().len())?;
    let n = x.ground().len();
    let mut fact = vec![BigInt::one()];
    for k in 1..=n {
        let next = &fact[k - 1] * k;
        fact.push(next);
    }
    let signed = |k: usize| if k.is_multiple_of(2) { fact[k].clone() } else { -fact[k].clone() };

    let visit = |mut groups: Groups, phi: SetPartition| {
        let key = decomp_facets(x.facets(), phi.blocks());
        let c = signed(phi.len());
        match groups.get_mut(&key) {
            Some((acc, inf)) => {
                *acc += c;
                *inf = inf.meet(&phi);
            }
            None => {
                groups.insert(key, (c, phi));
            }
        }
        groups
    };
    let merge = |mut a: Groups, b: Groups| {
        for (key, (c, inf)) in b {
            match a.get_mut(&key) {
                Some((acc, mine)) => {
                    *acc += c;
                    *mine = mine.meet(&inf);
                }
                None => {
                    a.insert(key, (c, inf));
                }
            }
        }
        a
    };
    let groups = if opts.threads > 1 {
        opts.install(|| {
            enumerate_partitions(x.ground())
                .par_bridge()
                .fold(Groups::new, visit)
                .reduce(Groups::new, merge)
        })
    } else {
        enumerate_partitions(x.ground()).fold(Groups::new(), visit)
    };

    let mut out: Vec<GroupedTerm> = groups
        .into_iter()
        .map(|(facets, (coefficient, inflator))| GroupedTerm {
            complex: SimplicialComplex {
                ground: x.ground().clone(),
                facets,
            },
            inflator,
            coefficient,
        })
        .collect();
    out.sort_by(|a, b| a.complex.cmp(&b.complex));
    Ok(out)
}

/// `Fund(X)`: the fundamental inflators of every inflation `decomp(X, Φ)`.
pub fn fundamental_inflators(x: &SimplicialComplex) -> Result<Vec<SetPartition>> {
    let mut out: Vec<SetPartition> = antipode_simp_grouped(x, &Options::default())?
        .into_iter()
        .map(|t| t.inflator)
        .collect();
    out.sort_by_key(|p| p.blocks().to_vec());
    Ok(out)
}

/// `S(X) = Σ_{Φ ⊢ I} (-1)^{|Φ|} |Φ|! X_Φ`, like terms combined.
pub fn antipode_simp(x: &SimplicialComplex) -> Result<FormalSum> {
    antipode_simp_with(x, &Options::default())
}

pub fn antipode_simp_with(x: &SimplicialComplex, opts: &Options) -> Result<FormalSum> {
    let mut out = FormalSum::zero(x.ground().clone());
    for term in antipode_simp_grouped(x, opts)? {
        if !term.coefficient.is_zero() {
            out.add_term_unchecked(term.complex.to_family(), term.coefficient);
        }
    }
    Ok(out)
}
