//! Finite posets and their lattices of order ideals.

pub mod antipode;
pub mod fracture;

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::sf::family::join_masks;
use crate::sf::ground::{bits, expand, submasks, GroundSet, Label, SubsetMask};
use crate::sf::GroundedSetFamily;

pub use antipode::{
    antipode_complete_ranked, antipode_complete_ranked_with, antipode_dual, antipode_dual_with, antipode_loi,
    antipode_loi_with, antipode_ordinal_sum, antipode_ordinal_sum_with, dualize_loi,
};
pub use fracture::{
    acyc_fracturings, betrayal_functions, betrayed, conflict_digraph, enumerate_fracturings, is_acyclic, is_good,
    loi_mu_delta, supp_beta, supp_membership, support_system, BetrayalFunction, ConflictDigraph, Fracturing,
};

/// A strict partial order on a ground set.
///
/// `below[i]` is the mask of elements strictly less than element `i`, and
/// `above[i]` of those strictly greater; both are transitively closed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    ground: GroundSet,
    below: Vec<SubsetMask>,
    above: Vec<SubsetMask>,
}

impl Poset {
    /// Build from cover (or any generating) relations `a < b`; the
    /// transitive closure is taken.
    pub fn new<I, A, B>(ground: GroundSet, relations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<Label>,
        B: Into<Label>,
    {
        let mut below = vec![0; ground.len()];
        for (a, b) in relations {
            let (a, b) = (a.into(), b.into());
            let i = ground.index_of(&a).ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
            let j = ground.index_of(&b).ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
            below[j] |= 1 << i;
        }
        Self::from_below(ground, below)
    }

    /// Build from generating relations given as `below` masks.
    pub fn from_below(ground: GroundSet, mut below: Vec<SubsetMask>) -> Result<Self> {
        let n = ground.len();
        assert_eq!(below.len(), n);
        // Warshall closure over the boolean relation matrix
        for k in 0..n {
            for j in 0..n {
                if below[j] >> k & 1 == 1 {
                    below[j] |= below[k];
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| below[i] >> i & 1 == 1) {
            return Err(Error::CycleDetected(ground.label(i).to_string()));
        }
        Ok(Self::from_closed(ground, below))
    }

    pub(crate) fn from_closed(ground: GroundSet, below: Vec<SubsetMask>) -> Self {
        let mut above = vec![0; below.len()];
        for (j, &b) in below.iter().enumerate() {
            for i in bits(b) {
                above[i] |= 1 << j;
            }
        }
        Poset { ground, below, above }
    }

    pub fn antichain(ground: GroundSet) -> Self {
        let n = ground.len();
        Poset {
            ground,
            below: vec![0; n],
            above: vec![0; n],
        }
    }

    /// The chain `1 < 2 < ... < n`.
    pub fn chain(n: usize) -> Self {
        let below = (0..n).map(|i| (1u64 << i) - 1).collect();
        Self::from_closed(GroundSet::range(n), below)
    }

    /// A chain whose order is the order of `labels` as given.
    pub fn chain_of<L: Into<Label>>(labels: impl IntoIterator<Item = L>) -> Result<Self> {
        let labels: Vec<Label> = labels.into_iter().map(Into::into).collect();
        let ground = GroundSet::new(labels.iter().cloned())?;
        let covers: Vec<(Label, Label)> = labels.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        Poset::new(ground, covers)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn full_mask(&self) -> SubsetMask {
        self.ground.full_mask()
    }

    /// `i <_P j`
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.below[j] >> i & 1 == 1
    }

    pub fn below(&self, i: usize) -> SubsetMask {
        self.below[i]
    }

    pub fn above(&self, i: usize) -> SubsetMask {
        self.above[i]
    }

    /// Elements strictly below some element of `mask`.
    pub fn below_set(&self, mask: SubsetMask) -> SubsetMask {
        bits(mask).fold(0, |acc, i| acc | self.below[i])
    }

    /// Elements strictly above some element of `mask`.
    pub fn above_set(&self, mask: SubsetMask) -> SubsetMask {
        bits(mask).fold(0, |acc, i| acc | self.above[i])
    }

    /// The order ideal `⌊A⌋` generated by `mask`.
    pub fn ideal_of(&self, mask: SubsetMask) -> SubsetMask {
        mask | self.below_set(mask)
    }

    /// The order filter `⌈A⌉` generated by `mask`.
    pub fn filter_of(&self, mask: SubsetMask) -> SubsetMask {
        mask | self.above_set(mask)
    }

    /// Minimal elements of the induced subposet on `within`.
    pub fn min_within(&self, within: SubsetMask) -> SubsetMask {
        bits(within)
            .filter(|&i| self.below[i] & within == 0)
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// Maximal elements of the induced subposet on `within`.
    pub fn max_within(&self, within: SubsetMask) -> SubsetMask {
        bits(within)
            .filter(|&i| self.above[i] & within == 0)
            .fold(0, |acc, i| acc | 1 << i)
    }

    pub fn min(&self) -> SubsetMask {
        self.min_within(self.full_mask())
    }

    pub fn max(&self) -> SubsetMask {
        self.max_within(self.full_mask())
    }

    pub fn is_antichain(&self) -> bool {
        self.below.iter().all(|&b| b == 0)
    }

    /// Whether `mask` is down-closed within `within`.
    pub fn is_ideal_within(&self, mask: SubsetMask, within: SubsetMask) -> bool {
        bits(mask).all(|i| self.below[i] & within & !mask == 0)
    }

    /// Cover relations `(a, b)` with `a ⋖ b`, as position pairs.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            for i in bits(self.below[j]) {
                if self.above[i] & self.below[j] == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn covers(&self) -> Vec<(Label, Label)> {
        self.cover_pairs()
            .into_iter()
            .map(|(i, j)| (self.ground.label(i).clone(), self.ground.label(j).clone()))
            .collect()
    }

    /// Hasse components of the induced subposet on `within`, each as a mask,
    /// ordered by least element.
    pub fn components_within(&self, within: SubsetMask) -> Vec<SubsetMask> {
        let mut out = Vec::new();
        let mut rest = within;
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            loop {
                let grown = comp | ((self.below_set(comp) | self.above_set(comp)) & within);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    /// Whether the induced subposet on a nonempty `mask` is Hasse-connected.
    pub fn is_connected_within(&self, mask: SubsetMask) -> bool {
        if mask == 0 {
            return false;
        }
        let mut comp = mask & mask.wrapping_neg();
        loop {
            let grown = comp | ((self.below_set(comp) | self.above_set(comp)) & mask);
            if grown == comp {
                return comp == mask;
            }
            comp = grown;
        }
    }

    /// A linear extension of the induced subposet on `within`, as positions.
    pub fn linear_extension_within(&self, within: SubsetMask) -> Vec<usize> {
        let mut order: Vec<usize> = bits(within).collect();
        // the number of elements below is strictly monotone along relations
        order.sort_by_key(|&i| (self.below[i] & within).count_ones());
        order
    }

    /// All order ideals of the induced subposet on `within`, as masks in
    /// the positions of `self`.
    pub fn ideals_within(&self, within: SubsetMask) -> Vec<SubsetMask> {
        let order = self.linear_extension_within(within);
        let mut out = Vec::new();
        self.ideals_rec(&order, within, 0, &mut out);
        out.sort_unstable();
        out
    }

    fn ideals_rec(&self, order: &[usize], within: SubsetMask, current: SubsetMask, out: &mut Vec<SubsetMask>) {
        match order.split_first() {
            None => out.push(current),
            Some((&x, rest)) => {
                self.ideals_rec(rest, within, current, out);
                if self.below[x] & within & !current == 0 {
                    self.ideals_rec(rest, within, current | 1 << x, out);
                }
            }
        }
    }

    /// `J(P)` on the ground set of `P`.
    pub fn order_ideals(&self) -> GroundedSetFamily {
        GroundedSetFamily::from_masks_unchecked(self.ground.clone(), self.ideals_within(self.full_mask()))
    }

    /// `J(Q)` for `Q` the disjoint sum of the induced subposets on `blocks`,
    /// on the ground set of `P` (elements outside the blocks are phantoms).
    pub fn ideals_of_sum(&self, blocks: &[SubsetMask]) -> GroundedSetFamily {
        let members = blocks
            .iter()
            .fold(vec![0], |acc, &b| join_masks(&acc, &self.ideals_within(b)));
        GroundedSetFamily::from_masks_unchecked(self.ground.clone(), members)
    }

    /// The induced subposet `P[A]` on its own (re-packed) ground set.
    pub fn restrict(&self, mask: SubsetMask) -> Poset {
        let ground = self.ground.subset(mask);
        let below = bits(mask)
            .map(|i| crate::sf::ground::compress(self.below[i], mask))
            .collect();
        Poset::from_closed(ground, below)
    }

    pub fn dual(&self) -> Poset {
        Poset {
            ground: self.ground.clone(),
            below: self.above.clone(),
            above: self.below.clone(),
        }
    }

    /// `P + Q` on the union of the (disjoint) grounds.
    pub fn disjoint_sum(&self, other: &Poset) -> Result<Poset> {
        self.combine(other, false)
    }

    /// `P ⊕ Q`: the disjoint sum plus `x < y` for all `x ∈ P`, `y ∈ Q`.
    pub fn ordinal_sum(&self, other: &Poset) -> Result<Poset> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Poset, stacked: bool) -> Result<Poset> {
        let ground = self.ground.disjoint_union(&other.ground)?;
        let lo = self.ground.position_map(&ground)?;
        let hi = other.ground.position_map(&ground)?;
        let lo_mask = lo.iter().fold(0u64, |acc, &p| acc | 1 << p);
        let mut below = vec![0; ground.len()];
        for (i, &p) in lo.iter().enumerate() {
            below[p] = crate::sf::family::remap(self.below[i], &lo);
        }
        for (i, &p) in hi.iter().enumerate() {
            below[p] = crate::sf::family::remap(other.below[i], &hi) | if stacked { lo_mask } else { 0 };
        }
        Ok(Poset::from_closed(ground, below))
    }

    /// Positions of `other`'s ground inside `self`'s ground, as a mask.
    pub fn mask_of_ground(&self, other: &GroundSet) -> Result<SubsetMask> {
        self.ground.mask_of(other.labels())
    }

    /// Recover the poset on the support of a lattice of order ideals:
    /// `x < y` iff every member containing `y` contains `x`. Returns the
    /// poset together with the support mask, or `WrongClass` when the family
    /// is not of the form `J(P)`.
    pub fn from_order_ideals(family: &GroundedSetFamily) -> Result<(Poset, SubsetMask)> {
        let support = family.support();
        let ground = family.ground().subset(support);
        let positions: Vec<usize> = bits(support).collect();
        let mut below = vec![0u64; positions.len()];
        for (b, &y) in positions.iter().enumerate() {
            let common = family
                .members()
                .iter()
                .filter(|&&m| m >> y & 1 == 1)
                .fold(support, |acc, &m| acc & m);
            below[b] = crate::sf::ground::compress(common & !(1 << y), support);
        }
        let poset = Poset::from_below(ground, below).map_err(|_| Error::WrongClass("a lattice of order ideals"))?;
        let rebuilt: Vec<SubsetMask> = poset.order_ideals().members().iter().map(|&m| expand(m, support)).collect();
        if rebuilt != family.members() {
            return Err(Error::WrongClass("a lattice of order ideals"));
        }
        Ok((poset, support))
    }

    /// All strict partial orders on `{1..n}` (labeled), by brute force over
    /// relation sets. Intended for `n ≤ 5`.
    pub fn enumerate_labeled(n: usize) -> Vec<Poset> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let mut out = Vec::new();
        for choice in submasks(crate::sf::ground::full_mask(pairs.len())) {
            let mut below = vec![0u64; n];
            for k in bits(choice) {
                let (i, j) = pairs[k];
                below[j] |= 1 << i;
            }
            let antisymmetric = (0..n).all(|j| bits(below[j]).all(|i| below[i] >> j & 1 == 0));
            let transitive = (0..n).all(|j| bits(below[j]).all(|i| below[i] & !below[j] == 0));
            if antisymmetric && transitive {
                out.push(Poset::from_closed(GroundSet::range(n), below));
            }
        }
        out
    }

    /// A random poset on `{1..n}`: a random DAG on a shuffled order with
    /// edge probability `p`, transitively closed.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Poset {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut below = vec![0u64; n];
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    below[order[b]] |= 1 << order[a];
                }
            }
        }
        Poset::from_below(GroundSet::range(n), below).expect("acyclic by construction")
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .covers()
            .iter()
            .map(|(a, b)| format!("{a}<{b}"))
            .collect();
        write!(f, "{} [{}]", self.ground, rels.join(", "))
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
