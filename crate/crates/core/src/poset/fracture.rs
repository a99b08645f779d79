//! Fracturings, conflict digraphs, betrayal and support systems.

use std::fmt;

use super::Poset;
use crate::error::{Error, Result};
use crate::sf::ground::{bits, submasks, SubsetMask};
use crate::sf::compose::parse_blocks;
use crate::sf::{enumerate_compositions, GroundedSetFamily, SetComposition};

/// A disjoint sum of induced subposets of a parent poset, stored as the
/// partition of its carrier into Hasse-connected blocks (ordered by least
/// element). The parent is not stored; every method takes it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fracturing {
    carrier: SubsetMask,
    blocks: Vec<SubsetMask>,
}

impl Fracturing {
    /// Validate `blocks` against `parent`: nonempty, disjoint, each
    /// Hasse-connected in the induced order.
    pub fn new(parent: &Poset, mut blocks: Vec<SubsetMask>) -> Result<Self> {
        let mut carrier = 0;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::InvalidFracturing("empty block".into()));
            }
            if b & !parent.full_mask() != 0 {
                return Err(Error::InvalidFracturing("block outside the poset".into()));
            }
            if b & carrier != 0 {
                return Err(Error::InvalidFracturing("blocks overlap".into()));
            }
            if !parent.is_connected_within(b) {
                return Err(Error::InvalidFracturing(format!(
                    "block {} is not Hasse-connected",
                    parent.ground().show(b)
                )));
            }
            carrier |= b;
        }
        blocks.sort_by_key(|b| b.trailing_zeros());
        Ok(Fracturing { carrier, blocks })
    }

    /// Reads `blocks=1,2|3` (the `blocks=` prefix is optional; anything
    /// after a `;` is ignored). Omitted elements are the complement of the
    /// listed blocks.
    pub fn parse(parent: &Poset, text: &str) -> Result<Self> {
        let text = text.split(';').next().unwrap_or("").trim();
        let text = text.strip_prefix("blocks=").unwrap_or(text).trim();
        let text = if text == "{}" { "" } else { text };
        let blocks = parse_blocks(parent.ground(), text).map_err(|m| Error::parse(1, m))?;
        Fracturing::new(parent, blocks)
    }

    pub(crate) fn from_sorted_blocks(blocks: Vec<SubsetMask>) -> Self {
        let carrier = blocks.iter().fold(0, |a, &b| a | b);
        Fracturing { carrier, blocks }
    }

    /// The fracturing of `parent` consisting of the Hasse components of the
    /// induced subposet on `carrier`.
    pub fn from_carrier(parent: &Poset, carrier: SubsetMask) -> Self {
        Fracturing {
            carrier,
            blocks: parent.components_within(carrier),
        }
    }

    /// `P` itself, split into its components.
    pub fn whole(parent: &Poset) -> Self {
        Self::from_carrier(parent, parent.full_mask())
    }

    pub fn carrier(&self) -> SubsetMask {
        self.carrier
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    /// `c(Q)`, the number of components.
    pub fn components(&self) -> usize {
        self.blocks.len()
    }

    /// `P ∖ Q`
    pub fn missing(&self, parent: &Poset) -> SubsetMask {
        parent.full_mask() & !self.carrier
    }

    /// `j <_Q i`: same block and `j <_P i`.
    pub fn lt(&self, parent: &Poset, j: usize, i: usize) -> bool {
        parent.lt(j, i) && self.block_of(i).is_some_and(|b| b >> j & 1 == 1)
    }

    fn block_of(&self, i: usize) -> Option<SubsetMask> {
        self.blocks.iter().copied().find(|b| b >> i & 1 == 1)
    }

    /// `(J(Q), I)`
    pub fn ideals(&self, parent: &Poset) -> GroundedSetFamily {
        parent.ideals_of_sum(&self.blocks)
    }

    /// The sign `(-1)^{c(Q) + |P∖Q|}`.
    pub fn sign(&self, parent: &Poset) -> i32 {
        if (self.components() + self.missing(parent).count_ones() as usize).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn show(&self, parent: &Poset) -> String {
        let g = parent.ground();
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| {
                bits(b)
                    .map(|i| g.label(i).as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        parts.join("|")
    }
}

impl fmt::Debug for Fracturing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| format!("{b:#b}")).collect();
        write!(f, "Fracturing[{}]", parts.join(" "))
    }
}

/// `Con(Q)`: vertices are the blocks of `Q` (by index), with an edge
/// `i → j` when some element of block `j` lies below some element of block `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictDigraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl ConflictDigraph {
    /// A topological order, or `None` if there is a cycle (Kahn).
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree = vec![0usize; self.vertices];
        let mut out_edges = vec![Vec::new(); self.vertices];
        for &(a, b) in &self.edges {
            indegree[b] += 1;
            out_edges[a].push(b);
        }
        let mut ready: Vec<usize> = (0..self.vertices).filter(|&v| indegree[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(self.vertices);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &w in &out_edges[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.push(w);
                }
            }
        }
        (order.len() == self.vertices).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

pub fn conflict_digraph(parent: &Poset, q: &Fracturing) -> ConflictDigraph {
    digraph_of_blocks(parent, &q.blocks)
}

fn digraph_of_blocks(parent: &Poset, blocks: &[SubsetMask]) -> ConflictDigraph {
    let lower: Vec<SubsetMask> = blocks.iter().map(|&b| parent.below_set(b)).collect();
    let mut edges = Vec::new();
    for (i, &li) in lower.iter().enumerate() {
        for (j, &bj) in blocks.iter().enumerate() {
            if i != j && li & bj != 0 {
                edges.push((i, j));
            }
        }
    }
    ConflictDigraph {
        vertices: blocks.len(),
        edges,
    }
}

pub fn is_acyclic(parent: &Poset, q: &Fracturing) -> bool {
    blocks_acyclic(parent, &q.blocks)
}

pub(crate) fn blocks_acyclic(parent: &Poset, blocks: &[SubsetMask]) -> bool {
    blocks.len() < 2 || digraph_of_blocks(parent, blocks).is_acyclic()
}

/// Good: carrier contains `Min(P)` and `Con(Q)` is acyclic.
pub fn is_good(parent: &Poset, q: &Fracturing) -> bool {
    parent.min() & !q.carrier == 0 && is_acyclic(parent, q)
}

/// Every fracturing of `parent` (all carriers, all partitions into
/// Hasse-connected blocks). With `require_min`, only carriers containing
/// `Min(P)`.
pub fn enumerate_fracturings(parent: &Poset, require_min: bool) -> Vec<Fracturing> {
    fracturings_within(parent, parent.full_mask(), require_min)
}

/// Fracturings with acyclic conflict digraph (no condition on minima).
pub fn acyc_fracturings(parent: &Poset) -> Vec<Fracturing> {
    acyc_within(parent, parent.full_mask())
}

pub(crate) fn fracturings_within(parent: &Poset, within: SubsetMask, require_min: bool) -> Vec<Fracturing> {
    let forced = if require_min { parent.min_within(within) } else { 0 };
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    fracture_rec(parent, within, forced, &mut blocks, &mut out);
    out
}

fn fracture_rec(
    parent: &Poset,
    pool: SubsetMask,
    forced: SubsetMask,
    blocks: &mut Vec<SubsetMask>,
    out: &mut Vec<Fracturing>,
) {
    if pool == 0 {
        out.push(Fracturing::from_sorted_blocks(blocks.clone()));
        return;
    }
    let x = pool & pool.wrapping_neg();
    let rest = pool & !x;
    if forced & x == 0 {
        fracture_rec(parent, rest, forced, blocks, out);
    }
    for extra in submasks(rest) {
        let block = x | extra;
        if parent.is_connected_within(block) {
            blocks.push(block);
            fracture_rec(parent, rest & !extra, forced, blocks, out);
            blocks.pop();
        }
    }
}

pub(crate) fn good_within(parent: &Poset, within: SubsetMask) -> Vec<Fracturing> {
    fracturings_within(parent, within, true)
        .into_iter()
        .filter(|q| blocks_acyclic(parent, &q.blocks))
        .collect()
}

pub(crate) fn acyc_within(parent: &Poset, within: SubsetMask) -> Vec<Fracturing> {
    fracturings_within(parent, within, false)
        .into_iter()
        .filter(|q| blocks_acyclic(parent, &q.blocks))
        .collect()
}

fn positions(parent: &Poset, phi: &SetComposition) -> Result<Vec<usize>> {
    phi.check_composes(parent.ground())?;
    Ok(phi.block_index(parent.len()))
}

/// `B(Φ)`: elements betrayed by something strictly below them that sits in
/// an earlier block.
pub fn betrayed(parent: &Poset, phi: &SetComposition) -> Result<SubsetMask> {
    let pos = positions(parent, phi)?;
    Ok(betrayed_at(parent, &pos))
}

fn betrayed_at(parent: &Poset, pos: &[usize]) -> SubsetMask {
    (0..parent.len())
        .filter(|&x| bits(parent.below(x)).any(|y| pos[y] < pos[x]))
        .fold(0, |acc, x| acc | 1 << x)
}

/// `μ_Φ Δ_Φ J(P)` computed through betrayal: the fracturing whose blocks
/// are the Hasse components of each `P[Φ_i ∖ B(Φ_i)]`, and its `J`.
pub fn loi_mu_delta(parent: &Poset, phi: &SetComposition) -> Result<(Fracturing, GroundedSetFamily)> {
    let pos = positions(parent, phi)?;
    let b = betrayed_at(parent, &pos);
    let mut blocks: Vec<SubsetMask> = phi
        .blocks()
        .iter()
        .flat_map(|&blk| parent.components_within(blk & !b))
        .collect();
    blocks.sort_by_key(|m| m.trailing_zeros());
    let q = Fracturing::from_sorted_blocks(blocks);
    let family = q.ideals(parent);
    Ok((q, family))
}

/// Membership of `Φ` in `Supp(Q)` by the four local conditions: related
/// elements of a component share a block; cross relations inside the
/// carrier and relations into the carrier from outside point backwards in
/// `Φ`; every missing element is betrayed.
pub fn supp_membership(parent: &Poset, q: &Fracturing, phi: &SetComposition) -> Result<bool> {
    let pos = positions(parent, phi)?;
    Ok(supp_membership_at(parent, q, &pos))
}

fn supp_membership_at(parent: &Poset, q: &Fracturing, pos: &[usize]) -> bool {
    let carrier = q.carrier;
    for &blk in &q.blocks {
        for i in bits(blk) {
            for j in bits(parent.below(i)) {
                if blk >> j & 1 == 1 {
                    if pos[i] != pos[j] {
                        return false;
                    }
                } else if pos[i] >= pos[j] {
                    // j in another block of Q, or outside Q
                    return false;
                }
            }
        }
    }
    for b in bits(parent.full_mask() & !carrier) {
        if !bits(parent.below(b)).any(|a| pos[a] < pos[b]) {
            return false;
        }
    }
    true
}

/// `Supp(Q)`: every composition satisfying [`supp_membership`].
pub fn support_system(parent: &Poset, q: &Fracturing) -> Vec<SetComposition> {
    enumerate_compositions(parent.ground())
        .filter(|phi| supp_membership_at(parent, q, &phi.block_index(parent.len())))
        .collect()
}

/// A map `β: P∖Q → P` with `β(b) <_P b`, as `(b, β(b))` position pairs
/// sorted by `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BetrayalFunction {
    pub assignment: Vec<(usize, usize)>,
}

impl BetrayalFunction {
    pub fn get(&self, b: usize) -> Option<usize> {
        self.assignment.iter().find(|&&(x, _)| x == b).map(|&(_, y)| y)
    }
}

/// Every betrayal function for `Q`; empty when some missing element is
/// minimal.
pub fn betrayal_functions(parent: &Poset, q: &Fracturing) -> Vec<BetrayalFunction> {
    let missing: Vec<usize> = bits(q.missing(parent)).collect();
    let mut out = vec![Vec::new()];
    for &b in &missing {
        let mut next = Vec::new();
        for partial in &out {
            for a in bits(parent.below(b)) {
                let mut ext: Vec<(usize, usize)> = partial.clone();
                ext.push((b, a));
                next.push(ext);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|assignment| BetrayalFunction { assignment })
        .collect()
}

/// `Supp_β(Q)`: members of `Supp(Q)` in which each `β(b)` precedes `b`.
pub fn supp_beta(parent: &Poset, q: &Fracturing, beta: &BetrayalFunction) -> Vec<SetComposition> {
    enumerate_compositions(parent.ground())
        .filter(|phi| {
            let pos = phi.block_index(parent.len());
            supp_membership_at(parent, q, &pos) && beta.assignment.iter().all(|&(b, a)| pos[a] < pos[b])
        })
        .collect()
}
