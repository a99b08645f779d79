//! Set compositions and set partitions over a [`GroundSet`], and their
//! enumeration.
//!
//! Partitions are generated in restricted-growth-string order. Compositions
//! are generated partition by partition, each partition followed by all
//! orderings of its blocks in lexicographic permutation order.

use std::fmt;

use super::ground::{bits, GroundSet, Label, SubsetMask};
use crate::error::{Error, Result};

/// An ordered partition `Φ_1 | ... | Φ_m` into nonempty disjoint blocks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetComposition {
    blocks: Vec<SubsetMask>,
}

/// An unordered partition into nonempty disjoint blocks, stored with blocks
/// sorted by their least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<SubsetMask>,
}

fn check_blocks(blocks: &[SubsetMask]) -> std::result::Result<SubsetMask, String> {
    let mut seen = 0;
    for &b in blocks {
        if b == 0 {
            return Err("empty block".into());
        }
        if b & seen != 0 {
            return Err("blocks overlap".into());
        }
        seen |= b;
    }
    Ok(seen)
}

pub(crate) fn parse_blocks(ground: &GroundSet, text: &str) -> std::result::Result<Vec<SubsetMask>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut blocks = Vec::new();
    for token in text.split('|') {
        let token = token.trim();
        let labels: Vec<Label> = if token.contains(',') {
            token.split(',').map(|s| Label::from(s.trim())).collect()
        } else if ground.contains(&Label::from(token)) {
            vec![Label::from(token)]
        } else {
            token.chars().map(|c| Label::from(c.to_string())).collect()
        };
        let mask = ground.mask_of(labels).map_err(|e| e.to_string())?;
        blocks.push(mask);
    }
    Ok(blocks)
}

fn show_blocks(ground: &GroundSet, blocks: &[SubsetMask]) -> String {
    let compact = ground.labels().iter().all(|l| l.as_str().chars().count() == 1);
    let sep = if compact { "" } else { "," };
    blocks
        .iter()
        .map(|&b| {
            bits(b)
                .map(|i| ground.label(i).as_str())
                .collect::<Vec<_>>()
                .join(sep)
        })
        .collect::<Vec<_>>()
        .join("|")
}

impl SetComposition {
    pub fn new(blocks: Vec<SubsetMask>) -> Result<Self> {
        check_blocks(&blocks).map_err(Error::CompositionMismatch)?;
        Ok(SetComposition { blocks })
    }

    pub(crate) fn from_blocks_unchecked(blocks: Vec<SubsetMask>) -> Self {
        SetComposition { blocks }
    }

    /// The one-block composition of `ground` (empty when the ground is).
    pub fn one_block(ground: &GroundSet) -> Self {
        let full = ground.full_mask();
        SetComposition {
            blocks: if full == 0 { Vec::new() } else { vec![full] },
        }
    }

    /// Parse `1|23` or `1|2,3` (commas are required for multi-character labels).
    pub fn parse(ground: &GroundSet, text: &str) -> Result<Self> {
        let blocks = parse_blocks(ground, text).map_err(|m| Error::parse(1, m))?;
        let c = SetComposition::new(blocks)?;
        c.check_composes(ground)?;
        Ok(c)
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn union(&self) -> SubsetMask {
        self.blocks.iter().fold(0, |a, &b| a | b)
    }

    pub fn check_composes(&self, ground: &GroundSet) -> Result<()> {
        if self.union() != ground.full_mask() {
            return Err(Error::CompositionMismatch(format!(
                "blocks cover {:#b}, ground is {}",
                self.union(),
                ground
            )));
        }
        Ok(())
    }

    /// Block index of every position `0..n`; `usize::MAX` where uncovered.
    pub fn block_index(&self, n: usize) -> Vec<usize> {
        let mut idx = vec![usize::MAX; n];
        for (k, &b) in self.blocks.iter().enumerate() {
            for i in bits(b) {
                idx[i] = k;
            }
        }
        idx
    }

    pub fn to_partition(&self) -> SetPartition {
        SetPartition::from_blocks_unchecked(self.blocks.clone())
    }

    pub fn show(&self, ground: &GroundSet) -> String {
        show_blocks(ground, &self.blocks)
    }
}

impl fmt::Debug for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| bits(b).map(|i| i.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "Comp({})", parts.join("|"))
    }
}

impl SetPartition {
    pub fn new(blocks: Vec<SubsetMask>) -> Result<Self> {
        check_blocks(&blocks).map_err(Error::PartitionMismatch)?;
        Ok(Self::from_blocks_unchecked(blocks))
    }

    pub(crate) fn from_blocks_unchecked(mut blocks: Vec<SubsetMask>) -> Self {
        blocks.sort_unstable_by_key(|b| b.trailing_zeros());
        SetPartition { blocks }
    }

    /// All elements of `within` as singleton blocks.
    pub fn singletons(within: SubsetMask) -> Self {
        SetPartition {
            blocks: bits(within).map(|i| 1 << i).collect(),
        }
    }

    pub fn one_block(within: SubsetMask) -> Self {
        SetPartition {
            blocks: if within == 0 { Vec::new() } else { vec![within] },
        }
    }

    pub fn parse(ground: &GroundSet, text: &str) -> Result<Self> {
        let blocks = parse_blocks(ground, text).map_err(|m| Error::parse(1, m))?;
        let p = SetPartition::new(blocks)?;
        p.check_partitions(ground)?;
        Ok(p)
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn union(&self) -> SubsetMask {
        self.blocks.iter().fold(0, |a, &b| a | b)
    }

    pub fn check_partitions(&self, ground: &GroundSet) -> Result<()> {
        if self.union() != ground.full_mask() {
            return Err(Error::PartitionMismatch(format!(
                "blocks cover {:#b}, ground is {}",
                self.union(),
                ground
            )));
        }
        Ok(())
    }

    /// Coarsest common refinement: the nonempty intersections of blocks.
    pub fn meet(&self, other: &SetPartition) -> SetPartition {
        let mut blocks = Vec::new();
        for &a in &self.blocks {
            for &b in &other.blocks {
                if a & b != 0 {
                    blocks.push(a & b);
                }
            }
        }
        SetPartition::from_blocks_unchecked(blocks)
    }

    /// `self ≤ other` in reverse refinement: every block of `other` is a
    /// union of blocks of `self`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        self.blocks
            .iter()
            .all(|&a| other.blocks.iter().any(|&b| a & b == a))
    }

    /// Number of one-element blocks.
    pub fn singleton_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.count_ones() == 1).count()
    }

    /// Every ordering of the blocks, in lexicographic permutation order.
    pub fn orderings(&self) -> impl Iterator<Item = SetComposition> + '_ {
        Permutations::new(self.blocks.len()).map(move |perm| {
            SetComposition::from_blocks_unchecked(perm.iter().map(|&k| self.blocks[k]).collect())
        })
    }

    pub fn show(&self, ground: &GroundSet) -> String {
        show_blocks(ground, &self.blocks)
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| bits(b).map(|i| i.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "Part({})", parts.join("|"))
    }
}

/// Set partitions of a mask in restricted-growth-string order.
pub struct SetPartitions {
    elems: Vec<usize>,
    rgs: Vec<usize>,
    prefix_max: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(within: SubsetMask) -> Self {
        let elems: Vec<usize> = bits(within).collect();
        let n = elems.len();
        SetPartitions {
            elems,
            rgs: vec![0; n],
            prefix_max: vec![0; n],
            done: false,
        }
    }

    fn current(&self) -> SetPartition {
        let count = self.prefix_max.last().map_or(0, |m| m + 1);
        let mut blocks = vec![0; count];
        for (k, &e) in self.elems.iter().enumerate() {
            blocks[self.rgs[k]] |= 1 << e;
        }
        SetPartition { blocks }
    }

    fn advance(&mut self) {
        let n = self.elems.len();
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let p = self.current();
        self.advance();
        Some(p)
    }
}

/// Index permutations of `0..n` in lexicographic order.
struct Permutations {
    perm: Vec<usize>,
    done: bool,
}

impl Permutations {
    fn new(n: usize) -> Self {
        Permutations {
            perm: (0..n).collect(),
            done: false,
        }
    }
}

impl Iterator for Permutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.perm.clone();
        let p = &mut self.perm;
        match (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) {
            None => self.done = true,
            Some(i) => {
                let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
                p.swap(i - 1, j);
                p[i..].reverse();
            }
        }
        Some(out)
    }
}

/// Every set partition of the ground set, restricted-growth-string order.
pub fn enumerate_partitions(ground: &GroundSet) -> SetPartitions {
    SetPartitions::new(ground.full_mask())
}

/// Every set partition of the positions in `within`.
pub fn partitions_of(within: SubsetMask) -> SetPartitions {
    SetPartitions::new(within)
}

/// Every set composition of the ground set.
pub fn enumerate_compositions(ground: &GroundSet) -> impl Iterator<Item = SetComposition> {
    compositions_of(ground.full_mask())
}

pub fn compositions_of(within: SubsetMask) -> impl Iterator<Item = SetComposition> {
    SetPartitions::new(within).flat_map(|p| {
        let blocks = p.blocks;
        Permutations::new(blocks.len()).map(move |perm| {
            SetComposition::from_blocks_unchecked(perm.iter().map(|&k| blocks[k]).collect())
        })
    })
}
