use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of a [`GroundSet`], bit `i` standing for the `i`-th label.
pub type SubsetMask = u64;

/// Hard width of a [`SubsetMask`].
pub const MASK_BITS: usize = 64;

/// An atom of a ground set.
///
/// Labels that parse as unsigned integers sort numerically and before all
/// other labels, so `2 < 10 < a`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Self {
        Label(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric(&self) -> Option<u128> {
        if self.0.is_empty() || !self.0.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        self.0.parse().ok()
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_string())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

impl From<&String> for Label {
    fn from(s: &String) -> Self {
        Label(s.clone())
    }
}

impl From<&Label> for Label {
    fn from(l: &Label) -> Self {
        l.clone()
    }
}

macro_rules! label_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Label {
            fn from(n: $t) -> Self {
                Label(n.to_string())
            }
        }
    )*};
}
label_from_int!(u8, u16, u32, u64, usize, i32, i64);

/// A finite ground set with a canonical label order.
///
/// Labels are kept sorted (see [`Label`]'s ordering); the position of a
/// label in that order is its bit in every [`SubsetMask`] over this ground
/// set. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet {
    labels: Arc<[Label]>,
}

impl GroundSet {
    pub fn new<I, L>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        let mut labels: Vec<Label> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        for pair in labels.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateLabel(pair[0].to_string()));
            }
        }
        if labels.len() > MASK_BITS {
            return Err(Error::GroundTooLarge {
                size: labels.len(),
                cap: MASK_BITS,
            });
        }
        Ok(GroundSet {
            labels: labels.into(),
        })
    }

    /// The ground set `{1, ..., n}`.
    pub fn range(n: usize) -> Self {
        GroundSet::new(1..=n).expect("distinct integer labels")
    }

    pub fn empty() -> Self {
        GroundSet {
            labels: Arc::from(Vec::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn full_mask(&self) -> SubsetMask {
        full_mask(self.len())
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.index_of(label).is_some()
    }

    pub fn label(&self, index: usize) -> &Label {
        &self.labels[index]
    }

    /// Mask of the given labels; every label must belong to this set.
    pub fn mask_of<I, L>(&self, labels: I) -> Result<SubsetMask>
    where
        I: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        let mut mask = 0;
        for l in labels {
            let l = l.into();
            let i = self
                .index_of(&l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    pub fn labels_of(&self, mask: SubsetMask) -> Vec<Label> {
        bits(mask).map(|i| self.labels[i].clone()).collect()
    }

    pub fn is_subset_mask(&self, mask: SubsetMask) -> bool {
        mask & !self.full_mask() == 0
    }

    /// The sub-ground-set selected by `mask`; positions are re-packed.
    pub fn subset(&self, mask: SubsetMask) -> GroundSet {
        GroundSet {
            labels: bits(mask).map(|i| self.labels[i].clone()).collect(),
        }
    }

    /// Disjoint union of two ground sets.
    pub fn disjoint_union(&self, other: &GroundSet) -> Result<GroundSet> {
        if let Some(l) = self.labels.iter().find(|l| other.contains(l)) {
            return Err(Error::OverlappingGrounds(l.to_string()));
        }
        GroundSet::new(self.labels.iter().chain(other.labels.iter()))
    }

    pub fn with_label(&self, label: Label) -> Result<GroundSet> {
        if self.contains(&label) {
            return Err(Error::LabelAlreadyPresent(label.to_string()));
        }
        GroundSet::new(self.labels.iter().cloned().chain(std::iter::once(label)))
    }

    /// Translate a mask over `self` into a mask over `target`, which must
    /// contain every selected label.
    pub fn translate(&self, mask: SubsetMask, target: &GroundSet) -> Result<SubsetMask> {
        if self == target {
            return Ok(mask);
        }
        target.mask_of(bits(mask).map(|i| &self.labels[i]))
    }

    /// Translation table from positions of `self` to positions of `target`.
    pub(crate) fn position_map(&self, target: &GroundSet) -> Result<Vec<usize>> {
        self.labels
            .iter()
            .map(|l| {
                target
                    .index_of(l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect()
    }

    /// Renders a subset as `{a,b,c}`.
    pub fn show(&self, mask: SubsetMask) -> String {
        let inner: Vec<&str> = bits(mask).map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.show(self.full_mask()))
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.show(self.full_mask()))
    }
}

pub fn full_mask(n: usize) -> SubsetMask {
    if n >= MASK_BITS {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate the set bit positions of a mask in increasing order.
pub fn bits(mut mask: SubsetMask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Iterate all submasks of `mask`, including 0 and `mask` itself, in
/// increasing numeric order.
pub fn submasks(mask: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

/// Gather the bits of `mask` selected by `within` into the low bits
/// (software `pext`).
pub fn compress(mask: SubsetMask, within: SubsetMask) -> SubsetMask {
    let mut out = 0;
    for (k, i) in bits(within).enumerate() {
        if mask >> i & 1 == 1 {
            out |= 1 << k;
        }
    }
    out
}

/// Scatter the low bits of `mask` into the positions of `within`
/// (software `pdep`).
pub fn expand(mask: SubsetMask, within: SubsetMask) -> SubsetMask {
    let mut out = 0;
    for (k, i) in bits(within).enumerate() {
        if mask >> k & 1 == 1 {
            out |= 1 << i;
        }
    }
    out
}
