//! Simplicial complexes as grounded set families: partition-indexed
//! decompositions, support systems, fundamental inflators and the grouped
//! antipode.

mod inflate;
mod skeleton;

use std::fmt;

use crate::error::{Error, Result};
use crate::sf::classify::is_simplicial;
use crate::sf::ground::{submasks, GroundSet, Label, SubsetMask};
use crate::sf::GroundedSetFamily;

pub use inflate::{
    antipode_simp, antipode_simp_grouped, antipode_simp_with, decomp, fundamental_inflator,
    fundamental_inflators, join_decomposition, join_length, support_system_simp, GroupedTerm,
    InflationRecord,
};
pub use skeleton::{antipode_skeleton, antipode_skeleton_with, complete_colorful, interval_alternating_sum, p_count, skeleton};

/// A simplicial complex stored by its facets.
///
/// Facets are kept as a sorted antichain; the trivial complex `{∅}` has the
/// single facet `∅`. Ground elements that lie in no facet are phantoms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    ground: GroundSet,
    facets: Vec<SubsetMask>,
}

impl SimplicialComplex {
    /// Build from label lists of (not necessarily maximal) faces.
    pub fn new<M, S, L>(ground: GroundSet, faces: M) -> Result<Self>
    where
        M: IntoIterator<Item = S>,
        S: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        let mut masks = Vec::new();
        for face in faces {
            let labels: Vec<Label> = face.into_iter().map(Into::into).collect();
            let mask = ground.mask_of(labels.iter()).map_err(|_| {
                let shown: Vec<&str> = labels.iter().map(Label::as_str).collect();
                Error::FaceOutsideGround(format!("{{{}}}", shown.join(",")))
            })?;
            masks.push(mask);
        }
        Ok(Self::from_faces_unchecked(ground, masks))
    }

    pub fn from_masks(ground: GroundSet, faces: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let faces: Vec<SubsetMask> = faces.into_iter().collect();
        if let Some(&bad) = faces.iter().find(|&&m| !ground.is_subset_mask(m)) {
            return Err(Error::FaceOutsideGround(format!("{bad:#b}")));
        }
        Ok(Self::from_faces_unchecked(ground, faces))
    }

    pub(crate) fn from_faces_unchecked(ground: GroundSet, faces: Vec<SubsetMask>) -> Self {
        SimplicialComplex {
            ground,
            facets: maximal(faces),
        }
    }

    /// The complex `{∅}`: every ground element is a phantom.
    pub fn trivial(ground: GroundSet) -> Self {
        SimplicialComplex { ground, facets: vec![0] }
    }

    pub fn simplex(ground: GroundSet) -> Self {
        let full = ground.full_mask();
        SimplicialComplex { ground, facets: vec![full] }
    }

    pub fn from_family(family: &GroundedSetFamily) -> Result<Self> {
        if !is_simplicial(family) {
            return Err(Error::WrongClass("a simplicial complex"));
        }
        Ok(Self::from_faces_unchecked(family.ground().clone(), family.members().to_vec()))
    }

    /// Every face, as a grounded set family.
    pub fn to_family(&self) -> GroundedSetFamily {
        let faces = self.facets.iter().flat_map(|&f| submasks(f)).collect();
        GroundedSetFamily::from_masks_unchecked(self.ground.clone(), faces)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn facets(&self) -> &[SubsetMask] {
        &self.facets
    }

    pub fn contains(&self, face: SubsetMask) -> bool {
        self.facets.iter().any(|&f| face & !f == 0)
    }

    pub fn vertices(&self) -> SubsetMask {
        self.facets.iter().fold(0, |a, &f| a | f)
    }

    pub fn phantoms(&self) -> SubsetMask {
        self.ground.full_mask() & !self.vertices()
    }

    /// Every face of `other` is a face of `self`.
    pub fn contains_complex(&self, other: &SimplicialComplex) -> bool {
        other.facets.iter().all(|&f| self.contains(f))
    }

    /// Restriction to the positions in `s`, kept on the full ground set.
    pub(crate) fn restricted_facets(&self, s: SubsetMask) -> Vec<SubsetMask> {
        maximal(self.facets.iter().map(|&f| f & s).collect())
    }

    pub fn facet_labels(&self) -> Vec<Vec<Label>> {
        self.facets.iter().map(|&f| self.ground.labels_of(f)).collect()
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets.iter().map(|&m| self.ground.show(m)).collect();
        write!(f, "<{}> on {}", facets.join(","), self.ground)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The inclusion-maximal masks, sorted.
pub(crate) fn maximal(mut faces: Vec<SubsetMask>) -> Vec<SubsetMask> {
    faces.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
    faces.dedup();
    let mut kept: Vec<SubsetMask> = Vec::new();
    for m in faces {
        if !kept.iter().any(|&k| m & !k == 0) {
            kept.push(m);
        }
    }
    if kept.is_empty() {
        kept.push(0);
    }
    kept.sort_unstable();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_antichain() {
        let x = SimplicialComplex::new(GroundSet::range(4), [vec![1, 2, 3], vec![3, 4], vec![1, 2]]).unwrap();
        assert_eq!(x.facets(), &[0b0111, 0b1100]);
        let y = SimplicialComplex::new(GroundSet::range(2), [vec![1], vec![1, 2]]).unwrap();
        assert_eq!(y.facets(), &[0b11]);
    }

    #[test]
    fn empty_facet_list_is_trivial() {
        let x = SimplicialComplex::new(GroundSet::range(1), Vec::<Vec<u32>>::new()).unwrap();
        assert_eq!(x, SimplicialComplex::trivial(GroundSet::range(1)));
        assert_eq!(x.phantoms(), 1);
        assert_eq!(x.to_family(), GroundedSetFamily::trivial(GroundSet::range(1)));
    }

    #[test]
    fn face_outside_ground() {
        let err = SimplicialComplex::new(GroundSet::range(2), [vec![1, 5]]).unwrap_err();
        assert!(matches!(err, Error::FaceOutsideGround(_)));
    }

    #[test]
    fn family_round_trip() {
        let x = SimplicialComplex::new(GroundSet::range(4), [vec![1, 2, 3], vec![3, 4]]).unwrap();
        let f = x.to_family();
        assert_eq!(f.len(), 8 + 2);
        assert_eq!(SimplicialComplex::from_family(&f).unwrap(), x);
        let chain = GroundedSetFamily::from_masks(GroundSet::range(2), [0, 1, 3], false).unwrap();
        assert!(SimplicialComplex::from_family(&chain).is_err());
    }
}
