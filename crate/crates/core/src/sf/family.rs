use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use super::compose::SetComposition;
use super::ground::{bits, compress, GroundSet, Label, SubsetMask};
use crate::error::{Error, Result};

/// A grounded set family `(F, I)`: a family of subsets of the ground set
/// `I` that contains the empty set.
///
/// Members are stored as sorted, deduplicated masks, so structural equality
/// is labeled equality of the pair (ground set, member set).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundedSetFamily {
    ground: GroundSet,
    members: Vec<SubsetMask>,
}

impl GroundedSetFamily {
    /// Build a family from label lists. A missing empty set is an error
    /// unless `implicit_empty` is set, in which case it is added.
    pub fn new<M, S, L>(ground: GroundSet, members: M, implicit_empty: bool) -> Result<Self>
    where
        M: IntoIterator<Item = S>,
        S: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        let mut masks = Vec::new();
        for member in members {
            let labels: Vec<Label> = member.into_iter().map(Into::into).collect();
            let mask = ground.mask_of(labels.iter()).map_err(|_| {
                let shown: Vec<&str> = labels.iter().map(Label::as_str).collect();
                Error::MemberOutsideGround(format!("{{{}}}", shown.join(",")))
            })?;
            masks.push(mask);
        }
        Self::from_masks(ground, masks, implicit_empty)
    }

    pub fn from_masks(
        ground: GroundSet,
        masks: impl IntoIterator<Item = SubsetMask>,
        implicit_empty: bool,
    ) -> Result<Self> {
        let mut members: Vec<SubsetMask> = masks.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| !ground.is_subset_mask(m)) {
            return Err(Error::MemberOutsideGround(format!("{bad:#b}")));
        }
        if implicit_empty {
            members.push(0);
        }
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::NotGrounded);
        }
        Ok(GroundedSetFamily { ground, members })
    }

    /// Caller guarantees the masks are inside the ground set and include 0.
    pub(crate) fn from_masks_unchecked(ground: GroundSet, mut members: Vec<SubsetMask>) -> Self {
        members.sort_unstable();
        members.dedup();
        debug_assert_eq!(members.first(), Some(&0));
        debug_assert!(members.iter().all(|&m| ground.is_subset_mask(m)));
        GroundedSetFamily { ground, members }
    }

    /// The trivial family `{∅}`, the unit for join.
    pub fn trivial(ground: GroundSet) -> Self {
        GroundedSetFamily {
            ground,
            members: vec![0],
        }
    }

    /// The full power set of the ground set.
    pub fn boolean(ground: GroundSet) -> Self {
        let members = super::ground::submasks(ground.full_mask()).collect();
        GroundedSetFamily { ground, members }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false: a grounded family contains at least the empty set.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, mask: SubsetMask) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    /// Union of all members.
    pub fn support(&self) -> SubsetMask {
        self.members.iter().fold(0, |acc, &m| acc | m)
    }

    /// Ground elements that lie in no member.
    pub fn phantoms(&self) -> SubsetMask {
        self.ground.full_mask() & !self.support()
    }

    /// Members as label lists, in canonical order.
    pub fn member_labels(&self) -> Vec<Vec<Label>> {
        self.members
            .iter()
            .map(|&m| self.ground.labels_of(m))
            .collect()
    }

    /// The join `F1 * F2 = {X ∪ Y}` on the disjoint union of the grounds.
    pub fn join(&self, other: &GroundedSetFamily) -> Result<GroundedSetFamily> {
        let ground = self.ground.disjoint_union(&other.ground)?;
        let left = self.ground.position_map(&ground)?;
        let right = other.ground.position_map(&ground)?;
        let a: Vec<SubsetMask> = self.members.iter().map(|&m| remap(m, &left)).collect();
        let b: Vec<SubsetMask> = other.members.iter().map(|&m| remap(m, &right)).collect();
        Ok(GroundedSetFamily::from_masks_unchecked(
            ground,
            join_masks(&a, &b),
        ))
    }

    /// Restriction `F|_S = {F ∩ S}` on ground `S`.
    pub fn restrict(&self, s: SubsetMask) -> Result<GroundedSetFamily> {
        if !self.ground.is_subset_mask(s) {
            return Err(Error::SubsetOutsideGround);
        }
        let members = self.members.iter().map(|&m| compress(m & s, s)).collect();
        Ok(GroundedSetFamily::from_masks_unchecked(
            self.ground.subset(s),
            members,
        ))
    }

    /// Contraction `F/_S = {F : F ∩ S = ∅}` on ground `I ∖ S`.
    pub fn contract(&self, s: SubsetMask) -> Result<GroundedSetFamily> {
        if !self.ground.is_subset_mask(s) {
            return Err(Error::SubsetOutsideGround);
        }
        let rest = self.ground.full_mask() & !s;
        let members = self
            .members
            .iter()
            .filter(|&&m| m & s == 0)
            .map(|&m| compress(m, rest))
            .collect();
        Ok(GroundedSetFamily::from_masks_unchecked(
            self.ground.subset(rest),
            members,
        ))
    }

    /// The pair `(F|_S, F/_S)`.
    pub fn coproduct(&self, s: SubsetMask) -> Result<(GroundedSetFamily, GroundedSetFamily)> {
        Ok((self.restrict(s)?, self.contract(s)?))
    }

    /// `Δ_Φ(F) = (F_1, ..., F_m)` with `F_i = {A ∩ Φ_i : A ∩ Φ_j = ∅ for j < i}`.
    pub fn iterated_coproduct(&self, phi: &SetComposition) -> Result<Vec<GroundedSetFamily>> {
        phi.check_composes(&self.ground)?;
        let mut current = self.members.clone();
        let mut out = Vec::with_capacity(phi.len());
        for &block in phi.blocks() {
            let part = current.iter().map(|&m| compress(m & block, block)).collect();
            out.push(GroundedSetFamily::from_masks_unchecked(
                self.ground.subset(block),
                part,
            ));
            current.retain(|&m| m & block == 0);
        }
        Ok(out)
    }

    /// `μ_Φ ∘ Δ_Φ`: the join of the iterated coproduct factors, placed back on
    /// the original ground set.
    pub fn mu_delta(&self, phi: &SetComposition) -> Result<GroundedSetFamily> {
        phi.check_composes(&self.ground)?;
        Ok(GroundedSetFamily::from_masks_unchecked(
            self.ground.clone(),
            mu_delta_masks(&self.members, phi.blocks()),
        ))
    }

    /// Extend the ground set by a phantom `x`.
    pub fn add_phantom(&self, x: impl Into<Label>) -> Result<GroundedSetFamily> {
        let ground = self.ground.with_label(x.into())?;
        self.embed(ground)
    }

    /// Same members on a larger ground set; new elements are phantoms.
    pub fn embed(&self, ground: GroundSet) -> Result<GroundedSetFamily> {
        let map = self.ground.position_map(&ground)?;
        let members = self.members.iter().map(|&m| remap(m, &map)).collect();
        Ok(GroundedSetFamily::from_masks_unchecked(ground, members))
    }

    /// Apply a bijection of labels (species functoriality). Labels missing
    /// from `bijection` are left unchanged.
    pub fn relabel(&self, bijection: &HashMap<Label, Label>) -> Result<GroundedSetFamily> {
        let image = |l: &Label| bijection.get(l).cloned().unwrap_or_else(|| l.clone());
        let ground = GroundSet::new(self.ground.labels().iter().map(image))?;
        let map: Vec<usize> = self
            .ground
            .labels()
            .iter()
            .map(|l| ground.index_of(&image(l)).expect("image label present"))
            .collect();
        let members = self.members.iter().map(|&m| remap(m, &map)).collect();
        Ok(GroundedSetFamily::from_masks_unchecked(ground, members))
    }

    /// A random family on `ground`: each nonempty subset is kept with
    /// probability `density`.
    pub fn random<R: Rng + ?Sized>(ground: GroundSet, density: f64, rng: &mut R) -> Self {
        let members = super::ground::submasks(ground.full_mask())
            .filter(|&m| m == 0 || rng.gen_bool(density))
            .collect();
        GroundedSetFamily::from_masks_unchecked(ground, members)
    }
}

impl fmt::Display for GroundedSetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.members.iter().map(|&m| self.ground.show(m)).collect();
        write!(f, "[{}] on {}", shown.join(", "), self.ground)
    }
}

impl fmt::Debug for GroundedSetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn remap(mask: SubsetMask, map: &[usize]) -> SubsetMask {
    bits(mask).fold(0, |acc, i| acc | 1 << map[i])
}

/// All pairwise unions, sorted and deduplicated.
pub(crate) fn join_masks(a: &[SubsetMask], b: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x | y);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `μ_Φ Δ_Φ` at the mask level, all masks in the original positions.
pub(crate) fn mu_delta_masks(members: &[SubsetMask], blocks: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut current: Vec<SubsetMask> = members.to_vec();
    let mut joined = vec![0];
    for &block in blocks {
        let mut part: Vec<SubsetMask> = current.iter().map(|&m| m & block).collect();
        part.sort_unstable();
        part.dedup();
        joined = join_masks(&joined, &part);
        current.retain(|&m| m & block == 0);
    }
    joined
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(ground: &[u32], members: &[&[u32]]) -> GroundedSetFamily {
        GroundedSetFamily::new(
            GroundSet::new(ground.iter().copied()).unwrap(),
            members.iter().map(|m| m.iter().copied()),
            false,
        )
        .unwrap()
    }

    #[test]
    fn make_family_examples() {
        let f = fam(&[1, 2], &[&[], &[1], &[1, 2]]);
        assert_eq!(f.len(), 3);
        let t = fam(&[2], &[&[]]);
        assert_eq!(t.phantoms(), 1);
        let err = GroundedSetFamily::new(GroundSet::range(1), [[1u32]], false);
        assert_eq!(err, Err(Error::NotGrounded));
        let ok = GroundedSetFamily::new(GroundSet::range(1), [[1u32]], true).unwrap();
        assert_eq!(ok.members(), &[0, 1]);
        let outside = GroundedSetFamily::new(GroundSet::range(1), [vec![], vec![3u32]], false);
        assert!(matches!(outside, Err(Error::MemberOutsideGround(_))));
    }

    #[test]
    fn phantom_examples() {
        assert_eq!(fam(&[1], &[&[], &[1]]).phantoms(), 0);
        let f = fam(&[1, 2, 3], &[&[], &[1]]);
        assert_eq!(f.ground().labels_of(f.phantoms()), vec![Label::from(2), Label::from(3)]);
    }

    #[test]
    fn join_examples() {
        let a = fam(&[1], &[&[], &[1]]);
        let b = fam(&[2], &[&[], &[2]]);
        assert_eq!(a.join(&b).unwrap(), fam(&[1, 2], &[&[], &[1], &[2], &[1, 2]]));
        let f = fam(&[1, 2], &[&[], &[1], &[1, 2]]);
        let unit = GroundedSetFamily::trivial(GroundSet::empty());
        assert_eq!(f.join(&unit).unwrap(), f);
        assert_eq!(unit.join(&f).unwrap(), f);
        assert!(matches!(f.join(&a), Err(Error::OverlappingGrounds(_))));
    }

    #[test]
    fn restrict_and_contract_examples() {
        let f = fam(&[1, 2], &[&[], &[1], &[1, 2]]);
        assert_eq!(f.restrict(0b01).unwrap(), fam(&[1], &[&[], &[1]]));
        assert_eq!(f.restrict(0).unwrap(), GroundedSetFamily::trivial(GroundSet::empty()));
        assert_eq!(f.restrict(0b11).unwrap(), f);
        assert_eq!(f.contract(0b01).unwrap(), fam(&[2], &[&[]]));
        assert_eq!(f.contract(0).unwrap(), f);
        assert_eq!(f.contract(0b11).unwrap(), GroundedSetFamily::trivial(GroundSet::empty()));
        assert_eq!(f.restrict(0b100), Err(Error::SubsetOutsideGround));
    }

    #[test]
    fn iterated_coproduct_examples() {
        let f = fam(&[1, 2], &[&[], &[1], &[1, 2]]);
        let g = f.ground().clone();
        let one = SetComposition::parse(&g, "12").unwrap();
        assert_eq!(f.iterated_coproduct(&one).unwrap(), vec![f.clone()]);
        // the first block sees every member: {1,2} ∩ {2} = {2}
        let two_one = SetComposition::parse(&g, "2|1").unwrap();
        assert_eq!(
            f.iterated_coproduct(&two_one).unwrap(),
            vec![fam(&[2], &[&[], &[2]]), fam(&[1], &[&[], &[1]])]
        );
        let one_two = SetComposition::parse(&g, "1|2").unwrap();
        assert_eq!(
            f.iterated_coproduct(&one_two).unwrap(),
            vec![fam(&[1], &[&[], &[1]]), fam(&[2], &[&[]])]
        );
    }

    #[test]
    fn add_phantom_examples() {
        let unit = GroundedSetFamily::trivial(GroundSet::empty());
        assert_eq!(unit.add_phantom(1).unwrap(), fam(&[1], &[&[]]));
        let f = fam(&[1], &[&[], &[1]]);
        assert_eq!(f.add_phantom(2).unwrap(), fam(&[1, 2], &[&[], &[1]]));
        let twice = f.add_phantom("x").unwrap().add_phantom("y").unwrap();
        assert_eq!(twice.ground().len(), 3);
        assert_eq!(twice.phantoms().count_ones(), 2);
        assert_eq!(f.add_phantom(1), Err(Error::LabelAlreadyPresent("1".into())));
    }
}
