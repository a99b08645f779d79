use std::fmt;

use serde::Serialize;

use super::family::GroundedSetFamily;
use super::ground::{bits, submasks};

/// Which of the standard Hopf-submonoid conditions a family satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct FamilyClasses {
    pub accessible: bool,
    pub union_closed: bool,
    pub intersection_closed: bool,
    pub simplicial: bool,
    /// The exchange condition: `|A| < |B|` gives `x ∈ B∖A` with `A+x ∈ F`.
    pub donation: bool,
    pub matroid: bool,
    pub antimatroid: bool,
    pub topology: bool,
    /// Every subset of the support is a member.
    pub boolean: bool,
    /// `F = J(P)` for a poset `P` on the support (phantoms allowed).
    pub order_ideal_lattice: bool,
}

impl FamilyClasses {
    pub fn names(&self) -> Vec<&'static str> {
        [
            (self.accessible, "accessible"),
            (self.union_closed, "union-closed"),
            (self.intersection_closed, "intersection-closed"),
            (self.simplicial, "simplicial"),
            (self.donation, "donation"),
            (self.matroid, "matroid"),
            (self.antimatroid, "antimatroid"),
            (self.topology, "topology"),
            (self.boolean, "boolean"),
            (self.order_ideal_lattice, "order-ideal-lattice"),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect()
    }
}

impl fmt::Display for FamilyClasses {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names().join(" "))
    }
}

pub fn classify_family(family: &GroundedSetFamily) -> FamilyClasses {
    let accessible = is_accessible(family);
    let union_closed = is_union_closed(family);
    let intersection_closed = is_intersection_closed(family);
    let simplicial = is_simplicial(family);
    let donation = satisfies_donation(family);
    let boolean = is_boolean(family);
    FamilyClasses {
        accessible,
        union_closed,
        intersection_closed,
        simplicial,
        donation,
        matroid: simplicial && donation,
        antimatroid: accessible && union_closed,
        topology: intersection_closed && union_closed && family.contains(family.ground().full_mask()),
        boolean,
        order_ideal_lattice: accessible && union_closed && intersection_closed,
    }
}

pub fn is_accessible(family: &GroundedSetFamily) -> bool {
    family
        .members()
        .iter()
        .filter(|&&m| m != 0)
        .all(|&m| bits(m).any(|i| family.contains(m & !(1 << i))))
}

pub fn is_union_closed(family: &GroundedSetFamily) -> bool {
    pairwise(family, |a, b| a | b)
}

pub fn is_intersection_closed(family: &GroundedSetFamily) -> bool {
    pairwise(family, |a, b| a & b)
}

/// Closed under taking subsets. Checking single-element deletions suffices.
pub fn is_simplicial(family: &GroundedSetFamily) -> bool {
    family
        .members()
        .iter()
        .all(|&m| bits(m).all(|i| family.contains(m & !(1 << i))))
}

pub fn satisfies_donation(family: &GroundedSetFamily) -> bool {
    let ms = family.members();
    ms.iter().all(|&a| {
        ms.iter().all(|&b| {
            a.count_ones() >= b.count_ones() || bits(b & !a).any(|i| family.contains(a | 1 << i))
        })
    })
}

fn pairwise(family: &GroundedSetFamily, op: impl Fn(u64, u64) -> u64) -> bool {
    let ms = family.members();
    ms.iter()
        .enumerate()
        .all(|(i, &a)| ms[i + 1..].iter().all(|&b| family.contains(op(a, b))))
}

/// Whether `family` is the full power set of its support.
pub fn is_boolean(family: &GroundedSetFamily) -> bool {
    let support = family.support();
    submasks(support).all(|m| family.contains(m))
}
