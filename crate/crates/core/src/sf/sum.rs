use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::family::GroundedSetFamily;
use super::ground::GroundSet;
use crate::error::{Error, Result};

/// A finite integer combination of grounded set families, all on one
/// ground set. Terms with zero coefficient are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalSum {
    ground: GroundSet,
    terms: BTreeMap<GroundedSetFamily, BigInt>,
}

impl FormalSum {
    pub fn zero(ground: GroundSet) -> Self {
        FormalSum {
            ground,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_family(family: GroundedSetFamily) -> Self {
        Self::from_term(family, BigInt::one())
    }

    pub fn from_term(family: GroundedSetFamily, coeff: BigInt) -> Self {
        let mut s = FormalSum::zero(family.ground().clone());
        if !coeff.is_zero() {
            s.terms.insert(family, coeff);
        }
        s
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Number of terms with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, family: &GroundedSetFamily) -> BigInt {
        self.terms.get(family).cloned().unwrap_or_default()
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&GroundedSetFamily, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, family: GroundedSetFamily, coeff: BigInt) -> Result<()> {
        if family.ground() != &self.ground {
            return Err(Error::GroundSetMismatch(
                family.ground().to_string(),
                self.ground.to_string(),
            ));
        }
        self.add_term_unchecked(family, coeff);
        Ok(())
    }

    pub(crate) fn add_term_unchecked(&mut self, family: GroundedSetFamily, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(family) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &FormalSum) -> Result<FormalSum> {
        self.check_ground(other)?;
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_term_unchecked(f.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FormalSum) -> Result<FormalSum> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FormalSum {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> FormalSum {
        let mut out = FormalSum::zero(self.ground.clone());
        if k.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(f, c)| (f.clone(), c * k))
            .collect();
        out
    }

    /// Bilinear extension of join to formal sums on disjoint ground sets.
    pub fn join(&self, other: &FormalSum) -> Result<FormalSum> {
        let ground = self.ground.disjoint_union(&other.ground)?;
        let mut out = FormalSum::zero(ground);
        for (f, a) in &self.terms {
            for (g, b) in &other.terms {
                out.add_term_unchecked(f.join(g)?, a * b);
            }
        }
        Ok(out)
    }

    /// Linear extension of a basis map. `target` is the ground set of the
    /// image; every image family must live on it.
    pub fn map_basis<F>(&self, target: GroundSet, mut f: F) -> Result<FormalSum>
    where
        F: FnMut(&GroundedSetFamily) -> Result<GroundedSetFamily>,
    {
        let mut out = FormalSum::zero(target);
        for (fam, c) in &self.terms {
            out.add_term(f(fam)?, c.clone())?;
        }
        Ok(out)
    }

    /// Linear extension of a map from basis elements to sums.
    pub fn map_linear<F>(&self, target: GroundSet, mut f: F) -> Result<FormalSum>
    where
        F: FnMut(&GroundedSetFamily) -> Result<FormalSum>,
    {
        let mut out = FormalSum::zero(target);
        for (fam, c) in &self.terms {
            out = out.add(&f(fam)?.scale(c))?;
        }
        Ok(out)
    }

    /// Whether every coefficient is `+1` or `-1`.
    pub fn is_signed_unit(&self) -> bool {
        self.terms.values().all(|c| c.abs().is_one())
    }

    /// The first term (in canonical order) where the two sums disagree,
    /// with the coefficients on each side.
    pub fn first_difference(&self, other: &FormalSum) -> Option<(GroundedSetFamily, BigInt, BigInt)> {
        let mut keys: Vec<&GroundedSetFamily> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|f| {
            let (a, b) = (self.coefficient(f), other.coefficient(f));
            (a != b).then(|| (f.clone(), a, b))
        })
    }

    fn check_ground(&self, other: &FormalSum) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundSetMismatch(
                self.ground.to_string(),
                other.ground.to_string(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (fam, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 || c.is_negative() {
                write!(f, "{sign} ")?;
            }
            write!(f, "{} · {}", c.abs(), fam)?;
            if i + 1 < self.terms.len() {
                write!(f, " ")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
