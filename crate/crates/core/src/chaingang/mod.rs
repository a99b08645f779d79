//! The Hopf algebra of lattices of order ideals of chain gangs, up to
//! isomorphism, and its character group.

mod character;
mod hopf;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use character::{DEFAULT_TRUNCATION, exorcism_to_series, geometric_convolve, series_to_char, Character, PowerSeries};
pub use hopf::{
    cg_antipode, cg_class_of, cg_coproduct, cg_counit, cg_image, cg_product, chain_gang_family, quotient_to_sym,
};

/// `C_λ F^p`: chains of sizes `λ` (weakly decreasing) plus `p` phantoms.
///
/// Ordered by degree, then phantom count, then `λ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CGBasis {
    lambda: Vec<usize>,
    p: usize,
}

impl CGBasis {
    /// Parts are sorted into decreasing order; zero parts are dropped
    /// (`C_0` is the unit).
    pub fn new(mut lambda: Vec<usize>, p: usize) -> Self {
        lambda.retain(|&x| x > 0);
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        CGBasis { lambda, p }
    }

    pub fn unit() -> Self {
        CGBasis::new(Vec::new(), 0)
    }

    pub fn chain(n: usize) -> Self {
        CGBasis::new(vec![n], 0)
    }

    pub fn phantom() -> Self {
        CGBasis::new(Vec::new(), 1)
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn phantoms(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.lambda.iter().sum::<usize>() + self.p
    }

    pub fn is_unit(&self) -> bool {
        self.lambda.is_empty() && self.p == 0
    }

    pub fn times(&self, other: &CGBasis) -> CGBasis {
        let mut lambda = self.lambda.clone();
        lambda.extend_from_slice(&other.lambda);
        CGBasis::new(lambda, self.p + other.p)
    }
}

impl Ord for CGBasis {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.p, &self.lambda).cmp(&(other.degree(), other.p, &other.lambda))
    }
}

impl PartialOrd for CGBasis {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CGBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        if !self.lambda.is_empty() {
            let parts: Vec<String> = self.lambda.iter().map(usize::to_string).collect();
            write!(f, "C[{}]", parts.join(","))?;
        }
        match self.p {
            0 => Ok(()),
            1 => write!(f, "F"),
            p => write!(f, "F^{p}"),
        }
    }
}

impl fmt::Debug for CGBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite rational combination of [`CGBasis`] elements.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct CGSum {
    terms: BTreeMap<CGBasis, BigRational>,
}

impl CGSum {
    pub fn zero() -> Self {
        CGSum::default()
    }

    pub fn one() -> Self {
        CGSum::basis(CGBasis::unit())
    }

    pub fn basis(b: CGBasis) -> Self {
        CGSum::term(b, BigRational::one())
    }

    pub fn term(b: CGBasis, coeff: BigRational) -> Self {
        let mut s = CGSum::zero();
        s.add_term(b, coeff);
        s
    }

    pub fn chain(n: usize) -> Self {
        CGSum::basis(CGBasis::chain(n))
    }

    pub fn phantom() -> Self {
        CGSum::basis(CGBasis::phantom())
    }

    pub fn add_term(&mut self, b: CGBasis, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(b).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: &CGBasis) -> BigRational {
        self.terms.get(b).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in basis order.
    pub fn iter(&self) -> impl Iterator<Item = (&CGBasis, &BigRational)> {
        self.terms.iter()
    }

    /// Highest degree of a term, 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(CGBasis::degree).max().unwrap_or(0)
    }

    pub fn homogeneous(&self, degree: usize) -> CGSum {
        CGSum {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == degree)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> CGSum {
        let mut out = CGSum::zero();
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c * k);
        }
        out
    }

    /// Coefficients are all integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl Add for &CGSum {
    type Output = CGSum;
    fn add(self, other: &CGSum) -> CGSum {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CGSum {
    type Output = CGSum;
    fn sub(self, other: &CGSum) -> CGSum {
        self + &(-other)
    }
}

impl Neg for &CGSum {
    type Output = CGSum;
    fn neg(self) -> CGSum {
        CGSum {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }
}

impl Mul for &CGSum {
    type Output = CGSum;
    fn mul(self, other: &CGSum) -> CGSum {
        let mut out = CGSum::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.times(b), x * y);
            }
        }
        out
    }
}

fn show_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for CGSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let negative = c < &BigRational::zero();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{}*{b}", show_coeff(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CGSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite rational combination of tensors `x ⊗ y` of basis elements.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct CGTensor {
    terms: BTreeMap<(CGBasis, CGBasis), BigRational>,
}

impl CGTensor {
    pub fn zero() -> Self {
        CGTensor::default()
    }

    pub fn one() -> Self {
        let mut t = CGTensor::zero();
        t.add_term(CGBasis::unit(), CGBasis::unit(), BigRational::one());
        t
    }

    pub fn add_term(&mut self, left: CGBasis, right: CGBasis, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, left: &CGBasis, right: &CGBasis) -> BigRational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CGBasis, &CGBasis, &BigRational)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Apply linear maps to each leg.
    pub fn map(&self, mut left: impl FnMut(&CGBasis) -> CGSum, mut right: impl FnMut(&CGBasis) -> CGSum) -> CGTensor {
        let mut out = CGTensor::zero();
        for ((l, r), c) in &self.terms {
            let fl = left(l);
            let fr = right(r);
            for (a, x) in fl.iter() {
                for (b, y) in fr.iter() {
                    out.add_term(a.clone(), b.clone(), c * x * y);
                }
            }
        }
        out
    }

    /// `μ`: multiply the two legs.
    pub fn multiply(&self) -> CGSum {
        let mut out = CGSum::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(l.times(r), c.clone());
        }
        out
    }
}

impl Mul for &CGTensor {
    type Output = CGTensor;
    fn mul(self, other: &CGTensor) -> CGTensor {
        let mut out = CGTensor::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                out.add_term(a.times(c), b.times(d), x * y);
            }
        }
        out
    }
}

impl fmt::Display for CGTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| {
                if c.is_one() {
                    format!("{l} (x) {r}")
                } else {
                    format!("{}*{l} (x) {r}", show_coeff(c))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CGTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
pub(crate) fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}
