use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hopf::{cg_antipode, cg_coproduct};
use super::{binomial, CGBasis, CGSum};
use crate::error::{Error, Result};

/// `ζ_{a,t}`: the character with `ζ(F) = a` and `ζ(C_n) = t_n` for
/// `1 ≤ n ≤ N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    a: BigRational,
    t: Vec<BigRational>,
}

pub const DEFAULT_TRUNCATION: usize = 10;

impl Character {
    /// `t[0]` is the value on `C_1`; the truncation degree is `t.len()`.
    pub fn new(a: BigRational, t: Vec<BigRational>) -> Self {
        Character { a, t }
    }

    /// The counit `ε`, the identity of the character group.
    pub fn counit(truncation: usize) -> Self {
        Character::new(BigRational::zero(), vec![BigRational::zero(); truncation])
    }

    /// `γ_{u,r} = ζ_{u,(r, r², r³, ...)}`.
    pub fn geometric(u: BigRational, r: &BigRational, truncation: usize) -> Self {
        let mut t = Vec::with_capacity(truncation);
        let mut power = BigRational::one();
        for _ in 0..truncation {
            power *= r;
            t.push(power.clone());
        }
        Character::new(u, t)
    }

    pub fn truncation(&self) -> usize {
        self.t.len()
    }

    pub fn phantom_value(&self) -> &BigRational {
        &self.a
    }

    /// `t_n`, with `t_0 = 1`.
    pub fn chain_value(&self, n: usize) -> BigRational {
        if n == 0 {
            BigRational::one()
        } else {
            self.t[n - 1].clone()
        }
    }

    pub fn chain_values(&self) -> &[BigRational] {
        &self.t
    }

    pub fn is_exorcism(&self) -> bool {
        self.a.is_zero()
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.truncation() {
            return Err(Error::DegreeExceedsTruncation {
                degree,
                truncation: self.truncation(),
            });
        }
        Ok(())
    }

    fn eval_basis(&self, b: &CGBasis) -> BigRational {
        let mut v = num_traits::pow(self.a.clone(), b.phantoms());
        for &part in b.lambda() {
            v *= self.chain_value(part);
        }
        v
    }

    /// `ζ(C_λ F^p) = a^p Π t_{λ_i}`, extended linearly.
    pub fn eval(&self, x: &CGSum) -> Result<BigRational> {
        self.check_degree(x.degree())?;
        Ok(x.iter().map(|(b, c)| c * self.eval_basis(b)).sum())
    }

    fn check_truncation(&self, other: &Character) -> Result<()> {
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch(self.truncation(), other.truncation()));
        }
        Ok(())
    }

    /// `ζ_{a,t} * ζ_{b,s}` by the closed form on generators:
    /// `r_n = s_n + Σ_m Σ_j C(n-m,j) t_{j+1} s_{m-1} b^{n-m-j}`.
    pub fn convolve(&self, other: &Character) -> Result<Character> {
        self.check_truncation(other)?;
        let b = &other.a;
        let b_pow: Vec<BigRational> = (0..=self.truncation()).map(|k| num_traits::pow(b.clone(), k)).collect();
        let r = (1..=self.truncation())
            .map(|n| {
                let mut total = other.chain_value(n);
                for m in 1..=n {
                    for j in 0..=n - m {
                        let k = BigRational::from_integer(binomial(n - m, j));
                        total += k * self.chain_value(j + 1) * other.chain_value(m - 1) * &b_pow[n - m - j];
                    }
                }
                total
            })
            .collect();
        Ok(Character::new(&self.a + &other.a, r))
    }

    /// Convolution straight from the definition, `(ζ ⊗ η) ∘ Δ`, on each
    /// generator.
    pub fn convolve_generic(&self, other: &Character) -> Result<Character> {
        self.check_truncation(other)?;
        let apply = |x: &CGSum| -> BigRational {
            cg_coproduct(x)
                .iter()
                .map(|(l, r, c)| c * self.eval_basis(l) * other.eval_basis(r))
                .sum()
        };
        let a = apply(&CGSum::phantom());
        let t = (1..=self.truncation()).map(|n| apply(&CGSum::chain(n))).collect();
        Ok(Character::new(a, t))
    }

    /// `ζ⁻¹ = ζ ∘ S`.
    pub fn inverse(&self) -> Character {
        let a = -self.a.clone();
        let t = (1..=self.truncation())
            .map(|n| {
                let s = cg_antipode(&CGSum::chain(n));
                s.iter().map(|(b, c)| c * self.eval_basis(b)).sum()
            })
            .collect();
        Character::new(a, t)
    }
}

/// A truncated power series `1 + c_1 x + ... + c_N x^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::NotUnitSeries);
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn one(truncation: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); truncation + 1];
        coeffs[0] = BigRational::one();
        PowerSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &PowerSeries) -> Result<PowerSeries> {
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch(self.truncation(), other.truncation()));
        }
        let n = self.truncation();
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|i| &self.coeffs[i] * &other.coeffs[k - i]).sum())
            .collect();
        Ok(PowerSeries { coeffs })
    }

    /// The multiplicative inverse, solved degree by degree.
    pub fn reciprocal(&self) -> PowerSeries {
        let n = self.truncation();
        let mut inv = vec![BigRational::one()];
        for k in 1..=n {
            let s: BigRational = (1..=k).map(|i| &self.coeffs[i] * &inv[k - i]).sum();
            inv.push(-s);
        }
        PowerSeries { coeffs: inv }
    }
}

/// `ζ_{0,t} ↦ 1 + Σ t_n x^n`.
pub fn exorcism_to_series(z: &Character) -> Result<PowerSeries> {
    if !z.is_exorcism() {
        return Err(Error::NotInExorcismGroup);
    }
    let mut coeffs = vec![BigRational::one()];
    coeffs.extend(z.t.iter().cloned());
    Ok(PowerSeries { coeffs })
}

pub fn series_to_char(f: &PowerSeries) -> Character {
    Character::new(BigRational::zero(), f.coeffs[1..].to_vec())
}

/// `(γ_{u,r} * γ_{v,q})(C_n) = H_n(r+v, q) - v H_{n-1}(r+v, q)` where
/// `H_n(x, y) = Σ_{k=0}^n x^k y^{n-k}`. The phantom value is `u + v`.
pub fn geometric_convolve(
    _u: &BigRational,
    r: &BigRational,
    v: &BigRational,
    q: &BigRational,
    n: usize,
) -> BigRational {
    let x = r + v;
    let h = |m: usize| -> BigRational {
        (0..=m)
            .map(|k| num_traits::pow(x.clone(), k) * num_traits::pow(q.clone(), m - k))
            .sum()
    };
    if n == 0 {
        return BigRational::one();
    }
    h(n) - v * h(n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaingang::int;

    fn zeta(a: i64, t: &[i64]) -> Character {
        Character::new(int(a), t.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn eval_is_multiplicative() {
        let z = zeta(5, &[2, 3, 7, 1]);
        let x = CGSum::basis(CGBasis::new(vec![2, 1], 1));
        assert_eq!(z.eval(&x).unwrap(), int(5 * 3 * 2));
        assert_eq!(z.eval(&CGSum::one()).unwrap(), int(1));
        let e = Character::counit(3);
        assert_eq!(e.eval(&CGSum::chain(2)).unwrap(), int(0));
        assert_eq!(e.eval(&CGSum::one()).unwrap(), int(1));
        assert!(matches!(z.eval(&CGSum::chain(5)), Err(Error::DegreeExceedsTruncation { .. })));
    }

    #[test]
    fn geometric_values() {
        let g = Character::geometric(int(1), &int(3), 4);
        assert_eq!(g.eval(&CGSum::chain(3)).unwrap(), int(27));
    }

    #[test]
    fn convolution_laws() {
        let z = zeta(2, &[1, -3, 4, 0]);
        let w = zeta(-1, &[5, 2, -2, 7]);
        assert_eq!(z.convolve(&Character::counit(4)).unwrap(), z);
        assert_eq!(Character::counit(4).convolve(&z).unwrap(), z);
        assert_eq!(z.convolve(&w).unwrap(), z.convolve_generic(&w).unwrap());
        assert!(matches!(z.convolve(&Character::counit(3)), Err(Error::TruncationMismatch(4, 3))));
    }

    #[test]
    fn inverses() {
        let z = zeta(2, &[1, -3, 4, 0]);
        assert_eq!(z.convolve(&z.inverse()).unwrap(), Character::counit(4));
        assert_eq!(Character::counit(4).inverse(), Character::counit(4));
        let t = zeta(0, &[3, 5]);
        let inv = t.inverse();
        assert_eq!(inv.chain_value(1), int(-3));
        assert_eq!(inv.chain_value(2), int(9 - 5));
    }

    #[test]
    fn series_round_trip() {
        let z = zeta(0, &[1, 2, 3]);
        let f = exorcism_to_series(&z).unwrap();
        assert_eq!(series_to_char(&f), z);
        assert_eq!(exorcism_to_series(&zeta(1, &[1])), Err(Error::NotInExorcismGroup));
        assert_eq!(PowerSeries::new(vec![int(2)]), Err(Error::NotUnitSeries));
        let g = exorcism_to_series(&Character::geometric(int(0), &int(2), 3)).unwrap();
        assert_eq!(g.coeffs(), &[int(1), int(2), int(4), int(8)]);
    }

    #[test]
    fn geometric_degree_one() {
        let (u, r, v, q) = (int(2), int(3), int(5), int(7));
        assert_eq!(geometric_convolve(&u, &r, &v, &q, 1), &r + &q);
        let direct = Character::geometric(u.clone(), &r, 5)
            .convolve(&Character::geometric(v.clone(), &q, 5))
            .unwrap();
        for n in 1..=5 {
            assert_eq!(direct.chain_value(n), geometric_convolve(&u, &r, &v, &q, n));
        }
        // q = r + v is no special case
        let q2 = &r + &v;
        let direct = Character::geometric(u.clone(), &r, 4)
            .convolve(&Character::geometric(v.clone(), &q2, 4))
            .unwrap();
        assert_eq!(direct.chain_value(4), geometric_convolve(&u, &r, &v, &q2, 4));
    }
}
