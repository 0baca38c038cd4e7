//! Polynomials and rational functions over the rationals, in the variable
//! u = x^2.  Rational functions are kept canonical: numerator and
//! denominator coprime, denominator monic.

use super::Rat;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Dense polynomial with rational coefficients, lowest degree first.
/// Trailing zero coefficients are trimmed, so `coeffs.len() - 1` is the
/// true degree (the zero polynomial has an empty coefficient list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rat>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RationalPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RationalPoly::new(vec![c])
    }

    /// c * u^k
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        RationalPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of u^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, u: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        RationalPoly::new(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        RationalPoly::new(coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RationalPoly::new(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RationalPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Polynomial division with remainder: self = q * d + r, deg r < deg d.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lead = d.coeffs.last().unwrap();
        if r.len() <= dd {
            return (RationalPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        while r.len() > dd && !(r.len() == 1 && r[0].is_zero()) {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / lead;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = &r[k + i] - &c * dc;
                }
                q[k] = c;
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) && r.len() > dd {
                r.pop();
            }
        }
        (RationalPoly::new(q), RationalPoly::new(r))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.coeffs.last().unwrap().clone();
        self.scale(&(Rat::one() / lead))
    }

    /// Truncated power-series expansion of self / den to `order` terms
    /// (inclusive), requiring den(0) != 0.
    pub fn series_div(&self, den: &Self, order: usize) -> Result<Vec<Rat>> {
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(Error::Pole("denominator vanishes at 0".into()));
        }
        let mut out = Vec::with_capacity(order + 1);
        for j in 0..=order {
            let mut c = self.coeff(j);
            for (i, o) in out.iter().enumerate() {
                c -= o * &den.coeff(j - i);
            }
            out.push(c / &d0);
        }
        Ok(out)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", super::rat_to_string(c))?,
                1 => write!(f, "{}*u", super::rat_to_string(c))?,
                _ => write!(f, "{}*u^{}", super::rat_to_string(c), k)?,
            }
        }
        Ok(())
    }
}

/// Ratio of two polynomials, canonical: gcd(num, den) = 1 and den monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: RationalPoly,
    den: RationalPoly,
}

impl RationalFunction {
    /// Builds and canonicalizes; panics if `den` is identically zero.
    pub fn new(num: RationalPoly, den: RationalPoly) -> Self {
        assert!(!den.is_zero(), "denominator is identically zero");
        if num.is_zero() {
            return RationalFunction { num, den: RationalPoly::one() };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.coeffs.last().unwrap().clone();
        let inv = Rat::one() / lead;
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: RationalPoly) -> Self {
        RationalFunction { num: p, den: RationalPoly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(RationalPoly::constant(c))
    }

    pub fn num(&self) -> &RationalPoly {
        &self.num
    }

    pub fn den(&self) -> &RationalPoly {
        &self.den
    }

    /// Exact evaluation; `Pole` error where the denominator vanishes.
    pub fn eval(&self, u: &Rat) -> Result<Rat> {
        let d = self.den.eval(u);
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator vanishes at u = {u}")));
        }
        Ok(self.num.eval(u) / d)
    }

    /// Truncated series expansion around u = 0 (needs den(0) != 0).
    pub fn series(&self, order: usize) -> Result<Vec<Rat>> {
        self.num.series_div(&self.den, order)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RationalFunction::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == 0 && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Builds the scaled product family c * prod (4u - m^2) / prod (u - j^2)
/// used for comparing reconstructed closed forms.
pub fn product_form(c: Rat, num_roots: &[u64], den_roots: &[u64]) -> RationalFunction {
    let mut num = RationalPoly::constant(c);
    for &m in num_roots {
        num = num.mul(&RationalPoly::new(vec![
            Rat::from(BigInt::from(-((m * m) as i64))),
            Rat::from(BigInt::from(4)),
        ]));
    }
    let mut den = RationalPoly::one();
    for &j in den_roots {
        den = den.mul(&RationalPoly::new(vec![
            Rat::from(BigInt::from(-((j * j) as i64))),
            Rat::one(),
        ]));
    }
    RationalFunction::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    #[test]
    fn eval_p2_at_zero() {
        // P2 = 3(4u-1)/(u-1): constant term 3
        let p2 = product_form(rat(3, 1), &[1], &[1]);
        assert_eq!(p2.eval(&Rat::zero()).unwrap(), rat(3, 1));
    }

    #[test]
    fn eval_p3_at_zero_and_pole() {
        // P3 = 12(4u-1)/(u-4)
        let p3 = product_form(rat(12, 1), &[1], &[2]);
        assert_eq!(p3.eval(&Rat::zero()).unwrap(), rat(3, 1));
        assert!(matches!(p3.eval(&rat(4, 1)), Err(Error::Pole(_))));
        // at a root of the numerator the value is 0
        assert_eq!(p3.eval(&rat(1, 4)).unwrap(), Rat::zero());
    }

    #[test]
    fn canonicalization_cancels_and_normalizes() {
        // (2u^2 - 2) / (4u - 4) = (u + 1) / 2
        let num = RationalPoly::new(vec![rat(-2, 1), Rat::zero(), rat(2, 1)]);
        let den = RationalPoly::new(vec![rat(-4, 1), rat(4, 1)]);
        let f = RationalFunction::new(num, den);
        assert_eq!(f.den(), &RationalPoly::one());
        assert_eq!(f.num().coeffs(), &[rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn canonicalization_idempotent_and_eval_invariant() {
        let num = RationalPoly::new(vec![rat(6, 1), rat(-9, 2), rat(3, 1)]);
        let den = RationalPoly::new(vec![rat(-2, 1), rat(4, 3), rat(2, 1), rat(1, 1)]);
        let f = RationalFunction::new(num.clone(), den.clone());
        let g = RationalFunction::new(f.num().clone(), f.den().clone());
        assert_eq!(f, g);
        // evaluation-invariant at 20 rational points (skip poles)
        for i in 1..=20i64 {
            let u = Rat::new(BigInt::from(i * 7 - 31), BigInt::from(13));
            let raw_den = den.eval(&u);
            if raw_den.is_zero() {
                continue;
            }
            let raw = num.eval(&u) / raw_den;
            assert_eq!(f.eval(&u).unwrap(), raw);
        }
    }

    #[test]
    fn series_of_geometric() {
        // 1/(1-u) = 1 + u + u^2 + ...
        let f = RationalFunction::new(
            RationalPoly::one(),
            RationalPoly::new(vec![Rat::one(), rat(-1, 1)]),
        );
        assert_eq!(f.series(4).unwrap(), vec![Rat::one(); 5]);
    }

    #[test]
    fn div_rem_round_trip() {
        let a = RationalPoly::new(vec![rat(1, 2), rat(3, 1), rat(-5, 7), rat(2, 1)]);
        let b = RationalPoly::new(vec![rat(-1, 1), rat(1, 3)]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree() < b.degree() || r.is_zero());
        assert_eq!(q.mul(&b).add(&r), a);
    }
}
