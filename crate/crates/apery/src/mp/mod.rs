//! Arbitrary-precision real arithmetic with an explicit decimal working
//! precision, plus the constants and special functions the identities
//! need (pi, sqrt, log, trig, integer-argument zeta, polylogarithm).
//!
//! Every value carries its [`Precision`]: the requested decimal digits
//! plus guard digits carried internally.  There is no hidden global
//! precision state.  The mantissa arithmetic is backed by `astro-float`;
//! zeta and polylogarithm evaluation live in [`functions`].

mod functions;

pub use functions::{polylog, zeta_even_rational_part, zeta_int};

use crate::error::{Error, Result};
use crate::exact::Rat;
use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use num_traits::Zero;
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

const RM: RoundingMode = RoundingMode::ToEven;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Decimal working precision: requested digits plus guard digits carried
/// internally by every operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
    guard: u32,
}

impl Precision {
    /// Default guard of 10 extra digits.
    pub fn new(digits: u32) -> Self {
        Self::with_guard(digits, 10)
    }

    pub fn with_guard(digits: u32, guard: u32) -> Self {
        assert!(digits >= 30, "working precision below 30 digits");
        assert!(guard >= 10, "guard below 10 digits");
        Precision { digits, guard }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Total decimal digits carried internally.
    pub fn total(&self) -> u32 {
        self.digits + self.guard
    }

    /// Binary mantissa length used for the backing floats.
    pub(crate) fn bits(&self) -> usize {
        (self.total() as f64 * LOG2_10).ceil() as usize + 64
    }
}

/// Arbitrary-precision real value at a fixed [`Precision`].
#[derive(Clone, Debug)]
pub struct MPReal {
    f: BigFloat,
    prec: Precision,
}

fn chk(f: BigFloat) -> BigFloat {
    assert!(!f.is_nan() && !f.is_inf(), "arithmetic produced a non-finite value");
    f
}

impl MPReal {
    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn zero(p: Precision) -> Self {
        MPReal { f: BigFloat::new(p.bits()), prec: p }
    }

    pub fn one(p: Precision) -> Self {
        Self::from_u64(1, p)
    }

    pub fn from_u64(v: u64, p: Precision) -> Self {
        MPReal { f: BigFloat::from_u64(v, p.bits()), prec: p }
    }

    pub fn from_i64(v: i64, p: Precision) -> Self {
        MPReal { f: BigFloat::from_i64(v, p.bits()), prec: p }
    }

    pub fn from_bigint(v: &BigInt, p: Precision) -> Self {
        let (sign, words) = v.to_u64_digits();
        if words.is_empty() {
            return Self::zero(p);
        }
        // from_words scales the word array by 2^(e - 64*len)
        let e = (words.len() * 64) as astro_float::Exponent;
        let s = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
        let mut f = chk(BigFloat::from_words(&words, s, e));
        f.set_precision(p.bits(), RM).expect("set precision");
        MPReal { f, prec: p }
    }

    pub fn from_rat(v: &Rat, p: Precision) -> Self {
        let num = Self::from_bigint(v.numer(), p);
        let den = Self::from_bigint(v.denom(), p);
        &num / &den
    }

    /// pi at working precision.
    pub fn pi(p: Precision) -> Self {
        MPReal { f: with_cc(|cc| cc.pi(p.bits(), RM)), prec: p }
    }

    /// Exact power of ten, e.g. `pow10(-180, p)` for a tolerance.
    pub fn pow10(e: i64, p: Precision) -> Self {
        let base = Self::from_u64(10, p);
        let pow = base.powi(e.unsigned_abs());
        if e < 0 {
            pow.recip()
        } else {
            pow
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.f.is_negative()
    }

    pub fn neg_assign(&mut self) {
        self.f.inv_sign();
    }

    pub fn abs(&self) -> Self {
        MPReal { f: self.f.abs(), prec: self.prec }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        MPReal { f: chk(self.f.reciprocal(self.prec.bits(), RM)), prec: self.prec }
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, n: u64) -> Self {
        if n == 0 {
            return Self::one(self.prec);
        }
        MPReal { f: chk(self.f.powi(n as usize, self.prec.bits(), RM)), prec: self.prec }
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Domain("sqrt of a negative number".into()));
        }
        Ok(MPReal { f: chk(self.f.sqrt(self.prec.bits(), RM)), prec: self.prec })
    }

    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() || self.is_negative() {
            return Err(Error::Domain("log of a non-positive number".into()));
        }
        let f = with_cc(|cc| self.f.ln(self.prec.bits(), RM, cc));
        Ok(MPReal { f: chk(f), prec: self.prec })
    }

    pub fn exp(&self) -> Result<Self> {
        let f = with_cc(|cc| self.f.exp(self.prec.bits(), RM, cc));
        if f.is_nan() || f.is_inf() {
            return Err(Error::Domain("exp overflow".into()));
        }
        Ok(MPReal { f, prec: self.prec })
    }

    pub fn sin(&self) -> Result<Self> {
        let f = with_cc(|cc| self.f.sin(self.prec.bits(), RM, cc));
        Ok(MPReal { f: chk(f), prec: self.prec })
    }

    pub fn cos(&self) -> Result<Self> {
        let f = with_cc(|cc| self.f.cos(self.prec.bits(), RM, cc));
        Ok(MPReal { f: chk(f), prec: self.prec })
    }

    pub fn arcsin(&self) -> Result<Self> {
        let one = Self::one(self.prec);
        if self.abs().cmp(&one) == Ordering::Greater {
            return Err(Error::Domain("arcsin argument outside [-1, 1]".into()));
        }
        let f = with_cc(|cc| self.f.asin(self.prec.bits(), RM, cc));
        Ok(MPReal { f: chk(f), prec: self.prec })
    }

    /// cot x = cos x / sin x; domain error at integer multiples of pi
    /// (detected as a vanishing sine at working precision).
    pub fn cot(&self) -> Result<Self> {
        let s = self.sin()?;
        if s.is_zero() {
            return Err(Error::Domain("cot at a multiple of pi".into()));
        }
        Ok(&self.cos()? / &s)
    }

    /// csc x = 1 / sin x.
    pub fn csc(&self) -> Result<Self> {
        let s = self.sin()?;
        if s.is_zero() {
            return Err(Error::Domain("csc at a multiple of pi".into()));
        }
        Ok(s.recip())
    }

    pub fn cmp(&self, rhs: &Self) -> Ordering {
        match self.f.cmp(&rhs.f) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            Some(_) => Ordering::Equal,
            None => panic!("comparison with a non-finite value"),
        }
    }

    /// |self| < 10^e, cheap threshold test.
    pub fn abs_below_pow10(&self, e: i64) -> bool {
        if self.is_zero() {
            return true;
        }
        // binary exponent gives a tight two-sided decimal bound
        let be = self.f.exponent().expect("finite value") as f64;
        let approx = be / LOG2_10;
        if approx < e as f64 - 1.0 {
            return true;
        }
        if approx > e as f64 + 1.0 {
            return false;
        }
        self.abs().cmp(&Self::pow10(e, self.prec)) == Ordering::Less
    }

    /// Rounds to the nearest integer.
    pub fn round_to_bigint(&self) -> BigInt {
        let half = {
            let mut h = BigFloat::from_f64(0.5, 64);
            h.set_sign(self.f.sign().unwrap_or(Sign::Pos));
            h
        };
        let shifted = chk(self.f.add_full_prec(&half));
        let int = chk(shifted.int());
        if int.is_zero() {
            return BigInt::zero();
        }
        let (words, _, sign, e, _) = int.as_raw_parts().expect("finite value");
        let mag = words
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &w| (acc << 64) + BigInt::from(w));
        let shift = words.len() as i64 * 64 - e as i64;
        let mag = if shift >= 0 { mag >> shift } else { mag << (-shift) };
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Decimal serialization carrying exactly `digits` mantissa digits,
    /// e.g. "3.14159e0" (the exponent is the power of ten of the leading digit).
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.is_zero() {
            return format!("0.{}e0", "0".repeat(digits.saturating_sub(1) as usize));
        }
        let (sign, mut ds, mut e10) = with_cc(|cc| self.f.convert_to_radix(Radix::Dec, RM, cc))
            .expect("finite value");
        let n = digits as usize;
        // round the digit string to n digits
        if ds.len() > n {
            let carry = ds[n] >= 5;
            ds.truncate(n);
            if carry {
                let mut i = n;
                loop {
                    if i == 0 {
                        ds.insert(0, 1);
                        ds.truncate(n);
                        e10 += 1;
                        break;
                    }
                    i -= 1;
                    if ds[i] == 9 {
                        ds[i] = 0;
                    } else {
                        ds[i] += 1;
                        break;
                    }
                }
            }
        }
        while ds.len() < n {
            ds.push(0);
        }
        let mut s = String::new();
        if sign == Sign::Neg {
            s.push('-');
        }
        s.push((b'0' + ds[0]) as char);
        s.push('.');
        for &d in &ds[1..] {
            s.push((b'0' + d) as char);
        }
        s.push('e');
        s.push_str(&(e10 - 1).to_string());
        s
    }

    /// Parses a decimal string ("-3.14e-2", "2", "0.5") at precision `p`.
    pub fn parse(s: &str, p: Precision) -> Result<Self> {
        let f = with_cc(|cc| BigFloat::parse(s.trim(), Radix::Dec, p.bits(), RM, cc));
        if f.is_nan() || f.is_inf() {
            return Err(Error::Parse(format!("bad decimal value {s:?}")));
        }
        Ok(MPReal { f, prec: p })
    }
}

impl fmt::Display for MPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(self.prec.digits))
    }
}

macro_rules! binop {
    ($trait:ident, $meth:ident) => {
        impl $trait for &MPReal {
            type Output = MPReal;
            fn $meth(self, rhs: &MPReal) -> MPReal {
                let prec = if self.prec.total() >= rhs.prec.total() { self.prec } else { rhs.prec };
                MPReal { f: chk(self.f.$meth(&rhs.f, prec.bits(), RM)), prec }
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for &MPReal {
    type Output = MPReal;
    fn div(self, rhs: &MPReal) -> MPReal {
        assert!(!rhs.is_zero(), "division by zero");
        let prec = if self.prec.total() >= rhs.prec.total() { self.prec } else { rhs.prec };
        MPReal { f: chk(self.f.div(&rhs.f, prec.bits(), RM)), prec }
    }
}

impl Neg for &MPReal {
    type Output = MPReal;
    fn neg(self) -> MPReal {
        let mut f = self.f.clone();
        f.inv_sign();
        MPReal { f, prec: self.prec }
    }
}
