//! Exact integer and rational arithmetic primitives.
//!
//! Everything in this module is exact: binomial coefficients, rising
//! factorials, Bernoulli numbers, integer partitions, and polynomials and
//! rational functions over the rationals.  These back both the discovery
//! pipeline (series coefficients, Pade reconstruction) and the proof
//! checks, where "equals 1" must be a literal equality of rationals.

mod partition;
mod poly;

pub use partition::{partitions_of, Partition};
pub use poly::{product_form, RationalFunction, RationalPoly};

use std::cell::RefCell;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator by `num-rational`.
pub type Rat = Ratio<BigInt>;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Exact binomial coefficient C(n, k).  Returns 0 for k < 0 or k > n.
///
/// ```
/// use apery::exact::binomial;
/// assert_eq!(binomial(6, 3), 20u32.into());
/// assert_eq!(binomial(4, -1), 0u32.into());
/// ```
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Exact factorial n!.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}

/// Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.
pub fn pochhammer(a: &Rat, k: u64) -> Rat {
    let mut acc = Rat::one();
    let mut f = a.clone();
    for _ in 0..k {
        if f.is_zero() {
            return Rat::zero();
        }
        acc *= &f;
        f += Rat::one();
    }
    acc
}

thread_local! {
    // Cache of B_0, B_1, B_2, ... in the x/(e^x - 1) convention.
    static BERNOULLI: RefCell<Vec<Rat>> = const { RefCell::new(Vec::new()) };
}

/// Even-indexed Bernoulli number B_{2n}, in the convention fixed by the
/// generating function x coth x = sum_{n>=0} (2x)^{2n}/(2n)! B_{2n}, so
/// B_0 = 1, B_2 = 1/6, B_4 = -1/30.
pub fn bernoulli_even(n: u64) -> Rat {
    BERNOULLI.with(|cell| {
        let mut cache = cell.borrow_mut();
        let want = (2 * n) as usize;
        if cache.is_empty() {
            cache.push(Rat::one());
        }
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        while cache.len() <= want {
            let m = cache.len() as u64;
            let mut s = Rat::zero();
            for (j, b) in cache.iter().enumerate() {
                s += Rat::from(binomial(m + 1, j as i64)) * b;
            }
            cache.push(-s / Rat::from(BigInt::from(m + 1)));
        }
        cache[want].clone()
    })
}

/// Exact power sum H_{K}(s) = sum_{k=1}^{K} k^{-s}.
pub fn power_sum(upto: u64, s: u32) -> Rat {
    let mut acc = Rat::zero();
    for k in 1..=upto {
        acc += Rat::new(BigInt::one(), BigInt::from(k).pow(s));
    }
    acc
}

/// Serializes a rational as "p/q" ("p" when q = 1).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p/q" or "p" into a rational.
pub fn rat_from_string(s: &str) -> crate::error::Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| crate::error::Error::Parse(format!("bad rational {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| crate::error::Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(crate::error::Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Sign of a rational as -1, 0, 1.
pub fn rat_signum(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
