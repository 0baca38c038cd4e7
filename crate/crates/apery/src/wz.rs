//! Exact-arithmetic proof checks: the terminating 3F2 identity, the
//! Wilf-Zeilberger telescoping certificate, the partial-fraction
//! coefficients c_n(k), and the finite binomial identity
//! sum_k (2n^2/k^2) prod(4k^4+i^4)/prod(k^4-i^4) = C(2n,n).
//!
//! Everything here runs over `Rat`/`BigInt`, so "equals 1" and "equals 0"
//! are literal equalities, not tolerances.

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, pochhammer, rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The hypergeometric term
/// f(n,k) = (3n)_k (n+1)_k (-n)_k / [(2n+1)_k (n+1/2)_k] * (1/4)^k / k!,
/// built from Pochhammer products so factorials at negative integers
/// never appear.  Terminates: f(n,k) = 0 for k > n.
pub fn hyper_term(n: u64, k: u64) -> Rat {
    let ni = n as i64;
    let num = pochhammer(&rat(3 * ni, 1), k)
        * pochhammer(&rat(ni + 1, 1), k)
        * pochhammer(&rat(-ni, 1), k);
    let den = pochhammer(&rat(2 * ni + 1, 1), k)
        * pochhammer(&rat(2 * ni + 1, 2), k)
        * Rat::from(factorial(k))
        * Rat::from(BigInt::from(4).pow(k as u32));
    num / den
}

/// r(n) = C(2n,n)/C(3n,n), the closed form of the terminating 3F2.
pub fn r_closed_form(n: u64) -> Rat {
    Rat::new(binomial(2 * n, n as i64), binomial(3 * n, n as i64))
}

/// Evaluates 3F2(3n, n+1, -n; 2n+1, n+1/2 | 1/4) as an exact terminating
/// sum; equals C(2n,n)/C(3n,n).
pub fn finite2_check(n: u64) -> Rat {
    (0..=n).map(|k| hyper_term(n, k)).sum()
}

/// T(n) = (3n)! n! / ((2n)! (2n)!) * 3F2(...); the identity asserts
/// T(n) = 1 for every positive n.
pub fn t_check(n: u64) -> Rat {
    assert!(n >= 1, "T(n) is defined for positive n");
    let scale = Rat::new(
        factorial(3 * n) * factorial(n),
        factorial(2 * n) * factorial(2 * n),
    );
    scale * finite2_check(n)
}

/// The WZ certificate R(n,k) = -k(11n^2 + 1 + 6n + k + 5kn) /
/// (3(n-k+1)(2n+k+1)n); `Pole` where the denominator vanishes (k = n+1).
pub fn certificate_r(n: u64, k: u64) -> Result<Rat> {
    let (ni, ki) = (n as i64, k as i64);
    let den = 3 * (ni - ki + 1) * (2 * ni + ki + 1) * ni;
    if den == 0 {
        return Err(Error::Pole(format!("certificate R undefined at (n,k) = ({n},{k})")));
    }
    Ok(rat(-ki * (11 * ni * ni + 1 + 6 * ni + ki + 5 * ki * ni), den))
}

/// G(n,k) = R(n,k) F(n,k) with F = f/r, in the canceled form: the
/// (n-k+1) factor in R's denominator divides the trailing factor of
/// (-n)_k = -(n-k+1)(-n)_{k-1}, so G is well defined even at k = n+1
/// where R alone has a pole.
fn g_term(n: u64, k: u64) -> Result<Rat> {
    if k == 0 {
        return Ok(Rat::zero());
    }
    let (ni, ki) = (n as i64, k as i64);
    let den = 3 * (2 * ni + ki + 1) * ni;
    if den == 0 {
        return Err(Error::Pole(format!("canceled certificate undefined at (n,k) = ({n},{k})")));
    }
    let rf_num = rat(ki * (11 * ni * ni + 1 + 6 * ni + ki + 5 * ki * ni), den);
    let f_reduced = pochhammer(&rat(3 * ni, 1), k)
        * pochhammer(&rat(ni + 1, 1), k)
        * pochhammer(&rat(-ni, 1), k - 1)
        / (pochhammer(&rat(2 * ni + 1, 1), k)
            * pochhammer(&rat(2 * ni + 1, 2), k)
            * Rat::from(factorial(k))
            * Rat::from(BigInt::from(4).pow(k as u32)));
    Ok(rf_num * f_reduced / r_closed_form(n))
}

/// The telescoping residual [F(n+1,k) - F(n,k)] - [G(n,k+1) - G(n,k)]
/// with F(n,k) = f(n,k)/r(n); exactly zero throughout the support
/// 0 <= k <= n+1 when the certificate is valid.
pub fn wz_certificate_check(n: u64, k: u64) -> Result<Rat> {
    if n < 1 || k > n + 1 {
        return Err(Error::Domain(format!(
            "(n,k) = ({n},{k}) outside the certificate support 0 <= k <= n+1"
        )));
    }
    let lhs = hyper_term(n + 1, k) / r_closed_form(n + 1)
        - hyper_term(n, k) / r_closed_form(n);
    let rhs = g_term(n, k + 1)? - g_term(n, k)?;
    Ok(lhs - rhs)
}

/// The partial-fraction coefficient
/// c_n(k) = prod_{m<k}(1 - 4n^2/m^2) / prod_{m<=k, m!=n}(1 - n^2/m^2)
/// for 1 <= n <= k, and 0 when n > k or k >= 2n+1.
pub fn partial_fraction_check(n: u64, k: u64) -> Rat {
    assert!(n >= 1 && k >= 1, "c_n(k) is defined for positive n, k");
    if n > k || k >= 2 * n + 1 {
        return Rat::zero();
    }
    let n2 = rat((n * n) as i64, 1);
    let mut num = Rat::one();
    for m in 1..k {
        let m2 = rat((m * m) as i64, 1);
        num *= Rat::one() - rat(4, 1) * &n2 / m2;
    }
    let mut den = Rat::one();
    for m in 1..=k {
        if m == n {
            continue;
        }
        let m2 = rat((m * m) as i64, 1);
        den *= Rat::one() - &n2 / m2;
    }
    num / den
}

/// S_n = 3 n^2 sum_{k=n}^{2n} c_n(k)/(k^2 C(2k,k)); equals 1 exactly.
pub fn partial_fraction_sum(n: u64) -> Rat {
    let mut s = Rat::zero();
    for k in n..=2 * n {
        s += rat(3, 1) * partial_fraction_check(n, k)
            / (rat((k * k) as i64, 1) * Rat::from(binomial(2 * k, k as i64)));
    }
    s * rat((n * n) as i64, 1)
}

/// The finite quartic identity: sum_{k=1}^n (2n^2/k^2)
/// prod_{i<n}(4k^4 + i^4) / prod_{i<=n, i!=k}(k^4 - i^4), which collapses
/// to the integer C(2n,n).
pub fn finite3_check(n: u64) -> BigInt {
    assert!(n >= 1);
    let mut s = Rat::zero();
    for k in 1..=n {
        let k4 = BigInt::from(k).pow(4);
        let mut num = Rat::new(BigInt::from(2 * n * n), BigInt::from(k * k));
        for i in 1..n {
            num *= Rat::from(&k4 * BigInt::from(4) + BigInt::from(i).pow(4));
        }
        let mut den = BigInt::one();
        for i in 1..=n {
            if i == k {
                continue;
            }
            den *= &k4 - BigInt::from(i).pow(4);
        }
        s += num / Rat::from(den);
    }
    assert!(s.is_integer(), "finite quartic sum must collapse to an integer");
    s.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyper_term_boundaries() {
        assert_eq!(hyper_term(5, 0), Rat::one());
        assert_eq!(hyper_term(5, 6), Rat::zero());
        assert_eq!(hyper_term(3, 4), Rat::zero());
    }

    #[test]
    fn finite2_small_cases() {
        assert_eq!(finite2_check(0), Rat::one());
        // n=1: 1 - 1/3
        assert_eq!(finite2_check(1), rat(2, 3));
        assert_eq!(finite2_check(5), rat(12, 143));
        assert_eq!(finite2_check(5), r_closed_form(5));
    }

    #[test]
    fn finite2_matches_closed_form_to_100() {
        for n in 0..=100 {
            assert_eq!(finite2_check(n), r_closed_form(n), "n = {n}");
        }
    }

    #[test]
    fn t_is_one() {
        for n in [1, 2, 7, 40, 100] {
            assert_eq!(t_check(n), Rat::one(), "n = {n}");
        }
    }

    #[test]
    fn certificate_pole_location() {
        assert!(certificate_r(4, 5).is_err());
        assert!(certificate_r(4, 4).is_ok());
    }

    #[test]
    fn g_term_agrees_with_plain_product() {
        // where R is defined, the canceled form equals R * f / r
        for n in 1..=8u64 {
            for k in 0..=n {
                let plain = certificate_r(n, k).unwrap() * hyper_term(n, k)
                    / r_closed_form(n);
                assert_eq!(g_term(n, k).unwrap(), plain, "(n,k) = ({n},{k})");
            }
        }
    }

    #[test]
    fn certificate_examples() {
        assert_eq!(wz_certificate_check(2, 1).unwrap(), Rat::zero());
        assert_eq!(wz_certificate_check(1, 0).unwrap(), Rat::zero());
        assert_eq!(wz_certificate_check(10, 7).unwrap(), Rat::zero());
    }

    #[test]
    fn certificate_telescopes_to_40() {
        for n in 1..=40u64 {
            for k in 0..=n + 1 {
                assert_eq!(
                    wz_certificate_check(n, k).unwrap(),
                    Rat::zero(),
                    "(n,k) = ({n},{k})"
                );
            }
        }
    }

    #[test]
    fn certificate_out_of_support() {
        assert!(matches!(wz_certificate_check(3, 5), Err(Error::Domain(_))));
        assert!(matches!(wz_certificate_check(0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn partial_fraction_vanishing() {
        assert_eq!(partial_fraction_check(2, 5), Rat::zero());
        assert_eq!(partial_fraction_check(3, 2), Rat::zero());
    }

    #[test]
    fn partial_fraction_sum_is_one() {
        for n in 1..=20u64 {
            assert_eq!(partial_fraction_sum(n), Rat::one(), "n = {n}");
        }
    }

    #[test]
    fn partial_fraction_decomposition_identity() {
        // prod_{m<k}(1-4z^2/m^2)/prod_{m<=k}(1-z^2/m^2)
        //   = sum_{n<=k} c_n(k)/(1-z^2/n^2) at rational z off the poles
        for k in 1..=12u64 {
            for zi in [rat(1, 3), rat(2, 7), rat(5, 2), rat(-3, 4)] {
                let z2 = &zi * &zi;
                let mut lhs = Rat::one();
                for m in 1..k {
                    lhs *= Rat::one() - rat(4, 1) * &z2 / rat((m * m) as i64, 1);
                }
                for m in 1..=k {
                    lhs /= Rat::one() - &z2 / rat((m * m) as i64, 1);
                }
                let mut rhs = Rat::zero();
                for n in 1..=k {
                    rhs += partial_fraction_check(n, k)
                        / (Rat::one() - &z2 / rat((n * n) as i64, 1));
                }
                assert_eq!(lhs, rhs, "k = {k}, z = {zi}");
            }
        }
    }

    #[test]
    fn finite3_small_cases() {
        assert_eq!(finite3_check(1), BigInt::from(2));
        assert_eq!(finite3_check(2), BigInt::from(6));
        assert_eq!(finite3_check(12), BigInt::from(2704156));
    }

    #[test]
    fn finite3_matches_binomial_to_30() {
        for n in 1..=30u64 {
            assert_eq!(finite3_check(n), binomial(2 * n, n as i64), "n = {n}");
        }
    }
}
