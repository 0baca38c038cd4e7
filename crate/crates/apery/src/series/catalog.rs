//! The named identity catalog: every displayed identity, each with a
//! left-hand-side evaluator, a right-hand-side evaluator, and a
//! parameter signature.
//!
//! Binomial sides run the K(p) truncation with incrementally updated
//! products.  Dirichlet-type sides (sums like sum 1/(k^2-x^2)) converge
//! far too slowly to truncate naively; they are evaluated as a short
//! head sum plus a tail written in terms of zeta values,
//!
//!   sum_{k>K} k^{-s0} g(1/k^2) = sum_j d_j (zeta(s0+2j) - H_K(s0+2j)),
//!
//! where g is the rational factor's expansion at k = infinity and
//! H_K(s) is the K-th partial sum of zeta(s).  Each tail term gains a
//! factor (radius/K)^2, so a head of ~100 terms reaches hundreds of
//! digits in a few dozen zeta evaluations.

use crate::error::{Error, Result};
use crate::exact::{factorial, rat, Partition, Rat};
use crate::mp::{polylog, zeta_int, MPReal, Precision};
use crate::series::{
    alternating_sum, plain_binomial_sum, sigma_eval, simplex_eval, truncation_terms, SigmaSpec,
    SimplexSpec,
};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

/// How many parameters an identity takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamSignature {
    None,
    X,
    XY,
}

impl ParamSignature {
    pub fn arity(self) -> usize {
        match self {
            ParamSignature::None => 0,
            ParamSignature::X => 1,
            ParamSignature::XY => 2,
        }
    }
}

/// Every named identity in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityId {
    Z2,
    Z3,
    Z4,
    Z5,
    Z7,
    Z9,
    Z11,
    Koecher,
    Z43,
    Bradley,
    Apery2,
    Apery22,
    Lesh,
    Apery4,
    Zeta4,
    Rho,
    Z0,
    Z1,
    Z6,
    Z8,
    Z10,
    Hyper543,
}

impl IdentityId {
    pub const ALL: [IdentityId; 22] = [
        IdentityId::Z2,
        IdentityId::Z3,
        IdentityId::Z4,
        IdentityId::Z5,
        IdentityId::Z7,
        IdentityId::Z9,
        IdentityId::Z11,
        IdentityId::Koecher,
        IdentityId::Z43,
        IdentityId::Bradley,
        IdentityId::Apery2,
        IdentityId::Apery22,
        IdentityId::Lesh,
        IdentityId::Apery4,
        IdentityId::Zeta4,
        IdentityId::Rho,
        IdentityId::Z0,
        IdentityId::Z1,
        IdentityId::Z6,
        IdentityId::Z8,
        IdentityId::Z10,
        IdentityId::Hyper543,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Z2 => "z2",
            IdentityId::Z3 => "z3",
            IdentityId::Z4 => "z4",
            IdentityId::Z5 => "z5",
            IdentityId::Z7 => "z7",
            IdentityId::Z9 => "z9",
            IdentityId::Z11 => "z11",
            IdentityId::Koecher => "koecher",
            IdentityId::Z43 => "z43",
            IdentityId::Bradley => "bradley",
            IdentityId::Apery2 => "apery2",
            IdentityId::Apery22 => "apery22",
            IdentityId::Lesh => "lesh",
            IdentityId::Apery4 => "apery4",
            IdentityId::Zeta4 => "zeta4",
            IdentityId::Rho => "rho",
            IdentityId::Z0 => "z0",
            IdentityId::Z1 => "z1",
            IdentityId::Z6 => "z6",
            IdentityId::Z8 => "z8",
            IdentityId::Z10 => "z10",
            IdentityId::Hyper543 => "hyper543",
        }
    }

    pub fn signature(self) -> ParamSignature {
        match self {
            IdentityId::Koecher
            | IdentityId::Z43
            | IdentityId::Apery2
            | IdentityId::Apery22
            | IdentityId::Lesh
            | IdentityId::Apery4
            | IdentityId::Zeta4
            | IdentityId::Hyper543 => ParamSignature::X,
            IdentityId::Bradley => ParamSignature::XY,
            _ => ParamSignature::None,
        }
    }

    /// One-line statement, for catalog listings.
    pub fn describe(self) -> &'static str {
        match self {
            IdentityId::Z2 => "zeta(2) = 3 sum 1/(k^2 C(2k,k))",
            IdentityId::Z3 => "zeta(3) = (5/2) sum (-1)^(k+1)/(k^3 C(2k,k))",
            IdentityId::Z4 => "zeta(4) = (36/17) sum 1/(k^4 C(2k,k))",
            IdentityId::Z5 => "zeta(5) as a 2-term alternating central-binomial combination",
            IdentityId::Z7 => "zeta(7) as a 2-term alternating central-binomial combination",
            IdentityId::Z9 => "zeta(9) as a 5-term alternating central-binomial combination",
            IdentityId::Z11 => "zeta(11) as a 4-term alternating central-binomial combination",
            IdentityId::Koecher => "Koecher: sum 1/(k(k^2-x^2)) as a binomial-product series",
            IdentityId::Z43 => "zeta(4n+3) generator: sum k/(k^4-x^4) as a binomial-product series",
            IdentityId::Bradley => {
                "bivariate generator: sum k/(k^4-x^2 k^2-y^4) as a binomial-product series"
            }
            IdentityId::Apery2 => {
                "Theorem 1: sum 1/(k^2-x^2) = 3 sum 1/(C(2k,k)(k^2-x^2)) prod (4x^2-m^2)/(x^2-m^2)"
            }
            IdentityId::Apery22 => "sum zeta(2n+2) x^(2n) = (1 - pi x cot(pi x))/(2x^2)",
            IdentityId::Lesh => "Leshchiner: binomial series = pi/(2x sin(pi x)) - 1/(2x^2)",
            IdentityId::Apery4 => {
                "zeta(2n+4) generator = pi/(4x^3 sin(pi x)) - 1/x^4 + 3cos(pi x/3)/(4x^4)"
            }
            IdentityId::Zeta4 => {
                "Theorem 2: binomial series = (pi x csc(pi x) + 3cos(pi x/3) - 4)/(4x^4)"
            }
            IdentityId::Rho => "golden-ratio polylog ladder for 2 zeta(5) - alt(5)",
            IdentityId::Z0 => "sum 1/C(2k,k) = (2 pi sqrt(3) + 9)/27",
            IdentityId::Z1 => "sum (-1)^(k+1)/(k C(2k,k)) = (2/sqrt(5)) log((sqrt(5)+1)/2)",
            IdentityId::Z6 => "zeta(6) = (36*8/163)[sigma(6;[]) + (3/2) sigma(2;[4])]",
            IdentityId::Z8 => "zeta(8) bootstrap combination of three sigma terms",
            IdentityId::Z10 => "zeta(10) bootstrap combination with a simplex term",
            IdentityId::Hyper543 => "5F4 = (5/4) 6F5 hypergeometric form of the z43 identity",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == t)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

/// Evaluates both sides of a catalog identity at the given parameters.
pub fn identity_eval(id: IdentityId, params: &[MPReal], p: Precision) -> Result<(MPReal, MPReal)> {
    let want = id.signature().arity();
    if params.len() != want {
        return Err(Error::Domain(format!(
            "identity {id} takes {want} parameter(s), got {}",
            params.len()
        )));
    }
    let x = params.first();
    match id {
        IdentityId::Z2 => {
            let lhs = zeta_int(2, p)?;
            let rhs = &MPReal::from_u64(3, p) * &sigma_eval(&SigmaSpec::new(1, Partition::empty()), p);
            Ok((lhs, rhs))
        }
        IdentityId::Z3 => {
            let lhs = zeta_int(3, p)?;
            let rhs = &MPReal::from_rat(&rat(5, 2), p) * &alternating_sum(3, &[], p)?;
            Ok((lhs, rhs))
        }
        IdentityId::Z4 => {
            let lhs = zeta_int(4, p)?;
            let rhs =
                &MPReal::from_rat(&rat(36, 17), p) * &sigma_eval(&SigmaSpec::new(2, Partition::empty()), p);
            Ok((lhs, rhs))
        }
        IdentityId::Z5 => {
            let lhs = zeta_int(5, p)?;
            let rhs = &(&MPReal::from_u64(2, p) * &alternating_sum(5, &[], p)?)
                - &(&MPReal::from_rat(&rat(5, 2), p) * &alternating_sum(3, &[2], p)?);
            Ok((lhs, rhs))
        }
        IdentityId::Z7 => {
            let lhs = zeta_int(7, p)?;
            let rhs = &(&MPReal::from_rat(&rat(5, 2), p) * &alternating_sum(7, &[], p)?)
                + &(&MPReal::from_rat(&rat(25, 2), p) * &alternating_sum(3, &[4], p)?);
            Ok((lhs, rhs))
        }
        IdentityId::Z9 => {
            let lhs = zeta_int(9, p)?;
            let terms = [
                (rat(9, 4), 9u32, vec![]),
                (rat(-5, 4), 7, vec![2]),
                (rat(5, 1), 5, vec![4]),
                (rat(45, 4), 3, vec![6]),
                (rat(-25, 4), 3, vec![4, 2]),
            ];
            let mut rhs = MPReal::zero(p);
            for (c, s, w) in terms {
                rhs = &rhs + &(&MPReal::from_rat(&c, p) * &alternating_sum(s, &w, p)?);
            }
            Ok((lhs, rhs))
        }
        IdentityId::Z11 => {
            let lhs = zeta_int(11, p)?;
            let terms = [
                (rat(5, 2), 11u32, vec![]),
                (rat(25, 2), 7, vec![4]),
                (rat(-75, 4), 3, vec![8]),
                (rat(125, 4), 3, vec![4, 4]),
            ];
            let mut rhs = MPReal::zero(p);
            for (c, s, w) in terms {
                rhs = &rhs + &(&MPReal::from_rat(&c, p) * &alternating_sum(s, &w, p)?);
            }
            Ok((lhs, rhs))
        }
        IdentityId::Koecher => {
            let x = x.unwrap();
            Ok((koecher_lhs(x, p)?, koecher_rhs(x, p)?))
        }
        IdentityId::Z43 => {
            let x = x.unwrap();
            Ok((z43_lhs(x, p)?, z43_rhs(x, p)?))
        }
        IdentityId::Bradley => {
            let x = &params[0];
            let y = &params[1];
            Ok((bradley_lhs(x, y, p)?, bradley_rhs(x, y, p)?))
        }
        IdentityId::Apery2 => {
            let x = x.unwrap();
            Ok((apery2_lhs(x, p)?, zeta2_rhs(x, p)?))
        }
        IdentityId::Apery22 => {
            let x = x.unwrap();
            Ok((apery22_lhs(x, p)?, apery22_rhs(x, p)?))
        }
        IdentityId::Lesh => {
            let x = x.unwrap();
            Ok((lesh_lhs(x, p)?, lesh_rhs(x, p)?))
        }
        IdentityId::Apery4 => {
            let x = x.unwrap();
            Ok((zeta4_lhs(x, p)?, apery4_rhs(x, p)?))
        }
        IdentityId::Zeta4 => {
            let x = x.unwrap();
            Ok((zeta4_lhs(x, p)?, zeta4_rhs(x, p)?))
        }
        IdentityId::Rho => {
            let alt5 = alternating_sum(5, &[], p)?;
            let lhs = &(&MPReal::from_u64(2, p) * &zeta_int(5, p)?) + &alt5;
            Ok((lhs, rho_ladder(p)?))
        }
        IdentityId::Z0 => {
            let lhs = plain_binomial_sum(0, p);
            // (2 pi sqrt 3 + 9)/27
            let rhs = &(&(&(&MPReal::from_u64(2, p) * &MPReal::pi(p))
                * &MPReal::from_u64(3, p).sqrt()?)
                + &MPReal::from_u64(9, p))
                / &MPReal::from_u64(27, p);
            Ok((lhs, rhs))
        }
        IdentityId::Z1 => {
            let lhs = alternating_sum(1, &[], p)?;
            let sqrt5 = MPReal::from_u64(5, p).sqrt()?;
            let golden = &(&sqrt5 + &MPReal::one(p)) / &MPReal::from_u64(2, p);
            let rhs = &(&MPReal::from_u64(2, p) / &sqrt5) * &golden.ln()?;
            Ok((lhs, rhs))
        }
        IdentityId::Z6 => {
            let lhs = zeta_int(6, p)?;
            let inner = &sigma_eval(&SigmaSpec::new(3, Partition::empty()), p)
                + &(&MPReal::from_rat(&rat(3, 2), p)
                    * &sigma_eval(&SigmaSpec::new(1, Partition::new(vec![2])), p));
            let rhs = &MPReal::from_rat(&rat(36 * 8, 163), p) * &inner;
            Ok((lhs, rhs))
        }
        IdentityId::Z8 => {
            let lhs = zeta_int(8, p)?;
            let inner = &(&sigma_eval(&SigmaSpec::new(4, Partition::empty()), p)
                + &(&MPReal::from_rat(&rat(9, 4), p)
                    * &sigma_eval(&SigmaSpec::new(2, Partition::new(vec![2])), p)))
                + &(&MPReal::from_rat(&rat(3, 2), p)
                    * &sigma_eval(&SigmaSpec::new(1, Partition::new(vec![3])), p));
            let rhs = &MPReal::from_rat(&rat(36 * 64, 1373), p) * &inner;
            Ok((lhs, rhs))
        }
        IdentityId::Z10 => {
            let lhs = zeta_int(10, p)?;
            let mut inner = sigma_eval(&SigmaSpec::new(5, Partition::empty()), p);
            inner = &inner
                + &(&MPReal::from_rat(&rat(9, 4), p)
                    * &sigma_eval(&SigmaSpec::new(3, Partition::new(vec![2])), p));
            inner = &inner
                + &(&MPReal::from_rat(&rat(3, 2), p)
                    * &sigma_eval(&SigmaSpec::new(1, Partition::new(vec![4])), p));
            inner = &inner
                + &(&MPReal::from_rat(&rat(9, 4), p)
                    * &sigma_eval(&SigmaSpec::new(2, Partition::new(vec![3])), p));
            inner = &inner
                + &(&MPReal::from_rat(&rat(27, 8), p)
                    * &simplex_eval(&SimplexSpec::new(1, vec![4, 4]), p));
            let rhs = &MPReal::from_rat(&rat(36 * 512, 11143), p) * &inner;
            Ok((lhs, rhs))
        }
        IdentityId::Hyper543 => {
            let x = x.unwrap();
            Ok((hyper543_5f4(x, p)?, hyper543_6f5(x, p)?))
        }
    }
}

// ---------------------------------------------------------------------------
// Dirichlet-type left-hand sides, tail-accelerated through zeta values.

/// Head sum plus zeta-tail acceleration for sum_{k>=1} k^{-s0} g(1/k^2).
///
/// `direct(k)` evaluates one term exactly; `coeff(j)` yields the
/// Maclaurin coefficient d_j of g; `radius` bounds the magnitude of the
/// denominator roots in k, so the tail converges like (radius/head)^2
/// per coefficient.
fn accelerated_sum(
    s0: u32,
    radius: &MPReal,
    direct: impl Fn(u64) -> Result<MPReal>,
    mut coeff: impl FnMut(usize) -> MPReal,
    p: Precision,
) -> Result<MPReal> {
    let mut head: u64 = 100;
    while MPReal::from_u64(head / 2, p).cmp(radius) != std::cmp::Ordering::Greater {
        head *= 2;
    }
    let mut acc = MPReal::zero(p);
    for k in 1..=head {
        acc = &acc + &direct(k)?;
    }
    let floor = -(p.total() as i64) - 2;
    let mut streak = 0;
    let jmax = 4 * p.total() as usize;
    for j in 0..=jmax {
        let s = s0 + 2 * j as u32;
        let mut tail = zeta_int(s, p)?;
        for k in 1..=head {
            tail = &tail - &MPReal::from_u64(k, p).powi(s as u64).recip();
        }
        let term = &coeff(j) * &tail;
        acc = &acc + &term;
        if term.abs_below_pow10(floor) {
            streak += 1;
            if streak == 2 {
                return Ok(acc);
            }
        } else {
            streak = 0;
        }
    }
    Err(Error::Divergence(format!(
        "zeta-tail expansion did not settle within {jmax} coefficients"
    )))
}

/// sum_{k>=1} 1/(k^2 - x^2), for x not a nonzero integer.
pub fn apery2_lhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    let x2 = x * x;
    let mut pw = MPReal::one(p);
    accelerated_sum(
        2,
        &x.abs(),
        |k| {
            let den = &MPReal::from_u64(k * k, p) - &x2;
            if den.is_zero() {
                return Err(Error::Pole(format!("k^2 - x^2 vanishes at k={k}")));
            }
            Ok(den.recip())
        },
        |j| {
            if j > 0 {
                pw = &pw * &x2;
            }
            pw.clone()
        },
        p,
    )
}

/// Koecher's left side sum_{k>=1} 1/(k(k^2 - x^2)).
pub fn koecher_lhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    let x2 = x * x;
    let mut pw = MPReal::one(p);
    accelerated_sum(
        3,
        &x.abs(),
        |k| {
            let den = &MPReal::from_u64(k, p) * &(&MPReal::from_u64(k * k, p) - &x2);
            if den.is_zero() {
                return Err(Error::Pole(format!("k(k^2 - x^2) vanishes at k={k}")));
            }
            Ok(den.recip())
        },
        |j| {
            if j > 0 {
                pw = &pw * &x2;
            }
            pw.clone()
        },
        p,
    )
}

/// sum_{k>=1} k/(k^4 - x^4), the left side of the zeta(4n+3) generator.
pub fn z43_lhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    let x4 = &(x * x) * &(x * x);
    let mut pw = MPReal::one(p);
    let mut first = true;
    accelerated_sum(
        3,
        &x.abs(),
        |k| {
            let k2 = MPReal::from_u64(k * k, p);
            let den = &(&k2 * &k2) - &x4;
            if den.is_zero() {
                return Err(Error::Pole(format!("k^4 - x^4 vanishes at k={k}")));
            }
            Ok(&MPReal::from_u64(k, p) / &den)
        },
        // k/(k^4-x^4) = k^-3 / (1 - x^4 t^2) with t = 1/k^2, so the odd
        // coefficients vanish and d_{2m} = x^{4m}
        |j| {
            if j % 2 == 1 {
                return MPReal::zero(p);
            }
            if first {
                first = false;
            } else {
                pw = &pw * &x4;
            }
            pw.clone()
        },
        p,
    )
}

/// sum_{k>=1} k/(k^4 - x^2 k^2 - y^4), the bivariate left side.
pub fn bradley_lhs(x: &MPReal, y: &MPReal, p: Precision) -> Result<MPReal> {
    let x2 = x * x;
    let y4 = &(y * y) * &(y * y);
    // largest root magnitude of k^4 - x^2 k^2 - y^4 is below |x| + |y| + 1
    let radius = &(&x.abs() + &y.abs()) + &MPReal::one(p);
    // d_j = x^2 d_{j-1} + y^4 d_{j-2} from 1/(1 - x^2 t - y^4 t^2)
    let mut d_prev = MPReal::zero(p);
    let mut d_cur = MPReal::one(p);
    let mut first = true;
    accelerated_sum(
        3,
        &radius,
        |k| {
            let k2 = MPReal::from_u64(k * k, p);
            let den = &(&(&k2 * &k2) - &(&x2 * &k2)) - &y4;
            if den.is_zero() {
                return Err(Error::Pole(format!("k^4 - x^2 k^2 - y^4 vanishes at k={k}")));
            }
            Ok(&MPReal::from_u64(k, p) / &den)
        },
        |_| {
            if first {
                first = false;
            } else {
                let next = &(&x2 * &d_cur) + &(&y4 * &d_prev);
                d_prev = std::mem::replace(&mut d_cur, next);
            }
            d_cur.clone()
        },
        p,
    )
}

// ---------------------------------------------------------------------------
// Binomial right-hand sides with incrementally updated products.

/// Z(x) = 3 sum_k 1/(C(2k,k)(k^2-x^2)) prod_{m<k} (4x^2-m^2)/(x^2-m^2),
/// the right side of Theorem 1 in its generating-function form.
pub fn zeta2_rhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    let x2 = x * x;
    let four_x2 = &MPReal::from_u64(4, p) * &x2;
    let mut acc = MPReal::zero(p);
    let mut binom = MPReal::one(p);
    let mut prod = MPReal::one(p);
    for k in 1..=truncation_terms(p) {
        binom = &(&binom * &MPReal::from_u64(2 * (2 * k - 1), p)) / &MPReal::from_u64(k, p);
        let k2 = MPReal::from_u64(k * k, p);
        let den = &k2 - &x2;
        if den.is_zero() {
            return Err(Error::Pole(format!("k^2 - x^2 vanishes at k={k}")));
        }
        acc = &acc + &(&prod / &(&binom * &den));
        let pden = &x2 - &k2;
        if pden.is_zero() {
            return Err(Error::Pole(format!("x^2 - m^2 vanishes at m={k}")));
        }
        prod = &prod * &(&(&four_x2 - &k2) / &pden);
    }
    Ok(&MPReal::from_u64(3, p) * &acc)
}

/// Power-series coefficients of Z(x) in u = x^2 through u^order,
/// computed numerically: the cumulative product and the 1/(k^2-u)
/// factor are carried as truncated series per k, so coefficient n
/// converges at the same 4^-k rate as the sum itself.
pub fn zeta2_rhs_coefficients(order: usize, p: Precision) -> Vec<MPReal> {
    let mut acc = vec![MPReal::zero(p); order + 1];
    // series of prod_{m<k} (4u - m^2)/(u - m^2) = prod (m^2 - 4u)/(m^2 - u)
    let mut prod = vec![MPReal::zero(p); order + 1];
    prod[0] = MPReal::one(p);
    let mut binom = MPReal::one(p);
    let three = MPReal::from_u64(3, p);
    let four = MPReal::from_u64(4, p);
    for k in 1..=truncation_terms(p) {
        binom = &(&binom * &MPReal::from_u64(2 * (2 * k - 1), p)) / &MPReal::from_u64(k, p);
        let k2 = MPReal::from_u64(k * k, p);
        let scale = &three / &binom;
        // term = 3 prod / (C (k^2 - u)): s_j = (prod_j + s_{j-1}) / k^2
        let mut s_prev = MPReal::zero(p);
        for (a, pj) in acc.iter_mut().zip(&prod) {
            let s = &(pj + &s_prev) / &k2;
            *a = &*a + &(&scale * &s);
            s_prev = s;
        }
        // prod *= (k^2 - 4u)/(k^2 - u): multiply, then divide the same way
        let mut q = vec![MPReal::zero(p); order + 1];
        for j in 0..=order {
            q[j] = &(&k2 * &prod[j])
                - &(if j > 0 { &four * &prod[j - 1] } else { MPReal::zero(p) });
        }
        let mut s_prev = MPReal::zero(p);
        for (pj, qj) in prod.iter_mut().zip(&q) {
            let s = &(qj + &s_prev) / &k2;
            *pj = s.clone();
            s_prev = s;
        }
    }
    acc
}

/// Koecher's right side:
/// (1/2) sum_k (-1)^(k+1)/(k^3 C(2k,k)) (5k^2-x^2)/(k^2-x^2) prod (1-x^2/m^2).
pub fn koecher_rhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    let x2 = x * x;
    let mut acc = MPReal::zero(p);
    let mut binom = MPReal::one(p);
    let mut prod = MPReal::one(p);
    for k in 1..=truncation_terms(p) {
        binom = &(&binom * &MPReal::from_u64(2 * (2 * k - 1), p)) / &MPReal::from_u64(k, p);
        let k2 = MPReal::from_u64(k * k, p);
        let den = &k2 - &x2;
        if den.is_zero() {
            return Err(Error::Pole(format!("k^2 - x^2 vanishes at k={k}")));
        }
        let num = &(&MPReal::from_u64(5, p) * &k2) - &x2;
        let mut term =
            &(&prod * &num) / &(&(&MPReal::from_u64(k, p).powi(3) * &binom) * &den);
        if k % 2 == 0 {
            term.neg_assign();
        }
        acc = &acc + &term;
        prod = &prod * &(&den / &k2);
    }
    Ok(&acc / &MPReal::from_u64(2, p))
}

/// Right side of the zeta(4n+3) generator:
/// (5/2) sum_k (-1)^(k+1) k/(C(2k,k)(k^4-x^4)) prod (m^4+4x^4)/(m^4-x^4).
pub fn z43_rhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    let x4 = &(x * x) * &(x * x);
    let four_x4 = &MPReal::from_u64(4, p) * &x4;
    let mut acc = MPReal::zero(p);
    let mut binom = MPReal::one(p);
    let mut prod = MPReal::one(p);
    for k in 1..=truncation_terms(p) {
        binom = &(&binom * &MPReal::from_u64(2 * (2 * k - 1), p)) / &MPReal::from_u64(k, p);
        let k2 = MPReal::from_u64(k * k, p);
        let k4 = &k2 * &k2;
        let den = &k4 - &x4;
        if den.is_zero() {
            return Err(Error::Pole(format!("k^4 - x^4 vanishes at k={k}")));
        }
        let mut term = &(&prod * &MPReal::from_u64(k, p)) / &(&binom * &den);
        if k % 2 == 0 {
            term.neg_assign();
        }
        acc = &acc + &term;
        prod = &prod * &(&(&k4 + &four_x4) / &den);
    }
    Ok(&MPReal::from_rat(&rat(5, 2), p) * &acc)
}

/// Bradley's bivariate right side:
/// (1/2) sum_k (-1)^(k+1)/(k C(2k,k)) (5k^2-x^2)/(k^4-x^2 k^2-y^4)
///   prod ((m^2-x^2)^2+4y^4)/(m^4-x^2 m^2-y^4).
pub fn bradley_rhs(x: &MPReal, y: &MPReal, p: Precision) -> Result<MPReal> {
    let x2 = x * x;
    let y4 = &(y * y) * &(y * y);
    let four_y4 = &MPReal::from_u64(4, p) * &y4;
    let mut acc = MPReal::zero(p);
    let mut binom = MPReal::one(p);
    let mut prod = MPReal::one(p);
    for k in 1..=truncation_terms(p) {
        binom = &(&binom * &MPReal::from_u64(2 * (2 * k - 1), p)) / &MPReal::from_u64(k, p);
        let k2 = MPReal::from_u64(k * k, p);
        let k4 = &k2 * &k2;
        let den = &(&k4 - &(&x2 * &k2)) - &y4;
        if den.is_zero() {
            return Err(Error::Pole(format!("k^4 - x^2 k^2 - y^4 vanishes at k={k}")));
        }
        let num = &(&MPReal::from_u64(5, p) * &k2) - &x2;
        let mut term = &(&prod * &num) / &(&(&MPReal::from_u64(k, p) * &binom) * &den);
        if k % 2 == 0 {
            term.neg_assign();
        }
        acc = &acc + &term;
        let pnum = {
            let d = &k2 - &x2;
            &(&d * &d) + &four_y4
        };
        prod = &prod * &(&pnum / &den);
    }
    Ok(&acc / &MPReal::from_u64(2, p))
}

/// Leshchiner's binomial series (left side of Eq. 4.1):
/// (1/2) sum_k (3k^2+x^2)/(k^2 C(2k,k)(k^2-x^2)) prod (1-x^2/m^2).
pub fn lesh_lhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    let x2 = x * x;
    let mut acc = MPReal::zero(p);
    let mut binom = MPReal::one(p);
    let mut prod = MPReal::one(p);
    for k in 1..=truncation_terms(p) {
        binom = &(&binom * &MPReal::from_u64(2 * (2 * k - 1), p)) / &MPReal::from_u64(k, p);
        let k2 = MPReal::from_u64(k * k, p);
        let den = &k2 - &x2;
        if den.is_zero() {
            return Err(Error::Pole(format!("k^2 - x^2 vanishes at k={k}")));
        }
        let num = &(&MPReal::from_u64(3, p) * &k2) + &x2;
        acc = &acc + &(&(&prod * &num) / &(&(&k2 * &binom) * &den));
        prod = &prod * &(&den / &k2);
    }
    Ok(&acc / &MPReal::from_u64(2, p))
}

/// pi/(2x sin(pi x)) - 1/(2x^2), the closed form of Leshchiner's series.
pub fn lesh_rhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    if x.is_zero() {
        return Err(Error::Pole("lesh closed form needs x != 0".into()));
    }
    let pi = MPReal::pi(p);
    let s = (&pi * x).sin()?;
    if s.is_zero() {
        return Err(Error::Pole("sin(pi x) vanishes".into()));
    }
    let x2 = x * x;
    let first = &pi / &(&(&MPReal::from_u64(2, p) * x) * &s);
    Ok(&first - &(&(&MPReal::from_u64(2, p) * &x2).recip()))
}

/// Left side of Theorem 2 (and of the zeta(2n+4) generator):
/// sum_k 1/(k^2 C(2k,k)(k^2-x^2)) prod (1-x^2/m^2).
pub fn zeta4_lhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    let x2 = x * x;
    let mut acc = MPReal::zero(p);
    let mut binom = MPReal::one(p);
    let mut prod = MPReal::one(p);
    for k in 1..=truncation_terms(p) {
        binom = &(&binom * &MPReal::from_u64(2 * (2 * k - 1), p)) / &MPReal::from_u64(k, p);
        let k2 = MPReal::from_u64(k * k, p);
        let den = &k2 - &x2;
        if den.is_zero() {
            return Err(Error::Pole(format!("k^2 - x^2 vanishes at k={k}")));
        }
        acc = &acc + &(&prod / &(&(&k2 * &binom) * &den));
        prod = &prod * &(&den / &k2);
    }
    Ok(acc)
}

/// V(x) = sum_k 1/(k^2 C(2k,k)) prod (1-x^2/m^2) = (1 - cos(pi x/3))/x^2.
pub fn v_series(x: &MPReal, p: Precision) -> Result<MPReal> {
    let x2 = x * x;
    let mut acc = MPReal::zero(p);
    let mut binom = MPReal::one(p);
    let mut prod = MPReal::one(p);
    for k in 1..=truncation_terms(p) {
        binom = &(&binom * &MPReal::from_u64(2 * (2 * k - 1), p)) / &MPReal::from_u64(k, p);
        let k2 = MPReal::from_u64(k * k, p);
        acc = &acc + &(&prod / &(&k2 * &binom));
        prod = &prod * &(&(&k2 - &x2) / &k2);
    }
    Ok(acc)
}

/// (pi x csc(pi x) + 3 cos(pi x/3) - 4)/(4 x^4); at x = 0 the limit,
/// the constant Maclaurin coefficient (17/36) zeta(4).
pub fn zeta4_rhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    if x.is_zero() {
        let pi4 = MPReal::pi(p).powi(4);
        return Ok(&MPReal::from_rat(&theorem2_coefficient(2), p) * &pi4);
    }
    let pi = MPReal::pi(p);
    let s = (&pi * x).sin()?;
    if s.is_zero() {
        return Err(Error::Pole("sin(pi x) vanishes".into()));
    }
    let csc_part = &(&pi * x) / &s;
    let cos_part = &MPReal::from_u64(3, p) * &(&(&pi * x) / &MPReal::from_u64(3, p)).cos()?;
    let num = &(&csc_part + &cos_part) - &MPReal::from_u64(4, p);
    let x4 = &(x * x) * &(x * x);
    Ok(&num / &(&MPReal::from_u64(4, p) * &x4))
}

/// pi/(4x^3 sin(pi x)) - 1/x^4 + 3cos(pi x/3)/(4x^4), the form in which
/// the zeta(2n+4) generator was first stated; identical to `zeta4_rhs`.
pub fn apery4_rhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    if x.is_zero() {
        return zeta4_rhs(x, p);
    }
    let pi = MPReal::pi(p);
    let s = (&pi * x).sin()?;
    if s.is_zero() {
        return Err(Error::Pole("sin(pi x) vanishes".into()));
    }
    let x2 = x * x;
    let x3 = &x2 * x;
    let x4 = &x2 * &x2;
    let a = &pi / &(&(&MPReal::from_u64(4, p) * &x3) * &s);
    let b = x4.recip();
    let c = &(&MPReal::from_u64(3, p) * &(&(&pi * x) / &MPReal::from_u64(3, p)).cos()?)
        / &(&MPReal::from_u64(4, p) * &x4);
    Ok(&(&a - &b) + &c)
}

/// sum_{n>=0} zeta(2n+2) x^(2n), summed termwise for |x| < 1 with the
/// far tail (where zeta(2n+2) is 1 to working accuracy) closed off as a
/// geometric series.
pub fn apery22_lhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    let ax = x.abs();
    if ax.cmp(&MPReal::one(p)) != std::cmp::Ordering::Less {
        return Err(Error::Divergence("apery22 series needs |x| < 1".into()));
    }
    // past this index zeta(2n+2) - 1 < 2^(-2n-1) drops below the target
    let n0 = (p.total() as f64 * 10f64.log2() / 2.0).ceil() as u32 + 2;
    let x2 = x * x;
    let mut pw = MPReal::one(p);
    let mut acc = MPReal::zero(p);
    for n in 0..=n0 {
        acc = &acc + &(&zeta_int(2 * n + 2, p)? * &pw);
        pw = &pw * &x2;
    }
    // tail sum_{n>n0} x^(2n) with zeta factor 1
    let tail = &pw / &(&MPReal::one(p) - &x2);
    Ok(&acc + &tail)
}

/// (1 - pi x cot(pi x))/(2 x^2), for 0 < |x| < 1.
pub fn apery22_rhs(x: &MPReal, p: Precision) -> Result<MPReal> {
    if x.is_zero() {
        return Err(Error::Pole("apery22 closed form needs x != 0".into()));
    }
    let pix = &MPReal::pi(p) * x;
    let num = &MPReal::one(p) - &(&pix * &pix.cot()?);
    Ok(&num / &(&MPReal::from_u64(2, p) * &(x * x)))
}

/// The golden-ratio polylog ladder, with rho = (3-sqrt5)/2 = phi^(-2):
/// (5/2)Li5(rho) - (5/2)Li4(rho) log rho + zeta(3) log^2 rho
///   + (1/3) zeta(2) log^3 rho - (1/24) log^5 rho.
///
/// Equal to 2 zeta(5) + sum (-1)^(k+1)/(k^5 C(2k,k)); note log rho < 0,
/// so the odd powers of the logarithm contribute negatively.  The sign
/// pattern here is the one that holds numerically (checked to hundreds
/// of digits); printed statements of this ladder sometimes differ in
/// the sign of the alternating sum and of the log^3 term.
pub fn rho_ladder(p: Precision) -> Result<MPReal> {
    let rho = &(&MPReal::from_u64(3, p) - &MPReal::from_u64(5, p).sqrt()?) / &MPReal::from_u64(2, p);
    let lg = rho.ln()?;
    let five_half = MPReal::from_rat(&rat(5, 2), p);
    let mut acc = &five_half * &polylog(5, &rho, p)?;
    acc = &acc - &(&(&five_half * &polylog(4, &rho, p)?) * &lg);
    acc = &acc + &(&zeta_int(3, p)? * &lg.powi(2));
    acc = &acc + &(&(&zeta_int(2, p)? / &MPReal::from_u64(3, p)) * &lg.powi(3));
    acc = &acc - &(&lg.powi(5) / &MPReal::from_u64(24, p));
    Ok(acc)
}

// ---------------------------------------------------------------------------
// The hypergeometric form of z43.

/// 5F4(2, 1+x, 1-x, 1+ix, 1-ix; 2+x, 2-x, 2+ix, 2-ix | 1).
///
/// The conjugate parameter pairs collapse over the reals: term k equals
/// (k+1)(1-x^4)/((k+1)^4 - x^4), so the series is (1-x^4) times the
/// z43 left side and is evaluated through the same zeta-tail
/// acceleration.
pub fn hyper543_5f4(x: &MPReal, p: Precision) -> Result<MPReal> {
    let x4 = &(x * x) * &(x * x);
    Ok(&(&MPReal::one(p) - &x4) * &z43_lhs(x, p)?)
}

/// (5/4) 6F5(2,2,1+x+ix,1+x-ix,1-x+ix,1-x-ix; 3/2,2+x,2-x,2+ix,2-ix | -1/4).
///
/// Again the conjugate quadruples collapse: with u = k+1 the upper pairs
/// contribute (u^4 + 4x^4) and the lower ones ((k+2)^4 - x^4), giving the
/// real term ratio
///   t_{k+1}/t_k = -(k+2)^2 ((k+1)^4 + 4x^4) / (4 (k+3/2)(k+1)((k+2)^4 - x^4)),
/// which tends to -1/4, so K(p) terms suffice.
pub fn hyper543_6f5(x: &MPReal, p: Precision) -> Result<MPReal> {
    let x4 = &(x * x) * &(x * x);
    let four_x4 = &MPReal::from_u64(4, p) * &x4;
    let mut term = MPReal::one(p);
    let mut acc = MPReal::one(p);
    for k in 0..truncation_terms(p) {
        let u = MPReal::from_u64((k + 1) * (k + 1), p);
        let num = &(&MPReal::from_u64((k + 2) * (k + 2), p) * &(&(&u * &u) + &four_x4));
        let w = MPReal::from_u64((k + 2) * (k + 2), p);
        let den_poly = &(&w * &w) - &x4;
        if den_poly.is_zero() {
            return Err(Error::Pole(format!("(k+2)^4 - x^4 vanishes at k={k}")));
        }
        let den = &(&(&MPReal::from_rat(&rat(2 * k as i64 + 3, 2), p) * &MPReal::from_u64(k + 1, p))
            * &den_poly)
            * &MPReal::from_u64(4, p);
        term = &term * &(num / &den);
        term.neg_assign();
        acc = &acc + &term;
    }
    Ok(&MPReal::from_rat(&rat(5, 4), p) * &acc)
}

// ---------------------------------------------------------------------------
// Theorem 2 Maclaurin coefficients.

/// Rational part of the Theorem 2 Maclaurin coefficient: the x^(2n-4)
/// coefficient of (pi x csc(pi x) + 3cos(pi x/3) - 4)/(4x^4) equals
/// theorem2_coefficient(n) * pi^(2n), with
///   (-1)^n {3^(1-2n) - 2 B_{2n} (2^(2n-1) - 1)} / (4 (2n)!).
pub fn theorem2_coefficient(n: u64) -> Rat {
    assert!(n >= 2, "Theorem 2 coefficients start at n = 2 (the x^0 term)");
    let b2n = crate::exact::bernoulli_even(n);
    let three = Rat::one() / rat(3, 1).pow(2 * n as i32 - 1);
    let two_pow = rat(2, 1).pow(2 * n as i32 - 1) - Rat::one();
    let mut c = (three - rat(2, 1) * b2n * two_pow) / (rat(4, 1) * Rat::from_integer(factorial(2 * n)));
    if n % 2 == 1 {
        c = -c;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::zeta_even_rational_part;
    use std::str::FromStr;

    fn p50() -> Precision {
        Precision::new(50)
    }

    fn residual(id: IdentityId, params: &[MPReal]) -> MPReal {
        let (lhs, rhs) = identity_eval(id, params, p50()).unwrap();
        (&lhs - &rhs).abs()
    }

    fn half(p: Precision) -> MPReal {
        MPReal::from_rat(&rat(1, 2), p)
    }

    #[test]
    fn parameterless_identities_hold() {
        for id in [
            IdentityId::Z2,
            IdentityId::Z3,
            IdentityId::Z4,
            IdentityId::Z5,
            IdentityId::Z7,
            IdentityId::Z9,
            IdentityId::Z11,
            IdentityId::Z0,
            IdentityId::Z1,
            IdentityId::Z6,
            IdentityId::Z8,
            IdentityId::Z10,
            IdentityId::Rho,
        ] {
            let r = residual(id, &[]);
            assert!(r.abs_below_pow10(-40), "{id}: residual {}", r.to_decimal(10));
        }
    }

    #[test]
    fn apery2_special_values() {
        let p = p50();
        // Z(1/2) = 2
        let (lhs, rhs) = identity_eval(IdentityId::Apery2, &[half(p)], p).unwrap();
        let two = MPReal::from_u64(2, p);
        assert!((&rhs - &two).abs().abs_below_pow10(-45));
        assert!((&lhs - &rhs).abs().abs_below_pow10(-40));
        // Z(1/4) = 8 - 2 pi
        let x = MPReal::from_rat(&rat(1, 4), p);
        let (_, rhs) = identity_eval(IdentityId::Apery2, &[x], p).unwrap();
        let want = &MPReal::from_u64(8, p) - &(&MPReal::from_u64(2, p) * &MPReal::pi(p));
        assert!((&rhs - &want).abs().abs_below_pow10(-45));
        // Z(1/6) = 18 - 3 sqrt(3) pi
        let x = MPReal::from_rat(&rat(1, 6), p);
        let (_, rhs) = identity_eval(IdentityId::Apery2, &[x], p).unwrap();
        let want = &MPReal::from_u64(18, p)
            - &(&(&MPReal::from_u64(3, p) * &MPReal::from_u64(3, p).sqrt().unwrap())
                * &MPReal::pi(p));
        assert!((&rhs - &want).abs().abs_below_pow10(-45));
    }

    #[test]
    fn parameterized_identities_hold_at_samples() {
        let p = p50();
        let third = MPReal::from_rat(&rat(1, 3), p);
        let fifth = MPReal::from_rat(&rat(1, 5), p);
        for id in [
            IdentityId::Koecher,
            IdentityId::Z43,
            IdentityId::Apery2,
            IdentityId::Apery22,
            IdentityId::Lesh,
            IdentityId::Apery4,
            IdentityId::Zeta4,
            IdentityId::Hyper543,
        ] {
            for x in [&third, &fifth] {
                let r = residual(id, &[x.clone()]);
                assert!(r.abs_below_pow10(-35), "{id}: residual {}", r.to_decimal(10));
            }
        }
        let r = residual(IdentityId::Bradley, &[third, fifth]);
        assert!(r.abs_below_pow10(-35), "bradley: residual {}", r.to_decimal(10));
    }

    #[test]
    fn lesh_at_one_half_is_pi_minus_2() {
        let p = p50();
        let (lhs, rhs) = identity_eval(IdentityId::Lesh, &[half(p)], p).unwrap();
        let want = &MPReal::pi(p) - &MPReal::from_u64(2, p);
        assert!((&rhs - &want).abs().abs_below_pow10(-45));
        assert!((&lhs - &rhs).abs().abs_below_pow10(-40));
    }

    #[test]
    fn zeta4_at_zero_gives_17_36_zeta4() {
        let p = p50();
        let (lhs, rhs) = identity_eval(IdentityId::Zeta4, &[MPReal::zero(p)], p).unwrap();
        let want = &MPReal::from_rat(&rat(17, 36), p) * &zeta_int(4, p).unwrap();
        assert!((&rhs - &want).abs().abs_below_pow10(-45));
        assert!((&lhs - &rhs).abs().abs_below_pow10(-40));
    }

    #[test]
    fn pole_parameters_are_rejected() {
        let p = p50();
        let two = MPReal::from_u64(2, p);
        assert!(matches!(
            identity_eval(IdentityId::Apery2, &[two.clone()], p),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            identity_eval(IdentityId::Koecher, &[two], p),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn theorem2_rational_parts() {
        // coefficient * pi^(2n) must equal the stated rational multiples
        // of zeta(2n): 17/36, 313/648, 23147/46656, 1047709/2099520
        let stated = [
            (2u64, rat(17, 36)),
            (3, rat(313, 648)),
            (4, rat(23147, 46656)),
            (5, rat(1047709, 2099520)),
        ];
        for (n, q) in stated {
            let zr = zeta_even_rational_part(n); // zeta(2n) = zr * pi^(2n)
            assert_eq!(theorem2_coefficient(n), q * zr, "n={n}");
        }
    }

    #[test]
    fn v_series_closed_form() {
        let p = p50();
        let x = MPReal::from_rat(&rat(3, 7), p);
        let v = v_series(&x, p).unwrap();
        let cosv = (&(&MPReal::pi(p) * &x) / &MPReal::from_u64(3, p)).cos().unwrap();
        let want = &(&MPReal::one(p) - &cosv) / &(&x * &x);
        assert!((&v - &want).abs().abs_below_pow10(-45));
    }

    #[test]
    fn names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(IdentityId::from_str(id.name()).unwrap(), id);
        }
        assert!(IdentityId::from_str("zeta99").is_err());
        assert_eq!(IdentityId::Bradley.signature().arity(), 2);
        assert_eq!(IdentityId::Z2.signature().arity(), 0);
    }

    #[test]
    fn wrong_arity_is_rejected() {
        let p = p50();
        assert!(matches!(
            identity_eval(IdentityId::Z2, &[MPReal::one(p)], p),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            identity_eval(IdentityId::Bradley, &[MPReal::one(p)], p),
            Err(Error::Domain(_))
        ));
    }
}
