//! PSLQ integer relation detection.
//!
//! Given an n-vector of reals, either find a nonzero integer vector a
//! with sum a_i x_i numerically zero, or certify a lower bound on the
//! Euclidean norm of any such relation at the working precision.
//!
//! This is the standard single-pair PSLQ with gamma = sqrt(4/3): Hermite
//! reduction of the trapezoidal H matrix, row swaps chosen to maximize
//! gamma^i |H_ii|, and a Givens rotation to restore triangularity.  The
//! exclusion certificate is the classical one: no relation has norm
//! below 1/max_j |H_jj|.

use crate::error::{Error, Result};
use crate::mp::{MPReal, Precision};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::ops::Neg;

/// A relation-detection problem: the inputs, a norm cap past which the
/// search stops with an exclusion, and an iteration budget.
#[derive(Clone, Debug)]
pub struct RelationProblem {
    pub xs: Vec<MPReal>,
    /// Euclidean-norm cap: certifying that no relation with norm below
    /// this exists counts as a definitive (excluded) outcome.
    pub bound: f64,
    pub max_iterations: usize,
}

impl RelationProblem {
    pub fn new(xs: Vec<MPReal>) -> Self {
        RelationProblem { xs, bound: 1e12, max_iterations: 100_000 }
    }

    pub fn with_bound(mut self, bound: f64) -> Self {
        self.bound = bound;
        self
    }
}

/// Outcome of a PSLQ run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum RelationResult {
    /// A relation was found: the vector is nonzero, content-reduced
    /// (gcd 1), and sign-normalized (first nonzero entry positive).
    Found {
        #[serde(with = "bigint_strings")]
        relation: Vec<BigInt>,
        /// |sum a_i x_i| after normalization, as a decimal string.
        residual: String,
    },
    /// No relation with Euclidean norm below `bound` exists at this
    /// precision (decimal scientific notation).
    Excluded { bound: String },
}

/// Serialize BigInt vectors as decimal strings so the JSON is readable.
mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|b| b.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|t| BigInt::from_str(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Runs PSLQ on the problem's input vector.
pub fn pslq_detect(prob: &RelationProblem) -> Result<RelationResult> {
    let n = prob.xs.len();
    if n < 2 {
        return Err(Error::Domain("pslq needs at least two inputs".into()));
    }
    if prob.xs.iter().any(|x| x.is_zero()) {
        return Err(Error::Domain("pslq inputs must be nonzero".into()));
    }
    let p = prob.xs[0].precision();

    // normalize so max |x_i| = 1; relations are scale-invariant
    let mut maxabs = prob.xs[0].abs();
    for x in &prob.xs[1..] {
        if x.abs().cmp(&maxabs) == std::cmp::Ordering::Greater {
            maxabs = x.abs();
        }
    }
    let y0: Vec<MPReal> = prob.xs.iter().map(|x| x / &maxabs).collect();
    let mut ynorm = MPReal::zero(p);
    for y in &y0 {
        ynorm = &ynorm + &(y * y);
    }
    let ynorm = ynorm.sqrt()?;
    let eps_detect = &MPReal::pow10(-(p.digits() as i64) + 10, p) * &ynorm;

    let mut y = y0.clone();
    let nm1 = n - 1;

    // partial norms s_j = sqrt(sum_{k>=j} y_k^2)
    let mut s = vec![MPReal::zero(p); n];
    let mut acc = MPReal::zero(p);
    for j in (0..n).rev() {
        acc = &acc + &(&y[j] * &y[j]);
        s[j] = acc.sqrt()?;
    }

    // H: n x (n-1), lower trapezoidal
    let mut h = vec![vec![MPReal::zero(p); nm1]; n];
    for i in 0..n {
        for j in 0..nm1 {
            if j > i {
                continue;
            }
            if j == i {
                h[i][j] = &s[i + 1] / &s[i];
            } else {
                h[i][j] = &(&y[i] * &y[j]).neg() / &(&s[j] * &s[j + 1]);
            }
        }
    }

    let mut a: Vec<Vec<BigInt>> = identity(n);
    let mut b: Vec<Vec<BigInt>> = identity(n);

    // full initial Hermite reduction
    for i in 1..n {
        for j in (0..i.min(nm1)).rev() {
            reduce_pair(&mut h, &mut y, &mut a, &mut b, i, j, p)?;
        }
    }

    let gamma = (&MPReal::from_u64(4, p) / &MPReal::from_u64(3, p)).sqrt()?;

    for _ in 0..prob.max_iterations {
        // detection: any entry of y small means column of B is a relation
        if let Some(i_min) = detected_column(&y, &b, &eps_detect) {
            let mut rel: Vec<BigInt> = (0..n).map(|r| b[r][i_min].clone()).collect();
            normalize_relation(&mut rel);
            // confirm against the original inputs at full working precision
            let mut resid = MPReal::zero(p);
            for (j, c) in rel.iter().enumerate() {
                resid = &resid + &(&MPReal::from_bigint(c, p) * &y0[j]);
            }
            let resid = resid.abs();
            if resid.cmp(&eps_detect) == std::cmp::Ordering::Greater {
                return Err(Error::PrecisionExhausted(format!(
                    "candidate relation has ambiguous residual {}",
                    resid.to_decimal(5)
                )));
            }
            // confidence margin: n inputs agreeing to D digits pin down
            // coefficients of total digit mass up to about D by pigeonhole
            // alone, so a candidate whose coefficients use up nearly all
            // the working precision is indistinguishable from noise
            let mass: f64 = rel
                .iter()
                .map(|c| c.magnitude().bits() as f64 * std::f64::consts::LOG10_2)
                .sum();
            if (p.digits() as f64) - mass < 20.0 {
                return Err(Error::PrecisionExhausted(format!(
                    "candidate relation needs {mass:.0} coefficient digits \
                     against {} working digits",
                    p.digits()
                )));
            }
            return Ok(RelationResult::Found {
                relation: rel,
                residual: resid.to_decimal(5),
            });
        }

        // exclusion bound 1/max|H_jj|
        let mut hmax = h[0][0].abs();
        for (j, row) in h.iter().enumerate().take(nm1).skip(1) {
            let v = row[j].abs();
            if v.cmp(&hmax) == std::cmp::Ordering::Greater {
                hmax = v;
            }
        }
        if hmax.is_zero() {
            return Err(Error::PrecisionExhausted("H diagonal collapsed".into()));
        }
        let excl = hmax.recip();
        if excl.cmp(&MPReal::parse(&format!("{:.6e}", prob.bound), p)?) != std::cmp::Ordering::Less {
            return Ok(RelationResult::Excluded { bound: excl.to_decimal(5) });
        }

        // swap row m, m+1 where gamma^i |H_ii| is largest
        let mut m = 0;
        let mut best = MPReal::zero(p);
        let mut gpow = MPReal::one(p);
        for (i, row) in h.iter().enumerate().take(nm1) {
            gpow = &gpow * &gamma;
            let v = &gpow * &row[i].abs();
            if v.cmp(&best) == std::cmp::Ordering::Greater {
                best = v;
                m = i;
            }
        }
        y.swap(m, m + 1);
        h.swap(m, m + 1);
        a.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }

        // Givens rotation restores lower-trapezoidal form
        if m < nm1 - 1 {
            let t0 = (&(&h[m][m] * &h[m][m]) + &(&h[m][m + 1] * &h[m][m + 1])).sqrt()?;
            if t0.is_zero() {
                return Err(Error::PrecisionExhausted("degenerate Givens rotation".into()));
            }
            let c = &h[m][m] / &t0;
            let d = &h[m][m + 1] / &t0;
            for row in h.iter_mut().skip(m) {
                let t3 = row[m].clone();
                let t4 = row[m + 1].clone();
                row[m] = &(&c * &t3) + &(&d * &t4);
                row[m + 1] = &(&c * &t4) - &(&d * &t3);
            }
        }

        // re-reduce the rows the swap disturbed
        for i in m + 1..n {
            for j in (0..i.min(nm1).min(m + 2)).rev() {
                reduce_pair(&mut h, &mut y, &mut a, &mut b, i, j, p)?;
            }
        }
    }

    Err(Error::IterationCap(prob.max_iterations))
}

/// One Hermite reduction step: subtract t = round(H_ij/H_jj) times row j
/// from row i, mirroring the operation on y, A, and B.
fn reduce_pair(
    h: &mut [Vec<MPReal>],
    y: &mut [MPReal],
    a: &mut [Vec<BigInt>],
    b: &mut [Vec<BigInt>],
    i: usize,
    j: usize,
    p: Precision,
) -> Result<()> {
    if h[j][j].is_zero() {
        return Err(Error::PrecisionExhausted("zero pivot in Hermite reduction".into()));
    }
    let t = (&h[i][j] / &h[j][j]).round_to_bigint();
    if t.is_zero() {
        return Ok(());
    }
    let tm = MPReal::from_bigint(&t, p);
    y[j] = &y[j] + &(&tm * &y[i]);
    for k in 0..=j {
        h[i][k] = &h[i][k] - &(&tm * &h[j][k]);
    }
    let n = a.len();
    for k in 0..n {
        let d = &t * &a[j][k];
        a[i][k] -= d;
        let d = &t * &b[k][i];
        b[k][j] += d;
    }
    Ok(())
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Picks the detection column, if any.  Every |y_i| below the threshold
/// exposes a relation (column i of B); when the input vector is
/// degenerate several can collapse in the same iteration, so prefer the
/// candidate with the smallest Euclidean norm.
fn detected_column(y: &[MPReal], b: &[Vec<BigInt>], eps: &MPReal) -> Option<usize> {
    let n = y.len();
    let mut best: Option<(usize, BigInt)> = None;
    for (i, v) in y.iter().enumerate() {
        if v.abs().cmp(eps) != std::cmp::Ordering::Less {
            continue;
        }
        let norm2: BigInt = (0..n).map(|r| &b[r][i] * &b[r][i]).sum();
        match &best {
            Some((_, cur)) if norm2 >= *cur => {}
            _ => best = Some((i, norm2)),
        }
    }
    best.map(|(i, _)| i)
}

/// Content-reduce (divide by the gcd) and make the first nonzero entry
/// positive.
fn normalize_relation(rel: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for c in rel.iter() {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in rel.iter_mut() {
            *c /= &g;
        }
    }
    if let Some(first) = rel.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in rel.iter_mut() {
                *c = -&*c;
            }
        }
    }
}

/// Tests whether `c` satisfies an integer polynomial of the given degree
/// by running PSLQ on [1, c, c^2, ..., c^degree].
pub fn algebraicity_test(c: &MPReal, degree: u32, p: Precision) -> Result<RelationResult> {
    assert!(degree >= 1, "algebraicity test needs degree >= 1");
    let mut xs = Vec::with_capacity(degree as usize + 1);
    let mut pw = MPReal::one(p);
    xs.push(pw.clone());
    for _ in 0..degree {
        pw = &pw * c;
        xs.push(pw.clone());
    }
    pslq_detect(&RelationProblem::new(xs).with_bound(1e9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Partition};
    use crate::mp::zeta_int;
    use crate::series::{sigma_eval, SigmaSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn found(r: RelationResult) -> Vec<BigInt> {
        match r {
            RelationResult::Found { relation, .. } => relation,
            RelationResult::Excluded { bound } => panic!("unexpected exclusion, bound {bound}"),
        }
    }

    /// Random reals in [1,2) with full-precision mantissas.
    fn random_real(rng: &mut ChaCha8Rng, p: Precision) -> MPReal {
        let bits = (p.total() as f64 * 10f64.log2()) as usize + 8;
        let mut v = BigInt::one();
        for _ in 0..bits / 32 + 1 {
            v = (v << 32) + BigInt::from(rng.gen::<u32>());
        }
        let den = BigInt::one() << (32 * (bits / 32 + 1));
        &MPReal::one(p) + &(&MPReal::from_bigint(&v, p) / &MPReal::from_bigint(&den, p))
    }

    #[test]
    fn trivial_equal_pair() {
        let p = Precision::new(50);
        let xs = vec![MPReal::one(p), MPReal::one(p)];
        let rel = found(pslq_detect(&RelationProblem::new(xs)).unwrap());
        assert_eq!(rel, ints(&[1, -1]));
    }

    #[test]
    fn zeta2_against_sigma() {
        let p = Precision::new(50);
        let xs = vec![zeta_int(2, p).unwrap(), sigma_eval(&SigmaSpec::new(1, Partition::empty()), p)];
        let rel = found(pslq_detect(&RelationProblem::new(xs)).unwrap());
        assert_eq!(rel, ints(&[1, -3]));
    }

    #[test]
    fn zeta4_three_term_relation() {
        let p = Precision::new(100);
        let xs = vec![
            zeta_int(4, p).unwrap(),
            sigma_eval(&SigmaSpec::new(2, Partition::empty()), p),
            sigma_eval(&SigmaSpec::new(1, Partition::new(vec![1])), p),
        ];
        let rel = found(pslq_detect(&RelationProblem::new(xs)).unwrap());
        // zeta(4) - 3 sigma(4,[]) + 9 sigma(2,[2]) = 0, first entry positive
        assert_eq!(rel, ints(&[1, -3, 9]));
    }

    #[test]
    fn scale_invariance() {
        let p = Precision::new(60);
        let scale = MPReal::from_rat(&rat(355, 113), p);
        let base = vec![
            zeta_int(2, p).unwrap(),
            sigma_eval(&SigmaSpec::new(1, Partition::empty()), p),
        ];
        let scaled: Vec<MPReal> = base.iter().map(|x| x * &scale).collect();
        let r1 = found(pslq_detect(&RelationProblem::new(base)).unwrap());
        let r2 = found(pslq_detect(&RelationProblem::new(scaled)).unwrap());
        assert_eq!(r1, r2);
    }

    #[test]
    fn sqrt2_minimal_polynomial() {
        let p = Precision::new(50);
        let c = MPReal::from_u64(2, p).sqrt().unwrap();
        let rel = found(algebraicity_test(&c, 2, p).unwrap());
        // 2 - c^2 = 0 after sign normalization
        assert_eq!(rel, ints(&[2, 0, -1]));
    }

    #[test]
    fn golden_ratio_minimal_polynomial() {
        let p = Precision::new(50);
        let c = &(&MPReal::one(p) + &MPReal::from_u64(5, p).sqrt().unwrap())
            / &MPReal::from_u64(2, p);
        let rel = found(algebraicity_test(&c, 2, p).unwrap());
        // c^2 = c + 1  ->  (1, 1, -1) after normalization
        assert_eq!(rel, ints(&[1, 1, -1]));
    }

    #[test]
    fn synthetic_planted_relations_recovered() {
        let p = Precision::with_guard(100, 30);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..6 {
            let n = rng.gen_range(3..6);
            let mut coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-9999i64..=9999)).collect();
            if coeffs[n - 1] == 0 {
                coeffs[n - 1] = 1;
            }
            let mut xs: Vec<MPReal> = (0..n - 1).map(|_| random_real(&mut rng, p)).collect();
            // choose the last input so the planted relation holds exactly
            let mut dot = MPReal::zero(p);
            for (c, x) in coeffs[..n - 1].iter().zip(&xs) {
                dot = &dot + &(&MPReal::from_i64(*c, p) * x);
            }
            xs.push(&dot.neg() / &MPReal::from_i64(coeffs[n - 1], p));
            let rel = found(pslq_detect(&RelationProblem::new(xs)).unwrap());
            let mut planted = ints(&coeffs);
            normalize_relation(&mut planted);
            assert_eq!(rel, planted, "trial {trial}");
        }
    }

    #[test]
    fn exclusion_on_unrelated_inputs() {
        let p = Precision::new(80);
        // 1, sqrt2, pi share no small integer relation
        let xs = vec![
            MPReal::one(p),
            MPReal::from_u64(2, p).sqrt().unwrap(),
            MPReal::pi(p),
        ];
        let r = pslq_detect(&RelationProblem::new(xs).with_bound(1e6)).unwrap();
        match r {
            RelationResult::Excluded { bound } => {
                // bound string like "1.23456e7"; exponent must be >= 6
                let exp: i64 = bound.split('e').nth(1).unwrap().parse().unwrap();
                assert!(exp >= 6, "bound {bound}");
            }
            RelationResult::Found { relation, .. } => panic!("spurious relation {relation:?}"),
        }
    }

    #[test]
    fn zero_input_rejected() {
        let p = Precision::new(50);
        let xs = vec![MPReal::one(p), MPReal::zero(p)];
        assert!(matches!(
            pslq_detect(&RelationProblem::new(xs)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn result_json_round_trip() {
        let r = RelationResult::Found {
            relation: ints(&[1, -3, 9]),
            residual: "1.2e-45".into(),
        };
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"relation\":[\"1\",\"-3\",\"9\"]"), "{s}");
        let back: RelationResult = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
