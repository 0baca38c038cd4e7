//! Exact Pade reconstruction of rational functions from truncated power
//! series in u = x^2.
//!
//! Given the first T coefficients of a series and target degrees (p, q),
//! `pade_fit` solves the Toeplitz system for a denominator with den(0) = 1
//! over exact rationals, so a series that truly comes from a rational
//! function is recovered exactly, not approximately.  `pade_scan` automates
//! the degree choice: it tries every (p, q) that the data supports and
//! keeps only candidates that reproduce every supplied coefficient.

use crate::error::{Error, Result};
use crate::exact::{rat_from_string, rat_to_string, Rat, RationalFunction, RationalPoly};
use num_traits::{One, Zero};

/// A single Pade fit: the series (known modulo u^order), and the requested
/// numerator and denominator degrees.
#[derive(Clone, Debug)]
pub struct PadeRequest {
    pub series: RationalPoly,
    /// Number of known coefficients: the series is trusted mod u^order.
    pub order: usize,
    pub num_deg: usize,
    pub den_deg: usize,
}

impl PadeRequest {
    pub fn new(series: RationalPoly, order: usize, num_deg: usize, den_deg: usize) -> Self {
        PadeRequest { series, order, num_deg, den_deg }
    }
}

/// One entry of a `pade_scan`: an approximant of the requested degrees
/// together with how many leading coefficients it was checked against.
#[derive(Clone, Debug)]
pub struct PadeCandidate {
    pub num_deg: usize,
    pub den_deg: usize,
    pub approximant: RationalFunction,
    pub validated_order: usize,
}

/// Computes the exact [p/q] approximant of the request's series.
///
/// The returned function satisfies den * series = num mod u^(p+q+1) with
/// den(0) = 1 during the solve; the result is canonicalized (coprime,
/// monic denominator).  If the Toeplitz system is singular -- the Pade
/// table has a degenerate block -- the denominator degree is reduced by
/// one and the fit retried, then the numerator degree, until a function
/// matching the series through u^(p+q) is found.  If none exists the
/// system is inconsistent.
pub fn pade_fit(req: &PadeRequest) -> Result<RationalFunction> {
    let t = req.order;
    let (p0, q0) = (req.num_deg, req.den_deg);
    if p0 + q0 + 1 > t {
        return Err(Error::Domain(format!(
            "pade [{p0}/{q0}] needs {} coefficients, only {t} supplied",
            p0 + q0 + 1
        )));
    }
    if !req.series.is_zero() && req.series.degree() >= t {
        return Err(Error::Domain(format!(
            "series has degree {} but is declared known only mod u^{t}",
            req.series.degree()
        )));
    }
    let c: Vec<Rat> = (0..t).map(|k| req.series.coeff(k)).collect();

    let (mut p, mut q) = (p0, q0);
    loop {
        if let Some(f) = fit_exact(&c, p, q) {
            // a reduced fit only matches through u^(p+q) by construction;
            // it must still agree through the originally requested order
            let check = f.series(p0 + q0)?;
            if check == c[..=p0 + q0] {
                return Ok(f);
            }
        }
        if q > 0 {
            q -= 1;
        } else if p > 0 {
            p -= 1;
        } else {
            return Err(Error::InconsistentSystem);
        }
    }
}

/// Fits every (p, q) with p + q + 1 <= order and keeps the candidates
/// whose re-expansion reproduces all `order` supplied coefficients, not
/// just the p + q + 1 used by the solve.  The result is ordered by
/// (p + q, p), so the first entry is the simplest validated closed form.
pub fn pade_scan(series: &RationalPoly, order: usize) -> Vec<PadeCandidate> {
    let c: Vec<Rat> = (0..order).map(|k| series.coeff(k)).collect();
    let mut out = Vec::new();
    for total in 0..order {
        for p in 0..=total {
            let q = total - p;
            let Some(f) = fit_exact(&c, p, q) else { continue };
            let Ok(re) = f.series(order.saturating_sub(1)) else { continue };
            if re == c {
                out.push(PadeCandidate {
                    num_deg: p,
                    den_deg: q,
                    approximant: f,
                    validated_order: order,
                });
            }
        }
    }
    out
}

/// Direct [p/q] solve with den(0) = 1; `None` when the Toeplitz system is
/// singular or inconsistent.  On success the approximant agrees with the
/// series through u^(p+q) by construction.
fn fit_exact(c: &[Rat], p: usize, q: usize) -> Option<RationalFunction> {
    // rows k = p+1 .. p+q: sum_{j=0..q} b_j c_{k-j} = 0 with b_0 = 1
    let mut m = vec![vec![Rat::zero(); q + 1]; q];
    for (r, row) in m.iter_mut().enumerate() {
        let k = p + 1 + r;
        for (j, cell) in row.iter_mut().take(q).enumerate() {
            if k >= j + 1 {
                let idx = k - (j + 1);
                if idx < c.len() {
                    *cell = c[idx].clone();
                }
            }
        }
        row[q] = -c[k].clone();
    }
    let b_tail = solve_linear(m, q)?;

    let mut den = vec![Rat::one()];
    den.extend(b_tail);
    let den = RationalPoly::new(den);
    let mut num = Vec::with_capacity(p + 1);
    for k in 0..=p {
        let mut a = Rat::zero();
        for j in 0..=k.min(q) {
            a += &den.coeff(j) * &c[k - j];
        }
        num.push(a);
    }
    let num = RationalPoly::new(num);
    if num.is_zero() && c.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(RationalFunction::new(num, den))
}

/// Gaussian elimination over the rationals on an n x (n+1) augmented
/// matrix; `None` on a rank-deficient or inconsistent system.
fn solve_linear(mut m: Vec<Vec<Rat>>, n: usize) -> Option<Vec<Rat>> {
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = Rat::one() / m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in col..=n {
                m[r][j] = &m[r][j] - &(&f * &m[col][j]);
            }
        }
    }
    Some((0..n).map(|r| m[r][n].clone()).collect())
}

/// Serializes series coefficients as a JSON array of "p/q" strings,
/// lowest order first (the variable is u = x^2).
pub fn series_to_json(coeffs: &[Rat]) -> String {
    let strs: Vec<String> = coeffs.iter().map(rat_to_string).collect();
    serde_json::to_string(&strs).expect("string array serialization cannot fail")
}

/// Parses the JSON series format back into exact coefficients.
pub fn series_from_json(s: &str) -> Result<Vec<Rat>> {
    let strs: Vec<String> =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("series JSON: {e}")))?;
    strs.iter().map(|t| rat_from_string(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{product_form, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn series_of(f: &RationalFunction, order: usize) -> RationalPoly {
        RationalPoly::new(f.series(order - 1).unwrap())
    }

    #[test]
    fn geometric_series() {
        // 1 + u + u^2 + u^3 + u^4 with p=0, q=1 gives 1/(1-u)
        let series = RationalPoly::new(vec![Rat::one(); 5]);
        let f = pade_fit(&PadeRequest::new(series, 5, 0, 1)).unwrap();
        let expect = RationalFunction::new(
            RationalPoly::one(),
            RationalPoly::new(vec![Rat::one(), rat(-1, 1)]),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn p3_closed_form() {
        // 12(4u-1)/(u-4) from its own 9-term expansion at [1/1]
        let p3 = product_form(rat(12, 1), &[1], &[2]);
        let series = series_of(&p3, 9);
        assert_eq!(series.coeff(0), rat(3, 1));
        assert_eq!(series.coeff(1), rat(-45, 4));
        let f = pade_fit(&PadeRequest::new(series, 9, 1, 1)).unwrap();
        assert_eq!(f, p3);
    }

    #[test]
    fn p4_closed_form() {
        let p4 = product_form(rat(12, 1), &[1, 2], &[2, 3]);
        let series = series_of(&p4, 9);
        let f = pade_fit(&PadeRequest::new(series, 9, 2, 2)).unwrap();
        assert_eq!(f, p4);
    }

    #[test]
    fn singular_system_reduces_degrees() {
        // a constant series makes every q > 0 Toeplitz system singular;
        // the fit must fall back to the constant itself
        let series = RationalPoly::constant(rat(3, 1));
        let f = pade_fit(&PadeRequest::new(series, 8, 1, 1)).unwrap();
        assert_eq!(f, RationalFunction::constant(rat(3, 1)));
    }

    #[test]
    fn overshooting_degrees_still_recovers() {
        // requesting [3/3] on a (1,1) function lands on the same answer
        let p3 = product_form(rat(12, 1), &[1], &[2]);
        let series = series_of(&p3, 10);
        let f = pade_fit(&PadeRequest::new(series, 10, 3, 3)).unwrap();
        assert_eq!(f, p3);
    }

    #[test]
    fn inconsistent_system_rejected() {
        // u is not matched by any [0/1] candidate nor any reduction of it
        let series = RationalPoly::monomial(Rat::one(), 1);
        let err = pade_fit(&PadeRequest::new(series, 2, 0, 1)).unwrap_err();
        assert!(matches!(err, Error::InconsistentSystem));
    }

    #[test]
    fn too_few_coefficients_rejected() {
        let series = RationalPoly::new(vec![Rat::one(); 4]);
        let err = pade_fit(&PadeRequest::new(series, 4, 2, 2)).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn scan_constant_series() {
        let series = RationalPoly::constant(rat(3, 1));
        let cands = pade_scan(&series, 8);
        let first = &cands[0];
        assert_eq!((first.num_deg, first.den_deg), (0, 0));
        assert_eq!(first.approximant, RationalFunction::constant(rat(3, 1)));
        assert_eq!(first.validated_order, 8);
    }

    #[test]
    fn scan_finds_minimal_p5() {
        // P5 = 48(4u-1)(4u-9)/((u-9)(u-16)): minimal validated entry (2,2)
        let p5 = product_form(rat(48, 1), &[1, 3], &[3, 4]);
        let series = series_of(&p5, 10);
        let cands = pade_scan(&series, 10);
        let first = &cands[0];
        assert_eq!((first.num_deg, first.den_deg), (2, 2));
        assert_eq!(first.approximant, p5);
        // ordering is (p+q, p) nondecreasing
        let keys: Vec<(usize, usize)> =
            cands.iter().map(|c| (c.num_deg + c.den_deg, c.num_deg)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn random_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut rand_rat = |rng: &mut ChaCha8Rng| {
            rat(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=9))
        };
        for trial in 0..100 {
            let pd = rng.gen_range(0usize..=4);
            let qd = rng.gen_range(0usize..=4);
            let num = RationalPoly::new((0..=pd).map(|_| rand_rat(&mut rng)).collect());
            let mut den_coeffs: Vec<Rat> = (0..=qd).map(|_| rand_rat(&mut rng)).collect();
            if den_coeffs[0].is_zero() {
                den_coeffs[0] = Rat::one();
            }
            let den = RationalPoly::new(den_coeffs);
            if num.is_zero() || den.is_zero() {
                continue;
            }
            let f = RationalFunction::new(num, den);
            let series = series_of(&f, 10);
            let got =
                pade_fit(&PadeRequest::new(series, 10, 4, 4)).unwrap_or_else(|e| {
                    panic!("trial {trial}: {e}")
                });
            assert_eq!(got, f, "trial {trial}");
        }
    }

    #[test]
    fn json_round_trip() {
        let coeffs = vec![rat(3, 1), rat(-45, 4), rat(-45, 16)];
        let s = series_to_json(&coeffs);
        assert_eq!(s, r#"["3","-45/4","-45/16"]"#);
        assert_eq!(series_from_json(&s).unwrap(), coeffs);
    }
}
