//! Complex root finding for integer polynomials and the conjugate-sum
//! measures derived from the root multiset.
//!
//! Roots come from Aberth-Ehrlich simultaneous iteration in hardware floats,
//! polished by Newton at elevated software precision until a certified
//! a-posteriori radius bound drops below 1e-20.

use crate::hp::{HpComplex, HpReal};
use crate::intpoly::IntPolynomial;
use num_complex::Complex64;
use thiserror::Error;

const CERT_RADIUS: f64 = 1e-20;
const POLISH_PREC: usize = 256;

#[derive(Debug, Error)]
pub enum RootError {
    #[error("cannot find roots of a constant or zero polynomial")]
    DegenerateInput,
    #[error("root certification failed: residual radius {radius:e} exceeds {target:e}")]
    CertificationFailed { radius: f64, target: f64 },
}

/// One root with multiplicity and a certified error radius.
#[derive(Clone, Debug)]
pub struct Root {
    pub value: HpComplex,
    pub approx: Complex64,
    pub radius: f64,
    pub multiplicity: u32,
}

impl Root {
    pub fn is_real(&self) -> bool {
        self.value.im.is_zero()
    }
}

/// All complex roots of a polynomial, conjugate-paired, listed with
/// multiplicity; total count equals the degree.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub degree: usize,
}

impl RootSet {
    /// Iterates roots expanded by multiplicity (f64 view).
    pub fn iter_with_multiplicity(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat(r.approx).take(r.multiplicity as usize))
    }

    /// Largest |p(root)| over the set, evaluated at elevated precision.
    pub fn max_residual(&self, p: &IntPolynomial) -> f64 {
        self.roots
            .iter()
            .map(|r| p.eval_hp_complex(&r.value).abs().to_f64())
            .fold(0.0, f64::max)
    }
}

/// Degree, trace and the conjugate-sum measures of one polynomial.
#[derive(Clone, Debug)]
pub struct MeasureReport {
    pub degree: usize,
    pub trace: f64,
    pub abs_trace: f64,
    pub r_measure: f64,
    pub abs_r: f64,
    pub mahler: f64,
    pub totally_positive: bool,
    pub sector_half_angle: f64,
    pub monic: bool,
    pub zero_root: bool,
}

/// Memoized `all_roots`; the tables evaluate the same polynomials at many
/// sector angles.
pub fn all_roots_cached(p: &IntPolynomial) -> Result<std::sync::Arc<RootSet>, RootError> {
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<IntPolynomial, Arc<RootSet>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(p) {
        return Ok(hit.clone());
    }
    let set = Arc::new(all_roots(p)?);
    cache.lock().unwrap().insert(p.clone(), set.clone());
    Ok(set)
}

/// Computes all complex roots with certified radii below 1e-20.
pub fn all_roots(p: &IntPolynomial) -> Result<RootSet, RootError> {
    if p.is_zero() || p.degree() == 0 {
        return Err(RootError::DegenerateInput);
    }
    let degree = p.degree();
    let mut roots: Vec<Root> = Vec::new();
    // explicit zero roots: trailing zero coefficients
    let zero_mult = p
        .coeffs()
        .iter()
        .take_while(|c| num_traits::Zero::is_zero(*c))
        .count();
    let reduced = if zero_mult > 0 {
        IntPolynomial::new(p.coeffs()[zero_mult..].to_vec())
    } else {
        p.clone()
    };
    if zero_mult > 0 {
        roots.push(Root {
            value: HpComplex::zero(POLISH_PREC),
            approx: Complex64::new(0.0, 0.0),
            radius: 0.0,
            multiplicity: zero_mult as u32,
        });
    }
    if !reduced.is_zero() && reduced.degree() >= 1 {
        for (sf, mult) in reduced.squarefree_decomposition() {
            if sf.degree() == 0 {
                continue;
            }
            for root in squarefree_roots(&sf)? {
                roots.push(Root {
                    multiplicity: mult,
                    ..root
                });
            }
        }
    }
    roots.sort_by(|a, b| {
        let ka = (a.approx.re, a.approx.im);
        let kb = (b.approx.re, b.approx.im);
        ka.partial_cmp(&kb).unwrap()
    });
    let count: usize = roots.iter().map(|r| r.multiplicity as usize).sum();
    debug_assert_eq!(count, degree);
    Ok(RootSet { roots, degree })
}

fn squarefree_roots(p: &IntPolynomial) -> Result<Vec<Root>, RootError> {
    let n = p.degree();
    if n == 1 {
        let prec = POLISH_PREC;
        let c0 = HpReal::from_bigint(&p.coeff(0), prec);
        let c1 = HpReal::from_bigint(&p.coeff(1), prec);
        let re = c0.div(&c1).neg();
        let approx = Complex64::new(re.to_f64(), 0.0);
        return Ok(vec![Root {
            value: HpComplex::new(re, HpReal::zero(prec)),
            approx,
            radius: 0.0,
            multiplicity: 1,
        }]);
    }
    let approx = aberth(p);
    let mut out = Vec::with_capacity(n);
    for z in conjugate_pair(approx) {
        if z.im < 0.0 {
            continue; // conjugate emitted with its upper-half partner
        }
        let root = polish(p, z, POLISH_PREC)
            .filter(|r| r.radius < CERT_RADIUS)
            .or_else(|| polish(p, z, 2 * POLISH_PREC).filter(|r| r.radius < CERT_RADIUS))
            .or_else(|| {
                // rare rescue for a wrongly axis-snapped near-real pair
                let nudged = Complex64::new(z.re, z.im + 1e-5);
                polish(p, nudged, 2 * POLISH_PREC).filter(|r| r.radius < CERT_RADIUS)
            });
        match root {
            Some(r) => {
                if !r.value.im.is_zero() {
                    let conj = Root {
                        value: r.value.conj(),
                        approx: r.approx.conj(),
                        radius: r.radius,
                        multiplicity: 1,
                    };
                    out.push(r);
                    out.push(conj);
                } else {
                    out.push(r);
                }
            }
            None => {
                let r = polish(p, z, 2 * POLISH_PREC);
                return Err(RootError::CertificationFailed {
                    radius: r.map(|r| r.radius).unwrap_or(f64::INFINITY),
                    target: CERT_RADIUS,
                });
            }
        }
    }
    // the rescue path can land two starts on one root; keep distinct values
    out.sort_by(|a, b| {
        (a.approx.re, a.approx.im)
            .partial_cmp(&(b.approx.re, b.approx.im))
            .unwrap()
    });
    out.dedup_by(|a, b| (a.approx - b.approx).norm() < 1e-12 * a.approx.norm().max(1.0));
    if out.len() != n {
        return Err(RootError::CertificationFailed {
            radius: f64::INFINITY,
            target: CERT_RADIUS,
        });
    }
    Ok(out)
}

/// Aberth-Ehrlich simultaneous iteration in f64, started on a Cauchy-bound
/// circle.
fn aberth(p: &IntPolynomial) -> Vec<Complex64> {
    let n = p.degree();
    let coeffs: Vec<f64> = p.coeffs().iter().map(crate::intpoly::bigint_to_f64).collect();
    let lead = coeffs[n];
    let cauchy = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max);
    let radius = cauchy.min(1e6);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * j as f64 / n as f64 + 0.41;
            Complex64::from_polar(radius * (0.4 + 0.6 * ((j % 3) as f64 + 1.0) / 3.0), angle)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    };
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        let snapshot = z.clone();
        for j in 0..n {
            let (v, d) = eval(z[j]);
            if v.norm() == 0.0 {
                continue;
            }
            let w = if d.norm() > 0.0 { v / d } else { v };
            let mut s = Complex64::new(0.0, 0.0);
            for (k, zk) in snapshot.iter().enumerate() {
                if k != j {
                    let diff = z[j] - zk;
                    if diff.norm() > 1e-300 {
                        s += Complex64::new(1.0, 0.0) / diff;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() > 1e-300 { w / denom } else { w };
            z[j] -= step;
            max_step = max_step.max(step.norm() / z[j].norm().max(1.0));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

/// Forces non-real approximations into exact conjugate pairs.
fn conjugate_pair(mut z: Vec<Complex64>) -> Vec<Complex64> {
    let im_tol = 1e-8;
    for v in z.iter_mut() {
        if v.im.abs() < im_tol * v.norm().max(1.0) {
            v.im = 0.0;
        }
    }
    let mut out: Vec<Complex64> = Vec::with_capacity(z.len());
    let mut used = vec![false; z.len()];
    for i in 0..z.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        if z[i].im == 0.0 {
            out.push(z[i]);
            continue;
        }
        // find the nearest unused conjugate partner
        let target = z[i].conj();
        let mut best = None;
        let mut best_d = f64::INFINITY;
        for (j, zj) in z.iter().enumerate() {
            if !used[j] && zj.im * z[i].im < 0.0 {
                let d = (zj - target).norm();
                if d < best_d {
                    best_d = d;
                    best = Some(j);
                }
            }
        }
        if let Some(j) = best {
            used[j] = true;
            let hi = if z[i].im > 0.0 { z[i] } else { z[i].conj() };
            out.push(hi);
            out.push(hi.conj());
        } else {
            out.push(z[i]);
        }
    }
    out
}

/// Newton polish at software precision; returns the certified root or None
/// when the residual bound does not shrink.
fn polish(p: &IntPolynomial, start: Complex64, prec: usize) -> Option<Root> {
    let n = p.degree() as f64;
    let deriv = p.derivative();
    let mut z = HpComplex::from_f64(start.re, start.im, prec);
    let real_poly = start.im == 0.0;
    for _ in 0..40 {
        let v = p.eval_hp_complex(&z);
        let d = deriv.eval_hp_complex(&z);
        if d.norm_sqr().is_zero() {
            return None;
        }
        let step = v.div(&d);
        z = z.sub(&step);
        if real_poly {
            z.im = HpReal::zero(prec);
        }
        let step_mag = step.abs().to_f64();
        let z_mag = z.abs().to_f64().max(1.0);
        if step_mag < z_mag * 1e-65 {
            break;
        }
    }
    // snap nearly-real roots exactly onto the axis and re-polish
    if !real_poly {
        let im_mag = z.im.abs().to_f64();
        let z_mag = z.abs().to_f64().max(1.0);
        if im_mag < z_mag * 1e-40 {
            z.im = HpReal::zero(prec);
            for _ in 0..3 {
                let v = p.eval_hp_complex(&z);
                let d = deriv.eval_hp_complex(&z);
                if d.norm_sqr().is_zero() {
                    break;
                }
                z = z.sub(&v.div(&d));
                z.im = HpReal::zero(prec);
            }
        }
    }
    let v = p.eval_hp_complex(&z);
    let d = deriv.eval_hp_complex(&z);
    let dmag = d.abs().to_f64();
    if dmag == 0.0 {
        return None;
    }
    let radius = n * v.abs().to_f64() / dmag;
    Some(Root {
        approx: z.to_c64(),
        value: z,
        radius,
        multiplicity: 1,
    })
}

/// Computes the measure report (trace, conjugate-sum measure, Mahler
/// measure, sector half-angle) from the certified roots.
pub fn measure(p: &IntPolynomial) -> Result<MeasureReport, RootError> {
    let set = all_roots(p)?;
    let degree = set.degree;
    let mut trace = 0.0;
    let mut r_measure = 0.0;
    let mut mahler = 1.0;
    let mut totally_positive = true;
    let mut half_angle = 0.0f64;
    let mut zero_root = false;
    const CIRCLE_BAND: f64 = 1e-15;
    for z in set.iter_with_multiplicity() {
        trace += z.re;
        let m = z.norm();
        if m > 1.0 + CIRCLE_BAND {
            r_measure += m;
        }
        if m > 1.0 - CIRCLE_BAND {
            mahler *= m.max(1.0);
        }
        if z.im != 0.0 || z.re <= 0.0 {
            totally_positive = false;
        }
        if m == 0.0 {
            zero_root = true;
        } else {
            half_angle = half_angle.max(z.im.atan2(z.re).abs().to_degrees());
        }
    }
    Ok(MeasureReport {
        degree,
        trace,
        abs_trace: trace / degree as f64,
        r_measure,
        abs_r: r_measure / degree as f64,
        mahler,
        totally_positive,
        sector_half_angle: half_angle,
        monic: p.is_monic(),
        zero_root,
    })
}

/// True iff every root lies in the closed sector |arg z| <= theta degrees
/// (angular tolerance 1e-9 degrees).
pub fn in_sector(p: &IntPolynomial, theta_degrees: f64) -> Result<bool, RootError> {
    assert!((0.0..90.0).contains(&theta_degrees), "theta out of [0, 90)");
    let report = measure(p)?;
    Ok(!report.zero_root && report.sector_half_angle <= theta_degrees + 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::parse;

    fn p(s: &str) -> IntPolynomial {
        parse(s).unwrap()
    }

    #[test]
    fn golden_ratio_quadratic() {
        let set = all_roots(&p("x^2-3x+1")).unwrap();
        let mut vals: Vec<f64> = set.iter_with_multiplicity().map(|z| z.re).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s5 = 5f64.sqrt();
        assert!((vals[0] - (3.0 - s5) / 2.0).abs() < 1e-14);
        assert!((vals[1] - (3.0 + s5) / 2.0).abs() < 1e-14);
        assert!(set.max_residual(&p("x^2-3x+1")) < 1e-20);
    }

    #[test]
    fn pure_imaginary_pair() {
        let set = all_roots(&p("x^2+1")).unwrap();
        let zs: Vec<Complex64> = set.iter_with_multiplicity().collect();
        assert_eq!(zs.len(), 2);
        assert!(zs.iter().any(|z| (z.im - 1.0).abs() < 1e-15 && z.re == 0.0));
        assert!(zs.iter().any(|z| (z.im + 1.0).abs() < 1e-15));
    }

    #[test]
    fn cubic_with_conjugate_pair() {
        // one real root near 1.7549 (bisection oracle below) plus a pair
        let q = p("x^3-2x^2+x-1");
        let set = all_roots(&q).unwrap();
        let mut lo = 1.0;
        let mut hi = 2.0;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if q.eval_f64(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let real_root = set
            .iter_with_multiplicity()
            .find(|z| z.im == 0.0)
            .expect("real root");
        assert!((real_root.re - lo).abs() < 1e-12);
        let pair: Vec<Complex64> = set.iter_with_multiplicity().filter(|z| z.im != 0.0).collect();
        assert_eq!(pair.len(), 2);
        assert_eq!(pair[0].re, pair[1].re);
        assert_eq!(pair[0].im, -pair[1].im);
    }

    #[test]
    fn measures_of_remark_polynomials() {
        assert!(measure(&p("x-1")).unwrap().abs_r.abs() < 1e-12);
        let m = measure(&p("x^2-3x+1")).unwrap();
        assert!((m.abs_r - 1.3090).abs() < 5e-5);
        assert!(m.totally_positive);
        let m = measure(&p("x^3-5x^2+6x-1")).unwrap();
        assert!((m.abs_r - 1.6006).abs() < 5e-5);
        // printed values are truncated, not rounded, so allow 1e-4
        let m = measure(&p("x^6-11x^5+43x^4-73x^3+53x^2-15x+1")).unwrap();
        assert!((m.abs_r - 1.6130).abs() < 1e-4);
    }

    #[test]
    fn cyclotomic_r_is_zero() {
        for s in ["x-1", "x+1", "x^2+x+1", "x^2+1"] {
            let m = measure(&p(s)).unwrap();
            assert!(m.abs_r.abs() < 1e-12, "{} has r = {}", s, m.abs_r);
            assert!((m.mahler - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_matches_coefficient() {
        for s in [
            "x^6-11x^5+43x^4-73x^3+53x^2-15x+1",
            "x^8-12x^7+57x^6-138x^5+183x^4-138x^3+57x^2-12x+1",
        ] {
            let q = p(s);
            let m = measure(&q).unwrap();
            let expect = -crate::intpoly::bigint_to_f64(&q.coeff(q.degree() - 1));
            assert!((m.trace - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn mahler_reciprocal_invariance() {
        let q = p("x^8-12x^7+57x^6-138x^5+183x^4-138x^3+57x^2-12x+1");
        let m1 = measure(&q).unwrap().mahler;
        let m2 = measure(&q.reciprocal()).unwrap().mahler;
        assert!((m1 - m2).abs() < 1e-10 * m1);
    }

    #[test]
    fn sector_membership() {
        assert!(in_sector(&p("x^2-3x+1"), 0.0).unwrap());
        assert!(!in_sector(&p("x^2+1"), 89.0).unwrap());
        assert!(in_sector(&p("x^3-3x^2+2x-1"), 59.016).unwrap());
        assert!(!in_sector(&p("x^3-3x^2+2x-1"), 58.9).unwrap());
    }

    #[test]
    fn multiplicities_counted() {
        let q = p("x^2-3x+1").mul(&p("x-1")).mul(&p("x-1"));
        let set = all_roots(&q).unwrap();
        assert_eq!(set.degree, 4);
        assert_eq!(set.iter_with_multiplicity().count(), 4);
        assert!(set.roots.iter().any(|r| r.multiplicity == 2));
    }
}
