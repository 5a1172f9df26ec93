//! Coefficient optimization: the inner finite linear program (dense primal
//! simplex with Bland's anti-cycling rule) and the outer semi-infinite loop
//! that alternates full-domain minimization with control-point enrichment,
//! producing bracketing sequences m'_i <= m <= m_i.

use crate::auxfun::{AuxFunction, AuxTerm, MinResult, WeightKind, DEFAULT_EPS};
use crate::intpoly::IntPolynomial;
use num_complex::Complex64;
use thiserror::Error;

const MERGE_TOL: f64 = 1e-12;
const FEAS_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum LpError {
    #[error("control set is empty")]
    NoPoints,
    #[error("no polynomials to optimize")]
    NoPolys,
    #[error("control point {0} is a root of a constraint polynomial")]
    PointOnRoot(f64),
    #[error(transparent)]
    Aux(#[from] crate::auxfun::AuxError),
}

/// Sorted set of distinct control points (merge tolerance 1e-12).
#[derive(Clone, Debug, Default)]
pub struct ControlSet {
    points: Vec<f64>,
}

impl ControlSet {
    pub fn new() -> Self {
        ControlSet { points: Vec::new() }
    }

    pub fn from_points(pts: impl IntoIterator<Item = f64>) -> Self {
        let mut s = Self::new();
        for p in pts {
            s.insert(p);
        }
        s
    }

    /// Uniform grid of `n` points on (0, cap] plus `extra` geometrically
    /// spaced points in (0, 0.1] for the x -> 0 behavior.
    pub fn seed_grid(cap: f64, n: usize, extra: usize) -> Self {
        let mut s = Self::new();
        for i in 1..=n {
            s.insert(cap * i as f64 / n as f64);
        }
        let mut x = 0.1;
        for _ in 0..extra {
            s.insert(x);
            x *= 0.82;
        }
        s
    }

    pub fn insert(&mut self, x: f64) -> bool {
        if !x.is_finite() || x <= 0.0 {
            return false;
        }
        let idx = self.points.partition_point(|&p| p < x);
        let near = |i: usize| {
            self.points
                .get(i)
                .map_or(false, |&p| (p - x).abs() <= MERGE_TOL)
        };
        if near(idx) || (idx > 0 && near(idx - 1)) {
            return false;
        }
        self.points.insert(idx, x);
        true
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Optimized coefficient vector with the LP optimum over the control set.
#[derive(Clone, Debug)]
pub struct LPResult {
    pub coeffs: Vec<f64>,
    pub m_inner: f64,
    pub status: LpStatus,
}

#[derive(Clone, Copy, Debug)]
pub struct SipIteration {
    pub m_lower: f64,
    pub m_upper: f64,
    pub point_count: usize,
}

/// Audit trace of the bracketing sequences.
#[derive(Clone, Debug, Default)]
pub struct SIPTrace {
    pub iterations: Vec<SipIteration>,
    pub converged: bool,
}

impl SIPTrace {
    /// Tab-separated `iter  m_lower  m_upper  points` lines.
    pub fn render_tsv(&self) -> String {
        let mut out = String::from("iter\tm_lower\tm_upper\tpoints\n");
        for (i, it) in self.iterations.iter().enumerate() {
            out.push_str(&format!(
                "{}\t{:.9}\t{:.9}\t{}\n",
                i, it.m_lower, it.m_upper, it.point_count
            ));
        }
        out
    }
}

/// Outcome of a semi-infinite optimization run.
#[derive(Clone, Debug)]
pub struct SipOutcome {
    pub lp: LPResult,
    pub trace: SIPTrace,
    /// Certified bound: the best full-domain minimum reached (final m').
    pub bound: f64,
    /// The auxiliary function realizing `bound`.
    pub aux: AuxFunction,
}

pub(crate) fn log_abs_at(poly: &IntPolynomial, x: f64, weight: &WeightKind) -> f64 {
    match weight {
        WeightKind::PositiveReal => poly.eval_f64(x).abs().ln(),
        WeightKind::SectorRay { theta_degrees } => {
            let z = Complex64::from_polar(x, theta_degrees.to_radians());
            0.5 * poly.eval_c64(z).norm_sqr().ln()
        }
    }
}

/// Solves `max m` subject to `weight(x_i) - sum_j c_j log|Q_j(x_i)| >= m`
/// for every control point, `c_j >= 0` (the weight coefficient is fixed
/// at 1). Primal simplex with Bland's rule.
pub fn solve_lp(
    points: &ControlSet,
    polys: &[IntPolynomial],
    weight: &WeightKind,
) -> Result<LPResult, LpError> {
    if points.is_empty() {
        return Err(LpError::NoPoints);
    }
    if polys.is_empty() {
        return Err(LpError::NoPolys);
    }
    let n_c = polys.len();
    let mut rows = Vec::with_capacity(points.len());
    for &x in points.points() {
        let logs: Vec<f64> = polys.iter().map(|q| log_abs_at(q, x, weight)).collect();
        if logs.iter().any(|v| !v.is_finite()) {
            return Err(LpError::PointOnRoot(x));
        }
        rows.push((weight.weight(x), logs));
    }
    // variables: [m+, m-, c_1..c_J]; constraint i: m+ - m- - sum a_ij c_j <= w_i
    let nvars = 2 + n_c;
    let a: Vec<Vec<f64>> = rows
        .iter()
        .map(|(_, logs)| {
            let mut row = Vec::with_capacity(nvars);
            row.push(1.0);
            row.push(-1.0);
            row.extend(logs.iter().copied());
            row
        })
        .collect();
    let b: Vec<f64> = rows.iter().map(|&(w, _)| w).collect();
    let mut obj = vec![0.0; nvars];
    obj[0] = 1.0;
    obj[1] = -1.0;
    match simplex_max(&a, &b, &obj) {
        SimplexOutcome::Optimal(x) => {
            let m = x[0] - x[1];
            let coeffs: Vec<f64> = x[2..].iter().map(|&c| c.max(0.0)).collect();
            Ok(LPResult {
                coeffs,
                m_inner: m,
                status: LpStatus::Optimal,
            })
        }
        SimplexOutcome::Unbounded => Ok(LPResult {
            coeffs: vec![0.0; n_c],
            m_inner: f64::INFINITY,
            status: LpStatus::Unbounded,
        }),
    }
}

enum SimplexOutcome {
    Optimal(Vec<f64>),
    Unbounded,
}

/// Dense-tableau primal simplex for `max obj . x`, `A x <= b`, `x >= 0`,
/// `b >= 0` (slack basis feasible). Bland's rule throughout.
fn simplex_max(a: &[Vec<f64>], b: &[f64], obj: &[f64]) -> SimplexOutcome {
    let m = a.len();
    let n = obj.len();
    let cols = n + m;
    // tableau rows: [A | I | b]; cost row holds -obj so optimal when all >= 0
    let mut t = vec![vec![0.0f64; cols + 1]; m + 1];
    for i in 0..m {
        t[i][..n].copy_from_slice(&a[i]);
        t[i][n + i] = 1.0;
        t[i][cols] = b[i];
    }
    for j in 0..n {
        t[m][j] = -obj[j];
    }
    let mut basis: Vec<usize> = (n..cols).collect();
    for _pivot in 0..200_000 {
        // Bland: entering = lowest index with negative cost
        let Some(enter) = (0..cols).find(|&j| t[m][j] < -FEAS_TOL) else {
            let mut x = vec![0.0; n];
            for i in 0..m {
                if basis[i] < n {
                    x[basis[i]] = t[i][cols];
                }
            }
            return SimplexOutcome::Optimal(x);
        };
        let mut leave: Option<usize> = None;
        let mut best_ratio = f64::INFINITY;
        for i in 0..m {
            if t[i][enter] > FEAS_TOL {
                let ratio = t[i][cols] / t[i][enter];
                if ratio < best_ratio - 1e-15
                    || (ratio < best_ratio + 1e-15
                        && leave.map_or(true, |l| basis[i] < basis[l]))
                {
                    best_ratio = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            return SimplexOutcome::Unbounded;
        };
        // pivot
        let piv = t[leave][enter];
        for v in t[leave].iter_mut() {
            *v /= piv;
        }
        for i in 0..=m {
            if i != leave && t[i][enter].abs() > 0.0 {
                let factor = t[i][enter];
                let (src, dst) = if i < leave {
                    let (lo, hi) = t.split_at_mut(leave);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = t.split_at_mut(i);
                    (&lo[leave], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= factor * s;
                }
            }
        }
        basis[leave] = enter;
    }
    // iteration cap: report current point as optimal-so-far
    let mut x = vec![0.0; n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i][cols];
        }
    }
    SimplexOutcome::Optimal(x)
}

fn aux_from(weight: &WeightKind, polys: &[IntPolynomial], coeffs: &[f64]) -> AuxFunction {
    let terms: Vec<AuxTerm> = polys
        .iter()
        .zip(coeffs)
        .filter(|&(_, &c)| c > 0.0)
        .map(|(p, &c)| AuxTerm {
            coeff: c,
            poly: p.clone(),
        })
        .collect();
    AuxFunction {
        weight: *weight,
        terms,
    }
}

fn full_domain_min(
    weight: &WeightKind,
    polys: &[IntPolynomial],
    coeffs: &[f64],
) -> Result<MinResult, LpError> {
    let aux = aux_from(weight, polys, coeffs);
    if aux.terms.is_empty() {
        // pure weight: minimum 0 on (0, 1]
        return Ok(MinResult {
            m: 0.0,
            minima: vec![(1.0, 0.0)],
            domain_cap: 50.0,
        });
    }
    Ok(aux.global_min(DEFAULT_EPS, None)?)
}

/// The semi-infinite loop: start from small positive coefficients, compute
/// the full-domain minimum, enrich the control set with every local minimum
/// found, re-solve the finite LP, and repeat until the bracket closes.
pub fn semi_infinite_optimize(
    polys: &[IntPolynomial],
    weight: &WeightKind,
    seed_points: Option<ControlSet>,
    gap_tol: f64,
) -> Result<SipOutcome, LpError> {
    if polys.is_empty() {
        return Err(LpError::NoPolys);
    }
    let cap = {
        let t: f64 = polys
            .iter()
            .filter(|p| p.degree() >= 1)
            .map(|p| 1e-3 * p.degree() as f64)
            .sum();
        (2.0 * t).max(50.0)
    };
    let mut points =
        seed_points.unwrap_or_else(|| ControlSet::seed_grid(cap, 500, 50));
    // drop seed points sitting on a polynomial root
    let clean: Vec<f64> = points
        .points()
        .iter()
        .copied()
        .filter(|&x| {
            polys
                .iter()
                .all(|q| log_abs_at(q, x, weight).is_finite())
        })
        .collect();
    points = ControlSet::from_points(clean);

    // harvest the minima of the small-coefficient start into the point set
    let start = vec![1e-3; polys.len()];
    if let Ok(res) = full_domain_min(weight, polys, &start) {
        for &(x, _) in &res.minima {
            points.insert(x);
        }
    }
    let mut trace = SIPTrace::default();
    let mut best_bound = f64::NEG_INFINITY;
    let mut best_coeffs = start.clone();
    let mut last_lp = LPResult {
        coeffs: start,
        m_inner: f64::INFINITY,
        status: LpStatus::Optimal,
    };
    let mut stall = 0usize;
    let mut last_gap = f64::INFINITY;
    for _iter in 0..200 {
        last_lp = solve_lp(&points, polys, weight)?;
        if last_lp.status != LpStatus::Optimal {
            break;
        }
        let coeffs = last_lp.coeffs.clone();
        let min_res = full_domain_min(weight, polys, &coeffs)?;
        let m_lower = min_res.m;
        let m_upper = last_lp.m_inner;
        trace.iterations.push(SipIteration {
            m_lower,
            m_upper,
            point_count: points.len(),
        });
        if m_lower > best_bound {
            best_bound = m_lower;
            best_coeffs = coeffs.clone();
        }
        for &(x, _) in &min_res.minima {
            points.insert(x);
        }
        let gap = m_upper - m_lower;
        if gap <= gap_tol {
            trace.converged = true;
            break;
        }
        if last_gap - gap < 1e-12 {
            stall += 1;
            if stall >= 5 {
                break;
            }
        } else {
            stall = 0;
        }
        last_gap = gap;
    }
    let aux = aux_from(weight, polys, &best_coeffs);
    Ok(SipOutcome {
        lp: last_lp,
        trace,
        bound: best_bound,
        aux,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::parse;

    fn p(s: &str) -> IntPolynomial {
        parse(s).unwrap()
    }

    #[test]
    fn two_point_lp_by_hand() {
        // points {0.5, 2}, poly {x}: max m s.t. m <= -c log 0.5, m <= 2 - c log 2.
        // binding both: c log 2 = 2 - c log 2, c = 1/log 2, m = 1.
        let pts = ControlSet::from_points([0.5, 2.0]);
        let r = solve_lp(&pts, &[p("x")], &WeightKind::PositiveReal).unwrap();
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.m_inner - 1.0).abs() < 1e-8, "m = {}", r.m_inner);
        assert!((r.coeffs[0] - 1.0 / 2f64.ln()).abs() < 1e-8);
    }

    #[test]
    fn single_point_keeps_c_zero() {
        // at x=2: m <= 2 - c log 2, log 2 > 0 so c = 0 is optimal, m = 2
        let pts = ControlSet::from_points([2.0]);
        let r = solve_lp(&pts, &[p("x")], &WeightKind::PositiveReal).unwrap();
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.m_inner - 2.0).abs() < 1e-9);
        assert!(r.coeffs[0].abs() < 1e-9);
    }

    #[test]
    fn unbounded_detection() {
        // single point x = 0.5: log|x| < 0 so raising c raises f without limit
        let pts = ControlSet::from_points([0.5]);
        let r = solve_lp(&pts, &[p("x")], &WeightKind::PositiveReal).unwrap();
        assert_eq!(r.status, LpStatus::Unbounded);
    }

    #[test]
    fn rejects_point_on_root() {
        let pts = ControlSet::from_points([1.0, 2.0]);
        assert!(matches!(
            solve_lp(&pts, &[p("x-1")], &WeightKind::PositiveReal),
            Err(LpError::PointOnRoot(_))
        ));
    }

    #[test]
    fn control_set_merging() {
        let mut s = ControlSet::new();
        assert!(s.insert(1.0));
        assert!(!s.insert(1.0 + 1e-13));
        assert!(s.insert(2.0));
        assert!(!s.insert(-1.0));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn seed_pair_converges() {
        let out = semi_infinite_optimize(
            &[p("x"), p("x-1")],
            &WeightKind::PositiveReal,
            None,
            1e-6,
        )
        .unwrap();
        assert!(out.trace.converged, "trace: {:?}", out.trace.iterations.len());
        assert!(out.bound > 0.0, "bound = {}", out.bound);
        // bracketing chain holds as logged
        for w in out.trace.iterations.windows(2) {
            assert!(w[0].m_lower <= w[1].m_lower + 1e-9);
            assert!(w[1].m_upper <= w[0].m_upper + 1e-9);
        }
        for it in &out.trace.iterations {
            assert!(it.m_lower <= it.m_upper + 1e-9);
        }
    }

    #[test]
    fn degenerate_single_poly() {
        let out =
            semi_infinite_optimize(&[p("x")], &WeightKind::PositiveReal, None, 1e-6).unwrap();
        // optimum keeps c at 0: the weight alone has minimum 0
        assert!(out.bound.abs() < 1e-6, "bound = {}", out.bound);
        assert!(out.trace.iterations.len() <= 3);
    }
}
