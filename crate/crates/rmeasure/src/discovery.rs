//! Recursive discovery of auxiliary polynomials.
//!
//! Starting from a small seed set, each step builds the discovery lattice
//! from the current optimized function, extracts a short-vector candidate,
//! splits it into irreducible factors, re-optimizes with the enlarged set,
//! prunes coefficients that the optimizer zeroes out, and keeps the step
//! only when the certified bound does not decrease.

use crate::auxfun::WeightKind;
use crate::intpoly::{factor, IntPolynomial};
use crate::lattice::{find_candidate, FormSpec};
use crate::siplp::{semi_infinite_optimize, LpError, SipOutcome};
use thiserror::Error;

const PRUNE_TOL: f64 = 1e-9;
pub const DEFAULT_K_SCHEDULE: &[usize] = &[5, 10, 15];

#[derive(Debug, Error)]
pub enum DiscoveryError {
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
}

/// Current polynomial set with its optimized coefficients and bound.
#[derive(Clone, Debug)]
pub struct DiscoveryState {
    pub weight: WeightKind,
    pub polys: Vec<IntPolynomial>,
    pub coeffs: Vec<f64>,
    pub m_lower: f64,
    /// Abscissae of the touching minima of the current optimum.
    pub minima: Vec<f64>,
    /// One audit line per completed step.
    pub log: Vec<String>,
}

fn optimize(
    weight: &WeightKind,
    polys: &[IntPolynomial],
) -> Result<SipOutcome, DiscoveryError> {
    Ok(semi_infinite_optimize(polys, weight, None, 1e-6)?)
}

fn minima_of(out: &SipOutcome) -> Vec<f64> {
    match out.aux.global_min(crate::auxfun::DEFAULT_EPS, None) {
        Ok(res) => res.minima.iter().map(|&(x, _)| x).collect(),
        Err(_) => Vec::new(),
    }
}

/// Seed polynomials: `{x, x - 1}` on the positive half-line, `{x}` on a
/// sector ray; runs one optimization to initialize the state.
pub fn seed_state(weight: WeightKind) -> Result<DiscoveryState, DiscoveryError> {
    let polys = match weight {
        WeightKind::PositiveReal => vec![
            IntPolynomial::from_i64(&[0, 1]),
            IntPolynomial::from_i64(&[-1, 1]),
        ],
        WeightKind::SectorRay { .. } => vec![IntPolynomial::from_i64(&[0, 1])],
    };
    let out = optimize(&weight, &polys)?;
    let minima = minima_of(&out);
    Ok(DiscoveryState {
        weight,
        polys,
        coeffs: out
            .aux
            .terms
            .iter()
            .map(|t| t.coeff)
            .collect(),
        m_lower: out.bound,
        minima,
        log: Vec::new(),
    })
}

fn coeffs_for(out: &SipOutcome, polys: &[IntPolynomial]) -> Vec<f64> {
    polys
        .iter()
        .map(|p| {
            out.aux
                .terms
                .iter()
                .find(|t| &t.poly == p)
                .map_or(0.0, |t| t.coeff)
        })
        .collect()
}

/// One discovery step at candidate degree `k`. Returns true when the step
/// improved (or preserved) the bound and was accepted.
pub fn recursive_step(state: &mut DiscoveryState, k: usize) -> Result<bool, DiscoveryError> {
    let step_no = state.log.len();
    let mut q = IntPolynomial::one();
    let mut t = 0.0;
    let mut r = 0.0;
    for (p, &c) in state.polys.iter().zip(&state.coeffs) {
        q = q.mul(p);
        let d = p.degree() as f64;
        t += c.max(PRUNE_TOL) * d;
        r += d;
    }
    let mut points: Vec<f64> = state.minima.clone();
    if points.is_empty() {
        points = vec![0.5, 1.5, 2.5];
    }
    // Far-out points underflow the scaled forms once r grows: keep only
    // points whose weighted |Q| survives the fixed-point scale.
    points.retain(|&x| {
        let w = state.weight.weight(x);
        let log_scaled = crate::siplp::log_abs_at(&q, x, &state.weight) - w * (r + k as f64) / t;
        log_scaled > -25.0
    });
    if points.is_empty() {
        state.log.push(format!(
            "step {} k={} m_lower={:.7} + - (all control points underflow)",
            step_no, k, state.m_lower
        ));
        return Ok(false);
    }
    let spec = FormSpec {
        q,
        t,
        r,
        k,
        points,
        weight: state.weight,
    };
    let candidate = find_candidate(&spec)?;
    let mut added: Vec<IntPolynomial> = Vec::new();
    for (f, _) in factor(&candidate).factors {
        if f.degree() == 0 || state.polys.contains(&f) || added.contains(&f) {
            continue;
        }
        added.push(f);
    }
    if added.is_empty() {
        state.log.push(format!(
            "step {} k={} m_lower={:.7} + -",
            step_no, k, state.m_lower
        ));
        return Ok(false);
    }
    let mut trial: Vec<IntPolynomial> = state.polys.clone();
    trial.extend(added.iter().cloned());
    let out = optimize(&state.weight, &trial)?;
    if out.bound < state.m_lower {
        // rejected: keep the old function but still enrich the point set
        for x in minima_of(&out) {
            if !state.minima.iter().any(|&m| (m - x).abs() < 1e-12) {
                state.minima.push(x);
            }
        }
        let names: Vec<String> = added.iter().map(|p| p.to_string()).collect();
        state.log.push(format!(
            "step {} k={} m_lower={:.7} rejected +{} -",
            step_no,
            k,
            state.m_lower,
            names.join(",")
        ));
        return Ok(false);
    }
    let coeffs = coeffs_for(&out, &trial);
    let mut kept: Vec<IntPolynomial> = Vec::new();
    let mut kept_coeffs: Vec<f64> = Vec::new();
    let mut removed: Vec<String> = Vec::new();
    for (p, &c) in trial.iter().zip(&coeffs) {
        if c <= PRUNE_TOL {
            removed.push(p.to_string());
        } else {
            kept.push(p.clone());
            kept_coeffs.push(c);
        }
    }
    let added_names: Vec<String> = added
        .iter()
        .filter(|p| kept.contains(p))
        .map(|p| p.to_string())
        .collect();
    state.minima = minima_of(&out);
    state.polys = kept;
    state.coeffs = kept_coeffs;
    state.m_lower = out.bound;
    state.log.push(format!(
        "step {} k={} m_lower={:.7} +{} -{}",
        step_no,
        k,
        state.m_lower,
        if added_names.is_empty() {
            String::new()
        } else {
            added_names.join(",")
        },
        removed.join(",")
    ));
    Ok(true)
}

/// Runs `steps` discovery steps, cycling through the degree schedule.
pub fn run(
    weight: WeightKind,
    steps: usize,
    k_schedule: &[usize],
) -> Result<DiscoveryState, DiscoveryError> {
    assert!(steps >= 1 && !k_schedule.is_empty());
    let mut state = seed_state(weight)?;
    for i in 0..steps {
        let k = k_schedule[i % k_schedule.len()];
        recursive_step(&mut state, k)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_half_line_positive_bound() {
        let s = seed_state(WeightKind::PositiveReal).unwrap();
        assert_eq!(s.polys.len(), 2);
        assert!(s.m_lower > 0.5, "m = {}", s.m_lower);
        assert!(!s.minima.is_empty());
    }

    #[test]
    fn step_never_decreases_bound() {
        let mut s = seed_state(WeightKind::PositiveReal).unwrap();
        let before = s.m_lower;
        let _ = recursive_step(&mut s, 4).unwrap();
        assert!(s.m_lower >= before - 1e-9);
        assert_eq!(s.log.len(), 1);
        assert!(s.log[0].starts_with("step 0 k=4 m_lower="));
    }

    #[test]
    fn run_schedule_logs_every_step() {
        let s = run(WeightKind::PositiveReal, 2, &[3, 4]).unwrap();
        assert_eq!(s.log.len(), 2);
        for (i, line) in s.log.iter().enumerate() {
            assert!(line.starts_with(&format!("step {} ", i)), "{}", line);
            assert!(line.contains("m_lower="));
        }
    }
}
