//! Integer lattice reduction for auxiliary-polynomial discovery.
//!
//! A candidate polynomial sum(a_l x^l) of degree at most k is encoded as an
//! integer combination of basis rows; each row carries scaled samples of
//! Q(x) x^l damped by the weight, plus an identity block so the coefficients
//! can be read back off a short vector. LLL runs in exact rational
//! arithmetic with delta = 0.99.

use crate::auxfun::WeightKind;
use crate::intpoly::IntPolynomial;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use thiserror::Error;

/// Decimal scale applied before rounding form entries to integers.
pub const SCALE_DIGITS: u32 = 12;

const DELTA_NUM: i64 = 99;
const DELTA_DEN: i64 = 100;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("empty basis")]
    EmptyBasis,
    #[error("form column {0} rounded to all zeros; scale too small")]
    ZeroColumn(usize),
    #[error("form entry is not finite at point {0}")]
    NonFinite(f64),
    #[error("no control points supplied")]
    NoPoints,
    #[error("decoded candidate is the zero polynomial")]
    ZeroCandidate,
}

/// Row-major integer basis; rows are lattice generators.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    pub rows: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn norm2(row: &[BigInt]) -> BigInt {
        row.iter().map(|v| v * v).sum()
    }

    /// Index of the nonzero row with smallest squared norm.
    pub fn shortest_row(&self) -> Option<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.iter().any(|v| !v.is_zero()))
            .min_by_key(|(_, r)| Self::norm2(r))
            .map(|(i, _)| i)
    }

    /// Determinant of the Gram matrix B B^T, invariant under reduction.
    pub fn gram_det(&self) -> BigInt {
        let n = self.rows.len();
        let mut g = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                g[i][j] = self.rows[i]
                    .iter()
                    .zip(&self.rows[j])
                    .map(|(a, b)| a * b)
                    .sum();
            }
        }
        bareiss_det(g)
    }
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num_integer::Integer::div_rem(&v, &prev);
                debug_assert!(r.is_zero());
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

fn gram_schmidt(rows: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = rows.len();
    let m = rows[0].len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<BigRational> = rows[i]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        for j in 0..i {
            let dot: BigRational = rows[i]
                .iter()
                .zip(&star[j])
                .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
                .sum();
            let coef = if norms[j] == BigRational::zero() {
                BigRational::zero()
            } else {
                dot / &norms[j]
            };
            for t in 0..m {
                let sub = &coef * &star[j][t];
                v[t] -= sub;
            }
            mu[i][j] = coef;
        }
        let norm: BigRational = v.iter().map(|x| x * x).sum();
        norms.push(norm);
        star.push(v);
    }
    (mu, norms)
}

fn round_rational(x: &BigRational) -> BigInt {
    // nearest integer, ties away handled by floor(x + 1/2)
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (x + half).floor().to_integer()
}

/// Exact LLL reduction with delta = 99/100. Rows are modified in place;
/// the generated lattice (and the Gram determinant) is unchanged.
pub fn lll_reduce(basis: &mut LatticeBasis) -> Result<(), LatticeError> {
    let n = basis.rows.len();
    if n == 0 {
        return Err(LatticeError::EmptyBasis);
    }
    if n == 1 {
        return Ok(());
    }
    let delta = BigRational::new(BigInt::from(DELTA_NUM), BigInt::from(DELTA_DEN));
    let (mut mu, mut norms) = gram_schmidt(&basis.rows);
    let mut k = 1usize;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while k < n {
        for j in (0..k).rev() {
            if mu[k][j].abs() > half {
                let r = round_rational(&mu[k][j]);
                let rq = BigRational::from_integer(r.clone());
                let prev = basis.rows[j].clone();
                for (t, p) in basis.rows[k].iter_mut().zip(&prev) {
                    *t -= &r * p;
                }
                for t in 0..j {
                    let sub = &rq * &mu[j][t];
                    mu[k][t] -= sub;
                }
                mu[k][j] -= rq;
            }
        }
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            basis.rows.swap(k, k - 1);
            let (m2, n2) = gram_schmidt(&basis.rows);
            mu = m2;
            norms = n2;
            k = k.max(2) - 1;
        }
    }
    Ok(())
}

/// Specification of the discovery lattice: the current product polynomial Q,
/// its weighted degree t, the total degree r of the current factors, the
/// candidate degree bound k, and the control points carrying the weight.
#[derive(Clone, Debug)]
pub struct FormSpec {
    pub q: IntPolynomial,
    pub t: f64,
    pub r: f64,
    pub k: usize,
    pub points: Vec<f64>,
    pub weight: WeightKind,
}

fn round_scaled(v: f64) -> Option<BigInt> {
    if !v.is_finite() {
        return None;
    }
    let scaled = (v * 10f64.powi(SCALE_DIGITS as i32)).round_ties_even();
    BigInt::from_f64(scaled)
}

/// Builds the discovery basis: one row per candidate coefficient a_l,
/// l = 0..=k. Sample columns hold round(10^12 Q(x) x^l e^(-w(x)(r+k)/t));
/// on a sector ray each point contributes a real and an imaginary column.
/// An identity block follows so candidates decode from short vectors.
pub fn build_forms(spec: &FormSpec) -> Result<LatticeBasis, LatticeError> {
    if spec.points.is_empty() {
        return Err(LatticeError::NoPoints);
    }
    let nrows = spec.k + 1;
    let damp = |x: f64| (-spec.weight.weight(x) * (spec.r + spec.k as f64) / spec.t).exp();
    let mut cols: Vec<Vec<f64>> = Vec::new();
    match spec.weight {
        WeightKind::PositiveReal => {
            for &x in &spec.points {
                let base = spec.q.eval_f64(x) * damp(x);
                let mut col = Vec::with_capacity(nrows);
                let mut xl = 1.0;
                for _ in 0..nrows {
                    col.push(base * xl);
                    xl *= x;
                }
                cols.push(col);
            }
        }
        WeightKind::SectorRay { theta_degrees } => {
            for &x in &spec.points {
                let z = Complex64::from_polar(x, theta_degrees.to_radians());
                let base = spec.q.eval_c64(z) * damp(x);
                let mut re = Vec::with_capacity(nrows);
                let mut im = Vec::with_capacity(nrows);
                let mut zl = Complex64::new(1.0, 0.0);
                for _ in 0..nrows {
                    let v = base * zl;
                    re.push(v.re);
                    im.push(v.im);
                    zl *= z;
                }
                cols.push(re);
                cols.push(im);
            }
        }
    }
    let cols_per_point = cols.len() / spec.points.len();
    let ncols = cols.len() + nrows;
    let mut rows = vec![vec![BigInt::zero(); ncols]; nrows];
    for (ci, col) in cols.iter().enumerate() {
        let mut all_zero = true;
        for (ri, &v) in col.iter().enumerate() {
            let entry =
                round_scaled(v).ok_or(LatticeError::NonFinite(spec.points[ci / cols_per_point]))?;
            if !entry.is_zero() {
                all_zero = false;
            }
            rows[ri][ci] = entry;
        }
        if all_zero {
            return Err(LatticeError::ZeroColumn(ci));
        }
    }
    for ri in 0..nrows {
        rows[ri][cols.len() + ri] = BigInt::one();
    }
    Ok(LatticeBasis { rows })
}

/// Reduces the basis and decodes the shortest row's identity block into a
/// primitive candidate polynomial with positive leading coefficient.
pub fn find_candidate(spec: &FormSpec) -> Result<IntPolynomial, LatticeError> {
    let mut basis = build_forms(spec)?;
    lll_reduce(&mut basis)?;
    let nrows = spec.k + 1;
    let idx = basis.shortest_row().ok_or(LatticeError::ZeroCandidate)?;
    let row = &basis.rows[idx];
    let tail = &row[row.len() - nrows..];
    let poly = IntPolynomial::new(tail.to_vec());
    if poly.is_zero() {
        return Err(LatticeError::ZeroCandidate);
    }
    let (mut prim, _) = poly.primitive_part();
    if prim.leading_coeff().is_negative() {
        prim = prim.neg();
    }
    Ok(prim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::parse;

    fn basis(rows: &[&[i64]]) -> LatticeBasis {
        LatticeBasis {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        }
    }

    fn brute_force_shortest(b: &LatticeBasis, span: i64) -> BigInt {
        // exhaustive integer combinations in a small box
        let n = b.rows.len();
        let m = b.rows[0].len();
        assert!(n <= 3);
        let mut best: Option<BigInt> = None;
        let range = -span..=span;
        let mut coeffs = vec![0i64; n];
        fn rec(
            b: &LatticeBasis,
            coeffs: &mut Vec<i64>,
            depth: usize,
            range: &std::ops::RangeInclusive<i64>,
            m: usize,
            best: &mut Option<BigInt>,
        ) {
            if depth == coeffs.len() {
                if coeffs.iter().all(|&c| c == 0) {
                    return;
                }
                let mut norm = BigInt::zero();
                for t in 0..m {
                    let mut v = BigInt::zero();
                    for (i, &c) in coeffs.iter().enumerate() {
                        v += &b.rows[i][t] * BigInt::from(c);
                    }
                    norm += &v * &v;
                }
                if best.as_ref().map_or(true, |bv| &norm < bv) {
                    *best = Some(norm);
                }
                return;
            }
            for c in range.clone() {
                coeffs[depth] = c;
                rec(b, coeffs, depth + 1, range, m, best);
            }
        }
        rec(b, &mut coeffs, 0, &range, m, &mut best);
        best.unwrap()
    }

    #[test]
    fn reduces_textbook_basis() {
        let mut b = basis(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        let det_before = b.gram_det();
        lll_reduce(&mut b).unwrap();
        assert_eq!(b.gram_det(), det_before);
        let shortest = LatticeBasis::norm2(&b.rows[b.shortest_row().unwrap()]);
        assert_eq!(shortest, BigInt::from(1));
    }

    #[test]
    fn first_vector_near_shortest() {
        let cases: [&[&[i64]]; 3] = [
            &[&[201, 37], &[1648, 297]],
            &[&[15, 23, 11], &[46, 15, 3], &[32, 1, 1]],
            &[&[1, 0, 0], &[0, 1, 0], &[1000, 999, 1]],
        ];
        for rows in cases {
            let mut b = basis(rows);
            let det = b.gram_det();
            lll_reduce(&mut b).unwrap();
            assert_eq!(b.gram_det(), det);
            let got = LatticeBasis::norm2(&b.rows[b.shortest_row().unwrap()]);
            let opt = brute_force_shortest(&b, 6);
            // LLL guarantee: |b1|^2 <= 2^(n-1) |shortest|^2
            let n = b.rows.len() as u32;
            assert!(got <= (BigInt::one() << (n - 1)) * opt);
        }
    }

    #[test]
    fn size_reduction_invariant() {
        let mut b = basis(&[&[15, 23, 11], &[46, 15, 3], &[32, 1, 1]]);
        lll_reduce(&mut b).unwrap();
        let (mu, norms) = gram_schmidt(&b.rows);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let delta = BigRational::new(BigInt::from(DELTA_NUM), BigInt::from(DELTA_DEN));
        for i in 0..b.rows.len() {
            for j in 0..i {
                assert!(mu[i][j].abs() <= half);
            }
        }
        for k in 1..b.rows.len() {
            let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
            assert!(norms[k] >= rhs);
        }
    }

    #[test]
    fn forms_shape_and_identity_block() {
        let spec = FormSpec {
            q: parse("x^2-x").unwrap(),
            t: 1.0,
            r: 2.0,
            k: 3,
            points: vec![0.5, 2.0, 3.0],
            weight: WeightKind::PositiveReal,
        };
        let b = build_forms(&spec).unwrap();
        assert_eq!(b.rows.len(), 4);
        assert_eq!(b.rows[0].len(), 3 + 4);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                assert_eq!(b.rows[i][3 + j], expect);
            }
        }
    }

    #[test]
    fn sector_forms_have_two_columns_per_point() {
        let spec = FormSpec {
            q: parse("x").unwrap(),
            t: 1.0,
            r: 1.0,
            k: 2,
            points: vec![1.0, 2.0],
            weight: WeightKind::sector(45.0),
        };
        let b = build_forms(&spec).unwrap();
        assert_eq!(b.rows[0].len(), 4 + 3);
    }

    #[test]
    fn rejects_vanishing_scale() {
        let spec = FormSpec {
            q: parse("x").unwrap(),
            t: 0.01,
            r: 1.0,
            k: 1,
            // weight * (r+k)/t is enormous: every sample rounds to zero
            points: vec![40.0],
            weight: WeightKind::PositiveReal,
        };
        assert!(matches!(
            build_forms(&spec),
            Err(LatticeError::ZeroColumn(_))
        ));
    }

    #[test]
    fn candidate_decodes_to_small_polynomial() {
        // near the fixed points of x and x-1 a short combination should
        // involve small coefficients; just check it decodes and is primitive
        let spec = FormSpec {
            q: parse("x^2-x").unwrap(),
            t: 0.6,
            r: 2.0,
            k: 2,
            points: vec![0.3819, 2.618, 1.5],
            weight: WeightKind::PositiveReal,
        };
        let cand = find_candidate(&spec).unwrap();
        assert!(cand.degree() <= 2);
        let (_, content) = cand.primitive_part();
        assert_eq!(content, BigInt::one());
        assert!(cand.leading_coeff() > &BigInt::zero());
    }
}
