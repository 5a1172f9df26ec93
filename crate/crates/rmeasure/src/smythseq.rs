//! The recursive sequence of totally positive algebraic integers c_n with
//! c_0 = 1 and c_n + 1/c_n = 2 + c_{n-1}: conjugates via the increasing map
//! g(x) = (2 + x + sqrt(x^2 + 4x))/2, exact minimal polynomials by the
//! substitution recurrence, the measure bound (13 + sqrt(5))/8 - 2^-n, and
//! the distribution counts around 1 and c_1 = (3 - sqrt(5))/2.

use crate::hp::HpReal;
use crate::intpoly::IntPolynomial;
use thiserror::Error;

const PREC: usize = 128;
/// Largest level carrying an exact minimal polynomial (degree 2^n; beyond
/// this the coefficients are astronomically large and nothing needs them).
pub const MINPOLY_CAP: u32 = 12;
pub const LEVEL_CAP: u32 = 20;

#[derive(Debug, Error)]
pub enum SmythError {
    #[error("level {0} out of range 0..={LEVEL_CAP}")]
    LevelOutOfRange(u32),
    #[error("g_map requires a positive argument, got {0}")]
    NonPositive(f64),
}

/// g(x) = (2 + x + sqrt(x^2 + 4x))/2; g(x) and 1/g(x) are the roots of
/// t^2 - (2 + x) t + 1.
pub fn g_map(x: f64) -> Result<f64, SmythError> {
    if !(x > 0.0) {
        return Err(SmythError::NonPositive(x));
    }
    Ok(0.5 * (2.0 + x + (x * x + 4.0 * x).sqrt()))
}

fn g_map_hp(x: &HpReal) -> HpReal {
    let prec = x.precision();
    let two = HpReal::from_f64(2.0, prec);
    let four = HpReal::from_f64(4.0, prec);
    let disc = x.mul(x).add(&four.mul(x)).sqrt();
    two.add(x).add(&disc).div(&two)
}

/// One level of the sequence: the 2^n conjugates, sorted ascending. The
/// exact minimal polynomial is computed separately by `minimal_poly`
/// (materializing it for every level would dominate the runtime).
#[derive(Clone, Debug)]
pub struct SmythLevel {
    pub n: u32,
    pub conjugates: Vec<HpReal>,
}

impl SmythLevel {
    pub fn degree(&self) -> usize {
        self.conjugates.len()
    }

    pub fn conjugates_f64(&self) -> Vec<f64> {
        self.conjugates.iter().map(|c| c.to_f64()).collect()
    }
}

/// Exact minimal polynomial of c_n: iterate
/// P_k(x) = x^(2^(k-1)) P_{k-1}(x + 1/x - 2) from P_0 = x - 1.
pub fn minimal_poly(n: u32) -> IntPolynomial {
    assert!(n <= MINPOLY_CAP, "minimal polynomial cap is {MINPOLY_CAP}");
    let mut p = IntPolynomial::from_i64(&[-1, 1]);
    for _ in 0..n {
        p = p.compose_x_plus_inv_x_minus_2();
    }
    p
}

/// Builds level `n` by iterating y -> {g(y), 1/g(y)} from level 0 = {1}.
pub fn level(n: u32) -> Result<SmythLevel, SmythError> {
    if n > LEVEL_CAP {
        return Err(SmythError::LevelOutOfRange(n));
    }
    let one = HpReal::from_f64(1.0, PREC);
    let mut conj = vec![one.clone()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(conj.len() * 2);
        for y in &conj {
            let g = g_map_hp(y);
            next.push(one.div(&g));
            next.push(g);
        }
        conj = next;
    }
    conj.sort_by(|a, b| a.cmp(b));
    Ok(SmythLevel {
        n,
        conjugates: conj,
    })
}

/// r(c_n) against the bound (13 + sqrt(5))/8 - 2^-n.
pub fn r_bound_check(n: u32) -> Result<(f64, f64, bool), SmythError> {
    Ok(r_bound_of(&level(n)?))
}

pub fn r_bound_of(lv: &SmythLevel) -> (f64, f64, bool) {
    let d = lv.degree() as f64;
    let one = HpReal::from_f64(1.0, PREC);
    let mut sum = HpReal::from_f64(0.0, PREC);
    for c in &lv.conjugates {
        if c.cmp(&one) == std::cmp::Ordering::Greater {
            sum = sum.add(c);
        }
    }
    let r = sum.to_f64() / d;
    let bound = (13.0 + 5f64.sqrt()) / 8.0 - 0.5f64.powi(lv.n as i32);
    (r, bound, r <= bound + 1e-9)
}

/// Distribution counts of level n: (above 1, below 1, in (c_1, 1), below c_1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub above_one: usize,
    pub below_one: usize,
    pub between: usize,
    pub below_c1: usize,
    pub ok: bool,
}

pub fn distribution_check(n: u32) -> Result<Distribution, SmythError> {
    Ok(distribution_of(&level(n)?))
}

pub fn distribution_of(lv: &SmythLevel) -> Distribution {
    let n = lv.n;
    assert!(n >= 2, "distribution counts defined for n >= 2");
    let c1 = (3.0 - 5f64.sqrt()) / 2.0;
    let vals = lv.conjugates_f64();
    let above_one = vals.iter().filter(|&&v| v > 1.0).count();
    let below_one = vals.iter().filter(|&&v| v < 1.0).count();
    let between = vals.iter().filter(|&&v| v > c1 && v < 1.0).count();
    let below_c1 = vals.iter().filter(|&&v| v < c1).count();
    let half = 1usize << (n - 1);
    let quarter = 1usize << (n - 2);
    let ok = above_one == half
        && below_one == half
        && between == quarter
        && below_c1 == quarter;
    Distribution {
        above_one,
        below_one,
        between,
        below_c1,
        ok,
    }
}
