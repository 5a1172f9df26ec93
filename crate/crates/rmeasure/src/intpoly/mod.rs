//! Exact integer-coefficient univariate polynomials.
//!
//! Coefficients are stored in ascending degree order (`coeffs[k]` multiplies
//! `x^k`) with a nonzero leading coefficient; the zero polynomial is the
//! empty coefficient vector.

mod factor;
mod modp;
mod parse;
mod resultant;

pub use factor::{factor, Factorization};
pub use parse::{parse, ParseError};
pub use resultant::{resultant, sylvester_resultant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::hp::{HpComplex, HpReal};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from ascending-order coefficients, trimming
    /// trailing zeros so the leading coefficient is nonzero.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of a nonzero polynomial. Panics on the zero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero when `k` exceeds the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading_coeff().is_one()
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Content: gcd of the coefficients (nonnegative; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient; second value is the
    /// signed content so that `poly = content * primitive`.
    pub fn primitive_part(&self) -> (Self, BigInt) {
        if self.is_zero() {
            return (Self::zero(), BigInt::zero());
        }
        let mut cont = self.content();
        if self.leading_coeff().is_negative() {
            cont = -cont;
        }
        let pp = Self::new(self.coeffs.iter().map(|c| c / &cont).collect());
        (pp, cont)
    }

    /// Exact division; `None` when `other` does not divide `self` over ℤ.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < other.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dq = self.degree() - other.degree();
        let mut quot = vec![BigInt::zero(); dq + 1];
        let lead = other.leading_coeff();
        for k in (0..=dq).rev() {
            let top = rem[k + other.degree()].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &q * b;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Pseudo-remainder: `lc(other)^(deg self - deg other + 1) * self mod other`.
    pub fn pseudo_rem(&self, other: &Self) -> Self {
        assert!(!other.is_zero());
        let d = other.degree();
        let lead = other.leading_coeff().clone();
        let mut rem = self.clone();
        if rem.is_zero() || rem.degree() < d {
            return rem;
        }
        let mut steps = rem.degree() as isize - d as isize + 1;
        while !rem.is_zero() && rem.degree() >= d {
            let k = rem.degree() - d;
            let top = rem.leading_coeff().clone();
            let mut coeffs: Vec<BigInt> = rem.coeffs.iter().map(|c| c * &lead).collect();
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[k + j] -= &top * b;
            }
            rem = Self::new(coeffs);
            steps -= 1;
        }
        // Keep the classical normalization lc^(deg f - deg g + 1) * f mod g.
        let mut extra = Self::one();
        while steps > 0 {
            extra = extra.mul_scalar(&lead);
            steps -= 1;
        }
        if extra.is_one() {
            rem
        } else {
            rem.mul(&extra)
        }
    }

    /// Primitive gcd over ℤ via the primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().0;
        }
        if other.is_zero() {
            return self.primitive_part().0;
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, _) = self.primitive_part();
        let (mut b, _) = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == 0 {
                return Self::constant(cont);
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() {
                Self::zero()
            } else {
                r.primitive_part().0
            };
        }
        a.mul_scalar(&cont)
    }

    /// Square-free part: `p / gcd(p, p')` (primitive, positive leading coeff).
    pub fn squarefree_part(&self) -> Self {
        assert!(!self.is_zero());
        if self.degree() == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.primitive_part().0;
        }
        let (pp, _) = self.primitive_part();
        pp.div_exact(&g)
            .expect("gcd divides the primitive part")
            .primitive_part()
            .0
    }

    /// Square-free decomposition (Yun): returns pairs `(factor, multiplicity)`
    /// with the factors pairwise coprime and square-free; their product with
    /// multiplicities equals the primitive part.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        assert!(!self.is_zero());
        let (p, _) = self.primitive_part();
        if p.degree() == 0 {
            return Vec::new();
        }
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut b = p.div_exact(&a0).expect("gcd divides").primitive_part().0;
        let mut c = dp.div_exact(&a0).expect("gcd divides derivative");
        let mut out = Vec::new();
        let mut i = 1u32;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree() > 0 {
                    out.push((b, i));
                }
                break;
            }
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides").primitive_part().0;
            c = d.div_exact(&a).expect("gcd divides");
            if b.degree() == 0 {
                break;
            }
            i += 1;
        }
        out
    }

    /// Reciprocal polynomial `x^d p(1/x)`.
    pub fn reciprocal(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    /// Substitutes `x + 1/x - 2` and clears denominators:
    /// returns `x^d * p(x + 1/x - 2)` where `d = deg p`.
    pub fn compose_x_plus_inv_x_minus_2(&self) -> Self {
        assert!(!self.is_zero());
        let d = self.degree();
        // x + 1/x - 2 = (x-1)^2 / x, so x^d p((x-1)^2/x) = sum p_k (x-1)^(2k) x^(d-k).
        let xm1_sq = Self::from_i64(&[1, -2, 1]);
        let mut acc = Self::zero();
        let mut pow = Self::one(); // (x-1)^(2k)
        for k in 0..=d {
            let pk = self.coeff(k);
            if !pk.is_zero() {
                // multiply by x^(d-k): shift by d-k
                let mut term = vec![BigInt::zero(); d - k];
                term.extend(pow.coeffs.iter().map(|c| c * &pk));
                acc = acc.add(&Self::new(term));
            }
            if k < d {
                pow = pow.mul(&xm1_sq);
            }
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + bigint_to_f64(c);
        }
        acc
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + bigint_to_f64(c);
        }
        acc
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a high-precision real point.
    pub fn eval_hp(&self, x: &HpReal) -> HpReal {
        let prec = x.precision();
        let mut acc = HpReal::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&HpReal::from_bigint(c, prec));
        }
        acc
    }

    /// Horner evaluation at a high-precision complex point.
    pub fn eval_hp_complex(&self, z: &HpComplex) -> HpComplex {
        let prec = z.precision();
        let mut acc = HpComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add_real(&HpReal::from_bigint(c, prec));
        }
        acc
    }

    /// Largest coefficient magnitude as f64 (for norms and bounds).
    pub fn height(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| bigint_to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm2(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| {
                let v = bigint_to_f64(c);
                v * v
            })
            .sum::<f64>()
            .sqrt()
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::INFINITY)
}

impl fmt::Display for IntPolynomial {
    /// Canonical descending-power form, paper table style:
    /// `x^2 - 3x + 1`, unit coefficients suppressed, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            if k == 0 || !unit {
                write!(f, "{}", mag)?;
            }
            if k >= 1 {
                write!(f, "x")?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        parse(s).unwrap()
    }

    #[test]
    fn display_canonical() {
        assert_eq!(p("x^2-3x+1").to_string(), "x^2 - 3x + 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(p("-x^3+2").to_string(), "-x^3 + 2");
        assert_eq!(p("2x^2-2x+1").to_string(), "2x^2 - 2x + 1");
        assert_eq!(p("x").to_string(), "x");
    }

    #[test]
    fn eval_points() {
        let q = p("x^2-3x+1");
        assert_eq!(q.eval_f64(1.0), -1.0);
        assert_eq!(q.eval_f64(0.0), 1.0);
        assert_eq!(p("x^3-5x^2+6x-1").eval_f64(2.0), -1.0);
    }

    #[test]
    fn eval_complex_points() {
        let q = p("x^2+1");
        let v = q.eval_c64(Complex64::new(0.0, 1.0));
        assert!(v.norm() < 1e-15);
        let z = Complex64::from_polar(2.0, std::f64::consts::FRAC_PI_3);
        let v = p("x^2-3x+1").eval_c64(z);
        // independent expansion: z^2 - 3z + 1 with z = 1 + i*sqrt(3)
        let zre = 1.0;
        let zim = 3f64.sqrt();
        let expect = Complex64::new(
            zre * zre - zim * zim - 3.0 * zre + 1.0,
            2.0 * zre * zim - 3.0 * zim,
        );
        assert!((v - expect).norm() < 1e-12);
    }

    #[test]
    fn horner_matches_term_sum() {
        let q = p("x^21-39x^20+697x^19-7572x^18+55935x^17");
        let x: f64 = 1.7320508;
        let mut direct = 0.0;
        for (k, c) in q.coeffs().iter().enumerate() {
            direct += bigint_to_f64(c) * x.powi(k as i32);
        }
        let h = q.eval_f64(x);
        assert!((h - direct).abs() <= 4.0 * f64::EPSILON * direct.abs().max(h.abs()).max(1.0));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p("x^2-1");
        let b = p("x^2-2x+1");
        assert_eq!(a.gcd(&b), p("x-1"));
        let q = p("x^2-3x+1").mul(&p("x-1")).mul(&p("x-1"));
        assert_eq!(q.squarefree_part(), p("x^2-3x+1").mul(&p("x-1")));
        let decomp = q.squarefree_decomposition();
        assert_eq!(decomp, vec![(p("x^2-3x+1"), 1), (p("x-1"), 2)]);
    }

    #[test]
    fn exact_division() {
        let a = p("x^2-3x+1").mul(&p("x^3-5x^2+6x-1"));
        assert_eq!(a.div_exact(&p("x^2-3x+1")).unwrap(), p("x^3-5x^2+6x-1"));
        assert!(p("x^2+1").div_exact(&p("x-1")).is_none());
    }

    #[test]
    fn substitution_recurrence() {
        // x^d p(x + 1/x - 2) for p = x - 1 gives x^2 - 3x + 1.
        assert_eq!(p("x-1").compose_x_plus_inv_x_minus_2(), p("x^2-3x+1"));
        assert_eq!(
            p("x^2-3x+1").compose_x_plus_inv_x_minus_2(),
            p("x^4-7x^3+13x^2-7x+1")
        );
    }
}
