//! Exact resultants: subresultant PRS for the production path, and a
//! fraction-free Sylvester determinant kept as an independent oracle.

use super::IntPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Resultant of two nonzero integer polynomials via the subresultant
/// polynomial remainder sequence. `Res(p, q) = 0` iff `p` and `q` share a
/// common factor.
pub fn resultant(p: &IntPolynomial, q: &IntPolynomial) -> BigInt {
    assert!(
        !p.is_zero() && !q.is_zero(),
        "resultant of a zero polynomial"
    );
    let (mut a, ca) = p.primitive_part();
    let (mut b, cb) = q.primitive_part();
    let da = a.degree();
    let db = b.degree();
    // content contributions: Res(c*A, B) = c^deg(B) * Res(A, B)
    let mut t = ca.pow(db as u32) * cb.pow(da as u32);
    let mut s = BigInt::one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da & 1 == 1 && db & 1 == 1 {
            s = -s;
        }
    }
    if b.degree() == 0 {
        let lb = b.leading_coeff().clone();
        return s * t * lb.pow(a.degree() as u32);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree();
        let db = b.degree();
        let delta = (da - db) as u32;
        if da & 1 == 1 && db & 1 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = &g * h.pow(delta);
        b = if r.is_zero() {
            IntPolynomial::zero()
        } else {
            IntPolynomial::new(r.coeffs().iter().map(|c| c / &divisor).collect())
        };
        g = a.leading_coeff().clone();
        h = if delta == 0 {
            h
        } else {
            // h <- g^delta / h^(delta-1), exact by the subresultant theory
            exact_div(&g.pow(delta), &h.pow(delta - 1))
        };
        if b.is_zero() {
            // common factor (deg a > 0 at this point)
            return BigInt::zero();
        }
        if b.degree() == 0 {
            let da = a.degree() as u32;
            let lb = b.leading_coeff().clone();
            // h <- lc(B)^deg(A) / h^(deg(A)-1)
            let hout = if da == 0 {
                BigInt::one()
            } else {
                exact_div(&lb.pow(da), &h.pow(da - 1))
            };
            t *= hout;
            return s * t;
        }
    }
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(!b.is_zero());
    let (q, r) = num_integer::Integer::div_rem(a, b);
    debug_assert!(r.is_zero(), "inexact division in subresultant PRS");
    q
}

/// Independent oracle: resultant as the determinant of the Sylvester matrix,
/// computed by fraction-free (Bareiss) elimination over ℤ.
pub fn sylvester_resultant(p: &IntPolynomial, q: &IntPolynomial) -> BigInt {
    assert!(!p.is_zero() && !q.is_zero());
    let m = p.degree();
    let n = q.degree();
    if m == 0 {
        return p.leading_coeff().pow(n as u32);
    }
    if n == 0 {
        return q.leading_coeff().pow(m as u32);
    }
    let dim = m + n;
    let mut mat = vec![vec![BigInt::zero(); dim]; dim];
    for row in 0..n {
        for k in 0..=m {
            mat[row][row + k] = p.coeff(m - k);
        }
    }
    for row in 0..m {
        for k in 0..=n {
            mat[n + row][row + k] = q.coeff(n - k);
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
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
                m[i][j] = exact_div(&v, &prev);
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::parse;

    fn p(s: &str) -> IntPolynomial {
        parse(s).unwrap()
    }

    #[test]
    fn simple_values() {
        assert_eq!(resultant(&p("x-1"), &p("x")), BigInt::one());
        assert_eq!(resultant(&p("x^2-3x+1"), &p("x-1")), BigInt::from(-1));
        assert_eq!(resultant(&p("x^2-1"), &p("x-1")), BigInt::zero());
    }

    #[test]
    fn matches_oracle_small() {
        let polys = [
            p("x^2-3x+1"),
            p("x^3-5x^2+6x-1"),
            p("2x^2-2x+1"),
            p("x^4-7x^3+13x^2-7x+1"),
            p("x-2"),
            p("3x^3+x-5"),
        ];
        for a in &polys {
            for b in &polys {
                assert_eq!(
                    resultant(a, b),
                    sylvester_resultant(a, b),
                    "Res({}, {})",
                    a,
                    b
                );
            }
        }
    }

    #[test]
    fn swap_sign_rule() {
        // Res(p,q) = (-1)^(deg p * deg q) Res(q,p)
        let a = p("x^3-5x^2+6x-1");
        let b = p("2x^2-2x+1");
        assert_eq!(resultant(&a, &b), resultant(&b, &a));
        let c = p("x^3+x-5");
        assert_eq!(resultant(&a, &c), -resultant(&c, &a));
    }
}
