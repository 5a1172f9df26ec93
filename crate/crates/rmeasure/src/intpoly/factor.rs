//! Factorization over the integers: content extraction, square-free
//! decomposition, finite-field factorization at a good prime, Hensel lifting
//! to a Landau-Mignotte bound, and subset recombination (Zassenhaus).

use super::modp::{factor_squarefree_modp, Fp, PolyP};
use super::IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Complete factorization over ℤ: `unit * Π factor_i^mult_i` equals the
/// input exactly; each factor is primitive, irreducible, with positive
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    /// Re-multiplies the factorization (round-trip check).
    pub fn expand(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }
}

/// Factors a nonzero integer polynomial into irreducibles over ℤ.
pub fn factor(p: &IntPolynomial) -> Factorization {
    assert!(!p.is_zero(), "factor of the zero polynomial");
    let (pp, unit) = p.primitive_part();
    let mut factors: Vec<(IntPolynomial, u32)> = Vec::new();
    if pp.degree() == 0 {
        return Factorization { unit, factors };
    }
    for (sf, mult) in pp.squarefree_decomposition() {
        for irr in factor_squarefree(&sf) {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs(), a.1).cmp(&(b.0.degree(), b.0.coeffs(), b.1))
    });
    Factorization { unit, factors }
}

/// Factors a primitive square-free polynomial with positive leading
/// coefficient into irreducibles.
fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    debug_assert!(!f.is_zero() && f.degree() >= 1);
    if f.degree() == 1 {
        return vec![f.clone()];
    }
    if f.is_monic() {
        return factor_monic_squarefree(f);
    }
    // Monicize: F(y) = lc^(d-1) * f(y / lc) is monic with integer
    // coefficients; pull factors back through y = lc * x.
    let lc = f.leading_coeff().clone();
    let d = f.degree();
    // coefficient of y^k in F is c_k * lc^(d-1-k), and F is monic
    let monic = {
        let mut coeffs = Vec::with_capacity(d + 1);
        for k in 0..d {
            coeffs.push(f.coeff(k) * lc.pow((d - 1 - k) as u32));
        }
        coeffs.push(BigInt::one());
        IntPolynomial::new(coeffs)
    };
    let sub_factors = factor_monic_squarefree(&monic);
    let mut rest = f.clone();
    let mut out = Vec::new();
    for g in sub_factors {
        // map back: g(lc * x), then primitive part
        let dg = g.degree();
        let mapped = IntPolynomial::new(
            g.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| c * lc.pow(k.min(dg) as u32))
                .collect(),
        )
        .primitive_part()
        .0;
        if let Some(next) = rest.div_exact(&mapped) {
            out.push(mapped);
            rest = next;
        }
    }
    debug_assert!(rest.degree() == 0, "monicized factors must exhaust f");
    out
}

fn factor_monic_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let fp = choose_prime(f);
    let mut rng = 0x9E3779B97F4A7C15u64;
    let f_modp = PolyP::from_bigint_poly(f, fp).monic(fp);
    let modular = factor_squarefree_modp(&f_modp, fp, &mut rng);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let bound = landau_mignotte(f);
    let (lifted, pk) = hensel_lift(f, &modular, fp, &bound);
    recombine(f, lifted, &pk)
}

/// Picks an odd prime not dividing lc(f) for which f stays square-free mod p.
fn choose_prime(f: &IntPolynomial) -> Fp {
    let mut p = 3u64;
    loop {
        if is_prime(p) {
            let fp = Fp { p };
            let pb = BigInt::from(p);
            if !f.leading_coeff().mod_floor(&pb).is_zero() {
                let fm = PolyP::from_bigint_poly(f, fp);
                if !fm.is_zero() && fm.degree() == f.degree() {
                    let g = fm.gcd(&fm.derivative(fp), fp);
                    if !g.is_zero() && g.degree() == 0 {
                        return fp;
                    }
                }
            }
        }
        p += 2;
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Landau-Mignotte coefficient bound for any monic factor of monic `f`:
/// `2^deg(f) * ||f||_2`.
fn landau_mignotte(f: &IntPolynomial) -> BigInt {
    let mut sum = BigInt::zero();
    for c in f.coeffs() {
        sum += c * c;
    }
    let norm = sum.sqrt() + 1;
    norm << f.degree()
}

/// Lifts `f = Π g_i (mod p)` (monic, pairwise coprime) to mod `p^k > 2*bound`
/// by linear multifactor lifting. Returns the lifted factors (coefficients
/// in `[0, p^k)`) and the modulus `p^k`.
fn hensel_lift(
    f: &IntPolynomial,
    modular: &[PolyP],
    fp: Fp,
    bound: &BigInt,
) -> (Vec<IntPolynomial>, BigInt) {
    // Lagrange-style correction data mod p: t_i = (Π_{j≠i} g_j)^{-1} mod g_i.
    let t: Vec<PolyP> = (0..modular.len())
        .map(|i| {
            let mut prod = PolyP::one();
            for (j, g) in modular.iter().enumerate() {
                if j != i {
                    prod = prod.mul(g, fp).rem(&modular[i], fp);
                }
            }
            let (g, s, _) = prod.xgcd(&modular[i], fp);
            debug_assert!(!g.is_zero() && g.degree() == 0);
            s.rem(&modular[i], fp)
        })
        .collect();

    let mut lifted: Vec<IntPolynomial> = modular
        .iter()
        .map(|g| IntPolynomial::new(g.coeffs.iter().map(|&c| BigInt::from(c)).collect()))
        .collect();
    let p_big = BigInt::from(fp.p);
    let mut modulus = p_big.clone();
    let target = bound * 2;
    while modulus <= target {
        // error e = (f - Π g_i) / modulus mod p
        let mut prod = IntPolynomial::one();
        for g in &lifted {
            prod = prod.mul(g);
        }
        let diff = f.sub(&prod);
        let e_over: Vec<BigInt> = diff
            .coeffs()
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&modulus);
                debug_assert!(r.is_zero(), "lift invariant: error divisible by modulus");
                q.mod_floor(&p_big)
            })
            .collect();
        let e = PolyP::new(e_over.iter().map(|c| c.to_u64().unwrap()).collect());
        for (i, g0) in modular.iter().enumerate() {
            let delta = e.mul(&t[i], fp).rem(g0, fp);
            if delta.is_zero() {
                continue;
            }
            let mut coeffs = lifted[i].coeffs().to_vec();
            coeffs.resize(coeffs.len().max(delta.coeffs.len()), BigInt::zero());
            for (k, &dc) in delta.coeffs.iter().enumerate() {
                coeffs[k] += BigInt::from(dc) * &modulus;
            }
            lifted[i] = IntPolynomial::new(coeffs);
        }
        modulus *= &p_big;
    }
    (lifted, modulus)
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Zassenhaus recombination: tries subsets of the lifted modular factors in
/// increasing cardinality; each subset product (symmetric mod p^k) that
/// divides `f` is an irreducible true factor.
fn recombine(f: &IntPolynomial, lifted: Vec<IntPolynomial>, pk: &BigInt) -> Vec<IntPolynomial> {
    let mut rest = f.clone();
    let mut avail: Vec<IntPolynomial> = lifted;
    let mut out = Vec::new();
    let mut size = 1usize;
    'sizes: while size <= avail.len() / 2 {
        let n = avail.len();
        debug_assert!(n <= 30, "recombination blowup");
        for mask in 1u32..(1u32 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut prod = IntPolynomial::one();
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    prod = prod.mul(&avail[i]);
                    prod = IntPolynomial::new(
                        prod.coeffs().iter().map(|c| c.mod_floor(pk)).collect(),
                    );
                }
            }
            let cand = IntPolynomial::new(
                prod.coeffs().iter().map(|c| symmetric_mod(c, pk)).collect(),
            );
            if cand.is_zero() {
                continue;
            }
            if let Some(next) = rest.div_exact(&cand) {
                out.push(cand);
                rest = next;
                avail = avail
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) == 0)
                    .map(|(_, g)| g)
                    .collect();
                continue 'sizes;
            }
        }
        size += 1;
    }
    if !rest.is_zero() && rest.degree() >= 1 {
        out.push(rest);
    }
    out.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::parse;

    fn p(s: &str) -> IntPolynomial {
        parse(s).unwrap()
    }

    #[test]
    fn splits_difference_of_squares() {
        let f = factor(&p("x^2-1"));
        assert_eq!(f.unit, BigInt::one());
        assert_eq!(f.factors, vec![(p("x-1"), 1), (p("x+1"), 1)]);
    }

    #[test]
    fn keeps_irreducible_quadratic() {
        let f = factor(&p("x^2-3x+1"));
        assert_eq!(f.factors, vec![(p("x^2-3x+1"), 1)]);
        let f = factor(&p("x^2+1"));
        assert_eq!(f.factors, vec![(p("x^2+1"), 1)]);
    }

    #[test]
    fn multiplicity_and_roundtrip() {
        let input = p("x^2-3x+1").mul(&p("x-1")).mul(&p("x-1"));
        let f = factor(&input);
        assert_eq!(f.factors, vec![(p("x-1"), 2), (p("x^2-3x+1"), 1)]);
        assert_eq!(f.expand(), input);
    }

    #[test]
    fn content_goes_to_unit() {
        let input = p("x^2-1").mul_scalar(&BigInt::from(-6));
        let f = factor(&input);
        assert_eq!(f.unit, BigInt::from(-6));
        assert_eq!(f.expand(), input);
    }

    #[test]
    fn cyclotomic_product() {
        // x^4 - 1 = (x-1)(x+1)(x^2+1)
        let f = factor(&p("x^4-1"));
        assert_eq!(
            f.factors,
            vec![(p("x-1"), 1), (p("x+1"), 1), (p("x^2+1"), 1)]
        );
    }

    #[test]
    fn nonmonic_factorization() {
        let input = p("2x^2-2x+1").mul(&p("3x-1"));
        let f = factor(&input);
        assert_eq!(f.expand(), input);
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn larger_table_polynomials_are_irreducible() {
        let q = p("x^8-12x^7+57x^6-138x^5+183x^4-138x^3+57x^2-12x+1");
        let f = factor(&q);
        assert_eq!(f.factors, vec![(q.clone(), 1)]);
        let q = p("x^6-11x^5+43x^4-73x^3+53x^2-15x+1");
        assert_eq!(factor(&q).factors, vec![(q.clone(), 1)]);
    }

    #[test]
    fn deep_product_recombination() {
        // many linear factors forces real recombination work
        let mut input = IntPolynomial::one();
        for k in 1..=6i64 {
            input = input.mul(&IntPolynomial::from_i64(&[-k, 1]));
        }
        input = input.mul(&p("x^2-3x+1"));
        let f = factor(&input);
        assert_eq!(f.expand(), input);
        assert_eq!(f.factors.len(), 7);
    }
}
