//! Dense polynomial arithmetic over F_p for a word-sized prime, used only
//! inside integer factorization (distinct-degree / Cantor-Zassenhaus split
//! and the Hensel starting factorization).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[derive(Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        // p prime
        self.pow(a, self.p - 2)
    }
}

/// Polynomial over F_p, ascending coefficients, leading coefficient nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyP {
    pub coeffs: Vec<u64>,
}

impl PolyP {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyP { coeffs }
    }

    pub fn zero() -> Self {
        PolyP { coeffs: vec![] }
    }

    pub fn one() -> Self {
        PolyP { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        PolyP { coeffs: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().unwrap()
    }

    pub fn from_bigint_poly(p: &super::IntPolynomial, fp: Fp) -> Self {
        let pb = BigInt::from(fp.p);
        PolyP::new(
            p.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn monic(&self, fp: Fp) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = fp.inv(self.lc());
        PolyP::new(self.coeffs.iter().map(|&c| fp.mul(c, inv)).collect())
    }

    pub fn sub(&self, o: &Self, fp: Fp) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyP::new(
            (0..n)
                .map(|k| {
                    fp.sub(
                        self.coeffs.get(k).copied().unwrap_or(0),
                        o.coeffs.get(k).copied().unwrap_or(0),
                    )
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self, fp: Fp) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyP::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = fp.add(out[i + j], fp.mul(a, b));
            }
        }
        PolyP::new(out)
    }

    pub fn mul_scalar(&self, s: u64, fp: Fp) -> Self {
        PolyP::new(self.coeffs.iter().map(|&c| fp.mul(c, s)).collect())
    }

    pub fn divrem(&self, d: &Self, fp: Fp) -> (Self, Self) {
        assert!(!d.is_zero());
        if self.is_zero() || self.degree() < d.degree() {
            return (PolyP::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let inv = fp.inv(d.lc());
        let mut quot = vec![0u64; self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd];
            if top == 0 {
                continue;
            }
            let q = fp.mul(top, inv);
            quot[k] = q;
            for (j, &b) in d.coeffs.iter().enumerate() {
                rem[k + j] = fp.sub(rem[k + j], fp.mul(q, b));
            }
        }
        (PolyP::new(quot), PolyP::new(rem))
    }

    pub fn rem(&self, d: &Self, fp: Fp) -> Self {
        self.divrem(d, fp).1
    }

    pub fn gcd(&self, o: &Self, fp: Fp) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b, fp);
            a = b;
            b = r;
        }
        a.monic(fp)
    }

    pub fn derivative(&self, fp: Fp) -> Self {
        if self.coeffs.len() <= 1 {
            return PolyP::zero();
        }
        PolyP::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| fp.mul(c, (k as u64) % fp.p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Self, fp: Fp) -> Self {
        let mut base = self.rem(m, fp);
        let mut acc = PolyP::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, fp).rem(m, fp);
            }
            base = base.mul(&base, fp).rem(m, fp);
            e >>= 1;
        }
        acc
    }

    /// Extended Euclid: returns (g, s, t) monic g = gcd with s*self + t*other = g.
    pub fn xgcd(&self, o: &Self, fp: Fp) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (PolyP::one(), PolyP::zero());
        let (mut t0, mut t1) = (PolyP::zero(), PolyP::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, fp);
            let s = s0.sub(&q.mul(&s1, fp), fp);
            let t = t0.sub(&q.mul(&t1, fp), fp);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = fp.inv(r0.lc());
        (
            r0.mul_scalar(inv, fp),
            s0.mul_scalar(inv, fp),
            t0.mul_scalar(inv, fp),
        )
    }
}

/// Factors a square-free monic polynomial over F_p into monic irreducibles.
/// Distinct-degree splitting followed by Cantor-Zassenhaus equal-degree
/// splitting; `p` must be odd.
pub fn factor_squarefree_modp(f: &PolyP, fp: Fp, rng_state: &mut u64) -> Vec<PolyP> {
    let mut out = Vec::new();
    let mut rest = f.monic(fp);
    let mut d = 1usize;
    let mut xq = PolyP::x(); // x^(p^d) mod rest, maintained incrementally
    while !rest.is_zero() && rest.degree() >= 1 {
        if rest.degree() < 2 * d {
            out.push(rest.clone());
            break;
        }
        xq = xq.powmod(fp.p, &rest, fp);
        let diff = xq.sub(&PolyP::x(), fp);
        let g = if diff.is_zero() {
            rest.clone()
        } else {
            rest.gcd(&diff, fp)
        };
        if !g.is_zero() && g.degree() >= 1 {
            split_equal_degree(&g, d, fp, rng_state, &mut out);
            rest = rest.divrem(&g, fp).0;
            xq = xq.rem(&rest, fp);
        }
        d += 1;
    }
    out.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
    out
}

fn split_equal_degree(f: &PolyP, d: usize, fp: Fp, rng: &mut u64, out: &mut Vec<PolyP>) {
    if f.degree() == d {
        out.push(f.monic(fp));
        return;
    }
    // random r, compute r^((p^d - 1)/2) - 1 mod f, gcd splits
    loop {
        let r = random_poly(2 * d, fp, rng);
        if r.is_zero() {
            continue;
        }
        let e = (pow_u128(fp.p, d as u32) - 1) / 2;
        let rp = powmod_u128(&r, e, f, fp);
        let cand = rp.sub(&PolyP::one(), fp);
        if cand.is_zero() {
            continue;
        }
        let g = f.gcd(&cand, fp);
        if !g.is_zero() && g.degree() >= 1 && g.degree() < f.degree() {
            let h = f.divrem(&g, fp).0;
            split_equal_degree(&g, d, fp, rng, out);
            split_equal_degree(&h, d, fp, rng, out);
            return;
        }
    }
}

fn pow_u128(p: u64, d: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..d {
        acc *= p as u128;
    }
    acc
}

fn powmod_u128(base: &PolyP, mut e: u128, m: &PolyP, fp: Fp) -> PolyP {
    let mut b = base.rem(m, fp);
    let mut acc = PolyP::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b, fp).rem(m, fp);
        }
        b = b.mul(&b, fp).rem(m, fp);
        e >>= 1;
    }
    acc
}

fn random_poly(max_deg: usize, fp: Fp, state: &mut u64) -> PolyP {
    let mut coeffs = Vec::with_capacity(max_deg + 1);
    for _ in 0..=max_deg {
        // xorshift64*, deterministic across runs
        *state ^= *state << 13;
        *state ^= *state >> 7;
        *state ^= *state << 17;
        coeffs.push(state.wrapping_mul(0x2545F4914F6CDD1D) % fp.p);
    }
    PolyP::new(coeffs)
}
