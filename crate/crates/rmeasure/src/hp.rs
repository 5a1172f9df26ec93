//! Thin high-precision real/complex layer over `astro_float::BigFloat`.
//!
//! Operations carry an explicit precision in bits; rounding is to even.
//! Transcendental functions share a thread-local constants cache.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cell::RefCell;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone, Debug)]
pub struct HpReal {
    v: BigFloat,
    prec: usize,
}

impl HpReal {
    pub fn zero(prec: usize) -> Self {
        HpReal {
            v: BigFloat::from_f64(0.0, prec),
            prec,
        }
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        HpReal {
            v: BigFloat::from_f64(x, prec),
            prec,
        }
    }

    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        if n.is_zero() {
            return Self::zero(prec);
        }
        let digits = n.magnitude().to_u64_digits();
        let e = (digits.len() * 64) as i32;
        let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
        let mut v = BigFloat::from_words(&digits, sign, e.into());
        v.set_precision(prec.max(digits.len() * 64), RM)
            .expect("set precision");
        HpReal { v, prec }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn raw(&self) -> &BigFloat {
        &self.v
    }

    pub fn to_f64(&self) -> f64 {
        big_to_f64(&self.v)
    }

    pub fn add(&self, o: &Self) -> Self {
        HpReal {
            v: self.v.add(&o.v, self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HpReal {
            v: self.v.sub(&o.v, self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        HpReal {
            v: self.v.mul(&o.v, self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        HpReal {
            v: self.v.div(&o.v, self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        HpReal {
            v: self.v.neg(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        let mut v = self.v.clone();
        v.set_sign(Sign::Pos);
        HpReal { v, prec: self.prec }
    }

    pub fn sqrt(&self) -> Self {
        HpReal {
            v: self.v.sqrt(self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn ln(&self) -> Self {
        HpReal {
            v: with_consts(|cc| self.v.ln(self.prec, RM, cc)),
            prec: self.prec,
        }
    }

    pub fn exp(&self) -> Self {
        HpReal {
            v: with_consts(|cc| self.v.exp(self.prec, RM, cc)),
            prec: self.prec,
        }
    }

    pub fn sin(&self) -> Self {
        HpReal {
            v: with_consts(|cc| self.v.sin(self.prec, RM, cc)),
            prec: self.prec,
        }
    }

    pub fn cos(&self) -> Self {
        HpReal {
            v: with_consts(|cc| self.v.cos(self.prec, RM, cc)),
            prec: self.prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative()
    }

    pub fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        match self.v.cmp(&o.v) {
            Some(c) if c < 0 => std::cmp::Ordering::Less,
            Some(c) if c > 0 => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Equal,
        }
    }

    /// π at this precision (degrees-to-radians and argument work).
    pub fn pi(prec: usize) -> Self {
        HpReal {
            v: with_consts(|cc| cc.pi(prec, RM)),
            prec,
        }
    }
}

fn big_to_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    if v.is_inf_pos() {
        return f64::INFINITY;
    }
    if v.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _n, sign, e, _)) = v.as_raw_parts() else {
        return f64::NAN;
    };
    let len = words.len();
    let mut frac = words[len - 1] as f64 / 18446744073709551616.0; // 2^64
    if len >= 2 {
        frac += words[len - 2] as f64 / (18446744073709551616.0 * 18446744073709551616.0);
    }
    let mag = frac * 2f64.powi(e as i32);
    if sign == Sign::Neg {
        -mag
    } else {
        mag
    }
}

/// Complex number with high-precision components.
#[derive(Clone, Debug)]
pub struct HpComplex {
    pub re: HpReal,
    pub im: HpReal,
}

impl HpComplex {
    pub fn new(re: HpReal, im: HpReal) -> Self {
        HpComplex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        HpComplex {
            re: HpReal::zero(prec),
            im: HpReal::zero(prec),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        HpComplex {
            re: HpReal::from_f64(re, prec),
            im: HpReal::from_f64(im, prec),
        }
    }

    /// Point on the ray at `theta` radians with modulus `r`.
    pub fn from_polar(r: &HpReal, theta: &HpReal) -> Self {
        HpComplex {
            re: r.mul(&theta.cos()),
            im: r.mul(&theta.sin()),
        }
    }

    pub fn precision(&self) -> usize {
        self.re.precision()
    }

    pub fn add(&self, o: &Self) -> Self {
        HpComplex {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HpComplex {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn add_real(&self, r: &HpReal) -> Self {
        HpComplex {
            re: self.re.add(r),
            im: self.im.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        HpComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        HpComplex {
            re: self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&d),
            im: self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&d),
        }
    }

    pub fn norm_sqr(&self) -> HpReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> HpReal {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        HpComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}
