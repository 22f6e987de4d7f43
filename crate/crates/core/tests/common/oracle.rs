//! Arbitrary-precision reference values in binary fixed point.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use qcorr::C64;

const TWO_OVER_SQRT_PI: &str =
    "1.128379167095512573896158903121545171688101258657997713688171443421284936882986828973487320404214727";
const SQRT_PI: &str =
    "1.772453850905516027298167483341145182797549456122387128213807789852911284591032181374950656738544665";
const PI: &str =
    "3.141592653589793238462643383279502884197169399375105820974944592307816406286208998628034825342117068";

/// Real number `v · 2^-bits`.
#[derive(Clone, Debug)]
pub struct Fixed {
    pub v: BigInt,
    pub bits: u32,
}

impl Fixed {
    pub fn from_f64(x: f64, bits: u32) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Self { v: BigInt::zero(), bits };
        }
        // x = m · 2^e exactly
        let raw = x.abs().to_bits();
        let exp = ((raw >> 52) & 0x7ff) as i64;
        let frac = raw & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        let shift = e + bits as i64;
        let mut v = BigInt::from(m);
        v = if shift >= 0 { v << shift as usize } else { v >> (-shift) as usize };
        if x < 0.0 {
            v = -v;
        }
        Self { v, bits }
    }

    pub fn from_decimal(s: &str, bits: u32) -> Self {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let digits: BigInt = format!("{int}{frac}").parse().unwrap();
        let ten = BigInt::from(10u32).pow(frac.len() as u32);
        Self { v: (digits << bits as usize) / ten, bits }
    }

    pub fn one(bits: u32) -> Self {
        Self { v: BigInt::one() << bits as usize, bits }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { v: (&self.v * &o.v) >> self.bits as usize, bits: self.bits }
    }

    pub fn div(&self, o: &Self) -> Self {
        Self { v: (&self.v << self.bits as usize) / &o.v, bits: self.bits }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { v: &self.v + &o.v, bits: self.bits }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { v: &self.v - &o.v, bits: self.bits }
    }

    pub fn div_int(&self, n: u64) -> Self {
        Self { v: &self.v / BigInt::from(n), bits: self.bits }
    }

    pub fn neg(&self) -> Self {
        Self { v: -&self.v, bits: self.bits }
    }

    pub fn is_negligible(&self, below_bits: u32) -> bool {
        self.v.abs().bits() < below_bits as u64
    }

    pub fn to_f64(&self) -> f64 {
        // keep 80 significant bits before the conversion
        let extra = self.v.bits().saturating_sub(80) as u32;
        let head = (&self.v >> extra as usize).to_f64().unwrap();
        head * 2f64.powi(extra as i32 - self.bits as i32)
    }
}

#[derive(Clone, Debug)]
pub struct FixedC {
    pub re: Fixed,
    pub im: Fixed,
}

impl FixedC {
    pub fn from_c64(z: C64, bits: u32) -> Self {
        Self { re: Fixed::from_f64(z.re, bits), im: Fixed::from_f64(z.im, bits) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, r: &Fixed) -> Self {
        Self { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn div_int(&self, n: u64) -> Self {
        Self { re: self.re.div_int(n), im: self.im.div_int(n) }
    }

    pub fn neg(&self) -> Self {
        Self { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Working precision for a Maclaurin series at |z|: the largest term is
/// about e^{|z|²}, and the result must keep well over 53 significant bits.
fn bits_for(abs_z: f64) -> u32 {
    200 + (abs_z * abs_z * std::f64::consts::LOG2_E).ceil() as u32
}

/// erf(z) = 2/√π Σ (-1)^n z^{2n+1} / (n! (2n+1)), summed exactly in fixed point.
pub fn erf_series(z: C64) -> FixedC {
    let bits = bits_for(z.norm());
    let zf = FixedC::from_c64(z, bits);
    let z2 = zf.mul(&zf).neg();
    let mut term = zf.clone();
    let mut sum = zf;
    let mut n: u64 = 0;
    loop {
        n += 1;
        term = term.mul(&z2).div_int(n);
        let add = term.div_int(2 * n + 1);
        sum = sum.add(&add);
        if (n as f64) > z.norm_sqr() + 10.0 && add.re.is_negligible(8) && add.im.is_negligible(8) {
            break;
        }
    }
    sum.scale(&Fixed::from_decimal(TWO_OVER_SQRT_PI, bits))
}

pub fn erf_reference(z: C64) -> C64 {
    erf_series(z).to_c64()
}

/// e^{x} for real x by its Taylor series.
pub fn exp_series(xf: &Fixed) -> Fixed {
    let bits = xf.bits;
    let x = xf.to_f64();
    let mut term = Fixed::one(bits);
    let mut sum = term.clone();
    let mut n: u64 = 0;
    loop {
        n += 1;
        term = term.mul(xf).div_int(n);
        sum = sum.add(&term);
        if (n as f64) > x.abs() + 10.0 && term.is_negligible(8) {
            break;
        }
    }
    sum
}

/// (e^{-s²} - √π s (1 - erf(s))) / (4π) for real s, the excitation
/// probability per unit ε0².
pub fn excitation_probability(s: f64) -> f64 {
    let bits = 400;
    let sf = Fixed::from_f64(s, bits);
    let erf = erf_series(C64::new(s, 0.0));
    let erf_s = Fixed { v: erf.re.v.clone() << (bits - erf.re.bits) as usize, bits };
    let erfc = Fixed::one(bits).sub(&erf_s);
    let gauss = exp_series(&sf.mul(&sf).neg());
    let sqrt_pi = Fixed::from_decimal(SQRT_PI, bits);
    let four_pi = Fixed::from_decimal(PI, bits).add(&Fixed::from_decimal(PI, bits));
    let four_pi = four_pi.add(&four_pi);
    gauss.sub(&sqrt_pi.mul(&sf).mul(&erfc)).div(&four_pi).to_f64()
}
