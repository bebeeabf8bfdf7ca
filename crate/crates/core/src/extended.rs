//! Minimal extended-precision positive floats for series summation.
//!
//! The Mittag-Leffler series for λ < 0 cancels catastrophically: terms grow
//! many orders of magnitude past the final value before the signs collapse
//! them. Summing in f64 loses the answer entirely once the peak term exceeds
//! ~1e16 times the result, which already happens at desk horizons. Terms
//! here are exact products of linear factors, so evaluating them with a wide
//! mantissa recovers every digit; the working precision is chosen by the
//! caller and can be re-chosen once the peak magnitude is known.

use num_bigint::BigUint;

/// A nonnegative extended-precision float: `mant * 2^exp` with `mant`
/// trimmed to the caller's working precision. Zero is `mant == 0`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct PosBig {
    mant: BigUint,
    exp: i64,
}

/// Splits `a * b` into an exact (hi, lo) pair (hi = rounded product,
/// lo = exact remainder via fused multiply-add).
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let hi = a * b;
    let lo = a.mul_add(b, -hi);
    (hi, lo)
}

impl PosBig {
    pub fn zero() -> Self {
        PosBig { mant: BigUint::ZERO, exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.mant == BigUint::ZERO
    }

    /// Exact conversion; `x` must be finite and nonnegative.
    pub fn from_f64(x: f64) -> Self {
        assert!(x >= 0.0 && x.is_finite(), "PosBig::from_f64({x})");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074) // subnormal
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        PosBig { mant: BigUint::from(mant), exp }
    }

    fn trim(&mut self, prec: u64) {
        let bits = self.mant.bits();
        if bits > prec {
            let shift = bits - prec;
            self.mant >>= shift;
            self.exp += shift as i64;
        }
    }

    /// log2 of the value, within one unit; i64::MIN for zero.
    pub fn log2_mag(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.exp + self.mant.bits() as i64 - 1
    }

    pub fn mul_assign(&mut self, other: &PosBig, prec: u64) {
        if self.is_zero() || other.is_zero() {
            *self = Self::zero();
            return;
        }
        self.mant *= &other.mant;
        self.exp += other.exp;
        self.trim(prec);
    }

    pub fn mul_f64(&mut self, x: f64, prec: u64) {
        let other = Self::from_f64(x);
        self.mul_assign(&other, prec);
    }

    /// Division by a small positive integer, with a pre-shift so the
    /// quotient keeps full precision.
    pub fn div_u64(&mut self, d: u64, prec: u64) {
        assert!(d > 0);
        if self.is_zero() {
            return;
        }
        self.mant <<= 64;
        self.exp -= 64;
        self.mant /= BigUint::from(d);
        self.trim(prec);
    }

    /// Aligns two values to a common exponent by left-shifting mantissas
    /// (exact). Returns the aligned mantissas and the common exponent.
    fn aligned(&self, other: &PosBig, prec: u64) -> (BigUint, BigUint, i64) {
        debug_assert!(!self.is_zero() && !other.is_zero());
        // cap the spread so a negligible operand cannot blow up the shift
        let spread = (prec + 64) as i64;
        let (mut a, mut ea) = (self.mant.clone(), self.exp);
        let (mut b, mut eb) = (other.mant.clone(), other.exp);
        if ea - eb > spread + b.bits() as i64 {
            // other is below self's precision entirely
            b = BigUint::ZERO;
            eb = ea;
        } else if eb - ea > spread + a.bits() as i64 {
            a = BigUint::ZERO;
            ea = eb;
        }
        let common = ea.min(eb);
        if ea > common {
            a <<= (ea - common) as u64;
        }
        if eb > common {
            b <<= (eb - common) as u64;
        }
        (a, b, common)
    }

    pub fn add_assign(&mut self, other: &PosBig, prec: u64) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        let (a, b, common) = self.aligned(other, prec);
        self.mant = a + b;
        self.exp = common;
        self.trim(prec);
    }

    /// |self − other| and the sign of (self − other).
    pub fn sub_abs(&self, other: &PosBig, prec: u64) -> (PosBig, i8) {
        if other.is_zero() {
            return (self.clone(), if self.is_zero() { 0 } else { 1 });
        }
        if self.is_zero() {
            return (other.clone(), -1);
        }
        let (a, b, common) = self.aligned(other, prec);
        let (mant, sign) = match a.cmp(&b) {
            std::cmp::Ordering::Greater => (a - b, 1),
            std::cmp::Ordering::Less => (b - a, -1),
            std::cmp::Ordering::Equal => (BigUint::ZERO, 0),
        };
        let mut out = PosBig { mant, exp: common };
        out.trim(prec);
        (out, sign)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (top, scale) = if bits > 64 {
            let shift = bits - 64;
            let top: BigUint = &self.mant >> shift;
            (top.iter_u64_digits().next().unwrap_or(0), self.exp + shift as i64)
        } else {
            (self.mant.iter_u64_digits().next().unwrap_or(0), self.exp)
        };
        let mut v = top as f64;
        // apply 2^scale in safe chunks
        let mut e = scale;
        while e > 600 {
            v *= 2f64.powi(600);
            e -= 600;
            if v.is_infinite() {
                return v;
            }
        }
        while e < -600 {
            v *= 2f64.powi(-600);
            e += 600;
            if v == 0.0 {
                return 0.0;
            }
        }
        v * 2f64.powi(e as i32)
    }
}
