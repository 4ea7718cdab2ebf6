//! Minimal arbitrary-precision complex arithmetic on top of MPFR floats.
//!
//! Only the operations the saddle-point evaluators need are provided:
//! field operations, integer powers, `exp`, principal `ln`, and absolute
//! value. Both components of a [`BigComplex`] always carry the same
//! precision, established at construction.

use rug::Float;

/// A complex number with arbitrary-precision real and imaginary parts of
/// equal precision.
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    re: Float,
    im: Float,
}

impl BigComplex {
    /// Builds from parts; the higher of the two precisions wins and the
    /// other component is re-rounded to it.
    pub fn new(re: Float, im: Float) -> Self {
        let p = re.prec().max(im.prec());
        Self {
            re: Float::with_val(p, re),
            im: Float::with_val(p, im),
        }
    }

    /// Real number as a complex value at precision `prec`.
    pub fn from_real(prec: u32, re: &Float) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::new(prec),
        }
    }

    /// From `f64` parts at precision `prec` (handy in tests and grids).
    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    /// Zero at precision `prec`.
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    /// Real part.
    pub fn re(&self) -> &Float {
        &self.re
    }

    /// Imaginary part.
    pub fn im(&self) -> &Float {
        &self.im
    }

    /// Component precision.
    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// The same value re-rounded to precision `prec`.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    /// Sum.
    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }

    /// Difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }

    /// Product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let re = Float::with_val(p, &self.re * &rhs.re) - Float::with_val(p, &self.im * &rhs.im);
        let im = Float::with_val(p, &self.re * &rhs.im) + Float::with_val(p, &self.im * &rhs.re);
        Self {
            re: Float::with_val(p, re),
            im: Float::with_val(p, im),
        }
    }

    /// Quotient `self / rhs` via the conjugate formula.
    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let den = rhs.norm_sqr();
        let re = Float::with_val(p, &self.re * &rhs.re) + Float::with_val(p, &self.im * &rhs.im);
        let im = Float::with_val(p, &self.im * &rhs.re) - Float::with_val(p, &self.re * &rhs.im);
        Self {
            re: Float::with_val(p, re / &den),
            im: Float::with_val(p, im / &den),
        }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self {
            re: Float::with_val(self.prec(), -&self.re),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Self {
        let p = self.prec();
        let den = self.norm_sqr();
        let re = Float::with_val(p, &self.re / &den);
        let im = -Float::with_val(p, &self.im / &den);
        Self { re, im }
    }

    /// Scale by a real factor.
    pub fn scale(&self, factor: &Float) -> Self {
        let p = self.prec().max(factor.prec());
        Self {
            re: Float::with_val(p, &self.re * factor),
            im: Float::with_val(p, &self.im * factor),
        }
    }

    /// Integer power (negative exponents go through [`Self::recip`]).
    pub fn powi(&self, k: i32) -> Self {
        if k < 0 {
            return self.recip().powi(-k);
        }
        let mut acc = Self {
            re: Float::with_val(self.prec(), 1u32),
            im: Float::new(self.prec()),
        };
        let mut base = self.clone();
        let mut e = k as u32;
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

    /// `|self|^2` as a float.
    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }

    /// `|self|`, computed stably via `hypot`.
    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// Complex exponential.
    pub fn exp(&self) -> Self {
        let p = self.prec();
        let mag = self.re.clone().exp();
        let (sin, cos) = self.im.clone().sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &mag * &cos),
            im: Float::with_val(p, &mag * &sin),
        }
    }

    /// Principal branch of the complex logarithm (imaginary part in
    /// `(-pi, pi]`).
    ///
    /// # Panics
    ///
    /// Panics on zero input (log of zero has no finite value).
    pub fn ln(&self) -> Self {
        assert!(
            self.re.cmp0() != Some(std::cmp::Ordering::Equal)
                || self.im.cmp0() != Some(std::cmp::Ordering::Equal),
            "logarithm of zero"
        );
        let p = self.prec();
        let re = self.abs().ln();
        let im = self.im.clone().atan2(&self.re);
        Self {
            re: Float::with_val(p, re),
            im: Float::with_val(p, im),
        }
    }
}

impl std::fmt::Display for BigComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let im_sign = if self.im.is_sign_negative() { "-" } else { "+" };
        let im_abs = self.im.clone().abs();
        write!(f, "{} {} {}i", self.re, im_sign, im_abs)
    }
}
