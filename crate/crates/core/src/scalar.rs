//! Extended-precision reals backed by MPFR.
//!
//! Every [`Scalar`] carries its own binary precision. Binary operations
//! round their result to the larger of the two operand precisions, so a
//! computation seeded at one [`Precision`] stays at that precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Working precision in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT_BITS: u32 = 256;

    /// Panics if `bits < 2`.
    pub fn new(bits: u32) -> Self {
        assert!(bits >= 2, "precision must be at least 2 bits");
        Precision(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Sign tolerance τ: 1e-30 at 256 bits, scaled linearly in the exponent.
    pub fn tolerance(self) -> Scalar {
        self.scaled_power_of_ten(-30.0)
    }

    /// Root bracket width ε_root: 1e-40 at 256 bits, scaled like [`Self::tolerance`].
    pub fn root_width(self) -> Scalar {
        self.scaled_power_of_ten(-40.0)
    }

    /// Smallest |det(A)| accepted as nonsingular: 2^(-bits/4).
    pub fn det_threshold(self) -> Scalar {
        let exp = -(i32::try_from(self.0 / 4).unwrap_or(i32::MAX));
        Scalar(Float::with_val(self.0, Float::i_exp(1, exp)))
    }

    fn scaled_power_of_ten(self, exp_at_256: f64) -> Scalar {
        thread_local! {
            static CACHE: RefCell<HashMap<(u32, u64), Scalar>> = RefCell::new(HashMap::new());
        }
        let key = (self.0, exp_at_256.to_bits());
        CACHE.with(|cache| {
            cache
                .borrow_mut()
                .entry(key)
                .or_insert_with(|| {
                    let exp = exp_at_256 * f64::from(self.0) / 256.0;
                    let ten = Float::with_val(self.0, 10);
                    Scalar(ten.pow(Float::with_val(self.0, exp)))
                })
                .clone()
        })
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_BITS)
    }
}

/// A real number at a fixed binary precision.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Scalar(Float);

impl Scalar {
    pub fn zero(prec: Precision) -> Self {
        Scalar(Float::new(prec.0))
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        Scalar(Float::with_val(prec.0, v))
    }

    /// Exact conversion of the binary value of `v` (then rounded to `prec`).
    pub fn from_f64(v: f64, prec: Precision) -> Self {
        Scalar(Float::with_val(prec.0, v))
    }

    /// `num / den`, correctly rounded.
    pub fn from_ratio(num: i64, den: i64, prec: Precision) -> Self {
        Self::from_i64(num, prec) / Self::from_i64(den, prec)
    }

    /// Parse a decimal literal such as `-0.417791` or `1e-3`, rounding once
    /// to `prec`. Returns `None` on malformed input.
    pub fn parse(text: &str, prec: Precision) -> Option<Self> {
        let parsed = Float::parse(text.trim()).ok()?;
        let value = Float::with_val(prec.0, parsed);
        value.is_finite().then_some(Scalar(value))
    }

    pub fn pi(prec: Precision) -> Self {
        Scalar(Float::with_val(prec.0, Constant::Pi))
    }

    pub fn precision(&self) -> Precision {
        Precision(self.0.prec())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Self {
        Scalar(self.0.clone().sqrt())
    }

    pub fn cos(&self) -> Self {
        Scalar(self.0.clone().cos())
    }

    pub fn powi(&self, n: i32) -> Self {
        Scalar(self.0.clone().pow(n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    /// Sign classification against `tol`: `Less` below `-tol`, `Greater`
    /// above `tol`, `Equal` otherwise.
    pub fn sign_with(&self, tol: &Scalar) -> Ordering {
        if self.0 > tol.0 {
            Ordering::Greater
        } else if self.0 < -tol.0.clone() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    /// Exact sign (`Equal` only for zero).
    pub fn signum(&self) -> Ordering {
        self.0.cmp0().unwrap_or(Ordering::Equal)
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// `self += a * b` without a temporary.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        self.0 += &a.0 * &b.0;
    }

    /// `self -= a * b` without a temporary.
    pub fn sub_mul(&mut self, a: &Scalar, b: &Scalar) {
        self.0 -= &a.0 * &b.0;
    }

    pub fn cmp_abs(&self, other: &Scalar) -> Ordering {
        self.0.cmp_abs(&other.0).unwrap_or(Ordering::Equal)
    }

    /// Decimal rendering with `digits` significant digits.
    ///
    /// Fixed notation is used when the decimal exponent lies in
    /// `-5..digits`, scientific notation otherwise.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.0.is_zero() {
            return "0".to_owned();
        }
        let sci = format!("{:.*e}", digits, self.0);
        let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
        let exp: i64 = exp.parse().expect("decimal exponent");
        let (sign, mantissa) = match mantissa.strip_prefix('-') {
            Some(m) => ("-", m),
            None => ("", mantissa),
        };
        let sig: String = mantissa.chars().filter(char::is_ascii_digit).collect();
        if exp < -5 || exp >= digits as i64 {
            return format!("{sign}{mantissa}e{exp}");
        }
        if exp < 0 {
            let zeros = "0".repeat((-exp - 1) as usize);
            format!("{sign}0.{zeros}{sig}")
        } else {
            let split = exp as usize + 1;
            if split >= sig.len() {
                format!("{sign}{sig}")
            } else {
                format!("{sign}{}.{}", &sig[..split], &sig[split..])
            }
        }
    }

    /// Total order for sorting; NaN never arises from the public constructors.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.20}", self.0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{:.*}", p, self.0),
            None => write!(f, "{}", self.0),
        }
    }
}

impl PartialEq<f64> for Scalar {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Scalar {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

fn wider(a: &Float, b: &Float) -> u32 {
    a.prec().max(b.prec())
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(Float::with_val(
                    wider(&self.0, &rhs.0),
                    (&self.0).$method(&rhs.0),
                ))
            }
        }

        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(mut self, rhs: &Scalar) -> Scalar {
                self.$assign_method(rhs);
                self
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(mut self, rhs: Scalar) -> Scalar {
                self.$assign_method(&rhs);
                self
            }
        }

        impl $assign_trait<&Scalar> for Scalar {
            fn $assign_method(&mut self, rhs: &Scalar) {
                if rhs.0.prec() > self.0.prec() {
                    self.0.set_prec(rhs.0.prec());
                }
                self.0.$assign_method(&rhs.0);
            }
        }

        impl $assign_trait<Scalar> for Scalar {
            fn $assign_method(&mut self, rhs: Scalar) {
                self.$assign_method(&rhs);
            }
        }
    };
}

binary_op!(Add, add, AddAssign, add_assign);
binary_op!(Sub, sub, SubAssign, sub_assign);
binary_op!(Mul, mul, MulAssign, mul_assign);
binary_op!(Div, div, DivAssign, div_assign);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0.clone())
    }
}
