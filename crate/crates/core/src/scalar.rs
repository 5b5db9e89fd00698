//! Exact Gaussian rationals `a + b i` with `a, b` in Q.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

/// An element of the field Q(i). Both parts are kept in lowest terms by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

pub type Qi = GaussianRational;

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// `a + b i` from two integer pairs `(num, den)`.
    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `a^2 + b^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in Q(i)");
        let n = self.norm_sqr();
        Self::new(&self.re / &n, -(&self.im / &n))
    }

    /// True when the number should be printed with a leading minus sign,
    /// i.e. its first nonzero part (real, then imaginary) is negative.
    pub fn is_sign_negative(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }
}

impl<'a> Add<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn add(self, rhs: &Qi) -> Qi {
        Qi::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn sub(self, rhs: &Qi) -> Qi {
        Qi::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn mul(self, rhs: &Qi) -> Qi {
        Qi::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a Qi> for &'a Qi {
    type Output = Qi;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Qi) -> Qi {
        self * &rhs.inv()
    }
}

impl Neg for &Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Qi> for Qi {
            type Output = Qi;
            fn $method(self, rhs: Qi) -> Qi {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Qi> for Qi {
            type Output = Qi;
            fn $method(self, rhs: &Qi) -> Qi {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Qi> for Qi {
    fn add_assign(&mut self, rhs: &Qi) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Qi> for Qi {
    fn sub_assign(&mut self, rhs: &Qi) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Qi> for Qi {
    fn mul_assign(&mut self, rhs: &Qi) {
        *self = &*self * rhs;
    }
}

impl Sum for Qi {
    fn sum<I: Iterator<Item = Qi>>(iter: I) -> Qi {
        iter.fold(Qi::zero(), |acc, x| acc + x)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Prints `a/b`, `c/d*i`, or `a/b+c/d*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im = if self.im.abs().is_one() {
            if self.im.is_negative() { "-i".to_string() } else { "i".to_string() }
        } else {
            format!("{}*i", fmt_rat(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if self.im.is_negative() {
            write!(f, "{}{}", fmt_rat(&self.re), im)
        } else {
            write!(f, "{}+{}", fmt_rat(&self.re), im)
        }
    }
}
