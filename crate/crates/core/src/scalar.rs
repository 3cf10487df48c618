//! Exact Gaussian rationals.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Rational number in lowest terms with a positive denominator.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Q,
    pub im: Q,
}

impl Scalar {
    pub fn new(re: Q, im: Q) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar { re: Q::zero(), im: Q::zero() }
    }

    pub fn one() -> Self {
        Scalar { re: Q::one(), im: Q::zero() }
    }

    pub fn i() -> Self {
        Scalar { re: Q::zero(), im: Q::one() }
    }

    pub fn int(n: i64) -> Self {
        Scalar { re: qi(n), im: Q::zero() }
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Scalar { re: q(n, d), im: Q::zero() }
    }

    pub fn gauss(re: Q, im: Q) -> Self {
        Scalar { re, im }
    }

    pub fn from_q(re: Q) -> Self {
        Scalar { re, im: Q::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|², always a non-negative rational.
    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Integer value when the scalar is a real integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.im.is_zero() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on (re, im); only used to give maps a canonical order.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        Scalar { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        Scalar { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_q(&self.re * &o.re);
        }
        Scalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Div for Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like the integer types.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Scalar) -> Scalar {
        let inv = o.inv().expect("division of a Scalar by zero");
        &self * &inv
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |x: &Q| -> String {
            if x.is_one() {
                "i".into()
            } else {
                alloc::format!("{}i", fmt_q(x))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_q(&self.re)),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", im_part(&-self.im.clone()))
                } else {
                    write!(f, "{}", im_part(&self.im))
                }
            }
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}", fmt_q(&self.re), im_part(&-self.im.clone()))
                } else {
                    write!(f, "{}+{}", fmt_q(&self.re), im_part(&self.im))
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Parses `p/q`, `p/q+r/s i`, `r/s i`, `i`, `-i`, `3-2i`. Whitespace is ignored.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(alloc::format!("not a Gaussian rational: {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not the leading one
            let bytes = body.as_bytes();
            let mut cut = None;
            for k in (1..bytes.len()).rev() {
                if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                    cut = Some(k);
                    break;
                }
            }
            let (re_s, im_s) = match cut {
                Some(k) => (&body[..k], &body[k..]),
                None => ("", body),
            };
            let im = match im_s {
                "" | "+" => Q::one(),
                "-" => -Q::one(),
                x => parse_q(x.strip_prefix('+').unwrap_or(x)).ok_or_else(bad)?,
            };
            let re = if re_s.is_empty() { Q::zero() } else { parse_q(re_s).ok_or_else(bad)? };
            Ok(Scalar { re, im })
        } else {
            Ok(Scalar::from_q(parse_q(&t).ok_or_else(bad)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn parse_and_print_roundtrip() {
        for x in ["0", "1", "-3/4", "i", "-i", "1/2+1/3i", "2-i", "-5/6i", "7/2-2/3i"] {
            assert_eq!(s(x).to_string(), x);
        }
        assert_eq!(s("1/2 + 1/3 i"), s("1/2+1/3i"));
        assert_eq!(s("2/4"), Scalar::rat(1, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn field_ops() {
        let a = s("1+2i");
        let b = s("3-i");
        assert_eq!(&a * &b, s("5+5i"));
        assert_eq!(a.clone() / b.clone(), s("1/10+7/10i"));
        assert_eq!(&(a.clone() / b.clone()) * &b, a);
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::int(-1));
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(a.conj(), s("1-2i"));
    }

    #[test]
    fn lowest_terms() {
        let x = Scalar::rat(6, -4);
        assert_eq!(x.re.numer(), &BigInt::from(-3));
        assert_eq!(x.re.denom(), &BigInt::from(2));
    }
}
