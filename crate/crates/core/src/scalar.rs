//! Exact Gaussian-rational scalars.
//!
//! Every coefficient the engine handles is a complex number whose real and
//! imaginary parts are arbitrary-precision rationals. Values are always kept
//! in lowest terms, so structural equality is numeric equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Binary operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussScalar {
    re: Rational,
    im: Rational,
}

impl GaussScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational::from_integer(n.into()), Rational::zero())
    }

    /// `re_num/re_den + (im_num/im_den) i`.
    pub fn from_ratios(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(Rational::new(re_num.into(), re_den.into()), Rational::new(im_num.into(), im_den.into()))
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2 as a rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Multiply by `(-1)^k` without a full multiplication.
    pub fn signed(self, negative: bool) -> Self {
        if negative {
            -self
        } else {
            self
        }
    }
}

pub fn arith(a: &GaussScalar, b: &GaussScalar, kind: ArithKind) -> Result<GaussScalar> {
    Ok(match kind {
        ArithKind::Add => a + b,
        ArithKind::Sub => a - b,
        ArithKind::Mul => a * b,
        ArithKind::Div => a.checked_div(b)?,
        ArithKind::Neg => -a.clone(),
    })
}

/// `(2i)^m`: the spinor supertrace of the top Clifford monomial in dimension 2m.
pub fn pow_two_i(m: u32) -> GaussScalar {
    // (2i)^m = 2^m * i^m, and i^m cycles through 1, i, -1, -i.
    let mag = Rational::from_integer(BigInt::from(1) << m as usize);
    match m % 4 {
        0 => GaussScalar::new(mag, Rational::zero()),
        1 => GaussScalar::new(Rational::zero(), mag),
        2 => GaussScalar::new(-mag, Rational::zero()),
        _ => GaussScalar::new(Rational::zero(), -mag),
    }
}

impl Default for GaussScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for GaussScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussScalar {
    fn from(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b GaussScalar> for &'a GaussScalar {
            type Output = GaussScalar;
            fn $method(self, rhs: &'b GaussScalar) -> GaussScalar {
                let f: fn(&GaussScalar, &GaussScalar) -> GaussScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $method(self, rhs: GaussScalar) -> GaussScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $method(self, rhs: &'b GaussScalar) -> GaussScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussScalar::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| GaussScalar::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussScalar::new(&a.re * &b.re, Rational::zero());
    }
    GaussScalar::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
});

impl Neg for GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar::new(-self.re, -self.im)
    }
}

impl Neg for &GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        -self.clone()
    }
}

impl AddAssign<&GaussScalar> for GaussScalar {
    fn add_assign(&mut self, rhs: &GaussScalar) {
        if rhs.is_zero() {
            return;
        }
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for GaussScalar {
    fn add_assign(&mut self, rhs: GaussScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&GaussScalar> for GaussScalar {
    fn sub_assign(&mut self, rhs: &GaussScalar) {
        if rhs.is_zero() {
            return;
        }
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl std::iter::Sum for GaussScalar {
    fn sum<I: Iterator<Item = GaussScalar>>(iter: I) -> Self {
        iter.fold(GaussScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

// ---------------------------------------------------------------------------
// Text forms

fn rational_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

impl fmt::Display for GaussScalar {
    /// Compact human form: `0`, `-3/2`, `2i`, `1-i`, `1/2+3/4i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_text = |im: &Rational| -> String {
            let mag = im.abs();
            if mag.is_one() {
                "i".to_string()
            } else {
                format!("{}i", rational_text(&mag))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", rational_text(&self.re)),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}", im_text(&self.im))
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{sign}{}", rational_text(&self.re), im_text(&self.im))
            }
        }
    }
}

impl fmt::Debug for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussScalar {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) form, optionally wrapped in
    /// parentheses: `1`, `-1/2`, `i`, `-2i`, `1+i`, `3/4-1/2i`.
    fn from_str(text: &str) -> Result<Self> {
        let err = || Error::ScalarParse(text.to_string());
        let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.starts_with('(') && s.ends_with(')') {
            s = s[1..s.len() - 1].to_string();
        }
        if s.is_empty() {
            return Err(err());
        }
        if let Some(body) = s.strip_suffix('i') {
            // Find the sign that separates the real part, skipping a leading sign.
            let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
            let (re_text, im_text) = match split {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let im_text = match im_text {
                "" | "+" => "1",
                "-" => "-1",
                t => t.strip_prefix('+').unwrap_or(t),
            };
            let re = parse_rational(re_text).ok_or_else(err)?;
            let im = parse_rational(im_text).ok_or_else(err)?;
            Ok(GaussScalar::new(re, im))
        } else {
            let re = parse_rational(&s).ok_or_else(err)?;
            Ok(GaussScalar::new(re, Rational::zero()))
        }
    }
}

impl Serialize for GaussScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("re", &rational_text(&self.re))?;
        map.serialize_entry("im", &rational_text(&self.im))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for GaussScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ScalarVisitor;

        impl<'de> Visitor<'de> for ScalarVisitor {
            type Value = GaussScalar;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str(r#"an object {"re": "p/q", "im": "p/q"}"#)
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<GaussScalar, A::Error> {
                let mut re = None;
                let mut im = None;
                while let Some(key) = map.next_key::<String>()? {
                    let slot = match key.as_str() {
                        "re" => &mut re,
                        "im" => &mut im,
                        other => return Err(de::Error::unknown_field(other, &["re", "im"])),
                    };
                    if slot.is_some() {
                        return Err(de::Error::custom(format!("duplicate field {key:?}")));
                    }
                    let text: String = map.next_value()?;
                    let value =
                        parse_rational(&text).ok_or_else(|| de::Error::custom(format!("bad rational {text:?}")))?;
                    *slot = Some(value);
                }
                let re = re.ok_or_else(|| de::Error::missing_field("re"))?;
                let im = im.ok_or_else(|| de::Error::missing_field("im"))?;
                Ok(GaussScalar::new(re, im))
            }
        }

        deserializer.deserialize_map(ScalarVisitor)
    }
}
