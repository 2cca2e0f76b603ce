//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Every quantity in this crate is computed over `Rat` (= `BigRational`) or
//! over the field `Gq` of Gaussian rationals a + b·i.  No floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

pub type Rat = BigRational;

#[inline]
fn r0() -> Rat {
    <Rat as Zero>::zero()
}

#[inline]
fn r1() -> Rat {
    <Rat as One>::one()
}

#[inline]
fn ris0(r: &Rat) -> bool {
    <Rat as Zero>::is_zero(r)
}

/// Rational from an integer.
pub fn rint(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational p/q.
pub fn rq(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse "p/q" or "p".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer `{t}`: {e}")))
    };
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_int(p)?;
        let q = parse_int(q)?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        Ok(BigRational::new(p, q))
    } else {
        Ok(BigRational::from_integer(parse_int(s)?))
    }
}

/// Render as "p/q", or "p" when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &ns * &ns == *r.numer() && &ds * &ds == *r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Gaussian rational a + b·i.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gq {
    pub re: Rat,
    pub im: Rat,
}

impl Gq {
    pub fn new(re: Rat, im: Rat) -> Self {
        Gq { re, im }
    }
    pub fn from_rat(r: Rat) -> Self {
        Gq { re: r, im: r0() }
    }
    pub fn zero() -> Self {
        Gq::from_rat(r0())
    }
    pub fn one() -> Self {
        Gq::from_rat(r1())
    }
    /// The imaginary unit.
    pub fn i() -> Self {
        Gq { re: r0(), im: r1() }
    }
    pub fn is_zero(&self) -> bool {
        ris0(&self.re) && ris0(&self.im)
    }
    pub fn is_real(&self) -> bool {
        ris0(&self.im)
    }
    pub fn conj(&self) -> Self {
        Gq { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn add(&self, o: &Self) -> Self {
        Gq { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    pub fn sub(&self, o: &Self) -> Self {
        Gq { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    pub fn neg(&self) -> Self {
        Gq { re: -self.re.clone(), im: -self.im.clone() }
    }
    pub fn mul(&self, o: &Self) -> Self {
        Gq {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    /// |z|² as a rational.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Gq { re: &self.re / &n, im: -(&self.im / &n) })
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if ris0(&self.im) {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        if ris0(&self.re) {
            return write!(f, "{}i", fmt_rat(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}{}i", fmt_rat(&self.re), fmt_rat(&self.im))
        } else {
            write!(f, "{}+{}i", fmt_rat(&self.re), fmt_rat(&self.im))
        }
    }
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Field operations needed by the generic linear algebra kernel.
pub trait Scalar: Clone + PartialEq + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;
}

impl Scalar for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if <Rat as Zero>::is_zero(self) {
            None
        } else {
            Some(r1() / self.clone())
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Scalar for Gq {
    fn zero() -> Self {
        Gq::zero()
    }
    fn one() -> Self {
        Gq::one()
    }
    fn is_zero(&self) -> bool {
        Gq::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Gq::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Gq::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Gq::mul(self, o)
    }
    fn neg(&self) -> Self {
        Gq::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        Gq::inv(self)
    }
    fn conj(&self) -> Self {
        Gq::conj(self)
    }
    fn from_rat(r: &Rat) -> Self {
        Gq::from_rat(r.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/4").unwrap(), rq(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), rint(-7));
        assert_eq!(fmt_rat(&rq(-6, 4)), "-3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn gaussian_field() {
        let z = Gq::new(rq(1, 2), rint(3));
        let w = z.mul(&z.inv().unwrap());
        assert_eq!(w, Gq::one());
        assert_eq!(Gq::i().mul(&Gq::i()), Gq::one().neg());
        assert_eq!(z.mul(&z.conj()), Gq::from_rat(z.norm_sq()));
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(rat_sqrt(&rq(9, 4)), Some(rq(3, 2)));
        assert_eq!(rat_sqrt(&rint(2)), None);
        assert_eq!(rat_sqrt(&rint(0)), Some(rint(0)));
    }
}
