//! Exact n-adic rationals `p / n^e`, digit words and points of the doubled
//! Cantor set.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::One;

use crate::error::Error;

/// Exact general rational, used where values need not be n-adic
/// (fixed points, surface syntax).
pub type Rational = num_rational::Ratio<i128>;

/// The base `n >= 2` of the n-adic system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Base(u32);

impl Base {
    pub fn new(n: u32) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidBase(n));
        }
        Ok(Base(n))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `n^e` as an exact integer. Panics if the power does not fit in `i128`.
    pub fn pow(self, e: u32) -> i128 {
        (self.0 as i128)
            .checked_pow(e)
            .unwrap_or_else(|| panic!("n-adic overflow: {}^{} exceeds i128", self.0, e))
    }

    /// `n^j` for any integer `j` as an exact rational.
    pub fn pow_signed(self, j: i32) -> Rational {
        if j >= 0 {
            Rational::from_integer(self.pow(j as u32))
        } else {
            Rational::new(1, self.pow(j.unsigned_abs()))
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[inline]
pub(crate) fn assert_same_base(a: Base, b: Base) {
    assert!(a == b, "mixing n-adic bases {} and {}", a, b);
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("n-adic overflow: value exceeds i128")
}

/// An n-adic rational `num / n^exp`, always kept with minimal exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NAdic {
    num: i128,
    exp: u32,
    base: Base,
}

impl NAdic {
    pub fn new(num: i128, exp: u32, base: Base) -> Self {
        let mut x = NAdic { num, exp, base };
        x.canonicalize();
        x
    }

    pub fn zero(base: Base) -> Self {
        NAdic {
            num: 0,
            exp: 0,
            base,
        }
    }

    pub fn one(base: Base) -> Self {
        NAdic {
            num: 1,
            exp: 0,
            base,
        }
    }

    pub fn integer(v: i128, base: Base) -> Self {
        NAdic {
            num: v,
            exp: 0,
            base,
        }
    }

    /// Converts an exact rational, returning `None` unless its reduced
    /// denominator divides some power of `n`.
    pub fn from_rational(q: Rational, base: Base) -> Option<Self> {
        let n = base.get() as i128;
        let mut den = *q.denom();
        let mut exp = 0u32;
        while den != 1 {
            let g = den.gcd(&n);
            if g == 1 {
                return None;
            }
            den /= g;
            exp += 1;
        }
        let scale = base.pow(exp) / *q.denom();
        Some(NAdic::new(checked(q.numer().checked_mul(scale)), exp, base))
    }

    fn canonicalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let n = self.base.get() as i128;
        while self.exp > 0 && self.num % n == 0 {
            self.num /= n;
            self.exp -= 1;
        }
    }

    #[inline]
    pub fn numerator(&self) -> i128 {
        self.num
    }

    #[inline]
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    #[inline]
    pub fn base(&self) -> Base {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.num, self.base.pow(self.exp))
    }

    /// Multiplies by `n^j`, `j` of either sign.
    pub fn scale_pow(&self, j: i32) -> Self {
        if j <= 0 {
            let e = self
                .exp
                .checked_add(j.unsigned_abs())
                .expect("n-adic overflow: exponent");
            // keep the numerator small enough to stay representable
            let _ = self.base.pow(e);
            NAdic::new(self.num, e, self.base)
        } else {
            let j = j as u32;
            if j <= self.exp {
                NAdic::new(self.num, self.exp - j, self.base)
            } else {
                let f = self.base.pow(j - self.exp);
                NAdic::new(checked(self.num.checked_mul(f)), 0, self.base)
            }
        }
    }

    /// Numerators of `self` and `other` over the common denominator `n^e`.
    fn aligned(&self, other: &Self) -> (i128, i128, u32) {
        assert_same_base(self.base, other.base);
        let e = self.exp.max(other.exp);
        let a = checked(self.num.checked_mul(self.base.pow(e - self.exp)));
        let b = checked(other.num.checked_mul(self.base.pow(e - other.exp)));
        (a, b, e)
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Wire form `p/n^e`, e.g. `3/2^2`.
    pub fn to_wire(&self) -> alloc::string::String {
        alloc::format!("{}/{}^{}", self.num, self.base, self.exp)
    }

    /// Parses the wire form `p/n^e`. The base written in the string must be
    /// `base`; non-minimal exponents are accepted and reduced.
    pub fn from_wire(s: &str, base: Base) -> Result<Self, Error> {
        let bad = || Error::Malformed(alloc::format!("expected p/n^e, got {:?}", s));
        let (p, rest) = s.trim().split_once('/').ok_or_else(bad)?;
        let (n, e) = rest.split_once('^').ok_or_else(bad)?;
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        let e: u32 = e.trim().parse().map_err(|_| bad())?;
        if n != base.get() {
            return Err(Error::BaseMismatch {
                expected: base.get(),
                found: n,
            });
        }
        if (n as i128).checked_pow(e).is_none() {
            return Err(bad());
        }
        Ok(NAdic::new(p, e, base))
    }
}

impl PartialOrd for NAdic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NAdic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.base != other.base {
            return self
                .to_rational()
                .cmp(&other.to_rational())
                .then(self.base.cmp(&other.base));
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl Add for NAdic {
    type Output = NAdic;
    fn add(self, rhs: NAdic) -> NAdic {
        let (a, b, e) = self.aligned(&rhs);
        NAdic::new(checked(a.checked_add(b)), e, self.base)
    }
}

impl Sub for NAdic {
    type Output = NAdic;
    fn sub(self, rhs: NAdic) -> NAdic {
        self + (-rhs)
    }
}

impl Neg for NAdic {
    type Output = NAdic;
    fn neg(self) -> NAdic {
        NAdic {
            num: checked(self.num.checked_neg()),
            ..self
        }
    }
}

/// Plain rational notation in lowest terms: `0`, `-1`, `3/4`.
impl fmt::Display for NAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.to_rational(), f)
    }
}

pub(crate) fn fmt_rational(q: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// A finite word over the digit alphabet `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    digits: Vec<u32>,
    base: Base,
}

impl Word {
    pub fn new(digits: Vec<u32>, base: Base) -> Result<Self, Error> {
        if let Some(&d) = digits.iter().find(|&&d| d >= base.get()) {
            return Err(Error::DigitOutOfRange {
                digit: d,
                base: base.get(),
            });
        }
        Ok(Word { digits, base })
    }

    pub fn empty(base: Base) -> Self {
        Word {
            digits: Vec::new(),
            base,
        }
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        assert_same_base(self.base, other.base);
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Word {
            digits,
            base: self.base,
        }
    }

    /// If `self` is a prefix of `other`, the remaining suffix.
    pub fn strip_prefix_of(&self, other: &Word) -> Option<Word> {
        other
            .digits
            .strip_prefix(self.digits.as_slice())
            .map(|rest| Word {
                digits: rest.to_vec(),
                base: self.base,
            })
    }

    /// `s(λ) = λ₁/n + λ₂/n² + … + λ_m/n^m`.
    pub fn value(&self) -> NAdic {
        let n = self.base.get() as i128;
        let num = self.digits.iter().fold(0i128, |acc, &d| {
            checked(checked(acc.checked_mul(n)).checked_add(d as i128))
        });
        NAdic::new(num, self.digits.len() as u32, self.base)
    }
}

/// Which copy of a doubled n-adic point is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Minus,
    Plus,
    /// The literal endpoints `0` and `1`, which are not doubled.
    Endpoint,
}

/// A point of the doubled Cantor set with n-adic coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    value: NAdic,
    side: Side,
}

impl Point {
    pub fn new(value: NAdic, side: Side) -> Result<Self, Error> {
        let zero = NAdic::zero(value.base());
        let one = NAdic::one(value.base());
        if value < zero || value > one {
            return Err(Error::PointOutOfRange(value.to_wire()));
        }
        let is_end = value == zero || value == one;
        if is_end != (side == Side::Endpoint) {
            return Err(Error::PointSide(value.to_wire()));
        }
        Ok(Point { value, side })
    }

    pub fn minus(value: NAdic) -> Result<Self, Error> {
        Point::new(value, Side::Minus)
    }

    pub fn plus(value: NAdic) -> Result<Self, Error> {
        Point::new(value, Side::Plus)
    }

    /// First point of a component starting at `value`: `value⁺`, or `0`.
    pub fn start(value: NAdic) -> Self {
        Point::normalized(value, true)
    }

    /// Last point of a component ending at `value`: `value⁻`, or `1`.
    pub fn end(value: NAdic) -> Self {
        Point::normalized(value, false)
    }

    pub fn zero(base: Base) -> Self {
        Point {
            value: NAdic::zero(base),
            side: Side::Endpoint,
        }
    }

    pub fn one(base: Base) -> Self {
        Point {
            value: NAdic::one(base),
            side: Side::Endpoint,
        }
    }

    /// Builds a point from a value and a side preference, collapsing to the
    /// literal endpoint at 0 or 1.
    pub(crate) fn normalized(value: NAdic, plus_like: bool) -> Self {
        let base = value.base();
        if value == NAdic::zero(base) || value == NAdic::one(base) {
            Point {
                value,
                side: Side::Endpoint,
            }
        } else {
            Point {
                value,
                side: if plus_like { Side::Plus } else { Side::Minus },
            }
        }
    }

    pub fn value(&self) -> NAdic {
        self.value
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Literal 0 sits on the right of its coordinate, literal 1 on the left.
    pub fn is_plus_like(&self) -> bool {
        match self.side {
            Side::Plus => true,
            Side::Minus => false,
            Side::Endpoint => self.value.is_zero(),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Endpoint => write!(f, "{}", self.value),
            Side::Minus => write!(f, "{}-", self.value),
            Side::Plus => write!(f, "{}+", self.value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u32) -> Base {
        Base::new(n).unwrap()
    }

    fn word(n: u32, d: &[u32]) -> Word {
        Word::new(d.to_vec(), b(n)).unwrap()
    }

    #[test]
    fn word_values() {
        assert_eq!(word(2, &[1, 0, 1]).value(), NAdic::new(5, 3, b(2)));
        assert_eq!(word(3, &[]).value(), NAdic::zero(b(3)));
        assert_eq!(word(3, &[2, 1]).value(), NAdic::new(7, 2, b(3)));
    }

    #[test]
    fn canonical_exponent_is_minimal() {
        let x = NAdic::new(12, 3, b(2));
        assert_eq!((x.numerator(), x.exponent()), (3, 1));
        let z = NAdic::new(0, 7, b(5));
        assert_eq!((z.numerator(), z.exponent()), (0, 0));
    }

    #[test]
    fn scale_and_compare() {
        let x = NAdic::new(3, 2, b(2));
        assert_eq!(x.scale_pow(2), NAdic::integer(3, b(2)));
        assert_eq!(x.scale_pow(3), NAdic::integer(6, b(2)));
        assert_eq!(x.scale_pow(-1), NAdic::new(3, 3, b(2)));
        assert!(NAdic::new(1, 1, b(2)) < NAdic::new(3, 2, b(2)));
        assert_eq!(
            NAdic::new(1, 1, b(2)) + NAdic::new(1, 2, b(2)),
            NAdic::new(3, 2, b(2))
        );
    }

    #[test]
    fn rational_conversion() {
        assert_eq!(
            NAdic::from_rational(Rational::new(3, 4), b(2)),
            Some(NAdic::new(3, 2, b(2)))
        );
        assert_eq!(NAdic::from_rational(Rational::new(1, 3), b(2)), None);
        assert_eq!(
            NAdic::from_rational(Rational::new(5, 6), b(6)),
            Some(NAdic::new(5, 1, b(6)))
        );
        assert_eq!(
            NAdic::from_rational(Rational::new(1, 4), b(6)),
            Some(NAdic::new(9, 2, b(6)))
        );
    }

    #[test]
    fn wire_round_trip() {
        let x = NAdic::new(-3, 2, b(2));
        assert_eq!(x.to_wire(), "-3/2^2");
        assert_eq!(NAdic::from_wire("-3/2^2", b(2)).unwrap(), x);
        assert_eq!(
            NAdic::from_wire("6/2^3", b(2)).unwrap(),
            x.scale_pow(0).neg()
        );
        assert!(matches!(
            NAdic::from_wire("1/3^1", b(2)),
            Err(Error::BaseMismatch { .. })
        ));
        assert!(NAdic::from_wire("1/2", b(2)).is_err());
    }

    #[test]
    fn digits_checked() {
        assert!(Word::new(alloc::vec![0, 2], b(2)).is_err());
        assert!(Base::new(1).is_err());
    }

    #[test]
    fn point_sides() {
        let half = NAdic::new(1, 1, b(2));
        assert!(Point::new(half, Side::Endpoint).is_err());
        assert!(Point::new(NAdic::zero(b(2)), Side::Plus).is_err());
        assert!(Point::minus(NAdic::integer(2, b(2))).is_err());
        assert!(Point::zero(b(2)).is_plus_like());
        assert!(!Point::one(b(2)).is_plus_like());
    }

    #[test]
    #[should_panic(expected = "mixing")]
    fn mixed_bases_panic() {
        let _ = NAdic::one(b(2)) + NAdic::one(b(3));
    }
}
