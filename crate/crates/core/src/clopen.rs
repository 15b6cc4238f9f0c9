//! Clopen subsets of the doubled Cantor set `X`.
//!
//! A component `(a, b)` stands for `{x : a⁺ <= x <= b⁻}`; at `a = 0` the
//! component starts at the literal endpoint 0 and at `b = 1` it ends at the
//! literal endpoint 1. On coordinates this is exactly the half-open interval
//! `[a, b)` (with `b⁻` corresponding to values just below `b`), which is how
//! every set operation below is computed. Components whose endpoints touch are
//! merged because nothing lies strictly between `b⁻` and `b⁺`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::nadic::{assert_same_base, Base, NAdic, Point, Word};

/// One component `(lo, hi)` with `0 <= lo < hi <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: NAdic,
    hi: NAdic,
}

impl Interval {
    /// `Ok(None)` for a degenerate interval `lo == hi`.
    pub fn new(lo: NAdic, hi: NAdic) -> Result<Option<Self>, Error> {
        let base = lo.base();
        if lo.base() != hi.base() {
            return Err(Error::BaseMismatch {
                expected: lo.base().get(),
                found: hi.base().get(),
            });
        }
        if lo < NAdic::zero(base) || hi > NAdic::one(base) || lo > hi {
            return Err(Error::BadInterval {
                lo: lo.to_wire(),
                hi: hi.to_wire(),
            });
        }
        Ok(if lo == hi {
            None
        } else {
            Some(Interval { lo, hi })
        })
    }

    pub(crate) fn new_unchecked(lo: NAdic, hi: NAdic) -> Self {
        debug_assert!(lo < hi);
        Interval { lo, hi }
    }

    pub fn full(base: Base) -> Self {
        Interval {
            lo: NAdic::zero(base),
            hi: NAdic::one(base),
        }
    }

    pub fn lo(&self) -> NAdic {
        self.lo
    }

    pub fn hi(&self) -> NAdic {
        self.hi
    }

    pub fn base(&self) -> Base {
        self.lo.base()
    }

    pub fn width(&self) -> NAdic {
        self.hi - self.lo
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo < hi).then_some(Interval { lo, hi })
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains(&self, x: &Point) -> bool {
        let v = x.value();
        if x.is_plus_like() {
            self.lo <= v && v < self.hi
        } else {
            self.lo < v && v <= self.hi
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Canonical finite union of n-adic intervals of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClopenSet {
    base: Base,
    parts: Vec<Interval>,
}

impl ClopenSet {
    pub fn empty(base: Base) -> Self {
        ClopenSet {
            base,
            parts: Vec::new(),
        }
    }

    pub fn full(base: Base) -> Self {
        ClopenSet {
            base,
            parts: alloc::vec![Interval::full(base)],
        }
    }

    pub fn interval(lo: NAdic, hi: NAdic) -> Result<Self, Error> {
        let base = lo.base();
        Ok(match Interval::new(lo, hi)? {
            Some(iv) => ClopenSet {
                base,
                parts: alloc::vec![iv],
            },
            None => ClopenSet::empty(base),
        })
    }

    /// Builds a set from arbitrary (possibly overlapping, unsorted) pairs.
    pub fn from_pairs<I>(base: Base, pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (NAdic, NAdic)>,
    {
        let mut parts = Vec::new();
        for (lo, hi) in pairs {
            if lo.base() != base {
                return Err(Error::BaseMismatch {
                    expected: base.get(),
                    found: lo.base().get(),
                });
            }
            if let Some(iv) = Interval::new(lo, hi)? {
                parts.push(iv);
            }
        }
        Ok(Self::from_intervals(base, parts))
    }

    pub(crate) fn from_intervals(base: Base, mut parts: Vec<Interval>) -> Self {
        parts.sort();
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            assert_same_base(base, iv.base());
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        ClopenSet { base, parts: out }
    }

    /// Points whose digit expansion starts with `word`.
    pub fn cylinder(word: &Word) -> Self {
        let lo = word.value();
        let width = NAdic::one(word.base()).scale_pow(-(word.len() as i32));
        ClopenSet {
            base: word.base(),
            parts: alloc::vec![Interval::new_unchecked(lo, lo + width)],
        }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn components(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.parts.len() == 1 && self.parts[0] == Interval::full(self.base)
    }

    /// Lebesgue measure of the coordinate set.
    pub fn measure(&self) -> NAdic {
        self.parts
            .iter()
            .fold(NAdic::zero(self.base), |acc, iv| acc + iv.width())
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.parts.iter().any(|iv| iv.contains(x))
    }

    pub fn is_subset(&self, other: &ClopenSet) -> bool {
        self.minus(other).is_empty()
    }

    pub fn union(&self, other: &ClopenSet) -> ClopenSet {
        assert_same_base(self.base, other.base);
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Self::from_intervals(self.base, parts)
    }

    pub fn intersect(&self, other: &ClopenSet) -> ClopenSet {
        assert_same_base(self.base, other.base);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (&self.parts[i], &other.parts[j]);
            if let Some(iv) = a.intersect(b) {
                out.push(iv);
            }
            if a.hi <= b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        // pieces of two canonical sets never touch each other after intersecting
        ClopenSet {
            base: self.base,
            parts: out,
        }
    }

    pub fn complement(&self) -> ClopenSet {
        let mut out = Vec::new();
        let mut cursor = NAdic::zero(self.base);
        for iv in &self.parts {
            if cursor < iv.lo {
                out.push(Interval::new_unchecked(cursor, iv.lo));
            }
            cursor = iv.hi;
        }
        let one = NAdic::one(self.base);
        if cursor < one {
            out.push(Interval::new_unchecked(cursor, one));
        }
        ClopenSet {
            base: self.base,
            parts: out,
        }
    }

    pub fn minus(&self, other: &ClopenSet) -> ClopenSet {
        self.intersect(&other.complement())
    }

    pub fn combine(&self, op: SetOp, other: &ClopenSet) -> ClopenSet {
        match op {
            SetOp::Union => self.union(other),
            SetOp::Intersect => self.intersect(other),
            SetOp::Minus => self.minus(other),
            SetOp::Complement => self.complement(),
        }
    }

    /// Maps every component through an increasing map of coordinates.
    pub(crate) fn map_increasing(&self, f: impl Fn(NAdic) -> NAdic) -> ClopenSet {
        let parts = self
            .parts
            .iter()
            .map(|iv| Interval::new_unchecked(f(iv.lo), f(iv.hi)))
            .collect();
        Self::from_intervals(self.base, parts)
    }

    pub fn to_text(&self) -> String {
        alloc::format!("{}", self)
    }
}

/// Set operation selector; `Complement` ignores its second operand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Minus,
    Complement,
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, iv) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{}", iv)?;
        }
        Ok(())
    }
}
