//! Finitely piecewise-constant functions on `X` with Gaussian rational values.

use alloc::vec::Vec;
use core::fmt;

use crate::clopen::{ClopenSet, Interval};
use crate::error::Error;
use crate::nadic::{assert_same_base, Base, NAdic, Point};
use crate::scalar::Scalar;

/// Sorted, pairwise disjoint pieces with non-zero values; touching pieces
/// never carry equal values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepFunction {
    base: Base,
    pieces: Vec<(Interval, Scalar)>,
}

/// Pointwise operation selector for [`StepFunction::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOp {
    Add,
    Mul,
}

impl StepFunction {
    pub fn zero(base: Base) -> Self {
        StepFunction {
            base,
            pieces: Vec::new(),
        }
    }

    pub fn constant(base: Base, c: Scalar) -> Self {
        Self::from_canonical_parts(base, alloc::vec![(Interval::full(base), c)])
    }

    /// `χ_E`.
    pub fn indicator(set: &ClopenSet) -> Self {
        let pieces = set
            .components()
            .iter()
            .map(|&iv| (iv, Scalar::one()))
            .collect();
        StepFunction {
            base: set.base(),
            pieces,
        }
    }

    /// `c · χ_E`.
    pub fn scaled_indicator(set: &ClopenSet, c: Scalar) -> Self {
        Self::indicator(set).scale(c)
    }

    /// Validating constructor: pieces may come in any order but must not
    /// overlap.
    pub fn from_pieces(base: Base, pieces: Vec<(Interval, Scalar)>) -> Result<Self, Error> {
        let mut pieces = pieces;
        for (iv, _) in &pieces {
            if iv.base() != base {
                return Err(Error::BaseMismatch {
                    expected: base.get(),
                    found: iv.base().get(),
                });
            }
        }
        pieces.sort_by_key(|p| p.0);
        if pieces.windows(2).any(|w| w[0].0.hi() > w[1].0.lo()) {
            return Err(Error::OverlappingPieces);
        }
        Ok(Self::from_canonical_parts(base, pieces))
    }

    /// Canonicalizes sorted, disjoint pieces.
    fn from_canonical_parts(base: Base, pieces: Vec<(Interval, Scalar)>) -> Self {
        let mut out: Vec<(Interval, Scalar)> = Vec::with_capacity(pieces.len());
        for (iv, v) in pieces {
            if v.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some((last, lv)) if last.hi() == iv.lo() && *lv == v => {
                    *last = Interval::new_unchecked(last.lo(), iv.hi());
                }
                _ => out.push((iv, v)),
            }
        }
        StepFunction { base, pieces: out }
    }

    /// Canonicalizes disjoint pieces given in any order.
    pub(crate) fn from_disjoint(base: Base, mut pieces: Vec<(Interval, Scalar)>) -> Self {
        pieces.sort_by_key(|p| p.0);
        Self::from_canonical_parts(base, pieces)
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn pieces(&self) -> &[(Interval, Scalar)] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn support(&self) -> ClopenSet {
        ClopenSet::from_intervals(self.base, self.pieces.iter().map(|(iv, _)| *iv).collect())
    }

    pub fn eval(&self, x: &Point) -> Scalar {
        self.pieces
            .iter()
            .find(|(iv, _)| iv.contains(x))
            .map(|(_, v)| *v)
            .unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.base);
        }
        let pieces = self.pieces.iter().map(|&(iv, v)| (iv, v * c)).collect();
        Self::from_canonical_parts(self.base, pieces)
    }

    pub fn conj(&self) -> Self {
        let pieces = self.pieces.iter().map(|&(iv, v)| (iv, v.conj())).collect();
        StepFunction {
            base: self.base,
            pieces,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-Scalar::one())
    }

    /// Restriction to `set`, zero elsewhere.
    pub fn restrict(&self, set: &ClopenSet) -> Self {
        self.mul(&StepFunction::indicator(set))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(StepOp::Add, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(StepOp::Mul, other)
    }

    /// Pointwise combination by a sweep over the merged breakpoints.
    pub fn combine(&self, op: StepOp, other: &Self) -> Self {
        assert_same_base(self.base, other.base);
        if op == StepOp::Mul && (self.is_zero() || other.is_zero()) {
            return Self::zero(self.base);
        }
        let mut cuts: Vec<NAdic> = self
            .pieces
            .iter()
            .chain(other.pieces.iter())
            .flat_map(|(iv, _)| [iv.lo(), iv.hi()])
            .collect();
        cuts.sort();
        cuts.dedup();

        let value_from = |pieces: &[(Interval, Scalar)], cursor: &mut usize, at: NAdic| {
            while *cursor < pieces.len() && pieces[*cursor].0.hi() <= at {
                *cursor += 1;
            }
            match pieces.get(*cursor) {
                Some((iv, v)) if iv.lo() <= at => *v,
                _ => Scalar::zero(),
            }
        };

        let (mut ci, mut cj) = (0usize, 0usize);
        let mut out = Vec::new();
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let a = value_from(&self.pieces, &mut ci, lo);
            let b = value_from(&other.pieces, &mut cj, lo);
            let v = match op {
                StepOp::Add => a + b,
                StepOp::Mul => a * b,
            };
            if !v.is_zero() {
                out.push((Interval::new_unchecked(lo, hi), v));
            }
        }
        Self::from_canonical_parts(self.base, out)
    }

    /// Applies `f` to every piece's interval; `f` must be increasing and may
    /// drop a piece by returning `None`. Images must stay pairwise disjoint.
    pub(crate) fn remap(&self, f: impl Fn(&Interval) -> Option<Interval>) -> Self {
        let pieces = self
            .pieces
            .iter()
            .filter_map(|(iv, v)| f(iv).map(|j| (j, *v)))
            .collect();
        Self::from_disjoint(self.base, pieces)
    }
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "0");
        }
        for (i, (iv, v)) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if v.is_one() {
                write!(f, "chi{}", iv)?;
            } else {
                write!(f, "({})*chi{}", v, iv)?;
            }
        }
        Ok(())
    }
}
