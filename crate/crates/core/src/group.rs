//! The groups `G = Q_n ⋊_δ Z` and `H = G × Z`.

use core::cmp::Ordering;
use core::fmt;

use crate::nadic::{Base, NAdic};

/// `δ_k(r) = r / n^k`.
pub fn delta(k: i32, r: NAdic) -> NAdic {
    r.scale_pow(-k)
}

/// Element `(r, k)` of `G`, multiplied by `(s,j)(r,k) = (r/n^j + s, j+k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GElem {
    pub r: NAdic,
    pub k: i32,
}

impl GElem {
    pub fn new(r: NAdic, k: i32) -> Self {
        GElem { r, k }
    }

    pub fn identity(base: Base) -> Self {
        GElem {
            r: NAdic::zero(base),
            k: 0,
        }
    }

    pub fn base(&self) -> Base {
        self.r.base()
    }

    pub fn is_identity(&self) -> bool {
        self.r.is_zero() && self.k == 0
    }

    pub fn mul(&self, rhs: &GElem) -> GElem {
        GElem {
            r: delta(self.k, rhs.r) + self.r,
            k: self.k.checked_add(rhs.k).expect("group overflow"),
        }
    }

    /// `(r,k)⁻¹ = (−n^k r, −k)`.
    pub fn inv(&self) -> GElem {
        GElem {
            r: -delta(-self.k, self.r),
            k: -self.k,
        }
    }
}

/// Ordered by `k`, then `r`.
impl Ord for GElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k.cmp(&other.k).then_with(|| self.r.cmp(&other.r))
    }
}

impl PartialOrd for GElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.k)
    }
}

/// Element `(r, j, p)` of `H = G × Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HElem {
    pub g: GElem,
    pub p: i32,
}

impl HElem {
    pub fn new(r: NAdic, j: i32, p: i32) -> Self {
        HElem {
            g: GElem::new(r, j),
            p,
        }
    }

    pub fn from_g(g: GElem) -> Self {
        HElem { g, p: 0 }
    }

    pub fn identity(base: Base) -> Self {
        HElem {
            g: GElem::identity(base),
            p: 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.g.is_identity() && self.p == 0
    }

    pub fn mul(&self, rhs: &HElem) -> HElem {
        HElem {
            g: self.g.mul(&rhs.g),
            p: self.p.checked_add(rhs.p).expect("group overflow"),
        }
    }

    pub fn inv(&self) -> HElem {
        HElem {
            g: self.g.inv(),
            p: -self.p,
        }
    }

    pub fn op(&self, op: HOp, rhs: Option<&HElem>) -> HElem {
        match (op, rhs) {
            (HOp::Mul, Some(b)) => self.mul(b),
            (HOp::Inv, None) => self.inv(),
            (HOp::Mul, None) => panic!("mul needs a right operand"),
            (HOp::Inv, Some(_)) => panic!("inv takes no right operand"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HOp {
    Mul,
    Inv,
}

/// Ordered lexicographically on `(k, r)`, then `p`.
impl Ord for HElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.g.cmp(&other.g).then(self.p.cmp(&other.p))
    }
}

impl PartialOrd for HElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.g.r, self.g.k, self.p)
    }
}
