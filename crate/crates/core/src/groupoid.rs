//! Elements of the Cuntz groupoid and their cocycles into `G` and `H`.
//!
//! An element `(λ, μ, z)` stands for the triple `(λz, |λ|−|μ|, μz)`, with
//! the shared tail `z` kept symbolic.

use alloc::string::String;

use crate::action::{beta_image, y_beta_image, SlotSet};
use crate::clopen::ClopenSet;
use crate::error::Error;
use crate::group::{GElem, HElem};
use crate::nadic::{assert_same_base, NAdic, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupoidElement {
    pub lambda: Word,
    pub mu: Word,
    pub tail: String,
}

impl GroupoidElement {
    pub fn new(lambda: Word, mu: Word, tail: impl Into<String>) -> Self {
        assert_same_base(lambda.base(), mu.base());
        GroupoidElement {
            lambda,
            mu,
            tail: tail.into(),
        }
    }

    /// The unit `(μz, 0, μz)`.
    pub fn unit(mu: Word, tail: impl Into<String>) -> Self {
        Self::new(mu.clone(), mu, tail)
    }

    pub fn k(&self) -> i32 {
        self.lambda.len() as i32 - self.mu.len() as i32
    }

    pub fn cocycle(&self) -> GElem {
        cocycle(self)
    }

    pub fn inverse(&self) -> Self {
        GroupoidElement {
            lambda: self.mu.clone(),
            mu: self.lambda.clone(),
            tail: self.tail.clone(),
        }
    }
}

/// `r(λ, μ) = s(λ) − s(μ)/n^k`, `k = |λ| − |μ|`.
pub fn r_offset(lambda: &Word, mu: &Word) -> NAdic {
    let k = lambda.len() as i32 - mu.len() as i32;
    lambda.value() - mu.value().scale_pow(-k)
}

/// `c(λz, k, μz) = (r(λ, μ), k)`.
pub fn cocycle(gamma: &GroupoidElement) -> GElem {
    GElem::new(r_offset(&gamma.lambda, &gamma.mu), gamma.k())
}

/// `γ1 ∘ γ2`, defined when `γ1.μ z1 = γ2.λ z2` can hold, i.e. one of
/// `γ1.μ`, `γ2.λ` extends the other. The longer side's tail is kept.
pub fn groupoid_compose(
    g1: &GroupoidElement,
    g2: &GroupoidElement,
) -> Result<GroupoidElement, Error> {
    if let Some(w) = g1.mu.strip_prefix_of(&g2.lambda) {
        return Ok(GroupoidElement {
            lambda: g1.lambda.concat(&w),
            mu: g2.mu.clone(),
            tail: g2.tail.clone(),
        });
    }
    if let Some(w) = g2.lambda.strip_prefix_of(&g1.mu) {
        return Ok(GroupoidElement {
            lambda: g1.lambda.clone(),
            mu: g2.mu.concat(&w),
            tail: g1.tail.clone(),
        });
    }
    Err(Error::NotComposable)
}

/// `β_{c(γ)}(Z(μ)) = Z(λ)`.
pub fn graph_consistency(gamma: &GroupoidElement) -> bool {
    let c = cocycle(gamma);
    beta_image(&c, &ClopenSet::cylinder(&gamma.mu)) == ClopenSet::cylinder(&gamma.lambda)
}

/// `((λz, q), p, (μz, i))` with `p = q − i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YGroupoidElement {
    pub base: GroupoidElement,
    pub i: usize,
    pub q: usize,
}

impl YGroupoidElement {
    pub fn new(base: GroupoidElement, i: usize, q: usize, k: usize) -> Result<Self, Error> {
        for s in [i, q] {
            if s >= k {
                return Err(Error::SlotOutOfRange { slot: s, slots: k });
            }
        }
        Ok(YGroupoidElement { base, i, q })
    }

    pub fn p(&self) -> i32 {
        self.q as i32 - self.i as i32
    }
}

/// `(r(λ, μ), |λ|−|μ|, q − i)`.
pub fn y_cocycle(gamma: &YGroupoidElement) -> HElem {
    HElem {
        g: cocycle(&gamma.base),
        p: gamma.p(),
    }
}

/// Composition in the `Y` groupoid; the middle slots must agree.
pub fn y_compose(g1: &YGroupoidElement, g2: &YGroupoidElement) -> Result<YGroupoidElement, Error> {
    if g1.i != g2.q {
        return Err(Error::NotComposable);
    }
    Ok(YGroupoidElement {
        base: groupoid_compose(&g1.base, &g2.base)?,
        i: g2.i,
        q: g1.q,
    })
}

/// `β_{c(γ)}(Z(μ) × {i}) = Z(λ) × {q}` in `Y` with `k` slots.
pub fn y_graph_consistency(gamma: &YGroupoidElement, k: usize) -> bool {
    let from = SlotSet::single(ClopenSet::cylinder(&gamma.base.mu), gamma.i, k);
    let to = SlotSet::single(ClopenSet::cylinder(&gamma.base.lambda), gamma.q, k);
    match (from, to) {
        (Ok(from), Ok(to)) => y_beta_image(&y_cocycle(gamma), &from) == to,
        _ => false,
    }
}
