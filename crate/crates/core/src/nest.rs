//! Predicate subalgebras `B(P)`, the Volterra nest `p_r = χ_{[0,r⁻]}` and
//! the nest generators `T_g = χ_{β_g(I_g)} U^g`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::action::{beta_image, descending_interval, descending_interval_at_level};
use crate::algebra::{AlgebraElement, Session};
use crate::clopen::ClopenSet;
use crate::error::Error;
use crate::group::GElem;
use crate::nadic::{Base, NAdic};
use crate::relations::{RelationOutcome, RelationReport, Witness};
use crate::step::StepFunction;

/// Sign condition on `k` for custom predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KSign {
    Any,
    Zero,
    Positive,
    Negative,
    NonNegative,
    NonPositive,
}

impl KSign {
    pub fn holds(self, k: i32) -> bool {
        match self {
            KSign::Any => true,
            KSign::Zero => k == 0,
            KSign::Positive => k > 0,
            KSign::Negative => k < 0,
            KSign::NonNegative => k >= 0,
            KSign::NonPositive => k <= 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KSign::Any => "any",
            KSign::Zero => "zero",
            KSign::Positive => "positive",
            KSign::Negative => "negative",
            KSign::NonNegative => "nonnegative",
            KSign::NonPositive => "nonpositive",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            KSign::Any,
            KSign::Zero,
            KSign::Positive,
            KSign::Negative,
            KSign::NonNegative,
            KSign::NonPositive,
        ]
        .into_iter()
        .find(|v| v.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupPredicate {
    /// `k = 0`.
    Uhf,
    /// `k = 0 ∧ r >= 0`.
    RefinementTaf,
    /// `k > 0 ∨ (k = 0 ∧ r >= 0)`.
    Triangular,
    /// `k_sign(k) ∧ r >= r_min`, the threshold omitted when `None`.
    Custom { r_min: Option<NAdic>, k_sign: KSign },
}

impl GroupPredicate {
    pub fn contains(&self, g: &GElem) -> bool {
        match *self {
            GroupPredicate::Uhf => g.k == 0,
            GroupPredicate::RefinementTaf => g.k == 0 && !g.r.is_negative(),
            GroupPredicate::Triangular => g.k > 0 || (g.k == 0 && !g.r.is_negative()),
            GroupPredicate::Custom { r_min, k_sign } => {
                k_sign.holds(g.k) && r_min.is_none_or(|m| g.r >= m)
            }
        }
    }
}

/// `p_r = χ_{(0,r)} U^{(0,0)}`, `0 < r <= 1`.
pub fn volterra_projection(session: Session, r: NAdic) -> Result<AlgebraElement, Error> {
    if !r.is_positive() || r > NAdic::one(session.base()) {
        return Err(Error::NestLevel(format!("{}", r)));
    }
    let set = ClopenSet::interval(NAdic::zero(session.base()), r)?;
    AlgebraElement::monomial_x(
        session,
        GElem::identity(session.base()),
        StepFunction::indicator(&set),
    )
}

/// `χ_{β_g(I_g)} U^g`; zero when `I_g = ∅`.
pub fn nest_generator(session: Session, g: GElem) -> Result<AlgebraElement, Error> {
    generator_on(session, g, &descending_interval(&g))
}

/// `χ_{β_g(J)} U^g` for the level-`level` truncation `J` of the descending
/// region.
pub fn nest_generator_at_level(
    session: Session,
    g: GElem,
    level: u32,
) -> Result<AlgebraElement, Error> {
    generator_on(session, g, &descending_interval_at_level(&g, level))
}

fn generator_on(session: Session, g: GElem, on: &ClopenSet) -> Result<AlgebraElement, Error> {
    let f = StepFunction::indicator(&beta_image(&g, on));
    AlgebraElement::monomial_x(session, g, f)
}

/// `(I − p_r) · A · p_r = 0`.
pub fn nest_invariant(a: &AlgebraElement, r: NAdic) -> Result<bool, Error> {
    let session = a.session();
    let p = volterra_projection(session, r)?;
    let perp = &AlgebraElement::identity(session) - &p;
    Ok((&(&perp * a) * &p).is_zero())
}

/// Every term's `G`-part lies in `P`.
pub fn bp_membership(a: &AlgebraElement, pred: &GroupPredicate) -> bool {
    a.all_terms(|h| pred.contains(&h.g))
}

/// The finite grid `r = p/n^e`, `|p| < n^e`, `e <= max_exp`, `|k| <= max_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureGrid {
    pub base: Base,
    pub max_exp: u32,
    pub max_k: u32,
}

impl ClosureGrid {
    /// Grid elements, simplest first: by `e + |k|`, then `|p|`.
    pub fn elements(&self) -> Vec<GElem> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let k = self.max_k as i32;
        for e in 0..=self.max_exp {
            let bound = self.base.pow(e);
            for p in (1 - bound)..bound {
                for j in -k..=k {
                    let g = GElem::new(NAdic::new(p, e, self.base), j);
                    if seen.insert(g) {
                        out.push(g);
                    }
                }
            }
        }
        out.sort_by_key(simplicity);
        out
    }
}

fn simplicity(g: &GElem) -> (u64, u128, i128, i32) {
    let num = g.r.numerator();
    (
        g.r.exponent() as u64 + g.k.unsigned_abs() as u64,
        num.unsigned_abs(),
        num,
        g.k,
    )
}

/// Whether `P` is closed under products (`closed_mul`) and inverses
/// (`closed_inv`) on the grid, with the simplest counterexample.
pub fn predicate_closure_check(pred: &GroupPredicate, grid: &ClosureGrid) -> RelationReport {
    let members: Vec<GElem> = grid
        .elements()
        .into_iter()
        .filter(|g| pred.contains(g))
        .collect();
    let mut report = RelationReport::new("closure");

    let mut mul_fail = None;
    'outer: for a in &members {
        for b in &members {
            let ab = a.mul(b);
            if !pred.contains(&ab) {
                mul_fail = Some(Witness::Groups(alloc::vec![*a, *b, ab]));
                break 'outer;
            }
        }
    }
    let pairs = members.len() * members.len();
    report.push(match mul_fail {
        None => RelationOutcome::pass("closed_mul", pairs),
        Some(w) => RelationOutcome::fail("closed_mul", pairs, w),
    });

    let inv_fail = members
        .iter()
        .find(|g| !pred.contains(&g.inv()))
        .map(|g| Witness::Groups(alloc::vec![*g, g.inv()]));
    report.push(match inv_fail {
        None => RelationOutcome::pass("closed_inv", members.len()),
        Some(w) => RelationOutcome::fail("closed_inv", members.len(), w),
    });
    report
}
