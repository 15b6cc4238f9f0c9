//! The dense *-subalgebra of the partial crossed products `C(X) ⋊ G` and
//! `C(Y) ⋊ H`: finite sums `Σ f_h U^h` with `supp f_h ⊆ ran β_h`.
//!
//! Both algebras share one implementation. A [`Session`] with a single slot
//! is the `O_n` picture; `k` slots give `M_k(O_n)`. Products and adjoints
//! follow the monomial rules
//!
//! ```text
//! (f U^g)*      = conj(f ∘ β_g) U^{g⁻¹}
//! e U^g · f U^h = e · (f ∘ β_{g⁻¹}) U^{gh}
//! ```

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::action::{act_pullback, beta_range, shifted_slot, y_beta_domain, PartialMap, SlotSet};
use crate::clopen::ClopenSet;
use crate::error::Error;
use crate::group::{GElem, HElem};
use crate::nadic::{Base, NAdic};
use crate::scalar::Scalar;
use crate::step::StepFunction;

/// Base `n` and slot count `k` shared by all elements that may be combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Session {
    base: Base,
    slots: usize,
}

impl Session {
    pub fn new(n: u32, k: usize) -> Result<Self, Error> {
        let base = Base::new(n)?;
        if k == 0 {
            return Err(Error::InvalidSlotCount);
        }
        Ok(Session { base, slots: k })
    }

    /// The single-slot session for `O_n`.
    pub fn cuntz(n: u32) -> Result<Self, Error> {
        Self::new(n, 1)
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn n(&self) -> u32 {
        self.base.get()
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn is_single_slot(&self) -> bool {
        self.slots == 1
    }

    /// `ran β_h` in `Y`.
    pub fn range(&self, h: &HElem) -> SlotSet {
        y_beta_domain(&h.inv(), self.slots)
    }

    pub fn nadic(&self, num: i128, exp: u32) -> NAdic {
        NAdic::new(num, exp, self.base)
    }
}

fn slot_text(set: &SlotSet) -> alloc::string::String {
    if set.slot_count() == 1 {
        return set.slots()[0].to_text();
    }
    let parts: Vec<_> = set
        .slots()
        .iter()
        .enumerate()
        .map(|(t, s)| alloc::format!("{};{}", s.to_text(), t))
        .collect();
    parts.join(", ")
}

/// A coefficient: one step function per slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotFunction {
    slots: Vec<StepFunction>,
}

impl SlotFunction {
    pub fn zero(base: Base, k: usize) -> Self {
        SlotFunction {
            slots: alloc::vec![StepFunction::zero(base); k],
        }
    }

    pub fn new(slots: Vec<StepFunction>) -> Self {
        assert!(!slots.is_empty(), "a coefficient needs at least one slot");
        SlotFunction { slots }
    }

    /// `f × {slot}`.
    pub fn single(f: StepFunction, slot: usize, k: usize) -> Self {
        let mut out = Self::zero(f.base(), k);
        out.slots[slot] = f;
        out
    }

    pub fn indicator(set: &SlotSet) -> Self {
        SlotFunction {
            slots: set.slots().iter().map(StepFunction::indicator).collect(),
        }
    }

    pub fn slots(&self) -> &[StepFunction] {
        &self.slots
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(StepFunction::is_zero)
    }

    pub fn support(&self) -> SlotSet {
        SlotSet::new(self.slots.iter().map(StepFunction::support).collect())
            .expect("at least one slot")
    }

    fn zip(&self, other: &Self, f: impl Fn(&StepFunction, &StepFunction) -> StepFunction) -> Self {
        SlotFunction {
            slots: self
                .slots
                .iter()
                .zip(&other.slots)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, StepFunction::add)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, StepFunction::mul)
    }

    pub fn scale(&self, c: Scalar) -> Self {
        SlotFunction {
            slots: self.slots.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        SlotFunction {
            slots: self.slots.iter().map(StepFunction::conj).collect(),
        }
    }

    /// `f ∘ β_h`: slot `t` becomes `f[t + p] ∘ β_g` when `t + p ∈ S_k`.
    pub fn pullback(&self, h: &HElem) -> Self {
        let k = self.slots.len();
        let base = self.slots[0].base();
        let slots = (0..k)
            .map(|t| match shifted_slot(t, h.p, k) {
                Some(q) => act_pullback(&self.slots[q], &h.g),
                None => StepFunction::zero(base),
            })
            .collect();
        SlotFunction { slots }
    }

    fn is_within(&self, set: &SlotSet) -> bool {
        self.slots
            .iter()
            .zip(set.slots())
            .all(|(f, s)| f.support().is_subset(s))
    }
}

/// A finite formal sum `Σ f_h U^h`, canonical: every stored coefficient is
/// non-zero and terms are ordered by `(k, r, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    session: Session,
    terms: BTreeMap<HElem, SlotFunction>,
}

impl AlgebraElement {
    pub fn zero(session: Session) -> Self {
        AlgebraElement {
            session,
            terms: BTreeMap::new(),
        }
    }

    /// `I = χ_Y U^e`.
    pub fn identity(session: Session) -> Self {
        Self::substitute_unit(session, HElem::identity(session.base))
    }

    /// `χ_{ran β_h} U^h`, standing in for the symbol `U^h`.
    pub fn substitute_unit(session: Session, h: HElem) -> Self {
        let f = SlotFunction::indicator(&session.range(&h));
        Self::monomial_unchecked(session, h, f)
    }

    /// `c · I`.
    pub fn scalar(session: Session, c: Scalar) -> Self {
        Self::identity(session).scale(c)
    }

    /// `f U^h`, rejecting coefficients not supported in `ran β_h`.
    pub fn monomial(session: Session, h: HElem, f: SlotFunction) -> Result<Self, Error> {
        if f.slot_count() != session.slots {
            return Err(Error::SessionMismatch);
        }
        if f.slots()[0].base() != session.base || h.g.base() != session.base {
            return Err(Error::BaseMismatch {
                expected: session.n(),
                found: h.g.base().get(),
            });
        }
        let range = session.range(&h);
        if !f.is_within(&range) {
            return Err(Error::CoefficientInvariant {
                support: slot_text(&f.support()),
                range: slot_text(&range),
            });
        }
        Ok(Self::monomial_unchecked(session, h, f))
    }

    /// Single-slot convenience for `f U^g`.
    pub fn monomial_x(session: Session, g: GElem, f: StepFunction) -> Result<Self, Error> {
        if !session.is_single_slot() {
            return Err(Error::RequiresSingleSlot);
        }
        Self::monomial(session, HElem::from_g(g), SlotFunction::new(alloc::vec![f]))
    }

    fn monomial_unchecked(session: Session, h: HElem, f: SlotFunction) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(h, f);
        }
        AlgebraElement { session, terms }
    }

    pub fn session(&self) -> Session {
        self.session
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HElem, &SlotFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, h: &HElem) -> Option<&SlotFunction> {
        self.terms.get(h)
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `supp f_h ⊆ ran β_h` for every term.
    pub fn coefficient_invariant_holds(&self) -> bool {
        self.terms
            .iter()
            .all(|(h, f)| f.is_within(&self.session.range(h)))
    }

    fn accumulate(terms: &mut BTreeMap<HElem, SlotFunction>, h: HElem, f: SlotFunction) {
        if f.is_zero() {
            return;
        }
        match terms.remove(&h) {
            Some(prev) => {
                let sum = prev.add(&f);
                if !sum.is_zero() {
                    terms.insert(h, sum);
                }
            }
            None => {
                terms.insert(h, f);
            }
        }
    }

    fn check_session(&self, other: &Self) -> Result<(), Error> {
        if self.session == other.session {
            Ok(())
        } else {
            Err(Error::SessionMismatch)
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_session(other)?;
        let mut terms = BTreeMap::new();
        for (g, e) in &self.terms {
            let ginv = g.inv();
            for (h, f) in &other.terms {
                let coeff = e.mul(&f.pullback(&ginv));
                Self::accumulate(&mut terms, g.mul(h), coeff);
            }
        }
        Ok(AlgebraElement {
            session: self.session,
            terms,
        })
    }

    pub fn adjoint(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (g, f) in &self.terms {
            Self::accumulate(&mut terms, g.inv(), f.pullback(g).conj());
        }
        AlgebraElement {
            session: self.session,
            terms,
        }
    }

    /// `c1·A + c2·B`.
    pub fn linear(c1: Scalar, a: &Self, c2: Scalar, b: &Self) -> Result<Self, Error> {
        a.check_session(b)?;
        let mut terms = BTreeMap::new();
        for (h, f) in &a.terms {
            Self::accumulate(&mut terms, *h, f.scale(c1));
        }
        for (h, f) in &b.terms {
            Self::accumulate(&mut terms, *h, f.scale(c2));
        }
        Ok(AlgebraElement {
            session: a.session,
            terms,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        Self::linear(Scalar::one(), self, Scalar::one(), other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        Self::linear(Scalar::one(), self, -Scalar::one(), other)
    }

    pub fn scale(&self, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (h, f) in &self.terms {
            Self::accumulate(&mut terms, *h, f.scale(c));
        }
        AlgebraElement {
            session: self.session,
            terms,
        }
    }

    /// True if every term's group element satisfies `pred`.
    pub fn all_terms(&self, pred: impl Fn(&HElem) -> bool) -> bool {
        self.terms.keys().all(pred)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs)
            .expect("multiplying elements of different sessions")
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs)
            .expect("adding elements of different sessions")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs)
            .expect("subtracting elements of different sessions")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(-Scalar::one())
    }
}

/// `S_i = χ_{[(i−1)/n, i/n]} U^{((i−1)/n, 1)}`, `1 <= i <= n`.
pub fn cuntz_generator(session: Session, i: usize) -> Result<AlgebraElement, Error> {
    if !session.is_single_slot() {
        return Err(Error::RequiresSingleSlot);
    }
    let n = session.n() as usize;
    if i == 0 || i > n {
        return Err(Error::GeneratorIndex { index: i, max: n });
    }
    let g = GElem::new(session.nadic(i as i128 - 1, 1), 1);
    Ok(AlgebraElement::substitute_unit(session, HElem::from_g(g)))
}

pub fn cuntz_generators(session: Session) -> Result<Vec<AlgebraElement>, Error> {
    (1..=session.n() as usize)
        .map(|i| cuntz_generator(session, i))
        .collect()
}

/// `S(φ) = χ_{ran φ} U^g` for a restriction `φ` of `β_g`.
pub fn s_of_opat(session: Session, phi: &PartialMap) -> Result<AlgebraElement, Error> {
    let f = StepFunction::indicator(&phi.range());
    AlgebraElement::monomial_x(session, phi.group_element(), f)
}

/// Edge partial isometries and vertex projections for the graph with `k`
/// vertices, `n − 1` loops at `v_1` and a `k`-cycle `v_1 → … → v_k → v_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGenerators {
    /// `T_1 … T_n`; `T_1 … T_{n−1}` are the loops, `T_n` closes the cycle.
    pub t: Vec<AlgebraElement>,
    /// `R_1 … R_{k−1}`, `R_i : v_i → v_{i+1}`.
    pub r: Vec<AlgebraElement>,
    /// `P_{v_1} … P_{v_k}`.
    pub p: Vec<AlgebraElement>,
}

pub fn matrix_generators(session: Session) -> MatrixGenerators {
    let n = session.n() as i128;
    let k = session.slots();
    let base = session.base();
    let slot0 = |lo: NAdic, hi: NAdic| {
        let set = ClopenSet::interval(lo, hi).expect("digit interval");
        SlotFunction::single(StepFunction::indicator(&set), 0, k)
    };
    let whole = |slot: usize| {
        SlotFunction::single(StepFunction::indicator(&ClopenSet::full(base)), slot, k)
    };

    let mut t = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let lo = NAdic::new(i - 1, 1, base);
        let hi = NAdic::new(i, 1, base);
        let p = if i == n { 1 - k as i32 } else { 0 };
        let h = HElem::new(lo, 1, p);
        t.push(AlgebraElement::monomial(session, h, slot0(lo, hi)).expect("T_i range"));
    }
    let shift = HElem::new(NAdic::zero(base), 0, 1);
    let r = (1..k)
        .map(|i| AlgebraElement::monomial(session, shift, whole(i)).expect("R_i range"))
        .collect();
    let p = (0..k)
        .map(|slot| {
            AlgebraElement::monomial(session, HElem::identity(base), whole(slot))
                .expect("P_v range")
        })
        .collect();
    MatrixGenerators { t, r, p }
}

/// Canonical text form, parseable by the expression syntax:
/// `chi[a,b] U(r,k)` in single-slot sessions and `chi[a,b;t] U(r,k,p)`
/// otherwise, one monomial per coefficient piece.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let single = self.session.is_single_slot();
        let mut first = true;
        for (h, coeff) in &self.terms {
            for (t, step) in coeff.slots().iter().enumerate() {
                for (iv, v) in step.pieces() {
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    if !v.is_one() {
                        write!(f, "({}) * ", v)?;
                    }
                    if single {
                        write!(f, "chi[{},{}] U({},{})", iv.lo(), iv.hi(), h.g.r, h.g.k)?;
                    } else {
                        write!(
                            f,
                            "chi[{},{};{}] U({},{},{})",
                            iv.lo(),
                            iv.hi(),
                            t,
                            h.g.r,
                            h.g.k,
                            h.p
                        )?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Substitute unit for `g` in a single-slot session.
pub fn unit_x(session: Session, g: GElem) -> AlgebraElement {
    AlgebraElement::substitute_unit(session, HElem::from_g(g))
}

/// `χ_{ran β_g}` as a step function.
pub fn range_indicator(g: &GElem) -> StepFunction {
    StepFunction::indicator(&beta_range(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn sx(n: u32) -> Session {
        Session::cuntz(n).unwrap()
    }

    fn chi(s: Session, a: (i128, u32), b: (i128, u32)) -> StepFunction {
        let set = ClopenSet::interval(s.nadic(a.0, a.1), s.nadic(b.0, b.1)).unwrap();
        StepFunction::indicator(&set)
    }

    fn g(s: Session, p: i128, e: u32, k: i32) -> GElem {
        GElem::new(s.nadic(p, e), k)
    }

    #[test]
    fn isometry_and_orthogonality() {
        let s = sx(2);
        let s1 = cuntz_generator(s, 1).unwrap();
        let s2 = cuntz_generator(s, 2).unwrap();
        let i = AlgebraElement::identity(s);
        assert_eq!(&s1.adjoint() * &s1, i);
        assert_eq!(&s1 * &i, s1);
        let p1 = &s1 * &s1.adjoint();
        let p2 = &s2 * &s2.adjoint();
        assert!((&p1 * &p2).is_zero());
        assert_eq!(&p1 + &p2, i);
    }

    #[test]
    fn generator_shapes() {
        let s = sx(2);
        assert_eq!(
            cuntz_generator(s, 1).unwrap(),
            AlgebraElement::monomial_x(s, g(s, 0, 0, 1), chi(s, (0, 0), (1, 1))).unwrap()
        );
        assert_eq!(
            cuntz_generator(s, 2).unwrap(),
            AlgebraElement::monomial_x(s, g(s, 1, 1, 1), chi(s, (1, 1), (1, 0))).unwrap()
        );
        assert!(matches!(
            cuntz_generator(s, 3),
            Err(Error::GeneratorIndex { .. })
        ));
        assert!(cuntz_generator(s, 0).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let s = sx(2);
        let s2 = cuntz_generator(s, 2).unwrap();
        let expected =
            AlgebraElement::monomial_x(s, g(s, -1, 0, -1), chi(s, (0, 0), (1, 0))).unwrap();
        assert_eq!(s2.adjoint(), expected);
        let i = AlgebraElement::identity(s);
        assert_eq!(i.adjoint(), i);
        let a = AlgebraElement::monomial_x(s, g(s, 1, 1, 1), chi(s, (1, 1), (3, 2))).unwrap();
        let expected =
            AlgebraElement::monomial_x(s, g(s, -1, 0, -1), chi(s, (0, 0), (1, 1))).unwrap();
        assert_eq!(a.adjoint(), expected);
    }

    #[test]
    fn linear_examples() {
        let s = sx(2);
        let a = cuntz_generator(s, 1).unwrap();
        let one = Scalar::one();
        assert!(AlgebraElement::linear(one, &a, -one, &a).unwrap().is_zero());
        let i = AlgebraElement::identity(s);
        let ii = AlgebraElement::linear(Scalar::i(), &i, Scalar::zero(), &i).unwrap();
        assert_eq!(ii, AlgebraElement::scalar(s, Scalar::i()));
    }

    #[test]
    fn invariant_enforced() {
        let s = sx(2);
        let err = AlgebraElement::monomial_x(
            s,
            g(s, 1, 1, 1),
            StepFunction::constant(s.base(), Scalar::one()),
        );
        assert!(matches!(err, Err(Error::CoefficientInvariant { .. })));
    }

    #[test]
    fn opat_images() {
        let s = sx(2);
        let phi = PartialMap::full(g(s, 1, 1, 1));
        assert_eq!(s_of_opat(s, &phi).unwrap(), cuntz_generator(s, 2).unwrap());
        assert_eq!(
            s_of_opat(s, &PartialMap::identity(s.base())).unwrap(),
            AlgebraElement::identity(s)
        );
        let half = ClopenSet::interval(s.nadic(0, 0), s.nadic(1, 1)).unwrap();
        let phi = PartialMap::new(g(s, 0, 0, 1), half).unwrap();
        let expected =
            AlgebraElement::monomial_x(s, g(s, 0, 0, 1), chi(s, (0, 0), (1, 2))).unwrap();
        assert_eq!(s_of_opat(s, &phi).unwrap(), expected);
    }

    #[test]
    fn proper_restriction_witness() {
        let s = sx(2);
        let (a, b) = (g(s, 0, 0, 1), g(s, 0, 0, -1));
        let prod = &unit_x(s, a) * &unit_x(s, b);
        let naive = unit_x(s, a.mul(&b));
        assert_ne!(prod, naive);
        let expected =
            AlgebraElement::monomial_x(s, GElem::identity(s.base()), chi(s, (0, 0), (1, 1)))
                .unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn matrix_examples() {
        let s = Session::new(2, 2).unwrap();
        let m = matrix_generators(s);
        let t2 = &m.t[1];
        let (h, f) = t2.terms().next().unwrap();
        assert_eq!(*h, HElem::new(s.nadic(1, 1), 1, -1));
        assert_eq!(f.slots()[0], chi(s, (1, 1), (1, 0)));
        assert!(f.slots()[1].is_zero());
        assert_eq!(&t2.adjoint() * t2, m.p[1]);
        assert_eq!(&m.r[0] * &m.r[0].adjoint(), m.p[1]);
        assert_eq!(&m.r[0].adjoint() * &m.r[0], m.p[0]);
    }

    #[test]
    fn single_slot_matrix_generators_are_cuntz_generators() {
        let s = sx(3);
        let m = matrix_generators(s);
        assert_eq!(m.t, cuntz_generators(s).unwrap());
        assert!(m.r.is_empty());
        assert_eq!(m.p, alloc::vec![AlgebraElement::identity(s)]);
    }

    #[test]
    fn text_form() {
        let s = sx(2);
        assert_eq!(AlgebraElement::identity(s).to_string(), "chi[0,1] U(0,0)");
        assert_eq!(AlgebraElement::zero(s).to_string(), "0");
        let a = cuntz_generator(s, 2).unwrap().scale(Scalar::i());
        assert_eq!(a.to_string(), "(i) * chi[1/2,1] U(1/2,1)");
        let y = Session::new(2, 2).unwrap();
        assert_eq!(matrix_generators(y).r[0].to_string(), "chi[0,1;1] U(0,0,1)");
    }

    #[test]
    fn session_mismatch() {
        let a = AlgebraElement::identity(sx(2));
        let b = AlgebraElement::identity(sx(3));
        assert_eq!(a.checked_mul(&b), Err(Error::SessionMismatch));
        assert!(AlgebraElement::linear(Scalar::one(), &a, Scalar::one(), &b).is_err());
    }
}
