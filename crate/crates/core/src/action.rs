//! The partial action `β_{(r,k)}(x) = x/n^k + r` of `G` on `X`, its
//! restrictions, and the product action of `H` on `Y = X × S_k`.

use alloc::vec::Vec;

use num_traits::One;

use crate::clopen::{ClopenSet, Interval};
use crate::error::Error;
use crate::group::{GElem, HElem};
use crate::nadic::{NAdic, Point, Rational};
use crate::step::StepFunction;

/// `x ↦ x/n^k + r` on coordinates.
#[inline]
pub fn beta_value(g: &GElem, x: NAdic) -> NAdic {
    x.scale_pow(-g.k) + g.r
}

/// The single component `(max(0, −r·n^k), min(1, (1−r)·n^k))`, or `∅`.
pub fn beta_domain(g: &GElem) -> ClopenSet {
    let base = g.base();
    let (zero, one) = (NAdic::zero(base), NAdic::one(base));
    let lo = (-g.r).scale_pow(g.k).max(zero);
    let hi = (one - g.r).scale_pow(g.k).min(one);
    if lo < hi {
        ClopenSet::from_intervals(base, alloc::vec![Interval::new_unchecked(lo, hi)])
    } else {
        ClopenSet::empty(base)
    }
}

/// `ran β_g`, which is also `dom β_{g⁻¹}`.
pub fn beta_range(g: &GElem) -> ClopenSet {
    beta_domain(&g.inv())
}

/// Applies `β_g` to a point, preserving the doubled side.
pub fn beta_apply_point(g: &GElem, x: &Point) -> Result<Point, Error> {
    if !beta_domain(g).contains(x) {
        return Err(Error::OutOfDomain(alloc::format!("{}", x)));
    }
    Ok(Point::normalized(
        beta_value(g, x.value()),
        x.is_plus_like(),
    ))
}

/// `β_g(E ∩ dom β_g)`.
pub fn beta_image(g: &GElem, set: &ClopenSet) -> ClopenSet {
    set.intersect(&beta_domain(g))
        .map_increasing(|x| beta_value(g, x))
}

/// `β_g⁻¹(E ∩ ran β_g)`.
pub fn beta_preimage(g: &GElem, set: &ClopenSet) -> ClopenSet {
    beta_image(&g.inv(), set)
}

/// `f ∘ β_g`, supported in `dom β_g`.
pub fn act_pullback(f: &StepFunction, g: &GElem) -> StepFunction {
    let inv = g.inv();
    let window = match beta_domain(&inv).components().first() {
        Some(iv) => *iv,
        None => return StepFunction::zero(f.base()),
    };
    f.remap(|piece| {
        piece
            .intersect(&window)
            .map(|iv| Interval::new_unchecked(beta_value(&inv, iv.lo()), beta_value(&inv, iv.hi())))
    })
}

/// Restriction of `β_g` to a clopen subset of its domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialMap {
    g: GElem,
    domain: ClopenSet,
}

impl PartialMap {
    pub fn new(g: GElem, domain: ClopenSet) -> Result<Self, Error> {
        let allowed = beta_domain(&g);
        if !domain.is_subset(&allowed) {
            return Err(Error::DomainNotContained {
                domain: domain.to_text(),
                allowed: allowed.to_text(),
            });
        }
        Ok(PartialMap { g, domain })
    }

    /// `β_g` on its whole domain.
    pub fn full(g: GElem) -> Self {
        PartialMap {
            domain: beta_domain(&g),
            g,
        }
    }

    pub fn identity(base: crate::nadic::Base) -> Self {
        Self::full(GElem::identity(base))
    }

    pub fn group_element(&self) -> GElem {
        self.g
    }

    pub fn domain(&self) -> &ClopenSet {
        &self.domain
    }

    pub fn range(&self) -> ClopenSet {
        beta_image(&self.g, &self.domain)
    }

    pub fn apply(&self, x: &Point) -> Result<Point, Error> {
        if !self.domain.contains(x) {
            return Err(Error::OutOfDomain(alloc::format!("{}", x)));
        }
        beta_apply_point(&self.g, x)
    }

    /// `self ∘ other` on `{x ∈ dom other | other(x) ∈ dom self}`.
    pub fn compose(&self, other: &PartialMap) -> PartialMap {
        let meet = self.domain.intersect(&other.range());
        let domain = other.domain.intersect(&beta_preimage(&other.g, &meet));
        PartialMap {
            g: self.g.mul(&other.g),
            domain,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }
}

/// Fixed point `r·n^k / (n^k − 1)` of `β_{(r,k)}`, `k ≠ 0`.
pub fn fixed_point(g: &GElem) -> Option<Rational> {
    if g.k == 0 {
        return None;
    }
    let scale = g.base().pow_signed(g.k);
    Some(g.r.to_rational() * scale / (scale - Rational::one()))
}

/// Where the set `{t ∈ dom β_g : β_g(t) <= t}` is cut off inside the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescendingCut {
    /// Empty domain, or `β_g(t) > t` throughout.
    Empty,
    /// `β_g(t) <= t` on the whole domain.
    Full,
    /// Cut at an interior n-adic fixed point. For `k > 0` the descending part
    /// lies above the cut, for `k < 0` below it.
    NAdic(NAdic),
    /// Cut at an interior fixed point that is not n-adic. No maximal clopen
    /// interval exists in this case.
    NonNAdic(Rational),
}

pub fn descending_cut(g: &GElem) -> DescendingCut {
    let dom = beta_domain(g);
    let iv = match dom.components().first() {
        Some(iv) => *iv,
        None => return DescendingCut::Empty,
    };
    if g.k == 0 {
        return if g.r.is_positive() {
            DescendingCut::Empty
        } else {
            DescendingCut::Full
        };
    }
    let x = fixed_point(g).expect("k != 0");
    let (lo, hi) = (iv.lo().to_rational(), iv.hi().to_rational());
    let upward = g.k > 0;
    if x <= lo {
        return if upward {
            DescendingCut::Full
        } else {
            DescendingCut::Empty
        };
    }
    if x >= hi {
        return if upward {
            DescendingCut::Empty
        } else {
            DescendingCut::Full
        };
    }
    match NAdic::from_rational(x, g.base()) {
        Some(v) => DescendingCut::NAdic(v),
        None => DescendingCut::NonNAdic(x),
    }
}

/// The maximal clopen interval `I_g ⊆ dom β_g` on which `β_g(t) <= t`.
///
/// When the fixed point of `β_g` is interior to the domain but not n-adic,
/// the descending region has no largest clopen subinterval and `∅` is
/// returned; see [`descending_interval_at_level`] for the truncations.
pub fn descending_interval(g: &GElem) -> ClopenSet {
    let dom = beta_domain(g);
    match descending_cut(g) {
        DescendingCut::Empty | DescendingCut::NonNAdic(_) => ClopenSet::empty(g.base()),
        DescendingCut::Full => dom,
        DescendingCut::NAdic(x) => cut_domain(g, &dom, x),
    }
}

fn cut_domain(g: &GElem, dom: &ClopenSet, x: NAdic) -> ClopenSet {
    let iv = dom.components()[0];
    let (lo, hi) = if g.k > 0 { (x, iv.hi()) } else { (iv.lo(), x) };
    ClopenSet::interval(lo, hi).expect("cut lies inside the domain")
}

/// The largest clopen interval on which `β_g(t) <= t` whose endpoints have
/// denominator dividing `n^level`. Agrees with [`descending_interval`]
/// whenever the level is fine enough to resolve an n-adic cut, and increases
/// with `level` towards the descending region otherwise.
pub fn descending_interval_at_level(g: &GElem, level: u32) -> ClopenSet {
    let base = g.base();
    let dom = beta_domain(g);
    let x = match descending_cut(g) {
        DescendingCut::Empty => return ClopenSet::empty(base),
        DescendingCut::Full => return dom,
        DescendingCut::NAdic(x) => x.to_rational(),
        DescendingCut::NonNAdic(x) => x,
    };
    let scale = Rational::from_integer(base.pow(level));
    let grid = |v: Rational| NAdic::new(*v.numer(), level, base);
    let cut = if g.k > 0 {
        grid((x * scale).ceil())
    } else {
        grid((x * scale).floor())
    };
    let iv = dom.components()[0];
    let (lo, hi) = if g.k > 0 {
        (cut.max(iv.lo()), iv.hi())
    } else {
        (iv.lo(), cut.min(iv.hi()))
    };
    if lo < hi {
        ClopenSet::interval(lo, hi).expect("inside the domain")
    } else {
        ClopenSet::empty(base)
    }
}

/// `I_g = dom β_g` iff `k >= 0 and r <= 0`, or `k < 0 and r <= 1 − n^{−k}`.
/// For `r >= 1` both sides are empty and the answer is `true`.
pub fn descending_is_full(g: &GElem) -> bool {
    let one = NAdic::one(g.base());
    if g.r >= one {
        return true;
    }
    if g.k >= 0 {
        !g.r.is_positive()
    } else {
        g.r <= one - one.scale_pow(-g.k)
    }
}

/// A clopen subset of `Y = X × S_k`, one clopen set per slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlotSet {
    slots: Vec<ClopenSet>,
}

impl SlotSet {
    pub fn new(slots: Vec<ClopenSet>) -> Result<Self, Error> {
        if slots.is_empty() {
            return Err(Error::InvalidSlotCount);
        }
        let base = slots[0].base();
        if let Some(s) = slots.iter().find(|s| s.base() != base) {
            return Err(Error::BaseMismatch {
                expected: base.get(),
                found: s.base().get(),
            });
        }
        Ok(SlotSet { slots })
    }

    pub fn empty(base: crate::nadic::Base, k: usize) -> Self {
        SlotSet {
            slots: alloc::vec![ClopenSet::empty(base); k],
        }
    }

    pub fn full(base: crate::nadic::Base, k: usize) -> Self {
        SlotSet {
            slots: alloc::vec![ClopenSet::full(base); k],
        }
    }

    /// `E × {slot}`.
    pub fn single(set: ClopenSet, slot: usize, k: usize) -> Result<Self, Error> {
        if slot >= k {
            return Err(Error::SlotOutOfRange { slot, slots: k });
        }
        let mut out = Self::empty(set.base(), k);
        out.slots[slot] = set;
        Ok(out)
    }

    pub fn slots(&self) -> &[ClopenSet] {
        &self.slots
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.iter().all(ClopenSet::is_empty)
    }
}

/// Target slot `t + p` if it lies in `S_k`.
#[inline]
pub(crate) fn shifted_slot(t: usize, p: i32, k: usize) -> Option<usize> {
    let q = t as i64 + p as i64;
    (0..k as i64).contains(&q).then_some(q as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YMode {
    Domain,
    Image,
}

/// `dom β_{(r,j,p)}`: slot `t` carries `dom β_{(r,j)}` when `t + p ∈ S_k`.
pub fn y_beta_domain(h: &HElem, k: usize) -> SlotSet {
    let dom = beta_domain(&h.g);
    let slots = (0..k)
        .map(|t| match shifted_slot(t, h.p, k) {
            Some(_) => dom.clone(),
            None => ClopenSet::empty(h.g.base()),
        })
        .collect();
    SlotSet { slots }
}

/// `β_h(F)`: slot `t` of `F` lands in slot `t + p` via `β_{(r,j)}`.
pub fn y_beta_image(h: &HElem, set: &SlotSet) -> SlotSet {
    let k = set.slot_count();
    let mut out = SlotSet::empty(h.g.base(), k);
    for (t, s) in set.slots.iter().enumerate() {
        if let Some(q) = shifted_slot(t, h.p, k) {
            out.slots[q] = beta_image(&h.g, s);
        }
    }
    out
}

pub fn y_beta(h: &HElem, set: &SlotSet, mode: YMode) -> SlotSet {
    match mode {
        YMode::Domain => y_beta_domain(h, set.slot_count()),
        YMode::Image => y_beta_image(h, set),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nadic::Base;
    use crate::scalar::Scalar;

    fn b(n: u32) -> Base {
        Base::new(n).unwrap()
    }

    fn q(p: i128, e: u32) -> NAdic {
        NAdic::new(p, e, b(2))
    }

    fn g2(p: i128, e: u32, k: i32) -> GElem {
        GElem::new(q(p, e), k)
    }

    fn iv(a: NAdic, c: NAdic) -> ClopenSet {
        ClopenSet::interval(a, c).unwrap()
    }

    #[test]
    fn domains() {
        for n in 2..6u32 {
            let base = b(n);
            for i in 1..=n {
                let g = GElem::new(NAdic::new((i - 1) as i128, 1, base), 1);
                assert!(beta_domain(&g).is_full());
                let lo = NAdic::new((i - 1) as i128, 1, base);
                let hi = NAdic::new(i as i128, 1, base);
                assert_eq!(beta_range(&g), iv(lo, hi));
            }
            assert!(beta_domain(&GElem::new(NAdic::one(base), 0)).is_empty());
        }
        assert_eq!(beta_domain(&g2(-1, 0, -1)), iv(q(1, 1), q(1, 0)));
    }

    #[test]
    fn point_application() {
        let g = g2(1, 1, 1);
        let half_minus = Point::minus(q(1, 1)).unwrap();
        assert_eq!(
            beta_apply_point(&g, &half_minus).unwrap(),
            Point::minus(q(3, 2)).unwrap()
        );
        assert_eq!(
            beta_apply_point(&g, &Point::zero(b(2))).unwrap(),
            Point::plus(q(1, 1)).unwrap()
        );
        assert_eq!(
            beta_apply_point(&g, &Point::one(b(2))).unwrap(),
            Point::one(b(2))
        );
        let id = GElem::identity(b(2));
        assert_eq!(beta_apply_point(&id, &half_minus).unwrap(), half_minus);
        let out = Point::minus(q(1, 2)).unwrap();
        assert!(matches!(
            beta_apply_point(&g2(-1, 0, -1), &out),
            Err(Error::OutOfDomain(_))
        ));
        // 1/2⁻ is outside dom β_{(-1,-1)} = [1/2⁺, 1]
        assert!(beta_apply_point(&g2(-1, 0, -1), &half_minus).is_err());
    }

    #[test]
    fn images() {
        assert_eq!(
            beta_image(&g2(1, 1, 0), &iv(q(0, 0), q(1, 1))),
            iv(q(1, 1), q(1, 0))
        );
        assert!(beta_image(&g2(3, 2, 1), &ClopenSet::empty(b(2))).is_empty());
        assert_eq!(
            beta_image(&g2(0, 0, 1), &iv(q(1, 1), q(1, 0))),
            iv(q(1, 2), q(1, 1))
        );
    }

    #[test]
    fn composition_examples() {
        let phi = PartialMap::full(g2(0, 0, 1));
        let psi = PartialMap::full(g2(0, 0, -1));
        let c = phi.compose(&psi);
        assert!(c.group_element().is_identity());
        assert_eq!(c.domain(), &iv(q(0, 0), q(1, 1)));

        let id = PartialMap::identity(b(2));
        assert_eq!(id.compose(&psi), psi);

        let c = psi.compose(&phi);
        assert!(c.group_element().is_identity());
        assert!(c.domain().is_full());
    }

    #[test]
    fn partial_map_domain_checked() {
        assert!(PartialMap::new(g2(0, 0, -1), ClopenSet::full(b(2))).is_err());
        assert!(PartialMap::new(g2(0, 0, -1), iv(q(0, 0), q(1, 2))).is_ok());
    }

    #[test]
    fn pullbacks() {
        let chi = |s: ClopenSet| StepFunction::indicator(&s);
        let f = chi(ClopenSet::full(b(2)));
        assert_eq!(act_pullback(&f, &g2(-1, 0, -1)), chi(iv(q(1, 1), q(1, 0))));
        let f = chi(iv(q(0, 0), q(1, 1))).scale(Scalar::i());
        assert_eq!(act_pullback(&f, &GElem::identity(b(2))), f);
        assert_eq!(
            act_pullback(&chi(iv(q(0, 0), q(1, 1))), &g2(-1, 0, -1)),
            chi(iv(q(1, 1), q(3, 2)))
        );
    }

    #[test]
    fn descending_examples() {
        assert_eq!(descending_interval(&g2(1, 2, 1)), iv(q(1, 1), q(1, 0)));
        assert!(descending_interval(&g2(0, 0, -1)).is_empty());
        let g = g2(-1, 1, 2);
        assert_eq!(descending_interval(&g), beta_domain(&g));

        assert!(descending_is_full(&g2(-1, 0, -1)));
        assert!(!descending_is_full(&g2(1, 2, 1)));
        for k in 0..4 {
            assert!(descending_is_full(&g2(0, 0, k)));
        }
    }

    #[test]
    fn non_nadic_cut_has_no_maximal_interval() {
        // β(t) = t/4 + 1/2 has fixed point 2/3
        let g = g2(1, 1, 2);
        assert_eq!(
            descending_cut(&g),
            DescendingCut::NonNAdic(Rational::new(2, 3))
        );
        assert!(descending_interval(&g).is_empty());
        assert_eq!(descending_interval_at_level(&g, 2), iv(q(3, 2), q(1, 0)));
        assert_eq!(descending_interval_at_level(&g, 4), iv(q(11, 4), q(1, 0)));
        let n_adic = g2(1, 2, 1);
        assert_eq!(
            descending_interval_at_level(&n_adic, 3),
            descending_interval(&n_adic)
        );
    }

    #[test]
    fn y_action_examples() {
        let base = b(2);
        let h = HElem::new(q(1, 1), 1, -1);
        let d = y_beta_domain(&h, 2);
        assert!(d.slots()[0].is_empty());
        assert!(d.slots()[1].is_full());
        let full = SlotSet::full(base, 2);
        assert_eq!(y_beta(&HElem::identity(base), &full, YMode::Image), full);
        let img = y_beta(&h, &full, YMode::Image);
        assert_eq!(img.slots()[0], iv(q(1, 1), q(1, 0)));
        assert!(img.slots()[1].is_empty());
    }
}
