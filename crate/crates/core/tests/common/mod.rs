#![allow(dead_code)]

use pcplab_core::{
    AlgebraElement, Base, ClopenSet, GElem, HElem, NAdic, PartialMap, Rational, Scalar, Session,
    SlotFunction, StepFunction,
};
use proptest::prelude::*;

pub const DEPTH: u32 = 3;

pub fn nadic(base: Base, max_exp: u32, span: i128) -> impl Strategy<Value = NAdic> {
    (0..=max_exp, -span..=span).prop_map(move |(e, p)| NAdic::new(p, e, base))
}

pub fn gelem(base: Base) -> impl Strategy<Value = GElem> {
    (nadic(base, DEPTH, 2 * base.pow(DEPTH)), -3i32..=3).prop_map(|(r, k)| GElem::new(r, k))
}

pub fn helem(base: Base, k: usize) -> impl Strategy<Value = HElem> {
    let kk = k as i32;
    (gelem(base), -(kk - 1)..=(kk - 1)).prop_map(|(g, p)| HElem { g, p })
}

/// Endpoint pairs on the level-`DEPTH` grid; degenerate pairs are skipped.
pub fn clopen(base: Base) -> impl Strategy<Value = ClopenSet> {
    let m = base.pow(DEPTH);
    prop::collection::vec((0..=m, 0..=m), 0..4).prop_map(move |pairs| {
        pairs.into_iter().filter(|(a, b)| a < b).fold(ClopenSet::empty(base), |acc, (a, b)| {
            let iv = ClopenSet::interval(NAdic::new(a, DEPTH, base), NAdic::new(b, DEPTH, base)).unwrap();
            acc.union(&iv)
        })
    })
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i128..=3, 1i128..=3, -2i128..=2).prop_map(|(a, b, c)| {
        Scalar::new(Rational::new(a, b), Rational::from_integer(c))
    })
}

pub fn step(base: Base) -> impl Strategy<Value = StepFunction> {
    prop::collection::vec((clopen(base), scalar()), 1..3).prop_map(move |parts| {
        parts.iter().fold(StepFunction::zero(base), |acc, (set, c)| {
            acc.add(&StepFunction::scaled_indicator(set, *c))
        })
    })
}

/// A monomial `f U^h` with `f` cut down to `ran β_h`.
pub fn monomial(session: Session) -> impl Strategy<Value = AlgebraElement> {
    let base = session.base();
    let k = session.slots();
    (helem(base, k), prop::collection::vec(step(base), k)).prop_map(move |(h, fs)| {
        let range = session.range(&h);
        let f = SlotFunction::new(
            fs.iter().zip(range.slots()).map(|(f, r)| f.restrict(r)).collect(),
        );
        AlgebraElement::monomial(session, h, f).unwrap()
    })
}

pub fn element(session: Session) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec(monomial(session), 1..3)
        .prop_map(move |ms| ms.iter().fold(AlgebraElement::zero(session), |acc, m| &acc + m))
}

/// A restriction of `β_g` to a clopen part of its domain.
pub fn partial_map(base: Base) -> impl Strategy<Value = PartialMap> {
    (gelem(base), clopen(base), any::<bool>()).prop_map(|(g, set, full)| {
        if full {
            PartialMap::full(g)
        } else {
            let dom = pcplab_core::beta_domain(&g).intersect(&set);
            PartialMap::new(g, dom).unwrap()
        }
    })
}

pub fn base() -> impl Strategy<Value = Base> {
    (2u32..=4).prop_map(|n| Base::new(n).unwrap())
}

pub fn session() -> impl Strategy<Value = Session> {
    (2u32..=3, 1usize..=3).prop_map(|(n, k)| Session::new(n, k).unwrap())
}
