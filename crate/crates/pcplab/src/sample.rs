//! Seeded random inputs for the sampled suites.

use pcplab_core::{
    beta_domain, AlgebraElement, Base, ClopenSet, GElem, GroupoidElement, HElem, NAdic,
    PartialMap, Rational, Scalar, Session, SlotFunction, StepFunction, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Grid depth for random interval endpoints.
const DEPTH: u32 = 3;

pub struct Sampler {
    rng: ChaCha8Rng,
    base: Base,
    max_exp: u32,
    max_k: i32,
}

impl Sampler {
    pub fn new(seed: u64, base: Base, max_exp: u32, max_k: u32) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), base, max_exp, max_k: max_k as i32 }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn nadic(&mut self) -> NAdic {
        let e = self.rng.gen_range(0..=self.max_exp);
        let span = 2 * self.base.pow(e);
        NAdic::new(self.rng.gen_range(-span..=span), e, self.base)
    }

    pub fn gelem(&mut self) -> GElem {
        let r = self.nadic();
        GElem::new(r, self.rng.gen_range(-self.max_k..=self.max_k))
    }

    pub fn helem(&mut self, slots: usize) -> HElem {
        let p = slots as i32 - 1;
        let g = self.gelem();
        HElem { g, p: self.rng.gen_range(-p..=p) }
    }

    pub fn clopen(&mut self) -> ClopenSet {
        let m = self.base.pow(DEPTH);
        let count = self.rng.gen_range(0..4);
        let mut set = ClopenSet::empty(self.base);
        for _ in 0..count {
            let a = self.rng.gen_range(0..m);
            let b = self.rng.gen_range(a + 1..=m);
            let iv = ClopenSet::interval(NAdic::new(a, DEPTH, self.base), NAdic::new(b, DEPTH, self.base))
                .expect("grid interval");
            set = set.union(&iv);
        }
        set
    }

    pub fn scalar(&mut self) -> Scalar {
        let re = Rational::new(self.rng.gen_range(-3..=3), self.rng.gen_range(1..=4));
        let im = Rational::from_integer(self.rng.gen_range(-2..=2));
        Scalar::new(re, im)
    }

    pub fn step(&mut self) -> StepFunction {
        let mut f = StepFunction::zero(self.base);
        for _ in 0..self.rng.gen_range(1..=2) {
            let set = self.clopen();
            let c = self.scalar();
            f = f.add(&StepFunction::scaled_indicator(&set, c));
        }
        f
    }

    /// `f U^h` with `f` cut down to `ran β_h`; may be zero.
    pub fn monomial(&mut self, session: Session) -> AlgebraElement {
        let h = self.helem(session.slots());
        let range = session.range(&h);
        let slots = range.slots().iter().map(|r| self.step().restrict(r)).collect();
        AlgebraElement::monomial(session, h, SlotFunction::new(slots)).expect("restricted to the range")
    }

    pub fn element(&mut self, session: Session) -> AlgebraElement {
        let mut a = AlgebraElement::zero(session);
        for _ in 0..self.rng.gen_range(1..=3) {
            a = &a + &self.monomial(session);
        }
        a
    }

    /// Either `β_g` on its whole domain or on a random clopen part of it.
    pub fn partial_map(&mut self) -> PartialMap {
        let g = self.gelem();
        if self.rng.gen_bool(0.3) {
            return PartialMap::full(g);
        }
        let dom = beta_domain(&g).intersect(&self.clopen());
        PartialMap::new(g, dom).expect("inside the domain")
    }

    pub fn word(&mut self, min_len: usize, max_len: usize) -> Word {
        let len = self.rng.gen_range(min_len..=max_len);
        let n = self.base.get();
        Word::new((0..len).map(|_| self.rng.gen_range(0..n)).collect(), self.base).expect("digits below n")
    }

    /// A pair `(γ1, γ2)` with `γ2.λ` extending or truncating `γ1.μ`.
    pub fn composable(&mut self, min_len: usize, max_len: usize) -> (GroupoidElement, GroupoidElement) {
        let g1 = GroupoidElement::new(self.word(min_len, max_len), self.word(min_len, max_len), "z1");
        let lambda = if self.rng.gen_bool(0.5) {
            g1.mu.concat(&self.word(0, max_len))
        } else {
            let cut = self.rng.gen_range(0..=g1.mu.len());
            Word::new(g1.mu.digits()[..cut].to_vec(), self.base).expect("prefix")
        };
        let g2 = GroupoidElement::new(lambda, self.word(min_len, max_len), "z2");
        (g1, g2)
    }

    pub fn slot(&mut self, slots: usize) -> usize {
        self.rng.gen_range(0..slots)
    }
}
