//! The named verification suites behind `pcplab verify`.

use std::str::FromStr;

use pcplab_core::action::{descending_cut, fixed_point, DescendingCut};
use pcplab_core::algebra::{cuntz_generators, s_of_opat, unit_x};
use pcplab_core::groupoid::{y_compose, y_graph_consistency};
use pcplab_core::nest::nest_generator_at_level;
use pcplab_core::{
    beta_domain, bp_membership, cocycle, descending_interval, descending_is_full,
    graph_consistency, groupoid_compose, matrix_generators, nest_generator, nest_invariant,
    predicate_closure_check, verify_relations, volterra_projection, y_cocycle, AlgebraElement,
    Base, ClosureGrid, GElem, GroupPredicate, GroupoidElement, NAdic, PartialMap, RelationKind,
    RelationOutcome, RelationReport, Session, Witness, Word, YGroupoidElement,
};

use crate::config::{ConfigError, SessionConfig};
use crate::sample::Sampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Cuntz,
    Groupoid,
    Nest,
    Matrix,
    AlgebraAxioms,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Cuntz, Suite::Groupoid, Suite::Nest, Suite::Matrix, Suite::AlgebraAxioms];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cuntz => "cuntz",
            Suite::Groupoid => "groupoid",
            Suite::Nest => "nest",
            Suite::Matrix => "matrix",
            Suite::AlgebraAxioms => "algebra-axioms",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|v| v.name() == s)
            .ok_or_else(|| ConfigError::Suite(s.to_string()))
    }
}

pub fn run_suite(suite: Suite, cfg: &SessionConfig) -> Result<RelationReport, ConfigError> {
    cfg.validate()?;
    Ok(match suite {
        Suite::Cuntz => cuntz_suite(cfg)?,
        Suite::Groupoid => groupoid_suite(cfg)?,
        Suite::Nest => nest_suite(cfg)?,
        Suite::Matrix => matrix_suite(cfg)?,
        Suite::AlgebraAxioms => algebra_suite(cfg)?,
        Suite::All => {
            let mut all = RelationReport::new("all");
            for s in Suite::EACH {
                all.absorb(run_suite(s, cfg)?);
            }
            all
        }
    })
}

/// Runs `check` `count` times, keeping the first counterexample.
fn property(label: &str, count: usize, mut check: impl FnMut() -> Result<(), Witness>) -> RelationOutcome {
    for done in 0..count {
        if let Err(w) = check() {
            return RelationOutcome::fail(label, done + 1, w);
        }
    }
    RelationOutcome::pass(label, count)
}

fn same(lhs: &AlgebraElement, rhs: &AlgebraElement) -> Result<(), Witness> {
    let d = lhs - rhs;
    if d.is_zero() {
        Ok(())
    } else {
        Err(Witness::Element(d))
    }
}

fn sampler(cfg: &SessionConfig, base: Base) -> Sampler {
    Sampler::new(cfg.seed, base, cfg.max_exp, cfg.max_k)
}

fn cuntz_suite(cfg: &SessionConfig) -> Result<RelationReport, ConfigError> {
    let s = cfg.cuntz_session()?;
    let mut report = verify_relations(s, RelationKind::Cuntz).expect("single-slot session");
    let mut rng = sampler(cfg, s.base());
    report.push(property("opat_homomorphism", cfg.samples, || {
        let (phi, psi) = (rng.partial_map(), rng.partial_map());
        let lhs = s_of_opat(s, &phi.compose(&psi)).expect("single slot");
        let rhs = &s_of_opat(s, &phi).expect("single slot") * &s_of_opat(s, &psi).expect("single slot");
        same(&lhs, &rhs)
    }));

    let g = GElem::new(NAdic::zero(s.base()), 1);
    let h = g.inv();
    let prod = &unit_x(s, g) * &unit_x(s, h);
    let restricted = s_of_opat(s, &PartialMap::full(g).compose(&PartialMap::full(h))).expect("single slot");
    let naive = unit_x(s, g.mul(&h));
    report.push(if prod == restricted && prod != naive {
        RelationOutcome::pass("restriction_witness", 1)
    } else {
        RelationOutcome::fail("restriction_witness", 1, Witness::Element(&prod - &naive))
    });
    Ok(report)
}

fn words_up_to(base: Base, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(base)];
    let mut layer = out.clone();
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| (0..base.get()).map(move |d| w.concat(&Word::new(vec![d], base).expect("digit"))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn check_pair(g1: &GroupoidElement, g2: &GroupoidElement) -> Result<(), Witness> {
    let c = groupoid_compose(g1, g2).map_err(|e| Witness::Note(e.to_string()))?;
    let (lhs, rhs) = (cocycle(&c), cocycle(g1).mul(&cocycle(g2)));
    if lhs == rhs && c.k() == g1.k() + g2.k() {
        Ok(())
    } else {
        Err(Witness::Groups(vec![cocycle(g1), cocycle(g2), lhs]))
    }
}

fn groupoid_suite(cfg: &SessionConfig) -> Result<RelationReport, ConfigError> {
    let s = cfg.session()?;
    let base = s.base();
    let mut report = RelationReport::new("groupoid");
    let words = words_up_to(base, cfg.max_word_len);

    let mut pairs = 0;
    let mut mul_fail = None;
    let mut graph_fail = None;
    for l1 in &words {
        for m1 in &words {
            let g1 = GroupoidElement::new(l1.clone(), m1.clone(), "z");
            if graph_fail.is_none() && !graph_consistency(&g1) {
                graph_fail = Some(Witness::Groups(vec![cocycle(&g1)]));
            }
            for l2 in words.iter().filter(|l2| m1.strip_prefix_of(l2).is_some() || l2.strip_prefix_of(m1).is_some()) {
                for m2 in &words {
                    let g2 = GroupoidElement::new(l2.clone(), m2.clone(), "z");
                    pairs += 1;
                    if mul_fail.is_none() {
                        mul_fail = check_pair(&g1, &g2).err();
                    }
                }
            }
        }
    }
    let n_elems = words.len() * words.len();
    report.push(match mul_fail {
        None => RelationOutcome::pass("cocycle_mul_exhaustive", pairs),
        Some(w) => RelationOutcome::fail("cocycle_mul_exhaustive", pairs, w),
    });

    let mut rng = sampler(cfg, base);
    let long = cfg.max_word_len + 3;
    report.push(property("cocycle_mul_random", cfg.samples, || {
        let (g1, g2) = rng.composable(0, long);
        check_pair(&g1, &g2)?;
        let c = groupoid_compose(&g1, &g2).expect("checked");
        if graph_consistency(&c) && graph_consistency(&g1) {
            Ok(())
        } else {
            Err(Witness::Groups(vec![cocycle(&c)]))
        }
    }));
    report.push(match graph_fail {
        None => RelationOutcome::pass("graph_consistency", n_elems),
        Some(w) => RelationOutcome::fail("graph_consistency", n_elems, w),
    });
    report.push(property("representative_independence", cfg.samples, || {
        let (l, m, d) = (rng.word(0, long), rng.word(0, long), rng.word(1, 3));
        let a = cocycle(&GroupoidElement::new(l.clone(), m.clone(), "z"));
        let b = cocycle(&GroupoidElement::new(l.concat(&d), m.concat(&d), "w"));
        if a == b {
            Ok(())
        } else {
            Err(Witness::Groups(vec![a, b]))
        }
    }));

    let k = s.slots();
    report.push(property("y_cocycle_mul", cfg.samples, || {
        let (g1, g2) = rng.composable(0, long);
        let (i1, i2, q1) = (rng.slot(k), rng.slot(k), rng.slot(k));
        let y1 = YGroupoidElement::new(g1, i1, q1, k).expect("slots in range");
        let y2 = YGroupoidElement::new(g2, i2, i1, k).expect("slots in range");
        let c = y_compose(&y1, &y2).map_err(|e| Witness::Note(e.to_string()))?;
        let ok = y_cocycle(&c) == y_cocycle(&y1).mul(&y_cocycle(&y2))
            && y_cocycle(&c).g == cocycle(&c.base)
            && y_graph_consistency(&c, k);
        if ok {
            Ok(())
        } else {
            Err(Witness::Note(format!("{} vs {}", y_cocycle(&c), y_cocycle(&y1).mul(&y_cocycle(&y2)))))
        }
    }));
    Ok(report)
}

/// `p/n^e` with `|p| <= n^max_exp`, `e <= max_exp`, `|k| <= max_k`.
fn nest_grid(base: Base, max_exp: u32, max_k: u32) -> Vec<GElem> {
    let bound = base.pow(max_exp);
    let k = max_k as i32;
    let mut out = std::collections::BTreeSet::new();
    for e in 0..=max_exp {
        for p in -bound..=bound {
            for j in -k..=k {
                out.insert(GElem::new(NAdic::new(p, e, base), j));
            }
        }
    }
    out.into_iter().collect()
}

fn grid_check(label: &str, gs: &[GElem], mut check: impl FnMut(&GElem) -> Result<usize, Witness>) -> RelationOutcome {
    let mut checked = 0;
    for g in gs {
        match check(g) {
            Ok(c) => checked += c,
            Err(w) => return RelationOutcome::fail(label, checked + 1, w),
        }
    }
    RelationOutcome::pass(label, checked)
}

fn nest_suite(cfg: &SessionConfig) -> Result<RelationReport, ConfigError> {
    let s = cfg.cuntz_session()?;
    let base = s.base();
    let mut report = RelationReport::new("nest");
    let grid = nest_grid(base, cfg.max_exp, cfg.max_k);
    let levels: Vec<NAdic> = (1..=base.pow(cfg.max_exp)).map(|j| NAdic::new(j, cfg.max_exp, base)).collect();

    let invariant_everywhere = |a: &AlgebraElement, g: &GElem| {
        for r in &levels {
            if !nest_invariant(a, *r).expect("level in (0,1]") {
                return Err(Witness::Groups(vec![*g, GElem::new(*r, 0)]));
            }
        }
        Ok(levels.len())
    };
    report.push(grid_check("nest_invariant[T_g]", &grid, |g| {
        invariant_everywhere(&nest_generator(s, *g).expect("single slot"), g)
    }));
    report.push(grid_check("nest_invariant[T_g,truncated]", &grid, |g| {
        invariant_everywhere(&nest_generator_at_level(s, *g, cfg.max_exp + 2).expect("single slot"), g)
    }));
    report.push(grid_check("descending_is_full", &grid, |g| {
        if descending_is_full(g) == (descending_interval(g) == beta_domain(g)) {
            Ok(1)
        } else {
            Err(Witness::Groups(vec![*g]))
        }
    }));
    report.push(grid_check("descending_cut_is_fixed_point", &grid, |g| match descending_cut(g) {
        DescendingCut::NAdic(x) => {
            let iv = descending_interval(g).components()[0];
            let at_cut = iv.lo() == x || iv.hi() == x;
            if at_cut && fixed_point(g) == Some(x.to_rational()) {
                Ok(1)
            } else {
                Err(Witness::Groups(vec![*g]))
            }
        }
        _ => Ok(0),
    }));

    let n = base.get() as i128;
    let last = cuntz_generators(s).expect("single slot").pop().expect("n >= 2");
    let cut = NAdic::new(n - 1, 1, base);
    report.push(if nest_invariant(&last, cut).expect("level") {
        RelationOutcome::fail("S_n_not_invariant", 1, Witness::Element(last))
    } else {
        RelationOutcome::pass("S_n_not_invariant", 1)
    });

    let mut order_checked = 0;
    let mut order_fail = None;
    for a in &levels {
        for b in &levels {
            let (pa, pb) = (volterra_projection(s, *a).expect("level"), volterra_projection(s, *b).expect("level"));
            let low = if a <= b { &pa } else { &pb };
            order_checked += 1;
            if order_fail.is_none() {
                order_fail = same(&(&pa * &pb), low).err();
            }
        }
    }
    report.push(match order_fail {
        None => RelationOutcome::pass("nest_order", order_checked),
        Some(w) => RelationOutcome::fail("nest_order", order_checked, w),
    });

    let cgrid = ClosureGrid { base, max_exp: cfg.max_exp.min(3), max_k: cfg.max_k.min(2) };
    let zero = NAdic::zero(base);
    let expected: [(&str, GroupPredicate, Option<GElem>); 3] = [
        ("UHF", GroupPredicate::Uhf, None),
        ("Triangular", GroupPredicate::Triangular, Some(GElem::new(zero, 1))),
        ("RefinementTAF", GroupPredicate::RefinementTaf, Some(GElem::new(NAdic::new(1, 1, base), 0))),
    ];
    for (name, pred, inv_witness) in expected {
        let r = predicate_closure_check(&pred, &cgrid);
        for o in r.outcomes {
            let expect_pass = o.label == "closed_mul" || inv_witness.is_none();
            let matches = match (&o.witness, inv_witness) {
                (None, _) => expect_pass,
                (Some(Witness::Groups(w)), Some(g)) => !expect_pass && w == &vec![g, g.inv()],
                _ => false,
            };
            let suffix = if expect_pass { "" } else { "_fails" };
            report.push(RelationOutcome {
                label: format!("closure[{name}]/{}{suffix}", o.label),
                passed: matches,
                checked: o.checked,
                witness: o.witness,
            });
        }
    }

    let mut rng = sampler(cfg, base);
    let tri = GroupPredicate::Triangular;
    let only = |a: AlgebraElement| {
        let mut out = AlgebraElement::zero(s);
        for (h, f) in a.terms() {
            if tri.contains(&h.g) {
                out = &out + &AlgebraElement::monomial(s, *h, f.clone()).expect("existing term");
            }
        }
        out
    };
    report.push(property("bp_multiplicative[Triangular]", cfg.samples, || {
        let (a, b) = (only(rng.element(s)), only(rng.element(s)));
        let ab = &a * &b;
        if bp_membership(&ab, &tri) {
            Ok(())
        } else {
            Err(Witness::Element(ab))
        }
    }));
    Ok(report)
}

fn uhf_part(a: &AlgebraElement) -> AlgebraElement {
    let s = a.session();
    let mut out = AlgebraElement::zero(s);
    for (h, f) in a.terms() {
        if h.g.k == 0 && h.p == 0 {
            out = &out + &AlgebraElement::monomial(s, *h, f.clone()).expect("existing term");
        }
    }
    out
}

fn uhf_closure(label: &str, s: Session, count: usize, rng: &mut Sampler) -> RelationOutcome {
    property(label, count, || {
        let (a, b) = (uhf_part(&rng.element(s)), uhf_part(&rng.element(s)));
        for x in [&a * &b, a.adjoint()] {
            if !x.all_terms(|h| h.g.k == 0 && h.p == 0) {
                return Err(Witness::Element(x));
            }
        }
        Ok(())
    })
}

fn matrix_suite(cfg: &SessionConfig) -> Result<RelationReport, ConfigError> {
    let s = cfg.session()?;
    let mut report = verify_relations(s, RelationKind::CuntzKrieger).expect("any session");
    report.suite = "matrix".into();
    let single = cfg.cuntz_session()?;
    let reduces = matrix_generators(single).t == cuntz_generators(single).expect("single slot");
    report.push(if reduces {
        RelationOutcome::pass("k1_reduces_to_cuntz", 1)
    } else {
        RelationOutcome::fail("k1_reduces_to_cuntz", 1, Witness::Note("T_i != S_i for k = 1".into()))
    });
    let mut rng = sampler(cfg, s.base());
    report.push(uhf_closure("uhf_core_closed", s, cfg.samples, &mut rng));
    Ok(report)
}

fn algebra_suite(cfg: &SessionConfig) -> Result<RelationReport, ConfigError> {
    let s = cfg.session()?;
    let mut rng = sampler(cfg, s.base());
    let triples: Vec<_> = (0..cfg.samples).map(|_| (rng.element(s), rng.element(s), rng.element(s))).collect();
    let mut report = RelationReport::new("algebra-axioms");
    let mut each = |label: &str, f: &dyn Fn(&AlgebraElement, &AlgebraElement, &AlgebraElement) -> Result<(), Witness>| {
        let mut it = triples.iter();
        report.push(property(label, triples.len(), || {
            let (a, b, c) = it.next().expect("one triple per sample");
            f(a, b, c)
        }));
    };
    each("associativity", &|a, b, c| same(&(&(a * b) * c), &(a * &(b * c))));
    each("involution", &|a, _, _| same(&a.adjoint().adjoint(), a));
    each("adjoint_reverses_products", &|a, b, _| same(&(a * b).adjoint(), &(&b.adjoint() * &a.adjoint())));
    each("distributivity", &|a, b, c| {
        same(&(a * &(b + c)), &(&(a * b) + &(a * c)))?;
        same(&(&(a + b) * c), &(&(a * c) + &(b * c)))
    });
    each("identity", &|a, _, _| {
        let i = AlgebraElement::identity(a.session());
        same(&(a * &i), a)?;
        same(&(&i * a), a)
    });
    each("coefficient_invariant", &|a, b, _| {
        for x in [a * b, a.adjoint()] {
            if !x.coefficient_invariant_holds() {
                return Err(Witness::Element(x));
            }
        }
        Ok(())
    });
    report.push(uhf_closure("uhf_core_closed", s, cfg.samples, &mut rng));
    Ok(report)
}
