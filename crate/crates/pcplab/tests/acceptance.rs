//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pcplab::json::{element_from_str, report_to_string};
use pcplab::parse::{parse_expr, ParseError};
use pcplab::sample::Sampler;
use pcplab::{run_suite, serialize, Format, SessionConfig, Suite};
use pcplab_core::action::beta_apply_point;
use pcplab_core::algebra::{cuntz_generator, s_of_opat, unit_x};
use pcplab_core::{
    beta_domain, beta_image, beta_preimage, predicate_closure_check, verify_relations,
    AlgebraElement, Base, ClosureGrid, Error, GElem, GroupPredicate, HElem, NAdic, PartialMap,
    Point, RelationKind, Session, Witness,
};

const SEED: u64 = 20240601;
const CUNTZ_BUDGET: Duration = Duration::from_secs(1);
const NEST_BUDGET: Duration = Duration::from_secs(30);
const OPAT_PAIRS: usize = 500;
const GROUP_TRIPLES: usize = 1000;
const ACTION_PAIRS: usize = 500;
const COCYCLE_RANDOM: usize = 500;
const AXIOM_TRIPLES: usize = 500;
const UHF_PAIRS: usize = 200;
const ROUND_TRIPS: usize = 500;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cuntz_relations() -> Check {
    for n in [2, 3, 4] {
        let t = Instant::now();
        let r = verify_relations(Session::cuntz(n).unwrap(), RelationKind::Cuntz).unwrap();
        let took = t.elapsed();
        ensure(r.passed(), || format!("n={n}: {:?}", r.failures().map(|o| &o.label).collect::<Vec<_>>()))?;
        ensure(r.outcomes.len() == (n * n + 1) as usize, || format!("n={n}: {} identities", r.outcomes.len()))?;
        ensure(took < CUNTZ_BUDGET, || format!("n={n}: took {took:?}"))?;
    }
    Ok(())
}

fn opat_homomorphism() -> Check {
    for n in [2, 3] {
        let s = Session::cuntz(n).unwrap();
        let mut rng = Sampler::new(SEED + n as u64, s.base(), 3, 3);
        for i in 0..OPAT_PAIRS {
            let (phi, psi) = (rng.partial_map(), rng.partial_map());
            let lhs = s_of_opat(s, &phi.compose(&psi)).unwrap();
            let rhs = &s_of_opat(s, &phi).unwrap() * &s_of_opat(s, &psi).unwrap();
            ensure(lhs == rhs, || format!("n={n}, pair {i}: {lhs} vs {rhs}"))?;
        }
    }
    let s = Session::cuntz(2).unwrap();
    let g = GElem::new(NAdic::zero(s.base()), 1);
    let h = GElem::new(NAdic::zero(s.base()), -1);
    let prod = &unit_x(s, g) * &unit_x(s, h);
    let naive = unit_x(s, g.mul(&h));
    let composed = s_of_opat(s, &PartialMap::full(g).compose(&PartialMap::full(h))).unwrap();
    ensure(prod == composed, || format!("{prod} vs {composed}"))?;
    ensure(prod != naive, || "restriction witness collapsed".into())
}

fn group_and_action_laws() -> Check {
    for n in [2, 3] {
        let base = Base::new(n).unwrap();
        let mut rng = Sampler::new(SEED * 3 + n as u64, base, 4, 4);
        for _ in 0..GROUP_TRIPLES {
            let (a, b, c) = (rng.gelem(), rng.gelem(), rng.gelem());
            let e = GElem::identity(base);
            ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || format!("G assoc {a} {b} {c}"))?;
            ensure(a.mul(&e) == a && e.mul(&a) == a, || format!("G unit {a}"))?;
            ensure(a.mul(&a.inv()).is_identity() && a.inv().mul(&a).is_identity(), || format!("G inv {a}"))?;
            let (x, y, z) = (rng.helem(3), rng.helem(3), rng.helem(3));
            ensure(x.mul(&y).mul(&z) == x.mul(&y.mul(&z)), || format!("H assoc {x} {y} {z}"))?;
            ensure(x.mul(&x.inv()).is_identity() && x.mul(&HElem::identity(base)) == x, || format!("H inv {x}"))?;
        }
        for _ in 0..ACTION_PAIRS {
            let (phi, psi) = (rng.partial_map(), rng.partial_map());
            let c = phi.compose(&psi);
            let gh = phi.group_element().mul(&psi.group_element());
            ensure(c.domain().is_subset(&beta_domain(&gh)), || format!("domain of {gh}"))?;
            for iv in c.domain().components() {
                for x in [Point::start(iv.lo()), Point::end(iv.hi())] {
                    let two = phi.apply(&psi.apply(&x).unwrap()).unwrap();
                    let one = beta_apply_point(&gh, &x).unwrap();
                    ensure(two == one, || format!("{gh} at {x}: {two} vs {one}"))?;
                }
            }
            let g = rng.gelem();
            let set = rng.clopen();
            let back = beta_preimage(&g, &beta_image(&g, &set));
            ensure(back == set.intersect(&beta_domain(&g)), || format!("round trip {g}"))?;
        }
    }
    Ok(())
}

fn suite_passes(suite: Suite, cfg: SessionConfig) -> Check {
    let r = run_suite(suite, &cfg).map_err(|e| e.to_string())?;
    ensure(r.passed(), || {
        format!("{} n={} k={}: {:?}", r.suite, cfg.n, cfg.k, r.failures().map(|o| &o.label).collect::<Vec<_>>())
    })
}

fn cocycle_suite() -> Check {
    for n in [2, 3] {
        let cfg = SessionConfig { seed: SEED, samples: COCYCLE_RANDOM, max_word_len: 3, k: 2, ..SessionConfig::new(n, 2) };
        suite_passes(Suite::Groupoid, cfg)?;
    }
    Ok(())
}

fn nest_suite() -> Check {
    let cfg = SessionConfig { seed: SEED, samples: 200, max_exp: 4, max_k: 3, ..SessionConfig::new(2, 1) };
    let t = Instant::now();
    let r = run_suite(Suite::Nest, &cfg).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    ensure(r.passed(), || format!("{:?}", r.failures().map(|o| &o.label).collect::<Vec<_>>()))?;
    for label in ["nest_invariant[T_g]", "descending_is_full", "S_n_not_invariant"] {
        ensure(r.get(label).is_some_and(|o| o.passed && o.checked > 0), || format!("{label} missing"))?;
    }
    let s = Session::cuntz(2).unwrap();
    let s2 = cuntz_generator(s, 2).unwrap();
    ensure(!pcplab_core::nest_invariant(&s2, NAdic::new(1, 1, s.base())).unwrap(), || "S2 invariant".into())?;
    ensure(took < NEST_BUDGET, || format!("took {took:?}"))
}

fn cuntz_krieger() -> Check {
    for (n, k) in [(2, 2), (2, 3), (3, 2)] {
        let r = verify_relations(Session::new(n, k).unwrap(), RelationKind::CuntzKrieger).unwrap();
        ensure(r.passed(), || format!("n={n} k={k}: {:?}", r.failures().map(|o| &o.label).collect::<Vec<_>>()))?;
        ensure(r.get("CK_vertex_sum").is_some_and(|o| o.passed), || "vertex sum missing".into())?;
        let sources = r.outcomes.iter().filter(|o| o.label.starts_with("CK_source")).count();
        ensure(sources == n as usize + k - 1, || format!("{sources} edges"))?;
    }
    Ok(())
}

fn star_algebra() -> Check {
    for (n, k) in [(2, 1), (3, 1), (2, 2)] {
        let cfg = SessionConfig { seed: SEED, samples: AXIOM_TRIPLES, ..SessionConfig::new(n, k) };
        suite_passes(Suite::AlgebraAxioms, cfg)?;
    }
    Ok(())
}

fn closure_checks() -> Check {
    let base = Base::new(2).unwrap();
    let grid = ClosureGrid { base, max_exp: 3, max_k: 3 };
    let uhf = predicate_closure_check(&GroupPredicate::Uhf, &grid);
    ensure(uhf.passed(), || "UHF not closed".into())?;
    let tri = predicate_closure_check(&GroupPredicate::Triangular, &grid);
    ensure(tri.get("closed_mul").unwrap().passed, || "Triangular not mul-closed".into())?;
    let unit = GElem::new(NAdic::zero(base), 1);
    let inv = tri.get("closed_inv").unwrap();
    ensure(inv.witness == Some(Witness::Groups(vec![unit, unit.inv()])), || format!("{:?}", inv.witness))?;
    for (n, k) in [(2, 1), (2, 2)] {
        let s = Session::new(n, k).unwrap();
        let mut rng = Sampler::new(SEED, s.base(), 3, 2);
        let core = |a: AlgebraElement| {
            a.terms()
                .filter(|(h, _)| h.g.k == 0 && h.p == 0)
                .fold(AlgebraElement::zero(s), |acc, (h, f)| &acc + &AlgebraElement::monomial(s, *h, f.clone()).unwrap())
        };
        for _ in 0..UHF_PAIRS {
            let (a, b) = (core(rng.element(s)), core(rng.element(s)));
            for x in [&a * &b, a.adjoint()] {
                ensure(x.all_terms(|h| h.g.k == 0 && h.p == 0), || format!("left the core: {x}"))?;
            }
        }
    }
    Ok(())
}

fn parser_and_serialization() -> Check {
    let sessions = [(2, 1), (3, 1), (2, 3)];
    let per = ROUND_TRIPS.div_ceil(sessions.len());
    for (n, k) in sessions {
        let s = Session::new(n, k).unwrap();
        let mut rng = Sampler::new(SEED, s.base(), 3, 3);
        for _ in 0..per {
            let a = rng.element(s);
            let text = serialize(&a, Format::Text);
            ensure(parse_expr(&text, s).as_ref() == Ok(&a), || format!("text: {text}"))?;
            let json = serialize(&a, Format::Json);
            ensure(element_from_str(&json).ok().as_ref() == Some(&a), || format!("json: {json}"))?;
        }
    }
    let s = Session::cuntz(2).unwrap();
    ensure(parse_expr("S1' * S1", s) == Ok(AlgebraElement::identity(s)), || "S1'*S1".into())?;
    ensure(parse_expr("chi[0,1/2] U(0,1)", s) == Ok(cuntz_generator(s, 1).unwrap()), || "chi S1".into())?;
    let bad = parse_expr("chi[0,1] U(1/2,1)", s);
    ensure(
        matches!(bad, Err(ParseError::Invalid { source: Error::CoefficientInvariant { .. }, .. })),
        || format!("{bad:?}"),
    )?;
    let cfg = SessionConfig { seed: SEED, samples: 50, ..SessionConfig::new(2, 2) };
    let a = report_to_string(&run_suite(Suite::All, &cfg).unwrap());
    let b = report_to_string(&run_suite(Suite::All, &cfg).unwrap());
    ensure(a == b, || "reports differ for one seed".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("cuntz relations, n in {2,3,4}", cuntz_relations),
        ("opat homomorphism and restriction witness", opat_homomorphism),
        ("group and action laws", group_and_action_laws),
        ("cocycle multiplicativity and graph consistency", cocycle_suite),
        ("nest invariance and descending intervals", nest_suite),
        ("cuntz-krieger relations", cuntz_krieger),
        ("star-algebra axioms", star_algebra),
        ("closure checks", closure_checks),
        ("parser and serialization", parser_and_serialization),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(()) => println!("PASS {} {name} ({:.2?})", i + 1, t.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
