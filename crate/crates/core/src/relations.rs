//! Relation suites and their reports.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{
    cuntz_generators, matrix_generators, AlgebraElement, MatrixGenerators, Session,
};
use crate::error::Error;
use crate::group::GElem;

/// Evidence attached to a failed relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Left side minus right side of an algebra identity.
    Element(AlgebraElement),
    /// Group elements, e.g. `[a, b, ab]` or `[g, g⁻¹]`.
    Groups(Vec<GElem>),
    Note(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationOutcome {
    pub label: String,
    pub passed: bool,
    /// Number of instances examined under this label.
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl RelationOutcome {
    pub fn pass(label: impl Into<String>, checked: usize) -> Self {
        RelationOutcome {
            label: label.into(),
            passed: true,
            checked,
            witness: None,
        }
    }

    pub fn fail(label: impl Into<String>, checked: usize, witness: Witness) -> Self {
        RelationOutcome {
            label: label.into(),
            passed: false,
            checked,
            witness: Some(witness),
        }
    }

    /// `lhs == rhs` by canonical form of `lhs − rhs`.
    pub fn equality(label: impl Into<String>, lhs: &AlgebraElement, rhs: &AlgebraElement) -> Self {
        let diff = lhs - rhs;
        if diff.is_zero() {
            Self::pass(label, 1)
        } else {
            Self::fail(label, 1, Witness::Element(diff))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub suite: String,
    pub outcomes: Vec<RelationOutcome>,
}

impl RelationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        RelationReport {
            suite: suite.into(),
            outcomes: Vec::new(),
        }
    }

    pub fn push(&mut self, outcome: RelationOutcome) {
        self.outcomes.push(outcome);
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn get(&self, label: &str) -> Option<&RelationOutcome> {
        self.outcomes.iter().find(|o| o.label == label)
    }

    /// Appends `other`'s outcomes, prefixing labels with its suite name.
    pub fn absorb(&mut self, other: RelationReport) {
        for mut o in other.outcomes {
            o.label = format!("{}/{}", other.suite, o.label);
            self.outcomes.push(o);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    Cuntz,
    CuntzKrieger,
}

pub fn verify_relations(session: Session, kind: RelationKind) -> Result<RelationReport, Error> {
    match kind {
        RelationKind::Cuntz => Ok(verify_cuntz_family(session, &cuntz_generators(session)?)),
        RelationKind::CuntzKrieger => Ok(verify_cuntz_krieger_family(
            session,
            &matrix_generators(session),
        )),
    }
}

/// `S_i*S_j = δ_ij I` and `Σ S_i S_i* = I` for an arbitrary family.
pub fn verify_cuntz_family(session: Session, s: &[AlgebraElement]) -> RelationReport {
    let id = AlgebraElement::identity(session);
    let zero = AlgebraElement::zero(session);
    let mut report = RelationReport::new("cuntz");
    for (i, si) in s.iter().enumerate() {
        let adj = si.adjoint();
        for (j, sj) in s.iter().enumerate() {
            let rhs = if i == j { &id } else { &zero };
            report.push(RelationOutcome::equality(
                format!("S*S[{},{}]", i + 1, j + 1),
                &(&adj * sj),
                rhs,
            ));
        }
    }
    let sum = s
        .iter()
        .fold(zero.clone(), |acc, si| &acc + &(si * &si.adjoint()));
    report.push(RelationOutcome::equality("sum_SS*", &sum, &id));
    report
}

struct Edge<'a> {
    name: String,
    elem: &'a AlgebraElement,
    source: usize,
    range: usize,
}

/// Cuntz–Krieger relations for the graph with `n − 1` loops at `v_1`, edges
/// `R_i : v_i → v_{i+1}` and `T_n : v_k → v_1`.
pub fn verify_cuntz_krieger_family(session: Session, m: &MatrixGenerators) -> RelationReport {
    let k = m.p.len();
    let n = m.t.len();
    let mut edges = Vec::new();
    for (i, t) in m.t.iter().enumerate() {
        let source = if i + 1 == n { k - 1 } else { 0 };
        edges.push(Edge {
            name: format!("T{}", i + 1),
            elem: t,
            source,
            range: 0,
        });
    }
    for (i, r) in m.r.iter().enumerate() {
        edges.push(Edge {
            name: format!("R{}", i + 1),
            elem: r,
            source: i,
            range: i + 1,
        });
    }

    let mut report = RelationReport::new("cuntz_krieger");
    for e in &edges {
        let lhs = &e.elem.adjoint() * e.elem;
        report.push(RelationOutcome::equality(
            format!("CK_source[{}]", e.name),
            &lhs,
            &m.p[e.source],
        ));
    }
    for v in 0..k {
        let sum = edges
            .iter()
            .filter(|e| e.range == v)
            .fold(AlgebraElement::zero(session), |acc, e| {
                &acc + &(e.elem * &e.elem.adjoint())
            });
        report.push(RelationOutcome::equality(
            format!("CK_range[v{}]", v + 1),
            &sum,
            &m.p[v],
        ));
    }
    let zero = AlgebraElement::zero(session);
    for a in 0..k {
        report.push(RelationOutcome::equality(
            format!("CK_projection[v{}]", a + 1),
            &(&m.p[a] * &m.p[a]),
            &m.p[a],
        ));
        for b in a + 1..k {
            report.push(RelationOutcome::equality(
                format!("CK_orthogonal[v{},v{}]", a + 1, b + 1),
                &(&m.p[a] * &m.p[b]),
                &zero,
            ));
        }
    }
    let total = m.p.iter().fold(zero, |acc, p| &acc + p);
    report.push(RelationOutcome::equality(
        "CK_vertex_sum",
        &total,
        &AlgebraElement::identity(session),
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clopen::ClopenSet;
    use crate::step::StepFunction;

    #[test]
    fn cuntz_passes() {
        for n in 2..=4 {
            let r = verify_relations(Session::cuntz(n).unwrap(), RelationKind::Cuntz).unwrap();
            assert!(r.passed());
            assert_eq!(r.outcomes.len(), (n * n + 1) as usize);
        }
    }

    #[test]
    fn broken_generator_fails_with_witness() {
        let s = Session::cuntz(2).unwrap();
        let mut gens = cuntz_generators(s).unwrap();
        let set = ClopenSet::interval(s.nadic(1, 1), s.nadic(3, 2)).unwrap();
        gens[1] = AlgebraElement::monomial_x(
            s,
            GElem::new(s.nadic(1, 1), 1),
            StepFunction::indicator(&set),
        )
        .unwrap();
        let r = verify_cuntz_family(s, &gens);
        assert!(!r.passed());
        let bad = r.get("S*S[2,2]").unwrap();
        assert!(!bad.passed);
        assert!(matches!(bad.witness, Some(Witness::Element(ref w)) if !w.is_zero()));
        assert!(r.get("S*S[1,1]").unwrap().passed);
        assert!(!r.get("sum_SS*").unwrap().passed);
    }

    #[test]
    fn cuntz_krieger_passes() {
        for (n, k) in [(2, 2), (2, 3), (3, 2), (2, 1)] {
            let r =
                verify_relations(Session::new(n, k).unwrap(), RelationKind::CuntzKrieger).unwrap();
            assert!(
                r.passed(),
                "n={n} k={k}: {:?}",
                r.failures().map(|o| &o.label).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn cuntz_needs_single_slot() {
        let s = Session::new(2, 2).unwrap();
        assert_eq!(
            verify_relations(s, RelationKind::Cuntz),
            Err(Error::RequiresSingleSlot)
        );
    }
}
