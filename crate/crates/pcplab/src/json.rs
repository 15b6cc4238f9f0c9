//! JSON forms of the core types. Every `*Json` struct is a plain mirror of
//! a core value; `to_json` / `from_json` convert, validating on the way in.

use pcplab_core::nest::KSign;
use pcplab_core::{
    AlgebraElement, Base, ClopenSet, Error, GElem, GroupPredicate, GroupoidElement, HElem,
    Interval, NAdic, PartialMap, Rational, RelationOutcome, RelationReport, Scalar, Session,
    SlotFunction, SlotSet, StepFunction, Witness, Word, YGroupoidElement,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] Error),
    #[error("{0}")]
    Shape(String),
}

fn shape<T>(msg: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError::Shape(msg.into()))
}

pub type IntervalJson = [String; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub r: String,
    pub k: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub interval: IntervalJson,
    pub re: String,
    pub im: String,
}

pub type StepJson = Vec<PieceJson>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientJson {
    Single(StepJson),
    Slots(Vec<StepJson>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionJson {
    pub n: u32,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub g: GroupJson,
    pub f: CoefficientJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub session: SessionJson,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessJson {
    Element(ElementJson),
    Groups(Vec<GroupJson>),
    Note(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeJson {
    pub label: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub suite: String,
    pub passed: bool,
    pub relations: Vec<OutcomeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialMapJson {
    pub g: GroupJson,
    pub domain: Vec<IntervalJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub tail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomJson {
    pub r_min: Option<String>,
    pub k_sign: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PredicateJson {
    Named { name: String },
    Custom { custom: CustomJson },
}

fn rational_from_str(s: &str) -> Result<Rational, JsonError> {
    s.parse::<Rational>()
        .map_err(|_| JsonError::Shape(format!("bad rational `{s}`")))
}

pub fn interval_to_json(iv: &Interval) -> IntervalJson {
    [iv.lo().to_wire(), iv.hi().to_wire()]
}

pub fn clopen_to_json(set: &ClopenSet) -> Vec<IntervalJson> {
    set.components().iter().map(interval_to_json).collect()
}

pub fn clopen_from_json(base: Base, parts: &[IntervalJson]) -> Result<ClopenSet, JsonError> {
    let pairs = parts
        .iter()
        .map(|[a, b]| Ok((NAdic::from_wire(a, base)?, NAdic::from_wire(b, base)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(ClopenSet::from_pairs(base, pairs)?)
}

pub fn gelem_to_json(g: &GElem) -> GroupJson {
    GroupJson { r: g.r.to_wire(), k: g.k, p: None }
}

pub fn helem_to_json(h: &HElem) -> GroupJson {
    GroupJson { p: Some(h.p), ..gelem_to_json(&h.g) }
}

pub fn gelem_from_json(base: Base, g: &GroupJson) -> Result<GElem, JsonError> {
    if g.p.is_some_and(|p| p != 0) {
        return shape("expected an element of G, found one with p != 0");
    }
    Ok(GElem::new(NAdic::from_wire(&g.r, base)?, g.k))
}

pub fn helem_from_json(base: Base, g: &GroupJson) -> Result<HElem, JsonError> {
    Ok(HElem { g: GElem::new(NAdic::from_wire(&g.r, base)?, g.k), p: g.p.unwrap_or(0) })
}

pub fn step_to_json(f: &StepFunction) -> StepJson {
    f.pieces()
        .iter()
        .map(|(iv, v)| PieceJson { interval: interval_to_json(iv), re: v.re.to_string(), im: v.im.to_string() })
        .collect()
}

pub fn step_from_json(base: Base, pieces: &[PieceJson]) -> Result<StepFunction, JsonError> {
    let mut out = Vec::with_capacity(pieces.len());
    for p in pieces {
        let lo = NAdic::from_wire(&p.interval[0], base)?;
        let hi = NAdic::from_wire(&p.interval[1], base)?;
        let value = Scalar::new(rational_from_str(&p.re)?, rational_from_str(&p.im)?);
        if let Some(iv) = Interval::new(lo, hi)? {
            out.push((iv, value));
        }
    }
    Ok(StepFunction::from_pieces(base, out)?)
}

pub fn element_to_json(a: &AlgebraElement) -> ElementJson {
    let s = a.session();
    let terms = a
        .terms()
        .map(|(h, f)| {
            if s.is_single_slot() {
                TermJson { g: gelem_to_json(&h.g), f: CoefficientJson::Single(step_to_json(&f.slots()[0])) }
            } else {
                TermJson {
                    g: helem_to_json(h),
                    f: CoefficientJson::Slots(f.slots().iter().map(step_to_json).collect()),
                }
            }
        })
        .collect();
    ElementJson { session: SessionJson { n: s.n(), k: s.slots() }, terms }
}

pub fn element_from_json(e: &ElementJson) -> Result<AlgebraElement, JsonError> {
    let session = Session::new(e.session.n, e.session.k)?;
    let base = session.base();
    let mut out = AlgebraElement::zero(session);
    for t in &e.terms {
        let h = helem_from_json(base, &t.g)?;
        let slots = match (&t.f, session.slots()) {
            (CoefficientJson::Single(f), 1) => vec![step_from_json(base, f)?],
            (CoefficientJson::Slots(fs), k) if fs.len() == k => {
                fs.iter().map(|f| step_from_json(base, f)).collect::<Result<_, _>>()?
            }
            _ => return shape("coefficient does not match the session's slot count"),
        };
        let m = AlgebraElement::monomial(session, h, SlotFunction::new(slots))?;
        out = &out + &m;
    }
    Ok(out)
}

pub fn witness_to_json(w: &Witness) -> WitnessJson {
    match w {
        Witness::Element(a) => WitnessJson::Element(element_to_json(a)),
        Witness::Groups(gs) => WitnessJson::Groups(gs.iter().map(gelem_to_json).collect()),
        Witness::Note(s) => WitnessJson::Note(s.clone()),
    }
}

pub fn outcome_to_json(o: &RelationOutcome) -> OutcomeJson {
    OutcomeJson {
        label: o.label.clone(),
        passed: o.passed,
        checked: o.checked,
        witness: o.witness.as_ref().map(witness_to_json),
    }
}

pub fn report_to_json(r: &RelationReport) -> ReportJson {
    ReportJson {
        suite: r.suite.clone(),
        passed: r.passed(),
        relations: r.outcomes.iter().map(outcome_to_json).collect(),
    }
}

pub fn report_to_string(r: &RelationReport) -> String {
    serde_json::to_string_pretty(&report_to_json(r)).expect("reports serialize")
}

pub fn partial_map_to_json(phi: &PartialMap) -> PartialMapJson {
    PartialMapJson { g: gelem_to_json(&phi.group_element()), domain: clopen_to_json(phi.domain()) }
}

pub fn partial_map_from_json(base: Base, j: &PartialMapJson) -> Result<PartialMap, JsonError> {
    Ok(PartialMap::new(gelem_from_json(base, &j.g)?, clopen_from_json(base, &j.domain)?)?)
}

pub fn slot_set_to_json(s: &SlotSet) -> Vec<Vec<IntervalJson>> {
    s.slots().iter().map(clopen_to_json).collect()
}

pub fn slot_set_from_json(base: Base, j: &[Vec<IntervalJson>]) -> Result<SlotSet, JsonError> {
    Ok(SlotSet::new(j.iter().map(|s| clopen_from_json(base, s)).collect::<Result<_, _>>()?)?)
}

pub fn groupoid_to_json(g: &GroupoidElement) -> GroupoidJson {
    GroupoidJson {
        lambda: g.lambda.digits().to_vec(),
        mu: g.mu.digits().to_vec(),
        tail: g.tail.clone(),
        i: None,
        q: None,
    }
}

pub fn groupoid_from_json(base: Base, j: &GroupoidJson) -> Result<GroupoidElement, JsonError> {
    Ok(GroupoidElement::new(
        Word::new(j.lambda.clone(), base)?,
        Word::new(j.mu.clone(), base)?,
        j.tail.clone(),
    ))
}

pub fn y_groupoid_to_json(g: &YGroupoidElement) -> GroupoidJson {
    GroupoidJson { i: Some(g.i), q: Some(g.q), ..groupoid_to_json(&g.base) }
}

pub fn y_groupoid_from_json(base: Base, k: usize, j: &GroupoidJson) -> Result<YGroupoidElement, JsonError> {
    let (Some(i), Some(q)) = (j.i, j.q) else {
        return shape("Y groupoid elements need both `i` and `q`");
    };
    Ok(YGroupoidElement::new(groupoid_from_json(base, j)?, i, q, k)?)
}

pub fn predicate_to_json(p: &GroupPredicate) -> PredicateJson {
    let named = |s: &str| PredicateJson::Named { name: s.to_string() };
    match p {
        GroupPredicate::Uhf => named("UHF"),
        GroupPredicate::RefinementTaf => named("RefinementTAF"),
        GroupPredicate::Triangular => named("Triangular"),
        GroupPredicate::Custom { r_min, k_sign } => PredicateJson::Custom {
            custom: CustomJson { r_min: r_min.map(|r| r.to_wire()), k_sign: k_sign.name().to_string() },
        },
    }
}

pub fn predicate_from_json(base: Base, j: &PredicateJson) -> Result<GroupPredicate, JsonError> {
    match j {
        PredicateJson::Named { name } => match name.as_str() {
            "UHF" => Ok(GroupPredicate::Uhf),
            "RefinementTAF" => Ok(GroupPredicate::RefinementTaf),
            "Triangular" => Ok(GroupPredicate::Triangular),
            other => shape(format!("unknown predicate `{other}`")),
        },
        PredicateJson::Custom { custom } => {
            let Some(k_sign) = KSign::from_name(&custom.k_sign) else {
                return shape(format!("unknown k_sign `{}`", custom.k_sign));
            };
            let r_min = custom.r_min.as_deref().map(|s| NAdic::from_wire(s, base)).transpose()?;
            Ok(GroupPredicate::Custom { r_min, k_sign })
        }
    }
}

pub fn element_to_string(a: &AlgebraElement) -> String {
    serde_json::to_string(&element_to_json(a)).expect("elements serialize")
}

pub fn element_from_str(s: &str) -> Result<AlgebraElement, JsonError> {
    element_from_json(&serde_json::from_str(s)?)
}
