//! Certified intervals for the virtual and welded bridge numbers.
//!
//! Lower bounds come from proper elementary ideals of four groups (knot
//! group and reduced group, each for the diagram and its mirror) and from
//! the bound of the parity projection. Upper bounds come from the diagram
//! and from bounded search. Every bound carries a certificate that can be
//! recomputed independently with [`revalidate`].

use serde_json::{json, Value};
use thiserror::Error;

use crate::foxcalc::alexander_matrix;
use crate::gauss::GaussDiagram;
use crate::ideals::{elementary_ideal, ideal_equal, is_trivial, EqualityMode, IdealGens};
use crate::parity::{gaussian_parity, project, ParityAssignment};
use crate::present::{eliminate_conjugation_generators, knot_group, reduced_group, GroupPresentation};
use crate::rmoves::{MoveError, MoveInstance, MoveSet};
use crate::search::{explore_towards, replay, SearchBudget, SearchResult, SearchTarget};

pub const DEFAULT_PROJECTION_DEPTH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CertificateKind {
    DiagramUpperBound,
    SearchUpperBound,
    KnotGroupIdeal,
    MirrorKnotGroupIdeal,
    ReducedGroupIdeal,
    MirrorReducedGroupIdeal,
    ParityProjection,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::DiagramUpperBound => "DiagramUpperBound",
            CertificateKind::SearchUpperBound => "SearchUpperBound",
            CertificateKind::KnotGroupIdeal => "KnotGroupIdeal",
            CertificateKind::MirrorKnotGroupIdeal => "MirrorKnotGroupIdeal",
            CertificateKind::ReducedGroupIdeal => "ReducedGroupIdeal",
            CertificateKind::MirrorReducedGroupIdeal => "MirrorReducedGroupIdeal",
            CertificateKind::ParityProjection => "ParityProjection",
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(self, CertificateKind::DiagramUpperBound | CertificateKind::SearchUpperBound)
    }

    fn is_ideal(self) -> bool {
        matches!(
            self,
            CertificateKind::KnotGroupIdeal
                | CertificateKind::MirrorKnotGroupIdeal
                | CertificateKind::ReducedGroupIdeal
                | CertificateKind::MirrorReducedGroupIdeal
        )
    }
}

/// The presentation an ideal certificate refers to, after elimination.
pub fn channel_presentation(kind: CertificateKind, d: &GaussDiagram) -> Option<GroupPresentation> {
    let p = match kind {
        CertificateKind::KnotGroupIdeal => knot_group(d),
        CertificateKind::MirrorKnotGroupIdeal => knot_group(&d.mirror()),
        CertificateKind::ReducedGroupIdeal => reduced_group(d),
        CertificateKind::MirrorReducedGroupIdeal => reduced_group(&d.mirror()),
        _ => return None,
    };
    Some(eliminate_conjugation_generators(&p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The diagram itself realizes the bound.
    Diagram(GaussDiagram),
    /// Replaying `moves` from the input reaches `result`.
    Search { move_set: MoveSet, moves: Vec<MoveInstance>, result: GaussDiagram },
    /// A proper elementary ideal `E_k` gives the bound `k + 1`.
    Ideal(IdealGens),
    /// Lower bounds of the projected diagram carry over.
    Projection { projected: GaussDiagram, certificates: Vec<BoundCertificate> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub kind: CertificateKind,
    pub value: usize,
    pub evidence: Evidence,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RevalidationError {
    #[error("{kind:?} claims {claimed} but recomputation gives {recomputed}")]
    ValueMismatch { kind: CertificateKind, claimed: usize, recomputed: usize },
    #[error("witness does not replay: {0}")]
    Replay(#[from] MoveError),
    #[error("witness ends at {got}, certificate records {expected}")]
    WrongEndpoint { expected: String, got: String },
    #[error("{kind:?} evidence does not match its kind")]
    MalformedEvidence { kind: CertificateKind },
    #[error("recomputed ideal {recomputed} differs from recorded {recorded}")]
    IdealMismatch { recorded: String, recomputed: String },
    #[error("recorded ideal {0} is not proper")]
    IdealNotProper(String),
    #[error("projection of the diagram is {got}, certificate records {expected}")]
    WrongProjection { expected: String, got: String },
    #[error("interval [{lower}, {upper}] for {invariant} is empty or disagrees with its certificates")]
    Interval { invariant: &'static str, lower: usize, upper: usize },
}

impl BoundCertificate {
    /// Recomputes the claimed value from the evidence, relative to `d`.
    pub fn revalidate(&self, d: &GaussDiagram) -> Result<(), RevalidationError> {
        let mismatch =
            |recomputed: usize| RevalidationError::ValueMismatch { kind: self.kind, claimed: self.value, recomputed };
        let malformed = RevalidationError::MalformedEvidence { kind: self.kind };
        match (&self.evidence, self.kind) {
            (Evidence::Diagram(e), CertificateKind::DiagramUpperBound) => {
                if e != d {
                    return Err(RevalidationError::WrongEndpoint { expected: e.to_code(), got: d.to_code() });
                }
                if e.bridge_count() != self.value {
                    return Err(mismatch(e.bridge_count()));
                }
            }
            (Evidence::Search { moves, result, .. }, CertificateKind::SearchUpperBound) => {
                let end = replay(d, moves)?;
                if end.canonical_key() != result.canonical_key() {
                    return Err(RevalidationError::WrongEndpoint { expected: result.to_code(), got: end.to_code() });
                }
                if end.bridge_count() != self.value {
                    return Err(mismatch(end.bridge_count()));
                }
            }
            (Evidence::Ideal(recorded), kind) if kind.is_ideal() => {
                let p = channel_presentation(kind, d).ok_or(malformed)?;
                let k = recorded.k;
                let fresh = elementary_ideal(&alexander_matrix(&p), k, p.meridional_count());
                if !ideal_equal(&fresh, recorded, EqualityMode::Exact).unwrap_or(false) {
                    return Err(RevalidationError::IdealMismatch {
                        recorded: recorded.render(),
                        recomputed: fresh.render(),
                    });
                }
                if is_trivial(&fresh) {
                    return Err(RevalidationError::IdealNotProper(fresh.render()));
                }
                if self.value != k + 1 {
                    return Err(mismatch(k + 1));
                }
            }
            (Evidence::Projection { projected, certificates }, CertificateKind::ParityProjection) => {
                let p = project(d);
                if p != *projected {
                    return Err(RevalidationError::WrongProjection { expected: projected.to_code(), got: p.to_code() });
                }
                for c in certificates {
                    if c.kind.is_upper() {
                        return Err(malformed);
                    }
                    c.revalidate(projected)?;
                }
                let best = certificates.iter().map(|c| c.value).max().unwrap_or(1);
                if best != self.value {
                    return Err(mismatch(best));
                }
            }
            _ => return Err(malformed),
        }
        Ok(())
    }

    /// Whether the bound also holds for the welded bridge number.
    pub fn applies_to_welded(&self) -> bool {
        matches!(
            self.kind,
            CertificateKind::DiagramUpperBound | CertificateKind::KnotGroupIdeal | CertificateKind::SearchUpperBound
        )
    }

    /// Whether the bound holds for the virtual bridge number.
    pub fn applies_to_virtual(&self) -> bool {
        match &self.evidence {
            Evidence::Search { move_set, .. } => *move_set == MoveSet::Virtual,
            _ => true,
        }
    }

    pub fn to_json(&self) -> Value {
        let evidence = match &self.evidence {
            Evidence::Diagram(d) => json!({ "diagram": d.to_code() }),
            Evidence::Search { move_set, moves, result } => json!({
                "moves": move_set_name(*move_set),
                "witness": moves.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
                "result": result.to_code(),
            }),
            Evidence::Ideal(i) => json!({
                "index": i.k,
                "generators": i.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "ideal": i.render(),
            }),
            Evidence::Projection { projected, certificates } => json!({
                "projected": projected.to_code(),
                "certificates": certificates.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            }),
        };
        json!({ "kind": self.kind.name(), "value": self.value, "evidence": evidence })
    }
}

fn move_set_name(m: MoveSet) -> &'static str {
    match m {
        MoveSet::Virtual => "virtual",
        MoveSet::Welded => "welded",
    }
}

/// Largest `k >= floor` with a proper `E_k`, scanning downward.
fn ideal_certificate(kind: CertificateKind, d: &GaussDiagram, floor: usize) -> Option<BoundCertificate> {
    let p = channel_presentation(kind, d)?;
    let m = p.meridional_count();
    let mat = alexander_matrix(&p);
    (floor..m).rev().find_map(|k| {
        let ideal = elementary_ideal(&mat, k, m);
        (!is_trivial(&ideal)).then(|| BoundCertificate { kind, value: k + 1, evidence: Evidence::Ideal(ideal) })
    })
}

/// Lower-bound certificates valid for the virtual bridge number of `d`.
/// The knot group runs first; the other channels only report values at
/// least as large as its bound.
fn lower_certificates(d: &GaussDiagram, projection_depth: usize) -> Vec<BoundCertificate> {
    let knot = ideal_certificate(CertificateKind::KnotGroupIdeal, d, 0);
    let floor = knot.as_ref().map_or(0, |c| c.value - 1);
    let channel = |kind| ideal_certificate(kind, d, floor);
    let ((mirror, reduced), (mirror_reduced, projected)) = rayon::join(
        || rayon::join(|| channel(CertificateKind::MirrorKnotGroupIdeal), || channel(CertificateKind::ReducedGroupIdeal)),
        || {
            rayon::join(
                || channel(CertificateKind::MirrorReducedGroupIdeal),
                || projection_certificate(d, projection_depth),
            )
        },
    );
    [knot, mirror, reduced, mirror_reduced, projected].into_iter().flatten().collect()
}

fn projection_certificate(d: &GaussDiagram, depth: usize) -> Option<BoundCertificate> {
    if depth == 0 {
        return None;
    }
    let projected = project(d);
    if projected.n() == d.n() {
        return None;
    }
    let certificates = lower_certificates(&projected, depth - 1);
    let value = certificates.iter().map(|c| c.value).max().unwrap_or(1);
    Some(BoundCertificate {
        kind: CertificateKind::ParityProjection,
        value,
        evidence: Evidence::Projection { projected, certificates },
    })
}

fn search_certificate(d: &GaussDiagram, r: &SearchResult, move_set: MoveSet) -> Option<BoundCertificate> {
    if r.min_bridge_found >= d.bridge_count() {
        return None;
    }
    let result = replay(d, &r.witness).expect("search witnesses replay");
    Some(BoundCertificate {
        kind: CertificateKind::SearchUpperBound,
        value: result.bridge_count(),
        evidence: Evidence::Search { move_set, moves: r.witness.clone(), result },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub input: GaussDiagram,
    pub vb_lower: usize,
    pub vb_upper: usize,
    pub wb_lower: usize,
    pub wb_upper: usize,
    pub certificates: Vec<BoundCertificate>,
    pub parity: ParityAssignment,
    pub budget: SearchBudget,
    /// `None` when the lower bound already matched the diagram.
    pub virtual_search: Option<SearchResult>,
    pub welded_search: Option<SearchResult>,
}

impl InvariantReport {
    pub fn vb_exact(&self) -> bool {
        self.vb_lower == self.vb_upper
    }

    pub fn wb_exact(&self) -> bool {
        self.wb_lower == self.wb_upper
    }

    pub fn vb_certificates(&self) -> impl Iterator<Item = &BoundCertificate> {
        self.certificates.iter().filter(|c| c.applies_to_virtual())
    }

    pub fn wb_certificates(&self) -> impl Iterator<Item = &BoundCertificate> {
        self.certificates.iter().filter(|c| c.applies_to_welded())
    }

    pub fn to_json(&self) -> Value {
        let interval = |lower: usize, upper: usize, certs: Vec<Value>, search: &Option<SearchResult>| {
            json!({
                "lower": lower,
                "upper": upper,
                "exact": lower == upper,
                "certificates": certs,
                "search": search.as_ref().map(|s| s.to_json()),
            })
        };
        let d = &self.input;
        let present = |p: &GroupPresentation| p.to_string();
        json!({
            "input": d.to_code(),
            "bridge_count": d.bridge_count(),
            "budget": {
                "max_chords": self.budget.max_chords,
                "max_depth": self.budget.max_depth,
                "max_states": self.budget.max_states,
            },
            "vb": interval(self.vb_lower, self.vb_upper, self.vb_certificates().map(|c| c.to_json()).collect(), &self.virtual_search),
            "wb": interval(self.wb_lower, self.wb_upper, self.wb_certificates().map(|c| c.to_json()).collect(), &self.welded_search),
            "parity": self.parity.iter().map(|(c, p)| json!({ "chord": c, "parity": p })).collect::<Vec<_>>(),
            "presentations": {
                "knot": present(&knot_group(d)),
                "knot_eliminated": present(&eliminate_conjugation_generators(&knot_group(d))),
                "lower": present(&knot_group(&d.mirror())),
                "reduced": present(&reduced_group(d)),
                "reduced_eliminated": present(&eliminate_conjugation_generators(&reduced_group(d))),
            },
        })
    }

    /// Plain-text summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let interval = |l: usize, u: usize| if l == u { format!("{l} (exact)") } else { format!("[{l}, {u}]") };
        out.push_str(&format!("diagram  {}\n", self.input));
        out.push_str(&format!("bridges  {}\n", self.input.bridge_count()));
        out.push_str(&format!("vb       {}\n", interval(self.vb_lower, self.vb_upper)));
        out.push_str(&format!("wb       {}\n", interval(self.wb_lower, self.wb_upper)));
        for c in &self.certificates {
            let scope = match (c.applies_to_virtual(), c.applies_to_welded()) {
                (true, true) => "vb,wb",
                (true, false) => "vb",
                _ => "wb",
            };
            let dir = if c.kind.is_upper() { "<=" } else { ">=" };
            let detail = match &c.evidence {
                Evidence::Diagram(_) => "diagram".to_string(),
                Evidence::Search { move_set, moves, .. } => format!("{} moves ({})", moves.len(), move_set_name(*move_set)),
                Evidence::Ideal(i) => i.render(),
                Evidence::Projection { projected, .. } if projected.is_empty() => "projection to the unknot".into(),
                Evidence::Projection { projected, .. } => format!("projection {projected}"),
            };
            out.push_str(&format!("  {scope:<6} {dir} {}  {}: {detail}\n", c.value, c.kind.name()));
        }
        out
    }
}

/// Collects all bounds for `d`. Ideal channels run first and set the
/// search targets, so searches stop as soon as an interval closes and
/// are skipped when the diagram already attains the lower bound.
pub fn compute_report(d: &GaussDiagram, budget: SearchBudget, max_projection_depth: usize) -> InvariantReport {
    let mut certificates = vec![BoundCertificate {
        kind: CertificateKind::DiagramUpperBound,
        value: d.bridge_count(),
        evidence: Evidence::Diagram(d.clone()),
    }];
    certificates.extend(lower_certificates(d, max_projection_depth));
    let lower = |welded: bool| {
        certificates
            .iter()
            .filter(|c| !c.kind.is_upper() && if welded { c.applies_to_welded() } else { c.applies_to_virtual() })
            .map(|c| c.value)
            .max()
            .unwrap_or(1)
    };
    let (vb_lower, wb_lower) = (lower(false), lower(true));
    let bc = d.bridge_count();
    let run = |move_set, floor: usize| {
        (floor < bc).then(|| explore_towards(d, move_set, budget, SearchTarget::MinBridges(floor)))
    };
    let (virtual_search, welded_search) = rayon::join(|| run(MoveSet::Virtual, vb_lower), || run(MoveSet::Welded, wb_lower));
    for (r, m) in [(&virtual_search, MoveSet::Virtual), (&welded_search, MoveSet::Welded)] {
        if let Some(c) = r.as_ref().and_then(|r| search_certificate(d, r, m)) {
            certificates.push(c);
        }
    }
    let upper = |welded: bool| {
        certificates
            .iter()
            .filter(|c| c.kind.is_upper() && if welded { c.applies_to_welded() } else { c.applies_to_virtual() })
            .map(|c| c.value)
            .min()
            .unwrap_or(bc)
    };
    InvariantReport {
        input: d.clone(),
        vb_lower,
        vb_upper: upper(false),
        wb_lower,
        wb_upper: upper(true),
        certificates,
        parity: gaussian_parity(d),
        budget,
        virtual_search,
        welded_search,
    }
}

/// Rechecks every certificate and that the intervals are the extrema of
/// their certificates and are nonempty.
pub fn revalidate(r: &InvariantReport) -> Result<(), RevalidationError> {
    for c in &r.certificates {
        c.revalidate(&r.input)?;
    }
    let check = |invariant: &'static str, lower: usize, upper: usize, certs: Vec<&BoundCertificate>| {
        let lo = certs.iter().filter(|c| !c.kind.is_upper()).map(|c| c.value).max().unwrap_or(1);
        let hi = certs.iter().filter(|c| c.kind.is_upper()).map(|c| c.value).min();
        if lower > upper || lo != lower || hi != Some(upper) {
            return Err(RevalidationError::Interval { invariant, lower, upper });
        }
        Ok(())
    };
    check("vb", r.vb_lower, r.vb_upper, r.vb_certificates().collect())?;
    check("wb", r.wb_lower, r.wb_upper, r.wb_certificates().collect())?;
    if r.wb_upper > r.vb_upper {
        return Err(RevalidationError::Interval { invariant: "wb", lower: r.wb_upper, upper: r.vb_upper });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gd(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    fn report(d: &GaussDiagram) -> InvariantReport {
        compute_report(d, SearchBudget::default_for(d), DEFAULT_PROJECTION_DEPTH)
    }

    #[test]
    fn unknot_is_one_everywhere() {
        let r = report(&GaussDiagram::empty());
        assert_eq!((r.vb_lower, r.vb_upper, r.wb_lower, r.wb_upper), (1, 1, 1, 1));
        assert!(r.virtual_search.is_none() && r.welded_search.is_none());
        revalidate(&r).unwrap();
    }

    #[test]
    fn kink_has_one_bridge() {
        let r = report(&gd("O1+U1+"));
        assert!(r.vb_exact() && r.wb_exact());
        assert_eq!(r.vb_upper, 1);
        revalidate(&r).unwrap();
    }

    #[test]
    fn tampered_certificates_fail() {
        let d = gd("O3+O2-U1+U2-O1+O4-U3+U4-");
        let r = report(&d);
        revalidate(&r).unwrap();
        let mut bad = r.clone();
        for c in bad.certificates.iter_mut() {
            if c.kind == CertificateKind::KnotGroupIdeal {
                c.value += 1;
            }
        }
        assert!(matches!(revalidate(&bad), Err(RevalidationError::ValueMismatch { .. })));
        let mut bad = r.clone();
        bad.vb_upper = 1;
        assert!(revalidate(&bad).is_err());
        let mut bad = r;
        bad.input = d.mirror();
        assert!(revalidate(&bad).is_err());
    }

    #[test]
    fn json_has_both_intervals() {
        let r = report(&gd("O1-U2+O3-U1-O2+U3-"));
        let v = r.to_json();
        for key in ["vb", "wb"] {
            assert!(v[key]["lower"].as_u64().unwrap() <= v[key]["upper"].as_u64().unwrap());
            assert!(v[key]["certificates"].as_array().is_some());
        }
        assert_eq!(v["parity"].as_array().unwrap().len(), 3);
        assert!(v["presentations"]["knot"].is_string());
    }
}
