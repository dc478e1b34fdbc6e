//! d-frames: a pair of frames `(L₋, L₊)` with a consistency relation
//! `con ⊆ L₊ × L₋` and a totality relation `tot ⊆ L₋ × L₊`.
//!
//! Throughout, `con` is stored with rows indexed by `L₊` and `tot` with rows
//! indexed by `L₋`, so `con.contains(φ, a)` reads "φ con a" and
//! `tot.contains(a, φ)` reads "a tot φ".

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{check_frame_hom, Frame, FrameHom, HomReport};
use crate::lattice::{Lattice, ProductOrder};
use crate::set::{ElemSet, PairSet};

/// The nine d-frame axioms, each checked on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    /// `con` is a lower set of `L₊ × L₋`.
    ConDown,
    /// `φ con a, ψ con b ⇒ φ∨ψ con a∧b`, and `0 con 1`.
    ConJoin,
    /// `φ con a, ψ con b ⇒ φ∧ψ con a∨b`, and `1 con 0`.
    ConMeet,
    /// `tot` is an upper set of `L₋ × L₊`.
    TotUp,
    /// `a tot φ, b tot ψ ⇒ a∨b tot φ∧ψ`, and `0 tot 1`.
    TotMeet,
    /// `a tot φ, b tot ψ ⇒ a∧b tot φ∨ψ`, and `1 tot 0`.
    TotJoin,
    /// `φ con a tot ψ ⇒ φ ≤ ψ`.
    ConTotPlus,
    /// `φ con a, b tot φ ⇒ a ≤ b`.
    ConTotMinus,
    /// `con` is closed under directed joins.
    ConDirected,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::ConDown,
        Axiom::ConJoin,
        Axiom::ConMeet,
        Axiom::TotUp,
        Axiom::TotMeet,
        Axiom::TotJoin,
        Axiom::ConTotPlus,
        Axiom::ConTotMinus,
        Axiom::ConDirected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::ConDown => "con-down",
            Axiom::ConJoin => "con-join",
            Axiom::ConMeet => "con-meet",
            Axiom::TotUp => "tot-up",
            Axiom::TotMeet => "tot-meet",
            Axiom::TotJoin => "tot-join",
            Axiom::ConTotPlus => "con-tot+",
            Axiom::ConTotMinus => "con-tot-",
            Axiom::ConDirected => "con-directed",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A counterexample: the element ids involved and a sentence about them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub elements: Vec<String>,
    pub text: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub witness: Option<Witness>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// One entry per axiom, in [`Axiom::ALL`] order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.results.iter().all(AxiomResult::passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomResult> {
        self.results.iter().find(|r| !r.passed())
    }

    pub fn get(&self, axiom: Axiom) -> &AxiomResult {
        self.results
            .iter()
            .find(|r| r.axiom == axiom)
            .expect("every axiom is reported")
    }

    fn into_error(self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(r) => Err(Error::AxiomViolation {
                axiom: r.axiom.name().into(),
                witness: r
                    .witness
                    .as_ref()
                    .map(|w| w.text.clone())
                    .unwrap_or_default(),
            }),
        }
    }
}

fn witness(elements: Vec<&str>, text: String) -> Option<Witness> {
    Some(Witness {
        elements: elements.into_iter().map(String::from).collect(),
        text,
    })
}

/// Checks every axiom exhaustively; each failing axiom carries its first
/// counterexample.
pub fn check_axioms(minus: &Frame, plus: &Frame, con: &PairSet, tot: &PairSet) -> AxiomReport {
    let results = Axiom::ALL
        .iter()
        .map(|&axiom| AxiomResult {
            axiom,
            witness: check_one(axiom, minus, plus, con, tot),
        })
        .collect();
    AxiomReport { results }
}

fn check_one(
    axiom: Axiom,
    minus: &Frame,
    plus: &Frame,
    con: &PairSet,
    tot: &PairSet,
) -> Option<Witness> {
    let (m, p) = (minus, plus);
    match axiom {
        Axiom::ConDown => {
            for (phi, a) in con.iter() {
                for phi2 in p.down(phi) {
                    for a2 in m.down(a) {
                        if !con.contains(phi2, a2) {
                            return witness(
                                vec![p.id(phi), m.id(a), p.id(phi2), m.id(a2)],
                                format!(
                                    "{} con {} but not {} con {}",
                                    p.id(phi),
                                    m.id(a),
                                    p.id(phi2),
                                    m.id(a2)
                                ),
                            );
                        }
                    }
                }
            }
            None
        }
        Axiom::ConJoin | Axiom::ConMeet => {
            let join_side = axiom == Axiom::ConJoin;
            let (b_phi, b_a) = if join_side {
                (p.bottom(), m.top())
            } else {
                (p.top(), m.bottom())
            };
            if !con.contains(b_phi, b_a) {
                return witness(
                    vec![p.id(b_phi), m.id(b_a)],
                    format!("{} con {} is missing", p.id(b_phi), m.id(b_a)),
                );
            }
            for (phi, a) in con.iter() {
                for (psi, b) in con.iter() {
                    let (x, y) = if join_side {
                        (p.join(phi, psi), m.meet(a, b))
                    } else {
                        (p.meet(phi, psi), m.join(a, b))
                    };
                    if !con.contains(x, y) {
                        return witness(
                            vec![p.id(phi), m.id(a), p.id(psi), m.id(b)],
                            format!(
                                "{} con {} and {} con {} but not {} con {}",
                                p.id(phi),
                                m.id(a),
                                p.id(psi),
                                m.id(b),
                                p.id(x),
                                m.id(y)
                            ),
                        );
                    }
                }
            }
            None
        }
        Axiom::TotUp => {
            for (a, phi) in tot.iter() {
                for a2 in m.up(a) {
                    for phi2 in p.up(phi) {
                        if !tot.contains(a2, phi2) {
                            return witness(
                                vec![m.id(a), p.id(phi), m.id(a2), p.id(phi2)],
                                format!(
                                    "{} tot {} but not {} tot {}",
                                    m.id(a),
                                    p.id(phi),
                                    m.id(a2),
                                    p.id(phi2)
                                ),
                            );
                        }
                    }
                }
            }
            None
        }
        Axiom::TotMeet | Axiom::TotJoin => {
            let meet_side = axiom == Axiom::TotMeet;
            let (b_a, b_phi) = if meet_side {
                (m.bottom(), p.top())
            } else {
                (m.top(), p.bottom())
            };
            if !tot.contains(b_a, b_phi) {
                return witness(
                    vec![m.id(b_a), p.id(b_phi)],
                    format!("{} tot {} is missing", m.id(b_a), p.id(b_phi)),
                );
            }
            for (a, phi) in tot.iter() {
                for (b, psi) in tot.iter() {
                    let (x, y) = if meet_side {
                        (m.join(a, b), p.meet(phi, psi))
                    } else {
                        (m.meet(a, b), p.join(phi, psi))
                    };
                    if !tot.contains(x, y) {
                        return witness(
                            vec![m.id(a), p.id(phi), m.id(b), p.id(psi)],
                            format!(
                                "{} tot {} and {} tot {} but not {} tot {}",
                                m.id(a),
                                p.id(phi),
                                m.id(b),
                                p.id(psi),
                                m.id(x),
                                p.id(y)
                            ),
                        );
                    }
                }
            }
            None
        }
        Axiom::ConTotPlus => {
            for phi in 0..p.len() {
                for psi in 0..p.len() {
                    if p.leq(phi, psi) {
                        continue;
                    }
                    // a with φ con a and a tot ψ
                    let via = con.row(phi) & tot_column(tot, psi);
                    if let Some(a) = via.last() {
                        return witness(
                            vec![p.id(phi), m.id(a), p.id(psi)],
                            format!(
                                "{} con {} tot {} but {} ≰ {}",
                                p.id(phi),
                                m.id(a),
                                p.id(psi),
                                p.id(phi),
                                p.id(psi)
                            ),
                        );
                    }
                }
            }
            None
        }
        Axiom::ConTotMinus => {
            for a in 0..m.len() {
                for b in 0..m.len() {
                    if m.leq(a, b) {
                        continue;
                    }
                    // φ with φ con a and b tot φ
                    let via = con_column(con, a) & tot.row(b);
                    if let Some(phi) = via.last() {
                        return witness(
                            vec![p.id(phi), m.id(a), m.id(b)],
                            format!(
                                "{} con {} and {} tot {} but {} ≰ {}",
                                p.id(phi),
                                m.id(a),
                                m.id(b),
                                p.id(phi),
                                m.id(a),
                                m.id(b)
                            ),
                        );
                    }
                }
            }
            None
        }
        Axiom::ConDirected => {
            let closure = ProductOrder::new(p, m).scott_closure(con);
            let missing = closure.iter().find(|&(phi, a)| !con.contains(phi, a));
            missing.and_then(|(phi, a)| {
                witness(
                    vec![p.id(phi), m.id(a)],
                    format!(
                        "{} con {} is a directed join of con pairs but is missing",
                        p.id(phi),
                        m.id(a)
                    ),
                )
            })
        }
    }
}

fn con_column(con: &PairSet, a: usize) -> ElemSet {
    con.column(a)
}

fn tot_column(tot: &PairSet, phi: usize) -> ElemSet {
    tot.column(phi)
}

/// A candidate d-frame with relations given as index pairs, as read from
/// user input. Nothing is validated yet.
#[derive(Clone, Debug)]
pub struct DFrameCandidate {
    pub minus: Frame,
    pub plus: Frame,
    /// `(φ, a)` pairs, `φ ∈ L₊`, `a ∈ L₋`.
    pub con: Vec<(usize, usize)>,
    /// `(a, φ)` pairs, `a ∈ L₋`, `φ ∈ L₊`.
    pub tot: Vec<(usize, usize)>,
}

impl DFrameCandidate {
    fn relations(&self) -> Result<(PairSet, PairSet)> {
        let (nm, np) = (self.minus.len(), self.plus.len());
        for &(phi, a) in &self.con {
            bound(phi, np)?;
            bound(a, nm)?;
        }
        for &(a, phi) in &self.tot {
            bound(a, nm)?;
            bound(phi, np)?;
        }
        Ok((
            PairSet::from_pairs(np, nm, self.con.iter().copied()),
            PairSet::from_pairs(nm, np, self.tot.iter().copied()),
        ))
    }
}

fn bound(x: usize, n: usize) -> Result<()> {
    if x >= n {
        Err(Error::IndexOutOfRange(x, n))
    } else {
        Ok(())
    }
}

/// Per-axiom verdicts for the literal relations of a candidate.
pub fn check_dframe(candidate: &DFrameCandidate) -> Result<AxiomReport> {
    let (con, tot) = candidate.relations()?;
    Ok(check_axioms(&candidate.minus, &candidate.plus, &con, &tot))
}

/// A validated finite d-frame.
#[derive(Clone)]
pub struct DFrame {
    name: Option<String>,
    minus: Frame,
    plus: Frame,
    con: PairSet,
    tot: PairSet,
}

impl DFrame {
    /// Validates the relations exactly as given.
    pub fn new(minus: Frame, plus: Frame, con: PairSet, tot: PairSet) -> Result<Self> {
        if con.n_rows() != plus.len() || con.n_cols() != minus.len() {
            return Err(Error::DomainMismatch {
                expected: plus.len() * minus.len(),
                got: con.n_rows() * con.n_cols(),
            });
        }
        if tot.n_rows() != minus.len() || tot.n_cols() != plus.len() {
            return Err(Error::DomainMismatch {
                expected: minus.len() * plus.len(),
                got: tot.n_rows() * tot.n_cols(),
            });
        }
        check_axioms(&minus, &plus, &con, &tot).into_error()?;
        Ok(DFrame {
            name: None,
            minus,
            plus,
            con,
            tot,
        })
    }

    /// Strict construction from a candidate.
    pub fn from_candidate(c: &DFrameCandidate) -> Result<Self> {
        let (con, tot) = c.relations()?;
        DFrame::new(c.minus.clone(), c.plus.clone(), con, tot)
    }

    /// Closes generator pairs under the lower/upper-set axioms, the binary
    /// lattice axioms and the bound pairs, then validates. Violations of
    /// the con-tot axiom cannot be repaired by closure and are reported.
    pub fn generate(
        minus: Frame,
        plus: Frame,
        con_gens: &[(usize, usize)],
        tot_gens: &[(usize, usize)],
    ) -> Result<Self> {
        let cand = DFrameCandidate {
            minus,
            plus,
            con: con_gens.to_vec(),
            tot: tot_gens.to_vec(),
        };
        let (con, tot) = cand.relations()?;
        let con = close_con(&cand.minus, &cand.plus, con);
        let tot = close_tot(&cand.minus, &cand.plus, tot);
        DFrame::new(cand.minus, cand.plus, con, tot)
    }

    /// `L.M`: `φ con a ⟺ φ = 0 or a = 0`, `a tot φ ⟺ a = 1 or φ = 1`, with
    /// `L` as the minus frame. Fails when exactly one frame is trivial.
    pub fn minimal(minus: &Frame, plus: &Frame) -> Result<Self> {
        if minus.is_trivial() != plus.is_trivial() {
            return Err(Error::TrivialMismatch);
        }
        let (m, p) = (minus, plus);
        let con = PairSet::from_fn(p.len(), m.len(), |phi, a| {
            phi == p.bottom() || a == m.bottom()
        });
        let tot = PairSet::from_fn(m.len(), p.len(), |a, phi| a == m.top() || phi == p.top());
        let d = DFrame::new(minus.clone(), plus.clone(), con, tot)?;
        Ok(d.named(format!("{}.{}", minus.name(), plus.name())))
    }

    /// `Sym(L)`: `φ con a ⟺ φ ∧ a = 0`, `a tot φ ⟺ a ∨ φ = 1`.
    pub fn sym(frame: &Frame) -> Self {
        let l = frame;
        let con = PairSet::from_fn(l.len(), l.len(), |phi, a| l.meet(phi, a) == l.bottom());
        let tot = PairSet::from_fn(l.len(), l.len(), |a, phi| l.join(a, phi) == l.top());
        DFrame::new(l.clone(), l.clone(), con, tot)
            .expect("Sym(L) satisfies the d-frame axioms")
            .named(format!("Sym({})", frame.name()))
    }

    /// The d-frame of a finite bitopological space: two topologies on the
    /// same point set (given as bitmasks of open sets), with
    /// `U con V ⟺ U ∩ V = ∅` and `V tot U ⟺ V ∪ U = X`.
    pub fn bitopological(
        points: usize,
        minus_opens: &[(&str, u64)],
        plus_opens: &[(&str, u64)],
    ) -> Result<Self> {
        let full = if points >= 64 {
            u64::MAX
        } else {
            (1u64 << points) - 1
        };
        let frame_of = |opens: &[(&str, u64)]| -> Result<(Frame, Vec<u64>)> {
            let ids = opens.iter().map(|(n, _)| n.to_string()).collect();
            let sets: Vec<u64> = opens.iter().map(|&(_, s)| s & full).collect();
            Ok((Frame::new(Lattice::from_sets(ids, &sets)?)?, sets))
        };
        let (minus, ms) = frame_of(minus_opens)?;
        let (plus, ps) = frame_of(plus_opens)?;
        let con = PairSet::from_fn(plus.len(), minus.len(), |phi, a| ps[phi] & ms[a] == 0);
        let tot = PairSet::from_fn(minus.len(), plus.len(), |a, phi| ms[a] | ps[phi] == full);
        DFrame::new(minus, plus, con, tot)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "L".into())
    }

    pub fn minus(&self) -> &Frame {
        &self.minus
    }

    pub fn plus(&self) -> &Frame {
        &self.plus
    }

    /// Rows indexed by `L₊`.
    pub fn con(&self) -> &PairSet {
        &self.con
    }

    /// Rows indexed by `L₋`.
    pub fn tot(&self) -> &PairSet {
        &self.tot
    }

    /// `φ con a`.
    #[inline]
    pub fn con_holds(&self, phi: usize, a: usize) -> bool {
        self.con.contains(phi, a)
    }

    /// `a tot φ`.
    #[inline]
    pub fn tot_holds(&self, a: usize, phi: usize) -> bool {
        self.tot.contains(a, phi)
    }

    pub fn is_trivial(&self) -> bool {
        self.minus.is_trivial() && self.plus.is_trivial()
    }

    /// Total number of elements in both components.
    pub fn size(&self) -> usize {
        self.minus.len() + self.plus.len()
    }

    pub fn axiom_report(&self) -> AxiomReport {
        check_axioms(&self.minus, &self.plus, &self.con, &self.tot)
    }

    /// `φ ◁ ψ` on `L₊`: some `a` has `φ con a tot ψ`.
    pub fn rather_below_plus(&self) -> PairSet {
        let n = self.plus.len();
        PairSet::from_fn(n, n, |phi, psi| {
            !(self.con.row(phi) & self.tot.column(psi)).is_empty()
        })
    }

    /// `a ◁ b` on `L₋`: some `φ` has `φ con a` and `b tot φ`.
    pub fn rather_below_minus(&self) -> PairSet {
        let n = self.minus.len();
        PairSet::from_fn(n, n, |a, b| {
            !(self.con.column(a) & self.tot.row(b)).is_empty()
        })
    }

    /// Every element of each component is the join of the elements rather
    /// below it.
    pub fn is_regular(&self) -> bool {
        let check = |f: &Frame, rb: &PairSet| (0..f.len()).all(|x| f.join_all(rb.column(x)) == x);
        check(&self.plus, &self.rather_below_plus())
            && check(&self.minus, &self.rather_below_minus())
    }
}

impl PartialEq for DFrame {
    fn eq(&self, other: &DFrame) -> bool {
        self.minus == other.minus
            && self.plus == other.plus
            && self.con == other.con
            && self.tot == other.tot
    }
}

impl Eq for DFrame {}

impl fmt::Debug for DFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DFrame")
            .field("name", &self.name())
            .field("minus", &self.minus)
            .field("plus", &self.plus)
            .field("con", &self.con)
            .field("tot", &self.tot)
            .finish()
    }
}

/// Smallest relation containing `con` that satisfies the con-down, con-join
/// and con-meet axioms.
pub fn close_con(minus: &Frame, plus: &Frame, mut con: PairSet) -> PairSet {
    let prod = ProductOrder::new(plus, minus);
    con.insert(plus.bottom(), minus.top());
    con.insert(plus.top(), minus.bottom());
    loop {
        let mut next = prod.down_closure(&con);
        let pairs: Vec<_> = next.iter().collect();
        for &(phi, a) in &pairs {
            for &(psi, b) in &pairs {
                next.insert(plus.join(phi, psi), minus.meet(a, b));
                next.insert(plus.meet(phi, psi), minus.join(a, b));
            }
        }
        if next == con {
            return con;
        }
        con = next;
    }
}

/// Smallest relation containing `tot` that satisfies the tot-up, tot-meet
/// and tot-join axioms.
pub fn close_tot(minus: &Frame, plus: &Frame, mut tot: PairSet) -> PairSet {
    let prod = ProductOrder::new(minus, plus);
    tot.insert(minus.bottom(), plus.top());
    tot.insert(minus.top(), plus.bottom());
    loop {
        let mut next = prod.up_closure(&tot);
        let pairs: Vec<_> = next.iter().collect();
        for &(a, phi) in &pairs {
            for &(b, psi) in &pairs {
                next.insert(minus.join(a, b), plus.meet(phi, psi));
                next.insert(minus.meet(a, b), plus.join(phi, psi));
            }
        }
        if next == tot {
            return tot;
        }
        tot = next;
    }
}

/// Component homomorphism checks plus relation preservation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DHomReport {
    pub minus: HomReport,
    pub plus: HomReport,
    /// A pair `(φ, a)` in the domain `con` whose image is not in the codomain `con`.
    pub con_violation: Option<(usize, usize)>,
    /// A pair `(a, φ)` in the domain `tot` whose image is not in the codomain `tot`.
    pub tot_violation: Option<(usize, usize)>,
}

impl DHomReport {
    pub fn is_hom(&self) -> bool {
        self.minus.is_hom()
            && self.plus.is_hom()
            && self.con_violation.is_none()
            && self.tot_violation.is_none()
    }

    pub fn describe(&self, dom: &DFrame) -> String {
        let mut parts = Vec::new();
        for v in &self.minus.violations {
            parts.push(format!("minus component: {v}"));
        }
        for v in &self.plus.violations {
            parts.push(format!("plus component: {v}"));
        }
        if let Some((phi, a)) = self.con_violation {
            parts.push(format!(
                "{} con {} is not preserved",
                dom.plus().id(phi),
                dom.minus().id(a)
            ));
        }
        if let Some((a, phi)) = self.tot_violation {
            parts.push(format!(
                "{} tot {} is not preserved",
                dom.minus().id(a),
                dom.plus().id(phi)
            ));
        }
        parts.join("; ")
    }
}

/// Checks a candidate pair of component maps `dom → cod`.
pub fn check_dframe_hom(
    dom: &DFrame,
    cod: &DFrame,
    minus_map: &[usize],
    plus_map: &[usize],
) -> Result<DHomReport> {
    let minus = check_frame_hom(dom.minus(), cod.minus(), minus_map)?;
    let plus = check_frame_hom(dom.plus(), cod.plus(), plus_map)?;
    let con_violation = dom
        .con()
        .iter()
        .find(|&(phi, a)| !cod.con_holds(plus_map[phi], minus_map[a]));
    let tot_violation = dom
        .tot()
        .iter()
        .find(|&(a, phi)| !cod.tot_holds(minus_map[a], plus_map[phi]));
    Ok(DHomReport {
        minus,
        plus,
        con_violation,
        tot_violation,
    })
}

/// A d-frame homomorphism `(f₋, f₊)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DFrameHom {
    dom: DFrame,
    cod: DFrame,
    minus: FrameHom,
    plus: FrameHom,
}

impl DFrameHom {
    pub fn new(
        dom: &DFrame,
        cod: &DFrame,
        minus_map: Vec<usize>,
        plus_map: Vec<usize>,
    ) -> Result<Self> {
        let report = check_dframe_hom(dom, cod, &minus_map, &plus_map)?;
        if !report.is_hom() {
            return Err(Error::NotADFrameHom(report.describe(dom)));
        }
        Ok(Self::new_unchecked(dom, cod, minus_map, plus_map))
    }

    pub(crate) fn new_unchecked(
        dom: &DFrame,
        cod: &DFrame,
        minus_map: Vec<usize>,
        plus_map: Vec<usize>,
    ) -> Self {
        DFrameHom {
            minus: FrameHom::new_unchecked(dom.minus().clone(), cod.minus().clone(), minus_map),
            plus: FrameHom::new_unchecked(dom.plus().clone(), cod.plus().clone(), plus_map),
            dom: dom.clone(),
            cod: cod.clone(),
        }
    }

    pub fn identity(d: &DFrame) -> Self {
        Self::new_unchecked(
            d,
            d,
            (0..d.minus().len()).collect(),
            (0..d.plus().len()).collect(),
        )
    }

    pub fn dom(&self) -> &DFrame {
        &self.dom
    }

    pub fn cod(&self) -> &DFrame {
        &self.cod
    }

    pub fn minus(&self) -> &FrameHom {
        &self.minus
    }

    pub fn plus(&self) -> &FrameHom {
        &self.plus
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &DFrameHom) -> Result<DFrameHom> {
        if self.cod != next.dom {
            return Err(Error::CarrierMismatch);
        }
        Ok(DFrameHom {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            minus: self.minus.then(&next.minus)?,
            plus: self.plus.then(&next.plus)?,
        })
    }

    /// Monomorphism: both components injective.
    pub fn is_mono(&self) -> bool {
        self.minus.is_injective() && self.plus.is_injective()
    }

    /// `f[con]` in codomain coordinates.
    pub fn image_con(&self) -> PairSet {
        let (m, p) = (self.cod.minus().len(), self.cod.plus().len());
        self.dom
            .con()
            .map(p, m, |phi| self.plus.apply(phi), |a| self.minus.apply(a))
    }

    /// `f[tot]` in codomain coordinates.
    pub fn image_tot(&self) -> PairSet {
        let (m, p) = (self.cod.minus().len(), self.cod.plus().len());
        self.dom
            .tot()
            .map(m, p, |a| self.minus.apply(a), |phi| self.plus.apply(phi))
    }

    /// Extremal epimorphism: surjective components, the Scott closure of
    /// `f[con]` is the codomain `con`, and `f[tot]` is the codomain `tot`.
    pub fn is_extremal_epi(&self) -> bool {
        if !(self.minus.is_surjective() && self.plus.is_surjective()) {
            return false;
        }
        let prod = ProductOrder::new(self.cod.plus(), self.cod.minus());
        prod.scott_closure(&self.image_con()) == *self.cod.con()
            && self.image_tot() == *self.cod.tot()
    }

    /// First `(φ, a)` with `f₊(φ) con f₋(a)` but not `φ con a`.
    pub fn density_witness(&self) -> Option<(usize, usize)> {
        let (m, p) = (self.dom.minus(), self.dom.plus());
        (0..p.len())
            .flat_map(|phi| (0..m.len()).map(move |a| (phi, a)))
            .find(|&(phi, a)| {
                self.cod
                    .con_holds(self.plus.apply(phi), self.minus.apply(a))
                    && !self.dom.con_holds(phi, a)
            })
    }

    /// Dense: `con` is reflected.
    pub fn is_dense(&self) -> bool {
        self.density_witness().is_none()
    }

    /// Extremal-epi/mono factorization `f = j ∘ g` through the image d-frame.
    pub fn image_factorization(&self) -> Result<Factorization> {
        let cod = &self.cod;
        let (mi, pi) = (self.minus.image(), self.plus.image());
        let (minus_img, minus_embed) = cod.minus().restrict(mi)?;
        let (plus_img, plus_embed) = cod.plus().restrict(pi)?;
        let back = |embed: &[usize], n: usize| {
            let mut b = vec![usize::MAX; n];
            for (i, &x) in embed.iter().enumerate() {
                b[x] = i;
            }
            b
        };
        let minus_back = back(&minus_embed, cod.minus().len());
        let plus_back = back(&plus_embed, cod.plus().len());
        let g_minus: Vec<usize> = self.minus.map().iter().map(|&y| minus_back[y]).collect();
        let g_plus: Vec<usize> = self.plus.map().iter().map(|&y| plus_back[y]).collect();

        let con = self.dom.con().map(
            plus_img.len(),
            minus_img.len(),
            |phi| g_plus[phi],
            |a| g_minus[a],
        );
        let con = ProductOrder::new(&plus_img, &minus_img).scott_closure(&con);
        let tot = self.dom.tot().map(
            minus_img.len(),
            plus_img.len(),
            |a| g_minus[a],
            |phi| g_plus[phi],
        );
        let image = DFrame::new(minus_img, plus_img, con, tot)
            .map_err(|e| Error::Internal(format!("image d-frame is invalid: {e}")))?
            .named(format!("f({})", self.dom.name()));
        let epi = DFrameHom::new(&self.dom, &image, g_minus, g_plus)
            .map_err(|e| Error::Internal(format!("corestriction is not a hom: {e}")))?;
        let mono = DFrameHom::new(&image, cod, minus_embed, plus_embed)
            .map_err(|e| Error::Internal(format!("image inclusion is not a hom: {e}")))?;
        Ok(Factorization { image, epi, mono })
    }
}

/// `f = mono ∘ epi` with `epi` onto `image`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub image: DFrame,
    pub epi: DFrameHom,
    pub mono: DFrameHom,
}

/// All frame homomorphisms `dom → cod`, in lexicographic order of their
/// tables.
pub fn enumerate_frame_homs(dom: &Frame, cod: &Frame) -> Vec<FrameHom> {
    let n = dom.len();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    // Assign in an order where each element comes after everything below it.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| dom.down(x).len());
    fn go(
        k: usize,
        order: &[usize],
        dom: &Frame,
        cod: &Frame,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            out.push(map.clone());
            return;
        }
        let x = order[k];
        let candidates: Vec<usize> = if x == dom.bottom() {
            vec![cod.bottom()]
        } else if x == dom.top() {
            vec![cod.top()]
        } else {
            (0..cod.len()).collect()
        };
        'cand: for y in candidates {
            map[x] = y;
            for &z in &order[..k] {
                let (fz, fx) = (map[z], y);
                if dom.leq(z, x) && !cod.leq(fz, fx) {
                    continue 'cand;
                }
                let m = dom.meet(x, z);
                if map[m] != usize::MAX && map[m] != cod.meet(fx, fz) {
                    continue 'cand;
                }
                let j = dom.join(x, z);
                if map[j] != usize::MAX && map[j] != cod.join(fx, fz) {
                    continue 'cand;
                }
            }
            go(k + 1, order, dom, cod, map, out);
        }
        map[x] = usize::MAX;
    }
    let mut tables = Vec::new();
    go(0, &order, dom, cod, &mut map, &mut tables);
    tables.sort();
    for t in tables {
        if check_frame_hom(dom, cod, &t)
            .map(|r| r.is_hom())
            .unwrap_or(false)
        {
            out.push(FrameHom::new_unchecked(dom.clone(), cod.clone(), t));
        }
    }
    out
}

/// All d-frame homomorphisms `dom → cod`.
pub fn enumerate_dframe_homs(dom: &DFrame, cod: &DFrame) -> Vec<DFrameHom> {
    let minus = enumerate_frame_homs(dom.minus(), cod.minus());
    let plus = enumerate_frame_homs(dom.plus(), cod.plus());
    let mut out = Vec::new();
    for fm in &minus {
        for fp in &plus {
            let ok_con = dom
                .con()
                .iter()
                .all(|(phi, a)| cod.con_holds(fp.apply(phi), fm.apply(a)));
            let ok_tot = dom
                .tot()
                .iter()
                .all(|(a, phi)| cod.tot_holds(fm.apply(a), fp.apply(phi)));
            if ok_con && ok_tot {
                out.push(DFrameHom::new_unchecked(
                    dom,
                    cod,
                    fm.map().to_vec(),
                    fp.map().to_vec(),
                ));
            }
        }
    }
    out
}

/// All order isomorphisms `a → b`.
pub fn lattice_isomorphisms(a: &Lattice, b: &Lattice) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut out = Vec::new();
    if n != b.len() {
        return out;
    }
    let sig = |l: &Lattice, x: usize| (l.down(x).len(), l.up(x).len());
    let mut map = vec![usize::MAX; n];
    let mut used = ElemSet::EMPTY;
    fn go(
        x: usize,
        a: &Lattice,
        b: &Lattice,
        sig: &dyn Fn(&Lattice, usize) -> (usize, usize),
        map: &mut Vec<usize>,
        used: &mut ElemSet,
        out: &mut Vec<Vec<usize>>,
    ) {
        if x == a.len() {
            out.push(map.clone());
            return;
        }
        for y in 0..b.len() {
            if used.contains(y) || sig(a, x) != sig(b, y) {
                continue;
            }
            let consistent =
                (0..x).all(|z| a.leq(z, x) == b.leq(map[z], y) && a.leq(x, z) == b.leq(y, map[z]));
            if !consistent {
                continue;
            }
            map[x] = y;
            used.insert(y);
            go(x + 1, a, b, sig, map, used, out);
            used.remove(y);
            map[x] = usize::MAX;
        }
    }
    go(0, a, b, &sig, &mut map, &mut used, &mut out);
    out
}

/// A pair of component order isomorphisms carrying `con` onto `con` and
/// `tot` onto `tot`, if one exists.
pub fn find_isomorphism(a: &DFrame, b: &DFrame) -> Option<(Vec<usize>, Vec<usize>)> {
    let minus_isos = lattice_isomorphisms(a.minus(), b.minus());
    if minus_isos.is_empty() {
        return None;
    }
    let plus_isos = lattice_isomorphisms(a.plus(), b.plus());
    for m in &minus_isos {
        for p in &plus_isos {
            let con = a
                .con()
                .map(b.plus().len(), b.minus().len(), |x| p[x], |y| m[y]);
            let tot = a
                .tot()
                .map(b.minus().len(), b.plus().len(), |x| m[x], |y| p[y]);
            if con == *b.con() && tot == *b.tot() {
                return Some((m.clone(), p.clone()));
            }
        }
    }
    None
}

pub fn is_isomorphic(a: &DFrame, b: &DFrame) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Frame {
        Frame::chain(3).unwrap()
    }

    #[test]
    fn sym_and_minimal_pass() {
        assert!(DFrame::sym(&c3()).axiom_report().is_ok());
        let d = DFrame::minimal(&c3(), &c3()).unwrap();
        assert!(d.axiom_report().is_ok());
        assert_eq!(d.name(), "3.3");
    }

    #[test]
    fn all_pairs_on_two_chains_fails_con_tot() {
        let c2 = Frame::chain(2).unwrap();
        let cand = DFrameCandidate {
            minus: c2.clone(),
            plus: c2,
            con: vec![(0, 0), (0, 1), (1, 0), (1, 1)],
            tot: vec![(0, 0), (0, 1), (1, 0), (1, 1)],
        };
        let report = check_dframe(&cand).unwrap();
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.axiom, Axiom::ConTotPlus);
        assert_eq!(fail.witness.as_ref().unwrap().elements, vec!["1", "1", "0"]);
        assert!(!report.get(Axiom::ConTotMinus).passed());
        for ax in &Axiom::ALL[..6] {
            assert!(report.get(*ax).passed(), "{ax}");
        }
        assert!(report.get(Axiom::ConDirected).passed());
    }

    #[test]
    fn candidate_index_errors() {
        let cand = DFrameCandidate {
            minus: c3(),
            plus: c3(),
            con: vec![(0, 7)],
            tot: vec![],
        };
        assert_eq!(
            check_dframe(&cand).unwrap_err(),
            Error::IndexOutOfRange(7, 3)
        );
    }

    #[test]
    fn minimal_trivial_cases() {
        let one = Frame::trivial();
        let d = DFrame::minimal(&one, &one).unwrap();
        assert!(d.is_trivial());
        assert_eq!(
            DFrame::minimal(&one, &Frame::chain(2).unwrap()).unwrap_err(),
            Error::TrivialMismatch
        );
        // The literal relations are indeed invalid: 1 con 1 tot 0 in the plus frame.
        let c2 = Frame::chain(2).unwrap();
        let con = PairSet::from_fn(2, 1, |phi, a| phi == 0 || a == 0);
        let tot = PairSet::from_fn(1, 2, |a, phi| a == 0 || phi == 1);
        assert!(DFrame::new(one, c2, con, tot).is_err());
    }

    #[test]
    fn sym_two_chain_relations() {
        let d = DFrame::sym(&Frame::chain(2).unwrap());
        let con: Vec<_> = d.con().iter().collect();
        assert_eq!(con, vec![(0, 0), (0, 1), (1, 0)]);
        let tot: Vec<_> = d.tot().iter().collect();
        assert_eq!(tot, vec![(0, 1), (1, 0), (1, 1)]);
        assert!(DFrame::sym(&Frame::trivial()).is_trivial());
        assert!(DFrame::sym(&Frame::boolean(2).unwrap())
            .axiom_report()
            .is_ok());
    }

    #[test]
    fn generate_closes_generators() {
        let g = DFrame::generate(c3(), c3(), &[], &[]).unwrap();
        assert_eq!(g, DFrame::minimal(&c3(), &c3()).unwrap());
        let bad = DFrame::generate(c3(), c3(), &[(2, 2)], &[]);
        assert!(matches!(bad, Err(Error::AxiomViolation { .. })));
    }

    #[test]
    fn homs_and_mono() {
        let d = DFrame::sym(&c3());
        let id = DFrameHom::identity(&d);
        assert!(id.is_mono() && id.is_extremal_epi() && id.is_dense());
        let homs = enumerate_dframe_homs(&d, &d);
        assert!(homs.contains(&id));
        for h in &homs {
            let r = check_dframe_hom(&d, &d, h.minus().map(), h.plus().map()).unwrap();
            assert!(r.is_hom());
        }
    }

    #[test]
    fn swap_with_non_hom_component_is_rejected() {
        let d = DFrame::sym(&c3());
        // minus map reverses the chain: not a frame hom
        let r = check_dframe_hom(&d, &d, &[2, 1, 0], &[0, 1, 2]).unwrap();
        assert!(!r.is_hom());
        assert!(!r.minus.is_hom());
    }

    #[test]
    fn identity_factorization() {
        let d = DFrame::minimal(&c3(), &c3()).unwrap();
        let f = DFrameHom::identity(&d).image_factorization().unwrap();
        assert_eq!(f.image, d);
        assert!(f.epi.is_extremal_epi() && f.mono.is_mono());
    }

    #[test]
    fn regularity() {
        assert!(DFrame::sym(&Frame::boolean(2).unwrap()).is_regular());
        assert!(!DFrame::minimal(&c3(), &c3()).unwrap().is_regular());
        assert!(DFrame::minimal(&Frame::trivial(), &Frame::trivial())
            .unwrap()
            .is_regular());
    }

    #[test]
    fn isomorphism_search() {
        let b = Frame::boolean(2).unwrap();
        assert_eq!(lattice_isomorphisms(&b, &b).len(), 2);
        let d = DFrame::sym(&b);
        assert!(is_isomorphic(&d, &d));
        let m = DFrame::minimal(&b, &b).unwrap();
        assert!(!is_isomorphic(&d, &m));
    }
}
