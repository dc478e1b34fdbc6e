//! Sub-d-locales and the lattice `dS(L)` they form.
//!
//! A sub-d-locale is a pair of component sublocales `(S₋, S₊)` such that the
//! relations induced through the quotient pair `q = (q₋, q₊)` form a
//! d-frame. The induced relations are forced: `con` is the Scott closure of
//! `q[con]` and `tot` is `q[tot]`, which equals `tot ∩ (S₋ × S₊)`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::dframe::{check_axioms, DFrame, DFrameHom};
use crate::error::{Error, Result};
use crate::frame::{enumerate_sublocales, membership_key, Frame, Sublocale};
use crate::lattice::ProductOrder;
use crate::set::{BitMatrix, ElemSet, PairSet};

/// Square operation table indexed by member position.
pub type Table = Vec<Vec<usize>>;

type MembershipKey = (usize, Vec<bool>);

/// Default bound on component frame size for sublocale enumeration.
pub const DEFAULT_MAX_FRAME: usize = 12;
/// Default bound on the number of sublocale pairs tried by [`enumerate_ds`].
pub const DEFAULT_MAX_PAIRS: usize = 400;

#[derive(Clone, Debug)]
pub struct SubDLocale {
    parent: DFrame,
    minus: Sublocale,
    plus: Sublocale,
    dframe: DFrame,
    minus_embed: Vec<usize>,
    plus_embed: Vec<usize>,
    quotient: DFrameHom,
}

impl PartialEq for SubDLocale {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.minus == other.minus && self.plus == other.plus
    }
}

impl Eq for SubDLocale {}

/// Builds the induced structure on `(S₋, S₊)` and validates it.
pub fn try_sub_d_locale(
    parent: &DFrame,
    minus: &Sublocale,
    plus: &Sublocale,
) -> Result<SubDLocale> {
    if minus.frame() != parent.minus() || plus.frame() != parent.plus() {
        return Err(Error::CarrierMismatch);
    }
    let qm = minus.quotient_hom();
    let qp = plus.quotient_hom();
    let (fm, minus_embed) = minus.as_frame();
    let (fp, plus_embed) = plus.as_frame();

    let image_con = parent
        .con()
        .map(fp.len(), fm.len(), |phi| qp.apply(phi), |a| qm.apply(a));
    let con = ProductOrder::new(&fp, &fm).scott_closure(&image_con);
    let tot = parent
        .tot()
        .map(fm.len(), fp.len(), |a| qm.apply(a), |phi| qp.apply(phi));
    let restricted_tot = PairSet::from_fn(fm.len(), fp.len(), |a, phi| {
        parent.tot_holds(minus_embed[a], plus_embed[phi])
    });
    if tot != restricted_tot {
        return Err(Error::Internal(
            "q[tot] differs from tot restricted to the sublocale pair".into(),
        ));
    }

    let report = check_axioms(&fm, &fp, &con, &tot);
    if let Some(fail) = report.first_failure() {
        return Err(Error::NotASubDLocale {
            axiom: fail.axiom.name().into(),
            witness: fail
                .witness
                .as_ref()
                .map(|w| w.text.clone())
                .unwrap_or_default(),
        });
    }
    let label = format!("{}.{}", minus.label(), plus.label());
    let dframe = DFrame::new(fm, fp, con, tot)?.named(label);
    let quotient = DFrameHom::new(parent, &dframe, qm.map().to_vec(), qp.map().to_vec())?;
    debug_assert!(quotient.is_extremal_epi());
    Ok(SubDLocale {
        parent: parent.clone(),
        minus: minus.clone(),
        plus: plus.clone(),
        dframe,
        minus_embed,
        plus_embed,
        quotient,
    })
}

impl SubDLocale {
    /// The parent itself.
    pub fn whole(parent: &DFrame) -> Self {
        try_sub_d_locale(
            parent,
            &Sublocale::whole(parent.minus()),
            &Sublocale::whole(parent.plus()),
        )
        .expect("the whole pair is a sub-d-locale")
    }

    /// `({1}, {1})`.
    pub fn bottom(parent: &DFrame) -> Self {
        try_sub_d_locale(
            parent,
            &Sublocale::top_only(parent.minus()),
            &Sublocale::top_only(parent.plus()),
        )
        .expect("the pair of one-point sublocales is a sub-d-locale")
    }

    pub fn parent(&self) -> &DFrame {
        &self.parent
    }

    pub fn minus(&self) -> &Sublocale {
        &self.minus
    }

    pub fn plus(&self) -> &Sublocale {
        &self.plus
    }

    /// The induced d-frame on the member carriers.
    pub fn dframe(&self) -> &DFrame {
        &self.dframe
    }

    /// Member index → parent index, minus side.
    pub fn minus_embed(&self) -> &[usize] {
        &self.minus_embed
    }

    pub fn plus_embed(&self) -> &[usize] {
        &self.plus_embed
    }

    /// The quotient pair `parent → self`.
    pub fn quotient(&self) -> &DFrameHom {
        &self.quotient
    }

    pub fn label(&self) -> String {
        self.dframe.name()
    }

    /// Componentwise inclusion.
    pub fn is_subset(&self, other: &SubDLocale) -> bool {
        self.minus.is_subset(&other.minus) && self.plus.is_subset(&other.plus)
    }

    /// Induced `con` in parent coordinates.
    pub fn con_in_parent(&self) -> PairSet {
        let p = &self.parent;
        self.dframe.con().map(
            p.plus().len(),
            p.minus().len(),
            |phi| self.plus_embed[phi],
            |a| self.minus_embed[a],
        )
    }

    /// Induced `tot` in parent coordinates.
    pub fn tot_in_parent(&self) -> PairSet {
        let p = &self.parent;
        self.dframe.tot().map(
            p.minus().len(),
            p.plus().len(),
            |a| self.minus_embed[a],
            |phi| self.plus_embed[phi],
        )
    }

    fn sort_key(&self) -> (usize, MembershipKey, MembershipKey) {
        (
            self.minus.len() + self.plus.len(),
            membership_key(self.minus.members(), self.parent.minus().len()),
            membership_key(self.plus.members(), self.parent.plus().len()),
        )
    }
}

/// Constructive join: componentwise sublocale joins with the induced
/// relations.
pub fn ds_join(s: &SubDLocale, t: &SubDLocale) -> Result<SubDLocale> {
    if s.parent != t.parent {
        return Err(Error::CarrierMismatch);
    }
    let minus = s.minus.join(&t.minus)?;
    let plus = s.plus.join(&t.plus)?;
    try_sub_d_locale(&s.parent, &minus, &plus)
}

/// `dS(L)` with its componentwise order.
#[derive(Clone, Debug)]
pub struct DSLattice {
    parent: DFrame,
    members: Vec<SubDLocale>,
    /// `leq.contains(i, j)` iff member `i` ≤ member `j`.
    leq: BitMatrix,
    by_carriers: HashMap<(ElemSet, ElemSet), usize>,
}

/// Every sublocale pair whose induced structure is a d-frame, bottom first.
pub fn enumerate_ds(parent: &DFrame, max_frame: usize, max_pairs: usize) -> Result<DSLattice> {
    let sm = enumerate_sublocales(parent.minus(), max_frame)?;
    let sp = enumerate_sublocales(parent.plus(), max_frame)?;
    let pairs = sm.len() * sp.len();
    if pairs > max_pairs {
        return Err(Error::SizeGuardExceeded {
            what: "sublocale pairs",
            actual: pairs,
            limit: max_pairs,
        });
    }
    let mut members = Vec::new();
    for m in &sm {
        for p in &sp {
            match try_sub_d_locale(parent, m, p) {
                Ok(s) => members.push(s),
                Err(Error::NotASubDLocale { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    members.sort_by_cached_key(SubDLocale::sort_key);
    Ok(DSLattice::from_members(parent, members))
}

/// Valid `S₊` partners of a fixed `S₋` (or the other way round when
/// `minus_side` is false).
pub fn partners(
    parent: &DFrame,
    fixed: &Sublocale,
    minus_side: bool,
    max_frame: usize,
) -> Result<Vec<Sublocale>> {
    let other = if minus_side {
        parent.plus()
    } else {
        parent.minus()
    };
    let mut out = Vec::new();
    for s in enumerate_sublocales(other, max_frame)? {
        let r = if minus_side {
            try_sub_d_locale(parent, fixed, &s)
        } else {
            try_sub_d_locale(parent, &s, fixed)
        };
        match r {
            Ok(_) => out.push(s),
            Err(Error::NotASubDLocale { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

impl DSLattice {
    fn from_members(parent: &DFrame, members: Vec<SubDLocale>) -> Self {
        let n = members.len();
        let leq = BitMatrix::from_fn(n, |i, j| members[i].is_subset(&members[j]));
        let by_carriers = members
            .iter()
            .enumerate()
            .map(|(i, s)| ((s.minus.members(), s.plus.members()), i))
            .collect();
        DSLattice {
            parent: parent.clone(),
            members,
            leq,
            by_carriers,
        }
    }

    pub fn parent(&self) -> &DFrame {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SubDLocale] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &SubDLocale {
        &self.members[i]
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(SubDLocale::label).collect()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.members.iter().position(|s| s.label() == label)
    }

    pub fn index_of(&self, s: &SubDLocale) -> Option<usize> {
        self.members.iter().position(|m| m == s)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.contains(i, j)
    }

    pub fn order(&self) -> &BitMatrix {
        &self.leq
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    /// Least upper bound read off the order.
    pub fn order_join(&self, i: usize, j: usize) -> Option<usize> {
        let ub: Vec<usize> = self.leq.row(i).filter(|&k| self.leq(j, k)).collect();
        ub.iter()
            .copied()
            .find(|&k| ub.iter().all(|&u| self.leq(k, u)))
    }

    /// Greatest lower bound read off the order.
    pub fn order_meet(&self, i: usize, j: usize) -> Option<usize> {
        let lb: Vec<usize> = self.leq.column(i).filter(|&k| self.leq(k, j)).collect();
        lb.iter()
            .copied()
            .find(|&k| lb.iter().all(|&l| self.leq(l, k)))
    }

    /// Join via the componentwise construction. Every member has already
    /// passed [`try_sub_d_locale`], so the componentwise join is looked up by
    /// its carriers; [`ds_join`] re-derives it from scratch.
    pub fn join(&self, i: usize, j: usize) -> Result<usize> {
        let (s, t) = (&self.members[i], &self.members[j]);
        let minus = s.minus.join(&t.minus)?;
        let plus = s.plus.join(&t.plus)?;
        self.by_carriers
            .get(&(minus.members(), plus.members()))
            .copied()
            .ok_or_else(|| {
                Error::Internal(format!(
                    "componentwise join of {} and {} is not a sub-d-locale",
                    s.label(),
                    t.label()
                ))
            })
    }

    /// Meet as the join of all common lower bounds. This is generally not the
    /// componentwise intersection.
    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        let mut acc = self.bottom();
        for k in self.leq.column(i).filter(|&k| self.leq(k, j)) {
            acc = self.join(acc, k)?;
        }
        Ok(acc)
    }

    /// Cover pairs `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        covers_of(&self.leq)
    }

    /// Join and meet tables from the constructive operations.
    #[allow(clippy::needless_range_loop)]
    pub fn tables(&self) -> Result<(Table, Table)> {
        let n = self.len();
        let mut join = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let k = self.join(i, j)?;
                join[i][j] = k;
                join[j][i] = k;
            }
        }
        let mut meet = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let k = self
                    .leq
                    .column(i)
                    .filter(|&k| self.leq(k, j))
                    .fold(self.bottom(), |acc, k| join[acc][k]);
                meet[i][j] = k;
                meet[j][i] = k;
            }
        }
        Ok((join, meet))
    }

    /// `(x, y, z)` with `x ∨ (y ∧ z) ≠ (x ∨ y) ∧ (x ∨ z)`.
    pub fn distributivity_witness(&self) -> Result<Option<(usize, usize, usize)>> {
        let (join, meet) = self.tables()?;
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if join[x][meet[y][z]] != meet[join[x][y]][join[x][z]] {
                        return Ok(Some((x, y, z)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// `(x, y, z)` with `x ≤ z` and `x ∨ (y ∧ z) ≠ (x ∨ y) ∧ z`.
    pub fn modularity_witness(&self) -> Result<Option<(usize, usize, usize)>> {
        let (join, meet) = self.tables()?;
        let n = self.len();
        for x in 0..n {
            for z in self.leq.row(x) {
                for y in 0..n {
                    if join[x][meet[y][z]] != meet[join[x][y]][z] {
                        return Ok(Some((x, y, z)));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn to_dot(&self) -> String {
        hasse_dot("dS", &self.labels(), &self.leq)
    }
}

/// Cover pairs `(x, y)` of a partial order given as `leq.contains(x, y)`.
pub fn covers_of(leq: &BitMatrix) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..leq.len() {
        for y in leq.row(x).filter(|&y| y != x) {
            if !leq.row(x).any(|z| z != x && z != y && leq.contains(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Graphviz digraph of the cover relation, edges drawn from lower to upper
/// element.
pub fn hasse_dot(name: &str, labels: &[String], leq: &BitMatrix) -> String {
    let mut s = String::new();
    writeln!(s, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    writeln!(s, "  node [shape=plaintext];").unwrap();
    for (i, l) in labels.iter().enumerate() {
        writeln!(s, "  n{i} [label=\"{}\"];", escape(l)).unwrap();
    }
    for (x, y) in covers_of(leq) {
        writeln!(s, "  n{x} -> n{y};").unwrap();
    }
    s.push_str("}\n");
    s
}

/// DOT rendering of a single frame's Hasse diagram.
pub fn frame_dot(frame: &Frame) -> String {
    let n = frame.len();
    let leq = BitMatrix::from_fn(n, |x, y| frame.leq(x, y));
    hasse_dot(&frame.name(), frame.ids(), &leq)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d33() -> DFrame {
        let c3 = Frame::chain(3).unwrap();
        DFrame::minimal(&c3, &c3).unwrap()
    }

    #[test]
    fn nontrivial_pairs_of_33_are_sub_d_locales() {
        let d = d33();
        let f = d.minus();
        let s = try_sub_d_locale(&d, &Sublocale::closed(f, 1), &Sublocale::open(f, 1)).unwrap();
        assert_eq!(s.label(), "c(c).o(c)");
        assert!(s.quotient().is_extremal_epi());
        let rejected = try_sub_d_locale(&d, &Sublocale::whole(f), &Sublocale::top_only(f));
        assert!(
            matches!(rejected, Err(Error::NotASubDLocale { ref axiom, .. }) if axiom == "con-tot-")
        );
    }

    #[test]
    fn whole_equals_parent() {
        let d = d33();
        let w = SubDLocale::whole(&d);
        assert_eq!(*w.dframe(), d);
        assert_eq!(w.label(), "3.3");
    }

    #[test]
    fn ds_of_33() {
        let ds = enumerate_ds(&d33(), DEFAULT_MAX_FRAME, DEFAULT_MAX_PAIRS).unwrap();
        assert_eq!(ds.len(), 10);
        assert_eq!(ds.covers().len(), 16);
        assert_eq!(ds.member(ds.bottom()).label(), "1.1");
        assert_eq!(ds.member(ds.top()).label(), "3.3");
        let l = |s: &str| ds.index_of_label(s).unwrap();
        assert_eq!(ds.meet(l("3.c(c)"), l("3.o(c)")).unwrap(), l("1.1"));
        assert_eq!(ds.join(l("c(c).c(c)"), l("o(c).o(c)")).unwrap(), l("3.3"));
        assert!(ds.distributivity_witness().unwrap().is_some());
        assert!(ds.modularity_witness().unwrap().is_some());
    }

    #[test]
    fn trivial_ds() {
        let one = Frame::trivial();
        let d = DFrame::minimal(&one, &one).unwrap();
        let ds = enumerate_ds(&d, 12, 400).unwrap();
        assert_eq!(ds.len(), 1);
        assert!(ds.distributivity_witness().unwrap().is_none());
        let dot = ds.to_dot();
        assert_eq!(dot.matches("->").count(), 0);
    }

    #[test]
    fn size_guards() {
        let e = enumerate_ds(&d33(), 12, 5).unwrap_err();
        assert!(matches!(e, Error::SizeGuardExceeded { .. }));
        let e = enumerate_ds(&d33(), 2, 400).unwrap_err();
        assert!(matches!(e, Error::SizeGuardExceeded { .. }));
    }

    #[test]
    fn chain_dot() {
        let dot = frame_dot(&Frame::chain(3).unwrap());
        assert_eq!(dot.matches("->").count(), 2);
        assert_eq!(dot.matches("[label=").count(), 3);
    }
}
