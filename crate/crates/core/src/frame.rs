//! Finite frames, frame homomorphisms, sublocales and nuclei.
//!
//! At finite scale a frame is a distributive lattice, and preserving
//! bottom, top and binary meets/joins is the same as preserving finite meets
//! and all joins. Sublocales are stored extensionally as member sets; the
//! nucleus and the quotient map are derived from the members.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::set::ElemSet;

struct FrameInner {
    name: Option<String>,
    lattice: Lattice,
    /// `imp[a * n + b] = a → b`
    imp: Vec<usize>,
}

/// A validated finite frame. Cheap to clone.
#[derive(Clone)]
pub struct Frame(Arc<FrameInner>);

impl Frame {
    pub fn new(lattice: Lattice) -> Result<Self> {
        if let Some((a, b, c)) = lattice.distributivity_witness() {
            return Err(Error::NotDistributive(
                lattice.id(a).into(),
                lattice.id(b).into(),
                lattice.id(c).into(),
            ));
        }
        let n = lattice.len();
        let mut imp = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                imp[a * n + b] = lattice.heyting_implication(a, b);
            }
        }
        Ok(Frame(Arc::new(FrameInner {
            name: None,
            lattice,
            imp,
        })))
    }

    /// Same frame with a display name (used in sublocale labels).
    pub fn named(self, name: impl Into<String>) -> Self {
        let inner = match Arc::try_unwrap(self.0) {
            Ok(inner) => FrameInner {
                name: Some(name.into()),
                ..inner
            },
            Err(shared) => FrameInner {
                name: Some(name.into()),
                lattice: shared.lattice.clone(),
                imp: shared.imp.clone(),
            },
        };
        Frame(Arc::new(inner))
    }

    /// The `n`-element chain, named `n`.
    pub fn chain(n: usize) -> Result<Self> {
        Ok(Frame::new(Lattice::chain(n)?)?.named(n.to_string()))
    }

    /// The Boolean frame on `atoms` atoms, named `2^atoms`.
    pub fn boolean(atoms: usize) -> Result<Self> {
        Ok(Frame::new(Lattice::boolean(atoms)?)?.named(format!("2^{atoms}")))
    }

    /// The one-element frame `1`.
    pub fn trivial() -> Self {
        Frame::chain(1).expect("one-element chain")
    }

    pub fn name(&self) -> String {
        match &self.0.name {
            Some(n) => n.clone(),
            None if self.is_trivial() => "1".into(),
            None => "L".into(),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.0.lattice
    }

    /// Heyting implication from the precomputed table.
    #[inline]
    pub fn implies(&self, a: usize, b: usize) -> usize {
        self.0.imp[a * self.len() + b]
    }

    /// Pseudocomplement `a* = a → 0`.
    #[inline]
    pub fn star(&self, a: usize) -> usize {
        self.implies(a, self.bottom())
    }

    pub fn ptr_eq(&self, other: &Frame) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Sub-order on `members` as a frame. Only meaningful for member sets
    /// whose induced order is a distributive lattice (sublocales, subframes).
    pub fn restrict(&self, members: ElemSet) -> Result<(Frame, Vec<usize>)> {
        let (lat, embed) = self.lattice().restrict(members)?;
        Ok((Frame::new(lat)?, embed))
    }
}

impl Deref for Frame {
    type Target = Lattice;
    fn deref(&self) -> &Lattice {
        &self.0.lattice
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Frame) -> bool {
        self.ptr_eq(other) || self.0.lattice == other.0.lattice
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame({}: {:?})", self.name(), self.ids())
    }
}

/// Violations found by [`check_frame_hom`]; empty means the map is a frame
/// homomorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomReport {
    pub violations: Vec<String>,
}

impl HomReport {
    pub fn is_hom(&self) -> bool {
        self.violations.is_empty()
    }
}

const MAX_REPORTED: usize = 8;

/// Checks the four preservation laws of a candidate map `dom → cod`.
pub fn check_frame_hom(dom: &Frame, cod: &Frame, map: &[usize]) -> Result<HomReport> {
    if map.len() != dom.len() {
        return Err(Error::DomainMismatch {
            expected: dom.len(),
            got: map.len(),
        });
    }
    if let Some(&bad) = map.iter().find(|&&y| y >= cod.len()) {
        return Err(Error::IndexOutOfRange(bad, cod.len()));
    }
    let mut v = Vec::new();
    let f = |x: usize| map[x];
    if f(dom.bottom()) != cod.bottom() {
        v.push(format!(
            "bottom: f({}) = {} is not {}",
            dom.id(dom.bottom()),
            cod.id(f(dom.bottom())),
            cod.id(cod.bottom())
        ));
    }
    if f(dom.top()) != cod.top() {
        v.push(format!(
            "top: f({}) = {} is not {}",
            dom.id(dom.top()),
            cod.id(f(dom.top())),
            cod.id(cod.top())
        ));
    }
    'outer: for a in 0..dom.len() {
        for b in a..dom.len() {
            if v.len() >= MAX_REPORTED {
                break 'outer;
            }
            if f(dom.meet(a, b)) != cod.meet(f(a), f(b)) {
                v.push(format!("meet of {} and {}", dom.id(a), dom.id(b)));
            }
            if f(dom.join(a, b)) != cod.join(f(a), f(b)) {
                v.push(format!("join of {} and {}", dom.id(a), dom.id(b)));
            }
        }
    }
    Ok(HomReport { violations: v })
}

/// A frame homomorphism, stored as its table on element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameHom {
    dom: Frame,
    cod: Frame,
    map: Vec<usize>,
}

impl FrameHom {
    pub fn new(dom: Frame, cod: Frame, map: Vec<usize>) -> Result<Self> {
        let report = check_frame_hom(&dom, &cod, &map)?;
        if !report.is_hom() {
            return Err(Error::NotAFrameHom(report.violations.join("; ")));
        }
        Ok(FrameHom { dom, cod, map })
    }

    pub(crate) fn new_unchecked(dom: Frame, cod: Frame, map: Vec<usize>) -> Self {
        FrameHom { dom, cod, map }
    }

    pub fn identity(frame: &Frame) -> Self {
        FrameHom {
            dom: frame.clone(),
            cod: frame.clone(),
            map: (0..frame.len()).collect(),
        }
    }

    pub fn dom(&self) -> &Frame {
        &self.dom
    }

    pub fn cod(&self) -> &Frame {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FrameHom) -> Result<FrameHom> {
        if self.cod != next.dom {
            return Err(Error::CarrierMismatch);
        }
        Ok(FrameHom {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        })
    }

    pub fn image(&self) -> ElemSet {
        self.map.iter().copied().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.dom.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.cod.all()
    }

    /// Dense: only the bottom is sent to the bottom.
    pub fn is_dense(&self) -> bool {
        (0..self.dom.len())
            .filter(|&x| self.map[x] == self.cod.bottom())
            .all(|x| x == self.dom.bottom())
    }
}

/// A nucleus: monotone, inflationary, idempotent, meet-preserving self-map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    frame: Frame,
    map: Vec<usize>,
}

impl Nucleus {
    pub fn new(frame: Frame, map: Vec<usize>) -> Result<Self> {
        if map.len() != frame.len() {
            return Err(Error::DomainMismatch {
                expected: frame.len(),
                got: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= frame.len()) {
            return Err(Error::IndexOutOfRange(bad, frame.len()));
        }
        if let Some(problem) = nucleus_violation(&frame, &map) {
            return Err(Error::NotANucleus(problem));
        }
        Ok(Nucleus { frame, map })
    }

    pub fn from_sublocale(s: &Sublocale) -> Self {
        Nucleus {
            frame: s.frame.clone(),
            map: s.quotient_map(),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn fixpoints(&self) -> Sublocale {
        let members = (0..self.frame.len())
            .filter(|&x| self.map[x] == x)
            .collect();
        Sublocale {
            frame: self.frame.clone(),
            members,
        }
    }
}

/// First failing nucleus law, described.
pub fn nucleus_violation(frame: &Frame, map: &[usize]) -> Option<String> {
    let n = frame.len();
    for a in 0..n {
        if !frame.leq(a, map[a]) {
            return Some(format!("not inflationary at {}", frame.id(a)));
        }
        if map[map[a]] != map[a] {
            return Some(format!("not idempotent at {}", frame.id(a)));
        }
        for b in 0..n {
            if frame.leq(a, b) && !frame.leq(map[a], map[b]) {
                return Some(format!("not monotone at {} ≤ {}", frame.id(a), frame.id(b)));
            }
            if map[frame.meet(a, b)] != frame.meet(map[a], map[b]) {
                return Some(format!(
                    "does not preserve the meet of {} and {}",
                    frame.id(a),
                    frame.id(b)
                ));
            }
        }
    }
    None
}

/// A sublocale: a member set containing top, closed under meets and under
/// `a → s` for every `a` in the frame and `s` in the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublocale {
    frame: Frame,
    members: ElemSet,
}

impl Sublocale {
    pub fn new(frame: Frame, members: ElemSet) -> Result<Self> {
        if let Some(problem) = sublocale_violation(&frame, members) {
            return Err(Error::NotASublocale(problem));
        }
        Ok(Sublocale { frame, members })
    }

    pub fn whole(frame: &Frame) -> Self {
        Sublocale {
            frame: frame.clone(),
            members: frame.all(),
        }
    }

    /// The one-element sublocale `{1}`.
    pub fn top_only(frame: &Frame) -> Self {
        Sublocale {
            frame: frame.clone(),
            members: ElemSet::singleton(frame.top()),
        }
    }

    /// Open sublocale `o(a) = {a → b | b ∈ L}`.
    pub fn open(frame: &Frame, a: usize) -> Self {
        let members = (0..frame.len()).map(|b| frame.implies(a, b)).collect();
        Sublocale {
            frame: frame.clone(),
            members,
        }
    }

    /// Closed sublocale `c(a) = ↑a`.
    pub fn closed(frame: &Frame, a: usize) -> Self {
        Sublocale {
            frame: frame.clone(),
            members: frame.up(a),
        }
    }

    /// Smallest sublocale containing `set`.
    pub fn generated_by(frame: &Frame, set: ElemSet) -> Self {
        let mut cur = set | ElemSet::singleton(frame.top());
        loop {
            let mut next = cur;
            for s in cur {
                for t in cur {
                    next.insert(frame.meet(s, t));
                }
                for a in 0..frame.len() {
                    next.insert(frame.implies(a, s));
                }
            }
            if next == cur {
                break;
            }
            cur = next;
        }
        Sublocale {
            frame: frame.clone(),
            members: cur,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_whole(&self) -> bool {
        self.members == self.frame.all()
    }

    pub fn is_top_only(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset(&self, other: &Sublocale) -> bool {
        self.members.is_subset(other.members)
    }

    /// Frame-level density: the bottom is a member.
    pub fn is_dense(&self) -> bool {
        self.contains(self.frame.bottom())
    }

    /// `q(a) = ⋀{s ∈ S | s ≥ a}` as a self-map of the ambient frame.
    pub fn quotient_map(&self) -> Vec<usize> {
        (0..self.frame.len())
            .map(|a| self.frame.meet_all(self.members & self.frame.up(a)))
            .collect()
    }

    pub fn nucleus(&self) -> Nucleus {
        Nucleus::from_sublocale(self)
    }

    /// The members as a frame of their own, with the embedding
    /// (member index → ambient index).
    pub fn as_frame(&self) -> (Frame, Vec<usize>) {
        let (f, embed) = self
            .frame
            .restrict(self.members)
            .expect("sublocales of a frame are frames");
        (f.named(self.label()), embed)
    }

    /// Quotient homomorphism from the ambient frame onto [`Self::as_frame`].
    pub fn quotient_hom(&self) -> FrameHom {
        let (sub, embed) = self.as_frame();
        let mut back = vec![usize::MAX; self.frame.len()];
        for (i, &x) in embed.iter().enumerate() {
            back[x] = i;
        }
        let map = self.quotient_map().into_iter().map(|y| back[y]).collect();
        FrameHom::new_unchecked(self.frame.clone(), sub, map)
    }

    /// Intersection.
    pub fn meet(&self, other: &Sublocale) -> Result<Sublocale> {
        self.same_frame(other)?;
        Ok(Sublocale {
            frame: self.frame.clone(),
            members: self.members & other.members,
        })
    }

    /// All meets of subsets of `S ∪ T`.
    pub fn join(&self, other: &Sublocale) -> Result<Sublocale> {
        self.same_frame(other)?;
        let mut cur = self.members | other.members;
        loop {
            let mut next = cur;
            for s in cur {
                for t in cur {
                    next.insert(self.frame.meet(s, t));
                }
            }
            if next == cur {
                break;
            }
            cur = next;
        }
        Ok(Sublocale {
            frame: self.frame.clone(),
            members: cur,
        })
    }

    fn same_frame(&self, other: &Sublocale) -> Result<()> {
        if self.frame != other.frame {
            return Err(Error::CarrierMismatch);
        }
        Ok(())
    }

    /// Display label: the frame name for the whole frame, `1` for `{1}`,
    /// `c(a)` / `o(a)` for closed and open sublocales, else the member list.
    pub fn label(&self) -> String {
        let f = &self.frame;
        if self.is_whole() {
            return f.name();
        }
        if self.is_top_only() {
            return "1".into();
        }
        let proper = (0..f.len()).filter(|&a| a != f.bottom() && a != f.top());
        for a in proper.clone() {
            if f.up(a) == self.members {
                return format!("c({})", f.id(a));
            }
        }
        for a in proper {
            if Sublocale::open(f, a).members == self.members {
                return format!("o({})", f.id(a));
            }
        }
        let ids: Vec<&str> = self.members.iter().map(|x| f.id(x)).collect();
        format!("{{{}}}", ids.join(","))
    }
}

/// First failing sublocale condition, described.
pub fn sublocale_violation(frame: &Frame, members: ElemSet) -> Option<String> {
    if !members.is_subset(frame.all()) {
        return Some("member index out of range".into());
    }
    if !members.contains(frame.top()) {
        return Some("top is not a member".into());
    }
    for s in members {
        for t in members {
            if !members.contains(frame.meet(s, t)) {
                return Some(format!(
                    "meet of {} and {} is missing",
                    frame.id(s),
                    frame.id(t)
                ));
            }
        }
        for a in 0..frame.len() {
            if !members.contains(frame.implies(a, s)) {
                return Some(format!("{} → {} is missing", frame.id(a), frame.id(s)));
            }
        }
    }
    None
}

/// All sublocales, ordered by size and then by membership vector.
pub fn enumerate_sublocales(frame: &Frame, max_elements: usize) -> Result<Vec<Sublocale>> {
    let n = frame.len();
    if n > max_elements {
        return Err(Error::SizeGuardExceeded {
            what: "frame size",
            actual: n,
            limit: max_elements,
        });
    }
    let top = frame.top();
    let others: Vec<usize> = (0..n).filter(|&x| x != top).collect();
    // implied[s] = {a → s | a ∈ L}
    let implied: Vec<ElemSet> = (0..n)
        .map(|s| (0..n).map(|a| frame.implies(a, s)).collect())
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << others.len()) {
        let mut members = ElemSet::singleton(top);
        for (bit, &x) in others.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                members.insert(x);
            }
        }
        let closed = members.iter().all(|s| {
            implied[s].is_subset(members)
                && members.iter().all(|t| members.contains(frame.meet(s, t)))
        });
        if closed {
            out.push(Sublocale {
                frame: frame.clone(),
                members,
            });
        }
    }
    sort_sublocales(&mut out);
    Ok(out)
}

pub(crate) fn membership_key(members: ElemSet, n: usize) -> (usize, Vec<bool>) {
    (members.len(), (0..n).map(|i| members.contains(i)).collect())
}

pub(crate) fn sort_sublocales(v: &mut [Sublocale]) {
    v.sort_by_cached_key(|s| membership_key(s.members, s.frame.len()));
}

/// Booleanization: the sublocale `{a | a = a**}` and the map `a ↦ a**`.
pub fn booleanization(frame: &Frame) -> (Sublocale, Vec<usize>) {
    let dd: Vec<usize> = (0..frame.len())
        .map(|a| frame.star(frame.star(a)))
        .collect();
    let members = (0..frame.len()).filter(|&a| dd[a] == a).collect();
    (
        Sublocale {
            frame: frame.clone(),
            members,
        },
        dd,
    )
}
