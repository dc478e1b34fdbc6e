//! d-pseudocomplements, dense sub-d-locales, the `⊑` relations and the hat
//! construction `L̂` (smallest dense sub-d-locale).
//!
//! Notation: `a^•` for `a ∈ L₋` is the largest `φ ∈ L₊` with `φ con a`, and
//! dually `φ^•`. `a ⊑₋ b` holds when `φ con b∧c ⇒ φ con a∧c` for all `c, φ`;
//! `φ ⊑₊ ψ` when `ψ∧θ con c ⇒ φ∧θ con c` for all `θ, c`.

use serde::Serialize;

use crate::dframe::{find_isomorphism, DFrame, DFrameHom};
use crate::error::{Error, Result};
use crate::frame::{sublocale_violation, Frame, Nucleus, Sublocale};
use crate::set::{ElemSet, PairSet};
use crate::subdlocale::{try_sub_d_locale, DSLattice, SubDLocale};

const MAX_MESSAGES: usize = 8;

/// Outcome of an exhaustive law check: how many instances were evaluated
/// and the first few failures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub checks: usize,
    pub failures: usize,
    pub messages: Vec<String>,
}

impl LawReport {
    pub fn is_ok(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.messages.len() < MAX_MESSAGES {
                self.messages.push(msg());
            }
        }
    }

    pub fn merge(&mut self, other: LawReport) {
        self.checks += other.checks;
        self.failures += other.failures;
        for m in other.messages {
            if self.messages.len() < MAX_MESSAGES {
                self.messages.push(m);
            }
        }
    }
}

/// The two d-pseudocomplement maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoOps {
    /// `a ↦ a^•`, `L₋ → L₊`.
    pub minus: Vec<usize>,
    /// `φ ↦ φ^•`, `L₊ → L₋`.
    pub plus: Vec<usize>,
}

impl PseudoOps {
    pub fn new(d: &DFrame) -> Self {
        let minus = (0..d.minus().len())
            .map(|a| d.plus().join_all(d.con().column(a)))
            .collect();
        let plus = (0..d.plus().len())
            .map(|phi| d.minus().join_all(d.con().row(phi)))
            .collect();
        PseudoOps { minus, plus }
    }

    /// `a^•`.
    pub fn bullet_minus(&self, a: usize) -> usize {
        self.minus[a]
    }

    /// `φ^•`.
    pub fn bullet_plus(&self, phi: usize) -> usize {
        self.plus[phi]
    }

    /// `a^••`.
    pub fn dd_minus(&self, a: usize) -> usize {
        self.plus[self.minus[a]]
    }

    /// `φ^••`.
    pub fn dd_plus(&self, phi: usize) -> usize {
        self.minus[self.plus[phi]]
    }

    /// `L₋^•• = {a^•• | a ∈ L₋}`.
    pub fn double_minus_set(&self) -> ElemSet {
        (0..self.minus.len()).map(|a| self.dd_minus(a)).collect()
    }

    /// `L₊^•• = {φ^•• | φ ∈ L₊}`.
    pub fn double_plus_set(&self) -> ElemSet {
        (0..self.plus.len()).map(|phi| self.dd_plus(phi)).collect()
    }
}

/// Subsets up to this carrier size are checked exhaustively in the join
/// laws; larger carriers use the empty and binary cases, which imply the rest.
const ALL_SUBSETS_UP_TO: usize = 10;

/// Galois-connection laws of the bullet maps, plus the two pointwise
/// characterizations of `con` through bullets.
pub fn galois_report(d: &DFrame) -> LawReport {
    let ops = PseudoOps::new(d);
    let (m, p) = (d.minus(), d.plus());
    let mut r = LawReport::default();

    for a in 0..m.len() {
        r.check(d.con_holds(ops.bullet_minus(a), a), || {
            format!("{}^• does not satisfy con with {}", m.id(a), m.id(a))
        });
        r.check(m.leq(a, ops.dd_minus(a)), || {
            format!("{} ≰ {}^••", m.id(a), m.id(a))
        });
        r.check(
            ops.bullet_minus(ops.dd_minus(a)) == ops.bullet_minus(a),
            || format!("{}^••• ≠ {}^•", m.id(a), m.id(a)),
        );
    }
    for phi in 0..p.len() {
        r.check(d.con_holds(phi, ops.bullet_plus(phi)), || {
            format!("{} does not satisfy con with {}^•", p.id(phi), p.id(phi))
        });
        r.check(p.leq(phi, ops.dd_plus(phi)), || {
            format!("{} ≰ {}^••", p.id(phi), p.id(phi))
        });
        r.check(
            ops.bullet_plus(ops.dd_plus(phi)) == ops.bullet_plus(phi),
            || format!("{}^••• ≠ {}^•", p.id(phi), p.id(phi)),
        );
    }

    join_law(&mut r, m, p, &ops.minus, "minus");
    join_law(&mut r, p, m, &ops.plus, "plus");

    for phi in 0..p.len() {
        for a in 0..m.len() {
            let c = d.con_holds(phi, a);
            r.check(
                c == m.leq(a, ops.bullet_plus(phi)) && c == p.leq(phi, ops.bullet_minus(a)),
                || {
                    format!(
                        "φ con a ⟺ a ≤ φ^• ⟺ φ ≤ a^• fails at ({}, {})",
                        p.id(phi),
                        m.id(a)
                    )
                },
            );
            r.check(
                c == d.con_holds(ops.dd_plus(phi), a) && c == d.con_holds(phi, ops.dd_minus(a)),
                || {
                    format!(
                        "φ con a ⟺ φ^•• con a ⟺ φ con a^•• fails at ({}, {})",
                        p.id(phi),
                        m.id(a)
                    )
                },
            );
        }
    }
    r
}

/// `(⋁A)^• = ⋀{x^• | x ∈ A}` for subsets `A` of `from`.
fn join_law(r: &mut LawReport, from: &Frame, to: &Frame, bullet: &[usize], side: &str) {
    let n = from.len();
    let mut check_set = |set: ElemSet| {
        let lhs = bullet[from.join_all(set)];
        let rhs = to.meet_all(set.iter().map(|x| bullet[x]).collect());
        r.check(lhs == rhs, || {
            format!("{side}: bullet of the join of {set:?} is not the meet of bullets")
        });
    };
    if n <= ALL_SUBSETS_UP_TO {
        for mask in 0u64..(1u64 << n) {
            check_set(ElemSet(mask));
        }
    } else {
        check_set(ElemSet::EMPTY);
        for x in 0..n {
            for y in x..n {
                check_set(ElemSet::from_indices([x, y]));
            }
        }
    }
}

/// `(L₋^••, L₊^••)` and whether each is a sublocale of its carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublePseudoSets {
    pub minus: ElemSet,
    pub plus: ElemSet,
    pub minus_is_sublocale: bool,
    pub plus_is_sublocale: bool,
}

pub fn double_pseudo_sets(d: &DFrame) -> DoublePseudoSets {
    let ops = PseudoOps::new(d);
    let minus = ops.double_minus_set();
    let plus = ops.double_plus_set();
    DoublePseudoSets {
        minus,
        plus,
        minus_is_sublocale: sublocale_violation(d.minus(), minus).is_none(),
        plus_is_sublocale: sublocale_violation(d.plus(), plus).is_none(),
    }
}

/// Density by definition (induced `con` is the restriction of the parent's)
/// and by containment of the double-pseudocomplement sets. The two must
/// agree.
pub fn is_dense_sub_d_locale(s: &SubDLocale) -> Result<bool> {
    let parent = s.parent();
    let sub = s.dframe();
    let (me, pe) = (s.minus_embed(), s.plus_embed());
    let definition = (0..sub.plus().len()).all(|phi| {
        (0..sub.minus().len()).all(|a| sub.con_holds(phi, a) == parent.con_holds(pe[phi], me[a]))
    });
    let dd = double_pseudo_sets(parent);
    let characterization =
        dd.minus.is_subset(s.minus().members()) && dd.plus.is_subset(s.plus().members());
    if definition != characterization {
        return Err(Error::CharacterizationMismatch {
            definition,
            characterization,
        });
    }
    Ok(definition)
}

/// The relations `⊑₋` and `⊑₊`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqRel {
    /// `minus.contains(a, b)` iff `a ⊑₋ b`.
    pub minus: PairSet,
    /// `plus.contains(φ, ψ)` iff `φ ⊑₊ ψ`.
    pub plus: PairSet,
}

pub fn sq_relations(d: &DFrame) -> SqRel {
    let (m, p) = (d.minus(), d.plus());
    let con = d.con();
    let cols: Vec<ElemSet> = (0..m.len()).map(|a| con.column(a)).collect();
    let minus = PairSet::from_fn(m.len(), m.len(), |a, b| {
        (0..m.len()).all(|c| cols[m.meet(b, c)].is_subset(cols[m.meet(a, c)]))
    });
    let plus = PairSet::from_fn(p.len(), p.len(), |phi, psi| {
        (0..p.len()).all(|theta| {
            con.row(p.meet(psi, theta))
                .is_subset(con.row(p.meet(phi, theta)))
        })
    });
    SqRel { minus, plus }
}

impl SqRel {
    pub fn minus_holds(&self, a: usize, b: usize) -> bool {
        self.minus.contains(a, b)
    }

    pub fn plus_holds(&self, phi: usize, psi: usize) -> bool {
        self.plus.contains(phi, psi)
    }

    /// `ν₋(a) = ⋁{b | b ⊑₋ a}`.
    pub fn nu_minus(&self, d: &DFrame) -> Vec<usize> {
        nu(d.minus(), &self.minus)
    }

    /// `ν₊(φ) = ⋁{ψ | ψ ⊑₊ φ}`.
    pub fn nu_plus(&self, d: &DFrame) -> Vec<usize> {
        nu(d.plus(), &self.plus)
    }
}

fn nu(f: &Frame, sq: &PairSet) -> Vec<usize> {
    (0..f.len()).map(|x| f.join_all(sq.column(x))).collect()
}

fn leq_relation(f: &Frame) -> PairSet {
    PairSet::from_fn(f.len(), f.len(), |x, y| f.leq(x, y))
}

/// Order and closure laws of `⊑`: `≤ ⊆ ⊑`, transitivity, closure under
/// joins on the left and binary meets on the right.
pub fn sq_report(d: &DFrame, sq: &SqRel) -> LawReport {
    let mut r = LawReport::default();
    for (f, rel, side) in [
        (d.minus(), &sq.minus, "minus"),
        (d.plus(), &sq.plus, "plus"),
    ] {
        let n = f.len();
        for x in 0..n {
            for y in 0..n {
                if f.leq(x, y) {
                    r.check(rel.contains(x, y), || {
                        format!("{side}: {} ≤ {} but not ⊑", f.id(x), f.id(y))
                    });
                }
                if rel.contains(x, y) {
                    for z in rel.row(y) {
                        r.check(rel.contains(x, z), || {
                            format!(
                                "{side}: ⊑ not transitive at {}, {}, {}",
                                f.id(x),
                                f.id(y),
                                f.id(z)
                            )
                        });
                    }
                }
                for z in 0..n {
                    if rel.contains(x, z) && rel.contains(y, z) {
                        r.check(rel.contains(f.join(x, y), z), || {
                            format!(
                                "{side}: ⊑ not closed under joins at {}, {} ⊑ {}",
                                f.id(x),
                                f.id(y),
                                f.id(z)
                            )
                        });
                    }
                    if rel.contains(x, y) && rel.contains(x, z) {
                        r.check(rel.contains(x, f.meet(y, z)), || {
                            format!(
                                "{side}: ⊑ not closed under meets at {} ⊑ {}, {}",
                                f.id(x),
                                f.id(y),
                                f.id(z)
                            )
                        });
                    }
                }
            }
        }
    }
    r
}

/// The smallest dense sub-d-locale together with the data it was built from.
#[derive(Clone, Debug)]
pub struct HatResult {
    pub pseudo: PseudoOps,
    pub sq: SqRel,
    pub nu_minus: Nucleus,
    pub nu_plus: Nucleus,
    pub sub: SubDLocale,
}

impl HatResult {
    pub fn dframe(&self) -> &DFrame {
        self.sub.dframe()
    }
}

/// `L̂`: carriers are the fixpoints of `ν₋`, `ν₊`; relations restrict those
/// of the parent. The carriers are cross-checked against the smallest
/// sublocales containing `L₋^••` and `L₊^••`.
pub fn hat(d: &DFrame) -> Result<HatResult> {
    let pseudo = PseudoOps::new(d);
    let sq = sq_relations(d);
    let nu_minus = Nucleus::new(d.minus().clone(), sq.nu_minus(d))
        .map_err(|e| Error::Internal(format!("ν₋ is not a nucleus: {e}")))?;
    let nu_plus = Nucleus::new(d.plus().clone(), sq.nu_plus(d))
        .map_err(|e| Error::Internal(format!("ν₊ is not a nucleus: {e}")))?;
    let minus = nu_minus.fixpoints();
    let plus = nu_plus.fixpoints();

    let gen_minus = Sublocale::generated_by(d.minus(), pseudo.double_minus_set());
    let gen_plus = Sublocale::generated_by(d.plus(), pseudo.double_plus_set());
    if gen_minus != minus || gen_plus != plus {
        return Err(Error::Internal(
            "fixpoints of ν differ from the sublocale generated by double pseudocomplements".into(),
        ));
    }

    let sub = try_sub_d_locale(d, &minus, &plus)
        .map_err(|e| Error::Internal(format!("hat carriers do not form a sub-d-locale: {e}")))?;
    if !is_dense_sub_d_locale(&sub)? {
        return Err(Error::Internal("hat is not dense".into()));
    }
    Ok(HatResult {
        pseudo,
        sq,
        nu_minus,
        nu_plus,
        sub,
    })
}

/// For each element, the three membership conditions for `L̂`: membership
/// in the sublocale generated by the double pseudocomplements, `b ⊑ x ⇒ b ≤ x`,
/// and `x = ν(x)`.
pub fn hat_membership_report(d: &DFrame) -> LawReport {
    let ops = PseudoOps::new(d);
    let sq = sq_relations(d);
    let mut r = LawReport::default();
    let sides = [
        (d.minus(), &sq.minus, ops.double_minus_set(), "minus"),
        (d.plus(), &sq.plus, ops.double_plus_set(), "plus"),
    ];
    for (f, rel, dd, side) in sides {
        let generated = Sublocale::generated_by(f, dd);
        let nu = nu(f, rel);
        for (x, &nx) in nu.iter().enumerate() {
            let c1 = generated.contains(x);
            let c2 = rel.column(x).iter().all(|b| f.leq(b, x));
            let c3 = nx == x;
            r.check(c1 == c2 && c2 == c3, || {
                format!(
                    "{side}: membership conditions disagree at {}: {c1} {c2} {c3}",
                    f.id(x)
                )
            });
        }
    }
    r
}

/// The seven equivalent corrigibility conditions for one side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrigibleSide {
    pub conditions: [bool; 7],
}

impl CorrigibleSide {
    pub fn agree(&self) -> bool {
        self.conditions.iter().all(|&c| c == self.conditions[0])
    }

    pub fn holds(&self) -> bool {
        self.conditions[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corrigibility {
    pub minus: CorrigibleSide,
    pub plus: CorrigibleSide,
}

impl Corrigibility {
    pub fn is_corrigible(&self) -> bool {
        self.minus.holds() && self.plus.holds()
    }
}

/// Evaluates all seven conditions on each side without assuming they agree.
pub fn corrigibility_conditions(d: &DFrame) -> Corrigibility {
    let ops = PseudoOps::new(d);
    let sq = sq_relations(d);
    let (m, p) = (d.minus(), d.plus());
    let hat_minus = Nucleus::new(m.clone(), sq.nu_minus(d)).map(|n| n.fixpoints().members());
    let hat_plus = Nucleus::new(p.clone(), sq.nu_plus(d)).map(|n| n.fixpoints().members());
    let pairs = |n: usize| (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));

    let dd_m = ops.double_minus_set();
    let minus = CorrigibleSide {
        conditions: [
            sublocale_violation(m, dd_m).is_none(),
            hat_minus.as_ref().map(|h| *h == dd_m).unwrap_or(false),
            pairs(m.len()).all(|(a, b)| m.leq(b, ops.dd_minus(a)) == sq.minus_holds(b, a)),
            pairs(m.len()).all(|(a, b)| {
                ops.dd_minus(m.meet(a, b)) == m.meet(ops.dd_minus(a), ops.dd_minus(b))
            }),
            pairs(m.len()).all(|(a, b)| {
                ops.bullet_minus(m.meet(a, b)) == ops.bullet_minus(m.meet(ops.dd_minus(a), b))
            }),
            pairs(m.len()).all(|(a, b)| {
                (0..p.len()).all(|phi| {
                    !d.con_holds(phi, m.meet(a, b)) || d.con_holds(phi, m.meet(ops.dd_minus(a), b))
                })
            }),
            pairs(m.len())
                .all(|(a, b)| !sq.minus_holds(a, b) || sq.minus_holds(ops.dd_minus(a), b)),
        ],
    };

    let dd_p = ops.double_plus_set();
    let plus = CorrigibleSide {
        conditions: [
            sublocale_violation(p, dd_p).is_none(),
            hat_plus.as_ref().map(|h| *h == dd_p).unwrap_or(false),
            pairs(p.len())
                .all(|(phi, psi)| p.leq(psi, ops.dd_plus(phi)) == sq.plus_holds(psi, phi)),
            pairs(p.len()).all(|(phi, psi)| {
                ops.dd_plus(p.meet(phi, psi)) == p.meet(ops.dd_plus(phi), ops.dd_plus(psi))
            }),
            pairs(p.len()).all(|(phi, psi)| {
                ops.bullet_plus(p.meet(phi, psi)) == ops.bullet_plus(p.meet(ops.dd_plus(phi), psi))
            }),
            pairs(p.len()).all(|(phi, psi)| {
                (0..m.len()).all(|a| {
                    !d.con_holds(p.meet(phi, psi), a)
                        || d.con_holds(p.meet(ops.dd_plus(phi), psi), a)
                })
            }),
            pairs(p.len())
                .all(|(phi, psi)| !sq.plus_holds(phi, psi) || sq.plus_holds(ops.dd_plus(phi), psi)),
        ],
    };
    Corrigibility { minus, plus }
}

/// Corrigibility, failing loudly if the seven conditions disagree on a side.
pub fn is_corrigible(d: &DFrame) -> Result<Corrigibility> {
    let c = corrigibility_conditions(d);
    if !c.minus.agree() {
        return Err(Error::EquivalenceMismatch {
            side: "minus",
            values: c.minus.conditions.to_vec(),
        });
    }
    if !c.plus.agree() {
        return Err(Error::EquivalenceMismatch {
            side: "plus",
            values: c.plus.conditions.to_vec(),
        });
    }
    Ok(c)
}

/// Both component maps preserve `⊑`.
pub fn is_skeletal(f: &DFrameHom) -> bool {
    let (sd, sc) = (sq_relations(f.dom()), sq_relations(f.cod()));
    sd.minus
        .iter()
        .all(|(a, b)| sc.minus_holds(f.minus().apply(a), f.minus().apply(b)))
        && sd
            .plus
            .iter()
            .all(|(x, y)| sc.plus_holds(f.plus().apply(x), f.plus().apply(y)))
}

/// `f̂ = ν_M ∘ f` restricted to `L̂` and corestricted to `M̂`, with tables in
/// hat-member coordinates.
#[derive(Clone, Debug)]
pub struct HatMorphism {
    pub dom: HatResult,
    pub cod: HatResult,
    pub minus: Vec<usize>,
    pub plus: Vec<usize>,
}

impl HatMorphism {
    /// The maps as a d-frame homomorphism between the hat d-frames. This
    /// succeeds when `f` is skeletal.
    pub fn as_dframe_hom(&self) -> Result<DFrameHom> {
        DFrameHom::new(
            self.dom.dframe(),
            self.cod.dframe(),
            self.minus.clone(),
            self.plus.clone(),
        )
    }

    /// `next̂ ∘ self` as raw tables.
    pub fn then_tables(&self, next: &HatMorphism) -> (Vec<usize>, Vec<usize>) {
        (
            self.minus.iter().map(|&x| next.minus[x]).collect(),
            self.plus.iter().map(|&x| next.plus[x]).collect(),
        )
    }
}

pub fn hat_morphism(f: &DFrameHom) -> Result<HatMorphism> {
    let dom = hat(f.dom())?;
    let cod = hat(f.cod())?;
    let nu_m = cod.nu_minus.map().to_vec();
    let nu_p = cod.nu_plus.map().to_vec();
    let index = |embed: &[usize], n: usize| {
        let mut back = vec![usize::MAX; n];
        for (i, &x) in embed.iter().enumerate() {
            back[x] = i;
        }
        back
    };
    let back_m = index(cod.sub.minus_embed(), f.cod().minus().len());
    let back_p = index(cod.sub.plus_embed(), f.cod().plus().len());
    let minus = dom
        .sub
        .minus_embed()
        .iter()
        .map(|&a| back_m[nu_m[f.minus().apply(a)]])
        .collect();
    let plus = dom
        .sub
        .plus_embed()
        .iter()
        .map(|&phi| back_p[nu_p[f.plus().apply(phi)]])
        .collect();
    Ok(HatMorphism {
        dom,
        cod,
        minus,
        plus,
    })
}

/// Property record of a d-frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub double_negation: bool,
    pub excluded_middle: bool,
    /// From the separation condition.
    pub dually_subfit: bool,
    /// `⊑ = ≤` on both sides.
    pub sq_is_order: bool,
    pub corrigible: bool,
    pub regular: bool,
}

/// Computes the record and checks the implications between its fields.
pub fn classify(d: &DFrame) -> Result<Classification> {
    let ops = PseudoOps::new(d);
    let sq = sq_relations(d);
    let (m, p) = (d.minus(), d.plus());
    let double_negation = (0..m.len()).all(|a| ops.dd_minus(a) == a)
        && (0..p.len()).all(|phi| ops.dd_plus(phi) == phi);
    let excluded_middle = (0..m.len()).all(|a| d.tot_holds(a, ops.bullet_minus(a)))
        && (0..p.len()).all(|phi| d.tot_holds(ops.bullet_plus(phi), phi));
    let dually_subfit = dually_subfit_by_definition(d);
    let sq_is_order = sq.minus == leq_relation(m) && sq.plus == leq_relation(p);
    let corrigible = is_corrigible(d)?.is_corrigible();
    let c = Classification {
        double_negation,
        excluded_middle,
        dually_subfit,
        sq_is_order,
        corrigible,
        regular: d.is_regular(),
    };
    if c.excluded_middle && !c.double_negation {
        return Err(Error::ImplicationViolated(
            "excluded middle without double negation".into(),
        ));
    }
    if c.double_negation && !(c.corrigible && c.sq_is_order) {
        return Err(Error::ImplicationViolated(
            "double negation without corrigibility or with ⊑ ≠ ≤".into(),
        ));
    }
    if c.dually_subfit != c.sq_is_order {
        return Err(Error::ImplicationViolated(
            "dual subfitness disagrees with ⊑ = ≤".into(),
        ));
    }
    Ok(c)
}

/// `a ≰ b ⇒ ∃c, φ: ¬(φ con c∧a) ∧ φ con c∧b`, and the analogous condition
/// on `L₊`.
pub fn dually_subfit_by_definition(d: &DFrame) -> bool {
    let (m, p) = (d.minus(), d.plus());
    let minus_ok = (0..m.len()).all(|a| {
        (0..m.len()).all(|b| {
            m.leq(a, b)
                || (0..m.len()).any(|c| {
                    (0..p.len()).any(|phi| {
                        !d.con_holds(phi, m.meet(c, a)) && d.con_holds(phi, m.meet(c, b))
                    })
                })
        })
    });
    let plus_ok = (0..p.len()).all(|phi| {
        (0..p.len()).all(|psi| {
            p.leq(phi, psi)
                || (0..p.len()).any(|theta| {
                    (0..m.len()).any(|c| {
                        !d.con_holds(p.meet(phi, theta), c) && d.con_holds(p.meet(psi, theta), c)
                    })
                })
        })
    });
    minus_ok && plus_ok
}

/// `L̂ ≤ S` for every dense member `S` of `dS(L)`, and the dense members
/// found by both density tests.
pub fn hat_minimality(h: &HatResult, ds: &DSLattice) -> Result<LawReport> {
    let mut r = LawReport::default();
    let mut found = false;
    for s in ds.members() {
        if is_dense_sub_d_locale(s)? {
            r.check(h.sub.is_subset(s), || {
                format!("hat {} is not below dense {}", h.sub.label(), s.label())
            });
            found |= *s == h.sub;
        }
    }
    r.check(found, || {
        format!("hat {} is not among the enumerated members", h.sub.label())
    });
    Ok(r)
}

/// Desk-scale checks of the two coreflections.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoreflectionReport {
    /// `L̂̂ ≅ L̂`.
    pub hat_idempotent: bool,
    /// `L̂` is dually subfit.
    pub hat_dually_subfit: bool,
    /// `L` dually subfit ⇒ `L̂ ≅ L`.
    pub subfit_fixed: bool,
    /// `L` corrigible ⇒ `L̂` double negation.
    pub corrigible_gives_double_negation: bool,
    /// Each skeletal `f: L → D` into a dually subfit `D` factors through
    /// the quotient `L → L̂` as `f = f̂ ∘ q`.
    pub factorization: LawReport,
}

impl CoreflectionReport {
    pub fn is_ok(&self) -> bool {
        self.hat_idempotent
            && self.hat_dually_subfit
            && self.subfit_fixed
            && self.corrigible_gives_double_negation
            && self.factorization.is_ok()
    }
}

pub fn coreflection_check(d: &DFrame, homs: &[DFrameHom]) -> Result<CoreflectionReport> {
    let h = hat(d)?;
    let hd = h.dframe();
    let hh = hat(hd)?;
    let cls = classify(d)?;
    let hcls = classify(hd)?;
    let mut report = CoreflectionReport {
        hat_idempotent: find_isomorphism(hh.dframe(), hd).is_some(),
        hat_dually_subfit: hcls.dually_subfit,
        subfit_fixed: !cls.dually_subfit || find_isomorphism(hd, d).is_some(),
        corrigible_gives_double_negation: !cls.corrigible || hcls.double_negation,
        factorization: LawReport::default(),
    };
    let nu_m = h.nu_minus.map();
    let nu_p = h.nu_plus.map();
    for f in homs.iter().filter(|f| f.dom() == d) {
        if !is_skeletal(f) || !classify(f.cod())?.dually_subfit {
            continue;
        }
        let fh = hat_morphism(f)?;
        let cod_m = fh.cod.sub.minus_embed();
        let cod_p = fh.cod.sub.plus_embed();
        let pos = |embed: &[usize], x: usize| embed.iter().position(|&y| y == x);
        let ok_minus = (0..d.minus().len()).all(|a| {
            pos(h.sub.minus_embed(), nu_m[a])
                .map(|i| cod_m[fh.minus[i]] == f.minus().apply(a))
                .unwrap_or(false)
        });
        let ok_plus = (0..d.plus().len()).all(|phi| {
            pos(h.sub.plus_embed(), nu_p[phi])
                .map(|i| cod_p[fh.plus[i]] == f.plus().apply(phi))
                .unwrap_or(false)
        });
        report.factorization.check(ok_minus && ok_plus, || {
            format!(
                "{} → {} does not factor through the hat",
                d.name(),
                f.cod().name()
            )
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Frame {
        Frame::chain(3).unwrap()
    }

    #[test]
    fn bullets() {
        let d = DFrame::minimal(&c3(), &c3()).unwrap();
        let ops = PseudoOps::new(&d);
        assert_eq!(ops.bullet_minus(0), 2);
        assert_eq!(ops.bullet_minus(1), 0);
        assert_eq!(ops.dd_minus(1), 2);
        let s = DFrame::sym(&c3());
        let ops = PseudoOps::new(&s);
        assert_eq!(ops.minus, vec![2, 0, 0]);
        assert!(galois_report(&d).is_ok());
        assert!(galois_report(&s).is_ok());
    }

    #[test]
    fn sym3_hat_is_booleanization() {
        let s = DFrame::sym(&c3());
        let h = hat(&s).unwrap();
        let b = ElemSet::from_indices([0, 2]);
        assert_eq!(h.sub.minus().members(), b);
        assert_eq!(h.sub.plus().members(), b);
        let dd = double_pseudo_sets(&s);
        assert_eq!(dd.minus, b);
        assert!(dd.minus_is_sublocale);
    }

    #[test]
    fn hat_of_33_is_open_pair() {
        // c^• = 0 under the minimal relations, so c^•• = 1 and {0, 1} = o(c)
        // already contains every double pseudocomplement.
        let d = DFrame::minimal(&c3(), &c3()).unwrap();
        let h = hat(&d).unwrap();
        assert_eq!(h.sub.label(), "o(c).o(c)");
        assert!(!h.sub.minus().is_whole());
    }

    #[test]
    fn boolean_sym_classification() {
        let s = DFrame::sym(&Frame::boolean(2).unwrap());
        let c = classify(&s).unwrap();
        assert!(c.excluded_middle && c.double_negation && c.dually_subfit && c.corrigible);
        let sq = sq_relations(&s);
        assert_eq!(sq.minus, leq_relation(s.minus()));
    }

    #[test]
    fn sq_on_33() {
        let d = DFrame::minimal(&c3(), &c3()).unwrap();
        let sq = sq_relations(&d);
        assert!(sq_report(&d, &sq).is_ok());
        // c ⊑ 0 fails: 1 con 0∧1 but not 1 con c∧1
        assert!(!sq.minus_holds(1, 0));
        // 1 ⊑ c: φ con c∧x only when φ = 0 or x = 0
        assert!(sq.minus_holds(2, 1));
        assert!(!dually_subfit_by_definition(&d));
    }

    #[test]
    fn dense_tests_agree_on_ds() {
        let d = DFrame::sym(&c3());
        let ds = crate::subdlocale::enumerate_ds(&d, 12, 400).unwrap();
        let h = hat(&d).unwrap();
        assert!(hat_minimality(&h, &ds).unwrap().is_ok());
        assert!(!is_dense_sub_d_locale(ds.member(ds.bottom())).unwrap());
        assert!(is_dense_sub_d_locale(ds.member(ds.top())).unwrap());
    }

    #[test]
    fn identity_hat_morphism() {
        let d = DFrame::sym(&c3());
        let id = DFrameHom::identity(&d);
        assert!(is_skeletal(&id));
        let fh = hat_morphism(&id).unwrap();
        assert_eq!(fh.minus, vec![0, 1]);
        assert!(fh.as_dframe_hom().is_ok());
    }

    #[test]
    fn coreflection_on_sym3() {
        let d = DFrame::sym(&c3());
        let homs =
            crate::dframe::enumerate_dframe_homs(&d, &DFrame::sym(&Frame::chain(2).unwrap()));
        let r = coreflection_check(&d, &homs).unwrap();
        assert!(r.is_ok(), "{r:?}");
        assert!(r.factorization.checks > 0);
    }
}
