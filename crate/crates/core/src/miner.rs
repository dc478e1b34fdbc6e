//! Bounded exhaustive search for small d-frames with unusual properties.
//!
//! For every pair of nontrivial distributive lattices up to a size bound,
//! every pair of consistency and totality relations satisfying the d-frame
//! axioms is enumerated, and each resulting d-frame is classified. Findings
//! are reported, never asserted.

use serde::Serialize;

use crate::corpus::distributive_lattices;
use crate::density::{classify, corrigibility_conditions};
use crate::dframe::{check_axioms, DFrame};
use crate::document::DFrameDocument;
use crate::error::{Error, Result};
use crate::frame::{enumerate_sublocales, Frame};
use crate::set::PairSet;
use crate::subdlocale::partners;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinerConfig {
    /// Largest component frame searched.
    pub max_size: usize,
    /// Largest component frame on which sublocale partners are searched.
    pub partner_max_size: usize,
    /// Examples kept per category.
    pub max_examples: usize,
}

impl Default for MinerConfig {
    fn default() -> Self {
        MinerConfig {
            max_size: 4,
            partner_max_size: 4,
            max_examples: 3,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub count: usize,
    pub examples: Vec<DFrameDocument>,
}

impl Finding {
    fn record(&mut self, d: &DFrame, max: usize) {
        self.count += 1;
        if self.examples.len() < max {
            self.examples.push(DFrameDocument::from_dframe(d));
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MinerReport {
    pub frame_pairs: usize,
    pub dframes: usize,
    pub corrigible: usize,
    /// `L₋^••` or `L₊^••` is not a sublocale.
    pub incorrigible: Finding,
    /// Double negation holds, excluded middle fails.
    pub double_negation_without_excluded_middle: Finding,
    /// A nontrivial component sublocale with no partner on the other side.
    pub partnerless_sublocale: Finding,
    /// The seven corrigibility conditions disagreed on some side.
    pub condition_disagreements: Finding,
    /// A property implication failed in classification.
    pub implication_failures: Finding,
}

/// Runs the search. Output depends only on the configuration.
pub fn mine(config: &MinerConfig) -> Result<MinerReport> {
    // product relations are single u64 bitmasks
    if config.max_size > 8 {
        return Err(Error::SizeGuardExceeded {
            what: "miner frame size",
            actual: config.max_size,
            limit: 8,
        });
    }
    let frames: Vec<Frame> = distributive_lattices(config.max_size)
        .into_iter()
        .filter(|f| !f.is_trivial())
        .collect();
    let mut report = MinerReport::default();
    let max = config.max_examples;
    for minus in &frames {
        for plus in &frames {
            report.frame_pairs += 1;
            for (con, tot) in relations(minus, plus) {
                let d = DFrame::new(minus.clone(), plus.clone(), con, tot)?.named(format!(
                    "{}.{}#{}",
                    minus.name(),
                    plus.name(),
                    report.dframes
                ));
                report.dframes += 1;

                let conditions = corrigibility_conditions(&d);
                if !conditions.minus.agree() || !conditions.plus.agree() {
                    report.condition_disagreements.record(&d, max);
                    continue;
                }
                if conditions.is_corrigible() {
                    report.corrigible += 1;
                } else {
                    report.incorrigible.record(&d, max);
                }
                match classify(&d) {
                    Ok(c) => {
                        if c.double_negation && !c.excluded_middle {
                            report
                                .double_negation_without_excluded_middle
                                .record(&d, max);
                        }
                    }
                    Err(Error::ImplicationViolated(_)) | Err(Error::EquivalenceMismatch { .. }) => {
                        report.implication_failures.record(&d, max)
                    }
                    Err(e) => return Err(e),
                }
                if minus.len() <= config.partner_max_size
                    && plus.len() <= config.partner_max_size
                    && has_partnerless_sublocale(&d, config.partner_max_size)?
                {
                    report.partnerless_sublocale.record(&d, max);
                }
            }
        }
    }
    Ok(report)
}

fn minimal_tot(minus: &Frame, plus: &Frame) -> PairSet {
    PairSet::from_fn(minus.len(), plus.len(), |a, phi| {
        a == minus.top() || phi == plus.top()
    })
}

fn has_partnerless_sublocale(d: &DFrame, max_frame: usize) -> Result<bool> {
    for s in enumerate_sublocales(d.minus(), max_frame)? {
        if !s.is_top_only() && partners(d, &s, true, max_frame)?.is_empty() {
            return Ok(true);
        }
    }
    for s in enumerate_sublocales(d.plus(), max_frame)? {
        if !s.is_top_only() && partners(d, &s, false, max_frame)?.is_empty() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Every `(con, tot)` satisfying all d-frame axioms over `minus`, `plus`.
pub fn relations(minus: &Frame, plus: &Frame) -> Vec<(PairSet, PairSet)> {
    let cons = con_relations(minus, plus, &minimal_tot(minus, plus));
    let tots = tot_relations(minus, plus, &minimal_con(minus, plus));
    let mut out = Vec::new();
    for con in &cons {
        for tot in &tots {
            if check_axioms(minus, plus, con, tot).is_ok() {
                out.push((con.clone(), tot.clone()));
            }
        }
    }
    out
}

fn minimal_con(minus: &Frame, plus: &Frame) -> PairSet {
    PairSet::from_fn(plus.len(), minus.len(), |phi, a| {
        phi == plus.bottom() || a == minus.bottom()
    })
}

/// All `con ⊆ L₊ × L₋` that, together with `tot`, satisfy every d-frame
/// axiom. Any `con` valid with some `tot` is valid with the minimal one.
pub fn con_relations(minus: &Frame, plus: &Frame, tot: &PairSet) -> Vec<PairSet> {
    let mut out: Vec<PairSet> = monotone_sets(plus, minus, false)
        .into_iter()
        .filter(|con| check_axioms(minus, plus, con, tot).is_ok())
        .collect();
    out.sort();
    out
}

/// All `tot ⊆ L₋ × L₊` that, together with `con`, satisfy every d-frame
/// axiom.
pub fn tot_relations(minus: &Frame, plus: &Frame, con: &PairSet) -> Vec<PairSet> {
    let mut out: Vec<PairSet> = monotone_sets(minus, plus, true)
        .into_iter()
        .filter(|tot| check_axioms(minus, plus, con, tot).is_ok())
        .collect();
    out.sort();
    out
}

/// Down-sets (or up-sets) of the product order on `left × right`,
/// enumerated along a linear extension.
fn monotone_sets(left: &Frame, right: &Frame, upward: bool) -> Vec<PairSet> {
    let (nl, nr) = (left.len(), right.len());
    let idx = |x: usize, y: usize| x * nr + y;
    let rank = |x: usize, y: usize| {
        if upward {
            left.up(x).len() + right.up(y).len()
        } else {
            left.down(x).len() + right.down(y).len()
        }
    };
    let mut elems: Vec<(usize, usize)> =
        (0..nl).flat_map(|x| (0..nr).map(move |y| (x, y))).collect();
    elems.sort_by_key(|&(x, y)| (rank(x, y), x, y));
    // masks of the elements that must already be present
    let required: Vec<u64> = elems
        .iter()
        .map(|&(x, y)| {
            let (xs, ys) = if upward {
                (left.up(x), right.up(y))
            } else {
                (left.down(x), right.down(y))
            };
            let mut m = 0u64;
            for u in xs {
                for v in ys {
                    if (u, v) != (x, y) {
                        m |= 1 << idx(u, v);
                    }
                }
            }
            m
        })
        .collect();

    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u64)];
    while let Some((k, chosen)) = stack.pop() {
        if k == elems.len() {
            out.push(PairSet::from_fn(nl, nr, |x, y| {
                chosen >> idx(x, y) & 1 == 1
            }));
            continue;
        }
        let (x, y) = elems[k];
        stack.push((k + 1, chosen));
        if required[k] & !chosen == 0 {
            stack.push((k + 1, chosen | 1 << idx(x, y)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn con_relations_on_two_chains() {
        let c2 = Frame::chain(2).unwrap();
        let tot = minimal_tot(&c2, &c2);
        let cons = con_relations(&c2, &c2, &tot);
        // Only the minimal relation: (1,1) would give 1 con 1 tot 0.
        assert_eq!(cons.len(), 1);
        assert_eq!(cons[0].len(), 3);
    }

    #[test]
    fn contains_minimal_and_sym_cons() {
        let c3 = Frame::chain(3).unwrap();
        let tot = minimal_tot(&c3, &c3);
        let cons = con_relations(&c3, &c3, &tot);
        assert!(cons.contains(DFrame::minimal(&c3, &c3).unwrap().con()));
        assert!(cons.contains(DFrame::sym(&c3).con()));
    }

    #[test]
    fn relations_on_three_chains_match_brute_force() {
        let c3 = Frame::chain(3).unwrap();
        let found = relations(&c3, &c3);
        let mut brute = Vec::new();
        for cm in 0u32..1 << 9 {
            let con = PairSet::from_fn(3, 3, |p, a| cm >> (p * 3 + a) & 1 == 1);
            for tm in 0u32..1 << 9 {
                let tot = PairSet::from_fn(3, 3, |a, p| tm >> (a * 3 + p) & 1 == 1);
                if check_axioms(&c3, &c3, &con, &tot).is_ok() {
                    brute.push((con.clone(), tot));
                }
            }
        }
        let mut found_sorted = found.clone();
        found_sorted.sort();
        brute.sort();
        assert_eq!(found_sorted, brute);
    }

    #[test]
    fn small_run_is_deterministic() {
        let cfg = MinerConfig {
            max_size: 3,
            partner_max_size: 3,
            max_examples: 2,
        };
        let a = mine(&cfg).unwrap();
        assert_eq!(a, mine(&cfg).unwrap());
        assert_eq!(a.frame_pairs, 4);
        assert_eq!(a.condition_disagreements.count, 0);
        assert_eq!(a.implication_failures.count, 0);
    }
}
