use dframe_core::corpus::{hom_corpus, random_dframes, standard_corpus};
use dframe_core::density::{
    classify, coreflection_check, corrigibility_conditions, double_pseudo_sets, galois_report, hat,
    hat_membership_report, hat_minimality, is_corrigible, is_dense_sub_d_locale, sq_relations,
    sq_report, PseudoOps,
};
use dframe_core::subdlocale::enumerate_ds;
use dframe_core::{DFrame, Frame};
use proptest::prelude::*;

fn check_all_laws(d: &DFrame) {
    let g = galois_report(d);
    assert!(g.is_ok(), "{}: {:?}", d.name(), g.messages);
    let sq = sq_relations(d);
    let r = sq_report(d, &sq);
    assert!(r.is_ok(), "{}: {:?}", d.name(), r.messages);
    let m = hat_membership_report(d);
    assert!(m.is_ok(), "{}: {:?}", d.name(), m.messages);
    is_corrigible(d).unwrap_or_else(|e| panic!("{}: {e}", d.name()));
    classify(d).unwrap_or_else(|e| panic!("{}: {e}", d.name()));
    let h = hat(d).unwrap_or_else(|e| panic!("{}: {e}", d.name()));
    assert!(h.dframe().axiom_report().is_ok());
    assert!(is_dense_sub_d_locale(&h.sub).unwrap());
}

#[test]
fn laws_hold_on_standard_corpus() {
    for d in standard_corpus() {
        check_all_laws(&d);
    }
}

#[test]
fn hat_is_least_dense_member() {
    for d in standard_corpus() {
        let ds = enumerate_ds(&d, 12, 400).unwrap();
        let h = hat(&d).unwrap();
        let r = hat_minimality(&h, &ds).unwrap();
        assert!(r.is_ok(), "{}: {:?}", d.name(), r.messages);
    }
}

#[test]
fn coreflections_on_hom_corpus() {
    let homs = hom_corpus();
    let mut doms: Vec<DFrame> = Vec::new();
    for f in &homs {
        if !doms.contains(f.dom()) {
            doms.push(f.dom().clone());
        }
    }
    for d in &doms {
        let r = coreflection_check(d, &homs).unwrap();
        assert!(r.is_ok(), "{}: {:?}", d.name(), r);
    }
}

/// Brute-force pseudocomplement: largest opposite element consistent with
/// `a`, found by scanning for a con-row maximum.
#[test]
fn bullets_match_brute_force() {
    for d in standard_corpus() {
        let ops = PseudoOps::new(&d);
        let (m, p) = (d.minus(), d.plus());
        for a in 0..m.len() {
            let consistent: Vec<usize> = (0..p.len()).filter(|&phi| d.con_holds(phi, a)).collect();
            let top = consistent
                .iter()
                .copied()
                .find(|&x| consistent.iter().all(|&y| p.leq(y, x)))
                .expect("con columns have a largest element");
            assert_eq!(ops.bullet_minus(a), top);
        }
        for phi in 0..p.len() {
            let consistent: Vec<usize> = (0..m.len()).filter(|&a| d.con_holds(phi, a)).collect();
            let top = consistent
                .iter()
                .copied()
                .find(|&x| consistent.iter().all(|&y| m.leq(y, x)))
                .expect("con rows have a largest element");
            assert_eq!(ops.bullet_plus(phi), top);
        }
    }
}

#[test]
fn dense_members_contain_bullet_images() {
    for d in standard_corpus() {
        let ds = enumerate_ds(&d, 12, 400).unwrap();
        let ops = PseudoOps::new(&d);
        for s in ds.members() {
            if !is_dense_sub_d_locale(s).unwrap() {
                continue;
            }
            for a in 0..d.minus().len() {
                assert!(
                    s.plus().contains(ops.bullet_minus(a)),
                    "{} in {}",
                    s.label(),
                    d.name()
                );
            }
            for phi in 0..d.plus().len() {
                assert!(
                    s.minus().contains(ops.bullet_plus(phi)),
                    "{} in {}",
                    s.label(),
                    d.name()
                );
            }
        }
    }
}

#[test]
fn dense_meets_are_intersections() {
    for d in standard_corpus() {
        let ds = enumerate_ds(&d, 12, 400).unwrap();
        let dense: Vec<usize> = (0..ds.len())
            .filter(|&i| is_dense_sub_d_locale(ds.member(i)).unwrap())
            .collect();
        for &i in &dense {
            for &j in &dense {
                let k = ds.meet(i, j).unwrap();
                let (s, t, u) = (ds.member(i), ds.member(j), ds.member(k));
                assert_eq!(
                    u.minus().members(),
                    s.minus().members() & t.minus().members()
                );
                assert_eq!(u.plus().members(), s.plus().members() & t.plus().members());
            }
        }
    }
}

#[test]
fn named_classifications() {
    let c3 = Frame::chain(3).unwrap();
    let b4 = Frame::boolean(2).unwrap();
    let sym_b4 = classify(&DFrame::sym(&b4)).unwrap();
    assert!(sym_b4.excluded_middle && sym_b4.regular);
    let sym3 = classify(&DFrame::sym(&c3)).unwrap();
    assert!(!sym3.double_negation && sym3.corrigible && !sym3.regular);
    let min33 = classify(&DFrame::minimal(&c3, &c3).unwrap()).unwrap();
    assert!(!min33.dually_subfit && !min33.regular);
    // L₊^•• = {0, 1} is not a sublocale of the four-element Boolean algebra.
    let d = DFrame::minimal(&Frame::chain(2).unwrap(), &b4).unwrap();
    assert!(!corrigibility_conditions(&d).is_corrigible());
    assert!(!double_pseudo_sets(&d).plus_is_sublocale);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laws_hold_on_random_dframes(seed in any::<u64>()) {
        for d in random_dframes(seed, 2, 5).unwrap() {
            check_all_laws(&d);
        }
    }

    #[test]
    fn hat_is_idempotent_and_subfit(seed in any::<u64>()) {
        for d in random_dframes(seed, 2, 5).unwrap() {
            let r = coreflection_check(&d, &[]).unwrap();
            prop_assert!(r.is_ok(), "{}: {:?}", d.name(), r);
        }
    }

    #[test]
    fn galois_connection_is_antitone(seed in any::<u64>()) {
        for d in random_dframes(seed, 2, 5).unwrap() {
            let ops = PseudoOps::new(&d);
            let (m, p) = (d.minus(), d.plus());
            for a in 0..m.len() {
                for phi in 0..p.len() {
                    // φ ≤ a^• ⇔ a ≤ φ^• ⇔ φ con a
                    let x = p.leq(phi, ops.bullet_minus(a));
                    prop_assert_eq!(x, m.leq(a, ops.bullet_plus(phi)));
                    prop_assert_eq!(x, d.con_holds(phi, a));
                }
            }
        }
    }
}
