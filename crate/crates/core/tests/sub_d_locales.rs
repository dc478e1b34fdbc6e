use dframe_core::corpus::{distributive_lattices, standard_corpus};
use dframe_core::dframe::check_axioms;
use dframe_core::frame::enumerate_sublocales;
use dframe_core::subdlocale::{covers_of, ds_join, enumerate_ds, partners, try_sub_d_locale};
use dframe_core::{DFrame, ElemSet, Error, Frame, PairSet, Sublocale};

/// Subsets containing the top, closed under meets and under `x → s`.
fn brute_sublocales(f: &Frame) -> Vec<ElemSet> {
    let n = f.len();
    (0u64..1 << n)
        .map(ElemSet)
        .filter(|s| {
            s.contains(f.top())
                && s.iter().all(|x| s.iter().all(|y| s.contains(f.meet(x, y))))
                && (0..n).all(|x| s.iter().all(|y| s.contains(f.implies(x, y))))
        })
        .collect()
}

/// Nearest member above `x`.
fn project(f: &Frame, s: ElemSet, x: usize) -> usize {
    s.iter()
        .filter(|&y| f.leq(x, y))
        .fold(f.top(), |acc, y| f.meet(acc, y))
}

/// Induced relations computed directly: `con` is the down-closure of its
/// image, `tot` the image, both re-indexed over the members.
fn brute_is_sub_d_locale(d: &DFrame, sm: ElemSet, sp: ElemSet) -> bool {
    let (m, p) = (d.minus(), d.plus());
    let mv: Vec<usize> = sm.iter().collect();
    let pv: Vec<usize> = sp.iter().collect();
    let (mf, _) = m.restrict(sm).unwrap();
    let (pf, _) = p.restrict(sp).unwrap();
    let pos = |v: &[usize], x: usize| v.iter().position(|&y| y == x).unwrap();
    let mut con = PairSet::empty(pv.len(), mv.len());
    for (phi, a) in d.con().iter() {
        let (qp, qa) = (project(p, sp, phi), project(m, sm, a));
        for (i, &x) in pv.iter().enumerate() {
            for (j, &y) in mv.iter().enumerate() {
                if p.leq(x, qp) && m.leq(y, qa) {
                    con.insert(i, j);
                }
            }
        }
    }
    let mut tot = PairSet::empty(mv.len(), pv.len());
    for (a, phi) in d.tot().iter() {
        tot.insert(pos(&mv, project(m, sm, a)), pos(&pv, project(p, sp, phi)));
    }
    mf.is_trivial() == pf.is_trivial() && check_axioms(&mf, &pf, &con, &tot).is_ok()
}

fn brute_ds(d: &DFrame) -> Vec<(ElemSet, ElemSet)> {
    let mut out = Vec::new();
    for sm in brute_sublocales(d.minus()) {
        for sp in brute_sublocales(d.plus()) {
            if brute_is_sub_d_locale(d, sm, sp) {
                out.push((sm, sp));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn sublocale_enumeration_matches_brute_force() {
    for f in distributive_lattices(6) {
        let mut found: Vec<ElemSet> = enumerate_sublocales(&f, 12)
            .unwrap()
            .iter()
            .map(Sublocale::members)
            .collect();
        found.sort();
        assert_eq!(found, brute_sublocales(&f), "{}", f.name());
    }
}

#[test]
fn ds_matches_brute_force() {
    for d in standard_corpus() {
        let ds = enumerate_ds(&d, 12, 400).unwrap();
        let mut found: Vec<(ElemSet, ElemSet)> = ds
            .members()
            .iter()
            .map(|s| (s.minus().members(), s.plus().members()))
            .collect();
        found.sort();
        assert_eq!(found, brute_ds(&d), "{}", d.name());
    }
}

#[test]
fn ds_counts_of_small_sym() {
    let count = |n| {
        enumerate_ds(&DFrame::sym(&Frame::chain(n).unwrap()), 12, 400)
            .unwrap()
            .len()
    };
    assert_eq!(count(1), 1);
    // Sym(2): only the whole and the bottom; one-sided pairs mix trivial
    // and nontrivial components.
    assert_eq!(
        count(2),
        brute_ds(&DFrame::sym(&Frame::chain(2).unwrap())).len()
    );
    assert_eq!(count(2), 2);
}

#[test]
fn ds_is_a_lattice_with_constructive_operations() {
    for d in standard_corpus() {
        let ds = enumerate_ds(&d, 12, 400).unwrap();
        let n = ds.len();
        assert!((0..n).all(|i| ds.leq(ds.bottom(), i) && ds.leq(i, ds.top())));
        let (join, meet) = ds.tables().unwrap();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(
                    Some(join[i][j]),
                    ds.order_join(i, j),
                    "{} {} {}",
                    d.name(),
                    i,
                    j
                );
                assert_eq!(Some(meet[i][j]), ds.order_meet(i, j));
                assert_eq!(meet[i][join[i][j]], i);
                assert_eq!(join[i][meet[i][j]], i);
            }
        }
        if n <= 50 {
            for i in 0..n {
                for j in 0..n {
                    let s = ds_join(ds.member(i), ds.member(j)).unwrap();
                    assert_eq!(ds.index_of(&s), Some(join[i][j]));
                    assert_eq!(ds.meet(i, j).unwrap(), meet[i][j]);
                }
            }
        }
    }
}

#[test]
fn covers_are_irreducible() {
    for d in standard_corpus() {
        let ds = enumerate_ds(&d, 12, 400).unwrap();
        let n = ds.len();
        for (x, y) in covers_of(ds.order()) {
            assert!(x != y && ds.leq(x, y));
            assert!((0..n).all(|z| z == x || z == y || !(ds.leq(x, z) && ds.leq(z, y))));
        }
    }
}

#[test]
fn induced_tot_sits_inside_parent() {
    for d in standard_corpus() {
        for s in enumerate_ds(&d, 12, 400).unwrap().members() {
            assert!(s.tot_in_parent().is_subset(d.tot()));
            assert!(s.quotient().is_extremal_epi());
        }
    }
}

#[test]
fn partner_search_agrees_with_ds() {
    for d in standard_corpus() {
        let ds = enumerate_ds(&d, 12, 400).unwrap();
        for sm in enumerate_sublocales(d.minus(), 12).unwrap() {
            let found = partners(&d, &sm, true, 12).unwrap();
            let expected: Vec<&Sublocale> = ds
                .members()
                .iter()
                .filter(|s| s.minus() == &sm)
                .map(|s| s.plus())
                .collect();
            assert_eq!(found.len(), expected.len());
            assert!(found.iter().all(|p| expected.contains(&p)));
        }
    }
}

#[test]
fn rejected_pairs_name_an_axiom() {
    let c3 = Frame::chain(3).unwrap();
    let d = DFrame::minimal(&c3, &c3).unwrap();
    let plus = Sublocale::new(c3.clone(), ElemSet::from_indices([2])).unwrap();
    match try_sub_d_locale(&d, &Sublocale::whole(&c3), &plus) {
        Err(Error::NotASubDLocale { axiom, .. }) => assert!(!axiom.is_empty()),
        other => panic!("expected rejection, got {other:?}"),
    }
}
