//! Generated test corpora: small distributive lattices, the minimal and
//! symmetric d-frames over them, hand-built fixtures, morphism sets, and
//! seeded random d-frames.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dframe::{
    close_con, close_tot, enumerate_dframe_homs, lattice_isomorphisms, DFrame, DFrameHom,
};
use crate::error::Result;
use crate::frame::Frame;
use crate::lattice::Lattice;
use crate::set::PairSet;

/// All distributive lattices with at most `max_size` elements, up to
/// isomorphism, built as down-set lattices of finite posets. Ordered by size,
/// then chains before the rest.
pub fn distributive_lattices(max_size: usize) -> Vec<Frame> {
    let mut found: Vec<Lattice> = Vec::new();
    // An n-point poset has at least n + 1 down-sets.
    for points in 0..max_size {
        for order in posets(points) {
            let downsets = downsets(points, &order);
            if downsets.len() > max_size {
                continue;
            }
            let ids = (0..downsets.len()).map(|i| i.to_string()).collect();
            let lat = Lattice::from_fn(ids, |x, y| downsets[x] & !downsets[y] == 0)
                .expect("down-sets of a poset form a lattice");
            if !found
                .iter()
                .any(|l| !lattice_isomorphisms(l, &lat).is_empty())
            {
                found.push(lat);
            }
        }
    }
    let mut frames: Vec<Frame> = found.iter().map(canonical_frame).collect();
    frames.sort_by_key(|f| (f.len(), !is_chain(f), f.name()));
    frames
}

/// Partial orders on `0..n` as `leq[x]` bitmasks, one per labelled order.
fn posets(n: usize) -> Vec<Vec<u64>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|(x, y)| x != y)
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut leq: Vec<u64> = (0..n).map(|x| 1u64 << x).collect();
        for (bit, &(x, y)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[x] |= 1 << y;
            }
        }
        let transitive = (0..n).all(|x| {
            (0..n)
                .filter(|&y| leq[x] >> y & 1 == 1)
                .all(|y| leq[y] & !leq[x] == 0)
        });
        let antisymmetric = pairs
            .iter()
            .all(|&(x, y)| !(leq[x] >> y & 1 == 1 && leq[y] >> x & 1 == 1));
        if transitive && antisymmetric {
            out.push(leq);
        }
    }
    out
}

fn downsets(n: usize, leq: &[u64]) -> Vec<u64> {
    (0u64..(1u64 << n))
        .filter(|&s| {
            (0..n)
                .filter(|&y| s >> y & 1 == 1)
                .all(|y| (0..n).all(|x| leq[x] >> y & 1 == 0 || s >> x & 1 == 1))
        })
        .collect()
}

fn is_chain(l: &Lattice) -> bool {
    (0..l.len()).all(|x| (0..l.len()).all(|y| l.leq(x, y) || l.leq(y, x)))
}

/// Standard ids and names: chains as `Frame::chain`, four-element Boolean
/// algebra as `Frame::boolean(2)`, others with `0`, `a`, `b`, .., `1` in
/// rank order.
fn canonical_frame(l: &Lattice) -> Frame {
    let n = l.len();
    if is_chain(l) {
        return Frame::chain(n).expect("chains are frames");
    }
    let atoms = (0..n).filter(|&x| l.down(x).len() == 2).count();
    if n == 1 << atoms {
        return Frame::boolean(atoms).expect("Boolean algebras are frames");
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (l.down(x).len(), x));
    let mut ids = vec![String::new(); n];
    let mut letter = b'a';
    for &x in &order {
        ids[x] = if x == l.bottom() {
            "0".into()
        } else if x == l.top() {
            "1".into()
        } else {
            let s = (letter as char).to_string();
            letter += 1;
            s
        };
    }
    let covers = l.covers();
    let above_bottom = covers.iter().filter(|&&(x, _)| x == l.bottom()).count();
    let below_top = covers.iter().filter(|&&(_, y)| y == l.top()).count();
    let name = match (n, above_bottom, below_top) {
        (5, 1, _) => "1+2^2".to_string(),
        (5, _, 1) => "2^2+1".to_string(),
        _ => format!("D{n}"),
    };
    let relabelled =
        Lattice::from_fn(ids, |x, y| l.leq(x, y)).expect("relabelling keeps the order");
    Frame::new(relabelled).expect("distributive").named(name)
}

/// `L.M` for all pairs of frames that are both trivial or both not.
pub fn minimal_corpus(frames: &[Frame]) -> Vec<DFrame> {
    let mut out = Vec::new();
    for l in frames {
        for m in frames {
            if l.is_trivial() == m.is_trivial() {
                out.push(DFrame::minimal(l, m).expect("matching triviality"));
            }
        }
    }
    out
}

pub fn sym_corpus(frames: &[Frame]) -> Vec<DFrame> {
    frames.iter().map(DFrame::sym).collect()
}

/// Domain and codomain of the morphism built by [`dense_components_fixture`].
///
/// Points `a, b, c`. The minus topology of the domain has opens
/// `∅, {a}, {a,b}, X`; the codomain's has `∅, {a}, X`. Both plus topologies
/// are `∅, {b,c}, X`.
pub fn dense_components_fixture() -> DFrameHom {
    const A: u64 = 1;
    const B: u64 = 2;
    const C: u64 = 4;
    let plus = [("0", 0), ("bc", B | C), ("X", A | B | C)];
    let dom = DFrame::bitopological(
        3,
        &[("0", 0), ("a", A), ("ab", A | B), ("X", A | B | C)],
        &plus,
    )
    .expect("topologies give a d-frame")
    .named("L");
    let cod = DFrame::bitopological(3, &[("0", 0), ("a", A), ("X", A | B | C)], &plus)
        .expect("topologies give a d-frame")
        .named("M");
    let idx = |f: &Frame, id: &str| f.index_of(id).expect("fixture id");
    let (dm, cm) = (dom.minus(), cod.minus());
    let mut minus_map = vec![0; dm.len()];
    for (from, to) in [("0", "0"), ("a", "a"), ("ab", "a"), ("X", "X")] {
        minus_map[idx(dm, from)] = idx(cm, to);
    }
    let plus_map = (0..dom.plus().len()).collect();
    DFrameHom::new(&dom, &cod, minus_map, plus_map).expect("the fixture is a d-frame homomorphism")
}

/// `3.2` and `2.3`, the test objects for left cancellation.
pub fn probe_dframes() -> Vec<DFrame> {
    let c2 = Frame::chain(2).expect("chain");
    let c3 = Frame::chain(3).expect("chain");
    vec![
        DFrame::minimal(&c3, &c2).expect("nontrivial"),
        DFrame::minimal(&c2, &c3).expect("nontrivial"),
    ]
}

/// Minimal and Sym d-frames over lattices with at most five elements, plus
/// the two fixture d-frames.
pub fn standard_corpus() -> Vec<DFrame> {
    let frames = distributive_lattices(5);
    let mut out = minimal_corpus(&frames);
    out.extend(sym_corpus(&frames));
    let f = dense_components_fixture();
    out.push(f.dom().clone());
    out.push(f.cod().clone());
    out
}

/// Small d-frames between which every homomorphism is enumerated.
pub fn hom_objects() -> Vec<DFrame> {
    let c2 = Frame::chain(2).expect("chain");
    let c3 = Frame::chain(3).expect("chain");
    let b4 = Frame::boolean(2).expect("boolean");
    let f = dense_components_fixture();
    let mut out = vec![
        DFrame::sym(&c2),
        DFrame::sym(&c3),
        DFrame::sym(&b4),
        DFrame::minimal(&c2, &c2).expect("nontrivial"),
        DFrame::minimal(&c3, &c3).expect("nontrivial"),
        DFrame::minimal(&b4, &c3).expect("nontrivial"),
        f.dom().clone(),
        f.cod().clone(),
    ];
    out.extend(probe_dframes());
    out
}

/// Every homomorphism between every ordered pair of [`hom_objects`].
pub fn hom_corpus() -> Vec<DFrameHom> {
    let objs = hom_objects();
    let mut out = Vec::new();
    for a in &objs {
        for b in &objs {
            out.extend(enumerate_dframe_homs(a, b));
        }
    }
    out
}

/// Seeded random d-frames over the lattices of [`distributive_lattices`]:
/// random generator pairs closed under the lattice axioms, kept when the
/// closure still satisfies con-tot. Identical seeds give identical output.
pub fn random_dframes(seed: u64, count: usize, max_size: usize) -> Result<Vec<DFrame>> {
    let frames: Vec<Frame> = distributive_lattices(max_size)
        .into_iter()
        .filter(|f| !f.is_trivial())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let minus = frames[rng.random_range(0..frames.len())].clone();
        let plus = frames[rng.random_range(0..frames.len())].clone();
        let (nm, np) = (minus.len(), plus.len());
        let mut con = PairSet::empty(np, nm);
        for _ in 0..rng.random_range(0..=3) {
            con.insert(rng.random_range(0..np), rng.random_range(0..nm));
        }
        let mut tot = PairSet::empty(nm, np);
        for _ in 0..rng.random_range(0..=3) {
            tot.insert(rng.random_range(0..nm), rng.random_range(0..np));
        }
        let con = close_con(&minus, &plus, con);
        let tot = close_tot(&minus, &plus, tot);
        if let Ok(d) = DFrame::new(minus, plus, con, tot) {
            let name = format!("random-{seed}-{}", out.len());
            out.push(d.named(name));
        }
    }
    Ok(out)
}
