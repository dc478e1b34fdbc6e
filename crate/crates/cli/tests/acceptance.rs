//! One line per acceptance criterion, then a single verdict.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use dframe_cli::{cmd_dsub, cmd_props, Options};
use dframe_core::corpus::{dense_components_fixture, hom_corpus, standard_corpus};
use dframe_core::density::{
    classify, coreflection_check, corrigibility_conditions, galois_report, hat,
    hat_membership_report, hat_minimality, hat_morphism, is_dense_sub_d_locale, is_skeletal,
};
use dframe_core::subdlocale::enumerate_ds;
use dframe_core::{DFrame, DFrameHom, ElemSet, Frame};

const FIGURE_TIME_LIMIT: Duration = Duration::from_secs(1);
const CORPUS_TIME_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn three_three() -> DFrame {
    let c3 = Frame::chain(3).unwrap();
    DFrame::minimal(&c3, &c3).unwrap()
}

/// The lattice of sub-d-locales of 3.3, as cover edges between labels.
fn sub_d_locales_of_three_three() -> Outcome {
    let expected_edges: BTreeSet<(&str, &str)> = [
        ("c(c).3", "3.3"),
        ("3.c(c)", "3.3"),
        ("3.o(c)", "3.3"),
        ("o(c).3", "3.3"),
        ("c(c).c(c)", "c(c).3"),
        ("c(c).o(c)", "c(c).3"),
        ("c(c).c(c)", "3.c(c)"),
        ("o(c).c(c)", "3.c(c)"),
        ("c(c).o(c)", "3.o(c)"),
        ("o(c).o(c)", "3.o(c)"),
        ("o(c).c(c)", "o(c).3"),
        ("o(c).o(c)", "o(c).3"),
        ("1.1", "c(c).c(c)"),
        ("1.1", "c(c).o(c)"),
        ("1.1", "o(c).c(c)"),
        ("1.1", "o(c).o(c)"),
    ]
    .into_iter()
    .collect();
    let d = three_three();
    let start = Instant::now();
    let ds = enumerate_ds(&d, 12, 400).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let labels = ds.labels();
    let edges: BTreeSet<(&str, &str)> = ds
        .covers()
        .into_iter()
        .map(|(x, y)| (labels[x].as_str(), labels[y].as_str()))
        .collect();
    let nodes: BTreeSet<&str> = labels.iter().map(String::as_str).collect();
    let expected_nodes: BTreeSet<&str> = expected_edges.iter().flat_map(|&(x, y)| [x, y]).collect();
    ensure(ds.len() == 10, || format!("{} members", ds.len()))?;
    ensure(nodes == expected_nodes, || format!("labels {nodes:?}"))?;
    ensure(edges == expected_edges, || {
        format!(
            "missing covers {:?}, extra covers {:?}",
            expected_edges.difference(&edges).collect::<Vec<_>>(),
            edges.difference(&expected_edges).collect::<Vec<_>>()
        )
    })?;
    ensure(elapsed < FIGURE_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("10 members, 16 covers, {elapsed:?}"))
}

fn non_distributivity_witness() -> Outcome {
    let ds = enumerate_ds(&three_three(), 12, 400).map_err(|e| e.to_string())?;
    let at = |l: &str| ds.index_of_label(l).ok_or_else(|| format!("no member {l}"));
    let (oo, tc, to) = (at("o(c).o(c)")?, at("3.c(c)")?, at("3.o(c)")?);
    let name = |i: usize| ds.member(i).label();
    let e = |e: dframe_core::Error| e.to_string();
    let inner = ds.meet(tc, to).map_err(e)?;
    let lhs = ds.join(oo, inner).map_err(e)?;
    let left = ds.join(oo, tc).map_err(e)?;
    let right = ds.join(oo, to).map_err(e)?;
    let rhs = ds.meet(left, right).map_err(e)?;
    ensure(name(inner) == "1.1", || {
        format!("3.c(c) ∧ 3.o(c) = {}", name(inner))
    })?;
    ensure(name(lhs) == "o(c).o(c)", || {
        format!("left side {}", name(lhs))
    })?;
    ensure(name(left) == "3.3", || {
        format!("o(c).o(c) ∨ 3.c(c) = {}", name(left))
    })?;
    ensure(name(right) == "3.o(c)", || {
        format!("o(c).o(c) ∨ 3.o(c) = {}", name(right))
    })?;
    ensure(name(rhs) == "3.o(c)", || {
        format!("right side {}", name(rhs))
    })?;
    Ok(format!("{} ≠ {}", name(lhs), name(rhs)))
}

fn dense_components_counterexample() -> Outcome {
    let f = dense_components_fixture();
    ensure(f.minus().is_dense() && f.plus().is_dense(), || {
        "components are not dense".into()
    })?;
    ensure(!f.is_dense(), || "morphism is dense".into())?;
    let (phi, a) = f.density_witness().ok_or("no witness")?;
    let w = (f.dom().plus().id(phi), f.dom().minus().id(a));
    ensure(w == ("bc", "ab"), || format!("witness {w:?}"))?;
    Ok("witness ({b,c}, {a,b})".into())
}

fn hat_is_least_dense_on_corpus() -> Outcome {
    let start = Instant::now();
    let corpus = standard_corpus();
    for d in &corpus {
        let name = d.name();
        let h = hat(d).map_err(|e| format!("{name}: {e}"))?;
        ensure(h.dframe().axiom_report().is_ok(), || {
            format!("{name}: hat is not a d-frame")
        })?;
        ensure(
            is_dense_sub_d_locale(&h.sub).map_err(|e| e.to_string())?,
            || format!("{name}: hat is not dense"),
        )?;
        let ds = enumerate_ds(d, 12, 400).map_err(|e| format!("{name}: {e}"))?;
        let r = hat_minimality(&h, &ds).map_err(|e| e.to_string())?;
        ensure(r.is_ok(), || format!("{name}: {:?}", r.messages))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CORPUS_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{} d-frames, {elapsed:?}", corpus.len()))
}

fn named_hats() -> Outcome {
    let c3 = Frame::chain(3).unwrap();
    let booleanization = ElemSet::from_indices([0, 2]);
    let h = hat(&DFrame::sym(&c3)).map_err(|e| e.to_string())?;
    ensure(
        h.sub.minus().members() == booleanization && h.sub.plus().members() == booleanization,
        || format!("hat(Sym(3)) = {}", h.sub.label()),
    )?;
    let h = hat(&three_three()).map_err(|e| e.to_string())?;
    ensure(h.sub.minus().is_whole() && h.sub.plus().is_whole(), || {
        format!(
            "hat(Sym(3)) = {{0,1}}.{{0,1}} as expected, but hat(3.3) = {}, not 3.3",
            h.sub.label()
        )
    })?;
    Ok("hat(Sym(3)) = {0,1}.{0,1}, hat(3.3) = 3.3".into())
}

fn lemma_suites_on_corpus() -> Outcome {
    let homs = hom_corpus();
    let corpus = standard_corpus();
    for d in &corpus {
        let name = d.name();
        let g = galois_report(d);
        ensure(g.is_ok(), || format!("{name}: {:?}", g.messages))?;
        let m = hat_membership_report(d);
        ensure(m.is_ok(), || format!("{name}: {:?}", m.messages))?;
        let c = corrigibility_conditions(d);
        ensure(c.minus.agree() && c.plus.agree(), || {
            format!("{name}: {c:?}")
        })?;
        let cls = classify(d).map_err(|e| format!("{name}: {e}"))?;
        ensure(cls.dually_subfit == cls.sq_is_order, || {
            format!("{name}: subfitness")
        })?;
        ensure(!cls.excluded_middle || cls.double_negation, || {
            format!("{name}: EM without DN")
        })?;
        ensure(!cls.double_negation || cls.corrigible, || {
            format!("{name}: DN without corrigibility")
        })?;
        let r = coreflection_check(d, &homs).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.hat_dually_subfit, || {
            format!("{name}: hat is not dually subfit")
        })?;
        ensure(r.subfit_fixed, || {
            format!("{name}: dually subfit but hat ≇ L")
        })?;
        ensure(r.is_ok(), || format!("{name}: {r:?}"))?;
    }
    Ok(format!("{} d-frames", corpus.len()))
}

fn same_maps(f: &DFrameHom, g: &DFrameHom) -> bool {
    f.minus().map() == g.minus().map() && f.plus().map() == g.plus().map()
}

fn factorization_soundness() -> Outcome {
    let homs = hom_corpus();
    for f in &homs {
        let label = format!("{} -> {}", f.dom().name(), f.cod().name());
        let fac = f
            .image_factorization()
            .map_err(|e| format!("{label}: {e}"))?;
        ensure(fac.epi.is_extremal_epi(), || {
            format!("{label}: g is not an extremal epi")
        })?;
        ensure(fac.mono.is_mono(), || format!("{label}: j is not mono"))?;
        let back = fac.epi.then(&fac.mono).map_err(|e| e.to_string())?;
        ensure(same_maps(&back, f), || format!("{label}: j∘g ≠ f"))?;
        let injective = f.minus().is_injective() && f.plus().is_injective();
        ensure(f.is_mono() == injective, || {
            format!("{label}: is_mono disagrees")
        })?;
    }
    Ok(format!("{} morphisms", homs.len()))
}

fn hat_functoriality() -> Outcome {
    let homs = hom_corpus();
    let mut pairs = 0;
    for f in &homs {
        let id = hat_morphism(&DFrameHom::identity(f.dom())).map_err(|e| e.to_string())?;
        ensure(
            id.minus.iter().enumerate().all(|(i, &x)| i == x)
                && id.plus.iter().enumerate().all(|(i, &x)| i == x),
            || format!("hat(id) ≠ id on {}", f.dom().name()),
        )?;
        for g in homs.iter().filter(|g| g.dom() == f.cod() && is_skeletal(g)) {
            let gf = f.then(g).map_err(|e| e.to_string())?;
            let composite = hat_morphism(&gf).map_err(|e| e.to_string())?;
            let tables = hat_morphism(f)
                .and_then(|hf| Ok(hf.then_tables(&hat_morphism(g)?)))
                .map_err(|e| e.to_string())?;
            ensure((composite.minus, composite.plus) == tables, || {
                format!(
                    "{} -> {} -> {}",
                    f.dom().name(),
                    f.cod().name(),
                    g.cod().name()
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} composable pairs"))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("dframe-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let opts = Options {
        seed: 42,
        ..Options::default()
    };
    let dot = dir.join("ds.dot");
    let run = || -> Result<(String, String, String, String), String> {
        let dsub = cmd_dsub("min:chain:3:chain:3", &opts, Some(&dot)).map_err(|e| e.to_string())?;
        let props = cmd_props("corpus:random:6", &opts).map_err(|e| e.to_string())?;
        let dot_text = std::fs::read_to_string(&dot).map_err(|e| e.to_string())?;
        Ok((
            dsub.to_text() + &dsub.to_json(),
            props.to_text(),
            props.to_json(),
            dot_text,
        ))
    };
    let (a, b) = (run()?, run()?);
    std::fs::remove_dir_all(&dir).ok();
    ensure(a == b, || "outputs differ between runs".into())?;
    Ok("dsub, props and DOT output byte-identical".into())
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        (
            "lattice of sub-d-locales of 3.3",
            sub_d_locales_of_three_three,
        ),
        ("non-distributivity of dS(3.3)", non_distributivity_witness),
        (
            "dense components, non-dense morphism",
            dense_components_counterexample,
        ),
        (
            "hat is the least dense sub-d-locale on the corpus",
            hat_is_least_dense_on_corpus,
        ),
        ("hat of Sym(3) and of 3.3", named_hats),
        (
            "lemma equivalence suites on the corpus",
            lemma_suites_on_corpus,
        ),
        ("image factorization soundness", factorization_soundness),
        (
            "functoriality of the hat on skeletal morphisms",
            hat_functoriality,
        ),
        ("determinism of dsub and props", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
