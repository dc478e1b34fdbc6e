//! Commands behind the `dframe` binary. Each command returns a [`Report`]
//! that renders as text or JSON; input problems are returned as [`CliError`].

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use dframe_core::corpus::{
    dense_components_fixture, hom_corpus, probe_dframes, random_dframes, standard_corpus,
};
use dframe_core::density::{
    classify, coreflection_check, corrigibility_conditions, double_pseudo_sets, galois_report, hat,
    hat_membership_report, hat_minimality, hat_morphism, is_corrigible, is_dense_sub_d_locale,
    is_skeletal, sq_relations, sq_report,
};
use dframe_core::dframe::{check_axioms, enumerate_dframe_homs};
use dframe_core::document::DFrameDocument;
use dframe_core::miner::{mine, MinerConfig};
use dframe_core::subdlocale::enumerate_ds;
use dframe_core::{DFrame, DFrameHom, ElemSet, Error, Frame};

pub mod report;

pub use report::{Report, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Core(#[from] Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub strict: bool,
    pub seed: u64,
    pub max_frame: usize,
    pub max_pairs: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            strict: false,
            seed: 0,
            max_frame: 12,
            max_pairs: 400,
        }
    }
}

/// Builds a d-frame from a generator spec:
///
/// * `sym:F` is `Sym(F)`,
/// * `min:F:G` is the minimal d-frame `F.G`,
/// * `fixture:dense-components:dom` and `:cod` are the two three-point
///   bitopological spaces whose morphism has dense components but is not
///   dense,
///
/// where a frame `F` is `chain:N` (an `N`-element chain) or `bool:K` (the
/// Boolean algebra with `K` atoms).
pub fn generate(spec: &str) -> dframe_core::Result<DFrame> {
    let unknown = || Error::UnknownSpec(spec.to_string());
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["sym", f @ ..] if f.len() == 2 => Ok(DFrame::sym(&frame_spec(f).ok_or_else(unknown)??)),
        ["min", f @ ..] if f.len() == 4 => {
            let minus = frame_spec(&f[..2]).ok_or_else(unknown)??;
            let plus = frame_spec(&f[2..]).ok_or_else(unknown)??;
            DFrame::minimal(&minus, &plus)
        }
        ["fixture", "dense-components", "dom"] => Ok(dense_components_fixture().dom().clone()),
        ["fixture", "dense-components", "cod"] => Ok(dense_components_fixture().cod().clone()),
        _ => Err(unknown()),
    }
}

fn frame_spec(parts: &[&str]) -> Option<dframe_core::Result<Frame>> {
    let n: usize = parts[1].parse().ok()?;
    match parts[0] {
        "chain" if n >= 1 => Some(Frame::chain(n)),
        "bool" if n <= 6 => Some(Frame::boolean(n)),
        _ => None,
    }
}

/// A document path if the file exists, otherwise a generator spec.
pub fn load_input(input: &str, opts: &Options) -> CliResult<DFrame> {
    let path = Path::new(input);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(DFrameDocument::from_json(&text)?.load(opts.strict)?)
    } else {
        Ok(generate(input)?)
    }
}

pub fn cmd_gen(spec: &str) -> CliResult<DFrameDocument> {
    Ok(DFrameDocument::from_dframe(&generate(spec)?))
}

/// Per-axiom verdicts. The literal relations are checked with `--strict`,
/// otherwise the closure of the generators.
pub fn cmd_check(input: &str, opts: &Options) -> CliResult<Report> {
    let mut report = Report::new("check")
        .input("input", input)
        .input("strict", opts.strict);
    let path = Path::new(input);
    let (minus, plus, con, tot, name) = if path.exists() {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let doc = DFrameDocument::from_json(&text)?;
        let (c, con, tot) = doc.relations(opts.strict)?;
        (
            c.minus,
            c.plus,
            con,
            tot,
            doc.name.unwrap_or_else(|| "L".into()),
        )
    } else {
        let d = generate(input)?;
        let name = d.name();
        (
            d.minus().clone(),
            d.plus().clone(),
            d.con().clone(),
            d.tot().clone(),
            name,
        )
    };
    if minus.is_trivial() != plus.is_trivial() {
        let side = if minus.is_trivial() { "minus" } else { "plus" };
        return Err(Error::TrivialMismatch.at(side).into());
    }
    let axioms = check_axioms(&minus, &plus, &con, &tot);
    for r in &axioms.results {
        report.verdict(Verdict::new(
            r.axiom.name(),
            r.passed(),
            r.witness.as_ref().map(|w| w.to_string()),
        ));
    }
    report.detail("name", name);
    report.detail("minus", json!({"name": minus.name(), "size": minus.len()}));
    report.detail("plus", json!({"name": plus.name(), "size": plus.len()}));
    report.detail("con_pairs", con.len());
    report.detail("tot_pairs", tot.len());
    Ok(report)
}

fn ids(f: &Frame, set: ElemSet) -> Vec<String> {
    set.iter().map(|x| f.id(x).to_string()).collect()
}

/// The lattice `dS(L)` with its order, covers and lattice-theoretic
/// verdicts; writes the Hasse diagram to `dot` when given.
pub fn cmd_dsub(input: &str, opts: &Options, dot: Option<&Path>) -> CliResult<Report> {
    let d = load_input(input, opts)?;
    let mut report = Report::new("dsub")
        .input("input", input)
        .input("max_frame", opts.max_frame)
        .input("max_pairs", opts.max_pairs);
    let ds = enumerate_ds(&d, opts.max_frame, opts.max_pairs)?;
    let labels = ds.labels();
    let (join, meet) = ds.tables()?;
    let n = ds.len();
    let mismatch = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| {
            ds.order_join(i, j) != Some(join[i][j]) || ds.order_meet(i, j) != Some(meet[i][j])
        });
    report.verdict(Verdict::new(
        "operations-match-order",
        mismatch.is_none(),
        mismatch.map(|(i, j)| format!("{}, {}", labels[i], labels[j])),
    ));

    let mut members = Vec::new();
    for s in ds.members() {
        members.push(json!({
            "label": s.label(),
            "minus": ids(d.minus(), s.minus().members()),
            "plus": ids(d.plus(), s.plus().members()),
            "dense": is_dense_sub_d_locale(s)?,
        }));
    }
    let order: Vec<String> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if ds.leq(i, j) { '1' } else { '0' })
                .collect()
        })
        .collect();
    let covers: Vec<String> = ds
        .covers()
        .into_iter()
        .map(|(x, y)| format!("{} < {}", labels[x], labels[y]))
        .collect();
    let triple = |t: Option<(usize, usize, usize)>| match t {
        Some((x, y, z)) => json!([labels[x], labels[y], labels[z]]),
        None => Value::Null,
    };
    let dist = ds.distributivity_witness()?;
    let modular = ds.modularity_witness()?;
    report.detail("name", d.name());
    report.detail("members", members.len());
    report.detail("member_list", members);
    report.detail("order", order);
    report.detail("covers", covers);
    report.detail("distributive", dist.is_none());
    report.detail("distributivity_witness", triple(dist));
    report.detail("modular", modular.is_none());
    report.detail("modularity_witness", triple(modular));
    if let Some(path) = dot {
        fs::write(path, ds.to_dot()).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        report.detail("dot", path.display().to_string());
    }
    Ok(report)
}

/// The smallest dense sub-d-locale with the nuclei it comes from.
pub fn cmd_hat(input: &str, opts: &Options) -> CliResult<Report> {
    let d = load_input(input, opts)?;
    let mut report = Report::new("hat").input("input", input);
    let h = hat(&d)?;
    let (m, p) = (d.minus(), d.plus());
    report.verdict(Verdict::new("dense", is_dense_sub_d_locale(&h.sub)?, None));
    let membership = hat_membership_report(&d);
    report.verdict(Verdict::new(
        "membership-conditions-agree",
        membership.is_ok(),
        membership.messages.first().cloned(),
    ));
    match enumerate_ds(&d, opts.max_frame, opts.max_pairs) {
        Ok(ds) => {
            let r = hat_minimality(&h, &ds)?;
            report.verdict(Verdict::new(
                "least-dense",
                r.is_ok(),
                r.messages.first().cloned(),
            ));
        }
        Err(e @ Error::SizeGuardExceeded { .. }) => {
            report.detail("least_dense", format!("not checked: {e}"))
        }
        Err(e) => return Err(e.into()),
    }
    let table = |f: &Frame, map: &[usize]| -> Vec<String> {
        map.iter()
            .enumerate()
            .map(|(x, &y)| format!("{} -> {}", f.id(x), f.id(y)))
            .collect()
    };
    let dd = double_pseudo_sets(&d);
    report.detail("name", d.name());
    report.detail("hat", h.sub.label());
    report.detail("hat_minus", ids(m, h.sub.minus().members()));
    report.detail("hat_plus", ids(p, h.sub.plus().members()));
    report.detail("nu_minus", table(m, h.nu_minus.map()));
    report.detail("nu_plus", table(p, h.nu_plus.map()));
    report.detail("double_pseudo_minus", ids(m, dd.minus));
    report.detail("double_pseudo_plus", ids(p, dd.plus));
    report.detail(
        "classification",
        serde_json::to_value(classify(&d)?).expect("serializable"),
    );
    Ok(report)
}

pub fn cmd_classify(input: &str, opts: &Options) -> CliResult<Report> {
    let d = load_input(input, opts)?;
    let mut report = Report::new("classify").input("input", input);
    let conditions = corrigibility_conditions(&d);
    report.verdict(Verdict::new(
        "corrigibility-conditions-agree",
        conditions.minus.agree() && conditions.plus.agree(),
        None,
    ));
    let classification = match classify(&d) {
        Ok(c) => {
            report.verdict(Verdict::new("implications", true, None));
            serde_json::to_value(c).expect("serializable")
        }
        Err(e @ (Error::ImplicationViolated(_) | Error::EquivalenceMismatch { .. })) => {
            report.verdict(Verdict::new("implications", false, Some(e.to_string())));
            Value::Null
        }
        Err(e) => return Err(e.into()),
    };
    report.detail("name", d.name());
    report.detail("classification", classification);
    report.detail("corrigibility_minus", conditions.minus.conditions.to_vec());
    report.detail("corrigibility_plus", conditions.plus.conditions.to_vec());
    Ok(report)
}

/// Pass count and first failure of one property suite.
#[derive(Default)]
struct Suite {
    checked: usize,
    skipped: usize,
    failures: usize,
    first: Option<String>,
}

impl Suite {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn record_result(&mut self, name: &str, r: dframe_core::Result<Option<String>>) {
        match r {
            Ok(None) => self.record(true, String::new),
            Ok(Some(msg)) => self.record(false, || format!("{name}: {msg}")),
            Err(e) => self.record(false, || format!("{name}: {e}")),
        }
    }
}

struct Suites(Vec<(&'static str, Suite)>);

impl Suites {
    fn get(&mut self, name: &'static str) -> &mut Suite {
        if let Some(i) = self.0.iter().position(|(n, _)| *n == name) {
            return &mut self.0[i].1;
        }
        self.0.push((name, Suite::default()));
        &mut self.0.last_mut().expect("just pushed").1
    }
}

fn first_message(r: dframe_core::density::LawReport) -> Option<String> {
    if r.is_ok() {
        return None;
    }
    let failures = r.failures;
    Some(
        r.messages
            .into_iter()
            .next()
            .unwrap_or_else(|| format!("{failures} failures")),
    )
}

fn dframe_suites(suites: &mut Suites, d: &DFrame, homs: &[DFrameHom], opts: &Options) {
    let name = d.name();
    suites.get("axioms").record_result(
        &name,
        Ok(d.axiom_report()
            .first_failure()
            .map(|f| f.axiom.name().to_string())),
    );
    suites
        .get("galois")
        .record_result(&name, Ok(first_message(galois_report(d))));
    suites
        .get("sq-relations")
        .record_result(&name, Ok(first_message(sq_report(d, &sq_relations(d)))));
    suites
        .get("hat-membership")
        .record_result(&name, Ok(first_message(hat_membership_report(d))));
    suites
        .get("corrigibility-conditions-agree")
        .record_result(&name, is_corrigible(d).map(|_| None));
    suites
        .get("classification-implications")
        .record_result(&name, classify(d).map(|_| None));
    let h = hat(d);
    suites.get("hat-dense").record_result(
        &name,
        h.as_ref().map_err(Clone::clone).and_then(|h| {
            let ok = h.dframe().axiom_report().is_ok() && is_dense_sub_d_locale(&h.sub)?;
            Ok((!ok).then(|| format!("{} is not a dense sub-d-locale", h.sub.label())))
        }),
    );
    match (h, enumerate_ds(d, opts.max_frame, opts.max_pairs)) {
        (Ok(h), Ok(ds)) => suites
            .get("hat-least-dense")
            .record_result(&name, hat_minimality(&h, &ds).map(first_message)),
        (_, Err(Error::SizeGuardExceeded { .. })) => suites.get("hat-least-dense").skipped += 1,
        (Err(e), _) | (_, Err(e)) => suites.get("hat-least-dense").record_result(&name, Err(e)),
    }
    suites.get("coreflection").record_result(
        &name,
        coreflection_check(d, homs).map(|r| (!r.is_ok()).then(|| format!("{r:?}"))),
    );
}

fn same_maps(f: &DFrameHom, g: &DFrameHom) -> bool {
    f.minus().map() == g.minus().map() && f.plus().map() == g.plus().map()
}

/// Left cancellation against the probe d-frames, whose homomorphisms into
/// `L` select single elements of `L₋` or `L₊`.
fn left_cancellable(f: &DFrameHom, probes: &[DFrame]) -> dframe_core::Result<bool> {
    for p in probes {
        let homs = enumerate_dframe_homs(p, f.dom());
        for (i, g) in homs.iter().enumerate() {
            for h in &homs[i + 1..] {
                if same_maps(&g.then(f)?, &h.then(f)?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn morphism_suites(suites: &mut Suites, homs: &[DFrameHom]) -> dframe_core::Result<Option<String>> {
    let probes = probe_dframes();
    let label = |f: &DFrameHom| format!("{} -> {}", f.dom().name(), f.cod().name());
    for f in homs {
        let fac = f.image_factorization();
        suites.get("image-factorization").record_result(
            &label(f),
            fac.and_then(|fac| {
                let ok = fac.epi.is_extremal_epi()
                    && fac.mono.is_mono()
                    && same_maps(&fac.epi.then(&fac.mono)?, f);
                Ok((!ok).then(|| "factorization is not sound".to_string()))
            }),
        );
        let injective = f.minus().is_injective() && f.plus().is_injective();
        suites.get("mono-agreement").record_result(
            &label(f),
            left_cancellable(f, &probes).map(|lc| {
                (f.is_mono() != injective || f.is_mono() != lc).then(|| {
                    format!(
                        "is_mono {}, injective {injective}, left cancellable {lc}",
                        f.is_mono()
                    )
                })
            }),
        );
    }
    let mut seen: Vec<&DFrame> = Vec::new();
    for f in homs {
        if seen.contains(&f.dom()) {
            continue;
        }
        seen.push(f.dom());
        let id = DFrameHom::identity(f.dom());
        suites.get("hat-identity").record_result(
            &f.dom().name(),
            hat_morphism(&id).map(|h| {
                let ok = h.minus.iter().enumerate().all(|(i, &x)| i == x)
                    && h.plus.iter().enumerate().all(|(i, &x)| i == x);
                (!ok).then(|| "hat of the identity is not the identity".to_string())
            }),
        );
    }
    for f in homs {
        for g in homs.iter().filter(|g| g.dom() == f.cod()) {
            if !is_skeletal(g) {
                continue;
            }
            let r = (|| {
                let composite = hat_morphism(&f.then(g)?)?;
                let tables = hat_morphism(f)?.then_tables(&hat_morphism(g)?);
                Ok(((composite.minus, composite.plus) != tables)
                    .then(|| "hat(g∘f) ≠ hat(g)∘hat(f)".to_string()))
            })();
            suites
                .get("hat-functoriality")
                .record_result(&format!("{} -> {}", label(f), g.cod().name()), r);
        }
    }

    let fixture = dense_components_fixture();
    let witness = fixture.density_witness().map(|(phi, a)| {
        format!(
            "({}, {})",
            fixture.dom().plus().id(phi),
            fixture.dom().minus().id(a)
        )
    });
    let ok = fixture.minus().is_dense() && fixture.plus().is_dense() && !fixture.is_dense();
    suites.get("dense-components-fixture").record(ok, || {
        "components are not dense or the morphism is dense".into()
    });
    Ok(witness)
}

/// Runs the property suites over a corpus or a single input.
///
/// Targets: `corpus:standard` (minimal and symmetric d-frames over
/// distributive lattices with at most five elements, the two fixture
/// d-frames, and the morphism suites), `corpus:random:N` (`N` seeded random
/// d-frames, `--seed`), or any input accepted by [`load_input`].
pub fn cmd_props(target: &str, opts: &Options) -> CliResult<Report> {
    let mut report = Report::new("props")
        .input("target", target)
        .input("seed", opts.seed);
    let mut suites = Suites(Vec::new());
    let parts: Vec<&str> = target.split(':').collect();
    let (corpus, homs) = match parts.as_slice() {
        ["corpus", "standard"] => (standard_corpus(), hom_corpus()),
        ["corpus", "random", n] => {
            let n: usize = n
                .parse()
                .map_err(|_| Error::UnknownSpec(target.to_string()))?;
            (random_dframes(opts.seed, n, 5)?, Vec::new())
        }
        _ => (vec![load_input(target, opts)?], Vec::new()),
    };
    for d in &corpus {
        dframe_suites(&mut suites, d, &homs, opts);
    }
    let mut fixture_witness = None;
    if !homs.is_empty() {
        fixture_witness = morphism_suites(&mut suites, &homs)?;
    }
    for (name, s) in &suites.0 {
        let mut v = Verdict::new(name, s.failures == 0, s.first.clone());
        v.checked = Some(s.checked);
        if s.skipped > 0 {
            v.skipped = Some(s.skipped);
        }
        report.verdict(v);
    }
    report.detail("dframes", corpus.len());
    report.detail("morphisms", homs.len());
    if let Some(w) = fixture_witness {
        report.detail("dense_components_witness", w);
    }
    Ok(report)
}

/// Bounded search over all d-frames on frames with at most `size` elements.
pub fn cmd_mine(size: usize, opts: &Options) -> CliResult<Report> {
    let config = MinerConfig {
        max_size: size,
        partner_max_size: size.min(opts.max_frame),
        max_examples: 3,
    };
    let r = mine(&config)?;
    let mut report = Report::new("mine")
        .input("size", size)
        .input("partner_size", config.partner_max_size);
    report.verdict(Verdict::new(
        "corrigibility-conditions-agree",
        r.condition_disagreements.count == 0,
        None,
    ));
    report.verdict(Verdict::new(
        "implications",
        r.implication_failures.count == 0,
        None,
    ));
    report.detail("frame_pairs", r.frame_pairs);
    report.detail("dframes", r.dframes);
    report.detail("corrigible", r.corrigible);
    for (key, finding) in [
        ("incorrigible", &r.incorrigible),
        (
            "double_negation_without_excluded_middle",
            &r.double_negation_without_excluded_middle,
        ),
        ("partnerless_sublocale", &r.partnerless_sublocale),
    ] {
        report.detail(key, finding.count);
        let examples: Vec<Value> = finding
            .examples
            .iter()
            .map(|doc| serde_json::to_value(doc).expect("serializable"))
            .collect();
        report.detail(&format!("{key}_examples"), examples);
    }
    Ok(report)
}
