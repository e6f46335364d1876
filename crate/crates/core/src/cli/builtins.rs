//! Named experiments and JSON experiment specs.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::commands::{self, Bounds, Method};
use super::report::{homology_tuple, Report, Status};
use super::{load_span, CliError, SpanArgs};
use crate::dwyer::is_dwyer;
use crate::fincat::{cone, FinCategory, FullSubcategory, Functor};
use crate::fixtures;
use crate::homology::{homology_equal, HomologyGroup};
use crate::present::localization_span;
use crate::pushout::{cross_check, dwyer_pushout, iso_check, verify_pushout_dwyer_closure};
use crate::random::random_span;
use crate::scat::{disc, levelwise_dwyer_pushout, LevelwiseFunctor};
use crate::sset::{anodyne_search, comparison_map, AnodyneOutcome};

/// Largest category in random spans.
pub const RANDOM_MAX_OBJECTS: usize = 6;

pub struct Builtin {
    pub name: &'static str,
    pub description: &'static str,
    /// Default seed count; 0 for deterministic fixtures.
    pub seeds: u64,
    pub defaults: Bounds,
    pub run: fn(&Bounds, u64) -> Result<Report, CliError>,
}

/// Command-line values overriding spec or builtin defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seeds: Option<u64>,
    pub truncate: Option<usize>,
    pub degree: Option<usize>,
    pub bound: Option<usize>,
}

impl Overrides {
    pub fn apply(&self, b: Bounds) -> Bounds {
        Bounds {
            truncate: self.truncate.unwrap_or(b.truncate),
            degree: self.degree.unwrap_or(b.degree),
            bound: self.bound.unwrap_or(b.bound),
        }
    }
}

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

const fn fixed(name: &'static str, description: &'static str, run: fn(&Bounds, u64) -> Result<Report, CliError>) -> Builtin {
    Builtin { name, description, seeds: 0, defaults: DEFAULTS, run }
}

const fn seeded(
    name: &'static str,
    description: &'static str,
    seeds: u64,
    run: fn(&Bounds, u64) -> Result<Report, CliError>,
) -> Builtin {
    Builtin { name, description, seeds, defaults: DEFAULTS, run }
}

const DEFAULTS: Bounds = Bounds { truncate: 3, degree: 2, bound: crate::present::DEFAULT_BOUND };

pub const BUILTINS: &[Builtin] = &[
    fixed("poset-s2", "zigzag circle into its cone, pushed out to a point", poset_s2),
    fixed("monoid-s2", "localization of the five-element monoid as a pushout", monoid_s2),
    fixed("terminal-cone", "Dwyer verdicts on endpoints of the arrow, a cone and a cospan", terminal_cone),
    fixed("glue-two", "two arrows glued end to start, both constructions", glue_two),
    fixed("cospan-flat", "flatness instance along the non-Dwyer legs of a cospan", cospan_flat),
    fixed("localize-monoid", "inverting every element of the five-element monoid", localize_monoid),
    seeded("dwyer-closure", "pushouts of random Dwyer spans are Dwyer and match the presentation", 200, dwyer_closure),
    seeded("nerve-comparison", "nerve comparison on random Dwyer spans", 50, nerve_comparison),
    seeded("anodyne-certificates", "inner-horn certificates for faithful random spans", 25, anodyne_certificates),
    seeded("levelwise-pushouts", "levelwise pushout of discrete spans against the categorical pushout", 200, levelwise_pushouts),
];

pub fn builtin(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name)
}

pub fn list_builtins() -> Report {
    let mut r = Report::new("builtins");
    let rows: Vec<Vec<String>> = BUILTINS
        .iter()
        .map(|b| vec![b.name.to_string(), if b.seeds > 0 { b.seeds.to_string() } else { "-".into() }, b.description.into()])
        .collect();
    r.line(super::report::table(&["name", "seeds", "description"], &rows).trim_end());
    let entries: Vec<_> = BUILTINS
        .iter()
        .map(|b| {
            let spec = ExperimentSpec::for_builtin(b);
            json!({ "name": b.name, "description": b.description, "seeds": b.seeds, "spec": spec })
        })
        .collect();
    r.set("builtins", json!(entries));
    r
}

fn span_poset_s2() -> (Functor, Functor) {
    let i = fixtures::poset_s2_inclusion();
    let f = Functor::to_terminal(i.dom.clone(), arc(fixtures::terminal()));
    (i, f)
}

fn span_monoid_s2() -> Result<(Functor, Functor), CliError> {
    let m = arc(fixtures::monoid5());
    let sigma: Vec<_> = m.morphisms().collect();
    let (into_iso, into_m) = localization_span(&m, &sigma)?;
    Ok((into_m, into_iso))
}

fn expect_homology(r: &mut Report, cmp: &commands::PushoutComparison, simplicial: &[usize], categorical: &[usize]) {
    let free = |b: &[usize]| b.iter().map(|&n| HomologyGroup::free(n)).collect::<Vec<_>>();
    let want = (free(simplicial), free(categorical));
    r.line(format!(
        "expected {} vs {}",
        homology_tuple(&crate::homology::HomologyResult { groups: want.0.clone(), reliable: vec![] }),
        homology_tuple(&crate::homology::HomologyResult { groups: want.1.clone(), reliable: vec![] }),
    ));
    let n = simplicial.len();
    if cmp.simplicial.groups.get(..n) != Some(&want.0[..]) || cmp.categorical.groups.get(..n) != Some(&want.1[..]) {
        r.fail(Status::Refuted("homology differs from the expected groups".into()));
    }
}

fn poset_s2(b: &Bounds, _: u64) -> Result<Report, CliError> {
    let (i, f) = span_poset_s2();
    let (mut r, cmp) = commands::compare_pushouts_with(&i, &f, b)?;
    r.title = "poset-s2".into();
    expect_homology(&mut r, &cmp, &[1, 0, 1], &[1, 0, 0]);
    let arrow = iso_check(&cmp.pushout, &fixtures::arrow()).is_iso();
    r.line(format!("categorical pushout is the arrow category: {arrow}"));
    r.set("pushout_is_arrow", json!(arrow));
    if !arrow {
        r.fail(Status::Refuted("categorical pushout is not the arrow category".into()));
    }
    Ok(r)
}

fn monoid_s2(b: &Bounds, _: u64) -> Result<Report, CliError> {
    let (i, f) = span_monoid_s2()?;
    let (mut r, cmp) = commands::compare_pushouts_with(&i, &f, b)?;
    r.title = "monoid-s2".into();
    expect_homology(&mut r, &cmp, &[1, 0, 1], &[1, 0, 0]);
    let trivial = cmp.pushout.num_morphisms() == 1;
    r.line(format!("categorical pushout is terminal: {trivial}"));
    if !trivial {
        r.fail(Status::Refuted("localization is not the terminal category".into()));
    }
    Ok(r)
}

/// Run `sub` and replace its status by whether it matched `dwyer`.
fn expect_dwyer(r: &mut Report, name: &str, i: &Functor, dwyer: bool) {
    let mut sub = commands::check_dwyer(i);
    sub.title = name.into();
    let found = sub.status == Status::Ok;
    sub.line(format!("expected: {}", if dwyer { "Dwyer" } else { "not Dwyer" }));
    sub.status = if found == dwyer { Status::Ok } else { Status::Refuted(format!("{name}: unexpected verdict")) };
    r.absorb(sub);
}

fn terminal_cone(_: &Bounds, _: u64) -> Result<Report, CliError> {
    let mut r = Report::new("terminal-cone");
    let one = arc(fixtures::terminal());
    let two = arc(fixtures::arrow());
    expect_dwyer(&mut r, "source of the arrow", &Functor::point(one.clone(), two.clone(), 0), true);
    expect_dwyer(&mut r, "target of the arrow", &Functor::point(one, two, 1), false);
    let tri = FullSubcategory::new(arc(cone(&fixtures::ordinal(2))), 0..3).inclusion();
    expect_dwyer(&mut r, "base of the cone on [2]", &tri, true);
    let pts = arc(fixtures::discrete(2));
    let legs = Functor::new(pts, arc(fixtures::cospan()), vec![0, 2], vec![0, 2]);
    expect_dwyer(&mut r, "legs of the cospan", &legs, false);
    Ok(r)
}

fn glue_two(b: &Bounds, _: u64) -> Result<Report, CliError> {
    let one = arc(fixtures::terminal());
    let two = arc(fixtures::arrow());
    let i = Functor::point(one.clone(), two.clone(), 0);
    let f = Functor::point(one, two, 1);
    let mut r = commands::pushout(&i, &f, Method::Both, b)?;
    r.title = "glue-two".into();
    let wit = is_dwyer(&i).map_err(|e| CliError::refuted(e.to_string()))?;
    let d = dwyer_pushout(&wit, &f)?.d;
    let ordinal = iso_check(&d, &fixtures::ordinal(2)).is_iso();
    r.line(format!("pushout is [2]: {ordinal}"));
    r.set("is_ordinal_2", json!(ordinal));
    if !ordinal {
        r.fail(Status::Refuted("pushout is not [2]".into()));
    }
    Ok(r)
}

fn cospan_flat(b: &Bounds, _: u64) -> Result<Report, CliError> {
    let pts = arc(fixtures::discrete(2));
    let iso = arc(fixtures::free_iso());
    let legs = Functor::new(pts.clone(), arc(fixtures::cospan()), vec![0, 2], vec![0, 2]);
    let f1 = Functor::new(pts, iso.clone(), vec![0, 1], vec![0, 1]);
    let m = Functor::to_terminal(iso, arc(fixtures::terminal()));
    let mut r = Report::new("cospan-flat");
    expect_dwyer(&mut r, "legs of the cospan", &legs, false);
    let b = Bounds { truncate: b.truncate.min(2), degree: b.degree.min(1), ..*b };
    r.absorb(commands::flat_check(&legs, &f1, &m, &b)?);
    Ok(r)
}

fn localize_monoid(b: &Bounds, _: u64) -> Result<Report, CliError> {
    let m = arc(fixtures::monoid5());
    let sigma: Vec<_> = m.morphisms().collect();
    let mut r = commands::localize(&m, &sigma, b)?;
    r.title = "localize-monoid".into();
    let trivial = r.data["localization"]["morphisms"] == json!(1);
    r.line(format!("localization is terminal: {trivial}"));
    if !trivial {
        r.fail(Status::Refuted("localization is not the terminal category".into()));
    }
    Ok(r)
}

fn seeded_report(title: &str, seeds: u64, good: u64, failures: Vec<String>) -> Report {
    let mut r = Report::new(title);
    r.line(format!("seeds 0..{seeds}, categories with at most {RANDOM_MAX_OBJECTS} objects"));
    for f in &failures {
        r.line(f);
    }
    r.line(format!("passed {good}/{seeds}"));
    r.set("seeds", json!({ "start": 0, "end": seeds }))
        .set("passed", json!(good))
        .set("failures", json!(failures));
    if good != seeds {
        r.fail(Status::Refuted(format!("{} of {seeds} seeds failed", seeds - good)));
    }
    r
}

fn dwyer_closure(b: &Bounds, seeds: u64) -> Result<Report, CliError> {
    let (mut good, mut failures) = (0, Vec::new());
    let (mut agree, mut inconclusive) = (0, 0);
    for seed in 0..seeds {
        let s = random_span(seed, RANDOM_MAX_OBJECTS, false);
        match verify_pushout_dwyer_closure(&s.witness, &s.f) {
            Ok(_) => good += 1,
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
        match cross_check(&s.witness, &s.f, &b.config())?.agrees() {
            Some(true) => agree += 1,
            Some(false) => failures.push(format!("seed {seed}: explicit and presented pushouts differ")),
            None => inconclusive += 1,
        }
    }
    let mut r = seeded_report("dwyer-closure", seeds, good, failures);
    r.line(format!("explicit matches presentation: {agree}, presentation inconclusive: {inconclusive}"));
    r.set("isomorphic", json!(agree)).set("inconclusive", json!(inconclusive));
    if agree + inconclusive != seeds {
        r.fail(Status::Refuted("explicit pushout disagrees with the presentation".into()));
    }
    Ok(r)
}

fn nerve_comparison(b: &Bounds, seeds: u64) -> Result<Report, CliError> {
    let (mut good, mut failures) = (0, Vec::new());
    for seed in 0..seeds {
        let s = random_span(seed, RANDOM_MAX_OBJECTS, false);
        let p = dwyer_pushout(&s.witness, &s.f)?;
        let cmp = comparison_map(&s.witness.inclusion, &s.f, &p.g, &p.j, b.truncate)?;
        let same = homology_equal(&cmp.pushout.sset, &cmp.nerve_d.sset, b.degree)?.equal();
        if same && cmp.bijective_on_vertices() {
            good += 1;
        } else {
            failures.push(format!("seed {seed}: homology equal {same}, bijective on vertices {}", cmp.bijective_on_vertices()));
        }
    }
    Ok(seeded_report("nerve-comparison", seeds, good, failures))
}

fn anodyne_certificates(b: &Bounds, seeds: u64) -> Result<Report, CliError> {
    let (mut good, mut failures) = (0, Vec::new());
    let mut steps = 0;
    for seed in 0..seeds {
        let s = random_span(seed, RANDOM_MAX_OBJECTS, true);
        let p = dwyer_pushout(&s.witness, &s.f)?;
        let cmp = comparison_map(&s.witness.inclusion, &s.f, &p.g, &p.j, b.truncate)?;
        let x = &cmp.nerve_d.sset;
        let start = cmp.image();
        match anodyne_search(x, &start) {
            AnodyneOutcome::Certificate(cert) if cmp.is_injective() && cert.replay(x, &start).is_ok() => {
                steps += cert.steps.len();
                good += 1;
            }
            AnodyneOutcome::Certificate(_) => failures.push(format!("seed {seed}: comparison not injective or replay failed")),
            AnodyneOutcome::Stuck(st) => failures.push(format!("seed {seed}: stuck with {} simplices missing", st.missing.len())),
        }
    }
    let mut r = seeded_report("anodyne-certificates", seeds, good, failures);
    r.line(format!("total attachments: {steps}"));
    r.set("attachments", json!(steps));
    Ok(r)
}

fn levelwise_pushouts(b: &Bounds, seeds: u64) -> Result<Report, CliError> {
    let (mut good, mut failures) = (0, Vec::new());
    for seed in 0..seeds {
        let s = random_span(seed, RANDOM_MAX_OBJECTS, false);
        let p = dwyer_pushout(&s.witness, &s.f)?;
        let lp = levelwise_dwyer_pushout(&s.witness, &LevelwiseFunctor::disc(&s.f, b.truncate))?;
        if *lp.scat == disc(&p.d, b.truncate) {
            good += 1;
        } else {
            failures.push(format!("seed {seed}: levelwise pushout differs from disc of the pushout"));
        }
    }
    Ok(seeded_report("levelwise-pushouts", seeds, good, failures))
}

/// Span files of an experiment spec, relative to the spec file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanFiles {
    pub a: PathBuf,
    pub b: PathBuf,
    pub c: PathBuf,
    pub i: PathBuf,
    pub f: PathBuf,
}

/// A JSON experiment: either a builtin or a span of files.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<SpanFiles>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncate: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<u64>,
    /// Text report path; the JSON report goes next to it with extension `json`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn for_builtin(b: &Builtin) -> Self {
        ExperimentSpec {
            name: b.name.into(),
            builtin: Some(b.name.into()),
            seeds: (b.seeds > 0).then_some(b.seeds),
            ..Default::default()
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let spec: ExperimentSpec =
            serde_json::from_str(text).map_err(|e| CliError::usage(format!("{}:{}: {e}", e.line(), e.column())))?;
        match (&spec.builtin, &spec.span) {
            (Some(_), Some(_)) => Err(CliError::usage("spec gives both `builtin` and `span`")),
            (None, None) => Err(CliError::usage("spec needs `builtin` or `span`")),
            (Some(n), None) if builtin(n).is_none() => Err(CliError::usage(format!("unknown builtin `{n}`"))),
            _ => Ok(spec),
        }
    }

    /// Run with paths resolved against `base`.
    pub fn run(&self, base: &Path, o: &Overrides) -> Result<Report, CliError> {
        let spec_overrides = Overrides { seeds: self.seeds, truncate: self.truncate, degree: self.degree, bound: self.bound };
        let pick = |a: Option<usize>, b: Option<usize>| a.or(b);
        let merged = Overrides {
            seeds: o.seeds.or(self.seeds),
            truncate: pick(o.truncate, spec_overrides.truncate),
            degree: pick(o.degree, spec_overrides.degree),
            bound: pick(o.bound, spec_overrides.bound),
        };
        let mut r = Report::new(self.name.clone());
        if let Some(name) = &self.builtin {
            let b = builtin(name).expect("validated builtin");
            r.absorb((b.run)(&merged.apply(b.defaults), merged.seeds.unwrap_or(b.seeds))?);
        } else if let Some(s) = &self.span {
            let args = SpanArgs { a: base.join(&s.a), b: base.join(&s.b), c: base.join(&s.c), i: base.join(&s.i), f: base.join(&s.f) };
            let (i, f) = load_span(&args)?;
            let bounds = merged.apply(DEFAULTS);
            r.absorb(commands::pushout(&i, &f, self.method.unwrap_or(Method::Both), &bounds)?);
            r.absorb(commands::compare_pushouts(&i, &f, &bounds)?);
        }
        if let Some(out) = &self.out {
            let path = base.join(out);
            let write = |p: &Path, body: String| std::fs::write(p, body).map_err(|e| CliError::usage(format!("{}: {e}", p.display())));
            write(&path, r.render_text())?;
            write(&path.with_extension("json"), r.render_json())?;
        }
        Ok(r)
    }
}

pub fn run_spec(path: &Path, o: &Overrides) -> Result<Report, CliError> {
    let spec = ExperimentSpec::parse(&super::read(path)?).map_err(|e| CliError { message: format!("{}:{}", path.display(), e.message), ..e })?;
    spec.run(path.parent().unwrap_or(Path::new(".")), o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_required_entries() {
        for n in ["poset-s2", "monoid-s2", "terminal-cone", "glue-two", "cospan-flat", "localize-monoid"] {
            assert!(builtin(n).is_some(), "{n}");
        }
    }

    #[test]
    fn every_fixed_builtin_passes() {
        for b in BUILTINS.iter().filter(|b| b.seeds == 0) {
            let r = (b.run)(&b.defaults, 0).unwrap();
            assert_eq!(r.status, Status::Ok, "{}: {}", b.name, r.text);
        }
    }

    #[test]
    fn specs_validate() {
        assert!(ExperimentSpec::parse(r#"{"name": "x", "builtin": "glue-two"}"#).is_ok());
        assert_eq!(ExperimentSpec::parse(r#"{"name": "x"}"#).unwrap_err().code, 1);
        assert_eq!(ExperimentSpec::parse(r#"{"name": "x", "builtin": "nope"}"#).unwrap_err().code, 1);
        let e = ExperimentSpec::parse("{\n  \"name\": 3\n}").unwrap_err();
        assert!(e.message.starts_with("2:"), "{}", e.message);
    }
}
