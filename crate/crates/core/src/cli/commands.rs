//! Subcommand bodies on already loaded data.

use std::sync::Arc;

use serde_json::{json, Value};

use super::report::{homology_json, homology_tuple, table, Report, Status};
use super::CliError;
use crate::dwyer::is_dwyer;
use crate::fincat::{print_category, FinCategory, Functor, Mor};
use crate::homology::{homology, HomologyResult};
use crate::present::{localize as localize_by_presentation, pushout_by_presentation, PushoutOutcome, SaturationConfig, SaturationResult, DEFAULT_WORD_CAP};
use crate::pushout::{dwyer_pushout, iso_check};
use crate::scat::{flat_instance_check, flat_instance_check_presented, DKReport, LevelwiseFunctor};
use crate::sset::{anodyne_search, comparison_map, nerve, nerve_map, sset_pushout, AnodyneOutcome, TruncatedSSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Explicit,
    Presented,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub truncate: usize,
    pub degree: usize,
    pub bound: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { truncate: 3, degree: 2, bound: crate::present::DEFAULT_BOUND }
    }
}

impl Bounds {
    pub fn config(&self) -> SaturationConfig {
        SaturationConfig { max_word_len: self.bound, word_cap: DEFAULT_WORD_CAP }
    }
}

pub fn check_dwyer(i: &Functor) -> Report {
    let mut r = Report::new("check-dwyer");
    r.line(format!("A: {} objects, B: {} objects", i.dom.num_objects(), i.cod.num_objects()));
    match is_dwyer(i) {
        Ok(w) => {
            let verified = w.verify().is_ok();
            let label = |xs: &[usize]| xs.iter().map(|&x| i.cod.obj_label(x).to_string()).collect::<Vec<_>>();
            let rows: Vec<Vec<String>> = w
                .w
                .iter()
                .map(|&x| {
                    vec![
                        i.cod.obj_label(x).to_string(),
                        i.dom.obj_label(w.r(x)).to_string(),
                        i.cod.mor_label(w.eps(x)).to_string(),
                    ]
                })
                .collect();
            r.line("verdict: Dwyer");
            r.line(format!("minimal cosieve W: {}", label(&w.w).join(", ")));
            r.line(format!("U = W minus the sieve: {}", label(&w.u).join(", ")));
            r.line(table(&["w", "R w", "counit"], &rows).trim_end());
            r.line(format!("witness verified: {verified}"));
            r.set("verdict", json!("dwyer"))
                .set("w", json!(label(&w.w)))
                .set("u", json!(label(&w.u)))
                .set("verified", json!(verified));
            if !verified {
                r.fail(Status::Refuted("witness fails verification".into()));
            }
        }
        Err(e) => {
            r.line(format!("verdict: not Dwyer ({e})"));
            r.set("verdict", json!("refuted")).set("refutation", json!(format!("{e:?}")));
            r.fail(Status::Refuted(e.to_string()));
        }
    }
    r
}

fn category_summary(c: &FinCategory) -> Value {
    json!({ "objects": c.num_objects(), "morphisms": c.num_morphisms(), "text": print_category(c) })
}

pub fn pushout(i: &Functor, f: &Functor, method: Method, bounds: &Bounds) -> Result<Report, CliError> {
    let mut r = Report::new("pushout");
    let mut explicit = None;
    if method != Method::Presented {
        match is_dwyer(i) {
            Ok(w) => {
                let p = dwyer_pushout(&w, f)?;
                r.line(format!("explicit: {} objects, {} morphisms", p.d.num_objects(), p.d.num_morphisms()));
                r.set("explicit", category_summary(&p.d));
                explicit = Some(p.d);
            }
            Err(e) => {
                r.line(format!("explicit: first leg is not Dwyer ({e})"));
                r.fail(Status::Refuted(format!("explicit construction needs a Dwyer leg: {e}")));
            }
        }
    }
    let mut presented = None;
    if method != Method::Explicit {
        match pushout_by_presentation(i, f, &bounds.config())? {
            PushoutOutcome::Finite(p) => {
                let d = p.saturated.category;
                r.line(format!(
                    "presented: {} objects, {} morphisms (word bound {})",
                    d.num_objects(),
                    d.num_morphisms(),
                    p.saturated.bound
                ));
                r.set("presented", category_summary(&d));
                presented = Some(d);
            }
            PushoutOutcome::Inconclusive(inc) => {
                r.line(format!("presented: inconclusive at bound {} ({})", inc.bound, inc.reason));
                r.set("presented", json!({ "inconclusive": inc.reason, "bound": inc.bound }));
                r.fail(Status::Guard(format!("saturation inconclusive: {}", inc.reason)));
            }
        }
    }
    if let (Some(e), Some(p)) = (&explicit, &presented) {
        let iso = iso_check(e, p);
        r.line(format!("explicit and presented isomorphic: {}", iso.is_iso()));
        r.set("isomorphic", json!(iso.is_iso()));
        if !iso.is_iso() {
            r.fail(Status::Refuted("explicit and presented pushouts differ".into()));
        }
    }
    if let Some(d) = explicit.as_ref().or(presented.as_ref()) {
        r.line("");
        r.line(print_category(d).trim_end());
    }
    Ok(r)
}

pub fn localize(c: &Arc<FinCategory>, sigma: &[Mor], bounds: &Bounds) -> Result<Report, CliError> {
    let mut r = Report::new("localize");
    let names: Vec<&str> = sigma.iter().map(|&m| c.mor_label(m)).collect();
    r.line(format!("inverting {} morphisms: {}", sigma.len(), names.join(", ")));
    r.set("inverted", json!(names));
    match localize_by_presentation(c, sigma, &bounds.config())? {
        SaturationResult::Finite(s) => {
            let d = &s.category;
            r.line(format!("localization: {} objects, {} morphisms", d.num_objects(), d.num_morphisms()));
            r.line("");
            r.line(print_category(d).trim_end());
            r.set("localization", category_summary(d));
        }
        SaturationResult::Inconclusive(inc) => {
            r.line(format!("inconclusive at bound {} ({})", inc.bound, inc.reason));
            r.fail(Status::Guard(inc.reason));
        }
    }
    Ok(r)
}

pub fn nerve_counts(c: &FinCategory, bounds: &Bounds) -> Result<Report, CliError> {
    let n = nerve(c, bounds.truncate)?;
    let x = &n.sset;
    let mut r = Report::new("nerve");
    let rows: Vec<Vec<String>> = (0..=x.dim())
        .map(|k| vec![k.to_string(), x.count(k).to_string(), x.nondegenerate(k).count().to_string()])
        .collect();
    r.line(format!("truncation {}", x.dim()));
    r.line(table(&["level", "simplices", "nondegenerate"], &rows).trim_end());
    r.set("truncation", json!(x.dim()))
        .set("counts", json!(x.counts()))
        .set("nondegenerate", json!((0..=x.dim()).map(|k| x.nondegenerate(k).count()).collect::<Vec<_>>()));
    Ok(r)
}

pub fn homology_of(x: &TruncatedSSet, bounds: &Bounds) -> Result<Report, CliError> {
    let h = homology(x, bounds.degree)?;
    let mut r = Report::new("homology");
    r.line(format!("truncation {}, simplices per level {:?}", x.dim(), x.counts()));
    r.text.push_str(&h.to_string());
    r.set("truncation", json!(x.dim())).set("homology", homology_json(&h));
    Ok(r)
}

/// The categorical pushout with both legs: explicit when the first leg is
/// Dwyer, by presentation otherwise.
fn categorical_pushout(i: &Functor, f: &Functor, bounds: &Bounds) -> Result<(Functor, Functor, &'static str), CliError> {
    if let Ok(w) = is_dwyer(i) {
        let p = dwyer_pushout(&w, f)?;
        return Ok((p.g, p.j, "explicit"));
    }
    match pushout_by_presentation(i, f, &bounds.config())? {
        PushoutOutcome::Finite(p) => Ok((p.g, p.j, "presented")),
        PushoutOutcome::Inconclusive(inc) => Err(CliError::guard(format!("categorical pushout inconclusive: {}", inc.reason))),
    }
}

/// Homology of both sides of a pushout comparison.
#[derive(Debug, Clone)]
pub struct PushoutComparison {
    pub simplicial: HomologyResult,
    pub categorical: HomologyResult,
    pub pushout: Arc<FinCategory>,
}

pub fn compare_pushouts(i: &Functor, f: &Functor, bounds: &Bounds) -> Result<Report, CliError> {
    compare_pushouts_with(i, f, bounds).map(|(r, _)| r)
}

pub fn compare_pushouts_with(i: &Functor, f: &Functor, bounds: &Bounds) -> Result<(Report, PushoutComparison), CliError> {
    let d = bounds.truncate;
    let mut r = Report::new("compare-pushouts");
    let (na, nb, nc) = (nerve(&i.dom, d)?, nerve(&i.cod, d)?, nerve(&f.cod, d)?);
    let p = sset_pushout(&nerve_map(i, &na, &nb), &nerve_map(f, &na, &nc))?;
    let hs = homology(&p.sset, bounds.degree)?;
    let (g, j, how) = categorical_pushout(i, f, bounds)?;
    let nd = nerve(&g.cod, d)?;
    let hd = homology(&nd.sset, bounds.degree)?;
    let rows: Vec<Vec<String>> = (0..=bounds.degree)
        .map(|k| {
            vec![
                k.to_string(),
                hs.groups[k].to_string(),
                hd.groups[k].to_string(),
                if hs.reliable[k] { "yes".into() } else { "no".into() },
            ]
        })
        .collect();
    r.line(format!("truncation {d}; categorical pushout computed {how}: {} objects, {} morphisms", g.cod.num_objects(), g.cod.num_morphisms()));
    r.line(format!("simplicial pushout simplices per level: {:?}", p.sset.counts()));
    r.line(table(&["degree", "simplicial pushout", "nerve of pushout", "reliable"], &rows).trim_end());
    r.line(format!("homology: {} vs {}", homology_tuple(&hs), homology_tuple(&hd)));
    let cmp = comparison_map(i, f, &g, &j, d)?;
    let equal = hs.groups == hd.groups;
    r.line(format!(
        "comparison map: bijective on vertices {}, injective {:?}, surjective {:?}",
        cmp.bijective_on_vertices(),
        cmp.injective,
        cmp.surjective
    ));
    r.line(format!("homology agrees through degree {}: {equal}", bounds.degree));
    r.set("truncation", json!(d))
        .set("degree", json!(bounds.degree))
        .set("method", json!(how))
        .set("simplicial", json!({ "counts": p.sset.counts(), "homology": homology_json(&hs) }))
        .set(
            "categorical",
            json!({ "objects": g.cod.num_objects(), "morphisms": g.cod.num_morphisms(), "homology": homology_json(&hd) }),
        )
        .set(
            "comparison",
            json!({
                "bijective_on_vertices": cmp.bijective_on_vertices(),
                "injective": cmp.injective,
                "surjective": cmp.surjective,
                "homology_equal": equal,
            }),
        );
    Ok((r, PushoutComparison { simplicial: hs, categorical: hd, pushout: g.cod.clone() }))
}

pub fn anodyne(i: &Functor, f: &Functor, bounds: &Bounds) -> Result<Report, CliError> {
    let (g, j, how) = categorical_pushout(i, f, bounds)?;
    let cmp = comparison_map(i, f, &g, &j, bounds.truncate)?;
    let x = &cmp.nerve_d.sset;
    let start = cmp.image();
    let mut r = Report::new("anodyne-search");
    r.line(format!("pushout computed {how}; truncation {}", x.dim()));
    r.line(format!("comparison injective: {}", cmp.is_injective()));
    r.set("comparison_injective", json!(cmp.is_injective()));
    if !cmp.is_injective() {
        r.fail(Status::Refuted("comparison map is not injective; its image is searched instead".into()));
    }
    match anodyne_search(x, &start) {
        AnodyneOutcome::Certificate(cert) => {
            let replay = cert.replay(x, &start);
            let steps: Vec<Value> = cert
                .steps
                .iter()
                .map(|s| json!({ "k": s.k, "i": s.i, "filler": x.label(s.k, s.filler), "face": x.label(s.k - 1, s.face) }))
                .collect();
            let rows: Vec<Vec<String>> = cert
                .steps
                .iter()
                .map(|s| vec![format!("{}", s.k), format!("{}", s.i), x.label(s.k, s.filler).to_string()])
                .collect();
            r.line(format!("certificate: {} inner-horn attachments, replay {}", cert.steps.len(), if replay.is_ok() { "verified" } else { "failed" }));
            if !rows.is_empty() {
                r.line(table(&["k", "i", "filler"], &rows).trim_end());
            }
            r.set("certificate", json!({ "steps": steps, "replayed": replay.is_ok() }));
            if let Err(e) = replay {
                r.fail(Status::Refuted(format!("certificate replay failed: {e:?}")));
            }
        }
        AnodyneOutcome::Stuck(st) => {
            r.line(format!("stuck after {} attachments; {} simplices unreachable", st.steps.len(), st.missing.len()));
            let missing: Vec<String> = st.missing.iter().map(|&(k, y)| format!("{k}:{}", x.label(k, y))).collect();
            r.set("stuck", json!({ "steps": st.steps.len(), "missing": missing }));
            r.fail(Status::Refuted("no inner-horn attachment sequence found".into()));
        }
    }
    Ok(r)
}

fn dk_json(d: &DKReport) -> Value {
    json!({
        "consistent": d.is_consistent(),
        "essentially_surjective": d.essentially_surjective,
        "status": format!("{:?}", d.status),
        "homs": d.homs.iter().map(|h| json!({
            "x": h.x, "y": h.y, "pi0": h.pi0_bijective, "homology": h.homology_equal, "isomorphic": h.isomorphic
        })).collect::<Vec<_>>(),
    })
}

/// Push `disc(M)` out along `I` under `disc(F1)` and check the induced map.
pub fn flat_check(i: &Functor, f1: &Functor, m: &Functor, bounds: &Bounds) -> Result<Report, CliError> {
    let d = bounds.truncate.max(bounds.degree + 1);
    let f1 = LevelwiseFunctor::disc(f1, d);
    let lm = LevelwiseFunctor::disc(m, d);
    let lm = LevelwiseFunctor { dom: f1.cod.clone(), ..lm };
    let (res, how) = match is_dwyer(i) {
        Ok(w) => (flat_instance_check(&w, &f1, &lm, bounds.degree)?, "explicit"),
        Err(_) => (flat_instance_check_presented(i, &f1, &lm, bounds.degree, &bounds.config())?, "presented"),
    };
    let mut r = Report::new("flat-check");
    r.line(format!("levelwise pushouts computed {how}; truncation {d}, degree {}", bounds.degree));
    r.line("premise M:");
    r.text.push_str(&res.premise.to_string());
    r.line("induced H:");
    r.text.push_str(&res.conclusion.to_string());
    r.set("premise", dk_json(&res.premise)).set("conclusion", dk_json(&res.conclusion));
    if !res.premise.is_consistent() {
        r.fail(Status::Refuted("M fails the checked equivalence conditions".into()));
    } else if !res.conclusion.is_consistent() {
        r.fail(Status::Refuted("induced map fails the checked equivalence conditions".into()));
    }
    Ok(r)
}
