use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use nucleus_core::chu::{se_reduce, ChuSpace, ReductionJson};
use nucleus_core::concept::{
    concept_lattice, dedekind_macneille, lattice_dot, lattice_json, parse_context, LatticeOptions, Poset, PosetJson,
};
use nucleus_core::fincat::{
    category_dot, category_to_json, equivalent, functor_to_json, karoubi_envelope, split_idempotent,
    validate_functor, EquivalenceOutcome, FiniteCategory,
};
use nucleus_core::linalg::{check_spectral, parse_matrix_csv, svd_nucleus, SpectralTolerances, SvdJson};
use nucleus_core::nucleus::{
    adjunction_bundle, check_adjunction, check_comonad, check_hom_bijection, check_monad, check_retracts,
    check_street_idempotence, comonad_of, is_nuclear, is_subnuclear, karoubi_adjunction, little_nucleus, load_bundle,
    monad_bundle, monad_of, nucleus, nucleus_data, simple_nucleus, Adjunction, Bundle, BundleJson, Monad,
    NucleusError, NucleusOptions,
};
use nucleus_core::Report;
use serde_json::{json, Value};

use crate::{Artifact, CatCommand, Failure, Format, RunConfig};

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: cannot read: {e}", path.display())))
}

fn fail(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure(format!("{}: {e}", path.display()))
}

/// 1 if anything is violated, else 3 if anything is undecided, else 0.
fn status<'a>(reports: impl IntoIterator<Item = &'a Report>) -> u8 {
    let reports: Vec<&Report> = reports.into_iter().collect();
    if reports.iter().any(|r| r.has_violations()) {
        1
    } else if reports.iter().any(|r| r.has_undecided()) {
        3
    } else {
        0
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn json_artifact(v: &Value, status: u8) -> Artifact {
    let mut text = serde_json::to_string_pretty(v).expect("serializable");
    text.push('\n');
    Artifact { text, status }
}

fn no_dot(cfg: &RunConfig, what: &str) -> Result<(), Failure> {
    if cfg.format == Format::Dot {
        return Err(Failure(format!("DOT output is not available for `{what}`")));
    }
    Ok(())
}

pub fn fca(input: &Path, cfg: &RunConfig) -> Result<Artifact, Failure> {
    let ctx = parse_context(&read(input)?).map_err(|e| fail(input, e))?;
    let l = concept_lattice(&ctx, LatticeOptions::default()).map_err(|e| fail(input, e))?;
    let report = l.verify();
    let code = status([&report]);
    if cfg.format == Format::Dot {
        return Ok(Artifact {
            text: lattice_dot(&l),
            status: code,
        });
    }
    let mut v = to_value(&lattice_json(&l));
    v["report"] = to_value(&report);
    Ok(json_artifact(&v, code))
}

pub fn dm(input: &Path, cfg: &RunConfig) -> Result<Artifact, Failure> {
    let pj: PosetJson = serde_json::from_str(&read(input)?).map_err(|e| fail(input, e))?;
    let p = Poset::from_json(&pj).map_err(|e| fail(input, e))?;
    let c = dedekind_macneille(&p, LatticeOptions::default()).map_err(|e| fail(input, e))?;
    let report = c.verify();
    let code = status([&report]);
    if cfg.format == Format::Dot {
        return Ok(Artifact {
            text: lattice_dot(&c.lattice),
            status: code,
        });
    }
    let mut v = to_value(&lattice_json(&c.lattice));
    let embedding: BTreeMap<&str, usize> = p.elements().iter().map(String::as_str).zip(c.embedding.iter().copied()).collect();
    v["poset"] = to_value(&p.to_json());
    v["embedding"] = to_value(&embedding);
    v["report"] = to_value(&report);
    Ok(json_artifact(&v, code))
}

pub fn svd(input: &Path, cfg: &RunConfig) -> Result<Artifact, Failure> {
    no_dot(cfg, "svd")?;
    let m = parse_matrix_csv(&read(input)?).map_err(|e| fail(input, e))?;
    let s = svd_nucleus(&m, cfg.tol).map_err(|e| fail(input, e))?;
    let report = check_spectral(&m, &s, SpectralTolerances::default());
    let mut v = to_value(&SvdJson::new(&m, &s));
    v["report"] = to_value(&report);
    Ok(json_artifact(&v, status([&report])))
}

pub fn chu_reduce(input: &Path, cfg: &RunConfig) -> Result<Artifact, Failure> {
    no_dot(cfg, "chu reduce")?;
    let x: ChuSpace = serde_json::from_str(&read(input)?).map_err(|e| fail(input, e))?;
    x.validate().map_err(|e| fail(input, e))?;
    let out = ReductionJson::new(&x, &se_reduce(&x));
    Ok(json_artifact(&to_value(&out), status([&out.report])))
}

fn load(path: &Path) -> Result<Bundle, Failure> {
    let json: BundleJson = serde_json::from_str(&read(path)?).map_err(|e| fail(path, e))?;
    load_bundle(&json).map_err(|e| fail(path, e))
}

/// Refuse to compute on categories that fail their axioms.
fn require_valid(path: &Path, b: &Bundle) -> Result<(), Failure> {
    for (name, r) in &b.category_reports {
        if !r.is_empty() {
            return Err(fail(path, format!("category `{name}` is not a category: {r}")));
        }
    }
    Ok(())
}

fn nucleus_failure(path: &Path, name: &str, e: NucleusError) -> Failure {
    let hint = match e {
        NucleusError::NotIdempotentComplete { .. } => " (rerun with --karoubi to complete the carriers)",
        _ => "",
    };
    fail(path, format!("adjunction `{name}`: {e}{hint}"))
}

fn select<'a, T>(path: &Path, map: &'a BTreeMap<String, T>, kind: &str, only: &Option<String>) -> Result<Vec<(&'a String, &'a T)>, Failure> {
    let picked: Vec<_> = match only {
        Some(n) => vec![map
            .get_key_value(n)
            .ok_or_else(|| fail(path, format!("no {kind} named `{n}`")))?],
        None => map.iter().collect(),
    };
    if picked.is_empty() {
        return Err(fail(path, format!("the bundle has no {kind}s")));
    }
    Ok(picked)
}

fn record_equivalence(r: &mut Report, law: &str, location: &str, outcome: &EquivalenceOutcome) {
    match outcome {
        EquivalenceOutcome::Equivalent { .. } => {}
        EquivalenceOutcome::NotEquivalent => r.violation(law, location),
        EquivalenceOutcome::Undecided => r.undecided(law, location),
    }
}

/// Concatenated DOT digraphs, one per category.
fn dot_of(cats: &[(String, &Arc<FiniteCategory>)]) -> String {
    cats.iter().map(|(n, c)| category_dot(c, n)).collect()
}

fn prepared(path: &Path, name: &str, a: &Adjunction, cfg: &RunConfig) -> Result<Adjunction, Failure> {
    if cfg.karoubi {
        Ok(karoubi_adjunction(a).map_err(|e| nucleus_failure(path, name, e))?.adjunction)
    } else {
        Ok(a.clone())
    }
}

pub fn cat(cmd: &CatCommand, cfg: &RunConfig) -> Result<Artifact, Failure> {
    let opts = NucleusOptions { karoubi: cfg.karoubi };
    let cap = cfg.search_cap;
    match cmd {
        CatCommand::Check { bundle } => {
            no_dot(cfg, "cat check")?;
            let b = load(bundle)?;
            let mut out = json!({ "categories": to_value(&b.category_reports) });
            let mut reports: Vec<Report> = b.category_reports.values().cloned().collect();
            // Functors and transformations on non-categories are meaningless.
            if b.categories_valid() {
                let functors: BTreeMap<&String, Report> = b.functors.iter().map(|(n, f)| (n, validate_functor(f))).collect();
                let mut adjunctions = BTreeMap::new();
                for (n, a) in &b.adjunctions {
                    let (ra, rm, rc) = (check_adjunction(a), check_monad(&monad_of(a)), check_comonad(&comonad_of(a)));
                    adjunctions.insert(n, json!({ "adjunction": ra, "monad": rm, "comonad": rc }));
                    reports.extend([ra, rm, rc]);
                }
                let monads: BTreeMap<&String, Report> = b.monads.iter().map(|(n, m)| (n, check_monad(m))).collect();
                out["functors"] = to_value(&functors);
                out["adjunctions"] = to_value(&adjunctions);
                out["monads"] = to_value(&monads);
                reports.extend(functors.into_values());
                reports.extend(monads.into_values());
            }
            Ok(json_artifact(&out, status(&reports)))
        }
        CatCommand::Nucleus { bundle, adjunction } => {
            let b = load(bundle)?;
            require_valid(bundle, &b)?;
            let mut out = serde_json::Map::new();
            let mut reports = Vec::new();
            let mut dots = Vec::new();
            for (name, a) in select(bundle, &b.adjunctions, "adjunction", adjunction)? {
                let d = nucleus_data(a, opts).map_err(|e| nucleus_failure(bundle, name, e))?;
                let n = &d.adjunction;
                let mut r = check_adjunction(n);
                r.absorb("hom bijection", check_hom_bijection(&d));
                let ev = is_nuclear(n).map_err(|e| nucleus_failure(bundle, name, e))?;
                if !ev.holds() {
                    r.violation("nucleus is nuclear", ev.to_string());
                }
                let again = nucleus(n, NucleusOptions::default()).map_err(|e| nucleus_failure(bundle, name, e))?;
                record_equivalence(&mut r, "idempotence on coalgebras", name, &equivalent(again.domain(), n.domain(), cap));
                record_equivalence(&mut r, "idempotence on algebras", name, &equivalent(again.codomain(), n.codomain(), cap));
                out.insert(
                    name.clone(),
                    json!({ "nucleus": adjunction_bundle(&format!("{name}.nucleus"), n), "report": r }),
                );
                dots.push((format!("{name}.coalgebras"), n.domain().clone()));
                dots.push((format!("{name}.algebras"), n.codomain().clone()));
                reports.push(r);
            }
            finish(cfg, Value::Object(out), &dots, &reports)
        }
        CatCommand::Simple { bundle, adjunction } => {
            let b = load(bundle)?;
            require_valid(bundle, &b)?;
            let mut out = serde_json::Map::new();
            let mut reports = Vec::new();
            let mut dots = Vec::new();
            for (name, a) in select(bundle, &b.adjunctions, "adjunction", adjunction)? {
                let a = prepared(bundle, name, a, cfg)?;
                let s = simple_nucleus(&a).map_err(|e| nucleus_failure(bundle, name, e))?;
                let d = nucleus_data(&a, NucleusOptions::default()).map_err(|e| nucleus_failure(bundle, name, e))?;
                let mut r = check_adjunction(&s.adjunction);
                r.absorb("retracts", check_retracts(&s));
                let e1 = equivalent(s.ec_category(), d.coalgebras.category(), cap);
                let e2 = equivalent(s.em_category(), d.algebras.category(), cap);
                record_equivalence(&mut r, "Ec ≃ coalgebras", name, &e1);
                record_equivalence(&mut r, "Em ≃ algebras", name, &e2);
                out.insert(
                    name.clone(),
                    json!({ "simple": adjunction_bundle(&format!("{name}.simple"), &s.adjunction), "report": r }),
                );
                dots.push((format!("{name}.Ec"), s.ec_category().clone()));
                dots.push((format!("{name}.Em"), s.em_category().clone()));
                reports.push(r);
            }
            finish(cfg, Value::Object(out), &dots, &reports)
        }
        CatCommand::Little { bundle, adjunction } => {
            let b = load(bundle)?;
            require_valid(bundle, &b)?;
            let mut out = serde_json::Map::new();
            let mut reports = Vec::new();
            let mut dots = Vec::new();
            for (name, a) in select(bundle, &b.adjunctions, "adjunction", adjunction)? {
                let a = prepared(bundle, name, a, cfg)?;
                let l = little_nucleus(&a).map_err(|e| nucleus_failure(bundle, name, e))?;
                let mut r = check_adjunction(&l.adjunction);
                let ev = is_subnuclear(&l.adjunction).map_err(|e| nucleus_failure(bundle, name, e))?;
                if !ev.holds() {
                    r.violation("little nucleus is subnuclear", name.as_str());
                }
                let big = nucleus(&a, NucleusOptions::default()).map_err(|e| nucleus_failure(bundle, name, e))?;
                let again = nucleus(&l.adjunction, NucleusOptions::default()).map_err(|e| nucleus_failure(bundle, name, e))?;
                record_equivalence(&mut r, "nucleus of little ≃ nucleus (coalgebras)", name, &equivalent(again.domain(), big.domain(), cap));
                record_equivalence(&mut r, "nucleus of little ≃ nucleus (algebras)", name, &equivalent(again.codomain(), big.codomain(), cap));
                out.insert(
                    name.clone(),
                    json!({ "little": adjunction_bundle(&format!("{name}.little"), &l.adjunction), "report": r }),
                );
                dots.push((format!("{name}.Karm"), l.karm().clone()));
                dots.push((format!("{name}.Karc"), l.karc().clone()));
                reports.push(r);
            }
            finish(cfg, Value::Object(out), &dots, &reports)
        }
        CatCommand::Karoubi { bundle, category } => {
            let b = load(bundle)?;
            require_valid(bundle, &b)?;
            let mut out = serde_json::Map::new();
            let mut reports = Vec::new();
            let mut dots = Vec::new();
            for (name, c) in select(bundle, &b.categories, "category", category)? {
                let k = karoubi_envelope(c);
                let kc = k.category();
                let mut r = Report::new();
                for e in kc.idempotents() {
                    if let Err(err) = split_idempotent(kc, e) {
                        r.violation("idempotents split in the envelope", format!("{}: {err}", kc.morphism_name(e)));
                    }
                }
                let kk = karoubi_envelope(kc);
                record_equivalence(&mut r, "envelope idempotent", name, &equivalent(kk.category(), kc, cap));
                let mut doc = BundleJson::default();
                let kname = format!("{name}.karoubi");
                doc.categories.insert(kname.clone(), category_to_json(kc));
                doc.functors.insert(format!("{name}.embedding"), functor_to_json(&k.embedding, name, &kname));
                out.insert(name.clone(), json!({ "envelope": doc, "report": r }));
                dots.push((kname, kc.clone()));
                reports.push(r);
            }
            finish(cfg, Value::Object(out), &dots, &reports)
        }
        CatCommand::Equiv { bundle, left, right } => {
            no_dot(cfg, "cat equiv")?;
            let b = load(bundle)?;
            require_valid(bundle, &b)?;
            let get = |n: &String| b.categories.get(n).ok_or_else(|| fail(bundle, format!("no category named `{n}`")));
            let (c, d) = (get(left)?, get(right)?);
            let outcome = equivalent(c, d, cap);
            let mut r = Report::new();
            record_equivalence(&mut r, "equivalent", &format!("{left}, {right}"), &outcome);
            let mut out = json!({ "left": left, "right": right, "report": r });
            out["outcome"] = json!(match &outcome {
                EquivalenceOutcome::Equivalent { .. } => "equivalent",
                EquivalenceOutcome::NotEquivalent => "not equivalent",
                EquivalenceOutcome::Undecided => "undecided",
            });
            if let EquivalenceOutcome::Equivalent { forward, backward, .. } = &outcome {
                out["forward"] = to_value(&functor_to_json(forward, left, right));
                out["backward"] = to_value(&functor_to_json(backward, right, left));
            }
            Ok(json_artifact(&out, status([&r])))
        }
        CatCommand::Street { bundle, monad } => {
            let b = load(bundle)?;
            require_valid(bundle, &b)?;
            // Without explicit monads, use those induced by the adjunctions.
            let induced: BTreeMap<String, Monad> = if b.monads.is_empty() {
                b.adjunctions.iter().map(|(n, a)| (n.clone(), monad_of(a))).collect()
            } else {
                b.monads.clone()
            };
            let mut out = serde_json::Map::new();
            let mut reports = Vec::new();
            let mut dots = Vec::new();
            for (name, m) in select(bundle, &induced, "monad", monad)? {
                let s = check_street_idempotence(m, opts, cap).map_err(|e| nucleus_failure(bundle, name, e))?;
                let mut r = check_monad(&s.once);
                if s.is_undecided() {
                    r.undecided("Street nucleus idempotent", name.as_str());
                } else if !s.holds() {
                    r.violation("Street nucleus idempotent", name.as_str());
                }
                out.insert(
                    name.clone(),
                    json!({ "street": monad_bundle(&format!("{name}.street"), &s.once), "report": r }),
                );
                dots.push((format!("{name}.street"), s.once.carrier().clone()));
                reports.push(r);
            }
            finish(cfg, Value::Object(out), &dots, &reports)
        }
    }
}

fn finish(cfg: &RunConfig, out: Value, dots: &[(String, Arc<FiniteCategory>)], reports: &[Report]) -> Result<Artifact, Failure> {
    let code = status(reports);
    if cfg.format == Format::Dot {
        let refs: Vec<(String, &Arc<FiniteCategory>)> = dots.iter().map(|(n, c)| (n.clone(), c)).collect();
        return Ok(Artifact {
            text: dot_of(&refs),
            status: code,
        });
    }
    Ok(json_artifact(&out, code))
}
