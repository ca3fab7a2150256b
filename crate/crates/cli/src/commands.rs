use std::collections::BTreeSet;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::json;

use qcat_core::anodyne::{lemma8_certificate, shuffles, theorem45_certificate, verify_certificate};
use qcat_core::category::{example40_nerve_equivalence, is_equivalence_of_categories, nerve};
use qcat_core::corpus::{corpus_categories, corpus_complexes, write_corpus};
use qcat_core::io::{
    cat_to_json, cert_from_json, cert_to_json, fun_from_json, read_json, sset_from_json, sset_to_json, to_json_string,
    CertJson, FunJson, PcatJson, SsetJson,
};
use qcat_core::pathcat::{bounded_hom_classes, bounded_table, counit_check, hom_sets, path_category};
use qcat_core::quasi::{
    certify_quasi_category, core_with, ho_category, quasi_iso_edges, saturation_step, tau0_with, CertVerdict,
    QuasiCategory,
};
use qcat_core::sset::SimplicialSet;
use qcat_core::{Error, Verdict};

use crate::report::RunReport;
use crate::{Cli, Command, Opts};

/// Word bound used for path categories with loops when none is given.
const DEFAULT_MAX_LEN: usize = 4;
const DEFAULT_SATURATION_DIM: usize = 2;
/// Nerves in corpus runs are stored to this dimension.
const CORPUS_NERVE_BOUND: usize = 3;

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let report = dispatch(&cli.command, &cli.opts)?;
    let text = to_json_string(&report)?;
    match &cli.opts.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::from(report.exit_code()))
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn load_sset(path: &Path) -> Result<Arc<SimplicialSet>> {
    let j: SsetJson = read_json(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Arc::new(sset_from_json(&j).with_context(|| format!("parsing {}", path.display()))?))
}

/// A certificate file is either the bare certificate or a `cert-build`
/// report wrapping one.
#[derive(Deserialize)]
#[serde(untagged)]
enum CertInput {
    Bare(CertJson),
    Report { result: CertJson },
}

pub fn dispatch(command: &Command, opts: &Opts) -> Result<RunReport> {
    match command {
        Command::Pathcat { input, homsets } => pathcat(input, *homsets, opts),
        Command::Homset { input, x, y } => homset(input, *x, *y, opts),
        Command::Certify { input } => certify(input),
        Command::Core { input } => core(input),
        Command::Ho { input } => ho(input),
        Command::Tau0 { source, target } => tau0(source, target, opts),
        Command::Saturate { input } => saturate(input, opts),
        Command::Shuffles { r, s } => shuffle_list(*r, *s),
        Command::CertBuild { theorem45, lemma8 } => cert_build(theorem45.as_deref(), lemma8.as_deref(), opts),
        Command::CertVerify { input } => cert_verify(input),
        Command::Equiv40 { input } => equiv40(input),
        Command::CorpusRun { write } => corpus_run(write.as_deref(), opts),
    }
}

fn pathcat(input: &Path, homsets: bool, opts: &Opts) -> Result<RunReport> {
    let x = load_sset(input)?;
    let p = path_category(&x);
    let mut report = RunReport::new("pathcat", vec![display(input)]);
    report
        .count("objects", p.num_objects())
        .count("generators", p.generators.len())
        .count("relations", p.relations.len());
    let table = if !homsets {
        None
    } else if p.is_loop_free() {
        Some(hom_sets(&p)?)
    } else {
        Some(bounded_table(&p, opts.max_len.unwrap_or(DEFAULT_MAX_LEN))?)
    };
    if let Some(t) = &table {
        report.count("hom_classes", t.entries.iter().map(|e| e.len()).sum());
    }
    report.result = serde_json::to_value(PcatJson { presentation: p, homsets: table })?;
    Ok(report)
}

fn homset(input: &Path, x: usize, y: usize, opts: &Opts) -> Result<RunReport> {
    let complex = load_sset(input)?;
    let p = path_category(&complex);
    if x >= p.num_objects() || y >= p.num_objects() {
        bail!("objects are numbered 0..{}", p.num_objects());
    }
    let entry = if p.is_loop_free() {
        hom_sets(&p)?.entry(x, y).cloned()
    } else {
        Some(bounded_hom_classes(&p, x, y, opts.max_len.unwrap_or(DEFAULT_MAX_LEN))?)
    };
    let mut report = RunReport::new("homset", vec![display(input), x.to_string(), y.to_string()]);
    report.count("classes", entry.as_ref().map_or(0, |e| e.len()));
    report.result = match entry {
        Some(e) => serde_json::to_value(e)?,
        None => json!({ "src": x, "tgt": y, "classes": [], "partial": false }),
    };
    Ok(report)
}

fn certify(input: &Path) -> Result<RunReport> {
    let x = load_sset(input)?;
    let cert = certify_quasi_category(&x)?;
    let mut report = RunReport::new("certify", vec![display(input)]);
    report.verdict = Some(cert_verdict(cert.verdict));
    report.count("horns_checked", cert.horns_checked);
    report.result = serde_json::to_value(cert)?;
    Ok(report)
}

fn cert_verdict(v: CertVerdict) -> Verdict {
    match v {
        CertVerdict::QuasiCategory => Verdict::True,
        CertVerdict::Counterexample => Verdict::False,
        CertVerdict::Inconclusive => Verdict::Inconclusive,
    }
}

/// Certifies `x`, or fills in a report explaining why it could not.
fn certified(x: Arc<SimplicialSet>, report: &mut RunReport) -> Result<Option<QuasiCategory>> {
    let cert = certify_quasi_category(&x)?;
    if cert.verdict == CertVerdict::QuasiCategory {
        return Ok(Some(QuasiCategory::certify(x)?));
    }
    report.verdict = Some(cert_verdict(cert.verdict));
    report.result = json!({ "certification": cert });
    Ok(None)
}

fn core(input: &Path) -> Result<RunReport> {
    let mut report = RunReport::new("core", vec![display(input)]);
    let Some(q) = certified(load_sset(input)?, &mut report)? else {
        return Ok(report);
    };
    let table = quasi_iso_edges(&q);
    let j = core_with(&q, &table)?;
    report.verdict = Some(Verdict::True);
    report.count("quasi_iso_edges", table.len()).count("core_simplices", j.complex.len());
    report.result = json!({
        "core": sset_to_json(&j.complex),
        "ambient_ids": j.ambient_ids(),
        "witnesses": table.witnesses,
    });
    Ok(report)
}

fn ho(input: &Path) -> Result<RunReport> {
    let mut report = RunReport::new("ho", vec![display(input)]);
    let Some(q) = certified(load_sset(input)?, &mut report)? else {
        return Ok(report);
    };
    let h = ho_category(&q)?;
    report.verdict = Some(Verdict::from_bool(h.filler_independent && h.homotopy_coherent));
    report.count("objects", h.category.num_objects()).count("arrows", h.category.num_arrows());
    report.result = json!({
        "category": cat_to_json(&h.category),
        "classes": h.classes,
        "filler_independent": h.filler_independent,
        "homotopy_coherent": h.homotopy_coherent,
    });
    Ok(report)
}

fn tau0(source: &Path, target: &Path, opts: &Opts) -> Result<RunReport> {
    let k = load_sset(source)?;
    let x = load_sset(target)?;
    let mut report = RunReport::new("tau0", vec![display(source), display(target)]);
    match tau0_with(&k, &x, opts.limit) {
        Ok((fc, t)) => {
            report.verdict = Some(Verdict::True);
            report.count("classes", t.len()).count("maps", fc.complex.vertices().len());
            report.result = json!({ "classes": t.classes, "function_complex_counts": fc.complex.counts() });
        }
        Err(Error::NotCertified) => {
            report.verdict = Some(Verdict::False);
            report.result = json!({ "not_certified": "hom(K, X) is not a quasi-category" });
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

fn saturate(input: &Path, opts: &Opts) -> Result<RunReport> {
    let x = load_sset(input)?;
    let s = saturation_step(&x, opts.dim_bound.unwrap_or(DEFAULT_SATURATION_DIM))?;
    let mut report = RunReport::new("saturate", vec![display(input)]);
    report
        .count("horns", s.report.horns.iter().sum())
        .count("attached", s.report.attached.iter().sum());
    report.result = json!({ "report": s.report, "complex": sset_to_json(&s.complex) });
    Ok(report)
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn shuffle_list(r: usize, s: usize) -> Result<RunReport> {
    let list = shuffles(r, s);
    let expected = binomial(r + s, r);
    let mut report = RunReport::new("shuffles", vec![r.to_string(), s.to_string()]);
    report.verdict = Some(Verdict::from_bool(list.len() as u128 == expected));
    report.count("shuffles", list.len());
    report.result = json!({
        "binomial": expected,
        "paths": list.iter().map(|p| &p.points).collect::<Vec<_>>(),
    });
    Ok(report)
}

fn cert_build(theorem45: Option<&[usize]>, lemma8: Option<&[usize]>, opts: &Opts) -> Result<RunReport> {
    let (cert, inputs) = match (theorem45, lemma8) {
        (Some(&[n, k, m]), None) => (theorem45_certificate(n, k, m)?, vec!["theorem45".into(), n.to_string(), k.to_string(), m.to_string()]),
        (None, Some([n, faces @ ..])) => {
            let set: BTreeSet<usize> = faces.iter().copied().collect();
            let mut inputs = vec!["lemma8".to_string(), n.to_string()];
            inputs.extend(faces.iter().map(|f| f.to_string()));
            (lemma8_certificate(*n, &set)?, inputs)
        }
        _ => bail!("give exactly one of --theorem45 N K M or --lemma8 N S..."),
    };
    let mut report = RunReport::new("cert-build", inputs);
    report.count("steps", cert.steps.len()).count("target_simplices", cert.target.len());
    if opts.verify {
        let v = verify_certificate(&cert);
        report.verdict = Some(Verdict::from_bool(v.ok));
        if let Some(reason) = v.reason {
            eprintln!("verification failed: {reason}");
        }
    }
    report.result = serde_json::to_value(cert_to_json(&cert))?;
    Ok(report)
}

fn cert_verify(input: &Path) -> Result<RunReport> {
    let j = match read_json::<CertInput>(input).with_context(|| format!("reading {}", input.display()))? {
        CertInput::Bare(c) | CertInput::Report { result: c } => c,
    };
    let cert = cert_from_json(&j)?;
    let v = verify_certificate(&cert);
    let mut report = RunReport::new("cert-verify", vec![display(input)]);
    report.verdict = Some(Verdict::from_bool(v.ok));
    report.count("steps_replayed", v.steps_replayed);
    report.result = serde_json::to_value(v)?;
    Ok(report)
}

fn equiv40(input: &Path) -> Result<RunReport> {
    let j: FunJson = read_json(input).with_context(|| format!("reading {}", input.display()))?;
    let f = fun_from_json(&j)?;
    let e = example40_nerve_equivalence(&f)?;
    let direct = is_equivalence_of_categories(&f);
    let mut report = RunReport::new("equiv40", vec![display(input)]);
    report.verdict = Some(Verdict::from_bool(e.equivalent));
    report.result = json!({ "equivalent": e.equivalent, "shapes": e.shapes, "direct_check": direct });
    Ok(report)
}

fn corpus_run(write: Option<&Path>, opts: &Opts) -> Result<RunReport> {
    let mut inputs = Vec::new();
    if let Some(dir) = write {
        write_corpus(dir)?;
        inputs.push(display(dir));
    }
    let max_len = opts.max_len.unwrap_or(2);
    let mut all = true;
    let mut categories = Vec::new();
    for c in corpus_categories() {
        let counit = counit_check(&c.category, max_len)?.verdict;
        let b = nerve(&c.category, CORPUS_NERVE_BOUND);
        let nerve_verdict = cert_verdict(certify_quasi_category(&b.complex)?.verdict);
        all &= counit.is_true() && nerve_verdict.is_true();
        categories.push(json!({ "name": c.name, "counit": counit, "nerve_quasi_category": nerve_verdict }));
    }
    let mut complexes = Vec::new();
    for x in corpus_complexes()? {
        let cert = certify_quasi_category(&x.complex)?;
        complexes.push(json!({
            "name": x.name,
            "counts": x.complex.counts(),
            "quasi_category": cert_verdict(cert.verdict),
        }));
    }
    let mut report = RunReport::new("corpus-run", inputs);
    report.verdict = Some(Verdict::from_bool(all));
    report.count("categories", categories.len()).count("complexes", complexes.len());
    report.result = json!({ "max_len": max_len, "categories": categories, "complexes": complexes });
    Ok(report)
}
