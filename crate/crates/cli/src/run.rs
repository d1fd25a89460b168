use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use framelab::frames::{
    build_w, dowling, dowling_extension_minor, extension_host, extremal_f, geometry, primesubfield_minor,
    witness_techodd, witness_techthree, witness_techtwo, DowlingSpec, ExtensionOutcome, FrameClassParams,
    GeometryKind, Variant, WitnessCheck, WitnessReport,
};
use framelab::gf::{Mat, PrimeField, SubgroupGamma};
use framelab::matroid::{is_isomorphic, IsoMode, RepresentedMatroid};
use framelab::search::{has_minor, max_simple_no_minor, SearchConfig};
use framelab::templates::{
    density_bound_dual, density_bound_primal, enumerate_conforming, is_reduced, reduce, respects, EnumerationLimits,
    FrameTemplate,
};

use crate::args::{Cli, Command, Construct, Format, GammaArgs, Op, TemplateCmd, Verify};
use crate::Failure;

pub struct Output {
    pub text: String,
    pub passed: bool,
}

type R<T> = Result<T, Failure>;

fn emit<T: Serialize>(v: &T, passed: bool) -> R<Output> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Domain(e.to_string()))?;
    Ok(Output { text: text + "\n", passed })
}

fn read_text(path: &Path) -> R<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> R<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Accepts matroid JSON or bare matrix JSON.
fn read_matroid(path: &Path) -> R<RepresentedMatroid> {
    let v: Value = read_json(path)?;
    let parsed = if v.get("kind").is_some() {
        serde_json::from_value::<RepresentedMatroid>(v)
    } else {
        serde_json::from_value::<Mat>(v).map(RepresentedMatroid::new)
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn gamma_of(g: &GammaArgs) -> R<SubgroupGamma> {
    let f = PrimeField::new(g.p)?;
    Ok(match (&g.gamma, g.gamma_size) {
        (Some(els), _) => SubgroupGamma::new(f, els.iter().copied())?,
        (None, Some(k)) => SubgroupGamma::of_order(f, k)?,
        (None, None) => SubgroupGamma::trivial(f),
    })
}

fn parse_range(s: &str) -> R<(u64, u64)> {
    let num = |x: &str| x.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("bad range {s:?}")));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(Failure::Usage(format!("empty range {s:?}")));
            }
            Ok((a, b))
        }
        None => num(s).map(|v| (v, v)),
    }
}

fn parse_variant(s: &str, p: u32) -> R<Variant> {
    match s {
        "plain" => Ok(Variant::Plain),
        "box" => Ok(Variant::Box),
        _ => {
            let x = s
                .strip_prefix("x:")
                .and_then(|v| v.parse::<u32>().ok())
                .ok_or_else(|| Failure::Usage(format!("variant must be plain, box or x:<value>, got {s:?}")))?;
            if x == 0 || x >= p {
                return Err(Failure::Usage(format!("x = {x} is not a nonzero element of GF({p})")));
            }
            Ok(Variant::XExtension { x: x as u8 })
        }
    }
}

/// `pg:DIM:P`, `ag:DIM:P` or a path to a matroid.
fn parse_pattern(s: &str) -> R<RepresentedMatroid> {
    let parts: Vec<&str> = s.split(':').collect();
    if let [kind @ ("pg" | "ag"), dim, p] = parts.as_slice() {
        let dim = dim.parse().map_err(|_| Failure::Usage(format!("bad dimension in {s:?}")))?;
        let p = p.parse().map_err(|_| Failure::Usage(format!("bad modulus in {s:?}")))?;
        let kind = if *kind == "pg" { GeometryKind::Pg } else { GeometryKind::Ag };
        return Ok(geometry(kind, dim, PrimeField::new(p)?)?);
    }
    read_matroid(Path::new(s))
}

fn search_cfg(cli: &Cli) -> SearchConfig {
    let d = SearchConfig::default();
    SearchConfig { max_candidates: cli.budget.unwrap_or(d.max_candidates), ..d }
}

fn limits(cli: &Cli) -> EnumerationLimits {
    EnumerationLimits { ceiling: cli.budget.unwrap_or(EnumerationLimits::default().ceiling) }
}

pub fn run(cli: &Cli) -> R<Output> {
    let tsv_ok = matches!(cli.command, Command::Table { .. } | Command::Info { .. });
    if cli.format == Format::Tsv && !tsv_ok {
        return Err(Failure::Usage("tsv output is available for table and info only".into()));
    }
    match &cli.command {
        Command::Construct(c) => construct(c),
        Command::Info { file } => info(cli, &read_matroid(file)?),
        Command::Op(op) => operate(op),
        Command::Minor { host, pattern } => minor(cli, &read_matroid(host)?, &read_matroid(pattern)?),
        Command::Extremal { p, rank, exclude } => {
            let pattern = parse_pattern(exclude)?;
            emit(&max_simple_no_minor(*p, *rank, &pattern, &search_cfg(cli))?, true)
        }
        Command::Template(t) => template(cli, t),
        Command::Verify(v) => verify(cli, v),
        Command::Table { p, gamma_size, t, n } => table(cli, *p, *gamma_size, t, n),
    }
}

fn construct(c: &Construct) -> R<Output> {
    let m = match c {
        Construct::Dowling { gamma, n, t, variant } => {
            let params = FrameClassParams::new(gamma_of(gamma)?, *t);
            dowling(&DowlingSpec { params, n: *n, variant: parse_variant(variant, gamma.p)? })?
        }
        Construct::Pg { p, dim } => geometry(GeometryKind::Pg, *dim, PrimeField::new(*p)?)?,
        Construct::Ag { p, dim } => geometry(GeometryKind::Ag, *dim, PrimeField::new(*p)?)?,
        Construct::Frame { gamma, n } => RepresentedMatroid::new(build_w(*n, &gamma_of(gamma)?)),
    };
    emit(&m, true)
}

fn info(cli: &Cli, m: &RepresentedMatroid) -> R<Output> {
    let affine = m.is_affine_restriction();
    if cli.format == Format::Tsv {
        let text = format!(
            "size\trank\tepsilon\tsimple\taffine_restriction\n{}\t{}\t{}\t{}\t{}\n",
            m.len(),
            m.rank(),
            m.epsilon(),
            m.is_simple(),
            affine
        );
        return Ok(Output { text, passed: true });
    }
    emit(
        &json!({
            "p": m.field().p(),
            "size": m.len(),
            "rank": m.rank(),
            "epsilon": m.epsilon(),
            "simple": m.is_simple(),
            "affine_restriction": affine,
        }),
        true,
    )
}

fn operate(op: &Op) -> R<Output> {
    let m = match op {
        Op::Delete { file, labels } => read_matroid(file)?.delete(labels)?,
        Op::Contract { file, labels } => read_matroid(file)?.contract(labels)?,
        Op::Dual { file } => read_matroid(file)?.dual(),
        Op::Simplify { file } => read_matroid(file)?.simplify().0,
    };
    emit(&m, true)
}

fn minor(cli: &Cli, host: &RepresentedMatroid, pattern: &RepresentedMatroid) -> R<Output> {
    let cert = has_minor(host, pattern, &search_cfg(cli))?;
    let replayed = match &cert {
        Some(c) => c.verify(host, pattern, IsoMode::Abstract)?,
        None => true,
    };
    let verdict = if cert.is_some() { "minor found" } else { "no minor (exhaustive)" };
    emit(&json!({ "found": cert.is_some(), "verdict": verdict, "replayed": replayed, "certificate": cert }), replayed)
}

fn template(cli: &Cli, t: &TemplateCmd) -> R<Output> {
    match t {
        TemplateCmd::Reduce { file } => {
            let phi: FrameTemplate = read_json(file)?;
            let (out, trace) = reduce(&phi)?;
            let ok = is_reduced(&out);
            emit(&json!({ "template": out, "reduced": ok, "trace": trace.passes }), ok)
        }
        TemplateCmd::Respect { template, matrix } => {
            let phi: FrameTemplate = read_json(template)?;
            let a: Mat = read_json(matrix)?;
            let w = respects(&a, &phi);
            emit(&json!({ "respects": w.is_some(), "witness": w }), true)
        }
        TemplateCmd::Enumerate { file, max_ground, max_rows } => {
            let phi: FrameTemplate = read_json(file)?;
            let e = enumerate_conforming(&phi, *max_ground, *max_rows, &limits(cli))?;
            let members: Vec<Value> = e
                .members
                .iter()
                .map(|m| json!({ "matroid": m.simple, "respecting": m.respecting, "shift": m.shift }))
                .collect();
            emit(&json!({ "count": e.len(), "hosts": e.hosts, "subsets": e.subsets, "members": members }), true)
        }
        TemplateCmd::Density { template, matroid, dual } => {
            let phi: FrameTemplate = read_json(template)?;
            let m = read_matroid(matroid)?;
            let v = if *dual { density_bound_dual(&phi, &m) } else { density_bound_primal(&phi, &m) };
            let holds = v.holds;
            emit(&v, holds)
        }
    }
}

fn report(lemma: &str, params: Value, checks: Vec<WitnessCheck>) -> WitnessReport {
    WitnessReport { lemma: lemma.into(), params, checks, notes: vec![] }
}

fn verify(cli: &Cli, v: &Verify) -> R<Output> {
    let rep = match v {
        Verify::Techtwo { t } => witness_techtwo(*t)?,
        Verify::Techthree { t } => witness_techthree(*t)?,
        Verify::Techodd { p, t } => witness_techodd(*p, *t)?,
        Verify::Primesubfield { gamma, n } => {
            let g = gamma_of(gamma)?;
            let r = primesubfield_minor(*n, &g)?;
            let params = FrameClassParams::new(g.clone(), 0);
            let host = dowling(&DowlingSpec { params, n: n + 1, variant: Variant::Box })?;
            let ok = r.certificate.verify(&host, &RepresentedMatroid::new(r.pattern.clone()), IsoMode::Represented)?;
            report(
                "primesubfield",
                json!({ "p": gamma.p, "gamma": g.elements(), "n": n }),
                vec![WitnessCheck {
                    claim: "certificate replays on DG^box(n+1, Γ) to DG^(x)(n, Γ)".into(),
                    computed: json!({ "outcome": r.outcome, "certificate": r.certificate }),
                    verdict: ok,
                }],
            )
        }
        Verify::DowlingExtension { gamma, t, m, n, samples } => dowling_extension(cli, gamma, *t, *m, *n, *samples)?,
        Verify::HellerSweep => heller_sweep(cli)?,
    };
    let passed = rep.passed();
    emit(&rep, passed)
}

fn dowling_extension(cli: &Cli, gamma: &GammaArgs, t: usize, m: usize, n: usize, samples: usize) -> R<WitnessReport> {
    let g = gamma_of(gamma)?;
    let f = g.field();
    let params = FrameClassParams::new(g.clone(), t);
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let (mut done, mut replayed, mut x_count, mut box_count) = (0usize, 0usize, 0usize, 0usize);
    let mut failures: Vec<Value> = Vec::new();
    let mut attempts = 0usize;
    while done < samples {
        attempts += 1;
        if attempts > samples.saturating_mul(1000).max(1000) {
            return Err(Failure::Domain("could not sample simple extensions".into()));
        }
        let w: Vec<u8> = (0..n).map(|_| if rng.gen_bool(0.3) { rng.gen_range(1..f.p()) } else { 0 }).collect();
        let host = extension_host(n, &params, &w)?;
        let hm = RepresentedMatroid::new(host.clone());
        if !hm.is_simple() {
            continue;
        }
        done += 1;
        match dowling_extension_minor(&host, "e", m, &params) {
            Ok(r) => {
                let pattern = RepresentedMatroid::new(r.pattern.clone());
                if r.certificate.verify(&hm, &pattern, IsoMode::Represented)? {
                    replayed += 1;
                } else {
                    failures.push(json!({ "w": w, "reason": "certificate does not replay" }));
                }
                match r.outcome {
                    ExtensionOutcome::XExtension { .. } => x_count += 1,
                    ExtensionOutcome::Box => box_count += 1,
                }
            }
            Err(e) if replayed == 0 && failures.is_empty() => return Err(e.into()),
            Err(e) => failures.push(json!({ "w": w, "reason": e.to_string() })),
        }
    }
    Ok(report(
        "dowlingextension",
        json!({ "p": gamma.p, "gamma": g.elements(), "t": t, "m": m, "n": n, "samples": samples, "seed": cli.seed }),
        vec![WitnessCheck {
            claim: "every sampled simple extension yields a replaying x- or box-certificate".into(),
            computed: json!({ "replayed": replayed, "x": x_count, "box": box_count, "failures": failures }),
            verdict: failures.is_empty() && replayed == samples,
        }],
    ))
}

fn heller_sweep(cli: &Cli) -> R<WitnessReport> {
    let f = PrimeField::new(2)?;
    let cfg = search_cfg(cli);
    let fano = geometry(GeometryKind::Pg, 2, f)?;
    let ag3 = geometry(GeometryKind::Ag, 3, f)?;
    let plain = |n| {
        dowling(&DowlingSpec { params: FrameClassParams::new(SubgroupGamma::trivial(f), 0), n, variant: Variant::Plain })
    };
    let mut checks = Vec::new();
    for (rank, pattern, name, expected, extremal) in
        [(3, &fano, "PG(2,2)", 10 - 4, Some(plain(3)?)), (4, &fano, "PG(2,2)", 10, Some(plain(4)?)), (4, &ag3, "AG(3,2)", 11, None)]
    {
        let r = max_simple_no_minor(2, rank, pattern, &cfg)?;
        let unique = match &extremal {
            Some(e) => r.extremal.len() == 1 && is_isomorphic(&r.extremal[0], e, IsoMode::Abstract).is_some(),
            None => true,
        };
        checks.push(WitnessCheck {
            claim: format!("largest simple rank-{rank} binary matroid without {name} has {expected} elements"),
            computed: json!({
                "max_size": r.max_size,
                "max_size_at_most": r.max_size_at_most,
                "extremal_classes": r.extremal.len(),
                "exhaustive": r.exhaustive,
            }),
            verdict: r.max_size == Some(expected) && r.exhaustive && unique,
        });
    }
    Ok(report("heller-sweep", json!({ "p": 2 }), checks))
}

fn table(cli: &Cli, p: u64, g: u64, t: &str, n: &str) -> R<Output> {
    let (t0, t1) = parse_range(t)?;
    let (n0, n1) = parse_range(n)?;
    let cell = |t: u64, n: u64| -> R<Option<u64>> { if n < t { Ok(None) } else { Ok(Some(extremal_f(p, g, t, n)?)) } };
    if cli.format == Format::Tsv {
        let mut text = String::from("t");
        for n in n0..=n1 {
            text.push_str(&format!("\tn={n}"));
        }
        text.push('\n');
        for t in t0..=t1 {
            text.push_str(&t.to_string());
            for n in n0..=n1 {
                text.push('\t');
                if let Some(v) = cell(t, n)? {
                    text.push_str(&v.to_string());
                }
            }
            text.push('\n');
        }
        return Ok(Output { text, passed: true });
    }
    let mut rows = Vec::new();
    for t in t0..=t1 {
        for n in n0..=n1 {
            if let Some(v) = cell(t, n)? {
                rows.push(json!({ "t": t, "n": n, "size": v }));
            }
        }
    }
    emit(&json!({ "p": p, "gamma_size": g, "rows": rows }), true)
}
