use std::fs::OpenOptions;
use std::io::Write;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::json;
use surfcode::bounds::{optimal_g1_count, CubicClass};
use surfcode::code::{
    self as code, min_distance, weight_enumerator, DistanceOptions, DistanceResult, LinearCode,
    Strategy,
};
use surfcode::families::{
    classify_cubic, geometric_witness_dp6, random_cubic_search, SearchConfig,
};
use surfcode::format::write_surface;
use surfcode::geometry::DEFAULT_POINT_BUDGET;
use surfcode::report::CodeReport;
use surfcode::verify::{verify_paper as run_rows, VerifyOptions};

use crate::config::Common;
use crate::source::{self, Loaded};
use crate::{DistanceFlags, Failed, InputError};

const DEFAULT_BUDGET: u128 = 1_000_000_000;

fn emit(c: &Common, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match &c.out {
        Some(p) => {
            std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))
        }
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn options(c: &Common, flags: &DistanceFlags) -> Result<DistanceOptions> {
    let strategy: Strategy = c.strategy.as_deref().unwrap_or("auto").parse()?;
    Ok(DistanceOptions {
        strategy,
        budget: c.budget.unwrap_or(DEFAULT_BUDGET),
        seed: c.seed.unwrap_or(0),
        random_sets: flags.random_sets,
        ..Default::default()
    })
}

fn with_hint(
    l: &Loaded,
    s: u32,
    flags: &DistanceFlags,
    mut opts: DistanceOptions,
) -> Result<DistanceOptions> {
    if flags.witness {
        match (&l.orbit, s) {
            (Some(o), 2) => opts.hint = Some(geometric_witness_dp6(o, &l.surface)?.word),
            _ => bail!(InputError(
                "--witness needs --family del-pezzo-6 with --degree 2".into()
            )),
        }
    }
    Ok(opts)
}

fn code_and_distance(
    c: &Common,
    flags: &DistanceFlags,
) -> Result<(Loaded, LinearCode, DistanceResult, DistanceOptions)> {
    let l = source::load(c)?;
    let s = c.degree.unwrap_or(1);
    let code = code::build_code(&l.surface, s)?.with_surface_ref(l.reference.clone());
    let opts = with_hint(&l, s, flags, options(c, flags)?)?;
    let d = min_distance(&code, &opts)?;
    Ok((l, code, d, opts))
}

pub fn build(c: &Common, flags: &DistanceFlags, enumerator: bool, generator: bool) -> Result<()> {
    let (l, code, d, opts) = code_and_distance(c, flags)?;
    let d1 = if code.degree().unwrap_or(1) >= 2 {
        let c1 = code::build_code(&l.surface, 1)?;
        let r = min_distance(
            &c1,
            &DistanceOptions {
                hint: None,
                ..opts.clone()
            },
        )?;
        Some((r.lower as u64, r.exact))
    } else {
        None
    };
    let mut report = CodeReport::new(&code, &d, l.surface.sectional_genus(), d1);
    if enumerator {
        report = report.with_enumerator(&weight_enumerator(&code, opts.budget)?);
    }
    if generator {
        report = report.with_generator(&code);
    }
    eprintln!("{}  {}  via {}", l.reference, report.params(), d.method);
    emit(c, &report)
}

pub fn min_dist(c: &Common, flags: &DistanceFlags) -> Result<()> {
    let (l, code, d, _) = code_and_distance(c, flags)?;
    eprintln!(
        "{}  n={} k={} d in [{}, {}] via {}",
        l.reference,
        code.len(),
        code.dimension(),
        d.lower,
        d.upper,
        d.method
    );
    emit(
        c,
        &json!({
            "n": code.len(),
            "k": code.dimension(),
            "s": code.degree(),
            "d_lower": d.lower,
            "d_upper": d.upper,
            "exact": d.exact,
            "method": d.method,
            "work": d.work,
            "witness": d.witness,
        }),
    )
}

pub fn search(
    c: &Common,
    target: &str,
    samples: u64,
    start: u64,
    screen_degree: u32,
) -> Result<()> {
    let target: CubicClass = target.parse()?;
    let family = c.family.as_deref().unwrap_or("cayley-salmon");
    match family {
        "cayley-salmon" if target != CubicClass::C12 => {
            bail!(InputError(
                "the Cayley-Salmon sampler only yields C12".into()
            ))
        }
        "random-cubic" if target == CubicClass::C12 => {
            bail!(InputError("use --family cayley-salmon for C12".into()))
        }
        "cayley-salmon" | "random-cubic" => {}
        other => bail!(InputError(format!("cannot search family {other:?}"))),
    }
    let field = source::field(c)?;
    let seed = c.seed.unwrap_or(0);
    let budget = c.budget.unwrap_or(DEFAULT_POINT_BUDGET);
    let s = c.degree.unwrap_or(1);
    let hits = random_cubic_search(
        &field,
        &SearchConfig {
            target,
            seed,
            start,
            samples,
            screen_degree,
            budget,
        },
    )?;
    let mut out: Box<dyn Write> = match &c.out {
        Some(p) => Box::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .with_context(|| format!("opening {}", p.display()))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    eprintln!(
        "{:>9}  {:>5}  {:<24}  {:<16}  alarm",
        "substream", "class", "N_r", "code"
    );
    for h in &hits {
        let code = code::build_code(&h.surface, s)?;
        let d = min_distance(
            &code,
            &DistanceOptions {
                budget: c.budget.unwrap_or(DEFAULT_BUDGET),
                seed,
                ..Default::default()
            },
        )?;
        let r = CodeReport::new(&code, &d, h.surface.sectional_genus(), None);
        let g = &h.surface.generators()[0];
        let coefficients: Vec<(Vec<u32>, u32)> = g
            .terms()
            .iter()
            .map(|&(m, e)| (m.exponents(g.nvars()), e.0))
            .collect();
        let row = json!({
            "seed": seed,
            "substream": h.substream,
            "field": field.spec_string(),
            "coefficients": coefficients,
            "surface": write_surface(&h.surface),
            "classification": h.classification,
            "N_r": h.classification.observed,
            "smoothness": h.smoothness,
            "code": {
                "n": r.n, "k": r.k, "s": r.s,
                "d_lower": r.d_lower, "d_upper": r.d_upper, "d_exact": r.d_exact,
                "method": r.method,
            },
            "bounds": {
                "singleton": r.bounds.singleton,
                "d1": r.bounds.d1_verdict,
                "ns_alarm": r.bounds.ns_alarm,
            },
        });
        writeln!(out, "{}", serde_json::to_string(&row)?)?;
        eprintln!(
            "{:>9}  {:>5}  {:<24}  {:<16}  {}",
            h.substream,
            target,
            format!("{:?}", h.classification.observed),
            r.params(),
            r.bounds.ns_alarm.map_or("-".into(), |a| a.to_string())
        );
    }
    out.flush()?;
    eprintln!(
        "{} hit(s) in substreams {start}..{}",
        hits.len(),
        start + samples
    );
    Ok(())
}

pub fn classify(c: &Common, max_degree: u32) -> Result<()> {
    let l = source::load(c)?;
    let budget = c.budget.unwrap_or(DEFAULT_POINT_BUDGET);
    let res = classify_cubic(&l.surface, max_degree, budget)?;
    let smooth = l.surface.singular_points(max_degree, budget)?.verdict();
    eprintln!(
        "{}  {:?}  N_r={:?}  {smooth}",
        l.reference, res.verdict, res.observed
    );
    emit(
        c,
        &json!({ "surface_ref": l.reference, "classification": res, "smoothness": smooth }),
    )
}

pub fn scan_sections(c: &Common) -> Result<()> {
    let l = source::load(c)?;
    let scan = l.surface.section_scan(c.budget.unwrap_or(u128::MAX))?;
    let genus = l.surface.sectional_genus();
    let optimal = match genus {
        Some(1) => {
            let g = optimal_g1_count(l.surface.field().order())?;
            Some(
                json!({ "value": g.value, "verified": g.verified, "attained": scan.max as u64 == g.value }),
            )
        }
        _ => None,
    };
    eprintln!(
        "{}  max section count {} over {} hyperplanes",
        l.reference, scan.max, scan.hyperplanes
    );
    emit(
        c,
        &json!({ "surface_ref": l.reference, "sectional_genus": genus, "scan": scan, "optimal_genus_one": optimal }),
    )
}

pub fn verify_paper(c: &Common, slow: bool) -> Result<()> {
    let mut opts = VerifyOptions::default();
    if slow {
        opts.budget = 100_000_000_000;
    }
    if let Some(b) = c.budget {
        opts.budget = b;
    }
    if let Some(s) = c.seed {
        opts.seed = s;
    }
    let rows = run_rows(&opts);
    eprintln!(
        "{:<18}  {:<28}  {:<40}  result",
        "claim", "expected", "computed"
    );
    for r in &rows {
        eprintln!(
            "{:<18}  {:<28}  {:<40}  {}",
            r.id,
            r.expected,
            r.computed,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    emit(c, &rows)?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        bail!(Failed(failed));
    }
    Ok(())
}
