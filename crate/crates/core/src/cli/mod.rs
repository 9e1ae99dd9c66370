//! Command-line front end. Every subcommand is a thin adapter over the
//! library.

pub mod args;

use std::fs;
use std::path::Path;

use clap::Parser;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::filler::{fill, verify_filling, CayleyComplexContext, FillingCertificate, DEFAULT_MAX_CELLS};
use crate::geometry::{probe_lemma, FreeAbelian, GroupOracle, LemmaConstants, Raag};
use crate::hypothesis::{all_relators, check_hypothesis, classify_ends, TSpec};
use crate::mcg_catalog::{classify_mcg, default_triples, gervais_genus3, MCGSignature};
use crate::presentations::{Presentation, PresentationJson};
use crate::vankampen::{build_diagram, export, grid_letters_of_loop, labeled_grid, BuildOptions, ProductJson, VanKampenDiagram};

pub use args::{Cli, Command, Source};

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            return Outcome {
                code: if shown { 0 } else { 2 },
                stdout: if shown { e.to_string() } else { String::new() },
                stderr: if shown {
                    String::new()
                } else {
                    error_json("usage", &e.to_string())
                },
            };
        }
    };
    match execute(cli.command) {
        Ok((code, stdout, stderr)) => Outcome { code, stdout, stderr },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: error_json(error_kind(&e), &e.to_string()),
        },
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::BallOverflow { .. } | Error::CellCap { .. } => "resource",
        Error::Io(_) => "io",
        Error::Json(_) | Error::Parse(_) => "parse",
        Error::Filling { .. } => "filling",
        _ => "input",
    }
}

fn error_json(kind: &str, msg: &str) -> String {
    format!("{}\n", json!({ "error": kind, "message": msg.trim() }))
}

fn pretty<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn emit(text: String, out: Option<&Path>) -> Result<String> {
    match out {
        Some(p) => {
            fs::write(p, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

pub fn oracle(sel: &str) -> Result<Box<dyn GroupOracle>> {
    Ok(match sel {
        "z2" => Box::new(FreeAbelian::standard(2)),
        "z3" => Box::new(FreeAbelian::standard(3)),
        "z4" => Box::new(FreeAbelian::standard(4)),
        "f2xz3" => Box::new(Raag::f2_z3()),
        s => match s.strip_prefix("raag:") {
            Some(f) => Box::new(Raag::from_file(Path::new(f))?),
            None => return Err(Error::InvalidInput(format!("unknown group `{s}`"))),
        },
    })
}

fn presentation(src: &Source) -> Result<Presentation> {
    if let Some(name) = &src.preset {
        return match name.as_str() {
            "gervais3" => gervais_genus3(default_triples()),
            _ => Err(Error::InvalidInput(format!("unknown preset `{name}`"))),
        };
    }
    if let Some(f) = &src.presentation {
        let j: PresentationJson = serde_json::from_str(&fs::read_to_string(f)?)?;
        return Presentation::from_json(&j);
    }
    if let Some(g) = &src.group {
        return Ok(oracle(g)?.presentation().clone());
    }
    Err(Error::InvalidInput("one of --preset, --presentation, --group is required".into()))
}

/// `--t` members, defaulting to `x,y,z`.
fn t_spec(p: &Presentation, t: Option<&str>) -> Result<TSpec> {
    let names: Vec<&str> = t.unwrap_or("x,y,z").split(',').map(str::trim).collect();
    TSpec::from_names(p, &names)
}

fn parse_m_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidInput(format!("bad --m `{s}`"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.parse().map_err(|_| bad())?]),
    }
}

fn diagram_for(p: &Presentation, lp: Option<&str>, product: Option<&Path>) -> Result<VanKampenDiagram> {
    if let Some(f) = product {
        let j: ProductJson = serde_json::from_str(&fs::read_to_string(f)?)?;
        let d = build_diagram(p, &j.resolve(p)?, BuildOptions::default())?;
        if let Some(l) = lp {
            if p.parse_word(l)?.reduce() != d.boundary_word() {
                return Err(Error::InvalidInput("product boundary differs from --loop".into()));
            }
        }
        return Ok(d);
    }
    let l = lp.ok_or_else(|| Error::InvalidInput("--loop or --product is required".into()))?;
    let w = p.parse_word(l)?;
    let (h, v) = grid_letters_of_loop(&w)
        .ok_or_else(|| Error::InvalidInput("loop is not a grid boundary; supply --product".into()))?;
    labeled_grid(p, &h, &v)
}

fn verdict_summary(c: &FillingCertificate) -> serde_json::Value {
    let v = &c.verdict;
    json!({
        "pass": v.pass,
        "collapse": v.collapse.ok,
        "sphere": v.sphere.ok,
        "relators": v.relators.ok,
        "avoidance": v.avoidance.ok,
        "n": c.n,
        "counts": c.counts,
        "min_boundary_distance": v.min_boundary_distance,
        "m": c.m,
    })
}

fn failed_checks(c: &FillingCertificate) -> String {
    let v = &c.verdict;
    let mut out = String::new();
    for (name, r) in [
        ("collapse", &v.collapse),
        ("sphere", &v.sphere),
        ("relators", &v.relators),
        ("avoidance", &v.avoidance),
    ] {
        if !r.ok {
            out.push_str(&error_json(name, &r.details.join("; ")));
        }
    }
    out
}

fn max_cells() -> Result<usize> {
    match std::env::var("SCINF_MAX_CELLS") {
        Ok(s) => s
            .parse()
            .ok()
            .filter(|&n: &usize| n > 0)
            .ok_or_else(|| Error::InvalidInput(format!("bad SCINF_MAX_CELLS `{s}`"))),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}

fn execute(cmd: Command) -> Result<(i32, String, String)> {
    match cmd {
        Command::Check { source, t, relators } => {
            let p = presentation(&source)?;
            let t = t_spec(&p, Some(&t))?;
            let rs = relators.unwrap_or_else(|| all_relators(&p));
            match check_hypothesis(&p, &t, &rs) {
                Ok(c) => Ok((0, pretty(&c.to_json(&p))?, String::new())),
                Err(f) => Ok((1, pretty(&json!({ "failure": f.describe(&p) }))?, String::new())),
            }
        }
        Command::Ends { source, t } => {
            let p = presentation(&source)?;
            let t = t_spec(&p, Some(&t))?;
            if let Err(f) = check_hypothesis(&p, &t, &all_relators(&p)) {
                return Ok((1, pretty(&json!({ "failure": f.describe(&p) }))?, String::new()));
            }
            let e = classify_ends(&p, &t);
            let free = e.free_letter.map(|g| p.gen_name(g).to_string());
            Ok((0, pretty(&json!({ "kind": e.kind, "free_letter": free }))?, String::new()))
        }
        Command::Gervais { genus, triples, out } => {
            if genus != 3 {
                return Err(Error::InvalidInput(format!("genus {genus} is not supported")));
            }
            let tr: Vec<(u8, u8, u8)> = match triples {
                Some(f) => serde_json::from_str(&fs::read_to_string(f)?)?,
                None => default_triples(),
            };
            let p = gervais_genus3(tr)?;
            Ok((0, emit(pretty(&p.to_json())?, out.as_deref())?, String::new()))
        }
        Command::McgClassify { g, r, s } => {
            let c = classify_mcg(MCGSignature { g, r, s });
            Ok((0, pretty(&c)?, String::new()))
        }
        Command::Constants { group, m, t, .. } => {
            let o = oracle(&group)?;
            let p = o.presentation();
            let t = t_spec(p, t.as_deref())?;
            let w = p.relators().iter().map(|r| r.len()).max().unwrap_or(0);
            let c = LemmaConstants::new(o.as_ref(), &t.members, w);
            let rows: Vec<_> = parse_m_range(&m)?.into_iter().map(|m| c.row(m)).collect();
            Ok((0, pretty(&rows)?, String::new()))
        }
        Command::Probe { lemma, group, trials, m, seed, t } => {
            if !(1..=4).contains(&lemma) {
                return Err(Error::InvalidInput(format!("no lemma {lemma}")));
            }
            let o = oracle(&group)?;
            let p = o.presentation();
            let t = t_spec(p, t.as_deref())?;
            let w = p.relators().iter().map(|r| r.len()).max().unwrap_or(0);
            let c = LemmaConstants::new(o.as_ref(), &t.members, w);
            let r = probe_lemma(&c, lemma, trials, m, seed)?;
            Ok((i32::from(r.violations > 0), pretty(&r)?, String::new()))
        }
        Command::Diagram { group, r#loop, product, out } => {
            let o = oracle(&group)?;
            let p = o.presentation();
            let d = diagram_for(p, r#loop.as_deref(), product.as_deref())?;
            Ok((0, emit(pretty(&export::to_json(p, &d))?, out.as_deref())?, String::new()))
        }
        Command::Fill { group, r#loop, product, base, m, t, cert } => {
            let o = oracle(&group)?;
            let p = o.presentation();
            let ctx = CayleyComplexContext::new(o.as_ref(), t_spec(p, t.as_deref())?, m)?;
            let d = diagram_for(p, r#loop.as_deref(), product.as_deref())?;
            let c = fill(&ctx, &d, &p.parse_word(&base)?, max_cells()?)?;
            let code = i32::from(!c.verdict.pass);
            let stdout = match cert {
                Some(f) => {
                    fs::write(f, pretty(&c)?)?;
                    pretty(&verdict_summary(&c))?
                }
                None => pretty(&c)?,
            };
            Ok((code, stdout, failed_checks(&c)))
        }
        Command::Verify { cert } => {
            let c: FillingCertificate = serde_json::from_str(&fs::read_to_string(cert)?)?;
            let v = verify_filling(&c)?;
            let checked = FillingCertificate { verdict: v, ..c };
            let code = i32::from(!checked.verdict.pass);
            Ok((code, pretty(&checked.verdict)?, failed_checks(&checked)))
        }
        Command::Render { group, diagram, format, out } => {
            let o = oracle(&group)?;
            let p = o.presentation();
            let j = serde_json::from_str(&fs::read_to_string(diagram)?)?;
            let d = export::from_json(p, &j)?;
            let text = match format.as_str() {
                "svg" => export::to_svg(p, &d),
                "dot" => export::to_dot(p, &d),
                f => return Err(Error::InvalidInput(format!("unknown format `{f}`"))),
            };
            Ok((0, emit(text, out.as_deref())?, String::new()))
        }
    }
}
