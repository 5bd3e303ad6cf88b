use std::fs;
use std::path::Path as FsPath;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use quiverinv::bounds::{
    build_extremal_example, max_nonzero_degree_with_budget, pa291_decompose, sufficiency_nonzero,
    verify_theorem_bound_with_budget, BoundError, BoundReport, BoundStatus, ExtremalError, ExtremalSummary,
    Pa291Error,
};
use quiverinv::engine::{
    verify_rewrite_lemma_with_budget, CharMode, Engine, EngineError, LemmaError, LemmaRoles, DEFAULT_BUDGET,
};
use quiverinv::io::{self, IoError, PathSpec, QuiverSpec};
use quiverinv::quiver::{max_primitive_cycle, realize_multidegree, scc_decompose, Path, Quiver, QuiverError};
use quiverinv::sweep::{sweep, SweepConfig, SweepReport};
use quiverinv::symbolic::crossval::field_for;
use quiverinv::symbolic::{
    cross_validate_over, decomposability_oracle, CrossValidationError, OracleError,
};

use crate::output::{grid, render};
use crate::{Cli, Command, PathArg, QuiverArg};

pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const OPEN: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(#[from] IoError),
    #[error("{0}")]
    Quiver(#[from] QuiverError),
    #[error("{0}")]
    Engine(#[from] EngineError),
    #[error("{0}")]
    Bound(#[from] BoundError),
    #[error("{0}")]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    CrossValidation(#[from] CrossValidationError),
    #[error("{0}")]
    Lemma(#[from] LemmaError),
    #[error("{0}")]
    Decomposition(#[from] Pa291Error),
    #[error("{0}")]
    Extremal(#[from] ExtremalError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn status(&self) -> u8 {
        let budget = matches!(
            self,
            CliError::Engine(EngineError::BudgetExhausted(_))
                | CliError::Bound(BoundError::Engine(EngineError::BudgetExhausted(_)))
                | CliError::Oracle(OracleError::BudgetExhausted(_))
                | CliError::CrossValidation(CrossValidationError::Engine(EngineError::BudgetExhausted(_)))
                | CliError::CrossValidation(CrossValidationError::Oracle(OracleError::BudgetExhausted(_)))
                | CliError::Lemma(LemmaError::Engine(EngineError::BudgetExhausted(_)))
                | CliError::Decomposition(Pa291Error::BudgetExhausted(_))
        );
        if budget {
            OPEN
        } else {
            FAILED
        }
    }
}

pub struct Outcome {
    pub text: String,
    pub status: u8,
}

fn read(path: &FsPath) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn load_quiver(arg: &QuiverArg) -> Result<Quiver, CliError> {
    Ok(io::quiver_from_json(&read(&arg.quiver)?)?)
}

fn load_path(q: &Quiver, arg: &PathArg) -> Result<Path, CliError> {
    match (&arg.path, &arg.path_file) {
        (Some(inline), _) => Ok(q.parse_path(inline)?),
        (None, Some(file)) => Ok(io::path_from_json(q, &read(file)?)?),
        (None, None) => Err(CliError::Usage("one of --path or --path-file is required".into())),
    }
}

/// `--budget`, then `QUIVERINV_BUDGET`, then the default.
fn budget(cli: &Cli) -> Result<usize, CliError> {
    if let Some(b) = cli.budget {
        return Ok(b);
    }
    match std::env::var("QUIVERINV_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("QUIVERINV_BUDGET is not a node count: `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn done<T: Serialize>(report: &T, cli: &Cli, status: u8) -> Result<Outcome, CliError> {
    Ok(Outcome {
        text: render(report, cli.json),
        status,
    })
}

fn bound_status(r: &BoundReport) -> u8 {
    match r.status {
        BoundStatus::Ok if r.satisfied => OK,
        BoundStatus::Ok => FAILED,
        _ => OPEN,
    }
}

fn parse_roles(q: &Quiver, raw: &[String]) -> Result<LemmaRoles, CliError> {
    let mut roles = LemmaRoles::new();
    for r in raw {
        let (name, arrows) = r
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("role `{r}` is not of the form name=arrow,arrow")))?;
        let ids = arrows
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|a| q.arrow_id(a))
            .collect::<Result<Vec<_>, _>>()?;
        roles.insert(name.trim().to_string(), ids);
    }
    Ok(roles)
}

fn sweep_table(r: &SweepReport) -> String {
    let rows: Vec<Vec<String>> = r
        .instances
        .iter()
        .map(|i| {
            let b = i.bound.as_ref();
            vec![
                i.quiver.clone(),
                i.mode.to_string(),
                b.map_or("-".into(), |b| b.max_degree.to_string()),
                b.map_or("-".into(), |b| b.bound.to_string()),
                b.map_or("-".into(), |b| b.m.to_string()),
                b.map_or("-".into(), |b| b.status.to_string()),
                format!("{}/{}", i.oracle.agreed, i.oracle.checked),
                format!("{}/{}", i.decomposition.decomposed, i.decomposition.nonzero_paths),
                if i.passed() {
                    "pass"
                } else if i.inconclusive() {
                    "open"
                } else {
                    "FAIL"
                }
                .to_string(),
            ]
        })
        .collect();
    let mut out = grid(
        &["quiver", "mode", "M", "bound", "m", "status", "oracle", "pa291", "verdict"],
        &rows,
    );
    out.push_str(&format!(
        "\n\n{} instances: {} passed, {} failed, {} inconclusive",
        r.instances.len(),
        r.passed,
        r.failed,
        r.inconclusive
    ));
    out
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let budget = budget(cli)?;
    match &cli.command {
        Command::Scc(arg) => {
            let q = load_quiver(arg)?;
            let components: Vec<_> = scc_decompose(&q)
                .iter()
                .map(|c| {
                    json!({
                        "vertices": c.vertices.iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>(),
                        "arrows": q.word_names(&c.arrows),
                    })
                })
                .collect();
            let report = json!({
                "strongly_connected": q.is_strongly_connected(),
                "components": components,
            });
            done(&report, cli, OK)
        }
        Command::Mq(arg) => {
            let q = load_quiver(arg)?;
            let (m, witness) = max_primitive_cycle(&q)?;
            let report = json!({
                "m": m,
                "witness": witness.map(|p| q.word_names(p.word())).unwrap_or_default(),
            });
            done(&report, cli, OK)
        }
        Command::Realize { quiver, mdeg } => {
            let q = load_quiver(quiver)?;
            let delta = io::multidegree_from_json(&q, mdeg)?;
            let report = match realize_multidegree(&q, &delta) {
                Some(p) => json!({"feasible": true, "path": q.word_names(p.word())}),
                None => {
                    let reason = if delta.is_zero() {
                        "zero multidegree"
                    } else if !delta.is_balanced(&q) {
                        "not balanced"
                    } else {
                        "support not strongly connected"
                    };
                    json!({"feasible": false, "reason": reason})
                }
            };
            done(&report, cli, OK)
        }
        Command::IsZero { quiver, path, mode } => {
            let q = load_quiver(quiver)?;
            let h = load_path(&q, path)?;
            let engine = Engine::new(&q, *mode).with_budget(budget);
            let d = engine.is_zero(&h)?;
            let report = json!({
                "zero": d.zero,
                "kind": d.certificate.kind,
                "explored": d.explored,
                "witness": q.word_names(&d.certificate.witness),
                "certificate": d.certificate,
            });
            done(&report, cli, OK)
        }
        Command::Equiv {
            quiver,
            path,
            other,
            mode,
        } => {
            let q = load_quiver(quiver)?;
            let p = load_path(&q, path)?;
            let r = q.parse_path(other)?;
            let engine = Engine::new(&q, *mode).with_budget(budget);
            done(&engine.are_equivalent(&p, &r)?, cli, OK)
        }
        Command::MaxNonzero { quiver, mode, cap } => {
            let q = load_quiver(quiver)?;
            let r = max_nonzero_degree_with_budget(&q, *mode, *cap, budget)?;
            let status = if r.status == BoundStatus::Ok { OK } else { OPEN };
            done(&r, cli, status)
        }
        Command::VerifyBounds { quiver, mode } => {
            let q = load_quiver(quiver)?;
            let r = verify_theorem_bound_with_budget(&q, *mode, budget)?;
            done(&r, cli, bound_status(&r))
        }
        Command::Sufficiency { quiver, path } => {
            let q = load_quiver(quiver)?;
            let h = load_path(&q, path)?;
            if !h.is_closed() || h.is_empty() {
                return Err(QuiverError::NotClosed.into());
            }
            done(&sufficiency_nonzero(&q, &h), cli, OK)
        }
        Command::Pa291 { quiver, path } => {
            let q = load_quiver(quiver)?;
            let h = load_path(&q, path)?;
            done(&pa291_decompose(&q, &h)?, cli, OK)
        }
        Command::Extremal { n, d, m, mode } => {
            let e = build_extremal_example(*n, *d, *m, *mode)?;
            let certified = match mode {
                CharMode::Char2 => sufficiency_nonzero(&e.quiver, &e.path).is_sufficient(),
                CharMode::CharNot2 => !Engine::new(&e.quiver, *mode)
                    .with_budget(budget)
                    .is_zero(&e.path)?
                    .zero,
            };
            let report = json!({
                "summary": ExtremalSummary::from(&e),
                "certified_nonzero": certified,
                "quiver": QuiverSpec::from(&e.quiver),
                "path": PathSpec::of(&e.quiver, &e.path),
            });
            let ok = certified && e.path.degree() == e.expected_degree;
            done(&report, cli, if ok { OK } else { FAILED })
        }
        Command::Oracle { quiver, path, k, field } => {
            let q = load_quiver(quiver)?;
            let h = load_path(&q, path)?;
            done(&decomposability_oracle(&q, &h, *k as usize, *field)?, cli, OK)
        }
        Command::CrossValidate {
            quiver,
            cap,
            mode,
            field,
        } => {
            let q = load_quiver(quiver)?;
            let engine = Engine::new(&q, *mode).with_budget(budget);
            let r = cross_validate_over(&engine, *cap, field.unwrap_or(field_for(*mode)))?;
            let status = if r.all_agree() { OK } else { FAILED };
            done(&r, cli, status)
        }
        Command::LemmaCheck {
            quiver,
            path,
            lemma,
            roles,
        } => {
            let q = load_quiver(quiver)?;
            let h = load_path(&q, path)?;
            let roles = parse_roles(&q, roles)?;
            let r = verify_rewrite_lemma_with_budget(&q, *lemma, &h, &roles, budget)?;
            let report = json!({
                "lemma": r.lemma,
                "found": r.found,
                "witness": r.witness.map(|w| q.word_names(&w)),
                "class_size": r.class_size,
            });
            done(&report, cli, OK)
        }
        Command::Sweep {
            max_vertices,
            max_arrows,
            mode,
            cap,
            oracle_cap,
            det_cap,
            jobs,
        } => {
            let cfg = SweepConfig {
                max_vertices: *max_vertices,
                max_arrows: *max_arrows,
                modes: mode.map_or(vec![CharMode::Char2, CharMode::CharNot2], |m| vec![m]),
                budget,
                cap: *cap,
                oracle_cap: *oracle_cap,
                det_cap: *det_cap,
                jobs: *jobs,
            };
            let r = sweep(&cfg);
            let status = if r.failed > 0 {
                FAILED
            } else if r.inconclusive > 0 {
                OPEN
            } else {
                OK
            };
            let text = if cli.json {
                render(&r, true)
            } else {
                sweep_table(&r)
            };
            Ok(Outcome { text, status })
        }
    }
}

