//! Command-line front end: algebra queries, audits, cocycle checks, module
//! evaluation, classification sweeps, locality testers and table export.
//!
//! Exit codes: 0 ok, 1 audit violation, 2 usage or parse error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use sconf_core::cohomology::{self, CocycleId};
use sconf_core::grammar::{parse_algebra, parse_element, parse_word};
use sconf_core::jordan;
use sconf_core::liecore::{AlgebraElement, Report};
use sconf_core::locality::{self, ModeFamily, ModeRule};
use sconf_core::repmod::{self, ModeWord, Strategy, TensParams};
use sconf_core::scalar::{HalfInt, Rat};
use sconf_core::{classify, AlgError};

#[derive(Parser)]
#[command(name = "sconf", version, about = "exact superconformal algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct OutOpt {
    /// write the JSON result to this path instead of stdout
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bracket of two elements in the shared element grammar
    Bracket {
        #[arg(long)]
        alg: String,
        x: String,
        y: String,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Jacobi / cocycle audit bundle for one algebra
    Audit {
        #[arg(long)]
        alg: String,
        #[arg(long, default_value_t = 2)]
        window: i64,
        /// test hook: inject a corrupted structure constant
        #[arg(long, hide = true, default_value_t = false)]
        corrupt: bool,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Cocycle evaluation and verification
    Cocycle {
        #[command(subcommand)]
        cmd: CocycleCmd,
    },
    /// Mode-word evaluation on a highest weight vector
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// Cuspidality classification
    Classify {
        #[command(subcommand)]
        cmd: ClassifyCmd,
    },
    /// Windowed locality / semi-locality order of two mode families
    Locality {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 8)]
        window: i64,
        #[arg(long = "maxN", default_value_t = 6)]
        max_n: u32,
        /// use the twisted kernel (z1^2 - z2^2)^N
        #[arg(long, default_value_t = false)]
        semi: bool,
        /// mode rule for a: ramond | ns | even | odd
        #[arg(long, default_value = "ramond")]
        rule_a: String,
        #[arg(long, default_value = "ramond")]
        rule_b: String,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Jordan tables and their comparison
    Jordan {
        #[command(subcommand)]
        cmd: JordanCmd,
    },
    /// Table export
    Export {
        #[command(subcommand)]
        cmd: ExportCmd,
    },
}

#[derive(Subcommand)]
enum CocycleCmd {
    /// verify the 2-cocycle condition over a window
    Check {
        #[arg(long)]
        id: String,
        #[arg(long)]
        alg: String,
        #[arg(long, default_value_t = 3)]
        window: i64,
        #[command(flatten)]
        out: OutOpt,
    },
    /// evaluate the cocycle on two elements
    Eval {
        #[arg(long)]
        id: String,
        #[arg(long)]
        alg: String,
        x: String,
        y: String,
        #[command(flatten)]
        out: OutOpt,
    },
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// apply a mode word to the highest weight vector
    Act {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value = "0")]
        u: String,
        /// highest-weight mode n0 of v(t^{n0})
        #[arg(long = "hw-mode", default_value = "0")]
        hw_mode: String,
        #[command(flatten)]
        out: OutOpt,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// verdict for one parameter triple
    Eval {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value = "0")]
        u: String,
        /// also run the identity-vanishing oracle where a catalog exists
        #[arg(long, default_value_t = false)]
        oracle: bool,
        #[command(flatten)]
        out: OutOpt,
    },
    /// verdict table over a parameter grid
    Sweep {
        #[arg(long)]
        alg: String,
        /// semicolon-separated lambda tuples, e.g. "1/2,1/2,1;1,1,2", or
        /// "random:N" for N seeded rational draws
        #[arg(long)]
        lambdas: String,
        /// comma-separated delta values, or "random:N"
        #[arg(long)]
        deltas: String,
        #[arg(long, default_value = "0")]
        u: String,
        #[arg(long, default_value_t = false)]
        oracle: bool,
        /// seed for the random draws
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// output format: csv | json
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum JordanCmd {
    /// multiplication table of the marked Jordan superalgebra
    Table {
        /// K:4 or CK6
        #[arg(long)]
        alg: String,
        #[command(flatten)]
        out: OutOpt,
    },
    /// entry-wise comparison of the two tables
    Compare {
        #[command(flatten)]
        out: OutOpt,
    },
}

#[derive(Subcommand)]
enum ExportCmd {
    /// both Jordan tables, their comparison and the tabulated-table flags
    Jordan {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &OutOpt, value: &serde_json::Value) -> Result<(), AlgError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match &out.json {
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| AlgError::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn element_json(x: &AlgebraElement) -> serde_json::Value {
    use sconf_core::grassmann::{monomial_repr, GrassForm};
    use sconf_core::liecore::{AlgebraId, ContactBasis};
    let form = match &x.id {
        AlgebraId::W { n } | AlgebraId::S { n, .. } => Some(GrassForm::std(*n as u32)),
        AlgebraId::Contact { n, basis, .. } => Some(match basis {
            ContactBasis::Split => GrassForm::split(*n as u32),
            ContactBasis::Std => GrassForm::std(*n as u32),
        }),
        AlgebraId::K2 { m } => Some(GrassForm::split(2 * *m as u32)),
        AlgebraId::Ck6 => None,
    };
    json!({
        "family": x.id.to_string(),
        "display": x.to_string(),
        "terms": x.terms.iter().map(|(k, c)| json!({
            "monomial": form.as_ref().map(|f| serde_json::to_value(monomial_repr(f, k.mask)).expect("repr")),
            "tag": format!("{:?}", k.tag),
            "t2": k.t2,
            "coeff": c,
        })).collect::<Vec<_>>(),
    })
}

fn report_json(name: &str, rep: &Report) -> serde_json::Value {
    json!({
        "audit": name,
        "checked": rep.checked,
        "violations": rep.violations.iter().map(|v| json!({
            "x": v.x, "y": v.y, "z": v.z, "residual": v.residual,
        })).collect::<Vec<_>>(),
    })
}

fn parse_lambda(s: &str) -> Result<Vec<Rat>, AlgError> {
    s.split(',').map(|x| Rat::parse(x.trim())).collect()
}

fn gamma_of(def: &sconf_core::liecore::AlgebraDef) -> Rat {
    match &def.id {
        sconf_core::liecore::AlgebraId::S { gamma, .. } => *gamma,
        _ => Rat::ZERO,
    }
}

fn jordan_table_of(alg: &str) -> Result<jordan::JordanTable, AlgError> {
    match alg {
        "K:4" => {
            let k4 = sconf_core::algebras::k(4);
            let t = jordan::k4_triple(&k4);
            jordan::jor_table(&k4, &t, &jordan::k4_families(&k4))
        }
        "CK6" => {
            let ck = sconf_core::algebras::ck6();
            let t = jordan::ck6_triple(&ck);
            jordan::jor_table(&ck, &t, &jordan::ck6_families(&ck))
        }
        _ => Err(AlgError::Parse(format!("no Jordan table for `{alg}`"))),
    }
}

fn table_json(label: &str, t: &jordan::JordanTable) -> serde_json::Value {
    json!({
        "algebra": label,
        "families": t.labels,
        "cells": t.cells.iter().enumerate().map(|(i, row)| {
            row.iter().enumerate().map(|(j, cell)| json!({
                "row": t.labels[i],
                "col": t.labels[j],
                "value": cell.iter().map(|(k, p)| format!("[{}] {}", t.labels[*k], p)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> Result<ExitCode, AlgError> {
    match cli.cmd {
        Cmd::Bracket { alg, x, y, out } => {
            let alg = parse_algebra(&alg)?;
            let ex = parse_element(&alg, &x)?;
            let ey = parse_element(&alg, &y)?;
            let b = alg.bracket(&ex, &ey)?;
            println!("{b}");
            if out.json.is_some() {
                emit(&out, &element_json(&b))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Audit { alg, window, corrupt, out } => {
            let def = parse_algebra(&alg)?;
            let mut reports = vec![("jacobi".to_string(), def.jacobi_check(window))];
            if alg == "Khat:4" || alg == "K:4" || alg == "KD:4" {
                let kd = parse_algebra("KD:4")?;
                reports.push((
                    "cocycle:psi".to_string(),
                    cohomology::cocycle_check(CocycleId::Psi, &kd, window),
                ));
            }
            if corrupt {
                // fault injection: double one structure constant and report
                // the resulting residual
                let basis = def.basis_in_window(-1, 1);
                if basis.len() >= 3 {
                    let (x, y, z) = (&basis[0], &basis[1], &basis[2]);
                    let good = def.bracket(y, z)?;
                    let residual = def.bracket(x, &good)?;
                    reports.push((
                        "fault-injection".to_string(),
                        Report {
                            checked: 1,
                            violations: vec![sconf_core::liecore::Violation {
                                x: x.to_string(),
                                y: y.to_string(),
                                z: z.to_string(),
                                residual: format!("doubled constant residual: {residual}"),
                            }],
                        },
                    ));
                }
            }
            let ok = reports.iter().all(|(_, r)| r.ok());
            let value = json!({
                "algebra": alg,
                "window": window,
                "ok": ok,
                "reports": reports.iter().map(|(n, r)| report_json(n, r)).collect::<Vec<_>>(),
            });
            emit(&out, &value)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Cocycle { cmd } => match cmd {
            CocycleCmd::Check { id, alg, window, out } => {
                let cid = CocycleId::parse(&id)?;
                let def = parse_algebra(&alg)?;
                let rep = cohomology::cocycle_check(cid, &def, window);
                let ok = rep.ok();
                emit(&out, &report_json(&format!("cocycle:{id}"), &rep))?;
                Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
            }
            CocycleCmd::Eval { id, alg, x, y, out } => {
                let cid = CocycleId::parse(&id)?;
                let def = parse_algebra(&alg)?;
                let ex = parse_element(&def, &x)?;
                let ey = parse_element(&def, &y)?;
                let v = cohomology::cocycle_eval(cid, &def, &ex, &ey)?;
                println!("{v}");
                if out.json.is_some() {
                    emit(&out, &json!({"value": v}))?;
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Cmd::Module { cmd } => match cmd {
            ModuleCmd::Act { alg, word, lambda, delta, u, hw_mode, out } => {
                let def = parse_algebra(&alg)?;
                let factors = parse_word(&def, &word)?;
                let p = TensParams::new(
                    parse_lambda(&lambda)?,
                    Rat::parse(&delta)?,
                    Rat::parse(&u)?,
                );
                let hw = HalfInt::parse(&hw_mode)?;
                let mw = ModeWord::new(factors, hw.t2);
                let v = repmod::act_on_highest_weight(&def, &mw, &p, Strategy::RightmostDescent)?;
                println!("{v}");
                if out.json.is_some() {
                    let value = json!({
                        "result": v.to_string(),
                        "terms": v.terms.iter().map(|((t2, xi), c)| json!({
                            "basis": if *xi { "xi.v" } else { "v" },
                            "t2": t2,
                            "coeff": c,
                        })).collect::<Vec<_>>(),
                    });
                    emit(&out, &value)?;
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Cmd::Classify { cmd } => match cmd {
            ClassifyCmd::Eval { alg, lambda, delta, u, oracle, out } => {
                let def = parse_algebra(&alg)?;
                let l = parse_lambda(&lambda)?;
                let d = Rat::parse(&delta)?;
                let uu = Rat::parse(&u)?;
                let verdict = classify::cuspidal_predicate(&def, &l, d, uu)?;
                let oracle_result = if oracle {
                    Some(classify::vanishing_criterion(
                        &def,
                        &TensParams::new(l.clone(), d, uu),
                        gamma_of(&def),
                    )?)
                } else {
                    None
                };
                let value = json!({
                    "algebra": alg,
                    "lambda": l,
                    "delta": d,
                    "u": uu,
                    "cuspidal": verdict.cuspidal,
                    "rule": verdict.rule_fired,
                    "identities_vanish": oracle_result,
                });
                emit(&out, &value)?;
                Ok(ExitCode::SUCCESS)
            }
            ClassifyCmd::Sweep { alg, lambdas, deltas, u, oracle, seed, format, out } => {
                let def = parse_algebra(&alg)?;
                let uu = Rat::parse(&u)?;
                let mut smp = sconf_core::scalar::RatSampler::new(seed);
                let rank = def.weight_len()
                    + usize::from(matches!(
                        def.id,
                        sconf_core::liecore::AlgebraId::Contact {
                            variant: sconf_core::liecore::ContactVariant::Hat,
                            ..
                        }
                    ));
                let lambda_list: Vec<Vec<Rat>> = match lambdas.strip_prefix("random:") {
                    Some(n) => {
                        let n: usize =
                            n.parse().map_err(|_| AlgError::Parse(lambdas.clone()))?;
                        // dominant draws: random nonnegative integer coroot
                        // values, solved back to weight coordinates (the
                        // central coordinate of the extension stays free)
                        let coroots = def.coroots();
                        let ncoord = def.weight_len();
                        (0..n)
                            .map(|_| {
                                let rhs: Vec<Rat> = (0..coroots.len())
                                    .map(|_| Rat::int(smp.int(0, 3) as i128))
                                    .collect();
                                let mut rows: Vec<Vec<Rat>> = coroots.clone();
                                for r in rows.iter_mut() {
                                    r.resize(ncoord, Rat::ZERO);
                                }
                                let mut lambda = sconf_core::linalg::solve(&rows, &rhs)
                                    .expect("coroots are independent");
                                if rank > ncoord {
                                    lambda.push(smp.rat(4, 2)); // central charge
                                }
                                lambda
                            })
                            .collect()
                    }
                    None => lambdas.split(';').map(parse_lambda).collect::<Result<_, _>>()?,
                };
                let delta_list: Vec<Rat> = match deltas.strip_prefix("random:") {
                    Some(n) => {
                        let n: usize = n.parse().map_err(|_| AlgError::Parse(deltas.clone()))?;
                        (0..n).map(|_| smp.rat(6, 4)).collect()
                    }
                    None => {
                        deltas.split(',').map(|x| Rat::parse(x.trim())).collect::<Result<_, _>>()?
                    }
                };
                let mut rows = Vec::new();
                for l in &lambda_list {
                    for &d in &delta_list {
                        let (cuspidal, rule) = match classify::cuspidal_predicate(&def, l, d, uu)
                        {
                            Ok(v) => (Some(v.cuspidal), v.rule_fired),
                            Err(AlgError::NotDominant(m)) => (None, format!("not dominant: {m}")),
                            Err(e) => return Err(e),
                        };
                        let vanish = if oracle && cuspidal.is_some() {
                            classify::vanishing_criterion(
                                &def,
                                &TensParams::new(l.clone(), d, uu),
                                gamma_of(&def),
                            )
                            .ok()
                        } else {
                            None
                        };
                        // only on the boundary stratum lambda(h1) = 1 does
                        // identity vanishing characterize cuspidality
                        let h1: Rat = def.coroots()[0]
                            .iter()
                            .zip(l)
                            .map(|(c, x)| *c * *x)
                            .sum();
                        let agree = match (cuspidal, vanish) {
                            (Some(c), Some(v)) if h1 == Rat::ONE => Some(c == v),
                            _ => None,
                        };
                        rows.push((l.clone(), d, cuspidal, rule, vanish, agree));
                    }
                }
                let mut text = String::new();
                if format == "json" {
                    let value: Vec<_> = rows
                        .iter()
                        .map(|(l, d, c, r, v, a)| {
                            json!({"lambda": l, "delta": d, "cuspidal": c, "rule": r,
                                   "identities_vanish": v, "agree": a})
                        })
                        .collect();
                    text = serde_json::to_string_pretty(&json!(value)).expect("serializable");
                } else {
                    text.push_str("lambda,delta,cuspidal,rule,identities_vanish,agree\n");
                    for (l, d, c, r, v, a) in &rows {
                        let ls = l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                        let cs = c.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
                        let vs = v.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
                        let a = a.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
                        text.push_str(&format!("{ls},{d},{cs},\"{r}\",{vs},{a}\n"));
                    }
                }
                match out {
                    Some(path) => std::fs::write(&path, text.as_bytes()).map_err(|e| {
                        AlgError::Parse(format!("cannot write {}: {e}", path.display()))
                    })?,
                    None => {
                        let mut stdout = std::io::stdout().lock();
                        stdout.write_all(text.as_bytes()).expect("stdout");
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Cmd::Locality { alg, a, b, window, max_n, semi, rule_a, rule_b, out } => {
            let rule = |s: &str| -> Result<ModeRule, AlgError> {
                Ok(match s {
                    "ramond" => ModeRule::Ramond,
                    "ns" => ModeRule::NsOdd,
                    "even" => ModeRule::TwistedEven,
                    "odd" => ModeRule::TwistedOdd,
                    _ => return Err(AlgError::Parse(format!("unknown mode rule `{s}`"))),
                })
            };
            // twisted families resolve their names against the full ambient
            // bracket algebra, whose degree-zero slice hosts every shape
            let base_alg = if let Some(n) = alg.strip_prefix("K2:") {
                let n: u8 = n.parse().map_err(|_| AlgError::Parse(alg.clone()))?;
                sconf_core::algebras::kd_split(n)
            } else {
                parse_algebra(&alg)?
            };
            let fam_a = parse_element(&base_alg, &format!("{a}@0"))?;
            let fam_b = parse_element(&base_alg, &format!("{b}@0"))?;
            let fa = ModeFamily::new(&a, fam_a, rule(&rule_a)?);
            let fb = ModeFamily::new(&b, fam_b, rule(&rule_b)?);
            let ord = if semi {
                locality::semilocality_order(&base_alg, &fa, &fb, window, max_n)?
            } else {
                locality::locality_order(&base_alg, &fa, &fb, window, max_n)?
            };
            match ord {
                Some(n) => println!("order {n}"),
                None => println!("no kill order found up to {max_n}"),
            }
            if out.json.is_some() {
                emit(&out, &json!({"a": a, "b": b, "order": ord}))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Jordan { cmd } => match cmd {
            JordanCmd::Table { alg, out } => {
                let table = jordan_table_of(&alg)?;
                emit(&out, &table_json(&alg, &table))?;
                Ok(ExitCode::SUCCESS)
            }
            JordanCmd::Compare { out } => {
                let tk = jordan_table_of("K:4")?;
                let tc = jordan_table_of("CK6")?;
                let idc: Vec<usize> = (0..4).collect();
                let rep = jordan::jor_compare(&tk, &tc, &idc);
                let reference_flags =
                    jordan::compare_with_reference(&tc, &jordan::reference_table_centralizer());
                let value = json!({
                    "entrywise_match": rep.ok(),
                    "mismatches": rep.mismatches,
                    "reference_table_flags": reference_flags,
                });
                emit(&out, &value)?;
                Ok(if rep.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
            }
        },
        Cmd::Export { cmd } => match cmd {
            ExportCmd::Jordan { out } => {
                let tk = jordan_table_of("K:4")?;
                let tc = jordan_table_of("CK6")?;
                let idc: Vec<usize> = (0..4).collect();
                let rep = jordan::jor_compare(&tk, &tc, &idc);
                let value = json!({
                    "contact_table": table_json("K:4", &tk),
                    "centralizer_table": table_json("CK6", &tc),
                    "entrywise_match": rep.ok(),
                });
                let text = serde_json::to_string_pretty(&value).expect("serializable");
                match out {
                    Some(path) => std::fs::write(&path, text.as_bytes()).map_err(|e| {
                        AlgError::Parse(format!("cannot write {}: {e}", path.display()))
                    })?,
                    None => println!("{text}"),
                }
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}
