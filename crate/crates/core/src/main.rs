//! Command-line interface: parse `.cat` files, run the axiom checkers and
//! localization constructions, and emit text or JSON reports.
//!
//! Exit codes: 0 = every check passed, 1 = a check failed (the report carries
//! the witness), 2 = usage, parse, or resolution error.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use catfrac::bf_fractions::{self, ChoicePolicy};
use catfrac::bicat::SizeCaps;
use catfrac::cf_fractions::{self, Span};
use catfrac::fincat::{compose, FinCategory, MorClass, MorId};
use catfrac::frontend;
use catfrac::suite;
use catfrac::wfp_fractions::{check_conditions, AbcInput};
use catfrac::Error;

#[derive(Parser)]
#[command(
    name = "catfrac",
    version,
    about = "Checkers and constructions for categories of fractions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Reject inputs with more objects than this.
    #[arg(long, global = true)]
    max_objects: Option<usize>,
    /// Completion-table policy for constructions that consume one.
    #[arg(long, global = true, value_enum, default_value_t = Seed::C3)]
    seed_choices: Seed,
    /// Worker threads for independent queries (computations are exhaustive
    /// but desk-scale; 1 is always sufficient).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Seed {
    Lex,
    C3,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the right-fraction axioms on a category and class.
    CheckCf {
        file: String,
        #[arg(long)]
        category: String,
        #[arg(long)]
        class: String,
    },
    /// Check the bicategorical fraction axioms on a 2-category and class.
    CheckBf {
        file: String,
        #[arg(long)]
        bicategory: String,
        #[arg(long)]
        class: String,
    },
    /// Build the category of fractions and report its size.
    Localize {
        file: String,
        #[arg(long)]
        category: String,
        #[arg(long)]
        class: String,
        /// List every localized morphism with its full class of spans.
        #[arg(long)]
        print_classes: bool,
    },
    /// Decide whether a cospan admits a fiber product in the localization.
    Pullback {
        file: String,
        #[arg(long)]
        category: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        /// Check this specific cone, given as `apex,p1,p2`.
        #[arg(long)]
        candidate: Option<String>,
    },
    /// Check the three finite weak-fiber-product conditions on a candidate.
    CheckAbc {
        file: String,
        #[arg(long)]
        bicategory: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        #[arg(long)]
        apex: String,
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
        #[arg(long)]
        omega: String,
    },
    /// Run the full cross-check battery on a built-in fixture.
    Suite { fixture: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.jobs;
    match run(&cli) {
        Ok((report, pass)) => {
            emit(&cli, &report);
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, report: &Value) {
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        Format::Text => {
            println!("{}", report["command"].as_str().unwrap_or("?"));
            if let Some(checks) = report["checks"].as_array() {
                for c in checks {
                    let mut line = format!(
                        "  {}: {}",
                        c["name"].as_str().unwrap_or("?"),
                        if c["pass"].as_bool().unwrap_or(false) {
                            "pass"
                        } else {
                            "fail"
                        }
                    );
                    if let Some(w) = c["witness"].as_str() {
                        line.push_str(&format!(" ({w})"));
                    }
                    println!("{line}");
                }
            }
            if let Some(classes) = report["classes"].as_array() {
                for c in classes {
                    println!(
                        "  {} = {{ {} }}",
                        c["name"].as_str().unwrap_or("?"),
                        c["spans"]
                            .as_array()
                            .map(|s| s
                                .iter()
                                .filter_map(|x| x.as_str())
                                .collect::<Vec<_>>()
                                .join(", "))
                            .unwrap_or_default()
                    );
                }
            }
            println!(
                "verdict: {}",
                report["verdict"].as_str().unwrap_or("fail")
            );
        }
    }
}

fn load(cli: &Cli, file: &str) -> catfrac::Result<frontend::Document> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::Structure(format!("cannot read `{file}`: {e}")))?;
    let doc = frontend::parse(&text)?;
    let _ = cli;
    Ok(doc)
}

fn cap_objects(cli: &Cli, n: usize, what: &str) -> catfrac::Result<()> {
    if let Some(max) = cli.max_objects {
        if n > max {
            return Err(Error::SizeLimit(format!(
                "{what} has {n} objects, above the requested cap of {max}"
            )));
        }
    }
    Ok(())
}

fn caps_for(cli: &Cli) -> SizeCaps {
    let mut caps = SizeCaps::default();
    if let Some(max) = cli.max_objects {
        caps.objects = max.min(caps.objects);
    }
    caps
}

fn mor_by_name(c: &FinCategory, name: &str) -> catfrac::Result<MorId> {
    c.mor_by_name(name)
        .ok_or_else(|| Error::Structure(format!("no morphism named `{name}`")))
}

fn span_str(c: &FinCategory, s: &Span) -> String {
    format!(
        "({}, {}, {})",
        c.object_name(s.apex),
        c.mor_name(s.leg_w),
        c.mor_name(s.leg_f)
    )
}

fn check_json(name: &str, pass: bool, witness: Option<String>) -> Value {
    match witness {
        Some(w) => json!({"name": name, "pass": pass, "witness": w}),
        None => json!({"name": name, "pass": pass}),
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn cf_pair(cli: &Cli, file: &str, category: &str, class: &str)
    -> catfrac::Result<(FinCategory, MorClass)>
{
    let doc = load(cli, file)?;
    let c = frontend::resolve_category(&doc, category)?;
    cap_objects(cli, c.n_objects(), category)?;
    let w = frontend::resolve_mor_class(&doc, class, &c)?;
    Ok((c, w))
}

fn run(cli: &Cli) -> catfrac::Result<(Value, bool)> {
    match &cli.cmd {
        Cmd::CheckCf {
            file,
            category,
            class,
        } => {
            let (c, w) = cf_pair(cli, file, category, class)?;
            let report = cf_fractions::check_cf_axioms(&c, &w)?;
            let fmt = |w: &Option<Vec<MorId>>| {
                w.as_ref().map(|ms| {
                    ms.iter()
                        .map(|&m| c.mor_name(m).to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                })
            };
            let checks = vec![
                check_json("cf1", report.cf1.pass, fmt(&report.cf1.witness)),
                check_json("cf2", report.cf2.pass, fmt(&report.cf2.witness)),
                check_json("cf3", report.cf3.pass, fmt(&report.cf3.witness)),
                check_json("cf4", report.cf4.pass, fmt(&report.cf4.witness)),
            ];
            let pass = report.all_pass();
            Ok((
                json!({
                    "schema": 1,
                    "command": "check-cf",
                    "category": category,
                    "class": class,
                    "checks": checks,
                    "verdict": verdict(pass),
                }),
                pass,
            ))
        }
        Cmd::CheckBf {
            file,
            bicategory,
            class,
        } => {
            let doc = load(cli, file)?;
            let b = frontend::resolve_bicategory(&doc, bicategory, &caps_for(cli))?;
            cap_objects(cli, b.n_objects(), bicategory)?;
            let w = frontend::resolve_one_class(&doc, class, &b)?;
            let report = bf_fractions::check_bf_axioms(&b, &w)?;
            let checks: Vec<Value> = [
                ("bf1", &report.bf1),
                ("bf2", &report.bf2),
                ("bf3", &report.bf3),
                ("bf4a", &report.bf4a),
                ("bf4b", &report.bf4b),
                ("bf4c", &report.bf4c),
                ("bf5", &report.bf5),
            ]
            .into_iter()
            .map(|(n, a)| check_json(n, a.pass, a.witness.clone()))
            .collect();
            let pass = report.all_pass();
            Ok((
                json!({
                    "schema": 1,
                    "command": "check-bf",
                    "bicategory": bicategory,
                    "class": class,
                    "checks": checks,
                    "verdict": verdict(pass),
                }),
                pass,
            ))
        }
        Cmd::Localize {
            file,
            category,
            class,
            print_classes,
        } => {
            let (c, w) = cf_pair(cli, file, category, class)?;
            match cf_fractions::localize(&c, &w) {
                Ok(loc) => {
                    let mut report = json!({
                        "schema": 1,
                        "command": "localize",
                        "category": category,
                        "class": class,
                        "objects": loc.base.n_objects(),
                        "morphisms": loc.base.n_mors(),
                        "checks": [check_json("localize", true, None)],
                        "verdict": "pass",
                    });
                    if *print_classes {
                        let classes: Vec<Value> = loc
                            .base
                            .mor_ids()
                            .map(|m| {
                                json!({
                                    "name": loc.base.mor_name(m),
                                    "spans": loc.class_of[m.0 as usize]
                                        .iter()
                                        .map(|s| span_str(&c, s))
                                        .collect::<Vec<_>>(),
                                })
                            })
                            .collect();
                        report["classes"] = Value::Array(classes);
                    }
                    Ok((report, true))
                }
                Err(Error::CfViolation(msg)) => Ok((
                    json!({
                        "schema": 1,
                        "command": "localize",
                        "category": category,
                        "class": class,
                        "checks": [check_json("localize", false, Some(msg))],
                        "verdict": "fail",
                    }),
                    false,
                )),
                Err(e) => Err(e),
            }
        }
        Cmd::Pullback {
            file,
            category,
            class,
            f1,
            f2,
            candidate,
        } => {
            let (c, w) = cf_pair(cli, file, category, class)?;
            let f1 = mor_by_name(&c, f1)?;
            let f2 = mor_by_name(&c, f2)?;
            if c.tgt(f1) != c.tgt(f2) {
                return Err(Error::Structure(
                    "the two morphisms do not form a cospan".into(),
                ));
            }
            let (pass, witness) = match candidate {
                Some(spec) => {
                    let parts: Vec<&str> = spec.split(',').collect();
                    if parts.len() != 3 {
                        return Err(Error::Structure(
                            "candidate must be `apex,p1,p2`".into(),
                        ));
                    }
                    let apex = c.obj_by_name(parts[0]).ok_or_else(|| {
                        Error::Structure(format!("no object named `{}`", parts[0]))
                    })?;
                    let p1 = mor_by_name(&c, parts[1])?;
                    let p2 = mor_by_name(&c, parts[2])?;
                    let ok =
                        cf_fractions::is_strong_fraction_pullback(&c, &w, f1, f2, (apex, p1, p2))?;
                    (ok, (!ok).then(|| format!("cone `{spec}` is not a fiber product")))
                }
                None => {
                    let mut found = None;
                    'search: for apex in c.objects() {
                        for p1 in c.hom(apex, c.src(f1)) {
                            for p2 in c.hom(apex, c.src(f2)) {
                                if compose(&c, f1, p1)? != compose(&c, f2, p2)? {
                                    continue;
                                }
                                if cf_fractions::is_strong_fraction_pullback(
                                    &c,
                                    &w,
                                    f1,
                                    f2,
                                    (apex, p1, p2),
                                )? {
                                    found = Some(format!(
                                        "{},{},{}",
                                        c.object_name(apex),
                                        c.mor_name(p1),
                                        c.mor_name(p2)
                                    ));
                                    break 'search;
                                }
                            }
                        }
                    }
                    match found {
                        Some(cand) => (true, Some(format!("fiber product at `{cand}`"))),
                        None => (false, Some("no apex".into())),
                    }
                }
            };
            Ok((
                json!({
                    "schema": 1,
                    "command": "pullback",
                    "category": category,
                    "class": class,
                    "checks": [check_json("pullback", pass, witness)],
                    "verdict": verdict(pass),
                }),
                pass,
            ))
        }
        Cmd::CheckAbc {
            file,
            bicategory,
            class,
            f1,
            f2,
            apex,
            p1,
            p2,
            omega,
        } => {
            let doc = load(cli, file)?;
            let b = frontend::resolve_bicategory(&doc, bicategory, &caps_for(cli))?;
            cap_objects(cli, b.n_objects(), bicategory)?;
            let w = frontend::resolve_one_class(&doc, class, &b)?;
            let one = |n: &str| {
                b.one_by_name(n)
                    .ok_or_else(|| Error::Structure(format!("no 1-cell named `{n}`")))
            };
            let inp = AbcInput {
                f1: one(f1)?,
                f2: one(f2)?,
                c: b
                    .obj_by_name(apex)
                    .ok_or_else(|| Error::Structure(format!("no object named `{apex}`")))?,
                p1: one(p1)?,
                p2: one(p2)?,
                omega: b
                    .cell_by_name(omega)
                    .ok_or_else(|| Error::Structure(format!("no 2-cell named `{omega}`")))?,
            };
            let _policy = match cli.seed_choices {
                Seed::Lex => ChoicePolicy::Lex,
                Seed::C3 => ChoicePolicy::C3,
            };
            let report = check_conditions(&b, &w, &inp)?;
            let checks = vec![
                check_json("condition-a", report.a.pass, report.a.witness.clone()),
                check_json("condition-b", report.b.pass, report.b.witness.clone()),
                check_json("condition-c", report.c.pass, report.c.witness.clone()),
            ];
            let pass = report.all_pass();
            Ok((
                json!({
                    "schema": 1,
                    "command": "check-abc",
                    "bicategory": bicategory,
                    "class": class,
                    "checks": checks,
                    "verdict": verdict(pass),
                }),
                pass,
            ))
        }
        Cmd::Suite { fixture } => {
            let report = suite::run_suite(fixture)?;
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| check_json(&c.name, c.pass, Some(c.detail.clone())))
                .collect();
            let pass = report.all_pass();
            Ok((
                json!({
                    "schema": 1,
                    "command": "suite",
                    "fixture": report.fixture,
                    "checks": checks,
                    "verdict": verdict(pass),
                }),
                pass,
            ))
        }
    }
}
