//! End-to-end acceptance battery.  Each test prints a single
//! `criterion N: pass|fail` line and asserts the corresponding battery.

use std::process::Command;

use catfrac::frontend;
use catfrac::suite;

fn report(n: usize, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {n}: {} ({name}: {detail})",
        if pass { "pass" } else { "fail" }
    );
    assert!(pass, "criterion {n} ({name}): {detail}");
}

#[test]
fn criterion_1_axiom_agreement() {
    let c = suite::criterion_axiom_agreement().unwrap();
    report(1, &c.name, c.pass, &c.detail);
}

#[test]
fn criterion_2_localization_sanity() {
    let c = suite::criterion_localization_sanity().unwrap();
    report(2, &c.name, c.pass, &c.detail);
}

#[test]
fn criterion_3_oracle_equivalence() {
    let c = suite::criterion_oracle_equivalence().unwrap();
    report(3, &c.name, c.pass, &c.detail);
}

#[test]
fn criterion_4_headline_equivalence() {
    let c = suite::criterion_headline_equivalence().unwrap();
    report(4, &c.name, c.pass, &c.detail);
}

#[test]
fn criterion_5_existence_and_general_squares() {
    let c = suite::criterion_existence_and_general_squares().unwrap();
    report(5, &c.name, c.pass, &c.detail);
}

#[test]
fn criterion_6_transport_invariance() {
    let c = suite::criterion_transport_invariance().unwrap();
    report(6, &c.name, c.pass, &c.detail);
}

#[test]
fn criterion_7_closed_form_lemmas() {
    let c = suite::criterion_closed_form_lemmas().unwrap();
    report(7, &c.name, c.pass, &c.detail);
}

#[test]
fn criterion_8_choice_independence() {
    let c = suite::criterion_choice_independence().unwrap();
    report(8, &c.name, c.pass, &c.detail);
}

fn fixture_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn frontend_battery() -> Result<String, String> {
    // Every shipped fixture file parses and round-trips.
    let mut files = 0usize;
    for entry in std::fs::read_dir(fixture_dir()).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().map(|e| e != "cat").unwrap_or(true) {
            continue;
        }
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let doc = frontend::parse(&text)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        let reparsed = frontend::parse(&frontend::print(&doc))
            .map_err(|e| format!("{}: reprint: {e}", path.display()))?;
        if reparsed != doc {
            return Err(format!("{}: round-trip changed the document", path.display()));
        }
        files += 1;
    }
    if files < 9 {
        return Err(format!("only {files} fixture files found"));
    }
    // Malformed inputs carry 1-based positions (grammatical-but-unresolvable
    // cases must fail during resolution instead).
    for (i, src) in frontend::MALFORMED_EXAMPLES.iter().enumerate() {
        match frontend::parse(src) {
            Err(e) if e.line >= 1 && e.column >= 1 => {}
            Err(e) => return Err(format!("case {i}: unpositioned error {e}")),
            Ok(doc) => {
                let name = match doc.items.first() {
                    Some(frontend::Item::Category(c)) => c.name.v.clone(),
                    Some(frontend::Item::Bicategory(b)) => b.base.name.v.clone(),
                    _ => return Err(format!("malformed case {i} parsed: {src}")),
                };
                if frontend::resolve_bicategory(
                    &doc,
                    &name,
                    &catfrac::bicat::SizeCaps::default(),
                )
                .is_ok()
                {
                    return Err(format!("malformed case {i} resolved: {src}"));
                }
            }
        }
    }
    // Exit-code contract: 0 on pass, 1 on a failed check, 2 on bad input.
    let bin = env!("CARGO_BIN_EXE_catfrac");
    let dir = fixture_dir();
    let code = |args: &[&str]| {
        Command::new(bin)
            .current_dir(&dir)
            .args(args)
            .output()
            .map(|o| o.status.code().unwrap_or(-1))
            .map_err(|e| e.to_string())
    };
    let cases: [(&[&str], i32); 4] = [
        (
            &["check-cf", "arrow.cat", "--category", "ARROW", "--class", "W"],
            0,
        ),
        (
            &[
                "pullback",
                "double_diamond.cat",
                "--category",
                "DOUBLE_DIAMOND",
                "--class",
                "IDS",
                "--f1",
                "b1a",
                "--f2",
                "b2a",
                "--format",
                "json",
            ],
            1,
        ),
        (
            &["check-cf", "arrow.cat", "--category", "MISSING", "--class", "W"],
            2,
        ),
        (&["check-cf", "arrow.cat"], 2),
    ];
    for (args, want) in cases {
        let got = code(args)?;
        if got != want {
            return Err(format!("`{}` exited {got}, expected {want}", args.join(" ")));
        }
    }
    Ok(format!(
        "{files} files round-trip, {} malformed cases positioned, exit codes hold",
        frontend::MALFORMED_EXAMPLES.len()
    ))
}

#[test]
fn criterion_9_frontend() {
    match frontend_battery() {
        Ok(detail) => report(9, "frontend", true, &detail),
        Err(detail) => report(9, "frontend", false, &detail),
    }
}
