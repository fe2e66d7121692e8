//! End-to-end acceptance gate: runs the shipped binary over the golden
//! corpus, re-derives the headline numbers straight from the core
//! library, and prints one pass/fail line per published guarantee.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use leibniz_core::automorphisms::fixed_point_analysis_6_4;
use leibniz_core::catalog;
use leibniz_core::derivations::{
    compute_der, rigidity_stabilizer, stabilizer_at, verify_decomposition,
};
use leibniz_core::io;
use leibniz_core::two_local::nf_rigidity_check;

const BIN: &str = env!("CARGO_BIN_EXE_leibniz");

fn golden_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/golden"))
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

struct Gate {
    lines: Vec<(bool, String)>,
}

impl Gate {
    fn new() -> Self {
        Gate { lines: Vec::new() }
    }

    fn check(&mut self, number: usize, what: &str, ok: bool) {
        let line = format!(
            "[{}] criterion {number:>2}: {what}",
            if ok { "PASS" } else { "FAIL" }
        );
        println!("{line}");
        self.lines.push((ok, line));
    }

    fn finish(self) {
        assert_eq!(self.lines.len(), 12, "one line per criterion");
        let failures: Vec<String> = self
            .lines
            .into_iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, line)| line)
            .collect();
        assert!(failures.is_empty(), "{}", failures.join("\n"));
    }
}

#[test]
fn acceptance() {
    let mut gate = Gate::new();

    let first = run(&["--json", "paper-suite"]);
    let report: serde_json::Value =
        serde_json::from_slice(&first.stdout).expect("suite output parses as JSON");
    let records = report["records"].as_array().expect("records array");
    let ids: Vec<&str> = records.iter().filter_map(|r| r["id"].as_str()).collect();
    let expected_ids: Vec<String> = (1..=12).map(|k| format!("C{k:02}")).collect();
    let record_passed = |id: &str| {
        records
            .iter()
            .any(|r| r["id"] == id && r["verdict"] == "pass")
    };

    // 1: every golden file satisfies the bracket identity, parses
    // canonically, and is byte-identical to its catalog construction.
    let mut corpus_ok = record_passed("C01");
    for name in catalog::golden_names() {
        let path = golden_dir().join(format!("{name}.json"));
        let text = fs::read_to_string(&path).unwrap_or_default();
        let from_file = io::algebra_from_json(&text, false);
        let reference = catalog::by_name(name);
        corpus_ok &= match (from_file, reference) {
            (Ok(a), Some(b)) => a == b && text == io::algebra_to_json(&b),
            _ => false,
        };
    }
    gate.check(1, "golden corpus identity suite and catalog fidelity", corpus_ok);

    // 2: derivation dimensions of the simple family, re-derived.
    let mut dims_ok = record_passed("C02");
    for (m, want) in [(2usize, 4usize), (3, 5), (4, 4), (5, 4)] {
        dims_ok &= catalog::make_simple_sl2(m)
            .and_then(|dec| verify_decomposition(&dec))
            .map(|r| r.der_dim == want && r.equal && r.direct)
            .unwrap_or(false);
    }
    gate.check(2, "derivation decomposition dimensions 4/5/4/4", dims_ok);

    // 3: trivial stabilizer at the distinguished point, nontrivial on sl2.
    let mut rigidity_ok = record_passed("C03");
    for m in [2usize, 3, 4, 5] {
        rigidity_ok &= catalog::make_simple_sl2(m)
            .map(|dec| rigidity_stabilizer(&dec).dim() == 0)
            .unwrap_or(false);
    }
    let sl2 = catalog::make_sl2();
    rigidity_ok &= stabilizer_at(&compute_der(&sl2).space, &sl2.basis_vector(0)).dim() >= 1;
    gate.check(3, "derivation rigidity with the sl2 contrast", rigidity_ok);

    gate.check(
        4,
        "symbolic local-derivation bound collapses onto Der",
        record_passed("C04"),
    );
    gate.check(
        5,
        "filiform local non-derivations certified pointwise",
        record_passed("C05"),
    );
    gate.check(
        6,
        "2-local derivation construction with non-additivity",
        record_passed("C06"),
    );

    // 7: null-filiform derivation dimensions, re-derived.
    let mut nf_ok = record_passed("C07");
    for n in 2..=8 {
        nf_ok &= nf_rigidity_check(n)
            .map(|r| r.der_dim == n && r.closed_form_spans && r.evaluation_injective)
            .unwrap_or(false);
    }
    gate.check(7, "null-filiform derivation rigidity for dimensions 2-8", nf_ok);

    // 8: the printed example has exactly the two known fixed-point
    // solutions, re-derived.
    let fixed_ok = record_passed("C08")
        && fixed_point_analysis_6_4()
            .map(|a| a.solutions.len() == 2 && a.complete_over_extensions)
            .unwrap_or(false);
    gate.check(8, "fixed-point analysis finds exactly two solutions", fixed_ok);

    gate.check(
        9,
        "automorphism rigidity at the distinguished point",
        record_passed("C09"),
    );
    gate.check(
        10,
        "weight machinery and theta-scaling family",
        record_passed("C10"),
    );
    gate.check(
        11,
        "2-local automorphism construction and null-filiform rigidity",
        record_passed("C11"),
    );

    // 12: the suite binary itself — record inventory, exit code, byte
    // determinism, traceability markdown, and the missing-file contract.
    let mut tool_ok = first.status.code() == Some(0) && ids == expected_ids;

    let second = run(&["--json", "paper-suite"]);
    tool_ok &= second.stdout == first.stdout;

    let scratch = std::env::temp_dir().join(format!("leibniz-acceptance-{}", std::process::id()));
    fs::create_dir_all(&scratch).expect("scratch dir");
    let md_path = scratch.join("report.md");
    let md_run = run(&[
        "--markdown",
        md_path.to_str().expect("utf-8 path"),
        "paper-suite",
    ]);
    let markdown = fs::read_to_string(&md_path).unwrap_or_default();
    tool_ok &= md_run.status.code() == Some(0)
        && markdown.contains("| record | claim | verdict | check |")
        && expected_ids.iter().all(|id| markdown.contains(id.as_str()));

    let partial = scratch.join("golden-partial");
    fs::create_dir_all(&partial).expect("partial dir");
    for name in catalog::golden_names() {
        if name != "nf6" {
            let file = format!("{name}.json");
            fs::copy(golden_dir().join(&file), partial.join(&file)).expect("copy golden");
        }
    }
    let missing = run(&[
        "paper-suite",
        "--golden-dir",
        partial.to_str().expect("utf-8 path"),
    ]);
    tool_ok &= missing.status.code() == Some(2)
        && String::from_utf8_lossy(&missing.stderr).contains("nf6.json");
    fs::remove_dir_all(&scratch).ok();

    gate.check(12, "deterministic suite run with traceability report", tool_ok);

    gate.finish();
}
