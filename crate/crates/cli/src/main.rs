//! Command-line front door: load and validate algebra files, run the
//! individual analyses, and run the full verification suite with a
//! traceable report.

mod report;
mod suite;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use leibniz_core::algebra::{Algebra, LinearMap};
use leibniz_core::automorphisms::{
    build_two_local_aut, decompose_blocks, is_automorphism, local_aut_machinery_63, nf_aut_suite,
    nonadditivity_witness, verify_two_local_automorphism,
};
use leibniz_core::catalog::{self, SimpleDecomposition};
use leibniz_core::derivations::{compute_der, inner_derivations, verify_decomposition};
use leibniz_core::error::Error;
use leibniz_core::io;
use leibniz_core::local_derivations::locder_superspace;
use leibniz_core::sample::DEFAULT_SEED;
use leibniz_core::two_local::{
    build_two_local, nf_rigidity_check, nonlinearity_witness, verify_two_local_derivation,
};

use report::{Record, Report};

#[derive(Parser)]
#[command(
    name = "leibniz",
    version,
    about = "Exact-arithmetic certificates for finite-dimensional right Leibniz algebras"
)]
struct Cli {
    /// Print reports as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the report as markdown to this path.
    #[arg(long, global = true, value_name = "PATH")]
    markdown: Option<PathBuf>,

    /// Seed for all randomized sampling; recorded in every report.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file and print its nilpotency profile.
    Check {
        /// Algebra file in the JSON bracket-table format.
        file: PathBuf,
        /// Load without validating the bracket identity.
        #[arg(long)]
        skip_identity_check: bool,
    },
    /// Write a catalog algebra as JSON, or list the catalog.
    Catalog {
        /// Catalog entry to emit.
        #[arg(long, required_unless_present = "list")]
        name: Option<String>,
        /// Write the JSON table here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// List every catalog name.
        #[arg(long)]
        list: bool,
    },
    /// Compute the derivation algebra of an algebra file.
    Derivations {
        file: PathBuf,
        /// Load without validating the bracket identity.
        #[arg(long)]
        skip_identity_check: bool,
    },
    /// Bound the local derivations of an algebra file from above.
    Localder {
        file: PathBuf,
        /// Report the symbolic superspace analysis (the default action).
        #[arg(long)]
        superspace: bool,
        /// Also certify that the linear map in this file lies in the bound.
        #[arg(long, value_name = "MAP")]
        certify: Option<PathBuf>,
        /// Load without validating the bracket identity.
        #[arg(long)]
        skip_identity_check: bool,
    },
    /// Build and verify 2-local derivation data.
    Twolocal {
        /// Run the construction on this algebra file.
        #[arg(long, value_name = "FILE")]
        algebra: Option<PathBuf>,
        /// Run the stock construction with its non-additivity witness.
        #[arg(long)]
        demo: bool,
        /// Derivation rigidity of the null-filiform algebra of dimension N.
        #[arg(long, value_name = "N")]
        nf: Option<usize>,
    },
    /// Automorphism analyses: verification, rigidity, and 2-local data.
    Aut {
        /// Algebra file for --verify.
        file: Option<PathBuf>,
        /// Check that the linear map in this file is an automorphism.
        #[arg(long, value_name = "MAP")]
        verify: Option<PathBuf>,
        /// Report the block structure of the verified map on a
        /// recognized two-sided catalog table.
        #[arg(long)]
        decompose: bool,
        /// Fixed-point analysis of the printed 6-dimensional example.
        #[arg(long = "example-6-4")]
        example_6_4: bool,
        /// Closed-form automorphism suite for the null-filiform algebra
        /// of dimension N.
        #[arg(long, value_name = "N")]
        nf: Option<usize>,
        /// 2-local automorphism construction with its rejection contrast.
        #[arg(long = "twolocal-demo")]
        twolocal_demo: bool,
        /// Weight-operator machinery for module dimension N.
        #[arg(long = "machinery-63", value_name = "N")]
        machinery_63: Option<usize>,
    },
    /// Run the full verification suite over the golden corpus.
    PaperSuite {
        /// Directory holding the golden algebra files.
        #[arg(long, value_name = "DIR")]
        golden_dir: Option<PathBuf>,
    },
}

enum Outcome {
    /// Plain text output with no report (catalog writes and listings).
    Text(String),
    /// A report, optionally rendered in text mode as a single line.
    Report {
        report: Report,
        text: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli).and_then(|outcome| emit(&cli, outcome)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("leibniz: {e}");
            exit_code_for(&e)
        }
    };
    ExitCode::from(code)
}

/// 0 = all pass, 1 = check failed, 2 = input error, 3 = identity
/// violation, 4 = capability bound.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::IdentityViolation { .. } => 3,
        Error::CapabilityBound { .. } => 4,
        Error::HypothesisViolated { .. } => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Check {
            file,
            skip_identity_check,
        } => cmd_check(file, *skip_identity_check, cli.seed),
        Command::Catalog { name, out, list } => {
            cmd_catalog(name.as_deref(), out.as_deref(), *list)
        }
        Command::Derivations {
            file,
            skip_identity_check,
        } => cmd_derivations(file, *skip_identity_check, cli.seed),
        Command::Localder {
            file,
            superspace: _,
            certify,
            skip_identity_check,
        } => cmd_localder(file, certify.as_deref(), *skip_identity_check, cli.seed),
        Command::Twolocal { algebra, demo, nf } => {
            cmd_twolocal(algebra.as_deref(), *demo, *nf, cli.seed)
        }
        Command::Aut {
            file,
            verify,
            decompose,
            example_6_4,
            nf,
            twolocal_demo,
            machinery_63,
        } => cmd_aut(
            file.as_deref(),
            verify.as_deref(),
            *decompose,
            *example_6_4,
            *nf,
            *twolocal_demo,
            *machinery_63,
            cli.seed,
        ),
        Command::PaperSuite { golden_dir } => cmd_paper_suite(golden_dir.as_deref(), cli.seed),
    }
}

fn emit(cli: &Cli, outcome: Outcome) -> Result<u8, Error> {
    match outcome {
        Outcome::Text(s) => {
            println!("{s}");
            Ok(0)
        }
        Outcome::Report { report, text } => {
            if let Some(path) = &cli.markdown {
                fs::write(path, report.render_markdown()).map_err(|e| {
                    Error::data(format!("markdown output {}: {e}", path.display()))
                })?;
            }
            if cli.json {
                println!("{}", report.to_json().trim_end());
            } else if let Some(line) = text {
                println!("{line}");
            } else {
                println!("{}", report.render_text().trim_end());
            }
            Ok(u8::from(!report.all_passed()))
        }
    }
}

fn load_algebra(path: &Path, skip_identity_check: bool) -> Result<Algebra, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::data(format!("algebra file {}: {e}", path.display())))?;
    io::algebra_from_json(&text, skip_identity_check)
}

fn load_map(path: &Path, dim: usize) -> Result<LinearMap, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::data(format!("map file {}: {e}", path.display())))?;
    io::map_from_json(&text, dim)
}

/// Matches a loaded algebra against the catalog tables that carry a
/// two-sided decomposition.
fn recognize_decomposition(a: &Algebra) -> Option<SimpleDecomposition> {
    [
        "simple-sl2-v2",
        "simple-sl2-v3",
        "simple-sl2-v4",
        "simple-sl2-v5",
        "example-6-4",
    ]
    .into_iter()
    .filter_map(catalog::decomposition_by_name)
    .find(|dec| dec.algebra == *a)
}

fn cmd_check(file: &Path, skip_identity_check: bool, seed: u64) -> Result<Outcome, Error> {
    let a = load_algebra(file, skip_identity_check)?;
    let profile = match a.nilindex() {
        Some(k) => format!("nilindex {k}"),
        None => "not nilpotent".to_string(),
    };
    let record = Record::new("check", "plumbing", "algebra file validation")
        .input(file.display().to_string())
        .detail("dim", a.dim())
        .detail(
            "identity",
            if skip_identity_check {
                "skipped"
            } else {
                "verified on all basis triples"
            },
        )
        .detail("profile", &profile);
    let mut report = Report::new(seed);
    report.push(record);
    Ok(Outcome::Report {
        report,
        text: Some(format!("leibniz: ok, {profile}")),
    })
}

fn cmd_catalog(name: Option<&str>, out: Option<&Path>, list: bool) -> Result<Outcome, Error> {
    if list {
        return Ok(Outcome::Text(catalog::catalog_names().join("\n")));
    }
    let name = name.expect("clap requires --name without --list");
    let algebra = catalog::by_name(name)
        .ok_or_else(|| Error::param(format!("unknown catalog name {name}; try --list")))?;
    let json = io::algebra_to_json(&algebra);
    match out {
        Some(path) => {
            fs::write(path, &json)
                .map_err(|e| Error::data(format!("output file {}: {e}", path.display())))?;
            Ok(Outcome::Text(format!(
                "leibniz: wrote {} (dim {})",
                path.display(),
                algebra.dim()
            )))
        }
        None => Ok(Outcome::Text(json.trim_end().to_string())),
    }
}

fn cmd_derivations(file: &Path, skip_identity_check: bool, seed: u64) -> Result<Outcome, Error> {
    let a = load_algebra(file, skip_identity_check)?;
    let der = compute_der(&a);
    let inner = inner_derivations(&a);
    let mut rec = Record::new("der", "reconstruction", "derivation algebra")
        .input(file.display().to_string())
        .detail("dim", a.dim())
        .detail("dim Der", der.dim())
        .detail("dim inner", inner.dim());
    if let Some(dec) = recognize_decomposition(&a) {
        let r = verify_decomposition(&dec)?;
        rec = rec
            .require(r.equal && r.direct)
            .detail(
                "recognized",
                format!("two-sided catalog table, module dim {}", dec.i_indices.len()),
            )
            .detail(
                "decomposition",
                format!(
                    "inner {} + projection{} spans dim {} (direct {}, equals Der {})",
                    r.inner_dim,
                    if r.uses_theta { " + theta" } else { "" },
                    r.constructed_dim,
                    r.direct,
                    r.equal
                ),
            );
    }
    for (k, map) in der.maps.iter().enumerate() {
        let tag = if inner.member(&map.flatten())? {
            "inner"
        } else {
            "outer"
        };
        rec = rec.detail(format!("basis map {}", k + 1), tag);
    }
    let mut report = Report::new(seed);
    report.push(rec);
    Ok(Outcome::Report { report, text: None })
}

fn cmd_localder(
    file: &Path,
    certify: Option<&Path>,
    skip_identity_check: bool,
    seed: u64,
) -> Result<Outcome, Error> {
    let a = load_algebra(file, skip_identity_check)?;
    let (space, der) = locder_superspace(&a)?;
    let equal = space == der.space;
    let mut report = Report::new(seed);
    report.push(
        Record::new("locd", "thm-4.1", "local derivation superspace")
            .input(file.display().to_string())
            .detail("dim Der", der.dim())
            .detail("superspace dim", space.dim())
            .detail(
                "verdict",
                if equal {
                    "equal: every local derivation is a derivation"
                } else {
                    "strictly larger: the bound does not collapse"
                },
            ),
    );
    if let Some(map_path) = certify {
        let map = load_map(map_path, a.dim())?;
        let inside = space.member(&map.flatten())?;
        report.push(
            Record::new("cert", "reconstruction", "superspace membership certificate")
                .input(file.display().to_string())
                .input(map_path.display().to_string())
                .require(inside)
                .detail("in superspace", inside)
                .detail("is derivation", map.is_derivation(&a)),
        );
    }
    Ok(Outcome::Report { report, text: None })
}

/// The 2-local construction with its hypotheses, pair verification, and
/// non-additivity witness on one algebra.
fn two_local_record_on(a: &Algebra, input: String, seed: u64) -> Record {
    let cert = catalog::theorem37_certificate(a);
    let mut rec = Record::new("2loc", "thm-3.7", "2-local derivation construction")
        .input(input)
        .detail("dim", cert.dim)
        .detail("dim [L,L]", cert.dim_l2)
        .detail("annihilator dim", cert.ann_dim)
        .detail("hypotheses", cert.qualifies);
    if !cert.qualifies {
        return rec.require(false);
    }
    match build_two_local(a)
        .and_then(|map| verify_two_local_derivation(&map, seed, 500).map(|c| (map, c)))
    {
        Ok((map, pairs)) => {
            let witness = nonlinearity_witness(&map);
            rec = rec
                .require(pairs.failures == 0 && !witness.additive)
                .detail("pairs", pairs.pairs)
                .detail("failures", pairs.failures)
                .detail("additive", witness.additive);
        }
        Err(e) => rec = rec.error(&e),
    }
    rec
}

fn nf_rigidity_record_on(n: usize) -> Record {
    let mut rec = Record::new("nfd", "rem-3.10", "null-filiform derivation rigidity")
        .input(format!("nf{n}"));
    match nf_rigidity_check(n) {
        Ok(r) => {
            rec = rec
                .require(r.der_dim == r.n && r.closed_form_spans && r.evaluation_injective)
                .detail("dim Der", r.der_dim)
                .detail("closed form spans", r.closed_form_spans)
                .detail("evaluation injective", r.evaluation_injective);
        }
        Err(e) => rec = rec.error(&e),
    }
    rec
}

fn cmd_twolocal(
    algebra: Option<&Path>,
    demo: bool,
    nf: Option<usize>,
    seed: u64,
) -> Result<Outcome, Error> {
    let mut report = Report::new(seed);
    if let Some(path) = algebra {
        let a = load_algebra(path, false)?;
        report.push(two_local_record_on(&a, path.display().to_string(), seed));
    }
    if demo {
        let f1 = catalog::by_name("f1-n5-zero").expect("catalog holds f1-n5-zero");
        report.push(two_local_record_on(&f1, "f1-n5-zero".to_string(), seed));
        let abelian = catalog::make_abelian(3);
        report.push(two_local_record_on(&abelian, "abelian-3".to_string(), seed));
    }
    if let Some(n) = nf {
        report.push(nf_rigidity_record_on(n));
    }
    if report.is_empty() {
        return Err(Error::param("twolocal needs --algebra, --demo, or --nf"));
    }
    Ok(Outcome::Report { report, text: None })
}

fn machinery_record_on(m: usize, seed: u64) -> Record {
    let mut rec = Record::new("m63", "sec-6.3", "weight machinery and the theta-scaling family")
        .input(format!("module dim {m}"));
    match local_aut_machinery_63(m, seed, 10) {
        Ok(r) => {
            rec = rec
                .require(
                    r.bidiagonal_ok
                        && r.recurrence_ok
                        && r.eigenspace_dim == 1
                        && r.scaling_family_ok,
                )
                .detail("bidiagonal shape", r.bidiagonal_ok)
                .detail("top eigenvalue", &r.top_eigenvalue)
                .detail("eigenspace dim", r.eigenspace_dim)
                .detail("halving recurrence", r.recurrence_ok)
                .detail(
                    "scaling family",
                    format!(
                        "automorphism iff lambda != 0 ({} omega samples)",
                        r.omega_trials
                    ),
                );
        }
        Err(e) => rec = rec.error(&e),
    }
    rec
}

fn nf_aut_record_on(n: usize, seed: u64) -> Record {
    let mut rec = Record::new("nfa", "sec-6.2", "null-filiform automorphism closed form")
        .input(format!("nf{n}"));
    match nf_aut_suite(n, seed, 10) {
        Ok(r) => {
            rec = rec
                .require(
                    r.automorphisms_verified == r.trials
                        && r.reconstruction_ok
                        && r.degenerate_rejected,
                )
                .detail(
                    "verified",
                    format!("{}/{}", r.automorphisms_verified, r.trials),
                )
                .detail("determined by first column", r.reconstruction_ok)
                .detail("degenerate rejected", r.degenerate_rejected);
        }
        Err(e) => rec = rec.error(&e),
    }
    rec
}

fn two_local_aut_record_on(seed: u64) -> Record {
    let f1 = catalog::by_name("f1-n5-zero").expect("catalog holds f1-n5-zero");
    let mut rec = Record::new("2la", "thm-6.7", "2-local automorphism construction")
        .input("f1-n5-zero");
    match build_two_local_aut(&f1)
        .and_then(|map| verify_two_local_automorphism(&map, seed, 500).map(|c| (map, c)))
    {
        Ok((map, pairs)) => {
            let witness = nonadditivity_witness(&map);
            rec = rec
                .require(pairs.failures == 0 && !witness.additive)
                .detail("pairs", pairs.pairs)
                .detail("failures", pairs.failures)
                .detail("additive", witness.additive);
        }
        Err(e) => rec = rec.error(&e),
    }
    let nf5 = catalog::by_name("nf5").expect("catalog holds nf5");
    let rejected = build_two_local_aut(&nf5).is_err();
    rec.input("nf5")
        .require(rejected)
        .detail("nf5 construction rejected", rejected)
}

#[allow(clippy::too_many_arguments)]
fn cmd_aut(
    file: Option<&Path>,
    verify: Option<&Path>,
    decompose: bool,
    example_6_4: bool,
    nf: Option<usize>,
    twolocal_demo: bool,
    machinery_63: Option<usize>,
    seed: u64,
) -> Result<Outcome, Error> {
    let mut report = Report::new(seed);
    if let Some(map_path) = verify {
        let file = file.ok_or_else(|| Error::param("--verify needs an algebra file argument"))?;
        let a = load_algebra(file, false)?;
        let phi = load_map(map_path, a.dim())?;
        let ok = is_automorphism(&a, &phi);
        let mut rec = Record::new("aver", "reconstruction", "automorphism verification")
            .input(file.display().to_string())
            .input(map_path.display().to_string())
            .require(ok)
            .detail("is automorphism", ok);
        if decompose {
            match recognize_decomposition(&a) {
                Some(dec) => match decompose_blocks(&dec, &phi) {
                    Ok(blocks) => {
                        rec = rec.detail("ideal block preserved", blocks.gi_vanishes);
                        if let Some(omega) = &blocks.omega {
                            rec = rec.detail("shear coefficient", omega);
                        }
                    }
                    Err(e) => rec = rec.error(&e),
                },
                None => {
                    rec = rec
                        .require(false)
                        .detail("decompose", "not a recognized two-sided catalog table");
                }
            }
        }
        report.push(rec);
    } else if decompose {
        return Err(Error::param("--decompose needs --verify <map.json>"));
    }
    if example_6_4 {
        report.push(suite::fixed_point_record());
    }
    if let Some(n) = nf {
        report.push(nf_aut_record_on(n, seed));
    }
    if twolocal_demo {
        report.push(two_local_aut_record_on(seed));
    }
    if let Some(m) = machinery_63 {
        report.push(machinery_record_on(m, seed));
    }
    if report.is_empty() {
        return Err(Error::param(
            "aut needs --verify, --example-6-4, --nf, --twolocal-demo, or --machinery-63",
        ));
    }
    Ok(Outcome::Report { report, text: None })
}

fn cmd_paper_suite(golden_dir: Option<&Path>, seed: u64) -> Result<Outcome, Error> {
    let default = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    let dir = golden_dir.unwrap_or(&default);
    let report = suite::run(dir, seed)?;
    Ok(Outcome::Report { report, text: None })
}
