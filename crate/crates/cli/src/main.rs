//! `toric-wb`: command-line front end to the toric workbench.
//!
//! Every command prints a JSON report. Exit codes: 0 success or positive
//! verdict, 1 negative verdict, 2 input error, 3 internal error.

mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use toric_workbench::homology::homology as homology_of;
use toric_workbench::io::matrix_to_json;
use toric_workbench::{
    acts_almost_freely, acts_freely, extend_to_characteristic, face_ring_mod2, h2_of_quotient,
    is_homology_sphere, is_rational_characteristic, quotient_projection, search_free, verify_c69,
    w2_of_quotient, CharMatrix, Error, Extension, ExtensionParams, Flavor, Freeness, IntMatrix,
    SearchConfig, SearchMode, SimplicialComplex,
};

#[derive(Parser)]
#[command(
    name = "toric-wb",
    version,
    about = "Exact computations for moment-angle complexes and torus quotients"
)]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Do not print the report to stdout.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ComplexArg {
    /// Path to a JSON complex; `cyclic:N:M` and `simplex-boundary:N` also work.
    #[arg(long)]
    complex: String,
}

#[derive(Args)]
struct ThetaSource {
    /// Projection matrix `Θ` in matrix JSON.
    #[arg(long, conflicts_with = "torus", required_unless_present = "torus")]
    theta: Option<String>,
    /// Subtorus JSON; `Θ` is derived from a unimodular completion.
    #[arg(long)]
    torus: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Facets of the boundary of the cyclic polytope C_n(m).
    FacetsCyclic { n: usize, m: usize },
    /// Reduced and unreduced homology over Z and Z/2.
    Homology(ComplexArg),
    /// Certify Z_K as a manifold via the recursive homology-sphere criterion.
    CheckManifold {
        #[command(flatten)]
        complex: ComplexArg,
        /// Include the full recursion tree.
        #[arg(long)]
        certificate: bool,
    },
    /// Decide whether a subtorus acts freely (or almost freely) on Z_K.
    CheckFree {
        #[command(flatten)]
        complex: ComplexArg,
        /// Subtorus JSON.
        #[arg(long)]
        torus: String,
        /// Only require finite isotropy.
        #[arg(long)]
        almost: bool,
    },
    /// Check that a (rational) matrix is characteristic for K.
    CheckChar {
        #[command(flatten)]
        complex: ComplexArg,
        /// Characteristic matrix in matrix JSON.
        #[arg(long = "char")]
        char_matrix: String,
    },
    /// Extend a subtorus to T(Λ) for a rational characteristic matrix Λ.
    ExtendChar {
        #[command(flatten)]
        complex: ComplexArg,
        /// Subtorus JSON.
        #[arg(long)]
        torus: String,
        /// Entries sampled from [-B, B]; default max(3, m).
        #[arg(long)]
        entry_bound: Option<i64>,
        /// Give up after this many random candidates.
        #[arg(long, default_value_t = 100_000)]
        max_tries: u64,
    },
    /// H^2 of the quotient Z_K/T as an abelian group presentation.
    QuotientH2(ThetaSource),
    /// w_2 of the quotient Z_K/T.
    W2(ThetaSource),
    /// Stiefel-Whitney classes and numbers of a quasitoric manifold or small cover.
    SwQuasitoric {
        #[command(flatten)]
        complex: ComplexArg,
        /// Characteristic matrix in matrix JSON.
        #[arg(long = "char")]
        char_matrix: String,
        /// 2 for quasitoric manifolds, 1 for small covers.
        #[arg(long, default_value_t = 2)]
        generator_degree: usize,
    },
    /// Run the full check of the C_6(9) example.
    VerifyC69,
    /// Bounded search for freely acting subtori.
    SearchFree {
        #[command(flatten)]
        complex: ComplexArg,
        /// Rank of the subtori to search for.
        #[arg(long)]
        k: usize,
        /// Comma-separated allowed entries.
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        entries: String,
        /// Sample this many random candidates instead of enumerating (needs --seed).
        #[arg(long)]
        samples: Option<u64>,
        /// Check facets only once a candidate is complete.
        #[arg(long)]
        no_prune: bool,
        /// Refuse searches whose candidate count exceeds this.
        #[arg(long, default_value_t = toric_workbench::search::DEFAULT_CEILING)]
        ceiling: u128,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

macro_rules! lib {
    ($e:expr) => {
        $e.map_err(|e| CliError::from(Error::from(e)))
    };
}

struct Outcome {
    report: Value,
    exit: u8,
}

impl Outcome {
    fn success(report: Value) -> Self {
        Outcome { report, exit: 0 }
    }

    /// Sets `"verdict"` and the matching exit code.
    fn verdict(mut report: Value, verdict: bool) -> Self {
        report["verdict"] = json!(verdict);
        Outcome {
            report,
            exit: if verdict { 0 } else { 1 },
        }
    }
}

fn complex_summary(k: &SimplicialComplex) -> Value {
    json!({
        "m": k.m(),
        // number of vertices of a facet; 0 when there is no simplex
        "n": k.dimension() + 1,
        "dimension": k.dimension(),
        "facet_count": k.facets().len(),
        "pure": k.is_pure(),
    })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::FacetsCyclic { n, m } => {
            let k = lib!(toric_workbench::cyclic_polytope_boundary(*n, *m))?;
            Ok(Outcome::success(json!({
                "summary": complex_summary(&k),
                "complex": k,
                "f_vector": k.f_vector(),
            })))
        }
        Command::Homology(c) => {
            let k = input::complex(&c.complex)?;
            Ok(Outcome::success(json!({
                "summary": complex_summary(&k),
                "reduced": homology_of(&k, Flavor::Reduced),
                "unreduced": homology_of(&k, Flavor::Unreduced),
                "euler_characteristic": k.euler_characteristic(),
            })))
        }
        Command::CheckManifold {
            complex,
            certificate,
        } => {
            let k = input::complex(&complex.complex)?;
            let cert = is_homology_sphere(&k);
            let verdict = cert.is_homology_sphere;
            let mut report = json!({
                "summary": complex_summary(&k),
                "manifold": if verdict { "certified_manifold" } else { "unknown" },
                "criterion": cert.criterion,
                "distinct_links_checked": cert.distinct_links_checked,
            });
            if *certificate {
                report["certificate"] = json!(cert.root);
            }
            Ok(Outcome::verdict(report, verdict))
        }
        Command::CheckFree {
            complex,
            torus,
            almost,
        } => {
            let k = input::complex(&complex.complex)?;
            let t = input::subtorus(torus)?;
            if *almost {
                let verdict = lib!(acts_almost_freely(&t, &k))?;
                return Ok(Outcome::verdict(
                    json!({ "property": "almost_free", "dim": t.dim() }),
                    verdict,
                ));
            }
            let freeness = lib!(acts_freely(&t, &k))?;
            let mut report = json!({ "property": "free", "dim": t.dim() });
            if let Freeness::NotFree { facet } = &freeness {
                report["witness_facet"] = json!(facet);
                report["complement"] = json!(k.complement(facet));
            }
            Ok(Outcome::verdict(report, freeness.is_free()))
        }
        Command::CheckChar {
            complex,
            char_matrix,
        } => {
            let k = input::complex(&complex.complex)?;
            let lambda = CharMatrix::from_rational(&input::rat_matrix(char_matrix)?);
            let verdict = lib!(is_rational_characteristic(&lambda, &k))?;
            Ok(Outcome::verdict(
                json!({ "integerized": matrix_to_json(lambda.matrix()) }),
                verdict,
            ))
        }
        Command::ExtendChar {
            complex,
            torus,
            entry_bound,
            max_tries,
        } => {
            let seed = cli
                .seed
                .ok_or_else(|| CliError::Input("extend-char requires --seed".into()))?;
            let k = input::complex(&complex.complex)?;
            let t = input::subtorus(torus)?;
            let mut params = ExtensionParams::defaults_for(k.m(), seed);
            params.max_tries = *max_tries;
            if let Some(b) = entry_bound {
                params.entry_bound = *b;
            }
            let params_json = json!({
                "seed": seed,
                "entry_bound": params.entry_bound,
                "max_tries": params.max_tries,
            });
            match lib!(extend_to_characteristic(&t, &k, params))? {
                Extension::Found {
                    theta_full,
                    lambda,
                    tries,
                } => Ok(Outcome::verdict(
                    json!({
                        "params": params_json,
                        "tries": tries,
                        "theta_full": matrix_to_json(&theta_full),
                        "lambda": matrix_to_json(lambda.matrix()),
                    }),
                    true,
                )),
                Extension::Exhausted { tries } => Ok(Outcome::verdict(
                    json!({ "params": params_json, "tries": tries, "status": "exhausted" }),
                    false,
                )),
            }
        }
        Command::QuotientH2(src) => {
            let theta = theta_from(src)?;
            let h2 = h2_of_quotient(&theta);
            Ok(Outcome::success(json!({
                "theta": matrix_to_json(&theta),
                "h2": h2,
                "relations": h2.relations(),
            })))
        }
        Command::W2(src) => {
            let theta = theta_from(src)?;
            let w2 = w2_of_quotient(&theta);
            Ok(Outcome::success(json!({
                "theta": matrix_to_json(&theta),
                "w2": w2,
                "class": w2.class.to_polynomial(),
            })))
        }
        Command::SwQuasitoric {
            complex,
            char_matrix,
            generator_degree,
        } => {
            let k = input::complex(&complex.complex)?;
            let lambda = input::int_matrix(char_matrix)?;
            let ring = lib!(face_ring_mod2(&k, &lambda, *generator_degree))?;
            let classes = ring.total_sw_class();
            let total: Vec<String> = classes
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| c.to_polynomial())
                .collect();
            let mut report = json!({
                "generator_degree": generator_degree,
                "graded_dims": ring.graded_dims(),
                "classes": classes,
                "total_class": total.join(" + "),
                "trivial": ring.sw_triviality(),
            });
            match ring.sw_numbers() {
                Ok(numbers) => report["sw_numbers"] = json!(numbers),
                Err(e) => report["sw_numbers_error"] = json!(e.to_string()),
            }
            Ok(Outcome::success(report))
        }
        Command::VerifyC69 => {
            let report = verify_c69();
            let passed = report.passed;
            Ok(Outcome::verdict(json!(report), passed))
        }
        Command::SearchFree {
            complex,
            k: dim,
            entries,
            samples,
            no_prune,
            ceiling,
        } => {
            let k = input::complex(&complex.complex)?;
            let mode = match samples {
                Some(samples) => SearchMode::Random {
                    seed: cli
                        .seed
                        .ok_or_else(|| CliError::Input("random search requires --seed".into()))?,
                    samples: *samples,
                },
                None => SearchMode::Exhaustive,
            };
            let cfg = SearchConfig {
                k: *dim,
                entry_set: input::entry_set(entries)?,
                mode,
                prune: !no_prune,
                ceiling: *ceiling,
            };
            let outcome = lib!(search_free(&k, &cfg))?;
            Ok(Outcome::success(json!(outcome)))
        }
    }
}

fn theta_from(src: &ThetaSource) -> Result<IntMatrix, CliError> {
    match (&src.theta, &src.torus) {
        (Some(path), _) => input::int_matrix(path),
        (None, Some(path)) => {
            let t = input::subtorus(path)?;
            lib!(quotient_projection(&t))
        }
        (None, None) => Err(CliError::Input("pass --theta or --torus".into())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(3);
        }
    };
    let text = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
    if let Some(path) = &cli.json_out {
        if let Err(e) = fs::write(path, format!("{text}\n")) {
            eprintln!("input error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if !cli.quiet {
        println!("{text}");
    }
    ExitCode::from(outcome.exit)
}
