//! Command-line driver. Subcommands map one-to-one onto the library surface;
//! all data output goes to stdout, diagnostics to stderr, and exit codes
//! follow the BSD sysexits convention (64 usage, 65 domain/data, 66 file)
//! with 1 reserved for "witness found" and 2 for "not extremal".

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::audit::audit_report;
use crate::detect::find_witness;
use crate::digraph::Digraph;
use crate::families::{
    build_family, enumerate_params, ex_formula, remark_digraph, D8Variant, FamilyId, FamilyParams,
};
use crate::io::{decode_json, encode_dot, encode_json_with_meta, DocumentMeta};
use crate::recognize::{classify, Classification};
use crate::search::{max_free_branch_and_bound, max_free_exhaustive_with, SearchConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_WITNESS: i32 = 1;
pub const EXIT_NOT_EXTREMAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DOMAIN: i32 = 65;
pub const EXIT_FILE: i32 = 66;

#[derive(Parser)]
#[command(
    name = "p22free",
    about = "Extremal P2,2-free digraphs: build, check, recognize, search",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form maximum arc count for order n (defined for n >= 13)
    Formula { n: usize },
    /// Build a member of one of the families d1..d10
    Build {
        /// Family name, d1 through d10
        family: String,
        /// Digraph order
        #[arg(long)]
        n: usize,
        /// Number of extra 2-cycles (families with a free 2-cycle count)
        #[arg(long)]
        c: Option<usize>,
        /// Size of the 2-cycle part of V2 (d2, d6, d7)
        #[arg(long)]
        v4: Option<usize>,
        /// D8 broadcast variant for the vertex x: a or b
        #[arg(long)]
        variant: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Test a digraph document for P2,2-freeness (exit 1 when a witness exists)
    Check { file: PathBuf },
    /// Compute the maximum P2,2-free size at order n by search
    Search {
        #[arg(long)]
        n: usize,
        /// Enumerate every labeled digraph (n <= 5)
        #[arg(long, conflicts_with = "bnb")]
        exhaustive: bool,
        /// Branch-and-bound over arc decisions (default)
        #[arg(long)]
        bnb: bool,
        /// Seed the incumbent with a constructed family member (n >= 13)
        #[arg(long)]
        seed_family: bool,
        /// Node budget for branch-and-bound
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Classify a digraph document against the extremal classes (exit 2 when not extremal)
    Recognize { file: PathBuf },
    /// Print the structural audit report for a digraph document
    Audit {
        file: PathBuf,
        /// Vertex to audit at (default: lowest vertex of maximum out-degree)
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Emit the 5-vertex 12-arc P2,2-free digraph
    Remark {
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Runs one invocation. `args` includes the program name, as in
/// `std::env::args`. Returns the process exit code.
pub fn cli_dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage text; --help and --version are
            // successful "errors"
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match run(cli.command, out, err) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn run(command: Command, out: &mut dyn Write, _err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Formula { n } => {
            let value = ex_formula(n).map_err(|e| fail(EXIT_DOMAIN, e.to_string()))?;
            writeln!(out, "{value}").ok();
            Ok(EXIT_OK)
        }
        Command::Build {
            family,
            n,
            c,
            v4,
            variant,
            output,
            format,
        } => {
            let family: FamilyId = family
                .parse()
                .map_err(|e: String| fail(EXIT_DOMAIN, e))?;
            let params = select_params(family, n, c, v4, variant.as_deref())?;
            let d = build_family(&params).map_err(|e| fail(EXIT_DOMAIN, e.to_string()))?;
            let meta = DocumentMeta {
                family: Some(family.to_string()),
                params: Some(params.describe()),
                provenance: Some("p22free build".into()),
            };
            emit(&d, Some(meta), format, output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Check { file } => {
            let d = load_digraph(&file)?;
            match find_witness(&d) {
                None => {
                    writeln!(out, "FREE").ok();
                    Ok(EXIT_OK)
                }
                Some(w) => {
                    writeln!(out, "P22 {} {} {} {}", w.u1, w.u2, w.u3, w.u4).ok();
                    Ok(EXIT_WITNESS)
                }
            }
        }
        Command::Search {
            n,
            exhaustive,
            bnb: _,
            seed_family,
            limit,
        } => {
            let result = if exhaustive {
                if seed_family {
                    return Err(fail(EXIT_DOMAIN, "--seed-family applies to --bnb only"));
                }
                max_free_exhaustive_with(n, true).map_err(|e| fail(EXIT_DOMAIN, e.to_string()))?
            } else {
                let mut config = SearchConfig::new(n);
                config.node_limit = limit;
                config.collect_witnesses = n <= 8;
                if seed_family {
                    let target =
                        ex_formula(n).map_err(|e| fail(EXIT_DOMAIN, e.to_string()))?;
                    config.seed_lower_bound = Some(target);
                }
                max_free_branch_and_bound(&config)
                    .map_err(|e| fail(EXIT_DOMAIN, e.to_string()))?
            };
            writeln!(out, "best_arcs: {}", result.best_arcs).ok();
            writeln!(out, "optimal: {}", result.optimal).ok();
            writeln!(out, "witnesses: {}", result.witnesses.len()).ok();
            Ok(EXIT_OK)
        }
        Command::Recognize { file } => {
            let d = load_digraph(&file)?;
            let verdict = classify(&d).map_err(|e| fail(EXIT_DOMAIN, e.to_string()))?;
            writeln!(out, "{verdict}").ok();
            match verdict {
                Classification::Member { .. } => Ok(EXIT_OK),
                Classification::NotExtremal(_) => Ok(EXIT_NOT_EXTREMAL),
            }
        }
        Command::Audit { file, vertex } => {
            let d = load_digraph(&file)?;
            let report =
                audit_report(&d, vertex).map_err(|e| fail(EXIT_DOMAIN, e.to_string()))?;
            write!(out, "{report}").ok();
            Ok(EXIT_OK)
        }
        Command::Remark { output, format } => {
            let meta = DocumentMeta {
                family: None,
                params: None,
                provenance: Some("p22free remark".into()),
            };
            emit(&remark_digraph(), Some(meta), format, output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
    }
}

/// First enumerated parameter tuple matching the requested constraints.
fn select_params(
    family: FamilyId,
    n: usize,
    c: Option<usize>,
    v4: Option<usize>,
    variant: Option<&str>,
) -> Result<FamilyParams, Failure> {
    let wanted_variant = match variant {
        None => None,
        Some("a") | Some("A") => Some(D8Variant::MissesZ),
        Some("b") | Some("B") => Some(D8Variant::MissesW),
        Some(other) => {
            return Err(fail(
                EXIT_DOMAIN,
                format!("unknown variant '{other}' (expected a or b)"),
            ))
        }
    };
    enumerate_params(family, n)
        .into_iter()
        .find(|p| {
            let c_ok = match (c, p) {
                (None, _) => true,
                (Some(c), FamilyParams::D1 { two_cycles, .. })
                | (Some(c), FamilyParams::D4 { two_cycles, .. })
                | (Some(c), FamilyParams::D10 { two_cycles, .. }) => *two_cycles == c,
                (Some(c), FamilyParams::D5 { n, s1, s2 }) => {
                    (crate::families::v1_size(*n) - s1 - s2) / 2 == c
                }
                (Some(c), FamilyParams::D2 { v4_size, .. })
                | (Some(c), FamilyParams::D6 { v4_size, .. })
                | (Some(c), FamilyParams::D7 { v4_size, .. }) => *v4_size == 2 * c,
                (Some(_), _) => false,
            };
            let v4_ok = match (v4, p) {
                (None, _) => true,
                (Some(k), FamilyParams::D2 { v4_size, .. })
                | (Some(k), FamilyParams::D6 { v4_size, .. })
                | (Some(k), FamilyParams::D7 { v4_size, .. }) => *v4_size == k,
                (Some(_), _) => false,
            };
            let variant_ok = match (wanted_variant, p) {
                (None, _) => true,
                (Some(v), FamilyParams::D8 { variant, .. }) => *variant == v,
                (Some(_), _) => false,
            };
            c_ok && v4_ok && variant_ok
        })
        .ok_or_else(|| {
            fail(
                EXIT_DOMAIN,
                format!("no admissible {family} parameters at n={n} with the given constraints"),
            )
        })
}

fn load_digraph(path: &Path) -> Result<Digraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_FILE, format!("{}: {e}", path.display())))?;
    decode_json(&text).map_err(|e| fail(EXIT_DOMAIN, format!("{}: {e}", path.display())))
}

fn emit(
    d: &Digraph,
    meta: Option<DocumentMeta>,
    format: Format,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let text = match format {
        Format::Json => {
            let mut t = encode_json_with_meta(d, meta);
            t.push('\n');
            t
        }
        Format::Dot => encode_dot(d),
    };
    match output {
        None => {
            out.write_all(text.as_bytes()).ok();
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| fail(EXIT_FILE, format!("{}: {e}", path.display()))),
    }
}
