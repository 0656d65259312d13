//! Command-line front end.
//!
//! Exit codes: 0 success, 1 error, 2 when `certify-no-minrank` finds a
//! certificate.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::claspers::{self, ClasperFile};
use crate::error::Error;
use crate::exec::Execution;
use crate::laurent::LaurentPoly;
use crate::ltheta::{self, Membership, ThetaElement};
use crate::matrix::{Int, Matrix};
use crate::seifert::{self, SearchOutcome, SeifertFile, SeifertMatrix, TubeFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CERTIFICATE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "knotq",
    version,
    about = "Seifert forms, clasper surgery and the 2-loop Q invariant"
)]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alexander polynomial of a Seifert matrix.
    Alexander { matrix: PathBuf },
    /// Basis form of a Seifert matrix.
    Classify { matrix: PathBuf },
    /// Add the tubes of a tube file, in order, to a Seifert matrix. Each tube
    /// vector is read in the basis of the matrix built so far.
    Tube { matrix: PathBuf, tubes: PathBuf },
    /// Rank of a Seifert matrix over the rationals.
    Rank { matrix: PathBuf },
    /// Search for a symplectic base change to minimal Seifert form.
    SearchMinBasis {
        matrix: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Triangular base change of an upper unitriangular matrix over Z[t, t^-1].
    Dualize { lambda: PathBuf },
    /// Canonical form of an expression in t1, t2, t3.
    LthetaNormalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Membership in the span of the three minimal-rank generators.
    Member {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Wheel claspers on a genus 1 surface realizing an augmentation-zero value.
    Realize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Complete contraction of each clasper, summed.
    Contract { claspers: PathBuf },
    /// Q of the unknot after surgery on the listed wheels.
    Q { claspers: PathBuf },
    /// Q, then membership in the minimal-rank subgroup.
    CertifyNoMinrank { claspers: PathBuf },
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output {
                        code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Output {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, mut stdout)) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Output {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure(msg)) => Output {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure(format!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn in_file<T>(path: &Path, r: crate::error::Result<T>) -> CliResult<T> {
    r.map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_seifert(path: &Path) -> CliResult<SeifertMatrix> {
    let file: SeifertFile = read_json(path)?;
    in_file(path, file.into_matrix())
}

fn read_claspers(path: &Path) -> CliResult<(ClasperFile, claspers::StandardSurface)> {
    let file: ClasperFile = read_json(path)?;
    let surface = in_file(path, file.surface())?;
    Ok((file, surface))
}

fn parse_expr(src: &str) -> CliResult<ThetaElement> {
    ltheta::parse_expr(src).map_err(|e| Failure(format!("expression {src:?}: {e}")))
}

fn to_i64_rows(m: &Matrix<Int>) -> CliResult<Vec<Vec<i64>>> {
    m.to_rows()
        .into_iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    i64::try_from(x)
                        .map_err(|_| Failure(format!("entry {x} does not fit in 64 bits")))
                })
                .collect()
        })
        .collect()
}

fn seifert_json(sm: &SeifertMatrix) -> CliResult<Value> {
    Ok(json!({ "genus": sm.genus(), "matrix": to_i64_rows(sm.entries())? }))
}

fn int_json(x: &Int) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn theta_json(x: &ThetaElement) -> Value {
    serde_json::to_value(x.to_file()).expect("serializable")
}

fn membership_lines(m: &Membership) -> String {
    match m {
        Membership::Member(c) => {
            let coeffs: Vec<String> = c.iter().map(Int::to_string).collect();
            format!("MEMBER {}", coeffs.join(" "))
        }
        Membership::Outside => "OUTSIDE".to_string(),
    }
}

fn membership_json(m: &Membership) -> Value {
    match m {
        Membership::Member(c) => json!({
            "member": true,
            "coefficients": c.iter().map(int_json).collect::<Vec<_>>(),
        }),
        Membership::Outside => json!({ "member": false }),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LambdaFile {
    matrix: Vec<Vec<String>>,
}

fn lambda_rows(m: &Matrix<LaurentPoly>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn dispatch(cli: &Cli) -> CliResult<(i32, String)> {
    let json = cli.json;
    let render = |v: Value| serde_json::to_string(&v).expect("serializable");
    let out = match &cli.command {
        Command::Alexander { matrix } => {
            let delta = seifert::alexander(&read_seifert(matrix)?);
            if json {
                render(json!({ "alexander": delta.to_string() }))
            } else {
                delta.to_string()
            }
        }
        Command::Classify { matrix } => {
            let form = read_seifert(matrix)?.classify();
            if json {
                render(json!({ "form": form.to_string() }))
            } else {
                form.to_string()
            }
        }
        Command::Tube { matrix, tubes } => {
            let mut sm = read_seifert(matrix)?;
            let file: TubeFile = read_json(tubes)?;
            for (k, rho) in file.vectors().iter().enumerate() {
                sm = seifert::add_tube_reordered(&sm, rho)
                    .map_err(|e| Failure(format!("{}: tube {k}: {e}", tubes.display())))?;
            }
            if json {
                render(seifert_json(&sm)?)
            } else {
                sm.to_string()
            }
        }
        Command::Rank { matrix } => {
            let sm = read_seifert(matrix)?;
            let rank = seifert::seifert_rank(&sm);
            if json {
                render(json!({ "rank": rank, "genus": sm.genus() }))
            } else {
                rank.to_string()
            }
        }
        Command::SearchMinBasis { matrix, depth } => {
            let sm = read_seifert(matrix)?;
            let outcome = in_file(
                matrix,
                seifert::search_minimal_basis_with(&sm, *depth, Execution::default()),
            )?;
            match outcome {
                SearchOutcome::Found {
                    certificate,
                    depth,
                    result,
                } => {
                    if json {
                        render(json!({
                            "found": true,
                            "depth": depth,
                            "certificate": to_i64_rows(&certificate)?,
                            "result": seifert_json(&result)?,
                        }))
                    } else {
                        format!(
                            "FOUND depth {depth}\ncertificate:\n{certificate}\nresult:\n{result}"
                        )
                    }
                }
                SearchOutcome::NotFound { depth, explored } => {
                    if json {
                        render(json!({ "found": false, "depth": depth, "explored": explored }))
                    } else {
                        format!("NOT FOUND within depth {depth} ({explored} bases explored)")
                    }
                }
            }
        }
        Command::Dualize { lambda } => {
            let file: LambdaFile = read_json(lambda)?;
            let mut rows = Vec::with_capacity(file.matrix.len());
            for (i, r) in file.matrix.iter().enumerate() {
                let mut row = Vec::with_capacity(r.len());
                for (j, s) in r.iter().enumerate() {
                    let p: LaurentPoly = s.parse().map_err(|e| {
                        Failure(format!("{}: entry ({i}, {j}): {e}", lambda.display()))
                    })?;
                    row.push(p);
                }
                rows.push(row);
            }
            let d = in_file(lambda, Matrix::from_rows(rows))?;
            let b = in_file(lambda, seifert::triangular_dualize(&d))?;
            if json {
                render(json!({ "matrix": lambda_rows(&b) }))
            } else {
                let mut s = String::new();
                for r in lambda_rows(&b) {
                    let _ = writeln!(s, "[{}]", r.join(", "));
                }
                s
            }
        }
        Command::LthetaNormalize { expr } => {
            let x = parse_expr(expr)?;
            if json {
                render(theta_json(&x))
            } else {
                x.to_string()
            }
        }
        Command::Member { expr } => {
            let x = parse_expr(expr)?;
            let m = ltheta::membership(&x, &ltheta::minimal_rank_generators());
            if json {
                render(membership_json(&m))
            } else {
                membership_lines(&m)
            }
        }
        Command::Realize { expr } => {
            let x = parse_expr(expr)?;
            let surface = claspers::StandardSurface::new(1)?;
            let specs = claspers::realize_claspers(&x, &surface)?;
            let file = ClasperFile {
                surface_genus: 1,
                claspers: specs,
            };
            serde_json::to_string(&file).expect("serializable")
        }
        Command::Contract { claspers: path } => {
            let (file, surface) = read_claspers(path)?;
            let x = in_file(
                path,
                claspers::contract_all(&file.claspers, &surface, Execution::default()),
            )?;
            if json {
                render(theta_json(&x))
            } else {
                x.to_string()
            }
        }
        Command::Q { claspers: path } => {
            let (file, surface) = read_claspers(path)?;
            let x = in_file(path, claspers::q_surgery(&file.claspers, &surface))?;
            if json {
                render(theta_json(&x))
            } else {
                x.to_string()
            }
        }
        Command::CertifyNoMinrank { claspers: path } => {
            let (file, surface) = read_claspers(path)?;
            let q = in_file(path, claspers::q_surgery(&file.claspers, &surface))?;
            let m = ltheta::membership(&q, &ltheta::minimal_rank_generators());
            let code = if m.is_member() {
                EXIT_OK
            } else {
                EXIT_CERTIFICATE
            };
            let text = if json {
                let mut v = membership_json(&m);
                v["q"] = theta_json(&q);
                v["certificate"] = json!(!m.is_member());
                render(v)
            } else {
                let verdict = match &m {
                    Membership::Member(_) => membership_lines(&m),
                    Membership::Outside => {
                        "CERTIFICATE: Q value outside minimal-Seifert-rank subgroup".to_string()
                    }
                };
                format!("Q = {q}\n{verdict}")
            };
            return Ok((code, text));
        }
    };
    Ok((EXIT_OK, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expression_commands() {
        let out = run(["knotq", "ltheta-normalize", "t1^-1 - 1"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "-1*[0,0,0] + 1*[0,0,1]\n");
        let out = run(["knotq", "member", "1*t1^1 + -1"]);
        assert_eq!(out.stdout, "MEMBER 1 0 0\n");
        let out = run(["knotq", "--json", "member", "t1 - 1"]);
        assert_eq!(out.stdout, "{\"coefficients\":[1,0,0],\"member\":true}\n");
    }

    #[test]
    fn errors_exit_one() {
        let out = run(["knotq", "ltheta-normalize", "t1 +"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("position"), "{}", out.stderr);
        assert_eq!(run(["knotq", "frobnicate"]).code, 1);
        assert_eq!(run(["knotq", "alexander", "/nonexistent/m.json"]).code, 1);
        assert_eq!(run(["knotq", "realize", "t1"]).code, 1);
    }
}
