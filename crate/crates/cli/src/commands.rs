use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mgt_core::diagnostics::{coloring_alpha, multiplicity_free_probe, residual_delta, VerifyCase};
use mgt_core::discovery::{discover_sequential, match_library, BasisKind, DiscoveryConfig, StopReason};
use mgt_core::groups::{parse_group_spec, reynolds_project, GroupAction, Permutation, SPEC_FORMS};
use mgt_core::numkernel::{CMatrix, C64};
use mgt_core::transforms::{
    arithmetic_matrix, dct2_matrix, dft_matrix, fp_rm_matrix, haar_matrix, hartley_matrix, rm_matrix,
    synthesize_matched, wht_matrix, IntTransform,
};

use crate::error::CliError;
use crate::matfile;
use crate::report::{Report, Value};

#[derive(Debug, Parser)]
#[command(name = "mgt", version, about = "Matched-group transforms, invariance checks and symmetry discovery")]
pub struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a transform matrix.
    Kernel(KernelArgs),
    /// Check predicted transforms against sampled invariant covariances.
    Verify(VerifyArgs),
    /// Search a covariance for permutation symmetries.
    Discover(DiscoverArgs),
    /// Project a matrix onto the invariants of a group.
    Project(ProjectArgs),
    /// Commutativity residual of one permutation.
    Residual(ResidualArgs),
    /// Fraction of a matrix's energy invariant under a group.
    Alpha(AlphaArgs),
    /// Rank candidate groups by how well they fit a covariance.
    MatchLibrary(LibraryArgs),
    /// Build the matched transform of a group.
    Synthesize(SynthArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KernelName {
    Dft,
    Dct2,
    Wht,
    Haar,
    Hartley,
    Rm,
    Fprm,
    Arith,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    pub name: KernelName,
    /// Points for dft, dct2 and hartley; variables for wht, rm and arith; levels for haar.
    #[arg(long)]
    pub size: Option<usize>,
    /// Polarity bits for fprm, variable 0 first (e.g. `0110`).
    #[arg(long)]
    pub polarity: Option<String>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of dft, wht, dct, haar, circle64 or all.
    #[arg(long, default_value = "all")]
    pub case: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BasisArg {
    MatrixUnits,
    CyclicShifts,
}

#[derive(Debug, Args)]
pub struct DiscoverArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "matrix-units")]
    pub basis: BasisArg,
    #[arg(long, default_value_t = 1e-8)]
    pub tau: f64,
    /// Defaults to four times the matrix size.
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Largest closure enumerated explicitly.
    #[arg(long, default_value_t = 10_000)]
    pub cap: usize,
    /// Seed for synthesizing the matched transform.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ResidualArgs {
    /// Image list (`1 0 2`) or cycle notation (`(0 1)`).
    #[arg(long)]
    pub perm: String,
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct LibraryArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Comma-separated group specs, e.g. `trivial:8,cyclic:8,hybrid:4,2`.
    #[arg(long)]
    pub library: String,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What a command produced.
pub enum Output {
    Report(Report),
    Matrix(CMatrix),
}

pub fn execute(cli: &Cli) -> Result<(Output, Option<CliError>), CliError> {
    match &cli.command {
        Command::Kernel(a) => kernel(a),
        Command::Verify(a) => verify(a),
        Command::Discover(a) => done(discover(a)?),
        Command::Project(a) => project(a),
        Command::Residual(a) => done(residual(a)?),
        Command::Alpha(a) => done(alpha(a)?),
        Command::MatchLibrary(a) => done(library(a)?),
        Command::Synthesize(a) => synthesize(a),
    }
}

fn done(r: Report) -> Result<(Output, Option<CliError>), CliError> {
    Ok((Output::Report(r), None))
}

fn group(spec: &str) -> Result<GroupAction, CliError> {
    parse_group_spec(spec).map_err(|e| match CliError::from(e) {
        CliError::Usage(msg) if !msg.contains(SPEC_FORMS) => {
            CliError::Usage(format!("{msg}\nvalid group forms: {SPEC_FORMS}"))
        }
        other => other,
    })
}

fn same_degree(g: &GroupAction, r: &CMatrix) -> Result<(), CliError> {
    if g.degree() != r.rows() || !r.is_square() {
        return Err(CliError::Usage(format!(
            "group {} acts on {} points but the matrix is {}x{}",
            g.name(),
            g.degree(),
            r.rows(),
            r.cols()
        )));
    }
    Ok(())
}

fn integer(t: IntTransform) -> Result<CMatrix, CliError> {
    let d = t.dense()?;
    Ok(CMatrix::from_fn(d.size(), d.size(), |i, j| C64::new(d.get(i, j) as f64, 0.0)))
}

fn parse_polarity(bits: &str) -> Result<Vec<bool>, CliError> {
    bits.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CliError::Usage(format!("polarity `{bits}` must contain only 0 and 1"))),
        })
        .collect()
}

fn kernel_matrix(a: &KernelArgs) -> Result<CMatrix, CliError> {
    let size = || a.size.ok_or_else(|| CliError::Usage("this kernel needs --size".into()));
    Ok(match a.name {
        KernelName::Dft => dft_matrix(size()?)?.into_matrix(),
        KernelName::Dct2 => dct2_matrix(size()?)?.into_matrix(),
        KernelName::Wht => wht_matrix(size()?)?.into_matrix(),
        KernelName::Haar => haar_matrix(size()?)?.into_matrix(),
        KernelName::Hartley => hartley_matrix(size()?)?.into_matrix(),
        KernelName::Rm => integer(rm_matrix(size()?)?)?,
        KernelName::Arith => integer(arithmetic_matrix(size()?)?)?,
        KernelName::Fprm => {
            let bits = a
                .polarity
                .as_deref()
                .ok_or_else(|| CliError::Usage("fprm needs --polarity".into()))?;
            let polarity = parse_polarity(bits)?;
            if a.size.is_some_and(|n| n != polarity.len()) {
                return Err(CliError::Usage("--size disagrees with the polarity length".into()));
            }
            integer(fp_rm_matrix(&polarity)?)?
        }
    })
}

fn write_or_print(x: CMatrix, out: Option<&Path>, summary: Report) -> Result<(Output, Option<CliError>), CliError> {
    match out {
        Some(path) => {
            matfile::write(path, &x)?;
            done(summary.with("out", Value::Text(path.display().to_string())))
        }
        None => Ok((Output::Matrix(x), None)),
    }
}

fn kernel(a: &KernelArgs) -> Result<(Output, Option<CliError>), CliError> {
    let x = kernel_matrix(a)?;
    let summary = Report::new()
        .with("kernel", Value::Text(format!("{:?}", a.name).to_lowercase()))
        .with("rows", Value::Int(x.rows()))
        .with("cols", Value::Int(x.cols()));
    write_or_print(x, a.out.as_deref(), summary)
}

fn verify(a: &VerifyArgs) -> Result<(Output, Option<CliError>), CliError> {
    let cases: Vec<VerifyCase> = if a.case == "all" {
        VerifyCase::ALL.to_vec()
    } else {
        vec![a.case.parse()?]
    };
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for case in cases {
        let row = Report::new()
            .with("case", Value::Text(case.name().into()))
            .with("group", Value::Text(case.group_label().into()))
            .with("transform", Value::Text(case.transform_label().into()));
        let row = match case.run(a.seed) {
            Ok(rep) => {
                if !rep.passed() {
                    failed.push(case.name());
                }
                row.with("min_match", Value::Num(rep.report.min_match))
                    .with("pattern", Value::Pattern(rep.report.degeneracy_pattern.clone()))
                    .with("status", Value::Status(rep.passed()))
            }
            Err(e) => {
                failed.push(case.name());
                row.with("min_match", Value::Num(0.0))
                    .with("pattern", Value::Text(e.to_string()))
                    .with("status", Value::Status(false))
            }
        };
        rows.push(row);
    }
    let report = Report::new().with("seed", Value::Int(a.seed as usize)).with("cases", Value::Table(rows));
    let err = (!failed.is_empty()).then(|| CliError::Failed(format!("verification failed: {}", failed.join(", "))));
    Ok((Output::Report(report), err))
}

fn read_square(path: &Path) -> Result<CMatrix, CliError> {
    let r = matfile::read(path)?;
    r.require_square()?;
    Ok(r)
}

fn stop_name(s: StopReason) -> &'static str {
    match s {
        StopReason::Converged => "converged",
        StopReason::Exhausted => "exhausted",
        StopReason::IterationLimit => "iteration-limit",
    }
}

pub fn discover(a: &DiscoverArgs) -> Result<Report, CliError> {
    let r = read_square(&a.input)?;
    r.symmetrized(1e-8)?;
    let config = DiscoveryConfig {
        basis: match a.basis {
            BasisArg::MatrixUnits => BasisKind::MatrixUnits,
            BasisArg::CyclicShifts => BasisKind::CyclicShifts,
        },
        tau: a.tau,
        max_iters: a.max_iters,
        enumeration_cap: a.cap,
    };
    let res = discover_sequential(&r, &config).map_err(|e| match e {
        mgt_core::Error::Input(_) => CliError::from(e),
        other => CliError::Failed(other.to_string()),
    })?;
    let m = r.rows();
    let order = match res.group_order {
        Some(n) => Value::Int(n),
        None => Value::Text(format!(">{}", a.cap)),
    };
    let mut report = Report::new()
        .with("generators", Value::List(res.generators.iter().map(|p| Value::Text(p.to_string())).collect()))
        .with("delta", Value::List(res.residuals.iter().map(|&d| Value::Num(d)).collect()))
        .with("order", order)
        .with("alpha", Value::Num(res.alpha))
        .with("iterations", Value::Int(res.iterations))
        .with("rejected", Value::Int(res.rejected_count))
        .with("stop", Value::Text(stop_name(res.stop).into()))
        .with("saturated", Value::Flag(res.saturated()))
        .with("degenerate_spectrum", Value::Flag(res.degenerate_spectrum));
    let action = res.action(m);
    if m > 1 && !action.is_trivial() && multiplicity_free_probe(&action, (1, 2)) {
        let synth = synthesize_matched(&action, a.seed).map_err(|e| CliError::Failed(e.to_string()))?;
        let mut path = a.input.clone().into_os_string();
        path.push(".matched.mtx");
        let path = PathBuf::from(path);
        matfile::write(&path, synth.transform.matrix())?;
        report.push("matched_transform", Value::Text(path.display().to_string()));
    }
    Ok(report)
}

fn project(a: &ProjectArgs) -> Result<(Output, Option<CliError>), CliError> {
    let g = group(&a.group)?;
    let r = matfile::read(&a.input)?;
    same_degree(&g, &r)?;
    let p = reynolds_project(&r, &g)?;
    let summary = Report::new()
        .with("group", Value::Text(g.name().into()))
        .with("alpha", Value::Num(coloring_alpha(&g, &r)?));
    write_or_print(p, a.out.as_deref(), summary)
}

pub fn residual(a: &ResidualArgs) -> Result<Report, CliError> {
    let r = read_square(&a.input)?;
    let p = Permutation::parse(&a.perm, Some(r.rows()))?;
    let delta = residual_delta(&p, &r)?;
    Ok(Report::new().with("perm", Value::Text(p.to_string())).with("delta", Value::Num(delta)))
}

pub fn alpha(a: &AlphaArgs) -> Result<Report, CliError> {
    let g = group(&a.group)?;
    let r = matfile::read(&a.input)?;
    same_degree(&g, &r)?;
    let alpha = coloring_alpha(&g, &r)?;
    Ok(Report::new().with("group", Value::Text(g.name().into())).with("alpha", Value::Num(alpha)))
}

/// Splits a library list at commas that start a new `name:` entry.
pub fn split_library(list: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (i, c) in list.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                let rest = &list[i + 1..];
                let head: String = rest.trim_start().chars().take_while(|c| *c != ':').collect();
                if !head.is_empty() && rest.contains(':') && head.chars().all(|c| c.is_ascii_alphabetic() || c == '-') {
                    out.push(list[start..i].trim());
                    start = i + 1;
                }
            }
            _ => {}
        }
    }
    out.push(list[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

pub fn library(a: &LibraryArgs) -> Result<Report, CliError> {
    let r = read_square(&a.input)?;
    let groups: Vec<GroupAction> = split_library(&a.library)
        .into_iter()
        .map(|s| group(s).map(|g| g.renamed(s)))
        .collect::<Result<_, _>>()?;
    if groups.is_empty() {
        return Err(CliError::Usage("--library lists no groups".into()));
    }
    let ranking = match_library(&r, &groups)?;
    for w in &ranking.warnings {
        eprintln!("warning: {w}");
    }
    let rows: Vec<Report> = ranking
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            Report::new()
                .with("rank", Value::Int(i + 1))
                .with("group", Value::Text(e.name.clone()))
                .with("score", Value::Num(e.score))
                .with("alpha", Value::Num(e.alpha))
                .with("order", e.order.map_or(Value::Text("large".into()), Value::Int))
        })
        .collect();
    let best = ranking.best().map_or(Value::Text("none".into()), |e| Value::Text(e.name.clone()));
    Ok(Report::new().with("best", best).with("ranking", Value::Table(rows)))
}

fn synthesize(a: &SynthArgs) -> Result<(Output, Option<CliError>), CliError> {
    let g = group(&a.group)?;
    let s = synthesize_matched(&g, a.seed)?;
    let summary = Report::new()
        .with("group", Value::Text(g.name().into()))
        .with("pattern", Value::Pattern(s.degeneracy_pattern.clone()))
        .with("seed_match", Value::Num(s.seed_match))
        .with("data_dependent", Value::Flag(s.data_dependent))
        .with("attempts", Value::Int(s.attempts));
    write_or_print(s.transform.into_matrix(), a.out.as_deref(), summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_lists_split_between_entries_only() {
        assert_eq!(
            split_library("trivial:8,cyclic:8,dihedralM:8,boolean:3"),
            ["trivial:8", "cyclic:8", "dihedralM:8", "boolean:3"]
        );
        assert_eq!(
            split_library("hybrid:4,2, wreath:2c,3s,product:(cyclic:2,cyclic:4)"),
            ["hybrid:4,2", "wreath:2c,3s", "product:(cyclic:2,cyclic:4)"]
        );
    }

    #[test]
    fn unknown_group_lists_forms() {
        let err = group("klein:4").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("dyadic-wreath:L"));
        let err = group("cyclic:x").unwrap_err();
        assert!(err.to_string().contains("valid group forms"));
    }

    #[test]
    fn polarity_bits() {
        assert_eq!(parse_polarity("011").unwrap(), [false, true, true]);
        assert!(parse_polarity("012").is_err());
    }
}
