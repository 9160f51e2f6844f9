use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::{run_check, run_checks, Check, Describe, IdentityCheck, OutputFormat, RelationReport, RunConfig};
use crate::algebra::{parse_rational, serialize_series, BackendKind, Grid, Order, ParameterPoint, PointBackend, Rational, SymbolicBackend};
use crate::bilinear::{listed_cases, Minus2Relation, RelationId};
use crate::identities::{convergence_probe, ProbeConfig, RecursionFamily, SymmetryKind};
use crate::nekrasov::{instanton_series, EpsilonPair, Level, Parity, Sign};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "nekrasov-verify", version, about = "Exact checks of blowup and bilinear relations for 5d SU(2) Nekrasov partition functions")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Truncation order in z, a positive rational.
    #[arg(long, global = true, default_value = "3")]
    order: Order,
    #[arg(long, global = true, default_value = "point", value_parser = parse_backend)]
    backend: BackendKind,
    /// Value of q1^(1/D), e.g. 2/3. Replaces the default points.
    #[arg(long, global = true, value_parser = parse_rational)]
    q1_root: Option<Rational>,
    #[arg(long, global = true, value_parser = parse_rational)]
    q2_root: Option<Rational>,
    #[arg(long, global = true, value_parser = parse_rational)]
    u_root: Option<Rational>,
    /// Exponent grid denominator D.
    #[arg(long, global = true, default_value_t = 16, value_parser = parse_grid)]
    grid: i64,
    /// Persistent series cache; defaults to $NEKRASOV_CACHE_DIR when set.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    output: OutputFormat,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the instanton series Z^{[l]}(u; q1, q2 | z).
    #[command(allow_negative_numbers = true)]
    Series {
        #[arg(long)]
        l: i64,
    },
    /// Check a Nakajima-Yoshioka blowup relation.
    #[command(allow_negative_numbers = true)]
    VerifyNy {
        #[arg(long)]
        l: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        j: u8,
    },
    /// Check the blowup relations with a -2 curve; all of them by default.
    #[command(allow_negative_numbers = true)]
    VerifyBilinear {
        #[arg(long)]
        relation: Option<RelationId>,
        #[arg(long, value_parser = parse_sign)]
        eps: Option<Sign>,
    },
    /// Check symmetries, Z2 = Z0 and the recursion; all of them by default.
    #[command(allow_negative_numbers = true)]
    VerifyIdentity {
        /// A symmetry name, z2_z0, recursion_l2 or recursion_l1.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        l: Option<i64>,
    },
    /// Solve a blowup relation for its β coefficient and compare with the table.
    #[command(allow_negative_numbers = true)]
    DeriveBeta {
        #[arg(long)]
        l: i64,
        #[arg(long)]
        j: u8,
        #[arg(long)]
        d: i64,
    },
    /// Replay the convolution argument of the -2 relations.
    #[command(allow_negative_numbers = true)]
    ReplayConvolution {
        #[arg(long, requires_all = ["d2", "j"], conflicts_with = "cs")]
        d1: Option<i64>,
        #[arg(long)]
        d2: Option<i64>,
        #[arg(long)]
        j: Option<u8>,
        #[arg(long, value_parser = parse_sign)]
        eps: Option<Sign>,
        /// The level-one Chern-Simons variant.
        #[arg(long)]
        cs: bool,
    },
    /// Exact-rational convergence probe of the recursion.
    ProbeConvergence {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value = "1/2", value_parser = parse_rational)]
        q: Rational,
        #[arg(long, default_value = "3", value_parser = parse_rational)]
        u: Rational,
        #[arg(long, default_value = "1", value_parser = parse_rational)]
        z0: Rational,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
    },
    /// The full suite.
    All,
}

fn parse_backend(s: &str) -> Result<BackendKind> {
    s.parse()
}

fn parse_grid(s: &str) -> Result<i64> {
    match s.parse::<i64>() {
        Ok(d @ (8 | 16 | 32)) => Ok(d),
        _ => Err(Error::InvalidArgument(format!("grid must be 8, 16 or 32, got {s:?}"))),
    }
}

fn parse_sign(s: &str) -> Result<Sign> {
    match s {
        "+" | "+1" | "1" => Ok(Sign::Plus),
        "-" | "-1" => Ok(Sign::Minus),
        _ => Err(Error::Parse(format!("eps must be +1 or -1, got {s:?}"))),
    }
}

fn both_signs(eps: Option<Sign>) -> Vec<Sign> {
    eps.map_or_else(|| vec![Sign::Plus, Sign::Minus], |e| vec![e])
}

impl GlobalArgs {
    fn config(&self) -> Result<RunConfig> {
        let points = if self.q1_root.is_none() && self.q2_root.is_none() && self.u_root.is_none() {
            ParameterPoint::defaults()
        } else {
            let d = ParameterPoint::defaults().remove(0);
            let pick = |v: &Option<Rational>, fallback: &Rational| v.clone().unwrap_or_else(|| fallback.clone());
            vec![ParameterPoint::new(pick(&self.q1_root, d.q1_root()), pick(&self.q2_root, d.q2_root()), pick(&self.u_root, d.u_root()))?]
        };
        Ok(RunConfig {
            order: self.order.clone(),
            backend: self.backend,
            points,
            grid: Grid::new(self.grid)?,
            cache_dir: self.cache_dir.clone(),
            output: self.output,
        })
    }
}

fn identity_checks(kind: Option<&str>, l: Option<i64>) -> Result<Vec<Check>> {
    let all_levels = |k: SymmetryKind| -> Vec<Check> {
        k.levels().iter().filter(|&&lv| l.is_none_or(|x| x == lv)).map(|&lv| Check::Identity(IdentityCheck::Symmetry { kind: k, l: lv })).collect()
    };
    let extra = |k: &str| -> Option<Check> {
        Some(Check::Identity(match k {
            "z2_z0" => IdentityCheck::Z2Z0,
            "recursion_l2" => IdentityCheck::Recursion(RecursionFamily::Level2),
            "recursion_l1" => IdentityCheck::Recursion(RecursionFamily::Level1),
            _ => return None,
        }))
    };
    match kind {
        None => {
            let mut out: Vec<Check> = SymmetryKind::ALL.into_iter().flat_map(all_levels).collect();
            out.extend(["z2_z0", "recursion_l2", "recursion_l1"].into_iter().filter_map(extra));
            Ok(out)
        }
        Some(k) => match extra(k) {
            Some(c) => Ok(vec![c]),
            None => {
                let kind: SymmetryKind = k.parse()?;
                match l {
                    Some(lv) => Ok(vec![Check::Identity(IdentityCheck::Symmetry { kind, l: lv })]),
                    None => Ok(all_levels(kind)),
                }
            }
        },
    }
}

fn emit(reports: &[RelationReport], format: OutputFormat, out: &mut dyn Write) -> std::io::Result<()> {
    for r in reports {
        match format {
            OutputFormat::Human => writeln!(out, "{}", r.human())?,
            OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(r).expect("reports serialize"))?,
        }
    }
    Ok(())
}

fn print_series<B: Describe>(level: i64, config: &RunConfig, backend: &B, out: &mut dyn Write) -> Result<()> {
    let eps = EpsilonPair::standard(config.grid);
    let s = instanton_series(Level::signed(level)?, &eps, config.grid.u(), &config.order, backend)?;
    match config.output {
        OutputFormat::Human => Ok(writeln!(out, "{}", backend.describe_series(&s))?),
        OutputFormat::Json => {
            let v = serde_json::json!({
                "l": level,
                "order": config.order.to_string(),
                "backend": backend.label(),
                "series": serialize_series(&s)?,
            });
            Ok(writeln!(out, "{v}")?)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let config = cli.global.config()?;
    let checks = match &cli.command {
        Command::Series { l } => {
            match config.backend {
                BackendKind::Symbolic => print_series(*l, &config, &SymbolicBackend::new(config.grid), out)?,
                BackendKind::Point => print_series(*l, &config, &PointBackend::new(config.points[0].clone(), config.grid), out)?,
            }
            return Ok(true);
        }
        Command::VerifyNy { l, d, j } => vec![Check::Ny { l: *l, d: *d, j: *j }],
        Command::VerifyBilinear { relation, eps } => Minus2Relation::all()
            .into_iter()
            .filter(|r| relation.is_none_or(|id| id == r.id) && eps.is_none_or(|e| e == r.eps))
            .map(|r| Check::Bilinear { id: r.id, eps: r.eps })
            .collect(),
        Command::VerifyIdentity { kind, l } => identity_checks(kind.as_deref(), *l)?,
        Command::DeriveBeta { l, j, d } => vec![Check::DeriveBeta { l: *l, j: *j, d: *d }],
        Command::ReplayConvolution { cs: true, .. } => {
            vec![Check::Identity(IdentityCheck::CsConvolution), Check::Identity(IdentityCheck::CsBetaIdentity)]
        }
        Command::ReplayConvolution { d1: Some(d1), d2: Some(d2), j: Some(j), eps, .. } => {
            both_signs(*eps).into_iter().map(|e| Check::Convolution { d1: *d1, d2: *d2, j: *j, eps: e }).collect()
        }
        Command::ReplayConvolution { eps, .. } => {
            let mut v = Vec::new();
            for par in [Parity::Even, Parity::Odd] {
                for (d1, d2) in listed_cases(par) {
                    for e in both_signs(*eps) {
                        v.push(Check::Convolution { d1, d2, j: par.index(), eps: e });
                    }
                }
            }
            v.push(Check::Identity(IdentityCheck::Beta20Convolution));
            v
        }
        Command::ProbeConvergence { m, n, q, u, z0, kmax } => {
            let cfg = ProbeConfig { m: *m, n: *n, q: q.clone(), u: u.clone(), z0: z0.clone(), kmax: *kmax };
            if config.output == OutputFormat::Human {
                print_probe_table(&cfg, out)?;
            }
            let r = run_check(&Check::Probe(cfg), &config.order, &SymbolicBackend::new(config.grid));
            emit(&r, config.output, out)?;
            return Ok(r.iter().all(|r| r.status.is_ok()));
        }
        Command::All => super::default_checks(),
    };
    let reports = run_checks(&config, &checks)?;
    if let (Command::DeriveBeta { .. }, OutputFormat::Human) = (&cli.command, config.output) {
        let mut seen = Vec::new();
        for r in &reports {
            if let Some(d) = r.params.get("derived") {
                if !seen.contains(d) {
                    writeln!(out, "{d}")?;
                    seen.push(d.clone());
                }
            }
        }
    }
    emit(&reports, config.output, out)?;
    Ok(reports.iter().all(|r| r.status.is_ok()))
}

fn print_probe_table(cfg: &ProbeConfig, out: &mut dyn Write) -> Result<()> {
    let p = convergence_probe(cfg)?;
    writeln!(out, "L1 = {}, L2 = {}, C = {}, bound = {}", p.l1, p.l2, p.constant, p.bound)?;
    for r in &p.rows {
        writeln!(out, "k={:<3} |c_k| = {}  bound {}  partial sum {}", r.k, r.magnitude, r.coefficient_bound, r.partial_sum)?;
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the requested command,
/// writing reports to `out`. Returns the process exit status: 0 when every
/// check passed, 1 on a nonzero residual or computation error, 2 on a usage
/// error.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    eprint!("{}", e.render());
                    2
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e @ (Error::InvalidArgument(_) | Error::InvalidPoint(_) | Error::Parse(_))) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
