use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rstwist::characters::DirichletCharacter;
use rstwist::forms::{build_form_capped, CuspForm};
use rstwist::harness::config::Config;
use rstwist::harness::exponent::{exponent_calculator, parse_rational, ExponentMode, DISCREPANCY_NOTE};
use rstwist::harness::report::{fmt_complex, fmt_real, to_csv, Severity, VerificationReport};
use rstwist::harness::scan::{ratio_constant, required_table, scan_csv, subconvexity_scan, ScanGrid};
use rstwist::harness::suite::run_suite;
use rstwist::params;
use rstwist::sums::{self, CharSumInstance, ClosedForm, Convention};
use rstwist::voronoi::{self, VoronoiJob};

#[derive(Parser)]
#[command(
    name = "rstwist",
    version,
    about = "Numerical checks for twisted Rankin-Selberg sums"
)]
struct Cli {
    /// key=value configuration file; RSTWIST_* variables override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (overrides config and environment).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite and write the report CSV.
    Suite {
        /// Run only these suites (repeat or comma-separate).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// sup |S(N)|/sqrt(N) over primitive characters for each prime.
    Scan {
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        weights: Vec<u32>,
        /// Comma-separated primes or an inclusive range `lo..hi`.
        #[arg(long)]
        primes: String,
        #[arg(long)]
        out: PathBuf,
        /// Explicit N values instead of the dyadic grid.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<u64>,
    },
    /// Exponent bookkeeping in exact rationals.
    Exponent {
        #[arg(long, default_value = "0")]
        theta: String,
        #[arg(long, default_value = "paper")]
        mode: ExponentMode,
    },
    /// Both sides of the Voronoi identity for one case.
    Voronoi {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long = "Y")]
        y: f64,
    },
    /// Brute force and closed forms of the character sum.
    Charsum {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value = "minus")]
        convention: Convention,
        /// Character index; every primitive character when omitted.
        #[arg(long)]
        chi: Option<u64>,
    },
    /// Coefficients a(n) and lambda(n) as CSV.
    Eigens {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn parse_primes(s: &str) -> Result<Vec<u64>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo.trim().parse().context("range start")?;
        let hi: u64 = hi.trim().parse().context("range end")?;
        return Ok((lo..=hi).filter(|&p| rstwist::arith::is_odd_prime(p)).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u64>().with_context(|| format!("bad prime `{t}`")))
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut config = Config::load(cli.config.as_deref())?;
    if let Some(t) = cli.threads {
        config.threads = t;
    }
    if config.threads > 0 {
        // Commands other than `suite` use the global pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build_global();
    }
    match cli.command {
        Command::Suite { only, out } => {
            if !only.is_empty() {
                config.only = only;
            }
            let outcome = run_suite(&config)?;
            let csv = to_csv(&outcome.reports);
            match out {
                Some(path) => write_out(&path, &csv)?,
                None => print!("{csv}"),
            }
            if config.selects("exponent") {
                eprintln!("note: {DISCREPANCY_NOTE}");
            }
            let total = outcome.reports.len();
            let failed = outcome.reports.iter().filter(|r| !r.passed).count();
            eprintln!(
                "{total} checks, {failed} failed, {} hard failures",
                outcome.hard_failures()
            );
            Ok(ExitCode::from(outcome.exit_code() as u8))
        }
        Command::Scan {
            weights,
            primes,
            out,
            grid,
        } => {
            let [kf, kg] = weights[..] else {
                bail!("--weights takes exactly two weights, e.g. 12,16")
            };
            let primes = parse_primes(&primes)?;
            let grid = if grid.is_empty() {
                ScanGrid::Dyadic
            } else {
                ScanGrid::Explicit(grid)
            };
            let len = required_table(&primes, &grid).max(2) as usize;
            let f = build_form_capped(kf, len, config.table_cap)?;
            let g = build_form_capped(kg, len, config.table_cap)?;
            let rows = subconvexity_scan(&f, &g, &primes, &grid)?;
            write_out(&out, &scan_csv(&rows))?;
            eprintln!(
                "{} rows; max ratio to p^(27/28) = {}",
                rows.len(),
                fmt_real(ratio_constant(&rows))
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Exponent { theta, mode } => {
            let s = exponent_calculator(&parse_rational(&theta)?, mode)?;
            println!("mode={} theta={}", s.mode, s.theta);
            println!("eta={}", s.eta);
            println!("q1_exp={} q3_exp={} q4_exp={}", s.q1_exp, s.q3_exp, s.q4_exp);
            println!("final_exponent={} ({})", s.final_exponent, s.final_f64());
            println!("q1_limit={} feasible={}", s.q1_limit, s.q1_feasible);
            println!("note: {DISCREPANCY_NOTE}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Voronoi { weight, q, a, y } => {
            let job_len = {
                let probe = voronoi::dual_unit(q, y) * config.truncation;
                (probe as usize).max((3.0 * y).ceil() as usize)
            };
            let f = build_form_capped(weight, job_len, config.table_cap)?;
            let job = VoronoiJob::new(&f, a, q, y)?.with_truncation(config.truncation);
            let direct = voronoi::direct_side(&job)?;
            let hankel = voronoi::hankel_side(&job)?;
            let report = VerificationReport::equality(
                "voronoi",
                params!("weight" => weight, "q" => q, "a" => a, "Y" => y, "T" => job.dual_length()),
                direct,
                hankel,
                config.tol_voronoi,
                Severity::Hard,
            );
            print!("{}", to_csv(std::slice::from_ref(&report)));
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Charsum {
            p,
            q,
            m,
            n,
            convention,
            chi,
        } => {
            let chars = match chi {
                Some(j) => vec![DirichletCharacter::new(p, j)?],
                None => rstwist::characters::primitive_characters(p)?,
            };
            let mut out = String::from("chi,brute_force,verified,lemma_statement,derivation_end\n");
            let mut ok = true;
            for c in chars {
                let inst = CharSumInstance::new(c.clone(), q, m, n, convention)?;
                let brute = sums::char_sum_bruteforce(&inst)?;
                let mut line = format!("{},{}", c.index(), fmt_complex(brute));
                for form in ClosedForm::ALL {
                    let v = sums::char_sum_closed_variant(&inst, form)?;
                    if form == ClosedForm::Verified && (v - brute).norm() > config.tol_charsum * brute.norm().max(1.0) {
                        ok = false;
                    }
                    let _ = write!(line, ",{}", fmt_complex(v));
                }
                out.push_str(&line);
                out.push('\n');
            }
            print!("{out}");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Eigens { weight, nmax, out } => {
            let f: CuspForm = build_form_capped(weight, nmax, config.table_cap)?;
            let mut text = String::from("n,a_n,lambda_n\n");
            for n in 1..=nmax {
                let _ = writeln!(text, "{n},{},{}", f.coefficients()[n], fmt_real(f.lambdas()[n]));
            }
            write_out(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
