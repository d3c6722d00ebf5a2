//! `locus`: runs the symbolic verification suites and the numerical studies,
//! writing JSON reports (and CSV tables) to an output directory.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use locus_core::poincare::{CheckStatus, DEFAULT_DEGREE_CUTOFF};

use commands::Suite;
use output::{Format, Outcome};

const USAGE_EXIT: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "locus",
    version,
    about = "Verify position-operator identities and run the numerical studies"
)]
struct Cli {
    /// Directory for reports.
    #[arg(
        long,
        global = true,
        env = "LOCUS_OUT_DIR",
        default_value = "locus-reports"
    )]
    out_dir: PathBuf,
    #[arg(long, global = true, value_enum, default_value = "both")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symbolic identity suites.
    Algebra {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CUTOFF)]
        cutoff: u32,
    },
    /// Uncertainty products of Gaussian packets against the modified bound.
    Uncertainty {
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Packet centre; repeat for a ladder.
        #[arg(long, value_parser = parse_vec3, default_value = "0,0,0")]
        k0: Vec<[f64; 3]>,
        #[arg(long, default_value_t = 97)]
        grid: usize,
        #[arg(long, default_value_t = 4.5)]
        kmax: f64,
    },
    /// Residuals of the regularized position eigenfunctions.
    Eigen {
        #[arg(long, value_parser = parse_vec3, default_value = "0,0,2")]
        q: [f64; 3],
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05,0.02")]
        sigma_ladder: Vec<f64>,
    },
    /// Position-space profile of a regularized eigenfunction.
    Fourier {
        #[arg(long, value_parser = parse_vec3, default_value = "0,0,2")]
        q: [f64; 3],
        #[arg(long, default_value_t = 0.05)]
        sigma: f64,
        /// Longitudinal sample spacing.
        #[arg(long, default_value_t = 0.05)]
        spacing: f64,
    },
    /// Frame-translation experiment with explicit event transforms.
    Classical {
        #[arg(long, value_parser = parse_vec3, default_value = "0.6,0.8,0")]
        u: [f64; 3],
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Treat the particle as massive (|u| < 1).
        #[arg(long)]
        massive: bool,
        /// Also sweep this many unit velocities.
        #[arg(long, default_value_t = 0)]
        sweep: usize,
    },
    /// Jacobi identity and velocity of the projected bracket at random points.
    JacobiBracket {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every suite and study with default settings.
    All,
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected X,Y,Z, got {s:?}"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(parts) {
        *slot = p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"))?;
        if !slot.is_finite() {
            return Err(format!("{p:?} is not finite"));
        }
    }
    Ok(v)
}

type Job = Box<dyn FnOnce() -> Outcome>;

fn plan(command: Command) -> Vec<Job> {
    match command {
        Command::Algebra { suite, cutoff } => {
            vec![Box::new(move || commands::algebra(suite, cutoff))]
        }
        Command::Uncertainty {
            alpha,
            k0,
            grid,
            kmax,
        } => vec![Box::new(move || {
            commands::uncertainty(alpha, &k0, grid, kmax)
        })],
        Command::Eigen { q, sigma_ladder } => {
            vec![Box::new(move || commands::eigen(q, &sigma_ladder))]
        }
        Command::Fourier { q, sigma, spacing } => {
            vec![Box::new(move || commands::fourier(q, sigma, spacing))]
        }
        Command::Classical {
            u,
            t,
            massive,
            sweep,
        } => vec![Box::new(move || commands::classical(u, t, massive, sweep))],
        Command::JacobiBracket { samples, seed } => {
            vec![Box::new(move || commands::jacobi_bracket(samples, seed))]
        }
        Command::All => {
            // κ ladder in units of 1/√α with α = 1
            let k0s: Vec<[f64; 3]> = [0.0, 0.5, 0.25, 0.125]
                .iter()
                .map(|&k| [0.0, 0.0, k])
                .collect();
            vec![
                Box::new(|| commands::algebra(Suite::Jacobi, DEFAULT_DEGREE_CUTOFF)),
                Box::new(|| commands::algebra(Suite::Massive, DEFAULT_DEGREE_CUTOFF)),
                Box::new(|| commands::algebra(Suite::Massless, DEFAULT_DEGREE_CUTOFF)),
                Box::new(move || commands::uncertainty(1.0, &k0s, 97, 4.5)),
                Box::new(|| commands::eigen([0.0, 0.0, 2.0], &[0.2, 0.1, 0.05, 0.02])),
                Box::new(|| commands::fourier([0.0, 0.0, 2.0], 0.05, 0.05)),
                Box::new(|| commands::classical([0.6, 0.8, 0.0], 1.0, false, 100)),
                Box::new(|| commands::jacobi_bracket(100, 0)),
            ]
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { USAGE_EXIT } else { 0 });
        }
    };
    let mut worst = CheckStatus::Pass;
    for job in plan(cli.command) {
        let start = Instant::now();
        let outcome = job();
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        output::print_summary(&outcome);
        match output::write(&outcome, &cli.out_dir, cli.format, elapsed) {
            Ok(paths) => paths.iter().for_each(|p| println!("wrote {}", p.display())),
            Err(e) => {
                eprintln!(
                    "error: cannot write reports to {}: {e}",
                    cli.out_dir.display()
                );
                return ExitCode::from(1);
            }
        }
        worst = worst.worst(outcome.status());
    }
    ExitCode::from(output::exit_code(worst) as u8)
}
