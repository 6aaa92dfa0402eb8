//! `modhull`: command-line front end for hulls of modular hyperbolas.

use clap::{Args, Parser, Subcommand};
use modhull_core::conics::{self, ConicForm, MonomialSet};
use modhull_core::experiments::{
    self, exponent_summary, run_sweep_with, APolicy, SweepCache, SweepOptions,
};
use modhull_core::hullfast::{fast_hull, verify_against_naive, HullMethod, PruneConfig};
use modhull_core::hyperbola::{count_in_box, predicted_count, HyperbolaSpec};
use modhull_core::point::parse_points;
use modhull_core::Error;
use std::fs;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "modhull", version, about = "Convex hulls of modular hyperbolas xy = a (mod m)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct PruneArgs {
    /// Scale of the product bound cutoff_factor * m^1.5 * (1 + ln m)^2
    #[arg(long, default_value_t = 4.0)]
    cutoff_factor: f64,
    /// Below this modulus the auto method enumerates every point
    #[arg(long, default_value_t = 1000)]
    naive_threshold: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hull of H_a(m): vertex count and vertices
    Hull {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        a: i64,
        #[arg(long, default_value = "auto")]
        method: HullMethod,
        #[command(flatten)]
        prune: PruneArgs,
        /// Print JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Sweep a range of moduli and write one CSV row per (m, a)
    Sweep {
        #[arg(long)]
        m_min: u64,
        #[arg(long)]
        m_max: u64,
        /// one | all | sample:K
        #[arg(long, default_value = "one")]
        a_policy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value = "auto")]
        method: HullMethod,
        #[command(flatten)]
        prune: PruneArgs,
        /// Skip the on-disk record cache
        #[arg(long)]
        no_cache: bool,
        /// Fill elapsed_ns with measured times (output is then not reproducible)
        #[arg(long)]
        record_timing: bool,
        /// Print an exponent summary: text or json
        #[arg(long)]
        summary: Option<String>,
    },
    /// Compare the pruned hull with full enumeration; exit status 1 on any mismatch
    Verify {
        #[arg(long)]
        m_min: u64,
        #[arg(long)]
        m_max: u64,
        #[arg(long, default_value = "one")]
        a_policy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        prune: PruneArgs,
    },
    /// Exact count of points in [1,U] x [1,V] against the main term U V phi(m) / m^2
    Count {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        a: i64,
        #[arg(long = "U")]
        u: u64,
        #[arg(long = "V")]
        v: u64,
    },
    /// Check v_1(m) >= 2 (tau(m-1) - 1) over a range
    Census {
        #[arg(long, default_value_t = 3)]
        m_min: u64,
        #[arg(long)]
        m_max: u64,
    },
    /// Quadratic curve tools
    Conic {
        #[command(subcommand)]
        command: ConicCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ConicCommand {
    /// Integer conic through every point of a point-list file
    Fit {
        #[arg(long)]
        points: PathBuf,
    },
    /// Integer points of A X^2 + B XY + C Y^2 + D X + E Y + F = 0 in [0,H]^2
    Count {
        #[arg(long, num_args = 6, allow_negative_numbers = true, value_names = ["A", "B", "C", "D", "E", "F"])]
        coeffs: Vec<i64>,
        #[arg(long = "H")]
        h: u64,
    },
}

fn prune_config(prune: &PruneArgs, method: HullMethod) -> Result<PruneConfig, Error> {
    PruneConfig::new(prune.cutoff_factor, prune.naive_threshold, method)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Hull { m, a, method, prune, json } => {
            let spec = HyperbolaSpec::new(m, a)?;
            let cfg = prune_config(&prune, method)?;
            let hull = fast_hull(&spec, &cfg);
            if json {
                let out = serde_json::json!({
                    "m": spec.m(),
                    "a": spec.a(),
                    "method": hull.method.as_str(),
                    "vertex_count": hull.polygon.vertex_count(),
                    "candidate_count": hull.candidate_count,
                    "vertices": hull.polygon.vertices().iter().map(|p| [p.x, p.y]).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            } else {
                println!("m={} a={} method={} candidates={}", spec.m(), spec.a(), hull.method, hull.candidate_count);
                println!("vertices: {}", hull.polygon.vertex_count());
                for p in hull.polygon.vertices() {
                    println!("{} {}", p.x, p.y);
                }
            }
        }
        Command::Sweep {
            m_min,
            m_max,
            a_policy,
            seed,
            out,
            workers,
            method,
            prune,
            no_cache,
            record_timing,
            summary,
        } => {
            let policy = APolicy::parse(&a_policy, seed)?;
            let cfg = prune_config(&prune, method)?;
            let opts = SweepOptions { workers, record_timing };
            let mut cache = if no_cache { None } else { Some(SweepCache::open(SweepCache::default_dir())?) };
            let records = run_sweep_with(m_min, m_max, policy, &cfg, &opts, cache.as_mut())?;
            let file = fs::File::create(&out)?;
            experiments::write_csv(BufWriter::new(file), &records)?;
            eprintln!("wrote {} records to {}", records.len(), out.display());
            match summary.as_deref() {
                None => {}
                Some("text") => print!("{}", exponent_summary(&records)?.to_text()),
                Some("json") => println!("{}", exponent_summary(&records)?.to_json()),
                Some(other) => return Err(Error::InvalidArgument(format!("unknown summary format {other:?}"))),
            }
        }
        Command::Verify { m_min, m_max, a_policy, seed, prune } => {
            let policy = APolicy::parse(&a_policy, seed)?;
            let cfg = prune_config(&prune, HullMethod::Fast)?;
            if m_min < 2 || m_min > m_max {
                return Err(Error::InvalidArgument(format!("bad modulus range [{m_min}, {m_max}]")));
            }
            let mut checked = 0u64;
            let mut mismatches = 0u64;
            for m in m_min..=m_max {
                for a in policy.residues(m) {
                    let spec = HyperbolaSpec::new(m, a as i64)?;
                    let report = verify_against_naive(&spec, &cfg);
                    checked += 1;
                    if !report.equal {
                        mismatches += 1;
                        println!(
                            "MISMATCH m={} a={} cutoff={} missing={:?}",
                            report.m,
                            report.a,
                            report.cutoff,
                            report.missing.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>()
                        );
                    }
                }
            }
            println!("checked {checked} hulls, {mismatches} mismatches");
            if mismatches > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Count { m, a, u, v } => {
            let spec = HyperbolaSpec::new(m, a)?;
            let exact = count_in_box(&spec, u, v);
            let main = predicted_count(&spec, u, v);
            let main_f = *main.numer() as f64 / *main.denom() as f64;
            println!("count: {exact}");
            println!("main term: {}/{} ({})", main.numer(), main.denom(), experiments::format_sig6(main_f));
            println!("difference: {}", experiments::format_sig6(exact as f64 - main_f));
        }
        Command::Census { m_min, m_max } => {
            let census = experiments::lower_bound_census(m_min, m_max)?;
            println!("range: [{}, {}]", census.m_min, census.m_max);
            println!("violations: {}", census.violations.len());
            for v in &census.violations {
                println!("  m={} v={} bound={}", v.m, v.v, v.bound);
            }
            println!("equality cases: {}", census.equality_count);
            if !census.violations.is_empty() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Conic { command } => match command {
            ConicCommand::Fit { points } => {
                let text = fs::read_to_string(&points)?;
                let pts = parse_points(&text)?;
                match conics::find_vanishing_form(&pts, &MonomialSet::conic())? {
                    Some(c) => println!(
                        "{}",
                        c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                    ),
                    None => println!("none"),
                }
            }
            ConicCommand::Count { coeffs, h } => {
                let arr: [i64; 6] = coeffs
                    .try_into()
                    .map_err(|_| Error::InvalidArgument("expected six coefficients".into()))?;
                let form = ConicForm::primitive(arr)?;
                let class = conics::classify_conic(&form);
                let res = conics::count_conic_points_in_box(&form, h)?;
                println!(
                    "discriminant={} degenerate={} parabola_like={}",
                    class.discriminant, class.degenerate, class.parabola_like
                );
                println!("count: {}", res.count);
                for p in &res.solutions {
                    println!("{} {}", p.x, p.y);
                }
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
