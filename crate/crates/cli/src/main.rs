use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use cosetposet::catalog::default_catalog;
use cosetposet::complexes::{order_complex, poset_reduced_euler_characteristic, reduced_betti};
use cosetposet::coset_poset::{build_coset_poset, build_relative_poset};
use cosetposet::hallzeta::hall_polynomial;
use cosetposet::lattice::DEFAULT_LATTICE_BOUND;
use cosetposet::SubgroupLattice;
use cosetposet_cli::{resolve_group, run_suite, Suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "cosetposet",
    version,
    about = "Coset posets of finite groups: homology, Hall polynomials, generation checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites over a group catalog.
    Verify {
        /// Suites to run; repeat the flag for several. Defaults to all.
        #[arg(long, value_enum)]
        suite: Vec<Suite>,
        /// Catalog file; the bundled catalog is used when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 60)]
        max_order: u64,
        #[arg(long, default_value_t = 2)]
        prime: u64,
        /// Include the long sweeps: A10 and homology of groups above order 120.
        #[arg(long)]
        slow: bool,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report zero wall time so repeated runs give identical records.
        #[arg(long)]
        no_timings: bool,
    },
    /// Ad-hoc computations for one group.
    Compute {
        #[command(subcommand)]
        what: Compute,
    },
}

#[derive(Subcommand)]
enum Compute {
    /// Reduced Betti numbers of the order complex of C(G) or C(G,N).
    Homology {
        /// Catalog name or generators such as "(1,2,3),(1,2)".
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        prime: u64,
        /// Normal subgroup N for the relative poset C(G,N).
        #[arg(long)]
        normal: Option<String>,
    },
    /// Hall's polynomial and its values at the given integers.
    Zeta {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1i64, 1, 2])]
        at: Vec<i64>,
    },
    /// Size and order relation of C(G).
    Poset {
        #[arg(long)]
        group: String,
        /// Print every coset and cover relation.
        #[arg(long)]
        dump: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Verify { suite, catalog, max_order, prime, slow, out, no_timings } => {
            let config = SuiteConfig {
                catalog,
                max_order,
                prime,
                suites: if suite.is_empty() { Suite::ALL.to_vec() } else { suite },
                slow,
                timings: !no_timings,
            };
            let report = run_suite(&config)?;
            for r in &report.records {
                let tag = if r.verdict { "PASS" } else { "FAIL" };
                println!("{tag} {:<12} {} ({} ms)", format!("{:?}", r.suite).to_lowercase(), r.subject, r.millis);
                if let Some(err) = r.values.get("error") {
                    println!("     {err}");
                }
            }
            let passed = report.records.iter().filter(|r| r.verdict).count();
            println!("{passed}/{} records pass; overall {}", report.records.len(), report.overall);
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&report)?;
                std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(report.passed())
        }
        Command::Compute { what } => {
            compute(what)?;
            Ok(true)
        }
    }
}

fn compute(what: Compute) -> anyhow::Result<()> {
    let catalog = default_catalog();
    match what {
        Compute::Homology { group, prime, normal } => {
            let g = resolve_group(&group, &catalog)?;
            let lat = SubgroupLattice::enumerate(&g, DEFAULT_LATTICE_BOUND)?;
            let poset = match normal {
                Some(n) => {
                    let n = resolve_group(&n, &catalog)?;
                    build_relative_poset(&g, &n, &lat)?
                }
                None => build_coset_poset(&g, &lat)?,
            };
            let delta = order_complex(poset.poset());
            let betti = reduced_betti(&delta, prime)?;
            println!("order {}", g.order());
            println!("vertices {}", poset.len());
            println!("f-vector {:?}", delta.f_vector());
            println!("reduced euler characteristic {}", poset_reduced_euler_characteristic(poset.poset()));
            println!("reduced betti over GF({prime}) from dimension -1: {:?}", betti.values());
        }
        Compute::Zeta { group, at } => {
            let g = resolve_group(&group, &catalog)?;
            let lat = SubgroupLattice::enumerate(&g, DEFAULT_LATTICE_BOUND)?;
            let poly = hall_polynomial(&g, &lat, &lat.moebius_to_top()?)?;
            println!("P(s) coefficients {poly}");
            for k in at {
                println!("P({k}) = {}", poly.evaluate(k));
            }
        }
        Compute::Poset { group, dump } => {
            let g = resolve_group(&group, &catalog)?;
            let lat = SubgroupLattice::enumerate(&g, DEFAULT_LATTICE_BOUND)?;
            let poset = build_coset_poset(&g, &lat)?;
            println!("subgroups {}", lat.len());
            println!("cosets {}", poset.len());
            println!("relations {}", poset.poset().relation_count());
            if dump {
                print!("{}", poset.dump());
            }
        }
    }
    Ok(())
}
