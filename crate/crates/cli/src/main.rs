//! Kernel sieve for surface-group homomorphisms to finite groups: scans for
//! targets whose kernels avoid every simple closed curve, with JSON reports
//! on stdout and logs on stderr.

mod cmds;
mod report;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::report::Cache;

#[derive(Parser)]
#[command(name = "scc-sieve", version, about)]
struct Cli {
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Verdict cache directory (overrides the SCC_SIEVE_CACHE variable).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the order-32 central extension, check its defining identities,
    /// and certify that the standard hom has a nongeometric kernel.
    VerifyG2 {
        /// Send both y-generators to the identity first; the kernel then
        /// contains a generator curve and the verdict flips to geometric.
        #[arg(long)]
        mutate: bool,
        /// Class budget for the orbit search.
        #[arg(long)]
        budget: Option<u64>,
        /// Depth cap for the orbit search (default: unbounded at genus 2).
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Scan every catalog group for a surjective hom with no simple closed
    /// curve in its kernel.
    Minimality {
        /// Largest catalog order to include.
        #[arg(long, default_value_t = 31, value_parser = clap::value_parser!(u64).range(2..=31))]
        upto: u64,
        /// Restrict the scan to one order.
        #[arg(long)]
        only_order: Option<usize>,
        /// Append the order-32 extension as a final row.
        #[arg(long)]
        with_g2: bool,
        /// Surface genus of the domain.
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Decide one target group: scan its surjective homs at the given genus.
    Decide {
        /// Construction name (G2, Gk:k=3,g=3, SL2Z3, S4, Klein4, Z12, S3,
        /// D6, Q8), catalog index like 24#14, or a table file path.
        #[arg(long)]
        group: String,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Compare the iterated-cover order bound with the central-extension
    /// family at one genus.
    Orders {
        #[arg(long)]
        genus: u64,
    },
    /// Build the catalog and optionally persist group files plus a manifest.
    Catalog {
        #[arg(long, default_value_t = 31, value_parser = clap::value_parser!(u64).range(1..=31))]
        upto: u64,
        /// Directory receiving one table file per class and manifest.json.
        #[arg(long)]
        catalog_dir: Option<PathBuf>,
    },
    /// Check the cyclic normal form for all cyclic targets up to a bound.
    NielsenCheck {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(2..=16))]
        upto: u64,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        depth: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("[scc-sieve] thread pool already initialized: {e}");
        }
    }
    let cache = Cache::resolve(cli.cache_dir.as_deref());

    let result = match cli.command {
        Command::VerifyG2 { mutate, budget, depth } => {
            cmds::verify_g2(mutate, budget, depth, &cache)
        }
        Command::Minimality { upto, only_order, with_g2, genus, budget, depth } => {
            cmds::minimality(upto as usize, only_order, with_g2, genus, budget, depth, &cache)
        }
        Command::Decide { group, genus, budget, depth } => {
            cmds::decide(&group, genus, budget, depth, &cache)
        }
        Command::Orders { genus } => cmds::orders(genus, &cache),
        Command::Catalog { upto, catalog_dir } => {
            cmds::catalog_cmd(upto as usize, catalog_dir.as_deref())
        }
        Command::NielsenCheck { upto, budget, depth } => {
            cmds::nielsen_check(upto as usize, budget, depth, &cache)
        }
    };

    match result {
        Ok(out) => {
            println!("{}", out.json);
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("[scc-sieve] error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
