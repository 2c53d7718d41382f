use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qutrit_mub::EntanglementClass;

/// Exact enumeration and verification of qutrit Pauli-group partitions and
/// mutually unbiased bases.
#[derive(Debug, Parser)]
#[command(name = "qutrit-mub", version, about)]
pub struct Cli {
    /// Worker threads for parallel searches and checks.
    #[arg(long, global = true, value_parser = clap::value_parser!(usize))]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximally commuting subsets.
    #[command(subcommand)]
    Mcs(McsCommand),
    /// Partitions of the Pauli group into disjoint MCS's.
    #[command(subcommand)]
    Partition(PartitionCommand),
    /// Run the full verification ledger.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Eigenbases of MCS's.
    #[command(subcommand)]
    Basis(BasisCommand),
    /// Named states and their expansions in a product basis.
    State(StateArgs),
    /// Exact reconstruction from mutually unbiased measurements.
    #[command(subcommand)]
    Tomography(TomographyCommand),
}

#[derive(Debug, Subcommand)]
pub enum McsCommand {
    /// Enumerate every MCS with its class and body-count profile.
    List {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
        /// Only list MCS's of this class (S, B, SB or G).
        #[arg(long)]
        class: Option<EntanglementClass>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum PartitionCommand {
    /// Enumerate every partition (one or two qutrits).
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        n: u8,
        #[arg(long)]
        json: bool,
    },
    /// Search for a three-qutrit partition with a given number of separable MCS's.
    Find {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=3))]
        n: u8,
        #[arg(long)]
        separable: usize,
        /// Search-node budget per seed; 0 searches to completion.
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Every exact check that applies to N qutrits.
    All {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum BasisCommand {
    /// Build the eigenbasis of the MCS spanned by the given generators.
    Build {
        /// Comma-separated generators, e.g. "ZX,VZ".
        #[arg(long)]
        generators: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// bell, ghz, ghz-prime, sb or aharonov.
    pub name: String,
    /// Label trits (for sb: the slot 1..3 first).
    #[arg(value_parser = clap::value_parser!(u8).range(0..=3))]
    pub args: Vec<u8>,
    /// Product basis letters for the expansion, e.g. "ZX" (default all Z).
    #[arg(long)]
    pub basis: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum TomographyCommand {
    /// Reconstruct seeded random mixtures from their exact probabilities.
    Roundtrip {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        n: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of mixtures (default 100 for two qutrits, 10 for three).
        #[arg(long)]
        mixtures: Option<usize>,
        /// Projectors per mixture.
        #[arg(long, default_value_t = 5)]
        terms: usize,
        /// Write the probability table of the first mixture as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}
