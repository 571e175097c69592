//! `rank1eq` — exact equilibrium tools for bimatrix games whose payoff sum
//! has rank at most one.
//!
//! Exit codes: 0 success (or: the checked property holds), 1 the checked
//! property fails, 2 input did not parse, 3 the payoff sum has rank above one.

mod commands;
mod gamefile;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{
    cmd_check, cmd_enumerate, cmd_gen_expo, cmd_gen_fixture, cmd_gen_random, cmd_gen_trade,
    cmd_homeo, cmd_rank, cmd_solve, MapKind, TradeArgs,
};
use render::Style;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "rank1eq",
    version,
    about = "Exact equilibrium tools for rank-1 bimatrix games"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct OutputFlags {
    /// Machine-readable JSON; rationals are printed exactly, as strings.
    #[arg(long)]
    json: bool,
    /// Render numbers as decimals (approximate). Text output only.
    #[arg(long, conflicts_with = "json")]
    float: bool,
}

impl OutputFlags {
    fn style(&self) -> Style {
        Style::from_flag(self.float)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Find one Nash equilibrium by exact bracket search.
    Solve {
        /// Game file (see the README for the format).
        path: PathBuf,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// List every maximal Nash subset with its vertices.
    Enumerate {
        path: PathBuf,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Test whether a given mixed profile is a Nash equilibrium.
    Check {
        path: PathBuf,
        /// Row strategy, comma-separated rationals summing to 1.
        #[arg(long)]
        x: String,
        /// Column strategy, comma-separated rationals summing to 1.
        #[arg(long)]
        y: String,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Emit a game in the game-file format.
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
    /// Report the rank of the payoff sum A + B and a factorization if rank <= 1.
    Rank {
        path: PathBuf,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Encode a (game, equilibrium) pair as a game; verify the round trip.
    Homeo {
        /// Which correspondence map to use.
        #[arg(value_enum)]
        map: MapArg,
        path: PathBuf,
        /// Row strategy of the equilibrium to encode.
        #[arg(long)]
        x: String,
        /// Column strategy of the equilibrium to encode.
        #[arg(long)]
        y: String,
        #[command(flatten)]
        out: OutputFlags,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Upper-triangular family with 2^n - 1 symmetric equilibria.
    Expo {
        /// Number of strategies per player.
        #[arg(long)]
        n: usize,
        /// Base of the geometric progression; any rational > 2.
        #[arg(long, default_value = "3")]
        p: String,
    },
    /// Buyer/seller game; its payoff sum factors through quality and quantity.
    Trade {
        /// Quality of each row strategy, comma-separated.
        #[arg(long)]
        quality: String,
        /// Quantity of each column strategy, comma-separated.
        #[arg(long)]
        quantity: String,
        /// Seller's cost per unit of quality times quantity.
        #[arg(long)]
        cost: String,
        /// Buyer's benefit per unit of quality times quantity; must exceed --cost.
        #[arg(long)]
        benefit: String,
        /// Price matrix, rows separated by ';', entries by ','. Default all zero.
        #[arg(long)]
        price: Option<String>,
        /// Per-column payoff bonus for the seller. Default all zero.
        #[arg(long)]
        quantity_bonus: Option<String>,
        /// Per-row payoff bonus for the buyer. Default all zero.
        #[arg(long)]
        quality_bonus: Option<String>,
        /// Emit the reduced game (bonuses dropped) with its factorization.
        #[arg(long)]
        reduced: bool,
    },
    /// Seeded random game whose payoff sum has rank at most one.
    Random {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Entries of the payoff matrix and factors lie in [-bound, bound].
        #[arg(long, default_value_t = 9)]
        bound: i64,
        #[arg(long)]
        seed: u64,
    },
    /// Named example game: ex1, ex3, or param-N2(<rational>).
    Fixture { name: String },
}

#[derive(ValueEnum, Clone, Copy)]
enum MapArg {
    /// Keeps the payoff sum — and hence its rank — fixed.
    Psi,
    /// Classical map onto games with centered payoff matrices.
    Km,
}

fn run(cli: Cli) -> Result<i32, commands::Failure> {
    match cli.cmd {
        Cmd::Solve { path, out } => cmd_solve(&path, out.json, out.style()),
        Cmd::Enumerate { path, out } => cmd_enumerate(&path, out.json, out.style()),
        Cmd::Check { path, x, y, out } => cmd_check(&path, &x, &y, out.json, out.style()),
        Cmd::Gen { family } => match family {
            GenCmd::Expo { n, p } => cmd_gen_expo(n, &p),
            GenCmd::Trade {
                quality,
                quantity,
                cost,
                benefit,
                price,
                quantity_bonus,
                quality_bonus,
                reduced,
            } => cmd_gen_trade(&TradeArgs {
                quality,
                quantity,
                cost,
                benefit,
                price,
                quantity_bonus,
                quality_bonus,
                reduced,
            }),
            GenCmd::Random { rows, cols, bound, seed } => cmd_gen_random(rows, cols, bound, seed),
            GenCmd::Fixture { name } => cmd_gen_fixture(&name),
        },
        Cmd::Rank { path, out } => cmd_rank(&path, out.json, out.style()),
        Cmd::Homeo { map, path, x, y, out } => {
            let kind = match map {
                MapArg::Psi => MapKind::Psi,
                MapArg::Km => MapKind::Km,
            };
            cmd_homeo(kind, &path, &x, &y, out.json, out.style())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    };
    std::process::exit(code);
}
