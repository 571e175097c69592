//! Implementations of the CLI commands. Each returns the process exit code
//! on success; failures carry the exit-code contract: 2 for input that does
//! not parse, 3 for a payoff sum of rank above one. Exit 1 is the negative
//! verdict of a check that ran fine.

use crate::gamefile::{format_game_file, parse_game_file, GameFile};
use crate::render::{
    indices_text, json_indices, json_matrix, json_scalar, json_vector, matrix_text, print_json,
    scalar, vector, Style,
};
use rank1eq::bisect::find_equilibrium_traced;
use rank1eq::enumerate::{enumerate_all, SubsetKind};
use rank1eq::game::{Game, MixedProfile, RankOneGame};
use rank1eq::generate::{
    fixture, gen_expo, gen_random_rank1, gen_trade, ExpoParams, TradeParams,
};
use rank1eq::homeo::{km_forward, km_inverse, psi_forward, psi_inverse, HomeoError};
use rank1eq::matrix::{factor_rank_one, RatMatrix};
use rank1eq::rational::{parse_rational, zeros, Rational};
use rank1eq::verify::{best_response_cert, bilinear_gap};
use serde_json::json;
use std::path::Path;

#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Rank(usize),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Rank(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Parse(msg) => write!(f, "{msg}"),
            Failure::Rank(r) => write!(
                f,
                "the payoff sum A + B has rank {r}; this command requires rank at most 1"
            ),
        }
    }
}

fn load(path: &Path) -> Result<GameFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_game_file(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn rank1_game(file: &GameFile) -> Result<RankOneGame, Failure> {
    file.rank1().map_err(Failure::Rank)
}

fn parse_list(text: &str, what: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|piece| {
            parse_rational(piece.trim())
                .map_err(|e| Failure::Parse(format!("bad rational in {what}: {e}")))
        })
        .collect()
}

fn parse_profile(game: &Game, x: &str, y: &str) -> Result<MixedProfile, Failure> {
    let xv = parse_list(x, "--x")?;
    let yv = parse_list(y, "--y")?;
    MixedProfile::for_game(xv, yv, game).map_err(|e| Failure::Parse(format!("{e}")))
}

fn approximation_banner(style: Style) {
    if style == Style::Approximate {
        println!("(decimal rendering; values are approximate)");
    }
}

pub fn cmd_solve(path: &Path, json_out: bool, style: Style) -> Result<i32, Failure> {
    let file = load(path)?;
    let game = rank1_game(&file)?;
    let (record, trace) = find_equilibrium_traced(&game);
    if json_out {
        print_json(&json!({
            "x": json_vector(record.profile.x()),
            "y": json_vector(record.profile.y()),
            "lambda": json_scalar(&record.lambda),
            "row_payoff": json_scalar(&record.payoff_row),
            "col_payoff": json_scalar(&record.payoff_col),
            "iterations": trace.iterations,
        }));
    } else {
        approximation_banner(style);
        println!("equilibrium");
        println!("  x          = {}", vector(record.profile.x(), style));
        println!("  y          = {}", vector(record.profile.y(), style));
        println!("  lambda     = {}", scalar(&record.lambda, style));
        println!("  row payoff = {}", scalar(&record.payoff_row, style));
        println!("  col payoff = {}", scalar(&record.payoff_col, style));
        println!("  rounds     = {}", trace.iterations);
    }
    Ok(0)
}

pub fn cmd_enumerate(path: &Path, json_out: bool, style: Style) -> Result<i32, Failure> {
    let file = load(path)?;
    let game = rank1_game(&file)?;
    let subsets = enumerate_all(&game);
    if json_out {
        let items: Vec<serde_json::Value> = subsets
            .iter()
            .map(|s| {
                json!({
                    "kind": match s.kind {
                        SubsetKind::Breakpoint => "breakpoint",
                        SubsetKind::Interval => "interval",
                    },
                    "lambda_lo": json_scalar(&s.lambda_lo),
                    "lambda_hi": json_scalar(&s.lambda_hi),
                    "x_vertices": s.x_vertices.iter().map(|v| json_vector(v)).collect::<Vec<_>>(),
                    "y_vertices": s.y_vertices.iter().map(|v| json_vector(v)).collect::<Vec<_>>(),
                    "slack_rows": json_indices(&s.sets.slack_rows),
                    "support_cols": json_indices(&s.sets.support_cols),
                })
            })
            .collect();
        print_json(&json!({ "count": subsets.len(), "subsets": items }));
    } else {
        approximation_banner(style);
        println!(
            "{} maximal Nash subset{}",
            subsets.len(),
            if subsets.len() == 1 { "" } else { "s" }
        );
        for (k, s) in subsets.iter().enumerate() {
            match s.kind {
                SubsetKind::Breakpoint => {
                    println!("[{}] breakpoint at lambda = {}", k + 1, scalar(&s.lambda_lo, style))
                }
                SubsetKind::Interval => println!(
                    "[{}] interval, lambda in [{}, {}]",
                    k + 1,
                    scalar(&s.lambda_lo, style),
                    scalar(&s.lambda_hi, style)
                ),
            }
            let xs: Vec<String> = s.x_vertices.iter().map(|v| vector(v, style)).collect();
            let ys: Vec<String> = s.y_vertices.iter().map(|v| vector(v, style)).collect();
            println!("    x vertices: {}", xs.join(" "));
            println!("    y vertices: {}", ys.join(" "));
            println!(
                "    rows unplayed on the face: {}   columns played on the face: {}",
                indices_text(&s.sets.slack_rows),
                indices_text(&s.sets.support_cols)
            );
        }
    }
    Ok(0)
}

pub fn cmd_check(
    path: &Path,
    x: &str,
    y: &str,
    json_out: bool,
    style: Style,
) -> Result<i32, Failure> {
    let file = load(path)?;
    let profile = parse_profile(&file.game, x, y)?;
    let cert = best_response_cert(&file.game, &profile);
    let gap = bilinear_gap(&file.game, &profile);
    let verdict = cert.is_equilibrium();
    if json_out {
        print_json(&json!({
            "is_nash": verdict,
            "row_payoff": json_scalar(&cert.row_payoff),
            "row_best": json_scalar(&cert.row_best),
            "col_payoff": json_scalar(&cert.col_payoff),
            "col_best": json_scalar(&cert.col_best),
            "bilinear_gap": json_scalar(&gap),
        }));
    } else {
        approximation_banner(style);
        println!("Nash equilibrium: {}", if verdict { "yes" } else { "no" });
        println!(
            "  row payoff = {}   best reply = {}",
            scalar(&cert.row_payoff, style),
            scalar(&cert.row_best, style)
        );
        println!(
            "  col payoff = {}   best reply = {}",
            scalar(&cert.col_payoff, style),
            scalar(&cert.col_best, style)
        );
        println!("  bilinear gap = {}", scalar(&gap, style));
    }
    Ok(if verdict { 0 } else { 1 })
}

pub struct TradeArgs {
    pub quality: String,
    pub quantity: String,
    pub cost: String,
    pub benefit: String,
    pub price: Option<String>,
    pub quantity_bonus: Option<String>,
    pub quality_bonus: Option<String>,
    pub reduced: bool,
}

fn parse_matrix_arg(text: &str, what: &str) -> Result<RatMatrix, Failure> {
    let rows: Result<Vec<Vec<Rational>>, Failure> = text
        .split(';')
        .map(|row| parse_list(row, what))
        .collect();
    RatMatrix::from_rows(rows?).map_err(|e| Failure::Parse(format!("{what}: {e}")))
}

pub fn cmd_gen_expo(n: usize, p: &str) -> Result<i32, Failure> {
    let p = parse_rational(p).map_err(|e| Failure::Parse(format!("bad --p: {e}")))?;
    let params = ExpoParams::new(n, p).map_err(|e| Failure::Parse(format!("{e}")))?;
    print!("{}", format_game_file(&GameFile::with_factors(&gen_expo(&params))));
    Ok(0)
}

pub fn cmd_gen_trade(args: &TradeArgs) -> Result<i32, Failure> {
    let quality = parse_list(&args.quality, "--quality")?;
    let quantity = parse_list(&args.quantity, "--quantity")?;
    let m = quality.len();
    let n = quantity.len();
    let price = match &args.price {
        Some(text) => parse_matrix_arg(text, "--price")?,
        None => RatMatrix::zero(m, n),
    };
    let quantity_bonus = match &args.quantity_bonus {
        Some(text) => parse_list(text, "--quantity-bonus")?,
        None => zeros(n),
    };
    let quality_bonus = match &args.quality_bonus {
        Some(text) => parse_list(text, "--quality-bonus")?,
        None => zeros(m),
    };
    let params = TradeParams {
        quality,
        quantity,
        price,
        cost_rate: parse_rational(&args.cost)
            .map_err(|e| Failure::Parse(format!("bad --cost: {e}")))?,
        benefit_rate: parse_rational(&args.benefit)
            .map_err(|e| Failure::Parse(format!("bad --benefit: {e}")))?,
        quantity_bonus,
        quality_bonus,
    };
    let (full, reduced) = gen_trade(&params).map_err(|e| Failure::Parse(format!("{e}")))?;
    let file = if args.reduced {
        GameFile::with_factors(&reduced)
    } else {
        GameFile::plain(full)
    };
    print!("{}", format_game_file(&file));
    Ok(0)
}

pub fn cmd_gen_random(rows: usize, cols: usize, bound: i64, seed: u64) -> Result<i32, Failure> {
    let game = gen_random_rank1(rows, cols, bound, seed)
        .map_err(|e| Failure::Parse(format!("{e}")))?;
    print!("{}", format_game_file(&GameFile::with_factors(&game)));
    Ok(0)
}

pub fn cmd_gen_fixture(name: &str) -> Result<i32, Failure> {
    let game = fixture(name).map_err(|e| Failure::Parse(format!("{e}")))?;
    print!("{}", format_game_file(&GameFile::plain(game)));
    Ok(0)
}

pub fn cmd_rank(path: &Path, json_out: bool, style: Style) -> Result<i32, Failure> {
    let file = load(path)?;
    let sum = file.game.payoff_sum();
    let rank = sum.rank();
    // Echo the file's own (already validated) factorization when it carries
    // one; otherwise derive a pivot-normalized factorization from the sum.
    let factors = match (&file.factors, rank) {
        (Some((a, b)), _) => Some((a.clone(), b.clone())),
        (None, 0) => Some((zeros(sum.rows()), zeros(sum.cols()))),
        (None, 1) => {
            let f = factor_rank_one(&sum).expect("rank verified to be 1");
            Some((f.a, f.b))
        }
        (None, _) => None,
    };
    if json_out {
        let factors_json = match &factors {
            Some((a, b)) => json!({ "a": json_vector(a), "b": json_vector(b) }),
            None => serde_json::Value::Null,
        };
        print_json(&json!({
            "rows": file.game.rows(),
            "cols": file.game.cols(),
            "sum_rank": rank,
            "factors": factors_json,
        }));
    } else {
        approximation_banner(style);
        println!(
            "{}x{} game; payoff sum A + B has rank {}",
            file.game.rows(),
            file.game.cols(),
            rank
        );
        match &factors {
            Some((a, b)) => {
                println!("  a = {}", vector(a, style));
                println!("  b = {}", vector(b, style));
            }
            None => println!("  no rank-1 factorization exists"),
        }
    }
    Ok(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Psi,
    Km,
}

pub fn cmd_homeo(
    map: MapKind,
    path: &Path,
    x: &str,
    y: &str,
    json_out: bool,
    style: Style,
) -> Result<i32, Failure> {
    let file = load(path)?;
    let profile = parse_profile(&file.game, x, y)?;
    let map_name = match map {
        MapKind::Psi => "psi",
        MapKind::Km => "km",
    };
    let encoded = match map {
        MapKind::Psi => psi_inverse(&file.game, &profile, &file.game.payoff_sum()),
        MapKind::Km => km_inverse(&file.game, &profile),
    };
    let encoded = match encoded {
        Ok(e) => e,
        Err(HomeoError::NotAnEquilibrium) => {
            if json_out {
                print_json(&json!({ "map": map_name, "is_nash": false }));
            } else {
                println!("the profile is not a Nash equilibrium; nothing to encode");
            }
            return Ok(1);
        }
        Err(HomeoError::SumMismatch) => unreachable!("the slice is taken from the game itself"),
    };
    let (back, back_profile) = match map {
        MapKind::Psi => psi_forward(&encoded, &file.game.payoff_sum())
            .expect("the encoded game stays in the slice"),
        MapKind::Km => km_forward(&encoded),
    };
    let exact = back == file.game && back_profile == profile;
    if json_out {
        print_json(&json!({
            "map": map_name,
            "is_nash": true,
            "round_trip_exact": exact,
            "sum_rank": file.game.payoff_sum().rank(),
            "encoded": {
                "a": json_matrix(&encoded.a),
                "b": json_matrix(&encoded.b),
            },
        }));
    } else {
        approximation_banner(style);
        println!(
            "map: {}",
            match map {
                MapKind::Psi => "psi (keeps the payoff sum fixed)",
                MapKind::Km => "km (classical average-shift map)",
            }
        );
        println!("round trip exact: {}", if exact { "yes" } else { "no" });
        println!("encoded game, row matrix:");
        println!("{}", matrix_text(&encoded.a, style, "  "));
        println!("encoded game, column matrix:");
        println!("{}", matrix_text(&encoded.b, style, "  "));
    }
    Ok(if exact { 0 } else { 1 })
}
