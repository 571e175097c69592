//! The plain-text game file format.
//!
//! ```text
//! 2 2
//! 1 0
//! 0 1
//!
//! 1 -2
//! -1 0
//! # factorization: a = 2,-1; b = 1,-1
//! ```
//!
//! A header `m n`, then `m` rows of `n` rationals for the row player's
//! matrix, one blank line, `m` rows for the column player's matrix, and an
//! optional trailing factorization comment asserting that the payoff sum
//! equals `a·bᵀ`. Rationals use the canonical `p/q` form; formatting a
//! parsed file reproduces it byte for byte.

use rank1eq::game::{Game, RankOneGame};
use rank1eq::matrix::RatMatrix;
use rank1eq::rational::{format_rational, parse_rational, Rational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameFile {
    pub game: Game,
    pub factors: Option<(Vec<Rational>, Vec<Rational>)>,
}

impl GameFile {
    pub fn plain(game: Game) -> Self {
        GameFile {
            game,
            factors: None,
        }
    }

    pub fn with_factors(game: &RankOneGame) -> Self {
        GameFile {
            game: game.game().clone(),
            factors: Some((game.factor().a.clone(), game.factor().b.clone())),
        }
    }

    /// Interpret the file as a rank-1 game: use the stated factorization if
    /// present (already validated against the matrices), otherwise factor
    /// the payoff sum. A payoff sum of higher rank is reported by value.
    pub fn rank1(&self) -> Result<RankOneGame, usize> {
        match &self.factors {
            Some((a, b)) => {
                RankOneGame::from_parts(self.game.a.clone(), a.clone(), b.clone())
                    .map_err(|_| self.game.payoff_sum().rank())
            }
            None => RankOneGame::from_game(self.game.clone()).map_err(|e| e.rank),
        }
    }
}

fn parse_vector(text: &str, line: usize, what: &str) -> Result<Vec<Rational>, ParseError> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        match parse_rational(piece.trim()) {
            Ok(r) => out.push(r),
            Err(e) => return err(line, format!("bad rational in {what}: {e}")),
        }
    }
    Ok(out)
}

fn parse_row(text: &str, cols: usize, line: usize) -> Result<Vec<Rational>, ParseError> {
    let mut row = Vec::with_capacity(cols);
    for piece in text.split_whitespace() {
        match parse_rational(piece) {
            Ok(r) => row.push(r),
            Err(e) => return err(line, format!("bad rational `{piece}`: {e}")),
        }
    }
    if row.len() != cols {
        return err(line, format!("expected {cols} entries, found {}", row.len()));
    }
    Ok(row)
}

pub fn parse_game_file(text: &str) -> Result<GameFile, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut at = 0usize;
    let next = |at: &mut usize| -> Option<(usize, &str)> {
        if *at < lines.len() {
            let pair = (*at + 1, lines[*at]);
            *at += 1;
            Some(pair)
        } else {
            None
        }
    };

    let Some((header_line, header)) = next(&mut at) else {
        return err(1, "empty file");
    };
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return err(header_line, "header must be `m n`");
    }
    let m: usize = match dims[0].parse() {
        Ok(v) if v >= 1 => v,
        _ => return err(header_line, "row count must be a positive integer"),
    };
    let n: usize = match dims[1].parse() {
        Ok(v) if v >= 1 => v,
        _ => return err(header_line, "column count must be a positive integer"),
    };

    let read_matrix = |at: &mut usize| -> Result<RatMatrix, ParseError> {
        let mut rows = Vec::with_capacity(m);
        for _ in 0..m {
            let Some((line, text)) = next(at) else {
                return err(lines.len() + 1, format!("expected {m} matrix rows"));
            };
            rows.push(parse_row(text, n, line)?);
        }
        Ok(RatMatrix::from_rows(rows).expect("rows validated to equal length"))
    };

    let a = read_matrix(&mut at)?;
    match next(&mut at) {
        Some((_, blank)) if blank.trim().is_empty() => {}
        Some((line, _)) => return err(line, "expected a blank line between the matrices"),
        None => return err(lines.len() + 1, "expected a blank line and the second matrix"),
    }
    let b = read_matrix(&mut at)?;

    let mut factors = None;
    while let Some((line, text)) = next(&mut at) {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            continue;
        }
        let Some(body) = trimmed.strip_prefix("# factorization:") else {
            return err(line, "unexpected content after the matrices");
        };
        if factors.is_some() {
            return err(line, "duplicate factorization comment");
        }
        let parts: Vec<&str> = body.split(';').collect();
        if parts.len() != 2 {
            return err(line, "factorization must be `a = …; b = …`");
        }
        let mut sides = Vec::with_capacity(2);
        for (part, name) in parts.iter().zip(["a", "b"]) {
            let Some((label, values)) = part.split_once('=') else {
                return err(line, format!("missing `=` in factorization {name}-part"));
            };
            if label.trim() != name {
                return err(line, format!("expected `{name} = …`, found `{}`", label.trim()));
            }
            sides.push(parse_vector(values, line, "factorization")?);
        }
        let bv = sides.pop().expect("two sides");
        let av = sides.pop().expect("two sides");
        if av.len() != m || bv.len() != n {
            return err(line, "factorization lengths must match the matrix shape");
        }
        if RatMatrix::outer(&av, &bv) != a.add(&b).expect("shapes match") {
            return err(line, "factorization does not reproduce the payoff sum");
        }
        factors = Some((av, bv));
    }

    let game = match Game::new(a, b) {
        Ok(g) => g,
        Err(e) => return err(1, format!("{e}")),
    };
    Ok(GameFile { game, factors })
}

fn format_row(row: &[Rational]) -> String {
    row.iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(" ")
}

fn format_vector(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

pub fn format_game_file(file: &GameFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", file.game.rows(), file.game.cols()));
    for i in 0..file.game.rows() {
        out.push_str(&format_row(file.game.a.row(i)));
        out.push('\n');
    }
    out.push('\n');
    for i in 0..file.game.rows() {
        out.push_str(&format_row(file.game.b.row(i)));
        out.push('\n');
    }
    if let Some((a, b)) = &file.factors {
        out.push_str(&format!(
            "# factorization: a = {}; b = {}\n",
            format_vector(a),
            format_vector(b)
        ));
    }
    out
}
