//! Versioned JSON documents for games and potential witnesses.
//!
//! A game file looks like
//! `{"version":1,"n":2,"m":[2,2],"strict":true,"ranks":[[...],[...]]}`
//! with each rank table listed in profile-index order (agent 0 slowest).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::OrdinalGame;

pub const GAME_FILE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub version: u32,
    pub n: usize,
    pub m: Vec<usize>,
    pub strict: bool,
    pub ranks: Vec<Vec<usize>>,
}

impl GameFile {
    pub fn from_game(game: &OrdinalGame) -> Self {
        GameFile {
            version: GAME_FILE_VERSION,
            n: game.agents(),
            m: game.actions().to_vec(),
            strict: game.is_strict(),
            ranks: (0..game.agents()).map(|i| game.rank_table(i)).collect(),
        }
    }

    pub fn into_game(self) -> Result<OrdinalGame> {
        if self.version != GAME_FILE_VERSION {
            return Err(format_err("version", format!("unsupported version {}", self.version)));
        }
        if self.n != self.m.len() {
            return Err(format_err(
                "m",
                format!("n = {} but m lists {} agents", self.n, self.m.len()),
            ));
        }
        if self.ranks.len() != self.n {
            return Err(format_err(
                "ranks",
                format!("expected {} rank tables, found {}", self.n, self.ranks.len()),
            ));
        }
        let expected: usize = self.m.iter().product();
        if let Some(i) = self.ranks.iter().position(|t| t.len() != expected) {
            return Err(format_err(
                &format!("ranks[{i}]"),
                format!("expected {expected} entries, found {}", self.ranks[i].len()),
            ));
        }
        for (i, table) in self.ranks.iter().enumerate() {
            if let Some(j) = table.iter().position(|&r| r == 0 || r > self.m[i]) {
                return Err(format_err(
                    &format!("ranks[{i}][{j}]"),
                    format!("rank {} outside 1..={}", table[j], self.m[i]),
                ));
            }
        }
        OrdinalGame::with_strictness(&self.m, self.ranks, self.strict)
    }
}

fn format_err(field: &str, detail: String) -> Error {
    Error::Format {
        field: field.to_string(),
        detail,
    }
}

/// Serializes a game as a single-line JSON document.
pub fn game_to_json(game: &OrdinalGame) -> String {
    serde_json::to_string(&GameFile::from_game(game)).expect("game file serializes")
}

/// Parses a game document. Syntax errors carry serde's line/column position.
pub fn game_from_json(text: &str) -> Result<OrdinalGame> {
    let file: GameFile = serde_json::from_str(text)?;
    file.into_game()
}

/// A score per profile, in profile-index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub scores: Vec<u64>,
}

pub fn witness_from_json(text: &str, game: &OrdinalGame) -> Result<Vec<u64>> {
    let w: WitnessFile = serde_json::from_str(text)?;
    if w.scores.len() != game.grid().len() {
        return Err(format_err(
            "scores",
            format!("expected {} scores, found {}", game.grid().len(), w.scores.len()),
        ));
    }
    Ok(w.scores)
}
