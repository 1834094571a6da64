//! The Wilf game on a Kunz poset.
//!
//! Play starts from `e x_1 + ... + e x_{m-1}` with score `m - 1 - f`. A move
//! `x_i + x_j -> x_k` with `i < k` in the poset and `j = k - i mod m` spends
//! one copy each of `x_i` and `x_j` and adds one `x_k`. A sequence of at least
//! `m - e` moves with nonnegative final score wins, and a win for every
//! maximal `f` proves the counterexample regions of the face empty.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::poset::KunzPoset;

/// Default number of expanded states before `solve` gives up.
pub const DEFAULT_STATE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("move {index} ({i} -> {k}) is illegal: {reason}")]
    IllegalMove {
        index: usize,
        i: u32,
        k: u32,
        reason: &'static str,
    },
    #[error("{f} is not a maximal element")]
    FNotMaximal { f: u32 },
    #[error("poset does not have the shape this strategy needs: {0}")]
    PosetShapeMismatch(&'static str),
    #[error("bad certificate: {0}")]
    BadCertificate(String),
}

/// `x_i + x_{k-i} -> x_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WilfMove {
    pub i: u32,
    pub k: u32,
}

impl WilfMove {
    pub fn j(&self, m: u32) -> u32 {
        (self.k + m - self.i) % m
    }
}

/// Score of one move, `move_number` counted from 1.
pub fn move_score(mv: WilfMove, f: u32, move_number: usize, m: u32, e: u32) -> i64 {
    let j = mv.j(m);
    let mut s = 0;
    if mv.i > f {
        s -= 1;
    }
    if j > f {
        s -= 1;
    }
    if mv.k > f {
        s += 1;
    }
    if mv.k < mv.i {
        s += 1;
    }
    if move_number > (m - e) as usize {
        s += 2;
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameState {
    pub m: u32,
    pub e: u32,
    pub f: u32,
    pub coeffs: Vec<u32>,
    pub moves_made: usize,
    pub score: i64,
}

impl GameState {
    pub fn initial(poset: &KunzPoset, f: u32) -> Result<Self, GameError> {
        if !poset.is_maximal(f) {
            return Err(GameError::FNotMaximal { f });
        }
        let m = poset.m();
        let e = poset.embedding_dimension();
        Ok(Self {
            m,
            e,
            f,
            coeffs: vec![e; (m - 1) as usize],
            moves_made: 0,
            score: (m - 1 - f) as i64,
        })
    }

    pub fn is_win(&self) -> bool {
        self.moves_made >= (self.m - self.e) as usize && self.score >= 0
    }

    fn legal(&self, poset: &KunzPoset, mv: WilfMove) -> Result<(), &'static str> {
        let m = self.m;
        if mv.i == 0 || mv.i >= m || mv.k == 0 || mv.k >= m {
            return Err("residue out of range");
        }
        if !poset.lt(mv.i, mv.k) {
            return Err("i is not below k in the poset");
        }
        let j = mv.j(m);
        let (ai, aj) = (self.coeffs[(mv.i - 1) as usize], self.coeffs[(j - 1) as usize]);
        if mv.i == j {
            if ai < 2 {
                return Err("needs two copies of x_i");
            }
        } else if ai < 1 || aj < 1 {
            return Err("a summand is exhausted");
        }
        Ok(())
    }

    fn apply(&mut self, mv: WilfMove) {
        let j = mv.j(self.m);
        self.coeffs[(mv.i - 1) as usize] -= 1;
        self.coeffs[(j - 1) as usize] -= 1;
        self.coeffs[(mv.k - 1) as usize] += 1;
        self.moves_made += 1;
        self.score += move_score(mv, self.f, self.moves_made, self.m, self.e);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlayResult {
    pub state: GameState,
    pub win: bool,
}

/// Plays `moves` in order from the initial expression.
pub fn play(poset: &KunzPoset, f: u32, moves: &[WilfMove]) -> Result<PlayResult, GameError> {
    let mut state = GameState::initial(poset, f)?;
    for (index, &mv) in moves.iter().enumerate() {
        state.legal(poset, mv).map_err(|reason| GameError::IllegalMove {
            index,
            i: mv.i,
            k: mv.k,
            reason,
        })?;
        state.apply(mv);
    }
    let win = state.is_win();
    Ok(PlayResult { state, win })
}

/// A replayable winning sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub f: u32,
    pub moves: Vec<WilfMove>,
    pub score: i64,
}

impl fmt::Display for Certificate {
    /// `f=1 score=2: 2>1 3>1 4>1 5>1`
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "f={} score={}:", self.f, self.score)?;
        for mv in &self.moves {
            write!(out, " {}>{}", mv.i, mv.k)?;
        }
        Ok(())
    }
}

impl FromStr for Certificate {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, GameError> {
        let bad = |msg: &str| GameError::BadCertificate(msg.to_string());
        let (head, body) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let mut f = None;
        let mut score = None;
        for part in head.split_whitespace() {
            if let Some(v) = part.strip_prefix("f=") {
                f = Some(v.parse().map_err(|_| bad("f is not a number"))?);
            } else if let Some(v) = part.strip_prefix("score=") {
                score = Some(v.parse().map_err(|_| bad("score is not a number"))?);
            } else {
                return Err(bad("unknown header field"));
            }
        }
        let moves = body
            .split_whitespace()
            .map(|tok| {
                let (i, k) = tok.split_once('>').ok_or_else(|| bad("move must look like i>k"))?;
                Ok(WilfMove {
                    i: i.parse().map_err(|_| bad("bad residue"))?,
                    k: k.parse().map_err(|_| bad("bad residue"))?,
                })
            })
            .collect::<Result<Vec<_>, GameError>>()?;
        Ok(Certificate {
            f: f.ok_or_else(|| bad("missing f"))?,
            moves,
            score: score.ok_or_else(|| bad("missing score"))?,
        })
    }
}

impl Certificate {
    /// Replays the moves and checks the claimed score and the win.
    pub fn check(&self, poset: &KunzPoset) -> Result<PlayResult, GameError> {
        let r = play(poset, self.f, &self.moves)?;
        if r.state.score != self.score {
            return Err(GameError::BadCertificate(format!(
                "claimed score {} but replay gives {}",
                self.score, r.state.score
            )));
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolveResult {
    Win { certificate: Certificate },
    Unwinnable,
    Unknown,
}

impl SolveResult {
    pub fn is_win(&self) -> bool {
        matches!(self, SolveResult::Win { .. })
    }
}

/// Complete search for a winning sequence.
///
/// Depth-first over legal moves, best-scoring moves first. A state is
/// identified by its coefficients and by the number of moves made, capped at
/// `m - e` since later scores only depend on whether that threshold has been
/// passed; a state reached again with no better score is not expanded again.
pub fn solve(poset: &KunzPoset, f: u32, budget: u64) -> Result<SolveResult, GameError> {
    let start = GameState::initial(poset, f)?;
    let m = poset.m();
    let moves: Vec<WilfMove> = poset
        .relations()
        .into_iter()
        .map(|(i, k)| WilfMove { i, k })
        .collect();
    let mut search = Search {
        poset,
        moves,
        threshold: (m - poset.embedding_dimension()) as usize,
        best: HashMap::new(),
        expanded: 0,
        budget,
        path: Vec::new(),
    };
    Ok(match search.dfs(start.clone()) {
        Some(true) => {
            let moves = search.path.clone();
            let replay = play(poset, f, &moves)?;
            debug_assert!(replay.win);
            SolveResult::Win {
                certificate: Certificate {
                    f,
                    moves,
                    score: replay.state.score,
                },
            }
        }
        Some(false) => SolveResult::Unwinnable,
        None => SolveResult::Unknown,
    })
}

struct Search<'a> {
    poset: &'a KunzPoset,
    moves: Vec<WilfMove>,
    threshold: usize,
    best: HashMap<(Vec<u32>, usize), i64>,
    expanded: u64,
    budget: u64,
    path: Vec<WilfMove>,
}

impl Search<'_> {
    /// `Some(true)` with the winning line in `path`, `Some(false)` if no
    /// continuation wins, `None` when the budget runs out.
    fn dfs(&mut self, state: GameState) -> Option<bool> {
        if state.is_win() {
            return Some(true);
        }
        let key = (state.coeffs.clone(), state.moves_made.min(self.threshold));
        match self.best.get(&key) {
            Some(&s) if s >= state.score => return Some(false),
            _ => {}
        }
        self.best.insert(key, state.score);
        self.expanded += 1;
        if self.expanded > self.budget {
            return None;
        }
        let mut options: Vec<(i64, WilfMove)> = self
            .moves
            .iter()
            .filter(|&&mv| state.legal(self.poset, mv).is_ok())
            .map(|&mv| {
                (
                    move_score(mv, state.f, state.moves_made + 1, state.m, state.e),
                    mv,
                )
            })
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then((a.1.i, a.1.k).cmp(&(b.1.i, b.1.k))));
        for (_, mv) in options {
            let mut next = state.clone();
            next.apply(mv);
            self.path.push(mv);
            match self.dfs(next) {
                Some(true) => return Some(true),
                Some(false) => {
                    self.path.pop();
                }
                None => return None,
            }
        }
        Some(false)
    }
}

/// `x_i + x_{f-i} -> x_f` once for every `i != f`; needs `f` to be the unique
/// maximal element.
pub fn strategy_symmetric(poset: &KunzPoset, f: u32) -> Result<Vec<WilfMove>, GameError> {
    if poset.maximal() != [f] {
        return Err(GameError::PosetShapeMismatch(
            "f must be the unique maximal element",
        ));
    }
    Ok((1..poset.m())
        .filter(|&i| i != f)
        .map(|i| WilfMove { i, k: f })
        .collect())
}

/// The empty sequence; only valid on an antichain.
pub fn strategy_med(poset: &KunzPoset, f: u32) -> Result<Vec<WilfMove>, GameError> {
    if !poset.is_antichain() {
        return Err(GameError::PosetShapeMismatch("poset must be an antichain"));
    }
    if !poset.is_maximal(f) {
        return Err(GameError::FNotMaximal { f });
    }
    Ok(Vec::new())
}

/// Solves the game for every maximal element. The face is certified when all
/// of them are wins.
pub fn certify_face(poset: &KunzPoset, budget: u64) -> Vec<(u32, SolveResult)> {
    poset
        .maximal()
        .iter()
        .map(|&f| (f, solve(poset, f, budget).expect("f is maximal")))
        .collect()
}

pub fn is_certified(results: &[(u32, SolveResult)]) -> bool {
    results.iter().all(|(_, r)| r.is_win())
}
