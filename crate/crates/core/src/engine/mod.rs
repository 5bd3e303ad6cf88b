//! The equivalence `≡` on closed paths, extended by zero.
//!
//! Moves are cyclic rotation and the exchange of two adjacent closed
//! factors at a common vertex. An exchange that leaves a non-empty rest
//! carries sign `-1`; exchanging the only two factors is a rotation and keeps
//! the sign. A class is zero when some member contains a repeated closed
//! factor (plus, away from characteristic 2, four factors at one vertex or a
//! sign clash). Classes are explored breadth first over least rotations.

mod lemmas;
mod search;

pub use lemmas::{
    verify_rewrite_lemma, verify_rewrite_lemma_with_budget, LemmaError, LemmaName, LemmaReport, LemmaRoles,
    Shape,
};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{ArrowId, Path, Quiver, QuiverError, VertexId};
use crate::words::least_rotation;

/// Node budget used when none is given.
pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CharMode {
    #[serde(rename = "char2")]
    Char2,
    #[serde(rename = "not2")]
    CharNot2,
}

impl CharMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CharMode::Char2 => "char2",
            CharMode::CharNot2 => "not2",
        }
    }
}

impl fmt::Display for CharMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CharMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "char2" => Ok(CharMode::Char2),
            "not2" => Ok(CharMode::CharNot2),
            other => Err(format!("unknown mode `{other}` (expected char2 or not2)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn slot(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

/// A closed word with a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedWord {
    pub sign: Sign,
    pub word: Vec<ArrowId>,
}

impl SignedWord {
    pub fn new(sign: Sign, word: Vec<ArrowId>) -> Self {
        SignedWord { sign, word }
    }

    /// The same signed word rotated to its least rotation.
    pub fn canonical(&self) -> SignedWord {
        let k = least_rotation(&self.word);
        SignedWord {
            sign: self.sign,
            word: rotate_left(&self.word, k),
        }
    }
}

/// One step of a certificate trace, applied to a concrete word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// `a_1..a_s -> a_{by+1}..a_s a_1..a_by`.
    Rotate { by: usize },
    /// Exchange the closed factor of `first` arrows starting at `offset`
    /// with the closed factor of `second` arrows that follows it (cyclically).
    Swap {
        offset: usize,
        first: usize,
        second: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroKind {
    SquareFactor,
    FourFactor,
    SignConflict,
    Nonzero,
}

/// The local reason a witness is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Trigger {
    /// Equal disjoint closed factors of `len` arrows at positions `first`
    /// and `second` of the witness.
    Square { first: usize, second: usize, len: usize },
    /// The path returns to `vertex` at least four times.
    FourFactor { vertex: VertexId, visits: usize },
    /// A second trace from the input reaching the witness with the other sign.
    SignConflict { other: Vec<Move> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCertificate {
    pub kind: ZeroKind,
    /// Moves from the input to the witness.
    pub trace: Vec<Move>,
    pub witness: Vec<ArrowId>,
    pub sign: Sign,
    pub trigger: Option<Trigger>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDecision {
    pub zero: bool,
    pub certificate: ZeroCertificate,
    /// Signed words visited.
    pub explored: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equivalence {
    Equal,
    EqualUpToSign,
    Inequivalent,
    BothZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub verdict: Equivalence,
    pub first_zero: bool,
    pub second_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("path is empty")]
    EmptyPath,
    #[error("path is not closed")]
    NotClosed,
    #[error("search budget of {0} signed words exhausted")]
    BudgetExhausted(usize),
    #[error("illegal move at step {step}: {reason}")]
    IllegalMove { step: usize, reason: String },
    #[error("certificate rejected: {0}")]
    BadCertificate(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// The decision procedure for one quiver and characteristic regime.
#[derive(Clone, Debug)]
pub struct Engine<'q> {
    quiver: &'q Quiver,
    mode: CharMode,
    budget: usize,
}

impl<'q> Engine<'q> {
    pub fn new(quiver: &'q Quiver, mode: CharMode) -> Self {
        Engine {
            quiver,
            mode,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.quiver
    }

    pub fn mode(&self) -> CharMode {
        self.mode
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// All words one move away: every proper rotation, and every exchange of
    /// two adjacent runs of closed factors at every base point.
    pub fn neighbors(&self, w: &SignedWord) -> BTreeSet<SignedWord> {
        let q = self.quiver;
        let n = w.word.len();
        let mut out = BTreeSet::new();
        for k in 1..n {
            out.insert(SignedWord::new(w.sign, rotate_left(&w.word, k)));
        }
        for o in 0..n {
            let rotated = rotate_left(&w.word, o);
            let v = q.tail(rotated[0]);
            let returns: Vec<usize> = (0..n).filter(|&i| q.head(rotated[i]) == v).map(|i| i + 1).collect();
            for (ix, &first) in returns.iter().enumerate() {
                for &end in &returns[ix + 1..] {
                    let mut word = rotated[first..end].to_vec();
                    word.extend_from_slice(&rotated[..first]);
                    word.extend_from_slice(&rotated[end..]);
                    let sign = self.swap_sign(w.sign, end, n);
                    out.insert(SignedWord::new(sign, word));
                }
            }
        }
        out
    }

    fn swap_sign(&self, sign: Sign, covered: usize, len: usize) -> Sign {
        if self.mode == CharMode::CharNot2 && covered < len {
            sign.flip()
        } else {
            sign
        }
    }

    /// Decides `h ≡ 0` and returns a replayable certificate either way.
    pub fn is_zero(&self, h: &Path) -> Result<ZeroDecision, EngineError> {
        let word = self.check_closed(h)?;
        search::decide_zero(self, word)
    }

    /// Decides whether `p ≡ ±q`.
    pub fn are_equivalent(&self, p: &Path, q: &Path) -> Result<EquivalenceReport, EngineError> {
        let pw = self.check_closed(p)?;
        let qw = self.check_closed(q)?;
        if p.multidegree(self.quiver) != q.multidegree(self.quiver) {
            // moves preserve multidegree, so neither class meets the other
            let first_zero = self.is_zero(p)?.zero;
            let second_zero = self.is_zero(q)?.zero;
            let verdict = if first_zero && second_zero {
                Equivalence::BothZero
            } else {
                Equivalence::Inequivalent
            };
            return Ok(EquivalenceReport {
                verdict,
                first_zero,
                second_zero,
            });
        }
        let first_zero = search::decide_zero(self, pw)?.zero;
        let second_zero = search::decide_zero(self, qw)?.zero;
        let verdict = match (first_zero, second_zero) {
            (true, true) => Equivalence::BothZero,
            (true, false) | (false, true) => Equivalence::Inequivalent,
            (false, false) => {
                let class = search::class_of(self, pw)?;
                let target = SignedWord::new(Sign::Plus, qw.to_vec()).canonical();
                match class.sign_of(&target.word) {
                    Some(Sign::Plus) => Equivalence::Equal,
                    Some(Sign::Minus) => Equivalence::EqualUpToSign,
                    None => Equivalence::Inequivalent,
                }
            }
        };
        Ok(EquivalenceReport {
            verdict,
            first_zero,
            second_zero,
        })
    }

    /// Every signed word in the class of `h` (least rotations), ignoring the
    /// zero rules. In characteristic 2 all signs are `+`.
    pub fn class_members(&self, h: &Path) -> Result<Vec<SignedWord>, EngineError> {
        let word = self.check_closed(h)?;
        Ok(search::class_of(self, word)?.members())
    }

    /// Applies `moves` to `start`, checking each one.
    pub fn replay(&self, start: &[ArrowId], moves: &[Move]) -> Result<SignedWord, EngineError> {
        let q = self.quiver;
        let mut word = start.to_vec();
        let mut sign = Sign::Plus;
        for (step, mv) in moves.iter().enumerate() {
            let n = word.len();
            let illegal = |reason: String| EngineError::IllegalMove { step, reason };
            match *mv {
                Move::Rotate { by } => {
                    if by >= n.max(1) {
                        return Err(illegal(format!("rotation by {by} on a word of length {n}")));
                    }
                    word = rotate_left(&word, by);
                }
                Move::Swap {
                    offset,
                    first,
                    second,
                } => {
                    if offset >= n || first == 0 || second == 0 || first + second > n {
                        return Err(illegal(format!(
                            "factor lengths {first}+{second} at offset {offset} do not fit length {n}"
                        )));
                    }
                    let rotated = rotate_left(&word, offset);
                    let v = q.tail(rotated[0]);
                    if q.head(rotated[first - 1]) != v || q.head(rotated[first + second - 1]) != v {
                        return Err(illegal(format!(
                            "factors are not closed at `{}`",
                            q.vertex_name(v)
                        )));
                    }
                    let mut swapped = rotated[first..first + second].to_vec();
                    swapped.extend_from_slice(&rotated[..first]);
                    swapped.extend_from_slice(&rotated[first + second..]);
                    word = rotate_left(&swapped, n - offset);
                    sign = self.swap_sign(sign, first + second, n);
                }
            }
        }
        Ok(SignedWord::new(sign, word))
    }

    /// Re-checks a certificate against `h` without searching.
    pub fn check_certificate(&self, h: &Path, cert: &ZeroCertificate) -> Result<(), EngineError> {
        let q = self.quiver;
        let start = self.check_closed(h)?;
        let reached = self.replay(start, &cert.trace)?;
        let bad = |msg: &str| Err(EngineError::BadCertificate(msg.to_string()));
        if reached.word != cert.witness || reached.sign != cert.sign {
            return bad("trace does not reach the witness");
        }
        match (&cert.kind, &cert.trigger) {
            (ZeroKind::Nonzero, None) => Ok(()),
            (ZeroKind::FourFactor, Some(Trigger::FourFactor { vertex, visits })) => {
                let count = cert.witness.iter().filter(|&&a| q.head(a) == *vertex).count();
                if self.mode != CharMode::CharNot2 || count != *visits || count < 4 {
                    return bad("vertex is not visited four times");
                }
                Ok(())
            }
            (ZeroKind::SquareFactor, Some(Trigger::Square { first, second, len })) => {
                if square_holds(q, self.mode, &cert.witness, *first, *second, *len) {
                    Ok(())
                } else {
                    bad("factors are not equal, disjoint and closed at one vertex")
                }
            }
            (ZeroKind::SignConflict, Some(Trigger::SignConflict { other })) => {
                let again = self.replay(start, other)?;
                if self.mode != CharMode::CharNot2
                    || again.word != cert.witness
                    || again.sign == cert.sign
                {
                    return bad("second trace does not reach the witness with the other sign");
                }
                Ok(())
            }
            _ => bad("kind and trigger disagree"),
        }
    }

    fn check_closed<'p>(&self, h: &'p Path) -> Result<&'p [ArrowId], EngineError> {
        if h.is_empty() {
            return Err(EngineError::EmptyPath);
        }
        if !h.is_closed() {
            return Err(EngineError::NotClosed);
        }
        Ok(h.word())
    }
}

pub(crate) fn rotate_left<T: Clone>(w: &[T], k: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(&w[k..]);
    out.extend_from_slice(&w[..k]);
    out
}

/// Positions where a closed factor at `v` may start: the tails equal to `v`.
pub(crate) fn factor_starts(q: &Quiver, word: &[ArrowId], v: VertexId) -> Vec<usize> {
    (0..word.len()).filter(|&i| q.tail(word[i]) == v).collect()
}

fn cyclic_eq(word: &[ArrowId], a: usize, b: usize, len: usize) -> bool {
    let n = word.len();
    (0..len).all(|i| word[(a + i) % n] == word[(b + i) % n])
}

fn square_holds(q: &Quiver, mode: CharMode, word: &[ArrowId], first: usize, second: usize, len: usize) -> bool {
    let n = word.len();
    if first >= n || second >= n || len == 0 {
        return false;
    }
    let gap = (second + n - first) % n;
    let back = (first + n - second) % n;
    let disjoint = gap >= len && back >= len;
    let v = q.tail(word[first]);
    let closed = q.head(word[(first + len - 1) % n]) == v && q.tail(word[second]) == v;
    let rest_ok = match mode {
        CharMode::Char2 => true,
        CharMode::CharNot2 => 2 * len < n,
    };
    disjoint && closed && rest_ok && cyclic_eq(word, first, second, len)
}

/// A repeated closed factor in `word` itself, if one exists.
///
/// Two equal factors at one vertex start with two equal return loops, so
/// comparing the single loops between consecutive returns is enough.
pub(crate) fn find_square(q: &Quiver, mode: CharMode, word: &[ArrowId]) -> Option<Trigger> {
    let n = word.len();
    for v in q.vertices() {
        let starts = factor_starts(q, word, v);
        let t = starts.len();
        let enough = match mode {
            CharMode::Char2 => t >= 2,
            CharMode::CharNot2 => t >= 3,
        };
        if !enough {
            continue;
        }
        let len_of = |i: usize| (starts[(i + 1) % t] + n - starts[i] - 1) % n + 1;
        for i in 0..t {
            for j in i + 1..t {
                let len = len_of(i);
                if len == len_of(j) && cyclic_eq(word, starts[i], starts[j], len) {
                    return Some(Trigger::Square {
                        first: starts[i],
                        second: starts[j],
                        len,
                    });
                }
            }
        }
    }
    None
}

/// Away from characteristic 2, a vertex visited four times kills the path.
pub(crate) fn find_four_factor(q: &Quiver, mode: CharMode, word: &[ArrowId]) -> Option<Trigger> {
    if mode != CharMode::CharNot2 {
        return None;
    }
    q.vertices().find_map(|v| {
        let visits = word.iter().filter(|&&a| q.head(a) == v).count();
        (visits >= 4).then_some(Trigger::FourFactor { vertex: v, visits })
    })
}
