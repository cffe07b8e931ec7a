//! Bumps: a run of one value moving past a block of smaller digits.
//!
//! A right-bump moves the right-run starting at its anchor; a left-bump
//! moves the left-run ending at its anchor. The anchor's rank names the
//! bump, so two bumps of the same maximal run in opposite directions carry
//! different ranks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Blocker, Error, Result};
use crate::patterns::Membership;
use crate::word::{rank_table, run_end_left, run_end_right, SWord, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "L",
            Direction::Right => "R",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" | "left" => Ok(Direction::Left),
            "R" | "r" | "right" => Ok(Direction::Right),
            _ => Err(Error::Domain(format!("unknown direction {s:?}"))),
        }
    }
}

/// One bump, recorded against its source word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BumpMove {
    pub rank: usize,
    pub dir: Direction,
    /// Number of moved (larger) digits.
    pub width: usize,
    /// Number of passed (smaller) digits.
    pub distance: usize,
    /// 1-based index of the rank-`rank` digit in the source word.
    pub anchor: usize,
}

impl fmt::Display for BumpMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} r={} w={} d={}",
            self.dir, self.rank, self.width, self.distance
        )
    }
}

// 0-based inclusive bounds of the run moved by bumping `anchor` in `dir`.
pub(crate) fn run_span(digits: &[Value], anchor: usize, dir: Direction) -> (usize, usize) {
    match dir {
        Direction::Right => (anchor, run_end_right(digits, anchor)),
        Direction::Left => (run_end_left(digits, anchor), anchor),
    }
}

// How many consecutive smaller digits lie beyond the block `lo..=hi`.
pub(crate) fn pass_limit(
    digits: &[Value],
    lo: usize,
    hi: usize,
    v: Value,
    dir: Direction,
) -> usize {
    match dir {
        Direction::Right => digits[hi + 1..].iter().take_while(|&&d| d < v).count(),
        Direction::Left => digits[..lo].iter().rev().take_while(|&&d| d < v).count(),
    }
}

// Exchanges the block `lo..=hi` with the `d` digits beyond it, in place.
pub(crate) fn shift_block(digits: &mut [Value], lo: usize, hi: usize, dir: Direction, d: usize) {
    let width = hi - lo + 1;
    match dir {
        Direction::Right => digits[lo..=hi + d].rotate_left(width),
        Direction::Left => digits[lo - d..=hi].rotate_right(width),
    }
}

// Undo for `shift_block`.
pub(crate) fn unshift_block(digits: &mut [Value], lo: usize, hi: usize, dir: Direction, d: usize) {
    let width = hi - lo + 1;
    match dir {
        Direction::Right => digits[lo..=hi + d].rotate_right(width),
        Direction::Left => digits[lo - d..=hi].rotate_left(width),
    }
}

fn anchor_of(w: &SWord, rank: usize) -> Result<usize> {
    Ok(w.index_of_rank(rank)? - 1)
}

fn check_distance(distance: usize) -> Result<()> {
    if distance == 0 {
        return Err(Error::Domain("bump distance must be positive".into()));
    }
    Ok(())
}

// Validates that `d` digits beyond `lo..=hi` exist and are all below `v`.
fn check_passage(
    digits: &[Value],
    lo: usize,
    hi: usize,
    v: Value,
    dir: Direction,
    d: usize,
) -> Result<()> {
    for k in 1..=d {
        // 0-based position of the k-th passed digit, as a signed offset
        let pos = match dir {
            Direction::Right => hi as isize + k as isize,
            Direction::Left => lo as isize - k as isize,
        };
        if pos < 0 || pos as usize >= digits.len() {
            return Err(Error::BumpNotApplicable {
                position: (pos + 1) as usize,
                blocker: Blocker::Boundary,
            });
        }
        if digits[pos as usize] >= v {
            return Err(Error::BumpNotApplicable {
                position: pos as usize + 1,
                blocker: Blocker::NotSmaller,
            });
        }
    }
    Ok(())
}

/// Bumps the run anchored at the rank-`rank` digit `distance` places in
/// `dir`.
pub fn apply_bump(
    w: &SWord,
    rank: usize,
    dir: Direction,
    distance: usize,
) -> Result<(SWord, BumpMove)> {
    check_distance(distance)?;
    let anchor = anchor_of(w, rank)?;
    let digits = w.digits();
    let (lo, hi) = run_span(digits, anchor, dir);
    check_passage(digits, lo, hi, digits[anchor], dir, distance)?;
    let mut out = digits.to_vec();
    shift_block(&mut out, lo, hi, dir, distance);
    let mv = BumpMove {
        rank,
        dir,
        width: hi - lo + 1,
        distance,
        anchor: anchor + 1,
    };
    Ok((SWord::from_trusted(out), mv))
}

/// The largest feasible distance for the bump of `rank` in `dir`; 0 when
/// the run sits at the boundary or next to a digit that is not smaller.
pub fn max_pass(w: &SWord, rank: usize, dir: Direction) -> Result<usize> {
    let anchor = anchor_of(w, rank)?;
    let digits = w.digits();
    let (lo, hi) = run_span(digits, anchor, dir);
    Ok(pass_limit(digits, lo, hi, digits[anchor], dir))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalBump {
    pub distance: usize,
    pub word: SWord,
    pub mv: BumpMove,
}

/// The bump of least positive distance for `rank` and `dir` whose result
/// stays in the language.
pub fn minimal_bump(
    w: &SWord,
    rank: usize,
    dir: Direction,
    member: &impl Membership,
) -> Result<Option<MinimalBump>> {
    let anchor = anchor_of(w, rank)?;
    let mut scratch = w.digits().to_vec();
    let (lo, hi) = run_span(&scratch, anchor, dir);
    let limit = pass_limit(&scratch, lo, hi, scratch[anchor], dir);
    for d in 1..=limit {
        shift_block(&mut scratch, lo, hi, dir, d);
        if member.contains(&scratch) {
            let mv = BumpMove {
                rank,
                dir,
                width: hi - lo + 1,
                distance: d,
                anchor: anchor + 1,
            };
            return Ok(Some(MinimalBump {
                distance: d,
                word: SWord::from_trusted(scratch),
                mv,
            }));
        }
        unshift_block(&mut scratch, lo, hi, dir, d);
    }
    Ok(None)
}

fn check_index(w: &SWord, i: usize) -> Result<usize> {
    if i == 0 || i > w.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: w.len(),
        });
    }
    Ok(i - 1)
}

/// How far the single digit at `i` can jump in `dir` past smaller digits.
pub fn jump_limit(w: &SWord, i: usize, dir: Direction) -> Result<usize> {
    let i = check_index(w, i)?;
    Ok(pass_limit(w.digits(), i, i, w.digits()[i], dir))
}

/// Moves the single digit at `i` past `distance` smaller digits; a
/// width-1 bump that ignores equal neighbours.
pub fn apply_jump(w: &SWord, i: usize, dir: Direction, distance: usize) -> Result<SWord> {
    check_distance(distance)?;
    let i = check_index(w, i)?;
    let digits = w.digits();
    check_passage(digits, i, i, digits[i], dir, distance)?;
    let mut out = digits.to_vec();
    shift_block(&mut out, i, i, dir, distance);
    Ok(SWord::from_trusted(out))
}

/// The jump of the digit at `i` over every smaller digit reachable in
/// `dir`; `None` when it cannot move.
pub fn maximum_jump(w: &SWord, i: usize, dir: Direction) -> Result<Option<SWord>> {
    match jump_limit(w, i, dir)? {
        0 => Ok(None),
        d => apply_jump(w, i, dir, d).map(Some),
    }
}

/// Recovers the single bump turning `w` into `w2`, if there is one.
///
/// The differing window is exactly the bumped span: its first position
/// holds the larger value in the source for a right-bump and in the target
/// for a left-bump.
pub fn classify_move(w: &SWord, w2: &SWord) -> Result<Option<BumpMove>> {
    if w.shape() != w2.shape() {
        return Err(Error::ShapeMismatch {
            left: w.to_string(),
            right: w2.to_string(),
        });
    }
    Ok(classify_digits(w.digits(), w2.digits()))
}

pub(crate) fn classify_digits(src: &[Value], dst: &[Value]) -> Option<BumpMove> {
    let a = src.iter().zip(dst).position(|(x, y)| x != y)?;
    let b = src.len()
        - 1
        - src
            .iter()
            .rev()
            .zip(dst.iter().rev())
            .position(|(x, y)| x != y)?;
    let (from, to) = (&src[a..=b], &dst[a..=b]);
    let len = from.len();
    let (dir, v, anchor) = if from[0] > to[0] {
        (Direction::Right, from[0], a)
    } else {
        (Direction::Left, from[len - 1], b)
    };
    let (run, passed) = match dir {
        Direction::Right => {
            let x = from.iter().take_while(|&&d| d == v).count();
            (x, &from[x..])
        }
        Direction::Left => {
            let x = from.iter().rev().take_while(|&&d| d == v).count();
            (x, &from[..len - x])
        }
    };
    if passed.is_empty() || passed.iter().any(|&d| d >= v) {
        return None;
    }
    let expected_run = |block: &[Value]| block.iter().all(|&d| d == v);
    let ok = match dir {
        Direction::Right => &to[..passed.len()] == passed && expected_run(&to[passed.len()..]),
        Direction::Left => expected_run(&to[..run]) && &to[run..] == passed,
    };
    if !ok {
        return None;
    }
    let rank = rank_table(src).iter().position(|&i| i == anchor)? + 1;
    Some(BumpMove {
        rank,
        dir,
        width: run,
        distance: passed.len(),
        anchor: anchor + 1,
    })
}
