//! The greedy bump engine, Gray-code verification, and the parent/children
//! structure behind its local recursion.
//!
//! Each step applies, to the most recent word, a minimal bump chosen by
//! largest anchor rank first and rightward before leftward, provided its
//! result has not been visited. The run halts when no such bump exists.

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::bumps::{
    classify_digits, pass_limit, run_span, shift_block, unshift_block, BumpMove, Direction,
};
use crate::error::{Error, Result};
use crate::oracle::{self, filter_swords, multinomial, DEFAULT_CAP};
use crate::patterns::{LanguageSpec, Membership};
use crate::word::{fill_rank_table, run_end_left, run_end_right, SWord, Shape, Value};

/// How the unvisited requirement interacts with minimality.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Newness {
    /// Take the minimal bump for a rank and direction; skip it if its result
    /// was already visited.
    #[default]
    FilterMinimal,
    /// Take the least distance whose result is both a member and unvisited.
    MinimalUnvisited,
}

/// The order in which (rank, direction) candidates are tried.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Priority {
    /// Decreasing anchor rank, right before left.
    #[default]
    AnchorRank,
    /// Decreasing rank of the moved block's rightmost digit, then right
    /// before left, then decreasing anchor rank. Coincides with
    /// `AnchorRank` when every run has width one.
    BlockEnd,
}

#[derive(Clone, Debug)]
pub struct GreedyConfig {
    /// Maximum number of visited words kept in memory.
    pub cap: usize,
    pub newness: Newness,
    pub priority: Priority,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig {
            cap: DEFAULT_CAP,
            newness: Newness::default(),
            priority: Priority::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HaltReason {
    /// Every word of the language was visited.
    Exhausted,
    /// No bump reached an unvisited member before the language ran out (or
    /// its size is unknown).
    NoNewBump,
}

/// A visit sequence with the bumps between consecutive words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayCodeRun {
    pub shape: Shape,
    /// `None` for runs driven by an opaque predicate.
    pub spec: Option<LanguageSpec>,
    pub words: Vec<SWord>,
    pub moves: Vec<BumpMove>,
    pub complete: bool,
    pub halted: HaltReason,
}

/// Runs the greedy engine on `spec` from `start` (default: the
/// nondecreasing word).
pub fn run_algorithm_b(spec: &LanguageSpec, start: Option<&SWord>) -> Result<GrayCodeRun> {
    run_algorithm_b_with(spec, start, &GreedyConfig::default())
}

pub fn run_algorithm_b_with(
    spec: &LanguageSpec,
    start: Option<&SWord>,
    config: &GreedyConfig,
) -> Result<GrayCodeRun> {
    if let Some(w) = start {
        if !spec.accepts(w) {
            return Err(Error::InvalidStart(w.to_string()));
        }
    }
    let (words, moves) = greedy(&spec.shape, spec, start, config)?;
    let size = oracle::formula_count(spec).unwrap_or_else(|_| oracle::count(spec));
    let complete = size == words.len().into();
    Ok(GrayCodeRun {
        shape: spec.shape.clone(),
        spec: Some(spec.clone()),
        words,
        moves,
        complete,
        halted: if complete {
            HaltReason::Exhausted
        } else {
            HaltReason::NoNewBump
        },
    })
}

/// The greedy engine over an arbitrary membership predicate. Completeness
/// is decided by filtering `S_s` when that fits under the cap, and is
/// reported false otherwise.
pub fn run_greedy(
    shape: &Shape,
    member: &impl Membership,
    start: Option<&SWord>,
    config: &GreedyConfig,
) -> Result<GrayCodeRun> {
    if let Some(w) = start {
        if w.shape() != *shape || !member.contains(w.digits()) {
            return Err(Error::InvalidStart(w.to_string()));
        }
    }
    let (words, moves) = greedy(shape, member, start, config)?;
    let complete = multinomial(shape) <= config.cap.into()
        && filter_swords(shape, member, config.cap)?.len() == words.len();
    Ok(GrayCodeRun {
        shape: shape.clone(),
        spec: None,
        words,
        moves,
        complete,
        halted: if complete {
            HaltReason::Exhausted
        } else {
            HaltReason::NoNewBump
        },
    })
}

// Fills `order` with the candidates of one step, as (rank, direction).
fn candidate_order(
    digits: &[Value],
    table: &[usize],
    priority: Priority,
    order: &mut Vec<(usize, Direction)>,
) {
    order.clear();
    let n = digits.len();
    for key in (1..=n).rev() {
        match priority {
            Priority::AnchorRank => {
                order.push((key, Direction::Right));
                order.push((key, Direction::Left));
            }
            Priority::BlockEnd => {
                let i = table[key - 1];
                if run_end_right(digits, i) == i {
                    // right-bumps of every block ending at i, shortest first
                    let start = run_end_left(digits, i);
                    for a in (start..=i).rev() {
                        order.push((key - (i - a), Direction::Right));
                    }
                }
                order.push((key, Direction::Left));
            }
        }
    }
}

fn greedy(
    shape: &Shape,
    member: &impl Membership,
    start: Option<&SWord>,
    config: &GreedyConfig,
) -> Result<(Vec<SWord>, Vec<BumpMove>)> {
    let first = match start {
        Some(w) => w.clone(),
        None => {
            let w = shape.nondecreasing_word();
            if !member.contains(w.digits()) {
                return Err(Error::InvalidStart(w.to_string()));
            }
            w
        }
    };
    let n = shape.n();
    let mut current: Vec<Value> = first.digits().to_vec();
    let mut candidate = current.clone();
    let mut visited: FxHashSet<Vec<Value>> = FxHashSet::default();
    visited.insert(current.clone());
    let mut words = vec![first];
    let mut moves = Vec::new();
    let mut table = vec![0; n];
    let mut counts = Vec::new();
    let mut order = Vec::with_capacity(2 * n);

    loop {
        fill_rank_table(&current, &mut counts, &mut table);
        candidate_order(&current, &table, config.priority, &mut order);
        let mut chosen = None;
        'candidates: for &(rank, dir) in &order {
            let anchor = table[rank - 1];
            let v = current[anchor];
            let (lo, hi) = run_span(&current, anchor, dir);
            let limit = pass_limit(&current, lo, hi, v, dir);
            for d in 1..=limit {
                shift_block(&mut candidate, lo, hi, dir, d);
                let ok = member.contains(&candidate);
                if ok && !visited.contains(&candidate) {
                    chosen = Some(BumpMove {
                        rank,
                        dir,
                        width: hi - lo + 1,
                        distance: d,
                        anchor: anchor + 1,
                    });
                    break 'candidates;
                }
                unshift_block(&mut candidate, lo, hi, dir, d);
                if ok && config.newness == Newness::FilterMinimal {
                    break;
                }
            }
        }
        let Some(mv) = chosen else { break };
        if visited.len() >= config.cap {
            return Err(Error::SizeLimit {
                count: (visited.len() + 1).into(),
                cap: config.cap,
            });
        }
        visited.insert(candidate.clone());
        current.copy_from_slice(&candidate);
        words.push(SWord::from_trusted(candidate.clone()));
        moves.push(mv);
    }
    Ok((words, moves))
}

/// Outcome of checking a sequence against the Gray-code requirements.
///
/// Positions are 0-based indices into the visit sequence; a move index `k`
/// refers to the step from word `k` to word `k + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrayCodeReport {
    pub all_member: bool,
    pub all_distinct: bool,
    /// `None` when the language is too large to enumerate.
    pub exhaustive: Option<bool>,
    pub moves_valid: bool,
    pub transpositions_only: bool,
    pub first_nonmember: Option<usize>,
    pub first_duplicate: Option<(usize, usize)>,
    pub first_missing: Option<SWord>,
    pub first_bad_move: Option<usize>,
    pub first_non_transposition: Option<usize>,
}

impl GrayCodeReport {
    /// Membership, distinctness, coverage and bump validity all hold.
    /// Transpositions are informational.
    pub fn passed(&self) -> bool {
        self.all_member && self.all_distinct && self.exhaustive != Some(false) && self.moves_valid
    }
}

/// Verifies a run against its own spec.
pub fn verify_gray_code(run: &GrayCodeRun) -> Result<GrayCodeReport> {
    let spec = run
        .spec
        .as_ref()
        .ok_or_else(|| Error::Domain("run has no language spec; use verify_sequence".into()))?;
    Ok(verify_sequence(
        &run.shape,
        spec,
        &run.words,
        Some(&run.moves),
        DEFAULT_CAP,
    ))
}

/// Checks a word sequence; `moves`, when given, must match the bump that
/// classification recovers for each step.
pub fn verify_sequence(
    shape: &Shape,
    member: &impl Membership,
    words: &[SWord],
    moves: Option<&[BumpMove]>,
    cap: usize,
) -> GrayCodeReport {
    let first_nonmember = words
        .iter()
        .position(|w| w.shape() != *shape || !member.contains(w.digits()));

    let mut seen = rustc_hash::FxHashMap::default();
    let mut first_duplicate = None;
    for (k, w) in words.iter().enumerate() {
        if let Some(&j) = seen.get(w) {
            first_duplicate = Some((j, k));
            break;
        }
        seen.insert(w, k);
    }

    let mut first_bad_move = None;
    let mut first_non_transposition = None;
    if moves.is_some_and(|m| m.len() + 1 != words.len().max(1)) {
        first_bad_move = Some(
            moves
                .map_or(0, |m| m.len())
                .min(words.len().saturating_sub(1)),
        );
    }
    for (k, pair) in words.windows(2).enumerate() {
        let (a, b) = (pair[0].digits(), pair[1].digits());
        let classified = if a.len() == b.len() {
            classify_digits(a, b)
        } else {
            None
        };
        let valid = match (classified, moves.and_then(|m| m.get(k))) {
            (Some(found), Some(recorded)) => found == *recorded,
            (Some(_), None) => moves.is_none(),
            (None, _) => false,
        };
        if !valid && first_bad_move.is_none() {
            first_bad_move = Some(k);
        }
        let changed = a.iter().zip(b).filter(|(x, y)| x != y).count();
        if (changed != 2 || a.len() != b.len()) && first_non_transposition.is_none() {
            first_non_transposition = Some(k);
        }
    }

    let (exhaustive, first_missing) = match filter_or_none(shape, member, cap) {
        Some(language) => {
            let missing = language.into_iter().find(|w| !seen.contains_key(w));
            (Some(missing.is_none()), missing)
        }
        None => (None, None),
    };

    GrayCodeReport {
        all_member: first_nonmember.is_none(),
        all_distinct: first_duplicate.is_none(),
        exhaustive,
        moves_valid: first_bad_move.is_none(),
        transpositions_only: first_non_transposition.is_none(),
        first_nonmember,
        first_duplicate,
        first_missing,
        first_bad_move,
        first_non_transposition,
    }
}

fn filter_or_none(shape: &Shape, member: &impl Membership, cap: usize) -> Option<Vec<SWord>> {
    filter_swords(shape, member, cap).ok()
}

/// `(s_1, ..., s_m - 1)`, dropping `m` when `s_m = 1`.
pub fn parent_shape(shape: &Shape) -> Option<Shape> {
    shape.parent()
}

/// Removes the rightmost copy of the largest value.
pub fn parent_word(w: &SWord) -> SWord {
    let m = w.max_value();
    let mut digits = w.digits().to_vec();
    if let Some(pos) = digits.iter().rposition(|&d| d == m) {
        digits.remove(pos);
    }
    SWord::from_trusted(digits)
}

/// `{ parent_word(w) : w in L }`, sorted and deduplicated.
pub fn parent_language(spec: &LanguageSpec, cap: usize) -> Result<Vec<SWord>> {
    let mut parents: Vec<SWord> = oracle::language(spec, cap)?
        .words
        .iter()
        .map(parent_word)
        .collect();
    parents.sort();
    parents.dedup();
    Ok(parents)
}

/// The members of `spec` whose parent is `parent`, in lexicographic order.
pub fn children(parent: &SWord, spec: &LanguageSpec) -> Result<Vec<SWord>> {
    let expected = parent_shape(&spec.shape).unwrap_or_else(Shape::empty);
    if parent.shape() != expected {
        return Err(Error::ShapeMismatch {
            left: parent.shape().to_string(),
            right: expected.to_string(),
        });
    }
    let m = spec.shape.max_value();
    let digits = parent.digits();
    let first_slot = digits.iter().rposition(|&d| d == m).map_or(0, |p| p + 1);
    let mut kids: Vec<SWord> = (first_slot..=digits.len())
        .map(|slot| {
            let mut child = digits.to_vec();
            child.insert(slot, m);
            child
        })
        .filter(|child| spec.contains(child))
        .map(SWord::from_trusted)
        .collect();
    if kids.is_empty() {
        return Err(Error::NotInParentLanguage(parent.to_string()));
    }
    kids.sort();
    Ok(kids)
}

/// Maps a run onto the parent language, collapsing consecutive repeats.
pub fn project_to_parent(run: &GrayCodeRun) -> Vec<SWord> {
    let mut out: Vec<SWord> = Vec::new();
    for w in &run.words {
        let p = parent_word(w);
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    out
}
