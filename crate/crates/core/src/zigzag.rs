//! Zig-zag languages: closure under maximum jumps, decided syntactically
//! from the patterns or semantically by exhaustive check.

use serde::{Deserialize, Serialize};

use crate::bumps::{pass_limit, shift_block, Direction};
use crate::error::Result;
use crate::oracle::{self, filter_swords, Language};
use crate::patterns::{LanguageSpec, Membership, Pattern};
use crate::word::{SWord, Shape};

/// True iff every pattern's largest letter is internal (never first or
/// last) and isolated (no two copies adjacent).
pub fn syntactic_zigzag(patterns: &[Pattern]) -> bool {
    patterns.iter().all(|p| {
        let letters = p.letters();
        let top = p.distinct();
        let len = letters.len();
        letters[0] != top
            && letters[len - 1] != top
            && letters.windows(2).all(|pair| pair != [top, top])
    })
}

/// A maximum jump whose result leaves the language.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpViolation {
    pub word: SWord,
    /// 1-based index of the jumping digit.
    pub index: usize,
    pub dir: Direction,
    pub result: SWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigzagVerdict {
    pub closed: bool,
    pub counterexample: Option<JumpViolation>,
}

/// Every maximum jump out of `w` that leaves the language.
pub fn jump_violations(w: &SWord, member: &impl Membership) -> Vec<JumpViolation> {
    let digits = w.digits();
    let mut out = Vec::new();
    let mut scratch = digits.to_vec();
    for i in 0..digits.len() {
        for dir in [Direction::Left, Direction::Right] {
            let d = pass_limit(digits, i, i, digits[i], dir);
            if d == 0 {
                continue;
            }
            scratch.copy_from_slice(digits);
            shift_block(&mut scratch, i, i, dir, d);
            if !member.contains(&scratch) {
                out.push(JumpViolation {
                    word: w.clone(),
                    index: i + 1,
                    dir,
                    result: SWord::from_digits(scratch.clone()).expect("jumps preserve the shape"),
                });
            }
        }
    }
    out
}

/// Closure of the language under maximum jumps, over every member of the
/// language.
pub fn semantic_zigzag(spec: &LanguageSpec, cap: usize) -> Result<ZigzagVerdict> {
    let language = oracle::language(spec, cap)?;
    Ok(closure_verdict(&language.words, spec))
}

/// As [`semantic_zigzag`] for an arbitrary predicate over `shape`.
pub fn semantic_zigzag_with(
    shape: &Shape,
    member: &impl Membership,
    cap: usize,
) -> Result<ZigzagVerdict> {
    let words = filter_swords(shape, member, cap)?;
    Ok(closure_verdict(&words, member))
}

fn closure_verdict(words: &[SWord], member: &impl Membership) -> ZigzagVerdict {
    let counterexample = words
        .iter()
        .find_map(|w| jump_violations(w, member).into_iter().next());
    ZigzagVerdict {
        closed: counterexample.is_none(),
        counterexample,
    }
}

/// The peakless s-words `Av_s(132, 231, 121)`.
pub fn peakless_language(shape: &Shape, cap: usize) -> Result<Language> {
    let patterns = ["132", "231", "121"]
        .iter()
        .map(|p| p.parse().expect("static pattern"))
        .collect();
    oracle::language(&LanguageSpec::new(shape.clone(), patterns), cap)
}
