//! Containment and avoidance of word patterns with repeated letters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{parse_values, render, SWord, Shape, Value};

/// A normalized pattern: its distinct letters are exactly `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Value>", try_from = "Vec<Value>")]
pub struct Pattern {
    letters: Vec<Value>,
    k: Value,
}

impl Pattern {
    pub fn new(letters: Vec<Value>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidPattern("empty pattern".into()));
        }
        let k = letters.iter().copied().max().unwrap_or(0);
        let mut seen = vec![false; k as usize + 1];
        for &p in &letters {
            seen[p as usize] = true;
        }
        if seen[0] || seen[1..].iter().any(|&s| !s) {
            return Err(Error::InvalidPattern(format!(
                "{} is not normalized to the letters 1..={k}",
                render(&letters)
            )));
        }
        Ok(Pattern { letters, k })
    }

    pub fn letters(&self) -> &[Value] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of distinct letters.
    pub fn distinct(&self) -> Value {
        self.k
    }

    pub fn occurs_in(&self, digits: &[Value]) -> bool {
        contains_digits(digits, self)
    }
}

impl From<Pattern> for Vec<Value> {
    fn from(p: Pattern) -> Self {
        p.letters
    }
}

impl TryFrom<Vec<Value>> for Pattern {
    type Error = Error;
    fn try_from(v: Vec<Value>) -> Result<Self> {
        Pattern::new(v)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.letters))
    }
}

impl FromStr for Pattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Pattern::new(parse_values(s).map_err(Error::InvalidPattern)?)
    }
}

/// Parses a list of patterns such as `132,121`.
///
/// Patterns are separated by commas, or by semicolons when any pattern needs
/// the comma form itself (`1,10,2;2,1,2`). An empty string or `none` is the
/// empty set.
pub fn parse_pattern_list(s: &str) -> Result<Vec<Pattern>> {
    let s = s.trim();
    if s.is_empty() || s.eq_ignore_ascii_case("none") {
        return Ok(Vec::new());
    }
    let sep = if s.contains(';') { ';' } else { ',' };
    s.split(sep).map(str::parse).collect()
}

/// True iff some subsequence of `w` is order- and equality-isomorphic to
/// `p`.
pub fn contains_pattern(w: &SWord, p: &Pattern) -> bool {
    contains_digits(w.digits(), p)
}

pub fn avoids_all(w: &SWord, patterns: &[Pattern]) -> bool {
    avoids_all_digits(w.digits(), patterns)
}

pub(crate) fn avoids_all_digits(digits: &[Value], patterns: &[Pattern]) -> bool {
    patterns.iter().all(|p| !contains_digits(digits, p))
}

// Letters are bound to values left to right; at most 16 distinct letters use
// the stack buffer.
fn contains_digits(digits: &[Value], p: &Pattern) -> bool {
    if p.len() > digits.len() {
        return false;
    }
    let k = p.k as usize;
    if k <= 16 {
        let mut bound = [0 as Value; 17];
        search(digits, &p.letters, 0, 0, &mut bound[..=k])
    } else {
        let mut bound = vec![0; k + 1];
        search(digits, &p.letters, 0, 0, &mut bound)
    }
}

// `bound[letter]` is the value assigned to `letter`, 0 while unassigned.
fn search(
    digits: &[Value],
    letters: &[Value],
    pos: usize,
    start: usize,
    bound: &mut [Value],
) -> bool {
    if pos == letters.len() {
        return true;
    }
    let last_start = digits.len() - (letters.len() - pos);
    let letter = letters[pos] as usize;
    let fixed = bound[letter];
    if fixed != 0 {
        return (start..=last_start)
            .any(|i| digits[i] == fixed && search(digits, letters, pos + 1, i + 1, bound));
    }
    // Tightest already-bound neighbours of `letter` constrain the new value.
    let mut lower: Value = 0;
    let mut upper = Value::MAX;
    for (q, &b) in bound.iter().enumerate().skip(1) {
        if b == 0 {
            continue;
        }
        if q < letter {
            lower = lower.max(b);
        } else {
            upper = upper.min(b);
        }
    }
    for i in start..=last_start {
        let x = digits[i];
        if x > lower && x < upper {
            bound[letter] = x;
            let found = search(digits, letters, pos + 1, i + 1, bound);
            bound[letter] = 0;
            if found {
                return true;
            }
        }
    }
    false
}

/// A shape together with the patterns its words avoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LanguageSpec {
    pub shape: Shape,
    patterns: Vec<Pattern>,
}

impl LanguageSpec {
    /// Patterns are sorted and deduplicated.
    pub fn new(shape: Shape, mut patterns: Vec<Pattern>) -> Self {
        patterns.sort();
        patterns.dedup();
        LanguageSpec { shape, patterns }
    }

    /// The full set of s-words.
    pub fn unrestricted(shape: Shape) -> Self {
        LanguageSpec {
            shape,
            patterns: Vec::new(),
        }
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// True when the pattern set is exactly `{212}`.
    pub fn is_stirling(&self) -> bool {
        self.patterns.len() == 1 && self.patterns[0].letters() == [2, 1, 2]
    }

    /// Membership including the shape check.
    pub fn accepts(&self, w: &SWord) -> bool {
        w.shape() == self.shape && avoids_all(w, &self.patterns)
    }
}

/// A membership test over digit sequences of a fixed shape.
///
/// Callers guarantee the shape; implementations only decide the language
/// condition.
pub trait Membership {
    fn contains(&self, digits: &[Value]) -> bool;
}

impl Membership for LanguageSpec {
    fn contains(&self, digits: &[Value]) -> bool {
        avoids_all_digits(digits, &self.patterns)
    }
}

impl<F: Fn(&[Value]) -> bool> Membership for F {
    fn contains(&self, digits: &[Value]) -> bool {
        self(digits)
    }
}

/// The membership predicate of `spec` as a closure over words.
pub fn membership(spec: &LanguageSpec) -> impl Fn(&SWord) -> bool + '_ {
    move |w| spec.accepts(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> SWord {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    // Independent oracle: every index subset of the pattern's length.
    fn brute_contains(digits: &[Value], letters: &[Value]) -> bool {
        let n = digits.len();
        let l = letters.len();
        if l > n {
            return false;
        }
        let mut idx: Vec<usize> = (0..l).collect();
        loop {
            let ok = (0..l).all(|a| {
                (0..l).all(|b| {
                    let (x, y) = (digits[idx[a]], digits[idx[b]]);
                    (x < y) == (letters[a] < letters[b]) && (x == y) == (letters[a] == letters[b])
                })
            });
            if ok {
                return true;
            }
            // next combination
            let mut k = l;
            loop {
                if k == 0 {
                    return false;
                }
                k -= 1;
                if idx[k] < n - l + k {
                    break;
                }
            }
            idx[k] += 1;
            for j in k + 1..l {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    #[test]
    fn stirling_examples() {
        let stirling = p("212");
        assert!(!contains_pattern(&w("123332"), &stirling));
        assert!(contains_pattern(&w("212"), &stirling));
        assert!(contains_pattern(&w("113323"), &stirling));
    }

    #[test]
    fn repeated_letter_patterns() {
        assert!(!contains_pattern(&w("221211"), &p("12121")));
        assert!(brute_contains(&[1, 2, 1, 2, 1], &[1, 2, 1, 2, 1]));
        assert!(!brute_contains(&[2, 2, 1, 2, 1, 1], &[1, 2, 1, 2, 1]));
        assert!(avoids_all(&w("1122"), &[p("132"), p("121")]));
        assert!(!avoids_all(&w("1212"), &[p("121")]));
        assert!(avoids_all(&w("2121"), &[]));
    }

    #[test]
    fn pattern_normalization_is_enforced() {
        assert!(matches!(
            "13".parse::<Pattern>(),
            Err(Error::InvalidPattern(_))
        ));
        assert!("0".parse::<Pattern>().is_err());
        assert!(Pattern::new(vec![]).is_err());
        assert_eq!("2,1,2".parse::<Pattern>().unwrap(), p("212"));
    }

    #[test]
    fn pattern_lists() {
        let list = parse_pattern_list("132,121").unwrap();
        assert_eq!(list, vec![p("132"), p("121")]);
        assert!(parse_pattern_list("").unwrap().is_empty());
        assert!(parse_pattern_list("none").unwrap().is_empty());
        let wide = parse_pattern_list("1,10,2,3,4,5,6,7,8,9;212").unwrap();
        assert_eq!(wide[0].distinct(), 10);
        assert_eq!(wide[1], p("212"));
        assert!(parse_pattern_list("132,13").is_err());
    }

    #[test]
    fn membership_examples() {
        let s213 = Shape::new(vec![2, 1, 3]).unwrap();
        let spec = LanguageSpec::new(s213, vec![p("212")]);
        let member = membership(&spec);
        assert!(member(&w("112333")));
        assert!(!member(&w("113323")));
        assert!(!member(&w("1122")));
        let full = LanguageSpec::unrestricted(Shape::new(vec![2, 2]).unwrap());
        assert!(membership(&full)(&w("2211")));
    }

    #[test]
    fn longer_pattern_never_contained() {
        assert!(!contains_pattern(&w("2121"), &p("12121")));
    }

    fn word_strategy() -> impl Strategy<Value = Vec<Value>> {
        prop::collection::vec(1..=4 as Value, 0..=8)
    }

    fn pattern_strategy() -> impl Strategy<Value = Pattern> {
        prop::collection::vec(1..=3 as Value, 1..=5).prop_filter_map("normalize", |v| {
            let mut distinct = v.clone();
            distinct.sort();
            distinct.dedup();
            let letters = v
                .iter()
                .map(|x| distinct.binary_search(x).unwrap() as Value + 1)
                .collect();
            Pattern::new(letters).ok()
        })
    }

    proptest! {
        #[test]
        fn containment_matches_brute_force(digits in word_strategy(), pat in pattern_strategy()) {
            prop_assert_eq!(contains_digits(&digits, &pat), brute_contains(&digits, pat.letters()));
        }

        #[test]
        fn avoidance_is_monotone(digits in word_strategy(),
                                 a in prop::collection::vec(pattern_strategy(), 0..3),
                                 b in prop::collection::vec(pattern_strategy(), 0..3)) {
            let both: Vec<Pattern> = a.iter().chain(b.iter()).cloned().collect();
            prop_assert_eq!(
                avoids_all_digits(&digits, &both),
                avoids_all_digits(&digits, &a) && avoids_all_digits(&digits, &b)
            );
        }
    }
}
