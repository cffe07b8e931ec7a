//! Shapes, s-words, digit ranks and maximal runs.
//!
//! All positions and ranks on the public surface are 1-based. Digits are
//! stored 0-based internally.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A value of an s-word, in `1..=m`.
pub type Value = u16;

/// The multiplicity vector `s = (s_1, ..., s_m)` of an s-word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Shape {
    mult: Vec<usize>,
    // prefix[v - 1] = s_1 + ... + s_{v-1}
    prefix: Vec<usize>,
    n: usize,
}

impl Shape {
    pub fn new(multiplicities: Vec<usize>) -> Result<Self> {
        if multiplicities.is_empty() {
            return Err(Error::InvalidShape("no values".into()));
        }
        if let Some(pos) = multiplicities.iter().position(|&s| s == 0) {
            return Err(Error::InvalidShape(format!(
                "multiplicity of value {} is zero",
                pos + 1
            )));
        }
        if multiplicities.len() > Value::MAX as usize {
            return Err(Error::InvalidShape(format!(
                "{} values exceed the supported maximum",
                multiplicities.len()
            )));
        }
        Ok(Self::from_valid(multiplicities))
    }

    /// The shape with no values; only arises as the parent of `(1)`.
    pub fn empty() -> Self {
        Self::from_valid(Vec::new())
    }

    fn from_valid(mult: Vec<usize>) -> Self {
        let mut prefix = Vec::with_capacity(mult.len());
        let mut acc = 0;
        for &s in &mult {
            prefix.push(acc);
            acc += s;
        }
        Shape {
            mult,
            prefix,
            n: acc,
        }
    }

    /// Number of distinct values.
    pub fn m(&self) -> usize {
        self.mult.len()
    }

    /// Word length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    /// `s_v` for a 1-based value `v`.
    pub fn multiplicity(&self, v: Value) -> usize {
        self.mult[v as usize - 1]
    }

    /// `t_v = s_1 + ... + s_{v-1}`, the number of digits smaller than `v`.
    pub fn prefix(&self, v: Value) -> usize {
        self.prefix[v as usize - 1]
    }

    pub fn prefixes(&self) -> &[usize] {
        &self.prefix
    }

    /// The largest value `m`.
    pub fn max_value(&self) -> Value {
        self.mult.len() as Value
    }

    /// `Some(k)` when every multiplicity equals `k`.
    pub fn regular_multiplicity(&self) -> Option<usize> {
        let first = *self.mult.first()?;
        self.mult.iter().all(|&s| s == first).then_some(first)
    }

    /// The word `1^{s_1} 2^{s_2} ... m^{s_m}`.
    pub fn nondecreasing_word(&self) -> SWord {
        let mut digits = Vec::with_capacity(self.n);
        for (v, &s) in self.mult.iter().enumerate() {
            digits.extend(std::iter::repeat_n(v as Value + 1, s));
        }
        SWord { digits }
    }

    /// Drops one copy of the largest value (and the value itself when it
    /// had a single copy). `None` for the empty shape.
    pub fn parent(&self) -> Option<Shape> {
        let mut mult = self.mult.clone();
        let last = mult.last_mut()?;
        if *last > 1 {
            *last -= 1;
        } else {
            mult.pop();
        }
        Some(Self::from_valid(mult))
    }
}

impl From<Shape> for Vec<usize> {
    fn from(s: Shape) -> Self {
        s.mult
    }
}

impl TryFrom<Vec<usize>> for Shape {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Shape::new(v)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, s) in self.mult.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Parses `2,1,3`, `(2,1,3)` and the repetition shorthand `2^3` (= `2,2,2`),
/// which may be mixed: `1,2^2,3`.
impl FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = |part: &str| Error::InvalidShape(format!("cannot parse {part:?} in {s:?}"));
        let mut mult = Vec::new();
        for part in body.split(',') {
            let part = part.trim();
            match part.split_once('^') {
                Some((value, times)) => {
                    let value: usize = value.trim().parse().map_err(|_| bad(part))?;
                    let times: usize = times.trim().parse().map_err(|_| bad(part))?;
                    mult.extend(std::iter::repeat_n(value, times));
                }
                None => mult.push(part.parse().map_err(|_| bad(part))?),
            }
        }
        Shape::new(mult)
    }
}

/// A maximal constant block found by [`SWord::right_run`] or
/// [`SWord::left_run`]; bounds are 1-based and inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunSpan {
    pub lo: usize,
    pub hi: usize,
    pub value: Value,
}

impl RunSpan {
    pub fn width(&self) -> usize {
        self.hi - self.lo + 1
    }
}

/// An s-word: a sequence with `s_v` copies of each value `v`.
///
/// The shape is implied by the digits, so a word is valid when every value
/// in `1..=max` occurs at least once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Value>", try_from = "Vec<Value>")]
pub struct SWord {
    digits: Vec<Value>,
}

impl SWord {
    /// Validates `digits` against `shape`.
    pub fn new(shape: &Shape, digits: Vec<Value>) -> Result<Self> {
        let counts = value_counts(&digits, shape.m())
            .map_err(|v| Error::InvalidWord(format!("value {v} exceeds m = {}", shape.m())))?;
        if counts != shape.multiplicities() {
            return Err(Error::InvalidWord(format!(
                "{} does not have shape {shape}",
                render(&digits)
            )));
        }
        Ok(SWord { digits })
    }

    /// Infers the shape from the digits.
    pub fn from_digits(digits: Vec<Value>) -> Result<Self> {
        let m = digits.iter().copied().max().unwrap_or(0) as usize;
        let counts = value_counts(&digits, m)
            .map_err(|_| Error::InvalidWord("value 0 is not allowed".into()))?;
        if let Some(v) = counts.iter().position(|&c| c == 0) {
            return Err(Error::InvalidWord(format!(
                "{} skips value {}",
                render(&digits),
                v + 1
            )));
        }
        Ok(SWord { digits })
    }

    pub(crate) fn from_trusted(digits: Vec<Value>) -> Self {
        SWord { digits }
    }

    pub fn shape(&self) -> Shape {
        let m = self.max_value() as usize;
        let mut mult = vec![0; m];
        for &d in &self.digits {
            mult[d as usize - 1] += 1;
        }
        Shape::from_valid(mult)
    }

    pub fn digits(&self) -> &[Value] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<Value> {
        self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn max_value(&self) -> Value {
        self.digits.iter().copied().max().unwrap_or(0)
    }

    /// The digit at 1-based index `i`.
    pub fn digit(&self, i: usize) -> Result<Value> {
        self.check_index(i)?;
        Ok(self.digits[i - 1])
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.digits.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.digits.len(),
            });
        }
        Ok(())
    }

    /// Rank of the digit at index `i`: by value, then left to right.
    pub fn rank_of(&self, i: usize) -> Result<usize> {
        self.check_index(i)?;
        let v = self.digits[i - 1];
        let smaller = self.digits.iter().filter(|&&d| d < v).count();
        let before = self.digits[..i].iter().filter(|&&d| d == v).count();
        Ok(smaller + before)
    }

    /// The index holding the digit of rank `r`.
    pub fn index_of_rank(&self, r: usize) -> Result<usize> {
        let n = self.digits.len();
        if r == 0 || r > n {
            return Err(Error::RankOutOfRange { rank: r, len: n });
        }
        Ok(rank_table(&self.digits)[r - 1] + 1)
    }

    /// The run `w_i ... w_j` extending right from `i` as far as the value
    /// repeats.
    pub fn right_run(&self, i: usize) -> Result<RunSpan> {
        self.check_index(i)?;
        let hi = run_end_right(&self.digits, i - 1);
        Ok(RunSpan {
            lo: i,
            hi: hi + 1,
            value: self.digits[i - 1],
        })
    }

    /// The run `w_h ... w_i` extending left from `i` as far as the value
    /// repeats.
    pub fn left_run(&self, i: usize) -> Result<RunSpan> {
        self.check_index(i)?;
        let lo = run_end_left(&self.digits, i - 1);
        Ok(RunSpan {
            lo: lo + 1,
            hi: i,
            value: self.digits[i - 1],
        })
    }
}

impl From<SWord> for Vec<Value> {
    fn from(w: SWord) -> Self {
        w.digits
    }
}

impl TryFrom<Vec<Value>> for SWord {
    type Error = Error;
    fn try_from(v: Vec<Value>) -> Result<Self> {
        SWord::from_digits(v)
    }
}

impl fmt::Display for SWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.digits))
    }
}

/// Accepts the compact form `112333` and the comma form `1,1,2,3,3,3`.
impl FromStr for SWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SWord::from_digits(parse_values(s).map_err(Error::InvalidWord)?)
    }
}

/// Renders digits compactly when every value is a single decimal digit and
/// as a comma list otherwise.
pub fn render(digits: &[Value]) -> String {
    if digits.iter().all(|&d| d <= 9) {
        digits.iter().map(|d| char::from(b'0' + *d as u8)).collect()
    } else {
        let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
        parts.join(",")
    }
}

/// Shared by words and patterns: a digit string or a comma list.
pub(crate) fn parse_values(s: &str) -> std::result::Result<Vec<Value>, String> {
    let s = s.trim();
    if s.contains(',') {
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<Value>()
                    .map_err(|_| format!("cannot parse {p:?} in {s:?}"))
            })
            .collect()
    } else {
        s.chars()
            .map(|c| match c.to_digit(10) {
                Some(d) => Ok(d as Value),
                None => Err(format!("unexpected character {c:?} in {s:?}")),
            })
            .collect()
    }
}

fn value_counts(digits: &[Value], m: usize) -> std::result::Result<Vec<usize>, Value> {
    let mut counts = vec![0; m];
    for &d in digits {
        if d == 0 || d as usize > m {
            return Err(d);
        }
        counts[d as usize - 1] += 1;
    }
    Ok(counts)
}

/// 0-based index of the digit of each rank: `table[r - 1]`.
pub(crate) fn rank_table(digits: &[Value]) -> Vec<usize> {
    let mut table = vec![0; digits.len()];
    fill_rank_table(digits, &mut Vec::new(), &mut table);
    table
}

/// Allocation-free variant of [`rank_table`] for hot loops; `next` is
/// scratch space.
pub(crate) fn fill_rank_table(digits: &[Value], next: &mut Vec<usize>, table: &mut [usize]) {
    let m = digits.iter().copied().max().unwrap_or(0) as usize;
    next.clear();
    next.resize(m + 1, 0);
    for &d in digits {
        next[d as usize] += 1;
    }
    let mut acc = 0;
    for slot in next.iter_mut() {
        let c = *slot;
        *slot = acc;
        acc += c;
    }
    // next[v] is now the 0-based rank of the first copy of v
    for (i, &d) in digits.iter().enumerate() {
        let r = &mut next[d as usize];
        table[*r] = i;
        *r += 1;
    }
}

pub(crate) fn run_end_right(digits: &[Value], i: usize) -> usize {
    let v = digits[i];
    let mut j = i;
    while j + 1 < digits.len() && digits[j + 1] == v {
        j += 1;
    }
    j
}

pub(crate) fn run_end_left(digits: &[Value], i: usize) -> usize {
    let v = digits[i];
    let mut h = i;
    while h > 0 && digits[h - 1] == v {
        h -= 1;
    }
    h
}
