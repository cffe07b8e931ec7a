//! Bijections from words to trees and inversion vectors.
//!
//! Stirling words decompose at their minimum value into s-increasing trees;
//! words of `Av_{(k-1)^m}(132, 121)` decompose at their maximum value into
//! k-ary trees. Inversion vectors of Stirling words fill the box
//! `[0..t_1] x ... x [0..t_m]`, and the Stirling changes order walks that
//! box one unit step at a time.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::stirling_count;
use crate::patterns::{avoids_all_digits, Pattern};
use crate::stirling::generate_loopless;
use crate::word::{SWord, Shape, Value};

const EMPTY_SLOT: char = 'ε';

fn stirling_pattern() -> Pattern {
    Pattern::new(vec![2, 1, 2]).expect("212 is normalized")
}

fn require_stirling(w: &SWord) -> Result<()> {
    if !avoids_all_digits(w.digits(), &[stirling_pattern()]) {
        return Err(Error::Domain(format!("{w} contains 212")));
    }
    Ok(())
}

/// An s-increasing tree: node `v` has `s_v + 1` ordered slots and labels
/// increase away from the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct STree {
    pub label: Value,
    pub slots: Vec<Option<Box<STree>>>,
}

impl STree {
    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().map(STree::size).sum::<usize>()
    }

    pub fn children(&self) -> impl Iterator<Item = &STree> {
        self.slots.iter().flatten().map(|b| &**b)
    }
}

/// Splits `w` at its smallest value; every other value falls wholly into
/// one segment because `w` avoids 212.
pub fn stirling_word_to_tree(w: &SWord) -> Result<STree> {
    require_stirling(w)?;
    if w.is_empty() {
        return Err(Error::Domain("the empty word has no tree".into()));
    }
    Ok(split_at_min(w.digits()))
}

fn split_at_min(seg: &[Value]) -> STree {
    let v = *seg.iter().min().expect("segments are non-empty");
    let mut slots = Vec::new();
    let mut start = 0;
    for (k, &d) in seg.iter().enumerate() {
        if d == v {
            slots.push(subtree(&seg[start..k]));
            start = k + 1;
        }
    }
    slots.push(subtree(&seg[start..]));
    STree { label: v, slots }
}

fn subtree(seg: &[Value]) -> Option<Box<STree>> {
    (!seg.is_empty()).then(|| Box::new(split_at_min(seg)))
}

/// Reads a tree back by interleaving slot words with the node label.
pub fn tree_to_stirling_word(t: &STree) -> Result<SWord> {
    let mut labels = Vec::new();
    check_stree(t, 0, &mut labels)?;
    labels.sort_unstable();
    if labels.iter().enumerate().any(|(k, &l)| l as usize != k + 1) {
        return Err(Error::Domain(format!(
            "tree labels {labels:?} are not exactly 1..={}",
            labels.len()
        )));
    }
    let mut digits = Vec::new();
    write_stree(t, &mut digits);
    Ok(SWord::from_trusted(digits))
}

fn check_stree(t: &STree, parent: Value, labels: &mut Vec<Value>) -> Result<()> {
    if t.label <= parent {
        return Err(Error::Domain(format!(
            "label {} below its parent {parent}",
            t.label
        )));
    }
    if t.slots.len() < 2 {
        return Err(Error::Domain(format!(
            "node {} needs at least two slots",
            t.label
        )));
    }
    labels.push(t.label);
    t.children()
        .try_for_each(|c| check_stree(c, t.label, labels))
}

fn write_stree(t: &STree, out: &mut Vec<Value>) {
    for (k, slot) in t.slots.iter().enumerate() {
        if k > 0 {
            out.push(t.label);
        }
        if let Some(child) = slot {
            write_stree(child, out);
        }
    }
}

/// Nested parentheses without whitespace: `1(ε,2(ε,ε,ε))`.
impl fmt::Display for STree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.label)?;
        for (k, slot) in self.slots.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            match slot {
                Some(child) => write!(f, "{child}")?,
                None => write!(f, "{EMPTY_SLOT}")?,
            }
        }
        f.write_str(")")
    }
}

// A labelled ordered tree as written in the bracket notation.
struct Bracketed {
    label: String,
    slots: Vec<Option<Bracketed>>,
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    source: &'a str,
}

impl<'a> Parser<'a> {
    fn new(source: &'a str) -> Self {
        Parser {
            chars: source.chars().peekable(),
            source,
        }
    }

    fn fail(&self, what: &str) -> Error {
        Error::Domain(format!("cannot parse tree {:?}: {what}", self.source))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.chars.next() {
            Some(x) if x == c => Ok(()),
            _ => Err(self.fail(&format!("expected {c:?}"))),
        }
    }

    fn node(&mut self) -> Result<Bracketed> {
        let mut label = String::new();
        while let Some(&c) = self.chars.peek() {
            if c == '(' {
                break;
            }
            label.push(c);
            self.chars.next();
        }
        if label.is_empty() {
            return Err(self.fail("missing node label"));
        }
        self.expect('(')?;
        let mut slots = Vec::new();
        loop {
            if self.chars.peek() == Some(&EMPTY_SLOT) {
                self.chars.next();
                slots.push(None);
            } else {
                slots.push(Some(self.node()?));
            }
            match self.chars.next() {
                Some(',') => continue,
                Some(')') => break,
                _ => return Err(self.fail("expected ',' or ')'")),
            }
        }
        Ok(Bracketed { label, slots })
    }

    fn finish(mut self) -> Result<Bracketed> {
        let tree = self.node()?;
        if self.chars.next().is_some() {
            return Err(self.fail("trailing input"));
        }
        Ok(tree)
    }
}

fn parse_bracketed(s: &str) -> Result<Bracketed> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    Parser::new(&compact).finish()
}

impl FromStr for STree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        fn convert(b: Bracketed) -> Result<STree> {
            let label = b
                .label
                .parse()
                .map_err(|_| Error::Domain(format!("bad label {:?}", b.label)))?;
            let slots = b
                .slots
                .into_iter()
                .map(|slot| slot.map(|c| convert(c).map(Box::new)).transpose())
                .collect::<Result<_>>()?;
            Ok(STree { label, slots })
        }
        convert(parse_bracketed(s)?)
    }
}

/// Per-value counts of smaller digits right of the value's last copy.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InvVector(pub Vec<usize>);

impl fmt::Display for InvVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn inversion_vector(w: &SWord) -> Result<InvVector> {
    require_stirling(w)?;
    let digits = w.digits();
    let m = w.max_value() as usize;
    let mut inv = vec![0; m];
    let mut seen_last = vec![false; m + 1];
    let mut smaller_to_right = vec![0usize; m + 1];
    // scan right to left; the first copy of v met is its last copy
    for &d in digits.iter().rev() {
        let v = d as usize;
        if !seen_last[v] {
            seen_last[v] = true;
            inv[v - 1] = (1..v).map(|u| smaller_to_right[u]).sum();
        }
        smaller_to_right[v] += 1;
    }
    Ok(InvVector(inv))
}

/// Rebuilds the Stirling word: starting from `1^{s_1}`, each block
/// `v^{s_v}` goes where exactly `inv_v` of the smaller digits lie to its
/// right.
pub fn word_from_inversion_vector(shape: &Shape, iv: &InvVector) -> Result<SWord> {
    let coords = &iv.0;
    if coords.len() != shape.m() {
        return Err(Error::Domain(format!(
            "vector {iv} has {} coordinates for {} values",
            coords.len(),
            shape.m()
        )));
    }
    let mut digits: Vec<Value> = Vec::with_capacity(shape.n());
    for (k, &c) in coords.iter().enumerate() {
        let v = k as Value + 1;
        let t = shape.prefix(v);
        if c > t {
            return Err(Error::Domain(format!(
                "coordinate {c} of value {v} exceeds {t}"
            )));
        }
        let at = t - c;
        digits.splice(at..at, std::iter::repeat_n(v, shape.multiplicity(v)));
    }
    Ok(SWord::from_trusted(digits))
}

/// Inversion vectors along the Stirling changes order: a Hamilton path on
/// the box of vectors.
pub fn hamilton_path(shape: &Shape, cap: usize) -> Result<Vec<InvVector>> {
    let total = stirling_count(shape);
    if total > BigUint::from(cap) {
        return Err(Error::SizeLimit { count: total, cap });
    }
    let mut path = Vec::new();
    generate_loopless(shape, |perm| {
        let w = SWord::from_trusted(perm.to_vec());
        path.push(inversion_vector(&w).expect("generated words avoid 212"));
    });
    Ok(path)
}

/// A k-ary tree: `Node` has exactly k ordered children, `Leaf` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KTree {
    Leaf,
    Node(Vec<KTree>),
}

impl KTree {
    /// Number of internal nodes.
    pub fn internal(&self) -> usize {
        match self {
            KTree::Leaf => 0,
            KTree::Node(kids) => 1 + kids.iter().map(KTree::internal).sum::<usize>(),
        }
    }

    fn check_arity(&self, k: usize) -> Result<()> {
        match self {
            KTree::Leaf => Ok(()),
            KTree::Node(kids) if kids.len() == k => kids.iter().try_for_each(|c| c.check_arity(k)),
            KTree::Node(kids) => Err(Error::Domain(format!(
                "node with {} children in a {k}-ary tree",
                kids.len()
            ))),
        }
    }

    /// Bracket notation with the labels forced by subtree sizes, e.g.
    /// `2(ε,1(ε,ε,ε),ε)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, offset: usize, out: &mut String) {
        match self {
            KTree::Leaf => out.push(EMPTY_SLOT),
            KTree::Node(kids) => {
                out.push_str(&(offset + self.internal()).to_string());
                out.push('(');
                let mut base = offset + self.internal() - 1;
                for (j, kid) in kids.iter().enumerate() {
                    if j > 0 {
                        out.push(',');
                    }
                    base -= kid.internal();
                    kid.render_into(base, out);
                }
                out.push(')');
            }
        }
    }

    /// Parses [`KTree::render`] output; labels must be the forced ones.
    pub fn parse(s: &str) -> Result<KTree> {
        fn convert(b: Bracketed) -> KTree {
            KTree::Node(
                b.slots
                    .into_iter()
                    .map(|slot| slot.map_or(KTree::Leaf, convert))
                    .collect(),
            )
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let tree = if compact == EMPTY_SLOT.to_string() {
            KTree::Leaf
        } else {
            convert(parse_bracketed(&compact)?)
        };
        if tree.render() != compact {
            return Err(Error::Domain(format!(
                "labels of {s:?} do not match the subtree sizes"
            )));
        }
        Ok(tree)
    }
}

impl fmt::Display for KTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn catalan_patterns() -> [Pattern; 2] {
    [
        Pattern::new(vec![1, 3, 2]).expect("normalized"),
        Pattern::new(vec![1, 2, 1]).expect("normalized"),
    ]
}

/// Splits `w` at the `k - 1` copies of its largest value into `k`
/// segments, which carry descending blocks of values.
pub fn kcatalan_word_to_tree(w: &SWord, k: usize) -> Result<KTree> {
    if k < 2 {
        return Err(Error::Domain(format!("k = {k} must be at least 2")));
    }
    let shape = w.shape();
    if !w.is_empty() && shape.regular_multiplicity() != Some(k - 1) {
        return Err(Error::Domain(format!(
            "{w} does not have shape ({})^m",
            k - 1
        )));
    }
    if !avoids_all_digits(w.digits(), &catalan_patterns()) {
        return Err(Error::Domain(format!("{w} contains 132 or 121")));
    }
    Ok(split_at_max(w.digits()))
}

fn split_at_max(seg: &[Value]) -> KTree {
    let Some(&top) = seg.iter().max() else {
        return KTree::Leaf;
    };
    KTree::Node(seg.split(|&d| d == top).map(split_at_max).collect())
}

pub fn ktree_to_word(t: &KTree, k: usize) -> Result<SWord> {
    if k < 2 {
        return Err(Error::Domain(format!("k = {k} must be at least 2")));
    }
    t.check_arity(k)?;
    let mut digits = Vec::new();
    write_ktree(t, 0, &mut digits);
    Ok(SWord::from_trusted(digits))
}

// `offset` is the number of values below this subtree's interval.
fn write_ktree(t: &KTree, offset: usize, out: &mut Vec<Value>) {
    let KTree::Node(kids) = t else { return };
    let label = (offset + t.internal()) as Value;
    let mut base = offset + t.internal() - 1;
    for (j, kid) in kids.iter().enumerate() {
        if j > 0 {
            out.push(label);
        }
        base -= kid.internal();
        write_ktree(kid, base, out);
    }
}
