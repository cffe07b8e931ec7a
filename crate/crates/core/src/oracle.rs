//! Ground-truth enumeration and closed-form counts.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::patterns::{LanguageSpec, Membership, Pattern};
use crate::word::{SWord, Shape, Value};

/// Default limit on the number of words any enumeration materializes.
pub const DEFAULT_CAP: usize = 10_000_000;

/// A language listed in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Language {
    pub spec: LanguageSpec,
    pub words: Vec<SWord>,
}

impl Language {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &SWord) -> bool {
        self.words.binary_search(w).is_ok()
    }
}

/// Steps `digits` to the next multiset permutation in lexicographic order;
/// returns false (leaving the slice sorted descending) at the last one.
pub fn next_multiset_permutation(digits: &mut [Value]) -> bool {
    let n = digits.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && digits[i - 1] >= digits[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while digits[j] <= digits[i - 1] {
        j -= 1;
    }
    digits.swap(i - 1, j);
    digits[i..].reverse();
    true
}

fn check_cap(count: &BigUint, cap: usize) -> Result<()> {
    if *count > BigUint::from(cap) {
        return Err(Error::SizeLimit {
            count: count.clone(),
            cap,
        });
    }
    Ok(())
}

/// Visits every s-word in lexicographic order.
pub fn for_each_sword(shape: &Shape, mut visit: impl FnMut(&[Value])) {
    let mut digits = shape.nondecreasing_word().into_digits();
    loop {
        visit(&digits);
        if !next_multiset_permutation(&mut digits) {
            break;
        }
    }
}

/// All s-words in lexicographic order.
pub fn all_swords(shape: &Shape, cap: usize) -> Result<Vec<SWord>> {
    check_cap(&multinomial(shape), cap)?;
    let mut out = Vec::new();
    for_each_sword(shape, |d| out.push(SWord::from_trusted(d.to_vec())));
    Ok(out)
}

/// Words of `shape` accepted by an arbitrary predicate, by filtering every
/// s-word.
pub fn filter_swords(shape: &Shape, member: &impl Membership, cap: usize) -> Result<Vec<SWord>> {
    check_cap(&multinomial(shape), cap)?;
    let mut out = Vec::new();
    for_each_sword(shape, |d| {
        if member.contains(d) {
            out.push(SWord::from_trusted(d.to_vec()));
        }
    });
    Ok(out)
}

/// The language by filtering all of `S_s`.
pub fn language_by_filter(spec: &LanguageSpec, cap: usize) -> Result<Language> {
    Ok(Language {
        spec: spec.clone(),
        words: filter_swords(&spec.shape, spec, cap)?,
    })
}

/// The language by exhaustive depth-first search over prefixes.
///
/// A prefix that already contains a pattern cannot extend to a member, so
/// such branches are cut; this reaches shapes whose `S_s` is far too large
/// to filter. Only the output is bounded by `cap`.
pub fn language(spec: &LanguageSpec, cap: usize) -> Result<Language> {
    let mut words = Vec::new();
    let mut overflow = false;
    prefix_search(&spec.shape, spec.patterns(), |d| {
        if words.len() == cap {
            overflow = true;
            return false;
        }
        words.push(SWord::from_trusted(d.to_vec()));
        true
    });
    if overflow {
        return Err(Error::SizeLimit {
            count: BigUint::from(cap) + 1u32,
            cap,
        });
    }
    Ok(Language {
        spec: spec.clone(),
        words,
    })
}

/// Number of words in the language, without materializing it.
pub fn count(spec: &LanguageSpec) -> BigUint {
    let mut total: u64 = 0;
    prefix_search(&spec.shape, spec.patterns(), |_| {
        total += 1;
        true
    });
    BigUint::from(total)
}

// Visits avoiding words in lexicographic order until `visit` returns false.
fn prefix_search(shape: &Shape, patterns: &[Pattern], mut visit: impl FnMut(&[Value]) -> bool) {
    struct Search<'a, F> {
        patterns: &'a [Pattern],
        remaining: Vec<usize>,
        prefix: Vec<Value>,
        n: usize,
        visit: F,
    }
    impl<F: FnMut(&[Value]) -> bool> Search<'_, F> {
        // false once the visitor asks to stop
        fn go(&mut self) -> bool {
            if self.prefix.len() == self.n {
                return (self.visit)(&self.prefix);
            }
            for v in 0..self.remaining.len() {
                if self.remaining[v] == 0 {
                    continue;
                }
                self.remaining[v] -= 1;
                self.prefix.push(v as Value + 1);
                let alive = self.patterns.iter().all(|p| !p.occurs_in(&self.prefix));
                let keep_going = !alive || self.go();
                self.prefix.pop();
                self.remaining[v] += 1;
                if !keep_going {
                    return false;
                }
            }
            true
        }
    }
    let mut search = Search {
        patterns,
        remaining: shape.multiplicities().to_vec(),
        prefix: Vec::with_capacity(shape.n()),
        n: shape.n(),
        visit: &mut visit,
    };
    search.go();
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

fn binomial(n: usize, k: usize) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// `|S_s| = n! / (s_1! ... s_m!)`.
pub fn multinomial(shape: &Shape) -> BigUint {
    let den = shape
        .multiplicities()
        .iter()
        .fold(BigUint::one(), |acc, &s| acc * factorial(s));
    factorial(shape.n()) / den
}

/// `|Av_s(212)| = prod_v (t_v + 1)`.
pub fn stirling_count(shape: &Shape) -> BigUint {
    shape
        .prefixes()
        .iter()
        .fold(BigUint::one(), |acc, &t| acc * (t as u64 + 1))
}

/// `binom(km, m) / ((k-1)m + 1)`.
pub fn k_catalan(k: usize, m: usize) -> BigUint {
    assert!(k >= 2, "k-Catalan numbers need k >= 2");
    binomial(k * m, m) / ((k - 1) * m + 1)
}

/// A closed-form size for the languages that have one: `S_s`, `Av_s(212)`,
/// and `Av_s(132,121)` on regular shapes.
pub fn formula_count(spec: &LanguageSpec) -> Result<BigUint> {
    let letters: Vec<&[Value]> = spec.patterns().iter().map(|p| p.letters()).collect();
    match letters.as_slice() {
        [] => Ok(multinomial(&spec.shape)),
        [[2, 1, 2]] => Ok(stirling_count(&spec.shape)),
        [[1, 2, 1], [1, 3, 2]] => match spec.shape.regular_multiplicity() {
            Some(k1) => Ok(k_catalan(k1 + 1, spec.shape.m())),
            None => Err(Error::FormulaUnavailable(format!(
                "{{132,121}} on the irregular shape {}",
                spec.shape
            ))),
        },
        _ => {
            let names: Vec<String> = spec.patterns().iter().map(|p| p.to_string()).collect();
            Err(Error::FormulaUnavailable(format!(
                "{{{}}}",
                names.join(",")
            )))
        }
    }
}
