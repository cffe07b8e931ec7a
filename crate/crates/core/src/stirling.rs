//! Loopless generation of the Stirling s-words `Av_s(212)` in Stirling
//! changes order.
//!
//! Every step bumps the whole run of one value `v` past a single smaller
//! digit. Focus pointers pick `v` in constant time, so no step loops over
//! the word or the alphabet.
//!
//! State arrays are 1-based (slot 0 unused), mirroring the reference
//! pseudocode; [`VisitPoint`] exposes them with slot 0 stripped.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::word::{render, SWord, Shape, Value};

/// The bump about to be applied at a visit: the smaller digit `u` and the
/// two transposed positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendingBump {
    pub u: Value,
    pub i: usize,
    pub j: usize,
}

/// The generator's state at a visit. Slices are indexed by `value - 1`.
#[derive(Debug)]
pub struct VisitPoint<'a> {
    pub perm: &'a [Value],
    /// The larger value of the next bump; 1 at the final visit.
    pub v: Value,
    /// `None` at the final visit.
    pub bump: Option<PendingBump>,
    /// 1-based index of each value's leftmost copy.
    pub left: &'a [usize],
    /// Smaller digits to the right of each value.
    pub inv: &'a [usize],
    /// Focus pointers.
    pub fs: &'a [Value],
    /// Bump directions, -1 or +1.
    pub dirs: &'a [i8],
}

/// Receives a tick per executed pseudocode statement.
pub trait StepCounter {
    fn tick(&mut self);
    /// Called once per iteration, after all of its ticks.
    fn end_iteration(&mut self);
}

/// Discards every tick.
pub struct NoCount;

impl StepCounter for NoCount {
    #[inline(always)]
    fn tick(&mut self) {}
    #[inline(always)]
    fn end_iteration(&mut self) {}
}

/// Tracks the largest number of statements any single iteration executed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    current: u64,
    pub max_per_iteration: u64,
    pub total: u64,
    pub iterations: u64,
}

impl StepCounter for OpCounter {
    fn tick(&mut self) {
        self.current += 1;
        self.total += 1;
    }

    fn end_iteration(&mut self) {
        self.max_per_iteration = self.max_per_iteration.max(self.current);
        self.current = 0;
        self.iterations += 1;
    }
}

/// Runs the generator, handing every visit point to `visit`, and returns
/// the number of visits.
pub fn drive<C: StepCounter>(
    shape: &Shape,
    counter: &mut C,
    mut visit: impl FnMut(&VisitPoint<'_>),
) -> u64 {
    let m = shape.m();
    let mut s = vec![0usize; m + 1];
    let mut t = vec![0usize; m + 1];
    for v in 1..=m {
        s[v] = shape.multiplicity(v as Value);
        t[v] = shape.prefix(v as Value);
    }
    let mut perm: Vec<Value> = std::iter::once(0)
        .chain(shape.nondecreasing_word().into_digits())
        .collect();
    let mut left: Vec<usize> = (0..=m).map(|v| if v == 0 { 0 } else { t[v] + 1 }).collect();
    let mut inv = vec![0usize; m + 1];
    let mut fs: Vec<Value> = (0..=m as Value).collect();
    let mut dirs = vec![-1i8; m + 1];
    let mut v = fs[m];
    let mut visits = 0u64;

    while v > 1 {
        let vi = v as usize;
        let d = dirs[vi];
        counter.tick();
        let (i, j) = if d == 1 {
            (left[vi], left[vi] + s[vi])
        } else {
            (left[vi] + s[vi] - 1, left[vi] - 1)
        };
        counter.tick();
        counter.tick();
        let u = perm[j];
        counter.tick();
        visit(&VisitPoint {
            perm: &perm[1..],
            v,
            bump: Some(PendingBump { u, i, j }),
            left: &left[1..],
            inv: &inv[1..],
            fs: &fs[1..],
            dirs: &dirs[1..],
        });
        visits += 1;
        counter.tick();
        perm[i] = u;
        perm[j] = v;
        left[vi] = left[vi].wrapping_add_signed(d as isize);
        counter.tick();
        counter.tick();
        counter.tick();
        let ui = u as usize;
        counter.tick();
        if left[ui] == j {
            // u passed the whole run of v
            left[ui] = j.wrapping_add_signed(-(d as isize) * s[vi] as isize);
            counter.tick();
        }
        inv[vi] = inv[vi].wrapping_add_signed(-(d as isize));
        counter.tick();
        counter.tick();
        if inv[vi] == 0 || inv[vi] == t[vi] {
            dirs[vi] = -d;
            fs[vi] = fs[vi - 1];
            fs[vi - 1] = v - 1;
            counter.tick();
            counter.tick();
            counter.tick();
        }
        v = fs[m];
        fs[m] = m as Value;
        counter.tick();
        counter.tick();
        counter.end_iteration();
    }
    visit(&VisitPoint {
        perm: &perm[1..],
        v,
        bump: None,
        left: &left[1..],
        inv: &inv[1..],
        fs: &fs[1..],
        dirs: &dirs[1..],
    });
    visits + 1
}

/// Visits every Stirling s-word of `shape`; returns the visit count.
pub fn generate_loopless(shape: &Shape, mut visit: impl FnMut(&[Value])) -> u64 {
    drive(shape, &mut NoCount, |point| visit(point.perm))
}

/// As [`generate_loopless`], also reporting per-iteration statement counts.
pub fn generate_instrumented(shape: &Shape, mut visit: impl FnMut(&[Value])) -> (u64, OpCounter) {
    let mut counter = OpCounter::default();
    let visits = drive(shape, &mut counter, |point| visit(point.perm));
    (visits, counter)
}

/// The Stirling changes sequence, materialized.
pub fn stirling_sequence(shape: &Shape) -> Vec<SWord> {
    let mut out = Vec::new();
    generate_loopless(shape, |perm| out.push(SWord::from_trusted(perm.to_vec())));
    out
}

/// One row of the variable trace, captured at a visit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub perm: SWord,
    pub v: Value,
    pub u: Option<Value>,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub left: Vec<usize>,
    pub inv: Vec<usize>,
    pub fs: Vec<Value>,
    #[serde(with = "signs")]
    pub dirs: Vec<i8>,
}

mod signs {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(dirs: &[i8], ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&super::render_dirs(dirs))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<i8>, D::Error> {
        String::deserialize(de)?
            .chars()
            .map(|c| match c {
                '-' => Ok(-1),
                '+' => Ok(1),
                _ => Err(D::Error::custom(format!("unexpected direction {c:?}"))),
            })
            .collect()
    }
}

fn render_dirs(dirs: &[i8]) -> String {
    dirs.iter()
        .map(|&d| if d < 0 { '-' } else { '+' })
        .collect()
}

fn render_list<T: Copy + Into<u64>>(xs: &[T]) -> String {
    if xs.iter().all(|&x| x.into() <= 9) {
        xs.iter().map(|&x| x.into().to_string()).collect()
    } else {
        xs.iter()
            .map(|&x| x.into().to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl TraceRow {
    /// Cells in column order: perm, v, u, i, j, left, inv, fs, dirs. The
    /// final row leaves u, i and j blank.
    pub fn cells(&self) -> [String; 9] {
        let blank_or = |x: Option<usize>| x.map(|x| x.to_string()).unwrap_or_default();
        let left: Vec<u64> = self.left.iter().map(|&x| x as u64).collect();
        let inv: Vec<u64> = self.inv.iter().map(|&x| x as u64).collect();
        [
            self.perm.to_string(),
            self.v.to_string(),
            blank_or(self.u.map(usize::from)),
            blank_or(self.i),
            blank_or(self.j),
            render_list(&left),
            render_list(&inv),
            render(&self.fs),
            render_dirs(&self.dirs),
        ]
    }
}

impl fmt::Display for TraceRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cells().join(" "))
    }
}

pub const TRACE_COLUMNS: [&str; 9] = ["perm", "v", "u", "i", "j", "left", "inv", "fs", "dirs"];

/// The trace table: one row per visit.
pub fn trace(shape: &Shape) -> Vec<TraceRow> {
    let mut rows = Vec::new();
    drive(shape, &mut NoCount, |p| {
        rows.push(TraceRow {
            perm: SWord::from_trusted(p.perm.to_vec()),
            v: p.v,
            u: p.bump.map(|b| b.u),
            i: p.bump.map(|b| b.i),
            j: p.bump.map(|b| b.j),
            left: p.left.to_vec(),
            inv: p.inv.to_vec(),
            fs: p.fs.to_vec(),
            dirs: p.dirs.to_vec(),
        })
    });
    rows
}

/// Renders rows as a space-aligned table with a header line.
pub fn format_trace(rows: &[TraceRow]) -> String {
    let cells: Vec<[String; 9]> = rows.iter().map(TraceRow::cells).collect();
    let mut widths = TRACE_COLUMNS.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut line = |row: &[String]| {
        let padded: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(&TRACE_COLUMNS.map(String::from));
    for row in &cells {
        line(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, stirling_count, DEFAULT_CAP};
    use crate::patterns::{parse_pattern_list, LanguageSpec};

    fn shape(m: &[usize]) -> Shape {
        Shape::new(m.to_vec()).unwrap()
    }

    fn strings(words: &[SWord]) -> Vec<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn trace_rows_for_213() {
        let rows = trace(&shape(&[2, 1, 3]));
        assert_eq!(rows.len(), 12);
        assert_eq!(rows[0].to_string(), "112333 3 2 6 3 134 000 123 ---");
        assert_eq!(rows[8].to_string(), "211333 3 1 6 3 214 020 113 -+-");
        assert_eq!(rows[11].to_string(), "333211 1    541 023 123 -++");
        assert_eq!((rows[11].u, rows[11].i, rows[11].j), (None, None, None));
    }

    #[test]
    fn small_sequences() {
        assert_eq!(
            strings(&stirling_sequence(&shape(&[1, 1, 1]))),
            ["123", "132", "312", "321", "231", "213"]
        );
        assert_eq!(strings(&stirling_sequence(&shape(&[3]))), ["111"]);
        assert_eq!(strings(&stirling_sequence(&shape(&[1, 2]))), ["122", "221"]);
        assert_eq!(strings(&stirling_sequence(&shape(&[2]))), ["11"]);
    }

    #[test]
    fn visits_cover_the_language() {
        for m in [&[2, 1, 3][..], &[1, 1, 2, 1], &[3, 1, 1, 2], &[1, 3, 2]] {
            let s = shape(m);
            let mut seq = stirling_sequence(&s);
            assert_eq!(num_bigint::BigUint::from(seq.len()), stirling_count(&s));
            seq.sort();
            let spec = LanguageSpec::new(s, parse_pattern_list("212").unwrap());
            assert_eq!(seq, oracle::language(&spec, DEFAULT_CAP).unwrap().words);
        }
    }

    #[test]
    fn inv_matches_a_recount_at_every_visit() {
        drive(&shape(&[2, 2, 1, 3]), &mut NoCount, |p| {
            for (k, &inv) in p.inv.iter().enumerate() {
                let v = k as Value + 1;
                let last = p.perm.iter().rposition(|&d| d == v).unwrap();
                let smaller = p.perm[last..].iter().filter(|&&d| d < v).count();
                assert_eq!(inv, smaller, "{:?} value {v}", p.perm);
                assert!(p.left[k] >= 1 && p.perm[p.left[k] - 1] == v);
                assert!(p.perm[..p.left[k] - 1].iter().all(|&d| d != v));
            }
        });
    }

    #[test]
    fn iterations_are_bounded() {
        let (visits, ops) = generate_instrumented(&shape(&[2, 3, 1, 2]), |_| {});
        assert_eq!(visits, ops.iterations + 1);
        assert!(ops.max_per_iteration <= 18, "{}", ops.max_per_iteration);
    }

    #[test]
    fn format_has_header_and_rows() {
        let text = format_trace(&trace(&shape(&[2, 1, 3])));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 13);
        assert!(lines[0].starts_with("perm"));
        assert!(lines[12].starts_with("333211"));
    }
}
