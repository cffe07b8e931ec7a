//! Gray codes for pattern-avoiding s-words (multiset permutations).
//!
//! An s-word for `s = (s_1, ..., s_m)` holds `s_v` copies of each value `v`.
//! The greedy engine in [`algob`] lists a pattern-avoiding language by
//! repeatedly applying the minimal bump of largest anchor rank, and
//! [`stirling`] generates `Av_s(212)` looplessly in the same order. The
//! [`oracle`] module supplies brute-force enumerations and closed-form
//! counts, and [`trees`] maps the listings onto tree objects.
//!
//! ```
//! use swordgen::{run_algorithm_b, LanguageSpec, Shape};
//!
//! let spec = LanguageSpec::new("2,2".parse::<Shape>()?, vec![]);
//! let run = run_algorithm_b(&spec, None)?;
//! let words: Vec<String> = run.words.iter().map(|w| w.to_string()).collect();
//! assert_eq!(words, ["1122", "1221", "1212", "2112", "2121", "2211"]);
//! # Ok::<(), swordgen::Error>(())
//! ```

pub mod algob;
pub mod bumps;
pub mod dot;
pub mod error;
pub mod oracle;
pub mod patterns;
pub mod stirling;
pub mod trees;
pub mod word;
pub mod zigzag;

pub use algob::{run_algorithm_b, verify_gray_code, GrayCodeReport, GrayCodeRun, HaltReason};
pub use bumps::{apply_bump, classify_move, BumpMove, Direction};
pub use error::{Error, Result};
pub use oracle::{Language, DEFAULT_CAP};
pub use patterns::{LanguageSpec, Membership, Pattern};
pub use stirling::{generate_loopless, stirling_sequence};
pub use word::{RunSpan, SWord, Shape, Value};
