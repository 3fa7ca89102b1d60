//! Minimal absent words (MAWs) and how they change under a sliding window.
//!
//! The crate computes MAW sets with two independent engines (a reference
//! enumerator and a suffix-automaton one), measures the exact change of the
//! MAW set for one append or delete step, checks every step against the known
//! upper bounds, builds the string families that attain them, and runs
//! exhaustive and randomized verification campaigns over all of it.
//!
//! ```
//! use mawlab::{Alphabet, Engine};
//!
//! let sigma = Alphabet::parse("abc").unwrap();
//! let set = Engine::Automaton.maws(b"abaab", &sigma).unwrap();
//! let shown: Vec<String> = set.iter().map(|w| w.to_string()).collect();
//! assert_eq!(shown, ["c", "bb", "aaa", "bab", "aaba"]);
//! ```

pub mod automaton;
pub mod bounds;
mod engine;
pub mod error;
pub mod families;
pub mod model;
pub mod oracle;
pub mod report;
pub mod slide;
pub mod verify;

pub use automaton::{build_automaton, enumerate_maws_fast, SuffixAutomaton};
pub use bounds::{check_step, BoundId, BoundVerdict};
pub use engine::Engine;
pub use error::{MawError, Result};
pub use families::{FamilyId, FamilyInstance};
pub use model::{occurs, window_stats, Alphabet, Symbol, Text, Window, WindowStats, Word};
pub use oracle::{enumerate_maws_naive, is_maw, MawSet};
pub use slide::{append_delta, classify_added, delete_delta, slide_totals, DeltaReport, MawType, SlideSummary};
pub use verify::{CampaignConfig, CampaignReport};
