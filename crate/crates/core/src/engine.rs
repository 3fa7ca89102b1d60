use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automaton::enumerate_maws_fast;
use crate::error::{MawError, Result};
use crate::model::{Alphabet, Symbol};
use crate::oracle::{enumerate_maws_naive, MawSet};

/// Which MAW enumerator to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Oracle,
    #[default]
    Automaton,
}

impl Engine {
    pub fn maws(self, subject: &[Symbol], alphabet: &Alphabet) -> Result<MawSet> {
        match self {
            Engine::Oracle => enumerate_maws_naive(subject, alphabet),
            Engine::Automaton => enumerate_maws_fast(subject, alphabet),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Oracle => "oracle",
            Engine::Automaton => "automaton",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = MawError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" | "naive" => Ok(Engine::Oracle),
            "automaton" | "fast" | "dawg" => Ok(Engine::Automaton),
            other => Err(MawError::InvalidParameter(format!("unknown engine {other:?}"))),
        }
    }
}
