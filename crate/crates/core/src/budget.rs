//! Effort presets for the expensive verification runs.

use crate::CoreError;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// How much compute a verification run may spend. Consumers translate the
/// preset into node counts and evaluation caps appropriate to their task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Budget {
    /// Quick settings for interactive runs.
    Desk,
    /// Higher-resolution settings for unattended runs.
    Thorough,
}

impl FromStr for Budget {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "desk" => Ok(Budget::Desk),
            "thorough" => Ok(Budget::Thorough),
            other => Err(CoreError::UnknownBudget {
                value: other.to_string(),
            }),
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::Desk => write!(f, "desk"),
            Budget::Thorough => write!(f, "thorough"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_displays_both_presets() {
        assert_eq!("desk".parse::<Budget>().unwrap(), Budget::Desk);
        assert_eq!("thorough".parse::<Budget>().unwrap(), Budget::Thorough);
        assert_eq!(Budget::Desk.to_string(), "desk");
        assert!("quick".parse::<Budget>().is_err());
    }

    #[test]
    fn serializes_lowercase() {
        assert_eq!(serde_json::to_string(&Budget::Thorough).unwrap(), "\"thorough\"");
    }
}
