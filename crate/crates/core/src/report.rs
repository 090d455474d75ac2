//! Verification outcomes with structured witnesses.
//!
//! Every top-level check in this crate reports not just pass/fail but
//! a witness: the matrix, class, or scalar that makes the verdict
//! reproducible by eye. Witnesses are plain data so the CLI can render
//! them as text or JSON without knowing which check produced them.

/// Structured evidence attached to a check outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Null,
    Str(String),
    /// A matrix rendered entrywise.
    Matrix(Vec<Vec<String>>),
    List(Vec<Witness>),
    /// Ordered key/value pairs (order is preserved in output).
    Map(Vec<(String, Witness)>),
}

impl Witness {
    pub fn text(s: impl Into<String>) -> Witness {
        Witness::Str(s.into())
    }

    pub fn map(entries: Vec<(&str, Witness)>) -> Witness {
        Witness::Map(
            entries
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
    }
}

/// Result of one verification: a verdict plus its evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub witness: Witness,
    pub note: String,
}

impl CheckOutcome {
    pub fn pass(witness: Witness, note: impl Into<String>) -> CheckOutcome {
        CheckOutcome {
            passed: true,
            witness,
            note: note.into(),
        }
    }

    pub fn fail(witness: Witness, note: impl Into<String>) -> CheckOutcome {
        CheckOutcome {
            passed: false,
            witness,
            note: note.into(),
        }
    }
}
