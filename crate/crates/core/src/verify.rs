//! Verification records: a named identity check together with its residue.

use serde::Serialize;

/// Anything whose vanishing certifies an identity.
pub trait Residue {
    fn is_zero(&self) -> bool;
    fn render(&self) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Serializable summary of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub inputs: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// A check decided by a predicate rather than a residue.
    pub fn boolean(id: impl Into<String>, inputs: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            inputs: inputs.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residue: if ok { None } else { Some(detail.into()) },
            note: None,
        }
    }
}

/// An identity `lhs = rhs` reduced to the single residue `lhs - rhs`.
#[derive(Clone, Debug)]
pub struct Verification<R> {
    pub id: String,
    pub inputs: String,
    pub residue: R,
}

impl<R: Residue> Verification<R> {
    pub fn new(id: impl Into<String>, inputs: impl Into<String>, residue: R) -> Self {
        Verification { id: id.into(), inputs: inputs.into(), residue }
    }

    pub fn passed(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn record(&self) -> CheckRecord {
        let ok = self.passed();
        CheckRecord {
            id: self.id.clone(),
            inputs: self.inputs.clone(),
            status: if ok { Status::Pass } else { Status::Fail },
            residue: if ok { None } else { Some(self.residue.render()) },
            note: None,
        }
    }
}
