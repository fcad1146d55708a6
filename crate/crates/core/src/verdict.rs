use std::fmt;

/// Outcome class shared by every decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// Decided positively (reversible, well-founded, classified, ...).
    Positive,
    /// Decided negatively, with a witness.
    Negative,
    /// Neither side could be established.
    Inconclusive,
}

impl Status {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Positive => 0,
            Status::Negative => 1,
            Status::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Positive => "positive",
            Status::Negative => "negative",
            Status::Inconclusive => "inconclusive",
        })
    }
}
