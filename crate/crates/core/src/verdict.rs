//! Outcomes of checking one statement over one or many instances.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::spectral::SpectralMap;
use crate::theorems::TheoremId;

/// What a [`Verdict`] is about: a poset-level theorem or one of the two
/// ring-level lying-over lemmas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statement {
    Theorem(TheoremId),
    /// GU plus a prime containing the kernel yields a prime lying over it.
    KernelLyingOver,
    /// Unitary GD plus a proper extension ideal yields a prime lying over.
    ExtensionLyingOver,
}

impl Statement {
    pub fn as_str(self) -> &'static str {
        match self {
            Statement::Theorem(t) => t.as_str(),
            Statement::KernelLyingOver => "L_KERNEL_LO",
            Statement::ExtensionLyingOver => "L_EXTENSION_LO",
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Statement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "L_KERNEL_LO" => Ok(Statement::KernelLyingOver),
            "L_EXTENSION_LO" => Ok(Statement::ExtensionLyingOver),
            other => other.parse().map(Statement::Theorem),
        }
    }
}

/// A concrete violating instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub map: SpectralMap,
    /// Which chains or elements witness the failure.
    pub detail: String,
    /// The violation was found with hypotheses waived and only replays in
    /// that mode.
    pub hypotheses_waived: bool,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub statement: Statement,
    pub holds: bool,
    pub instances_checked: u64,
    /// Instances on which every hypothesis of the statement held.
    pub premises_met: u64,
    pub note: Option<String>,
    /// Present exactly when `holds` is false.
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn holding(statement: Statement) -> Verdict {
        Verdict {
            statement,
            holds: true,
            instances_checked: 0,
            premises_met: 0,
            note: None,
            counterexample: None,
            elapsed: Duration::ZERO,
        }
    }

    /// Folds another verdict for the same statement into this one, keeping
    /// the first counterexample.
    pub fn absorb(&mut self, other: Verdict) {
        debug_assert_eq!(self.statement, other.statement);
        self.instances_checked += other.instances_checked;
        self.premises_met += other.premises_met;
        self.elapsed += other.elapsed;
        if self.counterexample.is_none() && other.counterexample.is_some() {
            self.holds = false;
            self.counterexample = other.counterexample;
        }
    }

    /// Equality ignoring wall-clock time.
    pub fn same_outcome(&self, other: &Verdict) -> bool {
        self.statement == other.statement
            && self.holds == other.holds
            && self.instances_checked == other.instances_checked
            && self.premises_met == other.premises_met
            && self.note == other.note
            && self.counterexample == other.counterexample
    }
}
