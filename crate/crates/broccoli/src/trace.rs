//! Recorded rollouts and their CSV serialisation.

use std::fmt;
use std::io::{self, Write};

use crate::state::{ActionId, StateVector};

/// Verdict attached to a recorded trace.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TraceVerdict {
    /// The specification fired at the given step (0 = already at the start).
    Satisfied(usize),
    Violated,
    /// The rollout was cut off before the specification decided.
    Undetermined,
}

impl fmt::Display for TraceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceVerdict::Satisfied(step) => write!(f, "satisfied@{step}"),
            TraceVerdict::Violated => write!(f, "violated"),
            TraceVerdict::Undetermined => write!(f, "undetermined"),
        }
    }
}

/// A rollout: the visited states, the actions taken between them
/// (`states.len() == actions.len() + 1`) and the final verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub states: Vec<StateVector>,
    pub actions: Vec<ActionId>,
    pub verdict: TraceVerdict,
}

impl Trace {
    /// Number of steps taken (= number of actions).
    pub fn steps(&self) -> usize {
        self.actions.len()
    }

    /// Write the trace as CSV: header `step,s_0..s_{d-1},action,verdict`,
    /// one row per visited state. The action column is empty on the final
    /// row (no action is taken from the last state) and the verdict column
    /// is filled only on the final row. Doubles are printed in shortest
    /// round-trip form, so re-parsing recovers them bit-exactly.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        debug_assert_eq!(self.states.len(), self.actions.len() + 1);
        let d = self.states.first().map_or(0, StateVector::dim);
        write!(w, "step")?;
        for i in 0..d {
            write!(w, ",s_{i}")?;
        }
        writeln!(w, ",action,verdict")?;
        let last = self.states.len() - 1;
        for (step, state) in self.states.iter().enumerate() {
            write!(w, "{step}")?;
            for v in state.values() {
                write!(w, ",{v}")?;
            }
            match self.actions.get(step) {
                Some(a) => write!(w, ",{a}")?,
                None => write!(w, ",")?,
            }
            if step == last {
                writeln!(w, ",{}", self.verdict)?;
            } else {
                writeln!(w, ",")?;
            }
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv output is ascii")
    }
}
