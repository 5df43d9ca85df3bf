//! Step-by-step record of a reduction, serializable as JSON lines.

use serde::{Deserialize, Serialize};

use crate::digraph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    MergeThree,
    MergeInterlaced,
    BlowUp,
    CutReduction,
}

impl Op {
    /// Exact change in antiface count this operation must produce, if fixed.
    pub fn delta(self) -> Option<isize> {
        match self {
            Op::MergeThree | Op::MergeInterlaced => Some(-2),
            Op::BlowUp => Some(0),
            Op::CutReduction => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Case label: `1`, `2.1.1` to `2.1.4`, `2.2`, `3.1`, `3.2.1`, `3.2.2`,
    /// `small` or `fallback`.
    pub case: String,
    pub op: Op,
    pub before: usize,
    pub after: usize,
    /// Antiface ids the operation acted on, in the embedding before the step.
    pub faces: Vec<usize>,
    /// Witness vertices (the merge vertex, the interlaced pair, or `x`).
    pub vertices: Vec<VertexId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: ReductionTrace) {
        self.steps.extend(other.steps);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_json_lines(&self) -> String {
        self.steps.iter().map(|s| serde_json::to_string(s).expect("trace steps serialize") + "\n").collect()
    }

    pub fn from_json_lines(text: &str) -> Result<Self, serde_json::Error> {
        let steps =
            text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect::<Result<_, _>>()?;
        Ok(ReductionTrace { steps })
    }

    /// Longest run of consecutive steps that leave the count unchanged.
    pub fn longest_flat_run(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        for s in &self.steps {
            if s.before == s.after {
                run += 1;
                best = best.max(run);
            } else {
                run = 0;
            }
        }
        best
    }

    /// Checks count monotonicity, per-op deltas and step chaining.
    pub fn check_consistency(&self) -> Result<(), String> {
        for (i, s) in self.steps.iter().enumerate() {
            if s.after > s.before {
                return Err(format!("step {i} increases the antiface count"));
            }
            if let Some(delta) = s.op.delta() {
                if s.after as isize - s.before as isize != delta {
                    return Err(format!("step {i} ({:?}) changes the count by the wrong amount", s.op));
                }
            }
            if i > 0 && self.steps[i - 1].after != s.before {
                return Err(format!("step {i} does not start where step {} ended", i - 1));
            }
        }
        Ok(())
    }
}
