//! Diagram-level verification reports.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One checked diagram on one sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramResult {
    #[serde(rename = "diagram-id")]
    pub diagram_id: String,
    #[serde(rename = "sample-id")]
    pub sample_id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    pub entries: Vec<DiagramResult>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the outcome of one diagram; `Err` carries the witness.
    pub fn record(
        &mut self,
        diagram: impl Into<String>,
        sample: impl Into<String>,
        outcome: std::result::Result<(), String>,
    ) {
        let (status, witness) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(w) => (Status::Fail, Some(w)),
        };
        self.entries.push(DiagramResult {
            diagram_id: diagram.into(),
            sample_id: sample.into(),
            status,
            witness,
        });
    }

    pub fn pass(&mut self, diagram: impl Into<String>, sample: impl Into<String>) {
        self.record(diagram, sample, Ok(()));
    }

    pub fn fail(
        &mut self,
        diagram: impl Into<String>,
        sample: impl Into<String>,
        witness: impl Into<String>,
    ) {
        self.record(diagram, sample, Err(witness.into()));
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Prefixes every sample id, used when nesting suites.
    pub fn scoped(mut self, prefix: &str) -> Report {
        for e in &mut self.entries {
            e.sample_id = format!("{prefix}/{}", e.sample_id);
        }
        self
    }

    pub fn failures(&self) -> Vec<&DiagramResult> {
        self.entries
            .iter()
            .filter(|e| e.status == Status::Fail)
            .collect()
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when some entry with this diagram id failed.
    pub fn failed(&self, diagram: &str) -> bool {
        self.entries
            .iter()
            .any(|e| e.diagram_id == diagram && e.status == Status::Fail)
    }

    pub fn failed_diagrams(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .failures()
            .into_iter()
            .map(|e| e.diagram_id.clone())
            .collect();
        ids.sort();
        ids.dedup();
        ids
    }

    /// Stable order by diagram id; entries with equal ids keep insertion order.
    pub fn sorted(mut self) -> Report {
        self.entries.sort_by(|a, b| a.diagram_id.cmp(&b.diagram_id));
        self
    }
}
