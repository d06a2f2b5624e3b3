use super::{PartId, PathChoice};

/// One spanning path per part of size at least two.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Solution {
    pub paths: Vec<PathChoice>,
}

impl Solution {
    pub fn new(paths: Vec<PathChoice>) -> Self {
        Self { paths }
    }

    pub fn path(&self, part: PartId) -> Option<&PathChoice> {
        self.paths.iter().find(|c| c.part == part)
    }

    /// Sorts choices by part and orients every path smallest-endpoint-first.
    pub fn canonical(&self) -> Solution {
        let mut paths: Vec<PathChoice> = self
            .paths
            .iter()
            .map(|c| PathChoice::new(c.part, c.vertices.clone()))
            .collect();
        paths.sort();
        Solution { paths }
    }
}

/// Verdict of a decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Feasible(Solution),
    Infeasible,
}

impl Outcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Outcome::Feasible(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Feasible(s) => Some(s),
            Outcome::Infeasible => None,
        }
    }
}
