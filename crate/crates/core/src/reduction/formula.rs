use super::ReductionError;

/// Largest variable count the exhaustive oracle accepts.
pub const ORACLE_MAX_VARS: usize = 24;

/// A positive 1-in-3-SAT formula: every clause is a triple of distinct,
/// 1-based variables, and is satisfied when exactly one of them is true.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    nvars: usize,
    clauses: Vec<[usize; 3]>,
}

impl Formula {
    pub fn new(nvars: usize, clauses: Vec<[usize; 3]>) -> Result<Self, ReductionError> {
        for (c, clause) in clauses.iter().enumerate() {
            for &x in clause {
                if x == 0 || x > nvars {
                    return Err(ReductionError::InvalidVariable { clause: c, var: x });
                }
            }
            if clause[0] == clause[1] || clause[0] == clause[2] || clause[1] == clause[2] {
                return Err(ReductionError::RepeatedVariable { clause: c });
            }
        }
        Ok(Self { nvars, clauses })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// Number of clauses containing each variable, indexed `var - 1`.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.nvars];
        for clause in &self.clauses {
            for &x in clause {
                occ[x - 1] += 1;
            }
        }
        occ
    }

    /// Index of the first clause without exactly one true variable.
    pub fn first_violated(&self, assignment: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| c.iter().filter(|&&x| assignment.value(x)).count() != 1)
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        assignment.len() == self.nvars && self.first_violated(assignment).is_none()
    }
}

/// Truth values for variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Self(values)
    }

    pub fn all_false(nvars: usize) -> Self {
        Self(vec![false; nvars])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Value of 1-based variable `var`.
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    fn from_mask(nvars: usize, mask: u32) -> Self {
        Self((0..nvars).map(|i| mask >> i & 1 == 1).collect())
    }
}

/// Exhaustive search over all `2^n` assignments. Variable `i` is bit `i-1`
/// of a counter running from zero, so the first hit has the smallest such
/// mask; with no clauses that is the all-false assignment.
pub fn oracle_1in3(formula: &Formula) -> Result<Option<Assignment>, ReductionError> {
    let n = formula.nvars();
    if n > ORACLE_MAX_VARS {
        return Err(ReductionError::TooLarge { nvars: n });
    }
    let clause_masks: Vec<u32> = formula
        .clauses()
        .iter()
        .map(|c| c.iter().fold(0u32, |m, &x| m | 1 << (x - 1)))
        .collect();
    Ok((0u32..1 << n)
        .find(|&mask| clause_masks.iter().all(|&cm| (mask & cm).count_ones() == 1))
        .map(|mask| Assignment::from_mask(n, mask)))
}
