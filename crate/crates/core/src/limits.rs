/// Size guards for the exact counting kernels.
///
/// Every kernel checks its own cost estimate against one of these before
/// allocating anything, and fails with [`crate::Error::LimitExceeded`] instead
/// of exhausting memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest field order `q` that [`crate::FieldSpec::new`] accepts.
    pub field_order: u64,
    /// Largest dense state space (`q^m`, times `k + 1` for the subset DP).
    pub dp_states: u64,
    /// Largest number of tuples or subsets a brute-force oracle may visit.
    pub enumeration: u64,
    /// Largest `k` for which cycle types of `S_k` are enumerated.
    pub cycle_k: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            field_order: 1 << 24,
            dp_states: 100_000_000,
            enumeration: 100_000_000,
            cycle_k: 40,
        }
    }
}
