use serde::Serialize;

use crate::error::{Error, Result};

/// Qubit budgets of the two T-gate schemes on an `n`-qubit block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub n: usize,
    pub q_data: usize,
    /// Physical Bell pairs for transversal T (one per physical qubit).
    pub q_bell_pairs_phys: usize,
    pub q_aux_phys: usize,
    pub q_tot_phys: usize,
    /// Two encoded blocks hold the logical Bell pair.
    pub q_aux_log: usize,
    pub q_tot_log: usize,
}

pub fn resource_report(n: usize) -> Result<ResourceReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("block size n must be at least 1".into()));
    }
    Ok(ResourceReport {
        n,
        q_data: n,
        q_bell_pairs_phys: n,
        q_aux_phys: 2 * n,
        q_tot_phys: 3 * n,
        q_aux_log: 2 * n,
        q_tot_log: 3 * n,
    })
}
