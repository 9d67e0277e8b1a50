use serde::Serialize;

use super::{KsError, OrthStructure};

/// Parity certificate: an odd number of bases in which every ray occurs
/// exactly twice cannot carry a coloring, since the number of 1s counted
/// over bases would be both odd and even.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub bases: usize,
    pub bases_odd: bool,
    pub membership_counts: Vec<usize>,
    pub uncolorable: bool,
}

pub fn cabello_parity_witness(s: &OrthStructure) -> Result<ParityReport, KsError> {
    let mut counts = vec![0usize; s.vectors().len()];
    for b in s.bases() {
        for &i in b {
            counts[i] += 1;
        }
    }
    if let Some((i, &c)) = counts.iter().enumerate().find(|&(_, &c)| c != 2) {
        return Err(KsError::NotApplicable(format!(
            "vector `{}` lies in {c} bases, expected 2",
            s.vectors()[i].label()
        )));
    }
    let bases = s.bases().len();
    if bases.is_multiple_of(2) {
        return Err(KsError::NotApplicable(format!("{bases} bases is even")));
    }
    Ok(ParityReport {
        bases,
        bases_odd: true,
        membership_counts: counts,
        uncolorable: true,
    })
}
