//! Existence criterion for rigid residues: one degree-plus-trace condition
//! per line-bundle summand, plus the universal trace condition.

use crate::bundle::Instance;
use crate::endalg::is_rigid;
use crate::error::{Error, Result};
use crate::exactfield::Scalar;

/// `deg E + sum_x trace A(x) == 0`, necessary for any residue data.
pub fn trace_necessity(inst: &Instance) -> bool {
    trace_defect(inst).is_zero()
}

/// `deg E + sum_x trace A(x)`
pub fn trace_defect(inst: &Instance) -> Scalar {
    Scalar::from_int(inst.st.degree()) + inst.residues.total_trace()
}

/// Per-point rigidity verdicts in marked-point order.
pub fn rigidity(inst: &Instance) -> Vec<(Scalar, bool)> {
    inst.residues
        .iter()
        .map(|(x, a)| (x.clone(), is_rigid(&inst.st, x, a)))
        .collect()
}

fn ensure_rigid(inst: &Instance) -> Result<()> {
    match rigidity(inst).into_iter().find(|(_, rigid)| !rigid) {
        Some((x, _)) => Err(Error::NotRigid(x)),
        None => Ok(()),
    }
}

/// The vector `a_i + sum_x A(x)_ii` over the canonical summands.
///
/// Every residue must be rigid. A rigid residue preserves each summand, so
/// its off-diagonal entries vanish; a violation is reported as
/// [`Error::SummandNotPreserved`] and indicates an internal inconsistency.
pub fn summand_conditions(inst: &Instance) -> Result<Vec<Scalar>> {
    ensure_rigid(inst)?;
    let r = inst.rank();
    for (x, a) in inst.residues.iter() {
        for i in 0..r {
            if (0..r).any(|j| j != i && (!a[(i, j)].is_zero() || !a[(j, i)].is_zero())) {
                debug_assert!(false, "rigid residue at {x} mixes summand {i}");
                return Err(Error::SummandNotPreserved {
                    point: x.clone(),
                    summand: i + 1,
                });
            }
        }
    }
    Ok(inst
        .st
        .degrees()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            inst.residues
                .iter()
                .fold(Scalar::from_int(a), |acc, (_, m)| acc + &m[(i, i)])
        })
        .collect())
}

/// True iff every summand condition vanishes.
pub fn rigid_criterion(inst: &Instance) -> Result<bool> {
    Ok(summand_conditions(inst)?.iter().all(Scalar::is_zero))
}
