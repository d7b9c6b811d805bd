//! The obstruction functional on `H^0(End E)`.
//!
//! The extension class of the residue-constrained Atiyah sequence lives in
//! `H^1(End E ⊗ K)`, which Serre duality identifies with the dual of
//! `H^0(End E)`. As a functional it reads
//!
//! ```text
//! phi(beta) = sum_i a_i beta_ii + sum_{x in S} trace(A(x) beta(x))
//! ```
//!
//! where the first term is the Atiyah class of `E = ⊕ O(a_i)` and the second
//! collects the point contributions. A logarithmic connection with the
//! prescribed residues exists iff `phi` vanishes on every basis element.

use serde::{Deserialize, Serialize};

use crate::bundle::{Instance, SplittingType};
use crate::endalg::{global_end_basis, EndoSection, FiberEndo};
use crate::exactfield::Scalar;

/// `trace(alpha ∘ beta(y))`
pub fn gamma_pair(alpha: &FiberEndo, beta_at_x: &FiberEndo) -> Scalar {
    assert_eq!(alpha.cols(), beta_at_x.rows(), "dimension mismatch");
    assert_eq!(alpha.rows(), beta_at_x.cols(), "dimension mismatch");
    (0..alpha.rows())
        .flat_map(|i| (0..alpha.cols()).map(move |k| (i, k)))
        .map(|(i, k)| &alpha[(i, k)] * &beta_at_x[(k, i)])
        .sum()
}

/// Atiyah-class pairing `sum_i a_i beta_ii`, normalized so the identity
/// pairs to `deg E`. Diagonal entries of a global section are constants.
pub fn atiyah_pair(st: &SplittingType, beta: &EndoSection) -> Scalar {
    st.degrees()
        .iter()
        .enumerate()
        .map(|(i, &a)| &Scalar::from_int(a) * &beta.entry(i, i).coeff(0))
        .sum()
}

/// Value of the obstruction functional on an arbitrary section.
pub fn functional(inst: &Instance, beta: &EndoSection) -> Scalar {
    let mut v = atiyah_pair(&inst.st, beta);
    for (x, a) in inst.residues.iter() {
        v += &gamma_pair(a, &beta.evaluate(x));
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisValue {
    pub basis: String,
    pub value: Scalar,
}

/// Obstruction values over the monomial basis of `H^0(End E)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub exists: bool,
    pub values: Vec<BasisValue>,
}

impl ObstructionReport {
    pub fn value_of(&self, label: &str) -> Option<&Scalar> {
        self.values.iter().find(|v| v.basis == label).map(|v| &v.value)
    }

    /// Basis elements with a nonzero value.
    pub fn failures(&self) -> impl Iterator<Item = &BasisValue> {
        self.values.iter().filter(|v| !v.value.is_zero())
    }
}

pub fn obstruction_values(inst: &Instance) -> ObstructionReport {
    let basis = global_end_basis(&inst.st);
    let values: Vec<BasisValue> = basis
        .iter()
        .map(|b| BasisValue {
            basis: b.label(),
            value: functional(inst, b),
        })
        .collect();
    let exists = values.iter().all(|v| v.value.is_zero());
    ObstructionReport { exists, values }
}

pub fn decide_existence(inst: &Instance) -> bool {
    obstruction_values(inst).exists
}
