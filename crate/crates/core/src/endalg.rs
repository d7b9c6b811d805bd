//! Global endomorphisms `H^0(End E)`, their values on fibers, and rigidity.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::bundle::SplittingType;
use crate::exactfield::{Mat, Poly, Scalar};

/// A fiber endomorphism `End(E_x)`, written in the splitting basis.
pub type FiberEndo = Mat;

/// An `r x r` matrix of polynomials in the chart-0 coordinate. Entry `(i, j)`
/// maps summand `j` into summand `i`; it is a global section of `End E`
/// exactly when every entry `(i, j)` has degree at most `a_i - a_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EndoSection {
    rank: usize,
    entries: Vec<Poly>,
}

impl EndoSection {
    pub fn zero(rank: usize) -> Self {
        EndoSection {
            rank,
            entries: vec![Poly::zero(); rank * rank],
        }
    }

    pub fn identity(rank: usize) -> Self {
        let mut s = EndoSection::zero(rank);
        for i in 0..rank {
            s.entries[i * rank + i] = Poly::one();
        }
        s
    }

    /// `z^k` in position `(i, j)`.
    pub fn monomial(rank: usize, i: usize, j: usize, k: usize) -> Self {
        let mut s = EndoSection::zero(rank);
        s.entries[i * rank + j] = Poly::monomial(Scalar::one(), k);
        s
    }

    pub fn from_entries(rank: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rank * rank, "entry count");
        EndoSection { rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.rank + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Degree bounds `deg (i, j) <= a_i - a_j` (zero entries always pass).
    pub fn is_global_section(&self, st: &SplittingType) -> bool {
        if st.rank() != self.rank {
            return false;
        }
        let a = st.degrees();
        (0..self.rank).all(|i| {
            (0..self.rank).all(|j| match self.entry(i, j).degree() {
                None => true,
                Some(d) => (d as i64) <= a[i] - a[j],
            })
        })
    }

    /// Coordinates in the monomial basis returned by [`global_end_basis`];
    /// `None` when this is not a global section.
    pub fn coordinates(&self, st: &SplittingType) -> Option<Vec<Scalar>> {
        if !self.is_global_section(st) {
            return None;
        }
        let a = st.degrees();
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in 0..self.rank {
                let bound = a[i] - a[j];
                for k in 0..=bound.max(-1) {
                    out.push(self.entry(i, j).coeff(k as usize));
                }
            }
        }
        Some(out)
    }

    pub fn evaluate(&self, x: &Scalar) -> FiberEndo {
        let mut m = Mat::zeros(self.rank, self.rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                m[(i, j)] = self.entry(i, j).eval(x);
            }
        }
        m
    }

    pub fn compose(&self, other: &EndoSection) -> EndoSection {
        assert_eq!(self.rank, other.rank);
        let r = self.rank;
        let mut out = EndoSection::zero(r);
        for i in 0..r {
            for j in 0..r {
                let mut acc = Poly::zero();
                for k in 0..r {
                    acc = &acc + &(self.entry(i, k) * other.entry(k, j));
                }
                out.entries[i * r + j] = acc;
            }
        }
        out
    }

    pub fn sub(&self, other: &EndoSection) -> EndoSection {
        EndoSection {
            rank: self.rank,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `[v, w] = v w - w v`
    pub fn bracket(&self, other: &EndoSection) -> EndoSection {
        self.compose(other).sub(&other.compose(self))
    }

    /// Short name: `E12*z^2`, `Id`, or the full matrix when no short form
    /// applies. Indices are 1-based.
    pub fn label(&self) -> String {
        let nonzero: Vec<(usize, usize)> = (0..self.rank)
            .flat_map(|i| (0..self.rank).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.entry(i, j).is_zero())
            .collect();
        if let [(i, j)] = nonzero[..] {
            let p = self.entry(i, j);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 && p.leading().is_one() {
                let name = format!("E{}{}", i + 1, j + 1);
                return match p.degree().unwrap() {
                    0 => name,
                    1 => format!("{name}*z"),
                    k => format!("{name}*z^{k}"),
                };
            }
        }
        if *self == EndoSection::identity(self.rank) {
            return "Id".into();
        }
        format!("{self:?}")
    }
}

impl fmt::Debug for EndoSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rank)
            .map(|i| {
                let cells: Vec<String> = (0..self.rank).map(|j| self.entry(i, j).render("z")).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `dim H^0(End E) = sum_{i,j} max(0, a_i - a_j + 1)`.
pub fn end_dimension(st: &SplittingType) -> usize {
    let a = st.degrees();
    a.iter()
        .flat_map(|ai| a.iter().map(move |aj| (ai - aj + 1).max(0) as usize))
        .sum()
}

fn basis_cache() -> &'static RwLock<HashMap<SplittingType, Arc<[EndoSection]>>> {
    static CACHE: OnceLock<RwLock<HashMap<SplittingType, Arc<[EndoSection]>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Monomial basis of `H^0(End E)`: `z^k E_ij` for `0 <= k <= a_i - a_j`,
/// ordered by `(i, j, k)`. Memoized per splitting type.
pub fn global_end_basis(st: &SplittingType) -> Arc<[EndoSection]> {
    if let Some(b) = basis_cache().read().unwrap().get(st) {
        return Arc::clone(b);
    }
    let r = st.rank();
    let a = st.degrees();
    let mut basis = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..=(a[i] - a[j]).max(-1) {
                basis.push(EndoSection::monomial(r, i, j, k as usize));
            }
        }
    }
    let basis: Arc<[EndoSection]> = basis.into();
    basis_cache()
        .write()
        .unwrap()
        .entry(st.clone())
        .or_insert(basis)
        .clone()
}

pub fn evaluate_section(beta: &EndoSection, x: &Scalar) -> FiberEndo {
    beta.evaluate(x)
}

/// Linearly independent spanning set of `I(x) = { v(x) : v in H^0(End E) }`,
/// obtained by exact row reduction of the evaluated basis.
pub fn fiber_image_algebra(st: &SplittingType, x: &Scalar) -> Vec<FiberEndo> {
    let r = st.rank();
    let basis = global_end_basis(st);
    let rows: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| b.evaluate(x).entries().to_vec())
        .collect();
    let mut m = Mat::from_rows(rows).expect("uniform rows");
    let rank = m.rref_in_place().len();
    (0..rank)
        .map(|k| {
            let flat = m.row(k);
            Mat::from_rows(flat.chunks(r).map(<[Scalar]>::to_vec).collect()).unwrap()
        })
        .collect()
}

/// `A` is rigid at `x` when it commutes with every element of `I(x)`.
pub fn is_rigid(st: &SplittingType, x: &Scalar, a_x: &FiberEndo) -> bool {
    fiber_image_algebra(st, x)
        .iter()
        .all(|v| a_x.commutator(v).is_zero())
}
