//! Vector bundles `E = O(a_1) + ... + O(a_r)` on the projective line and the
//! residue prescriptions attached to them.
//!
//! Two charts: `U0` with coordinate `z` and `U1` with `w = 1/z`. A section is
//! a column `s0` over `U0` and `s1` over `U1` related by `s0 = g s1` with
//! `g = diag(z^{a_i})`, so the global sections of `O(a)` are the
//! polynomials of degree at most `a`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{Mat, Scalar};

/// The degrees `a_1 >= a_2 >= ... >= a_r` of the line-bundle summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingType {
    degrees: Vec<i64>,
}

impl SplittingType {
    /// Sorts descending. Fails on an empty list.
    pub fn new(mut degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptySplittingType);
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SplittingType { degrees })
    }

    /// Sorts descending and also returns the permutation used: position `k`
    /// of the sorted list came from position `perm[k]` of the input.
    pub fn normalize(raw: &[i64]) -> Result<(Self, Vec<usize>)> {
        if raw.is_empty() {
            return Err(Error::EmptySplittingType);
        }
        let mut perm: Vec<usize> = (0..raw.len()).collect();
        perm.sort_by(|&i, &j| raw[j].cmp(&raw[i]));
        let degrees = perm.iter().map(|&i| raw[i]).collect();
        Ok((SplittingType { degrees }, perm))
    }

    pub fn line(n: i64) -> Self {
        SplittingType { degrees: vec![n] }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// `deg E = sum a_i`.
    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn transition(&self) -> Transition {
        Transition {
            exponents: self.degrees.clone(),
        }
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|a| format!("O({a})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The diagonal transition `g = diag(z^{e_1}, ..., z^{e_r})` on `U0 ∩ U1`,
/// with `s0 = g s1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    exponents: Vec<i64>,
}

impl Transition {
    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Exponent of `z` by which entry `(i, j)` of a chart-0 endomorphism (or
    /// connection form) is multiplied under `X -> g^{-1} X g`.
    pub fn conjugation_exponent(&self, i: usize, j: usize) -> i64 {
        self.exponents[j] - self.exponents[i]
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "z".to_string(),
                _ => format!("z^{e}"),
            })
            .collect();
        format!("diag({})", parts.join(", "))
    }
}

/// Distinct finite points of the affine chart.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MarkedPoints {
    points: Vec<Scalar>,
}

impl MarkedPoints {
    pub fn new(points: Vec<Scalar>) -> Result<Self> {
        for (k, p) in points.iter().enumerate() {
            if points[..k].contains(p) {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        Ok(MarkedPoints { points })
    }

    pub fn empty() -> Self {
        MarkedPoints::default()
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.points.contains(x)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.points.iter()
    }
}

/// One residue matrix per marked point, kept in marked-point order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ResidueData {
    assignment: Vec<(Scalar, Mat)>,
}

impl ResidueData {
    pub fn new(assignment: Vec<(Scalar, Mat)>) -> Self {
        ResidueData { assignment }
    }

    /// Pairs points with matrices positionally.
    pub fn from_points(points: &MarkedPoints, matrices: Vec<Mat>) -> Result<Self> {
        if points.len() != matrices.len() {
            return Err(Error::ResidueCount {
                expected: points.len(),
                got: matrices.len(),
            });
        }
        Ok(ResidueData {
            assignment: points.iter().cloned().zip(matrices).collect(),
        })
    }

    pub fn get(&self, x: &Scalar) -> Option<&Mat> {
        self.assignment.iter().find(|(p, _)| p == x).map(|(_, m)| m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Scalar, &Mat)> {
        self.assignment.iter().map(|(p, m)| (p, m))
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// `sum_x trace A(x)`
    pub fn total_trace(&self) -> Scalar {
        self.assignment.iter().map(|(_, m)| m.trace()).sum()
    }
}

/// A validated problem: bundle, marked points and residues, all written in
/// the descending splitting basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub st: SplittingType,
    pub points: MarkedPoints,
    pub residues: ResidueData,
}

impl Instance {
    pub fn rank(&self) -> usize {
        self.st.rank()
    }

    /// Matrix of `A(x)`, for marked points in order.
    pub fn residue_matrices(&self) -> impl Iterator<Item = (&Scalar, &Mat)> {
        self.residues.iter()
    }
}

/// Checks dimensions and distinctness and returns a normalized instance.
///
/// `raw_degrees` may be in any order; residues are given in the basis of
/// that order and are permuted along with the degrees.
pub fn validate_instance(
    raw_degrees: &[i64],
    points: &[Scalar],
    residues: &[(Scalar, Mat)],
) -> Result<Instance> {
    let (st, perm) = SplittingType::normalize(raw_degrees)?;
    let marked = MarkedPoints::new(points.to_vec())?;
    let r = st.rank();
    for (k, (p, _)) in residues.iter().enumerate() {
        if !marked.contains(p) {
            return Err(Error::UnexpectedResidue(p.clone()));
        }
        if residues[..k].iter().any(|(q, _)| q == p) {
            return Err(Error::DuplicatePoint(p.clone()));
        }
    }
    let mut assignment = Vec::with_capacity(marked.len());
    for x in marked.iter() {
        let m = residues
            .iter()
            .find(|(p, _)| p == x)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::MissingResidue(x.clone()))?;
        if m.rows() != r || m.cols() != r {
            return Err(Error::DimensionMismatch {
                point: x.clone(),
                expected: r,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let mut permuted = Mat::zeros(r, r);
        for k in 0..r {
            for l in 0..r {
                permuted[(k, l)] = m[(perm[k], perm[l])].clone();
            }
        }
        assignment.push((x.clone(), permuted));
    }
    Ok(Instance {
        st,
        points: marked,
        residues: ResidueData::new(assignment),
    })
}
