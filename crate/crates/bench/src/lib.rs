//! Fixed instances used by the criterion benchmarks.

use logconn::{validate_instance, Instance, Mat, Scalar};

/// `O(1) + O(-1)` with two upper-triangular residues; feasible.
pub fn worked_instance() -> Instance {
    let q = Scalar::from_int;
    validate_instance(
        &[1, -1],
        &[q(0), q(1)],
        &[
            (q(0), Mat::from_ints(&[&[-2, 5], &[0, 3]])),
            (q(1), Mat::from_ints(&[&[1, 7], &[0, -2]])),
        ],
    )
    .expect("valid instance")
}

/// A feasible instance of the given degrees: residues are upper triangular
/// on the off-diagonal blocks that carry no condition, and the diagonal at
/// the last point absorbs the degree.
pub fn graded_instance(degrees: &[i64], n_points: usize) -> Instance {
    assert!(n_points > 0);
    let r = degrees.len();
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let points: Vec<Scalar> = (0..n_points as i64).map(|k| Scalar::new(k, 1 + k % 3)).collect();
    let mut residues = Vec::new();
    for (p, x) in points.iter().enumerate() {
        let mut m = Mat::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                if sorted[i] > sorted[j] {
                    m[(i, j)] = Scalar::from_int((i * 3 + j + p) as i64 % 5 - 2);
                }
            }
            m[(i, i)] = if p + 1 == n_points {
                -Scalar::from_int(sorted[i]) - Scalar::from_int(p as i64)
            } else {
                Scalar::one()
            };
        }
        residues.push((x.clone(), m));
    }
    validate_instance(&sorted, &points, &residues).expect("valid instance")
}
