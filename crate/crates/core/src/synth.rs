//! Explicit logarithmic connections as certificates.
//!
//! A connection on `E = ⊕ O(a_i)` is written on `U0` as `D = d + omega0`,
//! with `omega0` an `r x r` matrix of rational one-forms in `z`. With
//! `s0 = g s1` and `g = diag(z^{a_i})`, the same connection on `U1` is
//!
//! ```text
//! omega1 = g^{-1} omega0 g + g^{-1} dg,    (g^{-1} dg)_ii = a_i dz / z
//! ```
//!
//! read in `w = 1/z`. Residues are the coefficient matrices of `dz/(z-x)`.

use serde::{Deserialize, Serialize};

use crate::bundle::{Instance, MarkedPoints, ResidueData, SplittingType};
use crate::error::{Error, Result};
use crate::exactfield::{Mat, OneForm, Point, Poly, Scalar, Solution};

/// A candidate logarithmic connection, given by its chart-0 form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionPresentation {
    pub st: SplittingType,
    pub points: MarkedPoints,
    /// Row-major `r x r`.
    pub omega0: Vec<OneForm>,
}

impl ConnectionPresentation {
    pub fn rank(&self) -> usize {
        self.st.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &OneForm {
        &self.omega0[i * self.rank() + j]
    }

    /// `omega1 = g^{-1} omega0 g + g^{-1} dg`, rewritten in `w`.
    pub fn chart1_form(&self) -> Vec<OneForm> {
        let r = self.rank();
        let g = self.st.transition();
        let mut out = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                let mut f = self.entry(i, j).mul_z_power(g.conjugation_exponent(i, j));
                if i == j {
                    let log_dg = OneForm::simple_pole(Scalar::from_int(g.exponents()[i]), &Scalar::zero());
                    f = &f + &log_dg;
                }
                out.push(f.to_infinity_chart());
            }
        }
        out
    }

    /// Residue matrix at a finite point.
    pub fn residue_matrix(&self, x: &Scalar) -> Mat {
        let r = self.rank();
        let p = Point::Finite(x.clone());
        let mut m = Mat::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                m[(i, j)] = self.entry(i, j).residue_at(&p);
            }
        }
        m
    }

    /// Residue matrices at every marked point.
    pub fn residues(&self) -> ResidueData {
        ResidueData::new(
            self.points
                .iter()
                .map(|x| (x.clone(), self.residue_matrix(x)))
                .collect(),
        )
    }
}

/// `omega0 = sum_x lambda_x dz/(z - x)` on `O(n)`, when `n + sum lambda = 0`.
pub fn line_bundle_connection(
    n: i64,
    points: &MarkedPoints,
    lambdas: &[Scalar],
) -> Result<ConnectionPresentation> {
    if lambdas.len() != points.len() {
        return Err(Error::ResidueCount {
            expected: points.len(),
            got: lambdas.len(),
        });
    }
    let defect = lambdas.iter().sum::<Scalar>() + Scalar::from_int(n);
    if !defect.is_zero() {
        return Err(Error::Infeasible(format!(
            "degree plus residue sum is {defect}, not 0"
        )));
    }
    let omega = points
        .iter()
        .zip(lambdas)
        .fold(OneForm::zero(), |acc, (x, l)| &acc + &OneForm::simple_pole(l.clone(), x));
    Ok(ConnectionPresentation {
        st: SplittingType::line(n),
        points: points.clone(),
        omega0: vec![omega],
    })
}

/// Affine dimension of the space of connections with fixed residues, when
/// nonempty: `sum_{i,j} max(0, a_i - a_j - 1)`. Independent of the marked
/// points.
pub fn solution_space_dim(st: &SplittingType) -> usize {
    let a = st.degrees();
    a.iter()
        .flat_map(|ai| a.iter().map(move |aj| (ai - aj - 1).max(0) as usize))
        .sum()
}

/// The exact linear system behind [`synthesize`].
///
/// Ansatz: `(omega0)_ij = sum_x A(x)_ij dz/(z - x) + p_ij(z) dz` with every
/// `p_ij` of degree at most `max a - min a`. The equations say that every
/// negative Laurent coefficient of `omega1` at `w = 0` vanishes.
#[derive(Clone, Debug)]
pub struct SynthesisSystem {
    rank: usize,
    poly_len: usize,
    base: Vec<OneForm>,
    pub matrix: Mat,
    pub rhs: Vec<Scalar>,
}

impl SynthesisSystem {
    pub fn build(inst: &Instance) -> Self {
        let st = &inst.st;
        let r = st.rank();
        let a = st.degrees();
        let poly_len = (a[0] - a[r - 1] + 1) as usize;
        let g = st.transition();

        let base: Vec<OneForm> = (0..r * r)
            .map(|e| {
                let (i, j) = (e / r, e % r);
                inst.residues.iter().fold(OneForm::zero(), |acc, (x, m)| {
                    &acc + &OneForm::simple_pole(m[(i, j)].clone(), x)
                })
            })
            .collect();
        let shell = ConnectionPresentation {
            st: st.clone(),
            points: inst.points.clone(),
            omega0: base.clone(),
        };
        let base1 = shell.chart1_form();
        let origin = Scalar::zero();

        // principal parts at w = 0, one block of equations per entry
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs = Vec::new();
        let unknowns = r * r * poly_len;
        for (e, entry1) in base1.iter().enumerate() {
            let (i, j) = (e / r, e % r);
            let shift = g.conjugation_exponent(i, j);
            let columns: Vec<(usize, OneForm)> = (0..poly_len)
                .map(|k| {
                    let f = OneForm::polynomial(Poly::monomial(Scalar::one(), k))
                        .mul_z_power(shift)
                        .to_infinity_chart();
                    (e * poly_len + k, f)
                })
                .collect();
            let depth = columns
                .iter()
                .map(|(_, f)| f.pole_order(&Point::Finite(origin.clone())))
                .chain(std::iter::once(entry1.pole_order(&Point::Finite(origin.clone()))))
                .max()
                .unwrap_or(0) as i64;
            let coeff_at = |f: &OneForm, m: i64| -> Scalar {
                let (start, series) = f.laurent_at(&origin, -1);
                if m < start {
                    Scalar::zero()
                } else {
                    series[(m - start) as usize].clone()
                }
            };
            for m in -depth..0 {
                let mut row = vec![Scalar::zero(); unknowns];
                for (col, f) in &columns {
                    row[*col] = coeff_at(f, m);
                }
                rows.push(row);
                rhs.push(-coeff_at(entry1, m));
            }
        }
        let matrix = if rows.is_empty() {
            Mat::zeros(0, unknowns)
        } else {
            Mat::from_rows(rows).expect("uniform rows")
        };
        SynthesisSystem {
            rank: r,
            poly_len,
            base,
            matrix,
            rhs,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.matrix.cols()
    }

    pub fn solve(&self) -> Solution {
        self.matrix.solve(&self.rhs)
    }

    /// Dimension of the solution set when consistent.
    pub fn kernel_dim(&self) -> usize {
        self.unknowns() - self.matrix.rank()
    }

    /// Chart-0 form for a given assignment of the polynomial unknowns.
    pub fn assemble(&self, values: &[Scalar]) -> Vec<OneForm> {
        let r = self.rank;
        (0..r * r)
            .map(|e| {
                let p = Poly::from_coeffs(values[e * self.poly_len..(e + 1) * self.poly_len].to_vec());
                &self.base[e] + &OneForm::polynomial(p)
            })
            .collect()
    }
}

/// Solves for a connection with the prescribed residues.
pub fn synthesize(inst: &Instance) -> Result<ConnectionPresentation> {
    let system = SynthesisSystem::build(inst);
    match system.solve() {
        Solution::Solved { particular, .. } => Ok(ConnectionPresentation {
            st: inst.st.clone(),
            points: inst.points.clone(),
            omega0: system.assemble(&particular),
        }),
        Solution::Inconsistent { rank } => Err(Error::Infeasible(format!(
            "synthesis system of {} equations (rank {rank}) has no solution",
            system.matrix.rows()
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckKind {
    PoleDiscipline,
    ResidueMatch,
    ChartHolomorphy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    /// 1-based `(row, column)` of the offending entry, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entry: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: CheckKind,
    pub passed: bool,
    pub failures: Vec<CheckFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn check(&self, kind: CheckKind) -> &CheckResult {
        self.checks.iter().find(|c| c.check == kind).expect("all checks present")
    }

    pub fn failed(&self, kind: CheckKind) -> bool {
        !self.check(kind).passed
    }
}

fn finish(check: CheckKind, failures: Vec<CheckFailure>) -> CheckResult {
    CheckResult {
        check,
        passed: failures.is_empty(),
        failures,
    }
}

/// Strips every factor `(v - root)` for the listed roots; what remains
/// carries the poles outside them.
fn strip_roots(mut d: Poly, roots: &[Scalar]) -> Poly {
    for x in roots {
        let lin = Poly::linear_root(x);
        loop {
            let (qq, rem) = d.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            d = qq;
        }
    }
    d
}

/// Checks a claimed certificate against prescribed residues. Never fails;
/// every problem is listed in the report.
pub fn verify(conn: &ConnectionPresentation, residues: &ResidueData) -> VerifyReport {
    let r = conn.rank();
    let entries = || (0..r).flat_map(|i| (0..r).map(move |j| (i, j)));
    let mut pole = Vec::new();
    let mut resid = Vec::new();
    let mut chart = Vec::new();

    if conn.omega0.len() != r * r {
        let shape = CheckFailure {
            entry: None,
            point: None,
            detail: format!("omega0 has {} entries, expected {}", conn.omega0.len(), r * r),
        };
        return VerifyReport {
            passed: false,
            checks: vec![
                finish(CheckKind::PoleDiscipline, vec![shape.clone()]),
                finish(CheckKind::ResidueMatch, vec![shape.clone()]),
                finish(CheckKind::ChartHolomorphy, vec![shape]),
            ],
        };
    }

    // poles of omega0 on U0: simple, and only on S
    for (i, j) in entries() {
        let f = conn.entry(i, j);
        for x in conn.points.iter() {
            let order = f.pole_order(&Point::Finite(x.clone()));
            if order > 1 {
                pole.push(CheckFailure {
                    entry: Some((i + 1, j + 1)),
                    point: Some(x.to_string()),
                    detail: format!("pole of order {order}"),
                });
            }
        }
        let rest = strip_roots(f.denom().clone(), conn.points.points());
        if rest.degree().unwrap_or(0) > 0 {
            pole.push(CheckFailure {
                entry: Some((i + 1, j + 1)),
                point: None,
                detail: format!("poles outside the marked points, at the roots of {rest}"),
            });
        }
    }

    for x in conn.points.iter() {
        match residues.get(x) {
            None => resid.push(CheckFailure {
                entry: None,
                point: Some(x.to_string()),
                detail: "marked point has no prescribed residue".into(),
            }),
            Some(a) if a.rows() != r || a.cols() != r => resid.push(CheckFailure {
                entry: None,
                point: Some(x.to_string()),
                detail: format!("prescribed residue is {}x{}, bundle has rank {r}", a.rows(), a.cols()),
            }),
            Some(a) => {
                let found = conn.residue_matrix(x);
                for (i, j) in entries() {
                    if found[(i, j)] != a[(i, j)] {
                        resid.push(CheckFailure {
                            entry: Some((i + 1, j + 1)),
                            point: Some(x.to_string()),
                            detail: format!("residue {} but prescribed {}", found[(i, j)], a[(i, j)]),
                        });
                    }
                }
            }
        }
    }
    for (x, _) in residues.iter() {
        if !conn.points.contains(x) {
            resid.push(CheckFailure {
                entry: None,
                point: Some(x.to_string()),
                detail: "prescribed point is not a pole set point of the certificate".into(),
            });
        }
    }

    // omega1 on U1 \ S: holomorphic at w = 0, other poles only at w = 1/x
    let images: Vec<Scalar> = conn
        .points
        .iter()
        .filter(|x| !x.is_zero())
        .map(Scalar::recip)
        .collect();
    let omega1 = conn.chart1_form();
    let origin = Point::Finite(Scalar::zero());
    for (i, j) in entries() {
        let f = &omega1[i * r + j];
        let order = f.pole_order(&origin);
        if order > 0 {
            chart.push(CheckFailure {
                entry: Some((i + 1, j + 1)),
                point: Some("inf".into()),
                detail: format!("pole of order {order} at w = 0"),
            });
        }
        let d = f.denom();
        let rest = strip_roots(d.shift_down(d.valuation().unwrap_or(0)), &images);
        if rest.degree().unwrap_or(0) > 0 {
            chart.push(CheckFailure {
                entry: Some((i + 1, j + 1)),
                point: None,
                detail: format!("poles in the w chart away from the marked points, at the roots of {}", rest.render("w")),
            });
        }
    }

    let checks = vec![
        finish(CheckKind::PoleDiscipline, pole),
        finish(CheckKind::ResidueMatch, resid),
        finish(CheckKind::ChartHolomorphy, chart),
    ];
    VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::validate_instance;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn pts(xs: &[i64]) -> MarkedPoints {
        MarkedPoints::new(xs.iter().map(|&x| q(x)).collect()).unwrap()
    }

    #[test]
    fn calibration_dz_over_z_on_o_minus_one() {
        let c = line_bundle_connection(-1, &pts(&[0]), &[q(1)]).unwrap();
        assert_eq!(c.omega0, vec![OneForm::simple_pole(q(1), &q(0))]);
        assert_eq!(c.chart1_form(), vec![OneForm::zero()]);
        let rep = verify(&c, &c.residues());
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn line_bundle_cases() {
        let c = line_bundle_connection(-2, &pts(&[0, 1]), &[q(1), q(1)]).unwrap();
        let expected = &OneForm::simple_pole(q(1), &q(0)) + &OneForm::simple_pole(q(1), &q(1));
        assert_eq!(c.omega0, vec![expected]);
        assert_eq!(c.omega0[0].residue_at(&Point::Infinity), q(-2));
        assert!(verify(&c, &c.residues()).passed);
        assert!(matches!(
            line_bundle_connection(0, &pts(&[0]), &[q(1)]),
            Err(Error::Infeasible(_))
        ));
    }

    fn worked() -> Instance {
        validate_instance(
            &[1, -1],
            &[q(0), q(1)],
            &[
                (q(0), Mat::from_ints(&[&[-2, 5], &[0, 3]])),
                (q(1), Mat::from_ints(&[&[1, 7], &[0, -2]])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn worked_instance_synthesizes() {
        let inst = worked();
        let c = synthesize(&inst).unwrap();
        let rep = verify(&c, &inst.residues);
        assert!(rep.passed, "{rep:?}");
        let sys = SynthesisSystem::build(&inst);
        assert_eq!(sys.kernel_dim(), 1);
        assert_eq!(solution_space_dim(&inst.st), 1);
    }

    #[test]
    fn scalar_residues_on_trivial_bundle() {
        let inst = validate_instance(
            &[0, 0],
            &[q(0), q(2)],
            &[(q(0), Mat::scalar(2, q(3))), (q(2), Mat::scalar(2, q(-3)))],
        )
        .unwrap();
        let c = synthesize(&inst).unwrap();
        let diag = &OneForm::simple_pole(q(3), &q(0)) + &OneForm::simple_pole(q(-3), &q(2));
        assert_eq!(c.omega0, vec![diag.clone(), OneForm::zero(), OneForm::zero(), diag]);
    }

    #[test]
    fn scalar_residues_on_unbalanced_bundle_fail() {
        let inst = validate_instance(
            &[1, 0],
            &[q(0), q(1)],
            &[(q(0), Mat::scalar(2, q(-1))), (q(1), Mat::scalar(2, q(0)))],
        )
        .unwrap();
        assert!(matches!(synthesize(&inst), Err(Error::Infeasible(_))));
    }

    #[test]
    fn dims() {
        for (d, n) in [(vec![1, -1], 1), (vec![0, 0], 0), (vec![2, -2], 3)] {
            assert_eq!(solution_space_dim(&SplittingType::new(d).unwrap()), n);
        }
    }

    #[test]
    fn verify_flags_tampering() {
        let inst = worked();
        let c = synthesize(&inst).unwrap();

        let mut bumped = c.clone();
        bumped.omega0[1] = &bumped.omega0[1] + &OneForm::simple_pole(q(1), &q(1));
        let rep = verify(&bumped, &inst.residues);
        assert!(!rep.passed);
        assert!(rep.failed(CheckKind::ResidueMatch));
        let f = &rep.check(CheckKind::ResidueMatch).failures[0];
        assert_eq!((f.entry, f.point.as_deref()), (Some((1, 2)), Some("1")));

        let mut extra = c.clone();
        extra.omega0[0] = &extra.omega0[0] + &OneForm::simple_pole(q(1), &q(5));
        let rep = verify(&extra, &inst.residues);
        assert!(rep.failed(CheckKind::PoleDiscipline));

        let mut double = c;
        double.omega0[3] = &double.omega0[3]
            + &OneForm::new(Poly::one(), &Poly::linear_root(&q(0)) * &Poly::linear_root(&q(0)));
        let rep = verify(&double, &inst.residues);
        assert!(rep.failed(CheckKind::PoleDiscipline));
    }

    #[test]
    fn wrong_chart_convention_is_rejected() {
        // dz/z on O(+1) has residue sum 1 + deg = 2 and must fail at infinity.
        let c = ConnectionPresentation {
            st: SplittingType::line(1),
            points: pts(&[0]),
            omega0: vec![OneForm::simple_pole(q(1), &q(0))],
        };
        let rep = verify(&c, &c.residues());
        assert!(rep.failed(CheckKind::ChartHolomorphy));
        assert!(!rep.failed(CheckKind::ResidueMatch));
    }
}
