//! Seeded instance generators and independent oracles shared by the
//! integration suites.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use logconn::exactfield::Solution;
use logconn::{validate_instance, Instance, Mat, OneForm, Poly, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// Rational with numerator in `[-bound, bound]` and denominator in `[1, bound]`.
pub fn small_rational(rng: &mut ChaCha8Rng, bound: i64) -> Scalar {
    Scalar::new(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn distinct_points(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Scalar> {
    let mut pts: Vec<Scalar> = Vec::with_capacity(n);
    while pts.len() < n {
        let x = small_rational(rng, bound);
        if !pts.contains(&x) {
            pts.push(x);
        }
    }
    pts
}

pub fn random_degrees(rng: &mut ChaCha8Rng, max_rank: usize, max_abs: i64) -> Vec<i64> {
    let r = rng.gen_range(1..=max_rank);
    let mut d: Vec<i64> = (0..r).map(|_| rng.gen_range(-max_abs..=max_abs)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every entry random.
    Generic,
    /// Satisfies every linear condition by construction whenever `S` is
    /// nonempty.
    Feasible,
    /// `Feasible`, then one entry nudged.
    Perturbed,
    /// Scalar residues, about half of them balanced.
    Scalar,
}

pub const MODES: [Mode; 4] = [Mode::Generic, Mode::Feasible, Mode::Perturbed, Mode::Scalar];

/// Random instance with rank <= `max_rank`, `|a_i| <= max_abs`,
/// `|S| <= max_points` and entries `p/q` with `|p|, q <= bound`. Entries
/// adjusted to meet the linear conditions may exceed the bound.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    mode: Mode,
    max_rank: usize,
    max_abs: i64,
    max_points: usize,
    bound: i64,
) -> Instance {
    let a = random_degrees(rng, max_rank, max_abs);
    let r = a.len();
    let m = rng.gen_range(0..=max_points);
    let pts = distinct_points(rng, m, bound);
    let mut mats: Vec<Mat> = vec![Mat::zeros(r, r); m];
    match mode {
        Mode::Generic => {
            for mat in &mut mats {
                for i in 0..r {
                    for j in 0..r {
                        mat[(i, j)] = small_rational(rng, bound);
                    }
                }
            }
        }
        Mode::Feasible | Mode::Perturbed => {
            fill_feasible(rng, &a, &pts, &mut mats, bound);
            if mode == Mode::Perturbed && m > 0 {
                let p = rng.gen_range(0..m);
                let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
                let bump = Scalar::new(rng.gen_range(1..=bound), rng.gen_range(1..=bound));
                mats[p][(i, j)] += &bump;
            }
        }
        Mode::Scalar => {
            let mut lambdas: Vec<Scalar> = (0..m).map(|_| small_rational(rng, bound)).collect();
            if m > 0 && rng.gen_bool(0.5) {
                let rest: Scalar = lambdas[..m - 1].iter().sum();
                lambdas[m - 1] = -Scalar::from_int(a[0]) - rest;
            }
            for (mat, l) in mats.iter_mut().zip(&lambdas) {
                *mat = Mat::scalar(r, l.clone());
            }
        }
    }
    let residues: Vec<(Scalar, Mat)> = pts.iter().cloned().zip(mats).collect();
    validate_instance(&a, &pts, &residues).expect("generated instance is valid")
}

/// Chooses residues meeting `a_i + sum_x A_ii(x) = 0` and the moment
/// conditions `sum_x A_ij(x) x^k = 0, 0 <= k <= a_j - a_i` for `a_i <= a_j`.
fn fill_feasible(rng: &mut ChaCha8Rng, a: &[i64], pts: &[Scalar], mats: &mut [Mat], bound: i64) {
    let r = a.len();
    let m = pts.len();
    if m == 0 {
        return;
    }
    for i in 0..r {
        for j in 0..r {
            let free = |rng: &mut ChaCha8Rng| small_rational(rng, bound);
            if i == j {
                let mut total = Scalar::zero();
                for mat in mats.iter_mut().take(m - 1) {
                    let v = free(rng);
                    total += &v;
                    mat[(i, i)] = v;
                }
                mats[m - 1][(i, i)] = -Scalar::from_int(a[i]) - total;
            } else if a[i] > a[j] {
                for mat in mats.iter_mut() {
                    mat[(i, j)] = free(rng);
                }
            } else {
                let conds = (a[j] - a[i] + 1) as usize;
                if m <= conds {
                    continue;
                }
                let chosen: Vec<Scalar> = (0..m - conds).map(|_| free(rng)).collect();
                // solve the Vandermonde block for the last `conds` points
                let mut vm = Mat::zeros(conds, conds);
                let mut rhs = vec![Scalar::zero(); conds];
                for k in 0..conds {
                    for (c, x) in pts[m - conds..].iter().enumerate() {
                        vm[(k, c)] = x.pow(k as i32);
                    }
                    rhs[k] = -chosen
                        .iter()
                        .zip(pts)
                        .map(|(v, x)| v * &x.pow(k as i32))
                        .sum::<Scalar>();
                }
                let Solution::Solved { particular, .. } = vm.solve(&rhs) else {
                    panic!("Vandermonde on distinct points is invertible");
                };
                for (p, v) in chosen.into_iter().chain(particular).enumerate() {
                    mats[p][(i, j)] = v;
                }
            }
        }
    }
}

/// A random form assembled from its partial-fraction decomposition, together
/// with the residues it was built from (finite poles, then infinity).
pub struct KnownForm {
    pub form: OneForm,
    pub poles: Vec<Scalar>,
    pub residues: Vec<Scalar>,
    pub residue_at_infinity: Scalar,
}

/// `sum_x sum_m c_{x,m} dz/(z - x)^m + p(z) dz`. Partial-fraction oracle:
/// the residue at `x` is `c_{x,1}`; at infinity it is `-sum_x c_{x,1}`
/// because `p(z) dz` has none there.
pub fn known_form(rng: &mut ChaCha8Rng) -> KnownForm {
    let n = rng.gen_range(0..=4);
    let poles = distinct_points(rng, n, 6);
    let mut form = OneForm::zero();
    let mut residues = Vec::new();
    for x in &poles {
        let order = rng.gen_range(1..=3);
        let mut res = Scalar::zero();
        for mult in 1..=order {
            let c = small_rational(rng, 7);
            if mult == 1 {
                res = c.clone();
            }
            let den = (0..mult).fold(Poly::one(), |acc, _| &acc * &Poly::linear_root(x));
            form = &form + &OneForm::new(Poly::constant(c), den);
        }
        residues.push(res);
    }
    let deg = rng.gen_range(0..=2);
    let p = Poly::from_coeffs((0..=deg).map(|_| small_rational(rng, 5)).collect());
    form = &form + &OneForm::polynomial(p);
    let total: Scalar = residues.iter().sum();
    KnownForm {
        form,
        poles,
        residues,
        residue_at_infinity: -total,
    }
}

/// Brute-force count of monomial endomorphisms `z^k E_ij` (k up to
/// `search`) whose chart-1 expression `z^{a_j - a_i + k}` is a polynomial in
/// `w = 1/z`.
pub fn brute_force_end_dimension(a: &[i64], search: i64) -> usize {
    let mut count = 0;
    for &ai in a {
        for &aj in a {
            for k in 0..=search {
                let w_exponent = -(aj - ai + k);
                if w_exponent >= 0 {
                    count += 1;
                }
            }
        }
    }
    count
}

/// All non-increasing integer lists of length `r` with entries in
/// `[-bound, bound]`.
pub fn splitting_types(r: usize, bound: i64) -> Vec<Vec<i64>> {
    fn rec(r: usize, hi: i64, lo: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if acc.len() == r {
            out.push(acc.clone());
            return;
        }
        for v in (lo..=hi).rev() {
            acc.push(v);
            rec(r, v, lo, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, bound, -bound, &mut Vec::new(), &mut out);
    out
}

/// Every `r x r` matrix with entries drawn from `grid`.
pub fn matrix_grid(r: usize, grid: &[i64]) -> Vec<Mat> {
    let cells = r * r;
    let mut out = Vec::new();
    let mut idx = vec![0usize; cells];
    loop {
        let rows: Vec<Vec<Scalar>> = (0..r)
            .map(|i| (0..r).map(|j| q(grid[idx[i * r + j]])).collect())
            .collect();
        out.push(Mat::from_rows(rows).unwrap());
        let mut c = 0;
        loop {
            if c == cells {
                return out;
            }
            idx[c] += 1;
            if idx[c] < grid.len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}
