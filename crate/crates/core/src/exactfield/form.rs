use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{Poly, Scalar};

/// A point of the projective line: a finite coordinate in the chart `z`, or
/// the point at infinity (`w = 1/z = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(Scalar),
    Infinity,
}

impl From<Scalar> for Point {
    fn from(x: Scalar) -> Self {
        Point::Finite(x)
    }
}

impl From<&Scalar> for Point {
    fn from(x: &Scalar) -> Self {
        Point::Finite(x.clone())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(x) => write!(f, "{x}"),
            Point::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("denominator of a one-form must be nonzero")]
    ZeroDenominator,
}

/// The rational one-form `(numer / denom) dz`.
///
/// Canonical: `denom` is monic and coprime to `numer`; the zero form is
/// `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawForm")]
pub struct OneForm {
    numer: Poly,
    denom: Poly,
}

#[derive(Deserialize)]
struct RawForm {
    numer: Poly,
    denom: Poly,
}

impl TryFrom<RawForm> for OneForm {
    type Error = FormError;

    fn try_from(raw: RawForm) -> Result<Self, FormError> {
        OneForm::try_new(raw.numer, raw.denom)
    }
}

impl OneForm {
    pub fn try_new(numer: Poly, denom: Poly) -> Result<Self, FormError> {
        if denom.is_zero() {
            return Err(FormError::ZeroDenominator);
        }
        if numer.is_zero() {
            return Ok(OneForm::zero());
        }
        let g = numer.gcd(&denom);
        let (mut n, mut d) = (numer.div_rem(&g).0, denom.div_rem(&g).0);
        let lead = d.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(OneForm { numer: n, denom: d })
    }

    /// Panics on a zero denominator.
    pub fn new(numer: Poly, denom: Poly) -> Self {
        Self::try_new(numer, denom).expect("zero denominator")
    }

    pub fn zero() -> Self {
        OneForm {
            numer: Poly::zero(),
            denom: Poly::one(),
        }
    }

    /// `p(z) dz`
    pub fn polynomial(p: Poly) -> Self {
        OneForm {
            numer: p,
            denom: Poly::one(),
        }
    }

    /// `c dz / (z - x)`
    pub fn simple_pole(c: Scalar, x: &Scalar) -> Self {
        OneForm::new(Poly::constant(c), Poly::linear_root(x))
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> OneForm {
        OneForm::new(self.numer.scale(c), self.denom.clone())
    }

    /// Multiplies the coefficient function by `num / den`.
    pub fn mul_rational(&self, num: &Poly, den: &Poly) -> OneForm {
        OneForm::new(&self.numer * num, &self.denom * den)
    }

    /// Multiplies the coefficient function by `z^k`, `k` of either sign.
    pub fn mul_z_power(&self, k: i64) -> OneForm {
        let mono = Poly::monomial(Scalar::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            self.mul_rational(&mono, &Poly::one())
        } else {
            self.mul_rational(&Poly::one(), &mono)
        }
    }

    /// Laurent coefficients of the coefficient function at the finite point
    /// `x`, as `(start, coeffs)` where `coeffs[k]` multiplies
    /// `(z - x)^(start + k)`. `start` is `-pole_order`, and the list runs
    /// through exponent `through`.
    pub fn laurent_at(&self, x: &Scalar, through: i64) -> (i64, Vec<Scalar>) {
        let n = self.numer.shift_var(x);
        let d = self.denom.shift_var(x);
        let v = d.valuation().expect("nonzero denominator");
        let d1 = d.shift_down(v);
        // numerator vanishing at x is absorbed by the series itself
        let start = -(v as i64);
        if through < start {
            return (start, Vec::new());
        }
        let terms = (through - start + 1) as usize;
        let inv0 = d1.coeff(0).recip();
        let mut series: Vec<Scalar> = Vec::with_capacity(terms);
        for k in 0..terms {
            let mut acc = n.coeff(k);
            for i in 1..=k.min(d1.degree().unwrap_or(0)) {
                acc -= &(&d1.coeff(i) * &series[k - i]);
            }
            series.push(acc * &inv0);
        }
        (start, series)
    }

    /// Order of the pole at `point` (0 when holomorphic there).
    pub fn pole_order(&self, point: &Point) -> usize {
        match point {
            Point::Finite(x) => {
                if self.is_zero() {
                    return 0;
                }
                // coprime, so numer and denom never vanish together
                self.denom.shift_var(x).valuation().unwrap_or(0)
            }
            Point::Infinity => self.to_infinity_chart().pole_order(&Point::Finite(Scalar::zero())),
        }
    }

    pub fn is_holomorphic_at(&self, point: &Point) -> bool {
        self.pole_order(point) == 0
    }

    /// Coefficient of `dz / (z - x)` at a finite point; at infinity, the
    /// coefficient of `dw / w` after substituting `z = 1/w`.
    pub fn residue_at(&self, point: &Point) -> Scalar {
        match point {
            Point::Finite(x) => {
                let (start, series) = self.laurent_at(x, -1);
                if start > -1 {
                    Scalar::zero()
                } else {
                    series[(-1 - start) as usize].clone()
                }
            }
            Point::Infinity => self
                .to_infinity_chart()
                .residue_at(&Point::Finite(Scalar::zero())),
        }
    }

    /// Rewrites the form in the coordinate `w = 1/z` (so `dz = -dw / w^2`).
    /// The result is again a `OneForm`, now read in `w`.
    pub fn to_infinity_chart(&self) -> OneForm {
        if self.is_zero() {
            return OneForm::zero();
        }
        let p = self.numer.degree().unwrap();
        let q = self.denom.degree().unwrap();
        let rn = -&self.numer.reversed(p);
        let rd = self.denom.reversed(q);
        // f(1/w) = w^(q-p) rn/rd, times -1/w^2
        let e = q as i64 - p as i64 - 2;
        if e >= 0 {
            OneForm::new(rn.shift_up(e as usize), rd)
        } else {
            OneForm::new(rn, rd.shift_up((-e) as usize))
        }
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let num = self.numer.render(var);
        if self.denom.is_one() {
            if self.numer.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
                format!("{num} d{var}")
            } else {
                format!("({num}) d{var}")
            }
        } else {
            format!("({num}) d{var} / ({})", self.denom.render(var))
        }
    }

    pub fn render_latex(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let tex = |p: &Poly| p.render(var).replace('*', " ");
        if self.denom.is_one() {
            format!("\\left({}\\right)\\,d{var}", tex(&self.numer))
        } else {
            format!(
                "\\frac{{{}}}{{{}}}\\,d{var}",
                tex(&self.numer),
                tex(&self.denom)
            )
        }
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OneForm[{}]", self.render("z"))
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("z"))
    }
}

impl Add for &OneForm {
    type Output = OneForm;
    fn add(self, rhs: &OneForm) -> OneForm {
        if self.denom == rhs.denom {
            return OneForm::new(&self.numer + &rhs.numer, self.denom.clone());
        }
        OneForm::new(
            &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom),
            &self.denom * &rhs.denom,
        )
    }
}

impl Sub for &OneForm {
    type Output = OneForm;
    fn sub(self, rhs: &OneForm) -> OneForm {
        self + &(-rhs)
    }
}

impl Neg for &OneForm {
    type Output = OneForm;
    fn neg(self) -> OneForm {
        OneForm {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }
}
