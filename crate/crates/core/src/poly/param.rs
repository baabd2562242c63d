//! `Q[a]` as a coefficient ring, so that `Polynomial<QPoly>` is `Q[a][x]`.

use num_traits::Zero;

use super::{CoefficientRing, Coeff, Polynomial};
use crate::{QPoly, QaPoly, Rational};

impl Coeff for QPoly {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs).ok()?;
        r.is_zero().then_some(q)
    }
    fn from_i64(v: i64) -> Self {
        Polynomial::constant(Rational::from_i64(v))
    }
    fn ring_of(_: u64) -> CoefficientRing {
        CoefficientRing::ParamRing
    }
    fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }
    fn display_parts(&self) -> (bool, String, bool) {
        let nonzero = self.coeffs().iter().filter(|c| !c.is_zero()).count();
        if nonzero == 1 {
            let k = self.deg();
            let single = Polynomial::monomial(-self.coeff(k), k);
            let lead_negative = self.coeff(k) < Rational::zero();
            if lead_negative {
                return (true, single.display_var("a"), false);
            }
            return (false, self.display_var("a"), false);
        }
        (false, self.display_var("a"), true)
    }
}

impl QaPoly {
    /// Substitute a rational value for the parameter `a`.
    pub fn specialize(&self, a: &Rational) -> QPoly {
        self.map_coeffs(|c| c.eval(a))
    }

    /// View a rational polynomial as a constant family.
    pub fn lift(p: &QPoly) -> Self {
        p.map_coeffs(|c| QPoly::constant(c.clone()))
    }

    /// The parameter `a` as a constant in `x`.
    pub fn param() -> Self {
        Polynomial::constant(QPoly::x())
    }

    /// Whether any coefficient actually depends on `a`.
    pub fn depends_on_param(&self) -> bool {
        self.coeffs().iter().any(|c| c.deg() > 0)
    }

    /// Drop the parameter when every coefficient is constant.
    pub fn to_rational(&self) -> Option<QPoly> {
        if self.depends_on_param() {
            return None;
        }
        Some(self.map_coeffs(|c| c.coeff(0)))
    }

    /// Largest degree in `a` over all coefficients.
    pub fn param_degree(&self) -> usize {
        self.coeffs().iter().map(|c| c.deg()).max().unwrap_or(0)
    }
}

impl QPoly {
    pub fn is_integral(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_integer())
    }
}
