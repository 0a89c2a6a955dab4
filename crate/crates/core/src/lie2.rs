//! The closed-form linearizability criterion for second-order equations
//! of the cubic form `y″ + F3 y′³ + F2 y′² + F1 y′ + F = 0`.

use crate::canonical::{normalize, CanonicalRat};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jetode::{extract_cubic_form, CubicForm2, RationalODE};
use crate::symbol::Symbol;

/// The two residuals whose simultaneous vanishing is equivalent to
/// linearizability by a point transformation.
#[derive(Clone, Debug)]
pub struct LieResiduals {
    pub r1: CanonicalRat,
    pub r2: CanonicalRat,
}

impl LieResiduals {
    pub fn both_zero(&self) -> bool {
        self.r1.is_zero() && self.r2.is_zero()
    }
}

/// Evaluate the two criterion residuals for a cubic form.
///
/// The conditions are the classical pair of relative invariants whose
/// vanishing characterizes the pullbacks of `u″ = 0`; both residuals are
/// normalized to leading coefficient one on their second-derivative
/// term, so `y″ + y² = 0` yields `R2 = 2`. The
/// `second_order_condition_space` integration test recomputes the full
/// space of conditions of this shape and confirms it is spanned by this
/// pair.
pub fn lie_residuals(c: &CubicForm2) -> Result<LieResiduals> {
    let x = Symbol::X;
    let y = Symbol::Y;
    let f3 = &c.f3;
    let f2 = &c.f2;
    let f1 = &c.f1;
    let f0 = &c.f0;

    let three = Expr::int(3);
    // 3 (F3)_xx - 2 (F2)_xy + (F1)_yy
    let lhs1 = three.clone() * f3.diff_xy(2, 0) - Expr::int(2) * f2.diff_xy(1, 1)
        + f1.diff_xy(0, 2);
    // (3 F1 F3 - F2^2)_x - 3 (F F3)_y - 3 F3 F_y + F2 (F1)_y
    let rhs1 = (three.clone() * f1.clone() * f3.clone() - f2.clone().pow(2)).diff(x)
        - three.clone() * (f0.clone() * f3.clone()).diff(y)
        - three.clone() * f3.clone() * f0.diff(y)
        + f2.clone() * f1.diff(y);
    // 3 F_yy - 2 (F1)_xy + (F2)_xx
    let lhs2 = three.clone() * f0.diff_xy(0, 2) - Expr::int(2) * f1.diff_xy(1, 1)
        + f2.diff_xy(2, 0);
    // 3 (F F3)_x + (F1^2 - 3 F F2)_y + 3 F (F3)_x - F1 (F2)_x
    let rhs2 = three.clone() * (f0.clone() * f3.clone()).diff(x)
        + (f1.clone().pow(2) - three.clone() * f0.clone() * f2.clone()).diff(y)
        + three * f0.clone() * f3.diff(x)
        - f1.clone() * f2.diff(x);

    let third = Expr::ratio(1, 3);
    Ok(LieResiduals {
        r1: normalize(&(third.clone() * (lhs1 - rhs1)))?,
        r2: normalize(&(third * (lhs2 - rhs2)))?,
    })
}

/// Why a second-order equation fails the criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotLinearizableReason {
    /// Not of the cubic candidate form at all.
    NotCandidateForm(String),
    /// One of the residuals is nonzero; carries its rendering.
    NonzeroResidual { which: u8, residual: String },
}

/// Verdict of the second-order decision procedure.
#[derive(Clone, Debug)]
pub enum SecondOrderVerdict {
    Linearizable(LieResiduals),
    NotLinearizable(NotLinearizableReason),
}

/// Decide linearizability of an explicit second-order equation.
pub fn lie_linearizable_2nd(ode: &RationalODE) -> Result<SecondOrderVerdict> {
    assert_eq!(ode.order(), 2);
    let cubic = match extract_cubic_form(ode) {
        Ok(c) => c,
        Err(Error::NotCubicForm(detail)) => {
            return Ok(SecondOrderVerdict::NotLinearizable(
                NotLinearizableReason::NotCandidateForm(detail),
            ))
        }
        Err(e) => return Err(e),
    };
    if cubic.contains_unknowns() {
        return Err(Error::UnknownsPresent(
            "the criterion decides only explicit coefficients".into(),
        ));
    }
    let res = lie_residuals(&cubic)?;
    if res.both_zero() {
        Ok(SecondOrderVerdict::Linearizable(res))
    } else {
        let (which, residual) = if !res.r1.is_zero() {
            (1, res.r1.to_string())
        } else {
            (2, res.r2.to_string())
        };
        Ok(SecondOrderVerdict::NotLinearizable(
            NotLinearizableReason::NonzeroResidual { which, residual },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidate::{dg_total, jacobian_poly, pullback_linear, LinearTarget};
    use crate::jetode::parse_ode;

    fn cubic(f3: Expr, f2: Expr, f1: Expr, f0: Expr) -> CubicForm2 {
        CubicForm2::new(f3, f2, f1, f0)
    }

    #[test]
    fn zero_form_passes() {
        let r = lie_residuals(&cubic(
            Expr::zero(),
            Expr::zero(),
            Expr::zero(),
            Expr::zero(),
        ))
        .unwrap();
        assert!(r.both_zero());
    }

    #[test]
    fn y_squared_fails_with_residual_two() {
        let r = lie_residuals(&cubic(
            Expr::zero(),
            Expr::zero(),
            Expr::zero(),
            Expr::y().pow(2),
        ))
        .unwrap();
        assert!(r.r1.is_zero());
        assert_eq!(r.r2.to_string(), "2");
    }

    #[test]
    fn already_linear_passes() {
        // y'' - y'/x = 0
        let r = lie_residuals(&cubic(
            Expr::zero(),
            Expr::zero(),
            Expr::int(-1).div(Expr::x()),
            Expr::zero(),
        ))
        .unwrap();
        assert!(r.both_zero());
    }

    #[test]
    fn generic_pullback_satisfies_criterion() {
        // the cubic coefficients of the generic pullback of u'' = 0 must
        // annihilate both residuals identically in f, g
        let cand = pullback_linear(2, &LinearTarget::symbolic(2)).unwrap();
        assert_eq!(dg_total().deg_in(Symbol::jet(1)), 1);
        let j = CanonicalRat::from_poly(jacobian_poly());
        let yp = Symbol::jet(1);
        let coeff = |k: u16| {
            CanonicalRat::from_poly(cand.p().coeff_of_power(yp, k))
                .div(&j)
                .unwrap()
                .to_expr()
        };
        let form = cubic(coeff(3), coeff(2), coeff(1), coeff(0));
        let r = lie_residuals(&form).unwrap();
        assert!(
            r.r1.is_zero(),
            "generic pullback violates the first criterion equation: {}",
            r.r1
        );
        assert!(
            r.r2.is_zero(),
            "generic pullback violates the second criterion equation: {}",
            r.r2
        );
    }

    #[test]
    fn verdicts() {
        let ode = parse_ode("D(y,2) + y^2 = 0").unwrap();
        match lie_linearizable_2nd(&ode).unwrap() {
            SecondOrderVerdict::NotLinearizable(NotLinearizableReason::NonzeroResidual {
                which,
                residual,
            }) => {
                assert_eq!(which, 2);
                assert_eq!(residual, "2");
            }
            other => panic!("unexpected verdict {other:?}"),
        }

        let ode = parse_ode("D(y,2) = 0").unwrap();
        assert!(matches!(
            lie_linearizable_2nd(&ode).unwrap(),
            SecondOrderVerdict::Linearizable(_)
        ));

        let ode = parse_ode("D(y,2) + y'^4 = 0").unwrap();
        assert!(matches!(
            lie_linearizable_2nd(&ode).unwrap(),
            SecondOrderVerdict::NotLinearizable(NotLinearizableReason::NotCandidateForm(_))
        ));

        let ode = parse_ode("unknown H(x,y); D(y,2) + H(x,y)*y' = 0").unwrap();
        assert!(matches!(
            lie_linearizable_2nd(&ode).unwrap_err(),
            Error::UnknownsPresent(_)
        ));
    }
}
