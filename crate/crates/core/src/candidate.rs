//! The candidate form for linearizable equations: the pullback of a
//! linear equation in Laguerre form under a generic point
//! transformation, and the overdetermined determining system obtained by
//! matching it against a concrete input ODE.

use crate::canonical::{normalize, CanonicalRat};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jetode::RationalODE;
use crate::poly::{strip_base_content, MPoly};
use crate::symbol::{FuncName, Symbol};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// An explicit point transformation `u = f(x,y)`, `t = g(x,y)` with
/// nonvanishing Jacobian `J = f_x g_y − f_y g_x`.
#[derive(Clone, Debug)]
pub struct PointTransformation {
    pub f: Expr,
    pub g: Expr,
}

impl PointTransformation {
    pub fn new(f: Expr, g: Expr) -> Result<PointTransformation> {
        let pt = PointTransformation { f, g };
        if normalize(&pt.jacobian())?.is_zero() {
            return Err(Error::DegenerateTransformation);
        }
        Ok(pt)
    }

    /// `J = f_x g_y − f_y g_x`.
    pub fn jacobian(&self) -> Expr {
        self.f.diff(Symbol::X) * self.g.diff(Symbol::Y)
            - self.f.diff(Symbol::Y) * self.g.diff(Symbol::X)
    }
}

impl fmt::Display for PointTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u = {}, t = {}", self.f, self.g)
    }
}

/// One coefficient slot of the linear target equation.
#[derive(Clone, Debug)]
pub enum TargetCoeff {
    /// An explicit expression in the target variable `t`.
    Explicit(Expr),
    /// The undetermined function symbol `A_i(x, y)`.
    Symbolic,
}

/// A linear ODE in Laguerre form
/// `u⁽ⁿ⁾(t) + Σ_{i=0}^{n−3} A_i(t) u⁽ⁱ⁾(t) = 0`.
#[derive(Clone, Debug)]
pub struct LinearTarget {
    order: u8,
    coeffs: Vec<TargetCoeff>,
}

impl LinearTarget {
    /// All coefficients kept symbolic.
    pub fn symbolic(order: u8) -> LinearTarget {
        assert!(order >= 2);
        let count = (order as usize).saturating_sub(2);
        LinearTarget {
            order,
            coeffs: vec![TargetCoeff::Symbolic; count],
        }
    }

    /// Fully explicit coefficients `A_0..A_{n−3}` as expressions in `t`.
    pub fn explicit(order: u8, coeffs: Vec<Expr>) -> LinearTarget {
        assert!(order >= 2);
        assert_eq!(coeffs.len(), (order as usize).saturating_sub(2));
        LinearTarget {
            order,
            coeffs: coeffs.into_iter().map(TargetCoeff::Explicit).collect(),
        }
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn coeffs(&self) -> &[TargetCoeff] {
        &self.coeffs
    }

    pub fn is_explicit(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| matches!(c, TargetCoeff::Explicit(_)))
    }

    pub fn explicit_coeffs(&self) -> Option<Vec<Expr>> {
        self.coeffs
            .iter()
            .map(|c| match c {
                TargetCoeff::Explicit(e) => Some(e.clone()),
                TargetCoeff::Symbolic => None,
            })
            .collect()
    }
}

impl fmt::Display for LinearTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order;
        if n <= 3 {
            write!(f, "D(u,{n})")?;
        } else {
            write!(f, "D(u,{n})")?;
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            let u_part = match i {
                0 => "u".to_string(),
                k => format!("D(u,{k})"),
            };
            match c {
                TargetCoeff::Symbolic => write!(f, " + A{i}(t)*{u_part}")?,
                TargetCoeff::Explicit(e) => {
                    if crate::canonical::normalize(e)
                        .map(|c| c.is_zero())
                        .unwrap_or(false)
                    {
                        continue;
                    }
                    if let Expr::Num(c0) = e {
                        if c0.is_one() {
                            write!(f, " + {u_part}")?;
                            continue;
                        }
                    }
                    write!(f, " + ({e})*{u_part}")?;
                }
            }
        }
        write!(f, " = 0")
    }
}

/// The pullback `y⁽ⁿ⁾ + P / (J (g_x + g_y y′)^{n−2}) = 0` of a Laguerre
/// form, with `P` polynomial in the jets whose coefficients are
/// differential polynomials in `f`, `g`, `A_i`.
#[derive(Clone, Debug)]
pub struct CandidateForm {
    order: u8,
    p: MPoly,
}

impl CandidateForm {
    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn p(&self) -> &MPoly {
        &self.p
    }

    /// The denominator `J (g_x + g_y y′)^{n−2}`.
    pub fn denominator(&self) -> MPoly {
        jacobian_poly().mul(&dg_total().pow(self.order as u16 - 2))
    }

    /// Substitute explicit `f`, `g` and target coefficients (already
    /// composed with `g`, i.e. functions of `(x, y)`) and return the
    /// resulting concrete ODE.
    pub fn substitute(
        &self,
        pt: &PointTransformation,
        a_composed: &[Expr],
    ) -> Result<RationalODE> {
        if normalize(&pt.jacobian())?.is_zero() {
            return Err(Error::DegenerateTransformation);
        }
        let mut assignment: BTreeMap<FuncName, Expr> = BTreeMap::new();
        assignment.insert(FuncName::F, pt.f.clone());
        assignment.insert(FuncName::G, pt.g.clone());
        for (i, a) in a_composed.iter().enumerate() {
            assignment.insert(FuncName::A(i as u8), a.clone());
        }
        let den = self.denominator().to_expr().substitute_funcs(&assignment);
        let p = self.p.to_expr().substitute_funcs(&assignment);
        let lhs = den * Expr::sym(Symbol::jet(self.order)) + p;
        RationalODE::from_equation(lhs, vec![], String::new())
            .map_err(|e| match e {
                Error::NotSolvedForHighest(_) => Error::DegenerateTransformation,
                other => other,
            })
    }
}

/// A system of differential-polynomial equations and inequations in
/// unknown functions of `(x, y)`.
#[derive(Clone, Debug)]
pub struct PDESystem {
    pub unknowns: Vec<FuncName>,
    pub equations: Vec<MPoly>,
    pub inequations: Vec<MPoly>,
}

impl PDESystem {
    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }
}

impl fmt::Display for PDESystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.equations {
            writeln!(f, "{e} = 0")?;
        }
        for e in &self.inequations {
            writeln!(f, "{e} /= 0")?;
        }
        Ok(())
    }
}

fn fpoly() -> MPoly {
    MPoly::var(Symbol::func(FuncName::F))
}

/// `J = f_x g_y − f_y g_x` as a polynomial in derivative symbols.
pub fn jacobian_poly() -> MPoly {
    let fx = MPoly::var(Symbol::Func(FuncName::F, 1, 0));
    let fy = MPoly::var(Symbol::Func(FuncName::F, 0, 1));
    let gx = MPoly::var(Symbol::Func(FuncName::G, 1, 0));
    let gy = MPoly::var(Symbol::Func(FuncName::G, 0, 1));
    fx.mul(&gy).sub(&fy.mul(&gx))
}

/// `D_x g = g_x + g_y y′`.
pub fn dg_total() -> MPoly {
    MPoly::var(Symbol::func(FuncName::G)).total_diff_x()
}

/// Pull a Laguerre-form linear equation back through the generic point
/// transformation `u = f(x,y)`, `t = g(x,y)`.
///
/// Derivatives transform by `u⁽ᵏ⁺¹⁾ = D_x u⁽ᵏ⁾ / (g_x + g_y y′)`;
/// substituting into the Laguerre equation, clearing the minimal power
/// of `g_x + g_y y′` and dividing by the `y⁽ⁿ⁾` coefficient must leave
/// exactly the shape `y⁽ⁿ⁾ + P/(J (g_x+g_y y′)^{n−2})`, which is
/// asserted rather than trusted.
pub fn pullback_linear(n: u8, target: &LinearTarget) -> Result<CandidateForm> {
    assert!(n >= 2, "pullback requires order >= 2");
    assert_eq!(target.order(), n);
    let w = dg_total();
    let dw = w.total_diff_x();
    // q[k] is the numerator of u^(k) over w^(2k-1), k >= 1
    let mut q: Vec<MPoly> = vec![fpoly()];
    q.push(fpoly().total_diff_x());
    for k in 1..n as usize {
        let qk = &q[k];
        let next = qk
            .total_diff_x()
            .mul(&w)
            .sub(&qk.mul(&dw).mul_scalar(&crate::scalar::int(2 * k as i64 - 1)));
        q.push(next);
    }
    let mut num = q[n as usize].clone();
    for (i, coeff) in target.coeffs().iter().enumerate() {
        let a_poly = match coeff {
            TargetCoeff::Symbolic => MPoly::var(Symbol::func(FuncName::A(i as u8))),
            TargetCoeff::Explicit(e) => {
                let mut map = BTreeMap::new();
                map.insert(Symbol::T, Expr::func(FuncName::G));
                let composed = e.substitute(&map);
                let rat = normalize(&composed)?;
                rat.as_polynomial().ok_or_else(|| {
                    Error::UnsupportedTarget(format!(
                        "target coefficient A_{i} = {e} is not polynomial in t"
                    ))
                })?
            }
        };
        let term = if i == 0 {
            fpoly().mul(&w.pow(2 * n as u16 - 1))
        } else {
            q[i].mul(&w.pow(2 * (n as u16 - i as u16)))
        };
        num = num.add(&a_poly.mul(&term));
    }
    // split off the linear y^(n) part and check the asserted shape
    let top = Symbol::jet(n);
    let coeffs = num.coeffs_in(top);
    if coeffs.len() != 2 {
        return Err(Error::DegenerateTransformation);
    }
    let c_n = coeffs[1].clone();
    let rest = coeffs[0].clone();
    let expected = jacobian_poly().mul(&w.pow(n as u16 - 2)).neg();
    assert_eq!(
        c_n, expected,
        "pullback numerator must be -J (g_x+g_y y')^(n-2) at y^(n)"
    );
    Ok(CandidateForm {
        order: n,
        p: rest.neg(),
    })
}

/// Collect the determining system for the linearizability of `ode`.
///
/// The polynomial identity `P·N − M·J(g_x+g_y y′)^{n−2} = 0` holds in
/// the jets iff every jet-monomial coefficient vanishes; each
/// coefficient becomes one equation. The constraints
/// `(A_i)_x g_y − (A_i)_y g_x = 0` pin the target coefficients to
/// functions of `t` alone, and `J ≠ 0` is the only inequation.
pub fn determining_system(ode: &RationalODE) -> Result<PDESystem> {
    let n = ode.order();
    let target = LinearTarget::symbolic(n);
    let cand = pullback_linear(n, &target)?;
    let w = dg_total();
    let identity = cand
        .p()
        .mul(ode.n())
        .sub(&ode.m().mul(&jacobian_poly()).mul(&w.pow(n as u16 - 2)));
    let groups = identity.group_by(|s| s.is_jet());
    let mut equations: Vec<MPoly> = vec![];
    for (_, coeff) in groups {
        // one equation per jet monomial; redundant copies are left for
        // the decomposition to eliminate
        equations.push(strip_base_content(&coeff));
    }
    let gx = MPoly::var(Symbol::Func(FuncName::G, 1, 0));
    let gy = MPoly::var(Symbol::Func(FuncName::G, 0, 1));
    let mut unknowns = vec![];
    for i in 0..(n as usize).saturating_sub(2) {
        let name = FuncName::A(i as u8);
        unknowns.push(name);
        let ax = MPoly::var(Symbol::Func(name, 1, 0));
        let ay = MPoly::var(Symbol::Func(name, 0, 1));
        equations.push(ax.mul(&gy).sub(&ay.mul(&gx)));
    }
    for d in ode.declared_unknowns() {
        unknowns.push(*d);
    }
    unknowns.push(FuncName::G);
    unknowns.push(FuncName::F);
    Ok(PDESystem {
        unknowns,
        equations,
        inequations: vec![jacobian_poly()],
    })
}

/// Check by direct substitution that pulling the explicit linear target
/// back through `pt` reproduces `ode` up to a nonzero jet-free factor.
///
/// This is an independent oracle: it recomputes the chain rule with the
/// explicit data rather than substituting into the generic candidate
/// form.
pub fn verify_transformation(
    ode: &RationalODE,
    pt: &PointTransformation,
    target: &LinearTarget,
) -> Result<bool> {
    let n = ode.order();
    assert_eq!(target.order(), n);
    let coeffs = target
        .explicit_coeffs()
        .ok_or_else(|| Error::UnknownsPresent("target coefficients must be explicit".into()))?;
    if normalize(&pt.jacobian())?.is_zero() {
        return Err(Error::DegenerateTransformation);
    }
    let w = pt.g.total_diff_x(n)?;
    let w_rat = normalize(&w)?;
    if w_rat.is_zero() {
        return Err(Error::DegenerateTransformation);
    }
    // u^(k) as exact rational functions on jet space
    let mut u = normalize(&pt.f)?;
    let mut derivatives = vec![u.clone()];
    for _ in 0..n {
        let du = normalize(&u.to_expr().total_diff_x(n)?)?;
        u = du.div(&w_rat)?;
        derivatives.push(u.clone());
    }
    let mut lhs = derivatives[n as usize].clone();
    for (i, a) in coeffs.iter().enumerate() {
        let mut map = BTreeMap::new();
        map.insert(Symbol::T, pt.g.clone());
        let composed = normalize(&a.substitute(&map))?;
        lhs = lhs.add(&composed.mul(&derivatives[i])?)?;
    }
    if lhs.is_zero() {
        return Ok(false);
    }
    // input as the cleared polynomial N y^(n) + M
    let input = ode
        .n()
        .mul(&MPoly::var(Symbol::jet(n)))
        .add(ode.m());
    let ratio = lhs.div(&CanonicalRat::from_poly(input))?;
    Ok(!ratio.is_zero() && !ratio.contains(|s| s.is_jet()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::equivalent;
    use crate::jetode::parse_ode;

    #[test]
    fn pullback_n2_is_cubic_in_yp() {
        let cand = pullback_linear(2, &LinearTarget::symbolic(2)).unwrap();
        let yp = Symbol::jet(1);
        assert_eq!(cand.p().deg_in(yp), 3);
        assert!(cand.p().max_jet_order() <= Some(1));
        // the cubic coefficient is f_yy g_y - f_y g_yy up to sign
        let c3 = cand.p().coeff_of_power(yp, 3);
        let expected = MPoly::var(Symbol::Func(FuncName::F, 0, 2))
            .mul(&MPoly::var(Symbol::Func(FuncName::G, 0, 1)))
            .sub(
                &MPoly::var(Symbol::Func(FuncName::F, 0, 1))
                    .mul(&MPoly::var(Symbol::Func(FuncName::G, 0, 2))),
            )
            .neg();
        assert_eq!(c3, expected);
    }

    #[test]
    fn pullback_identity_transformation_gives_trivial_ode() {
        // n = 2, f = y, g = x: u'' = 0 pulls back to y'' = 0
        let cand = pullback_linear(2, &LinearTarget::symbolic(2)).unwrap();
        let pt = PointTransformation::new(Expr::y(), Expr::x()).unwrap();
        let ode = cand.substitute(&pt, &[]).unwrap();
        assert_eq!(ode.order(), 2);
        assert!(ode.m().is_zero());
    }

    #[test]
    fn pullback_explicit_third_order_example() {
        // n = 3, f = y + x^2, g = x, A_0 = t  ->  y''' + x*(y + x^2) = 0
        let target = LinearTarget::explicit(3, vec![Expr::sym(Symbol::T)]);
        let cand = pullback_linear(3, &target).unwrap();
        let pt = PointTransformation::new(Expr::y() + Expr::x().pow(2), Expr::x()).unwrap();
        let ode = cand.substitute(&pt, &[Expr::x()]).unwrap();
        assert_eq!(ode.order(), 3);
        let expected = parse_ode("D(y,3) + x*(y + x^2) = 0").unwrap();
        assert!(equivalent(
            &ode.m_over_n().to_expr(),
            &expected.m_over_n().to_expr()
        )
        .unwrap());
    }

    #[test]
    fn verify_example_one_solution() {
        let ode = parse_ode(crate::jetode::GERDT_EX1).unwrap();
        let pt = PointTransformation::new(
            Expr::x().pow(2) * Expr::y().pow(2),
            Expr::x(),
        )
        .unwrap();
        let target = LinearTarget::explicit(4, vec![Expr::one(), Expr::zero()]);
        assert!(verify_transformation(&ode, &pt, &target).unwrap());
        // a wrong transformation fails
        let bad = PointTransformation::new(Expr::x() * Expr::y().pow(2), Expr::x()).unwrap();
        assert!(!verify_transformation(&ode, &bad, &target).unwrap());
    }

    #[test]
    fn verify_trivial_identity() {
        let ode = parse_ode("D(y,2) = 0").unwrap();
        let pt = PointTransformation::new(Expr::y(), Expr::x()).unwrap();
        let target = LinearTarget::explicit(2, vec![]);
        assert!(verify_transformation(&ode, &pt, &target).unwrap());
    }

    #[test]
    fn determining_system_of_trivial_ode_accepts_identity() {
        let ode = parse_ode("D(y,2) = 0").unwrap();
        let sys = determining_system(&ode).unwrap();
        assert!(!sys.is_empty());
        assert_eq!(sys.inequations.len(), 1);
        // substituting f = y, g = x annihilates every equation
        let mut assignment = BTreeMap::new();
        assignment.insert(FuncName::F, Expr::y());
        assignment.insert(FuncName::G, Expr::x());
        for eq in &sys.equations {
            let sub = eq.to_expr().substitute_funcs(&assignment);
            assert!(normalize(&sub).unwrap().is_zero(), "equation {eq} not satisfied");
        }
        let j = sys.inequations[0].to_expr().substitute_funcs(&assignment);
        assert!(!normalize(&j).unwrap().is_zero());
    }

    #[test]
    fn determining_equation_count_matches_reexpansion() {
        let ode = parse_ode("D(y,2) + y^2 = 0").unwrap();
        let n = ode.order();
        let cand = pullback_linear(n, &LinearTarget::symbolic(n)).unwrap();
        let w = dg_total();
        let identity = cand
            .p()
            .mul(ode.n())
            .sub(&ode.m().mul(&jacobian_poly()).mul(&w.pow(n as u16 - 2)));
        let groups = identity.group_by(|s| s.is_jet());
        // re-expansion: sum of monomial * coefficient equals the identity
        let mut rebuilt = MPoly::zero();
        for (mono, coeff) in &groups {
            rebuilt = rebuilt.add(&coeff.mul_term(mono, &crate::scalar::int(1)));
        }
        assert_eq!(rebuilt, identity);
        let sys = determining_system(&ode).unwrap();
        // one equation per distinct jet monomial; order 2 has no A slots
        assert_eq!(sys.len(), groups.len());
    }
}
