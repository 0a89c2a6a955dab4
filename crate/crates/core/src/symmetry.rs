//! Point-symmetry determining equations and the dimension prefilter.
//!
//! An infinitesimal generator `ξ(x,y)∂_x + η(x,y)∂_y` is prolonged to
//! jet space, applied to the equation, and restricted to its solutions;
//! collecting jet-monomial coefficients yields a linear homogeneous PDE
//! system in `ξ, η`. Completing that system to involution and counting
//! parametric derivatives gives the symmetry algebra dimension without
//! integrating anything. Linearizable equations need dimension strictly
//! above the order, and exactly 8 when the order is 2.

use crate::budget::{Budget, BudgetExceeded};
use crate::candidate::PDESystem;
use crate::canonical::CanonicalRat;
use crate::diffdec::{thomas_decompose, DecompositionResult, SimpleSystem};
use crate::error::{Error, Result};
use crate::jetode::RationalODE;
use crate::poly::{strip_base_content, MPoly};
use crate::symbol::{FuncName, Symbol};
use std::collections::BTreeMap;
use std::fmt;

/// The prolongation coefficients `η⁽ᵏ⁾` for `k = 0..=n`.
///
/// `η⁽⁰⁾ = η`, `η⁽ᵏ⁺¹⁾ = D_x η⁽ᵏ⁾ − y⁽ᵏ⁺¹⁾ D_x ξ`.
fn prolongation_coefficients(n: u8) -> Vec<MPoly> {
    let xi = MPoly::var(Symbol::func(FuncName::Xi));
    let eta = MPoly::var(Symbol::func(FuncName::Eta));
    let dxi = xi.total_diff_x();
    let mut out = vec![eta];
    for k in 0..n {
        let next = out[k as usize]
            .total_diff_x()
            .sub(&MPoly::var(Symbol::jet(k + 1)).mul(&dxi));
        out.push(next);
    }
    out
}

/// Generate the linear determining system for the point symmetries of
/// an explicit equation.
pub fn prolong_and_determine(ode: &RationalODE) -> Result<PDESystem> {
    if ode.has_unknowns() {
        return Err(Error::UnknownsPresent(
            "symmetry prolongation needs explicit coefficients".into(),
        ));
    }
    let n = ode.order();
    let etas = prolongation_coefficients(n);
    let mn = ode.m_over_n();
    let xi = CanonicalRat::from_poly(MPoly::var(Symbol::func(FuncName::Xi)));
    let eta = CanonicalRat::from_poly(MPoly::var(Symbol::func(FuncName::Eta)));

    // X(y^(n) + M/N) = eta^(n) + xi (M/N)_x + eta (M/N)_y
    //                  + sum_k eta^(k) (M/N)_{y^(k)}
    let mut condition = CanonicalRat::from_poly(etas[n as usize].clone());
    condition = condition.add(&xi.mul(&mn.derivative(Symbol::X)?)?)?;
    condition = condition.add(&eta.mul(&mn.derivative(Symbol::Y)?)?)?;
    for k in 1..n {
        let partial = mn.derivative(Symbol::jet(k))?;
        if partial.is_zero() {
            continue;
        }
        condition = condition.add(&CanonicalRat::from_poly(etas[k as usize].clone()).mul(&partial)?)?;
    }

    // restrict to solutions: y^(n) = -M/N, then clear denominators
    let top = Symbol::jet(n);
    let coeffs = condition.num.coeffs_in(top);
    assert!(coeffs.len() <= 2, "the condition is linear in the top jet");
    let c0 = coeffs.first().cloned().unwrap_or_else(MPoly::zero);
    let c1 = coeffs.get(1).cloned().unwrap_or_else(MPoly::zero);
    let cleared = c0.mul(ode.n()).sub(&c1.mul(ode.m()));

    let mut equations: Vec<MPoly> = vec![];
    for (_, coeff) in cleared.group_by(|s| s.is_jet()) {
        let eq = strip_base_content(&coeff);
        if eq.is_zero() {
            continue;
        }
        if !equations.contains(&eq) {
            equations.push(eq);
        }
    }
    Ok(PDESystem {
        unknowns: vec![FuncName::Xi, FuncName::Eta],
        equations,
        inequations: vec![],
    })
}

/// Solution-space dimension of a finite-type linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dim {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => write!(f, "infinite"),
        }
    }
}

/// Outcome of the dimension computation.
#[derive(Clone, Debug)]
pub struct SymmetryReport {
    /// `None` when the completion exhausted its budget.
    pub dimension: Option<Dim>,
    /// The parametric derivatives, when the dimension is finite.
    pub parametric: Vec<Symbol>,
    /// The involutive system, when completion finished.
    pub involutive: Option<SimpleSystem>,
    pub exceeded: Option<BudgetExceeded>,
}

/// Complete a linear homogeneous system to involution and count its
/// parametric derivatives.
///
/// The derivative-order cap is raised to the system's own order plus
/// headroom: the input already contains its defining derivatives, and
/// the cap is meant to bound the completion search beyond them.
pub fn symmetry_dimension(sys: &PDESystem, budget: &Budget) -> SymmetryReport {
    let input_order = sys
        .equations
        .iter()
        .flat_map(|p| p.symbols())
        .filter_map(|s| s.derivative_order())
        .max()
        .unwrap_or(0);
    let effective = Budget {
        max_order: budget.max_order.max(input_order + 2),
        ..budget.clone()
    };
    let result = thomas_decompose(sys, &effective);
    let system = match &result {
        DecompositionResult::Complete(systems) => {
            assert_eq!(systems.len(), 1, "linear systems decompose without splits");
            systems[0].clone()
        }
        DecompositionResult::Inconsistent(_) => {
            // a homogeneous linear system always has the zero solution;
            // reaching this would be an engine defect
            unreachable!("homogeneous linear systems cannot be inconsistent")
        }
        DecompositionResult::Inconclusive(r) => {
            return SymmetryReport {
                dimension: None,
                parametric: vec![],
                involutive: None,
                exceeded: Some(r.exceeded.clone()),
            }
        }
    };

    let mut leaders: BTreeMap<FuncName, Vec<(u8, u8)>> = BTreeMap::new();
    for u in &sys.unknowns {
        leaders.insert(*u, vec![]);
    }
    for eq in &system.equations {
        let (name, a, b) = eq
            .leader()
            .expect("simple-system equations have leaders")
            .func_parts()
            .expect("leaders are derivative symbols");
        leaders.entry(name).or_default().push((a, b));
    }

    let mut parametric = vec![];
    for (name, ls) in &leaders {
        let pure_x = ls.iter().filter(|&&(_, b)| b == 0).map(|&(a, _)| a).min();
        let pure_y = ls.iter().filter(|&&(a, _)| a == 0).map(|&(_, b)| b).min();
        let (Some(ax), Some(by)) = (pure_x, pure_y) else {
            return SymmetryReport {
                dimension: Some(Dim::Infinite),
                parametric: vec![],
                involutive: Some(system),
                exceeded: None,
            };
        };
        // the complement of the staircase lies inside [0,ax) x [0,by)
        for a in 0..ax {
            for b in 0..by {
                if !ls.iter().any(|&(p, q)| a >= p && b >= q) {
                    parametric.push(Symbol::Func(*name, a, b));
                }
            }
        }
    }
    parametric.sort();
    SymmetryReport {
        dimension: Some(Dim::Finite(parametric.len())),
        parametric,
        involutive: Some(system),
        exceeded: None,
    }
}

/// Prefilter verdict based on the symmetry dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrefilterVerdict {
    MaybeLinearizable(Dim),
    NotLinearizable(Dim),
    Inconclusive,
}

/// Reject equations whose point-symmetry algebra is too small to permit
/// linearization: the dimension must be strictly above the order, and
/// exactly 8 for order 2.
pub fn prefilter(ode: &RationalODE, budget: &Budget) -> Result<PrefilterVerdict> {
    let sys = prolong_and_determine(ode)?;
    let report = symmetry_dimension(&sys, budget);
    let n = ode.order() as usize;
    Ok(match report.dimension {
        None => PrefilterVerdict::Inconclusive,
        Some(Dim::Infinite) => PrefilterVerdict::MaybeLinearizable(Dim::Infinite),
        Some(Dim::Finite(d)) => {
            if n == 2 {
                if d == 8 {
                    PrefilterVerdict::MaybeLinearizable(Dim::Finite(d))
                } else {
                    PrefilterVerdict::NotLinearizable(Dim::Finite(d))
                }
            } else if d <= n {
                PrefilterVerdict::NotLinearizable(Dim::Finite(d))
            } else {
                PrefilterVerdict::MaybeLinearizable(Dim::Finite(d))
            }
        }
    })
}

/// Substitute an explicit generator into a determining system; true iff
/// every equation vanishes.
pub fn check_generator(
    sys: &PDESystem,
    xi: &crate::expr::Expr,
    eta: &crate::expr::Expr,
) -> Result<bool> {
    let mut assignment = BTreeMap::new();
    assignment.insert(FuncName::Xi, xi.clone());
    assignment.insert(FuncName::Eta, eta.clone());
    for eq in &sys.equations {
        let sub = eq.to_expr().substitute_funcs(&assignment);
        if !crate::canonical::normalize(&sub)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
