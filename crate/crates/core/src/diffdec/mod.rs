//! Bounded Thomas-style decomposition of polynomially-nonlinear PDE
//! systems in unknown functions of `(x, y)`.
//!
//! The decomposition triangularizes with case splitting on initials and
//! separants, completes each branch to Janet passivity, and keeps the
//! inequations reduced; it returns disjoint simple systems, a proof of
//! inconsistency (one contradiction certificate per closed branch), or
//! an honest `Inconclusive` when a budget cap is hit.
//!
//! The ranking on derivatives is orderly (total order first), breaks
//! ties lexicographically with x-derivatives heavier, and finally by
//! the fixed unknown order `A_0 < A_1 < … < H < ξ < η < g < f`; it is
//! the `Func` restriction of [`Symbol`]'s order.

mod diffpoly;
mod engine;
mod janet;

pub use diffpoly::{mpoly_cmp, DiffPoly};
pub use engine::{
    integrability_conditions, pseudo_reduce, split, thomas_decompose, thomas_decompose_traced,
    Contradiction, ContradictionKind, DecompositionResult, InconclusiveReport, ReduceCtx,
    ReduceMode, SimpleSystem, SplitOutcome,
};
pub use janet::JanetAssignment;

use crate::symbol::Symbol;

/// The fixed differential ranking: the restriction of the global symbol
/// order to derivative symbols.
pub struct Ranking;

impl Ranking {
    pub fn cmp(a: Symbol, b: Symbol) -> std::cmp::Ordering {
        debug_assert!(a.is_func() && b.is_func());
        a.cmp(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::candidate::PDESystem;
    use crate::expr::Expr;
    use crate::poly::MPoly;
    use crate::symbol::{FuncName, Symbol};
    use std::collections::BTreeMap;

    fn var(name: FuncName, a: u8, b: u8) -> MPoly {
        MPoly::var(Symbol::Func(name, a, b))
    }

    fn sys(equations: Vec<MPoly>, inequations: Vec<MPoly>) -> PDESystem {
        PDESystem {
            unknowns: vec![FuncName::F, FuncName::G],
            equations,
            inequations,
        }
    }

    #[test]
    fn pseudo_reduce_fixtures() {
        // f_xy - 2 f_y / x reduced by x f_xy - 2 f_y -> 0
        let pivot = DiffPoly::new(
            MPoly::var(Symbol::X)
                .mul(&var(FuncName::F, 1, 1))
                .sub(&var(FuncName::F, 0, 1).mul_scalar(&crate::scalar::int(2))),
        );
        let s = SimpleSystem::new(vec![pivot], vec![]);
        let p = DiffPoly::from_expr(
            &(Expr::sym(Symbol::Func(FuncName::F, 1, 1))
                - (Expr::int(2) * Expr::sym(Symbol::Func(FuncName::F, 0, 1))).div(Expr::x())),
        )
        .unwrap();
        let (r, multipliers) = pseudo_reduce(&p, &s, &Budget::default());
        assert!(r.is_zero());
        assert!(multipliers.is_empty() || multipliers.iter().all(|m| m.is_constant()));

        // already reduced stays put
        let q = DiffPoly::new(var(FuncName::G, 0, 1));
        let (r, _) = pseudo_reduce(&q, &s, &Budget::default());
        assert_eq!(r, q);

        // g_yy reduced by the prolongation of g_y = 0 -> 0
        let s = SimpleSystem::new(vec![DiffPoly::new(var(FuncName::G, 0, 1))], vec![]);
        let p = DiffPoly::new(var(FuncName::G, 0, 2));
        let (r, _) = pseudo_reduce(&p, &s, &Budget::default());
        assert!(r.is_zero());
    }

    #[test]
    fn split_fixtures() {
        // A0 g_x^4 - 1 splits on A0
        let p = DiffPoly::new(
            var(FuncName::A(0), 0, 0)
                .mul(&var(FuncName::G, 1, 0).pow(4))
                .sub(&MPoly::one()),
        );
        match split(&p) {
            SplitOutcome::Cases {
                initial,
                zero_branch,
                ..
            } => {
                assert_eq!(initial, var(FuncName::A(0), 0, 0));
                assert_eq!(zero_branch[1], MPoly::one().neg());
            }
            other => panic!("expected a case split, got {other:?}"),
        }
        // unit initial: single branch
        let p = DiffPoly::new(var(FuncName::F, 1, 0).sub(&MPoly::var(Symbol::Y)));
        assert!(matches!(split(&p), SplitOutcome::Single(_)));
        // nonzero constant: inconsistent
        let p = DiffPoly::new(MPoly::int(3));
        assert!(matches!(split(&p), SplitOutcome::Inconsistent));
    }

    #[test]
    fn curl_obstruction_is_inconsistent() {
        // {f_x = y, f_y = 0} has the integrability condition -1 = 0
        let e1 = var(FuncName::F, 1, 0).sub(&MPoly::var(Symbol::Y));
        let e2 = var(FuncName::F, 0, 1);
        let result = thomas_decompose(&sys(vec![e1.clone(), e2.clone()], vec![]), &Budget::default());
        match &result {
            DecompositionResult::Inconsistent(certs) => {
                assert!(!certs.is_empty());
                for c in certs {
                    assert!(c.recheck(&Budget::default()), "certificate recheck failed");
                }
            }
            other => panic!("expected inconsistency, got {other:?}"),
        }

        // the standalone condition op reports it too
        let s = SimpleSystem::new(vec![DiffPoly::new(e1), DiffPoly::new(e2)], vec![]);
        let conds = integrability_conditions(&s, &Budget::default());
        assert_eq!(conds.len(), 1);
        assert_eq!(conds[0].poly(), &MPoly::one());
    }

    #[test]
    fn single_equation_is_already_passive() {
        let s = SimpleSystem::new(vec![DiffPoly::new(var(FuncName::G, 0, 1))], vec![]);
        assert!(integrability_conditions(&s, &Budget::default()).is_empty());
    }

    #[test]
    fn contradictory_pair_closes() {
        // {f_x = 0, f_x - 1 = 0}
        let e1 = var(FuncName::F, 1, 0);
        let e2 = var(FuncName::F, 1, 0).sub(&MPoly::one());
        let result = thomas_decompose(&sys(vec![e1, e2], vec![]), &Budget::default());
        assert!(matches!(result, DecompositionResult::Inconsistent(_)));
    }

    #[test]
    fn exact_gradient_system_is_consistent() {
        // {f_x = y^2 ... not exact; use f_x = 2xy, f_y = x^2} (f = x^2 y)
        let e1 = var(FuncName::F, 1, 0).sub(
            &MPoly::var(Symbol::X)
                .mul(&MPoly::var(Symbol::Y))
                .mul_scalar(&crate::scalar::int(2)),
        );
        let e2 = var(FuncName::F, 0, 1).sub(&MPoly::var(Symbol::X).pow(2));
        let result = thomas_decompose(&sys(vec![e1, e2], vec![]), &Budget::default());
        match &result {
            DecompositionResult::Complete(systems) => {
                assert_eq!(systems.len(), 1);
                let mut assignment = BTreeMap::new();
                assignment.insert(FuncName::F, Expr::x().pow(2) * Expr::y());
                assert!(systems[0].check_solution(&assignment).unwrap());
            }
            other => panic!("expected a consistent decomposition, got {other:?}"),
        }
    }

    #[test]
    fn factor_split_partitions_solutions() {
        // f_y * g_x = 0 with J-style inequation f_y: forces g_x = 0
        let eq = var(FuncName::F, 0, 1).mul(&var(FuncName::G, 1, 0));
        let ineq = var(FuncName::F, 0, 1);
        let result = thomas_decompose(&sys(vec![eq], vec![ineq]), &Budget::default());
        match &result {
            DecompositionResult::Complete(systems) => {
                assert_eq!(systems.len(), 1);
                let s = &systems[0];
                assert_eq!(s.equations.len(), 1);
                assert_eq!(s.equations[0].poly(), &var(FuncName::G, 1, 0));
            }
            other => panic!("expected one consistent branch, got {other:?}"),
        }
    }

    #[test]
    fn disjointness_of_sibling_branches() {
        // f_yy * (f_x - 1) = 0: branches f_yy = 0 / f_x = 1 with markers
        let eq = var(FuncName::F, 0, 2).mul(&var(FuncName::F, 1, 0).sub(&MPoly::one()));
        let result = thomas_decompose(&sys(vec![eq], vec![]), &Budget::default());
        let DecompositionResult::Complete(systems) = &result else {
            panic!("expected completion");
        };
        assert!(systems.len() >= 2);
        // some pair of systems must carry complementary conditions
        let mut found = false;
        for i in 0..systems.len() {
            for j in (i + 1)..systems.len() {
                for (p, sign) in &systems[i].conditions {
                    if systems[j]
                        .conditions
                        .iter()
                        .any(|(q, s2)| q == p && s2 != sign)
                    {
                        found = true;
                    }
                }
            }
        }
        assert!(found, "no complementary condition pair found");
    }

    #[test]
    fn determinism_of_decomposition() {
        let eq = var(FuncName::F, 0, 2).mul(&var(FuncName::F, 1, 0).sub(&MPoly::one()));
        let s1 = format!(
            "{:?}",
            thomas_decompose(&sys(vec![eq.clone()], vec![]), &Budget::default())
        );
        let s2 = format!(
            "{:?}",
            thomas_decompose(&sys(vec![eq], vec![]), &Budget::default())
        );
        assert_eq!(s1, s2);
    }
}
