//! Decomposition fixtures for the two fourth-order example equations
//! and the printed involutive system of the first one.

use linode_core::budget::Budget;
use linode_core::candidate::determining_system;
use linode_core::diffdec::{
    integrability_conditions, thomas_decompose, DecompositionResult, DiffPoly, SimpleSystem,
};
use linode_core::expr::Expr;
use linode_core::jetode::{parse_ode, GERDT_EX1, GERDT_EX2};
use linode_core::poly::MPoly;
use linode_core::symbol::{FuncName, Symbol};
use std::collections::BTreeMap;

fn v(name: FuncName, a: u8, b: u8) -> MPoly {
    MPoly::var(Symbol::Func(name, a, b))
}

fn x() -> MPoly {
    MPoly::var(Symbol::X)
}

fn y() -> MPoly {
    MPoly::var(Symbol::Y)
}

fn i(n: i64) -> linode_core::scalar::Scalar {
    linode_core::scalar::int(n)
}

/// The printed ten-equation involutive system of the first example.
fn printed_simple_system() -> SimpleSystem {
    let equations = vec![
        // y f_y - 2 f - 2 f_xxxx = 0
        y().mul(&v(FuncName::F, 0, 1))
            .sub(&v(FuncName::F, 0, 0).mul_scalar(&i(2)))
            .sub(&v(FuncName::F, 4, 0).mul_scalar(&i(2))),
        // f_xxxy = 0
        v(FuncName::F, 3, 1),
        // x^2 f_xxy - 2 f_y = 0
        x().pow(2)
            .mul(&v(FuncName::F, 2, 1))
            .sub(&v(FuncName::F, 0, 1).mul_scalar(&i(2))),
        // x f_xy - 2 f_y = 0
        x().mul(&v(FuncName::F, 1, 1))
            .sub(&v(FuncName::F, 0, 1).mul_scalar(&i(2))),
        // y f_yy - f_y = 0
        y().mul(&v(FuncName::F, 0, 2)).sub(&v(FuncName::F, 0, 1)),
        // A0 g_x^4 - 1 = 0
        v(FuncName::A(0), 0, 0)
            .mul(&v(FuncName::G, 1, 0).pow(4))
            .sub(&MPoly::one()),
        // g_y = 0
        v(FuncName::G, 0, 1),
        // (A0)_x = 0
        v(FuncName::A(0), 1, 0),
        // (A0)_y = 0
        v(FuncName::A(0), 0, 1),
        // A1 = 0
        v(FuncName::A(1), 0, 0),
    ];
    let inequations = vec![v(FuncName::A(0), 0, 0), v(FuncName::F, 0, 1)];
    SimpleSystem::new(
        equations.into_iter().map(DiffPoly::new).collect(),
        inequations,
    )
}

fn example_one_solution() -> BTreeMap<FuncName, Expr> {
    let mut m = BTreeMap::new();
    m.insert(FuncName::F, Expr::x().pow(2) * Expr::y().pow(2));
    m.insert(FuncName::G, Expr::x());
    m.insert(FuncName::A(0), Expr::one());
    m.insert(FuncName::A(1), Expr::zero());
    m
}

#[test]
fn printed_system_is_involutive_and_admits_the_solution() {
    let s = printed_simple_system();
    let conds = integrability_conditions(&s, &Budget::default());
    assert!(
        conds.is_empty(),
        "printed system should be passive, got {} conditions: {}",
        conds.len(),
        conds
            .iter()
            .map(|c| c.poly().to_string())
            .collect::<Vec<_>>()
            .join("; ")
    );
    assert!(s.check_solution(&example_one_solution()).unwrap());
}

#[test]
fn example_one_decomposition_contains_the_solution() {
    let ode = parse_ode(GERDT_EX1).unwrap();
    let sys = determining_system(&ode).unwrap();
    eprintln!("determining system: {} equations", sys.equations.len());
    let result = thomas_decompose(&sys, &Budget::default());
    let systems = result.systems();
    eprintln!(
        "decomposition: {:?}, {} simple systems",
        match &result {
            DecompositionResult::Complete(_) => "complete",
            DecompositionResult::Inconsistent(_) => "inconsistent",
            DecompositionResult::Inconclusive(_) => "inconclusive",
        },
        systems.len()
    );
    for (k, s) in systems.iter().enumerate() {
        eprintln!("--- simple system {k}:\n{s}");
    }
    assert!(
        matches!(result, DecompositionResult::Complete(_)),
        "expected a complete decomposition"
    );
    let solution = example_one_solution();
    let hit = systems
        .iter()
        .any(|s| s.check_solution(&solution).unwrap());
    assert!(hit, "no returned simple system admits the printed solution");
}

#[test]
fn example_two_decomposition_is_empty() {
    let ode = parse_ode(GERDT_EX2).unwrap();
    let sys = determining_system(&ode).unwrap();
    eprintln!("determining system: {} equations", sys.equations.len());
    let result = thomas_decompose(&sys, &Budget::default());
    match &result {
        DecompositionResult::Inconsistent(certs) => {
            assert!(!certs.is_empty());
            for c in certs {
                assert!(c.recheck(&Budget::default()), "certificate recheck failed");
            }
        }
        DecompositionResult::Complete(systems) => {
            for (k, s) in systems.iter().enumerate() {
                eprintln!("--- unexpected simple system {k}:\n{s}");
            }
            panic!("expected inconsistency");
        }
        DecompositionResult::Inconclusive(r) => {
            panic!("inconclusive: {:?}", r.exceeded);
        }
    }
}
