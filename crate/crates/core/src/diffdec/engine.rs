//! The decomposition engine: triangularization with case splitting on
//! initials and separants, Janet completion to passivity, and
//! consistency maintenance of the inequations.

use super::diffpoly::{mpoly_cmp, DiffPoly};
use super::janet::JanetAssignment;
use crate::budget::{Budget, BudgetExceeded};
use crate::candidate::PDESystem;
use crate::poly::{prem, strip_base_content, MPoly, Monomial};
use crate::scalar::Scalar;
use crate::symbol::Symbol;
use std::collections::BTreeMap;

/// Per-call cap on elementary reduction steps.
const REDUCE_STEP_CAP: u64 = 400_000;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ReduceMode {
    /// Reduce only by Janet divisors (canonical for passive systems).
    Janet,
    /// Ritt-style reduction by any matching pivot derivative.
    Full,
}

/// Reduction context over a fixed pivot set.
pub struct ReduceCtx<'a> {
    pivots: &'a BTreeMap<Symbol, DiffPoly>,
    janet: JanetAssignment,
    max_size: usize,
}

impl<'a> ReduceCtx<'a> {
    pub fn new(pivots: &'a BTreeMap<Symbol, DiffPoly>, budget: &Budget) -> ReduceCtx<'a> {
        ReduceCtx {
            pivots,
            janet: JanetAssignment::compute(pivots.keys().copied()),
            max_size: budget.max_size,
        }
    }

    fn find_reduction(&self, p: &MPoly, mode: ReduceMode) -> Option<(Symbol, Symbol)> {
        let mut best: Option<(Symbol, Symbol)> = None;
        for theta in p.symbols().into_iter().rev() {
            let Some((name, a, b)) = theta.func_parts() else {
                break;
            };
            let mut chosen: Option<Symbol> = None;
            for (&v, q) in self.pivots.iter().rev() {
                let Some((vn, va, vb)) = v.func_parts() else {
                    continue;
                };
                if vn != name || va > a || vb > b {
                    continue;
                }
                if mode == ReduceMode::Janet && !self.janet.divides(v, theta) {
                    continue;
                }
                if v == theta && p.deg_in(theta) < q.degree() {
                    continue;
                }
                chosen = Some(v);
                break; // pivots iterated descending: first match is highest
            }
            if let Some(v) = chosen {
                best = Some((theta, v));
                break; // symbols iterated descending: highest reducible first
            }
        }
        best
    }

    /// Reduce `p` modulo the pivot set, collecting the nonzero
    /// multipliers (initials and separants) applied along the way.
    pub fn reduce(
        &self,
        p: &MPoly,
        mode: ReduceMode,
        multipliers: Option<&mut Vec<MPoly>>,
    ) -> Result<MPoly, BudgetExceeded> {
        let mut sink = multipliers;
        let mut cur = p.clone();
        let mut steps: u64 = 0;
        loop {
            steps += 1;
            if steps > REDUCE_STEP_CAP {
                return Err(BudgetExceeded::Steps);
            }
            if cur.len() > self.max_size {
                return Err(BudgetExceeded::Size { reached: cur.len() });
            }
            let Some((theta, v)) = self.find_reduction(&cur, mode) else {
                return Ok(cur);
            };
            let q = &self.pivots[&v];
            if theta == v {
                let multiplier = q.initial();
                cur = prem(&cur, q.poly(), theta);
                if let Some(m) = sink.as_deref_mut() {
                    push_unique(m, strip_base_content(&multiplier));
                }
            } else {
                let (_, a, b) = theta.func_parts().unwrap();
                let (_, va, vb) = v.func_parts().unwrap();
                let prolonged = q.prolong(a - va, b - vb);
                debug_assert_eq!(prolonged.leader(), Some(theta));
                debug_assert_eq!(prolonged.degree(), 1);
                let sep = prolonged.initial();
                // eliminate theta completely: the prolonged pivot is linear
                while cur.deg_in(theta) >= 1 {
                    let d = cur.deg_in(theta);
                    let lead = cur.coeff_of_power(theta, d);
                    let shift = MPoly::term(
                        Monomial::var_pow(theta, d - 1),
                        Scalar::from_integer(1.into()),
                    );
                    cur = cur.mul(&sep).sub(&lead.mul(&shift).mul(prolonged.poly()));
                    steps += 1;
                    if cur.len() > self.max_size {
                        return Err(BudgetExceeded::Size { reached: cur.len() });
                    }
                }
                if let Some(m) = sink.as_deref_mut() {
                    push_unique(m, strip_base_content(&q.separant()));
                }
            }
            cur = cur.integer_primitive().1;
        }
    }
}

fn push_unique(sink: &mut Vec<MPoly>, p: MPoly) {
    if p.is_constant() {
        return;
    }
    if !sink.contains(&p) {
        sink.push(p);
    }
}

/// Record an inequation, splitting monomials into their symbol factors.
fn push_ineq_normalized(sink: &mut Vec<MPoly>, p: MPoly) {
    if p.is_constant() || is_base_poly(&p) {
        return;
    }
    if p.len() == 1 {
        let (m, _) = p.leading().unwrap();
        for s in m.symbols().filter(|s| s.is_func()) {
            let v = MPoly::var(s);
            if !sink.contains(&v) {
                sink.push(v);
            }
        }
        return;
    }
    if !sink.contains(&p) {
        sink.push(p);
    }
}

/// A triangular, passive system of equations with nonvanishing initials
/// and separants, plus inequations.
#[derive(Clone, Debug)]
pub struct SimpleSystem {
    pub equations: Vec<DiffPoly>,
    pub inequations: Vec<MPoly>,
    /// Split trail: `(polynomial, required nonzero)` in creation order.
    pub conditions: Vec<(MPoly, bool)>,
}

impl SimpleSystem {
    pub fn new(equations: Vec<DiffPoly>, inequations: Vec<MPoly>) -> SimpleSystem {
        SimpleSystem {
            equations,
            inequations,
            conditions: vec![],
        }
    }

    pub fn pivot_map(&self) -> BTreeMap<Symbol, DiffPoly> {
        let mut map = BTreeMap::new();
        for e in &self.equations {
            let l = e.leader().expect("simple-system equations have leaders");
            let prev = map.insert(l, e.clone());
            assert!(prev.is_none(), "duplicate leader {l}");
        }
        map
    }

    /// Substitute explicit functions for the unknowns and check that all
    /// equations vanish and all inequations are nonzero.
    pub fn check_solution(
        &self,
        assignment: &BTreeMap<crate::symbol::FuncName, crate::expr::Expr>,
    ) -> crate::error::Result<bool> {
        for e in &self.equations {
            let sub = e.poly().to_expr().substitute_funcs(assignment);
            if !crate::canonical::normalize(&sub)?.is_zero() {
                return Ok(false);
            }
        }
        for e in &self.inequations {
            let sub = e.to_expr().substitute_funcs(assignment);
            if crate::canonical::normalize(&sub)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::fmt::Display for SimpleSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for e in &self.equations {
            writeln!(f, "{} = 0", e.poly())?;
        }
        for e in &self.inequations {
            writeln!(f, "{e} /= 0")?;
        }
        Ok(())
    }
}

/// A machine-checkable branch-closure certificate.
#[derive(Clone, Debug)]
pub struct Contradiction {
    pub branch: usize,
    pub kind: ContradictionKind,
    /// The polynomial whose reduction closed the branch.
    pub offending: MPoly,
    /// The pivot equations in effect at closure.
    pub pivots: Vec<MPoly>,
    /// The contradictory reduced form.
    pub reduced: MPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContradictionKind {
    /// An equation reduced to a nonzero base polynomial.
    EquationToNonzeroBase,
    /// An inequation reduced to zero.
    InequationToZero,
}

impl Contradiction {
    /// Re-run the recorded reduction and confirm the contradiction.
    pub fn recheck(&self, budget: &Budget) -> bool {
        let mut pivots = BTreeMap::new();
        for p in &self.pivots {
            let dp = DiffPoly::new(p.clone());
            let Some(l) = dp.leader() else { return false };
            pivots.insert(l, dp);
        }
        let ctx = ReduceCtx::new(&pivots, budget);
        let Ok(r) = ctx.reduce(&self.offending, ReduceMode::Janet, None) else {
            return false;
        };
        let Ok(r) = ctx.reduce(&r, ReduceMode::Full, None) else {
            return false;
        };
        let r = strip_base_content(&r);
        match self.kind {
            ContradictionKind::EquationToNonzeroBase => !r.is_zero() && is_base_poly(&r),
            ContradictionKind::InequationToZero => r.is_zero(),
        }
    }
}

/// Result of the bounded decomposition.
#[derive(Clone, Debug)]
pub enum DecompositionResult {
    /// Disjoint simple systems covering the input's solution set.
    Complete(Vec<SimpleSystem>),
    /// Every branch closed with a contradiction certificate.
    Inconsistent(Vec<Contradiction>),
    /// A budget cap was hit; carries everything found so far.
    Inconclusive(InconclusiveReport),
}

#[derive(Clone, Debug)]
pub struct InconclusiveReport {
    pub exceeded: BudgetExceeded,
    /// Consistent simple systems already found (sound evidence).
    pub completed: Vec<SimpleSystem>,
    pub closed_branches: usize,
    pub open_branches: usize,
}

impl DecompositionResult {
    /// Simple systems that certify consistency, regardless of status.
    pub fn systems(&self) -> &[SimpleSystem] {
        match self {
            DecompositionResult::Complete(s) => s,
            DecompositionResult::Inconsistent(_) => &[],
            DecompositionResult::Inconclusive(r) => &r.completed,
        }
    }
}

fn is_base_poly(p: &MPoly) -> bool {
    !p.any_symbol(|s| !s.is_base())
}

struct Branch {
    id: usize,
    todo: Vec<MPoly>,
    pivots: BTreeMap<Symbol, DiffPoly>,
    ineqs: Vec<MPoly>,
    conditions: Vec<(MPoly, bool)>,
}

impl Branch {
    fn child(&self, id: usize) -> Branch {
        Branch {
            id,
            todo: self.todo.clone(),
            pivots: self.pivots.clone(),
            ineqs: self.ineqs.clone(),
            conditions: self.conditions.clone(),
        }
    }

    fn known_nonzero(&self, p: &MPoly) -> bool {
        if p.is_constant() {
            return !p.is_zero();
        }
        if is_base_poly(p) {
            return true;
        }
        if self.ineqs.contains(p) {
            return true;
        }
        // a monomial is nonzero iff each of its symbols is
        if p.len() == 1 {
            let (m, _) = p.leading().unwrap();
            return m.symbols().all(|s| {
                s.is_base() || self.ineqs.contains(&MPoly::var(s))
            });
        }
        false
    }

    fn add_ineq(&mut self, p: MPoly) {
        if p.is_constant() || is_base_poly(&p) {
            return;
        }
        // a monomial is nonzero iff each of its symbols is
        if p.len() == 1 {
            let (m, _) = p.leading().unwrap();
            for s in m.symbols().filter(|s| s.is_func()) {
                let v = MPoly::var(s);
                if !self.ineqs.contains(&v) {
                    self.ineqs.push(v);
                }
            }
            return;
        }
        if !self.ineqs.contains(&p) {
            self.ineqs.push(p);
        }
    }
}

enum Outcome {
    Consistent(SimpleSystem),
    Closed(Contradiction),
    Split(Branch, Branch),
}

struct Driver<'a> {
    budget: &'a Budget,
    splits_used: u32,
    steps_used: u64,
    next_id: usize,
    trace: &'a mut dyn FnMut(String),
}

impl<'a> Driver<'a> {
    fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.steps_used += 1;
        if self.steps_used > self.budget.max_steps {
            Err(BudgetExceeded::Steps)
        } else {
            Ok(())
        }
    }

    fn take_split(&mut self) -> Result<(), BudgetExceeded> {
        self.splits_used += 1;
        if self.splits_used > self.budget.max_splits {
            Err(BudgetExceeded::Splits)
        } else {
            Ok(())
        }
    }

    fn pop_min(&self, br: &mut Branch) -> Option<MPoly> {
        if br.todo.is_empty() {
            return None;
        }
        let mut best = 0;
        let mut best_dp = DiffPoly::new(br.todo[0].clone());
        for i in 1..br.todo.len() {
            let dp = DiffPoly::new(br.todo[i].clone());
            if dp.strategy_cmp(&best_dp) == std::cmp::Ordering::Less {
                best = i;
                best_dp = dp;
            }
        }
        Some(br.todo.swap_remove(best))
    }

    fn close(&mut self, br: &Branch, kind: ContradictionKind, offending: MPoly, reduced: MPoly) -> Outcome {
        (self.trace)(format!(
            "CLOSE {} {}",
            br.id,
            match kind {
                ContradictionKind::EquationToNonzeroBase =>
                    format!("equation reduced to nonzero base polynomial {reduced}"),
                ContradictionKind::InequationToZero =>
                    format!("inequation {offending} reduced to zero"),
            }
        ));
        Outcome::Closed(Contradiction {
            branch: br.id,
            kind,
            offending,
            pivots: br.pivots.values().map(|d| d.poly().clone()).collect(),
            reduced,
        })
    }

    fn split_on(
        &mut self,
        br: &Branch,
        condition: MPoly,
        nonzero_todo: Vec<MPoly>,
        zero_todo: Vec<MPoly>,
    ) -> Result<Outcome, BudgetExceeded> {
        self.take_split()?;
        (self.trace)(format!("SPLIT {condition}"));
        let mut a = br.child(self.next_id);
        self.next_id += 1;
        a.add_ineq(condition.clone());
        a.conditions.push((condition.clone(), true));
        a.todo.extend(nonzero_todo);
        let mut b = br.child(self.next_id);
        self.next_id += 1;
        b.conditions.push((condition.clone(), false));
        b.todo.push(condition);
        b.todo.extend(zero_todo);
        Ok(Outcome::Split(a, b))
    }

    fn process(&mut self, br: &mut Branch) -> Result<Outcome, BudgetExceeded> {
        loop {
            self.tick()?;
            if let Some(p) = self.pop_min(br) {
                let ctx = ReduceCtx::new(&br.pivots, self.budget);
                let reduced = strip_base_content(&ctx.reduce(&p, ReduceMode::Janet, None)?);
                if reduced != p {
                    (self.trace)(format!("REDUCE {p} -> {reduced}"));
                }
                if reduced.is_zero() {
                    continue;
                }
                if is_base_poly(&reduced) {
                    return Ok(self.close(br, ContradictionKind::EquationToNonzeroBase, p, reduced));
                }
                // stronger probe: a Ritt-style reduction may expose a
                // base contradiction the Janet normal form cannot
                let probe = strip_base_content(&ctx.reduce(&reduced, ReduceMode::Full, None)?);
                if !probe.is_zero() && is_base_poly(&probe) {
                    return Ok(self.close(br, ContradictionKind::EquationToNonzeroBase, p, probe));
                }

                // common derivative-symbol factor: divide out when known
                // nonzero, otherwise split on its vanishing
                let content = reduced.monomial_content();
                if let Some(theta) = content.symbols().find(|s| s.is_func()) {
                    let e = content.deg(theta);
                    let factor = MPoly::var(theta);
                    let quotient = reduced
                        .exact_div(&MPoly::term(
                            Monomial::var_pow(theta, e),
                            Scalar::from_integer(1.into()),
                        ))
                        .expect("monomial content divides");
                    if br.known_nonzero(&factor) {
                        br.todo.push(quotient);
                        continue;
                    }
                    if quotient.is_constant() {
                        // c·theta^e = 0 is the atomic equation theta = 0
                        if e >= 2 {
                            br.todo.push(factor);
                            continue;
                        }
                        // e == 1: fall through to pivot handling below
                    } else {
                        return self.split_on(br, factor, vec![quotient], vec![]);
                    }
                }

                let mut reduced = reduced;
                let mut dp = DiffPoly::new(reduced.clone());
                let leader = dp.leader().expect("non-base polynomial has a leader");

                // content free of the leader: V(c·q) = V(c) ∪ V(q)
                let content = crate::poly::content_in(&reduced, leader);
                if !content.is_constant() && !is_base_poly(&content) {
                    let quotient = reduced.exact_div(&content).expect("content divides");
                    let condition = strip_base_content(&content);
                    if br.known_nonzero(&condition) {
                        br.todo.push(quotient);
                        continue;
                    }
                    return self.split_on(br, condition, vec![quotient], vec![]);
                }

                // square-free part: identical zero set, and required so
                // that a separant inequation cannot silently contradict a
                // repeated factor
                let sqfree_gcd = crate::poly::mpoly_gcd(&reduced, &dp.separant());
                if sqfree_gcd.deg_in(leader) >= 1 {
                    reduced = reduced
                        .exact_div(&sqfree_gcd)
                        .expect("gcd divides")
                        .integer_primitive()
                        .1;
                    (self.trace)(format!("REDUCE {} -> {reduced}", dp.poly()));
                    dp = DiffPoly::new(reduced.clone());
                }

                let init = strip_base_content(&dp.initial());
                if !br.known_nonzero(&init) {
                    return self.split_on(br, init, vec![reduced], vec![dp.reductum()]);
                }
                if dp.degree() > 1 {
                    let sep = strip_base_content(&dp.separant());
                    if !br.known_nonzero(&sep) {
                        return self.split_on(br, sep, vec![reduced.clone()], vec![reduced]);
                    }
                    br.add_ineq(sep);
                }
                br.add_ineq(init);

                if let Some(old) = br.pivots.remove(&leader) {
                    // the Janet normal form left a lower degree in the
                    // shared leader: the new one becomes the pivot
                    debug_assert!(dp.degree() < old.degree());
                    br.todo.push(old.into_poly());
                }
                br.pivots.insert(leader, dp);
                continue;
            }

            // inequation maintenance
            {
                let ctx = ReduceCtx::new(&br.pivots, self.budget);
                let mut kept: Vec<MPoly> = vec![];
                let mut closed: Option<Outcome> = None;
                for ineq in br.ineqs.clone() {
                    let r = strip_base_content(&ctx.reduce(&ineq, ReduceMode::Full, None)?);
                    if r.is_zero() {
                        closed = Some(self.close(
                            br,
                            ContradictionKind::InequationToZero,
                            ineq,
                            r,
                        ));
                        break;
                    }
                    if is_base_poly(&r) {
                        continue;
                    }
                    if r.len() == 1 {
                        let (m, _) = r.leading().unwrap();
                        for s in m.symbols().filter(|s| s.is_func()) {
                            let v = MPoly::var(s);
                            if !kept.contains(&v) {
                                kept.push(v);
                            }
                        }
                    } else if !kept.contains(&r) {
                        kept.push(r);
                    }
                }
                if let Some(c) = closed {
                    return Ok(c);
                }
                br.ineqs = kept;
            }

            // Janet autoreduction: each pivot reduced modulo the others
            let mut changed = false;
            for (leader, pivot) in br.pivots.clone() {
                let mut rest = br.pivots.clone();
                rest.remove(&leader);
                let ctx = ReduceCtx::new(&rest, self.budget);
                let nf = strip_base_content(&ctx.reduce(pivot.poly(), ReduceMode::Janet, None)?);
                if nf != *pivot.poly() {
                    (self.trace)(format!("REDUCE {} -> {nf}", pivot.poly()));
                    br.pivots.remove(&leader);
                    if !nf.is_zero() {
                        br.todo.push(nf);
                    }
                    changed = true;
                    break;
                }
            }
            if changed {
                continue;
            }

            // passivity: nonmultiplicative prolongations must reduce to 0
            let assignment = JanetAssignment::compute(br.pivots.keys().copied());
            let ctx = ReduceCtx::new(&br.pivots, self.budget);
            let mut produced = false;
            for (leader, pivot) in br.pivots.iter() {
                let (nx, ny) = assignment.nonmultiplicative(*leader);
                for (dx, dy, flag) in [(1u8, 0u8, nx), (0, 1, ny)] {
                    if !flag {
                        continue;
                    }
                    let order = leader.derivative_order().unwrap_or(0) + 1;
                    if order > self.budget.max_order {
                        return Err(BudgetExceeded::Order { requested: order });
                    }
                    let pr = pivot.prolong(dx, dy);
                    let nf = strip_base_content(&ctx.reduce(pr.poly(), ReduceMode::Janet, None)?);
                    if !nf.is_zero() {
                        br.todo.push(nf);
                        produced = true;
                    }
                }
            }
            if produced {
                continue;
            }

            // passive and consistent: assemble the simple system
            let mut inequations = br.ineqs.clone();
            for pivot in br.pivots.values() {
                let init = strip_base_content(&pivot.initial());
                push_ineq_normalized(&mut inequations, init);
                if pivot.degree() > 1 {
                    let sep = strip_base_content(&pivot.separant());
                    push_ineq_normalized(&mut inequations, sep);
                }
            }
            inequations.sort_by(mpoly_cmp);
            let equations: Vec<DiffPoly> = br.pivots.values().cloned().collect();
            return Ok(Outcome::Consistent(SimpleSystem {
                equations,
                inequations,
                conditions: br.conditions.clone(),
            }));
        }
    }
}

/// Decompose a polynomially-nonlinear PDE system into disjoint simple
/// systems, prove it inconsistent, or stop at the budget.
pub fn thomas_decompose(sys: &PDESystem, budget: &Budget) -> DecompositionResult {
    let mut sink = |_: String| {};
    thomas_decompose_traced(sys, budget, &mut sink)
}

/// As [`thomas_decompose`], emitting a line-oriented trace of splits,
/// reductions, and branch closures.
pub fn thomas_decompose_traced(
    sys: &PDESystem,
    budget: &Budget,
    trace: &mut dyn FnMut(String),
) -> DecompositionResult {
    let seed = Branch {
        id: 0,
        todo: sys
            .equations
            .iter()
            .map(|p| strip_base_content(&p.integer_primitive().1))
            .collect(),
        pivots: BTreeMap::new(),
        ineqs: sys
            .inequations
            .iter()
            .map(|p| p.integer_primitive().1)
            .filter(|p| !p.is_constant() && !is_base_poly(p))
            .collect(),
        conditions: vec![],
    };
    let mut driver = Driver {
        budget,
        splits_used: 0,
        steps_used: 0,
        next_id: 1,
        trace,
    };
    let mut stack = vec![seed];
    let mut completed: Vec<(usize, SimpleSystem)> = vec![];
    let mut contradictions = vec![];
    while let Some(mut br) = stack.pop() {
        let id = br.id;
        match driver.process(&mut br) {
            Ok(Outcome::Consistent(ss)) => completed.push((id, ss)),
            Ok(Outcome::Closed(c)) => contradictions.push(c),
            Ok(Outcome::Split(a, b)) => {
                stack.push(b);
                stack.push(a);
            }
            Err(exceeded) => {
                completed.sort_by_key(|(id, _)| *id);
                return DecompositionResult::Inconclusive(InconclusiveReport {
                    exceeded,
                    completed: completed.into_iter().map(|(_, s)| s).collect(),
                    closed_branches: contradictions.len(),
                    open_branches: stack.len() + 1,
                });
            }
        }
    }
    completed.sort_by_key(|(id, _)| *id);
    if completed.is_empty() {
        DecompositionResult::Inconsistent(contradictions)
    } else {
        DecompositionResult::Complete(completed.into_iter().map(|(_, s)| s).collect())
    }
}

/// Ritt-style full pseudo-reduction of `p` modulo a simple system.
///
/// The result contains no derivative of any equation's leader of
/// equal-or-higher rank with degree at or above that equation's leader
/// degree; the collected multipliers are the initials and separants
/// applied.
pub fn pseudo_reduce(
    p: &DiffPoly,
    system: &SimpleSystem,
    budget: &Budget,
) -> (DiffPoly, Vec<MPoly>) {
    let pivots = system.pivot_map();
    let ctx = ReduceCtx::new(&pivots, budget);
    let mut multipliers = vec![];
    let reduced = ctx
        .reduce(p.poly(), ReduceMode::Full, Some(&mut multipliers))
        .unwrap_or_else(|_| p.poly().clone());
    (DiffPoly::new(reduced), multipliers)
}

/// Thomas splitting of a single polynomial on its initial.
#[derive(Clone, Debug)]
pub enum SplitOutcome {
    /// The initial is a base-field unit: no case distinction arises.
    Single(DiffPoly),
    /// Two cases, nonzero branch first.
    Cases {
        initial: MPoly,
        pivot: DiffPoly,
        /// Equations adjoined on the vanishing branch.
        zero_branch: Vec<MPoly>,
    },
    /// A nonzero constant: no solutions.
    Inconsistent,
}

pub fn split(p: &DiffPoly) -> SplitOutcome {
    if p.is_base() {
        return if p.is_zero() {
            SplitOutcome::Single(p.clone())
        } else {
            SplitOutcome::Inconsistent
        };
    }
    let init = strip_base_content(&p.initial());
    if is_base_poly(&init) {
        return SplitOutcome::Single(p.clone());
    }
    SplitOutcome::Cases {
        initial: init.clone(),
        pivot: p.clone(),
        zero_branch: vec![init, p.reductum()],
    }
}

/// All integrability conditions of a triangular system that do not
/// reduce to zero: cross-derivative differences of leader pairs with a
/// common derivative, and the prolongations mandated by Janet division.
/// An empty result certifies passivity.
pub fn integrability_conditions(system: &SimpleSystem, budget: &Budget) -> Vec<DiffPoly> {
    let pivots = system.pivot_map();
    let ctx = ReduceCtx::new(&pivots, budget);
    let assignment = JanetAssignment::compute(pivots.keys().copied());
    let mut out: Vec<DiffPoly> = vec![];
    let items: Vec<(&Symbol, &DiffPoly)> = pivots.iter().collect();
    for i in 0..items.len() {
        for j in (i + 1)..items.len() {
            let (li, pi) = items[i];
            let (lj, pj) = items[j];
            let (Some((ni, ai, bi)), Some((nj, aj, bj))) = (li.func_parts(), lj.func_parts())
            else {
                continue;
            };
            if ni != nj {
                continue;
            }
            let (la, lb) = (ai.max(aj), bi.max(bj));
            let di = pi.prolong(la - ai, lb - bi);
            let dj = pj.prolong(la - aj, lb - bj);
            // cancel the common top derivative
            let delta = di
                .poly()
                .mul(&pj.separant())
                .sub(&dj.poly().mul(&pi.separant()));
            if let Ok(nf) = ctx.reduce(&delta, ReduceMode::Janet, None) {
                let nf = strip_base_content(&nf);
                if !nf.is_zero() && !out.iter().any(|d| d.poly() == &nf) {
                    out.push(DiffPoly::new(nf));
                }
            }
        }
    }
    for (leader, pivot) in pivots.iter() {
        let (nx, ny) = assignment.nonmultiplicative(*leader);
        for (dx, dy, flag) in [(1u8, 0u8, nx), (0, 1, ny)] {
            if !flag {
                continue;
            }
            let pr = pivot.prolong(dx, dy);
            if let Ok(nf) = ctx.reduce(pr.poly(), ReduceMode::Janet, None) {
                let nf = strip_base_content(&nf);
                if !nf.is_zero() && !out.iter().any(|d| d.poly() == &nf) {
                    out.push(DiffPoly::new(nf));
                }
            }
        }
    }
    out
}
