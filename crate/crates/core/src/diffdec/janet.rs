//! Janet division on the derivative lattice of each unknown.

use crate::symbol::{FuncName, Symbol};
use std::collections::BTreeMap;

/// Multiplicative directions assigned to each leader.
#[derive(Clone, Debug, Default)]
pub struct JanetAssignment {
    mult: BTreeMap<Symbol, (bool, bool)>,
}

impl JanetAssignment {
    /// Compute the assignment for a set of distinct leaders.
    ///
    /// Within each unknown: `x` is multiplicative for the leaders of
    /// maximal `x`-degree; `y` is multiplicative for the leaders of
    /// maximal `y`-degree within their `x`-degree class.
    pub fn compute(leaders: impl Iterator<Item = Symbol>) -> JanetAssignment {
        let mut groups: BTreeMap<FuncName, Vec<(u8, u8)>> = BTreeMap::new();
        let mut all: Vec<Symbol> = vec![];
        for l in leaders {
            let (name, a, b) = l.func_parts().expect("leaders are derivative symbols");
            groups.entry(name).or_default().push((a, b));
            all.push(l);
        }
        let mut mult = BTreeMap::new();
        for l in all {
            let (name, a, b) = l.func_parts().unwrap();
            let group = &groups[&name];
            let max_a = group.iter().map(|&(a, _)| a).max().unwrap();
            let x_mult = a == max_a;
            let max_b_in_class = group
                .iter()
                .filter(|&&(a2, _)| a2 == a)
                .map(|&(_, b)| b)
                .max()
                .unwrap();
            let y_mult = b == max_b_in_class;
            mult.insert(l, (x_mult, y_mult));
        }
        JanetAssignment { mult }
    }

    pub fn multiplicative(&self, leader: Symbol) -> (bool, bool) {
        *self.mult.get(&leader).expect("leader in assignment")
    }

    /// The nonmultiplicative directions of a leader: `(x, y)` flags.
    pub fn nonmultiplicative(&self, leader: Symbol) -> (bool, bool) {
        let (mx, my) = self.multiplicative(leader);
        (!mx, !my)
    }

    /// Does `leader` Janet-divide the derivative `theta`?
    ///
    /// Componentwise divisibility where every excess direction is
    /// multiplicative for `leader`.
    pub fn divides(&self, leader: Symbol, theta: Symbol) -> bool {
        let (Some((n1, a1, b1)), Some((n2, a2, b2))) = (leader.func_parts(), theta.func_parts())
        else {
            return false;
        };
        if n1 != n2 || a2 < a1 || b2 < b1 {
            return false;
        }
        let (mx, my) = self.multiplicative(leader);
        (a2 == a1 || mx) && (b2 == b1 || my)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: u8, b: u8) -> Symbol {
        Symbol::Func(FuncName::F, a, b)
    }

    #[test]
    fn assignment_on_a_staircase() {
        // leaders (4,0), (3,1), (2,1), (1,1), (0,2)
        let leaders = vec![f(4, 0), f(3, 1), f(2, 1), f(1, 1), f(0, 2)];
        let j = JanetAssignment::compute(leaders.into_iter());
        assert_eq!(j.multiplicative(f(4, 0)), (true, true));
        assert_eq!(j.multiplicative(f(3, 1)), (false, true));
        assert_eq!(j.multiplicative(f(2, 1)), (false, true));
        assert_eq!(j.multiplicative(f(1, 1)), (false, true));
        assert_eq!(j.multiplicative(f(0, 2)), (false, true));
        // cones are disjoint: (2,3) belongs to (2,1) only
        assert!(j.divides(f(2, 1), f(2, 3)));
        assert!(!j.divides(f(1, 1), f(2, 3)));
        // (3,1) does not Janet-divide (4,1): x is nonmultiplicative
        assert!(!j.divides(f(3, 1), f(4, 1)));
    }

    #[test]
    fn single_leader_has_both_directions() {
        let j = JanetAssignment::compute(vec![Symbol::Func(FuncName::G, 0, 1)].into_iter());
        assert_eq!(
            j.multiplicative(Symbol::Func(FuncName::G, 0, 1)),
            (true, true)
        );
    }

    #[test]
    fn two_axis_leaders_partition_the_quadrant() {
        let a = Symbol::Func(FuncName::A(0), 1, 0);
        let b = Symbol::Func(FuncName::A(0), 0, 1);
        let j = JanetAssignment::compute(vec![a, b].into_iter());
        assert_eq!(j.multiplicative(a), (true, true));
        assert_eq!(j.multiplicative(b), (false, true));
        // (1,1) is in the cone of (1,0), not of (0,1)
        assert!(j.divides(a, Symbol::Func(FuncName::A(0), 1, 1)));
        assert!(!j.divides(b, Symbol::Func(FuncName::A(0), 1, 1)));
    }
}
