//! The closed symbol universe: coordinates, jet variables, and partial
//! derivatives of the unknown functions of `(x, y)`.

use std::cmp::Ordering;
use std::fmt;

/// Names of the unknown functions that can occur in determining systems.
///
/// The listed order is the fixed unknown order of the differential
/// ranking: `A_0 < A_1 < … < H < ξ < η < g < f`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FuncName {
    /// Coefficient `A_i` of the linear target equation.
    A(u8),
    /// Undetermined ODE coefficient `H(x, y)`.
    H,
    /// Symmetry generator component `ξ(x, y)`.
    Xi,
    /// Symmetry generator component `η(x, y)`.
    Eta,
    /// Point transformation component `t = g(x, y)`.
    G,
    /// Point transformation component `u = f(x, y)`.
    F,
}

impl FuncName {
    fn class(self) -> (u8, u8) {
        match self {
            FuncName::A(i) => (0, i),
            FuncName::H => (1, 0),
            FuncName::Xi => (2, 0),
            FuncName::Eta => (3, 0),
            FuncName::G => (4, 0),
            FuncName::F => (5, 0),
        }
    }
}

impl Ord for FuncName {
    fn cmp(&self, other: &Self) -> Ordering {
        self.class().cmp(&other.class())
    }
}

impl PartialOrd for FuncName {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FuncName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuncName::A(i) => write!(f, "A{i}"),
            FuncName::H => write!(f, "H"),
            FuncName::Xi => write!(f, "xi"),
            FuncName::Eta => write!(f, "eta"),
            FuncName::G => write!(f, "g"),
            FuncName::F => write!(f, "f"),
        }
    }
}

/// A polynomial indeterminate of the expression class.
///
/// `Func(u, a, b)` stands for `∂_x^a ∂_y^b u`. The `Ord` instance is the
/// single fixed order used everywhere: for the monomial order of the
/// canonical form and, restricted to `Func` symbols, as the differential
/// ranking (orderly by total derivative order, ties by `(a, b)` with
/// x-derivatives heavier, ties by the unknown order).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Symbol {
    /// Independent variable `x`.
    X,
    /// Dependent variable `y`, a coordinate on jet space.
    Y,
    /// Independent variable `t` of the linear target equation.
    T,
    /// Jet variable `y⁽ᵏ⁾`, `k ≥ 1`.
    Jet(u8),
    /// `∂_x^a ∂_y^b u` for an unknown function `u` of `(x, y)`.
    Func(FuncName, u8, u8),
    /// Undetermined ansatz coefficient, internal to the heuristic solver.
    Coef(u16),
}

impl Symbol {
    fn class(self) -> u8 {
        match self {
            Symbol::X => 0,
            Symbol::Y => 1,
            Symbol::T => 2,
            Symbol::Jet(_) => 3,
            Symbol::Func(..) => 4,
            Symbol::Coef(_) => 5,
        }
    }

    pub fn jet(order: u8) -> Symbol {
        assert!(order >= 1, "jet order must be at least 1");
        Symbol::Jet(order)
    }

    pub fn func(name: FuncName) -> Symbol {
        Symbol::Func(name, 0, 0)
    }

    pub fn is_jet(self) -> bool {
        matches!(self, Symbol::Jet(_))
    }

    pub fn jet_order(self) -> Option<u8> {
        match self {
            Symbol::Jet(k) => Some(k),
            _ => None,
        }
    }

    pub fn is_func(self) -> bool {
        matches!(self, Symbol::Func(..))
    }

    pub fn func_parts(self) -> Option<(FuncName, u8, u8)> {
        match self {
            Symbol::Func(n, a, b) => Some((n, a, b)),
            _ => None,
        }
    }

    /// Base symbols are the coordinates `(x, y)`; an equation containing
    /// only these is a unit or a contradiction in the coefficient field.
    pub fn is_base(self) -> bool {
        matches!(self, Symbol::X | Symbol::Y)
    }

    /// The derivative `∂_x^dx ∂_y^dy` of a function symbol.
    pub fn prolong(self, dx: u8, dy: u8) -> Option<Symbol> {
        match self {
            Symbol::Func(n, a, b) => Some(Symbol::Func(n, a + dx, b + dy)),
            _ => None,
        }
    }

    /// Total derivative order `a + b` of a function symbol.
    pub fn derivative_order(self) -> Option<u32> {
        match self {
            Symbol::Func(_, a, b) => Some(a as u32 + b as u32),
            _ => None,
        }
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.class().cmp(&other.class()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match (self, other) {
            (Symbol::Jet(a), Symbol::Jet(b)) => a.cmp(b),
            (Symbol::Func(n1, a1, b1), Symbol::Func(n2, a2, b2)) => {
                let o1 = *a1 as u16 + *b1 as u16;
                let o2 = *a2 as u16 + *b2 as u16;
                o1.cmp(&o2)
                    .then_with(|| a1.cmp(a2))
                    .then_with(|| n1.cmp(n2))
            }
            (Symbol::Coef(a), Symbol::Coef(b)) => a.cmp(b),
            _ => Ordering::Equal,
        }
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::X => write!(f, "x"),
            Symbol::Y => write!(f, "y"),
            Symbol::T => write!(f, "t"),
            Symbol::Jet(k) => match k {
                1 => write!(f, "y'"),
                2 => write!(f, "y''"),
                3 => write!(f, "y'''"),
                k => write!(f, "D(y,{k})"),
            },
            Symbol::Func(name, 0, 0) => write!(f, "{name}"),
            Symbol::Func(name, a, b) => {
                write!(f, "{name}_")?;
                for _ in 0..*a {
                    write!(f, "x")?;
                }
                for _ in 0..*b {
                    write!(f, "y")?;
                }
                Ok(())
            }
            Symbol::Coef(i) => write!(f, "c{i}"),
        }
    }
}
