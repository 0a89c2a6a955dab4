//! Differential polynomials: polynomials in the partial derivatives of
//! unknown functions of `(x, y)` with coefficients polynomial in the
//! base variables, together with their leader, initial, and separant.

use crate::canonical::normalize;
use crate::error::Result;
use crate::expr::Expr;
use crate::poly::{MPoly, Monomial};
use crate::scalar::Scalar;
use crate::symbol::Symbol;
use std::cmp::Ordering;
use std::fmt;

/// A differential polynomial with cached leader data.
///
/// The leader is the highest-ranked derivative symbol present; base
/// polynomials (in `x, y` only) have none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffPoly {
    poly: MPoly,
    leader: Option<Symbol>,
    degree: u16,
}

impl DiffPoly {
    pub fn new(poly: MPoly) -> DiffPoly {
        let leader = poly
            .symbols()
            .into_iter()
            .filter(|s| s.is_func())
            .next_back();
        let degree = leader.map(|l| poly.deg_in(l)).unwrap_or(0);
        DiffPoly {
            poly,
            leader,
            degree,
        }
    }

    /// Build from an expression, clearing base-field denominators (they
    /// are units of the coefficient field).
    pub fn from_expr(e: &Expr) -> Result<DiffPoly> {
        let rat = normalize(e)?;
        Ok(DiffPoly::new(rat.num.integer_primitive().1))
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MPoly {
        self.poly
    }

    pub fn leader(&self) -> Option<Symbol> {
        self.leader
    }

    /// Degree of the polynomial in its leader.
    pub fn degree(&self) -> u16 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// True when no derivative symbol occurs.
    pub fn is_base(&self) -> bool {
        self.leader.is_none()
    }

    /// Leading coefficient with respect to the leader.
    pub fn initial(&self) -> MPoly {
        match self.leader {
            Some(l) => self.poly.coeff_of_power(l, self.degree),
            None => self.poly.clone(),
        }
    }

    /// Partial derivative with respect to the leader.
    pub fn separant(&self) -> MPoly {
        match self.leader {
            Some(l) => self.poly.derivative(l),
            None => MPoly::zero(),
        }
    }

    /// The polynomial with its leading leader power removed.
    pub fn reductum(&self) -> MPoly {
        match self.leader {
            Some(l) => {
                let lead = self
                    .initial()
                    .mul_term(&Monomial::var_pow(l, self.degree), &Scalar::from_integer(1.into()));
                self.poly.sub(&lead)
            }
            None => MPoly::zero(),
        }
    }

    /// Prolong by `∂_x^dx ∂_y^dy`.
    pub fn prolong(&self, dx: u8, dy: u8) -> DiffPoly {
        let mut p = self.poly.clone();
        for _ in 0..dx {
            p = p.derivative(Symbol::X);
        }
        for _ in 0..dy {
            p = p.derivative(Symbol::Y);
        }
        DiffPoly::new(p)
    }

    /// Highest derivative order of any symbol present.
    pub fn max_derivative_order(&self) -> u32 {
        self.poly
            .symbols()
            .into_iter()
            .filter_map(|s| s.derivative_order())
            .max()
            .unwrap_or(0)
    }

    /// Deterministic comparison used by selection strategies: by leader
    /// rank, then leader degree, then size, then term data.
    pub fn strategy_cmp(&self, other: &DiffPoly) -> Ordering {
        let key = |d: &DiffPoly| (d.leader, d.degree, d.poly.len());
        key(self)
            .cmp(&key(other))
            .then_with(|| mpoly_cmp(&self.poly, &other.poly))
    }
}

/// Total deterministic order on polynomials (term-lexicographic).
pub fn mpoly_cmp(a: &MPoly, b: &MPoly) -> Ordering {
    let (ta, tb) = (a.terms(), b.terms());
    for i in 0..ta.len().min(tb.len()) {
        match ta[i].0.cmp(&tb[i].0).then_with(|| ta[i].1.cmp(&tb[i].1)) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    ta.len().cmp(&tb.len())
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}
