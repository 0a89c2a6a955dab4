//! Symbolic expression trees over exact rationals.
//!
//! Constructors perform only cheap local rewrites (flattening, constant
//! folding); the sound zero test lives in [`crate::canonical`].

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::symbol::{FuncName, Symbol};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Num(Scalar),
    Sym(Symbol),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, i32),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Num(Scalar::zero())
    }

    pub fn one() -> Expr {
        Expr::Num(Scalar::one())
    }

    pub fn int(n: i64) -> Expr {
        Expr::Num(scalar::int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::Num(scalar::ratio(n, d))
    }

    pub fn num(s: Scalar) -> Expr {
        Expr::Num(s)
    }

    pub fn sym(s: Symbol) -> Expr {
        Expr::Sym(s)
    }

    pub fn x() -> Expr {
        Expr::Sym(Symbol::X)
    }

    pub fn y() -> Expr {
        Expr::Sym(Symbol::Y)
    }

    pub fn jet(k: u8) -> Expr {
        Expr::Sym(Symbol::jet(k))
    }

    pub fn func(name: FuncName) -> Expr {
        Expr::Sym(Symbol::func(name))
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Num(c) if c.is_zero())
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        let mut flat = Vec::with_capacity(terms.len());
        let mut constant = Scalar::zero();
        for t in terms {
            match t {
                Expr::Num(c) => constant += c,
                Expr::Add(inner) => {
                    for u in inner {
                        match u {
                            Expr::Num(c) => constant += c,
                            other => flat.push(other),
                        }
                    }
                }
                other => flat.push(other),
            }
        }
        if !constant.is_zero() {
            flat.push(Expr::Num(constant));
        }
        match flat.len() {
            0 => Expr::zero(),
            1 => flat.pop().unwrap(),
            _ => Expr::Add(flat),
        }
    }

    pub fn product(factors: Vec<Expr>) -> Expr {
        let mut flat = Vec::with_capacity(factors.len());
        let mut constant = Scalar::one();
        for t in factors {
            match t {
                Expr::Num(c) => {
                    if c.is_zero() {
                        return Expr::zero();
                    }
                    constant *= c;
                }
                Expr::Mul(inner) => {
                    for u in inner {
                        match u {
                            Expr::Num(c) => {
                                if c.is_zero() {
                                    return Expr::zero();
                                }
                                constant *= c;
                            }
                            other => flat.push(other),
                        }
                    }
                }
                other => flat.push(other),
            }
        }
        if flat.is_empty() {
            return Expr::Num(constant);
        }
        if !constant.is_one() {
            flat.insert(0, Expr::Num(constant));
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Expr::Mul(flat)
        }
    }

    pub fn pow(self, k: i32) -> Expr {
        match k {
            0 => Expr::one(),
            1 => self,
            _ => match self {
                Expr::Num(c) => {
                    if c.is_zero() {
                        if k < 0 {
                            // surfaces as DivisionByZero during normalization
                            Expr::Div(Box::new(Expr::one()), Box::new(Expr::zero()))
                        } else {
                            Expr::zero()
                        }
                    } else {
                        let mut v = Scalar::one();
                        for _ in 0..k.unsigned_abs() {
                            v *= &c;
                        }
                        if k < 0 {
                            Expr::Num(v.recip())
                        } else {
                            Expr::Num(v)
                        }
                    }
                }
                Expr::Pow(base, j) => Expr::Pow(base, j * k),
                other => Expr::Pow(Box::new(other), k),
            },
        }
    }

    pub fn div(self, den: Expr) -> Expr {
        if let Expr::Num(c) = &den {
            if !c.is_zero() {
                return Expr::product(vec![Expr::Num(c.recip()), self]);
            }
        }
        Expr::Div(Box::new(self), Box::new(den))
    }

    /// Partial derivative with respect to a symbol.
    ///
    /// Jet-space coordinates are mutually independent; function symbols
    /// of `(x, y)` respond to `x`- and `y`-derivatives by incrementing
    /// their derivative index and are annihilated by jet derivatives.
    pub fn diff(&self, s: Symbol) -> Expr {
        match self {
            Expr::Num(_) => Expr::zero(),
            Expr::Sym(v) => {
                if *v == s {
                    return Expr::one();
                }
                match (*v, s) {
                    (Symbol::Func(n, a, b), Symbol::X) => Expr::Sym(Symbol::Func(n, a + 1, b)),
                    (Symbol::Func(n, a, b), Symbol::Y) => Expr::Sym(Symbol::Func(n, a, b + 1)),
                    _ => Expr::zero(),
                }
            }
            Expr::Add(ts) => Expr::sum(ts.iter().map(|t| t.diff(s)).collect()),
            Expr::Mul(ts) => {
                let mut out = Vec::with_capacity(ts.len());
                for (i, t) in ts.iter().enumerate() {
                    let d = t.diff(s);
                    if d.is_zero_literal() {
                        continue;
                    }
                    let mut factors = Vec::with_capacity(ts.len());
                    for (j, u) in ts.iter().enumerate() {
                        if i == j {
                            factors.push(d.clone());
                        } else {
                            factors.push(u.clone());
                        }
                    }
                    out.push(Expr::product(factors));
                }
                Expr::sum(out)
            }
            Expr::Pow(base, k) => {
                let d = base.diff(s);
                if d.is_zero_literal() {
                    return Expr::zero();
                }
                Expr::product(vec![
                    Expr::int(*k as i64),
                    base.as_ref().clone().pow(*k - 1),
                    d,
                ])
            }
            Expr::Div(a, b) => {
                let da = a.diff(s);
                let db = b.diff(s);
                let num = Expr::sum(vec![
                    Expr::product(vec![da, b.as_ref().clone()]),
                    Expr::product(vec![Expr::int(-1), a.as_ref().clone(), db]),
                ]);
                num.div(b.as_ref().clone().pow(2))
            }
        }
    }

    /// Repeated partial derivative `∂_x^a ∂_y^b`.
    pub fn diff_xy(&self, a: u8, b: u8) -> Expr {
        let mut e = self.clone();
        for _ in 0..a {
            e = e.diff(Symbol::X);
        }
        for _ in 0..b {
            e = e.diff(Symbol::Y);
        }
        e
    }

    /// Maximum jet order occurring in the expression, if any.
    pub fn max_jet_order(&self) -> Option<u8> {
        match self {
            Expr::Num(_) => None,
            Expr::Sym(Symbol::Jet(k)) => Some(*k),
            Expr::Sym(_) => None,
            Expr::Add(ts) | Expr::Mul(ts) => ts.iter().filter_map(|t| t.max_jet_order()).max(),
            Expr::Pow(b, _) => b.max_jet_order(),
            Expr::Div(a, b) => a.max_jet_order().max(b.max_jet_order()),
        }
    }

    /// Total derivative along solutions,
    /// `D_x = ∂_x + y′∂_y + y″∂_{y′} + …`, with function symbols of
    /// `(x, y)` transforming by `D_x F = F_x + y′ F_y`.
    ///
    /// `jet_cutoff` bounds the jet order of the result; the input must
    /// only contain jets of strictly smaller order.
    pub fn total_diff_x(&self, jet_cutoff: u8) -> Result<Expr> {
        if let Some(k) = self.max_jet_order() {
            if k >= jet_cutoff {
                return Err(Error::CutoffExceeded {
                    found: k,
                    cutoff: jet_cutoff,
                });
            }
        }
        let mut terms = vec![self.diff(Symbol::X)];
        terms.push(Expr::product(vec![Expr::jet(1), self.diff(Symbol::Y)]));
        if let Some(top) = self.max_jet_order() {
            for k in 1..=top {
                terms.push(Expr::product(vec![
                    Expr::jet(k + 1),
                    self.diff(Symbol::jet(k)),
                ]));
            }
        }
        Ok(Expr::sum(terms))
    }

    /// Replace symbols by expressions.
    pub fn substitute(&self, map: &BTreeMap<Symbol, Expr>) -> Expr {
        match self {
            Expr::Num(_) => self.clone(),
            Expr::Sym(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Expr::Add(ts) => Expr::sum(ts.iter().map(|t| t.substitute(map)).collect()),
            Expr::Mul(ts) => Expr::product(ts.iter().map(|t| t.substitute(map)).collect()),
            Expr::Pow(b, k) => b.substitute(map).pow(*k),
            Expr::Div(a, b) => a.substitute(map).div(b.substitute(map)),
        }
    }

    /// Replace every derivative symbol of the named unknowns by the
    /// corresponding partial derivative of an explicit expression in
    /// `(x, y)`.
    pub fn substitute_funcs(&self, assignment: &BTreeMap<FuncName, Expr>) -> Expr {
        let mut map = BTreeMap::new();
        self.collect_symbols(&mut |s| {
            if let Symbol::Func(name, a, b) = s {
                if let Some(value) = assignment.get(&name) {
                    map.entry(s).or_insert_with(|| value.diff_xy(a, b));
                }
            }
        });
        self.substitute(&map)
    }

    pub fn collect_symbols(&self, visit: &mut impl FnMut(Symbol)) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(v) => visit(*v),
            Expr::Add(ts) | Expr::Mul(ts) => {
                for t in ts {
                    t.collect_symbols(visit);
                }
            }
            Expr::Pow(b, _) => b.collect_symbols(visit),
            Expr::Div(a, b) => {
                a.collect_symbols(visit);
                b.collect_symbols(visit);
            }
        }
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut set = std::collections::BTreeSet::new();
        self.collect_symbols(&mut |s| {
            set.insert(s);
        });
        set.into_iter().collect()
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::sum(vec![self, rhs])
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sum(vec![self, Expr::product(vec![Expr::int(-1), rhs])])
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::product(vec![self, rhs])
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::product(vec![Expr::int(-1), self])
    }
}

fn write_num(f: &mut fmt::Formatter<'_>, c: &Scalar) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Precedence-aware printing in the input grammar's token set, so that
/// printed forms reparse.
fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, prec: u8) -> fmt::Result {
    // prec: 0 sum, 1 product, 2 power/atom
    match e {
        Expr::Num(c) => {
            let needs = (c.is_negative() || !c.denom().is_one()) && prec >= 1;
            if needs {
                write!(f, "(")?;
            }
            write_num(f, c)?;
            if needs {
                write!(f, ")")?;
            }
            Ok(())
        }
        Expr::Sym(Symbol::Func(name, 0, 0))
            if matches!(name, FuncName::H) =>
        {
            write!(f, "H(x,y)")
        }
        Expr::Sym(s) => write!(f, "{s}"),
        Expr::Add(ts) => {
            if prec >= 1 {
                write!(f, "(")?;
            }
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    // fold a leading negative constant factor into " - "
                    if let Some(rest) = negated_view(t) {
                        write!(f, " - ")?;
                        write_expr(f, &rest, 1)?;
                        continue;
                    }
                    write!(f, " + ")?;
                }
                write_expr(f, t, 1)?;
            }
            if prec >= 1 {
                write!(f, ")")?;
            }
            Ok(())
        }
        Expr::Mul(ts) => {
            if prec >= 2 {
                write!(f, "(")?;
            }
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                write_expr(f, t, 2)?;
            }
            if prec >= 2 {
                write!(f, ")")?;
            }
            Ok(())
        }
        Expr::Pow(b, k) => {
            match b.as_ref() {
                Expr::Sym(_) => write_expr(f, b, 2)?,
                _ => {
                    write!(f, "(")?;
                    write_expr(f, b, 0)?;
                    write!(f, ")")?;
                }
            }
            if *k < 0 {
                write!(f, "^({k})")
            } else {
                write!(f, "^{k}")
            }
        }
        Expr::Div(a, b) => {
            if prec >= 2 {
                write!(f, "(")?;
            }
            write_expr(f, a, 2)?;
            write!(f, "/")?;
            write_expr(f, b, 2)?;
            if prec >= 2 {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

/// If `e` is a product with a negative leading constant, return the
/// product with that constant negated.
fn negated_view(e: &Expr) -> Option<Expr> {
    match e {
        Expr::Num(c) if c.is_negative() => Some(Expr::Num(-c.clone())),
        Expr::Mul(ts) => match ts.first() {
            Some(Expr::Num(c)) if c.is_negative() => {
                let mut out = ts.clone();
                let neg = -c.clone();
                if neg.is_one() && out.len() > 1 {
                    out.remove(0);
                } else {
                    out[0] = Expr::Num(neg);
                }
                Some(Expr::product(out))
            }
            _ => None,
        },
        _ => None,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f00() -> Expr {
        Expr::func(FuncName::F)
    }

    #[test]
    fn diff_polynomial() {
        // d/dx (x^2 y^2) = 2 x y^2
        let e = Expr::x().pow(2) * Expr::y().pow(2);
        let d = e.diff(Symbol::X);
        let expected = Expr::int(2) * Expr::x() * Expr::y().pow(2);
        assert_eq!(
            crate::canonical::normalize(&(d - expected)).unwrap().num,
            crate::poly::MPoly::zero()
        );
    }

    #[test]
    fn diff_product_rule_on_function_symbols() {
        let e = f00() * Expr::func(FuncName::G);
        let d = e.diff(Symbol::Y);
        let expected = Expr::Sym(Symbol::Func(FuncName::F, 0, 1)) * Expr::func(FuncName::G)
            + f00() * Expr::Sym(Symbol::Func(FuncName::G, 0, 1));
        let diff = crate::canonical::normalize(&(d - expected)).unwrap();
        assert!(diff.is_zero());
    }

    #[test]
    fn diff_jet_power() {
        let e = Expr::jet(1).pow(3);
        let d = e.diff(Symbol::jet(1));
        let expected = Expr::int(3) * Expr::jet(1).pow(2);
        assert!(crate::canonical::normalize(&(d - expected))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn total_diff_basics() {
        // D_x y = y'
        let d = Expr::y().total_diff_x(5).unwrap();
        assert!(crate::canonical::normalize(&(d - Expr::jet(1)))
            .unwrap()
            .is_zero());
        // D_x (x^2 y^2) = 2 x y^2 + 2 x^2 y y'
        let e = Expr::x().pow(2) * Expr::y().pow(2);
        let d = e.total_diff_x(5).unwrap();
        let expected = Expr::int(2) * Expr::x() * Expr::y().pow(2)
            + Expr::int(2) * Expr::x().pow(2) * Expr::y() * Expr::jet(1);
        assert!(crate::canonical::normalize(&(d - expected))
            .unwrap()
            .is_zero());
        // D_x g = g_x + y' g_y
        let d = Expr::func(FuncName::G).total_diff_x(5).unwrap();
        let expected = Expr::Sym(Symbol::Func(FuncName::G, 1, 0))
            + Expr::jet(1) * Expr::Sym(Symbol::Func(FuncName::G, 0, 1));
        assert!(crate::canonical::normalize(&(d - expected))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn total_diff_cutoff() {
        let e = Expr::jet(3);
        assert_eq!(
            e.total_diff_x(3),
            Err(Error::CutoffExceeded {
                found: 3,
                cutoff: 3
            })
        );
    }

    #[test]
    fn display_reparses_tokens() {
        let e = Expr::int(2) * Expr::x().pow(2) * Expr::y() - Expr::jet(2).pow(3)
            + Expr::ratio(1, 2) * Expr::jet(4);
        let s = e.to_string();
        assert_eq!(s, "2*x^2*y - y''^3 + (1/2)*D(y,4)");
    }
}
