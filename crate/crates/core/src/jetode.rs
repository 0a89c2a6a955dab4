//! The ODE data model `y⁽ⁿ⁾ + M/N = 0` and its text parser.
//!
//! Input grammar (UTF-8): independent variable `x`, dependent `y`,
//! derivatives `D(y,k)` for `k ≥ 1` with aliases `y'`, `y''`, `y'''`;
//! operators `+ - * / ^`, integer literals, parentheses; optional
//! declarations `unknown H(x,y);` before the equation; the equation is
//! terminated by `= 0`.

use crate::canonical::{normalize, CanonicalRat};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::poly::MPoly;
use crate::symbol::{FuncName, Symbol};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// An ODE of order `n ≥ 2`, solved for the highest derivative:
/// `y⁽ⁿ⁾ + M/N = 0` with `M, N` polynomial in the jets `y′..y⁽ⁿ⁻¹⁾`
/// over rational functions of `(x, y)`, possibly containing declared
/// unknown coefficient functions.
#[derive(Clone, Debug)]
pub struct RationalODE {
    order: u8,
    m: MPoly,
    n_den: MPoly,
    declared: Vec<FuncName>,
    original: Expr,
    leading_coeff: Expr,
    source: String,
}

impl RationalODE {
    /// Build from the left-hand side of `lhs = 0`, dividing through by
    /// the coefficient of the highest derivative.
    pub fn from_equation(
        lhs: Expr,
        declared: Vec<FuncName>,
        source: String,
    ) -> Result<RationalODE> {
        let order = match lhs.max_jet_order() {
            Some(k) if k >= 2 => k,
            Some(k) => return Err(Error::OrderTooLow(k)),
            None => return Err(Error::OrderTooLow(0)),
        };
        let top = Symbol::jet(order);
        let coeff = lhs.diff(top);
        let coeff_rat = normalize(&coeff)?;
        if coeff_rat.contains(|s| s == top) {
            return Err(Error::NotSolvedForHighest(format!(
                "coefficient of {top} still involves {top}"
            )));
        }
        if coeff_rat.is_zero() {
            return Err(Error::NotSolvedForHighest(format!(
                "coefficient of {top} vanishes identically"
            )));
        }
        // linearity check: lhs - coeff * y^(n) must be free of y^(n)
        let rest = lhs.clone() - coeff.clone() * Expr::sym(top);
        let rest_rat = normalize(&rest)?;
        if rest_rat.contains(|s| s == top) {
            return Err(Error::NotSolvedForHighest(format!(
                "{top} appears nonlinearly"
            )));
        }
        let m_over_n = rest_rat.div(&coeff_rat)?;
        if let Some(k) = m_over_n.max_jet_order() {
            if k >= order {
                return Err(Error::JetOrder(format!(
                    "jet of order {k} in M/N of an order-{order} equation"
                )));
            }
        }
        Ok(RationalODE {
            order,
            m: m_over_n.num.clone(),
            n_den: m_over_n.den.clone(),
            declared,
            original: lhs,
            leading_coeff: coeff,
            source,
        })
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    /// Numerator `M` of the monic form.
    pub fn m(&self) -> &MPoly {
        &self.m
    }

    /// Denominator `N` of the monic form.
    pub fn n(&self) -> &MPoly {
        &self.n_den
    }

    pub fn m_over_n(&self) -> CanonicalRat {
        CanonicalRat {
            num: self.m.clone(),
            den: self.n_den.clone(),
        }
    }

    pub fn declared_unknowns(&self) -> &[FuncName] {
        &self.declared
    }

    pub fn has_unknowns(&self) -> bool {
        !self.declared.is_empty()
    }

    pub fn original(&self) -> &Expr {
        &self.original
    }

    pub fn leading_coeff(&self) -> &Expr {
        &self.leading_coeff
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// The monic left-hand side `y⁽ⁿ⁾ + M/N` as an expression.
    pub fn monic_lhs(&self) -> Expr {
        Expr::sym(Symbol::jet(self.order)) + self.m_over_n().to_expr()
    }

    /// Render the monic equation in the input grammar.
    pub fn pretty_print(&self) -> String {
        format!("{} = 0", self.monic_lhs())
    }
}

/// The four coefficients of the candidate cubic form
/// `y″ + F3 y′³ + F2 y′² + F1 y′ + F = 0`; each is a function of
/// `(x, y)` only.
#[derive(Clone, Debug)]
pub struct CubicForm2 {
    pub f3: Expr,
    pub f2: Expr,
    pub f1: Expr,
    pub f0: Expr,
}

impl CubicForm2 {
    pub fn new(f3: Expr, f2: Expr, f1: Expr, f0: Expr) -> CubicForm2 {
        CubicForm2 { f3, f2, f1, f0 }
    }

    /// Reassemble `F3 y′³ + F2 y′² + F1 y′ + F`.
    pub fn reassemble(&self) -> Expr {
        let yp = Expr::jet(1);
        self.f3.clone() * yp.clone().pow(3)
            + self.f2.clone() * yp.clone().pow(2)
            + self.f1.clone() * yp
            + self.f0.clone()
    }

    pub fn contains_unknowns(&self) -> bool {
        [&self.f3, &self.f2, &self.f1, &self.f0]
            .iter()
            .any(|e| e.symbols().iter().any(|s| s.is_func()))
    }
}

/// Read off `(F3, F2, F1, F)` from a second-order equation, requiring
/// `M/N` to be a polynomial of degree ≤ 3 in `y′` with jet-free
/// coefficients.
pub fn extract_cubic_form(ode: &RationalODE) -> Result<CubicForm2> {
    assert_eq!(ode.order(), 2, "cubic form is defined for order 2");
    let mn = ode.m_over_n();
    let yp = Symbol::jet(1);
    if mn.den.contains_symbol(yp) {
        return Err(Error::NotCubicForm(format!(
            "denominator {} involves y'",
            mn.den
        )));
    }
    let deg = mn.num.deg_in(yp);
    if deg > 3 {
        return Err(Error::NotCubicForm(format!("degree {deg} > 3 in y'")));
    }
    let mut coeffs = mn.num.coeffs_in(yp);
    coeffs.resize(4, MPoly::zero());
    let den = CanonicalRat::from_poly(mn.den.clone());
    let mut out = Vec::with_capacity(4);
    for c in coeffs {
        let q = CanonicalRat::from_poly(c).div(&den)?;
        out.push(q.to_expr());
    }
    let f0 = out.remove(0);
    let f1 = out.remove(0);
    let f2 = out.remove(0);
    let f3 = out.remove(0);
    Ok(CubicForm2::new(f3, f2, f1, f0))
}

// ---------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Equals,
    Prime(u8),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut toks = vec![];
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            ',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            ';' => {
                toks.push((i, Tok::Semi));
                i += 1;
            }
            '=' => {
                toks.push((i, Tok::Equals));
                i += 1;
            }
            '\'' => {
                let start = i;
                let mut count = 0u8;
                while i < bytes.len() && bytes[i] == b'\'' {
                    count += 1;
                    i += 1;
                }
                if count > 3 {
                    return Err(Error::syntax(
                        start,
                        "primes are accepted up to y'''; use D(y,k) for higher derivatives",
                    ));
                }
                toks.push((start, Tok::Prime(count)));
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("digits");
                toks.push((start, Tok::Int(v)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
            }
            other => {
                return Err(Error::syntax(i, format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    declared: Vec<FuncName>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or_else(|| self.toks.last().map(|(p, _)| p + 1).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        let pos = self.here();
        match self.bump() {
            Some(got) if got == *t => Ok(()),
            _ => Err(Error::syntax(pos, format!("expected {what}"))),
        }
    }

    fn parse_declarations(&mut self) -> Result<()> {
        while matches!(self.peek(), Some(Tok::Ident(w)) if w == "unknown") {
            self.bump();
            let pos = self.here();
            let name = match self.bump() {
                Some(Tok::Ident(n)) => n,
                _ => {
                    return Err(Error::syntax(
                        pos,
                        "expected a function name after 'unknown'",
                    ))
                }
            };
            if name != "H" {
                return Err(Error::syntax(
                    pos,
                    format!("only H(x,y) may be declared unknown, got '{name}'"),
                ));
            }
            self.expect(&Tok::LParen, "'('")?;
            self.expect(&Tok::Ident("x".into()), "'x'")?;
            self.expect(&Tok::Comma, "','")?;
            self.expect(&Tok::Ident("y".into()), "'y'")?;
            self.expect(&Tok::RParen, "')'")?;
            self.expect(&Tok::Semi, "';'")?;
            if !self.declared.contains(&FuncName::H) {
                self.declared.push(FuncName::H);
            }
        }
        Ok(())
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.parse_term()?];
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    terms.push(self.parse_term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.parse_term()?;
                    terms.push(Expr::int(-1) * t);
                }
                _ => break,
            }
        }
        Ok(Expr::sum(terms))
    }

    fn parse_term(&mut self) -> Result<Expr> {
        let mut acc = self.parse_unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc * self.parse_unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.div(self.parse_unary()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(Expr::int(-1) * self.parse_unary()?);
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Expr> {
        let base = self.parse_atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let k = self.parse_exponent()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn parse_exponent(&mut self) -> Result<i32> {
        let pos = self.here();
        let mut neg = false;
        let mut parens = false;
        if matches!(self.peek(), Some(Tok::LParen)) {
            self.bump();
            parens = true;
        }
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            neg = true;
        }
        let v = match self.bump() {
            Some(Tok::Int(v)) => v,
            _ => return Err(Error::syntax(pos, "expected an integer exponent")),
        };
        if parens {
            self.expect(&Tok::RParen, "')'")?;
        }
        let k: i32 = v
            .try_into()
            .map_err(|_| Error::syntax(pos, "exponent out of range"))?;
        Ok(if neg { -k } else { k })
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(Expr::num(crate::scalar::Scalar::from_integer(v))),
            Some(Tok::LParen) => {
                let e = self.parse_expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => self.parse_ident(pos, name),
            _ => Err(Error::syntax(pos, "expected a term")),
        }
    }

    fn parse_ident(&mut self, pos: usize, name: String) -> Result<Expr> {
        match name.as_str() {
            "x" => Ok(Expr::x()),
            "y" => {
                if let Some(Tok::Prime(k)) = self.peek() {
                    let k = *k;
                    self.bump();
                    return Ok(Expr::jet(k));
                }
                Ok(Expr::y())
            }
            "D" => {
                self.expect(&Tok::LParen, "'('")?;
                self.expect(&Tok::Ident("y".into()), "'y'")?;
                self.expect(&Tok::Comma, "','")?;
                let kpos = self.here();
                let k = match self.bump() {
                    Some(Tok::Int(v)) => v,
                    _ => return Err(Error::syntax(kpos, "expected a derivative order")),
                };
                self.expect(&Tok::RParen, "')'")?;
                let k: u8 = k
                    .try_into()
                    .map_err(|_| Error::syntax(kpos, "derivative order out of range"))?;
                if k == 0 {
                    return Err(Error::syntax(kpos, "derivative order must be at least 1"));
                }
                Ok(Expr::jet(k))
            }
            "H" if self.declared.contains(&FuncName::H) => {
                // optional argument list (x, y)
                if matches!(self.peek(), Some(Tok::LParen)) {
                    self.bump();
                    self.expect(&Tok::Ident("x".into()), "'x'")?;
                    self.expect(&Tok::Comma, "','")?;
                    self.expect(&Tok::Ident("y".into()), "'y'")?;
                    self.expect(&Tok::RParen, "')'")?;
                }
                Ok(Expr::func(FuncName::H))
            }
            other => Err(Error::syntax(
                pos,
                format!(
                    "unknown name '{other}' (declare coefficient functions with 'unknown H(x,y);')"
                ),
            )),
        }
    }
}

/// Parse an equation in the input grammar into a [`RationalODE`].
pub fn parse_ode(text: &str) -> Result<RationalODE> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        declared: vec![],
    };
    p.parse_declarations()?;
    let lhs = p.parse_expr()?;
    p.expect(&Tok::Equals, "'= 0' terminator")?;
    let zpos = p.here();
    match p.bump() {
        Some(Tok::Int(v)) if v.is_zero() => {}
        _ => return Err(Error::syntax(zpos, "equation must be terminated by '= 0'")),
    }
    if p.pos != p.toks.len() {
        return Err(Error::syntax(p.here(), "trailing input after '= 0'"));
    }
    let declared = p.declared.clone();
    RationalODE::from_equation(lhs, declared, text.to_string())
}

/// Parse a bare expression in the ODE grammar (jets, `x`, `y`, `H`).
pub fn parse_expr(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        declared: vec![FuncName::H],
    };
    let e = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::syntax(p.here(), "trailing input"));
    }
    Ok(e)
}

impl fmt::Display for RationalODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty_print())
    }
}

/// The text of the paper-style fourth-order fixture equation.
pub const GERDT_EX1: &str = "2*x^2*y*D(y,4) + x^2*y^2 + 8*x^2*y'*y''' + 16*x*y*y''' \
+ 6*x^2*y''^2 + 48*x*y'*y'' + 24*y*y'' + 24*y'^2 = 0";

/// The fourth-order fixture with an undetermined coefficient.
pub const GERDT_EX2: &str = "unknown H(x,y); D(y,4) + H(x,y)*D(y,2) + D(y,1)^2 = 0";

/// The order-15 fixture used by the symmetry prefilter.
pub const GERDT_EX3: &str = "D(y,15) + D(y,1)^15 - 10*y*D(y,10) = 0";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::equivalent;

    #[test]
    fn parse_simple_second_order() {
        let ode = parse_ode("D(y,2) + y^2 = 0").unwrap();
        assert_eq!(ode.order(), 2);
        assert_eq!(ode.m().to_string(), "y^2");
        assert_eq!(ode.n().to_string(), "1");
    }

    #[test]
    fn parse_example_one() {
        let ode = parse_ode(GERDT_EX1).unwrap();
        assert_eq!(ode.order(), 4);
        assert_eq!(ode.n().to_string(), "2*x^2*y");
        let m = ode.m();
        let c = m.coeff_of_power(Symbol::jet(3), 1);
        assert_eq!(c.to_string(), "8*x^2*y' + 16*x*y");
        assert_eq!(m.deg_in(Symbol::jet(2)), 2);
        let expected = parse_expr(
            "x^2*y^2 + 8*x^2*y'*y''' + 16*x*y*y''' + 6*x^2*y''^2 \
             + 48*x*y'*y'' + 24*y*y'' + 24*y'^2",
        )
        .unwrap();
        assert!(equivalent(&m.to_expr(), &expected).unwrap());
    }

    #[test]
    fn parse_example_two_with_unknown() {
        let ode = parse_ode(GERDT_EX2).unwrap();
        assert_eq!(ode.order(), 4);
        assert_eq!(ode.declared_unknowns(), &[FuncName::H]);
        assert!(ode.m().contains_symbol(Symbol::func(FuncName::H)));
    }

    #[test]
    fn reject_nonlinear_highest() {
        let err = parse_ode("D(y,2)^2 + y = 0").unwrap_err();
        assert!(matches!(err, Error::NotSolvedForHighest(_)));
        let err = parse_ode("y'*D(y,2) - y'*D(y,2) + y = 0").unwrap_err();
        assert!(matches!(err, Error::NotSolvedForHighest(_)));
    }

    #[test]
    fn reject_low_order_and_unknown_names() {
        assert!(matches!(
            parse_ode("y' + y = 0").unwrap_err(),
            Error::OrderTooLow(1)
        ));
        assert!(matches!(
            parse_ode("D(y,2) + Q = 0").unwrap_err(),
            Error::Syntax { .. }
        ));
        assert!(matches!(
            parse_ode("D(y,2) + y = 1").unwrap_err(),
            Error::Syntax { .. }
        ));
    }

    #[test]
    fn pretty_print_round_trip() {
        for text in [
            "D(y,2) + y^2 = 0",
            GERDT_EX1,
            GERDT_EX2,
            "D(y,3) + x*y + x^2*y'' = 0",
            "2*D(y,2) - y'/x + 3 = 0",
        ] {
            let ode = parse_ode(text).unwrap();
            let printed = ode.pretty_print();
            let mut printed_full = String::new();
            if ode.has_unknowns() {
                printed_full.push_str("unknown H(x,y); ");
            }
            printed_full.push_str(&printed);
            let re = parse_ode(&printed_full).unwrap();
            assert_eq!(re.order(), ode.order());
            let same = equivalent(&re.m_over_n().to_expr(), &ode.m_over_n().to_expr()).unwrap();
            assert!(same, "round trip failed for {text}: printed {printed_full}");
        }
    }

    #[test]
    fn cubic_form_read_off() {
        let ode = parse_ode("D(y,2) + y^2 = 0").unwrap();
        let c = extract_cubic_form(&ode).unwrap();
        assert!(equivalent(&c.f3, &Expr::zero()).unwrap());
        assert!(equivalent(&c.f0, &Expr::y().pow(2)).unwrap());

        let ode = parse_ode("D(y,2) + 3*y*y' + y^3 = 0").unwrap();
        let c = extract_cubic_form(&ode).unwrap();
        assert!(equivalent(&c.f1, &(Expr::int(3) * Expr::y())).unwrap());
        assert!(equivalent(&c.f0, &Expr::y().pow(3)).unwrap());
        assert!(equivalent(&c.f2, &Expr::zero()).unwrap());

        let ode = parse_ode("D(y,2) + y'^4 = 0").unwrap();
        assert!(matches!(
            extract_cubic_form(&ode).unwrap_err(),
            Error::NotCubicForm(_)
        ));
    }

    #[test]
    fn cubic_form_reassembles() {
        let ode = parse_ode("D(y,2) + (y'^3 + x*y')/(x^2 + 1) + y = 0").unwrap();
        let c = extract_cubic_form(&ode).unwrap();
        assert!(equivalent(&c.reassemble(), &ode.m_over_n().to_expr()).unwrap());
    }

    #[test]
    fn jetfree_denominator_cancellation_accepted() {
        // M/N = y'^4 / y' = y'^3 is cubic after cancellation
        let ode = parse_ode("D(y,2) + y'^4/y' = 0").unwrap();
        let c = extract_cubic_form(&ode).unwrap();
        assert!(equivalent(&c.f3, &Expr::one()).unwrap());
    }
}
