//! Sparse multivariate polynomials over exact rationals.
//!
//! Monomials are compared in degrevlex with the heavier variable being
//! the larger [`Symbol`]; term lists are kept strictly sorted, so equal
//! polynomials are structurally equal.

use crate::scalar::Scalar;
use crate::symbol::Symbol;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops;

/// A power product, sorted ascending by symbol with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    factors: Vec<(Symbol, u16)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { factors: vec![] }
    }

    pub fn var(s: Symbol) -> Monomial {
        Monomial {
            factors: vec![(s, 1)],
        }
    }

    pub fn var_pow(s: Symbol, e: u16) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial {
                factors: vec![(s, e)],
            }
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn deg(&self, s: Symbol) -> u16 {
        self.factors
            .iter()
            .find(|&&(v, _)| v == s)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Symbol, u16)] {
        &self.factors
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                Ordering::Less => {
                    out.push(self.factors[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.factors[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.factors[i].0, self.factors[i].1 + other.factors[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    /// Componentwise division; `None` if any exponent would go negative.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(v, e) in &self.factors {
            let mut e = e;
            while j < other.factors.len() && other.factors[j].0 < v {
                return None; // divisor has a symbol we lack
            }
            if j < other.factors.len() && other.factors[j].0 == v {
                if other.factors[j].1 > e {
                    return None;
                }
                e -= other.factors[j].1;
                j += 1;
            }
            if e > 0 {
                out.push((v, e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors: out })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.checked_div(self).is_some()
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = vec![];
        for &(v, e) in &self.factors {
            let eo = other.deg(v);
            let m = e.min(eo);
            if m > 0 {
                out.push((v, m));
            }
        }
        Monomial { factors: out }
    }

    pub fn pow(&self, k: u16) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: self.factors.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    /// Split into the part whose symbols satisfy `pred` and the rest.
    pub fn split(&self, pred: impl Fn(Symbol) -> bool) -> (Monomial, Monomial) {
        let mut yes = vec![];
        let mut no = vec![];
        for &(v, e) in &self.factors {
            if pred(v) {
                yes.push((v, e));
            } else {
                no.push((v, e));
            }
        }
        (Monomial { factors: yes }, Monomial { factors: no })
    }
}

impl Ord for Monomial {
    /// Degrevlex: higher total degree wins; on ties the monomial with
    /// the smaller exponent at the lightest differing symbol is larger.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.factors.get(i), other.factors.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(v1, e1)), Some(&(v2, e2))) => match v1.cmp(&v2) {
                    Ordering::Less => return Ordering::Less, // we have lighter sym w/ exp>0
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => {
                        if e1 != e2 {
                            return e2.cmp(&e1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial: terms strictly descending in the monomial order,
/// no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: Vec<(Monomial, Scalar)>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: vec![] }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(crate::scalar::int(n))
    }

    pub fn var(s: Symbol) -> MPoly {
        MPoly {
            terms: vec![(Monomial::var(s), Scalar::one())],
        }
    }

    pub fn term(m: Monomial, c: Scalar) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    pub fn from_map(map: BTreeMap<Monomial, Scalar>) -> MPoly {
        let mut terms: Vec<(Monomial, Scalar)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn as_constant(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_constant().is_some()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for (m, _) in &self.terms {
            out.extend(m.symbols());
        }
        out
    }

    pub fn max_symbol(&self) -> Option<Symbol> {
        self.symbols().into_iter().next_back()
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.terms.iter().any(|(m, _)| m.deg(s) > 0)
    }

    pub fn any_symbol(&self, pred: impl Fn(Symbol) -> bool) -> bool {
        self.terms.iter().any(|(m, _)| m.symbols().any(&pred))
    }

    pub fn deg_in(&self, s: Symbol) -> u16 {
        self.terms.iter().map(|(m, _)| m.deg(s)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MPoly { terms: out }
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, c);
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        MPoly::from_map(acc)
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m0, c0)| (m0.mul(m), c0 * c))
                .collect(),
        }
    }

    pub fn mul_scalar(&self, c: &Scalar) -> MPoly {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, k: u16) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Coefficients with respect to `s`: index `i` holds the coefficient
    /// of `s^i`.
    pub fn coeffs_in(&self, s: Symbol) -> Vec<MPoly> {
        let d = self.deg_in(s) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.deg(s) as usize;
            let rest = m
                .checked_div(&Monomial::var_pow(s, e as u16))
                .expect("own factor divides");
            out[e] = out[e].add(&MPoly::term(rest, c.clone()));
        }
        out
    }

    pub fn coeff_of_power(&self, s: Symbol, e: u16) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            if m.deg(s) == e {
                let rest = m
                    .checked_div(&Monomial::var_pow(s, e))
                    .expect("own factor divides");
                out = out.add(&MPoly::term(rest, c.clone()));
            }
        }
        out
    }

    /// Partial derivative; function symbols of `(x, y)` respond to the
    /// coordinate derivations by index bumping, exactly as [`crate::expr::Expr::diff`].
    pub fn derivative(&self, s: Symbol) -> MPoly {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (mono, coef) in &self.terms {
            for (idx, &(v, e)) in mono.factors.iter().enumerate() {
                let replacement: Option<Option<Symbol>> = if v == s {
                    Some(None)
                } else {
                    match (v, s) {
                        (Symbol::Func(n, a, b), Symbol::X) => Some(Some(Symbol::Func(n, a + 1, b))),
                        (Symbol::Func(n, a, b), Symbol::Y) => Some(Some(Symbol::Func(n, a, b + 1))),
                        _ => None,
                    }
                };
                let Some(repl) = replacement else { continue };
                let mut factors = mono.factors.clone();
                if e == 1 {
                    factors.remove(idx);
                } else {
                    factors[idx].1 = e - 1;
                }
                let mut m = Monomial { factors };
                if let Some(nv) = repl {
                    m = m.mul(&Monomial::var(nv));
                }
                let c = coef * Scalar::from_integer(e.into());
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(en) => {
                        en.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut en) => {
                        *en.get_mut() += c;
                        if en.get().is_zero() {
                            en.remove();
                        }
                    }
                }
            }
        }
        MPoly::from_map(acc)
    }

    pub fn max_jet_order(&self) -> Option<u8> {
        self.symbols()
            .into_iter()
            .filter_map(|s| s.jet_order())
            .max()
    }

    /// Total derivative along solutions on the jet-polynomial class.
    pub fn total_diff_x(&self) -> MPoly {
        let mut out = self.derivative(Symbol::X);
        out = out.add(&MPoly::var(Symbol::jet(1)).mul(&self.derivative(Symbol::Y)));
        if let Some(top) = self.max_jet_order() {
            for k in 1..=top {
                let d = self.derivative(Symbol::jet(k));
                if !d.is_zero() {
                    out = out.add(&MPoly::var(Symbol::jet(k + 1)).mul(&d));
                }
            }
        }
        out
    }

    /// Substitute a polynomial for a symbol (Horner evaluation).
    pub fn substitute_symbol(&self, s: Symbol, value: &MPoly) -> MPoly {
        if !self.contains_symbol(s) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(s);
        let mut acc = MPoly::zero();
        for c in coeffs.into_iter().rev() {
            acc = acc.mul(value).add(&c);
        }
        acc
    }

    /// Group terms by the sub-monomial of symbols satisfying `pred`;
    /// values are the cofactor polynomials.
    pub fn group_by(&self, pred: impl Fn(Symbol) -> bool + Copy) -> BTreeMap<Monomial, MPoly> {
        let mut out: BTreeMap<Monomial, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (key, rest) = m.split(pred);
            out.entry(key)
                .or_default()
                .terms
                .push((rest, c.clone()));
        }
        for v in out.values_mut() {
            v.terms.sort_by(|a, b| b.0.cmp(&a.0));
        }
        out
    }

    /// The common monomial factor of all terms (exponentwise minimum).
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.iter();
        let Some((first, _)) = iter.next() else {
            return Monomial::one();
        };
        let mut acc = first.clone();
        for (m, _) in iter {
            acc = acc.gcd(m);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    /// Write `self = unit · primitive` with integer, content-free,
    /// positive-leading-coefficient `primitive`.
    pub fn integer_primitive(&self) -> (Scalar, MPoly) {
        use num_bigint::BigInt;
        if self.is_zero() {
            return (Scalar::one(), MPoly::zero());
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(&(c.numer() * &den_lcm / c.denom()));
        }
        let mut unit = Scalar::new(num_gcd, den_lcm);
        if self.terms[0].1.is_negative() {
            unit = -unit;
        }
        let inv = unit.recip();
        (unit, self.mul_scalar(&inv))
    }

    /// Exact multivariate division; `None` if `other` does not divide.
    pub fn exact_div(&self, other: &MPoly) -> Option<MPoly> {
        if other.is_zero() {
            return None;
        }
        if let Some(c) = other.as_constant() {
            return Some(self.mul_scalar(&c.recip()));
        }
        let (lm_q, lc_q) = other.leading().unwrap();
        let lm_q = lm_q.clone();
        let lc_q = lc_q.clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Scalar)> = vec![];
        while !rem.is_zero() {
            let (lm_r, lc_r) = rem.leading().unwrap();
            let m = lm_r.checked_div(&lm_q)?;
            let c = lc_r / &lc_q;
            rem = rem.sub(&other.mul_term(&m, &c));
            quot.push((m, c));
        }
        quot.sort_by(|a, b| b.0.cmp(&a.0));
        Some(MPoly { terms: quot })
    }

    pub fn to_expr(&self) -> crate::expr::Expr {
        use crate::expr::Expr;
        let mut terms = vec![];
        for (m, c) in &self.terms {
            let mut factors = vec![Expr::num(c.clone())];
            for &(v, e) in &m.factors {
                factors.push(Expr::sym(v).pow(e as i32));
            }
            terms.push(Expr::product(factors));
        }
        Expr::sum(terms)
    }
}

impl ops::Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        MPoly::add(self, rhs)
    }
}

impl ops::Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        MPoly::sub(self, rhs)
    }
}

impl ops::Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        MPoly::mul(self, rhs)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coef_is_one = abs.is_one();
            if m.is_one() {
                if abs.denom().is_one() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
            } else {
                if !coef_is_one {
                    if abs.denom().is_one() {
                        write!(f, "{}*", abs.numer())?;
                    } else {
                        write!(f, "{}/{}*", abs.numer(), abs.denom())?;
                    }
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// Classical pseudo-remainder of `p` by `q` with respect to `s`.
pub fn prem(p: &MPoly, q: &MPoly, s: Symbol) -> MPoly {
    let dq = q.deg_in(s);
    assert!(dq > 0 || !q.is_zero(), "pseudo-division by zero");
    let lq = q.coeff_of_power(s, dq);
    let mut r = p.clone();
    while !r.is_zero() {
        let dr = r.deg_in(s);
        if dr < dq {
            break;
        }
        let lr = r.coeff_of_power(s, dr);
        let shift = MPoly::term(Monomial::var_pow(s, dr - dq), Scalar::one());
        r = r.mul(&lq).sub(&lr.mul(&shift).mul(q));
    }
    r
}

/// GCD of multivariate polynomials over the rationals (primitive PRS).
///
/// The result is integer-primitive with a positive leading coefficient;
/// nonzero constants count as units.
pub fn mpoly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.integer_primitive().1;
    }
    if b.is_zero() {
        return a.integer_primitive().1;
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    // single-monomial fast path
    if a.len() == 1 || b.len() == 1 {
        let m = a.monomial_content().gcd(&b.monomial_content());
        return MPoly::term(m, Scalar::one());
    }
    let main = a
        .max_symbol()
        .into_iter()
        .chain(b.max_symbol())
        .max()
        .expect("nonconstant");
    let da = a.deg_in(main);
    let db = b.deg_in(main);
    if da == 0 {
        let cb = content_in(b, main);
        return mpoly_gcd(a, &cb);
    }
    if db == 0 {
        let ca = content_in(a, main);
        return mpoly_gcd(&ca, b);
    }
    let ca = content_in(a, main);
    let cb = content_in(b, main);
    let mut p = a.exact_div(&ca).expect("content divides").integer_primitive().1;
    let mut q = b.exact_div(&cb).expect("content divides").integer_primitive().1;
    if p.deg_in(main) < q.deg_in(main) {
        std::mem::swap(&mut p, &mut q);
    }
    let cont = mpoly_gcd(&ca, &cb);
    loop {
        let r = prem(&p, &q, main);
        if r.is_zero() {
            let qp = primitive_in(&q, main);
            return cont.mul(&qp).integer_primitive().1;
        }
        if r.deg_in(main) == 0 {
            return cont;
        }
        p = q;
        q = primitive_in(&r, main);
    }
}

/// Content of `p` viewed as a univariate polynomial in `s`.
pub fn content_in(p: &MPoly, s: Symbol) -> MPoly {
    let coeffs = p.coeffs_in(s);
    let mut acc = MPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = mpoly_gcd(&acc, &c);
        if acc.is_constant() && !acc.is_zero() {
            return MPoly::one();
        }
    }
    acc
}

fn primitive_in(p: &MPoly, s: Symbol) -> MPoly {
    let c = content_in(p, s);
    p.exact_div(&c).expect("content divides").integer_primitive().1
}

/// Remove the common base-field factor (a polynomial in `x, y` alone)
/// from an equation; base factors are units of the coefficient field.
/// The result is integer-primitive with positive leading coefficient.
pub fn strip_base_content(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let groups = p.group_by(|s| !s.is_base());
    let mut g = MPoly::zero();
    for v in groups.values() {
        g = mpoly_gcd(&g, v);
        if g.is_constant() {
            break;
        }
    }
    let stripped = if g.is_constant() {
        p.clone()
    } else {
        p.exact_div(&g).expect("content divides")
    };
    stripped.integer_primitive().1
}
