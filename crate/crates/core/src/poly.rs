//! Exact multivariate polynomials over arbitrary-precision rationals.
//!
//! Every variable carries q-degree 2, so a monomial of total exponent `d` has
//! q-degree `2d`. Coefficients are `BigRational` and zero terms are never
//! stored. Variables come in three families: `x` (incoming strands), `y`
//! (outgoing strands) and dummies (closed or intermediate strands).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(n.into())
}

pub fn coeff_frac(n: i64, d: i64) -> Coeff {
    BigRational::new(n.into(), d.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VarFamily {
    X,
    Y,
    Dummy,
}

/// A named variable `x_i`, `y_i` or `z_i` of q-degree 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub family: VarFamily,
    pub index: u32,
}

impl Variable {
    pub const fn x(index: u32) -> Self {
        Variable { family: VarFamily::X, index }
    }
    pub const fn y(index: u32) -> Self {
        Variable { family: VarFamily::Y, index }
    }
    pub const fn dummy(index: u32) -> Self {
        Variable { family: VarFamily::Dummy, index }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            VarFamily::X => 'x',
            VarFamily::Y => 'y',
            VarFamily::Dummy => 'z',
        };
        write!(f, "{}{}", c, self.index)
    }
}

/// Sparse exponent sequence, sorted by variable with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Build from (variable, exponent) pairs; zero exponents are dropped.
    pub fn from_exps(mut exps: Vec<(Variable, u32)>) -> Self {
        exps.retain(|&(_, e)| e > 0);
        exps.sort();
        Monomial(exps)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_exp(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// q-degree of the monomial: twice the total exponent.
    pub fn q_degree(&self) -> i32 {
        2 * self.total_exp() as i32
    }

    pub fn exp_of(&self, v: Variable) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn exps(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: BTreeMap<Variable, u32> = self.0.iter().cloned().collect();
        for &(v, e) in &other.0 {
            *out.entry(v).or_insert(0) += e;
        }
        Monomial(out.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    fn without(&self, v: Variable) -> Monomial {
        Monomial(self.0.iter().cloned().filter(|&(w, _)| w != v).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// q-degree of a polynomial. Zero is homogeneous of every degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QDegree {
    Zero,
    Homogeneous(i32),
    Inhomogeneous,
}

impl QDegree {
    pub fn as_option(self) -> Option<i32> {
        match self {
            QDegree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    /// True when the polynomial can sit in a slot that requires q-degree `d`.
    pub fn fits(self, d: i32) -> bool {
        match self {
            QDegree::Zero => true,
            QDegree::Homogeneous(h) => h == d,
            QDegree::Inhomogeneous => false,
        }
    }
}

/// Sparse polynomial: monomial -> nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(coeff(n))
    }

    pub fn var(v: Variable) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Coeff::one());
        Poly { terms }
    }

    /// Linear form `Σ c_i v_i` from integer coefficients.
    pub fn linear(terms: &[(i64, Variable)]) -> Self {
        let mut p = Poly::zero();
        for &(c, v) in terms {
            p += &(Poly::var(v) * &Poly::int(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// `Some(c)` when the polynomial is the constant `c` (nonzero).
    pub fn as_constant(&self) -> Option<&Coeff> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c);
            }
        }
        None
    }

    pub fn q_degree(&self) -> QDegree {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return QDegree::Zero,
            Some(m) => m.q_degree(),
        };
        if it.all(|m| m.q_degree() == first) {
            QDegree::Homogeneous(first)
        } else {
            QDegree::Inhomogeneous
        }
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.terms.keys().any(|m| m.exp_of(v) > 0)
    }

    pub fn max_exp_of(&self, v: Variable) -> u32 {
        self.terms.keys().map(|m| m.exp_of(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        let mut seen = std::collections::BTreeSet::new();
        self.terms.keys().for_each(|m| {
            for &(v, _) in m.exps() {
                seen.insert(v);
            }
        });
        seen.into_iter()
    }

    fn insert(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Decompose as `p = q_v * v + r` with `r` free of `v`, where `q_v`
    /// collects every term containing `v` with one power of `v` stripped.
    pub fn split_linear(&self, v: Variable) -> (Poly, Poly) {
        let mut quot = Poly::zero();
        let mut rest = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp_of(v);
            if e == 0 {
                rest.insert(m.clone(), c.clone());
            } else {
                let mut stripped: Vec<(Variable, u32)> = Vec::new();
                for &(w, ew) in m.exps() {
                    let ew = if w == v { ew - 1 } else { ew };
                    if ew > 0 {
                        stripped.push((w, ew));
                    }
                }
                quot.insert(Monomial(stripped), c.clone());
            }
        }
        (quot, rest)
    }

    /// Simultaneous substitution of variables by polynomials.
    ///
    /// Every image must be homogeneous of q-degree 2 (or zero), so that
    /// substitution preserves the q-grading.
    pub fn substitute(&self, bindings: &BTreeMap<Variable, Poly>) -> Result<Poly, String> {
        for (v, img) in bindings {
            if !img.q_degree().fits(2) {
                return Err(format!("binding for {} is not homogeneous of q-degree 2", v));
            }
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for &(v, e) in m.exps() {
                let base = match bindings.get(&v) {
                    Some(img) => img.clone(),
                    None => Poly::var(v),
                };
                for _ in 0..e {
                    term = &term * &base;
                }
            }
            out += &term;
        }
        Ok(out)
    }

    pub fn rename_var(&self, from: Variable, to: Variable) -> Poly {
        let mut bindings = BTreeMap::new();
        bindings.insert(from, Poly::var(to));
        self.substitute(&bindings).expect("rename is degree-preserving")
    }

    /// Set a variable to zero, dropping every term that contains it.
    pub fn set_var_zero(&self, v: Variable) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp_of(v) == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient extraction along powers of `v`: returns `f_k` with
    /// `f = Σ f_k v^k`.
    pub fn coeffs_in(&self, v: Variable) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp_of(v);
            out.entry(e).or_insert_with(Poly::zero).insert(m.without(v), c.clone());
        }
        out
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.insert(m.clone(), c.clone());
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.insert(m.clone(), -c.clone());
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.insert(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        &self * o
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Poly {
        Poly::var(Variable::x(i))
    }
    fn y(i: u32) -> Poly {
        Poly::var(Variable::y(i))
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = &y(1) - &x(1);
        let q = &x(1) - &y(1);
        assert!((&p + &q).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let p = &y(2) - &x(2);
        let q = &y(2) + &x(2);
        let expect = &(&y(2) * &y(2)) - &(&x(2) * &x(2));
        assert_eq!(&p * &q, expect);
    }

    #[test]
    fn plus_minus_forms_expand() {
        // y_- + x_- with y_- = y2 - y1, x_- = x2 - x1
        let ym = &y(2) - &y(1);
        let xm = &x(2) - &x(1);
        let sum = &ym + &xm;
        let expect = Poly::linear(&[
            (1, Variable::y(2)),
            (-1, Variable::y(1)),
            (1, Variable::x(2)),
            (-1, Variable::x(1)),
        ]);
        assert_eq!(sum, expect);
    }

    #[test]
    fn substitute_diagonal() {
        let p = &y(1) - &x(1);
        let mut b = BTreeMap::new();
        b.insert(Variable::y(1), x(1));
        assert!(p.substitute(&b).unwrap().is_zero());
    }

    #[test]
    fn substitute_rename() {
        let p = &y(2) - &x(1);
        let mut b = BTreeMap::new();
        b.insert(Variable::y(2), Poly::var(Variable::dummy(1)));
        let q = p.substitute(&b).unwrap();
        assert_eq!(q, &Poly::var(Variable::dummy(1)) - &x(1));
    }

    #[test]
    fn substitute_swap_doubles_minus_form() {
        // (y_- - x_-) under y1 -> x2, y2 -> x1 becomes -2 x_-
        let ym = &y(2) - &y(1);
        let xm = &x(2) - &x(1);
        let p = &ym - &xm;
        let mut b = BTreeMap::new();
        b.insert(Variable::y(1), x(2));
        b.insert(Variable::y(2), x(1));
        let q = p.substitute(&b).unwrap();
        assert_eq!(q, xm.scale(&coeff(-2)));
    }

    #[test]
    fn substitute_rejects_inhomogeneous_binding() {
        let p = y(1);
        let mut b = BTreeMap::new();
        b.insert(Variable::y(1), &x(1) * &x(1));
        assert!(p.substitute(&b).is_err());
        let mut b2 = BTreeMap::new();
        b2.insert(Variable::y(1), &x(1) + &Poly::one());
        assert!(p.substitute(&b2).is_err());
    }

    #[test]
    fn q_degree_basics() {
        assert_eq!((&y(1) - &x(1)).q_degree().as_option(), Some(2));
        // blob relation y1 y2 - x1 x2
        let p = &(&y(1) * &y(2)) - &(&x(1) * &x(2));
        assert_eq!(p.q_degree().as_option(), Some(4));
        assert_eq!((&Poly::one() + &x(1)).q_degree(), QDegree::Inhomogeneous);
        assert_eq!(Poly::zero().q_degree(), QDegree::Zero);
        assert!(Poly::zero().q_degree().fits(-6));
    }

    #[test]
    fn split_linear_parts() {
        let z = Variable::dummy(7);
        let p = &(&Poly::var(z) * &x(1)) + &(&Poly::var(z).scale(&coeff(3)) - &x(2));
        let (quot, rest) = p.split_linear(z);
        assert_eq!(quot, &x(1) + &Poly::int(3));
        assert_eq!(rest, -&x(2));
    }
}
