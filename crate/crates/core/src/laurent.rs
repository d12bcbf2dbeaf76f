//! Laurent polynomials in `a^{1/2}` and `q`, and the HOMFLY-PT values
//! extracted from homology, kept as exact fractions over powers of
//! `(1 - q²)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::poly::{coeff, Coeff};

/// Sparse Laurent polynomial; keys are `(2·exponent of a, exponent of q)`,
/// the a-exponent being doubled to keep half powers integral.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<(i32, i32), Coeff>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(0, 0, coeff(1))
    }

    pub fn monomial(a2: i32, q: i32, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a2, q), c);
        }
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &Coeff)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a2: i32, q: i32, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a2, q)).or_insert_with(Coeff::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a2, q));
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&(a2, q), c) in &other.terms {
            out.add_term(a2, q, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&(a1, q1), c1) in &self.terms {
            for (&(a2, q2), c2) in &other.terms {
                out.add_term(a1 + a2, q1 + q2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Laurent {
        let mut out = Laurent::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `1 - q²`.
    pub fn one_minus_q2() -> Laurent {
        let mut l = Laurent::one();
        l.add_term(0, 2, coeff(-1));
        l
    }

    /// `q - q⁻¹`.
    pub fn q_minus_qinv() -> Laurent {
        let mut l = Laurent::monomial(0, 1, coeff(1));
        l.add_term(0, -1, coeff(-1));
        l
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a2, q), c) in &self.terms {
            let neg = c < &Coeff::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
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
            let mut printed = false;
            if !mag.is_integer() || mag != coeff(1) || (a2 == 0 && q == 0) {
                write!(f, "{}", mag)?;
                printed = true;
            }
            if a2 != 0 {
                if printed {
                    write!(f, "*")?;
                }
                if a2 % 2 == 0 {
                    write!(f, "a^{}", a2 / 2)?;
                } else {
                    write!(f, "a^({}/2)", a2)?;
                }
                printed = true;
            }
            if q != 0 {
                if printed {
                    write!(f, "*")?;
                }
                write!(f, "q^{}", q)?;
            }
        }
        Ok(())
    }
}

/// HOMFLY-PT value as an exact fraction `num / (1 - q²)^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homfly {
    pub num: Laurent,
    pub denom_exp: usize,
}

impl Homfly {
    /// Exact equality as rational functions.
    pub fn equals(&self, other: &Homfly) -> bool {
        let d = Laurent::one_minus_q2();
        let lhs = self.num.mul(&d.pow(other.denom_exp));
        let rhs = other.num.mul(&d.pow(self.denom_exp));
        lhs == rhs
    }

    /// Scale by a monomial `a^{a2/2} q^q` times a rational.
    pub fn scale(&self, a2: i32, q: i32, c: Coeff) -> Homfly {
        Homfly { num: self.num.mul(&Laurent::monomial(a2, q, c)), denom_exp: self.denom_exp }
    }
}

impl fmt::Display for Homfly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / (1 - q^2)^{}", self.num, self.denom_exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_equality() {
        // (1 - q²)/(1 - q²) == 1
        let p = Homfly { num: Laurent::one_minus_q2(), denom_exp: 1 };
        let one = Homfly { num: Laurent::one(), denom_exp: 0 };
        assert!(p.equals(&one));
        assert!(!p.equals(&Homfly { num: Laurent::one(), denom_exp: 1 }));
    }

    #[test]
    fn q_minus_qinv_relates_to_one_minus_q2() {
        // q - q⁻¹ = -q⁻¹ (1 - q²)
        let lhs = Laurent::q_minus_qinv();
        let rhs = Laurent::one_minus_q2().mul(&Laurent::monomial(0, -1, coeff(-1)));
        assert_eq!(lhs, rhs);
    }
}
