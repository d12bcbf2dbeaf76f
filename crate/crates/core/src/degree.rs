use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Four-component degree attached to every generator: polynomial degree `q`,
/// Koszul (homological) degree `a`, and the doubled degrees `t2 = 2t`,
/// `s2 = 2s`. The half-unit shift `stas` forces `t` and `s` to take
/// semi-integer values, so both are stored doubled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    #[serde(rename = "qDeg")]
    pub q: i32,
    #[serde(rename = "aDeg")]
    pub a: i32,
    pub t2: i32,
    pub s2: i32,
}

impl MultiDegree {
    pub const ZERO: MultiDegree = MultiDegree { q: 0, a: 0, t2: 0, s2: 0 };

    pub const fn new(q: i32, a: i32, t2: i32, s2: i32) -> Self {
        MultiDegree { q, a, t2, s2 }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    /// Integer power of a shift, allowing negative exponents.
    pub fn pow(self, k: i32) -> Self {
        MultiDegree::new(self.q * k, self.a * k, self.t2 * k, self.s2 * k)
    }
}

/// `σ_q`: raises q-degree by one.
pub const SIGMA_Q: MultiDegree = MultiDegree::new(1, 0, 0, 0);
/// `σ_a`: raises the Koszul degree by one.
pub const SIGMA_A: MultiDegree = MultiDegree::new(0, 1, 0, 0);
/// `σ_t`: one full t-unit (doubled storage).
pub const SIGMA_T: MultiDegree = MultiDegree::new(0, 0, 2, 0);
/// `σ_s`: one full filtration unit (doubled storage).
pub const SIGMA_S: MultiDegree = MultiDegree::new(0, 0, 0, 2);
/// `σ_aq² = σ_a σ_q²`.
pub const SIGMA_AQ2: MultiDegree = MultiDegree::new(2, 1, 0, 0);
/// `σ_sq² = σ_s σ_q²`.
pub const SIGMA_SQ2: MultiDegree = MultiDegree::new(2, 0, 0, 2);
/// `σ_ta = σ_t σ_a`: the outer homological unit.
pub const SIGMA_TA: MultiDegree = MultiDegree::new(0, 1, 2, 0);
/// `(σ_t σ_s)^{1/2}`: the half shift applied per closed strand.
pub const STAS: MultiDegree = MultiDegree::new(0, 0, 1, 1);
/// `σ_tot = σ_ta σ_sq²`: the step between consecutive zigzag columns.
pub const SIGMA_TOT: MultiDegree = MultiDegree::new(2, 1, 2, 2);

impl Add for MultiDegree {
    type Output = MultiDegree;
    fn add(self, o: MultiDegree) -> MultiDegree {
        MultiDegree::new(self.q + o.q, self.a + o.a, self.t2 + o.t2, self.s2 + o.s2)
    }
}

impl AddAssign for MultiDegree {
    fn add_assign(&mut self, o: MultiDegree) {
        *self = *self + o;
    }
}

impl Sub for MultiDegree {
    type Output = MultiDegree;
    fn sub(self, o: MultiDegree) -> MultiDegree {
        MultiDegree::new(self.q - o.q, self.a - o.a, self.t2 - o.t2, self.s2 - o.s2)
    }
}

impl Neg for MultiDegree {
    type Output = MultiDegree;
    fn neg(self) -> MultiDegree {
        MultiDegree::new(-self.q, -self.a, -self.t2, -self.s2)
    }
}

impl Mul<i32> for MultiDegree {
    type Output = MultiDegree;
    fn mul(self, k: i32) -> MultiDegree {
        self.pow(k)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q{:+}, a{:+}, t2{:+}, s2{:+})", self.q, self.a, self.t2, self.s2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_algebra() {
        assert_eq!(SIGMA_AQ2, SIGMA_A + SIGMA_Q.pow(2));
        assert_eq!(SIGMA_SQ2, SIGMA_S + SIGMA_Q.pow(2));
        assert_eq!(SIGMA_TA, SIGMA_T + SIGMA_A);
        assert_eq!(STAS + STAS, SIGMA_T + SIGMA_S);
        assert_eq!(SIGMA_TOT, SIGMA_TA + SIGMA_SQ2);
        assert_eq!(STAS.pow(-2), -(SIGMA_T + SIGMA_S));
    }
}
