//! Circular closure of braid bicomplexes.
//!
//! Closing identifies the outgoing variables with the incoming ones. Since
//! the complexes are free, hence flat, the substitution `y_i -> x_i`
//! computes the derived tensor product with the diagonal bimodule. Each
//! closed strand contributes the half shift `stas`.

use std::collections::BTreeMap;

use crate::complex::FreeBicomplex;
use crate::degree::STAS;
use crate::poly::{Poly, VarFamily, Variable};

/// A complex with no outgoing variables left: the result of a full circular
/// closure, graded over the incoming variables and any dummies.
#[derive(Clone, Debug)]
pub struct ClosedComplex {
    pub complex: FreeBicomplex,
    pub strands: usize,
    pub components: usize,
}

/// Full circular closure of an n-strand bicomplex: substitute `y_i -> x_i`
/// for every strand and shift by `stas^n`. `components` is the number of
/// link components of the closure (cycles of the underlying permutation).
pub fn close(c: &FreeBicomplex, n: usize, components: usize) -> Result<ClosedComplex, String> {
    for v in c.variables() {
        if v.family == VarFamily::Y && v.index as usize > n {
            return Err(format!("strand mismatch: found {} on {} strands", v, n));
        }
        if v.family == VarFamily::X && v.index as usize > n {
            return Err(format!("strand mismatch: found {} on {} strands", v, n));
        }
    }
    let mut bindings = BTreeMap::new();
    for i in 1..=n as u32 {
        bindings.insert(Variable::y(i), Poly::var(Variable::x(i)));
    }
    let mut closed = c.substitute(&bindings)?;
    // the substitution drops y's that actually occur; drop the others too
    for i in 1..=n as u32 {
        closed.remove_variable(Variable::y(i));
        closed.add_variable(Variable::x(i));
    }
    let closed = closed.shift(STAS.pow(n as i32));
    Ok(ClosedComplex { complex: closed, strands: n, components })
}

/// Close only the first strand: substitute `y_1 -> x_1`, rename `x_1` into
/// a fresh dummy and shift by one `stas`. The remaining strands stay open.
pub fn partial_close(c: &FreeBicomplex, fresh_dummy: Variable) -> Result<FreeBicomplex, String> {
    if c.variables().contains(&fresh_dummy) {
        return Err(format!("dummy {} already in use", fresh_dummy));
    }
    let mut bindings = BTreeMap::new();
    bindings.insert(Variable::y(1), Poly::var(Variable::x(1)));
    let mut closed = c.substitute(&bindings)?;
    closed.remove_variable(Variable::y(1));
    closed.add_variable(Variable::x(1));
    let mut bindings = BTreeMap::new();
    bindings.insert(Variable::x(1), Poly::var(fresh_dummy));
    let mut renamed = closed.substitute(&bindings)?;
    renamed.remove_variable(Variable::x(1));
    renamed.add_variable(fresh_dummy);
    Ok(renamed.shift(STAS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::{MultiDegree, SIGMA_AQ2};
    use crate::soergel::{permutation_resolution, Permutation};

    #[test]
    fn closing_identity_strand_gives_circle_complex() {
        let c = permutation_resolution(&Permutation::identity(1));
        let closed = close(&c, 1, 1).unwrap();
        // the Koszul form y1 - x1 dies, leaving two towers shifted by stas
        assert_eq!(closed.complex.num_entries(), 0);
        let dims = closed.complex.graded_dims();
        assert_eq!(dims.get(&MultiDegree::new(0, 0, 1, 1)), Some(&1));
        assert_eq!(dims.get(&(SIGMA_AQ2 + MultiDegree::new(0, 0, 1, 1))), Some(&1));
    }

    #[test]
    fn close_rejects_wrong_strand_count() {
        let c = permutation_resolution(&Permutation::identity(2));
        assert!(close(&c, 1, 1).is_err());
    }

    #[test]
    fn partial_close_keeps_other_strands_open() {
        let c = permutation_resolution(&Permutation::identity(2));
        let z = Variable::dummy(50);
        let p = partial_close(&c, z).unwrap();
        assert!(p.variables().contains(&z));
        assert!(p.variables().contains(&Variable::x(2)));
        assert!(p.variables().contains(&Variable::y(2)));
        assert!(!p.variables().contains(&Variable::y(1)));
        // strand 2's Koszul form survives, strand 1's dies
        assert_eq!(p.num_entries(), 2);
    }
}
