//! Dense exact linear algebra over the rationals, sized for the per-degree
//! slices that come out of closed complexes.

use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::Coeff;

pub type Vector = Vec<Coeff>;

pub fn zero_vector(n: usize) -> Vector {
    vec![BigRational::zero(); n]
}

/// Incremental row echelon form. Rows are inserted one at a time and kept
/// reduced against the existing pivots, which makes rank and membership
/// queries cheap.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    // (pivot column, row with pivot normalized to 1), sorted by pivot column
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        for (piv, row) in &self.rows {
            if !v[*piv].is_zero() {
                let c = v[*piv].clone();
                for (a, b) in v.iter_mut().zip(row.iter()) {
                    *a -= &c * b;
                }
            }
        }
        v
    }

    /// Insert a vector; returns true when it enlarges the span.
    pub fn insert(&mut self, v: Vector) -> bool {
        let v = self.reduce(v);
        let piv = match v.iter().position(|c| !c.is_zero()) {
            None => return false,
            Some(p) => p,
        };
        let lead = v[piv].clone();
        let row: Vector = v.into_iter().map(|c| c / &lead).collect();
        let pos = self.rows.partition_point(|(p, _)| *p < piv);
        self.rows.insert(pos, (piv, row));
        true
    }

    pub fn contains(&self, v: Vector) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    pub fn insert_all<I: IntoIterator<Item = Vector>>(&mut self, vs: I) {
        for v in vs {
            self.insert(v);
        }
    }
}

/// Rank of a set of vectors.
pub fn rank_of(vectors: &[Vector]) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v.clone());
    }
    ech.rank()
}

/// Rank of the span of `vectors` in the quotient by `modulo`.
pub fn rank_mod(vectors: &[Vector], modulo: &Echelon) -> usize {
    let mut ech = modulo.clone();
    let mut r = 0;
    for v in vectors {
        if ech.insert(v.clone()) {
            r += 1;
        }
    }
    r
}

/// Null space of the linear map sending domain basis vector `j` to column
/// `j`. `columns[j]` has length `codim`. Returns a basis of the kernel as
/// vectors over the domain.
pub fn kernel_basis(columns: &[Vector], codim: usize) -> Vec<Vector> {
    let n = columns.len();
    if n == 0 {
        return Vec::new();
    }
    // Row-reduce the codim x n matrix.
    let mut rows: Vec<Vector> = (0..codim)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let lead = rows[r][col].clone();
        for c in rows[r].iter_mut() {
            *c /= &lead;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (a, b) in row.iter_mut().zip(pivot_row.iter()) {
                    *a -= &f * b;
                }
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut kernel = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = zero_vector(n);
        v[free] = BigRational::from_integer(1.into());
        for &(prow, pcol) in &pivots {
            v[pcol] = -rows[prow][free].clone();
        }
        kernel.push(v);
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coeff;

    fn v(entries: &[i64]) -> Vector {
        entries.iter().map(|&e| coeff(e)).collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[1, 2, 3])));
        assert!(e.insert(v(&[0, 1, 1])));
        assert!(!e.insert(v(&[1, 3, 4])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(v(&[2, 5, 7])));
        assert!(!e.contains(v(&[0, 0, 1])));
    }

    #[test]
    fn kernel_of_rank_one_map() {
        // columns of the map (x, y, z) -> x + 2y + 3z
        let cols = vec![v(&[1]), v(&[2]), v(&[3])];
        let k = kernel_basis(&cols, 1);
        assert_eq!(k.len(), 2);
        for kv in &k {
            let image: Coeff = kv
                .iter()
                .zip([1i64, 2, 3])
                .map(|(c, m)| c * coeff(m))
                .sum();
            assert!(image.is_zero());
        }
    }

    #[test]
    fn kernel_of_zero_map() {
        let cols = vec![v(&[0, 0]), v(&[0, 0])];
        let k = kernel_basis(&cols, 2);
        assert_eq!(k.len(), 2);
    }
}
