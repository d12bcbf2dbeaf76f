//! Resolutions of permutation bimodules, blob bimodules and the canonical
//! morphisms between them.
//!
//! The bimodule of a permutation `s` on `n` strands is cut out by the
//! relations `y_{s(p)} - x_p`; its canonical resolution is the Koszul
//! complex on those forms, with 2^n generators indexed by subsets of the
//! strand set. Blob resolutions are inner cones over virtual saddle
//! morphisms, with the cone target raised one filtration level and two
//! q-units.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{cone, ChainMap, ConeDirection, FreeBicomplex, Generator};
use crate::degree::{MultiDegree, SIGMA_AQ2, SIGMA_SQ2};
use crate::poly::{coeff, coeff_frac, Poly, Variable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Build from 1-indexed images; must be a bijection of 1..n.
    pub fn new(images: Vec<usize>) -> Result<Self, String> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(format!("not a permutation: {:?}", images));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        assert!(i != j && i >= 1 && j <= n && i <= n && j >= 1);
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// s(i), 1-indexed.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Right multiplication by the transposition (i j): s ↦ s·t_{ij}.
    pub fn compose_transposition(&self, i: usize, j: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    pub fn compose(&self, first: &Permutation) -> Permutation {
        // (self ∘ first)(i) = self(first(i))
        assert_eq!(self.n(), first.n());
        Permutation {
            images: (1..=self.n()).map(|i| self.image(first.image(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for i in 1..=self.n() {
            images[self.image(i) - 1] = i;
        }
        Permutation { images }
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut cycles = 0;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.image(k);
            }
        }
        cycles
    }
}

fn subset_label(bits: u32) -> String {
    format!("e{:b}", bits)
}

fn strand_vars(n: usize) -> BTreeSet<Variable> {
    (1..=n as u32)
        .flat_map(|i| [Variable::x(i), Variable::y(i)])
        .collect()
}

/// Sign picked up extracting strand `p` (1-indexed) from the ordered
/// exterior monomial over the subset `bits`.
fn ext_sign(bits: u32, p: usize) -> i64 {
    let below = bits & ((1u32 << (p - 1)) - 1);
    if below.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Canonical Koszul resolution of the bimodule of a permutation: the tensor
/// of the two-term complexes on `y_{s(p)} - x_p`, one per strand.
pub fn permutation_resolution(s: &Permutation) -> FreeBicomplex {
    let n = s.n();
    let size = 1usize << n;
    let gens: Vec<Generator> = (0..size as u32)
        .map(|bits| Generator {
            label: subset_label(bits),
            degree: SIGMA_AQ2.pow(bits.count_ones() as i32),
        })
        .collect();
    let mut c = FreeBicomplex::new(gens, strand_vars(n));
    for bits in 0..size as u32 {
        for p in 1..=n {
            let bit = 1u32 << (p - 1);
            if bits & bit == 0 {
                continue;
            }
            let form = Poly::linear(&[
                (1, Variable::y(s.image(p) as u32)),
                (-1, Variable::x(p as u32)),
            ]);
            c.add_entry(
                bits as usize,
                (bits & !bit) as usize,
                form.scale(&coeff(ext_sign(bits, p))),
            );
        }
    }
    c
}

/// Virtual saddle morphism from the resolution of `s` to the resolution of
/// `s·t_{ij}`. Acts as identity on the Koszul factors away from strands
/// `i, j` and swaps the minus-type factor for a plus-type factor on them;
/// Koszul degree -1, q-degree -2.
pub fn virtual_saddle(s: &Permutation, i: usize, j: usize) -> Result<ChainMap, String> {
    if i == j {
        return Err("virtual saddle needs two distinct strands".into());
    }
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let n = s.n();
    if j > n || i < 1 {
        return Err("strand index out of range".into());
    }
    let source = permutation_resolution(s);
    let target = permutation_resolution(&s.compose_transposition(i, j));
    let bi = 1u32 << (i - 1);
    let bj = 1u32 << (j - 1);
    let size = 1u32 << n;
    let mut entries: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
    for bits in 0..size {
        let has_i = bits & bi != 0;
        let has_j = bits & bj != 0;
        match (has_i, has_j) {
            (false, false) => {}
            (true, false) => {
                let sign = ext_sign(bits, i);
                entries.insert(
                    (bits as usize, (bits & !bi) as usize),
                    Poly::constant(coeff_frac(-sign, 2)),
                );
            }
            (false, true) => {
                let sign = ext_sign(bits, j);
                entries.insert(
                    (bits as usize, (bits & !bj) as usize),
                    Poly::constant(coeff_frac(sign, 2)),
                );
            }
            (true, true) => {
                // extract the (i, j) block, apply e_i ∧ e_j ↦ -(h_i + h_j)/2,
                // reinsert
                let sign_extract = ext_sign(bits, i) * ext_sign(bits & !bi, j);
                let rest = bits & !(bi | bj);
                for (keep, strand) in [(bi, i), (bj, j)] {
                    let sign_insert = ext_sign(rest | keep, strand);
                    entries.insert(
                        (bits as usize, (rest | keep) as usize),
                        Poly::constant(coeff_frac(-sign_extract * sign_insert, 2)),
                    );
                }
            }
        }
    }
    let f = ChainMap::new(source, target, entries, MultiDegree::new(-2, -1, 0, 0));
    debug_assert!(f.is_chain_map(), "virtual saddle must anticommute with d");
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlobColor {
    Black,
    White,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Number of generators contributed by each constituent of a blob
/// resolution on `n` strands.
pub fn blob_half(n: usize) -> usize {
    1usize << n
}

/// Canonical filtered resolution of a blob bimodule on strands
/// `(i, i+1)` of `n`. The black blob is the cone
/// `[res(id) -> σ_s σ_q² res(t_i)]`, the white blob the cone with the two
/// constituents exchanged. Cone targets sit one filtration level up.
pub fn blob_resolution(color: BlobColor, i: usize, n: usize) -> Result<FreeBicomplex, String> {
    if i < 1 || i + 1 > n {
        return Err(format!("blob strand {} out of range for {} strands", i, n));
    }
    let (src_perm, _tgt): (Permutation, Permutation) = match color {
        BlobColor::Black => (Permutation::identity(n), Permutation::transposition(n, i, i + 1)),
        BlobColor::White => (Permutation::transposition(n, i, i + 1), Permutation::identity(n)),
    };
    let saddle = virtual_saddle(&src_perm, i, i + 1)?;
    let shifted_target = saddle.target.shift(SIGMA_SQ2);
    let f = ChainMap::new(
        saddle.source,
        shifted_target,
        saddle.entries,
        MultiDegree::new(0, -1, 0, 2),
    );
    cone(&f, ConeDirection::Inner)
}

/// Index of a constituent generator inside a blob resolution: the cone
/// source occupies `0..half`, the shifted target `half..2*half`.
pub fn blob_source_index(g: usize) -> usize {
    g
}
pub fn blob_target_index(n: usize, g: usize) -> usize {
    blob_half(n) + g
}

/// Canonical filtered morphisms between blob and diagonal resolutions.
///
/// `chi(White, Plus, ..)` includes `σ_s σ_q²`-shifted diagonal into the white
/// blob as its top filtration level; `chi(Black, Minus, ..)` projects the
/// black blob onto its bottom level. Both are filtered with violation 0.
pub fn chi(color: BlobColor, sign: Sign, i: usize, n: usize) -> Result<ChainMap, String> {
    let half = blob_half(n);
    match (color, sign) {
        (BlobColor::White, Sign::Plus) => {
            let source = permutation_resolution(&Permutation::identity(n)).shift(SIGMA_SQ2);
            let target = blob_resolution(BlobColor::White, i, n)?;
            let entries: BTreeMap<(usize, usize), Poly> =
                (0..half).map(|g| ((g, half + g), Poly::one())).collect();
            let f = ChainMap::new(source, target, entries, MultiDegree::ZERO);
            debug_assert!(f.is_chain_map());
            Ok(f)
        }
        (BlobColor::Black, Sign::Minus) => {
            let source = blob_resolution(BlobColor::Black, i, n)?;
            let target = permutation_resolution(&Permutation::identity(n));
            let entries: BTreeMap<(usize, usize), Poly> =
                (0..half).map(|g| ((g, g), Poly::one())).collect();
            let f = ChainMap::new(source, target, entries, MultiDegree::ZERO);
            debug_assert!(f.is_chain_map());
            Ok(f)
        }
        _ => Err("chi is defined for (white, +) and (black, -) only".into()),
    }
}

/// The filtered morphisms realizing multiplication by `y_- ∓ x_-` between
/// oppositely colored blobs: block identities between the matching
/// constituents.
pub fn psi(sign: Sign, i: usize, n: usize) -> Result<ChainMap, String> {
    let half = blob_half(n);
    let (src_color, tgt_color) = match sign {
        Sign::Minus => (BlobColor::Black, BlobColor::White),
        Sign::Plus => (BlobColor::White, BlobColor::Black),
    };
    let source = blob_resolution(src_color, i, n)?.shift(SIGMA_SQ2);
    let target = blob_resolution(tgt_color, i, n)?;
    // cone source constituent of the shifted source maps onto the cone
    // target constituent of the target
    let entries: BTreeMap<(usize, usize), Poly> =
        (0..half).map(|g| ((g, half + g), Poly::one())).collect();
    let f = ChainMap::new(source, target, entries, MultiDegree::ZERO);
    debug_assert!(f.is_chain_map());
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::QDegree;
    use crate::reduce::{reduce_full, ReduceMode};

    #[test]
    fn identity_one_strand_resolution() {
        let c = permutation_resolution(&Permutation::identity(1));
        assert_eq!(c.len(), 2);
        assert_eq!(c.degree(0), MultiDegree::ZERO); // index 0 = empty subset
        let top = 1; // subset {1}
        assert_eq!(c.degree(top), SIGMA_AQ2);
        let p = c.entry(top, 0).unwrap();
        assert_eq!(p, &Poly::linear(&[(1, Variable::y(1)), (-1, Variable::x(1))]));
        c.assert_valid();
    }

    #[test]
    fn transposition_two_strands() {
        let s = Permutation::transposition(2, 1, 2);
        let c = permutation_resolution(&s);
        assert_eq!(c.len(), 4);
        let forms: Vec<Poly> = c
            .entries()
            .filter(|&(s, _, _)| s == 1 || s == 2)
            .map(|(_, _, p)| p.clone())
            .collect();
        let f1 = Poly::linear(&[(1, Variable::y(2)), (-1, Variable::x(1))]);
        let f2 = Poly::linear(&[(1, Variable::y(1)), (-1, Variable::x(2))]);
        assert!(forms.contains(&f1));
        assert!(forms.contains(&f2));
        c.assert_valid();
    }

    #[test]
    fn quotient_relations_kill_differential() {
        // substituting y_i := x_{s^{-1}(i)} annihilates every entry
        let s = Permutation::new(vec![2, 3, 1]).unwrap();
        let c = permutation_resolution(&s);
        let sinv = s.inverse();
        let mut bindings = BTreeMap::new();
        for i in 1..=3u32 {
            bindings.insert(Variable::y(i), Poly::var(Variable::x(sinv.image(i as usize) as u32)));
        }
        let sub = c.substitute(&bindings).unwrap();
        assert_eq!(sub.num_entries(), 0);
    }

    #[test]
    fn saddle_is_anticommuting_and_degree_correct() {
        for (s, i, j) in [
            (Permutation::identity(2), 1, 2),
            (Permutation::transposition(2, 1, 2), 1, 2),
            (Permutation::identity(3), 1, 2),
            (Permutation::identity(3), 2, 3),
            (Permutation::new(vec![3, 1, 2]).unwrap(), 1, 3),
        ] {
            let f = virtual_saddle(&s, i, j).unwrap();
            assert!(f.is_chain_map(), "saddle must be a chain map");
            assert!(f.check_degrees().is_empty());
            assert_eq!(f.degree_shift, MultiDegree::new(-2, -1, 0, 0));
        }
    }

    #[test]
    fn saddle_rejects_equal_strands() {
        assert!(virtual_saddle(&Permutation::identity(2), 1, 1).is_err());
    }

    #[test]
    fn black_blob_shape() {
        let b = blob_resolution(BlobColor::Black, 1, 2).unwrap();
        assert_eq!(b.len(), 8);
        b.assert_valid();
        let levels: BTreeSet<i32> = b.generators().iter().map(|g| g.degree.s2).collect();
        assert_eq!(levels, [0, 2].into_iter().collect());
        assert!(b.is_filtered());
        // associated graded at level 0 is the diagonal resolution
        let level0: Vec<_> = b.generators().iter().filter(|g| g.degree.s2 == 0).collect();
        assert_eq!(level0.len(), 4);
    }

    #[test]
    fn white_blob_is_black_with_cone_swapped() {
        let w = blob_resolution(BlobColor::White, 1, 2).unwrap();
        let b = blob_resolution(BlobColor::Black, 1, 2).unwrap();
        assert_eq!(w.len(), b.len());
        w.assert_valid();
        // graded dims agree after swapping which constituent carries the shift
        let dim_w = w.graded_dims();
        let dim_b = b.graded_dims();
        assert_eq!(
            dim_w.values().sum::<usize>(),
            dim_b.values().sum::<usize>()
        );
    }

    #[test]
    fn blob_rejects_bad_strand() {
        assert!(blob_resolution(BlobColor::Black, 2, 2).is_err());
        assert!(blob_resolution(BlobColor::Black, 0, 2).is_err());
    }

    #[test]
    fn chi_maps_are_filtered_chain_maps() {
        let plus = chi(BlobColor::White, Sign::Plus, 1, 2).unwrap();
        assert!(plus.is_chain_map());
        assert!(plus.check_degrees().is_empty());
        assert_eq!(plus.violation().max_violation2, 0);

        let minus = chi(BlobColor::Black, Sign::Minus, 1, 2).unwrap();
        assert!(minus.is_chain_map());
        assert!(minus.check_degrees().is_empty());
        assert_eq!(minus.violation().max_violation2, 0);

        assert!(chi(BlobColor::Black, Sign::Plus, 1, 2).is_err());
        assert!(chi(BlobColor::White, Sign::Minus, 1, 2).is_err());
    }

    #[test]
    fn psi_maps_are_filtered_chain_maps() {
        for sign in [Sign::Plus, Sign::Minus] {
            let f = psi(sign, 1, 2).unwrap();
            assert!(f.is_chain_map());
            assert!(f.check_degrees().is_empty());
            assert_eq!(f.violation().max_violation2, 0);
        }
    }

    #[test]
    fn chi_minus_kills_filtration_sub() {
        // the inclusion of the top filtration level of the black blob,
        // followed by chi_-, vanishes
        let n = 2;
        let half = blob_half(n);
        let black = blob_resolution(BlobColor::Black, 1, n).unwrap();
        let sub_incl: BTreeMap<(usize, usize), Poly> = (0..half)
            .map(|g| ((g, half + g), Poly::one()))
            .collect();
        let ti = permutation_resolution(&Permutation::transposition(n, 1, 2)).shift(SIGMA_SQ2);
        let incl = ChainMap::new(ti, black.clone(), sub_incl, MultiDegree::ZERO);
        assert!(incl.is_chain_map());
        let minus = chi(BlobColor::Black, Sign::Minus, 1, n).unwrap();
        let comp = incl.compose(&minus);
        assert!(comp.entries.is_empty());
    }

    #[test]
    fn chi_plus_section_of_projection() {
        // chi_+ followed by projecting the white blob onto its top level is
        // the identity on the shifted diagonal
        let n = 2;
        let half = blob_half(n);
        let plus = chi(BlobColor::White, Sign::Plus, 1, n).unwrap();
        let white = plus.target.clone();
        let id_shift = plus.source.clone();
        let proj: BTreeMap<(usize, usize), Poly> =
            (0..half).map(|g| ((half + g, g), Poly::one())).collect();
        let pr = ChainMap::new(white, id_shift, proj, MultiDegree::ZERO);
        let comp = plus.compose(&pr);
        assert_eq!(comp.entries.len(), half);
        assert!(comp.entries.iter().all(|(&(s, t), p)| s == t && p == &Poly::one()));
    }

    #[test]
    fn composition_of_permutation_resolutions_reduces() {
        // res(s') ⊗ res(s) over the middle variables reduces to the graded
        // dims of res(s's)
        let s1 = Permutation::transposition(2, 1, 2);
        let s2 = Permutation::transposition(2, 1, 2);
        let left = permutation_resolution(&s2);
        let right = permutation_resolution(&s1);
        let glue: Vec<(Variable, Variable, Variable)> = (1..=2u32)
            .map(|i| (Variable::x(i), Variable::y(i), Variable::dummy(i)))
            .collect();
        let t = left.tensor(&right, &glue).unwrap();
        let (red, _) = reduce_full(&t, ReduceMode::Filtered);
        let expect = permutation_resolution(&s2.compose(&s1));
        assert_eq!(red.graded_dims(), expect.graded_dims());
        assert!(red
            .variables()
            .iter()
            .all(|v| !matches!(v.family, crate::poly::VarFamily::Dummy)));
    }

    #[test]
    fn plus_minus_change_of_basis_splits_diagonal() {
        // res(∥) in plus/minus coordinates equals K(y+ - x+) ⊗ K(y- - x-)
        // after the constant change of basis f± = e1 ± e2.
        let c = permutation_resolution(&Permutation::identity(2));
        let xp = Variable::dummy(101);
        let xm = Variable::dummy(102);
        let yp = Variable::dummy(103);
        let ym = Variable::dummy(104);
        let half = coeff_frac(1, 2);
        let mut bind = BTreeMap::new();
        bind.insert(Variable::x(1), (&Poly::var(xp) - &Poly::var(xm)).scale(&half));
        bind.insert(Variable::x(2), (&Poly::var(xp) + &Poly::var(xm)).scale(&half));
        bind.insert(Variable::y(1), (&Poly::var(yp) - &Poly::var(ym)).scale(&half));
        bind.insert(Variable::y(2), (&Poly::var(yp) + &Poly::var(ym)).scale(&half));
        let cpm = c.substitute(&bind).unwrap();
        // basis change on the a=1 level: f+ = e1 + e2, f- = e2 - e1
        // d(f+) = (y+ - x+), d(f-) = (y- - x-)
        let e1 = 0b01usize;
        let e2 = 0b10usize;
        let d1 = cpm.entry(e1, 0).unwrap().clone();
        let d2 = cpm.entry(e2, 0).unwrap().clone();
        let dplus = &d1 + &d2;
        let dminus = &d2 - &d1;
        assert_eq!(dplus, &Poly::var(yp) - &Poly::var(xp));
        assert_eq!(dminus, &Poly::var(ym) - &Poly::var(xm));
        assert_eq!(dplus.q_degree(), QDegree::Homogeneous(2));
    }

    #[test]
    fn virtual_relation_recolors_blob() {
        // virt ⊗ blackblob over the middle reduces to the graded data of
        // the white blob (up to relabeled strand forms)
        let n = 2;
        let virt = permutation_resolution(&Permutation::transposition(n, 1, 2));
        let black = blob_resolution(BlobColor::Black, 1, n).unwrap();
        let glue: Vec<(Variable, Variable, Variable)> = (1..=n as u32)
            .map(|i| (Variable::x(i), Variable::y(i), Variable::dummy(i)))
            .collect();
        let t = virt.tensor(&black, &glue).unwrap();
        let (red, _) = reduce_full(&t, ReduceMode::Filtered);
        let white = blob_resolution(BlobColor::White, 1, n).unwrap();
        assert_eq!(red.graded_dims(), white.graded_dims());
    }
}
