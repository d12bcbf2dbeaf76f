//! Homology of closed complexes: inner (Koszul) homology, the induced
//! outer homology, and the filtration on both, computed degreewise by exact
//! rank computations over the rationals.

use std::collections::BTreeMap;
use std::collections::HashMap;

use num_traits::Zero;
use serde_json::json;

use crate::closure::ClosedComplex;
use crate::linalg::{kernel_basis, rank_mod, zero_vector, Echelon, Vector};
use crate::poly::{Monomial, Variable};

/// Key (q, a, t2, s2).
pub type DegKey = (i32, i32, i32, i32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalForm {
    pub numerator: BTreeMap<DegKey, i64>,
    pub c: usize,
}

/// Homology output: associated-graded dimensions of the filtered triply
/// graded homology up to a q-cutoff, with the closed rational form over
/// `(1-q²)^c` when the series stabilizes below the cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredPoincare {
    pub cutoff_q: i32,
    pub dims: BTreeMap<DegKey, usize>,
    pub rational_form: Option<RationalForm>,
}

impl FilteredPoincare {
    pub fn to_json(&self) -> serde_json::Value {
        let dims: Vec<_> = self
            .dims
            .iter()
            .filter(|&(_, &d)| d > 0)
            .map(|(&(q, a, t2, s2), &d)| json!([q, a, t2, s2, d]))
            .collect();
        let rational = self.rational_form.as_ref().map(|rf| {
            let numerator: Vec<_> = rf
                .numerator
                .iter()
                .map(|(&(q, a, t2, s2), &c)| json!([q, a, t2, s2, c]))
                .collect();
            json!({ "numerator": numerator, "c": rf.c })
        });
        json!({
            "cutoffQ": self.cutoff_q,
            "dims": dims,
            "rationalForm": rational,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let cutoff_q = v.get("cutoffQ")?.as_i64()? as i32;
        let mut dims = BTreeMap::new();
        for row in v.get("dims")?.as_array()? {
            let r = row.as_array()?;
            let key = (
                r[0].as_i64()? as i32,
                r[1].as_i64()? as i32,
                r[2].as_i64()? as i32,
                r[3].as_i64()? as i32,
            );
            dims.insert(key, r[4].as_i64()? as usize);
        }
        let rational_form = match v.get("rationalForm") {
            Some(serde_json::Value::Null) | None => None,
            Some(rf) => {
                let mut numerator = BTreeMap::new();
                for row in rf.get("numerator")?.as_array()? {
                    let r = row.as_array()?;
                    let key = (
                        r[0].as_i64()? as i32,
                        r[1].as_i64()? as i32,
                        r[2].as_i64()? as i32,
                        r[3].as_i64()? as i32,
                    );
                    numerator.insert(key, r[4].as_i64()?);
                }
                Some(RationalForm { numerator, c: rf.get("c")?.as_u64()? as usize })
            }
        };
        Some(FilteredPoincare { cutoff_q, dims, rational_form })
    }

    /// Dimensions summed over the filtration: the unfiltered trigraded data.
    pub fn trigraded(&self) -> BTreeMap<(i32, i32, i32), usize> {
        let mut out = BTreeMap::new();
        for (&(q, a, t2, _), &d) in &self.dims {
            *out.entry((q, a, t2)).or_insert(0) += d;
        }
        out.retain(|_, d| *d > 0);
        out
    }
}

/// Inner homology: associated graded dimensions of the Hochschild-level
/// homology, plus the ranks of the induced outer maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerHomology {
    pub dims: BTreeMap<DegKey, usize>,
    pub outer_ranks: BTreeMap<(i32, i32, i32), usize>,
}

fn monomials_of_degree(vars: &[Variable], deg: u32) -> Vec<Monomial> {
    fn rec(vars: &[Variable], deg: u32, acc: &mut Vec<(Variable, u32)>, out: &mut Vec<Monomial>) {
        if vars.is_empty() {
            if deg == 0 {
                out.push(Monomial::from_exps(acc.clone()));
            }
            return;
        }
        if vars.len() == 1 {
            let mut acc2 = acc.clone();
            if deg > 0 {
                acc2.push((vars[0], deg));
            }
            out.push(Monomial::from_exps(acc2));
            return;
        }
        for e in 0..=deg {
            if e > 0 {
                acc.push((vars[0], e));
            }
            rec(&vars[1..], deg - e, acc, out);
            if e > 0 {
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, deg, &mut Vec::new(), &mut out);
    out
}

struct QSlice {
    // (t2, a) -> ordered basis of (generator, monomial)
    basis: BTreeMap<(i32, i32), Vec<(usize, Monomial)>>,
    pos: BTreeMap<(i32, i32), HashMap<(usize, Monomial), usize>>,
    // cached differential columns per basis element
    din: BTreeMap<(i32, i32), Vec<Vector>>,
    dout: BTreeMap<(i32, i32), Vec<Vector>>,
}

impl QSlice {
    fn dim(&self, key: (i32, i32)) -> usize {
        self.basis.get(&key).map(|b| b.len()).unwrap_or(0)
    }
}

fn build_qslice(closed: &ClosedComplex, q: i32) -> QSlice {
    let c = &closed.complex;
    let vars: Vec<Variable> = c.variables().iter().cloned().collect();
    let mut basis: BTreeMap<(i32, i32), Vec<(usize, Monomial)>> = BTreeMap::new();
    for (gi, g) in c.generators().iter().enumerate() {
        let rem = q - g.degree.q;
        if rem < 0 || rem % 2 != 0 {
            continue;
        }
        for m in monomials_of_degree(&vars, (rem / 2) as u32) {
            basis
                .entry((g.degree.t2, g.degree.a))
                .or_default()
                .push((gi, m));
        }
    }
    let mut pos = BTreeMap::new();
    for (key, b) in &basis {
        let map: HashMap<(usize, Monomial), usize> =
            b.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        pos.insert(*key, map);
    }
    let mut qs = QSlice { basis, pos, din: BTreeMap::new(), dout: BTreeMap::new() };
    let keys: Vec<(i32, i32)> = qs.basis.keys().cloned().collect();
    for key in keys {
        let (t2, a) = key;
        let din_key = (t2, a - 1);
        let dout_key = (t2 - 2, a - 1);
        let din_dim = qs.dim(din_key);
        let dout_dim = qs.dim(dout_key);
        let mut din_cols = Vec::new();
        let mut dout_cols = Vec::new();
        for (gi, m) in qs.basis[&key].clone() {
            let mut din_v = zero_vector(din_dim);
            let mut dout_v = zero_vector(dout_dim);
            for (&tg, p) in c.row(gi) {
                let tdeg = c.degree(tg);
                let dt2 = tdeg.t2 - t2;
                for (mp, coef) in p.terms() {
                    let prod = m.mul(mp);
                    if dt2 == 0 {
                        if let Some(&j) = qs.pos.get(&din_key).and_then(|mm| mm.get(&(tg, prod.clone()))) {
                            din_v[j] += coef;
                        }
                    } else if dt2 == -2 {
                        if let Some(&j) = qs.pos.get(&dout_key).and_then(|mm| mm.get(&(tg, prod.clone()))) {
                            dout_v[j] += coef;
                        }
                    }
                }
            }
            din_cols.push(din_v);
            dout_cols.push(dout_v);
        }
        qs.din.insert(key, din_cols);
        qs.dout.insert(key, dout_cols);
    }
    qs
}

/// Embed a vector over a subset of basis positions into full coordinates.
fn embed(v: &Vector, subset: &[usize], dim: usize) -> Vector {
    let mut out = zero_vector(dim);
    for (i, &j) in subset.iter().enumerate() {
        out[j] = v[i].clone();
    }
    out
}

struct LevelData {
    // cycles of the inner differential within the level subcomplex,
    // embedded in full slice coordinates
    cycles: BTreeMap<(i32, i32), Vec<Vector>>,
    // inner boundary images within the level
    bounds: BTreeMap<(i32, i32), Vec<Vector>>,
    // kernel of the induced outer map on inner homology
    h3_cycles: BTreeMap<(i32, i32), Vec<Vector>>,
    // denominators of the outer homology in flattened coordinates
    h3_bounds: BTreeMap<(i32, i32), Vec<Vector>>,
}

fn apply_dout(qs: &QSlice, key: (i32, i32), v: &Vector) -> Vector {
    let tgt_dim = qs.dim((key.0 - 2, key.1 - 1));
    let mut out = zero_vector(tgt_dim);
    let cols = &qs.dout[&key];
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, col) in out.iter_mut().zip(cols[i].iter()) {
            *o += c * col;
        }
    }
    out
}

fn level_data(closed: &ClosedComplex, qs: &QSlice, threshold: i32) -> LevelData {
    let c = &closed.complex;
    let keys: Vec<(i32, i32)> = qs.basis.keys().cloned().collect();
    let mut cycles = BTreeMap::new();
    let mut bounds: BTreeMap<(i32, i32), Vec<Vector>> = BTreeMap::new();
    for &key in &keys {
        let b = &qs.basis[&key];
        let subset: Vec<usize> = (0..b.len())
            .filter(|&i| c.degree(b[i].0).s2 >= threshold)
            .collect();
        let cols: Vec<Vector> = subset.iter().map(|&i| qs.din[&key][i].clone()).collect();
        let tgt_dim = qs.dim((key.0, key.1 - 1));
        let kern = kernel_basis(&cols, tgt_dim);
        let embedded: Vec<Vector> = kern
            .iter()
            .map(|k| embed(k, &subset, b.len()))
            .collect();
        cycles.insert(key, embedded);
        // boundaries land one a-degree down
        let img_key = (key.0, key.1 - 1);
        if qs.dim(img_key) > 0 {
            let imgs: Vec<Vector> = subset
                .iter()
                .map(|&i| qs.din[&key][i].clone())
                .filter(|v| v.iter().any(|x| !x.is_zero()))
                .collect();
            bounds.entry(img_key).or_default().extend(imgs);
        }
    }
    // outer-closed cycles: cycles whose outer image is an inner boundary
    let mut h3_cycles = BTreeMap::new();
    let mut h3_bounds: BTreeMap<(i32, i32), Vec<Vector>> = BTreeMap::new();
    for &key in &keys {
        let zs = &cycles[&key];
        let tgt_key = (key.0 - 2, key.1 - 1);
        let mut bound_ech = Echelon::new();
        if let Some(bs) = bounds.get(&tgt_key) {
            bound_ech.insert_all(bs.iter().cloned());
        }
        let reduced: Vec<Vector> = zs
            .iter()
            .map(|z| bound_ech.reduce(apply_dout(qs, key, z)))
            .collect();
        let tgt_dim = qs.dim(tgt_key);
        let combos = kernel_basis(&reduced, tgt_dim);
        let n: Vec<Vector> = combos
            .iter()
            .map(|combo| {
                let mut v = zero_vector(qs.dim(key));
                for (ci, z) in combo.iter().zip(zs.iter()) {
                    if !ci.is_zero() {
                        for (a, b) in v.iter_mut().zip(z.iter()) {
                            *a += ci * b;
                        }
                    }
                }
                v
            })
            .collect();
        h3_cycles.insert(key, n);
        // denominators: inner boundaries plus outer images of cycles from
        // one outer step up
        let mut dnm: Vec<Vector> = bounds.get(&key).cloned().unwrap_or_default();
        let up_key = (key.0 + 2, key.1 + 1);
        if let Some(up) = cycles.get(&up_key) {
            for z in up {
                let img = apply_dout(qs, up_key, z);
                if img.iter().any(|x| !x.is_zero()) {
                    dnm.push(img);
                }
            }
        }
        h3_bounds.insert(key, dnm);
    }
    LevelData { cycles, bounds, h3_cycles, h3_bounds }
}

fn thresholds(closed: &ClosedComplex) -> Vec<i32> {
    let mut ts: Vec<i32> = closed
        .complex
        .generators()
        .iter()
        .map(|g| g.degree.s2)
        .collect();
    ts.sort();
    ts.dedup();
    ts
}

fn attained_qs(closed: &ClosedComplex, cutoff_q: i32) -> Vec<i32> {
    let mut qs: Vec<i32> = Vec::new();
    let mut residues: Vec<i32> = closed
        .complex
        .generators()
        .iter()
        .map(|g| g.degree.q.rem_euclid(2))
        .collect();
    residues.sort();
    residues.dedup();
    let qmin = closed.complex.generators().iter().map(|g| g.degree.q).min();
    let Some(qmin) = qmin else { return qs };
    for q in qmin..=cutoff_q {
        if residues.contains(&q.rem_euclid(2)) {
            qs.push(q);
        }
    }
    qs
}

/// The filtered triply graded homology of a closed complex: outer homology
/// of the inner homology, with the filtration computed level by level as
/// image ranks.
pub fn poincare(closed: &ClosedComplex, cutoff_q: i32) -> Result<FilteredPoincare, String> {
    if !closed.complex.is_filtered() {
        return Err("closed complex is not filtered".to_string());
    }
    let qmin = closed.complex.generators().iter().map(|g| g.degree.q).min();
    if let Some(qmin) = qmin {
        if cutoff_q < qmin {
            return Err(format!("cutoff {} below minimal q-degree {}", cutoff_q, qmin));
        }
    }
    let levels = thresholds(closed);
    let mut dims: BTreeMap<DegKey, usize> = BTreeMap::new();
    for q in attained_qs(closed, cutoff_q) {
        let qs = build_qslice(closed, q);
        if qs.basis.is_empty() {
            continue;
        }
        // full complex corresponds to the lowest threshold
        let full = level_data(closed, &qs, levels[0]);
        let keys: Vec<(i32, i32)> = qs.basis.keys().cloned().collect();
        let mut f_ranks: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
        for (li, &v) in levels.iter().enumerate() {
            let data = if li == 0 { None } else { Some(level_data(closed, &qs, v)) };
            let data = data.as_ref().unwrap_or(&full);
            for &key in &keys {
                let mut dnm = Echelon::new();
                dnm.insert_all(full.h3_bounds[&key].iter().cloned());
                let f = rank_mod(&data.h3_cycles[&key], &dnm);
                f_ranks.entry(key).or_default().push(f);
            }
        }
        for (&(t2, a), fs) in &f_ranks {
            for (li, &v) in levels.iter().enumerate() {
                let next = if li + 1 < levels.len() { fs[li + 1] } else { 0 };
                let gr = fs[li].saturating_sub(next);
                if gr > 0 {
                    *dims.entry((q, a, t2, v)).or_insert(0) += gr;
                }
            }
        }
    }
    let rational_form = recover_rational_form(&dims, cutoff_q, closed.components).ok();
    Ok(FilteredPoincare { cutoff_q, dims, rational_form })
}

/// Associated-graded dimensions of the inner homology only, with induced
/// outer map ranks.
pub fn inner_homology(closed: &ClosedComplex, cutoff_q: i32) -> Result<InnerHomology, String> {
    if !closed.complex.is_filtered() {
        return Err("closed complex is not filtered".to_string());
    }
    let levels = thresholds(closed);
    let mut dims: BTreeMap<DegKey, usize> = BTreeMap::new();
    let mut outer_ranks: BTreeMap<(i32, i32, i32), usize> = BTreeMap::new();
    for q in attained_qs(closed, cutoff_q) {
        let qs = build_qslice(closed, q);
        if qs.basis.is_empty() {
            continue;
        }
        let full = level_data(closed, &qs, levels[0]);
        let keys: Vec<(i32, i32)> = qs.basis.keys().cloned().collect();
        // induced outer ranks on inner homology
        for &key in &keys {
            let zs = &full.cycles[&key];
            let tgt_key = (key.0 - 2, key.1 - 1);
            let mut tgt_bounds = Echelon::new();
            if let Some(bs) = full.bounds.get(&tgt_key) {
                tgt_bounds.insert_all(bs.iter().cloned());
            }
            let imgs: Vec<Vector> = zs.iter().map(|z| apply_dout(&qs, key, z)).collect();
            let r = rank_mod(&imgs, &tgt_bounds);
            if r > 0 {
                outer_ranks.insert((q, key.1, key.0), r);
            }
        }
        let mut f_ranks: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
        for (li, &v) in levels.iter().enumerate() {
            let data = if li == 0 { None } else { Some(level_data(closed, &qs, v)) };
            let data = data.as_ref().unwrap_or(&full);
            for &key in &keys {
                let mut dnm = Echelon::new();
                if let Some(bs) = full.bounds.get(&key) {
                    dnm.insert_all(bs.iter().cloned());
                }
                let f = rank_mod(&data.cycles[&key], &dnm);
                f_ranks.entry(key).or_default().push(f);
            }
        }
        for (&(t2, a), fs) in &f_ranks {
            for (li, &v) in levels.iter().enumerate() {
                let next = if li + 1 < levels.len() { fs[li + 1] } else { 0 };
                let gr = fs[li].saturating_sub(next);
                if gr > 0 {
                    *dims.entry((q, a, t2, v)).or_insert(0) += gr;
                }
            }
        }
    }
    Ok(InnerHomology { dims, outer_ranks })
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// Multiply the truncated q-series by (1-q²)^c and check it settles to a
/// Laurent polynomial with margin 2c below the cutoff.
pub fn recover_rational_form(
    dims: &BTreeMap<DegKey, usize>,
    cutoff_q: i32,
    c: usize,
) -> Result<RationalForm, String> {
    let mut numerator: BTreeMap<DegKey, i64> = BTreeMap::new();
    let mut groups: BTreeMap<(i32, i32, i32), BTreeMap<i32, usize>> = BTreeMap::new();
    for (&(q, a, t2, s2), &d) in dims {
        groups.entry((a, t2, s2)).or_default().insert(q, d);
    }
    for ((a, t2, s2), series) in groups {
        for q in series.keys().min().cloned().unwrap_or(0)..=cutoff_q {
            let mut coef: i64 = 0;
            for j in 0..=c {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let lower = series.get(&(q - 2 * j as i32)).cloned().unwrap_or(0) as i64;
                coef += sign * binomial(c, j) * lower;
            }
            if coef != 0 {
                if q > cutoff_q - 2 * c as i32 {
                    return Err(format!(
                        "series did not stabilize: numerator term at q={} with cutoff {}",
                        q, cutoff_q
                    ));
                }
                numerator.insert((q, a, t2, s2), coef);
            }
        }
    }
    Ok(RationalForm { numerator, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::close;
    use crate::soergel::{permutation_resolution, Permutation};

    #[test]
    fn unknot_homology_and_rational_form() {
        let c = permutation_resolution(&Permutation::identity(1));
        let closed = close(&c, 1, 1).unwrap();
        let p = poincare(&closed, 12).unwrap();
        // towers stas·(σ_aq² ⊕ 1) Q[w]
        for k in 0..=6 {
            assert_eq!(p.dims.get(&(2 * k, 0, 1, 1)), Some(&1), "a=0 tower at q={}", 2 * k);
        }
        for k in 1..=6 {
            assert_eq!(p.dims.get(&(2 * k, 1, 1, 1)), Some(&1), "a=1 tower at q={}", 2 * k);
        }
        let rf = p.rational_form.expect("unknot series stabilizes");
        assert_eq!(rf.c, 1);
        let expected: BTreeMap<DegKey, i64> =
            [((0, 0, 1, 1), 1), ((2, 1, 1, 1), 1)].into_iter().collect();
        assert_eq!(rf.numerator, expected);
    }

    #[test]
    fn two_strand_diagonal_closure_squares_the_circle() {
        // closure of the 2-strand identity: two circles
        let c = permutation_resolution(&Permutation::identity(2));
        let closed = close(&c, 2, 2).unwrap();
        let p = poincare(&closed, 10).unwrap();
        // series (1 + a q²)² t s / (1-q²)²: check a few coefficients
        // a=0: 1/(1-q²)² -> dims 1, 2, 3, ...
        assert_eq!(p.dims.get(&(0, 0, 2, 2)), Some(&1));
        assert_eq!(p.dims.get(&(2, 0, 2, 2)), Some(&2));
        assert_eq!(p.dims.get(&(4, 0, 2, 2)), Some(&3));
        // a=1: 2q²/(1-q²)² -> dims 2, 4, 6, ...
        assert_eq!(p.dims.get(&(2, 1, 2, 2)), Some(&2));
        assert_eq!(p.dims.get(&(4, 1, 2, 2)), Some(&4));
        // a=2: q⁴/(1-q²)² -> 1, 2, ...
        assert_eq!(p.dims.get(&(4, 2, 2, 2)), Some(&1));
        assert_eq!(p.dims.get(&(6, 2, 2, 2)), Some(&2));
        let rf = p.rational_form.unwrap();
        assert_eq!(rf.c, 2);
        let expected: BTreeMap<DegKey, i64> =
            [((0, 0, 2, 2), 1), ((2, 1, 2, 2), 2), ((4, 2, 2, 2), 1)]
                .into_iter()
                .collect();
        assert_eq!(rf.numerator, expected);
    }

    #[test]
    fn transposition_closure_is_one_circle() {
        // closure of the 2-strand transposition: a single circle, shifted
        // by one extra stas relative to the unknot
        let c = permutation_resolution(&Permutation::transposition(2, 1, 2));
        let closed = close(&c, 2, 1).unwrap();
        let p = poincare(&closed, 12).unwrap();
        let rf = p.rational_form.unwrap();
        let expected: BTreeMap<DegKey, i64> =
            [((0, 0, 2, 2), 1), ((2, 1, 2, 2), 1)].into_iter().collect();
        assert_eq!(rf.numerator, expected);
        assert_eq!(rf.c, 1);
    }

    #[test]
    fn poincare_round_trips_through_json() {
        let c = permutation_resolution(&Permutation::identity(1));
        let closed = close(&c, 1, 1).unwrap();
        let p = poincare(&closed, 8).unwrap();
        let j = p.to_json();
        let q = FilteredPoincare::from_json(&j).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn cutoff_below_minimum_is_an_error() {
        let c = permutation_resolution(&Permutation::identity(1));
        let closed = close(&c, 1, 1).unwrap();
        assert!(poincare(&closed, -1).is_err());
    }
}
