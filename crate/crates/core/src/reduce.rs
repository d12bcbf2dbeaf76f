//! Simplification of complexes: Gaussian elimination of unit entries and
//! exclusion of bound dummy variables.

use std::collections::{BTreeMap, BTreeSet};


use crate::complex::{FreeBicomplex, Generator, ViolationReport};
use crate::poly::{Coeff, Poly, Variable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceMode {
    /// Only cancel pairs on the same filtration level; the result is
    /// filtered homotopy equivalent to the input.
    Filtered,
    /// Cancel any unit entry; the report bounds the filtration violation of
    /// the transferred differential.
    Unfiltered,
}

struct Work {
    gens: Vec<Generator>,
    alive: Vec<bool>,
    out_: Vec<BTreeMap<usize, Poly>>,
    in_: Vec<BTreeSet<usize>>,
    vars: BTreeSet<Variable>,
}

impl Work {
    fn from_complex(c: &FreeBicomplex) -> Self {
        let n = c.len();
        let mut w = Work {
            gens: c.generators().to_vec(),
            alive: vec![true; n],
            out_: vec![BTreeMap::new(); n],
            in_: vec![BTreeSet::new(); n],
            vars: c.variables().clone(),
        };
        for (s, t, p) in c.entries() {
            w.out_[s].insert(t, p.clone());
            w.in_[t].insert(s);
        }
        w
    }

    fn into_complex(self) -> FreeBicomplex {
        let mut remap = vec![usize::MAX; self.gens.len()];
        let mut gens = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            if self.alive[i] {
                remap[i] = gens.len();
                gens.push(g.clone());
            }
        }
        let mut out = FreeBicomplex::new(gens, self.vars.clone());
        for (s, row) in self.out_.iter().enumerate() {
            if !self.alive[s] {
                continue;
            }
            for (&t, p) in row {
                if self.alive[t] {
                    out.set_entry(remap[s], remap[t], p.clone());
                }
            }
        }
        out
    }

    fn set(&mut self, s: usize, t: usize, p: Poly) {
        if p.is_zero() {
            self.out_[s].remove(&t);
            self.in_[t].remove(&s);
        } else {
            self.out_[s].insert(t, p);
            self.in_[t].insert(s);
        }
    }

    fn add(&mut self, s: usize, t: usize, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let cur = self.out_[s].get(&t).cloned().unwrap_or_else(Poly::zero);
        self.set(s, t, &cur + p);
    }

    fn kill(&mut self, g: usize) {
        self.alive[g] = false;
        let targets: Vec<usize> = self.out_[g].keys().cloned().collect();
        for t in targets {
            self.in_[t].remove(&g);
        }
        self.out_[g].clear();
        let sources: Vec<usize> = self.in_[g].iter().cloned().collect();
        for s in sources {
            self.out_[s].remove(&g);
        }
        self.in_[g].clear();
    }

    /// Cancel the pair (x, y) through the invertible constant entry c.
    fn eliminate(&mut self, x: usize, y: usize, c: &Coeff) {
        let ins: Vec<(usize, Poly)> = self.in_[y]
            .iter()
            .filter(|&&w| w != x)
            .map(|&w| (w, self.out_[w][&y].clone()))
            .collect();
        let outs: Vec<(usize, Poly)> = self.out_[x]
            .iter()
            .filter(|&(&v, _)| v != y)
            .map(|(&v, p)| (v, p.clone()))
            .collect();
        let cinv = Coeff::new(c.denom().clone(), c.numer().clone());
        for (w, beta) in &ins {
            for (v, delta) in &outs {
                let corr = (beta * delta).scale(&(-cinv.clone()));
                self.add(*w, *v, &corr);
            }
        }
        self.kill(x);
        self.kill(y);
    }

    /// Inner unit entries: constants joining generators in the same outer
    /// column. Outer units are handled by `collapse_outer` under stricter
    /// conditions.
    fn find_unit(&self, mode: ReduceMode) -> Option<(usize, usize, Coeff)> {
        for (s, row) in self.out_.iter().enumerate() {
            if !self.alive[s] {
                continue;
            }
            for (&t, p) in row {
                if self.gens[t].degree.t2 != self.gens[s].degree.t2 {
                    continue;
                }
                if let Some(c) = p.as_constant() {
                    if mode == ReduceMode::Unfiltered
                        || self.gens[t].degree.s2 == self.gens[s].degree.s2
                    {
                        return Some((s, t, c.clone()));
                    }
                }
            }
        }
        None
    }

    /// Outer unit entries eligible for contraction under the given rule.
    fn find_outer_unit(&self, rule: OuterRule) -> Option<(usize, usize, Coeff)> {
        for (s, row) in self.out_.iter().enumerate() {
            if !self.alive[s] {
                continue;
            }
            for (&t, p) in row {
                if self.gens[t].degree.t2 != self.gens[s].degree.t2 - 2 {
                    continue;
                }
                if self.gens[t].degree.s2 != self.gens[s].degree.s2 {
                    continue;
                }
                if let Some(c) = p.as_constant() {
                    let ok = match rule {
                        OuterRule::Always => true,
                        // the pair spans a contractible subcomplex (x emits
                        // only the unit, y emits nothing) or a contractible
                        // quotient (y receives only the unit, x receives
                        // nothing); both drops are filtered homotopy
                        // equivalences of complexes of complexes
                        OuterRule::Safe => {
                            (self.out_[s].len() == 1 && self.out_[t].is_empty())
                                || (self.in_[t].len() == 1 && self.in_[s].is_empty())
                        }
                    };
                    if ok {
                        return Some((s, t, c.clone()));
                    }
                }
            }
        }
        None
    }

    /// Basis change w <- w - q * g1 (valid when both have equal degree up
    /// to the q-degree of the multiplier).
    fn col_op(&mut self, w: usize, q: &Poly, g1: usize) {
        let row: Vec<(usize, Poly)> = self.out_[g1].iter().map(|(&t, p)| (t, p.clone())).collect();
        for (t, p) in row {
            let corr = (q * &p).scale(&crate::poly::coeff(-1));
            self.add(w, t, &corr);
        }
        let ins: Vec<(usize, Poly)> = self.in_[w]
            .iter()
            .map(|&u| (u, self.out_[u][&w].clone()))
            .collect();
        for (u, p) in ins {
            let corr = &p * q;
            self.add(u, g1, &corr);
        }
    }

    /// Basis change g2 <- g2 + q * v.
    fn row_op(&mut self, g2: usize, q: &Poly, v: usize) {
        let row: Vec<(usize, Poly)> = self.out_[v].iter().map(|(&t, p)| (t, p.clone())).collect();
        for (t, p) in row {
            let corr = q * &p;
            self.add(g2, t, &corr);
        }
        let ins: Vec<(usize, Poly)> = self.in_[g2]
            .iter()
            .map(|&u| (u, self.out_[u][&g2].clone()))
            .collect();
        for (u, p) in ins {
            let corr = (&p * q).scale(&crate::poly::coeff(-1));
            self.add(u, v, &corr);
        }
    }

    fn max_violation(&self) -> ViolationReport {
        let mut max = 0;
        let mut witness = None;
        for (s, row) in self.out_.iter().enumerate() {
            if !self.alive[s] {
                continue;
            }
            for &t in row.keys() {
                let v = self.gens[s].degree.s2 - self.gens[t].degree.s2;
                if v > max {
                    max = v;
                    witness = Some((self.gens[s].label.clone(), self.gens[t].label.clone()));
                }
            }
        }
        ViolationReport { max_violation2: max.max(0), witness }
    }
}

/// Eligibility rule for contracting an outer unit pair (x, y).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OuterRule {
    /// The pair spans a contractible subcomplex or quotient complex; the
    /// drop preserves the filtered homotopy type of the complex of
    /// complexes, hence the filtered homology of any closure.
    Safe,
    /// Contract unconditionally. Preserves the total homotopy type only;
    /// the inner-then-outer homology may change.
    Always,
}

/// Repeatedly cancel generator pairs joined by invertible constants. The
/// result is homotopy equivalent to the input (filtered homotopy equivalent
/// in filtered mode).
pub fn gaussian_eliminate(c: &FreeBicomplex, mode: ReduceMode) -> (FreeBicomplex, ViolationReport) {
    let mut w = Work::from_complex(c);
    while let Some((s, t, unit)) = w.find_unit(mode) {
        w.eliminate(s, t, &unit);
    }
    let report = match mode {
        ReduceMode::Filtered => ViolationReport::zero(),
        ReduceMode::Unfiltered => w.max_violation(),
    };
    (w.into_complex(), report)
}

/// Contract outer unit pairs subject to the rule, interleaved with inner
/// reduction.
pub fn collapse_outer(c: &FreeBicomplex, rule: OuterRule) -> FreeBicomplex {
    let mut w = Work::from_complex(c);
    loop {
        let mut progressed = false;
        while let Some((s, t, unit)) = w.find_unit(ReduceMode::Filtered) {
            w.eliminate(s, t, &unit);
            progressed = true;
        }
        if let Some((s, t, unit)) = w.find_outer_unit(rule) {
            w.eliminate(s, t, &unit);
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    w.into_complex()
}

/// Single outer contraction step, for diagnostics.
pub fn collapse_outer_once(c: &FreeBicomplex) -> Option<(FreeBicomplex, String)> {
    let mut w = Work::from_complex(c);
    if let Some((s, t, unit)) = w.find_outer_unit(OuterRule::Safe) {
        let desc = format!("{} -> {}", w.gens[s].label, w.gens[t].label);
        w.eliminate(s, t, &unit);
        return Some((w.into_complex(), desc));
    }
    None
}

/// Full filtered simplification preserving the filtered homotopy type as a
/// complex of complexes: inner elimination, dummy exclusion, splitting
/// rotations, and contraction of outer unit blocks that are isomorphisms
/// between whole inner-connected components.
pub fn reduce_filtered(c: &FreeBicomplex) -> FreeBicomplex {
    let mut cur = reduce_full(c, ReduceMode::Filtered).0;
    loop {
        let before = (cur.len(), cur.num_entries());
        cur = contract_iso_components(&cur);
        cur = reduce_full(&cur, ReduceMode::Filtered).0;
        if (cur.len(), cur.num_entries()) == before {
            break;
        }
    }
    cur
}

/// Expose rotation plumbing for structure-aware callers.
pub fn rotation_work(c: &FreeBicomplex) -> impl RotationHandle {
    Work::from_complex(c)
}

pub trait RotationHandle {
    fn rotate(&mut self, g: usize, lambda: i64, h: usize);
    fn finish(self) -> FreeBicomplex;
}

impl RotationHandle for Work {
    fn rotate(&mut self, g: usize, lambda: i64, h: usize) {
        self.row_op(g, &Poly::constant(crate::poly::coeff(lambda)), h);
    }
    fn finish(self) -> FreeBicomplex {
        self.into_complex()
    }
}

pub fn apply_rotation(w: &mut impl RotationHandle, g: usize, lambda: i64, h: usize) {
    w.rotate(g, lambda, h);
}

pub fn rotation_result(w: impl RotationHandle) -> FreeBicomplex {
    w.finish()
}


/// Connected components of the generators under inner entries (both
/// directions), i.e. the indecomposable pieces of each column.
fn inner_components(c: &FreeBicomplex) -> Vec<usize> {
    let n = c.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut Vec<usize>, mut i: usize) -> usize {
        while comp[i] != i {
            comp[i] = comp[comp[i]];
            i = comp[i];
        }
        i
    }
    for (s, t, _) in c.entries() {
        if c.degree(s).t2 == c.degree(t).t2 {
            let (a, b) = (find(&mut comp, s), find(&mut comp, t));
            if a != b {
                comp[a] = b;
            }
        }
    }
    (0..n).map(|i| find(&mut comp, i)).collect()
}

/// Contract one outer unit block that maps an inner component
/// isomorphically onto another. This is the cone-of-an-equivalence
/// contraction: corrections transfer the surrounding differentials and the
/// result is filtered homotopy equivalent as a complex of complexes.
fn contract_iso_components(c: &FreeBicomplex) -> FreeBicomplex {
    let comp = inner_components(c);
    // group outer unit entries by component pair
    let mut blocks: BTreeMap<(usize, usize), Vec<(usize, usize, Coeff)>> = BTreeMap::new();
    for (s, t, p) in c.entries() {
        if c.degree(t).t2 == c.degree(s).t2 - 2 {
            if let Some(u) = p.as_constant() {
                blocks.entry((comp[s], comp[t])).or_default().push((s, t, u.clone()));
            }
        }
    }
    'blocks: for ((cs, ct), pairs) in blocks {
        let hi: Vec<usize> = (0..c.len()).filter(|&g| comp[g] == cs).collect();
        let lo: Vec<usize> = (0..c.len()).filter(|&g| comp[g] == ct).collect();
        if hi.len() != lo.len() || pairs.len() != hi.len() {
            continue;
        }
        // bijective unit pairing at matching filtration levels
        let mut matched: BTreeMap<usize, (usize, Coeff)> = BTreeMap::new();
        for (s, t, u) in &pairs {
            if matched.contains_key(s) || c.degree(*s).s2 != c.degree(*t).s2 {
                continue 'blocks;
            }
            matched.insert(*s, (*t, u.clone()));
        }
        if matched.len() != hi.len() {
            continue;
        }
        // are there outer non-unit entries inside the block?
        let within: usize = c
            .entries()
            .filter(|&(s, t, _)| comp[s] == cs && comp[t] == ct)
            .count();
        if within != pairs.len() {
            continue;
        }
        // the block must intertwine the inner differentials: for a global
        // sign, entry(t_s -> t_s2) = sign * (u_s2 / u_s) entry(s -> s2)
        let mut sigma: Option<bool> = None;
        for &s in &hi {
            let (t, ref u) = matched[&s];
            if c.row(s).iter().filter(|&(&s2, _)| comp[s2] == cs).count()
                != c.row(t).iter().filter(|&(&t2, _)| comp[t2] == ct).count()
            {
                continue 'blocks;
            }
            for (&s2, p) in c.row(s) {
                if comp[s2] != cs || c.degree(s2).t2 != c.degree(s).t2 {
                    continue;
                }
                let (t2, ref u2) = matched[&s2];
                let got = p.scale(&(u2 / u));
                match c.entry(t, t2) {
                    Some(q) if *q == got => match sigma {
                        None => sigma = Some(false),
                        Some(false) => {}
                        Some(true) => continue 'blocks,
                    },
                    Some(q) if *q == -&got => match sigma {
                        None => sigma = Some(true),
                        Some(true) => {}
                        Some(false) => continue 'blocks,
                    },
                    _ => continue 'blocks,
                }
            }
        }
        // contract the whole block
        let mut w = Work::from_complex(c);
        for (&s, (t, u)) in &matched {
            w.eliminate(s, *t, u);
        }
        return w.into_complex();
    }
    c.clone()
}

/// Try to remove a dummy variable that the differential binds.
///
/// The complex must split, after a change of dummy coordinates and a graded
/// change of basis, as `K(v) ⊗ D` with `K(v)` the two-term Koszul complex on
/// the dummy itself. When that structure is found the `K(v)` direction is
/// contracted: half the generators are dropped and `v` leaves the variable
/// universe. Returns `None` when the structure cannot be established; the
/// input is then left as is (correct but larger).
pub fn exclude_dummy(c: &FreeBicomplex, var: Variable, filtered: bool) -> Option<FreeBicomplex> {
    // collect candidate normalizations: entries linear in var with constant
    // unit coefficient, deduplicated by the induced change of coordinates
    let mut seeds: Vec<(Coeff, Poly)> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for (_, _, p) in c.entries() {
        if p.max_exp_of(var) == 1 {
            let (quot, rest) = p.split_linear(var);
            if let Some(cc) = quot.as_constant() {
                let cinv = Coeff::new(cc.denom().clone(), cc.numer().clone());
                let key = rest.scale(&cinv).to_string();
                if seen.insert(key) {
                    seeds.push((cc.clone(), rest));
                }
            }
        }
    }
    for (c0, rest) in seeds {
        if let Some(out) = exclude_dummy_with_seed(c, var, filtered, &c0, &rest) {
            return Some(out);
        }
    }
    None
}

fn exclude_dummy_with_seed(
    c: &FreeBicomplex,
    var: Variable,
    filtered: bool,
    c0: &Coeff,
    rest: &Poly,
) -> Option<FreeBicomplex> {
    let mut w = Work::from_complex(c);

    // renormalise the dummy so the seed entry becomes c0 * var
    if !rest.is_zero() {
        let cinv = Coeff::new(c0.denom().clone(), c0.numer().clone());
        let image = &Poly::var(var) - &rest.scale(&cinv);
        let mut bindings = BTreeMap::new();
        bindings.insert(var, image);
        for t in w.in_.iter_mut() {
            t.clear();
        }
        for s in 0..w.out_.len() {
            let row = std::mem::take(&mut w.out_[s]);
            for (t, p) in row {
                let p = p.substitute(&bindings).ok()?;
                if !p.is_zero() {
                    w.out_[s].insert(t, p);
                    w.in_[t].insert(s);
                }
            }
        }
    }

    let limit = 16 * w.out_.iter().map(|r| r.len()).sum::<usize>().max(16);
    for _ in 0..limit {
        // current pure pairing entries: exactly  c * var
        let mut partner: BTreeMap<usize, (usize, Coeff, bool)> = BTreeMap::new(); // gen -> (partner, coeff, is_src)
        for (s, row) in w.out_.iter().enumerate() {
            if !w.alive[s] || partner.contains_key(&s) {
                continue;
            }
            for (&t, p) in row {
                if partner.contains_key(&t) || t == s {
                    continue;
                }
                let (quot, rest) = p.split_linear(var);
                if rest.is_zero() && p.max_exp_of(var) == 1 {
                    if let Some(cc) = quot.as_constant() {
                        // pairings follow the Koszul direction: same column,
                        // and in filtered mode the same filtration level
                        if w.gens[s].degree.t2 != w.gens[t].degree.t2 {
                            continue;
                        }
                        if filtered && w.gens[s].degree.s2 != w.gens[t].degree.s2 {
                            continue;
                        }
                        partner.insert(s, (t, cc.clone(), true));
                        partner.insert(t, (s, cc.clone(), false));
                        break;
                    }
                }
            }
        }

        let perfect = (0..w.gens.len()).all(|g| !w.alive[g] || partner.contains_key(&g));

        // entries that block the K(var) ⊗ D structure
        let mut blockers: Vec<(usize, usize, Poly)> = Vec::new();
        for (s, row) in w.out_.iter().enumerate() {
            if !w.alive[s] {
                continue;
            }
            for (&t, p) in row {
                let is_pairing = partner.get(&s).map(|&(q, _, r)| r && q == t).unwrap_or(false);
                if !is_pairing && p.contains_var(var) {
                    blockers.push((s, t, p.clone()));
                }
            }
        }

        if blockers.is_empty() {
            if !perfect {
                return None;
            }
            // cross entries between the two sides break the split
            for (s, row) in w.out_.iter().enumerate() {
                if !w.alive[s] {
                    continue;
                }
                let s_src = partner[&s].2;
                for &t in row.keys() {
                    let is_pairing = s_src && partner[&s].0 == t;
                    if !is_pairing && partner[&t].2 != s_src {
                        return None;
                    }
                }
            }
            // contract: keep the target side of every pair
            let drop: Vec<usize> = (0..w.gens.len())
                .filter(|&g| w.alive[g] && partner[&g].2)
                .collect();
            for g in drop {
                w.kill(g);
            }
            w.vars.remove(&var);
            let out = w.into_complex();
            debug_assert!(out.d_squared_is_zero());
            return Some(out);
        }

        // clear the first blocker reachable through an adjacent pairing;
        // blockers with no adjacent pairing are left for later rounds, when
        // the corrections from their family of sibling operations cancel them
        let mut progressed = false;
        for (s, t, p) in blockers {
            let coeffs = p.coeffs_in(var);
            let mut q = Poly::zero();
            for (k, f) in coeffs.iter().filter(|&(&k, _)| k >= 1) {
                let mut m = f.clone();
                for _ in 0..(k - 1) {
                    m = &m * &Poly::var(var);
                }
                q += &m;
            }
            if let Some(&(g1, ref cc, false)) = partner.get(&t) {
                // t is the target of pairing g1 -> t
                if s != g1 && degree_compatible(&w, s, g1, filtered) {
                    let cinv = Coeff::new(cc.denom().clone(), cc.numer().clone());
                    w.col_op(s, &q.scale(&cinv), g1);
                    progressed = true;
                    break;
                }
            }
            if let Some(&(g2, ref cc, true)) = partner.get(&s) {
                // s is the source of pairing s -> g2
                if t != g2 && degree_compatible(&w, g2, t, filtered) {
                    let cinv = Coeff::new(cc.denom().clone(), cc.numer().clone());
                    w.row_op(g2, &q.scale(&cinv), t);
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            return None;
        }
    }
    None
}

fn degree_compatible(w: &Work, a: usize, b: usize, filtered: bool) -> bool {
    let da = w.gens[a].degree;
    let db = w.gens[b].degree;
    let ok = da.a == db.a && da.t2 == db.t2;
    if filtered {
        ok && db.s2 >= da.s2
    } else {
        ok
    }
}

/// Full reduction loop: constant elimination alternated with exclusion of
/// the dummy variables still bound by the differential.
pub fn reduce_full(c: &FreeBicomplex, mode: ReduceMode) -> (FreeBicomplex, ViolationReport) {
    let filtered = mode == ReduceMode::Filtered;
    let (mut cur, mut report) = gaussian_eliminate(c, mode);
    loop {
        let dummies: Vec<Variable> = cur
            .variables()
            .iter()
            .cloned()
            .filter(|v| matches!(v.family, crate::poly::VarFamily::Dummy))
            .collect();
        let mut progressed = false;
        for v in dummies {
            // a dummy no entry mentions is a genuine free tower; keep it
            if !cur.entries().any(|(_, _, p)| p.contains_var(v)) {
                continue;
            }
            if let Some(next) = exclude_dummy(&cur, v, filtered) {
                let (next, rep) = gaussian_eliminate(&next, mode);
                cur = next;
                report.max_violation2 = report.max_violation2.max(rep.max_violation2);
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    (cur, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Generator;
    use crate::degree::{MultiDegree, SIGMA_AQ2};
    use crate::poly::{coeff, Poly, Variable};

    fn koszul(form: Poly, vars: &[Variable]) -> FreeBicomplex {
        let mut c = FreeBicomplex::new(
            vec![
                Generator { label: "e".into(), degree: SIGMA_AQ2 },
                Generator { label: "1".into(), degree: MultiDegree::ZERO },
            ],
            vars.iter().cloned().collect(),
        );
        c.add_entry(0, 1, form);
        c
    }

    #[test]
    fn unit_pair_contracts_to_nothing() {
        let mut c = FreeBicomplex::new(
            vec![
                Generator { label: "a".into(), degree: SIGMA_AQ2 - MultiDegree::new(2, 0, 0, 0) },
                Generator { label: "b".into(), degree: MultiDegree::ZERO },
            ],
            BTreeSet::new(),
        );
        c.add_entry(0, 1, Poly::one());
        let (r, rep) = gaussian_eliminate(&c, ReduceMode::Filtered);
        assert!(r.is_empty());
        assert_eq!(rep.max_violation2, 0);
    }

    #[test]
    fn filtered_mode_respects_levels() {
        let mut c = FreeBicomplex::new(
            vec![
                Generator { label: "a".into(), degree: MultiDegree::new(0, 1, 0, 0) },
                Generator { label: "b".into(), degree: MultiDegree::new(0, 0, 0, 2) },
            ],
            BTreeSet::new(),
        );
        c.add_entry(0, 1, Poly::one());
        let (r, _) = gaussian_eliminate(&c, ReduceMode::Filtered);
        assert_eq!(r.len(), 2);
        let (r, rep) = gaussian_eliminate(&c, ReduceMode::Unfiltered);
        assert!(r.is_empty());
        assert_eq!(rep.max_violation2, 0);
    }

    #[test]
    fn excludes_composite_diagonal_dummy() {
        // K(z - y) ⊗_y K(y - x): the intermediate y is bound to x
        let x = Variable::x(1);
        let y = Variable::y(1);
        let z = Variable::dummy(1);
        let dum = Variable::dummy(9);
        let left = koszul(&Poly::var(z) - &Poly::var(y), &[y, z]);
        let right = koszul(&Poly::var(y) - &Poly::var(x), &[x, y]);
        let glued = left.tensor(&right, &[(y, y, dum)]).unwrap();
        assert_eq!(glued.len(), 4);
        let reduced = exclude_dummy(&glued, dum, true).expect("dummy should be excludable");
        assert_eq!(reduced.len(), 2);
        assert!(!reduced.variables().contains(&dum));
        // surviving entry is z - x
        let forms: Vec<_> = reduced.entries().map(|(_, _, p)| p.clone()).collect();
        assert_eq!(forms.len(), 1);
        let expect = &Poly::var(z) - &Poly::var(x);
        assert!(forms[0] == expect || forms[0] == -&expect);
        reduced.assert_d_squared_zero();
    }

    #[test]
    fn free_tower_dummy_is_kept() {
        let z = Variable::dummy(1);
        let c = FreeBicomplex::new(
            vec![Generator { label: "t".into(), degree: MultiDegree::ZERO }],
            [z].into_iter().collect(),
        );
        let (r, _) = reduce_full(&c, ReduceMode::Filtered);
        assert!(r.variables().contains(&z));
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn elimination_preserves_euler_characteristic() {
        // cone-like complex with units and polynomial entries
        let x = Variable::x(1);
        let k = koszul(Poly::var(x), &[x]);
        let double = k.tensor_plain(&koszul(Poly::var(x), &[x]));
        let mut chi: BTreeMap<(i32, i32), i64> = BTreeMap::new();
        for g in double.generators() {
            let e = chi.entry((g.degree.q, g.degree.t2)).or_insert(0);
            *e += if g.degree.a.rem_euclid(2) == 0 { 1 } else { -1 };
        }
        let (r, _) = gaussian_eliminate(&double, ReduceMode::Filtered);
        let mut chi2: BTreeMap<(i32, i32), i64> = BTreeMap::new();
        for g in r.generators() {
            let e = chi2.entry((g.degree.q, g.degree.t2)).or_insert(0);
            *e += if g.degree.a.rem_euclid(2) == 0 { 1 } else { -1 };
        }
        chi.retain(|_, v| *v != 0);
        chi2.retain(|_, v| *v != 0);
        assert_eq!(chi, chi2);
    }
}
