//! Link invariants and automated verification of the structural statements
//! at desk scale: HOMFLY-PT extraction, the closed-form homology of
//! two-strand torus closures, Reidemeister and Markov move checks, and the
//! skein relation.

use std::collections::BTreeMap;

use serde_json::json;

use crate::closure::close;
use crate::degree::{MultiDegree, SIGMA_AQ2, SIGMA_SQ2, SIGMA_TA, SIGMA_TOT, STAS};
use crate::homology::{poincare, DegKey, FilteredPoincare};
use crate::laurent::{Homfly, Laurent};
use crate::poly::coeff;
use crate::rouquier::{braid_complex, BraidWord};

/// Closure homology of a braid word up to the q-cutoff.
pub fn link_homology(word: &BraidWord, cutoff_q: i32) -> Result<FilteredPoincare, String> {
    let c = braid_complex(word)?;
    let closed = close(&c, word.strands, word.closure_components())?;
    poincare(&closed, cutoff_q)
}

/// Graded Euler characteristic with weight `(-1)^a a^{a - t} q^q`, read off
/// the rational form.
pub fn homfly(p: &FilteredPoincare) -> Result<Homfly, String> {
    let rf = p
        .rational_form
        .as_ref()
        .ok_or_else(|| "rational form absent: cutoff too small".to_string())?;
    let mut num = Laurent::zero();
    for (&(q, a, t2, _s2), &c) in &rf.numerator {
        let sign = if a.rem_euclid(2) == 1 { -1 } else { 1 };
        num.add_term(2 * a - t2, q, coeff(sign * c));
    }
    Ok(Homfly { num, denom_exp: rf.c })
}

/// The HOMFLY-PT polynomial of the unknot in this normalization:
/// `(a^{1/2} q - a^{-1/2} q^{-1}) / (q - q^{-1})`.
pub fn unknot_homfly() -> Homfly {
    // equals (a^{-1/2} - a^{1/2} q²) / (1 - q²)
    let mut num = Laurent::monomial(-1, 0, coeff(1));
    num.add_term(1, 2, coeff(-1));
    Homfly { num, denom_exp: 1 }
}

fn tower_dims(
    dims: &mut BTreeMap<DegKey, usize>,
    base: MultiDegree,
    nvars: usize,
    cutoff_q: i32,
) {
    let mut q = base.q;
    let mut k = 0u32;
    while q <= cutoff_q {
        let count = match nvars {
            1 => 1,
            2 => k as usize + 1,
            _ => unreachable!("towers have one or two variables"),
        };
        *dims.entry((q, base.a, base.t2, base.s2)).or_insert(0) += count;
        q += 2;
        k += 1;
    }
}

/// Closed-form filtered homology of the closure of `σ⁻ᵏ` on two strands,
/// expanded to dimensions up to the cutoff.
pub fn torus_oracle(k: usize, cutoff_q: i32) -> FilteredPoincare {
    let circle = [SIGMA_AQ2 + STAS, STAS]; // towers of the circle homology
    let mut towers: Vec<(MultiDegree, usize)> = Vec::new();
    if k % 2 == 1 {
        let n = k / 2;
        let prefix = (STAS + SIGMA_AQ2).pow(-2 * (n as i32));
        for c in circle {
            towers.push((c + prefix, 1));
        }
        for j in 0..n {
            let step = SIGMA_TA + SIGMA_TOT.pow(2 * j as i32 + 1);
            let term_a = step + SIGMA_SQ2;
            let term_b = step + MultiDegree::new(-2, -1, 0, -2);
            for c in circle {
                towers.push((c + prefix + term_a, 1));
                towers.push((c + prefix + term_b, 1));
            }
        }
    } else if k == 0 {
        // two-component unlink: circle ⊗ circle
        for c1 in circle {
            for c2 in circle {
                towers.push((c1 + c2, 2));
            }
        }
    } else {
        let n = k / 2;
        // first summand: the odd case one crossing down
        let inner = torus_towers(k - 1);
        for (t, v) in inner {
            towers.push((t + (STAS + SIGMA_AQ2).pow(-1), v));
        }
        // second summand
        let prefix = STAS.pow(2 * n as i32 - 1) + SIGMA_AQ2.pow(-1) + SIGMA_TA;
        let col = [
            (SIGMA_AQ2 + SIGMA_SQ2, 2usize),
            (SIGMA_SQ2, 2),
            (MultiDegree::new(0, 0, 0, -2), 1),
        ];
        for c in circle {
            for (shift, nv) in col {
                towers.push((c + prefix + shift, nv));
            }
        }
    }
    let mut dims = BTreeMap::new();
    for (base, nv) in towers {
        tower_dims(&mut dims, base, nv, cutoff_q);
    }
    let components = if k % 2 == 0 { 2 } else { 1 };
    let rational_form = crate::homology::recover_rational_form(&dims, cutoff_q, components).ok();
    FilteredPoincare { cutoff_q, dims, rational_form }
}

fn torus_towers(k: usize) -> Vec<(MultiDegree, usize)> {
    // towers of the odd-exponent oracle without expansion
    assert!(k % 2 == 1);
    let circle = [SIGMA_AQ2 + STAS, STAS];
    let n = k / 2;
    let prefix = (STAS + SIGMA_AQ2).pow(-2 * (n as i32));
    let mut towers = Vec::new();
    for c in circle {
        towers.push((c + prefix, 1));
    }
    for j in 0..n {
        let step = SIGMA_TA + SIGMA_TOT.pow(2 * j as i32 + 1);
        for c in circle {
            towers.push((c + prefix + step + SIGMA_SQ2, 1));
            towers.push((c + prefix + step + MultiDegree::new(-2, -1, 0, -2), 1));
        }
    }
    towers
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub claim: String,
    pub pass: bool,
    /// Measured filtration discrepancy in doubled s-units.
    pub discrepancy2: i32,
    pub details: String,
}

impl VerificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "claim": self.claim,
            "status": if self.pass { "pass" } else { "fail" },
            "discrepancy2": self.discrepancy2,
            "details": self.details,
        })
    }
}

fn dims_equal(a: &FilteredPoincare, b: &FilteredPoincare) -> bool {
    a.dims == b.dims
}

fn diff_dims(a: &FilteredPoincare, b: &FilteredPoincare) -> String {
    let mut lines = Vec::new();
    let keys: std::collections::BTreeSet<_> = a.dims.keys().chain(b.dims.keys()).collect();
    for k in keys {
        let da = a.dims.get(k).cloned().unwrap_or(0);
        let db = b.dims.get(k).cloned().unwrap_or(0);
        if da != db {
            lines.push(format!("{:?}: {} vs {}", k, da, db));
        }
        if lines.len() > 8 {
            lines.push("...".to_string());
            break;
        }
    }
    lines.join("; ")
}

/// Insert `(±i, ∓i)` at the position and compare the filtered homology.
pub fn verify_r2(
    word: &BraidWord,
    position: usize,
    strand: usize,
    positive_first: bool,
    cutoff_q: i32,
) -> Result<VerificationReport, String> {
    let base = link_homology(word, cutoff_q)?;
    let mut letters = word.letters.clone();
    let i = strand as i32;
    let pair = if positive_first { [i, -i] } else { [-i, i] };
    letters.splice(position..position, pair);
    let bigger = BraidWord::new(word.strands, letters)?;
    let with_pair = link_homology(&bigger, cutoff_q)?;
    let pass = dims_equal(&base, &with_pair);
    Ok(VerificationReport {
        claim: format!(
            "R2 {:?} + ({},{}) at {}",
            word.letters, pair[0], pair[1], position
        ),
        pass,
        discrepancy2: 0,
        details: if pass { String::new() } else { diff_dims(&base, &with_pair) },
    })
}

/// Third Reidemeister move at homology level: the two 3-strand words have
/// equal trigraded dimensions, and the filtration profiles match after a
/// reassignment of at most two s-units.
pub fn verify_r3(cutoff_q: i32) -> Result<VerificationReport, String> {
    let w1 = BraidWord::new(3, vec![-1, -2, -1])?;
    let w2 = BraidWord::new(3, vec![-2, -1, -2])?;
    let p1 = link_homology(&w1, cutoff_q)?;
    let p2 = link_homology(&w2, cutoff_q)?;
    let tri_ok = p1.trigraded() == p2.trigraded();
    // per trigraded key, match the multisets of s2 levels
    let mut max_shift = 0i32;
    if tri_ok {
        let mut levels1: BTreeMap<(i32, i32, i32), Vec<i32>> = BTreeMap::new();
        let mut levels2: BTreeMap<(i32, i32, i32), Vec<i32>> = BTreeMap::new();
        for (&(q, a, t2, s2), &d) in &p1.dims {
            levels1.entry((q, a, t2)).or_default().extend(std::iter::repeat(s2).take(d));
        }
        for (&(q, a, t2, s2), &d) in &p2.dims {
            levels2.entry((q, a, t2)).or_default().extend(std::iter::repeat(s2).take(d));
        }
        for (k, v1) in &levels1 {
            let v2 = &levels2[k];
            // sorted matching minimizes the maximal displacement
            for (a, b) in v1.iter().zip(v2.iter()) {
                max_shift = max_shift.max((a - b).abs());
            }
        }
    }
    let pass = tri_ok && max_shift <= 4;
    Ok(VerificationReport {
        claim: "R3 (-1,-2,-1) vs (-2,-1,-2)".to_string(),
        pass,
        discrepancy2: max_shift,
        details: if tri_ok {
            format!("max s2 reassignment {}", max_shift)
        } else {
            "trigraded dimensions differ".to_string()
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkovMove {
    M1,
    M2a,
    M2b,
}

/// Stabilized word: `(σ₁^± ⊔ id)(id₁ ⊔ β)` on one more strand.
pub fn stabilize(word: &BraidWord, positive: bool) -> BraidWord {
    let mut letters: Vec<i32> = word
        .letters
        .iter()
        .map(|&l| if l > 0 { l + 1 } else { l - 1 })
        .collect();
    letters.push(if positive { 1 } else { -1 });
    BraidWord { strands: word.strands + 1, letters }
}

pub fn verify_markov(
    word: &BraidWord,
    mv: MarkovMove,
    cutoff_q: i32,
) -> Result<VerificationReport, String> {
    let base = link_homology(word, cutoff_q)?;
    match mv {
        MarkovMove::M1 => {
            let mut pass = true;
            let mut details = String::new();
            for by in 1..word.letters.len().max(1) {
                let rotated = word.cyclic_rotation(by);
                let p = link_homology(&rotated, cutoff_q)?;
                if !dims_equal(&base, &p) {
                    pass = false;
                    details = format!("rotation by {}: {}", by, diff_dims(&base, &p));
                    break;
                }
            }
            Ok(VerificationReport {
                claim: format!("M1 rotations of {:?}", word.letters),
                pass,
                discrepancy2: 0,
                details,
            })
        }
        MarkovMove::M2a | MarkovMove::M2b => {
            let positive = mv == MarkovMove::M2a;
            let stab = stabilize(word, positive);
            let p = link_homology(&stab, cutoff_q)?;
            let pass = dims_equal(&base, &p);
            Ok(VerificationReport {
                claim: format!(
                    "{} stabilization of {:?}",
                    if positive { "M2a" } else { "M2b" },
                    word.letters
                ),
                pass,
                discrepancy2: 0,
                details: if pass { String::new() } else { diff_dims(&base, &p) },
            })
        }
    }
}

/// Exact skein relation at one crossing position:
/// `a^{1/2} q P₋ - a^{-1/2} q^{-1} P₊ = (q - q^{-1}) P₀`.
pub fn skein_check(
    word: &BraidWord,
    position: usize,
    cutoff_q: i32,
) -> Result<VerificationReport, String> {
    let i = word.letters[position].unsigned_abs() as i32;
    let mut plus_letters = word.letters.clone();
    plus_letters[position] = i;
    let mut minus_letters = word.letters.clone();
    minus_letters[position] = -i;
    let mut zero_letters = word.letters.clone();
    zero_letters.remove(position);
    let p_plus = homfly(&link_homology(&BraidWord::new(word.strands, plus_letters)?, cutoff_q)?)?;
    let p_minus = homfly(&link_homology(&BraidWord::new(word.strands, minus_letters)?, cutoff_q)?)?;
    let p_zero = homfly(&link_homology(&BraidWord::new(word.strands, zero_letters)?, cutoff_q)?)?;

    // clear denominators over (1-q²)^max
    let cmax = p_plus.denom_exp.max(p_minus.denom_exp).max(p_zero.denom_exp);
    let d = Laurent::one_minus_q2();
    let lift = |p: &Homfly| p.num.mul(&d.pow(cmax - p.denom_exp));
    let lhs = lift(&p_minus)
        .mul(&Laurent::monomial(1, 1, coeff(1)))
        .add(&lift(&p_plus).mul(&Laurent::monomial(-1, -1, coeff(-1))));
    let rhs = lift(&p_zero).mul(&Laurent::q_minus_qinv());
    let pass = lhs == rhs;
    Ok(VerificationReport {
        claim: format!("skein {:?} at {}", word.letters, position),
        pass,
        discrepancy2: 0,
        details: if pass {
            String::new()
        } else {
            format!("lhs = {}, rhs = {}", lhs, rhs)
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_words_match_circle() {
        for (n, letters) in [(1usize, vec![]), (2, vec![-1]), (2, vec![1])] {
            let w = BraidWord::new(n, letters).unwrap();
            let p = link_homology(&w, 12).unwrap();
            let h = homfly(&p).unwrap();
            assert!(h.equals(&unknot_homfly()), "unknot homfly for {:?}", w.letters);
        }
    }

    #[test]
    fn torus_oracle_matches_computation_small() {
        for k in 1..=3usize {
            let w = BraidWord::new(2, vec![-1; k]).unwrap();
            let p = link_homology(&w, 12).unwrap();
            let oracle = torus_oracle(k, 12);
            assert_eq!(p.dims, oracle.dims, "torus oracle k={}", k);
        }
    }

    #[test]
    fn unknot_homfly_display_form() {
        // (a^{1/2} q - a^{-1/2} q^{-1}) / (q - q^{-1}) in cleared form
        let u = unknot_homfly();
        let lhs = u.num.mul(&Laurent::q_minus_qinv());
        let mut alt = Laurent::monomial(1, 1, coeff(1));
        alt.add_term(-1, -1, coeff(-1));
        let rhs = alt.mul(&Laurent::one_minus_q2());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn skein_on_trefoil_triple() {
        let w = BraidWord::new(2, vec![-1, -1, -1]).unwrap();
        let rep = skein_check(&w, 0, 16).unwrap();
        assert!(rep.pass, "{}", rep.details);
    }

    #[test]
    fn r2_on_empty_two_strand_word() {
        let w = BraidWord::new(2, vec![]).unwrap();
        let rep = verify_r2(&w, 0, 1, true, 10).unwrap();
        assert!(rep.pass, "{}", rep.details);
    }

    #[test]
    fn m1_rotation_invariance() {
        let w = BraidWord::new(2, vec![-1, -1, 1]).unwrap();
        let rep = verify_markov(&w, MarkovMove::M1, 10).unwrap();
        assert!(rep.pass, "{}", rep.details);
    }

    #[test]
    fn m2a_stabilization_of_unknot() {
        let w = BraidWord::new(1, vec![]).unwrap();
        let rep = verify_markov(&w, MarkovMove::M2a, 10).unwrap();
        assert!(rep.pass, "{}", rep.details);
        let rep = verify_markov(&w, MarkovMove::M2b, 10).unwrap();
        assert!(rep.pass, "{}", rep.details);
    }
}
