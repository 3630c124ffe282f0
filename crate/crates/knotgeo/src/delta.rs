//! Delta-move bookkeeping: crossing classification along an arc, the
//! linking-number ledger with its flip rules, outermost-sensitive bounds
//! for realizing a crossing change by delta moves, and the quadratic
//! delta-unknotting bound.
//!
//! Only the combinatorial ledger of the band-slide argument is modeled;
//! the isotopies themselves are not simulated. Every verifiable claim of
//! the argument lives in the ledger: the linking sequence l(i,i) starts
//! and ends at opposite values (lk1), moves in steps of 0 or ±2 (lk2),
//! vanishes identically when the base crossing is outermost (lk3), and
//! therefore always passes through 0 or 1.

use crate::diagram::{Diagram, DiagramError};
use crate::seifert;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeltaError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Seifert(#[from] seifert::SeifertError),
    #[error("quadratic bound needs crossing number >= 4, got {0}")]
    CrossingTooSmall(u64),
    #[error("torus delta-unknotting needs an odd parameter, got {0}")]
    EvenTorusParameter(i64),
    #[error("epsilon assignment must cover exactly the under self-crossings {expected:?}")]
    BadEpsilon { expected: Vec<usize> },
}

/// One crossing-endpoint on the chosen arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcPoint {
    pub crossing: usize,
    /// Over-passage (in the set O) after role normalization.
    pub over: bool,
    /// Positive crossing (in P) after role normalization; pn = +1.
    pub positive: bool,
    /// Index (0-based) of the partner endpoint on the arc for self
    /// crossings of the arc; None for mutual crossings with the other arc.
    pub partner: Option<usize>,
}

impl ArcPoint {
    pub fn pn(&self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }
}

/// Classification of the crossing endpoints on the shorter arc at a base
/// crossing: the sets O/U, P/N, S/M as position data.
#[derive(Debug, Clone)]
pub struct CrossingClassification {
    pub base: usize,
    pub base_sign: i8,
    /// Number of crossing-endpoints on the chosen arc.
    pub m: usize,
    /// Over/under and sign roles were swapped to enforce |U| <= |O|.
    pub swapped_roles: bool,
    pub points: Vec<ArcPoint>,
}

impl CrossingClassification {
    pub fn under_count(&self) -> usize {
        self.points.iter().filter(|p| !p.over).count()
    }

    /// 0-based indices of the under self-crossing endpoints (U and S),
    /// the positions whose initial ledger signs are free.
    pub fn under_self(&self) -> Vec<usize> {
        (0..self.m)
            .filter(|&j| !self.points[j].over && self.points[j].partner.is_some())
            .collect()
    }

    pub fn under_mutual(&self) -> Vec<usize> {
        (0..self.m)
            .filter(|&j| !self.points[j].over && self.points[j].partner.is_none())
            .collect()
    }

    /// The default initial-sign convention eps_j = -pn(p_j); the shipped
    /// ledger properties hold for every assignment, this is just a
    /// deterministic pick.
    pub fn default_eps(&self) -> BTreeMap<usize, i64> {
        self.under_self()
            .into_iter()
            .map(|j| (j, -self.points[j].pn()))
            .collect()
    }
}

/// Classify the endpoints on the shorter arc at crossing `x`.
pub fn classify(d: &Diagram, x: usize) -> Result<CrossingClassification, DeltaError> {
    let code = d.gauss_code()?;
    if x >= d.crossing_count() {
        return Err(DeltaError::Diagram(DiagramError::UnknownCrossing(x)));
    }
    let occ: Vec<usize> = code
        .iter()
        .enumerate()
        .filter(|(_, g)| g.crossing == x)
        .map(|(p, _)| p)
        .collect();
    let (i, j) = (occ[0], occ[1]);
    let n = code.len();
    let arc = |from: usize, to: usize| -> Vec<usize> {
        let mut out = Vec::new();
        let mut p = (from + 1) % n;
        while p != to {
            out.push(p);
            p = (p + 1) % n;
        }
        out
    };
    let arc_a = arc(i, j);
    let arc_b = arc(j, i);
    let alpha = if arc_a.len() <= arc_b.len() { arc_a } else { arc_b };
    let m = alpha.len();
    // Partner positions inside alpha.
    let mut first_seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut points: Vec<ArcPoint> = Vec::with_capacity(m);
    for (idx, &pos) in alpha.iter().enumerate() {
        let g = code[pos];
        let partner = first_seen.get(&g.crossing).copied();
        if let Some(p) = partner {
            points[p].partner = Some(idx);
        }
        first_seen.entry(g.crossing).or_insert(idx);
        points.push(ArcPoint {
            crossing: g.crossing,
            over: g.over,
            positive: g.sign > 0,
            partner,
        });
    }
    let under = points.iter().filter(|p| !p.over).count();
    let swapped = 2 * under > m;
    if swapped {
        for p in points.iter_mut() {
            p.over = !p.over;
            p.positive = !p.positive;
        }
    }
    let cl = CrossingClassification {
        base: x,
        base_sign: d.crossings()[x].sign,
        m,
        swapped_roles: swapped,
        points,
    };
    debug_assert!(2 * cl.under_count() <= m);
    Ok(cl)
}

/// The ledger built from a classification and an initial sign assignment
/// for the under self-crossings.
#[derive(Debug, Clone)]
pub struct LinkingProfile {
    pub m: usize,
    /// d_{i, rho_i(j)} laid out as d_table[i][rho_i(j) - 1], i = 0..=m.
    pub d_table: Vec<Vec<i64>>,
    /// The reindexing bijections rho_i as 1-based images.
    pub rho: Vec<Vec<usize>>,
    /// l(i, i) for i = 0..=m.
    pub l_values: Vec<i64>,
    /// Initial signs used for the under self-crossings (0-based keys).
    pub eps: BTreeMap<usize, i64>,
}

impl LinkingProfile {
    pub fn lk1_holds(&self) -> bool {
        self.l_values[0] == -self.l_values[self.m]
    }

    pub fn lk2_holds(&self) -> bool {
        self.l_values
            .windows(2)
            .all(|w| matches!(w[1] - w[0], -2 | 0 | 2))
    }

    pub fn all_zero(&self) -> bool {
        self.l_values.iter().all(|&l| l == 0)
    }

    pub fn hits_zero_or_one(&self) -> bool {
        self.l_values.iter().any(|&l| l == 0 || l == 1)
    }
}

/// rho_i as a 1-based map on 1..=m.
fn rho_map(i: usize, m: usize) -> Vec<usize> {
    (1..=m)
        .map(|j| if j <= i { j } else { i + 1 + m - j })
        .collect()
}

/// Evolve the ledger. `eps` assigns the initial +-1 to each under
/// self-crossing endpoint (0-based index as in the classification).
pub fn linking_profile(
    cl: &CrossingClassification,
    eps: &BTreeMap<usize, i64>,
) -> Result<LinkingProfile, DeltaError> {
    let expected = cl.under_self();
    if eps.keys().copied().collect::<Vec<_>>() != expected
        || eps.values().any(|&e| e != 1 && e != -1)
    {
        return Err(DeltaError::BadEpsilon { expected });
    }
    let m = cl.m;
    // Track d values per underpass endpoint j (0-based); mutual ones are
    // the constant -pn, self ones evolve by the flip rules.
    let mut val: BTreeMap<usize, i64> = BTreeMap::new();
    for j in cl.under_mutual() {
        val.insert(j, -cl.points[j].pn());
    }
    for (&j, &e) in eps {
        val.insert(j, e);
    }
    let mut d_table = Vec::with_capacity(m + 1);
    let mut rho = Vec::with_capacity(m + 1);
    let mut l_values = Vec::with_capacity(m + 1);
    for i in 0..=m {
        if i > 0 {
            // Step i-1 -> i: the paper's rules in 1-based indices, with
            // j1 = j + 1 and the step crossing at position i.
            for j in cl.under_self() {
                let j1 = j + 1;
                let partner1 = cl.points[j].partner.map(|k| k + 1).unwrap();
                let flip = (j1 == i && partner1 > j1) || (partner1 == i && j1 > i);
                if flip {
                    let v = val.get_mut(&j).unwrap();
                    *v = -*v;
                }
            }
        }
        let rho_i = rho_map(i, m);
        let mut row = vec![0i64; m];
        for (&j, &v) in &val {
            row[rho_i[j] - 1] = v;
        }
        let l: i64 = cl.under_self().iter().map(|&j| val[&j]).sum();
        d_table.push(row);
        rho.push(rho_i);
        l_values.push(l);
    }
    let profile = LinkingProfile {
        m,
        d_table,
        rho,
        l_values,
        eps: eps.clone(),
    };
    debug_assert!(profile.lk1_holds());
    debug_assert!(profile.lk2_holds());
    debug_assert!(profile.hits_zero_or_one() || profile.l_values.iter().any(|&l| l == -1));
    Ok(profile)
}

/// Delta moves needed to realize a crossing change at `x`:
/// floor((c-1)/2) when `x` is outermost, floor((c+1)/2) otherwise.
pub fn delta_bound_crossing_change(d: &Diagram, x: usize) -> Result<u64, DeltaError> {
    let c = d.crossing_count() as u64;
    Ok(if d.is_outermost(x)? {
        (c - 1) / 2
    } else {
        (c + 1) / 2
    })
}

/// Which inequality justified a diagram unknotting bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundReason {
    /// u(D) <= (c-1)/2 holds for every diagram with a crossing.
    Generic,
    /// u(D) <= (c-2)/2 when the knot is not a (2,p) torus knot.
    NotTwoBridgeTorus,
    /// u(D) <= (c-3)/2 when some crossing is not outermost.
    NonOutermostCrossing,
}

/// Best available bound on the diagram unknotting number, as an exact
/// rational (numerator, 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramBound {
    pub numerator: i64,
    pub reason: BoundReason,
}

impl DiagramBound {
    pub fn value(&self) -> f64 {
        self.numerator as f64 / 2.0
    }
}

/// The caller states whether the knot is known not to be T(2,p).
pub fn unknotting_diagram_bound(
    d: &Diagram,
    known_not_torus: bool,
) -> Result<DiagramBound, DeltaError> {
    let c = d.crossing_count() as i64;
    assert!(c > 0, "bound applies to diagrams with crossings");
    let mut best = DiagramBound {
        numerator: c - 1,
        reason: BoundReason::Generic,
    };
    if known_not_torus && c - 2 < best.numerator {
        best = DiagramBound {
            numerator: c - 2,
            reason: BoundReason::NotTwoBridgeTorus,
        };
    }
    let has_non_outermost = (0..d.crossing_count()).any(|x| !d.is_outermost(x).unwrap());
    if has_non_outermost && c - 3 < best.numerator {
        best = DiagramBound {
            numerator: c - 3,
            reason: BoundReason::NonOutermostCrossing,
        };
    }
    Ok(best)
}

/// The quadratic bound floor((c^2 - 2c - 3) / 4) on the delta-unknotting
/// number, valid for c >= 4.
pub fn delta_unknotting_upper(c: u64) -> Result<u64, DeltaError> {
    if c < 4 {
        return Err(DeltaError::CrossingTooSmall(c));
    }
    Ok((c * c - 2 * c - 3) / 4)
}

/// Lower bound |a2(D)| for the delta-unknotting number.
pub fn delta_unknotting_lower_a2(d: &Diagram) -> Result<u64, DeltaError> {
    Ok(seifert::a2(d)?.unsigned_abs())
}

/// Exact delta-unknotting number (p^2 - 1)/8 of the (2,p) torus knot.
pub fn delta_torus(p: i64) -> Result<u64, DeltaError> {
    if p % 2 == 0 {
        return Err(DeltaError::EvenTorusParameter(p));
    }
    Ok(((p * p - 1) / 8) as u64)
}

/// Every realizable signed-Gauss-code knot diagram with exactly `c`
/// crossings, enumerated as chord pairings times over/under and sign
/// assignments, filtered by the planarity check.
pub fn enumerate_realizable(c: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    if c == 0 {
        return out;
    }
    let mut pairing = vec![usize::MAX; 2 * c];
    fn rec(pairing: &mut Vec<usize>, next_id: usize, c: usize, out: &mut Vec<Diagram>) {
        use crate::diagram::GaussEntry;
        let n2 = pairing.len();
        let Some(first) = pairing.iter().position(|&p| p == usize::MAX) else {
            for over_mask in 0..(1u32 << c) {
                for sign_mask in 0..(1u32 << c) {
                    let mut code = Vec::with_capacity(n2);
                    let mut seen_first = vec![false; c];
                    for &id in pairing.iter() {
                        let first_occ = !seen_first[id];
                        seen_first[id] = true;
                        code.push(GaussEntry {
                            crossing: id,
                            over: (over_mask >> id & 1 == 1) == first_occ,
                            sign: if sign_mask >> id & 1 == 1 { 1 } else { -1 },
                        });
                    }
                    if let Ok(d) = Diagram::from_signed_gauss(&code) {
                        out.push(d);
                    }
                }
            }
            return;
        };
        for other in first + 1..n2 {
            if pairing[other] == usize::MAX {
                pairing[first] = next_id;
                pairing[other] = next_id;
                rec(pairing, next_id + 1, c, out);
                pairing[first] = usize::MAX;
                pairing[other] = usize::MAX;
            }
        }
    }
    rec(&mut pairing, 0, c, &mut out);
    out
}

/// Aggregate result of the exhaustive ledger sweep.
#[derive(Debug, Default, Clone, Copy)]
pub struct SweepReport {
    pub diagrams: u64,
    pub ledgers: u64,
}

/// Exhaustive check of the ledger laws over every realizable signed Gauss
/// code with up to `max_c` crossings, every base crossing and every
/// epsilon assignment: lk1 and lk2 always hold, the profile vanishes when
/// the base is outermost with no under self-crossings, some l(i,i) lies in
/// {0, 1}, and the crossing-change delta bound matches the outermost
/// status. Panics on any violation.
pub fn ledger_sweep(max_c: usize) -> SweepReport {
    use rayon::prelude::*;
    let mut report = SweepReport::default();
    for c in 1..=max_c {
        let diagrams = enumerate_realizable(c);
        let ledgers: u64 = diagrams
            .par_iter()
            .map(|d| {
                let mut count = 0u64;
                for x in 0..d.crossing_count() {
                    let outermost = d.is_outermost(x).unwrap();
                    let bound = delta_bound_crossing_change(d, x).unwrap();
                    let c64 = d.crossing_count() as u64;
                    assert_eq!(
                        bound,
                        if outermost { (c64 - 1) / 2 } else { (c64 + 1) / 2 },
                        "bound mismatch"
                    );
                    let cl = classify(d, x).unwrap();
                    let us = cl.under_self();
                    for mask in 0..(1u32 << us.len()) {
                        let eps: BTreeMap<usize, i64> = us
                            .iter()
                            .enumerate()
                            .map(|(b, &j)| (j, if mask >> b & 1 == 1 { 1 } else { -1 }))
                            .collect();
                        let p = linking_profile(&cl, &eps).unwrap();
                        assert!(p.lk1_holds(), "lk1");
                        assert!(p.lk2_holds(), "lk2");
                        assert!(p.hits_zero_or_one(), "no l in {{0,1}}");
                        if outermost && us.is_empty() {
                            assert!(p.all_zero(), "lk3");
                        }
                        count += 1;
                    }
                }
                count
            })
            .sum();
        report.diagrams += diagrams.len() as u64;
        report.ledgers += ledgers;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::GaussEntry;
    use crate::notation::parse;

    fn diagram(text: &str) -> Diagram {
        parse(text).unwrap().standard_diagram().unwrap()
    }

    #[test]
    fn trefoil_classification() {
        let d = diagram("C(3)");
        for x in 0..3 {
            let cl = classify(&d, x).unwrap();
            assert_eq!(cl.m, 2, "each arc of the trefoil has two endpoints");
            assert!(cl.under_self().len() <= 1);
            assert!(2 * cl.under_count() <= cl.m);
        }
    }

    #[test]
    fn kink_classification_is_empty() {
        let kink = Diagram::from_signed_gauss(&[
            GaussEntry {
                crossing: 0,
                over: true,
                sign: 1,
            },
            GaussEntry {
                crossing: 0,
                over: false,
                sign: 1,
            },
        ])
        .unwrap();
        let cl = classify(&kink, 0).unwrap();
        assert_eq!(cl.m, 0);
        assert!(cl.points.is_empty());
        let profile = linking_profile(&cl, &cl.default_eps()).unwrap();
        assert!(profile.all_zero());
        assert_eq!(delta_bound_crossing_change(&kink, 0).unwrap(), 0);
    }

    #[test]
    fn clasp_side_of_twist_knot_is_simple() {
        // The outermost clasp crossings of C(2,n) have no self-crossings on
        // the short side.
        let d = diagram("C(2,4)");
        let mut found_simple_side = false;
        for x in 0..d.crossing_count() {
            if d.is_outermost(x).unwrap() {
                let cl = classify(&d, x).unwrap();
                if cl.under_self().is_empty() {
                    found_simple_side = true;
                    let p = linking_profile(&cl, &cl.default_eps()).unwrap();
                    assert!(p.all_zero(), "outermost ledger vanishes");
                }
            }
        }
        assert!(found_simple_side);
    }

    #[test]
    fn ledger_properties_small_exhaustive() {
        // All realizable signed Gauss codes with up to 4 crossings, every
        // base crossing, every epsilon assignment.
        let mut checked = 0usize;
        for d in (1..=4).flat_map(super::enumerate_realizable) {
            for x in 0..d.crossing_count() {
                let cl = classify(&d, x).unwrap();
                let us = cl.under_self();
                for mask in 0..(1u32 << us.len()) {
                    let eps: BTreeMap<usize, i64> = us
                        .iter()
                        .enumerate()
                        .map(|(b, &j)| (j, if mask >> b & 1 == 1 { 1 } else { -1 }))
                        .collect();
                    let p = linking_profile(&cl, &eps).unwrap();
                    assert!(p.lk1_holds());
                    assert!(p.lk2_holds());
                    assert!(p.hits_zero_or_one());
                    if d.is_outermost(x).unwrap() && us.is_empty() {
                        assert!(p.all_zero());
                    }
                    checked += 1;
                }
            }
        }
        assert!(checked > 100, "swept {checked} ledgers");
    }

    #[test]
    fn bounds_and_arithmetic() {
        let d = diagram("C(3)");
        for x in 0..3 {
            assert_eq!(delta_bound_crossing_change(&d, x).unwrap(), 1);
        }
        // c = 4 edge of the quadratic bound, consistent with the
        // figure-eight having delta-unknotting number 1.
        assert_eq!(delta_unknotting_upper(4).unwrap(), 1);
        assert_eq!(delta_unknotting_upper(5).unwrap(), 3);
        assert!(delta_unknotting_upper(3).is_err());
        assert_eq!(delta_torus(5).unwrap(), 3);
        assert!(delta_torus(4).is_err());
        // Arithmetic identities behind the quadratic bound.
        for c in 5..=15i64 {
            assert_eq!(((c - 3) * (c + 1)) % 4, (c * c - 2 * c - 3) % 4);
            assert_eq!((c - 3) * (c + 1), c * c - 2 * c - 3);
            assert!((c - 2) * (c - 1) <= c * c - 2 * c - 3);
        }
        for p in (5..=15i64).step_by(2) {
            assert!(p * p - 4 * p - 5 >= 0);
            assert!(
                delta_torus(p).unwrap() <= delta_unknotting_upper(p as u64).unwrap(),
                "p={p}"
            );
        }
        // Tightness against the a2 lower bound on T(2,p) mirror side.
        for p in (5..=11i64).step_by(2) {
            let d = diagram(&format!("T(2,{p})"));
            let lower = delta_unknotting_lower_a2(&d).unwrap();
            assert_eq!(lower, delta_torus(p).unwrap(), "p={p}");
        }
    }

    #[test]
    fn diagram_bounds_choose_best_reason() {
        // All crossings of a torus diagram are outermost.
        let t = diagram("C(5)");
        let b = unknotting_diagram_bound(&t, false).unwrap();
        assert_eq!((b.numerator, b.reason), (4, BoundReason::Generic));
        let b2 = unknotting_diagram_bound(&t, true).unwrap();
        assert_eq!((b2.numerator, b2.reason), (3, BoundReason::NotTwoBridgeTorus));
        // A diagram with a non-outermost crossing gets (c-3)/2.
        let cand = (5..=8)
            .flat_map(|n| super::tests::enumerate_realizable_for_bounds(n))
            .find(|d| (0..d.crossing_count()).any(|x| !d.is_outermost(x).unwrap()));
        let d = cand.expect("some small diagram has a non-outermost crossing");
        let b3 = unknotting_diagram_bound(&d, false).unwrap();
        assert_eq!(b3.reason, BoundReason::NonOutermostCrossing);
        assert_eq!(b3.numerator, d.crossing_count() as i64 - 3);
    }

    pub(crate) fn enumerate_realizable_for_bounds(c: usize) -> Vec<Diagram> {
        // Reuse the constructions: connected sums of small knots make
        // plenty of non-outermost examples.
        let texts = [
            format!("C({c})"),
            format!("C(2,{})", c - 2),
            format!("C(3) # C({})", c - 3),
            format!("C(2,2) # C({})", c.saturating_sub(4).max(1)),
        ];
        texts
            .iter()
            .filter_map(|t| parse(t).ok()?.standard_diagram().ok())
            .filter(|d| d.crossing_count() == c)
            .collect()
    }
}
