//! HOMFLY-PT polynomials by skein recursion at desk scale, with the Morton
//! and Morton-Franks-Williams bounds and the two closed-form Rasmussen
//! evaluations.
//!
//! Convention: `v^{-1} P(L+) - v P(L-) = z P(L0)` with `P(unknot) = 1`, so
//! the right-handed trefoil has `P = 2v^2 - v^4 + v^2 z^2`, the z-degree of
//! a trefoil is 2, and the Morton-Franks-Williams braid bound reads
//! `(v-breadth)/2 + 1`.
//!
//! The recursion resolves the first crossing whose first visit along a
//! fixed traversal is an underpass; switching it strictly grows the
//! descending prefix and smoothing drops a crossing, so it terminates on
//! descending diagrams (unlinks). Diagrams are simplified between steps
//! (kink removal, parallel-bigon removal, split factoring) and memoized by
//! canonical code.

use crate::diagram::{Diagram, DiagramError};
use crate::seifert;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SkeinError {
    #[error("diagram has {0} crossings, over the skein budget {1}")]
    BudgetExceeded(usize, usize),
    #[error("Rasmussen positive-diagram formula needs an all-positive diagram")]
    NonPositiveDiagram,
    #[error("Rasmussen alternating formula needs a reduced alternating knot diagram")]
    NotAlternating,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Seifert(#[from] seifert::SeifertError),
}

pub const DEFAULT_BUDGET: usize = 16;

/// Sparse HOMFLY-PT polynomial: (v exponent, z exponent) -> coefficient.
/// Links may carry negative z exponents; knots never do.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomflyPoly {
    terms: BTreeMap<(i32, i32), i64>,
}

impl HomflyPoly {
    pub fn zero() -> Self {
        HomflyPoly::default()
    }

    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), 1);
        HomflyPoly { terms }
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)) == Some(&1)
    }

    fn insert(&mut self, key: (i32, i32), coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(key).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &HomflyPoly) -> HomflyPoly {
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.insert(k, c);
        }
        out
    }

    pub fn mul(&self, other: &HomflyPoly) -> HomflyPoly {
        let mut out = HomflyPoly::zero();
        for (&(va, za), &ca) in &self.terms {
            for (&(vb, zb), &cb) in &other.terms {
                out.insert((va + vb, za + zb), ca * cb);
            }
        }
        out
    }

    /// Multiply by `coeff * v^dv * z^dz`.
    pub fn shift(&self, dv: i32, dz: i32, coeff: i64) -> HomflyPoly {
        let mut out = HomflyPoly::zero();
        for (&(v, z), &c) in &self.terms {
            out.insert((v + dv, z + dz), c * coeff);
        }
        out
    }

    /// The split-union factor (v^{-1} - v) / z.
    pub fn unlink_factor() -> HomflyPoly {
        let mut p = HomflyPoly::zero();
        p.insert((-1, -1), 1);
        p.insert((1, -1), -1);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    /// Maximal z-exponent; 0 for the unknot polynomial.
    pub fn max_z_degree(&self) -> i32 {
        self.terms.keys().map(|&(_, z)| z).max().unwrap_or(0)
    }

    pub fn v_breadth(&self) -> i32 {
        let vs: Vec<i32> = self.terms.keys().map(|&(v, _)| v).collect();
        match (vs.iter().min(), vs.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// Specialize v = 1; for a knot this is its Conway polynomial in z.
    pub fn at_v_one(&self) -> Vec<i64> {
        let mut out = vec![0i64];
        for (&(_, z), &c) in &self.terms {
            assert!(z >= 0, "knot polynomial has nonnegative z powers");
            let z = z as usize;
            if out.len() <= z {
                out.resize(z + 1, 0);
            }
            out[z] += c;
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }
}

impl fmt::Display for HomflyPoly {
    /// Canonical sorted term order for golden tests: ascending (v, z).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(v, z), &c) in &self.terms {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            let abs = c.abs();
            if abs != 1 || (v == 0 && z == 0) {
                parts.push(abs.to_string());
            }
            if v != 0 {
                parts.push(if v == 1 { "v".into() } else { format!("v^{v}") });
            }
            if z != 0 {
                parts.push(if z == 1 { "z".into() } else { format!("z^{z}") });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Which bad crossing the recursion resolves; both strategies must agree,
/// which the test suite checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    FirstBad,
    LastBad,
}

/// Shared memoization cache, reusable across calls.
#[derive(Debug, Default)]
pub struct SkeinCache {
    memo: HashMap<Vec<i64>, HomflyPoly>,
}

impl SkeinCache {
    pub fn new() -> Self {
        SkeinCache::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

pub fn homfly(d: &Diagram, budget: usize) -> Result<HomflyPoly, SkeinError> {
    homfly_with(d, budget, Strategy::FirstBad, &mut SkeinCache::new())
}

pub fn homfly_with(
    d: &Diagram,
    budget: usize,
    strategy: Strategy,
    cache: &mut SkeinCache,
) -> Result<HomflyPoly, SkeinError> {
    if d.crossing_count() > budget {
        return Err(SkeinError::BudgetExceeded(d.crossing_count(), budget));
    }
    Ok(eval(d.clone(), strategy, cache))
}

fn eval(d: Diagram, strategy: Strategy, cache: &mut SkeinCache) -> HomflyPoly {
    // Crossing-free circles split off as unlink factors.
    let mut factor_loops = d.free_loops();
    let mut d = d;
    if d.crossing_count() == 0 {
        let n = factor_loops.max(1);
        return power(&HomflyPoly::unlink_factor(), n - 1);
    }
    if factor_loops > 0 {
        d = strip_loops(&d);
    }
    // Reidemeister I and parallel-bigon II removals.
    loop {
        if let Some(x) = find_kink(&d) {
            d = d.delete_crossings(&[x]);
        } else if let Some((x, y)) = find_parallel_bigon(&d) {
            d = d.delete_crossings(&[x, y]);
        } else {
            break;
        }
        factor_loops += d.free_loops();
        if d.crossing_count() == 0 {
            let total = factor_loops + strand_components(&d);
            return power(&HomflyPoly::unlink_factor(), total.saturating_sub(1));
        }
        if d.free_loops() > 0 {
            d = strip_loops(&d);
        }
    }
    // Split unions factor.
    let pieces = split_pieces(&d);
    if pieces.len() > 1 || factor_loops > 0 {
        let mut p = power(
            &HomflyPoly::unlink_factor(),
            pieces.len() + factor_loops - 1,
        );
        for piece in pieces {
            p = p.mul(&eval(piece, strategy, cache));
        }
        return p;
    }
    let key = d.canonical_code();
    if let Some(p) = cache.memo.get(&key) {
        return p.clone();
    }
    let p = match bad_crossing(&d, strategy) {
        None => {
            // Descending diagram: an unlink.
            power(
                &HomflyPoly::unlink_factor(),
                d.component_count().saturating_sub(1),
            )
        }
        Some(x) => {
            let switched = d.crossing_change(x).expect("crossing exists");
            let smoothed = d.smooth_oriented(x).expect("crossing exists");
            let ps = eval(switched, strategy, cache);
            let p0 = eval(smoothed, strategy, cache);
            if d.crossings()[x].sign > 0 {
                // P(L+) = v^2 P(L-) + v z P(L0)
                ps.shift(2, 0, 1).add(&p0.shift(1, 1, 1))
            } else {
                // P(L-) = v^{-2} P(L+) - v^{-1} z P(L0)
                ps.shift(-2, 0, 1).add(&p0.shift(-1, 1, -1))
            }
        }
    };
    cache.memo.insert(key, p.clone());
    p
}

fn power(base: &HomflyPoly, n: usize) -> HomflyPoly {
    let mut out = HomflyPoly::one();
    for _ in 0..n {
        out = out.mul(base);
    }
    out
}

fn strand_components(d: &Diagram) -> usize {
    d.component_count() - d.free_loops()
}

fn strip_loops(d: &Diagram) -> Diagram {
    // Rebuild without the free loops; they have been accounted for.
    let mut crossings = d.crossings().to_vec();
    // Renumber is unnecessary: edges are untouched; just drop loop count.
    let taken = crossings.drain(..).collect();
    Diagram::from_parts(taken, 0).expect("dropping free loops is valid")
}

fn find_kink(d: &Diagram) -> Option<usize> {
    (0..d.crossing_count()).find(|&x| {
        let e = d.crossings()[x].edges;
        e[0] == e[1] || e[1] == e[2] || e[2] == e[3] || e[3] == e[0] || e[0] == e[2] || e[1] == e[3]
    })
}

/// A Reidemeister-II bigon: a 2-sided face whose two crossings have
/// opposite signs and whose strands keep their over/under roles at both
/// ends (one strand passes entirely over the other).
fn find_parallel_bigon(d: &Diagram) -> Option<(usize, usize)> {
    for face in d.faces() {
        if face.len() != 2 {
            continue;
        }
        let (x, sx) = face[0];
        let (y, _) = face[1];
        if x == y {
            continue;
        }
        if d.crossings()[x].sign == d.crossings()[y].sign {
            continue;
        }
        // The bigon edge leaving (x, sx): over at x iff its slot is 1 or 3.
        let e = d.crossings()[x].edges[sx];
        let over_at = |cr: usize, edge: usize| -> Option<bool> {
            let c = &d.crossings()[cr];
            let slots: Vec<usize> = (0..4).filter(|&s| c.edges[s] == edge).collect();
            match slots.as_slice() {
                [s] => Some(*s == 1 || *s == 3),
                _ => None, // kink edge; let kink removal handle it
            }
        };
        if let (Some(a), Some(b)) = (over_at(x, e), over_at(y, e)) {
            if a == b {
                return Some((x, y));
            }
        }
    }
    None
}

fn split_pieces(d: &Diagram) -> Vec<Diagram> {
    let comp = d.crossing_components();
    let n_comp = comp.iter().copied().max().map_or(0, |m| m + 1);
    if n_comp <= 1 {
        return vec![d.clone()];
    }
    (0..n_comp)
        .map(|k| {
            let mut edge_map: HashMap<usize, usize> = HashMap::new();
            let mut crossings = Vec::new();
            for (ci, c) in d.crossings().iter().enumerate() {
                if comp[ci] != k {
                    continue;
                }
                let mut edges = [0usize; 4];
                for (i, &e) in c.edges.iter().enumerate() {
                    let next = edge_map.len();
                    edges[i] = *edge_map.entry(e).or_insert(next);
                }
                crossings.push(crate::diagram::Crossing {
                    edges,
                    sign: c.sign,
                });
            }
            Diagram::from_parts(crossings, 0).expect("split piece is valid")
        })
        .collect()
}

/// First (or last) crossing whose first visit along the concatenated
/// component walks is an underpass.
fn bad_crossing(d: &Diagram, strategy: Strategy) -> Option<usize> {
    let mut seen = vec![false; d.crossing_count()];
    let mut found = None;
    for walk in d.components() {
        for &e in walk {
            let (x, slot) = d.edge_head(e);
            if seen[x] {
                continue;
            }
            seen[x] = true;
            let under = slot == 0;
            if under {
                match strategy {
                    Strategy::FirstBad => return Some(x),
                    Strategy::LastBad => found = Some(x),
                }
            }
        }
    }
    found
}

/// Maximal z-degree of the polynomial of a knot.
pub fn delta_degree(p: &HomflyPoly) -> u32 {
    let d = p.max_z_degree();
    assert!(d >= 0);
    d as u32
}

/// Morton's canonical-genus lower bound, delta/2.
pub fn morton_genus_lower(p: &HomflyPoly) -> u32 {
    let d = delta_degree(p);
    assert_eq!(d % 2, 0, "knots have even z-breadth");
    d / 2
}

/// Morton-Franks-Williams braid-index lower bound, (v-breadth)/2 + 1.
pub fn mfw_braid_lower(p: &HomflyPoly) -> u32 {
    let b = p.v_breadth();
    assert_eq!(b % 2, 0, "knots have even v-breadth");
    (b / 2) as u32 + 1
}

/// Rasmussen invariant of a positive diagram: S = c(D) - s(D) + 1.
pub fn rasmussen_positive(d: &Diagram) -> Result<i64, SkeinError> {
    if !d.is_positive() {
        return Err(SkeinError::NonPositiveDiagram);
    }
    if !d.is_knot() {
        return Err(SkeinError::Seifert(seifert::SeifertError::NotAKnot(
            d.component_count(),
        )));
    }
    let s = seifert::seifert(d)?;
    Ok(d.crossing_count() as i64 - s.circle_count as i64 + 1)
}

/// Rasmussen invariant of an alternating knot: S = -sigma.
pub fn rasmussen_alternating(d: &Diagram) -> Result<i64, SkeinError> {
    if !(d.is_knot() && d.is_alternating() && d.is_reduced()) {
        return Err(SkeinError::NotAlternating);
    }
    Ok(-seifert::signature(d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn diagram(text: &str) -> Diagram {
        parse(text).unwrap().standard_diagram().unwrap()
    }

    fn poly(text: &str) -> HomflyPoly {
        homfly(&diagram(text), 24).unwrap()
    }

    #[test]
    fn unknot_is_one() {
        assert!(homfly(&Diagram::unknot(), 16).unwrap().is_one());
        assert!(poly("C(1)").is_one());
        assert!(poly("C(2,-1)").is_one());
    }

    #[test]
    fn trefoil_convention() {
        // Right-handed trefoil: 2v^2 - v^4 + v^2 z^2.
        let p = poly("B[2;1,1,1]");
        let mut expect = HomflyPoly::zero();
        expect.insert((2, 0), 2);
        expect.insert((4, 0), -1);
        expect.insert((2, 2), 1);
        assert_eq!(p, expect);
        assert_eq!(delta_degree(&p), 2);
        assert_eq!(mfw_braid_lower(&p), 2);
        assert_eq!(p.to_string(), "2*v^2 + v^2*z^2 - v^4");
        // The left trefoil mirrors in v.
        let m = poly("C(3)");
        assert_eq!(delta_degree(&m), 2);
        assert_eq!(mfw_braid_lower(&m), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let d = diagram("C(9,8)");
        assert!(matches!(
            homfly(&d, 16),
            Err(SkeinError::BudgetExceeded(17, 16))
        ));
    }

    #[test]
    fn figure_eight_homfly() {
        let p = poly("C(2,2)");
        // v^{-2} - 1 + v^2 - z^2: amphichiral, so symmetric in v -> v^{-1}.
        let mut expect = HomflyPoly::zero();
        expect.insert((-2, 0), 1);
        expect.insert((0, 0), -1);
        expect.insert((2, 0), 1);
        expect.insert((0, 2), -1);
        assert_eq!(p, expect);
        assert_eq!(mfw_braid_lower(&p), 3);
    }

    #[test]
    fn strategies_agree() {
        for text in ["C(2,3)", "P(3,-2,3)", "C(2,1,1,2)", "B[3;1,2,1,2]"] {
            let d = diagram(text);
            let a = homfly_with(&d, 24, Strategy::FirstBad, &mut SkeinCache::new()).unwrap();
            let b = homfly_with(&d, 24, Strategy::LastBad, &mut SkeinCache::new()).unwrap();
            assert_eq!(a, b, "{text}");
        }
    }

    #[test]
    fn homfly_specializes_to_conway() {
        for text in ["C(3)", "C(2,2)", "C(2,3)", "P(3,-2,3)", "C(5,2)", "C(3,1,2)"] {
            let d = diagram(text);
            let p = homfly(&d, 24).unwrap();
            let conway = seifert::conway_polynomial(&d).unwrap();
            assert_eq!(p.at_v_one(), conway.0, "{text}");
        }
    }

    #[test]
    fn multiplicative_under_connected_sum() {
        let a = diagram("C(3)");
        let b = diagram("C(2,2)");
        let sum = a.connected_sum(&b);
        let pa = homfly(&a, 24).unwrap();
        let pb = homfly(&b, 24).unwrap();
        let ps = homfly(&sum, 24).unwrap();
        assert_eq!(ps, pa.mul(&pb));
        assert_eq!(
            delta_degree(&ps),
            delta_degree(&pa) + delta_degree(&pb),
            "z-degree is additive"
        );
    }

    #[test]
    fn mfw_on_two_bridge_braid_family() {
        // braid(C(2a,2b-1)) = b + 1, and MFW is sharp on these.
        for (a, b) in [(1i64, 1i64), (1, 2), (2, 1), (2, 2), (1, 3)] {
            let d = diagram(&format!("C({},{})", 2 * a, 2 * b - 1));
            let p = homfly(&d, 24).unwrap();
            assert_eq!(mfw_braid_lower(&p) as u64, (b + 1) as u64, "a={a} b={b}");
        }
    }

    #[test]
    fn rasmussen_formulas() {
        assert_eq!(rasmussen_positive(&Diagram::unknot()).unwrap(), 0);
        assert_eq!(rasmussen_positive(&diagram("B[2;1,1,1]")).unwrap(), 2);
        // S(P(2p+1,-2,2q+1)) = 2i on the positive standard diagram.
        for (p, q) in [(1i64, 1i64), (1, 2), (2, 2)] {
            let i = p + q + 1;
            let d = diagram(&format!("P({},-2,{})", 2 * p + 1, 2 * q + 1));
            assert_eq!(rasmussen_positive(&d).unwrap(), 2 * i, "p={p} q={q}");
        }
        assert!(rasmussen_positive(&diagram("C(3)")).is_err());
        // Alternating: S = -sigma.
        assert_eq!(rasmussen_alternating(&diagram("C(1,4)")).unwrap(), -4);
        assert_eq!(rasmussen_alternating(&diagram("C(3)")).unwrap(), -2);
        assert_eq!(
            rasmussen_alternating(&diagram("B[2;1,1,1]")).unwrap(),
            2,
            "right trefoil has sigma -2"
        );
    }

    #[test]
    fn whitehead_double_of_unknots_is_trivial() {
        // The untwisted double of the unknot is the unknot, whichever
        // diagram of the companion is doubled; this pins the writhe
        // compensation and clasp wiring.
        for text in ["D(0_1)", "D(0_1; -)"] {
            assert!(poly(text).is_one(), "{text}");
        }
        // Companion with a kink: writhe compensation kicks in.
        let kink = crate::diagram::Crossing {
            edges: [0, 0, 1, 1],
            sign: 1,
        };
        let d1 = Diagram::from_parts(vec![kink], 0).unwrap();
        for clasp in [1, -1] {
            let doubled = crate::notation::construct_double_for_tests(&d1, clasp);
            assert!(doubled.is_knot());
            let p = homfly(&doubled, 24).unwrap();
            assert!(p.is_one(), "double of kinked unknot, clasp {clasp}: {p}");
        }
    }
}
