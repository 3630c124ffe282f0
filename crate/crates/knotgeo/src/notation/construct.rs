//! Standard diagram construction.
//!
//! Diagrams are assembled as "premaps": crossings with four ports in
//! counterclockwise order and an over-marking on one diagonal, plus an
//! involution connecting ports. Orientations are unknown while building;
//! [`PreDiagram::into_diagram`] traverses the closed-up premap, orients
//! every strand, numbers the edges along the traversal and emits a
//! [`Diagram`] with signed crossings.

use super::{KnotExpr, NotationError};
use crate::diagram::{Crossing, Diagram};
use crate::facts;
use crate::rational;

/// The pinned 2-bridge diagram convention.
///
/// `C(p1,...,pk)` is drawn with twist regions alternating horizontal and
/// vertical, the first entry horizontal, later entries attached to the
/// right and below, and the top/bottom plat closure:
///
/// ```text
///        .----------------.
///        |                |
///     ---+--[ p1 ]--[ p3 ]+---        horizontal regions: p1, p3, ...
///            |  [p2]  |               vertical regions:   p2, p4, ...
///        ----+--|  |--+----
///        |      |  |      |
///        .------.  .------.
/// ```
///
/// Positive entries use the twist handedness that makes the all-positive
/// diagram alternating and reduced, with `C(3)` the left-handed trefoil
/// (writhe -3), matching `C(2k+1) = T(2,-(2k+1))`.
pub const TANGLE_CONVENTION_DOC: &str = "C(p1,...,pk): horizontal p1, then alternately vertical \
and horizontal twist regions, plat-closed; all-positive entries give the alternating diagram \
with C(2k+1) = T(2,-(2k+1))";

/// A partial diagram: crossings with an over-marked diagonal and a partial
/// port pairing. Ports are `4 * crossing + slot` with slots counterclockwise.
#[derive(Debug, Default)]
pub(crate) struct PreDiagram {
    /// Per crossing: does the (1,3) diagonal pass over the (0,2) diagonal?
    over_13: Vec<bool>,
    link: Vec<Option<usize>>,
}

/// Loose ends of a 2-strand tangle under construction.
#[derive(Debug, Clone, Copy)]
struct Tangle {
    nw: usize,
    ne: usize,
    sw: usize,
    se: usize,
}

impl PreDiagram {
    fn add_crossing(&mut self, over_13: bool) -> usize {
        let c = self.over_13.len();
        self.over_13.push(over_13);
        self.link.extend([None, None, None, None]);
        c
    }

    fn connect(&mut self, p: usize, q: usize) {
        debug_assert!(self.link[p].is_none() && self.link[q].is_none());
        self.link[p] = Some(q);
        self.link[q] = Some(p);
    }

    /// Orient every strand and emit the PD structure. The resulting diagram
    /// may have several components; callers decide whether that is an error.
    pub(crate) fn into_diagram(self) -> Diagram {
        let n = self.over_13.len();
        if n == 0 {
            return Diagram::unknot();
        }
        let link: Vec<usize> = self
            .link
            .iter()
            .map(|l| l.expect("premap fully connected"))
            .collect();
        let mut role = vec![0u8; 4 * n]; // 0 unknown, 1 entry, 2 exit
        let mut edge_of_port = vec![usize::MAX; 4 * n];
        let mut next_edge = 0usize;
        for start in 0..4 * n {
            if role[start] != 0 {
                continue;
            }
            let mut entry = start;
            loop {
                role[entry] = 1;
                let exit = (entry & !3) | ((entry + 2) & 3);
                role[exit] = 2;
                let next_entry = link[exit];
                let id = next_edge;
                next_edge += 1;
                edge_of_port[exit] = id;
                edge_of_port[next_entry] = id;
                entry = next_entry;
                if entry == start {
                    break;
                }
            }
        }
        let crossings = (0..n)
            .map(|c| {
                let entry_of = |a: usize, b: usize| -> usize {
                    if role[4 * c + a] == 1 {
                        a
                    } else {
                        debug_assert_eq!(role[4 * c + b], 1);
                        b
                    }
                };
                let (under_in, over_in) = if self.over_13[c] {
                    (entry_of(0, 2), entry_of(1, 3))
                } else {
                    (entry_of(1, 3), entry_of(0, 2))
                };
                let edges = [
                    edge_of_port[4 * c + under_in],
                    edge_of_port[4 * c + (under_in + 1) % 4],
                    edge_of_port[4 * c + (under_in + 2) % 4],
                    edge_of_port[4 * c + (under_in + 3) % 4],
                ];
                let sign = if (over_in + 4 - under_in) % 4 == 3 { 1 } else { -1 };
                Crossing { edges, sign }
            })
            .collect();
        Diagram::from_parts(crossings, 0).expect("premap emits a valid diagram")
    }

    /// Chain of `n` crossings side by side (west to east). Slots per
    /// crossing, counterclockwise: 0 = west-top, 1 = west-bottom,
    /// 2 = east-bottom, 3 = east-top.
    fn horizontal_twists(&mut self, n: i64) -> Option<Tangle> {
        if n == 0 {
            return None;
        }
        // Positive horizontal entries over-mark the (1,3) diagonal; this is
        // the choice that makes all-positive Conway diagrams alternating
        // with C(3) the left-handed trefoil.
        let over_13 = n > 0;
        let mut t: Option<Tangle> = None;
        for _ in 0..n.abs() {
            let c = self.add_crossing(over_13);
            let (wt, wb, eb, et) = (4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3);
            t = Some(match t {
                None => Tangle {
                    nw: wt,
                    sw: wb,
                    se: eb,
                    ne: et,
                },
                Some(prev) => {
                    self.connect(prev.ne, wt);
                    self.connect(prev.se, wb);
                    Tangle {
                        nw: prev.nw,
                        sw: prev.sw,
                        se: eb,
                        ne: et,
                    }
                }
            });
        }
        t
    }

    /// Chain of `n` crossings stacked top to bottom. Slots per crossing,
    /// counterclockwise: 0 = north-left, 1 = south-left, 2 = south-right,
    /// 3 = north-right.
    fn vertical_twists(&mut self, n: i64) -> Option<Tangle> {
        if n == 0 {
            return None;
        }
        let over_13 = n > 0;
        let mut t: Option<Tangle> = None;
        for _ in 0..n.abs() {
            let c = self.add_crossing(over_13);
            let (nl, sl, sr, nr) = (4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3);
            t = Some(match t {
                None => Tangle {
                    nw: nl,
                    ne: nr,
                    sw: sl,
                    se: sr,
                },
                Some(prev) => {
                    self.connect(prev.sw, nl);
                    self.connect(prev.se, nr);
                    Tangle {
                        nw: prev.nw,
                        ne: prev.ne,
                        sw: sl,
                        se: sr,
                    }
                }
            });
        }
        t
    }
}

/// Standard diagram of a 2-bridge expression: alternate horizontal and
/// vertical twist regions and close as a plat. Returns a possibly
/// multi-component diagram; the caller checks knot-ness.
fn two_bridge_diagram(entries: &[i64]) -> Diagram {
    let mut pd = PreDiagram::default();
    let mut tangle: Option<Tangle> = None;
    let k = entries.len();
    for (i, &p) in entries.iter().enumerate() {
        // The last entry is always a horizontal region, so the value of the
        // tangle is p_k + 1/(p_{k-1} + ... + 1/p_1).
        let horizontal = (k - 1 - i) % 2 == 0;
        let region = if horizontal {
            pd.horizontal_twists(p)
        } else {
            pd.vertical_twists(p)
        };
        let Some(region) = region else { continue };
        tangle = Some(match tangle {
            None => region,
            Some(t) => {
                if horizontal {
                    // Attach to the east side.
                    pd.connect(t.ne, region.nw);
                    pd.connect(t.se, region.sw);
                    Tangle {
                        nw: t.nw,
                        sw: t.sw,
                        ne: region.ne,
                        se: region.se,
                    }
                } else {
                    // Attach below.
                    pd.connect(t.sw, region.nw);
                    pd.connect(t.se, region.ne);
                    Tangle {
                        nw: t.nw,
                        ne: t.ne,
                        sw: region.sw,
                        se: region.se,
                    }
                }
            }
        });
    }
    match tangle {
        None => {
            // No crossings at all: the closure is the unknot exactly when
            // the continued fraction is infinite (|numerator| = 1), e.g.
            // C(0,0); otherwise it is a 2-component unlink which the caller
            // rejects. Represent the latter case by a 2-component premap
            // stand-in: impossible without crossings, so signal via free
            // loops in a crossing-free diagram.
            if rational::fraction(entries).is_unknot() {
                Diagram::unknot()
            } else {
                // Crossing-free 2-component unlink.
                Diagram::from_parts(Vec::new(), 2).expect("unlink stand-in")
            }
        }
        Some(t) => {
            // Plat (numerator) closure: cap top and bottom.
            let mut pd = pd;
            pd.connect(t.nw, t.ne);
            pd.connect(t.sw, t.se);
            pd.into_diagram()
        }
    }
}

/// Standard pretzel diagram: vertical twist bands side by side, tops and
/// bottoms chained, outermost arcs closing around.
fn pretzel_diagram(entries: &[i64]) -> Result<Diagram, NotationError> {
    let mut pd = PreDiagram::default();
    let mut bands = Vec::new();
    for &e in entries {
        match pd.vertical_twists(e) {
            Some(t) => bands.push(t),
            None => {
                return Err(NotationError::Unsupported(
                    "pretzel with a zero band has no standard knot diagram".into(),
                ))
            }
        }
    }
    if bands.is_empty() {
        return Err(NotationError::Unsupported("empty pretzel".into()));
    }
    for w in bands.windows(2) {
        pd.connect(w[0].ne, w[1].nw);
        pd.connect(w[0].se, w[1].sw);
    }
    let first = bands[0];
    let last = *bands.last().unwrap();
    if bands.len() == 1 {
        pd.connect(first.nw, first.ne);
        pd.connect(first.sw, first.se);
    } else {
        pd.connect(first.nw, last.ne);
        pd.connect(first.sw, last.se);
    }
    Ok(pd.into_diagram())
}

/// Closure of a braid word on `strands` strands; generator `±j` crosses
/// strand positions `j` and `j+1` with the sign convention that
/// `B[2; 1,1,1]` closes to the right-handed trefoil (writhe +3).
fn braid_closure_diagram(strands: usize, word: &[i64]) -> Result<Diagram, NotationError> {
    let mut pd = PreDiagram::default();
    let mut cur: Vec<Option<usize>> = vec![None; strands + 1];
    let mut first: Vec<Option<usize>> = vec![None; strands + 1];
    for &letter in word {
        let j = letter.unsigned_abs() as usize;
        if letter == 0 || j + 1 > strands {
            return Err(NotationError::Unsupported(format!(
                "braid letter {letter} out of range for {strands} strands"
            )));
        }
        let c = pd.add_crossing(letter > 0);
        let (nl, sl, sr, nr) = (4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3);
        for (pos, top) in [(j, nl), (j + 1, nr)] {
            match cur[pos] {
                None => first[pos] = Some(top),
                Some(p) => pd.connect(p, top),
            }
        }
        cur[j] = Some(sl);
        cur[j + 1] = Some(sr);
    }
    for pos in 1..=strands {
        match (cur[pos], first[pos]) {
            (Some(bottom), Some(top)) => pd.connect(bottom, top),
            (None, None) => {
                return Err(NotationError::NotAKnot(
                    format!("B[{strands};...] with unused strand {pos}"),
                    2,
                ))
            }
            _ => unreachable!(),
        }
    }
    Ok(pd.into_diagram())
}

/// Blackboard-framed 2-cable of the companion diagram with writhe
/// compensation and one clasp: the untwisted Whitehead double.
///
/// Each companion crossing becomes four cable crossings; each companion
/// edge becomes two parallel connections; one edge is cut and rejoined
/// through two folded bands, a plain fold carrying `2|w|` compensating
/// twist crossings and a clasped fold carrying the two clasp crossings.
pub(super) fn whitehead_double_diagram(companion: &Diagram, clasp: i8) -> Diagram {
    let mut pd = PreDiagram::default();
    let c = companion.crossing_count();
    // Sub-crossings per companion crossing, in order NE, NW, SW, SE. Local
    // ports counterclockwise: 0 = east, 1 = north, 2 = west, 3 = south.
    // The under strand of the original (its (0,2) diagonal) doubles to the
    // horizontal lines, so the (1,3) diagonal of every sub-crossing is over.
    const NE: usize = 0;
    const NW: usize = 1;
    const SW: usize = 2;
    const SE: usize = 3;
    const E: usize = 0;
    const N: usize = 1;
    const W: usize = 2;
    const S: usize = 3;
    let sub = |x: usize, which: usize, dir: usize| -> usize { 4 * (4 * x + which) + dir };
    for x in 0..c {
        for _ in 0..4 {
            pd.add_crossing(true);
        }
        // Internal wiring of the quadruple.
        pd.connect(sub(x, NW, E), sub(x, NE, W));
        pd.connect(sub(x, SW, E), sub(x, SE, W));
        pd.connect(sub(x, NE, S), sub(x, SE, N));
        pd.connect(sub(x, NW, S), sub(x, SW, N));
    }
    // Doubled sub-ports of an original port (crossing, slot): the one offset
    // counterclockwise and the one offset clockwise. Slot k sits at angle
    // 90k with the under strand along the east-west axis.
    let ccw_cw = |x: usize, slot: usize| -> (usize, usize) {
        match slot {
            0 => (sub(x, NE, E), sub(x, SE, E)),
            1 => (sub(x, NW, N), sub(x, NE, N)),
            2 => (sub(x, SW, W), sub(x, NW, W)),
            3 => (sub(x, SE, S), sub(x, SW, S)),
            _ => unreachable!(),
        }
    };
    // Remap companion slots so that slot (0,2) is the under diagonal in the
    // premap picture: companion crossings already store under at (0,2).
    // The gadget is the twist-knot tangle: a 2-crossing clasp band with the
    // compensating twist region attached on its east side, exactly as in
    // the standard diagram of C(2, t). The plat closure arcs of C(2, t)
    // are replaced by the two cable lines around the companion, so the
    // doubled curve folds back through the clasp with winding number zero.
    let w = companion.writhe();
    let clasp_band = pd
        .vertical_twists(2 * clasp as i64)
        .expect("two clasp crossings");
    let gadget = match pd.horizontal_twists(2 * w) {
        Some(tw) => {
            pd.connect(clasp_band.ne, tw.nw);
            pd.connect(clasp_band.se, tw.sw);
            Tangle {
                nw: clasp_band.nw,
                sw: clasp_band.sw,
                ne: tw.ne,
                se: tw.se,
            }
        }
        None => clasp_band,
    };
    if c == 0 {
        // Double of the crossing-free unknot: close the gadget directly,
        // giving the plat closure of C(2, 0), an unknot.
        pd.connect(gadget.nw, gadget.ne);
        pd.connect(gadget.sw, gadget.se);
        return pd.into_diagram();
    }
    let mut gadget_ends: Option<([usize; 2], [usize; 2])> = None;
    for e in 0..companion.edge_count() {
        let (tx, ts) = companion.edge_tail(e);
        let (hx, hs) = companion.edge_head(e);
        let (t_ccw, t_cw) = ccw_cw(tx, ts);
        let (h_ccw, h_cw) = ccw_cw(hx, hs);
        if e == 0 {
            gadget_ends = Some(([t_ccw, t_cw], [h_cw, h_ccw]));
        } else {
            pd.connect(t_ccw, h_cw);
            pd.connect(t_cw, h_ccw);
        }
    }
    // Cable line 1 runs a1 ... b1, line 2 runs a2 ... b2; they take the
    // roles of the two plat closure arcs.
    let ([a1, a2], [b1, b2]) = gadget_ends.expect("companion has an edge");
    pd.connect(gadget.nw, a1);
    pd.connect(gadget.ne, b1);
    pd.connect(gadget.sw, a2);
    pd.connect(gadget.se, b2);
    pd.into_diagram()
}

pub(super) fn standard_diagram(expr: &KnotExpr) -> Result<Diagram, NotationError> {
    let d = build(expr)?;
    if !d.is_knot() {
        return Err(NotationError::NotAKnot(
            super::render(expr),
            d.component_count(),
        ));
    }
    Ok(d)
}

fn build(expr: &KnotExpr) -> Result<Diagram, NotationError> {
    use KnotExpr::*;
    match expr {
        Unknot => Ok(Diagram::unknot()),
        TwoBridge(entries) => Ok(two_bridge_diagram(entries)),
        Pretzel(entries) => pretzel_diagram(entries),
        Torus(p, q) => torus_diagram(*p, *q),
        BraidClosure { strands, word } => braid_closure_diagram(*strands, word),
        Named(id) => match facts::named_recipe(id) {
            Some(recipe) => recipe.diagram(),
            None => Err(NotationError::UnknownName(id.clone())),
        },
        Mirror(inner) => Ok(build(inner)?.mirror()),
        ConnectedSum(parts) => {
            if parts.is_empty() {
                return Err(NotationError::EmptySum);
            }
            let mut acc: Option<Diagram> = None;
            for p in parts {
                let d = standard_diagram(p)?;
                acc = Some(match acc {
                    None => d,
                    Some(a) => a.connected_sum(&d),
                });
            }
            Ok(acc.unwrap())
        }
        WhiteheadDouble { companion, clasp } => {
            let base = standard_diagram(companion)?;
            Ok(whitehead_double_diagram(&base, *clasp))
        }
        Satellite { .. } => Err(NotationError::Unsupported(
            "satellite diagrams are not constructed; their claims are facts-backed".into(),
        )),
    }
}

fn torus_diagram(p: i64, q: i64) -> Result<Diagram, NotationError> {
    let (a, b) = if q.abs() == 2 { (q, p) } else { (p, q) };
    if a.abs() != 2 {
        return Err(NotationError::Unsupported(format!(
            "T({p},{q}): only T(2,n) has a standard diagram here; use a braid closure"
        )));
    }
    if b % 2 == 0 {
        return Err(NotationError::NotAKnot(format!("T({p},{q})"), 2));
    }
    if b.abs() == 1 {
        return Ok(Diagram::unknot());
    }
    // C(m) is T(2,-m) for positive m, so T(2,n) with n < 0 is C(-n) and
    // T(2,n) with n > 0 is its mirror image.
    if b < 0 {
        Ok(two_bridge_diagram(&[-b]))
    } else {
        Ok(two_bridge_diagram(&[b]).mirror())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn diagram(text: &str) -> Diagram {
        parse(text).unwrap().standard_diagram().unwrap()
    }

    #[test]
    fn conway_counts_and_alternation() {
        for entries in [vec![3], vec![2, 2], vec![2, 3], vec![5, 2], vec![2, 1, 1, 2]] {
            let d = two_bridge_diagram(&entries);
            assert!(d.is_knot(), "C{entries:?}");
            assert_eq!(
                d.crossing_count() as i64,
                entries.iter().sum::<i64>(),
                "C{entries:?}"
            );
            assert!(d.is_alternating(), "C{entries:?}");
            assert!(d.is_reduced(), "C{entries:?}");
        }
    }

    #[test]
    fn conway_chirality_is_left_handed() {
        // C(2k+1) = T(2,-(2k+1)): all crossings negative.
        let d = diagram("C(3)");
        assert_eq!(d.writhe(), -3);
        let d5 = diagram("C(5)");
        assert_eq!(d5.writhe(), -5);
        // The figure-eight diagram has writhe 0.
        assert_eq!(diagram("C(2,2)").writhe(), 0);
    }

    #[test]
    fn conway_link_cases_are_rejected() {
        assert!(parse("C(2)").unwrap().standard_diagram().is_err());
        assert!(parse("C(0)").unwrap().standard_diagram().is_err());
        // C(0,0) falls back to the unknot.
        assert_eq!(
            parse("C(0,0)").unwrap().standard_diagram().unwrap(),
            Diagram::unknot()
        );
    }

    #[test]
    fn torus_diagrams() {
        let d = diagram("T(2,5)");
        assert_eq!(d.crossing_count(), 5);
        assert_eq!(d.writhe(), 5);
        let m = diagram("T(2,-5)");
        assert_eq!(m.writhe(), -5);
        assert_eq!(diagram("T(2,1)").crossing_count(), 0);
        assert!(parse("T(3,4)").unwrap().standard_diagram().is_err());
        assert!(parse("T(2,4)").unwrap().standard_diagram().is_err());
    }

    #[test]
    fn pretzel_p3m23_is_positive_with_eight_crossings() {
        let d = diagram("P(3,-2,3)");
        assert_eq!(d.crossing_count(), 8);
        assert!(d.is_knot());
        assert_eq!(d.writhe(), 8, "standard P(3,-2,3) is a positive diagram");
        assert!(!d.is_alternating());
    }

    #[test]
    fn braid_closures() {
        let t = diagram("B[2;1,1,1]");
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.writhe(), 3);
        assert!(t.is_knot());
        // Figure-eight braid word.
        let f8 = diagram("B[3;1,-2,1,-2]");
        assert_eq!(f8.crossing_count(), 4);
        assert_eq!(f8.writhe(), 0);
        assert!(parse("B[3;1,1]").unwrap().standard_diagram().is_err());
    }

    #[test]
    fn whitehead_double_counts() {
        // Double of the unknot: the two-crossing clasped fold.
        let d0 = diagram("D(0_1)");
        assert_eq!(d0.crossing_count(), 2);
        assert!(d0.is_knot());
        // Double of the trefoil: 4*3 cable + 2*3 compensation + 2 clasp.
        let d3 = diagram("D(C(3))");
        assert_eq!(d3.crossing_count(), 20);
        assert!(d3.is_knot());
        assert_eq!(diagram("D(C(3); -)").crossing_count(), 20);
    }

    #[test]
    fn connected_sum_diagram_counts() {
        let d = diagram("C(3) # C(2,2)");
        assert_eq!(d.crossing_count(), 7);
        assert!(d.is_knot());
    }
}
