//! Seifert's algorithm and everything derived from the canonical surface:
//! circles, Seifert graph, genus, Seifert matrix, signature, Conway
//! polynomial.
//!
//! The Seifert matrix is computed combinatorially. Cycles come from a
//! spanning tree of the Seifert graph; each fundamental cycle is realized
//! as a curve on the canonical surface running through its bands and along
//! thin corridors on its disks. Linking numbers of the positively pushed-off
//! cycles then decompose into two kinds of local contributions:
//!
//! * **bands**: two strands through the half-twisted band of a crossing
//!   with sign `e` cross exactly once, with crossing sign `-e * d1 * d2`
//!   (`d` = +1 when the strand runs from the under-in circle `c1` toward
//!   the other circle). The strand attached further along the walk of `c1`
//!   passes over. Parallel strands swap their order between the two ends.
//! * **disks**: two transit arcs on the same disk cross once exactly when
//!   their attachment points interleave along the circle; the pushed-off
//!   cycle runs above the disk exactly when the circle bounds its inner
//!   region on the left (the disk's positive normal points up), and the
//!   crossing sign is read off the cyclic order of the four endpoints.
//!
//! Nesting of circles never contributes: transit arcs are routed inside
//! the arrangement region directly inside their own circle, and distinct
//! circles' regions are disjoint. These rules reproduce the classical
//! matrices on braid closures and plats and are cross-checked downstream
//! against signature, determinant and Conway-polynomial identities.

use crate::diagram::Diagram;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeifertError {
    #[error("Seifert data requires a knot diagram, got {0} components")]
    NotAKnot(usize),
    #[error("bound check requires a reduced diagram")]
    NotReduced,
    #[error("bound check requires positive canonical genus")]
    FlatSurface,
}

/// Everything Seifert's algorithm produces from one diagram.
#[derive(Debug, Clone)]
pub struct SeifertData {
    /// s(D): number of Seifert circles.
    pub circle_count: usize,
    /// Circle index of every edge.
    pub circle_assignment: Vec<usize>,
    /// Seifert graph: crossing x joins circles `graph_edges[x]`.
    pub graph_edges: Vec<(usize, usize)>,
    /// Vertex-degree census of the Seifert graph.
    pub degree_counts: BTreeMap<usize, usize>,
    /// Euler characteristic of the canonical surface, s(D) - c(D).
    pub euler_characteristic: i64,
    /// Genus of the canonical surface, (1 - s + c) / 2.
    pub genus: u64,
    /// Seifert matrix of size c - s + 1.
    pub matrix: Vec<Vec<i64>>,
}

/// Conway polynomial in z, coefficients by ascending power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConwayPoly(pub Vec<i64>);

impl ConwayPoly {
    pub fn coeff(&self, power: usize) -> i64 {
        self.0.get(power).copied().unwrap_or(0)
    }

    pub fn one() -> Self {
        ConwayPoly(vec![1])
    }

    pub fn mul(&self, other: &ConwayPoly) -> ConwayPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return ConwayPoly(Vec::new());
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ConwayPoly(out)
    }
}

impl fmt::Display for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".to_string());
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Seifert circles of a diagram: assignment of every edge to its circle
/// and, per circle, the walk order of crossing passages.
pub(crate) struct Circles {
    pub circle_of_edge: Vec<usize>,
    /// Per circle: crossings in walk order.
    pub walks: Vec<Vec<usize>>,
    /// Per circle and crossing: position in the walk.
    pub position: Vec<BTreeMap<usize, usize>>,
}

pub(crate) fn seifert_circles(d: &Diagram) -> Circles {
    let n = d.edge_count();
    let mut circle_of_edge = vec![usize::MAX; n];
    let mut walks = Vec::new();
    for start in 0..n {
        if circle_of_edge[start] != usize::MAX {
            continue;
        }
        let idx = walks.len();
        let mut walk = Vec::new();
        let mut e = start;
        loop {
            circle_of_edge[e] = idx;
            let (x, slot) = d.edge_head(e);
            walk.push(x);
            let out = d.crossings()[x].smooth_slot(slot);
            e = d.crossings()[x].edges[out];
            if e == start {
                break;
            }
        }
        walks.push(walk);
    }
    let position = walks
        .iter()
        .map(|w| {
            let mut m = BTreeMap::new();
            for (i, &x) in w.iter().enumerate() {
                let prev = m.insert(x, i);
                assert!(prev.is_none(), "crossing visited twice by one circle");
            }
            m
        })
        .collect();
    Circles {
        circle_of_edge,
        walks,
        position,
    }
}

/// Orientation and nesting data of the circle arrangement.
struct Arrangement {
    /// upward[i]: the region directly inside circle i lies on the left of
    /// its walk, so the disk's positive normal points up.
    upward: Vec<bool>,
    /// Region directly inside each circle (away from the root region).
    region_in: Vec<usize>,
    /// Region holding the smoothing channel of each crossing; the band of
    /// the crossing lives there.
    channel_region: Vec<usize>,
}

fn find(uf: &mut Vec<usize>, mut a: usize) -> usize {
    while uf[a] != a {
        uf[a] = uf[uf[a]];
        a = uf[a];
    }
    a
}

fn arrangement(d: &Diagram, circles: &Circles) -> Arrangement {
    let s = circles.walks.len();
    let n_faces = d.faces().len();
    // Merge diagram faces across the smoothing channels.
    let mut uf: Vec<usize> = (0..n_faces).collect();
    for (x, c) in d.crossings().iter().enumerate() {
        let (q1, q2) = if c.sign > 0 { (1, 3) } else { (0, 2) };
        let a = find(&mut uf, d.quadrant_face(x, q1));
        let b = find(&mut uf, d.quadrant_face(x, q2));
        uf[a] = b;
    }
    // Sides of each circle: region on the left and right of the walk.
    let mut left = vec![usize::MAX; s];
    let mut right = vec![usize::MAX; s];
    for (e, &ci) in circles.circle_of_edge.iter().enumerate() {
        let (x, slot) = d.edge_tail(e);
        let l = find(&mut uf, d.quadrant_face(x, slot));
        let r = find(&mut uf, d.quadrant_face(x, (slot + 3) % 4));
        if left[ci] == usize::MAX {
            left[ci] = l;
            right[ci] = r;
        } else {
            assert_eq!(left[ci], l, "inconsistent left region along circle");
            assert_eq!(right[ci], r, "inconsistent right region along circle");
        }
    }
    // Region count sanity: s disjoint circles cut the sphere into s + 1.
    let mut regions: Vec<usize> = (0..n_faces).map(|f| find(&mut uf, f)).collect();
    regions.sort_unstable();
    regions.dedup();
    assert_eq!(regions.len(), s + 1, "circle arrangement region count");
    // Root the region tree at the region of face 0 and find, per circle,
    // which side is its inner region (away from the root).
    let root = find(&mut uf, 0);
    let mut dist: BTreeMap<usize, usize> = BTreeMap::new();
    dist.insert(root, 0);
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &reg in &frontier {
            for ci in 0..s {
                for (a, b) in [(left[ci], right[ci]), (right[ci], left[ci])] {
                    if a == reg && !dist.contains_key(&b) {
                        dist.insert(b, dist[&reg] + 1);
                        next.push(b);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut upward = Vec::with_capacity(s);
    let mut region_in = Vec::with_capacity(s);
    for ci in 0..s {
        let dl = dist[&left[ci]];
        let dr = dist[&right[ci]];
        assert_eq!(dl.abs_diff(dr), 1, "circle sides differ by one level");
        // Inner region is the deeper one; normal up iff it is the left one.
        upward.push(dl > dr);
        region_in.push(if dl > dr { left[ci] } else { right[ci] });
    }
    let channel_region = (0..d.crossing_count())
        .map(|x| {
            let q = if d.crossings()[x].sign > 0 { 1 } else { 0 };
            find(&mut uf, d.quadrant_face(x, q))
        })
        .collect();
    Arrangement {
        upward,
        region_in,
        channel_region,
    }
}

/// One pass of a fundamental cycle through a band.
#[derive(Debug, Clone, Copy)]
struct BandTransit {
    crossing: usize,
    /// +1: the strand runs from c1 (the under-in circle) to c2.
    dir: i64,
}

/// A cycle as its cyclic band sequence.
#[derive(Debug, Clone)]
struct Cycle {
    bands: Vec<BandTransit>,
}

fn fundamental_cycles(c1c2: &[(usize, usize)], circle_count: usize) -> Vec<Cycle> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); circle_count];
    for (x, &(a, b)) in c1c2.iter().enumerate() {
        adj[a].push((x, b));
        adj[b].push((x, a));
    }
    let mut in_tree = vec![false; c1c2.len()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; circle_count];
    let mut seen = vec![false; circle_count];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &(x, w) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                in_tree[x] = true;
                parent[w] = Some((x, v));
                queue.push_back(w);
            }
        }
    }
    assert!(seen.iter().all(|&s| s), "Seifert graph is connected");
    // Fundamental cycle per cotree crossing: the cotree band plus the tree
    // path from its c2 circle back to its c1 circle.
    let path_to_root = |mut v: usize| -> Vec<(usize, usize, usize)> {
        // (crossing, from, to), walking rootward
        let mut out = Vec::new();
        while let Some((via, p)) = parent[v] {
            out.push((via, v, p));
            v = p;
        }
        out
    };
    let mut cycles = Vec::new();
    for (x, &(a, b)) in c1c2.iter().enumerate() {
        if in_tree[x] {
            continue;
        }
        let pa = path_to_root(a);
        let pb = path_to_root(b);
        let mut ia = pa.len();
        let mut ib = pb.len();
        while ia > 0 && ib > 0 && pa[ia - 1].0 == pb[ib - 1].0 {
            ia -= 1;
            ib -= 1;
        }
        // Cross x from a to b (dir +1), walk the b-branch rootward to the
        // meet, then the a-branch leafward back to a.
        let mut bands = vec![BandTransit { crossing: x, dir: 1 }];
        for &(via, from, _to) in pb[..ib].iter() {
            bands.push(BandTransit {
                crossing: via,
                dir: if c1c2[via].0 == from { 1 } else { -1 },
            });
        }
        for &(via, from, _to) in pa[..ia].iter().rev() {
            // Traversed opposite to the rootward direction.
            bands.push(BandTransit {
                crossing: via,
                dir: if c1c2[via].0 == from { -1 } else { 1 },
            });
        }
        cycles.push(Cycle { bands });
    }
    cycles
}

/// Attachment key on a circle: (walk position of the crossing, transverse
/// offset along the walk-forward direction).
type Key = (usize, i64);

/// Attachment keys of one strand through a band, as (entry key, exit key).
/// `lane` separates parallel strands: cycle i runs in lane 2(i+1); its
/// on-surface parallel copy in lane 2(i+1)+1. The offset at the c1 end is
/// `-sign * dir * lane`; the half twist negates it at the c2 end.
fn band_keys(
    d: &Diagram,
    circles: &Circles,
    c1c2: &[(usize, usize)],
    t: &BandTransit,
    lane: i64,
) -> (Key, Key) {
    let x = t.crossing;
    let eps = d.crossings()[x].sign as i64;
    let (c1, c2) = c1c2[x];
    let off_c1 = -eps * t.dir * lane;
    let key1 = (circles.position[c1][&x], off_c1);
    let key2 = (circles.position[c2][&x], -off_c1);
    if t.dir > 0 {
        (key1, key2)
    } else {
        (key2, key1)
    }
}

/// One disk transit of a cycle: where the strand arrives on the circle,
/// where it departs, and whether the rest of the cycle (between departing
/// and arriving again) is an excursion strictly inside this circle.
#[derive(Debug, Clone, Copy)]
struct DiskTransit {
    arrive: Key,
    depart: Key,
    /// The bounding bands attach on the inner side, so the remainder of the
    /// cycle dives under this disk.
    rest_inside: bool,
}

/// Disk transits of a cycle, per circle. Fundamental cycles visit each
/// circle at most once.
fn disk_transits(
    d: &Diagram,
    circles: &Circles,
    arr: &Arrangement,
    c1c2: &[(usize, usize)],
    cycle: &Cycle,
    lane: i64,
) -> BTreeMap<usize, DiskTransit> {
    let mut out = BTreeMap::new();
    let k = cycle.bands.len();
    for i in 0..k {
        let cur = &cycle.bands[i];
        let next = &cycle.bands[(i + 1) % k];
        let circle = if cur.dir > 0 {
            c1c2[cur.crossing].1
        } else {
            c1c2[cur.crossing].0
        };
        let next_from = if next.dir > 0 {
            c1c2[next.crossing].0
        } else {
            c1c2[next.crossing].1
        };
        assert_eq!(circle, next_from, "cycle transits are chained");
        let (_, arrive) = band_keys(d, circles, c1c2, cur, lane);
        let (depart, _) = band_keys(d, circles, c1c2, next, lane);
        // A closed curve crosses the circle an even number of times and
        // only at its own attachments, so the two bounding bands lie on
        // the same side.
        let arrive_inside = arr.channel_region[cur.crossing] == arr.region_in[circle];
        let depart_inside = arr.channel_region[next.crossing] == arr.region_in[circle];
        assert_eq!(
            arrive_inside, depart_inside,
            "transit bands lie on one side of the circle"
        );
        let prev = out.insert(
            circle,
            DiskTransit {
                arrive,
                depart,
                rest_inside: arrive_inside,
            },
        );
        assert!(prev.is_none(), "fundamental cycle visits a disk once");
    }
    out
}

/// Signed crossing count of two directed chords of a disk, +1/-1 when the
/// endpoints interleave, else 0. The disk is viewed from above with the
/// boundary walk counterclockwise.
fn chord_crossing(t: (Key, Key), u: (Key, Key)) -> i64 {
    let (s, e) = t;
    let (a, b) = u;
    let mut pts = [(s, 0u8), (e, 1), (a, 2), (b, 3)];
    pts.sort();
    let start = pts.iter().position(|&(_, tag)| tag == 0).unwrap();
    let order: Vec<u8> = (0..4).map(|i| pts[(start + i) % 4].1).collect();
    match order.as_slice() {
        [0, 2, 1, 3] => 1,  // counterclockwise s, a, e, b
        [0, 3, 1, 2] => -1, // counterclockwise s, b, e, a
        _ => 0,
    }
}

/// The full Seifert computation.
pub fn seifert(d: &Diagram) -> Result<SeifertData, SeifertError> {
    if !d.is_knot() {
        return Err(SeifertError::NotAKnot(d.component_count()));
    }
    let circles = seifert_circles(d);
    let s = circles.walks.len().max(1);
    let c = d.crossing_count();
    let c1c2: Vec<(usize, usize)> = d
        .crossings()
        .iter()
        .map(|cr| {
            let c1 = circles.circle_of_edge[cr.edges[0]];
            let c2 = circles.circle_of_edge[cr.edges[cr.over_in_slot()]];
            assert_ne!(c1, c2, "Seifert graph has no loops");
            (c1, c2)
        })
        .collect();
    let mut degree = vec![0usize; s];
    for &(a, b) in &c1c2 {
        degree[a] += 1;
        degree[b] += 1;
    }
    let mut degree_counts = BTreeMap::new();
    for &deg in &degree {
        *degree_counts.entry(deg).or_insert(0) += 1;
    }
    let rank = c + 1 - s;
    let matrix = if rank == 0 {
        Vec::new()
    } else {
        let arr = arrangement(d, &circles);
        let cycles = fundamental_cycles(&c1c2, s);
        assert_eq!(cycles.len(), rank);
        let lane = |i: usize| 2 * (i as i64 + 1);
        let mut v = vec![vec![0i64; rank]; rank];
        #[allow(clippy::needless_range_loop)]
        for i in 0..rank {
            for j in 0..rank {
                let (lane_i, lane_j) = if i == j {
                    (lane(i), lane(i) + 1)
                } else {
                    (lane(i), lane(j))
                };
                let ci = &cycles[i];
                let cj = &cycles[j];
                let mut total = 0i64;
                // Band contributions.
                for ti in &ci.bands {
                    for tj in &cj.bands {
                        if ti.crossing != tj.crossing {
                            continue;
                        }
                        let x = ti.crossing;
                        let eps = d.crossings()[x].sign as i64;
                        let wi = -eps * ti.dir * lane_i;
                        let wj = -eps * tj.dir * lane_j;
                        // The walk-forward strand at the c1 end is on top;
                        // only crossings with cycle i on top count.
                        if wi > wj {
                            total += -eps * ti.dir * tj.dir;
                        }
                    }
                }
                // Disk contributions.
                let di = disk_transits(d, &circles, &arr, &c1c2, ci, lane_i);
                let dj = disk_transits(d, &circles, &arr, &c1c2, cj, lane_j);
                for (circle, ti) in &di {
                    let or_sign = if arr.upward[*circle] { 1 } else { -1 };
                    if let Some(tj) = dj.get(circle) {
                        // Same-cap chords: the pushed-off cycle i passes
                        // above j's chord only on upward caps.
                        if arr.upward[*circle] {
                            total += chord_crossing(
                                (ti.arrive, ti.depart),
                                (tj.arrive, tj.depart),
                            );
                        }
                        // Cycle i's chord flies over j's excursion under
                        // this disk; the excursion acts as a chord from
                        // j's departure back to its arrival. Keys follow
                        // the walk, so the plane sign flips on clockwise
                        // circles.
                        if tj.rest_inside {
                            total += or_sign
                                * chord_crossing(
                                    (ti.arrive, ti.depart),
                                    (tj.depart, tj.arrive),
                                );
                        }
                    }
                }
                v[i][j] = total;
            }
        }
        v
    };
    let data = SeifertData {
        circle_count: s,
        circle_assignment: circles.circle_of_edge,
        graph_edges: c1c2,
        degree_counts,
        euler_characteristic: s as i64 - c as i64,
        genus: ((1 + c - s) / 2) as u64,
        matrix,
    };
    debug_assert_eq!(1 - 2 * data.genus as i64, data.euler_characteristic);
    // The intersection form V - V^T of a knot surface is unimodular.
    if cfg!(debug_assertions) && std::env::var_os("KNOTGEO_SKIP_SYMPLECTIC_CHECK").is_none() {
        assert_eq!(
            det_bigint(&sub_transpose(&data.matrix)),
            BigInt::one(),
            "V - V^T must be symplectic"
        );
    }
    Ok(data)
}

fn sub_transpose(v: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let n = v.len();
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(v[i][j] - v[j][i])).collect())
        .collect()
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
fn det_bigint(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let q = &num / &prev;
                debug_assert!((&num % &prev).is_zero(), "Bareiss division is exact");
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Signature of the symmetrized Seifert matrix, by exact congruence
/// diagonalization over the rationals.
pub fn signature(d: &Diagram) -> Result<i64, SeifertError> {
    let data = seifert(d)?;
    Ok(signature_of_matrix(&data.matrix))
}

pub fn signature_of_matrix(v: &[Vec<i64>]) -> i64 {
    let n = v.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from(BigInt::from(v[i][j] + v[j][i])))
                .collect()
        })
        .collect();
    let mut sig = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            // Prefer a later nonzero diagonal entry; otherwise shear a
            // nonzero off-diagonal entry onto the diagonal.
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                for idx in 0..n {
                    let t = a[j][idx].clone();
                    a[k][idx] += t;
                }
                for row in a.iter_mut() {
                    let t = row[j].clone();
                    row[k] += t;
                }
            } else {
                continue; // fully zero row and column
            }
        }
        let pivot = a[k][k].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            let f = &a[i][k] / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = &a[k][j] * &f;
                a[i][j] -= t;
            }
        }
        for j in k + 1..n {
            let f = &a[k][j] / &pivot;
            if f.is_zero() {
                continue;
            }
            for i in k..n {
                let t = &a[i][k] * &f;
                a[i][j] -= t;
            }
        }
    }
    sig
}

/// Conway polynomial det(x V - x^{-1} V^T) rewritten in z = x - x^{-1}.
pub fn conway_polynomial(d: &Diagram) -> Result<ConwayPoly, SeifertError> {
    let data = seifert(d)?;
    Ok(conway_of_matrix(&data.matrix))
}

pub fn conway_of_matrix(v: &[Vec<i64>]) -> ConwayPoly {
    let n = v.len();
    if n == 0 {
        return ConwayPoly::one();
    }
    // det(xV - x^{-1}V^T) = x^{-n} det(y V - V^T) at y = x^2; interpolate
    // D(y) from integer determinants at y = 0..n.
    let mut points = Vec::with_capacity(n + 1);
    for y in 0..=n as i64 {
        let m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigInt::from(y * v[i][j] - v[j][i]))
                    .collect()
            })
            .collect();
        points.push((BigInt::from(y), det_bigint(&m)));
    }
    let dy = interpolate_integer_poly(&points);
    // Laurent polynomial sum dy[k] x^{2k - n}; rewrite in z = x - x^{-1}
    // by repeatedly peeling the top-degree term.
    let mut laurent: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (k, coeff) in dy.iter().enumerate() {
        if !coeff.is_zero() {
            laurent.insert(2 * k as i64 - n as i64, coeff.clone());
        }
    }
    let mut z_coeffs: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    while let Some((&m, coeff)) = laurent.iter().next_back() {
        let coeff = coeff.clone();
        if coeff.is_zero() {
            laurent.remove(&m);
            continue;
        }
        assert!(m >= 0, "Conway rewrite left a negative-degree term");
        let m_abs = m as usize;
        // Subtract coeff * (x - x^{-1})^m; the i = 0 term cancels the
        // top-degree entry exactly.
        for i in 0..=m_abs {
            let sign = if i % 2 == 1 { -1 } else { 1 };
            let term = binomial(m_abs, i) * &coeff * sign;
            let expo = m - 2 * i as i64;
            let entry = laurent.entry(expo).or_insert_with(BigInt::zero);
            *entry -= term;
            if entry.is_zero() {
                laurent.remove(&expo);
            }
        }
        z_coeffs[m_abs] += coeff;
    }
    let mut out: Vec<i64> = z_coeffs
        .iter()
        .map(|c| i64::try_from(c).expect("Conway coefficient fits i64"))
        .collect();
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    ConwayPoly(out)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Lagrange interpolation with integer result.
fn interpolate_integer_poly(points: &[(BigInt, BigInt)]) -> Vec<BigInt> {
    let n = points.len();
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis: Vec<BigRational> = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * BigRational::from(xj.clone());
            }
            basis = next;
            denom *= BigRational::from(xi - xj);
        }
        let scale = BigRational::from(yi.clone()) / denom;
        for (k, b) in basis.iter().enumerate() {
            acc[k] += b * &scale;
        }
    }
    acc.iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated coefficient is integral");
            c.to_integer()
        })
        .collect()
}

/// Second Conway coefficient.
pub fn a2(d: &Diagram) -> Result<i64, SeifertError> {
    Ok(conway_polynomial(d)?.coeff(2))
}

/// Knot determinant |det(V + V^T)|, always a positive odd integer.
pub fn determinant(d: &Diagram) -> Result<u64, SeifertError> {
    let data = seifert(d)?;
    let n = data.matrix.len();
    let m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigInt::from(data.matrix[i][j] + data.matrix[j][i]))
                .collect()
        })
        .collect();
    let det = det_bigint(&m).abs();
    let v = u64::try_from(&det).expect("determinant fits u64");
    debug_assert_eq!(v % 2, 1, "knot determinant is odd");
    Ok(v)
}

/// Genus of the knot when the diagram is reduced and alternating: the
/// canonical surface realizes the genus (Murasugi, Crowell, Gabai), so
/// g(K) = g_c(K) = g(F(D)).
pub fn alternating_genus(d: &Diagram) -> Option<u64> {
    if d.is_knot() && d.is_alternating() && d.is_reduced() {
        seifert(d).ok().map(|s| s.genus)
    } else {
        None
    }
}

/// Degree-census report for the Seifert graph identity
/// `sum_{i>=3} (i-2) V_i = 4 g(F(D)) - 2` on reduced diagrams.
#[derive(Debug, Clone)]
pub struct GraphBoundReport {
    pub genus: u64,
    pub degree_counts: BTreeMap<usize, usize>,
    pub weighted_high_degree_sum: i64,
    pub high_degree_count: i64,
    pub identity_holds: bool,
}

pub fn seifert_graph_bound_check(d: &Diagram) -> Result<GraphBoundReport, SeifertError> {
    if !d.is_reduced() {
        return Err(SeifertError::NotReduced);
    }
    let data = seifert(d)?;
    if data.genus == 0 {
        return Err(SeifertError::FlatSurface);
    }
    assert_eq!(
        data.degree_counts.get(&1).copied().unwrap_or(0),
        0,
        "reduced diagrams have no degree-1 Seifert circles"
    );
    // Handshake: degrees sum to twice the crossing count.
    let handshake: usize = data.degree_counts.iter().map(|(d, n)| d * n).sum();
    assert_eq!(handshake, 2 * d.crossing_count());
    let weighted: i64 = data
        .degree_counts
        .iter()
        .filter(|(&deg, _)| deg >= 3)
        .map(|(&deg, &n)| (deg as i64 - 2) * n as i64)
        .sum();
    let count: i64 = data
        .degree_counts
        .iter()
        .filter(|(&deg, _)| deg >= 3)
        .map(|(_, &n)| n as i64)
        .sum();
    Ok(GraphBoundReport {
        genus: data.genus,
        degree_counts: data.degree_counts.clone(),
        weighted_high_degree_sum: weighted,
        high_degree_count: count,
        identity_holds: weighted == 4 * data.genus as i64 - 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn diagram(text: &str) -> Diagram {
        parse(text).unwrap().standard_diagram().unwrap()
    }

    #[test]
    fn unknot_data() {
        let s = seifert(&Diagram::unknot()).unwrap();
        assert_eq!(s.circle_count, 1);
        assert_eq!(s.genus, 0);
        assert!(s.matrix.is_empty());
        assert_eq!(signature(&Diagram::unknot()).unwrap(), 0);
        assert_eq!(
            conway_polynomial(&Diagram::unknot()).unwrap(),
            ConwayPoly::one()
        );
        assert_eq!(determinant(&Diagram::unknot()).unwrap(), 1);
    }

    #[test]
    fn trefoil_braid_closure_matrix() {
        // Closure of the positive 2-braid word: the right-handed trefoil.
        let d = diagram("B[2;1,1,1]");
        let s = seifert(&d).unwrap();
        assert_eq!(s.circle_count, 2);
        assert_eq!(s.genus, 1);
        assert_eq!(s.matrix.len(), 2);
        assert_eq!(signature(&d).unwrap(), -2);
        assert_eq!(conway_polynomial(&d).unwrap(), ConwayPoly(vec![1, 0, 1]));
        assert_eq!(determinant(&d).unwrap(), 3);
    }

    #[test]
    fn left_trefoil_and_mirror_antisymmetry() {
        let d = diagram("C(3)");
        assert_eq!(signature(&d).unwrap(), 2);
        assert_eq!(signature(&d.mirror()).unwrap(), -2);
        assert_eq!(a2(&d).unwrap(), 1);
        assert_eq!(a2(&d.mirror()).unwrap(), 1);
        assert_eq!(determinant(&d).unwrap(), 3);
    }

    #[test]
    fn figure_eight() {
        let d = diagram("C(2,2)");
        let s = seifert(&d).unwrap();
        assert_eq!(s.genus, 1);
        assert_eq!(signature(&d).unwrap(), 0);
        assert_eq!(a2(&d).unwrap(), -1);
        assert_eq!(determinant(&d).unwrap(), 5);
    }

    #[test]
    fn spec_signature_samples() {
        // sigma(C(1,4)) = 4, i.e. T(2,-5).
        assert_eq!(signature(&diagram("C(1,4)")).unwrap(), 4);
        // sigma(C(5,1,2)) = 4 (k = 4 in the 2k-4 family).
        assert_eq!(signature(&diagram("C(5,1,2)")).unwrap(), 4);
        // s(D) of the standard C(2,3) diagram is 4.
        let s = seifert(&diagram("C(2,3)")).unwrap();
        assert_eq!(s.circle_count, 4);
    }

    #[test]
    fn determinants_match_fractions() {
        for entries in [vec![3], vec![2, 2], vec![2, 3], vec![5, 2], vec![2, 1, 1, 2]] {
            let d = diagram(&format!(
                "C({})",
                entries
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ));
            let det = determinant(&d).unwrap();
            let num = crate::rational::fraction(&entries)
                .numerator()
                .unsigned_abs();
            assert_eq!(det, num, "entries {entries:?}");
        }
    }

    #[test]
    fn torus_a2_formula() {
        // a2(T(2,2k+1)) = k(k+1)/2.
        for k in 1..=6i64 {
            let d = diagram(&format!("T(2,{})", 2 * k + 1));
            assert_eq!(a2(&d).unwrap(), k * (k + 1) / 2, "k={k}");
        }
    }

    #[test]
    fn connected_sum_additivity() {
        let t = diagram("C(3)");
        let f8 = diagram("C(2,2)");
        let sum = t.connected_sum(&f8);
        assert_eq!(
            signature(&sum).unwrap(),
            signature(&t).unwrap() + signature(&f8).unwrap()
        );
        let conway_sum = conway_polynomial(&sum).unwrap();
        let product = conway_polynomial(&t)
            .unwrap()
            .mul(&conway_polynomial(&f8).unwrap());
        assert_eq!(conway_sum, product);
    }

    #[test]
    fn graph_bound_identity() {
        for text in ["C(2,3)", "C(2,2)", "C(5)", "C(2,1,1,2)"] {
            let r = seifert_graph_bound_check(&diagram(text)).unwrap();
            assert!(r.identity_holds, "{text}: {r:?}");
        }
        assert!(matches!(
            seifert_graph_bound_check(&Diagram::unknot()),
            Err(SeifertError::FlatSurface)
        ));
        assert!(matches!(
            seifert_graph_bound_check(&diagram("C(1)")),
            Err(SeifertError::NotReduced)
        ));
    }

    #[test]
    fn seifert_invariants_hold_on_samples() {
        for text in [
            "C(3)",
            "C(2,2)",
            "C(2,3)",
            "P(3,-2,3)",
            "B[3;1,2,1,2]",
            "C(3,1,2)",
        ] {
            let d = diagram(text);
            let s = seifert(&d).unwrap();
            assert_eq!(
                s.euler_characteristic,
                s.circle_count as i64 - d.crossing_count() as i64
            );
            assert_eq!(1 - 2 * s.genus as i64, s.euler_characteristic, "{text}");
            assert_eq!(s.matrix.len(), d.crossing_count() + 1 - s.circle_count);
            if d.crossing_count() > 0 {
                assert!(2 * s.genus <= d.crossing_count() as u64 - 1, "{text}");
            }
        }
    }
}
