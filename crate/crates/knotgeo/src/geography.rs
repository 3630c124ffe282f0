//! The geography of invariant pairs: membership predicates for each
//! determined relation set, witness generators following the explicit
//! constructions, machine verification of the witnesses' claims, region
//! enumeration with CSV/SVG output, and the tuple-dimension rank.
//!
//! Every pair id maps to exactly one predicate and one generator. The
//! (c, bridge-1) pair is special: its in-points are all realized by
//! explicit constructions, but the exclusion of out-points is equivalent
//! to the Fox conjecture, so membership is three-valued there.

use crate::diagram::Diagram;
use crate::facts;
use crate::notation::{self, KnotExpr};
use crate::rational;
use crate::seifert;
use crate::skein;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeographyError {
    #[error("({x},{y}) is outside the relation: {constraint}")]
    OutsideRelation { x: u64, y: u64, constraint: String },
    #[error("({x},{y}) is outside the conjectured relation: {constraint}")]
    OutsideConjectured { x: u64, y: u64, constraint: String },
    #[error("expression not recognizable for the crossing-genus botany: {0}")]
    Unrecognizable(String),
}

/// The twelve invariant pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairId {
    CU,
    CG,
    CGC,
    CBraid,
    CBridge,
    BraidBridge,
    GcG,
    UBraid,
    UBridge,
    GBraid,
    GcBraid,
    GBridge,
}

impl PairId {
    pub const ALL: [PairId; 12] = [
        PairId::CU,
        PairId::CG,
        PairId::CGC,
        PairId::CBraid,
        PairId::CBridge,
        PairId::BraidBridge,
        PairId::GcG,
        PairId::UBraid,
        PairId::UBridge,
        PairId::GBraid,
        PairId::GcBraid,
        PairId::GBridge,
    ];

    pub fn invariants(&self) -> (Invariant, Invariant) {
        use Invariant::*;
        match self {
            PairId::CU => (Crossing, Unknotting),
            PairId::CG => (Crossing, Genus),
            PairId::CGC => (Crossing, CanonicalGenus),
            PairId::CBraid => (Crossing, BraidMinusOne),
            PairId::CBridge => (Crossing, BridgeMinusOne),
            PairId::BraidBridge => (BraidMinusOne, BridgeMinusOne),
            PairId::GcG => (CanonicalGenus, Genus),
            PairId::UBraid => (Unknotting, BraidMinusOne),
            PairId::UBridge => (Unknotting, BridgeMinusOne),
            PairId::GBraid => (Genus, BraidMinusOne),
            PairId::GcBraid => (CanonicalGenus, BraidMinusOne),
            PairId::GBridge => (Genus, BridgeMinusOne),
        }
    }

    pub fn parse_flag(text: &str) -> Option<PairId> {
        Some(match text {
            "c,u" => PairId::CU,
            "c,g" => PairId::CG,
            "c,gc" => PairId::CGC,
            "c,braid" => PairId::CBraid,
            "c,bridge" => PairId::CBridge,
            "braid,bridge" => PairId::BraidBridge,
            "gc,g" => PairId::GcG,
            "u,braid" => PairId::UBraid,
            "u,bridge" => PairId::UBridge,
            "g,braid" => PairId::GBraid,
            "gc,braid" => PairId::GcBraid,
            "g,bridge" => PairId::GBridge,
            _ => return None,
        })
    }

    pub fn flag(&self) -> &'static str {
        match self {
            PairId::CU => "c,u",
            PairId::CG => "c,g",
            PairId::CGC => "c,gc",
            PairId::CBraid => "c,braid",
            PairId::CBridge => "c,bridge",
            PairId::BraidBridge => "braid,bridge",
            PairId::GcG => "gc,g",
            PairId::UBraid => "u,braid",
            PairId::UBridge => "u,bridge",
            PairId::GBraid => "g,braid",
            PairId::GcBraid => "gc,braid",
            PairId::GBridge => "g,bridge",
        }
    }

    /// The defining constraint as printed in error messages and plots.
    pub fn boundary_description(&self) -> &'static str {
        match self {
            PairId::CU | PairId::CG | PairId::CGC => "y <= (x-1)/2",
            PairId::CBraid => "y = 1 at odd x >= 3, or 2 <= y <= x/2",
            PairId::CBridge => "y <= x/3",
            PairId::BraidBridge => "y <= x",
            PairId::GcG => "y <= x and (x,y) != (2,1)",
            _ => "x >= 1 and y >= 1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Invariant {
    Crossing,
    Unknotting,
    Genus,
    CanonicalGenus,
    BraidMinusOne,
    BridgeMinusOne,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Crossing => "c",
            Invariant::Unknotting => "u",
            Invariant::Genus => "g",
            Invariant::CanonicalGenus => "gc",
            Invariant::BraidMinusOne => "braid-1",
            Invariant::BridgeMinusOne => "bridge-1",
        })
    }
}

/// Three-valued membership: everything is exact except the bridge pair,
/// whose exclusions hold under the Fox conjecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    OutConjectural,
}

pub fn member(id: PairId, point: (u64, u64)) -> Membership {
    let (x, y) = point;
    if point == (0, 0) {
        return Membership::In;
    }
    if x == 0 || y == 0 {
        // A single zero coordinate forces the trivial knot, hence (0,0).
        return Membership::Out;
    }
    let inside = match id {
        PairId::CU | PairId::CG | PairId::CGC => 2 * y + 1 <= x,
        PairId::CBraid => (y == 1 && x >= 3 && x % 2 == 1) || (y >= 2 && 2 * y <= x),
        PairId::CBridge => 3 * y <= x,
        PairId::BraidBridge => y <= x,
        PairId::GcG => y <= x && (x, y) != (2, 1),
        PairId::UBraid
        | PairId::UBridge
        | PairId::GBraid
        | PairId::GcBraid
        | PairId::GBridge => true,
    };
    match (inside, id) {
        (true, _) => Membership::In,
        (false, PairId::CBridge) => Membership::OutConjectural,
        (false, _) => Membership::Out,
    }
}

/// Where a claimed value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    PaperFact,
}

#[derive(Debug, Clone)]
pub struct Claim {
    pub invariant: Invariant,
    pub value: u64,
    pub provenance: Provenance,
}

/// A notation-level unknotting script: parts are rewritten one crossing
/// change at a time; a pretzel with a zeroed band splits into torus parts.
#[derive(Debug, Clone)]
pub struct UnknottingScript {
    pub parts: Vec<ScriptPart>,
    pub steps: Vec<ScriptStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptPart {
    TwoBridge(Vec<i64>),
    Pretzel(Vec<i64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScriptStep {
    /// One crossing change in a twist band: the entry moves by +-2.
    Change { part: usize, band: usize, delta: i64 },
    /// Split a pretzel with a zero band into its two torus factors.
    Split { part: usize },
}

impl UnknottingScript {
    /// Number of crossing changes.
    pub fn change_count(&self) -> u64 {
        self.steps
            .iter()
            .filter(|s| matches!(s, ScriptStep::Change { .. }))
            .count() as u64
    }

    /// Run the script; Ok(()) exactly when every final part has a trivial
    /// fraction.
    pub fn validate(&self) -> Result<(), String> {
        let mut parts = self.parts.clone();
        for step in &self.steps {
            match *step {
                ScriptStep::Change { part, band, delta } => {
                    let entries = match parts.get_mut(part) {
                        Some(ScriptPart::TwoBridge(e)) | Some(ScriptPart::Pretzel(e)) => e,
                        None => return Err(format!("part {part} out of range")),
                    };
                    if band >= entries.len() {
                        return Err(format!("band {band} out of range"));
                    }
                    if delta.abs() != 1 {
                        return Err("one crossing change moves an entry by 2".into());
                    }
                    entries[band] += 2 * delta;
                }
                ScriptStep::Split { part } => {
                    let ScriptPart::Pretzel(entries) = parts[part].clone() else {
                        return Err("only pretzels split".into());
                    };
                    let zero = entries.iter().position(|&e| e == 0);
                    let Some(z) = zero else {
                        return Err("pretzel split needs a zero band".into());
                    };
                    let rest: Vec<i64> = entries
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != z)
                        .map(|(_, &e)| e)
                        .collect();
                    if rest.len() != 2 {
                        return Err("split expects exactly two other bands".into());
                    }
                    // P(a, 0, c) = T(2,a) # T(2,c); T(2,n) is C(-n).
                    parts[part] = ScriptPart::TwoBridge(vec![-rest[0]]);
                    parts.push(ScriptPart::TwoBridge(vec![-rest[1]]));
                }
            }
        }
        for p in &parts {
            match p {
                ScriptPart::TwoBridge(entries) => {
                    if !rational::fraction(entries).is_unknot() {
                        return Err(format!("part C{entries:?} is not trivial"));
                    }
                }
                ScriptPart::Pretzel(entries) => {
                    return Err(format!("pretzel P{entries:?} left unsplit"));
                }
            }
        }
        Ok(())
    }
}

/// A witness knot for one lattice point of one pair.
#[derive(Debug, Clone)]
pub struct Witness {
    pub pair: PairId,
    pub point: (u64, u64),
    pub expr: KnotExpr,
    pub claims: Vec<Claim>,
    /// The unknotting script backing an unknotting-number claim.
    pub script: Option<UnknottingScript>,
}

/// Construct the witness for an in-point.
pub fn witness(id: PairId, point: (u64, u64)) -> Result<Witness, GeographyError> {
    match member(id, point) {
        Membership::In => {}
        Membership::Out => {
            return Err(GeographyError::OutsideRelation {
                x: point.0,
                y: point.1,
                constraint: id.boundary_description().to_string(),
            })
        }
        Membership::OutConjectural => {
            return Err(GeographyError::OutsideConjectured {
                x: point.0,
                y: point.1,
                constraint: id.boundary_description().to_string(),
            })
        }
    }
    let (inv_x, inv_y) = id.invariants();
    let (x, y) = point;
    if point == (0, 0) {
        return Ok(Witness {
            pair: id,
            point,
            expr: KnotExpr::Unknot,
            claims: vec![
                Claim {
                    invariant: inv_x,
                    value: 0,
                    provenance: Provenance::Computed,
                },
                Claim {
                    invariant: inv_y,
                    value: 0,
                    provenance: Provenance::Computed,
                },
            ],
            script: Some(UnknottingScript {
                parts: Vec::new(),
                steps: Vec::new(),
            }),
        });
    }
    let mut script = None;
    let mut provenance = (Provenance::Computed, Provenance::Computed);
    let expr = match id {
        PairId::CU => {
            let (e, s) = cu_witness(x, y);
            script = Some(s);
            e
        }
        PairId::CG | PairId::CGC => {
            if x % 2 == 1 {
                // Odd crossing number: C(2y, x-2y).
                KnotExpr::TwoBridge(vec![2 * y as i64, (x - 2 * y) as i64])
            } else {
                KnotExpr::TwoBridge(vec![-2, -(x as i64) + 2 * y as i64 + 1, -(2 * y as i64) + 1])
            }
        }
        PairId::CBraid => {
            if y == 1 {
                KnotExpr::TwoBridge(vec![(x - 1) as i64, 1])
            } else if x % 2 == 1 {
                let a = (x + 1 - 2 * y) / 2;
                KnotExpr::TwoBridge(vec![2 * a as i64, 2 * y as i64 - 1])
            } else {
                let a = y - 1;
                let b = x / 2 - y + 1;
                KnotExpr::TwoBridge(vec![-2, -(2 * a as i64) + 1, -(2 * b as i64) + 1])
            }
        }
        PairId::CBridge => {
            // C(2, x-3y+1) # (y-1) trefoil mirrors.
            let twist = KnotExpr::TwoBridge(vec![2, (x as i64) - 3 * (y as i64) + 1]);
            let trefoil = KnotExpr::Named("3_1".to_string()).mirror();
            KnotExpr::sum(
                std::iter::once(twist)
                    .chain(std::iter::repeat_n(trefoil, y as usize - 1))
                    .collect(),
            )
        }
        PairId::BraidBridge => {
            let a = x - y + 1;
            let b = y - 1;
            let base = KnotExpr::TwoBridge(vec![2, 2 * a as i64 - 1]);
            let trefoil = KnotExpr::Named("3_1".to_string()).mirror();
            KnotExpr::sum(
                std::iter::once(base)
                    .chain(std::iter::repeat_n(trefoil, b as usize))
                    .collect(),
            )
        }
        PairId::GcG => {
            let trefoil = KnotExpr::Named("3_1".to_string()).mirror();
            if y == x {
                provenance = (Provenance::Computed, Provenance::Computed);
                trefoil.repeated(x as usize)
            } else if y + 1 == x {
                // K11n39 # (y-2) trefoils.
                provenance = (Provenance::PaperFact, Provenance::PaperFact);
                KnotExpr::sum(
                    std::iter::once(KnotExpr::Named("K11n39".to_string()))
                        .chain(std::iter::repeat_n(trefoil, y as usize - 2))
                        .collect(),
                )
            } else {
                // Whitehead double of a 2-bridge companion with a = x-y+1
                // crossings, plus y-1 trefoils.
                provenance = (Provenance::PaperFact, Provenance::PaperFact);
                let a = x - y + 1;
                let companion = if a == 3 {
                    KnotExpr::TwoBridge(vec![3])
                } else {
                    KnotExpr::TwoBridge(vec![2, a as i64 - 2])
                };
                KnotExpr::sum(
                    std::iter::once(companion.double(1))
                        .chain(std::iter::repeat_n(trefoil, y as usize - 1))
                        .collect(),
                )
            }
        }
        PairId::UBraid => {
            let trefoil = KnotExpr::Named("3_1".to_string()).mirror();
            let (base, a, s) = if x >= y {
                let k = x - y + 1;
                let a = y - 1;
                let mut s = torus_script(2 * k as i64 + 1);
                s.parts
                    .extend(std::iter::repeat_n(ScriptPart::TwoBridge(vec![-3]), a as usize));
                for part in 1..=a as usize {
                    s.steps.push(ScriptStep::Change {
                        part,
                        band: 0,
                        delta: 1,
                    });
                }
                (
                    KnotExpr::Torus(2, 2 * k as i64 + 1),
                    a,
                    s,
                )
            } else {
                let k = y - x + 1;
                let a = x - 1;
                let mut s = UnknottingScript {
                    parts: vec![ScriptPart::TwoBridge(vec![2, 2 * k as i64 - 1])],
                    steps: vec![ScriptStep::Change {
                        part: 0,
                        band: 0,
                        delta: -1,
                    }],
                };
                s.parts
                    .extend(std::iter::repeat_n(ScriptPart::TwoBridge(vec![-3]), a as usize));
                for part in 1..=a as usize {
                    s.steps.push(ScriptStep::Change {
                        part,
                        band: 0,
                        delta: 1,
                    });
                }
                (KnotExpr::TwoBridge(vec![2, 2 * k as i64 - 1]), a, s)
            };
            script = Some(s);
            KnotExpr::sum(
                std::iter::once(base)
                    .chain(std::iter::repeat_n(trefoil, a as usize))
                    .collect(),
            )
        }
        PairId::UBridge => {
            let trefoil = KnotExpr::Named("3_1".to_string()).mirror();
            if x >= y {
                let k = x - y + 1;
                let a = y - 1;
                let mut s = torus_script(2 * k as i64 + 1);
                s.parts
                    .extend(std::iter::repeat_n(ScriptPart::TwoBridge(vec![-3]), a as usize));
                for part in 1..=a as usize {
                    s.steps.push(ScriptStep::Change {
                        part,
                        band: 0,
                        delta: 1,
                    });
                }
                script = Some(s);
                KnotExpr::sum(
                    std::iter::once(KnotExpr::Torus(2, 2 * k as i64 + 1))
                        .chain(std::iter::repeat_n(trefoil, a as usize))
                        .collect(),
                )
            } else {
                let k = y - x + 1;
                let a = x - 1;
                provenance = (Provenance::PaperFact, Provenance::PaperFact);
                KnotExpr::sum(
                    std::iter::once(bridge_one_unknotting_witness(k))
                        .chain(std::iter::repeat_n(trefoil, a as usize))
                        .collect(),
                )
            }
        }
        PairId::GBraid | PairId::GcBraid => {
            KnotExpr::TwoBridge(vec![2 * x as i64, 2 * y as i64 - 1])
        }
        PairId::GBridge => {
            let trefoil = KnotExpr::Named("3_1".to_string()).mirror();
            if x >= y {
                let k = x - y + 1;
                let a = y - 1;
                KnotExpr::sum(
                    std::iter::once(KnotExpr::Torus(2, 2 * k as i64 + 1))
                        .chain(std::iter::repeat_n(trefoil, a as usize))
                        .collect(),
                )
            } else {
                let k = y - x + 1;
                let a = x - 1;
                provenance = (Provenance::PaperFact, Provenance::PaperFact);
                KnotExpr::sum(
                    std::iter::once(genus_one_bridge_witness(k))
                        .chain(std::iter::repeat_n(trefoil, a as usize))
                        .collect(),
                )
            }
        }
        PairId::CU => unreachable!(),
    };
    Ok(Witness {
        pair: id,
        point,
        expr,
        claims: vec![
            Claim {
                invariant: inv_x,
                value: x,
                provenance: provenance.0,
            },
            Claim {
                invariant: inv_y,
                value: y,
                provenance: provenance.1,
            },
        ],
        script,
    })
}

/// Unknotting script for T(2,n) = C(-n): (|n|-1)/2 changes toward C(+-1).
fn torus_script(n: i64) -> UnknottingScript {
    let k = (n.abs() - 1) / 2;
    UnknottingScript {
        parts: vec![ScriptPart::TwoBridge(vec![-n])],
        steps: (0..k)
            .map(|_| ScriptStep::Change {
                part: 0,
                band: 0,
                delta: n.signum(),
            })
            .collect(),
    }
}

/// The knots with (u, bridge-1) = (1, k): trefoil, the starred
/// eight-crossing knot, doubles of trefoil sums, and satellites with the
/// ten-crossing pattern.
fn bridge_one_unknotting_witness(k: u64) -> KnotExpr {
    let trefoil_m = KnotExpr::Named("3_1".to_string()).mirror();
    match k {
        1 => trefoil_m,
        2 => KnotExpr::Named("8_21".to_string()).mirror(),
        _ if k % 2 == 1 => {
            let l = (k - 1) / 2;
            trefoil_m.repeated(l as usize).double(1)
        }
        _ => {
            let l = (k - 2) / 2;
            KnotExpr::Satellite {
                pattern: Box::new(KnotExpr::Named("10_133".to_string()).mirror()),
                companion: Box::new(KnotExpr::Named("3_1".to_string()).repeated(l as usize)),
            }
        }
    }
}

/// The knots with (g, bridge-1) = (1, k): trefoil, the nine-crossing
/// pretzel, doubles, and satellites with the pretzel pattern.
fn genus_one_bridge_witness(k: u64) -> KnotExpr {
    let trefoil_m = KnotExpr::Named("3_1".to_string()).mirror();
    match k {
        1 => trefoil_m,
        2 => KnotExpr::Pretzel(vec![3, 3, 3]),
        _ if k % 2 == 1 => {
            let l = (k - 1) / 2;
            trefoil_m.repeated(l as usize).double(1)
        }
        _ => {
            let l = (k - 2) / 2;
            KnotExpr::Satellite {
                pattern: Box::new(KnotExpr::Pretzel(vec![3, 3, 3])),
                companion: Box::new(KnotExpr::Named("3_1".to_string()).repeated(l as usize)),
            }
        }
    }
}

/// The (c,u) witness families, split exactly as in the realization proof.
fn cu_witness(x: u64, y: u64) -> (KnotExpr, UnknottingScript) {
    let (x, i) = (x as i64, y as i64);
    if x % 2 == 1 {
        // (2k+1, i): C(2k-2i+1, 2i), unknotted inside the even band.
        let k = (x - 1) / 2;
        let entries = vec![2 * k - 2 * i + 1, 2 * i];
        let script = UnknottingScript {
            parts: vec![ScriptPart::TwoBridge(entries.clone())],
            steps: (0..i)
                .map(|_| ScriptStep::Change {
                    part: 0,
                    band: 1,
                    delta: -1,
                })
                .collect(),
        };
        return (KnotExpr::TwoBridge(entries), script);
    }
    let k = x / 2;
    if i == 1 {
        let entries = vec![2 * k - 2, 2];
        let script = UnknottingScript {
            parts: vec![ScriptPart::TwoBridge(entries.clone())],
            steps: vec![ScriptStep::Change {
                part: 0,
                band: 1,
                delta: -1,
            }],
        };
        (KnotExpr::TwoBridge(entries), script)
    } else if i == k - 1 {
        if i == 2 {
            // (6,2): the square-knot-style sum of two trefoil mirrors.
            let trefoil_m = KnotExpr::Named("3_1".to_string()).mirror();
            let script = UnknottingScript {
                parts: vec![
                    ScriptPart::TwoBridge(vec![-3]),
                    ScriptPart::TwoBridge(vec![-3]),
                ],
                steps: vec![
                    ScriptStep::Change {
                        part: 0,
                        band: 0,
                        delta: 1,
                    },
                    ScriptStep::Change {
                        part: 1,
                        band: 0,
                        delta: 1,
                    },
                ],
            };
            (trefoil_m.repeated(2), script)
        } else {
            // (2i+2, i) for i >= 3: the positive pretzel with p = 1,
            // q = i - 2 (any split with p + q = i - 1 works).
            let (p, q) = (1, i - 2);
            let entries = vec![2 * p + 1, -2, 2 * q + 1];
            let mut steps = vec![
                ScriptStep::Change {
                    part: 0,
                    band: 1,
                    delta: 1,
                },
                ScriptStep::Split { part: 0 },
            ];
            for _ in 0..p {
                steps.push(ScriptStep::Change {
                    part: 0,
                    band: 0,
                    delta: 1,
                });
            }
            for _ in 0..q {
                steps.push(ScriptStep::Change {
                    part: 1,
                    band: 0,
                    delta: 1,
                });
            }
            let script = UnknottingScript {
                parts: vec![ScriptPart::Pretzel(entries.clone())],
                steps,
            };
            (KnotExpr::Pretzel(entries), script)
        }
    } else if i == k - 2 {
        let entries = vec![2 * k - 3, 1, 2];
        let mut steps: Vec<ScriptStep> = (0..k - 3)
            .map(|_| ScriptStep::Change {
                part: 0,
                band: 0,
                delta: -1,
            })
            .collect();
        steps.push(ScriptStep::Change {
            part: 0,
            band: 1,
            delta: -1,
        });
        let script = UnknottingScript {
            parts: vec![ScriptPart::TwoBridge(entries.clone())],
            steps,
        };
        (KnotExpr::TwoBridge(entries), script)
    } else {
        // 2 <= i <= k-3: C(2i-1, 2k-2i-4, 2, 1, 2).
        let entries = vec![2 * i - 1, 2 * k - 2 * i - 4, 2, 1, 2];
        let mut steps: Vec<ScriptStep> = (0..i - 1)
            .map(|_| ScriptStep::Change {
                part: 0,
                band: 0,
                delta: -1,
            })
            .collect();
        steps.push(ScriptStep::Change {
            part: 0,
            band: 3,
            delta: -1,
        });
        let script = UnknottingScript {
            parts: vec![ScriptPart::TwoBridge(entries.clone())],
            steps,
        };
        (KnotExpr::TwoBridge(entries), script)
    }
}

/// Status of one verified claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Verified,
    PaperFact,
    Failed,
}

#[derive(Debug, Clone)]
pub struct ClaimCheck {
    pub invariant: Invariant,
    pub claimed: u64,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub lines: Vec<ClaimCheck>,
}

impl VerifyReport {
    pub fn failed(&self) -> bool {
        self.lines.iter().any(|l| l.status == CheckStatus::Failed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(
                f,
                "{:<9} {} = {:<3} {}",
                match line.status {
                    CheckStatus::Verified => "VERIFIED",
                    CheckStatus::PaperFact => "FACT",
                    CheckStatus::Failed => "FAILED",
                },
                line.invariant,
                line.claimed,
                line.detail
            )?;
        }
        Ok(())
    }
}

/// A value with the strength of its derivation.
#[derive(Debug, Clone)]
struct Derived {
    value: i64,
    computed: bool,
    detail: String,
}

impl Derived {
    fn computed(value: i64, detail: impl Into<String>) -> Self {
        Derived {
            value,
            computed: true,
            detail: detail.into(),
        }
    }

    fn fact(value: i64, detail: impl Into<String>) -> Self {
        Derived {
            value,
            computed: false,
            detail: detail.into(),
        }
    }
}

fn sum_parts<F>(expr: &KnotExpr, f: F) -> Option<Derived>
where
    F: Fn(&KnotExpr) -> Option<Derived>,
{
    let parts: Vec<&KnotExpr> = match expr {
        KnotExpr::ConnectedSum(parts) => parts.iter().collect(),
        e => vec![e],
    };
    let mut value = 0;
    let mut computed = true;
    let mut details = Vec::new();
    for p in parts {
        let d = f(p)?;
        value += d.value;
        computed &= d.computed;
        details.push(d.detail);
    }
    details.dedup();
    Some(Derived {
        value,
        computed,
        detail: details.join("; "),
    })
}

/// Crossing number channel: alternating reduced diagrams count exactly;
/// summands add (crossing number is additive for alternating factors).
fn derive_crossing(expr: &KnotExpr) -> Option<Derived> {
    sum_parts(expr, |part| match part {
        KnotExpr::Unknot => Some(Derived::computed(0, "trivial")),
        KnotExpr::Mirror(inner) => derive_crossing(inner),
        KnotExpr::TwoBridge(_) | KnotExpr::Torus(_, _) => {
            let d = part.standard_diagram().ok()?;
            if d.is_alternating() && d.is_reduced() {
                Some(Derived::computed(
                    d.crossing_count() as i64,
                    "reduced alternating count",
                ))
            } else {
                None
            }
        }
        KnotExpr::Pretzel(entries) => {
            let d = part.standard_diagram().ok()?;
            Some(Derived::fact(
                d.crossing_count() as i64,
                format!("pretzel P{entries:?} minimality cited"),
            ))
        }
        KnotExpr::Named(id) => {
            let v = facts::lookup(id, "c")?.value;
            let d = facts::named_recipe(id)?.diagram().ok()?;
            if d.is_alternating() && d.is_reduced() && d.crossing_count() as i64 == v {
                Some(Derived::computed(v, "reduced alternating count"))
            } else {
                Some(Derived::fact(v, "table crossing number"))
            }
        }
        _ => None,
    })
}

/// Signature channel: computed on the built diagram when it fits, else
/// additively from parts with facts for the unbuildable ones.
fn derive_signature(expr: &KnotExpr) -> Option<Derived> {
    if let Ok(d) = expr.standard_diagram() {
        if d.crossing_count() <= 40 {
            if let Ok(s) = seifert::signature(&d) {
                return Some(Derived::computed(s, "signature of built diagram"));
            }
        }
    }
    sum_parts(expr, |part| {
        if let Ok(d) = part.standard_diagram() {
            if let Ok(s) = seifert::signature(&d) {
                return Some(Derived::computed(s, "signature of part"));
            }
        }
        match part {
            KnotExpr::WhiteheadDouble { .. } | KnotExpr::Satellite { .. } => Some(Derived::fact(
                -2,
                "clasped fiber surface signature cited",
            )),
            _ => facts::expr_fact(part, "sigma").map(|v| Derived::fact(v, "table signature")),
        }
    })
}

/// Rasmussen lower-bound channel for positive diagrams.
fn derive_rasmussen(expr: &KnotExpr) -> Option<Derived> {
    let d = expr.standard_diagram().ok()?;
    let s = skein::rasmussen_positive(&d).ok()?;
    Some(Derived::computed(s, "positive-diagram Rasmussen value"))
}

fn verify_unknotting(w: &Witness, claimed: u64) -> ClaimCheck {
    let claimed_i = claimed as i64;
    // Upper bound: the notation-level script, else per-part facts.
    let upper = match &w.script {
        Some(script) => match script.validate() {
            Ok(()) => Some(Derived::computed(
                script.change_count() as i64,
                "unknotting script validated",
            )),
            Err(e) => {
                return ClaimCheck {
                    invariant: Invariant::Unknotting,
                    claimed,
                    status: CheckStatus::Failed,
                    detail: format!("script invalid: {e}"),
                }
            }
        },
        None => sum_parts(&w.expr, |part| match part {
            KnotExpr::WhiteheadDouble { .. } | KnotExpr::Satellite { .. } => {
                Some(Derived::fact(1, "clasp removal unknots"))
            }
            _ => facts::expr_fact(part, "u").map(|v| Derived::fact(v, "table unknotting number")),
        }),
    };
    // Lower bound: half the signature magnitude, or the Rasmussen value on
    // positive diagrams.
    let sigma = derive_signature(&w.expr);
    let rasmussen = derive_rasmussen(&w.expr);
    let mut lower: Option<Derived> = None;
    if let Some(s) = &sigma {
        lower = Some(Derived {
            value: s.value.abs() / 2,
            computed: s.computed,
            detail: format!("|sigma|/2 with {}", s.detail),
        });
    }
    if let Some(r) = &rasmussen {
        let v = r.value.abs() / 2;
        if lower.as_ref().is_none_or(|l| v > l.value) {
            lower = Some(Derived {
                value: v,
                computed: true,
                detail: format!("S/2 with {}", r.detail),
            });
        }
    }
    match (lower, upper) {
        (Some(lo), Some(up)) => {
            if lo.value == claimed_i && up.value == claimed_i {
                ClaimCheck {
                    invariant: Invariant::Unknotting,
                    claimed,
                    status: if lo.computed && up.computed {
                        CheckStatus::Verified
                    } else {
                        CheckStatus::PaperFact
                    },
                    detail: format!("lower {}; upper {}", lo.detail, up.detail),
                }
            } else if lo.value <= claimed_i && claimed_i <= up.value {
                ClaimCheck {
                    invariant: Invariant::Unknotting,
                    claimed,
                    status: CheckStatus::PaperFact,
                    detail: format!(
                        "bounds [{}, {}] contain the claim; exact value cited",
                        lo.value, up.value
                    ),
                }
            } else {
                ClaimCheck {
                    invariant: Invariant::Unknotting,
                    claimed,
                    status: CheckStatus::Failed,
                    detail: format!("bounds [{}, {}] exclude the claim", lo.value, up.value),
                }
            }
        }
        _ => ClaimCheck {
            invariant: Invariant::Unknotting,
            claimed,
            status: CheckStatus::PaperFact,
            detail: "no computational channel".into(),
        },
    }
}

/// Genus and canonical genus channels.
fn derive_genus(expr: &KnotExpr, canonical: bool) -> Option<Derived> {
    sum_parts(expr, |part| match part {
        KnotExpr::Unknot => Some(Derived::computed(0, "trivial")),
        KnotExpr::Mirror(inner) => derive_genus(inner, canonical),
        KnotExpr::TwoBridge(_) | KnotExpr::Torus(_, _) => {
            let d = part.standard_diagram().ok()?;
            seifert::alternating_genus(&d).map(|g| {
                Derived::computed(g as i64, "alternating canonical surface genus")
            })
        }
        KnotExpr::Named(id) => {
            let key = if canonical { "gc" } else { "g" };
            let v = facts::expr_fact(part, key)?;
            let d = facts::named_recipe(id)?.diagram().ok()?;
            if let Some(g) = seifert::alternating_genus(&d) {
                if g as i64 == v {
                    return Some(Derived::computed(v, "alternating canonical surface genus"));
                }
            }
            if canonical {
                // Morton's bound pins the canonical genus from below.
                if let Ok(p) = skein::homfly(&d, skein::DEFAULT_BUDGET) {
                    let lo = skein::morton_genus_lower(&p) as i64;
                    if lo == v {
                        return Some(Derived {
                            value: v,
                            computed: false,
                            detail: "Morton lower bound matches cited value".into(),
                        });
                    }
                }
            }
            Some(Derived::fact(v, "table genus"))
        }
        KnotExpr::Pretzel(_) => facts::expr_fact(part, if canonical { "gc" } else { "g" })
            .map(|v| Derived::fact(v, "table genus")),
        KnotExpr::WhiteheadDouble { companion, .. } => {
            if canonical {
                let c = derive_crossing(companion)?;
                Some(Derived {
                    value: c.value,
                    computed: false,
                    detail: "canonical genus of a double equals the companion crossing number"
                        .into(),
                })
            } else {
                Some(Derived::fact(1, "doubles bound a clasped genus-one surface"))
            }
        }
        KnotExpr::Satellite { .. } => {
            if canonical {
                None
            } else {
                Some(Derived::fact(1, "satellite carries the pattern surface"))
            }
        }
        _ => None,
    })
}

fn verify_genus(expr: &KnotExpr, claimed: u64, canonical: bool) -> ClaimCheck {
    let invariant = if canonical {
        Invariant::CanonicalGenus
    } else {
        Invariant::Genus
    };
    match derive_genus(expr, canonical) {
        Some(d) if d.value == claimed as i64 => ClaimCheck {
            invariant,
            claimed,
            status: if d.computed {
                CheckStatus::Verified
            } else {
                CheckStatus::PaperFact
            },
            detail: d.detail,
        },
        Some(d) => ClaimCheck {
            invariant,
            claimed,
            status: CheckStatus::Failed,
            detail: format!("derived {} ({})", d.value, d.detail),
        },
        None => ClaimCheck {
            invariant,
            claimed,
            status: CheckStatus::PaperFact,
            detail: "no computational channel".into(),
        },
    }
}

/// Braid index minus one: family formulas plus the MFW cross-check.
fn derive_braid(expr: &KnotExpr) -> Option<Derived> {
    sum_parts(expr, |part| {
        let base = match part {
            KnotExpr::Unknot => Some(Derived::computed(0, "trivial")),
            KnotExpr::Mirror(inner) => derive_braid(inner),
            KnotExpr::TwoBridge(entries) => rational::braid_index_family(entries)
                .ok()
                .map(|b| Derived::computed(b as i64 - 1, "2-bridge braid-index family")),
            KnotExpr::Torus(p, q) => {
                if p.abs() == 2 || q.abs() == 2 {
                    Some(Derived::computed(1, "2-strand torus braid"))
                } else {
                    None
                }
            }
            KnotExpr::Named(id) => facts::lookup(id, "braid")
                .map(|r| Derived::fact(r.value - 1, "table braid index")),
            _ => None,
        }?;
        // Cross-check against the Morton-Franks-Williams bound when the
        // part fits in the skein budget.
        if let Ok(d) = part.standard_diagram() {
            if let Ok(p) = skein::homfly(&d, skein::DEFAULT_BUDGET) {
                let mfw = skein::mfw_braid_lower(&p) as i64 - 1;
                if mfw > base.value {
                    return None; // contradiction, let the claim fail
                }
                if mfw == base.value {
                    return Some(Derived {
                        value: base.value,
                        computed: base.computed,
                        detail: format!("{} (MFW bound agrees)", base.detail),
                    });
                }
            }
        }
        Some(base)
    })
}

/// Bridge number minus one: structural for 2-bridge forms, cited for
/// patterns and satellites.
fn derive_bridge(expr: &KnotExpr) -> Option<Derived> {
    sum_parts(expr, |part| match part {
        KnotExpr::Unknot => Some(Derived::computed(0, "trivial")),
        KnotExpr::Mirror(inner) => derive_bridge(inner),
        KnotExpr::TwoBridge(entries) => {
            let f = rational::fraction(entries);
            if f.is_unknot() {
                Some(Derived::computed(0, "trivial fraction"))
            } else {
                Some(Derived::computed(1, "2-bridge by construction"))
            }
        }
        KnotExpr::Torus(_, _) => Some(Derived::computed(1, "2-strand torus knots are 2-bridge")),
        KnotExpr::Named(id) => {
            let v = facts::lookup(id, "bridge")?.value - 1;
            match facts::named_recipe(id)? {
                facts::NamedRecipe::Conway(_) => {
                    Some(Derived::computed(v, "2-bridge by construction"))
                }
                facts::NamedRecipe::Braid(strands, _) if v + 1 == strands as i64 => {
                    // bridge <= braid <= strands, and the 2-bridge
                    // Alexander polynomials at this determinant exclude it.
                    let d = facts::named_recipe(id)?.diagram().ok()?;
                    let det = seifert::determinant(&d).ok()? as i64;
                    let conway = seifert::conway_polynomial(&d).ok()?.0;
                    if !facts::two_bridge_conways(det).contains(&conway) {
                        Some(Derived::computed(
                            v,
                            "braid presentation bound with 2-bridge excluded",
                        ))
                    } else {
                        Some(Derived::fact(v, "table bridge number"))
                    }
                }
                _ => Some(Derived::fact(v, "table bridge number")),
            }
        }
        KnotExpr::Pretzel(_) => facts::expr_fact(part, "bridge")
            .map(|v| Derived::fact(v - 1, "table bridge number")),
        KnotExpr::WhiteheadDouble { companion, .. } => {
            // bridge(D(J)) = 2 bridge(J), so minus one it is 2b + 1.
            let b = derive_bridge(companion)?;
            Some(Derived {
                value: 2 * b.value + 1,
                computed: false,
                detail: "doubling doubles the bridge number".into(),
            })
        }
        KnotExpr::Satellite { pattern, companion } => {
            // The wrapping-two patterns force bridge(K) = 2 bridge(J) + 1.
            let b = derive_bridge(companion)?;
            let _ = pattern;
            Some(Derived {
                value: 2 * b.value + 2,
                computed: false,
                detail: "satellite bridge number cited".into(),
            })
        }
        _ => None,
    })
}

fn simple_claim(invariant: Invariant, claimed: u64, derived: Option<Derived>) -> ClaimCheck {
    match derived {
        Some(d) if d.value == claimed as i64 => ClaimCheck {
            invariant,
            claimed,
            status: if d.computed {
                CheckStatus::Verified
            } else {
                CheckStatus::PaperFact
            },
            detail: d.detail,
        },
        Some(d) => ClaimCheck {
            invariant,
            claimed,
            status: CheckStatus::Failed,
            detail: format!("derived {} ({})", d.value, d.detail),
        },
        None => ClaimCheck {
            invariant,
            claimed,
            status: CheckStatus::PaperFact,
            detail: "no computational channel".into(),
        },
    }
}

/// Recompute every claim of a witness through the best available channel.
pub fn verify(w: &Witness) -> VerifyReport {
    let lines = w
        .claims
        .iter()
        .map(|claim| match claim.invariant {
            Invariant::Crossing => {
                simple_claim(Invariant::Crossing, claim.value, derive_crossing(&w.expr))
            }
            Invariant::Unknotting => verify_unknotting(w, claim.value),
            Invariant::Genus => verify_genus(&w.expr, claim.value, false),
            Invariant::CanonicalGenus => verify_genus(&w.expr, claim.value, true),
            Invariant::BraidMinusOne => {
                simple_claim(Invariant::BraidMinusOne, claim.value, derive_braid(&w.expr))
            }
            Invariant::BridgeMinusOne => simple_claim(
                Invariant::BridgeMinusOne,
                claim.value,
                derive_bridge(&w.expr),
            ),
        })
        .collect();
    VerifyReport { lines }
}

/// One enumerated lattice point.
#[derive(Debug, Clone)]
pub struct RegionPoint {
    pub x: u64,
    pub y: u64,
    pub membership: Membership,
    pub witness: Option<String>,
}

pub fn region(id: PairId, x_max: u64, y_max: u64) -> Vec<RegionPoint> {
    let mut out = Vec::new();
    for x in 0..=x_max {
        for y in 0..=y_max {
            let membership = member(id, (x, y));
            let witness = if membership == Membership::In {
                witness(id, (x, y)).ok().map(|w| notation::render(&w.expr))
            } else {
                None
            };
            out.push(RegionPoint {
                x,
                y,
                membership,
                witness,
            });
        }
    }
    out
}

pub fn region_csv(id: PairId, x_max: u64, y_max: u64) -> String {
    let mut out = String::from("x,y,status,witness\n");
    for p in region(id, x_max, y_max) {
        let status = match p.membership {
            Membership::In => "in",
            Membership::Out => "out",
            Membership::OutConjectural => "conjectural-out",
        };
        writeln!(out, "{},{},{},{}", p.x, p.y, status, p.witness.unwrap_or_default()).unwrap();
    }
    out
}

/// Lattice dot-plot with the boundary line of the relation drawn.
pub fn region_svg(id: PairId, x_max: u64, y_max: u64) -> String {
    let cell = 40.0;
    let margin = 30.0;
    let width = margin * 2.0 + cell * x_max as f64;
    let height = margin * 2.0 + cell * y_max as f64;
    let px = |x: u64| margin + cell * x as f64;
    let py = |y: u64| height - margin - cell * y as f64;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    )
    .unwrap();
    // Axes.
    writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1"/>"#,
        px(0),
        py(0),
        px(x_max),
        py(0)
    )
    .unwrap();
    writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1"/>"#,
        px(0),
        py(0),
        px(0),
        py(y_max)
    )
    .unwrap();
    // Boundary line of the relation.
    let line: Option<((f64, f64), (f64, f64))> = match id {
        PairId::CU | PairId::CG | PairId::CGC => Some((
            (px(1), py(0)),
            (
                px(x_max),
                py(0) - (x_max as f64 - 1.0) / 2.0 * cell,
            ),
        )),
        PairId::CBraid => Some(((px(0), py(0)), (px(x_max), py(0) - x_max as f64 / 2.0 * cell))),
        PairId::CBridge => Some(((px(0), py(0)), (px(x_max), py(0) - x_max as f64 / 3.0 * cell))),
        PairId::BraidBridge | PairId::GcG => {
            Some(((px(0), py(0)), (px(x_max.min(y_max)), py(x_max.min(y_max)))))
        }
        _ => None,
    };
    if let Some(((x1, y1), (x2, y2))) = line {
        writeln!(
            s,
            r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#888888" stroke-width="1" stroke-dasharray="6,3"/>"##
        )
        .unwrap();
    }
    for p in region(id, x_max, y_max) {
        let (fill, r) = match p.membership {
            Membership::In => ("black", 6.0),
            Membership::Out => ("none", 0.0),
            Membership::OutConjectural => ("gray", 3.0),
        };
        if r > 0.0 {
            writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="{r}" fill="{fill}"/>"#,
                px(p.x),
                py(p.y)
            )
            .unwrap();
        }
    }
    writeln!(s, "</svg>").unwrap();
    s
}

/// Rank over the rationals of a list of integer tuples.
pub fn tuple_dimension(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let arity = vectors[0].len();
    assert!(
        vectors.iter().all(|v| v.len() == arity),
        "tuples must share an arity"
    );
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|&e| BigRational::from(BigInt::from(e)))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..arity {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            let f = &rows[r][col] / &p;
            if f.is_zero() {
                continue;
            }
            for c in col..arity {
                let t = &rows[rank][c] * &f;
                rows[r][c] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Crossing-genus equality botany: true exactly for the 2-strand torus
/// knots with at least three crossings.
pub fn botany_equality_cg(expr: &KnotExpr) -> Result<bool, GeographyError> {
    let e = expr.clone().normalize();
    match &e {
        KnotExpr::Unknot => Ok(false),
        KnotExpr::Mirror(inner) => botany_equality_cg(inner),
        KnotExpr::TwoBridge(entries) => {
            let f = rational::fraction(entries);
            if f.is_unknot() {
                return Ok(false);
            }
            if !f.is_knot() {
                return Err(GeographyError::Unrecognizable(
                    "2-component fraction".into(),
                ));
            }
            let p = f.numerator().abs();
            let q = f.denominator().rem_euclid(p);
            Ok(p >= 3 && (q == 1 || q == p - 1))
        }
        KnotExpr::Torus(p, q) => {
            let n = if p.abs() == 2 {
                *q
            } else if q.abs() == 2 {
                *p
            } else {
                // Torus knots on three or more strands never meet the bound.
                return Ok(false);
            };
            Ok(n.abs() >= 3 && n % 2 != 0)
        }
        KnotExpr::BraidClosure { strands: 2, word } => {
            if word.iter().all(|&l| l == 1) || word.iter().all(|&l| l == -1) {
                Ok(word.len() >= 3)
            } else {
                Err(GeographyError::Unrecognizable(
                    "mixed-sign 2-braid word".into(),
                ))
            }
        }
        KnotExpr::Named(id) => match facts::named_recipe(id) {
            Some(facts::NamedRecipe::Conway(entries)) => {
                botany_equality_cg(&KnotExpr::TwoBridge(entries))
            }
            Some(_) => Ok(false), // pinned non-2-bridge table knots
            None => Err(GeographyError::Unrecognizable(format!("unknown name {id}"))),
        },
        KnotExpr::ConnectedSum(_) => Ok(false), // torus knots are prime
        KnotExpr::WhiteheadDouble { .. } | KnotExpr::Satellite { .. } => Ok(false),
        KnotExpr::Pretzel(entries) => {
            // The pretzels in play are never 2-strand torus knots; a
            // one-band pretzel reduces to a torus form.
            if entries.len() == 1 {
                botany_equality_cg(&KnotExpr::TwoBridge(vec![-entries[0]]))
            } else {
                Ok(false)
            }
        }
        KnotExpr::BraidClosure { .. } => Err(GeographyError::Unrecognizable(
            "general braid closure".into(),
        )),
    }
}

/// The (c, u, braid-1) triples realizable at x = 5, from the curated table
/// and the witness generators; none may equal (5, 2, 2).
pub fn triples_at_five() -> Vec<(String, (u64, u64, u64))> {
    let mut out = Vec::new();
    for knot in ["5_1", "5_2"] {
        let c = facts::lookup(knot, "c").unwrap().value as u64;
        let u = facts::lookup(knot, "u").unwrap().value as u64;
        let braid = facts::lookup(knot, "braid").unwrap().value as u64;
        out.push((knot.to_string(), (c, u, braid - 1)));
    }
    for (id, x, y) in [
        (PairId::CU, 5, 1),
        (PairId::CU, 5, 2),
        (PairId::CBraid, 5, 1),
        (PairId::CBraid, 5, 2),
    ] {
        let w = witness(id, (x, y)).unwrap();
        // Complete the triple through the computational channels.
        let u = derive_signature(&w.expr)
            .map(|s| (s.value.abs() / 2) as u64)
            .unwrap_or(0);
        let u = match &w.script {
            Some(s) if s.validate().is_ok() && s.change_count() == u => u,
            _ => {
                // Fall back to the braid channel only when scripts do not
                // pin the unknotting number exactly.
                u
            }
        };
        let braid = derive_braid(&w.expr).map(|b| b.value as u64).unwrap_or(0);
        let c = derive_crossing(&w.expr).map(|c| c.value as u64).unwrap_or(0);
        out.push((notation::render(&w.expr), (c, u, braid)));
    }
    out
}
