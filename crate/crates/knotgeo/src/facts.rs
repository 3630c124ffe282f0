//! Curated, citation-tagged invariant values and pinned constructions for
//! named table knots.
//!
//! Facts are data, never silently used where computation exists: the
//! verification machinery always prefers a computed channel and falls back
//! to this table with a `PaperFact`-style provenance mark. [`crosscheck`]
//! recomputes every fact that has a computational channel (signature, a2,
//! HOMFLY z-degree within the skein budget, alternating crossing counts,
//! 2-bridge determinants) and reports mismatches; the test suite fails on
//! any.
//!
//! The table ships as a versioned structured text file embedded at build
//! time; see `facts.txt` for the schema.

use crate::diagram::Diagram;
use crate::notation::{self, KnotExpr, NotationError};
use std::collections::HashMap;
use std::sync::OnceLock;

/// One curated record: knot id (rendered expression), invariant name,
/// integer value, literature source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactRecord {
    pub knot: String,
    pub invariant: String,
    pub value: i64,
    pub source: String,
}

const FACTS_TEXT: &str = include_str!("facts.txt");

fn table() -> &'static Vec<FactRecord> {
    static TABLE: OnceLock<Vec<FactRecord>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::new();
        for (lineno, line) in FACTS_TEXT.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split('|').map(|p| p.trim()).collect();
            assert_eq!(
                parts.len(),
                4,
                "facts.txt line {}: expected knot|invariant|value|source",
                lineno + 1
            );
            out.push(FactRecord {
                knot: parts[0].to_string(),
                invariant: parts[1].to_string(),
                value: parts[2].parse().unwrap_or_else(|_| {
                    panic!("facts.txt line {}: bad value {}", lineno + 1, parts[2])
                }),
                source: parts[3].to_string(),
            });
        }
        out
    })
}

/// Exact record lookup; `knot` is the rendered normalized expression.
pub fn lookup(knot: &str, invariant: &str) -> Option<&'static FactRecord> {
    table()
        .iter()
        .find(|r| r.knot == knot && r.invariant == invariant)
}

pub fn all_records() -> &'static [FactRecord] {
    table()
}

/// Invariant value of an expression from the table, normalizing mirrors:
/// mirror-invariant quantities strip `*`, the signature flips sign.
pub fn expr_fact(expr: &KnotExpr, invariant: &str) -> Option<i64> {
    match expr {
        KnotExpr::Mirror(inner) => {
            let v = expr_fact(inner, invariant)?;
            Some(if invariant == "sigma" { -v } else { v })
        }
        e => lookup(&notation::render(e), invariant).map(|r| r.value),
    }
}

/// Pinned construction of a named table knot.
#[derive(Debug, Clone)]
pub enum NamedRecipe {
    Conway(Vec<i64>),
    Braid(usize, Vec<i64>),
    Pretzel(Vec<i64>),
}

impl NamedRecipe {
    pub fn expr(&self) -> KnotExpr {
        match self {
            NamedRecipe::Conway(entries) => KnotExpr::TwoBridge(entries.clone()),
            NamedRecipe::Braid(strands, word) => KnotExpr::BraidClosure {
                strands: *strands,
                word: word.clone(),
            },
            NamedRecipe::Pretzel(entries) => KnotExpr::Pretzel(entries.clone()),
        }
    }

    pub fn diagram(&self) -> Result<Diagram, NotationError> {
        self.expr().standard_diagram()
    }
}

/// Constructions pinned for the table knots the geography module needs.
///
/// The 2-bridge ones are their Conway notations; chirality follows the
/// convention that the plain name carries positive signature (so the
/// starred mirrors used by the bridge-number witnesses have sigma = -2).
///
/// The non-2-bridge ones were identified by exhaustive search over small
/// braid closures and pretzels against their invariant profiles, and the
/// profile facts are re-verified computationally on the pinned diagrams:
///
/// * 8_21: determinant 15, sigma +-2, Conway 1 - z^4, unknotted by one
///   crossing change, and excluded from the 2-bridge determinant-15
///   Alexander list, so its bridge number is exactly 3.
/// * 10_133: sigma +-2, unknotted by one crossing change, not 2-bridge
///   (bridge number 3 from the 3-braid presentation).
/// * K11n39: HOMFLY z-degree 6 on 11 crossings with Alexander degree 4
///   (the Morton bound 3 then exceeds the Seifert-genus bound 2).
pub fn named_recipe(id: &str) -> Option<NamedRecipe> {
    let recipe = match id {
        "3_1" => NamedRecipe::Conway(vec![3]),
        "4_1" => NamedRecipe::Conway(vec![2, 2]),
        "5_1" => NamedRecipe::Conway(vec![5]),
        "5_2" => NamedRecipe::Conway(vec![2, 3]),
        "6_1" => NamedRecipe::Conway(vec![4, 2]),
        "6_2" => NamedRecipe::Conway(vec![3, 1, 2]),
        "6_3" => NamedRecipe::Conway(vec![2, 1, 1, 2]),
        "7_3" => NamedRecipe::Conway(vec![4, 3]),
        "8_21" => NamedRecipe::Braid(3, vec![-2, -2, 1, 1, -2, -1, -1, -1]),
        "10_133" => NamedRecipe::Braid(3, vec![2, -1, -1, -2, 1, -2, 1, -2, -1, -1]),
        "K11n39" => NamedRecipe::Pretzel(vec![-2, -3, 3, 3]),
        _ => return None,
    };
    Some(recipe)
}

/// Outcome of recomputing one fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    /// Recomputed exactly.
    Match,
    /// Consistent with every available bound, exact value cited.
    Consistent,
    /// No computational channel.
    Cited,
    /// Computation contradicts the table.
    Mismatch(String),
}

#[derive(Debug, Clone)]
pub struct CrosscheckLine {
    pub knot: String,
    pub invariant: String,
    pub value: i64,
    pub outcome: CheckOutcome,
}

/// Recompute every curated fact with an available channel. Any
/// [`CheckOutcome::Mismatch`] fails the consistency gate in the test
/// suites.
pub fn crosscheck() -> Vec<CrosscheckLine> {
    use crate::{seifert, skein};
    let mut out = Vec::new();
    for rec in all_records() {
        let outcome = (|| -> CheckOutcome {
            let Some(recipe) = recipe_for(&rec.knot) else {
                return CheckOutcome::Cited;
            };
            let Ok(d) = recipe.diagram() else {
                return CheckOutcome::Mismatch("recipe fails to build".into());
            };
            let data = match seifert::seifert(&d) {
                Ok(s) => s,
                Err(e) => return CheckOutcome::Mismatch(format!("{e}")),
            };
            let conway = seifert::conway_of_matrix(&data.matrix);
            let sigma = seifert::signature_of_matrix(&data.matrix);
            let genus_cap = data.genus as i64;
            let homfly = skein::homfly(&d, skein::DEFAULT_BUDGET).ok();
            match rec.invariant.as_str() {
                "sigma" => check_eq(sigma, rec.value),
                "c" => {
                    if d.is_alternating() && d.is_reduced() {
                        check_eq(d.crossing_count() as i64, rec.value)
                    } else if (d.crossing_count() as i64) >= rec.value {
                        CheckOutcome::Consistent
                    } else {
                        CheckOutcome::Mismatch(format!(
                            "pinned diagram has only {} crossings",
                            d.crossing_count()
                        ))
                    }
                }
                "u" => {
                    let lower = sigma.abs() / 2;
                    if lower > rec.value {
                        return CheckOutcome::Mismatch(format!(
                            "signature forces u >= {lower}"
                        ));
                    }
                    if rec.value == 0 {
                        return check_eq(conway.0.len() as i64, 1);
                    }
                    if conway == seifert::ConwayPoly::one() && rec.value > 0 {
                        // Cannot certify knottedness from Conway alone.
                        return CheckOutcome::Consistent;
                    }
                    if rec.value == 1 {
                        // u = 1: find an unknotting crossing, certified by
                        // the skein engine.
                        let found = (0..d.crossing_count()).any(|x| {
                            d.crossing_change(x)
                                .ok()
                                .and_then(|c| skein::homfly(&c, 18).ok())
                                .is_some_and(|p| p.is_one())
                        });
                        if found {
                            CheckOutcome::Match
                        } else {
                            CheckOutcome::Mismatch("no unknotting crossing found".into())
                        }
                    } else if lower == rec.value {
                        CheckOutcome::Match
                    } else {
                        CheckOutcome::Consistent
                    }
                }
                "g" => {
                    let lower = (conway.0.len() as i64 - 1) / 2;
                    if let Some(exact) = seifert::alternating_genus(&d) {
                        check_eq(exact as i64, rec.value)
                    } else if lower <= rec.value && rec.value <= genus_cap {
                        CheckOutcome::Consistent
                    } else {
                        CheckOutcome::Mismatch(format!(
                            "genus must lie in [{lower}, {genus_cap}]"
                        ))
                    }
                }
                "gc" => {
                    let morton = homfly
                        .as_ref()
                        .map(|p| skein::morton_genus_lower(p) as i64);
                    if let Some(exact) = seifert::alternating_genus(&d) {
                        return check_eq(exact as i64, rec.value);
                    }
                    match morton {
                        Some(lo) if lo > rec.value || rec.value > genus_cap => {
                            CheckOutcome::Mismatch(format!(
                                "canonical genus must lie in [{lo}, {genus_cap}]"
                            ))
                        }
                        Some(lo) if lo == rec.value => CheckOutcome::Match,
                        _ => CheckOutcome::Consistent,
                    }
                }
                "delta_degree" => match homfly {
                    Some(p) => check_eq(skein::delta_degree(&p) as i64, rec.value),
                    None => CheckOutcome::Cited,
                },
                "bridge" => match &recipe {
                    NamedRecipe::Conway(entries) => {
                        if crate::rational::fraction(entries).is_unknot() {
                            check_eq(1, rec.value)
                        } else {
                            check_eq(2, rec.value)
                        }
                    }
                    _ => {
                        // bridge <= braid <= strands of the presentation;
                        // 2-bridge knots are excluded by their Alexander
                        // polynomials at this determinant.
                        let det = seifert::determinant(&d).unwrap() as i64;
                        let two_bridge = two_bridge_conways(det).contains(&conway.0);
                        let strands = presentation_strands(&recipe, &d);
                        if two_bridge {
                            CheckOutcome::Consistent
                        } else if rec.value == 3 && strands == 3 {
                            CheckOutcome::Match
                        } else if 3 <= rec.value && rec.value <= strands as i64 {
                            CheckOutcome::Consistent
                        } else {
                            CheckOutcome::Mismatch(format!(
                                "bridge must lie in [3, {strands}]"
                            ))
                        }
                    }
                },
                "braid" => {
                    let mfw = homfly
                        .as_ref()
                        .map(|p| skein::mfw_braid_lower(p) as i64);
                    let family = match &recipe {
                        NamedRecipe::Conway(entries) => {
                            crate::rational::braid_index_family(entries).ok()
                        }
                        _ => None,
                    };
                    if let Some(f) = family {
                        return check_eq(f as i64, rec.value);
                    }
                    match mfw {
                        Some(lo) if lo == rec.value => CheckOutcome::Match,
                        Some(lo) if lo > rec.value => CheckOutcome::Mismatch(format!(
                            "MFW forces braid >= {lo}"
                        )),
                        _ => CheckOutcome::Consistent,
                    }
                }
                "u_delta" => {
                    let lower = conway.coeff(2).abs();
                    if lower > rec.value {
                        CheckOutcome::Mismatch(format!("|a2| forces u_delta >= {lower}"))
                    } else if lower == rec.value {
                        CheckOutcome::Match
                    } else {
                        CheckOutcome::Consistent
                    }
                }
                _ => CheckOutcome::Cited,
            }
        })();
        out.push(CrosscheckLine {
            knot: rec.knot.clone(),
            invariant: rec.invariant.clone(),
            value: rec.value,
            outcome,
        });
    }
    out
}

fn check_eq(computed: i64, stated: i64) -> CheckOutcome {
    if computed == stated {
        CheckOutcome::Match
    } else {
        CheckOutcome::Mismatch(format!("computed {computed}, stated {stated}"))
    }
}

fn recipe_for(knot: &str) -> Option<NamedRecipe> {
    if knot == "0_1" {
        return Some(NamedRecipe::Conway(vec![1]));
    }
    if let Some(r) = named_recipe(knot) {
        return Some(r);
    }
    // Pretzel ids like P(3,3,3).
    if let Ok(KnotExpr::Pretzel(entries)) = notation::parse(knot) {
        return Some(NamedRecipe::Pretzel(entries));
    }
    None
}

fn presentation_strands(recipe: &NamedRecipe, d: &Diagram) -> usize {
    match recipe {
        NamedRecipe::Braid(strands, _) => *strands,
        _ => d.crossing_count(), // no braid presentation pinned
    }
}

/// Conway polynomials of every 2-bridge knot with the given determinant.
pub fn two_bridge_conways(det: i64) -> Vec<Vec<i64>> {
    use crate::rational;
    let mut out = Vec::new();
    if det < 0 {
        return out;
    }
    for q in 1..det {
        if gcd(det, q) != 1 {
            continue;
        }
        let entries = rational::positive_expansion(det, q);
        let f = rational::fraction(&entries);
        if !f.is_knot() {
            continue;
        }
        let Ok(d) = (KnotExpr::TwoBridge(entries).standard_diagram()) else {
            continue;
        };
        let c = crate::seifert::conway_polynomial(&d).unwrap().0;
        out.push(c);
        // Mirrors share the Conway polynomial, so one chirality suffices.
    }
    out.sort();
    out.dedup();
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crosscheck_gate_passes() {
        let lines = crosscheck();
        let mismatches: Vec<_> = lines
            .iter()
            .filter(|l| matches!(l.outcome, CheckOutcome::Mismatch(_)))
            .collect();
        assert!(mismatches.is_empty(), "facts mismatches: {mismatches:?}");
        // Specific channels called out by the gate: sigma of the starred
        // eight-crossing bridge witness, and the trefoil HOMFLY degree.
        let m8 = notation::parse("8_21*").unwrap();
        assert_eq!(
            crate::seifert::signature(&m8.standard_diagram().unwrap()).unwrap(),
            -2
        );
        let t = notation::parse("3_1*").unwrap();
        let p = crate::skein::homfly(&t.standard_diagram().unwrap(), 16).unwrap();
        assert_eq!(crate::skein::delta_degree(&p), 2);
    }

    #[test]
    fn pinned_identifications_hold() {
        use crate::{seifert, skein};
        // 8_21: determinant 15, Conway 1 - z^4, sigma +2 on the base
        // chirality, unknotting number one, bridge number three.
        let d = named_recipe("8_21").unwrap().diagram().unwrap();
        assert_eq!(seifert::determinant(&d).unwrap(), 15);
        assert_eq!(seifert::signature(&d).unwrap(), 2);
        assert_eq!(seifert::conway_polynomial(&d).unwrap().0, vec![1, 0, 0, 0, -1]);
        assert!(!two_bridge_conways(15).contains(&vec![1, 0, 0, 0, -1]));
        // 10_133: sigma +2, 10 crossings, not 2-bridge.
        let d = named_recipe("10_133").unwrap().diagram().unwrap();
        assert_eq!(d.crossing_count(), 10);
        assert_eq!(seifert::signature(&d).unwrap(), 2);
        let conway = seifert::conway_polynomial(&d).unwrap().0;
        let det = seifert::determinant(&d).unwrap() as i64;
        assert!(!two_bridge_conways(det).contains(&conway));
        // K11n39: 11 crossings, HOMFLY z-degree 6, Alexander degree 4.
        let d = named_recipe("K11n39").unwrap().diagram().unwrap();
        assert_eq!(d.crossing_count(), 11);
        let p = skein::homfly(&d, 16).unwrap();
        assert_eq!(skein::delta_degree(&p), 6);
        assert_eq!(seifert::conway_polynomial(&d).unwrap().0.len(), 5);
    }

    #[test]
    fn table_parses_and_looks_up() {
        assert_eq!(lookup("6_1", "u").map(|r| r.value), Some(1));
        assert_eq!(lookup("K11n39", "delta_degree").map(|r| r.value), Some(6));
        assert_eq!(lookup("0_1", "u").map(|r| r.value), Some(0));
        assert!(lookup("3_1", "nonsense").is_none());
    }

    #[test]
    fn mirror_normalization_in_expr_fact() {
        let m3 = notation::parse("3_1*").unwrap();
        assert_eq!(expr_fact(&m3, "sigma"), Some(-2));
        assert_eq!(expr_fact(&m3, "u"), Some(1));
    }

    #[test]
    fn named_recipes_build_knots() {
        for id in ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_3"] {
            let d = named_recipe(id).unwrap().diagram().unwrap();
            assert!(d.is_knot(), "{id}");
        }
    }
}
