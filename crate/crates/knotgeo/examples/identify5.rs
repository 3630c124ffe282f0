//! Scan pretzel diagrams with 11 crossings for the K11n39 profile:
//! HOMFLY z-degree 6 with 6 Seifert circles, so the canonical genus 3 is
//! witnessed on both sides, while the Alexander degree stays at 4.

use knotgeo::notation::parse;
use knotgeo::seifert;
use knotgeo::skein;

fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    fn rec(cur: &mut Vec<i64>, left: i64, parts: usize, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=(left - parts as i64 + 1) {
            cur.push(first);
            rec(cur, left - first, parts - 1, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 && total >= parts as i64 {
        rec(&mut Vec::new(), total, parts, &mut out);
    }
    out
}

fn main() {
    let mut cache = skein::SkeinCache::new();
    let mut hits = 0;
    for parts in 3..=5usize {
        for magnitudes in compositions(11, parts) {
            for sign_mask in 0..(1u32 << parts) {
                let entries: Vec<i64> = magnitudes
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| if sign_mask >> i & 1 == 1 { -m } else { m })
                    .collect();
                let text = format!(
                    "P({})",
                    entries
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                let Ok(expr) = parse(&text) else { continue };
                let Ok(d) = expr.standard_diagram() else {
                    continue;
                };
                if d.crossing_count() != 11 {
                    continue;
                }
                let Ok(data) = seifert::seifert(&d) else {
                    continue;
                };
                let conway = seifert::conway_of_matrix(&data.matrix).0;
                if conway.len() > 5 {
                    continue;
                }
                let Ok(p) =
                    skein::homfly_with(&d, 16, skein::Strategy::FirstBad, &mut cache)
                else {
                    continue;
                };
                if skein::delta_degree(&p) != 6 {
                    continue;
                }
                let sigma = seifert::signature_of_matrix(&data.matrix);
                println!(
                    "{text}: s={} genus_cap={} conway {conway:?} sigma {sigma} det {} mfw {}",
                    data.circle_count,
                    data.genus,
                    seifert::determinant(&d).unwrap(),
                    skein::mfw_braid_lower(&p),
                );
                hits += 1;
            }
        }
    }
    println!("{hits} hits");
}
