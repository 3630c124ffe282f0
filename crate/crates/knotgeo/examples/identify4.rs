//! Parallel scan of 4-braid length-11 closures for the K11n39 profile:
//! 11 crossings and HOMFLY z-degree 6 (canonical genus 3 via Morton)
//! on a knot whose Alexander degree stays at most 4.

use knotgeo::notation::parse;
use knotgeo::seifert;
use knotgeo::skein;
use rayon::prelude::*;
use std::collections::BTreeMap;

fn main() {
    let letters = [1i64, -1, 2, -2, 3, -3];
    let len = 11usize;
    let total: u64 = 6u64.pow(len as u32);
    let chunks: Vec<u64> = (0..4096).map(|k| k * (total / 4096)).collect();
    let found: Vec<(Vec<i64>, Vec<i64>, i64, u64, u32)> = chunks
        .par_iter()
        .flat_map(|&start| {
            let end = (start + total / 4096).min(total);
            let mut out = Vec::new();
            let mut cache = skein::SkeinCache::new();
            let mut word = vec![0i64; len];
            for idx in start..end {
                let mut k = idx;
                for slot in word.iter_mut() {
                    *slot = letters[(k % 6) as usize];
                    k /= 6;
                }
                // Least-rotation dedupe.
                if !is_least_rotation(&word) {
                    continue;
                }
                // Quick permutation check: the closure is a knot iff the
                // word's permutation is a 4-cycle.
                if !is_knot_perm(&word) {
                    continue;
                }
                let text = format!(
                    "B[4;{}]",
                    word.iter()
                        .map(|l| l.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                let Ok(d) = parse(&text).unwrap().standard_diagram() else {
                    continue;
                };
                let conway = seifert::conway_polynomial(&d).unwrap().0;
                if conway.len() > 5 {
                    continue; // Alexander degree beyond genus 2
                }
                let Ok(p) = skein::homfly_with(&d, 16, skein::Strategy::FirstBad, &mut cache)
                else {
                    continue;
                };
                if skein::delta_degree(&p) != 6 {
                    continue;
                }
                let sigma = seifert::signature(&d).unwrap();
                let det = seifert::determinant(&d).unwrap();
                out.push((
                    word.clone(),
                    conway,
                    sigma,
                    det,
                    skein::mfw_braid_lower(&p),
                ));
            }
            out
        })
        .collect();
    let mut classes: BTreeMap<Vec<i64>, (Vec<i64>, i64, u64, u32)> = BTreeMap::new();
    for (word, conway, sigma, det, mfw) in found {
        classes.entry(conway).or_insert((word, sigma, det, mfw));
    }
    println!("{} Conway classes with delta 6:", classes.len());
    for (conway, (word, sigma, det, mfw)) in classes.iter().take(30) {
        println!("word {word:?} conway {conway:?} sigma {sigma} det {det} mfw {mfw}");
    }
}

fn is_knot_perm(word: &[i64]) -> bool {
    let mut perm = [0usize, 1, 2, 3];
    for &l in word {
        let j = l.unsigned_abs() as usize - 1;
        perm.swap(j, j + 1);
    }
    // One 4-cycle: order of the permutation is 4 and no fixed point.
    let mut seen = [false; 4];
    let mut cur = 0;
    let mut steps = 0;
    loop {
        seen[cur] = true;
        cur = perm[cur];
        steps += 1;
        if cur == 0 {
            break;
        }
    }
    steps == 4 && seen.iter().all(|&s| s)
}

fn is_least_rotation(word: &[i64]) -> bool {
    let n = word.len();
    (0..n).all(|r| {
        let rotated: Vec<i64> = (0..n).map(|i| word[(i + r) % n]).collect();
        word <= rotated.as_slice()
    })
}
