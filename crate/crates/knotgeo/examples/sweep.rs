use knotgeo::notation::parse;
use knotgeo::seifert;

fn sig(text: &str) -> i64 {
    let d = parse(text).unwrap().standard_diagram().unwrap();
    seifert::signature(&d).unwrap()
}

fn main() {
    // sigma(C(1,2k)) = 2k
    for k in 1..=6 {
        let s = sig(&format!("C(1,{})", 2 * k));
        assert_eq!(s, 2 * k, "C(1,2k) k={k}");
    }
    println!("sigma(C(1,2k)) = 2k: ok");
    // sigma(C(2k-3,1,2)) = 2k-4
    for k in 4..=8 {
        let s = sig(&format!("C({},1,2)", 2 * k - 3));
        assert_eq!(s, 2 * k - 4, "k={k}");
    }
    println!("sigma(C(2k-3,1,2)) = 2k-4: ok");
    // sigma(P(2p+1,-2,2q+1)) = -2i (i<4) / -2i+2 (i>=4), i = p+q+1
    for p in 1..=5i64 {
        for q in 1..=5i64 {
            let i = p + q + 1;
            if i > 6 { continue; }
            let s = sig(&format!("P({},-2,{})", 2 * p + 1, 2 * q + 1));
            let expected = if i < 4 { -2 * i } else { -2 * i + 2 };
            assert_eq!(s, expected, "p={p} q={q} i={i}");
        }
    }
    println!("sigma(P(2p+1,-2,2q+1)) two-case formula: ok");
    // sigma(C(2k-2i+1,2i)) = 2i (derived in the unknotting argument)
    for k in 1..=6i64 {
        for i in 1..=k {
            let s = sig(&format!("C({},{})", 2 * k - 2 * i + 1, 2 * i));
            assert_eq!(s, 2 * i, "k={k} i={i}");
        }
    }
    println!("sigma(C(2k-2i+1,2i)) = 2i: ok");
    // dets of all-positive 2-bridge with entry sum <= 11
    let mut checked = 0;
    for entries in all_positive_lists(11) {
        let f = knotgeo::rational::fraction(&entries);
        if !f.is_knot() { continue; }
        let text = format!("C({})", entries.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","));
        let d = parse(&text).unwrap().standard_diagram().unwrap();
        let det = seifert::determinant(&d).unwrap();
        assert_eq!(det, f.numerator().unsigned_abs(), "{text}");
        checked += 1;
    }
    println!("dets of {checked} all-positive 2-bridge forms match fractions: ok");
}

fn all_positive_lists(max_sum: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn rec(cur: &mut Vec<i64>, remaining: i64, out: &mut Vec<Vec<i64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for next in 1..=remaining {
            cur.push(next);
            rec(cur, remaining - next, out);
            cur.pop();
        }
    }
    rec(&mut Vec::new(), max_sum, &mut out);
    out
}
