use knotgeo::notation::parse;
use knotgeo::skein;
use std::time::Instant;

fn main() {
    for text in ["D(0_1)", "D(0_1; -)", "D(C(2,-1))", "D(C(2,-1); -)"] {
        let d = parse(text).unwrap().standard_diagram().unwrap();
        let p = skein::homfly(&d, 24).unwrap();
        println!("{text}: c={} unknot={}", d.crossing_count(), p.is_one());
    }
    for text in ["D(C(3))", "D(C(3); -)", "D(T(2,3))"] {
        let d = parse(text).unwrap().standard_diagram().unwrap();
        let t0 = Instant::now();
        let p = skein::homfly(&d, 24).unwrap();
        println!(
            "{text}: c={} delta={} ({:?})",
            d.crossing_count(),
            skein::delta_degree(&p),
            t0.elapsed()
        );
    }
}
