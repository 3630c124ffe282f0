use knotgeo::diagram::Diagram;
use knotgeo::notation::parse;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "C(2,2)".into());
    let d: Diagram = parse(&text).unwrap().standard_diagram().unwrap();
    println!("crossings ({}):", d.crossing_count());
    for (i, c) in d.crossings().iter().enumerate() {
        println!("  {i}: edges {:?} sign {}", c.edges, c.sign);
    }
    println!("faces: {}", d.faces().len());
    match knotgeo::seifert::seifert(&d) {
        Ok(s) => {
            println!("s={} g={} V={:?}", s.circle_count, s.genus, s.matrix);
            println!("graph: {:?}", s.graph_edges);
            println!("circle_of_edge: {:?}", s.circle_assignment);
        }
        Err(e) => println!("seifert error: {e}"),
    }
}
