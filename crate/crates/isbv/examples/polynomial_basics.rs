//! A tour of the exact-algebra kernel: parsing, arithmetic, substitution,
//! Groebner bases, elimination, saturation, and tangent cones.
//!
//! ```sh
//! cargo run --example polynomial_basics
//! ```

use isbv::coeff::Domain;
use isbv::groebner::{buchberger, normal_form, tangent_cone, Budget, Ideal};
use isbv::order::MonomialOrder;
use isbv::parse::parse_poly;
use isbv::vars::VariableSet;

fn main() {
    let q = Domain::Rational;
    let vs = VariableSet::simple(&["x", "y", "z"]);

    // parsing and exact arithmetic
    let f = parse_poly("(x + y)*(x - y)", &vs, q).unwrap();
    println!("(x+y)(x-y) = {}", f.display_text());

    // a Groebner basis and a normal form
    let gens = vec![
        parse_poly("x^2 + y^2 + z^2 - 1", &vs, q).unwrap(),
        parse_poly("x - y*z", &vs, q).unwrap(),
    ];
    let order = MonomialOrder::GrevLex;
    let gb = buchberger(&gens, &order, &Budget::default()).unwrap();
    println!("basis of the intersection:");
    for g in &gb {
        println!("  {}", g.display_text());
    }
    let probe = parse_poly("x^3 + y + 1", &vs, q).unwrap();
    println!(
        "NF(x^3 + y + 1) = {}",
        normal_form(&probe, &gb, &order).display_text()
    );

    // implicitization by elimination: the twisted cubic
    let tvs = VariableSet::simple(&["t", "x", "y", "z"]);
    let curve = Ideal::new(
        &tvs,
        q,
        vec![
            parse_poly("x - t", &tvs, q).unwrap(),
            parse_poly("y - t^2", &tvs, q).unwrap(),
            parse_poly("z - t^3", &tvs, q).unwrap(),
        ],
    );
    let implicit = curve.eliminate(&[0], &Budget::default()).unwrap();
    println!("twisted cubic equations:");
    for g in implicit.generators() {
        println!("  {}", g.display_text());
    }

    // saturation removes a component
    let xy = Ideal::new(&vs, q, vec![parse_poly("x*y", &vs, q).unwrap()]);
    let x = parse_poly("x", &vs, q).unwrap();
    let sat = xy.saturate(&x, &Budget::default()).unwrap();
    println!(
        "(xy) : x^inf = ({})",
        sat.generators()
            .iter()
            .map(|g| g.display_text())
            .collect::<Vec<_>>()
            .join(", ")
    );

    // the tangent cone sees the lowest-degree geometry at a point
    let node = parse_poly("y^2 - x^2 - x^3", &vs, q).unwrap();
    let cone = tangent_cone(&[node], &[], &Budget::default()).unwrap();
    println!(
        "tangent cone of the nodal cubic at the origin: {}",
        cone[0].display_text()
    );
}
