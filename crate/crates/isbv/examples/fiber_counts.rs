//! Finite-field fiber counts against closed forms in p.
//!
//! The fibers of the self-product model are products of plane conics, so
//! their rational point counts factor: a smooth conic has p+1 points, a
//! split singular conic 2p+1. The example enumerates every fiber over F_5
//! and compares against the square of the one-conic count.
//!
//! ```sh
//! cargo run --release --example fiber_counts
//! ```

use isbv::coeff::Domain;
use isbv::ffenum::{enumerate_points, Ambient};
use isbv::models::builtin_models;
use isbv::parse::parse_poly;
use isbv::vars::{BlockKind, VariableSet};
use isbv::verify::{check_fiber_counts, CheckConfig};

fn main() {
    let p = 5;
    let registry = builtin_models();
    let model = registry.get("ii-ii").expect("builtin model");
    let geometry = model.geometry();
    let ambient = Ambient::of_model(geometry);

    // the single-conic oracle
    let conic_vars = VariableSet::new(&[
        ("base", BlockKind::Base, &["x", "y"]),
        ("z", BlockKind::Projective, &["z0", "z1", "z2"]),
    ])
    .unwrap();
    let conic = parse_poly("x*z0^2 + y*z1^2 - z2^2", &conic_vars, Domain::Rational).unwrap();
    let conic_ambient = Ambient {
        nvars: 5,
        base: vec![0, 1],
        blocks: vec![vec![2, 3, 4]],
    };

    println!(
        "fiber counts of the self-product over F_{} (conic count squared):",
        p
    );
    let mut all_match = true;
    for x in 0..p {
        for y in 0..p {
            let base = [x, y];
            let conic_count = enumerate_points(&[conic.clone()], &conic_ambient, p, Some(&base))
                .unwrap()
                .points_on_variety;
            let product_count = enumerate_points(&geometry.equations, &ambient, p, Some(&base))
                .unwrap()
                .points_on_variety;
            let ok = product_count == conic_count * conic_count;
            all_match &= ok;
            if (x, y) == (1, 1) || (x, y) == (1, 0) || !ok {
                println!(
                    "  base ({},{}): conic {} -> product {}  {}",
                    x,
                    y,
                    conic_count,
                    product_count,
                    if ok { "ok" } else { "MISMATCH" }
                );
            }
        }
    }
    println!("all 25 base points match: {}", all_match);

    let config = CheckConfig {
        primes: vec![p],
        ..CheckConfig::default()
    };
    let result = check_fiber_counts(model, &config);
    println!(
        "closed-form claims ((p+1)^2 at (1,1), (2p+1)^2 at (1,0)): {}",
        result.status.as_str()
    );
}
