//! Fiber Hilbert functions certify flatness degree by degree: the values
//! h(1), h(2), h(3) = (9, 25, 49) are the same over the function field of
//! the base and at every finite-field base point.
//!
//! ```sh
//! cargo run --release --example flatness
//! ```

use isbv::coeff::Domain;
use isbv::groebner::Budget;
use isbv::models::builtin_models;
use isbv::verify::{check_flatness, fiber_hilbert, generic_hilbert, CheckConfig};

fn main() {
    let registry = builtin_models();
    let config = CheckConfig {
        primes: vec![5],
        ..CheckConfig::default()
    };
    for name in ["i-ii", "iii-ii"] {
        let model = registry.get(name).expect("builtin model");
        let generic = generic_hilbert(model, 4, Domain::Rational, &Budget::default()).unwrap();
        println!("{}: generic fiber h(1..4) = {:?}", name, generic);

        // the most degenerate fiber, over the origin of the true base
        let origin = vec![Domain::Rational.zero(), Domain::Rational.zero()];
        let at_origin = fiber_hilbert(model, &origin, 4).unwrap();
        println!("  fiber over (0,0):     h(1..4) = {:?}", at_origin);

        let result = check_flatness(model, &config);
        println!(
            "  flatness over all F_5 base points: {} ({} points checked)",
            result.status.as_str(),
            result.witness["points_checked"]
        );
    }
}
