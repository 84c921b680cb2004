//! Certifies that the coordinate rings of the P^8 models are free of rank 8
//! over their five-variable polynomial subrings, with the stored monomial
//! bases.
//!
//! The symbolic half reduces every product (variable x basis element) over
//! the subring fraction field and checks the coefficients are honest
//! polynomials; the finite-field half exhaustively specializes the subring
//! over F_3 (243 points) and counts the staircase of each specialized
//! quotient.
//!
//! ```sh
//! cargo run --release --example freeness
//! ```

use isbv::ffenum::{specialization_scan, SpecMode, SpecializationTask};
use isbv::groebner::Budget;
use isbv::models::{builtin_models, freeness_setup};
use isbv::verify::{check_freeness, CheckConfig};

fn main() {
    let registry = builtin_models();
    let config = CheckConfig {
        primes: vec![3],
        ..CheckConfig::default()
    };
    for name in ["i-ii", "iii-ii"] {
        let model = registry.get(name).expect("builtin model");
        let claim = model.freeness.as_ref().unwrap();
        println!(
            "{}: free over k[{}] with basis {{{}}}?",
            name,
            claim.subring.join(","),
            claim.basis.join(", ")
        );
        let result = check_freeness(model, &config);
        println!("  -> {}", result.status.as_str());

        // the specialization scan, driven directly
        let setup = freeness_setup(model).unwrap();
        let task = SpecializationTask {
            vars: setup.vars.clone(),
            gens: setup.gens.clone(),
            mains: setup.mains.clone(),
            params: setup.params.clone(),
            expected: setup.expected,
        };
        let scan = specialization_scan(&task, 3, SpecMode::Exhaustive, &Budget::default()).unwrap();
        let all_expected = scan.iter().all(|(_, d)| *d == Some(setup.expected));
        println!(
            "  F_3 specializations: {} points, all dimension {}: {}",
            scan.len(),
            setup.expected,
            all_expected
        );
    }
}
