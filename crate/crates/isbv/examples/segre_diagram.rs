//! The commuting-square identity: composing the conic parametrization
//! (t, u:v, u':v') -> (t*u^2 : u*v : t*v^2, t*u'^2 : u'*v' : t*v'^2)
//! with the Segre embedding P^2 x P^2 -> P^8 reproduces the direct
//! nine-component map exactly, and the conic equation z0*z2 - f*z1^2 pulls
//! back to zero.
//!
//! ```sh
//! cargo run --example segre_diagram
//! ```

use isbv::models::builtin_models;
use isbv::verify::{check_identities, CheckConfig};

fn main() {
    let registry = builtin_models();
    let model = registry.get("segre-d2").expect("builtin model");
    let claim = &model.identities[0];
    println!("inner map images: {}", claim.inner.join(", "));
    println!("direct map:       {}", claim.rhs.join(", "));
    let result = check_identities(model, &CheckConfig::default());
    println!(
        "componentwise equality up to scale `{}`: {}",
        claim.scale,
        result.status.as_str()
    );
    for pb in result.witness["identities"][0]["pullbacks"]
        .as_array()
        .unwrap()
    {
        println!(
            "pullback of `{}` vanishes: {}",
            pb["equation"].as_str().unwrap(),
            pb["vanishes"]
        );
    }
}
