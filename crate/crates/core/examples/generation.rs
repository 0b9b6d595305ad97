//! Surface realization of preventative expressions.
//!
//! `cargo run --example generation -- "unplug the iron" "before cleaning it"`

use preventkit::annotation::FormClass;
use preventkit::realizer::{realize, RealizationRequest, Trailing, Variant};

fn main() -> preventkit::Result<()> {
    let mut args = std::env::args().skip(1);
    let action = args.next().unwrap_or_else(|| "overload the circuit".into());
    let trailing = args.next();
    for variant in Variant::ALL {
        let mut req = RealizationRequest::new(variant.form(), variant, action.clone());
        if let Some(t) = &trailing {
            req = req.with_trailing(Trailing::infer(t.clone()));
        }
        println!("{:<11} {}", variant.token(), realize(&req)?);
    }
    let bad = RealizationRequest::new(FormClass::Dont, Variant::TakeCare, action);
    println!("mismatch: {}", realize(&bad).unwrap_err());
    Ok(())
}
