//! Built-in test functions. The set covers smooth members (for the second
//! derivative bounds), a Lipschitz kink, and two members with unbounded
//! derivative behaviour at the left endpoint.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::function::{RealFunction, Smoothness};
use crate::math;

/// Labels of the built-in functions, in canonical order.
pub const LABELS: [&str; 10] = [
    "e0", "e1", "e2", "e3", "hat", "sin2pi", "exp", "sqrt", "runge", "x3half",
];

/// The full built-in corpus, in the order of [`LABELS`].
pub fn all() -> Vec<RealFunction> {
    LABELS.iter().map(|l| by_label(l).unwrap()).collect()
}

/// Look up one built-in function by label.
pub fn by_label(label: &str) -> Result<RealFunction> {
    let f = match label {
        "e0" => RealFunction::new("e0", Smoothness::C2, |_| 1.0)
            .with_first_derivative(|_| 0.0)
            .with_second_derivative(|_| 0.0),
        "e1" => RealFunction::new("e1", Smoothness::C2, |x| x)
            .with_first_derivative(|_| 1.0)
            .with_second_derivative(|_| 0.0),
        "e2" => RealFunction::new("e2", Smoothness::C2, |x| x * x)
            .with_first_derivative(|x| 2.0 * x)
            .with_second_derivative(|_| 2.0),
        "e3" => RealFunction::new("e3", Smoothness::C2, |x| x * x * x)
            .with_first_derivative(|x| 3.0 * x * x)
            .with_second_derivative(|x| 6.0 * x),
        "hat" => RealFunction::new("hat", Smoothness::C0, |x| math::abs(x - 0.5))
            // Defined almost everywhere; the value at the kink is immaterial
            // for the essential-sup uses below.
            .with_first_derivative(|x| {
                if x > 0.5 {
                    1.0
                } else if x < 0.5 {
                    -1.0
                } else {
                    0.0
                }
            }),
        "sin2pi" => RealFunction::new("sin2pi", Smoothness::C2, |x| math::sin(TAU * x))
            .with_first_derivative(|x| TAU * math::cos(TAU * x))
            .with_second_derivative(|x| -TAU * TAU * math::sin(TAU * x)),
        "exp" => RealFunction::new("exp", Smoothness::C2, math::exp)
            .with_first_derivative(math::exp)
            .with_second_derivative(math::exp),
        "sqrt" => RealFunction::new("sqrt", Smoothness::C0, math::sqrt),
        "runge" => RealFunction::new("runge", Smoothness::C2, |x| {
            let u = x - 0.5;
            1.0 / (1.0 + 25.0 * u * u)
        })
        .with_first_derivative(|x| {
            let u = x - 0.5;
            let d = 1.0 + 25.0 * u * u;
            -50.0 * u / (d * d)
        })
        .with_second_derivative(|x| {
            let u = x - 0.5;
            let d = 1.0 + 25.0 * u * u;
            -50.0 * (1.0 - 75.0 * u * u) / (d * d * d)
        }),
        "x3half" => RealFunction::new("x3half", Smoothness::C1, |x| x * math::sqrt(x))
            .with_first_derivative(|x| 1.5 * math::sqrt(x)),
        _ => {
            return Err(Error::UnknownLabel { label: String::from(label) });
        }
    };
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_complete_and_tagged() {
        let fs = all();
        assert_eq!(fs.len(), 10);
        let c2: Vec<_> = fs.iter().filter(|f| f.is_c2()).map(|f| f.label()).collect();
        assert_eq!(c2, ["e0", "e1", "e2", "e3", "sin2pi", "exp", "runge"]);
        let with_d1 = fs.iter().filter(|f| f.has_first_derivative()).count();
        assert_eq!(with_d1, 9); // all but sqrt
        assert!(by_label("nope").is_err());
    }

    #[test]
    fn second_derivatives_match_finite_differences() {
        for f in all() {
            f.check_second_derivative().unwrap();
        }
    }
}
