//! Parser golden suite: expressions that must print and re-parse to the same
//! curve, and malformed inputs with the position their error must report.

use superconf_core::expr::{parse_curve, CurveExpr};
use superconf_core::{Complex64, Error};

pub const ROUND_TRIP: [&str; 20] = [
    "(cos(z), sin(z), -i*z, 0)",
    "(z, 1/z)",
    "(z, z^2)",
    "(z, exp(z))",
    "(1/(4*z), i/(4*z), z/4, i*z/4)",
    "(z, i*z, 0, 0)",
    "(sin(z), i*sin(z), cos(z), i*cos(z))",
    "(-i*(2/sqrt(3))*sinh(2*z), (4/sqrt(3))*sinh(z), -i*(4/sqrt(3))*cosh(z), (2/sqrt(3))*cosh(2*z))",
    "(z - z^3/3, i*(z + z^3/3), z^2, 0)",
    "(2.5e-3*z, -z^(-2), sqrt(z), log(z))",
    "(sinh(z)*cosh(z), (z+1)^3, -(-z), 1.5i*z)",
    "(exp(i*z) + exp(-i*z), 0.1 + 0.2i, z*z*z, 1/(1+z^2))",
    "(-z^2, (-z)^2, -1*z, z - -z)",
    "(cos(sin(z)), sqrt(1 + z*z), log(2*z), exp(-z^2/2))",
    "(  z  ,\n 1 / z )",
    "(3, 4, 5, 6i)",
    "(1e3*z, 1E-3/z, .5*z, 7.*z)",
    "(z/2/3, z-1-2, z*(2*3), z-(1-2))",
    "(cosh(z)^2 - sinh(z)^2, 2*sinh(z)*cosh(z), 0, 0)",
    "((z^2)^3, z^2^3, 2^10*z, (1/3)*z)",
];

/// `(input, line, column)` of the reported syntax error.
pub const MALFORMED: [(&str, usize, usize); 10] = [
    ("(z, ", 1, 5),
    ("(z, 1/z", 1, 8),
    ("(z, z, z)", 1, 9),
    ("(cos(z), sin z, 0, 0)", 1, 14),
    ("(z^1.5, 0)", 1, 4),
    ("(foo(z), 0)", 1, 2),
    ("(z, 2 $ z)", 1, 7),
    ("z, 1/z)", 1, 1),
    ("(z, 1/z))", 1, 9),
    ("(z,\n  * z)", 2, 3),
];

const PROBES: [(f64, f64); 3] = [(0.3, 0.2), (-0.7, 0.5), (1.1, -0.4)];

fn values(c: &CurveExpr, z: Complex64) -> Result<[Complex64; 4], Error> {
    Ok(c.eval(z)?.map(|j| j.value()))
}

/// Checks one round-trip input: printing is idempotent after one parse and
/// the reparsed curve evaluates bit-identically.
pub fn check_round_trip(text: &str) -> Result<(), String> {
    let a = parse_curve(text).map_err(|e| format!("{text:?}: {e}"))?;
    let printed = a.to_string();
    let b = parse_curve(&printed).map_err(|e| format!("{printed:?}: {e}"))?;
    if b.to_string() != printed {
        return Err(format!("{text:?}: printing not stable: {printed:?} vs {:?}", b.to_string()));
    }
    if a.arity != b.arity {
        return Err(format!("{text:?}: arity {} became {}", a.arity, b.arity));
    }
    for (re, im) in PROBES {
        let z = Complex64::new(re, im);
        match (values(&a, z), values(&b, z)) {
            (Ok(x), Ok(y)) => {
                let same = x.iter().zip(&y).all(|(p, q)| {
                    p.re.to_bits() == q.re.to_bits() && p.im.to_bits() == q.im.to_bits()
                });
                if !same {
                    return Err(format!("{text:?}: values differ at {z}: {x:?} vs {y:?}"));
                }
            }
            (Err(e), Err(f)) if e.kind() == f.kind() => {}
            (x, y) => return Err(format!("{text:?}: evaluation differs at {z}: {x:?} vs {y:?}")),
        }
    }
    Ok(())
}

/// Checks that `text` fails with a syntax error at `(line, column)` that names
/// at least one expected token.
pub fn check_malformed(text: &str, line: usize, column: usize) -> Result<(), String> {
    match parse_curve(text) {
        Ok(c) => Err(format!("{text:?} parsed as {c}")),
        Err(Error::Syntax { line: l, column: c, expected, .. }) => {
            if (l, c) != (line, column) {
                Err(format!("{text:?}: error at {l}:{c}, expected {line}:{column}"))
            } else if expected.is_empty() {
                Err(format!("{text:?}: empty expected-token set"))
            } else {
                Ok(())
            }
        }
        Err(e) => Err(format!("{text:?}: not a syntax error: {e}")),
    }
}

/// Failures of the whole suite, empty when it is green.
pub fn run() -> Vec<String> {
    let mut failures = Vec::new();
    for t in ROUND_TRIP {
        if let Err(e) = check_round_trip(t) {
            failures.push(e);
        }
    }
    for (t, l, c) in MALFORMED {
        if let Err(e) = check_malformed(t, l, c) {
            failures.push(e);
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_green() {
        assert_eq!(run(), Vec::<String>::new());
    }

    #[test]
    fn checks_can_fail() {
        assert!(check_malformed("(z, 1/z)", 1, 1).is_err());
        assert!(check_malformed("(z, ", 1, 4).is_err());
        assert!(check_round_trip("(z, ").is_err());
    }
}
