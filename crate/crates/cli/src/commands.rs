//! Subcommand implementations: parse, call the library, build the output
//! document.

use serde_json::{json, Map, Value};
use spinor_kummer::heights::{
    bad_primes, epsilon_lower_bound, height_report, local_epsilon, mu_partial, Place,
};
use spinor_kummer::jacobian::enumerate_points;
use spinor_kummer::kummer::{kummer_quartic_g2, membership_and_lift, psi_embed, KummerVerdict};
use spinor_kummer::theta::{duplication_polys_fp, duplication_polys_rational};
use spinor_kummer::verify::{run_suite, SuiteConfig};
use spinor_kummer::{Error, HyperellipticCurve, MPoly, QuadraticSpace, Result, Q};

use crate::parse::{
    coords_json, divisor_json, parse_curve_spec, parse_divisor, parse_spin_vector, poly_text, AnyCurve, BaseField,
    Scalar,
};
use crate::{Command, CurvePoint, Failure, Outcome};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SPINOR_KUMMER_THREADS";

fn curve_header<F: Scalar>(curve: &HyperellipticCurve<F>) -> Map<String, Value> {
    let field = match curve.one().characteristic() {
        0 => BaseField::Rationals,
        p => BaseField::Prime(p),
    };
    let mut m = Map::new();
    m.insert("field".into(), json!(field.to_string()));
    m.insert("genus".into(), json!(curve.genus()));
    m.insert("f".into(), json!(poly_text(curve.f())));
    m
}

fn document(curve_fields: Map<String, Value>, body: Value) -> Outcome {
    let mut doc = Map::new();
    doc.insert("curve".into(), Value::Object(curve_fields));
    if let Value::Object(b) = body {
        doc.extend(b);
    }
    Outcome { doc: Value::Object(doc), ok: true }
}

/// Monomial `x1^2*x3` style key for variables `x_1, ..., x_n`.
fn monomial_key(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{p}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// A polynomial as a monomial → coefficient map in decreasing grevlex order.
fn mpoly_json<F: Scalar>(p: &MPoly<F>) -> Value {
    let mut m = Map::new();
    for (e, c) in p.terms_grevlex() {
        m.insert(monomial_key(e), c.to_json());
    }
    Value::Object(m)
}

fn embed<F: Scalar>(curve: &HyperellipticCurve<F>, point: &str) -> Result<Outcome> {
    let d = parse_divisor(curve, point)?;
    let psi = psi_embed(&QuadraticSpace::new(curve), &d)?;
    Ok(document(curve_header(curve), json!({"divisor": divisor_json(&d), "coords": coords_json(&psi)})))
}

/// A group-law subcommand.
#[derive(Clone, Copy)]
enum GroupOp {
    Add,
    Double,
    Mul(i64),
}

fn group_op<F: Scalar>(curve: &HyperellipticCurve<F>, points: &[String], op: GroupOp) -> Result<Outcome> {
    let ds = points.iter().map(|p| parse_divisor(curve, p)).collect::<Result<Vec<_>>>()?;
    let result = match (op, ds.as_slice()) {
        (GroupOp::Add, [a, b]) => a.add(b),
        (GroupOp::Add, _) => return Err(Error::Schema(format!("add takes two points, found {}", ds.len()))),
        (GroupOp::Double, [a]) => a.double(),
        (GroupOp::Mul(k), [a]) => a.mul(k),
        _ => return Err(Error::Schema(format!("expected one point, found {}", ds.len()))),
    };
    let mut body = json!({"inputs": ds.iter().map(divisor_json).collect::<Vec<_>>()});
    if let GroupOp::Mul(k) = op {
        body["k"] = json!(k);
    }
    body["result"] = divisor_json(&result);
    Ok(document(curve_header(curve), body))
}

fn dup_polys(curve: &AnyCurve, labeling: Option<&[usize]>) -> Result<Outcome> {
    let (header, polys) = match curve {
        AnyCurve::Prime(c) => {
            let delta = duplication_polys_fp(c, labeling)?;
            (curve_header(c), delta.polys().iter().map(mpoly_json).collect::<Vec<_>>())
        }
        AnyCurve::Rational(c) => {
            if labeling.is_some() {
                return Err(Error::Precondition("--labeling applies to curves over F_p only".into()));
            }
            let delta = duplication_polys_rational(c)?;
            (curve_header(c), delta.polys().iter().map(mpoly_json).collect::<Vec<_>>())
        }
    };
    Ok(document(header, json!({"ordering": "grevlex", "quartics": polys})))
}

fn parse_places(curve: &HyperellipticCurve<Q>, spec: &str) -> Result<Vec<Place>> {
    if spec.trim() == "all-bad" {
        let mut places: Vec<Place> = bad_primes(curve)?.into_iter().map(Place::Finite).collect();
        places.push(Place::Infinite);
        return Ok(places);
    }
    spec.split(',')
        .map(str::trim)
        .map(|t| match t {
            "inf" | "infinity" | "∞" => Ok(Place::Infinite),
            _ => match t.parse::<u64>() {
                Ok(p) if spinor_kummer::field::is_prime(p) => Ok(Place::Finite(p)),
                _ => Err(Error::Schema(format!("place {t:?} is neither a prime nor \"inf\""))),
            },
        })
        .collect()
}

fn heights(curve: &AnyCurve, target: &CurvePoint, n_max: usize, places: Option<&str>) -> Result<Outcome> {
    let AnyCurve::Rational(curve) = curve else {
        return Err(Error::Precondition("heights are defined for curves over Q".into()));
    };
    let d = parse_divisor(curve, &target.point)?;
    let report = height_report(curve, &d, n_max)?;
    let mut body = json!({
        "divisor": divisor_json(&d),
        "dagger": report.dagger,
        "naive": report.naive,
        "reduction": report.reduction,
        "canonical": {
            "estimate": report.canonical.estimate,
            "iterations": report.canonical.iterations,
            "tail_bound": report.canonical.tail_bound,
            "partials": report.canonical.partials,
        },
        "dagger_vs_naive": {
            "dagger_max": report.comparison.dagger_max.to_string(),
            "naive_max": report.comparison.naive_max.to_string(),
            "dagger_le_naive": report.comparison.dagger_le_naive(),
        },
    });
    if let Some(spec) = places {
        let places = parse_places(curve, spec)?;
        let space = QuadraticSpace::new(curve);
        let delta = duplication_polys_rational(curve)?;
        let mut locals = Vec::new();
        for place in places {
            let epsilon = local_epsilon(&space, &delta, &d, place)?;
            let mu = mu_partial(&space, &delta, &d, place, n_max)?;
            let (name, bound) = match place {
                Place::Finite(p) => (json!(p), json!(epsilon_lower_bound(curve, p))),
                Place::Infinite => (json!("inf"), Value::Null),
            };
            locals.push(json!({
                "place": name,
                "epsilon": epsilon,
                "epsilon_lower_bound": bound,
                "mu": {"value": mu.value, "terms": mu.terms, "tail_bound": mu.tail_bound},
            }));
        }
        body["local"] = Value::Array(locals);
    }
    Ok(document(curve_header(curve), body))
}

fn membership<F: Scalar>(curve: &HyperellipticCurve<F>, coords: &str) -> Result<Outcome> {
    let s = parse_spin_vector(curve, coords)?;
    let verdict = membership_and_lift(&QuadraticSpace::new(curve), &s)?;
    let body = match verdict {
        KummerVerdict::NotOnKummer => json!({"coords": coords_json(&s), "on_kummer": false}),
        KummerVerdict::OnKummer { rank, lambda, lifts } => json!({
            "coords": coords_json(&s),
            "on_kummer": true,
            "rank": rank,
            "lambda": lambda.as_ref().map(Scalar::to_json),
            "lifts": lifts,
        }),
    };
    Ok(document(curve_header(curve), body))
}

fn enumerate(curve: &AnyCurve) -> Result<Outcome> {
    let AnyCurve::Prime(curve) = curve else {
        return Err(Error::Precondition("enumeration needs a curve over a prime field".into()));
    };
    let space = QuadraticSpace::new(curve);
    let points = enumerate_points(curve)?;
    let rows = points
        .iter()
        .map(|d| Ok(json!({"divisor": divisor_json(d), "coords": coords_json(&psi_embed(&space, d)?)})))
        .collect::<Result<Vec<_>>>()?;
    Ok(document(curve_header(curve), json!({"count": points.len(), "points": rows})))
}

fn kummer_eq(curve: &AnyCurve) -> Result<Outcome> {
    let (header, quartic) = match curve {
        AnyCurve::Prime(c) => (curve_header(c), mpoly_json(&kummer_quartic_g2(c)?)),
        AnyCurve::Rational(c) => (curve_header(c), mpoly_json(&kummer_quartic_g2(c)?)),
    };
    Ok(document(header, json!({"ordering": "grevlex", "quartic": quartic})))
}

/// Worker count: the flag (or the available cores), capped by
/// `SPINOR_KUMMER_THREADS`.
fn thread_count(flag: Option<usize>) -> std::result::Result<usize, Failure> {
    let mut n = flag.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if let Ok(cap) = std::env::var(THREADS_ENV) {
        let cap: usize = cap
            .trim()
            .parse()
            .map_err(|_| Failure::schema(format!("{THREADS_ENV} must be a positive integer, found {cap:?}")))?;
        n = n.min(cap);
    }
    Ok(n.max(1))
}

fn verify(seed: u64, g: usize, p: u64, points: usize, threads: usize) -> Result<Outcome> {
    let report = run_suite(&SuiteConfig { g, p, seed, points, threads })?;
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "samples": c.samples,
                "failures": c.failures,
                "passed": c.passed(),
                "detail": c.detail,
            })
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("curve".into(), Value::Object(curve_header(&report.curve)));
    doc.insert(
        "config".into(),
        json!({"seed": seed, "g": g, "p": p, "points": points, "splitting_degree": report.splitting_degree}),
    );
    doc.insert("checks".into(), Value::Array(checks));
    doc.insert("passed".into(), json!(report.passed()));
    Ok(Outcome { doc: Value::Object(doc), ok: report.passed() })
}

fn curve_generic<T>(
    curve: &AnyCurve,
    q: impl FnOnce(&HyperellipticCurve<Q>) -> Result<T>,
    fp: impl FnOnce(&HyperellipticCurve<spinor_kummer::Fp>) -> Result<T>,
) -> Result<T> {
    match curve {
        AnyCurve::Rational(c) => q(c),
        AnyCurve::Prime(c) => fp(c),
    }
}

/// Runs one subcommand.
pub fn dispatch(command: Command) -> std::result::Result<Outcome, Failure> {
    let out = match command {
        Command::Embed(t) => {
            let c = parse_curve_spec(&t.curve)?;
            curve_generic(&c, |c| embed(c, &t.point), |c| embed(c, &t.point))
        }
        Command::Add { curve, point } => {
            let c = parse_curve_spec(&curve)?;
            curve_generic(&c, |c| group_op(c, &point, GroupOp::Add), |c| group_op(c, &point, GroupOp::Add))
        }
        Command::Double(t) => {
            let c = parse_curve_spec(&t.curve)?;
            let pts = [t.point];
            curve_generic(&c, |c| group_op(c, &pts, GroupOp::Double), |c| group_op(c, &pts, GroupOp::Double))
        }
        Command::Mul { target, k } => {
            let c = parse_curve_spec(&target.curve)?;
            let pts = [target.point];
            curve_generic(&c, |c| group_op(c, &pts, GroupOp::Mul(k)), |c| group_op(c, &pts, GroupOp::Mul(k)))
        }
        Command::DupPolys { curve, labeling } => dup_polys(&parse_curve_spec(&curve)?, labeling.as_deref()),
        Command::Heights { target, n_max, places } => {
            heights(&parse_curve_spec(&target.curve)?, &target, n_max, places.as_deref())
        }
        Command::Membership { curve, coords } => {
            let c = parse_curve_spec(&curve)?;
            curve_generic(&c, |c| membership(c, &coords), |c| membership(c, &coords))
        }
        Command::Enumerate { curve } => enumerate(&parse_curve_spec(&curve)?),
        Command::KummerEq { curve } => kummer_eq(&parse_curve_spec(&curve)?),
        Command::Verify { seed, g, p, points, threads } => verify(seed, g, p, points, thread_count(threads)?),
        Command::Job { .. } => Err(Error::Schema("nested job".into())),
    };
    Ok(out?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_keys() {
        assert_eq!(monomial_key(&[2, 0, 1, 0]), "x1^2*x3");
        assert_eq!(monomial_key(&[0, 0]), "1");
    }
}
