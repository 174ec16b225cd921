//! Parsing of curves, divisors and spin vectors from JSON or shorthand text,
//! and the matching serialization of field elements and polynomials.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};
use spinor_kummer::field::Field;
use spinor_kummer::{Error, Fp, HyperellipticCurve, MumfordDivisor, Poly, Result, SpinVector, Q};

/// The base field named in a curve specification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseField {
    /// The rationals.
    Rationals,
    /// The prime field `F_p`.
    Prime(u64),
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// A curve over one of the supported fields.
#[derive(Clone, Debug)]
pub enum AnyCurve {
    /// Over the rationals.
    Rational(HyperellipticCurve<Q>),
    /// Over a prime field.
    Prime(HyperellipticCurve<Fp>),
}

impl AnyCurve {
    /// Genus of the curve.
    pub fn genus(&self) -> usize {
        match self {
            AnyCurve::Rational(c) => c.genus(),
            AnyCurve::Prime(c) => c.genus(),
        }
    }
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// Field elements that can be read from rationals and written to JSON.
pub trait Scalar: Field {
    /// The image of a rational number, given an element of the field.
    fn from_rational(like: &Self, q: &Q) -> Result<Self>;
    /// JSON form: a string `"a/b"` for rationals, an integer for `F_p`.
    fn to_json(&self) -> Value;
    /// Short text form.
    fn to_text(&self) -> String;
    /// Reads a JSON value (number or string).
    fn from_json(like: &Self, v: &Value) -> Result<Self> {
        let q = match v {
            Value::Number(n) => parse_rational(&n.to_string())?,
            Value::String(s) => parse_rational(s.trim())?,
            _ => return Err(schema(format!("expected a number, found {v}"))),
        };
        Self::from_rational(like, &q)
    }
}

impl Scalar for Q {
    fn from_rational(_like: &Self, q: &Q) -> Result<Self> {
        Ok(q.clone())
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Fp {
    fn from_rational(like: &Self, q: &Q) -> Result<Self> {
        let p = BigInt::from(like.modulus());
        let reduce = |n: &BigInt| -> i64 {
            let r = ((n % &p) + &p) % &p;
            i64::try_from(r).expect("reduced below p")
        };
        let num = like.from_i64_like(reduce(q.numer()));
        let den = like.from_i64_like(reduce(q.denom()));
        let inv = den
            .inv()
            .ok_or_else(|| Error::Precondition(format!("denominator of {q} vanishes mod {}", like.modulus())))?;
        Ok(num * inv)
    }

    fn to_json(&self) -> Value {
        json!(self.value())
    }

    fn to_text(&self) -> String {
        self.value().to_string()
    }
}

/// Parses `"n"` or `"n/d"` (optionally parenthesised).
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    let bad = || schema(format!("malformed number {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Parses a univariate polynomial in `x` with rational coefficients, e.g.
/// `"x^5 + 3x - 1/2"`, `"2*x^2-x"`, `"(3/2)x^3 + 1"`.  Returns ascending
/// coefficients.
pub fn parse_poly_q(text: &str) -> Result<Vec<Q>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(schema("empty polynomial"));
    }
    let mut coeffs: Vec<Q> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = Q::from_integer(1.into());
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        let coeff_text = if i < bytes.len() && bytes[i] == b'(' {
            let close = s[i..].find(')').ok_or_else(|| schema(format!("unbalanced parenthesis in {text:?}")))? + i;
            i = close + 1;
            &s[start + 1..close]
        } else {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
                i += 1;
            }
            &s[start..i]
        };
        let coeff = if coeff_text.is_empty() { Q::from_integer(1.into()) } else { parse_rational(coeff_text)? };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let e0 = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exp = s[e0..i].parse().map_err(|_| schema(format!("malformed exponent in {text:?}")))?;
            }
        } else if coeff_text.is_empty() {
            return Err(schema(format!("malformed term at offset {start} of {text:?}")));
        }
        if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            return Err(schema(format!("unexpected character {:?} in {text:?}", bytes[i] as char)));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, Q::from_integer(0.into()));
        }
        coeffs[exp] = coeffs[exp].clone() + sign * coeff;
    }
    Ok(coeffs)
}

/// Reads a polynomial from a JSON string or an ascending coefficient array.
pub fn poly_from_json<F: Scalar>(like: &F, v: &Value) -> Result<Poly<F>> {
    let qs = match v {
        Value::String(s) => parse_poly_q(s)?.into_iter().map(|q| F::from_rational(like, &q)).collect::<Result<Vec<_>>>()?,
        Value::Array(a) => a.iter().map(|c| F::from_json(like, c)).collect::<Result<Vec<_>>>()?,
        _ => return Err(schema(format!("expected a polynomial string or coefficient array, found {v}"))),
    };
    Ok(Poly::new(qs))
}

/// Text form of a polynomial that [`parse_poly_q`] reads back.
pub fn poly_text<F: Scalar>(p: &Poly<F>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mut t = c.to_text();
        let negative = t.starts_with('-');
        if negative {
            t.remove(0);
        }
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let unit = t == "1";
        let coeff = if t.contains('/') { format!("({t})") } else { t };
        match (i, unit) {
            (0, _) => out.push_str(&coeff),
            (1, true) => out.push('x'),
            (1, false) => out.push_str(&format!("{coeff}x")),
            (_, true) => out.push_str(&format!("x^{i}")),
            (_, false) => out.push_str(&format!("{coeff}x^{i}")),
        }
    }
    out
}

fn parse_field(s: &str) -> Result<BaseField> {
    let t = s.trim();
    if t == "Q" || t == "QQ" {
        return Ok(BaseField::Rationals);
    }
    let digits = t.trim_start_matches("GF").trim_start_matches('F').trim_start_matches('_').trim_start_matches('(').trim_end_matches(')');
    digits
        .parse::<u64>()
        .map(BaseField::Prime)
        .map_err(|_| schema(format!("unknown field {s:?}; use Q or Fp such as F5")))
}

fn build_curve(f_text: &Value, field: BaseField, genus: Option<usize>) -> Result<AnyCurve> {
    let curve = match field {
        BaseField::Rationals => AnyCurve::Rational(HyperellipticCurve::from_poly(poly_from_json(&Q::from_integer(1.into()), f_text)?)?),
        BaseField::Prime(p) => {
            Fp::check_modulus(p)?;
            AnyCurve::Prime(HyperellipticCurve::from_poly(poly_from_json(&Fp::new(1, p), f_text)?)?)
        }
    };
    if let Some(g) = genus {
        if g != curve.genus() {
            return Err(schema(format!("declared genus {g} but f has genus {}", curve.genus())));
        }
    }
    Ok(curve)
}

/// Parses a curve from JSON (`{"f": ..., "field": "Q" | "F5" | 5, "g": 2}`)
/// or shorthand (`"x^5+3x+1 over Q"`, `"g=2; f=x^5+3x+1; field=Q"`).  A
/// bare polynomial is taken over `Q`.
pub fn parse_curve_spec(text: &str) -> Result<AnyCurve> {
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| schema(format!("curve JSON: {e}")))?;
        return curve_from_json(&v);
    }
    if t.contains(';') || t.starts_with("f=") || t.starts_with("g=") {
        let mut f = None;
        let mut field = BaseField::Rationals;
        let mut genus = None;
        for part in t.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| schema(format!("expected key=value, found {part:?}")))?;
            match k.trim() {
                "f" => f = Some(v.trim().to_string()),
                "field" => field = parse_field(v)?,
                "g" => genus = Some(v.trim().parse().map_err(|_| schema(format!("malformed genus {v:?}")))?),
                other => return Err(schema(format!("unknown key {other:?} in curve spec"))),
            }
        }
        let f = f.ok_or_else(|| schema("curve spec lacks f=..."))?;
        return build_curve(&Value::String(f), field, genus);
    }
    let (f, field) = match t.rsplit_once(" over ") {
        Some((f, k)) => (f, parse_field(k)?),
        None => (t, BaseField::Rationals),
    };
    build_curve(&Value::String(f.to_string()), field, None)
}

/// Parses a curve from a JSON object.
pub fn curve_from_json(v: &Value) -> Result<AnyCurve> {
    match v {
        Value::String(s) => parse_curve_spec(s),
        Value::Object(m) => {
            let f = m.get("f").ok_or_else(|| schema("curve object lacks \"f\""))?;
            let field = match m.get("field") {
                None => BaseField::Rationals,
                Some(Value::String(s)) => parse_field(s)?,
                Some(Value::Number(n)) => BaseField::Prime(n.as_u64().ok_or_else(|| schema("field must be a prime"))?),
                Some(other) => return Err(schema(format!("malformed field {other}"))),
            };
            let genus = match m.get("g") {
                None => None,
                Some(g) => Some(g.as_u64().ok_or_else(|| schema("g must be a positive integer"))? as usize),
            };
            build_curve(f, field, genus)
        }
        _ => Err(schema(format!("expected a curve object or string, found {v}"))),
    }
}

/// Parses a divisor: a JSON object `{"u": ..., "v": ..., "r": ...}` (`v`
/// optional), the string `"0"` for the identity, or a point `"(a, b)"`.
pub fn parse_divisor<F: Scalar>(curve: &HyperellipticCurve<F>, text: &str) -> Result<MumfordDivisor<F>> {
    let t = text.trim();
    if t == "0" || t == "identity" {
        return Ok(MumfordDivisor::identity(curve));
    }
    if t.starts_with('(') {
        let inner = t.trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner.split_once(',').ok_or_else(|| schema(format!("expected a point (a, b), found {t:?}")))?;
        let one = curve.one();
        let a = F::from_rational(&one, &parse_rational(a)?)?;
        let b = F::from_rational(&one, &parse_rational(b)?)?;
        return MumfordDivisor::from_point(curve, &a, &b);
    }
    let v: Value = serde_json::from_str(t).map_err(|e| schema(format!("divisor JSON: {e}")))?;
    divisor_from_json(curve, &v)
}

/// Parses a divisor from a JSON value.
pub fn divisor_from_json<F: Scalar>(curve: &HyperellipticCurve<F>, v: &Value) -> Result<MumfordDivisor<F>> {
    if let Value::String(s) = v {
        return parse_divisor(curve, s);
    }
    let m = v.as_object().ok_or_else(|| schema(format!("expected a divisor object, found {v}")))?;
    let one = curve.one();
    let u = poly_from_json(&one, m.get("u").ok_or_else(|| schema("divisor lacks \"u\""))?)?;
    let r = match m.get("r") {
        Some(r) => poly_from_json(&one, r)?,
        None => Poly::zero(),
    };
    match m.get("v") {
        Some(vv) => MumfordDivisor::new(curve, u, poly_from_json(&one, vv)?, r),
        None => MumfordDivisor::from_u_r(curve, u, r),
    }
}

/// JSON form of a divisor.
pub fn divisor_json<F: Scalar>(d: &MumfordDivisor<F>) -> Value {
    json!({
        "degree": d.degree(),
        "u": poly_text(d.u()),
        "v": poly_text(d.v()),
        "r": poly_text(d.r()),
    })
}

/// Parses a spin vector from a JSON array or a `[a:b:...]` projective list.
pub fn parse_spin_vector<F: Scalar>(curve: &HyperellipticCurve<F>, text: &str) -> Result<SpinVector<F>> {
    let t = text.trim();
    let one = curve.one();
    let coords: Vec<F> = if t.contains(':') {
        t.trim_start_matches('[')
            .trim_end_matches(']')
            .split(':')
            .map(|c| F::from_rational(&one, &parse_rational(c)?))
            .collect::<Result<_>>()?
    } else {
        let v: Value = serde_json::from_str(t).map_err(|e| schema(format!("coordinates JSON: {e}")))?;
        v.as_array()
            .ok_or_else(|| schema("coordinates must be an array"))?
            .iter()
            .map(|c| F::from_json(&one, c))
            .collect::<Result<_>>()?
    };
    SpinVector::new(curve.genus(), coords).map_err(|e| schema(e.to_string()))
}

/// JSON array of the coordinates of a spin vector.
pub fn coords_json<F: Scalar>(s: &SpinVector<F>) -> Value {
    Value::Array(s.coords().iter().map(Scalar::to_json).collect())
}
