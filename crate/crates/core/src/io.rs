//! JSON input formats. Every parser reports the offending field path and
//! enforces size limits, so untrusted files cannot trigger unbounded work.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::dynamics::{AffineDynamic, CurvePoint, Endomorphism, PrimeCurve, QuadOrderElem};
use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::realalg::{AlgebraicReal, IntPoly, Rat};
use crate::semigroup::{self, SemigroupSpec};
use crate::solver::{LocusInstance, UnitEquationInstance};

/// Largest accepted minimal-polynomial degree in a literal.
pub const MAX_LITERAL_DEGREE: usize = 16;
/// Largest accepted decimal length of any integer in a literal.
pub const MAX_DIGITS: usize = 200;
/// Largest accepted generator count per semigroup.
pub const MAX_GENERATORS: usize = 16;
/// Upper limit on iteration counts in dynamics requests.
pub const MAX_ITERATIONS: u64 = 10_000_000;
/// Upper limit on exponents in quadratic-order requests.
pub const MAX_EXPONENT: u32 = 256;

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse("", format!("malformed JSON: {e}")))
}

fn parse_int_str(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || digits.len() > MAX_DIGITS || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse("", format!("`{s}` is not a decimal integer of at most {MAX_DIGITS} digits")));
    }
    Ok(s.parse().expect("validated decimal"))
}

/// An integer given as a JSON number or a decimal string.
pub fn parse_integer(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => Ok(BigInt::from(i)),
            (_, Some(u)) => Ok(BigInt::from(u)),
            _ => Err(Error::parse("", "expected an integer")),
        },
        Value::String(s) => parse_int_str(s.trim()),
        _ => Err(Error::parse("", "expected an integer")),
    }
}

fn parse_i64(v: &Value) -> Result<i64> {
    parse_integer(v)?.to_i64().ok_or_else(|| Error::parse("", "integer out of 64-bit range"))
}

fn parse_u64_in(v: &Value, lo: u64, hi: u64) -> Result<u64> {
    parse_integer(v)?
        .to_u64()
        .filter(|x| (lo..=hi).contains(x))
        .ok_or_else(|| Error::parse("", format!("expected an integer in [{lo}, {hi}]")))
}

/// `"p"`, `"p/q"`, or a JSON integer.
pub fn parse_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                None => Ok(Rat::from_integer(parse_int_str(s)?)),
                Some((n, d)) => {
                    let n = parse_int_str(n.trim())?;
                    let d = parse_int_str(d.trim())?;
                    if d.is_zero() {
                        return Err(Error::parse("", "zero denominator"));
                    }
                    if d.is_negative() {
                        return Err(Error::parse("", "denominator must be positive"));
                    }
                    Ok(Rat::new(n, d))
                }
            }
        }
        Value::Number(_) => Ok(Rat::from_integer(parse_integer(v)?)),
        _ => Err(Error::parse("", "expected a rational literal \"p/q\"")),
    }
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse("", format!("expected {what} object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse("", format!("expected {what} array")))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| Error::parse(key, "missing field"))
}

/// Parses `key` with `f`, prefixing any error path with the key.
fn at<T>(m: &Map<String, Value>, key: &str, f: impl FnOnce(&Value) -> Result<T>) -> Result<T> {
    f(field(m, key)?).map_err(|e| e.at(key))
}

fn at_or<T>(m: &Map<String, Value>, key: &str, default: T, f: impl FnOnce(&Value) -> Result<T>) -> Result<T> {
    match m.get(key) {
        None => Ok(default),
        Some(v) => f(v).map_err(|e| e.at(key)),
    }
}

fn index<T>(i: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| e.at(&format!("[{i}]")))
}

/// A real algebraic literal: rational, or `{"minpoly": [...], "interval": [lo, hi]}`.
pub fn parse_algebraic_literal(v: &Value) -> Result<AlgebraicReal> {
    if !v.is_object() {
        return parse_rat(v).map(AlgebraicReal::from_rat);
    }
    let m = object(v, "algebraic literal")?;
    let coeffs = at(m, "minpoly", |v| {
        let cs = array(v, "coefficient")?;
        if cs.len() < 2 || cs.len() > MAX_LITERAL_DEGREE + 1 {
            return Err(Error::parse("", format!("degree must be between 1 and {MAX_LITERAL_DEGREE}")));
        }
        cs.iter().enumerate().map(|(i, c)| index(i, parse_integer(c))).collect::<Result<Vec<_>>>()
    })?;
    let poly = IntPoly::new(coeffs);
    if poly.degree() == 0 {
        return Err(Error::parse("minpoly", "leading coefficient vanishes"));
    }
    let (lo, hi) = at(m, "interval", |v| {
        let ends = array(v, "interval")?;
        if ends.len() != 2 {
            return Err(Error::parse("", "interval needs exactly two endpoints"));
        }
        Ok((index(0, parse_rat(&ends[0]))?, index(1, parse_rat(&ends[1]))?))
    })?;
    AlgebraicReal::from_poly_interval(&poly, lo, hi).map_err(|e| match e {
        Error::Invalid(msg) => Error::parse("", msg),
        other => other,
    })
}

/// `[a, b, c, d]` of algebraic literals.
pub fn parse_quaternion(v: &Value) -> Result<Quaternion> {
    let xs = array(v, "quaternion")?;
    if xs.len() != 4 {
        return Err(Error::parse("", "a quaternion has exactly four coordinates"));
    }
    let c = xs
        .iter()
        .enumerate()
        .map(|(i, x)| index(i, parse_algebraic_literal(x)))
        .collect::<Result<Vec<_>>>()?;
    let mut it = c.into_iter();
    let mut next = || it.next().expect("four coordinates");
    Ok(Quaternion::new(next(), next(), next(), next()))
}

fn semigroup_error(e: Error) -> Error {
    match e {
        Error::NormNotAboveOne { index } => {
            Error::parse(format!("generators[{index}]"), "generator norm must exceed 1")
        }
        Error::ZeroGenerator { index } => Error::parse(format!("generators[{index}]"), "generator is zero"),
        Error::DuplicateGenerator { first, second } => Error::parse(
            format!("generators[{second}]"),
            format!("duplicates generators[{first}]"),
        ),
        Error::EmptySemigroup => Error::parse("generators", "at least one generator is required"),
        Error::Invalid(msg) => Error::parse("labels", msg),
        other => other,
    }
}

/// `{"generators": [...], "labels": [...]}`, validated.
pub fn parse_semigroup(v: &Value) -> Result<SemigroupSpec> {
    let m = object(v, "semigroup")?;
    let gens = at(m, "generators", |v| {
        let gs = array(v, "generator")?;
        if gs.len() > MAX_GENERATORS {
            return Err(Error::parse("", format!("at most {MAX_GENERATORS} generators are supported")));
        }
        gs.iter().enumerate().map(|(i, g)| index(i, parse_quaternion(g))).collect::<Result<Vec<_>>>()
    })?;
    let spec = match m.get("labels") {
        None => SemigroupSpec::new(gens),
        Some(v) => {
            let labels = array(v, "label")
                .and_then(|ls| {
                    ls.iter()
                        .enumerate()
                        .map(|(i, l)| {
                            index(
                                i,
                                l.as_str().map(str::to_string).ok_or_else(|| Error::parse("", "label must be a string")),
                            )
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .map_err(|e| e.at("labels"))?;
            SemigroupSpec::with_labels(gens, labels)
        }
    };
    semigroup::validate(&spec).map_err(semigroup_error)?;
    Ok(spec)
}

fn nonzero_unit(m: &Map<String, Value>, key: &str) -> Result<Quaternion> {
    at(m, key, |v| {
        let q = parse_quaternion(v)?;
        if q.is_zero() {
            return Err(Error::parse("", "unit must be nonzero"));
        }
        Ok(q)
    })
}

/// `{"a", "a_prime", "b", "b_prime", "gamma1", "gamma2"}`.
pub fn parse_instance(v: &Value) -> Result<UnitEquationInstance> {
    let m = object(v, "instance")?;
    let inst = UnitEquationInstance {
        a: nonzero_unit(m, "a")?,
        a_p: nonzero_unit(m, "a_prime")?,
        b: nonzero_unit(m, "b")?,
        b_p: nonzero_unit(m, "b_prime")?,
        gamma1: at(m, "gamma1", parse_semigroup)?,
        gamma2: at(m, "gamma2", parse_semigroup)?,
    };
    Ok(inst)
}

/// `{"a", "a_prime", "gamma"}`; an instance file is also accepted, using Γ₁.
pub fn parse_locus_instance(v: &Value) -> Result<LocusInstance> {
    let m = object(v, "instance")?;
    let key = if m.contains_key("gamma") { "gamma" } else { "gamma1" };
    Ok(LocusInstance {
        a: nonzero_unit(m, "a")?,
        a_p: nonzero_unit(m, "a_prime")?,
        gamma: at(m, key, parse_semigroup)?,
    })
}

pub fn parse_curve(v: &Value) -> Result<PrimeCurve> {
    let m = object(v, "curve")?;
    let p = at(m, "p", |v| parse_u64_in(v, 5, u64::MAX))?;
    let a4 = at(m, "a4", parse_i64)?;
    let a6 = at(m, "a6", parse_i64)?;
    PrimeCurve::new(p, a4, a6).map_err(|e| match e {
        Error::Parse { path, message } => Error::parse(path.trim_start_matches("curve").trim_start_matches('.'), message),
        other => other,
    })
}

/// `"O"` or `[x, y]`, checked against the curve.
pub fn parse_point(curve: &PrimeCurve, v: &Value) -> Result<CurvePoint> {
    if v.as_str() == Some("O") {
        return Ok(CurvePoint::Infinity);
    }
    let xy = array(v, "point")?;
    if xy.len() != 2 {
        return Err(Error::parse("", "a point is [x, y] or \"O\""));
    }
    let x = index(0, parse_u64_in(&xy[0], 0, curve.p - 1))?;
    let y = index(1, parse_u64_in(&xy[1], 0, curve.p - 1))?;
    curve.point(x, y).map_err(|_| Error::parse("", "point is not on the curve"))
}

fn parse_disc(v: &Value) -> Result<i64> {
    let d = parse_i64(v)?;
    crate::dynamics::order_params(d).map_err(|e| Error::parse("", e.to_string()))?;
    Ok(d)
}

/// `{"type":"scalar","m":…}` or `{"type":"order","x":…,"y":…,"disc":…}`.
pub fn parse_endomorphism(v: &Value) -> Result<Endomorphism> {
    let m = object(v, "endomorphism")?;
    let kind = field(m, "type")?
        .as_str()
        .ok_or_else(|| Error::parse("type", "expected a string"))?;
    match kind {
        "scalar" => Ok(Endomorphism::Scalar(at(m, "m", parse_i64)?)),
        "order" => Ok(Endomorphism::Order(parse_order_fields(m)?)),
        other => Err(Error::parse("type", format!("unknown endomorphism type `{other}`"))),
    }
}

fn parse_order_fields(m: &Map<String, Value>) -> Result<QuadOrderElem> {
    let x = at(m, "x", parse_integer)?;
    let y = at(m, "y", parse_integer)?;
    let disc = at(m, "disc", parse_disc)?;
    QuadOrderElem::new(x, y, disc)
}

/// An order element; scalars take the discriminant `default_disc`.
pub fn parse_order_elem(v: &Value, default_disc: i64) -> Result<QuadOrderElem> {
    let m = object(v, "order element")?;
    match m.get("type").and_then(Value::as_str) {
        Some("scalar") => QuadOrderElem::from_int(at(m, "m", parse_integer)?, default_disc),
        _ => parse_order_fields(m),
    }
}

fn parse_dynamic(curve: &PrimeCurve, v: &Value) -> Result<AffineDynamic> {
    let m = object(v, "affine map")?;
    let h = at(m, "h", parse_endomorphism)?;
    h.check_supported(curve).map_err(|e| Error::parse("h", e.to_string()))?;
    let q = at_or(m, "q", CurvePoint::Infinity, |v| parse_point(curve, v))?;
    Ok(AffineDynamic { h, q })
}

#[derive(Clone, Debug)]
pub enum DynamicsRequest {
    Identity {
        curve: PrimeCurve,
        h: Endomorphism,
        n_max: u64,
        trials: usize,
        seed: u64,
    },
    Orbit {
        curve: PrimeCurve,
        f: AffineDynamic,
        g: AffineDynamic,
        a: CurvePoint,
        b: CurvePoint,
        max_iter: u64,
    },
    EndoCheck {
        f: QuadOrderElem,
        h: QuadOrderElem,
        m0: u32,
        n0: u32,
        m: u32,
        n: u32,
    },
    Bridge {
        f: QuadOrderElem,
        h: QuadOrderElem,
        m0: u32,
        n0: u32,
    },
}

fn exponent(v: &Value) -> Result<u32> {
    Ok(parse_u64_in(v, 1, MAX_EXPONENT as u64)? as u32)
}

fn order_pair(m: &Map<String, Value>) -> Result<(QuadOrderElem, QuadOrderElem)> {
    let disc_of = |key: &str| {
        m.get(key)
            .and_then(Value::as_object)
            .filter(|o| o.get("type").and_then(Value::as_str) != Some("scalar"))
            .and_then(|o| o.get("disc"))
            .and_then(|d| parse_disc(d).ok())
    };
    let disc = disc_of("f").or_else(|| disc_of("h")).unwrap_or(-4);
    let f = at(m, "f", |v| parse_order_elem(v, disc))?;
    let h = at(m, "h", |v| parse_order_elem(v, disc))?;
    if f.disc != h.disc {
        return Err(Error::parse("h.disc", "f and h must lie in the same order"));
    }
    Ok((f, h))
}

/// The body of a `dynamics <op>` request.
pub fn parse_dynamics(op: &str, v: &Value) -> Result<DynamicsRequest> {
    let m = object(v, "dynamics request")?;
    match op {
        "identity" => {
            let curve = at(m, "curve", parse_curve)?;
            let h = at(m, "h", parse_endomorphism)?;
            h.check_supported(&curve).map_err(|e| Error::parse("h", e.to_string()))?;
            Ok(DynamicsRequest::Identity {
                curve,
                h,
                n_max: at_or(m, "n_max", 20, |v| parse_u64_in(v, 1, 10_000))?,
                trials: at_or(m, "trials", 50, |v| parse_u64_in(v, 1, 100_000))? as usize,
                seed: at_or(m, "seed", 0, |v| parse_u64_in(v, 0, u64::MAX))?,
            })
        }
        "orbit" => {
            let curve = at(m, "curve", parse_curve)?;
            Ok(DynamicsRequest::Orbit {
                f: at(m, "f", |v| parse_dynamic(&curve, v))?,
                g: at(m, "g", |v| parse_dynamic(&curve, v))?,
                a: at(m, "A", |v| parse_point(&curve, v))?,
                b: at(m, "B", |v| parse_point(&curve, v))?,
                max_iter: at(m, "max_iter", |v| parse_u64_in(v, 1, MAX_ITERATIONS))?,
                curve,
            })
        }
        "endo-check" => {
            let (f, h) = order_pair(m)?;
            Ok(DynamicsRequest::EndoCheck {
                f,
                h,
                m0: at(m, "m0", exponent)?,
                n0: at(m, "n0", exponent)?,
                m: at(m, "m", exponent)?,
                n: at(m, "n", exponent)?,
            })
        }
        "bridge" => {
            let (f, h) = order_pair(m)?;
            Ok(DynamicsRequest::Bridge {
                f,
                h,
                m0: at(m, "m0", exponent)?,
                n0: at(m, "n0", exponent)?,
            })
        }
        other => Err(Error::parse("", format!("unknown dynamics operation `{other}`"))),
    }
}

pub fn instance_to_json(inst: &UnitEquationInstance) -> Value {
    serde_json::json!({
        "a": inst.a.to_literal(),
        "a_prime": inst.a_p.to_literal(),
        "b": inst.b.to_literal(),
        "b_prime": inst.b_p.to_literal(),
        "gamma1": semigroup_to_json(&inst.gamma1),
        "gamma2": semigroup_to_json(&inst.gamma2),
    })
}

pub fn semigroup_to_json(s: &SemigroupSpec) -> Value {
    serde_json::json!({
        "generators": s.generators.iter().map(Quaternion::to_literal).collect::<Vec<_>>(),
        "labels": s.labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::rat;
    use proptest::prelude::*;
    use serde_json::json;

    fn path_of(e: Error) -> String {
        match e {
            Error::Parse { path, .. } => path,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rat(&json!("3/6")).unwrap(), rat(1, 2));
        assert_eq!(parse_rat(&json!("-7")).unwrap(), rat(-7, 1));
        assert_eq!(parse_rat(&json!(5)).unwrap(), rat(5, 1));
        assert!(parse_rat(&json!("1/0")).is_err());
        assert!(parse_rat(&json!("1/-2")).is_err());
        assert!(parse_rat(&json!("0x10")).is_err());
        assert!(parse_rat(&json!(1.5)).is_err());
    }

    #[test]
    fn algebraic_literals() {
        let s2 = parse_algebraic_literal(&json!({"minpoly": ["-2", "0", "1"], "interval": ["1", "2"]})).unwrap();
        assert_eq!(s2, AlgebraicReal::sqrt_int(2));
        // reducible input is reduced to the factor owning the root
        let r = parse_algebraic_literal(&json!({"minpoly": ["-2", "1", "-2", "1"], "interval": ["1", "3"]})).unwrap();
        assert_eq!(r, AlgebraicReal::from_int(2));
        let e = parse_algebraic_literal(&json!({"minpoly": ["-2", "0", "1"], "interval": ["-2", "2"]})).unwrap_err();
        assert_eq!(path_of(e), "");
        let e = parse_algebraic_literal(&json!({"minpoly": ["-2", "x", "1"], "interval": ["1", "2"]})).unwrap_err();
        assert_eq!(path_of(e), "minpoly[1]");
        let big: Vec<String> = (0..=MAX_LITERAL_DEGREE + 1).map(|_| "1".to_string()).collect();
        assert!(parse_algebraic_literal(&json!({"minpoly": big, "interval": ["0", "1"]})).is_err());
    }

    #[test]
    fn literal_round_trip() {
        let x = AlgebraicReal::sqrt_int(3).add(&AlgebraicReal::sqrt_int(2));
        assert_eq!(parse_algebraic_literal(&x.to_literal()).unwrap(), x);
        let q = Quaternion::new(x.clone(), rat(1, 3).into(), 0.into(), x.neg());
        assert_eq!(parse_quaternion(&q.to_literal()).unwrap(), q);
    }

    #[test]
    fn instance_paths() {
        let ok = json!({
            "a": ["1","0","0","0"], "a_prime": ["1","0","0","0"],
            "b": ["-1","0","0","0"], "b_prime": ["1","0","0","0"],
            "gamma1": {"generators": [["3","0","0","0"]]},
            "gamma2": {"generators": [["2","0","0","0"]], "labels": ["two"]},
        });
        let inst = parse_instance(&ok).unwrap();
        assert_eq!(inst.gamma2.labels, vec!["two".to_string()]);
        assert_eq!(parse_instance(&instance_to_json(&inst)).unwrap(), inst);

        let mut bad = ok.clone();
        bad["gamma2"] = json!({"generators": [["2","0","0","0"], ["0","1","0","0"]]});
        assert_eq!(path_of(parse_instance(&bad).unwrap_err()), "gamma2.generators[1]");
        let mut bad = ok.clone();
        bad["gamma2"]["labels"] = json!(["x", "y"]);
        assert_eq!(path_of(parse_instance(&bad).unwrap_err()), "gamma2.labels");
        let mut bad = ok.clone();
        bad["b"] = json!(["0", "0", "0", "0"]);
        assert_eq!(path_of(parse_instance(&bad).unwrap_err()), "b");
        let mut bad = ok.clone();
        bad["gamma1"]["generators"][0][2] = json!("1/0");
        assert_eq!(path_of(parse_instance(&bad).unwrap_err()), "gamma1.generators[0][2]");
        let mut bad = ok;
        bad.as_object_mut().unwrap().remove("a_prime");
        assert_eq!(path_of(parse_instance(&bad).unwrap_err()), "a_prime");
    }

    #[test]
    fn dynamics_requests() {
        let v = json!({"curve": {"p": 1009, "a4": 1, "a6": 1}, "h": {"type": "scalar", "m": 3}});
        assert!(matches!(parse_dynamics("identity", &v).unwrap(), DynamicsRequest::Identity { n_max: 20, trials: 50, .. }));
        let v = json!({"curve": {"p": 1009, "a4": 1, "a6": 1}, "h": {"type": "order", "x": 0, "y": 1, "disc": -4}});
        assert_eq!(path_of(parse_dynamics("identity", &v).unwrap_err()), "h");
        let v = json!({"curve": {"p": 1008, "a4": 1, "a6": 1}, "h": {"type": "scalar", "m": 3}});
        assert_eq!(path_of(parse_dynamics("identity", &v).unwrap_err()), "curve.p");
        let v = json!({"f": {"type": "scalar", "m": 2}, "h": {"type": "order", "x": 1, "y": 1, "disc": -4}, "m0": 1, "n0": 1});
        let DynamicsRequest::Bridge { f, .. } = parse_dynamics("bridge", &v).unwrap() else { panic!() };
        assert_eq!(f.disc, -4);
        let v = json!({"curve": {"p": 1009, "a4": 1, "a6": 1},
            "f": {"h": {"type": "scalar", "m": 2}}, "g": {"h": {"type": "scalar", "m": 2}, "q": [0, 1]},
            "A": [0, 1], "B": "O", "max_iter": 10});
        assert!(matches!(parse_dynamics("orbit", &v).unwrap(), DynamicsRequest::Orbit { .. }));
        let mut bad = v;
        bad["A"] = json!([0, 2]);
        assert_eq!(path_of(parse_dynamics("orbit", &bad).unwrap_err()), "A");
    }

    proptest! {
        #[test]
        fn parsers_never_panic(s in "\\PC{0,64}") {
            if let Ok(v) = parse_json(&s) {
                let _ = parse_algebraic_literal(&v);
                let _ = parse_quaternion(&v);
                let _ = parse_instance(&v);
                let _ = parse_dynamics("orbit", &v);
            }
        }

        #[test]
        fn rational_literals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = rat(n, d);
            let v = AlgebraicReal::from_rat(q.clone()).to_literal();
            prop_assert_eq!(parse_rat(&v).unwrap(), q);
        }
    }
}
