//! Deterministic JSON renderings of solver output. Keys are emitted in
//! sorted order and every number outside the f64-exact range is a string.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::baker::BakerCertificate;
use crate::realalg::{rat_literal, RInterval};
use crate::semigroup::{EnumeratedElement, SemigroupSpec, Word};
use crate::solver::{
    Certificate, HeightCap, LocusBound, LocusKind, LocusSolutions, ReductionBound, Solution, SolutionSet,
};

/// Significant digits kept when a cap is shown in scientific notation.
const SCI_DIGITS: usize = 6;

/// Decimal scientific notation, rounded up so the text still bounds the value.
pub fn scientific_upper(n: &BigInt) -> String {
    assert!(!n.is_negative(), "caps are nonnegative");
    let s = n.to_string();
    if s.len() <= SCI_DIGITS {
        return format!("{s}e0");
    }
    let exp = s.len() - 1;
    let head: BigInt = s[..SCI_DIGITS].parse().expect("digits");
    let tail_nonzero = s[SCI_DIGITS..].bytes().any(|b| b != b'0');
    let head = if tail_nonzero { head + 1 } else { head };
    let h = head.to_string();
    // rounding 999999 up carries into a new digit
    let (h, exp) = if h.len() > SCI_DIGITS { (h[..SCI_DIGITS].to_string(), exp + 1) } else { (h, exp) };
    let digits = h.trim_end_matches('0');
    let digits = if digits.is_empty() { "1" } else { digits };
    if digits.len() == 1 {
        format!("{digits}e{exp}")
    } else {
        format!("{}.{}e{exp}", &digits[..1], &digits[1..])
    }
}

pub fn cap_json(cap: &HeightCap) -> Value {
    match cap {
        HeightCap::Finite(v) => json!({"value": v.to_string(), "overflow": false}),
        HeightCap::Overflow(h) => json!({
            "value": "OVERFLOW",
            "overflow": true,
            "scientific": scientific_upper(h),
        }),
    }
}

pub fn interval_json(iv: &RInterval) -> Value {
    json!([rat_literal(&iv.lo), rat_literal(&iv.hi)])
}

pub fn baker_json(cert: &BakerCertificate) -> Value {
    cert.to_json()
}

pub fn reduction_json(b: &ReductionBound) -> Value {
    json!({
        "certified_H_cap": cap_json(&b.h_cap),
        "baker": baker_json(&b.baker),
        "comparability": {
            "C1": rat_literal(&b.comparability.c1),
            "C2": rat_literal(&b.comparability.c2),
            "C2_p": rat_literal(&b.comparability.c2_p),
        },
        "regime_caps": {
            "small_norm": b.regime_caps[0].to_string(),
            "threshold": b.regime_caps[1].to_string(),
            "baker": b.regime_caps[2].to_string(),
        },
        "height_multiplier": b.height_multiplier.to_string(),
        "constant_term_dropped": b.constant_dropped,
        "decay_rate": interval_json(&b.decay_rate),
        "decay_scale": interval_json(&b.decay_scale),
    })
}

pub fn locus_json(b: &LocusBound) -> Value {
    let kind = match b.kind {
        LocusKind::Empty => "empty",
        LocusKind::Real => "real",
        LocusKind::Baker => "baker",
    };
    json!({
        "kind": kind,
        "certified_N_cap": cap_json(&b.cap),
        "baker": b.baker.as_ref().map(baker_json),
        "height_multiplier": b.height_multiplier.to_string(),
        "C_prime": b.c_prime.as_ref().map(BigInt::to_string),
    })
}

pub fn certificate_json(c: &Certificate) -> Value {
    let mut v = reduction_json(&c.reduction);
    let m = v.as_object_mut().expect("object");
    m.insert("oracle_window".into(), json!({"max_word_len": c.oracle_window}));
    if let Some(l) = &c.locus {
        m.insert("locus".into(), locus_json(l));
    }
    v
}

pub fn word_json(w: &Word, spec: &SemigroupSpec) -> Value {
    json!({
        "letters": w.labels(spec),
        "exponents": w.exponents(spec.len()),
    })
}

pub fn solution_json(s: &Solution, gamma1: &SemigroupSpec, gamma2: &SemigroupSpec) -> Value {
    json!({
        "f_word": word_json(&s.f_word, gamma1),
        "g_word": word_json(&s.g_word, gamma2),
        "f_value": s.f_value.to_literal(),
        "g_value": s.g_value.to_literal(),
    })
}

pub fn solution_set_json(set: &SolutionSet, gamma1: &SemigroupSpec, gamma2: &SemigroupSpec) -> Value {
    json!({
        "solutions": set.solutions.iter().map(|s| solution_json(s, gamma1, gamma2)).collect::<Vec<_>>(),
        "solution_count": set.solutions.len(),
        "certificate": set.certificate.as_ref().map(certificate_json),
        "completeness_status": set.completeness_status.as_str(),
    })
}

pub fn locus_solutions_json(sols: &LocusSolutions, gamma: &SemigroupSpec, window: usize) -> Value {
    json!({
        "solutions": sols.solutions.iter().map(|(w, f)| json!({
            "f_word": word_json(w, gamma),
            "f_value": f.to_literal(),
        })).collect::<Vec<_>>(),
        "solution_count": sols.solutions.len(),
        "certificate": {
            "locus": locus_json(&sols.bound),
            "oracle_window": {"max_word_len": window},
        },
        "completeness_status": if sols.bound.cap.covered_by(window, gamma.len()) {
            "ORACLE_COMPLETE_BELOW_CAP"
        } else {
            "ORACLE_WINDOW_ONLY"
        },
    })
}

pub fn element_json(e: &EnumeratedElement, spec: &SemigroupSpec) -> Value {
    json!({
        "value": e.value.to_literal(),
        "norm": e.abs_sq.to_literal(),
        "witnesses": e.witnesses.iter().map(|w| w.labels(spec)).collect::<Vec<_>>(),
    })
}

/// Parses a cap rendered by [`cap_json`] back into an integer, when finite.
pub fn parse_cap(v: &Value) -> Option<BigInt> {
    let s = v.get("value")?.as_str()?;
    let n: BigInt = s.parse().ok()?;
    (!n.is_zero()).then_some(n)
}
