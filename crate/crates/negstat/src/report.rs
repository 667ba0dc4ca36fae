//! JSON and TSV renderings of series, statistics and verification outcomes.
//!
//! Object keys are emitted in sorted order, so output is byte-stable for fixed
//! inputs (pass `timing = false` to drop the only nondeterministic field).

use std::time::Duration;

use negstat_core::{
    Caps, Monomial, Outcome, Series, SignedPermutation, StatisticBundle, Var, VerifyParams,
};
use serde_json::{json, Map, Value};

pub fn caps_json(caps: &Caps) -> Value {
    let mut map = Map::new();
    for v in Var::ALL {
        if let Some(c) = caps.get(v) {
            map.insert(v.name().to_string(), c.into());
        }
    }
    Value::Object(map)
}

pub fn monomial_json(m: &Monomial) -> Value {
    let mut map = Map::new();
    for v in Var::ALL {
        let e = m.exponent(v);
        if e > 0 {
            map.insert(v.name().to_string(), e.into());
        }
    }
    Value::Object(map)
}

/// `{caps, terms: [{exponents, coefficient}]}`; coefficients are decimal strings.
pub fn series_json(s: &Series) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(m, c)| json!({ "exponents": monomial_json(m), "coefficient": c.to_string() }))
        .collect();
    json!({ "caps": caps_json(&s.caps()), "terms": terms })
}

pub const DDES_NOTE: &str =
    "ddes is the size of the DDes multiset after removing zeros; it always equals des + n1 + epsilon";

pub fn statistics_json(p: &SignedPermutation, s: &StatisticBundle) -> Value {
    json!({
        "window": p.to_string(),
        "inv": s.inv,
        "maj": s.maj,
        "des": s.des,
        "n1": s.n1,
        "n2": s.n2,
        "len_B": s.len_b,
        "len_D": s.len_d,
        "nmaj": s.nmaj,
        "ndes": s.ndes,
        "dmaj": s.dmaj,
        "ddes": s.ddes,
        "fmaj": 2 * s.maj + s.n1,
        "epsilon": s.epsilon,
        "Des": s.des_set.members(),
        "Des_B": s.des_b_set.members(),
        "Des_D": s.des_d_set.members(),
        "NDes": s.ndes_multiset,
        "DDes": s.ddes_multiset,
        "note": DDES_NOTE,
    })
}

pub fn params_json(p: &VerifyParams) -> Value {
    json!({
        "n_min": p.n_min,
        "n_max": p.n_max,
        "set": p.set,
        "mode": p.mode.to_string(),
        "caps": p.caps.as_ref().map(caps_json),
    })
}

pub fn outcome_json(o: &Outcome, params: &VerifyParams, elapsed: Option<Duration>) -> Value {
    let mut v = json!({
        "identity_id": o.id.name(),
        "params": params_json(params),
        "status": o.status.name(),
        "checks": o.checks,
        "label": o.label,
        "lhs": series_json(&o.lhs),
        "rhs": series_json(&o.rhs),
        "notes": o.notes,
    });
    if let Some(w) = &o.witness {
        v["witness"] = json!({
            "label": w.label,
            "monomial": monomial_json(&w.monomial),
            "lhs_coefficient": w.lhs.to_string(),
            "rhs_coefficient": w.rhs.to_string(),
        });
    }
    if let Some(d) = elapsed {
        v["elapsed_ms"] = (d.as_millis() as u64).into();
    }
    v
}

pub const TSV_HEADER: &str = "identity_id\tstatus\tchecks\telapsed_ms\tdetail";

pub fn tsv_row(o: &Outcome, elapsed: Option<Duration>) -> String {
    let detail = match &o.witness {
        Some(w) => format!("{} at {}: {} vs {}", w.label, w.monomial, w.lhs, w.rhs),
        None => o.label.clone(),
    };
    let ms = elapsed
        .map(|d| d.as_millis().to_string())
        .unwrap_or_else(|| "-".into());
    format!(
        "{}\t{}\t{}\t{}\t{}",
        o.id,
        o.status.name(),
        o.checks,
        ms,
        detail.replace('\t', " ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_shape() {
        let s = Series::univariate(Var::Q, &[1, 0, -2], Caps::unbounded().with(Var::Q, 5));
        assert_eq!(
            series_json(&s),
            json!({
                "caps": {"q": 5},
                "terms": [
                    {"exponents": {}, "coefficient": "1"},
                    {"exponents": {"q": 2}, "coefficient": "-2"},
                ]
            })
        );
    }
}
