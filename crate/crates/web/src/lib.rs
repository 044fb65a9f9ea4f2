//! Browser bindings for the demo page. Every export takes plain strings and
//! returns a JSON document; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use stabcert::schubert::{double_schubert, schubert_poly};
use stabcert::stability::{derive_twist_chain, hn_split_p1, ChainOutcome};
use stabcert::{rational, ChargeParams, Permutation, SplitSheafP1};

fn respond(result: Result<Value, String>) -> String {
    result.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("cannot read {t:?}")))
        .collect()
}

/// Single or double Schubert polynomial of a permutation in one-line notation.
#[wasm_bindgen]
pub fn schubert(w: &str, double: bool) -> String {
    respond((|| {
        let w = Permutation::new(list(w)?).map_err(|e| e.to_string())?;
        let poly = if double { double_schubert(&w) } else { schubert_poly(&w) };
        Ok(json!({
            "w": w.to_string(),
            "length": w.length(),
            "reduced_word": w.canonical_reduced_word(),
            "poly": poly.to_string(),
            "terms": poly.len(),
        }))
    })())
}

/// HN factors of `⊕O(d) ⊕ torsion` on P¹ with their exact charges.
#[wasm_bindgen]
pub fn hn_p1(degrees: &str, torsion: &str, a: &str, b: &str) -> String {
    respond((|| {
        let p = ChargeParams::new(
            rational::parse(a).map_err(|e| e.to_string())?,
            rational::parse(b).map_err(|e| e.to_string())?,
            1,
        )
        .map_err(|e| e.to_string())?;
        let sheaf = SplitSheafP1::new(list(degrees)?, list(torsion)?).map_err(|e| e.to_string())?;
        let factors = hn_split_p1(&sheaf, &p).map_err(|e| e.to_string())?;
        let total = sheaf.charge(&p);
        Ok(json!({
            "total": { "re": rational::format(&total.re), "im": rational::format(&total.im) },
            "factors": factors,
        }))
    })())
}

/// Twist-chain certificates for `a₁, a₂, …` against the bound `N`.
#[wasm_bindgen]
pub fn twist_chain(adegrees: &str, big_n: u32) -> String {
    respond((|| {
        let report = derive_twist_chain(&list(adegrees)?, u64::from(big_n)).map_err(|e| e.to_string())?;
        let proved = report.outcomes.iter().filter(|o| matches!(o, ChainOutcome::Proved(_))).count();
        let mut doc = serde_json::to_value(&report).map_err(|e| e.to_string())?;
        doc["proved"] = json!(proved);
        Ok(doc)
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn schubert_examples() {
        assert_eq!(parse(schubert("2,1", false))["poly"], "x1");
        assert_eq!(parse(schubert("1, 3, 2", false))["poly"], "x1 + x2");
        assert_eq!(parse(schubert("2,1", true))["poly"], "x1 - y1");
        assert!(parse(schubert("1,1", false))["error"].is_string());
    }

    #[test]
    fn hn_example() {
        let v = parse(hn_p1("5", "2", "1", "0"));
        assert_eq!(v["factors"].as_array().unwrap().len(), 2);
        assert_eq!(v["total"], json!({ "re": "-7", "im": "1" }));
        assert!(parse(hn_p1("1", "", "0.5", "0"))["error"].is_string());
        assert!(parse(hn_p1("", "", "1", "0"))["error"].is_string());
    }

    #[test]
    fn chain_examples() {
        let v = parse(twist_chain("2,5", 3));
        assert_eq!(v["proved"], 2);
        let v = parse(twist_chain("4", 3));
        assert_eq!(v["proved"], 0);
        assert_eq!(v["outcomes"][0]["status"], "refused");
    }
}
