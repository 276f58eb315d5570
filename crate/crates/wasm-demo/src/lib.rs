//! Browser bindings: each function takes an input document as JSON text
//! and returns `{"ok": true, "text": …}` or `{"ok": false, "error": …}`.

use serde_json::json;
use tate_core::input::{InputDoc, Source};
use tate_core::multigraded::{Multidegree, RingSpec};
use tate_core::tate::{
    apply_u, beilinson_window, detect_split, tate_window_complex, CohomologyTable, SplitOutcome, WindowOptions,
};
use tate_core::{Result, TateError};
use wasm_bindgen::prelude::*;

/// Largest slice dimension the page will attempt.
const BUDGET: usize = 20_000;

fn reply(r: Result<String>) -> String {
    match r {
        Ok(text) => json!({"ok": true, "text": text}).to_string(),
        Err(e) => json!({"ok": false, "error": e.to_string()}).to_string(),
    }
}

fn options() -> WindowOptions {
    let mut o = WindowOptions::default();
    o.extend.budget = BUDGET;
    o
}

fn degree(spec: &RingSpec, s: &str) -> Result<Multidegree> {
    let v: std::result::Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    let d = Multidegree(v.map_err(|e| TateError::BadInput(format!("degree {s:?}: {e}")))?);
    spec.check(&d)?;
    Ok(d)
}

fn sheaf(input: &str) -> Result<tate_core::smodule::SComplex> {
    match InputDoc::parse(input)?.resolve()? {
        Source::Sheaf(c) => Ok(c),
        _ => Err(TateError::BadInput("the demo takes modules, line bundles or complexes".into())),
    }
}

fn table_of(input: &str, lo: &str, hi: &str) -> Result<(RingSpec, CohomologyTable)> {
    let mc = sheaf(input)?;
    let lo = degree(&mc.ring, lo)?;
    let hi = degree(&mc.ring, hi)?;
    if !lo.le(&hi) {
        return Err(TateError::BadInput(format!("empty box [{lo}, {hi}]")));
    }
    if tate_core::multigraded::box_points(&lo, &hi).len() > 400 {
        return Err(TateError::BoxOverflow("the demo is limited to 400 degrees".into()));
    }
    let w = tate_window_complex(&mc, &lo, &hi, &options())?;
    Ok((mc.ring.clone(), CohomologyTable::from_window(&w.complex, &lo, &hi)))
}

/// Cohomology table on the box `[lo, hi]`, with corners written `a,b`.
#[wasm_bindgen]
pub fn cohomology_table(input: &str, lo: &str, hi: &str) -> String {
    reply(table_of(input, lo, hi).and_then(|(spec, t)| if spec.t() == 2 { t.format_matrix() } else { Ok(t.format_list()) }))
}

/// The Beilinson monad, with line bundles written out where possible.
#[wasm_bindgen]
pub fn beilinson_monad(input: &str) -> String {
    reply(sheaf(input).and_then(|mc| {
        let spec = mc.ring.clone();
        let w = tate_window_complex(&mc, &-&spec.n_deg(), &spec.zero(), &options())?;
        Ok(apply_u(&beilinson_window(&w.complex)).format(true))
    }))
}

/// Whether the table on `[lo, hi]` is that of a sum of line bundles.
#[wasm_bindgen]
pub fn split_test(input: &str, lo: &str, hi: &str) -> String {
    reply(table_of(input, lo, hi).and_then(|(spec, t)| {
        Ok(match detect_split(&spec, &t)? {
            SplitOutcome::Split { summands } => {
                let parts: Vec<String> =
                    summands.iter().map(|(c, m)| if *m == 1 { format!("O{c}") } else { format!("O{c}^{m}") }).collect();
                format!("splits as {}", parts.join(" ⊕ "))
            }
            SplitOutcome::NotSplit { reason } => format!("does not split: {reason}"),
            SplitOutcome::Inconclusive { reason } => format!("inconclusive: {reason}"),
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn text(s: String) -> String {
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["ok"], true, "{v}");
        v["text"].as_str().unwrap().to_string()
    }

    const LINE: &str = r#"{"kind":"line_bundles","ring":{"n":[1,1]},"twists":[[3,-2]]}"#;

    #[test]
    fn table_of_the_structure_sheaf() {
        let t = text(cohomology_table(r#"{"kind":"catalog","name":"structure_sheaf"}"#, "-1,-1", "1,1"));
        // rows run from the largest second coordinate down
        assert_eq!(t, "0 2 4\n0 1 2\n0 0 0\n");
    }

    #[test]
    fn monad_of_a_line_bundle() {
        assert_eq!(text(beilinson_monad(LINE)), "0 → O^6(-1,-1) → O^3(-1,0) ⊕ O^8(0,-1) → O^4 → 0");
    }

    #[test]
    fn split_of_a_sum() {
        let m = r#"{"kind":"line_bundles","ring":{"n":[1,1]},"twists":[[1,0],[0,0]]}"#;
        assert_eq!(text(split_test(m, "-3,-3", "3,3")), "splits as O(1,0) ⊕ O(0,0)");
    }

    #[test]
    fn errors_are_reported() {
        let v: Value = serde_json::from_str(&cohomology_table("{", "0,0", "1,1")).unwrap();
        assert_eq!(v["ok"], false);
        let v: Value = serde_json::from_str(&cohomology_table(LINE, "0", "1,1")).unwrap();
        assert_eq!(v["ok"], false);
        let v: Value = serde_json::from_str(&cohomology_table(LINE, "-20,-20", "20,20")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("400"));
    }
}
