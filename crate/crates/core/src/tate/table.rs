//! Cohomology tables `c ↦ Σ_k dim ℍ^k(F(c)) h^k` and the tests built on
//! them.

use crate::complexes::{BettiTable, FreeEComplex};
use crate::error::{Result, TateError};
use crate::multigraded::{box_points, Multidegree};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Laurent polynomial in `h` with nonnegative coefficients, as a map from
/// exponent to coefficient with no zero coefficients stored.
pub type HPoly = BTreeMap<i64, u64>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    pub entries: BTreeMap<Multidegree, HPoly>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    c: Vec<i64>,
    poly: Vec<(i64, u64)>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    entries: Vec<EntryJson>,
}

pub fn format_poly(p: &HPoly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (&k, &c) in p.iter().rev() {
        let coef = if c == 1 && k != 0 { String::new() } else { c.to_string() };
        parts.push(match k {
            0 => coef,
            1 => format!("{coef}h"),
            _ => format!("{coef}h^{k}"),
        });
    }
    parts.join("+")
}

impl CohomologyTable {
    /// Entries for every `c` in `[lo, hi]` read off a window:
    /// `Σ_d β_{d,c} h^{d-|c|}`.
    pub fn from_betti(betti: &BettiTable, lo: &Multidegree, hi: &Multidegree) -> Self {
        let mut entries: BTreeMap<Multidegree, HPoly> = box_points(lo, hi).into_iter().map(|c| (c, HPoly::new())).collect();
        for ((d, a), &m) in &betti.entries {
            if m == 0 {
                continue;
            }
            if let Some(p) = entries.get_mut(a) {
                *p.entry(d - a.total()).or_default() += m as u64;
            }
        }
        CohomologyTable { entries }
    }

    pub fn from_window(t: &FreeEComplex, lo: &Multidegree, hi: &Multidegree) -> Self {
        Self::from_betti(&t.betti(), lo, hi)
    }

    pub fn get(&self, c: &Multidegree) -> Option<&HPoly> {
        self.entries.get(c)
    }

    /// `h^k(F(c))`, or `None` outside the table.
    pub fn h(&self, c: &Multidegree, k: i64) -> Option<u64> {
        self.entries.get(c).map(|p| p.get(&k).copied().unwrap_or(0))
    }

    /// `Σ_k (-1)^k h^k(F(c))`.
    pub fn euler(&self, c: &Multidegree) -> Option<i64> {
        self.entries.get(c).map(|p| p.iter().map(|(&k, &v)| if k.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) }).sum())
    }

    /// Entrywise sum over the common support.
    pub fn add(&self, other: &CohomologyTable) -> CohomologyTable {
        let mut entries = BTreeMap::new();
        for (c, p) in &self.entries {
            if let Some(q) = other.entries.get(c) {
                let mut s = p.clone();
                for (&k, &v) in q {
                    *s.entry(k).or_default() += v;
                }
                entries.insert(c.clone(), s);
            }
        }
        CohomologyTable { entries }
    }

    pub fn restrict(&self, lo: &Multidegree, hi: &Multidegree) -> CohomologyTable {
        CohomologyTable {
            entries: self.entries.iter().filter(|&(c, _)| c.ge(lo) && c.le(hi)).map(|(c, p)| (c.clone(), p.clone())).collect(),
        }
    }

    /// Smallest and largest degree present, componentwise.
    pub fn bounds(&self) -> Option<(Multidegree, Multidegree)> {
        let mut it = self.entries.keys();
        let first = it.next()?.clone();
        Some(it.fold((first.clone(), first), |(lo, hi), c| (lo.meet(c), hi.join(c))))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries = self
            .entries
            .iter()
            .map(|(c, p)| EntryJson { c: c.0.clone(), poly: p.iter().map(|(&k, &v)| (k, v)).collect() })
            .collect();
        serde_json::to_value(TableJson { entries }).expect("table serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: TableJson = serde_json::from_value(v.clone()).map_err(|e| TateError::BadInput(format!("table JSON: {e}")))?;
        let mut entries = BTreeMap::new();
        for e in j.entries {
            let p: HPoly = e.poly.into_iter().filter(|&(_, v)| v != 0).collect();
            entries.insert(Multidegree(e.c), p);
        }
        Ok(CohomologyTable { entries })
    }

    /// For `t = 2`: rows from the largest second coordinate down, columns
    /// by increasing first coordinate.
    pub fn format_matrix(&self) -> Result<String> {
        let (lo, hi) = self.bounds().ok_or_else(|| TateError::BadInput("empty table".into()))?;
        if lo.len() != 2 {
            return Err(TateError::BadInput(format!("matrix display needs t = 2, got t = {}", lo.len())));
        }
        let mut cells = Vec::new();
        for y in (lo[1]..=hi[1]).rev() {
            let row: Vec<String> = (lo[0]..=hi[0])
                .map(|x| match self.entries.get(&Multidegree::from([x, y])) {
                    Some(p) => format_poly(p),
                    None => "?".into(),
                })
                .collect();
            cells.push(row);
        }
        let w = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for row in cells {
            for (i, s) in row.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{s:>w$}");
            }
            out.push('\n');
        }
        Ok(out)
    }

    /// Plain listing `c: poly`, one per line, for any `t`.
    pub fn format_list(&self) -> String {
        let mut out = String::new();
        for (c, p) in &self.entries {
            let _ = writeln!(out, "{c}: {}", format_poly(p));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[(i64, u64)]) -> HPoly {
        v.iter().copied().collect()
    }

    #[test]
    fn poly_formatting() {
        assert_eq!(format_poly(&poly(&[])), "0");
        assert_eq!(format_poly(&poly(&[(1, 1)])), "h");
        assert_eq!(format_poly(&poly(&[(0, 32)])), "32");
        assert_eq!(format_poly(&poly(&[(2, 2), (0, 1)])), "2h^2+1");
        assert_eq!(format_poly(&poly(&[(-1, 3)])), "3h^-1");
    }

    #[test]
    fn json_round_trip() {
        let mut t = CohomologyTable::default();
        t.entries.insert(Multidegree::from([0, 0]), poly(&[(1, 1)]));
        t.entries.insert(Multidegree::from([1, 0]), poly(&[]));
        let j = t.to_json();
        assert_eq!(j["entries"][0]["c"], serde_json::json!([0, 0]));
        assert_eq!(j["entries"][0]["poly"], serde_json::json!([[1, 1]]));
        assert_eq!(CohomologyTable::from_json(&j).unwrap(), t);
    }

    #[test]
    fn matrix_layout() {
        let mut t = CohomologyTable::default();
        t.entries.insert(Multidegree::from([0, 0]), poly(&[(0, 1)]));
        t.entries.insert(Multidegree::from([1, 0]), poly(&[(0, 2)]));
        t.entries.insert(Multidegree::from([0, 1]), poly(&[(0, 2)]));
        t.entries.insert(Multidegree::from([1, 1]), poly(&[(0, 4)]));
        assert_eq!(t.format_matrix().unwrap(), "2 4\n1 2\n");
        assert_eq!(t.euler(&Multidegree::from([1, 1])), Some(4));
    }
}
