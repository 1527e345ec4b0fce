use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::distribution::{weight_distribution, weight_distribution_parallel, WeightDistribution};
use crate::error::{Error, Result};
use crate::field::{format_modulus, parse_modulus, Field, FpElement};
use crate::theory::{predicted_distribution, ratio_holds};

/// Parameters `[n, k, d]` of one code together with its enumerated weight
/// distribution and the comparison against the closed-form prediction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SummaryRecord", try_from = "SummaryRecord")]
pub struct CodeSummary {
    pub p: u32,
    pub m: u32,
    pub a: u32,
    pub modulus: Vec<u32>,
    pub n: u64,
    pub k: u32,
    pub d: u64,
    pub distribution: WeightDistribution,
    pub matches_theory: bool,
    /// `p · w_min > (p-1) · w_max` on the enumerated weights.
    pub wmin_wmax_holds: bool,
}

impl CodeSummary {
    /// Compact JSON with lexicographically sorted keys.
    pub fn to_json(&self) -> String {
        // serde_json::Value keeps object keys in a BTreeMap
        let value = serde_json::to_value(self).expect("summary serializes");
        serde_json::to_string(&value).expect("value serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn code_summary(field: &Field, a: FpElement, budget: u64) -> Result<CodeSummary> {
    code_summary_with(field, a, budget, false)
}

/// As [`code_summary`], optionally enumerating on the rayon pool.
pub fn code_summary_with(
    field: &Field,
    a: FpElement,
    budget: u64,
    parallel: bool,
) -> Result<CodeSummary> {
    if a.is_zero() {
        return Err(Error::BadA);
    }
    let (p, m) = (field.p(), field.m());
    let predicted = predicted_distribution(p, m)?;
    let distribution = if parallel {
        weight_distribution_parallel(field, a, budget)?
    } else {
        weight_distribution(field, a, budget)?
    };
    let k = distribution
        .dimension(p)
        .ok_or(Error::NonIntegral("log_p of the number of codewords"))?;
    let expected: Vec<(u64, u64)> = predicted.rows.iter().copied().filter(|r| r.1 > 0).collect();
    Ok(CodeSummary {
        p,
        m,
        a: a.value(),
        modulus: field.spec().modulus().to_vec(),
        n: distribution.n(),
        k,
        d: distribution.min_nonzero(),
        matches_theory: distribution.entries() == expected.as_slice(),
        wmin_wmax_holds: ratio_holds(p, distribution.min_nonzero(), distribution.max_nonzero()),
        distribution,
    })
}

#[derive(Serialize, Deserialize)]
struct WeightRecord {
    w: u64,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct SummaryRecord {
    p: u32,
    m: u32,
    a: u32,
    modulus: String,
    n: u64,
    k: u32,
    d: u64,
    weights: Vec<WeightRecord>,
    matches_theory: bool,
    wmin_wmax_holds: bool,
}

impl From<CodeSummary> for SummaryRecord {
    fn from(s: CodeSummary) -> Self {
        SummaryRecord {
            p: s.p,
            m: s.m,
            a: s.a,
            modulus: format_modulus(&s.modulus),
            n: s.n,
            k: s.k,
            d: s.d,
            weights: s
                .distribution
                .entries()
                .iter()
                .map(|&(w, count)| WeightRecord { w, count })
                .collect(),
            matches_theory: s.matches_theory,
            wmin_wmax_holds: s.wmin_wmax_holds,
        }
    }
}

impl TryFrom<SummaryRecord> for CodeSummary {
    type Error = Error;

    fn try_from(r: SummaryRecord) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for WeightRecord { w, count } in r.weights {
            if counts.insert(w, count).is_some() {
                return Err(Error::Parse(format!("weight {w} listed twice")));
            }
        }
        Ok(CodeSummary {
            p: r.p,
            m: r.m,
            a: r.a,
            modulus: parse_modulus(&r.modulus)?,
            n: r.n,
            k: r.k,
            d: r.d,
            distribution: WeightDistribution::new(r.n, counts)?,
            matches_theory: r.matches_theory,
            wmin_wmax_holds: r.wmin_wmax_holds,
        })
    }
}
