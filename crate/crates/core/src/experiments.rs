//! Scripted desk-scale reproductions that emit JSON reports.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::coorder::{
    brute_force_coorder_oracle, finite_coorder, match_listing, prefix_coorder, project_l,
    project_m, type2_search, witness_set_e, CoorderError, CoorderVerdict, Fuel, MatchOutcome,
    ShiftPair, WitnessReport,
};
use crate::ordertype::{refute_type2, Type2Verdict};
use crate::rational::Rational;
use crate::sequences::{
    build_a, build_t, builtin_harmonic, builtin_thirds, finite_listing, interleave,
    rationals_in_interval, SetError, SetSpec,
};

pub const DEFAULT_M_MAX: usize = 10;
pub const DEFAULT_N_MAX: usize = 10;
pub const DEFAULT_PREFIX: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReproError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Coorder(#[from] CoorderError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DescriptorVerdict {
    Refuted,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairResult {
    pub left: String,
    pub right: String,
    pub descriptor_verdict: DescriptorVerdict,
    #[serde(skip)]
    pub reason: Option<String>,
    pub cells: Value,
    #[serde(skip)]
    pub all_witnessed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthPoint {
    #[serde(rename = "N")]
    pub prefix: usize,
    pub m_size: usize,
    pub l_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthSeries {
    pub left: String,
    pub right: String,
    pub m: usize,
    pub n: usize,
    pub points: Vec<GrowthPoint>,
    pub strictly_increasing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproReport {
    pub experiment: String,
    pub params: BTreeMap<String, Value>,
    pub pairs: Vec<PairResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub growth: Vec<GrowthSeries>,
    pub passed: bool,
    pub timing: Timing,
}

impl ReproReport {
    fn new(experiment: &str, params: BTreeMap<String, Value>) -> Self {
        ReproReport {
            experiment: experiment.to_string(),
            params,
            pairs: Vec::new(),
            checks: Vec::new(),
            growth: Vec::new(),
            passed: false,
            timing: Timing { elapsed_ms: 0 },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON report with the `timing` field removed.
    pub fn to_json_without_timing(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        strip_timing(&mut v);
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

pub fn strip_timing(report: &mut Value) {
    if let Value::Object(map) = report {
        map.remove("timing");
    }
}

fn grid_params(m_max: usize, n_max: usize, prefix: usize) -> BTreeMap<String, Value> {
    BTreeMap::from([
        ("m_max".to_string(), json!(m_max)),
        ("n_max".to_string(), json!(n_max)),
        ("N".to_string(), json!(prefix)),
    ])
}

fn compare_pair(
    left: &SetSpec,
    right: &SetSpec,
    m_max: usize,
    n_max: usize,
    prefix: usize,
) -> Result<PairResult, ReproError> {
    let verdict = refute_type2(left, right);
    let report: WitnessReport = type2_search(
        &mut left.listing(),
        &mut right.listing(),
        m_max,
        n_max,
        prefix,
    )?;
    let (descriptor_verdict, reason) = match verdict {
        Type2Verdict::Refuted { reason } => (DescriptorVerdict::Refuted, Some(reason)),
        Type2Verdict::Unknown => (DescriptorVerdict::Unknown, None),
    };
    Ok(PairResult {
        left: left.label().to_string(),
        right: right.label().to_string(),
        descriptor_verdict,
        reason,
        cells: report.cells_json(),
        all_witnessed: report.all_witnessed(),
    })
}

fn finish(mut report: ReproReport, start: Instant) -> ReproReport {
    report.timing.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Compares `A_i` with `A_j` for every `1 ≤ i < j ≤ i_max`.
pub fn repro_theorem9(
    i_max: u64,
    m_max: usize,
    n_max: usize,
    prefix: usize,
) -> Result<ReproReport, ReproError> {
    if i_max < 2 {
        return Err(ReproError::Precondition(format!(
            "i_max must be at least 2, got {i_max}"
        )));
    }
    let start = Instant::now();
    let mut params = grid_params(m_max, n_max, prefix);
    params.insert("i_max".to_string(), json!(i_max));
    let mut report = ReproReport::new("theorem9", params);

    let sets: Vec<SetSpec> = (1..=i_max).map(build_a).collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..sets.len())
        .flat_map(|i| (i + 1..sets.len()).map(move |j| (i, j)))
        .collect();
    report.pairs = pairs
        .into_par_iter()
        .map(|(i, j)| compare_pair(&sets[i], &sets[j], m_max, n_max, prefix))
        .collect::<Result<_, _>>()?;
    report.passed = report
        .pairs
        .iter()
        .all(|p| p.descriptor_verdict == DescriptorVerdict::Refuted && p.all_witnessed);
    Ok(finish(report, start))
}

/// Compares `A_1` with `A_i ∪ T_{i+1}` for every `1 ≤ i < i_max`.
pub fn repro_theorem5_chain(
    i_max: u64,
    m_max: usize,
    n_max: usize,
    prefix: usize,
) -> Result<ReproReport, ReproError> {
    if i_max < 2 {
        return Err(ReproError::Precondition(format!(
            "i_max must be at least 2, got {i_max}"
        )));
    }
    let start = Instant::now();
    let mut params = grid_params(m_max, n_max, prefix);
    params.insert("i_max".to_string(), json!(i_max));
    let mut report = ReproReport::new("theorem5", params);

    let base = build_a(1)?;
    let steps: Vec<SetSpec> = (1..i_max)
        .map(|i| interleave(&[build_a(i)?, build_t(i + 1)?]))
        .collect::<Result<_, _>>()?;
    report.pairs = steps
        .par_iter()
        .map(|step| compare_pair(&base, step, m_max, n_max, prefix))
        .collect::<Result<_, _>>()?;
    report.passed = report.pairs.iter().all(|p| p.all_witnessed);
    Ok(finish(report, start))
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

fn r(s: &str) -> Rational {
    s.parse().expect("literal rational")
}

/// Small fixed cases: harmonic vs thirds, equal-size finite sets, and the
/// start of the unit-interval listing.
pub fn repro_examples() -> Result<ReproReport, ReproError> {
    let start = Instant::now();
    let mut report = ReproReport::new("examples", BTreeMap::new());

    let (h, t) = (builtin_harmonic(), builtin_thirds());
    let pair = compare_pair(&h, &t, 0, 0, 2)?;
    report.checks.push(check(
        "harmonic_thirds_refuted",
        pair.descriptor_verdict == DescriptorVerdict::Refuted,
        pair.reason.clone().unwrap_or_default(),
    ));
    report.checks.push(check(
        "harmonic_thirds_cell_witness",
        pair.all_witnessed,
        "witness at (m, n) = (0, 0)",
    ));
    let prefix = prefix_coorder(&mut h.listing(), &mut t.listing(), 2)?;
    let (ok, detail) = match &prefix {
        CoorderVerdict::Disagree(w) => {
            ((w.i, w.j) == (0, 1), format!("indices ({}, {})", w.i, w.j))
        }
        CoorderVerdict::Agree(n) => (false, format!("agree on {n}")),
    };
    report
        .checks
        .push(check("harmonic_thirds_prefix_witness", ok, detail));
    report.pairs.push(pair);

    let a = [r("1/2"), r("3"), r("5")];
    let b = [r("-1"), r("0"), r("7")];
    let decided = finite_coorder(&a, &b)?;
    let brute = brute_force_coorder_oracle(&a, &b)?;
    report.checks.push(check(
        "finite_equal_size_coorder",
        decided && brute,
        "{1/2, 3, 5} vs {-1, 0, 7}",
    ));
    let fa = finite_listing(a.to_vec())?;
    let fb = finite_listing(b.to_vec())?;
    let source = fa.oracle().cloned();
    let outcome = match_listing(&mut fa.listing(), source.as_deref(), &fb, 3, Fuel::Total(3))?;
    let detail = match &outcome {
        MatchOutcome::Matched(ok) => {
            let shown: Vec<String> = ok.values.iter().map(|v| v.to_string()).collect();
            format!("g = {}", shown.join(", "))
        }
        MatchOutcome::Failed(f) => format!("{f:?}"),
    };
    report.checks.push(check(
        "finite_equal_size_matched",
        matches!(outcome, MatchOutcome::Matched(_)),
        detail,
    ));

    let unit = rationals_in_interval(r("0"), r("1"))?;
    let mut listing = unit.listing();
    let head: Vec<String> = listing
        .take(5)
        .map_err(SetError::from)?
        .iter()
        .map(|v| v.to_string())
        .collect();
    report.checks.push(check(
        "unit_interval_lists_one_half",
        head.iter().any(|v| v == "1/2"),
        head.join(", "),
    ));

    report.passed = report.checks.iter().all(|c| c.passed);
    Ok(finish(report, start))
}

/// Sizes of the index projections of `E_{m,n}` along a schedule of prefix
/// lengths, for each shift pair.
pub fn lemma5_growth(
    h: &SetSpec,
    g: &SetSpec,
    shifts: &[ShiftPair],
    schedule: &[usize],
) -> Result<ReproReport, ReproError> {
    if h.label() == g.label() {
        return Err(ReproError::Precondition(format!(
            "both sides are {}; the sets must differ",
            h.label()
        )));
    }
    if let Type2Verdict::Unknown = refute_type2(h, g) {
        return Err(ReproError::Precondition(format!(
            "{} and {} are not refuted by their descriptors",
            h.label(),
            g.label()
        )));
    }
    let start = Instant::now();
    let params = BTreeMap::from([
        (
            "shifts".to_string(),
            json!(shifts.iter().map(|s| [s.m, s.n]).collect::<Vec<_>>()),
        ),
        ("schedule".to_string(), json!(schedule)),
    ]);
    let mut report = ReproReport::new("lemma5", params);
    let largest = schedule.iter().copied().max().unwrap_or(0);

    report.growth = shifts
        .par_iter()
        .map(|s| -> Result<GrowthSeries, ReproError> {
            let e = witness_set_e(&mut h.listing(), &mut g.listing(), s.m, s.n, largest)?;
            let points: Vec<GrowthPoint> = schedule
                .iter()
                .map(|&n| {
                    let within: Vec<_> = e.iter().filter(|w| w.i < n && w.j < n).cloned().collect();
                    GrowthPoint {
                        prefix: n,
                        m_size: project_m(&within).len(),
                        l_size: project_l(&within).len(),
                    }
                })
                .collect();
            let strictly_increasing = points
                .windows(2)
                .all(|w| w[0].m_size < w[1].m_size && w[0].l_size < w[1].l_size);
            Ok(GrowthSeries {
                left: h.label().to_string(),
                right: g.label().to_string(),
                m: s.m,
                n: s.n,
                points,
                strictly_increasing,
            })
        })
        .collect::<Result<_, _>>()?;
    report.passed = report.growth.iter().all(|s| s.strictly_increasing);
    Ok(finish(report, start))
}
