//! Cross-method verification and benchmarking.
//!
//! [`verify_grid`] evaluates any subset of methods over a `(p, q)` grid,
//! compares the results cell by cell, runs the structural property checks,
//! and returns everything as a [`VerificationReport`]. Disagreements are
//! data, not exceptions: the report is the product. [`bench_methods`] times
//! methods against each other with a monotonic clock.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::detexpr::{build_qi_matrix, symmetry_scale_identity};
use crate::exactnum::{factorial, BigInt, BigRat};
use crate::integral::central_via_integral;
use crate::methods::{
    central_gf_series, central_matrix_reformulation_check, central_qi_relation, DelannoyMethod,
    MemoTable,
};
use crate::{Error, Result};

/// `D(p, q)` for `0 <= p, q <= 8`, hard-coded reference values
/// (rows indexed by `p`). Cross-checked against OEIS A008288; embedded as
/// constants precisely so they cannot be regenerated by the code under test.
pub const DELANNOY_TABLE_9X9: [[u64; 9]; 9] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 3, 5, 7, 9, 11, 13, 15, 17],
    [1, 5, 13, 25, 41, 61, 85, 113, 145],
    [1, 7, 25, 63, 129, 231, 377, 575, 833],
    [1, 9, 41, 129, 321, 681, 1289, 2241, 3649],
    [1, 11, 61, 231, 681, 1683, 3653, 7183, 13073],
    [1, 13, 85, 377, 1289, 3653, 8989, 19825, 40081],
    [1, 15, 113, 575, 2241, 7183, 19825, 48639, 108545],
    [1, 17, 145, 833, 3649, 13073, 40081, 108545, 265729],
];

/// Default node count for the quadrature cross-check.
pub const DEFAULT_INTEGRAL_NODES: u32 = 512;

/// Default relative tolerance for the quadrature cross-check.
pub const DEFAULT_INTEGRAL_TOLERANCE: f64 = 1e-9;

/// Optional inexact quadrature participation in a verification sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralCheck {
    pub nodes: u32,
    pub tolerance: f64,
}

impl Default for IntegralCheck {
    fn default() -> Self {
        IntegralCheck {
            nodes: DEFAULT_INTEGRAL_NODES,
            tolerance: DEFAULT_INTEGRAL_TOLERANCE,
        }
    }
}

/// What to run in a verification sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Exact methods to evaluate on every cell.
    pub methods: Vec<DelannoyMethod>,
    /// When set, the quadrature joins on diagonal cells at the given
    /// tolerance (it is only defined there).
    pub integral: Option<IntegralCheck>,
    /// Record per-method aggregate wall time. Off by default so identical
    /// invocations emit byte-identical reports.
    pub include_timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            methods: DelannoyMethod::ALL.to_vec(),
            integral: None,
            include_timings: false,
        }
    }
}

/// One method's outcome on one cell: a decimal value or a skip reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodValue {
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skip: Option<String>,
}

/// Every method's outcome on one grid cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub p: u32,
    pub q: u32,
    pub values: Vec<MethodValue>,
    /// True iff all non-skipped exact values are identical and the
    /// quadrature, when present, landed within tolerance.
    pub agreement: bool,
}

/// Structural identities checked alongside the per-cell sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResults {
    /// Non-skipped exact values on the `0..=8` corner equal the embedded
    /// reference table.
    pub table1_match: bool,
    /// `m(p, q) = m(q, p)` for every method on the square part of the grid.
    pub symmetry: bool,
    /// The raw falling-factorial determinant equals `(-1)^q q! D(p, q)` on
    /// every cell.
    pub divisibility_q_factorial: bool,
    /// The symmetry-scaling determinant identity holds on every cell.
    pub symmetry_scale_identity: bool,
    /// The central matrix reformulation holds for `1 <= n <= min(p, q)` max.
    pub matrix_reformulation: bool,
    /// The central relation, the diagonal of the memo table and the series
    /// coefficients agree.
    pub central_diagonal_consistency: bool,
}

impl PropertyResults {
    pub fn all_hold(&self) -> bool {
        self.table1_match
            && self.symmetry
            && self.divisibility_q_factorial
            && self.symmetry_scale_identity
            && self.matrix_reformulation
            && self.central_diagonal_consistency
    }
}

/// Structured record of a grid cross-check.
///
/// Big integers are carried as decimal strings so downstream consumers never
/// overflow a 64-bit number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub p_max: u32,
    pub q_max: u32,
    pub cells: Vec<CellRecord>,
    pub properties: PropertyResults,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings_ns: Option<BTreeMap<String, u64>>,
    /// True iff every cell agrees and every property holds.
    pub overall: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Evaluates every selected method on every cell of the
/// `(p_max+1) x (q_max+1)` grid, compares, and checks the structural
/// identities. Per-method caps are respected: capped cells record a skip,
/// not a failure.
pub fn verify_grid(p_max: u32, q_max: u32, opts: &VerifyOptions) -> VerificationReport {
    let reference = MemoTable::build(p_max, q_max);
    let mut timings: BTreeMap<String, u64> = BTreeMap::new();
    let mut cells = Vec::with_capacity((p_max as usize + 1) * (q_max as usize + 1));
    let mut all_agree = true;

    for p in 0..=p_max {
        for q in 0..=q_max {
            let mut values = Vec::with_capacity(opts.methods.len() + 1);
            let mut exact: Vec<Option<BigInt>> = Vec::with_capacity(opts.methods.len());
            for &m in &opts.methods {
                match m.skip_reason(p, q) {
                    Some(reason) => {
                        exact.push(None);
                        values.push(MethodValue {
                            method: m.name().to_string(),
                            value: None,
                            skip: Some(reason),
                        });
                    }
                    None => {
                        let started = Instant::now();
                        let v = m.evaluate(p, q).expect("not skipped");
                        *timings.entry(m.name().to_string()).or_insert(0) +=
                            started.elapsed().as_nanos() as u64;
                        values.push(MethodValue {
                            method: m.name().to_string(),
                            value: Some(v.to_string()),
                            skip: None,
                        });
                        exact.push(Some(v));
                    }
                }
            }

            let mut agreement = {
                let mut present = exact.iter().flatten();
                match present.next() {
                    Some(first) => present.all(|v| v == first),
                    None => true, // vacuous
                }
            };

            if let Some(check) = &opts.integral {
                if p == q {
                    let started = Instant::now();
                    let est = central_via_integral(p, check.nodes).expect("nodes >= 1");
                    *timings.entry("integral".to_string()).or_insert(0) +=
                        started.elapsed().as_nanos() as u64;
                    let target = reference
                        .get(p, q)
                        .to_f64()
                        .expect("grid value representable as f64");
                    let rel = ((est.value - target) / target).abs();
                    if rel > check.tolerance {
                        agreement = false;
                    }
                    values.push(MethodValue {
                        method: "integral".to_string(),
                        value: Some(format!("{:e}", est.value)),
                        skip: None,
                    });
                } else {
                    values.push(MethodValue {
                        method: "integral".to_string(),
                        value: None,
                        skip: Some("defined for central (p = q) cells only".to_string()),
                    });
                }
            }

            all_agree &= agreement;
            cells.push(CellRecord {
                p,
                q,
                values,
                agreement,
            });
        }
    }

    let properties = check_properties(p_max, q_max, &cells, &reference);
    let overall = all_agree && properties.all_hold();
    VerificationReport {
        p_max,
        q_max,
        cells,
        properties,
        timings_ns: opts.include_timings.then_some(timings),
        overall,
    }
}

fn check_properties(
    p_max: u32,
    q_max: u32,
    cells: &[CellRecord],
    reference: &MemoTable,
) -> PropertyResults {
    let cols = q_max as usize + 1;
    let cell = |p: u32, q: u32| &cells[p as usize * cols + q as usize];

    // embedded reference corner
    let mut table1_match = true;
    for p in 0..=p_max.min(8) {
        for q in 0..=q_max.min(8) {
            let expected = DELANNOY_TABLE_9X9[p as usize][q as usize].to_string();
            for mv in &cell(p, q).values {
                if mv.method != "integral" {
                    if let Some(v) = &mv.value {
                        table1_match &= *v == expected;
                    }
                }
            }
        }
    }

    // m(p, q) = m(q, p) on the square part, from the recorded values
    let side = p_max.min(q_max);
    let mut symmetry = true;
    for p in 0..=side {
        for q in p + 1..=side {
            for (a, b) in cell(p, q).values.iter().zip(&cell(q, p).values) {
                if a.method == "integral" {
                    continue;
                }
                if let (Some(va), Some(vb)) = (&a.value, &b.value) {
                    symmetry &= va == vb;
                }
            }
        }
    }

    let mut divisibility = true;
    for p in 0..=p_max {
        for q in 0..=q_max {
            let det = build_qi_matrix(p, q).matrix.det_cahill();
            let expected = factorial(q as i64).expect("q >= 0") * reference.get(p, q);
            let expected = if q % 2 == 0 { expected } else { -expected };
            divisibility &= det == BigRat::from_integer(expected);
        }
    }

    let mut scaling = true;
    for p in 0..=p_max {
        for q in 0..=q_max {
            scaling &= symmetry_scale_identity(p, q);
        }
    }

    let mut reformulation = true;
    for n in 1..=side {
        reformulation &= central_matrix_reformulation_check(n);
    }

    let series = central_gf_series(side);
    let mut central_consistency = true;
    for n in 0..=side {
        let diag = reference.get(n, n);
        central_consistency &=
            central_qi_relation(n) == *diag && series[n as usize] == *diag;
    }

    PropertyResults {
        table1_match,
        symmetry,
        divisibility_q_factorial: divisibility,
        symmetry_scale_identity: scaling,
        matrix_reformulation: reformulation,
        central_diagonal_consistency: central_consistency,
    }
}

/// One timed (or skipped) method-at-size measurement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub method: String,
    pub p: u32,
    pub q: u32,
    /// Median wall time over the repetitions, nanoseconds (monotonic clock,
    /// clamped to >= 1).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ns: Option<u64>,
    /// The computed value, decimal; also the cross-check hook.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<String>,
    /// Bit length of the computed value.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bit_length: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skip: Option<String>,
}

/// Times each method at each size, single-threaded, median of
/// `repetitions` runs. Methods whose caps exclude a size are recorded as
/// skips with the reason.
pub fn bench_methods(
    sizes: &[(u32, u32)],
    repetitions: u32,
    methods: &[DelannoyMethod],
) -> Result<Vec<BenchRecord>> {
    if repetitions == 0 {
        return Err(Error::domain("bench_methods: repetitions must be >= 1"));
    }
    let mut records = Vec::with_capacity(sizes.len() * methods.len());
    for &(p, q) in sizes {
        for &m in methods {
            if let Some(reason) = m.skip_reason(p, q) {
                records.push(BenchRecord {
                    method: m.name().to_string(),
                    p,
                    q,
                    wall_time_ns: None,
                    value: None,
                    bit_length: None,
                    skip: Some(reason),
                });
                continue;
            }
            let mut times = Vec::with_capacity(repetitions as usize);
            let mut value = None;
            for _ in 0..repetitions {
                let started = Instant::now();
                let v = m.evaluate(p, q).expect("not skipped");
                times.push(started.elapsed().as_nanos() as u64);
                value = Some(v);
            }
            times.sort_unstable();
            let value = value.expect("repetitions >= 1");
            records.push(BenchRecord {
                method: m.name().to_string(),
                p,
                q,
                wall_time_ns: Some(times[times.len() / 2].max(1)),
                value: Some(value.to_string()),
                bit_length: Some(value.bits()),
                skip: None,
            });
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_constants_are_symmetric_with_unit_border() {
        for i in 0..9 {
            assert_eq!(DELANNOY_TABLE_9X9[0][i], 1);
            assert_eq!(DELANNOY_TABLE_9X9[i][0], 1);
            for j in 0..9 {
                assert_eq!(DELANNOY_TABLE_9X9[i][j], DELANNOY_TABLE_9X9[j][i]);
            }
        }
    }

    #[test]
    fn single_cell_single_method() {
        let opts = VerifyOptions {
            methods: vec![DelannoyMethod::Recurrence3],
            ..VerifyOptions::default()
        };
        let report = verify_grid(0, 0, &opts);
        assert!(report.overall);
        assert_eq!(report.cells.len(), 1);
        assert_eq!(report.cells[0].values[0].value.as_deref(), Some("1"));
    }

    #[test]
    fn full_grid_with_all_methods_verifies() {
        let report = verify_grid(8, 8, &VerifyOptions::default());
        assert!(report.overall, "properties: {:?}", report.properties);
        assert_eq!(report.cells.len(), 81);
        assert!(report.timings_ns.is_none());
    }

    #[test]
    fn integral_participates_on_the_diagonal() {
        let opts = VerifyOptions {
            methods: vec![],
            integral: Some(IntegralCheck::default()),
            include_timings: false,
        };
        let report = verify_grid(4, 4, &opts);
        assert!(report.overall);
        for cell in &report.cells {
            let mv = &cell.values[0];
            assert_eq!(mv.method, "integral");
            if cell.p == cell.q {
                assert!(mv.value.is_some());
            } else {
                assert!(mv.skip.is_some());
            }
        }
    }

    #[test]
    fn skipped_cells_do_not_fail_the_grid() {
        let opts = VerifyOptions {
            methods: vec![DelannoyMethod::Recurrence3, DelannoyMethod::LatticeBrute],
            ..VerifyOptions::default()
        };
        let report = verify_grid(12, 12, &opts);
        assert!(report.overall);
        let corner = report.cells.last().unwrap();
        assert_eq!(corner.values[1].method, "lattice_brute");
        assert!(corner.values[1].skip.is_some());
    }

    #[test]
    fn report_round_trips_through_json() {
        let opts = VerifyOptions {
            methods: vec![DelannoyMethod::Recurrence3, DelannoyMethod::DetQi],
            integral: Some(IntegralCheck::default()),
            include_timings: false,
        };
        let report = verify_grid(3, 5, &opts);
        let parsed = VerificationReport::from_json(&report.to_json()).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn a_disagreeing_cell_fails_the_verdict() {
        let mut report = verify_grid(2, 2, &VerifyOptions::default());
        report.cells[4].agreement = false;
        // rebuild the verdict the way a consumer would
        let rebuilt =
            report.cells.iter().all(|c| c.agreement) && report.properties.all_hold();
        assert!(!rebuilt);
    }

    #[test]
    fn bench_records_time_value_and_bits() {
        let records = bench_methods(
            &[(8, 8), (25, 25)],
            3,
            &[DelannoyMethod::Recurrence3, DelannoyMethod::LatticeBrute],
        )
        .unwrap();
        assert_eq!(records.len(), 4);
        let rec = &records[0];
        assert_eq!(rec.method, "recurrence3");
        assert_eq!(rec.value.as_deref(), Some("265729"));
        assert_eq!(rec.bit_length, Some(18)); // 265729 < 2^18
        assert!(rec.wall_time_ns.unwrap() >= 1);
        let skipped = &records[3];
        assert_eq!(skipped.method, "lattice_brute");
        assert!(skipped.skip.is_some());
    }

    #[test]
    fn bench_rejects_zero_repetitions() {
        assert!(matches!(
            bench_methods(&[(1, 1)], 0, &[DelannoyMethod::Recurrence3]),
            Err(Error::Domain(_))
        ));
    }
}
