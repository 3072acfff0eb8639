//! Seeded randomized verification of the identities implemented in this
//! crate.
//!
//! Every trial draws from its own ChaCha stream, derived from the suite seed
//! and the trial index, so trials can run on any number of threads and the
//! report is still reproducible from the seed alone.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::alternant::{
    alternant_cofactor_sum, alternant_matrix, det_gaussian, det_identity_sides, det_oracle,
    difference_product, vandermonde_matrix, ExactMatrix, HLeg,
};
use crate::error::{Error, Result};
use crate::geometry::{
    area_factored, curve_matrix, signed_area_direct, volume_direct, volume_factored,
    CurveSimplexSpec,
};
use crate::scalar::{Poly, Rational};
use crate::symmetric::{
    grouped_sum, h_closed_form, h_naive, h_recurrence, h_three_variable_step, three_variable_sides,
    vanishing_sum, Nodes,
};

/// Random source for test inputs: numerators in [-99, 99], denominators in
/// [1, 20].
pub struct InputGen {
    rng: ChaCha8Rng,
}

impl InputGen {
    pub fn new(seed: u64) -> Self {
        InputGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream number `stream` under `seed`.
    pub fn stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        InputGen { rng }
    }

    pub fn usize_in(&mut self, range: RangeInclusive<usize>) -> usize {
        self.rng.gen_range(range)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn rational(&mut self) -> Rational {
        let numer: i64 = self.rng.gen_range(-99..=99);
        let denom: i64 = self.rng.gen_range(1..=20);
        Rational::new(numer, denom).expect("denominator is positive")
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// `n` pairwise distinct values, by rejection.
    pub fn distinct_nodes(&mut self, n: usize) -> Nodes {
        let mut values: Vec<Rational> = Vec::with_capacity(n);
        while values.len() < n {
            let r = self.rational();
            if !values.contains(&r) {
                values.push(r);
            }
        }
        Nodes::new(values).expect("n >= 1")
    }

    /// Distinct nodes, except that with probability `p_repeat` one value is
    /// copied over another position.
    pub fn nodes_maybe_repeated(&mut self, n: usize, p_repeat: f64) -> Nodes {
        let nodes = self.distinct_nodes(n);
        if n < 2 || !self.chance(p_repeat) {
            return nodes;
        }
        let mut values = nodes.into_values();
        let src = self.usize_in(0..=n - 1);
        let mut dst = self.usize_in(0..=n - 2);
        if dst >= src {
            dst += 1;
        }
        values[dst] = values[src].clone();
        Nodes::new(values).expect("n >= 1")
    }

    /// Random polynomial of exactly the given degree.
    pub fn poly(&mut self, degree: usize) -> Poly {
        let mut coeffs: Vec<Rational> = (0..degree).map(|_| self.rational()).collect();
        coeffs.push(self.nonzero_rational());
        Poly::new(coeffs)
    }

    /// Random polynomial of degree at most `max_degree` (possibly zero).
    pub fn poly_up_to(&mut self, max_degree: usize) -> Poly {
        Poly::new((0..=max_degree).map(|_| self.rational()).collect())
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    HAgree,
    Lemma1,
    Lemma2,
    Prop1,
    Vanishing,
    Cauchy,
    Theorem5,
    DetIdentity,
    Area,
    Volume,
    UnitArea,
    LowDegree,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::HAgree,
        Suite::Lemma1,
        Suite::Lemma2,
        Suite::Prop1,
        Suite::Vanishing,
        Suite::Cauchy,
        Suite::Theorem5,
        Suite::DetIdentity,
        Suite::Area,
        Suite::Volume,
        Suite::UnitArea,
        Suite::LowDegree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::HAgree => "h_agree",
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Prop1 => "prop1",
            Suite::Vanishing => "vanishing",
            Suite::Cauchy => "cauchy",
            Suite::Theorem5 => "theorem5",
            Suite::DetIdentity => "det_identity",
            Suite::Area => "area",
            Suite::Volume => "volume",
            Suite::UnitArea => "unit_area",
            Suite::LowDegree => "low_degree",
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::Vanishing | Suite::UnitArea => 100,
            Suite::Volume => 500,
            _ => 200,
        }
    }

    /// Node-count range; `n` is fixed at 3 for the three-variable suites.
    pub fn default_n_range(self) -> (usize, usize) {
        match self {
            Suite::HAgree | Suite::Lemma1 => (2, 6),
            Suite::Lemma2 | Suite::Prop1 | Suite::Area | Suite::UnitArea => (3, 3),
            Suite::Vanishing => (2, 10),
            Suite::Cauchy => (1, 8),
            Suite::Theorem5 | Suite::DetIdentity => (2, 7),
            Suite::Volume | Suite::LowDegree => (2, 8),
        }
    }

    /// Range of the suite's degree-like parameter: d for h, s for the
    /// grouping identity, m for the factorizations, k - n + 1 for vanishing
    /// sums above the vanishing range, and the polynomial degree N for the
    /// geometric suites.
    pub fn default_d_range(self) -> (usize, usize) {
        match self {
            Suite::HAgree => (0, 12),
            Suite::Lemma1 => (1, 10),
            Suite::Lemma2 => (2, 10),
            Suite::Prop1 => (1, 10),
            Suite::Vanishing => (0, 3),
            Suite::Cauchy => (0, 0),
            Suite::Theorem5 | Suite::DetIdentity => (0, 8),
            Suite::Area | Suite::Volume | Suite::LowDegree => (0, 12),
            Suite::UnitArea => (2, 2),
        }
    }

    fn min_n(self) -> usize {
        match self {
            Suite::Cauchy => 1,
            _ => 2,
        }
    }

    fn min_d(self) -> usize {
        match self {
            Suite::Lemma1 | Suite::Prop1 => 1,
            Suite::Lemma2 => 2,
            _ => 0,
        }
    }

    fn fixed_n(self) -> Option<usize> {
        match self {
            Suite::Lemma2 | Suite::Prop1 | Suite::Area | Suite::UnitArea => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub n_range: (usize, usize),
    pub d_range: (usize, usize),
}

impl SuiteConfig {
    pub fn defaults(suite: Suite, seed: u64) -> Self {
        SuiteConfig {
            trials: suite.default_trials(),
            seed,
            n_range: suite.default_n_range(),
            d_range: suite.default_d_range(),
        }
    }

    fn validate(&self, suite: Suite) -> Result<()> {
        let (n_lo, n_hi) = self.n_range;
        let (d_lo, d_hi) = self.d_range;
        if n_lo > n_hi || d_lo > d_hi {
            return Err(Error::InvalidArgument("empty range".into()));
        }
        if n_lo < suite.min_n() {
            return Err(Error::InvalidArgument(format!(
                "suite {suite} needs n >= {}",
                suite.min_n()
            )));
        }
        if let Some(n) = suite.fixed_n() {
            if self.n_range != (n, n) {
                return Err(Error::InvalidArgument(format!(
                    "suite {suite} works with n = {n} only"
                )));
            }
        }
        if d_lo < suite.min_d() {
            return Err(Error::InvalidArgument(format!(
                "suite {suite} needs the degree parameter >= {}",
                suite.min_d()
            )));
        }
        if suite == Suite::UnitArea && self.d_range != (2, 2) {
            return Err(Error::InvalidArgument(
                "suite unit_area is about parabolas, degree 2 only".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of one suite run. Fields are declared in key order so the JSON
/// form is key-sorted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub d_range: (usize, usize),
    pub elapsed_ms: u64,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Value>,
    pub n_range: (usize, usize),
    pub seed: u64,
    pub suite: String,
    pub trials: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Single-line, key-sorted JSON.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report is always serializable")
    }
}

struct Trial<'a> {
    gen: InputGen,
    index: usize,
    config: &'a SuiteConfig,
}

type TrialResult = std::result::Result<(), Value>;

impl Trial<'_> {
    fn n(&mut self) -> usize {
        let (lo, hi) = self.config.n_range;
        self.gen.usize_in(lo..=hi)
    }

    fn d(&mut self) -> usize {
        let (lo, hi) = self.config.d_range;
        self.gen.usize_in(lo..=hi)
    }
}

fn fail(check: &str, detail: Value) -> Value {
    let mut v = json!({ "check": check });
    if let (Value::Object(out), Value::Object(extra)) = (&mut v, detail) {
        out.extend(extra);
    }
    v
}

fn expect_eq(
    check: &str,
    lhs: &Rational,
    rhs: &Rational,
    detail: impl FnOnce() -> Value,
) -> TrialResult {
    if lhs == rhs {
        return Ok(());
    }
    let mut v = fail(check, detail());
    if let Value::Object(map) = &mut v {
        map.insert("lhs".into(), json!(lhs));
        map.insert("rhs".into(), json!(rhs));
    }
    Err(v)
}

fn domain(check: &str, err: Error) -> Value {
    fail(check, json!({ "error": err.to_string() }))
}

/// Runs one suite. Trials are sharded over the rayon pool; the report does
/// not depend on the thread count.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<VerifyReport> {
    config.validate(suite)?;
    let start = Instant::now();
    let outcomes: Vec<TrialResult> = (0..config.trials)
        .into_par_iter()
        .map(|index| {
            let mut trial = Trial {
                gen: InputGen::stream(config.seed, index as u64),
                index,
                config,
            };
            run_trial(suite, &mut trial).map_err(|mut v| {
                if let Value::Object(map) = &mut v {
                    map.insert("trial".into(), json!(index));
                }
                v
            })
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.is_err()).count();
    let first_failure = outcomes.into_iter().find_map(|o| o.err());
    Ok(VerifyReport {
        d_range: config.d_range,
        elapsed_ms: start.elapsed().as_millis() as u64,
        failures,
        first_failure,
        n_range: config.n_range,
        seed: config.seed,
        suite: suite.name().to_string(),
        trials: config.trials,
    })
}

/// Every suite at its default ranges, with the given seed and trial count
/// (or each suite's default when `trials` is `None`).
pub fn run_all(seed: u64, trials: Option<usize>) -> Vec<VerifyReport> {
    Suite::ALL
        .iter()
        .map(|&suite| {
            let mut config = SuiteConfig::defaults(suite, seed);
            if let Some(t) = trials {
                config.trials = t;
            }
            run_suite(suite, &config).expect("default configurations are valid")
        })
        .collect()
}

fn run_trial(suite: Suite, t: &mut Trial<'_>) -> TrialResult {
    match suite {
        Suite::HAgree => h_agree(t),
        Suite::Lemma1 => grouping_trial(t),
        Suite::Lemma2 => three_step_trial(t),
        Suite::Prop1 => prop1(t),
        Suite::Vanishing => vanishing(t),
        Suite::Cauchy => cauchy(t),
        Suite::Theorem5 => cofactor_sum_trial(t),
        Suite::DetIdentity => det_identity(t),
        Suite::Area => area(t),
        Suite::Volume => volume(t),
        Suite::UnitArea => unit_area(t),
        Suite::LowDegree => low_degree(t),
    }
}

fn h_agree(t: &mut Trial<'_>) -> TrialResult {
    let n = t.n();
    let d = t.d();
    let xs = t.gen.distinct_nodes(n);
    let detail = || json!({ "d": d, "nodes": xs });
    let naive = h_naive(d, &xs).map_err(|e| domain("naive", e))?;
    let rec = h_recurrence(d, &xs);
    let closed = h_closed_form(d, &xs).map_err(|e| domain("closed_form", e))?;
    expect_eq("naive = recurrence", &naive, &rec, detail)?;
    expect_eq("recurrence = closed_form", &rec, &closed, detail)?;

    let mut shuffled = xs.values().to_vec();
    t.gen.shuffle(&mut shuffled);
    let shuffled = Nodes::new(shuffled).expect("non-empty");
    expect_eq(
        "permutation symmetry",
        &h_recurrence(d, &shuffled),
        &rec,
        detail,
    )?;

    let c = t.gen.nonzero_rational();
    let scaled = h_recurrence(d, &xs.scaled(&c));
    let expected = c.pow(d as u32) * &rec;
    expect_eq(
        "homogeneity",
        &scaled,
        &expected,
        || json!({ "d": d, "nodes": xs, "c": c }),
    )
}

fn grouping_trial(t: &mut Trial<'_>) -> TrialResult {
    let n = t.n();
    let s = t.d();
    let xs = t.gen.nodes_maybe_repeated(n, 0.3);
    let rhs = grouped_sum(s, &xs).map_err(|e| domain("grouped_sum", e))?;
    expect_eq(
        "h_s = sum_j x_j h_{s-1}(x_j..x_n)",
        &h_recurrence(s, &xs),
        &rhs,
        || json!({ "s": s, "nodes": xs }),
    )
}

fn three_step_trial(t: &mut Trial<'_>) -> TrialResult {
    let m = t.d();
    let xs = t.gen.nodes_maybe_repeated(3, 0.3);
    let step = h_three_variable_step(m, &xs).map_err(|e| domain("lemma2", e))?;
    let naive = h_naive(m, &xs).map_err(|e| domain("naive", e))?;
    let detail = || json!({ "m": m, "nodes": xs });
    expect_eq(
        "three-variable step = h_recurrence",
        &step,
        &h_recurrence(m, &xs),
        detail,
    )?;
    expect_eq("three-variable step = h_naive", &step, &naive, detail)
}

fn prop1(t: &mut Trial<'_>) -> TrialResult {
    let m = t.d();
    let xs = t.gen.distinct_nodes(3);
    let (lhs, rhs) = three_variable_sides(m, &xs).map_err(|e| domain("prop1", e))?;
    expect_eq(
        "three-variable factorization",
        &lhs,
        &rhs,
        || json!({ "m": m, "nodes": xs }),
    )
}

fn vanishing(t: &mut Trial<'_>) -> TrialResult {
    // n cycles through the range so every size gets an equal share of trials.
    let (lo, hi) = t.config.n_range;
    let n = lo + t.index % (hi - lo + 1);
    let xs = t.gen.distinct_nodes(n);
    let zero = Rational::zero();
    for k in 0..=n - 2 {
        let sum = vanishing_sum(k, &xs).map_err(|e| domain("vanishing_sum", e))?;
        expect_eq(
            "vanishing sum is zero",
            &sum,
            &zero,
            || json!({ "k": k, "nodes": xs }),
        )?;
    }
    let (m_lo, m_hi) = t.config.d_range;
    for m in m_lo..=m_hi {
        let k = n - 1 + m;
        let sum = vanishing_sum(k, &xs).map_err(|e| domain("vanishing_sum", e))?;
        expect_eq(
            "sum at k = n-1+m is h_m",
            &sum,
            &h_recurrence(m, &xs),
            || json!({ "k": k, "m": m, "nodes": xs }),
        )?;
    }
    Ok(())
}

fn random_matrix(gen: &mut InputGen, n: usize) -> ExactMatrix {
    let entries = (0..n * n)
        .map(|_| {
            // mix in some large-magnitude entries
            let r = gen.rational();
            if gen.chance(0.2) {
                r * Rational::from_integer(1_000_003)
            } else {
                r
            }
        })
        .collect();
    ExactMatrix::new(n, entries).expect("n >= 1")
}

fn cauchy(t: &mut Trial<'_>) -> TrialResult {
    let n = t.n();
    let xs = t.gen.nodes_maybe_repeated(n, 0.25);
    let d = difference_product(&xs);
    let detail = || json!({ "nodes": xs });
    expect_eq(
        "det(Vandermonde) = difference product",
        &det_oracle(&vandermonde_matrix(&xs)),
        &d,
        detail,
    )?;

    if n >= 2 {
        let i = t.gen.usize_in(0..=n - 1);
        let j = (i + 1 + t.gen.usize_in(0..=n - 2)) % n;
        let mut swapped = xs.values().to_vec();
        swapped.swap(i, j);
        let swapped = Nodes::new(swapped).expect("non-empty");
        let neg = -&d;
        expect_eq(
            "swap negates difference product",
            &difference_product(&swapped),
            &neg,
            detail,
        )?;
        expect_eq(
            "swap negates det(Vandermonde)",
            &det_oracle(&vandermonde_matrix(&swapped)),
            &neg,
            detail,
        )?;
    }

    let m = random_matrix(&mut t.gen, n);
    let det = det_oracle(&m);
    expect_eq(
        "bareiss = gaussian",
        &det,
        &det_gaussian(&m),
        || json!({ "matrix": m }),
    )?;
    let row = t.gen.usize_in(0..=n - 1);
    let c = t.gen.rational();
    let mut scaled = m.clone();
    scaled.scale_row(row, &c);
    expect_eq(
        "row scaling",
        &det_oracle(&scaled),
        &(&det * &c),
        || json!({ "matrix": m, "row": row, "c": c }),
    )
}

fn cofactor_sum_trial(t: &mut Trial<'_>) -> TrialResult {
    let n = t.n();
    let m = t.d();
    let xs = t.gen.distinct_nodes(n);
    let lhs = alternant_cofactor_sum(m, &xs).map_err(|e| domain("alternant_cofactor_sum", e))?;
    let rhs = difference_product(&xs) * h_recurrence(m, &xs);
    expect_eq(
        "cofactor sum = d * h_m",
        &lhs,
        &rhs,
        || json!({ "m": m, "nodes": xs }),
    )
}

fn det_identity(t: &mut Trial<'_>) -> TrialResult {
    let n = t.n();
    let m = t.d();
    let xs = t.gen.nodes_maybe_repeated(n, 0.25);
    let detail = || json!({ "m": m, "nodes": xs });
    let (lhs, rhs) =
        det_identity_sides(m, &xs, HLeg::Recurrence).map_err(|e| domain("det_identity", e))?;
    expect_eq("det(A) = d * h_m (recurrence)", &lhs, &rhs, detail)?;
    if xs.is_distinct() {
        let (_, closed) =
            det_identity_sides(m, &xs, HLeg::ClosedForm).map_err(|e| domain("det_identity", e))?;
        expect_eq("det(A) = d * h_m (closed form)", &lhs, &closed, detail)?;
        let a = alternant_matrix(m, &xs).map_err(|e| domain("alternant", e))?;
        expect_eq("bareiss = gaussian on A", &lhs, &det_gaussian(&a), detail)?;
    } else {
        expect_eq(
            "repeated nodes give det(A) = 0",
            &lhs,
            &Rational::zero(),
            detail,
        )?;
    }
    Ok(())
}

fn area(t: &mut Trial<'_>) -> TrialResult {
    let degree = t.d();
    let p = if degree == 0 && t.gen.chance(0.1) {
        Poly::zero()
    } else {
        t.gen.poly(degree)
    };
    let xs = t.gen.nodes_maybe_repeated(3, 0.15);
    let detail = || json!({ "poly": p, "nodes": xs });
    let factored = area_factored(&p, &xs).map_err(|e| domain("area_factored", e))?;
    let signed = signed_area_direct(&p, &xs).map_err(|e| domain("signed_area", e))?;
    expect_eq(
        "factored area = |signed area|",
        &factored,
        &signed.abs(),
        detail,
    )?;
    let m = curve_matrix(&p, &xs).map_err(|e| domain("curve_matrix", e))?;
    let half_det = det_oracle(&m).abs() / Rational::from_integer(2);
    expect_eq("factored area = |det M| / 2", &factored, &half_det, detail)
}

fn random_spec(t: &mut Trial<'_>, p_repeat: f64) -> CurveSimplexSpec {
    let n = t.n();
    let degree = t.d();
    let poly = if t.gen.chance(0.05) {
        Poly::zero()
    } else {
        t.gen.poly(degree)
    };
    let nodes = t.gen.nodes_maybe_repeated(n, p_repeat);
    CurveSimplexSpec::new(poly, nodes).expect("n >= 2")
}

fn volume(t: &mut Trial<'_>) -> TrialResult {
    let spec = random_spec(t, 0.2);
    let n = spec.n();
    let detail = || json!({ "poly": spec.poly, "nodes": spec.nodes });
    let factored = volume_factored(&spec);
    let direct = volume_direct(&spec);
    expect_eq(
        "factored det = oracle det",
        &factored.det,
        &direct.det,
        detail,
    )?;
    let nf = Rational::factorial(n);
    expect_eq(
        "simplex volume * n! = |det|",
        &(&factored.simplex_volume * &nf),
        &direct.det.abs(),
        detail,
    )?;
    let deficient = spec.poly.degree().map_or(true, |deg| deg + 2 <= n);
    if deficient || !spec.nodes.is_distinct() {
        expect_eq(
            "degenerate det is zero",
            &direct.det,
            &Rational::zero(),
            detail,
        )?;
    }

    // Permuting the nodes keeps volumes and flips det by the permutation sign.
    let mut order: Vec<usize> = (0..n).collect();
    t.gen.shuffle(&mut order);
    let permuted =
        Nodes::new(order.iter().map(|&i| spec.nodes[i].clone()).collect()).expect("non-empty");
    let permuted = CurveSimplexSpec::new(spec.poly.clone(), permuted).expect("n >= 2");
    let pv = volume_factored(&permuted);
    expect_eq(
        "simplex volume is permutation invariant",
        &pv.simplex_volume,
        &factored.simplex_volume,
        detail,
    )?;
    let expected = if permutation_is_odd(&order) {
        -&factored.det
    } else {
        factored.det.clone()
    };
    expect_eq("det follows permutation parity", &pv.det, &expected, detail)
}

fn permutation_is_odd(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    let mut transpositions = 0;
    for start in 0..order.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = order[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 1
}

fn unit_area(t: &mut Trial<'_>) -> TrialResult {
    let b = t.gen.rational();
    let c = t.gen.rational();
    let x1 = t.gen.rational();
    let p = Poly::new(vec![c, b, Rational::one()]);
    let unit = Nodes::new(vec![
        x1.clone(),
        &x1 + &Rational::one(),
        &x1 + &Rational::from_integer(2),
    ])
    .expect("three nodes");
    let area = area_factored(&p, &unit).map_err(|e| domain("area_factored", e))?;
    expect_eq(
        "unit spacing gives area 1",
        &area,
        &Rational::one(),
        || json!({ "poly": p, "nodes": unit }),
    )?;
    let signed = signed_area_direct(&p, &unit).map_err(|e| domain("signed_area", e))?;
    expect_eq(
        "unit spacing gives signed area 1",
        &signed,
        &Rational::one(),
        || json!({ "poly": p, "nodes": unit }),
    )?;

    let s = t.gen.nonzero_rational();
    let spaced = Nodes::new(vec![x1.clone(), &x1 + &s, &x1 + &(&s + &s)]).expect("three nodes");
    let area = area_factored(&p, &spaced).map_err(|e| domain("area_factored", e))?;
    expect_eq(
        "spacing s gives area |s|^3",
        &area,
        &s.abs().pow(3),
        || json!({ "poly": p, "nodes": spaced, "s": s }),
    )
}

fn low_degree(t: &mut Trial<'_>) -> TrialResult {
    let spec = random_spec(t, 0.1);
    let n = spec.n();
    let extra = t.gen.poly_up_to(n - 2);
    let shifted = CurveSimplexSpec::new(&spec.poly + &extra, spec.nodes.clone()).expect("n >= 2");
    let detail = || json!({ "poly": spec.poly, "added": extra, "nodes": spec.nodes });
    let before = volume_factored(&spec).det;
    expect_eq(
        "low-degree terms do not change det",
        &volume_factored(&shifted).det,
        &before,
        detail,
    )?;
    expect_eq(
        "low-degree terms do not change oracle det",
        &volume_direct(&shifted).det,
        &before,
        detail,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<Rational> = (0..5).map(|_| InputGen::stream(9, 3).rational()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut g1 = InputGen::stream(9, 3);
        let mut g2 = InputGen::stream(9, 4);
        let s1: Vec<_> = (0..8).map(|_| g1.rational()).collect();
        let s2: Vec<_> = (0..8).map(|_| g2.rational()).collect();
        assert_ne!(s1, s2);
    }

    #[test]
    fn generated_values_respect_bounds() {
        let mut g = InputGen::new(1);
        for _ in 0..500 {
            let r = g.rational();
            assert!(r.denom() <= &20.into());
            assert!(r.abs() <= Rational::from_integer(99));
        }
        let xs = g.distinct_nodes(10);
        assert!(xs.is_distinct());
        assert_eq!(g.poly(4).degree(), Some(4));
    }

    #[test]
    fn repeated_nodes_actually_repeat() {
        let mut g = InputGen::new(5);
        let xs = g.nodes_maybe_repeated(4, 1.0);
        assert!(!xs.is_distinct());
    }

    #[test]
    fn parity() {
        assert!(!permutation_is_odd(&[0, 1, 2]));
        assert!(permutation_is_odd(&[1, 0, 2]));
        assert!(!permutation_is_odd(&[1, 2, 0]));
        assert!(permutation_is_odd(&[3, 2, 1, 0, 5, 4]));
        assert!(!permutation_is_odd(&[3, 2, 1, 0, 4, 5]));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("all".parse::<Suite>().is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = SuiteConfig::defaults(Suite::Lemma2, 0);
        c.n_range = (2, 4);
        assert!(run_suite(Suite::Lemma2, &c).is_err());
        let mut c = SuiteConfig::defaults(Suite::Prop1, 0);
        c.d_range = (0, 3);
        assert!(run_suite(Suite::Prop1, &c).is_err());
        let mut c = SuiteConfig::defaults(Suite::Volume, 0);
        c.n_range = (5, 2);
        assert!(run_suite(Suite::Volume, &c).is_err());
    }

    #[test]
    fn small_runs_pass_and_report_shape() {
        for suite in Suite::ALL {
            let mut c = SuiteConfig::defaults(suite, 11);
            c.trials = 5;
            let r = run_suite(suite, &c).unwrap();
            assert!(r.passed(), "{suite}: {:?}", r.first_failure);
            assert!(r.first_failure.is_none());
            let line = r.to_json_line();
            assert!(!line.contains('\n'));
            assert!(line.starts_with(r#"{"d_range":"#));
        }
    }

    #[test]
    fn failure_record_is_key_sorted() {
        let v = expect_eq(
            "x",
            &Rational::one(),
            &Rational::zero(),
            || json!({ "nodes": ["1"] }),
        )
        .unwrap_err();
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"check":"x","lhs":"1","nodes":["1"],"rhs":"0"}"#);
    }
}
