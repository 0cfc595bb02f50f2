//! Truncated q-characters and quantum dimensions as limits of character
//! ratios.
//!
//! A [`GradedSeries`] stores `q^L Σ a_j q^{j·step}` with exact coefficients;
//! the `-c/24` prefactor is left out since every ratio taken here shares the
//! same vacuum. Three limit routes estimate `lim ch_q A / ch_q B`:
//! coefficient ratios, ratios of partial sums, and the Abel limit `q → 1⁻`.
//! The first two extrapolate in `1/√n` and the Abel route in `y`, where
//! `q = e^{-2πy}`.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::Gram;
use crate::rational::Rational;

/// Default agreement tolerance for limit traces.
pub const DEFAULT_LIMIT_TOLERANCE: f64 = 0.1;
/// Relative tail bound an Abel evaluation point must satisfy.
pub const ABEL_TAIL_BOUND: f64 = 1e-9;
pub const MAX_THETA_RANK: usize = 3;
pub const MAX_THETA_SLOTS: usize = 10_000;
/// Truncation used by [`l1_fusion_check`].
pub const L1_CHECK_TRUNCATION: usize = 800;

/// `q^leading · Σ_{j=0}^{N} a_j q^{j·step}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    leading_exponent: Rational,
    grading_step: Rational,
    coefficients: Vec<BigUint>,
}

impl GradedSeries {
    pub fn new(
        leading_exponent: Rational,
        grading_step: Rational,
        coefficients: Vec<BigUint>,
    ) -> Result<Self> {
        if !grading_step.is_positive() {
            return Err(Error::InvalidInput(format!(
                "grading step must be positive, got {grading_step}"
            )));
        }
        if coefficients.is_empty() {
            return Err(Error::InvalidInput(
                "series needs at least one coefficient".into(),
            ));
        }
        Ok(GradedSeries {
            leading_exponent,
            grading_step,
            coefficients,
        })
    }

    fn integral(leading_exponent: Rational, coefficients: Vec<BigUint>) -> Self {
        GradedSeries {
            leading_exponent,
            grading_step: Rational::one(),
            coefficients,
        }
    }

    pub fn leading_exponent(&self) -> &Rational {
        &self.leading_exponent
    }

    pub fn grading_step(&self) -> &Rational {
        &self.grading_step
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    pub fn coefficient(&self, j: usize) -> Option<&BigUint> {
        self.coefficients.get(j)
    }

    /// Index N of the last stored coefficient.
    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Exponent of slot `j`.
    pub fn exponent(&self, j: usize) -> Rational {
        &self.leading_exponent + &(&self.grading_step * &Rational::from(j as i64))
    }

    pub fn with_leading_exponent(mut self, leading: Rational) -> Self {
        self.leading_exponent = leading;
        self
    }

    /// Termwise sum after aligning exponents. The result is truncated where
    /// either summand runs out.
    pub fn add(&self, other: &GradedSeries) -> Result<GradedSeries> {
        if self.grading_step != other.grading_step {
            return Err(Error::InvalidInput("grading steps differ".into()));
        }
        let (lo, hi) = if self.leading_exponent <= other.leading_exponent {
            (self, other)
        } else {
            (other, self)
        };
        let offset = (&hi.leading_exponent - &lo.leading_exponent) / hi.grading_step.clone();
        let offset = offset.to_i64().ok_or_else(|| {
            Error::InvalidInput("leading exponents are off the common grid".into())
        })? as usize;
        let end = lo.truncation().min(hi.truncation() + offset);
        let coefficients = (0..=end)
            .map(|j| {
                let mut c = lo.coefficients[j].clone();
                if j >= offset {
                    c += &hi.coefficients[j - offset];
                }
                c
            })
            .collect();
        Ok(GradedSeries {
            leading_exponent: lo.leading_exponent.clone(),
            grading_step: lo.grading_step.clone(),
            coefficients,
        })
    }

    /// `slot,exponent,coefficient` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("slot,exponent,coefficient\n");
        for (j, c) in self.coefficients.iter().enumerate() {
            let _ = writeln!(out, "{j},{},{c}", self.exponent(j));
        }
        out
    }

    fn check_comparable(&self, other: &GradedSeries) -> Result<()> {
        if self.grading_step != other.grading_step {
            return Err(Error::InvalidInput(format!(
                "grading steps differ: {} vs {}",
                self.grading_step, other.grading_step
            )));
        }
        if self.truncation() != other.truncation() {
            return Err(Error::InvalidInput(format!(
                "truncations differ: {} vs {}",
                self.truncation(),
                other.truncation()
            )));
        }
        Ok(())
    }
}

impl Serialize for GradedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            leading_exponent: &'a Rational,
            grading_step: &'a Rational,
            truncation: usize,
            coefficients: Vec<String>,
        }
        Out {
            leading_exponent: &self.leading_exponent,
            grading_step: &self.grading_step,
            truncation: self.truncation(),
            coefficients: self.coefficients.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

/// Partition numbers p(0..=n) by Euler's pentagonal recurrence.
pub fn partition_numbers(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let positive = k % 2 == 1;
            for g in [g1, g1 + k] {
                if g <= m {
                    if positive {
                        acc += &p[m - g];
                    } else {
                        acc -= &p[m - g];
                    }
                }
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|x| x.to_biguint().expect("partition numbers are nonnegative"))
        .collect()
}

/// Coefficients of `∏_{n≥1} (1 − qⁿ)^{−d}` up to `q^N`; the Heisenberg
/// character of rank `d` without its `q^{(λ,λ)/2 − d/24}` prefactor.
pub fn eta_quotient_series(d: usize, n_max: usize) -> Result<GradedSeries> {
    if d == 0 {
        return Err(Error::OutOfRange(
            "eta quotient rank must be at least 1".into(),
        ));
    }
    let mut c = partition_numbers(n_max);
    for _ in 1..d {
        // multiply by 1/(1 - q^n) for every n
        for n in 1..=n_max {
            for j in n..=n_max {
                let (head, tail) = c.split_at_mut(j);
                tail[0] += &head[j - n];
            }
        }
    }
    Ok(GradedSeries::integral(Rational::zero(), c))
}

/// Character of the c = 1 Virasoro module `L(1, n²/4)`:
/// `a_j = p(j) − p(j − n − 1)`, leading exponent `n²/4`.
pub fn virasoro_c1_character(n: usize, n_max: usize) -> GradedSeries {
    let p = partition_numbers(n_max);
    let coefficients = (0..=n_max)
        .map(|j| {
            if j > n {
                &p[j] - &p[j - n - 1]
            } else {
                p[j].clone()
            }
        })
        .collect();
    let h = Rational::new((n * n) as i64, 4);
    GradedSeries::integral(h, coefficients)
}

/// `q^h / η(q)` up to the `q^{1/24}` factor: the partition numbers. The
/// leading exponent is 0; set `h` with [`GradedSeries::with_leading_exponent`].
pub fn generic_c1_character(n_max: usize) -> GradedSeries {
    GradedSeries::integral(Rational::zero(), partition_numbers(n_max))
}

/// Theta series of the coset `L + shift`: slot `j` counts vectors with
/// `(α,α)/2 = j / (2 det)`.
pub fn lattice_theta_series(gram: &Gram, shift: &[Rational], n_max: usize) -> Result<GradedSeries> {
    if gram.rank() > MAX_THETA_RANK {
        return Err(Error::RankUnsupported(gram.rank()));
    }
    if n_max > MAX_THETA_SLOTS {
        return Err(Error::OutOfRange(format!(
            "theta truncation {n_max} exceeds {MAX_THETA_SLOTS}"
        )));
    }
    let det = gram.det();
    // slot j <=> (α,α) = j / det
    let norm_bound = Rational::new(n_max as i64, det);
    let d = Rational::common_denominator(shift)
        .to_i128()
        .ok_or_else(|| Error::InvalidCoset("denominator too large".into()))?;
    let d2 = d * d;
    let mut slots = vec![0u64; n_max + 1];
    let mut bad = None;
    // visited values are D²(α,α)
    gram.for_each_coset_vector(shift, &norm_bound, |q| {
        let scaled = q * det as i128;
        if scaled % d2 != 0 {
            bad.get_or_insert(scaled);
            return;
        }
        let j = (scaled / d2) as usize;
        if j <= n_max {
            slots[j] += 1;
        }
    })?;
    if bad.is_some() {
        return Err(Error::InvalidCoset(
            "coset norms do not lie on the 1/(2 det) grid; shift must lie in the dual lattice"
                .into(),
        ));
    }
    GradedSeries::new(
        Rational::zero(),
        Rational::new(1, 2 * det),
        slots.into_iter().map(BigUint::from).collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitRoute {
    CoefficientRatio,
    PartialSumRatio,
    AbelLimit,
}

/// Result of one limit route.
///
/// `samples` are the raw ratios at each checkpoint; `trace` holds the best
/// extrapolated estimate using the samples up to that checkpoint.
#[derive(Clone, Debug, Serialize)]
pub struct LimitEstimate {
    pub route: LimitRoute,
    pub value: f64,
    pub trace: Vec<(f64, f64)>,
    pub samples: Vec<(f64, f64)>,
    pub converged: bool,
    pub tolerance: f64,
    /// Difference between the chosen extrapolant and the one of next lower order.
    pub error_estimate: f64,
    /// Extrapolation order behind `value` (0 = last raw sample).
    pub order: usize,
    /// Inputs rejected before estimation (Abel points failing the tail bound).
    pub skipped: Vec<f64>,
    /// False when a precondition of the route was violated, e.g. a vanishing
    /// denominator coefficient inside an averaging window.
    pub well_posed: bool,
}

impl LimitEstimate {
    fn from_samples(
        route: LimitRoute,
        params: Vec<f64>,
        abscissae: Vec<f64>,
        values: Vec<f64>,
        well_posed: bool,
        skipped: Vec<f64>,
    ) -> Self {
        let mut trace = Vec::with_capacity(values.len());
        let mut best = (values[0], f64::INFINITY, 0);
        for m in 1..=values.len() {
            best = extrapolate_to_zero(&abscissae[..m], &values[..m]);
            trace.push((params[m - 1], best.0));
        }
        let samples = params.iter().copied().zip(values.iter().copied()).collect();
        let mut est = LimitEstimate {
            route,
            value: best.0,
            trace,
            samples,
            converged: false,
            tolerance: DEFAULT_LIMIT_TOLERANCE,
            error_estimate: best.1,
            order: best.2,
            skipped,
            well_posed,
        };
        est.set_tolerance(DEFAULT_LIMIT_TOLERANCE);
        est
    }

    /// Re-evaluates `converged` against `tol`.
    pub fn set_tolerance(&mut self, tol: f64) {
        self.tolerance = tol;
        let n = self.trace.len();
        self.converged = self.well_posed
            && self.value.is_finite()
            && n >= 2
            && (self.trace[n - 1].1 - self.trace[n - 2].1).abs() < tol;
    }

    /// Not converged, with raw samples growing at every checkpoint.
    pub fn diverging(&self) -> bool {
        !self.converged
            && self.samples.len() >= 2
            && self.samples.windows(2).all(|w| w[1].1 > w[0].1)
    }

    /// `parameter,sample,estimate` rows.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("parameter,sample,estimate\n");
        for ((p, s), (_, e)) in self.samples.iter().zip(&self.trace) {
            let _ = writeln!(out, "{p},{s},{e}");
        }
        out
    }
}

/// Neville extrapolation of `values(t)` to `t = 0` over trailing points.
/// Returns `(estimate, error, order)` for the order with the smallest
/// difference to the next lower order; order 0 is the last value itself.
fn extrapolate_to_zero(t: &[f64], values: &[f64]) -> (f64, f64, usize) {
    let m = values.len();
    if m == 1 {
        return (values[0], f64::INFINITY, 0);
    }
    // row k holds the degree-k interpolants through points i..=i+k
    let mut row: Vec<f64> = values.to_vec();
    let mut best = (values[m - 1], (values[m - 1] - values[m - 2]).abs(), 0);
    for k in 1..m {
        let next: Vec<f64> = (0..m - k)
            .map(|i| (t[i] * row[i + 1] - t[i + k] * row[i]) / (t[i] - t[i + k]))
            .collect();
        let last = next[m - k - 1];
        // against the order k-1 interpolant on the same trailing points
        let err = (last - row[m - k]).abs();
        if last.is_finite() && err < best.1 {
            best = (last, err, k);
        }
        row = next;
    }
    best
}

fn big_ln(a: &BigUint) -> f64 {
    if a.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = a.bits();
    if bits < 1000 {
        a.to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 900;
        (a >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

fn big_ratio(a: &BigUint, b: &BigUint) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    (big_ln(a) - big_ln(b)).exp()
}

fn window_length(n: usize, window: Option<usize>) -> usize {
    window.unwrap_or_else(|| (n / 20).max(10)).max(1)
}

/// Eight evenly spaced checkpoints `N·k/8`, deduplicated.
fn checkpoints(n: usize, parts: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = parts.iter().map(|&k| n * k / 8).collect();
    out.dedup();
    out
}

/// `lim a_n / b_n`, averaged over windows of `window` indices (default
/// `max(10, N/20)`) ending at `N·k/8`, extrapolated in `1/√n`.
pub fn limit_coefficient_ratio(
    a: &GradedSeries,
    b: &GradedSeries,
    window: Option<usize>,
) -> Result<LimitEstimate> {
    a.check_comparable(b)?;
    let n = a.truncation();
    if b.coefficients.iter().all(|c| c.is_zero()) {
        return Err(Error::AllZeroDenominator);
    }
    let w = window_length(n, window);
    let mut well_posed = true;
    let (mut params, mut ts, mut values) = (Vec::new(), Vec::new(), Vec::new());
    for j in checkpoints(n, &[1, 2, 3, 4, 5, 6, 7, 8]) {
        let start = (j + 1).saturating_sub(w);
        let mut sum = 0.0;
        let mut center = 0.0;
        let mut used = 0usize;
        for i in start..=j {
            if b.coefficients[i].is_zero() {
                well_posed = false;
                continue;
            }
            sum += big_ratio(&a.coefficients[i], &b.coefficients[i]);
            center += i as f64;
            used += 1;
        }
        if used == 0 {
            continue;
        }
        let center = (center / used as f64).max(0.5);
        params.push(j as f64);
        ts.push(1.0 / center.sqrt());
        values.push(sum / used as f64);
    }
    if values.is_empty() {
        // only reachable when every window misses the nonzero coefficients
        return Err(Error::AllZeroDenominator);
    }
    Ok(LimitEstimate::from_samples(
        LimitRoute::CoefficientRatio,
        params,
        ts,
        values,
        well_posed,
        Vec::new(),
    ))
}

/// `lim Σ_{i≤n} a_i / Σ_{i≤n} b_i` at checkpoints N/8, N/4, N/2, N,
/// extrapolated in `1/√n`.
pub fn limit_partial_sum_ratio(a: &GradedSeries, b: &GradedSeries) -> Result<LimitEstimate> {
    a.check_comparable(b)?;
    let n = a.truncation();
    let cps = checkpoints(n, &[1, 2, 4, 8]);
    let (mut sa, mut sb) = (BigUint::zero(), BigUint::zero());
    let mut next = 0;
    let (mut params, mut ts, mut values) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..=n {
        sa += &a.coefficients[i];
        sb += &b.coefficients[i];
        while next < cps.len() && cps[next] == i {
            if !sb.is_zero() {
                params.push(i as f64);
                ts.push(1.0 / (i as f64).max(0.5).sqrt());
                values.push(big_ratio(&sa, &sb));
            }
            next += 1;
        }
    }
    if values.is_empty() {
        return Err(Error::AllZeroDenominator);
    }
    Ok(LimitEstimate::from_samples(
        LimitRoute::PartialSumRatio,
        params,
        ts,
        values,
        true,
        Vec::new(),
    ))
}

/// `y_k = 0.1 · 0.85^k` down to 0.005.
pub fn default_y_sequence() -> Vec<f64> {
    let mut ys = Vec::new();
    let mut y = 0.1;
    while y >= 0.005 {
        ys.push(y);
        y *= 0.85;
    }
    ys
}

/// `ln Σ a_j r^j` and the tail bound `a_N r^N / (1 − r)` relative to it.
fn log_series(lna: &[f64], ln_r: f64) -> (f64, f64) {
    let terms: Vec<f64> = lna
        .iter()
        .enumerate()
        .map(|(j, &l)| l + j as f64 * ln_r)
        .collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return (f64::NEG_INFINITY, f64::INFINITY);
    }
    let s: f64 = terms.iter().map(|&t| (t - max).exp()).sum();
    let ln_sum = max + s.ln();
    let n = lna.len() - 1;
    let ln_tail = terms[n] - (-ln_r.exp_m1()).ln();
    (ln_sum, (ln_tail - ln_sum).exp())
}

/// `lim_{y→0⁺} ch A / ch B` at `q = e^{−2πy}`, including the factor
/// `q^{L_A − L_B}`. Points where either truncated tail is not negligible
/// are skipped; the rest are extrapolated polynomially in `y`.
pub fn limit_abel(a: &GradedSeries, b: &GradedSeries, ys: &[f64]) -> Result<LimitEstimate> {
    a.check_comparable(b)?;
    if ys.iter().any(|&y| !(y > 0.0 && y.is_finite())) || ys.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidInput(
            "y sequence must be positive and strictly decreasing".into(),
        ));
    }
    if b.coefficients.iter().all(|c| c.is_zero()) {
        return Err(Error::AllZeroDenominator);
    }
    let lna: Vec<f64> = a.coefficients.iter().map(big_ln).collect();
    let lnb: Vec<f64> = b.coefficients.iter().map(big_ln).collect();
    let step = a.grading_step.to_f64();
    let shift = (&a.leading_exponent - &b.leading_exponent).to_f64();
    let identical = a == b;
    let (mut params, mut values, mut skipped) = (Vec::new(), Vec::new(), Vec::new());
    for &y in ys {
        let ln_q = -2.0 * std::f64::consts::PI * y;
        let (ln_b, tail_b) = log_series(&lnb, ln_q * step);
        let (ln_a, tail_a) = log_series(&lna, ln_q * step);
        if !(tail_b < ABEL_TAIL_BOUND) || !(tail_a < ABEL_TAIL_BOUND || ln_a == f64::NEG_INFINITY) {
            skipped.push(y);
            continue;
        }
        let value = if identical {
            1.0
        } else {
            (ln_a - ln_b + shift * ln_q).exp()
        };
        params.push(y);
        values.push(value);
    }
    if values.is_empty() {
        return Err(Error::NoAdmissiblePoints);
    }
    let abscissae = params.clone();
    Ok(LimitEstimate::from_samples(
        LimitRoute::AbelLimit,
        params,
        abscissae,
        values,
        true,
        skipped,
    ))
}

/// Summary of the `L(1,m²) ⊠ L(1,n²)` dimension check.
#[derive(Clone, Debug, Serialize)]
pub struct L1FusionReport {
    pub m: usize,
    pub n: usize,
    /// `Σ_{k=m−n}^{m+n} (2k+1)`.
    pub sum_of_dimensions: u64,
    /// `(2m+1)(2n+1)`.
    pub product_of_dimensions: u64,
    pub exact_identity: bool,
    pub estimated_product: f64,
    pub estimated_sum: f64,
    pub estimates_agree: bool,
}

impl L1FusionReport {
    pub fn passed(&self) -> bool {
        self.exact_identity && self.estimates_agree
    }
}

/// Checks the dimension count of `L(1,m²) ⊠ L(1,n²) = ⊕_{k=m−n}^{m+n} L(1,k²)`
/// exactly and through coefficient-ratio estimates at truncation `n_max`.
pub fn l1_fusion_report(m: usize, n: usize, n_max: usize) -> Result<L1FusionReport> {
    if n > m {
        return Err(Error::InvalidInput(format!(
            "need m >= n, got m={m}, n={n}"
        )));
    }
    let sum_of_dimensions: u64 = (m - n..=m + n).map(|k| 2 * k as u64 + 1).sum();
    let product_of_dimensions = (2 * m as u64 + 1) * (2 * n as u64 + 1);
    let vacuum = virasoro_c1_character(0, n_max);
    // L(1,k²) = L(1,(2k)²/4)
    let qdim = |k: usize| -> Result<f64> {
        Ok(limit_coefficient_ratio(&virasoro_c1_character(2 * k, n_max), &vacuum, None)?.value)
    };
    let estimated_product = qdim(m)? * qdim(n)?;
    let mut total = virasoro_c1_character(2 * (m - n), n_max);
    for k in m - n + 1..=m + n {
        total = total.add(&virasoro_c1_character(2 * k, n_max))?;
    }
    let len = total.coefficients.len();
    let denominator = GradedSeries::integral(Rational::zero(), vacuum.coefficients[..len].to_vec());
    let estimated_sum = limit_coefficient_ratio(&total, &denominator, None)?.value;
    Ok(L1FusionReport {
        m,
        n,
        sum_of_dimensions,
        product_of_dimensions,
        exact_identity: sum_of_dimensions == product_of_dimensions,
        estimated_product,
        estimated_sum,
        estimates_agree: (estimated_product - estimated_sum).abs() < DEFAULT_LIMIT_TOLERANCE,
    })
}

/// [`l1_fusion_report`] at truncation 800, reduced to pass/fail.
pub fn l1_fusion_check(m: usize, n: usize) -> Result<bool> {
    Ok(l1_fusion_report(m, n, L1_CHECK_TRUNCATION)?.passed())
}
