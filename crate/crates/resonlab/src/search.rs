//! Extreme-value scans over t, sweeps over prime moduli, threshold
//! measure/count studies, and directional (θ) reports.
//!
//! Search strategy is grid-then-refine: evaluate the truncated Λ-sum on a
//! regular grid, keep the top records by −Re value, then refine each with
//! golden-section iterations on its grid bracket. The refined value never
//! falls below the grid value because the best evaluated point is kept.
//!
//! Every parallel step maps grid chunks through rayon and reduces the
//! collected, ordered results sequentially, so outputs are identical for
//! any thread count.

use crate::arith::{is_prime_u64, ConstantsReport, PrimeTable};
use crate::dirichlet::{batch_truncated_sums, group_dft, l_log_deriv_oracle_all, CharacterTable};
use crate::error::{Error, Result};
use crate::special::{zeta_logderiv_oracle, EulerMaclaurinConfig, LambdaPolynomial};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

const GRID_POINT_GUARD: u64 = 1_000_000_000;

/// Iterated logarithm log₂ x = log log x.
pub fn log2(x: f64) -> f64 {
    x.ln().ln()
}

/// Iterated logarithm log₃ x = log log log x.
pub fn log3(x: f64) -> f64 {
    x.ln().ln().ln()
}

/// Parameters of a t-scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScanConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub grid_step: f64,
    pub refine_iters: u32,
    pub y: u64,
    pub sigma: f64,
    pub theta_list: Vec<f64>,
    /// Window exponent carried for threshold reports.
    pub beta: f64,
    pub x_list: Vec<f64>,
    pub top_k: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            t_min: 10.0,
            t_max: 1e4,
            grid_step: 0.5,
            refine_iters: 40,
            y: 100_000,
            sigma: 1.0,
            theta_list: vec![0.0],
            beta: 0.5,
            x_list: vec![2.0],
            top_k: 5,
        }
    }
}

impl ScanConfig {
    fn validate(&self) -> Result<u64> {
        if !(self.t_min <= self.t_max) {
            return Err(Error::Domain(format!(
                "t range is inverted: [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        if !(self.grid_step > 0.0) {
            return Err(Error::Domain("grid_step must be positive".into()));
        }
        if self.y < 100 {
            return Err(Error::Domain(format!("Y must be at least 100, got {}", self.y)));
        }
        if !(self.sigma > 0.5 && self.sigma <= 1.0) {
            return Err(Error::Domain(format!(
                "σ must lie in (1/2, 1], got {}",
                self.sigma
            )));
        }
        let points = ((self.t_max - self.t_min) / self.grid_step).floor() as u64 + 1;
        if points > GRID_POINT_GUARD {
            return Err(Error::Resource(format!(
                "grid of {points} points exceeds the 10^9 guard"
            )));
        }
        Ok(points)
    }
}

/// Which evaluation path produced a record's value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Fast,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Fast => "fast",
            Method::Oracle => "oracle",
        }
    }
}

/// One extreme-value observation at a point t.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub t: f64,
    /// −Re ζ′/ζ(σ + it) (approximated by the Λ-sum).
    pub value_neg_re: f64,
    pub value_abs: f64,
    /// Re(e^{−iθ} ζ′/ζ), aligned with the config's θ list.
    pub value_dir: Vec<f64>,
    pub method: Method,
    pub y_used: u64,
    /// |fast − oracle| for oracle-method records.
    pub oracle_delta: Option<f64>,
}

fn record_at(t: f64, value: Complex64, theta_list: &[f64], y: u64) -> ScanRecord {
    ScanRecord {
        t,
        value_neg_re: -value.re,
        value_abs: value.norm(),
        value_dir: theta_list
            .iter()
            .map(|&theta| {
                let (sin, cos) = theta.sin_cos();
                (Complex64::new(cos, -sin) * value).re
            })
            .collect(),
        method: Method::Fast,
        y_used: y,
        oracle_delta: None,
    }
}

/// Golden-section maximization of `f` on [a, b], keeping the best point
/// ever evaluated (including the supplied seed), so refinement is
/// monotone by construction.
fn golden_max(f: &dyn Fn(f64) -> f64, a: f64, b: f64, iters: u32, seed: (f64, f64)) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut best = seed;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    if f1 > best.1 {
        best = (x1, f1);
    }
    if f2 > best.1 {
        best = (x2, f2);
    }
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
            if f2 > best.1 {
                best = (x2, f2);
            }
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
            if f1 > best.1 {
                best = (x1, f1);
            }
        }
    }
    best
}

fn grid_points(cfg: &ScanConfig, points: u64) -> Vec<f64> {
    (0..points)
        .map(|i| cfg.t_min + i as f64 * cfg.grid_step)
        .collect()
}

fn grid_values(poly: &LambdaPolynomial, ts: &[f64]) -> Vec<Complex64> {
    ts.par_iter().map(|&t| poly.logderiv_at(t)).collect()
}

/// Grid-then-refine scan for extremes of −Re ζ′/ζ(σ + it).
///
/// Returns the top-k records sorted by −Re value descending; the best one
/// is re-evaluated with the Euler–Maclaurin oracle and carries the delta.
pub fn zeta_extreme_scan(cfg: &ScanConfig, primes: &PrimeTable) -> Result<Vec<ScanRecord>> {
    let points = cfg.validate()?;
    let poly = LambdaPolynomial::new(cfg.sigma, cfg.y, primes)?;
    let ts = grid_points(cfg, points);
    let values = grid_values(&poly, &ts);

    // Top-k grid indices by −Re, ties to the smaller t.
    let mut order: Vec<usize> = (0..ts.len()).collect();
    order.sort_by(|&i, &j| {
        (-values[j].re)
            .partial_cmp(&(-values[i].re))
            .unwrap()
            .then(i.cmp(&j))
    });
    let k = cfg.top_k.max(1).min(ts.len());

    let mut records = Vec::with_capacity(k);
    for &idx in order.iter().take(k) {
        let t0 = ts[idx];
        let lo = (t0 - cfg.grid_step).max(cfg.t_min);
        let hi = (t0 + cfg.grid_step).min(cfg.t_max);
        let objective = |t: f64| -poly.logderiv_at(t).re;
        let (t_best, _) = golden_max(&objective, lo, hi, cfg.refine_iters, (t0, -values[idx].re));
        let value = poly.logderiv_at(t_best);
        records.push(record_at(t_best, value, &cfg.theta_list, cfg.y));
    }
    records.sort_by(|a, b| {
        b.value_neg_re
            .partial_cmp(&a.value_neg_re)
            .unwrap()
            .then(a.t.partial_cmp(&b.t).unwrap())
    });

    if let Some(top) = records.first_mut() {
        let em = EulerMaclaurinConfig::default();
        let oracle = zeta_logderiv_oracle(cfg.sigma, top.t, &em)?;
        let fast = poly.logderiv_at(top.t);
        top.method = Method::Oracle;
        top.oracle_delta = Some((fast - oracle).norm());
    }
    Ok(records)
}

/// One threshold row of a measure or count study.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThresholdStudy {
    /// T for t-side studies, q for character-side studies.
    pub scale: f64,
    pub x: f64,
    pub threshold: f64,
    /// Lebesgue-measure estimate or character count.
    pub exceed: f64,
    /// log(exceed)/log(scale); absent when nothing exceeds.
    pub empirical_exponent: Option<f64>,
    pub predicted_exponent: f64,
}

/// Measure of {t : −Re ζ′/ζ(1+it) ≥ J̃_x} on the scan grid, per threshold
/// x, with J̃_x = log₂T + log₃T + C₁(β) − x and T = t_max.
pub fn measure_study(cfg: &ScanConfig, c1: f64, primes: &PrimeTable) -> Result<Vec<ThresholdStudy>> {
    let points = cfg.validate()?;
    let poly = LambdaPolynomial::new(cfg.sigma, cfg.y, primes)?;
    let ts = grid_points(cfg, points);
    let values = grid_values(&poly, &ts);
    let t_scale = cfg.t_max;
    let range = cfg.t_max - cfg.t_min;

    Ok(cfg
        .x_list
        .iter()
        .map(|&x| {
            let threshold = log2(t_scale) + log3(t_scale) + c1 - x;
            let count = values.iter().filter(|v| -v.re >= threshold).count();
            let measure = (count as f64 * cfg.grid_step).min(range);
            ThresholdStudy {
                scale: t_scale,
                x,
                threshold,
                exceed: measure,
                empirical_exponent: (measure > 0.0).then(|| measure.ln() / t_scale.ln()),
                predicted_exponent: 1.0 - (1.0 - cfg.beta) * (-x).exp(),
            }
        })
        .collect())
}

/// Extremes over the character group of one modulus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub q: u64,
    /// Index of the character attaining the −Re maximum.
    pub j_argmax: u32,
    /// max over χ ≠ χ₀ of −Re L′/L ≈ Re S(χ).
    pub max_neg_re: f64,
    pub max_abs: f64,
    /// max over χ ≠ χ₀ of Re(e^{−iθ}·(−S(χ))), aligned with θ list.
    pub theta_max: Vec<f64>,
    /// Exceedance counts aligned with the x list.
    pub exceed_counts: Vec<u64>,
    pub euler_kronecker: Option<f64>,
    /// |(−S) − L′/L oracle| at the argmax character, when requested.
    pub oracle_delta: Option<f64>,
    pub y_used: u64,
}

/// Options of a character sweep beyond the required parameters.
#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    /// Cross-check the argmax character against the L′/L oracle (σ = 1).
    pub oracle_check: bool,
    /// Attach the Euler–Kronecker constant per modulus.
    pub euler_kronecker: bool,
    /// Exceedance thresholds use log₂q + log₃q + C₂ − x.
    pub c2: f64,
    pub x_list: Vec<f64>,
}

fn sweep_one(
    q: u64,
    sigma: f64,
    y: u64,
    theta_list: &[f64],
    opts: &SweepOptions,
    primes: &PrimeTable,
) -> Result<SweepRecord> {
    let table = CharacterTable::build(q)?;
    let sums = batch_truncated_sums(&table, sigma, y, primes)?;

    let mut j_argmax = 1u32;
    let mut max_neg_re = f64::NEG_INFINITY;
    let mut max_abs = f64::NEG_INFINITY;
    for (j, s) in sums.iter().enumerate().skip(1) {
        if s.re > max_neg_re {
            max_neg_re = s.re;
            j_argmax = j as u32;
        }
        max_abs = max_abs.max(s.norm());
    }
    let theta_max = theta_list
        .iter()
        .map(|&theta| {
            let (sin, cos) = theta.sin_cos();
            let rot = Complex64::new(cos, -sin);
            sums.iter()
                .skip(1)
                .map(|s| (rot * (-s)).re)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let exceed_counts = opts
        .x_list
        .iter()
        .map(|&x| {
            let threshold = log2(q as f64) + log3(q as f64) + opts.c2 - x;
            sums.iter().skip(1).filter(|s| s.re >= threshold).count() as u64
        })
        .collect();

    let em = EulerMaclaurinConfig::default();
    let oracle_delta = if opts.oracle_check && sigma == 1.0 {
        let all = l_log_deriv_oracle_all(&table, &em)?;
        let exact = all[j_argmax as usize].expect("argmax is nonprincipal by construction");
        Some(((-sums[j_argmax as usize]) - exact).norm())
    } else {
        None
    };
    let euler_kronecker = if opts.euler_kronecker {
        Some(crate::dirichlet::euler_kronecker(q, &em)?)
    } else {
        None
    };

    Ok(SweepRecord {
        q,
        j_argmax,
        max_neg_re,
        max_abs,
        theta_max,
        exceed_counts,
        euler_kronecker,
        oracle_delta,
        y_used: y,
    })
}

/// Sweep every prime q in [q_min, q_max]: batch the truncated Λ-sums over
/// all characters and record the extremes.
pub fn char_sweep(
    q_min: u64,
    q_max: u64,
    sigma: f64,
    y: u64,
    theta_list: &[f64],
    opts: &SweepOptions,
    primes: &PrimeTable,
) -> Result<Vec<SweepRecord>> {
    if q_min > q_max {
        return Err(Error::Domain(format!("q range is inverted: [{q_min}, {q_max}]")));
    }
    let moduli: Vec<u64> = (q_min.max(3)..=q_max).filter(|&q| is_prime_u64(q)).collect();
    moduli
        .par_iter()
        .map(|&q| sweep_one(q, sigma, y, theta_list, opts, primes))
        .collect::<Result<Vec<_>>>()
}

/// Count characters mod q whose −Re L′/L approximant clears the threshold
/// log₂q + log₃q + C₂ − x, for each x.
pub fn count_study(
    q: u64,
    x_list: &[f64],
    y: u64,
    c2: f64,
    primes: &PrimeTable,
) -> Result<Vec<ThresholdStudy>> {
    let table = CharacterTable::build(q)?;
    let sums = batch_truncated_sums(&table, 1.0, y, primes)?;
    let qf = q as f64;
    Ok(x_list
        .iter()
        .map(|&x| {
            let threshold = log2(qf) + log3(qf) + c2 - x;
            let count = sums.iter().skip(1).filter(|s| s.re >= threshold).count();
            ThresholdStudy {
                scale: qf,
                x,
                threshold,
                exceed: count as f64,
                empirical_exponent: (count > 0).then(|| (count as f64).ln() / qf.ln()),
                predicted_exponent: 1.0 - (-x).exp(),
            }
        })
        .collect())
}

/// A strip scan: the 1-line machinery at σ ∈ (1/2, 1) plus the predicted
/// floor C₃(σ)(log T)^{1−σ}(log₂T)^{1−σ} for side-by-side display.
#[derive(Debug, Clone, Serialize)]
pub struct StripScan {
    pub sigma: f64,
    pub floor: f64,
    pub records: Vec<ScanRecord>,
}

pub fn strip_scan(
    sigma: f64,
    cfg: &ScanConfig,
    constants: &ConstantsReport,
    primes: &PrimeTable,
) -> Result<StripScan> {
    if !(sigma > 0.5 && sigma < 1.0) {
        return Err(Error::Domain(format!(
            "strip scan requires σ ∈ (1/2, 1), got {sigma}"
        )));
    }
    if (constants.params.sigma - sigma).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "constants report was built at σ = {}, scan wants σ = {sigma}",
            constants.params.sigma
        )));
    }
    let mut scan_cfg = cfg.clone();
    scan_cfg.sigma = sigma;
    let records = zeta_extreme_scan(&scan_cfg, primes)?;
    let t = cfg.t_max;
    let floor = constants.c3.value * t.ln().powf(1.0 - sigma) * log2(t).powf(1.0 - sigma);
    Ok(StripScan {
        sigma,
        floor,
        records,
    })
}

/// Mode of a directional conjecture report.
#[derive(Debug, Clone, Serialize)]
pub enum ConjectureMode {
    /// Maxima over t ∈ [t_min, t_max] at σ.
    Zeta {
        t_min: f64,
        t_max: f64,
        grid_step: f64,
        sigma: f64,
    },
    /// Maxima over nonprincipal characters mod q at σ.
    Dirichlet { q: u64, sigma: f64 },
}

/// One θ row: the directional log-derivative maximum next to the
/// θ-independent derivative/value maxima and their ratio.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConjectureRow {
    pub theta: f64,
    pub dir_max: f64,
    pub max_deriv_abs: f64,
    pub max_value_abs: f64,
    pub ratio: f64,
}

/// Per θ: max Re(e^{−iθ}·logderiv), max|derivative|, max|value|, and the
/// ratio of the latter two. Display-only: no assertions live here.
pub fn conjecture_report(
    mode: &ConjectureMode,
    theta_grid: &[f64],
    y: u64,
    primes: &PrimeTable,
) -> Result<Vec<ConjectureRow>> {
    let (logderivs, values, derivs) = match mode {
        ConjectureMode::Dirichlet { q, sigma } => dirichlet_columns(*q, *sigma, y, primes)?,
        ConjectureMode::Zeta {
            t_min,
            t_max,
            grid_step,
            sigma,
        } => zeta_columns(*t_min, *t_max, *grid_step, *sigma, y, primes)?,
    };

    let max_value_abs = values
        .iter()
        .map(|v| v.norm())
        .fold(f64::NEG_INFINITY, f64::max);
    let max_deriv_abs = derivs
        .iter()
        .map(|v| v.norm())
        .fold(f64::NEG_INFINITY, f64::max);
    let ratio = max_deriv_abs / max_value_abs;
    Ok(theta_grid
        .iter()
        .map(|&theta| {
            let (sin, cos) = theta.sin_cos();
            let rot = Complex64::new(cos, -sin);
            let dir_max = logderivs
                .iter()
                .map(|v| (rot * v).re)
                .fold(f64::NEG_INFINITY, f64::max);
            ConjectureRow {
                theta,
                dir_max,
                max_deriv_abs,
                max_value_abs,
                ratio,
            }
        })
        .collect())
}

type Columns = (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>);

/// L′/L, L and L′ truncations over all nonprincipal characters: three
/// bucket vectors by discrete log, three DFTs.
fn dirichlet_columns(q: u64, sigma: f64, y: u64, primes: &PrimeTable) -> Result<Columns> {
    if !(sigma > 0.5 && sigma <= 1.0) {
        return Err(Error::Domain(format!(
            "conjecture report requires σ ∈ (1/2, 1], got {sigma}"
        )));
    }
    if y > primes.limit() {
        return Err(Error::Domain(format!(
            "Y = {y} exceeds prime table limit {}",
            primes.limit()
        )));
    }
    let table = CharacterTable::build(q)?;
    let sums = batch_truncated_sums(&table, sigma, y, primes)?;
    let order = table.order() as usize;
    let mut b_val = vec![Complex64::new(0.0, 0.0); order];
    let mut b_der = vec![Complex64::new(0.0, 0.0); order];
    for n in 1..=y {
        if n % q == 0 {
            continue;
        }
        let nf = n as f64;
        let w = nf.powf(-sigma);
        let k = table.dlog(n % q) as usize;
        b_val[k].re += w;
        b_der[k].re -= nf.ln() * w;
    }
    let l_vals = group_dft(b_val);
    let l_ders = group_dft(b_der);
    Ok((
        sums.iter().skip(1).map(|s| -s).collect(),
        l_vals.into_iter().skip(1).collect(),
        l_ders.into_iter().skip(1).collect(),
    ))
}

/// ζ′/ζ plus boundary-corrected ζ and ζ′ truncations over a t-grid. The
/// correction Y^{1−s}/(s−1) stabilizes the partial sums left of σ = 1.
fn zeta_columns(
    t_min: f64,
    t_max: f64,
    grid_step: f64,
    sigma: f64,
    y: u64,
    primes: &PrimeTable,
) -> Result<Columns> {
    let cfg = ScanConfig {
        t_min,
        t_max,
        grid_step,
        sigma,
        y,
        ..ScanConfig::default()
    };
    let points = cfg.validate()?;
    let y_series = y.min(100_000);
    if points.saturating_mul(y_series) > 10_000_000_000 {
        return Err(Error::Resource(
            "zeta conjecture grid × series length exceeds 10^10".into(),
        ));
    }
    let poly = LambdaPolynomial::new(sigma, y, primes)?;
    let ts = grid_points(&cfg, points);
    let logderivs = grid_values(&poly, &ts);

    let series: Vec<(f64, f64)> = (1..=y_series)
        .map(|n| {
            let nf = n as f64;
            (nf.ln(), nf.powf(-sigma))
        })
        .collect();
    let uf = y_series as f64;
    let log_u = uf.ln();
    let eval: Vec<(Complex64, Complex64)> = ts
        .par_iter()
        .map(|&t| {
            let mut val = Complex64::new(0.0, 0.0);
            let mut der = Complex64::new(0.0, 0.0);
            for &(log_n, amp) in &series {
                let (sin, cos) = (t * log_n).sin_cos();
                let z = Complex64::new(amp * cos, -amp * sin);
                val += z;
                der -= log_n * z;
            }
            let s1 = Complex64::new(sigma - 1.0, t);
            let amp_u = (-(sigma - 1.0) * log_u).exp();
            let (sin_u, cos_u) = (t * log_u).sin_cos();
            let u_pow = Complex64::new(amp_u * cos_u, -amp_u * sin_u); // Y^{1−s}
            let boundary = u_pow / s1;
            let boundary_deriv = boundary * (-log_u - 1.0 / s1);
            (val + boundary, der + boundary_deriv)
        })
        .collect();
    Ok((
        logderivs,
        eval.iter().map(|&(v, _)| v).collect(),
        eval.iter().map(|&(_, d)| d).collect(),
    ))
}
