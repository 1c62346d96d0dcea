//! The three resonator families and numeric verification of their
//! Gaussian-weight moment identities.
//!
//! A resonator is a completely multiplicative function r with support on
//! primes p ≤ X:
//!
//! * `Long1Line`:  r(p) = 1 − p/X            (real, in [0, 1))
//! * `LongStrip`:  r(p) = 1 − (p/X)^σ        (real, in [0, 1))
//! * `ShortTheta`: r(p) = −e^{−iθ} ρ          (constant modulus ρ < 1)
//!
//! The long kinds stay formal Euler products; the explicit polynomial
//! truncation R_N(t) = Σ_{n≤N} r(n) n^{−it} exists only for the quadrature
//! cross-checks at small N, where the closed-form Gaussian pairing
//! ∫ (a/b)^{it} Φ(t/S) dt = √(2π) S Φ(S log(a/b)) is verified directly.

use crate::arith::PrimeTable;
use crate::error::{Error, Result};
use crate::quad;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

/// Family tag with its kind-specific parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ResonatorKind {
    Long1Line,
    LongStrip { sigma: f64 },
    ShortTheta { theta: f64, modulus: f64 },
}

/// One resonator: family, support cutoff X, optional explicit truncation
/// length N, and the budget B the cutoff was derived from (carried for
/// callers; never read here).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResonatorSpec {
    pub kind: ResonatorKind,
    pub x: f64,
    pub n: Option<u64>,
    pub budget: Option<f64>,
}

impl ResonatorSpec {
    pub fn long_1line(x: f64) -> Self {
        ResonatorSpec {
            kind: ResonatorKind::Long1Line,
            x,
            n: None,
            budget: None,
        }
    }

    /// X = B · log T · log₂ T for the 1-line resonator.
    pub fn long_1line_budget(t_scale: f64, budget: f64) -> Self {
        let x = budget * t_scale.ln() * t_scale.ln().ln();
        ResonatorSpec {
            budget: Some(budget),
            ..Self::long_1line(x)
        }
    }

    pub fn long_strip(sigma: f64, x: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma < 1.0) {
            return Err(Error::Domain(format!(
                "strip resonator requires σ ∈ (0, 1), got {sigma}"
            )));
        }
        Ok(ResonatorSpec {
            kind: ResonatorKind::LongStrip { sigma },
            x,
            n: None,
            budget: None,
        })
    }

    /// X = B · log T · log₂ T for the strip resonator.
    pub fn long_strip_budget(sigma: f64, t_scale: f64, budget: f64) -> Result<Self> {
        let x = budget * t_scale.ln() * t_scale.ln().ln();
        Ok(ResonatorSpec {
            budget: Some(budget),
            ..Self::long_strip(sigma, x)?
        })
    }

    /// θ-twisted resonator with explicit cutoff and modulus.
    pub fn short_theta(theta: f64, x: f64, modulus: f64, n: u64) -> Result<Self> {
        if !(0.0..1.0).contains(&modulus) {
            return Err(Error::Domain(format!(
                "short resonator modulus must lie in [0, 1), got {modulus}"
            )));
        }
        Ok(ResonatorSpec {
            kind: ResonatorKind::ShortTheta { theta, modulus },
            x,
            n: Some(n),
            budget: None,
        })
    }

    /// θ-twisted resonator with the scaling X = log N/(log₂N)⁵ and
    /// ρ = 1 − 1/(log₂N)². Requires N large enough that log₂N > 1,
    /// i.e. N > e^e, so the modulus is a genuine value in [0, 1).
    pub fn short_theta_scaled(theta: f64, n: u64) -> Result<Self> {
        let log_n = (n as f64).ln();
        let llog_n = log_n.ln();
        if !(llog_n > 1.0) {
            return Err(Error::Domain(format!(
                "short resonator scaling needs log log N > 1, got N = {n}"
            )));
        }
        let modulus = 1.0 - 1.0 / (llog_n * llog_n);
        let x = log_n / llog_n.powi(5);
        Self::short_theta(theta, x, modulus, n)
    }

    /// Exponent of the weight log p / p^σ used in ratio bounds: σ for the
    /// strip kind, 1 otherwise.
    pub fn weight_sigma(&self) -> f64 {
        match self.kind {
            ResonatorKind::LongStrip { sigma } => sigma,
            _ => 1.0,
        }
    }

    /// r at a prime.
    pub fn r_prime(&self, p: u64) -> Complex64 {
        let pf = p as f64;
        if pf > self.x {
            return Complex64::new(0.0, 0.0);
        }
        match self.kind {
            ResonatorKind::Long1Line => Complex64::new(1.0 - pf / self.x, 0.0),
            ResonatorKind::LongStrip { sigma } => {
                Complex64::new(1.0 - (pf / self.x).powf(sigma), 0.0)
            }
            ResonatorKind::ShortTheta { theta, modulus } => {
                let (sin, cos) = theta.sin_cos();
                -Complex64::new(cos, -sin) * modulus
            }
        }
    }

    /// r(n) as the product over the prime factorization; r(1) = 1.
    pub fn r_value(&self, n: u64, primes: &PrimeTable) -> Result<Complex64> {
        if n == 0 {
            return Err(Error::Domain("r(n) is undefined at n = 0".into()));
        }
        let mut acc = Complex64::new(1.0, 0.0);
        for (p, mult) in primes.factor(n)? {
            let rp = self.r_prime(p);
            if rp.norm_sqr() == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            for _ in 0..mult {
                acc *= rp;
            }
        }
        Ok(acc)
    }
}

/// Σ_{p≤X} (log p / p^σ) |r(p)| — the diagonal lower bound on the moment
/// ratio I₂/I₁, as an exact finite sieve sum.
pub fn ratio_lower_bound(spec: &ResonatorSpec, primes: &PrimeTable) -> f64 {
    let sigma = spec.weight_sigma();
    let mut acc = 0.0;
    for &p in primes.primes() {
        let pf = p as f64;
        if pf > spec.x {
            break;
        }
        acc += pf.ln() * pf.powf(-sigma) * spec.r_prime(p).norm();
    }
    acc
}

/// Σ_{p≤X} log(1/(1 − r(p))), the log-magnitude bound for the formal
/// Euler product of a long resonator. The short kind is bounded through
/// N instead and is rejected here.
pub fn log_magnitude_bound(spec: &ResonatorSpec, primes: &PrimeTable) -> Result<f64> {
    if matches!(spec.kind, ResonatorKind::ShortTheta { .. }) {
        return Err(Error::UnsupportedKind(
            "log-magnitude bound applies to the long kinds only".into(),
        ));
    }
    let mut acc = 0.0;
    for &p in primes.primes() {
        let pf = p as f64;
        if pf > spec.x {
            break;
        }
        acc -= (1.0 - spec.r_prime(p).re).ln();
    }
    Ok(acc)
}

/// Both evaluation routes of the two Gaussian-weighted moments.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentEstimates {
    pub t_scale: f64,
    pub truncation: u64,
    pub i1_quadrature: f64,
    pub i1_closed: f64,
    pub i2_quadrature: f64,
    pub i2_closed: f64,
    pub i1_discrepancy: f64,
    pub i2_discrepancy: f64,
    /// I₂/I₁ from the closed forms.
    pub ratio: f64,
    /// Σ_{p≤X} (log p/p^σ)|r(p)|.
    pub lower_bound: f64,
}

const IDENTITY_TOL: f64 = 1e-6;

/// Λ-weight cutoff of the moment integrand; must cover the resonator
/// support so the diagonal extraction sees every prime p ≤ X.
fn weight_cutoff(spec: &ResonatorSpec) -> u64 {
    (spec.x.ceil() as u64).max(30).min(1000)
}

fn rel_disc(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    (a - b).abs() / scale
}

struct MomentMachine {
    /// (log n, r(n)) over the nonzero support of n ≤ N.
    support: Vec<(f64, Complex64)>,
    /// (log j, w_j) of the Λ-type weight.
    weight: Vec<(f64, f64)>,
    /// Global phase multiplier of the weight (−e^{−iθ} for the short kind).
    mult: Complex64,
    s_scale: f64,
}

impl MomentMachine {
    fn build(spec: &ResonatorSpec, n: u64, t_scale: f64, primes: &PrimeTable) -> Result<Self> {
        let mut support = Vec::new();
        for m in 1..=n {
            let r = spec.r_value(m, primes)?;
            if r.norm_sqr() > 0.0 {
                support.push(((m as f64).ln(), r));
            }
        }
        let yw = weight_cutoff(spec);
        let (weight, mult): (Vec<(f64, f64)>, Complex64) = match spec.kind {
            ResonatorKind::ShortTheta { theta, .. } => {
                let w = primes
                    .primes()
                    .iter()
                    .take_while(|&&p| p <= yw)
                    .map(|&p| {
                        let pf = p as f64;
                        (pf.ln(), pf.ln() / pf)
                    })
                    .collect();
                let (sin, cos) = theta.sin_cos();
                (w, -Complex64::new(cos, -sin))
            }
            _ => {
                let sigma = spec.weight_sigma();
                let w = primes
                    .prime_powers(yw)
                    .map(|(m, _, logp)| ((m as f64).ln(), logp * (m as f64).powf(-sigma)))
                    .collect();
                (w, Complex64::new(1.0, 0.0))
            }
        };
        Ok(MomentMachine {
            support,
            weight,
            mult,
            s_scale: t_scale / t_scale.ln(),
        })
    }

    fn resonator_at(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(log_n, r) in &self.support {
            let (sin, cos) = (t * log_n).sin_cos();
            acc += r * Complex64::new(cos, -sin);
        }
        acc
    }

    fn weight_at(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(log_j, w) in &self.weight {
            let (sin, cos) = (t * log_j).sin_cos();
            acc += w * Complex64::new(cos, -sin);
        }
        self.mult * acc
    }

    fn gaussian(&self, t: f64) -> f64 {
        let u = t / self.s_scale;
        (-0.5 * u * u).exp()
    }

    fn quadrature(&self, weighted: bool, tol: f64) -> Result<f64> {
        let half_width = 40.0 * self.s_scale;
        quad::integrate(
            |t| {
                let r = self.resonator_at(t).norm_sqr();
                let f = if weighted { self.weight_at(t).re } else { 1.0 };
                f * r * self.gaussian(t)
            },
            -half_width,
            half_width,
            tol,
        )
    }

    /// √(2π) S Σ_{k,m} r(k) conj(r(m)) Φ(S log(k/m)).
    fn i1_closed(&self) -> f64 {
        let s = self.s_scale;
        let mut acc = 0.0;
        for &(lk, rk) in &self.support {
            for &(lm, rm) in &self.support {
                let gap = s * (lk - lm);
                acc += (rk * rm.conj()).re * (-0.5 * gap * gap).exp();
            }
        }
        TAU.sqrt() * s * acc
    }

    /// Re[ mult · √(2π) S Σ_j w_j Σ_{n,m} r(n) conj(r(m)) Φ(S log(m/(jn))) ].
    fn i2_closed(&self) -> f64 {
        let s = self.s_scale;
        let mut acc = Complex64::new(0.0, 0.0);
        for &(lj, w) in &self.weight {
            let mut inner = Complex64::new(0.0, 0.0);
            for &(ln_, rn) in &self.support {
                for &(lm, rm) in &self.support {
                    let gap = s * (lm - lj - ln_);
                    inner += rn * rm.conj() * (-0.5 * gap * gap).exp();
                }
            }
            acc += w * inner;
        }
        (self.mult * acc).re * TAU.sqrt() * s
    }
}

/// Verify the two moment identities for `spec` truncated at its explicit
/// N: quadrature against the closed Gaussian pairing, for both I₁ and the
/// Λ-weighted I₂. Fails with an identity-violation error beyond 1e−6
/// relative discrepancy.
pub fn gaussian_moment_check(
    spec: &ResonatorSpec,
    t_scale: f64,
    primes: &PrimeTable,
) -> Result<MomentEstimates> {
    let n = spec.n.ok_or_else(|| {
        Error::Domain("gaussian_moment_check needs a spec with explicit N".into())
    })?;
    if n == 0 || n > 10_000 {
        return Err(Error::Domain(format!(
            "truncation N must lie in [1, 10^4] for quadrature feasibility, got {n}"
        )));
    }
    if !(t_scale >= 10.0) {
        return Err(Error::Domain(format!("T must be at least 10, got {t_scale}")));
    }

    let machine = MomentMachine::build(spec, n, t_scale, primes)?;
    let i1_closed = machine.i1_closed();
    let i2_closed = machine.i2_closed();
    let scale = i1_closed.abs().max(i2_closed.abs()).max(1e-3);
    let tol = 1e-10 * scale;
    let i1_quadrature = machine.quadrature(false, tol)?;
    let i2_quadrature = machine.quadrature(true, tol)?;

    // I₂ can be exactly zero at degenerate truncations (every Gaussian
    // pairing gap huge); measure its discrepancy against the I₁ scale so
    // "both routes vanish" counts as agreement.
    let i1_discrepancy = rel_disc(i1_quadrature, i1_closed);
    let i2_discrepancy =
        (i2_quadrature - i2_closed).abs() / i2_quadrature.abs().max(i2_closed.abs()).max(i1_closed);
    let est = MomentEstimates {
        t_scale,
        truncation: n,
        i1_quadrature,
        i1_closed,
        i2_quadrature,
        i2_closed,
        i1_discrepancy,
        i2_discrepancy,
        ratio: i2_closed / i1_closed,
        lower_bound: ratio_lower_bound(spec, primes),
    };
    if i1_discrepancy > IDENTITY_TOL || i2_discrepancy > IDENTITY_TOL {
        return Err(Error::IdentityViolation(format!(
            "moment discrepancies I1 {i1_discrepancy:e}, I2 {i2_discrepancy:e} \
             exceed {IDENTITY_TOL:e} (N = {n}, T = {t_scale})"
        )));
    }
    Ok(est)
}

/// Diagonal extraction check for the θ-resonator: the full closed-form I₂
/// against √(2π)S Σ_{p≤X} (log p/p)|r(p)| Σ_{n≤N/p} |r(n)|².
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiagonalCheck {
    pub full: f64,
    pub diagonal: f64,
    pub rel_diff: f64,
}

pub fn short_theta_diagonal_check(
    spec: &ResonatorSpec,
    t_scale: f64,
    primes: &PrimeTable,
) -> Result<DiagonalCheck> {
    let ResonatorKind::ShortTheta { .. } = spec.kind else {
        return Err(Error::UnsupportedKind(
            "diagonal check applies to the θ-resonator".into(),
        ));
    };
    let n = spec.n.ok_or_else(|| {
        Error::Domain("short_theta_diagonal_check needs a spec with explicit N".into())
    })?;
    if n > 1000 {
        return Err(Error::Domain(format!("diagonal check caps N at 10^3, got {n}")));
    }
    let machine = MomentMachine::build(spec, n, t_scale, primes)?;
    let full = machine.i2_closed();

    let s = machine.s_scale;
    let r2: Vec<(u64, f64)> = (1..=n)
        .map(|m| Ok((m, spec.r_value(m, primes)?.norm_sqr())))
        .collect::<Result<_>>()?;
    let mut diagonal = 0.0;
    for &p in primes.primes() {
        let pf = p as f64;
        if pf > spec.x {
            break;
        }
        let tail: f64 = r2
            .iter()
            .filter(|&&(m, _)| m <= n / p)
            .map(|&(_, v)| v)
            .sum();
        diagonal += pf.ln() / pf * spec.r_prime(p).norm() * tail;
    }
    diagonal *= TAU.sqrt() * s;

    Ok(DiagonalCheck {
        full,
        diagonal,
        rel_diff: rel_disc(full, diagonal),
    })
}

/// Rankin-trick mass ratio for the θ-resonator: the |r|²-mass of the
/// X-smooth integers up to N/X against the mass up to N.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RankinRatio {
    pub head: f64,
    pub total: f64,
    pub ratio: f64,
    pub terms: u64,
}

const SMOOTH_TERM_CAP: u64 = 10_000_000;

pub fn rankin_tail_check(
    spec: &ResonatorSpec,
    n: u64,
    primes: &PrimeTable,
) -> Result<RankinRatio> {
    let ResonatorKind::ShortTheta { modulus, .. } = spec.kind else {
        return Err(Error::UnsupportedKind(
            "the Rankin tail check applies to the θ-resonator".into(),
        ));
    };
    if n > SMOOTH_TERM_CAP {
        return Err(Error::Domain(format!("N must not exceed 10^7, got {n}")));
    }
    let support: Vec<u64> = primes
        .primes()
        .iter()
        .copied()
        .take_while(|&p| (p as f64) <= spec.x)
        .collect();
    // n = 1 (the empty product) always belongs to the head.
    let head_cut = ((n as f64 / spec.x).floor() as u64).max(1);
    let rho2 = modulus * modulus;

    let mut head = 0.0;
    let mut total = 0.0;
    let mut terms = 0u64;
    // Depth-first over X-smooth integers ≤ N; |r(m)|² = ρ^{2Ω(m)}.
    let mut stack: Vec<(u64, usize, f64)> = vec![(1, 0, 1.0)];
    while let Some((value, idx, mass)) = stack.pop() {
        terms += 1;
        if terms > SMOOTH_TERM_CAP {
            return Err(Error::Resource(format!(
                "smooth enumeration exceeded {SMOOTH_TERM_CAP} terms"
            )));
        }
        total += mass;
        if value <= head_cut {
            head += mass;
        }
        for (i, &p) in support.iter().enumerate().skip(idx) {
            match value.checked_mul(p) {
                Some(next) if next <= n => stack.push((next, i, mass * rho2)),
                _ => {}
            }
        }
    }
    Ok(RankinRatio {
        head,
        total,
        ratio: head / total,
        terms,
    })
}
