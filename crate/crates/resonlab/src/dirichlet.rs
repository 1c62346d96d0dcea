//! Dirichlet character groups mod prime q and the sums built over them.
//!
//! The modulus is required to be prime. That keeps the unit group cyclic,
//! so a single primitive root g indexes every character: χ_j(g^k) =
//! e^{2πi jk/(q−1)}, and a quantity summed over the group for all
//! characters at once is a length-(q−1) discrete Fourier transform of its
//! values arranged by discrete logarithm.
//!
//! The L′/L(1, χ) oracle comes from the Laurent expansion of
//! L(s, χ) = q^{−s} Σ_a χ(a) ζ(s, a/q): for nonprincipal χ the poles of
//! the Hurwitz zetas cancel (Σ_a χ(a) = 0), leaving
//!   L(1, χ)  = (1/q) Σ_a χ(a) γ₀(a/q),
//!   L′(1, χ) = −(1/q) Σ_a χ(a) (γ₁(a/q) + log q · γ₀(a/q)).

use crate::arith::{is_prime_u64, PrimeTable, EULER_GAMMA};
use crate::error::{Error, Result};
use crate::special::{stieltjes_gamma01, EulerMaclaurinConfig};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::TAU;

/// Largest supported modulus.
const MODULUS_GUARD: u64 = 1 << 24;

/// Division guard for L′/L.
const L_NEAR_ZERO: f64 = 1e-12;

/// Full character group mod prime q, indexed through a primitive root.
pub struct CharacterTable {
    q: u64,
    g: u64,
    /// dlog[a] = k with g^k ≡ a (mod q), for a ∈ [1, q−1]; dlog[0] unused.
    dlog: Vec<u32>,
}

/// Label of one character: χ_j(g) = e^{2πi j/(q−1)}, j ∈ [0, q−2].
/// j = 0 is the principal character; χ_j is real iff j ∈ {0, (q−1)/2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharId(pub u32);

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl CharacterTable {
    /// Build the table for a prime modulus q with its least primitive root.
    pub fn build(q: u64) -> Result<Self> {
        if q == 2 {
            return Err(Error::Domain(
                "q = 2 has a trivial character group; modulus must be an odd prime".into(),
            ));
        }
        if q < 3 || q > MODULUS_GUARD {
            return Err(Error::Domain(format!(
                "modulus must lie in [3, 2^24], got {q}"
            )));
        }
        if !is_prime_u64(q) {
            return Err(Error::Domain(format!("modulus {q} is composite")));
        }
        let order = q - 1;
        let factors = prime_factors(order);
        let g = (2..q)
            .find(|&cand| factors.iter().all(|&p| mod_pow(cand, order / p, q) != 1))
            .expect("every prime modulus has a primitive root");

        let mut dlog = vec![0u32; q as usize];
        let mut acc = 1u64;
        for k in 0..order {
            dlog[acc as usize] = k as u32;
            acc = (acc as u128 * g as u128 % q as u128) as u64;
        }
        Ok(CharacterTable { q, g, dlog })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    /// Group order q − 1.
    pub fn order(&self) -> u64 {
        self.q - 1
    }

    /// Discrete log of a unit a ∈ [1, q−1] to base g.
    pub fn dlog(&self, a: u64) -> u32 {
        debug_assert!(a >= 1 && a < self.q);
        self.dlog[a as usize]
    }

    /// All character labels, principal first.
    pub fn char_ids(&self) -> impl Iterator<Item = CharId> {
        (0..self.order() as u32).map(CharId)
    }
}

/// χ_j(n): zero when q | n, otherwise e^{2πi j·dlog(n mod q)/(q−1)}.
pub fn chi_eval(table: &CharacterTable, id: CharId, n: u64) -> Complex64 {
    let order = table.order();
    debug_assert!((id.0 as u64) < order);
    let residue = n % table.q;
    if residue == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let k = table.dlog(residue) as u64;
    let m = (id.0 as u64 * k) % order;
    let (sin, cos) = (TAU * m as f64 / order as f64).sin_cos();
    Complex64::new(cos, sin)
}

/// Unnormalized inverse-direction DFT: out_j = Σ_k buf_k e^{+2πi jk/len}.
pub(crate) fn group_dft(mut buf: Vec<Complex64>) -> Vec<Complex64> {
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_inverse(buf.len());
    fft.process(&mut buf);
    buf
}

/// Accumulate Λ(n)/n^σ over prime powers n ≤ y into the dlog buckets of
/// the unit group, skipping multiples of q.
fn lambda_buckets(
    table: &CharacterTable,
    sigma: f64,
    y: u64,
    primes: &PrimeTable,
) -> Result<Vec<Complex64>> {
    if y > primes.limit() {
        return Err(Error::Domain(format!(
            "Y = {y} exceeds prime table limit {}",
            primes.limit()
        )));
    }
    let mut buckets = vec![Complex64::new(0.0, 0.0); table.order() as usize];
    let exact_inverse = sigma == 1.0;
    for (n, p, logp) in primes.prime_powers(y) {
        if p == table.q {
            continue;
        }
        let w = if exact_inverse {
            logp / n as f64
        } else {
            logp * (n as f64).powf(-sigma)
        };
        let k = table.dlog(n % table.q) as usize;
        buckets[k].re += w;
    }
    Ok(buckets)
}

/// S(χ_j) = Σ_{n≤Y} Λ(n) χ_j(n) / n^σ for every character at once:
/// bucket the weights by discrete log, then one exact-length DFT.
pub fn batch_truncated_sums(
    table: &CharacterTable,
    sigma: f64,
    y: u64,
    primes: &PrimeTable,
) -> Result<Vec<Complex64>> {
    Ok(group_dft(lambda_buckets(table, sigma, y, primes)?))
}

/// The literal double loop over characters and prime powers; the oracle
/// the DFT path is validated against.
pub fn naive_truncated_sums(
    table: &CharacterTable,
    sigma: f64,
    y: u64,
    primes: &PrimeTable,
) -> Result<Vec<Complex64>> {
    if y > primes.limit() {
        return Err(Error::Domain(format!(
            "Y = {y} exceeds prime table limit {}",
            primes.limit()
        )));
    }
    let terms: Vec<(u64, f64)> = primes
        .prime_powers(y)
        .filter(|&(_, p, _)| p != table.q)
        .map(|(n, _, logp)| (n, logp * (n as f64).powf(-sigma)))
        .collect();
    Ok(table
        .char_ids()
        .map(|id| {
            terms
                .iter()
                .map(|&(n, w)| w * chi_eval(table, id, n))
                .sum()
        })
        .collect())
}

/// Generalized Stieltjes data (γ₀(a/q), γ₁(a/q)) for every unit a,
/// arranged by residue index a = 1..q−1.
fn stieltjes_row(table: &CharacterTable, cfg: &EulerMaclaurinConfig) -> Result<Vec<(f64, f64)>> {
    let q = table.q;
    (1..q)
        .map(|a| stieltjes_gamma01(a as f64 / q as f64, cfg))
        .collect()
}

/// L(1, χ) and L′(1, χ) for one nonprincipal character, by direct
/// summation over residues.
pub fn l_value_and_deriv(
    table: &CharacterTable,
    id: CharId,
    cfg: &EulerMaclaurinConfig,
) -> Result<(Complex64, Complex64)> {
    if id.0 == 0 {
        return Err(Error::PrincipalCharacter(
            "L(s, χ₀) has a pole at s = 1; L(1, χ₀) is undefined".into(),
        ));
    }
    let q = table.q;
    let logq = (q as f64).ln();
    let mut a0 = Complex64::new(0.0, 0.0);
    let mut a1 = Complex64::new(0.0, 0.0);
    for a in 1..q {
        let chi = chi_eval(table, id, a);
        let (g0, g1) = stieltjes_gamma01(a as f64 / q as f64, cfg)?;
        a0 += chi * g0;
        a1 += chi * g1;
    }
    let l = a0 / q as f64;
    let lprime = -(a1 + logq * a0) / q as f64;
    Ok((l, lprime))
}

/// L′/L(1, χ_j) for a nonprincipal character.
pub fn l_log_deriv_oracle(
    table: &CharacterTable,
    id: CharId,
    cfg: &EulerMaclaurinConfig,
) -> Result<Complex64> {
    let (l, lprime) = l_value_and_deriv(table, id, cfg)?;
    if l.norm() < L_NEAR_ZERO {
        return Err(Error::NearZero(format!(
            "|L(1, χ_{})| = {:e} is below the division guard",
            id.0,
            l.norm()
        )));
    }
    Ok(lprime / l)
}

/// L′/L(1, χ_j) for every character at once (None at the principal one);
/// the residue sums for all characters are two DFTs of the Stieltjes data.
pub fn l_log_deriv_oracle_all(
    table: &CharacterTable,
    cfg: &EulerMaclaurinConfig,
) -> Result<Vec<Option<Complex64>>> {
    let q = table.q;
    let order = table.order() as usize;
    let logq = (q as f64).ln();
    let row = stieltjes_row(table, cfg)?;
    let mut b0 = vec![Complex64::new(0.0, 0.0); order];
    let mut b1 = vec![Complex64::new(0.0, 0.0); order];
    for a in 1..q {
        let k = table.dlog(a) as usize;
        let (g0, g1) = row[(a - 1) as usize];
        b0[k].re += g0;
        b1[k].re += g1;
    }
    let a0 = group_dft(b0);
    let a1 = group_dft(b1);
    (0..order)
        .map(|j| {
            if j == 0 {
                return Ok(None);
            }
            let l = a0[j] / q as f64;
            if l.norm() < L_NEAR_ZERO {
                return Err(Error::NearZero(format!(
                    "|L(1, χ_{j})| = {:e} is below the division guard",
                    l.norm()
                )));
            }
            let lprime = -(a1[j] + logq * a0[j]) / q as f64;
            Ok(Some(lprime / l))
        })
        .collect()
}

/// Euler–Kronecker constant of the prime cyclotomic field:
/// γ + Σ_{χ ≠ χ₀} L′/L(1, χ). The imaginary parts must cancel in
/// conjugate pairs; their residue is checked and discarded.
pub fn euler_kronecker(q: u64, cfg: &EulerMaclaurinConfig) -> Result<f64> {
    let table = CharacterTable::build(q)?;
    let all = l_log_deriv_oracle_all(&table, cfg)?;
    let sum: Complex64 = all.iter().flatten().sum();
    if sum.im.abs() > 1e-8 {
        return Err(Error::Precision(format!(
            "imaginary residue {:e} after conjugate pairing exceeds 1e-8",
            sum.im
        )));
    }
    Ok(EULER_GAMMA + sum.re)
}
