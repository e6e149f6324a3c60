//! Exact integer polynomials and cyclotomic polynomials.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::divisors;
use crate::error::{Error, Result};

/// Dense polynomial over `Z`, coefficient `i` multiplies `x^i`. Trailing zero
/// coefficients are never stored, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coeffs([1])
    }

    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.normalize();
        p
    }

    /// `Σ x^k` over the given exponents (with multiplicity).
    pub fn from_exponents(exponents: impl IntoIterator<Item = usize>) -> Self {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for k in exponents {
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += 1;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn monomial(coeff: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff.into();
        Self::from_coeffs(coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        &Self::monomial(1, n) - &Self::one()
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + big_to_f64(c))
    }

    /// Long division by a monic divisor: `self = q · divisor + r` with
    /// `deg r < deg divisor`.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let lead = std::mem::take(&mut rem[shift + dd]);
            if lead.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs[..dd].iter().enumerate() {
                if !c.is_zero() {
                    rem[shift + i] -= &lead * c;
                }
            }
            quot[shift] = lead;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// `Some(q)` with `self = q · divisor` when the division is exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem_monic(divisor)?;
        Ok(r.is_zero().then_some(q))
    }
}

fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Whether `divisor` divides `p` over `Z[x]`. The zero polynomial is divisible
/// by everything. `divisor` must be monic.
pub fn divides(divisor: &IntPolynomial, p: &IntPolynomial) -> Result<bool> {
    Ok(p.div_rem_monic(divisor)?.1.is_zero())
}

/// `p(e^{2πij/n})`. Each power is reduced mod `n` before taking the
/// exponential, so no error accumulates across terms.
pub fn evaluate_at_root_of_unity(p: &IntPolynomial, n: usize, j: usize) -> Complex64 {
    assert!(n >= 1);
    p.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let angle = TAU * ((k * j) % n) as f64 / n as f64;
            Complex64::from_polar(big_to_f64(c), angle)
        })
        .sum()
}

type CyclotomicCache = RwLock<HashMap<usize, Arc<IntPolynomial>>>;

fn cache() -> &'static CyclotomicCache {
    static CACHE: OnceLock<CyclotomicCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `d`-th cyclotomic polynomial, `Φ_d = (x^d - 1) / Π_{e | d, e < d} Φ_e`.
/// Results are memoized for the lifetime of the process.
pub fn cyclotomic(d: usize) -> Arc<IntPolynomial> {
    assert!(d >= 1, "cyclotomic(0)");
    if let Some(p) = cache().read().unwrap().get(&d) {
        return Arc::clone(p);
    }
    let mut acc = IntPolynomial::x_pow_minus_one(d);
    for e in divisors(d) {
        if e == d {
            break;
        }
        let phi_e = cyclotomic(e);
        acc = acc
            .exact_div(&phi_e)
            .expect("cyclotomic polynomials are monic")
            .expect("Φ_e divides x^d - 1 for e | d");
    }
    let p = Arc::new(acc);
    Arc::clone(cache().write().unwrap().entry(d).or_insert(p))
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: Self) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)))
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: Self) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}
