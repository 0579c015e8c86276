//! Dense power series in `q` with arbitrary-precision integer coefficients,
//! truncated at a fixed order.
//!
//! A series of order `N` stores exactly `N + 1` coefficients, for
//! `q^0 ..= q^N`. Binary operations require equal orders; nothing is
//! truncated implicitly. Use [`TruncatedSeries::truncate`] when a lower
//! order is wanted.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    /// `q^exponent`, or zero when the exponent lies beyond the order.
    pub fn monomial(exponent: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = BigInt::one();
        }
        s
    }

    /// Builds a series from its coefficients, lowest degree first. The order
    /// is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coefficient(&self, n: usize) -> Result<&BigInt> {
        self.coeffs.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            order: self.order(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_order(other)?;
        for (c, d) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *c += d;
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(c, d)| c - d)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplies by `q^k`, dropping what falls past the order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        if k <= order {
            out.coeffs[k..].clone_from_slice(&self.coeffs[..=order - k]);
        }
        out
    }

    /// Restriction to a lower (or equal) order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::IndexOutOfRange {
                index: order,
                order: self.order(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// `self * (1 - q^a)^{-1}`.
    pub fn mul_inv_one_minus(&self, a: usize) -> Result<Self> {
        let mut out = self.clone();
        out.apply_inv_one_minus(a)?;
        Ok(out)
    }

    /// In-place `self *= (1 - q^a)^{-1}`, via `c'_n = c_n + c'_{n-a}`.
    pub fn apply_inv_one_minus(&mut self, a: usize) -> Result<()> {
        if a == 0 {
            return Err(Error::NonPositiveExponent(a));
        }
        for n in a..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            if !lo[n - a].is_zero() {
                hi[0] += &lo[n - a];
            }
        }
        Ok(())
    }

    /// `self * (1 - q^a)`.
    pub fn mul_one_minus(&self, a: usize) -> Result<Self> {
        let mut out = self.clone();
        out.apply_one_minus(a)?;
        Ok(out)
    }

    /// In-place `self *= (1 - q^a)`; walks downward so each step reads
    /// original coefficients.
    pub fn apply_one_minus(&mut self, a: usize) -> Result<()> {
        if a == 0 {
            return Err(Error::NonPositiveExponent(a));
        }
        for n in (a..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            if !lo[n - a].is_zero() {
                hi[0] -= &lo[n - a];
            }
        }
        Ok(())
    }

    /// `1 / prod_{i=1}^{n} (1 - q^{step*i})`; the empty product when `n = 0`.
    pub fn poch_inv(step: usize, n: usize, order: usize) -> Result<Self> {
        let mut s = Self::one(order);
        s.apply_poch_inv(step, n)?;
        Ok(s)
    }

    /// In-place multiplication by `1 / prod_{i=1}^{n} (1 - q^{step*i})`.
    pub fn apply_poch_inv(&mut self, step: usize, n: usize) -> Result<()> {
        if step == 0 {
            return Err(Error::NonPositiveExponent(step));
        }
        for i in 1..=n {
            let a = step * i;
            if a > self.order() {
                break;
            }
            self.apply_inv_one_minus(a)?;
        }
        Ok(())
    }

    /// `1 / prod (1 - q^a)` over the given exponents. Exponents past the
    /// order contribute nothing.
    pub fn inv_product<I>(order: usize, exponents: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::one(order);
        for a in exponents {
            if a <= order {
                s.apply_inv_one_minus(a)?;
            }
        }
        Ok(s)
    }
}

/// Character of the Fock space of the principal Heisenberg subalgebra,
/// `F = prod_{n>=1} (1 - q^{2n-1})^{-1}`: partitions into odd parts.
pub fn fock_character(order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(order);
    for a in (1..=order).step_by(2) {
        s.apply_inv_one_minus(a)
            .expect("odd exponents are positive");
    }
    s
}

/// Canonical text: decimal coefficients separated by single spaces, lowest
/// degree first.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for TruncatedSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("{tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self { coeffs })
    }
}
