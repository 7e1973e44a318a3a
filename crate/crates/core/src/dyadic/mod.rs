//! Exact arithmetic for the Baumslag–Solitar group BS(1,2) acting on L²(ℝ) by
//! `(Uf)(x) = f(x/2)/√2` and `(Tf)(x) = f(x − 1)`, restricted to dyadic step functions.
//!
//! The relation `U T U⁻¹ = T²` holds, the conjugates `U^{-n} T U^n` are the translations
//! `T_{1/2^n}`, and the Haar orbit `{U^m T^n ψ}` is orthonormal. Because the overlaps
//! `⟨T_{1/2^n} ψ, ψ⟩ = 1 − 3/2^n` tend to 1, no finite Bessel bound can cover the conjugates.

mod qsqrt2;
mod step;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

pub use qsqrt2::QSqrt2;
pub use step::{is_dyadic, pow2, DyadicStep};

use crate::{Error, Result};

/// Which Haar wavelet to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HaarNormalization {
    /// `χ_{[0,1/2)} − χ_{[1/2,1)}`, norm 1.
    #[default]
    Unit,
    /// `(1/√2)(χ_{[0,1/2)} − χ_{[1/2,1)})`, norm `1/√2`.
    HalfNorm,
}

impl HaarNormalization {
    pub fn wavelet(self) -> DyadicStep {
        match self {
            Self::Unit => DyadicStep::haar(),
            Self::HalfNorm => DyadicStep::haar_half_norm(),
        }
    }
}

impl std::str::FromStr for HaarNormalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(Self::Unit),
            "half-norm" => Ok(Self::HalfNorm),
            other => Err(Error::InvalidArgument(format!(
                "unknown normalization {other:?} (expected unit or half-norm)"
            ))),
        }
    }
}

/// `U^m T^n f`.
pub fn bs_word(f: &DyadicStep, m: i64, n: i64) -> DyadicStep {
    f.translate_int(n).dilate(m)
}

/// Gram matrix of `{U^m T^n ψ}` with `m` as the outer and `n` as the inner index.
pub fn haar_gram(
    m_range: std::ops::RangeInclusive<i64>,
    n_range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<Vec<QSqrt2>>> {
    if m_range.is_empty() || n_range.is_empty() {
        return Err(Error::InvalidArgument("index ranges must be nonempty".into()));
    }
    let psi = DyadicStep::haar();
    let orbit: Vec<DyadicStep> = m_range
        .flat_map(|m| n_range.clone().map(move |n| (m, n)))
        .map(|(m, n)| bs_word(&psi, m, n))
        .collect();
    Ok(orbit
        .iter()
        .map(|f| orbit.iter().map(|g| f.inner_product(g)).collect())
        .collect())
}

pub fn is_identity(gram: &[Vec<QSqrt2>]) -> bool {
    gram.iter().enumerate().all(|(i, row)| {
        row.len() == gram.len()
            && row
                .iter()
                .enumerate()
                .all(|(j, x)| if i == j { *x == QSqrt2::one() } else { x.is_zero() })
    })
}

/// `U^{-n} T U^n f` and `T_{1/2^n} f`.
pub fn conjugation_sides(n: u32, probe: &DyadicStep) -> (DyadicStep, DyadicStep) {
    let n = i64::from(n);
    let lhs = probe.dilate(n).translate_int(1).dilate(-n);
    let rhs = probe.translate(&pow2(-n)).expect("dyadic shift");
    (lhs, rhs)
}

/// Whether `U^{-n} T U^n f = T_{1/2^n} f` exactly.
pub fn conjugation_identity(n: u32, probe: &DyadicStep) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("conjugation exponent must be positive".into()));
    }
    let (lhs, rhs) = conjugation_sides(n, probe);
    Ok(lhs == rhs)
}

/// Whether `U T U⁻¹ f = T² f` exactly.
pub fn defining_relation(probe: &DyadicStep) -> bool {
    probe.dilate(-1).translate_int(1).dilate(1) == probe.translate_int(2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BesselRow {
    pub n: u32,
    /// `⟨T_{1/2^n} ψ, ψ⟩`
    pub inner: QSqrt2,
    /// `Σ_{n′ ≤ n} ⟨T_{1/2^{n′}} ψ, ψ⟩²`
    pub partial_sum: QSqrt2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BesselReport {
    pub normalization: HaarNormalization,
    pub norm_squared: QSqrt2,
    pub rows: Vec<BesselRow>,
    /// Smallest `N` such that `|⟨T_{1/2^n} ψ, ψ⟩| ≥ ½‖ψ‖²` for every `n` in `N..=N_max`.
    pub threshold: Option<u32>,
}

impl BesselReport {
    pub fn final_partial_sum(&self) -> &QSqrt2 {
        &self.rows.last().expect("at least one row").partial_sum
    }
}

pub fn bessel_divergence(n_max: u32, normalization: HaarNormalization) -> Result<BesselReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("N_max must be at least 1".into()));
    }
    let psi = normalization.wavelet();
    let norm_squared = psi.norm_squared();
    let half = &norm_squared * &BigRational::new(1.into(), 2.into());
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut sum = QSqrt2::zero();
    let mut threshold = None;
    for n in 1..=n_max {
        let inner = psi.translate(&pow2(-i64::from(n)))?.inner_product(&psi);
        sum = &sum + &(&inner * &inner);
        if inner.abs() >= half {
            threshold.get_or_insert(n);
        } else {
            threshold = None;
        }
        rows.push(BesselRow {
            n,
            inner,
            partial_sum: sum.clone(),
        });
    }
    Ok(BesselReport {
        normalization,
        norm_squared,
        rows,
        threshold,
    })
}

/// `1 − 3/2^n`, the closed form of `⟨T_{1/2^n} ψ, ψ⟩` for the unit Haar wavelet.
pub fn haar_overlap_closed_form(n: u32) -> BigRational {
    BigRational::one() - BigRational::from_integer(3.into()) * pow2(-i64::from(n))
}
