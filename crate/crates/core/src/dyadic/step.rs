use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::QSqrt2;
use crate::{Error, Result};

/// A compactly supported step function on ℝ with dyadic breakpoints and values in ℚ(√2).
///
/// The function equals `values[i]` on `[breakpoints[i], breakpoints[i+1])` and vanishes outside
/// `[breakpoints[0], breakpoints[r])`. The representation is canonical: adjacent equal values are
/// merged and zero pieces at either end are removed, so equality of functions is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicStep {
    breakpoints: Vec<BigRational>,
    values: Vec<QSqrt2>,
}

pub fn is_dyadic(x: &BigRational) -> bool {
    let d = x.denom();
    let tz = d.trailing_zeros().unwrap_or(0);
    *d == BigInt::one() << tz as usize
}

/// `2^k` for any integer `k`.
pub fn pow2(k: i64) -> BigRational {
    let p = BigInt::one() << k.unsigned_abs() as usize;
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

impl DyadicStep {
    pub fn new(breakpoints: Vec<BigRational>, values: Vec<QSqrt2>) -> Result<Self> {
        if breakpoints.is_empty() && values.is_empty() {
            return Ok(Self::zero());
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::InvalidExact(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                values.len()
            )));
        }
        if let Some(x) = breakpoints.iter().find(|x| !is_dyadic(x)) {
            return Err(Error::InvalidExact(format!("breakpoint {x} is not dyadic")));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidExact("breakpoints must be strictly increasing".into()));
        }
        Ok(Self::canonical(breakpoints, values))
    }

    fn canonical(breakpoints: Vec<BigRational>, values: Vec<QSqrt2>) -> Self {
        let mut bps: Vec<BigRational> = Vec::with_capacity(breakpoints.len());
        let mut vals: Vec<QSqrt2> = Vec::with_capacity(values.len());
        for (i, v) in values.into_iter().enumerate() {
            if vals.last() == Some(&v) {
                continue;
            }
            bps.push(breakpoints[i].clone());
            vals.push(v);
        }
        if let Some(end) = breakpoints.last() {
            bps.push(end.clone());
        }
        let first = vals.iter().position(|v| !v.is_zero());
        let Some(first) = first else {
            return Self::zero();
        };
        let last = vals.iter().rposition(|v| !v.is_zero()).expect("nonzero value");
        Self {
            breakpoints: bps[first..=last + 1].to_vec(),
            values: vals[first..=last].to_vec(),
        }
    }

    pub fn zero() -> Self {
        Self {
            breakpoints: Vec::new(),
            values: Vec::new(),
        }
    }

    /// `c·χ_{[a, b)}`.
    pub fn constant_on(a: BigRational, b: BigRational, c: QSqrt2) -> Result<Self> {
        Self::new(vec![a, b], vec![c])
    }

    pub fn indicator(a: BigRational, b: BigRational) -> Result<Self> {
        Self::constant_on(a, b, QSqrt2::one())
    }

    /// The unit-norm Haar wavelet `χ_{[0,1/2)} − χ_{[1/2,1)}`.
    pub fn haar() -> Self {
        Self::new(
            vec![BigRational::zero(), pow2(-1), BigRational::one()],
            vec![QSqrt2::one(), QSqrt2::from_integer(-1)],
        )
        .expect("haar")
    }

    /// `(1/√2)(χ_{[0,1/2)} − χ_{[1/2,1)})`, of norm `1/√2`.
    pub fn haar_half_norm() -> Self {
        Self::haar().scale(&QSqrt2::inv_sqrt2())
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[QSqrt2] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at `x`.
    pub fn eval(&self, x: &BigRational) -> QSqrt2 {
        match self.breakpoints.partition_point(|b| b <= x) {
            0 => QSqrt2::zero(),
            i if i > self.values.len() => QSqrt2::zero(),
            i => self.values[i - 1].clone(),
        }
    }

    pub fn scale(&self, c: &QSqrt2) -> Self {
        Self::canonical(self.breakpoints.clone(), self.values.iter().map(|v| v * c).collect())
    }

    /// Merged breakpoints of two functions.
    fn common_refinement(&self, other: &Self) -> Vec<BigRational> {
        let mut all: Vec<BigRational> = self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        all.sort();
        all.dedup();
        all
    }

    fn combine(&self, other: &Self, op: impl Fn(&QSqrt2, &QSqrt2) -> QSqrt2) -> Self {
        let grid = self.common_refinement(other);
        if grid.len() < 2 {
            return Self::zero();
        }
        let values = grid[..grid.len() - 1]
            .iter()
            .map(|x| op(&self.eval(x), &other.eval(x)))
            .collect();
        Self::canonical(grid, values)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    /// `∫ f·g` (values are real, so no conjugation).
    pub fn inner_product(&self, other: &Self) -> QSqrt2 {
        let grid = self.common_refinement(other);
        let mut total = QSqrt2::zero();
        for w in grid.windows(2) {
            let a = self.eval(&w[0]);
            if a.is_zero() {
                continue;
            }
            let b = other.eval(&w[0]);
            if b.is_zero() {
                continue;
            }
            total = &total + &(&(&a * &b) * &(&w[1] - &w[0]));
        }
        total
    }

    pub fn norm_squared(&self) -> QSqrt2 {
        self.inner_product(self)
    }

    /// `(T_t f)(x) = f(x − t)`.
    pub fn translate(&self, t: &BigRational) -> Result<Self> {
        if !is_dyadic(t) {
            return Err(Error::InvalidExact(format!("translation {t} is not dyadic")));
        }
        Ok(Self {
            breakpoints: self.breakpoints.iter().map(|x| x + t).collect(),
            values: self.values.clone(),
        })
    }

    /// `T^n = T_n`.
    pub fn translate_int(&self, n: i64) -> Self {
        self.translate(&BigRational::from_integer(n.into()))
            .expect("integer shift")
    }

    /// `(U^m f)(x) = 2^{-m/2} f(x/2^m)`.
    pub fn dilate(&self, m: i64) -> Self {
        let factor = pow2(m);
        let c = QSqrt2::inv_sqrt2_pow(m);
        Self {
            breakpoints: self.breakpoints.iter().map(|x| x * &factor).collect(),
            values: self.values.iter().map(|v| v * &c).collect(),
        }
    }

    /// A random canonical step function with at most `max_pieces` pieces, breakpoints in
    /// `[-4, 4]` with denominators up to `2^max_exp`, and small ℚ(√2) values.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_pieces: usize, max_exp: u32) -> Self {
        let pieces = rng.random_range(1..=max_pieces.max(1));
        let denom = 1i64 << max_exp;
        let mut ticks: Vec<i64> = (0..=pieces).map(|_| rng.random_range(-4 * denom..=4 * denom)).collect();
        ticks.sort_unstable();
        ticks.dedup();
        if ticks.len() < 2 {
            ticks.push(ticks[0] + 1);
        }
        let breakpoints = ticks
            .iter()
            .map(|&t| BigRational::new(t.into(), denom.into()))
            .collect::<Vec<_>>();
        let values = (0..breakpoints.len() - 1)
            .map(|_| {
                QSqrt2::new(
                    BigRational::new(rng.random_range(-6i64..=6).into(), rng.random_range(1i64..=4).into()),
                    BigRational::new(rng.random_range(-3i64..=3).into(), rng.random_range(1i64..=4).into()),
                )
            })
            .collect();
        Self::new(breakpoints, values).expect("valid random step")
    }

    /// Largest `|value|` as a float, for display.
    pub fn sup_norm_f64(&self) -> f64 {
        self.values.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn support(&self) -> Option<(BigRational, BigRational)> {
        Some((self.breakpoints.first()?.clone(), self.breakpoints.last()?.clone()))
    }

    pub fn has_negative_support(&self) -> bool {
        self.breakpoints.first().is_some_and(|x| x.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn canonical_form() {
        let f = DyadicStep::new(
            vec![r(-1, 1), r(0, 1), r(1, 2), r(1, 1), r(2, 1)],
            vec![QSqrt2::zero(), QSqrt2::one(), QSqrt2::one(), QSqrt2::zero()],
        )
        .unwrap();
        assert_eq!(f.breakpoints(), &[r(0, 1), r(1, 1)]);
        assert_eq!(f.values(), &[QSqrt2::one()]);
        assert!(DyadicStep::new(vec![r(0, 1), r(1, 3)], vec![QSqrt2::one()]).is_err());
        assert!(DyadicStep::new(vec![r(1, 1), r(0, 1)], vec![QSqrt2::one()]).is_err());
        assert!(DyadicStep::new(vec![r(0, 1)], vec![QSqrt2::one()]).is_err());
        assert!(DyadicStep::new(vec![r(0, 1), r(1, 1)], vec![QSqrt2::zero()])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn inner_product_examples() {
        let psi = DyadicStep::haar();
        assert_eq!(psi.inner_product(&psi), QSqrt2::one());
        assert_eq!(psi.inner_product(&DyadicStep::zero()), QSqrt2::zero());
        let chi = DyadicStep::indicator(r(0, 1), r(1, 1)).unwrap();
        assert_eq!(chi.inner_product(&psi), QSqrt2::zero());
        assert_eq!(
            DyadicStep::haar_half_norm().norm_squared(),
            QSqrt2::from_rational(r(1, 2))
        );
    }

    /// Oracle: overlap of ψ with its shift by t ∈ [0, 1/2] is (1/2 − t)·1 + t·(−1) + (1/2 − t)·1.
    #[test]
    fn translation_examples() {
        let psi = DyadicStep::haar();
        assert_eq!(psi.translate(&r(0, 1)).unwrap(), psi);
        let shifted = psi.translate_int(1);
        assert_eq!(shifted.support(), Some((r(1, 1), r(2, 1))));
        for (p, q) in [(0, 1), (1, 8), (1, 4), (3, 8), (1, 2), (5, 16), (1, 1024)] {
            let t = r(p, q);
            let oracle = (r(1, 2) - &t) - &t + (r(1, 2) - &t);
            assert_eq!(oracle, BigRational::one() - r(3, 1) * &t);
            assert_eq!(
                psi.translate(&t).unwrap().inner_product(&psi),
                QSqrt2::from_rational(oracle)
            );
        }
        assert!(psi.translate(&r(1, 3)).is_err());
    }

    #[test]
    fn dilation_examples() {
        let psi = DyadicStep::haar();
        assert_eq!(psi.dilate(0), psi);
        let u = psi.dilate(1);
        assert_eq!(u.breakpoints(), &[r(0, 1), r(1, 1), r(2, 1)]);
        assert_eq!(u.values()[0].to_string(), "1/2*sqrt2");
        assert_eq!(u.values()[1].to_string(), "-1/2*sqrt2");
        assert_eq!(psi.dilate(2).norm_squared(), QSqrt2::one());
        assert_eq!(psi.dilate(-3).dilate(3), psi);
    }

    #[test]
    fn evaluation() {
        let psi = DyadicStep::haar();
        assert_eq!(psi.eval(&r(-1, 2)), QSqrt2::zero());
        assert_eq!(psi.eval(&r(0, 1)), QSqrt2::one());
        assert_eq!(psi.eval(&r(1, 2)), QSqrt2::from_integer(-1));
        assert_eq!(psi.eval(&r(1, 1)), QSqrt2::zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn operators_are_unitary(seed in any::<u64>(), m in -3i64..=3, p in -16i64..=16) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = DyadicStep::random(&mut rng, 5, 3);
            let g = DyadicStep::random(&mut rng, 5, 3);
            let ip = f.inner_product(&g);
            prop_assert_eq!(f.dilate(m).inner_product(&g.dilate(m)), ip.clone());
            let t = r(p, 8);
            prop_assert_eq!(f.translate(&t).unwrap().inner_product(&g.translate(&t).unwrap()), ip);
        }

        #[test]
        fn canonicalization_is_idempotent(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = DyadicStep::random(&mut rng, 6, 2);
            let again = DyadicStep::new(f.breakpoints().to_vec(), f.values().to_vec()).unwrap();
            prop_assert_eq!(&again, &f);
            let g = DyadicStep::random(&mut rng, 6, 2);
            prop_assert_eq!(f.add(&g).sub(&g), f.clone());
            prop_assert!(f.sub(&f).is_zero());
        }
    }
}
