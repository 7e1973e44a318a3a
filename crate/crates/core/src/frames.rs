//! Finite-dimensional frames: analysis and frame operators, frame bounds,
//! classification, the canonical Parseval transform `f_k ↦ S^{-1/2} f_k` and
//! spectral truncation of the frame operator.
//!
//! A finite family is always Bessel, so the weak-frame phenomena of infinite
//! families are only visible through [`truncation_profile`], which tracks how the
//! bounds of growing truncations behave.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::linalg::{hermitian_eigen, CMatrix, CVector, HermitianEigen, C64};
use crate::{Error, Result};

/// Default tolerance for the Parseval test `max(|A−1|, |B−1|) ≤ tol`.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Relative threshold below which an eigenvalue of `S` counts as zero.
pub const RANK_TOL_REL: f64 = 1e-10;

/// `1e-10 · max(1, λ_max)`.
pub fn rank_tolerance(lambda_max: f64) -> f64 {
    RANK_TOL_REL * lambda_max.max(1.0)
}

/// An ordered, non-empty family of vectors in `ℂ^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSystem {
    dim: usize,
    vectors: Vec<CVector>,
}

impl VectorSystem {
    pub fn new(dim: usize, vectors: Vec<CVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSystem("dimension must be positive".into()));
        }
        if vectors.is_empty() {
            return Err(Error::InvalidSystem("system has no vectors".into()));
        }
        if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != dim) {
            return Err(Error::InvalidSystem(format!(
                "vector {i} has dimension {}, expected {dim}",
                v.len()
            )));
        }
        Ok(Self { dim, vectors })
    }

    /// Builds a system from rows of `(re, im)` pairs.
    pub fn from_pairs(dim: usize, rows: &[Vec<(f64, f64)>]) -> Result<Self> {
        let vectors = rows
            .iter()
            .map(|r| CVector::from_iterator(r.len(), r.iter().map(|&(re, im)| C64::new(re, im))))
            .collect();
        Self::new(dim, vectors)
    }

    pub fn from_real_rows(dim: usize, rows: &[Vec<f64>]) -> Result<Self> {
        let vectors = rows
            .iter()
            .map(|r| CVector::from_iterator(r.len(), r.iter().map(|&x| C64::new(x, 0.0))))
            .collect();
        Self::new(dim, vectors)
    }

    pub fn standard_basis(dim: usize) -> Self {
        let vectors = (0..dim).map(|i| crate::linalg::basis_vector(dim, i)).collect();
        Self { dim, vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn map(&self, op: &CMatrix) -> Self {
        Self {
            dim: op.nrows(),
            vectors: self.vectors.iter().map(|v| op * v).collect(),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            vectors: self.vectors.iter().map(|v| v.scale(s)).collect(),
        }
    }

    /// `Σ_n |⟨v, f_n⟩|²`.
    pub fn energy(&self, v: &CVector) -> f64 {
        self.vectors.iter().map(|f| crate::linalg::inner(v, f).norm_sqr()).sum()
    }
}

/// Analysis operator `θ`: an `m × d` matrix whose row `n` is `f_n*`, so that
/// `(θv)_n = ⟨v, f_n⟩` and `θ*` sends the `n`-th basis vector to `f_n`.
pub fn analysis_operator(sys: &VectorSystem) -> CMatrix {
    let m = sys.len();
    let d = sys.dim();
    CMatrix::from_fn(m, d, |n, j| sys.vectors[n][j].conj())
}

/// Synthesis operator `θ*` (`d × m`, columns are the vectors).
pub fn synthesis_operator(sys: &VectorSystem) -> CMatrix {
    CMatrix::from_columns(&sys.vectors)
}

/// Frame operator `S = θ*θ = Σ f_n f_n*`.
pub fn frame_operator(sys: &VectorSystem) -> CMatrix {
    let theta = analysis_operator(sys);
    theta.adjoint() * theta
}

/// Gram matrix `θθ*` with entries `⟨f_j, f_i⟩`.
pub fn gram_matrix(sys: &VectorSystem) -> CMatrix {
    let theta = analysis_operator(sys);
    &theta * theta.adjoint()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    #[serde(rename = "ONB")]
    Onb,
    Parseval,
    Frame,
    NotTotal,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Onb => "ONB",
            Classification::Parseval => "Parseval",
            Classification::Frame => "Frame",
            Classification::NotTotal => "NotTotal",
        })
    }
}

#[derive(Debug, Clone)]
pub struct FrameReport {
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub frame_operator: CMatrix,
    pub classification: Classification,
    pub tol: f64,
    pub rank_tol: f64,
    pub num_vectors: usize,
    pub dim: usize,
}

impl FrameReport {
    pub fn bounds(&self) -> (f64, f64) {
        (self.lower_bound, self.upper_bound)
    }

    pub fn is_total(&self) -> bool {
        self.classification != Classification::NotTotal
    }
}

fn classify(a: f64, b: f64, rank_tol: f64, tol: f64, m: usize, d: usize) -> Classification {
    if a < rank_tol {
        Classification::NotTotal
    } else if (a - 1.0).abs().max((b - 1.0).abs()) <= tol {
        if m == d {
            Classification::Onb
        } else {
            Classification::Parseval
        }
    } else {
        Classification::Frame
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")))
    }
}

fn report_from_eigen(sys: &VectorSystem, s: CMatrix, eig: &HermitianEigen, tol: f64) -> FrameReport {
    let upper = eig.max().max(0.0);
    let lower = eig.min().max(0.0);
    let rank_tol = rank_tolerance(upper);
    FrameReport {
        lower_bound: lower,
        upper_bound: upper,
        frame_operator: s,
        classification: classify(lower, upper, rank_tol, tol, sys.len(), sys.dim()),
        tol,
        rank_tol,
        num_vectors: sys.len(),
        dim: sys.dim(),
    }
}

/// Frame bounds `A = λ_min(S)`, `B = λ_max(S)` and the classification of `sys`.
pub fn frame_report(sys: &VectorSystem, tol: f64) -> Result<FrameReport> {
    check_tol(tol)?;
    let s = frame_operator(sys);
    let eig = hermitian_eigen(&s)?;
    Ok(report_from_eigen(sys, s, &eig, tol))
}

/// `{S^{-1/2} f_k}`, a Parseval frame whenever `sys` is total.
pub fn canonical_parseval(sys: &VectorSystem, tol: f64) -> Result<VectorSystem> {
    check_tol(tol)?;
    let s = frame_operator(sys);
    let eig = hermitian_eigen(&s)?;
    let rank_tol = rank_tolerance(eig.max());
    if eig.min() <= rank_tol {
        return Err(Error::NotTotal {
            lambda_min: eig.min(),
            rank_tol,
        });
    }
    let inv_sqrt = eig.apply_fn(|l| 1.0 / l.sqrt());
    Ok(sys.map(&inv_sqrt))
}

/// Spectral projection of the frame operator onto `[1/n, n]` and the projected system.
#[derive(Debug, Clone)]
pub struct SpectralSlice {
    pub n: u32,
    pub projection: CMatrix,
    pub sliced_system: VectorSystem,
    /// Eigenvalues of `S` that fall inside `[1/n, n]`, ascending.
    pub retained: Vec<f64>,
}

impl SpectralSlice {
    pub fn rank(&self) -> usize {
        self.retained.len()
    }
}

pub fn spectral_truncation(sys: &VectorSystem, n: u32) -> Result<SpectralSlice> {
    if n == 0 {
        return Err(Error::InvalidArgument("truncation level must be at least 1".into()));
    }
    let s = frame_operator(sys);
    let eig = hermitian_eigen(&s)?;
    let lo = 1.0 / n as f64;
    let hi = n as f64;
    let inside = |l: f64| l >= lo && l <= hi;
    let projection = eig.projection(inside);
    let retained = eig.values.iter().copied().filter(|&l| inside(l)).collect();
    Ok(SpectralSlice {
        n,
        sliced_system: sys.map(&projection),
        projection,
        retained,
    })
}

/// Families whose finite truncations exhibit weak-frame behaviour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TruncationFamily {
    /// `f_n = a_n e_n` with `a_n = n^{-exponent}`.
    Diagonal { exponent: f64 },
    /// `f_n = e_n + e_{n+1}`.
    Overlap,
}

impl FromStr for TruncationFamily {
    type Err = Error;

    /// Accepts `diag`, `diag:<exponent>` and `overlap`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None if s == "diag" => Ok(Self::Diagonal { exponent: 1.0 }),
            None if s == "overlap" => Ok(Self::Overlap),
            Some(("diag", e)) => e
                .parse::<f64>()
                .ok()
                .filter(|e| e.is_finite())
                .map(|exponent| Self::Diagonal { exponent })
                .ok_or_else(|| Error::InvalidArgument(format!("bad diag exponent {e:?}"))),
            _ => Err(Error::InvalidArgument(format!("unknown truncation family {s:?}"))),
        }
    }
}

impl TruncationFamily {
    /// The first `n` vectors of the family, in their ambient dimension.
    pub fn truncation(&self, n: usize) -> Result<VectorSystem> {
        if n == 0 {
            return Err(Error::InvalidArgument("truncation size must be positive".into()));
        }
        let one = C64::new(1.0, 0.0);
        match *self {
            Self::Diagonal { exponent } => {
                let vectors = (1..=n)
                    .map(|k| {
                        let mut v = CVector::zeros(n);
                        v[k - 1] = C64::new((k as f64).powf(-exponent), 0.0);
                        v
                    })
                    .collect();
                VectorSystem::new(n, vectors)
            }
            Self::Overlap => {
                let vectors = (0..n)
                    .map(|k| {
                        let mut v = CVector::zeros(n + 1);
                        v[k] = one;
                        v[k + 1] = one;
                        v
                    })
                    .collect();
                VectorSystem::new(n + 1, vectors)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub n: usize,
    /// Smallest eigenvalue of the Gram matrix: the lower frame bound on the span.
    pub lower: f64,
    /// Largest eigenvalue of the Gram matrix (= `λ_max(S)`).
    pub upper: f64,
    pub ambient_dim: usize,
    /// Whether the truncation spans its ambient space.
    pub total: bool,
}

/// Frame bounds of successive truncations of `family`.
///
/// Bounds are taken on the span of each truncation (extreme eigenvalues of
/// `θθ*`), which for the overlap family differs from the ambient bound because
/// `n` vectors sit in `ℂ^{n+1}`.
pub fn truncation_profile(family: TruncationFamily, sizes: &[usize]) -> Result<Vec<ProfilePoint>> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("no truncation sizes given".into()));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "truncation sizes must be strictly increasing".into(),
        ));
    }
    sizes.iter().map(|&n| profile_point(family, n)).collect()
}

pub fn profile_point(family: TruncationFamily, n: usize) -> Result<ProfilePoint> {
    let sys = family.truncation(n)?;
    let gram = hermitian_eigen(&gram_matrix(&sys))?;
    let lower = gram.min().max(0.0);
    let upper = gram.max();
    Ok(ProfilePoint {
        n,
        lower,
        upper,
        ambient_dim: sys.dim(),
        total: sys.len() >= sys.dim() && lower > rank_tolerance(upper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, frobenius_distance, random_gaussian_vector, random_unit_vector};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mercedes() -> VectorSystem {
        let h = 3f64.sqrt() / 2.0;
        VectorSystem::from_real_rows(2, &[vec![0.0, 1.0], vec![-h, -0.5], vec![h, -0.5]]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rejects_ragged_or_empty_systems() {
        assert!(VectorSystem::from_real_rows(2, &[vec![1.0, 0.0], vec![1.0]]).is_err());
        assert!(VectorSystem::new(2, vec![]).is_err());
        assert!(VectorSystem::new(0, vec![CVector::zeros(0)]).is_err());
    }

    #[test]
    fn analysis_operator_examples() {
        let theta = analysis_operator(&VectorSystem::standard_basis(2));
        assert_eq!(theta, CMatrix::identity(2, 2));

        let r = 1.0 / 2f64.sqrt();
        let sys = VectorSystem::from_pairs(2, &[vec![(r, 0.0), (0.0, r)]]).unwrap();
        let theta = analysis_operator(&sys);
        assert_eq!(theta.shape(), (1, 2));
        // rows are conjugated vectors
        assert_eq!(theta[(0, 0)], c(r, 0.0));
        assert_eq!(theta[(0, 1)], c(0.0, -r));
        let v = CVector::from_vec(vec![c(1.0, 2.0), c(-1.0, 0.5)]);
        let direct = crate::linalg::inner(&v, &sys.vectors()[0]);
        assert!(((&theta * &v)[0] - direct).norm() < 1e-15);
        // θ* δ_1 = f_1
        let back = theta.adjoint() * crate::linalg::basis_vector(1, 0);
        assert_eq!(back, sys.vectors()[0]);

        let gram = gram_matrix(&mercedes());
        for i in 0..3 {
            assert!(close(gram[(i, i)].re, 1.0, 1e-15));
        }
    }

    #[test]
    fn frame_report_examples() {
        let r = frame_report(&VectorSystem::standard_basis(3), DEFAULT_TOL).unwrap();
        assert_eq!((r.lower_bound, r.upper_bound), (1.0, 1.0));
        assert_eq!(r.classification, Classification::Onb);

        // S = (3/2) I by direct summation of the three outer products
        let r = frame_report(&mercedes(), DEFAULT_TOL).unwrap();
        assert!(close(r.lower_bound, 1.5, 1e-14) && close(r.upper_bound, 1.5, 1e-14));
        assert_eq!(r.classification, Classification::Frame);
        let scaled = mercedes().scaled((2.0f64 / 3.0).sqrt());
        assert_eq!(
            frame_report(&scaled, DEFAULT_TOL).unwrap().classification,
            Classification::Parseval
        );

        let n = 7;
        let r = frame_report(
            &TruncationFamily::Diagonal { exponent: 1.0 }.truncation(n).unwrap(),
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(close(r.lower_bound, 1.0 / 49.0, 1e-15));
        assert_eq!(r.upper_bound, 1.0);
        assert_eq!(r.classification, Classification::Frame);
    }

    #[test]
    fn not_total_and_bad_tolerance() {
        let sys = VectorSystem::from_real_rows(3, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let r = frame_report(&sys, DEFAULT_TOL).unwrap();
        assert_eq!(r.classification, Classification::NotTotal);
        assert_eq!(r.lower_bound, 0.0);
        assert!(matches!(
            canonical_parseval(&sys, DEFAULT_TOL),
            Err(Error::NotTotal { .. })
        ));
        assert!(frame_report(&sys, 0.0).is_err());
        assert!(frame_report(&sys, f64::NAN).is_err());
    }

    #[test]
    fn canonical_parseval_examples() {
        let onb = VectorSystem::standard_basis(4);
        let out = canonical_parseval(&onb, DEFAULT_TOL).unwrap();
        for (a, b) in out.vectors().iter().zip(onb.vectors()) {
            assert!((a - b).norm() < 1e-15);
        }

        let out = canonical_parseval(&mercedes(), DEFAULT_TOL).unwrap();
        let s = (2.0f64 / 3.0).sqrt();
        for (a, b) in out.vectors().iter().zip(mercedes().vectors()) {
            assert!((a - b.scale(s)).norm() < 1e-14);
        }
        let r = frame_report(&out, DEFAULT_TOL).unwrap();
        assert!(close(r.lower_bound, 1.0, 1e-12) && close(r.upper_bound, 1.0, 1e-12));

        // S = diag(2, 1)
        let sys = VectorSystem::from_real_rows(2, &[vec![1.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let out = canonical_parseval(&sys, DEFAULT_TOL).unwrap();
        let r2 = 1.0 / 2f64.sqrt();
        let expected = [[r2, 0.0], [r2, 0.0], [0.0, 1.0]];
        for (v, e) in out.vectors().iter().zip(expected) {
            assert!(close(v[0].re, e[0], 1e-15) && close(v[1].re, e[1], 1e-15));
            assert!(v[0].im.abs() < 1e-15 && v[1].im.abs() < 1e-15);
        }
        assert_eq!(
            frame_report(&out, DEFAULT_TOL).unwrap().classification,
            Classification::Parseval
        );
    }

    #[test]
    fn spectral_truncation_examples() {
        let slice = spectral_truncation(&VectorSystem::standard_basis(3), 2).unwrap();
        assert!(frobenius_distance(&slice.projection, &CMatrix::identity(3, 3)) < 1e-15);

        // S = diag(1/k²), k = 1..10. The window [1/n, n] keeps 1/k² ≥ 1/n.
        let sys = TruncationFamily::Diagonal { exponent: 1.0 }.truncation(10).unwrap();
        let keeps = |n: u32| -> Vec<usize> {
            let p = spectral_truncation(&sys, n).unwrap().projection;
            (0..10).filter(|&k| p[(k, k)].re > 0.5).map(|k| k + 1).collect()
        };
        assert_eq!(keeps(3), vec![1]);
        assert_eq!(keeps(4), vec![1, 2]);
        assert_eq!(keeps(9), vec![1, 2, 3]);
        assert_eq!(keeps(100), (1..=10).collect::<Vec<_>>());

        // overlap truncation in dimension N: S is tridiagonal with diagonal (1, 2, .., 2)
        let n = 12;
        let sys = VectorSystem::from_real_rows(
            n,
            &(0..n)
                .map(|k| {
                    let mut v = vec![0.0; n];
                    v[k] = 1.0;
                    if k + 1 < n {
                        v[k + 1] = 1.0;
                    }
                    v
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let full = frame_report(&sys, DEFAULT_TOL).unwrap();
        let level = (1.0 / full.lower_bound).floor() as u32 - 1;
        assert!(1.0 / (level as f64) > full.lower_bound, "window must exclude λ_min");
        let slice = spectral_truncation(&sys, level).unwrap();
        assert!(slice.rank() < n);
        let nf = level as f64;
        let p2 = &slice.projection * &slice.projection;
        assert!(frobenius_distance(&p2, &slice.projection) < 1e-10);
        let s = frame_operator(&sys);
        assert!(frobenius_distance(&(&slice.projection * &s), &(&s * &slice.projection)) < 1e-10);
        // energy bounds on the range of E_n, checked on its eigenbasis
        let eig = hermitian_eigen(&slice.projection).unwrap();
        for (j, &l) in eig.values.iter().enumerate() {
            if l > 0.5 {
                let v = eig.vector(j);
                let e = sys.energy(&v);
                assert!(e >= 1.0 / (nf * nf) - 1e-10 && e <= nf * nf + 1e-10);
                assert!(e >= 1.0 / nf - 1e-10 && e <= nf + 1e-10);
            }
        }
    }

    #[test]
    fn spectral_truncation_rejects_zero_level() {
        assert!(spectral_truncation(&VectorSystem::standard_basis(2), 0).is_err());
    }

    #[test]
    fn truncation_profile_examples() {
        let diag = TruncationFamily::Diagonal { exponent: 1.0 };
        let pts = truncation_profile(diag, &[2, 4, 8]).unwrap();
        for (p, expected) in pts.iter().zip([0.25, 1.0 / 16.0, 1.0 / 64.0]) {
            assert!(close(p.lower, expected, 1e-15));
            assert_eq!(p.upper, 1.0);
        }

        // e1+e2, e2+e3 in C^3: Gram [[2,1],[1,2]] has eigenvalues 1 and 3 (S has 0, 1, 3)
        let p = profile_point(TruncationFamily::Overlap, 2).unwrap();
        assert!(close(p.lower, 1.0, 1e-14) && close(p.upper, 3.0, 1e-14));
        assert!(p.lower < p.upper && p.upper <= 4.0);
        assert_eq!(p.ambient_dim, 3);
        assert!(!p.total);

        let pts = truncation_profile(TruncationFamily::Overlap, &[4, 16, 64]).unwrap();
        for w in pts.windows(2) {
            assert!(w[1].lower < w[0].lower);
            assert!(w[1].lower / w[0].lower < 1.0);
        }
        for p in &pts {
            // closed form for the tridiagonal Gram matrix: 2 - 2cos(π/(N+1))
            let expected = 2.0 - 2.0 * (std::f64::consts::PI / (p.n as f64 + 1.0)).cos();
            assert!(close(p.lower, expected, 1e-12), "N={} {} vs {}", p.n, p.lower, expected);
            assert!(p.upper <= 4.0);
        }
    }

    #[test]
    fn truncation_profile_errors() {
        assert!(truncation_profile(TruncationFamily::Overlap, &[]).is_err());
        assert!(truncation_profile(TruncationFamily::Overlap, &[4, 4]).is_err());
        assert!("gabor".parse::<TruncationFamily>().is_err());
        assert_eq!(
            "diag:2".parse::<TruncationFamily>().unwrap(),
            TruncationFamily::Diagonal { exponent: 2.0 }
        );
    }

    fn random_system(seed: u64, d: usize, m: usize) -> VectorSystem {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        VectorSystem::new(d, (0..m).map(|_| random_gaussian_vector(&mut rng, d)).collect()).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn frame_inequality_holds_for_random_probes(seed in any::<u64>(), d in 1usize..7, extra in 0usize..6) {
            let sys = random_system(seed, d, d + extra);
            let r = frame_report(&sys, DEFAULT_TOL).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5);
            for _ in 0..1000 {
                let v = random_unit_vector(&mut rng, d);
                let e = sys.energy(&v);
                let slack = 1e-8 * r.upper_bound.max(1.0);
                prop_assert!(e >= r.lower_bound - slack && e <= r.upper_bound + slack);
            }
        }

        #[test]
        fn frame_operator_is_sum_of_outer_products(seed in any::<u64>(), d in 1usize..6, m in 1usize..9) {
            let sys = random_system(seed, d, m);
            let mut sum = CMatrix::zeros(d, d);
            for f in sys.vectors() {
                sum += f * f.adjoint();
            }
            let s = frame_operator(&sys);
            prop_assert!(frobenius_distance(&s, &sum) <= 1e-12 * sum.norm().max(1.0));
        }

        #[test]
        fn canonical_parseval_is_parseval_and_gram_is_projection(seed in any::<u64>(), d in 1usize..7, extra in 0usize..6) {
            let tol = DEFAULT_TOL;
            let sys = random_system(seed, d, d + extra);
            let p = canonical_parseval(&sys, tol).unwrap();
            let r = frame_report(&p, tol).unwrap();
            prop_assert!((r.lower_bound - 1.0).abs() <= 10.0 * tol);
            prop_assert!((r.upper_bound - 1.0).abs() <= 10.0 * tol);
            let g = gram_matrix(&p);
            prop_assert!(frobenius_distance(&(&g * &g), &g) <= 1e-8);
        }

        #[test]
        fn spectral_truncation_eigenvalues_in_window(seed in any::<u64>(), d in 1usize..6, n in 1u32..5) {
            let sys = random_system(seed, d, d + 2);
            let slice = spectral_truncation(&sys, n).unwrap();
            let tol = 1e-10;
            for &l in &slice.retained {
                prop_assert!(l >= 1.0 / n as f64 - tol && l <= n as f64 + tol);
            }
            let p = &slice.projection;
            prop_assert!(frobenius_distance(&(p * p), p) < 1e-9);
            prop_assert!(frobenius_distance(&p.adjoint(), p) < 1e-12);
        }
    }
}
