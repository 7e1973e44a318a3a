//! Invariance defects, the generator Laplacian `Δ = Σ_g (I − π(g))*(I − π(g))`, and diagonal
//! representations of `ℤ^r` attached to finitely supported measures on the torus.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;

use crate::frames::rank_tolerance;
use crate::linalg::{frobenius_distance, hermitian_eigen, CMatrix, CVector, C64};
use crate::representations::UnitaryRepresentation;
use crate::{Error, Result};

/// Unitarity tolerance for generator matrices.
pub const UNITARY_TOL: f64 = 1e-10;

/// A finite list of unitary matrices acting on `ℂ^d`, usually `π(g)` for generators `g`.
#[derive(Debug, Clone)]
pub struct GeneratorFamily {
    dim: usize,
    matrices: Vec<CMatrix>,
    labels: Vec<String>,
}

impl GeneratorFamily {
    pub fn new(matrices: Vec<CMatrix>, labels: Vec<String>) -> Result<Self> {
        let first = matrices
            .first()
            .ok_or_else(|| Error::InvalidArgument("generator list is empty".into()))?;
        if labels.len() != matrices.len() {
            return Err(Error::DimensionMismatch {
                expected: matrices.len(),
                actual: labels.len(),
            });
        }
        let dim = first.nrows();
        for m in &matrices {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: m.ncols(),
                });
            }
            if frobenius_distance(&(m.adjoint() * m), &CMatrix::identity(dim, dim)) > UNITARY_TOL {
                return Err(Error::InvalidArgument("generator matrix is not unitary".into()));
            }
        }
        Ok(Self { dim, matrices, labels })
    }

    pub fn from_representation(rep: &UnitaryRepresentation, gens: &[usize]) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g >= rep.group().order()) {
            return Err(Error::InvalidArgument(format!("generator {g} is not a group element")));
        }
        let matrices = gens.iter().map(|&g| rep.matrix(g).clone()).collect();
        let labels = gens.iter().map(|&g| rep.group().label(g).to_string()).collect();
        Self::new(matrices, labels)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn laplacian(&self) -> CMatrix {
        let id = CMatrix::identity(self.dim, self.dim);
        self.matrices.iter().fold(CMatrix::zeros(self.dim, self.dim), |acc, u| {
            let d = &id - u;
            acc + d.adjoint() * d
        })
    }

    /// The family `W·U·W*`.
    pub fn conjugated(&self, w: &CMatrix) -> Self {
        Self {
            dim: self.dim,
            matrices: self.matrices.iter().map(|u| w * u * w.adjoint()).collect(),
            labels: self.labels.clone(),
        }
    }
}

/// `‖U v − v‖/‖v‖` for each generator.
pub fn invariance_defect(family: &GeneratorFamily, v: &CVector) -> Result<Vec<f64>> {
    if v.len() != family.dim() {
        return Err(Error::DimensionMismatch {
            expected: family.dim(),
            actual: v.len(),
        });
    }
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::InvalidArgument("vector must be nonzero".into()));
    }
    let unit = v / C64::new(norm, 0.0);
    Ok(family.matrices().iter().map(|u| (u * &unit - &unit).norm()).collect())
}

#[derive(Debug, Clone)]
pub struct GapReport {
    /// (generator label, defect of the minimizer)
    pub defect_per_generator: Vec<(String, f64)>,
    /// `√(Σ_g ‖π(g)v − v‖²)`
    pub combined: f64,
    pub minimizer: CVector,
    pub laplacian_min_eig: f64,
    /// Dimension of the numerically fixed space that was skipped.
    pub excluded_dim: usize,
    pub threshold: f64,
}

/// Bottom eigenpair of the generator Laplacian, optionally skipping eigenvalues below
/// `1e-10·max(1, λ_max(Δ))` (the fixed space).
pub fn best_almost_invariant(family: &GeneratorFamily, exclude_invariants: bool) -> Result<GapReport> {
    let eig = hermitian_eigen(&family.laplacian())?;
    let threshold = rank_tolerance(eig.max());
    let start = if exclude_invariants {
        eig.values.iter().position(|&l| l > threshold).ok_or_else(|| {
            Error::Domain("every vector is invariant: the complement of the fixed space is empty".into())
        })?
    } else {
        0
    };
    let minimizer = eig.vector(start);
    let defects = invariance_defect(family, &minimizer)?;
    let combined = defects.iter().map(|d| d * d).sum::<f64>().sqrt();
    Ok(GapReport {
        defect_per_generator: family.labels().iter().cloned().zip(defects).collect(),
        combined,
        minimizer,
        laplacian_min_eig: eig.values[start].max(0.0),
        excluded_dim: start,
        threshold,
    })
}

/// A point mass on the torus `𝕋^r`, the dual of `ℤ^r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub angle: Vec<BigRational>,
    pub weight: f64,
}

/// A finitely supported measure on `𝕋^r` together with the generators of `ℤ^r` to test.
#[derive(Debug, Clone, PartialEq)]
pub struct DualMeasure {
    rank: usize,
    atoms: Vec<Atom>,
    generators: Vec<Vec<i64>>,
}

/// Angle coordinates in JSON: one string for rank 1, or a list of strings.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum AngleSpec {
    Scalar(String),
    Vector(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub angle: AngleSpec,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    pub rank: usize,
    pub atoms: Vec<AtomSpec>,
    pub generators: Vec<Vec<i64>>,
}

/// Parses `"p/q"` or `"p"` as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidExact(format!("bad numerator in {s:?}")))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|_| Error::InvalidExact(format!("bad denominator in {s:?}")))?;
            if q.is_zero() {
                return Err(Error::InvalidExact(format!("zero denominator in {s:?}")));
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(
            t.parse()
                .map_err(|_| Error::InvalidExact(format!("not a rational: {s:?}")))?,
        ),
    };
    Ok(parsed)
}

/// `x mod 1` in `[0, 1)`.
pub fn fractional_part(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// `exp(2πi·x)` evaluated from the reduced fraction of `x mod 1`.
pub fn unit_phase(x: &BigRational) -> C64 {
    let f = fractional_part(x);
    match (f.numer().to_i64(), f.denom().to_u64()) {
        (Some(p), Some(q)) => crate::linalg::root_of_unity(p, q),
        _ => C64::from_polar(1.0, std::f64::consts::TAU * f.to_f64().unwrap_or(0.0)),
    }
}

impl DualMeasure {
    pub fn new(rank: usize, atoms: Vec<Atom>, generators: Vec<Vec<i64>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidMeasure("rank must be positive".into()));
        }
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("measure has no atoms".into()));
        }
        for (j, atom) in atoms.iter().enumerate() {
            if atom.angle.len() != rank {
                return Err(Error::InvalidMeasure(format!(
                    "atom {j} has {} angle coordinates, expected {rank}",
                    atom.angle.len()
                )));
            }
            if atom.angle.iter().any(|a| a.is_negative() || *a >= BigRational::one()) {
                return Err(Error::InvalidMeasure(format!("atom {j} has an angle outside [0, 1)")));
            }
            if !(atom.weight.is_finite() && atom.weight > 0.0) {
                return Err(Error::InvalidMeasure(format!(
                    "atom {j} has non-positive weight {}",
                    atom.weight
                )));
            }
            if atoms[..j].iter().any(|b| b.angle == atom.angle) {
                return Err(Error::InvalidMeasure(format!("atom {j} repeats an earlier angle")));
            }
        }
        if generators.is_empty() {
            return Err(Error::InvalidMeasure("generator list is empty".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != rank) {
            return Err(Error::InvalidMeasure(format!(
                "generator {g:?} does not have rank {rank}"
            )));
        }
        Ok(Self {
            rank,
            atoms,
            generators,
        })
    }

    pub fn from_spec(spec: &MeasureSpec) -> Result<Self> {
        let atoms = spec
            .atoms
            .iter()
            .map(|a| {
                let angle = match &a.angle {
                    AngleSpec::Scalar(s) => vec![parse_rational(s)?],
                    AngleSpec::Vector(v) => v.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
                };
                Ok(Atom {
                    angle,
                    weight: a.weight,
                })
            })
            .collect::<Result<_>>()?;
        Self::new(spec.rank, atoms, spec.generators.clone())
    }

    /// Equal-weight atoms at the given rank-1 angles, generator `1`.
    pub fn uniform(angles: &[BigRational]) -> Result<Self> {
        let w = 1.0 / angles.len().max(1) as f64;
        let atoms = angles
            .iter()
            .map(|a| Atom {
                angle: vec![a.clone()],
                weight: w,
            })
            .collect();
        Self::new(1, atoms, vec![vec![1]])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// `⟨g, angle_j⟩ mod 1`, exactly.
    pub fn pairing(&self, atom: usize, generator: &[i64]) -> BigRational {
        let s = generator
            .iter()
            .zip(&self.atoms[atom].angle)
            .fold(BigRational::zero(), |acc, (&g, a)| {
                acc + a * BigRational::from_integer(g.into())
            });
        fractional_part(&s)
    }

    /// `ξ_j(g) = exp(2πi⟨g, angle_j⟩)`.
    pub fn character(&self, atom: usize, generator: &[i64]) -> C64 {
        unit_phase(&self.pairing(atom, generator))
    }

    /// Index of an atom at the identity angle, if present.
    pub fn identity_atom(&self) -> Option<usize> {
        self.atoms.iter().position(|a| a.angle.iter().all(Zero::is_zero))
    }

    /// Largest torus distance to 0 over the coordinates of atom `j`.
    pub fn distance_to_identity(&self, atom: usize) -> f64 {
        self.atoms[atom]
            .angle
            .iter()
            .map(|a| {
                let x = a.to_f64().unwrap_or(0.0);
                x.min(1.0 - x)
            })
            .fold(0.0, f64::max)
    }

    pub fn generator_label(g: &[i64]) -> String {
        format!("[{}]", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// The representation `(π(g)f)(ξ) = conj(ξ(g)) f(ξ)` on `L²(ν)`, in coordinates `c_j = √w_j f(ξ_j)`
/// (an isometry onto `ℂ^m`), restricted to the measure's generators.
pub fn dual_measure_rep(measure: &DualMeasure) -> Result<GeneratorFamily> {
    let m = measure.atoms().len();
    let matrices = measure
        .generators()
        .iter()
        .map(|g| {
            CMatrix::from_diagonal(&CVector::from_iterator(
                m,
                (0..m).map(|j| measure.character(j, g).conj()),
            ))
        })
        .collect();
    let labels = measure
        .generators()
        .iter()
        .map(|g| DualMeasure::generator_label(g))
        .collect();
    GeneratorFamily::new(matrices, labels)
}

/// `χ_V/√ν(V)` in the coordinates of [`dual_measure_rep`].
pub fn normalized_indicator(measure: &DualMeasure, set: &[usize]) -> Result<CVector> {
    if set.is_empty() {
        return Err(Error::InvalidArgument("witness set is empty".into()));
    }
    let m = measure.atoms().len();
    if let Some(&j) = set.iter().find(|&&j| j >= m) {
        return Err(Error::InvalidArgument(format!("atom index {j} out of range")));
    }
    let mass: f64 = set.iter().map(|&j| measure.atoms()[j].weight).sum();
    let mut v = CVector::zeros(m);
    for &j in set {
        v[j] = C64::new((measure.atoms()[j].weight / mass).sqrt(), 0.0);
    }
    Ok(v)
}

#[derive(Debug, Clone)]
pub struct WitnessRow {
    /// 1-based position in the input list.
    pub n: usize,
    pub atoms: Vec<usize>,
    pub mass: f64,
    pub defects: Vec<f64>,
    pub combined: f64,
    pub max_distance: f64,
    pub coordinates: CVector,
}

#[derive(Debug, Clone)]
pub struct Thai1Witnesses {
    pub rows: Vec<WitnessRow>,
    /// Whether the sets were given in decreasing (nested) order.
    pub nested: bool,
    pub non_increasing: bool,
}

/// Defects of `v_n = χ_{V_n}/√ν(V_n)` over the measure's generators, for each set `V_n`.
pub fn thai1_witnesses(measure: &DualMeasure, sets: &[Vec<usize>]) -> Result<Thai1Witnesses> {
    let family = dual_measure_rep(measure)?;
    let mut rows = Vec::with_capacity(sets.len());
    for (i, set) in sets.iter().enumerate() {
        let coordinates = normalized_indicator(measure, set)?;
        let defects = invariance_defect(&family, &coordinates)?;
        rows.push(WitnessRow {
            n: i + 1,
            atoms: set.clone(),
            mass: set.iter().map(|&j| measure.atoms()[j].weight).sum(),
            combined: defects.iter().map(|d| d * d).sum::<f64>().sqrt(),
            max_distance: set.iter().map(|&j| measure.distance_to_identity(j)).fold(0.0, f64::max),
            defects,
            coordinates,
        });
    }
    let nested = sets.windows(2).all(|w| w[1].iter().all(|j| w[0].contains(j)));
    let non_increasing = rows.windows(2).all(|w| w[1].combined <= w[0].combined);
    Ok(Thai1Witnesses {
        rows,
        nested,
        non_increasing,
    })
}

#[derive(Debug, Clone)]
pub struct Obstruction {
    /// `min_j Σ_g |ξ_j(g) − 1|²`
    pub c: f64,
    pub argmin: usize,
    pub per_atom: Vec<f64>,
}

/// The diagonal entries of `Δ` for the atomic representation and their minimum.
pub fn thai1_obstruction(measure: &DualMeasure) -> Obstruction {
    let per_atom: Vec<f64> = (0..measure.atoms().len())
        .map(|j| {
            measure
                .generators()
                .iter()
                .map(|g| (measure.character(j, g) - C64::new(1.0, 0.0)).norm_sqr())
                .sum()
        })
        .collect();
    let (argmin, c) =
        per_atom.iter().copied().enumerate().fold(
            (0, f64::INFINITY),
            |best, (j, x)| if x < best.1 { (j, x) } else { best },
        );
    Obstruction { c, argmin, per_atom }
}
