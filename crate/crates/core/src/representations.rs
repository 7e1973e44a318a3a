//! Unitary representations of finite groups as matrix families, plus the
//! Fourier apparatus for finite abelian groups.

use std::sync::Arc;

use crate::frames::{analysis_operator, VectorSystem};
use crate::groups::{homomorphism_violation, FiniteGroup};
use crate::linalg::{block_diagonal, frobenius_distance, root_of_unity, CMatrix, CVector, C64};
use crate::{Error, Result};

/// Defect tolerance applied when a representation is constructed.
pub const REPRESENTATION_TOL: f64 = 1e-10;
/// Orders up to this bound get the homomorphism check on all pairs.
pub const EXHAUSTIVE_PAIRS_MAX: usize = 24;

#[derive(Debug, Clone)]
pub struct UnitaryRepresentation {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<CMatrix>,
}

/// Worst-case defects of a candidate representation, in Frobenius norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepresentationDefects {
    /// max ‖π(g)π(h) − π(gh)‖ over the checked pairs
    pub homomorphism: f64,
    /// max ‖π(g)*π(g) − I‖
    pub unitarity: f64,
    /// ‖π(e) − I‖
    pub identity: f64,
    pub pairs_checked: usize,
    /// true when every pair was checked, false when only pairs `(g, s)` with `s` a generator
    pub exhaustive: bool,
}

impl RepresentationDefects {
    pub fn max(&self) -> f64 {
        self.homomorphism.max(self.unitarity).max(self.identity)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

impl UnitaryRepresentation {
    /// Builds and validates a representation; defects above [`REPRESENTATION_TOL`] are rejected.
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<CMatrix>) -> Result<Self> {
        let rep = Self::new_unchecked(group, matrices)?;
        let defects = rep.validate();
        if !defects.passes(REPRESENTATION_TOL) {
            return Err(Error::InvalidArgument(format!(
                "not a unitary representation: homomorphism defect {:e}, unitarity defect {:e}, identity defect {:e}",
                defects.homomorphism, defects.unitarity, defects.identity
            )));
        }
        Ok(rep)
    }

    /// Checks only shapes. Use [`UnitaryRepresentation::validate`] to measure defects.
    pub fn new_unchecked(group: Arc<FiniteGroup>, matrices: Vec<CMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                actual: matrices.len(),
            });
        }
        let dim = matrices[0].nrows();
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "representation dimension must be positive".into(),
            ));
        }
        for m in &matrices {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: if m.nrows() != dim { m.nrows() } else { m.ncols() },
                });
            }
        }
        Ok(Self { group, dim, matrices })
    }

    /// The one-dimensional trivial representation.
    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let matrices = vec![CMatrix::identity(1, 1); group.order()];
        Self {
            group,
            dim: 1,
            matrices,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn apply(&self, g: usize, v: &CVector) -> CVector {
        &self.matrices[g] * v
    }

    /// All pairs for `|G| ≤ 24`. Larger groups check `π(g)π(s) = π(gs)` for every `g` and
    /// every `s` in a generating set, which already forces a homomorphism (induct on word
    /// length), though per-pair defects can then add up along words.
    pub fn validate(&self) -> RepresentationDefects {
        let g = &self.group;
        let n = g.order();
        let id = CMatrix::identity(self.dim, self.dim);
        let unitarity = self
            .matrices
            .iter()
            .map(|m| frobenius_distance(&(m.adjoint() * m), &id))
            .fold(0.0, f64::max);
        let identity = frobenius_distance(&self.matrices[g.identity()], &id);
        let pair = |a: usize, b: usize| {
            frobenius_distance(&(&self.matrices[a] * &self.matrices[b]), &self.matrices[g.mul(a, b)])
        };
        let exhaustive = n <= EXHAUSTIVE_PAIRS_MAX;
        let right: Vec<usize> = if exhaustive {
            g.elements().collect()
        } else {
            g.generating_set()
        };
        let mut homomorphism: f64 = 0.0;
        for a in g.elements() {
            for &b in &right {
                homomorphism = homomorphism.max(pair(a, b));
            }
        }
        let pairs_checked = n * right.len();
        RepresentationDefects {
            homomorphism,
            unitarity,
            identity,
            pairs_checked,
            exhaustive,
        }
    }
}

/// `λ(g)δ_h = δ_{gh}`.
pub fn left_regular(group: Arc<FiniteGroup>) -> UnitaryRepresentation {
    let n = group.order();
    let matrices = (0..n)
        .map(|g| {
            let mut m = CMatrix::zeros(n, n);
            for h in 0..n {
                m[(group.mul(g, h), h)] = C64::new(1.0, 0.0);
            }
            m
        })
        .collect();
    UnitaryRepresentation {
        group,
        dim: n,
        matrices,
    }
}

/// `{π(g)v}` for `g` in `subset`, in subset order.
pub fn orbit_system(rep: &UnitaryRepresentation, v: &CVector, subset: &[usize]) -> Result<VectorSystem> {
    if v.len() != rep.dim() {
        return Err(Error::DimensionMismatch {
            expected: rep.dim(),
            actual: v.len(),
        });
    }
    if let Some(&g) = subset.iter().find(|&&g| g >= rep.group().order()) {
        return Err(Error::InvalidArgument(format!("element {g} is not in the group")));
    }
    VectorSystem::new(rep.dim(), subset.iter().map(|&g| rep.apply(g, v)).collect())
}

/// Orbit over the whole group in element order.
pub fn full_orbit(rep: &UnitaryRepresentation, v: &CVector) -> Result<VectorSystem> {
    let all: Vec<usize> = rep.group().elements().collect();
    orbit_system(rep, v, &all)
}

/// `max_g ‖θπ(g) − λ(g)θ‖_F` where θ is the analysis operator of the full orbit of `v`.
pub fn commutation_defect(rep: &UnitaryRepresentation, v: &CVector) -> Result<f64> {
    let theta = analysis_operator(&full_orbit(rep, v)?);
    let lambda = left_regular(rep.group().clone());
    Ok(rep
        .group()
        .elements()
        .map(|g| frobenius_distance(&(&theta * rep.matrix(g)), &(lambda.matrix(g) * &theta)))
        .fold(0.0, f64::max))
}

/// A group homomorphism with a right inverse on its image.
#[derive(Debug, Clone)]
pub struct GroupMorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
    section: Vec<Option<usize>>,
}

impl GroupMorphism {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::InvalidMorphism(format!(
                "map has {} entries for a source of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&t) = map.iter().find(|&&t| t >= target.order()) {
            return Err(Error::InvalidMorphism(format!("image {t} is outside the target")));
        }
        if let Some((a, b)) = homomorphism_violation(&source, &target, &map) {
            return Err(Error::InvalidMorphism(format!("φ({a}·{b}) ≠ φ({a})·φ({b})")));
        }
        let mut section = vec![None; target.order()];
        for (g, &t) in map.iter().enumerate() {
            section[t].get_or_insert(g);
        }
        Ok(Self {
            source,
            target,
            map,
            section,
        })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = group.elements().collect();
        Self::new(group.clone(), group, map).expect("identity morphism")
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        self.section.iter().all(Option::is_some)
    }

    /// Smallest preimage of `n`, if any.
    pub fn section(&self, n: usize) -> Option<usize> {
        self.section[n]
    }
}

/// `ρ(g) = π(φ(g))`.
pub fn pullback(rep: &UnitaryRepresentation, phi: &GroupMorphism) -> Result<UnitaryRepresentation> {
    if !Arc::ptr_eq(rep.group(), phi.target()) && **rep.group() != **phi.target() {
        return Err(Error::GroupMismatch(
            "morphism target differs from the representation's group".into(),
        ));
    }
    let matrices = phi.map().iter().map(|&n| rep.matrix(n).clone()).collect();
    UnitaryRepresentation::new(phi.source().clone(), matrices)
}

/// `π ⊕ ⋯ ⊕ π` with `copies` summands.
pub fn direct_sum_power(rep: &UnitaryRepresentation, copies: usize) -> Result<UnitaryRepresentation> {
    if copies == 0 {
        return Err(Error::InvalidArgument("direct sum needs at least one copy".into()));
    }
    let matrices = rep
        .matrices()
        .iter()
        .map(|m| block_diagonal(&vec![m; copies]))
        .collect();
    Ok(UnitaryRepresentation {
        group: rep.group().clone(),
        dim: rep.dim() * copies,
        matrices,
    })
}

/// Characters of a finite abelian group, `characters[(ξ, h)] = ξ(h)`.
///
/// The group is written as a product of cyclic factors `⟨g_1⟩ × ⋯ × ⟨g_r⟩`; the character
/// with exponents `k` sends `Π g_j^{a_j}` to `Π exp(2πi k_j a_j / n_j)`. Characters are listed
/// lexicographically in `k`.
#[derive(Debug, Clone)]
pub struct DualCharacterTable {
    group: Arc<FiniteGroup>,
    factors: Vec<(usize, usize)>,
    coordinates: Vec<Vec<usize>>,
    exponents: Vec<Vec<usize>>,
    characters: CMatrix,
}

impl DualCharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Cyclic factors as (generator, order).
    pub fn factors(&self) -> &[(usize, usize)] {
        &self.factors
    }

    /// Exponents `a` with `h = Π g_j^{a_j}`.
    pub fn coordinates(&self, h: usize) -> &[usize] {
        &self.coordinates[h]
    }

    pub fn exponents(&self, xi: usize) -> &[usize] {
        &self.exponents[xi]
    }

    pub fn characters(&self) -> &CMatrix {
        &self.characters
    }

    pub fn value(&self, xi: usize, h: usize) -> C64 {
        self.characters[(xi, h)]
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Index of the pointwise product `ξ·ξ′`.
    pub fn product(&self, xi: usize, other: usize) -> usize {
        let k: Vec<usize> = self.exponents[xi]
            .iter()
            .zip(&self.exponents[other])
            .zip(&self.factors)
            .map(|((a, b), &(_, n))| (a + b) % n)
            .collect();
        mixed_radix_index(&k, &self.factors)
    }
}

fn mixed_radix_index(digits: &[usize], factors: &[(usize, usize)]) -> usize {
    digits.iter().zip(factors).fold(0, |acc, (&d, &(_, n))| acc * n + d)
}

fn mixed_radix_digits(mut index: usize, factors: &[(usize, usize)]) -> Vec<usize> {
    let mut digits = vec![0; factors.len()];
    for (d, &(_, n)) in digits.iter_mut().zip(factors).rev() {
        *d = index % n;
        index /= n;
    }
    digits
}

/// Splits an abelian group into cyclic factors by repeatedly taking an element of maximal
/// order modulo the factors found so far, among those meeting them trivially.
pub fn cyclic_decomposition(group: &FiniteGroup) -> Result<Vec<(usize, usize)>> {
    if !group.is_abelian() {
        return Err(Error::Domain("group is not abelian".into()));
    }
    let n = group.order();
    let mut factors = Vec::new();
    let mut span = vec![group.identity()];
    let mut in_span = vec![false; n];
    in_span[group.identity()] = true;
    while span.len() < n {
        let mut best: Option<(usize, usize)> = None;
        for x in group.elements().filter(|&x| !in_span[x]) {
            let order = group.element_order(x);
            // order of x modulo the span
            let mut y = x;
            let mut q = 1;
            while !in_span[y] {
                y = group.mul(y, x);
                q += 1;
            }
            if q == order && best.is_none_or(|(_, o)| order > o) {
                best = Some((x, order));
            }
        }
        let (x, order) = best.ok_or_else(|| Error::Internal("no complement element found".into()))?;
        factors.push((x, order));
        let gens: Vec<usize> = factors.iter().map(|&(g, _)| g).collect();
        span = group.closure(&gens);
        in_span.fill(false);
        for &s in &span {
            in_span[s] = true;
        }
    }
    Ok(factors)
}

pub fn abelian_dual(group: Arc<FiniteGroup>) -> Result<DualCharacterTable> {
    let factors = cyclic_decomposition(&group)?;
    let n = group.order();
    let mut coordinates = vec![Vec::new(); n];
    for idx in 0..n {
        let digits = mixed_radix_digits(idx, &factors);
        let h = digits
            .iter()
            .zip(&factors)
            .fold(group.identity(), |acc, (&a, &(g, _))| group.mul(acc, group.power(g, a)));
        if !coordinates[h].is_empty() {
            return Err(Error::Internal("cyclic factors do not form a direct product".into()));
        }
        coordinates[h] = digits;
    }
    let exponents: Vec<Vec<usize>> = (0..n).map(|i| mixed_radix_digits(i, &factors)).collect();
    let lcm = factors
        .iter()
        .fold(1u64, |acc, &(_, o)| num_integer::lcm(acc, o as u64));
    let mut characters = CMatrix::zeros(n, n);
    for (xi, k) in exponents.iter().enumerate() {
        for h in 0..n {
            let num: u64 = k
                .iter()
                .zip(&coordinates[h])
                .zip(&factors)
                .map(|((&kj, &aj), &(_, nj))| (kj * aj) as u64 * (lcm / nj as u64))
                .sum();
            characters[(xi, h)] = root_of_unity((num % lcm) as i64, lcm);
        }
    }
    Ok(DualCharacterTable {
        group,
        factors,
        coordinates,
        exponents,
        characters,
    })
}

/// The normalized Fourier transform `F[ξ][h] = conj(ξ(h))/√n` and the multiplication
/// representation `mult(g) = diag(conj ξ(g))`, so that `F·λ(g) = mult(g)·F` and `F*F = I`.
#[derive(Debug, Clone)]
pub struct FourierPair {
    pub dual: DualCharacterTable,
    pub transform: CMatrix,
    pub mult: UnitaryRepresentation,
}

pub fn fourier_unitary(group: Arc<FiniteGroup>) -> Result<FourierPair> {
    let dual = abelian_dual(group.clone())?;
    let n = group.order();
    let scale = 1.0 / (n as f64).sqrt();
    let transform = dual.characters().map(|z| z.conj() * scale);
    let matrices = (0..n)
        .map(|g| CMatrix::from_diagonal(&CVector::from_iterator(n, (0..n).map(|xi| dual.value(xi, g).conj()))))
        .collect();
    let mult = UnitaryRepresentation::new(group, matrices)?;
    Ok(FourierPair { dual, transform, mult })
}

/// The family `{π(g)}` for the given generators, as used by the almost-invariance tools.
pub fn generator_matrices(rep: &UnitaryRepresentation, gens: &[usize]) -> Vec<CMatrix> {
    gens.iter().map(|&g| rep.matrix(g).clone()).collect()
}
