//! Induced representations `Ind_N^G π` on `ℓ²(G/N, ℂ^d)` and frame-vector dilation.
//!
//! Coordinates are laid out by coset: coset `x` occupies `[x·d, (x+1)·d)`. Row block `x` of
//! `ρ(γ)` reads the column block of the coset `x·γ` through `π[α(x, γ)]`, i.e.
//! `(ρ_γ φ)(x) = π[α(x, γ)] φ(x·γ)`.

use crate::frames::{frame_report, FrameReport};
use crate::groups::Cocycle;
use crate::linalg::{inner, CMatrix, CVector};
use crate::representations::{orbit_system, UnitaryRepresentation};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct InducedRep {
    base: UnitaryRepresentation,
    cocycle: Cocycle,
    result: UnitaryRepresentation,
}

impl InducedRep {
    pub fn base(&self) -> &UnitaryRepresentation {
        &self.base
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn result(&self) -> &UnitaryRepresentation {
        &self.result
    }

    pub fn index(&self) -> usize {
        self.cocycle.structure().index()
    }

    pub fn block_dim(&self) -> usize {
        self.base.dim()
    }

    /// Coordinate range of coset `x`.
    pub fn block(&self, x: usize) -> std::ops::Range<usize> {
        let d = self.block_dim();
        x * d..(x + 1) * d
    }
}

pub fn induce(base: &UnitaryRepresentation, cocycle: &Cocycle) -> Result<InducedRep> {
    if **base.group() != **cocycle.subgroup() {
        return Err(Error::GroupMismatch(
            "base representation is not a representation of the cocycle's subgroup".into(),
        ));
    }
    let structure = cocycle.structure();
    let k = structure.index();
    let d = base.dim();
    let g = cocycle.parent();
    let matrices = g
        .elements()
        .map(|gamma| {
            let mut m = CMatrix::zeros(k * d, k * d);
            for x in 0..k {
                let y = structure.act(x, gamma);
                m.view_mut((x * d, y * d), (d, d))
                    .copy_from(base.matrix(cocycle.alpha(x, gamma)));
            }
            m
        })
        .collect();
    let result = UnitaryRepresentation::new(g.clone(), matrices).map_err(|e| match e {
        Error::InvalidArgument(msg) => Error::InvalidCocycle(format!("induced family is not a representation: {msg}")),
        other => other,
    })?;
    Ok(InducedRep {
        base: base.clone(),
        cocycle: cocycle.clone(),
        result,
    })
}

/// Places `w` in the identity-coset block and zeros elsewhere.
pub fn dilate_frame_vector(ind: &InducedRep, w: &CVector) -> Result<CVector> {
    if w.len() != ind.block_dim() {
        return Err(Error::DimensionMismatch {
            expected: ind.block_dim(),
            actual: w.len(),
        });
    }
    if w.iter().all(|z| *z == num_complex::Complex64::new(0.0, 0.0)) {
        return Err(Error::InvalidArgument("frame vector must be nonzero".into()));
    }
    let mut phi = CVector::zeros(ind.index() * ind.block_dim());
    phi.rows_mut(0, ind.block_dim()).copy_from(w);
    Ok(phi)
}

/// Evaluation subset for the induced orbit: `P^{-1}` with `P = ⊔_i S^{-1}·D[i]`, listed as
/// `D[i]^{-1}·s` with `i` outer and `s` inner. `subset` holds subgroup indices.
pub fn subset_lift(cocycle: &Cocycle, subset: &[usize]) -> Result<Vec<usize>> {
    if subset.is_empty() {
        return Err(Error::InvalidArgument("subset must be nonempty".into()));
    }
    let emb = cocycle.structure().embedding();
    if let Some(&s) = subset.iter().find(|&&s| s >= emb.order()) {
        return Err(Error::InvalidArgument(format!("{s} is not a subgroup element")));
    }
    let g = cocycle.parent();
    let mut seen = vec![false; g.order()];
    let mut lifted = Vec::with_capacity(subset.len() * cocycle.structure().index());
    for &rep in cocycle.structure().representatives() {
        for &s in subset {
            let p = g.mul(g.inv(emb.to_parent(s)), rep);
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::Internal(format!("pieces S⁻¹·g_i overlap at element {p}")));
            }
            lifted.push(g.inv(p));
        }
    }
    Ok(lifted)
}

/// Frame bounds of `{π_n w}_{n∈S}` against those of the dilated orbit over the lifted subset.
#[derive(Debug, Clone)]
pub struct FramextReport {
    pub base: FrameReport,
    pub induced: FrameReport,
    pub preserved: bool,
    pub index: usize,
    pub subset_size: usize,
    pub lifted_subset: Vec<usize>,
}

impl FramextReport {
    pub fn base_bounds(&self) -> (f64, f64) {
        self.base.bounds()
    }

    pub fn induced_bounds(&self) -> (f64, f64) {
        self.induced.bounds()
    }
}

/// `preserved` compares both bounds within `tol·max(1, B)`.
pub fn verify_framext(
    base: &UnitaryRepresentation,
    cocycle: &Cocycle,
    w: &CVector,
    subset: &[usize],
    tol: f64,
) -> Result<FramextReport> {
    let ind = induce(base, cocycle)?;
    verify_induced(&ind, w, subset, tol)
}

pub fn verify_induced(ind: &InducedRep, w: &CVector, subset: &[usize], tol: f64) -> Result<FramextReport> {
    let base_report = frame_report(&orbit_system(ind.base(), w, subset)?, tol)?;
    let phi = dilate_frame_vector(ind, w)?;
    let lifted = subset_lift(ind.cocycle(), subset)?;
    let induced_report = frame_report(&orbit_system(ind.result(), &phi, &lifted)?, tol)?;
    let (a, b) = base_report.bounds();
    let (a2, b2) = induced_report.bounds();
    let slack = tol * b.max(1.0);
    Ok(FramextReport {
        preserved: (a - a2).abs() <= slack && (b - b2).abs() <= slack,
        index: ind.index(),
        subset_size: subset.len(),
        lifted_subset: lifted,
        base: base_report,
        induced: induced_report,
    })
}

/// Both sides of the coset decomposition of the induced orbit energy at `v`:
/// `Σ_{g∈lift(S)} |⟨ρ_g φ, v⟩|²` and `Σ_i Σ_{s∈S} |⟨π[α(N,s)] w, v_i⟩|²` where
/// `v_i = π[α(N, g_i)]·v(i)`.
pub fn coset_decomposition_sums(ind: &InducedRep, w: &CVector, subset: &[usize], v: &CVector) -> Result<(f64, f64)> {
    if v.len() != ind.result().dim() {
        return Err(Error::DimensionMismatch {
            expected: ind.result().dim(),
            actual: v.len(),
        });
    }
    let phi = dilate_frame_vector(ind, w)?;
    let lifted = subset_lift(ind.cocycle(), subset)?;
    let lhs = lifted
        .iter()
        .map(|&g| inner(&ind.result().apply(g, &phi), v).norm_sqr())
        .sum();
    let coc = ind.cocycle();
    let emb = coc.structure().embedding();
    let d = ind.block_dim();
    let mut rhs = 0.0;
    for (i, &gi) in coc.structure().representatives().iter().enumerate() {
        let block: CVector = v.rows(i * d, d).into_owned();
        let vi = ind.base().apply(coc.alpha(0, gi), &block);
        for &s in subset {
            let moved = ind.base().apply(coc.alpha(0, emb.to_parent(s)), w);
            rhs += inner(&moved, &vi).norm_sqr();
        }
    }
    Ok((lhs, rhs))
}
