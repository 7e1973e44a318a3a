use std::path::Path;
use std::sync::Arc;

use framecraft::almostinv::{
    best_almost_invariant, dual_measure_rep, thai1_obstruction, thai1_witnesses, DualMeasure, GapReport,
    GeneratorFamily,
};
use framecraft::dyadic::{
    bessel_divergence, conjugation_identity, defining_relation, haar_gram, is_identity, DyadicStep, HaarNormalization,
};
use framecraft::frames::{canonical_parseval, frame_report, profile_point, FrameReport, TruncationFamily};
use framecraft::groups::{
    cocycle_table, coset_structure, Cocycle, FiniteGroup, SubgroupEmbedding, EXHAUSTIVE_ASSOCIATIVITY_MAX,
};
use framecraft::induction::{dilate_frame_vector, induce, subset_lift, verify_induced};
use framecraft::linalg::{basis_vector, inner, random_unit_vector, CVector};
use framecraft::representations::{fourier_unitary, left_regular, UnitaryRepresentation};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input::{self, CocycleSpec, Input, SubgroupSpec};
use crate::output::{format_float, Table};
use crate::{BaseRep, Failure, SetRule};

pub struct Ctx {
    pub tol: f64,
    pub seed: u64,
}

/// Command output before it is wrapped in a report.
pub struct Outcome {
    pub results: Value,
    pub table: Option<Table>,
    pub inputs: Vec<Input>,
    pub params: Vec<String>,
}

impl Outcome {
    fn json(results: Value, inputs: Vec<Input>, params: Vec<String>) -> Self {
        Self {
            results,
            table: None,
            inputs,
            params,
        }
    }
}

fn vector_json(v: &CVector) -> Value {
    Value::Array(v.iter().map(|z| json!([z.re, z.im])).collect())
}

fn report_json(r: &FrameReport) -> Value {
    json!({
        "A": r.lower_bound,
        "B": r.upper_bound,
        "classification": r.classification.to_string(),
        "tol": r.tol,
        "rank_tol": r.rank_tol,
        "dim": r.dim,
        "num_vectors": r.num_vectors,
    })
}

pub fn frame_report_cmd(ctx: &Ctx, path: &Path) -> Result<Outcome, Failure> {
    let inp = input::read(path)?;
    let sys = input::system(&inp)?;
    let report = frame_report(&sys, ctx.tol)?;
    Ok(Outcome::json(report_json(&report), vec![inp], vec![]))
}

pub fn canonical_cmd(ctx: &Ctx, path: &Path) -> Result<Outcome, Failure> {
    let inp = input::read(path)?;
    let sys = input::system(&inp)?;
    let before = frame_report(&sys, ctx.tol)?;
    let parseval = canonical_parseval(&sys, ctx.tol)?;
    let after = frame_report(&parseval, ctx.tol)?;
    let results = json!({
        "input": report_json(&before),
        "output": report_json(&after),
        "system": {
            "dim": parseval.dim(),
            "vectors": parseval.vectors().iter().map(vector_json).collect::<Vec<_>>(),
        },
    });
    Ok(Outcome::json(results, vec![inp], vec![]))
}

pub fn truncation_profile_cmd(family: &str, sizes: &str) -> Result<Outcome, Failure> {
    let fam: TruncationFamily = family.parse()?;
    let sizes = input::index_list(sizes)?;
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Failure::Validation(
            "sizes must be nonempty and strictly increasing".into(),
        ));
    }
    let points = sizes
        .par_iter()
        .map(|&n| profile_point(fam, n))
        .collect::<framecraft::Result<Vec<_>>>()?;
    let rows: Vec<Value> = points
        .iter()
        .map(|p| json!({"n": p.n, "A": p.lower, "B": p.upper, "ambient_dim": p.ambient_dim, "total": p.total}))
        .collect();
    let table = Table {
        header: vec!["n", "A", "B", "ambient_dim", "total"],
        rows: points
            .iter()
            .map(|p| {
                vec![
                    p.n.to_string(),
                    format_float(p.lower),
                    format_float(p.upper),
                    p.ambient_dim.to_string(),
                    p.total.to_string(),
                ]
            })
            .collect(),
    };
    Ok(Outcome {
        results: json!({"family": family, "points": rows}),
        table: Some(table),
        inputs: vec![],
        params: vec![format!("family={family}"), format!("sizes={sizes:?}")],
    })
}

pub fn group_validate_cmd(ctx: &Ctx, path: &Path) -> Result<Outcome, Failure> {
    let inp = input::read(path)?;
    let g = input::group(&inp, ctx.seed)?;
    let results = json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "identity": g.label(g.identity()),
        "labels": g.labels(),
        "element_orders": g.elements().map(|x| g.element_order(x)).collect::<Vec<_>>(),
        "generators": g.generating_set(),
        "associativity": if g.order() <= EXHAUSTIVE_ASSOCIATIVITY_MAX { "exhaustive" } else { "sampled" },
    });
    Ok(Outcome::json(results, vec![inp], vec![]))
}

struct Setup {
    group: Arc<FiniteGroup>,
    cocycle: Cocycle,
    inputs: Vec<Input>,
}

fn setup(ctx: &Ctx, group: &Path, subgroup: &Path, cocycle: Option<&Path>) -> Result<Setup, Failure> {
    let g_in = input::read(group)?;
    let g = Arc::new(input::group(&g_in, ctx.seed)?);
    let s_in = input::read(subgroup)?;
    let spec: SubgroupSpec = input::parse(&s_in)?;
    let emb = SubgroupEmbedding::generated(g.clone(), &spec.generators)?;
    let structure = coset_structure(&emb)?;
    let mut inputs = vec![g_in, s_in];
    let cocycle = match cocycle {
        None => cocycle_table(&structure)?,
        Some(path) => {
            let c_in = input::read(path)?;
            let spec: CocycleSpec = input::parse(&c_in)?;
            inputs.push(c_in);
            Cocycle::from_table(&structure, spec.table)?
        }
    };
    Ok(Setup {
        group: g,
        cocycle,
        inputs,
    })
}

pub fn cocycle_check_cmd(ctx: &Ctx, group: &Path, subgroup: &Path, cocycle: Option<&Path>) -> Result<Outcome, Failure> {
    let s = setup(ctx, group, subgroup, cocycle)?;
    let coc = &s.cocycle;
    let laws = coc.check_laws(ctx.seed);
    let st = coc.structure();
    let table: Vec<Vec<usize>> = (0..st.index())
        .map(|x| s.group.elements().map(|g| coc.alpha_parent(x, g)).collect())
        .collect();
    let results = json!({
        "group_order": s.group.order(),
        "subgroup": st.embedding().members(),
        "index": st.index(),
        "representatives": st.representatives(),
        "cosets": st.cosets(),
        "canonical": coc.is_canonical(),
        "restriction_bijective": coc.restriction_is_bijective(),
        "cocycle": table,
        "laws": {
            "restriction_identity": laws.restriction_identity,
            "cocycle_identity": laws.cocycle_identity,
            "left_equivariance": laws.left_equivariance,
            "checks": laws.checks,
            "exhaustive": laws.exhaustive,
            "violations": laws.violations(),
            "first_violation": laws.first_violation,
        },
    });
    Ok(Outcome::json(results, s.inputs, vec![]))
}

fn base_rep(kind: BaseRep, n: &Arc<FiniteGroup>) -> Result<UnitaryRepresentation, Failure> {
    Ok(match kind {
        BaseRep::Regular => left_regular(n.clone()),
        BaseRep::Trivial => UnitaryRepresentation::trivial(n.clone()),
        BaseRep::Fourier => fourier_unitary(n.clone())?.mult,
    })
}

pub fn induce_cmd(
    ctx: &Ctx,
    group: &Path,
    subgroup: &Path,
    cocycle: Option<&Path>,
    base: BaseRep,
) -> Result<Outcome, Failure> {
    let s = setup(ctx, group, subgroup, cocycle)?;
    let pi = base_rep(base, s.cocycle.subgroup())?;
    let ind = induce(&pi, &s.cocycle)?;
    let st = s.cocycle.structure();
    let defects = ind.result().validate();
    let layout: Vec<Value> = s
        .group
        .elements()
        .map(|gamma| {
            let blocks: Vec<Value> = (0..st.index())
                .map(|x| json!([x, st.act(x, gamma), s.cocycle.alpha_parent(x, gamma)]))
                .collect();
            json!({"element": gamma, "label": s.group.label(gamma), "blocks": blocks})
        })
        .collect();
    let results = json!({
        "index": ind.index(),
        "block_dim": ind.block_dim(),
        "dim": ind.result().dim(),
        "base": base.name(),
        "defects": {
            "homomorphism": defects.homomorphism,
            "unitarity": defects.unitarity,
            "identity": defects.identity,
            "pairs_checked": defects.pairs_checked,
        },
        "layout": layout,
    });
    Ok(Outcome::json(results, s.inputs, vec![format!("base={}", base.name())]))
}

pub struct FramextArgs<'a> {
    pub group: &'a Path,
    pub subgroup: &'a Path,
    pub cocycle: Option<&'a Path>,
    pub base: BaseRep,
    pub w: Option<&'a str>,
    pub subset: Option<&'a str>,
    pub probes: usize,
}

pub fn framext_cmd(ctx: &Ctx, args: FramextArgs<'_>) -> Result<Outcome, Failure> {
    let s = setup(ctx, args.group, args.subgroup, args.cocycle)?;
    let n_group = s.cocycle.subgroup().clone();
    let pi = base_rep(args.base, &n_group)?;
    let w = match args.w {
        Some(text) => input::vector_arg(text)?,
        None if pi.dim() == n_group.order() => basis_vector(pi.dim(), n_group.identity()),
        None => basis_vector(pi.dim(), 0),
    };
    let subset = match args.subset {
        Some(text) => input::index_list(text)?,
        None => n_group.elements().collect(),
    };
    let ind = induce(&pi, &s.cocycle)?;
    let report = verify_induced(&ind, &w, &subset, ctx.tol)?;
    // independent check of the induced bounds by direct summation at random unit probes
    let phi = dilate_frame_vector(&ind, &w)?;
    let lifted = subset_lift(&s.cocycle, &subset)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let (a2, b2) = report.induced_bounds();
    let slack = ctx.tol * b2.max(1.0);
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for _ in 0..args.probes {
        let v = random_unit_vector(&mut rng, ind.result().dim());
        let energy: f64 = lifted
            .iter()
            .map(|&g| inner(&ind.result().apply(g, &phi), &v).norm_sqr())
            .sum();
        lo = lo.min(energy);
        hi = hi.max(energy);
    }
    let (a, b) = report.base_bounds();
    let results = json!({
        "base_bounds": [a, b],
        "induced_bounds": [a2, b2],
        "base_classification": report.base.classification.to_string(),
        "induced_classification": report.induced.classification.to_string(),
        "preserved": report.preserved,
        "index": report.index,
        "subset_size": report.subset_size,
        "lifted_subset": report.lifted_subset,
        "probes": {
            "count": args.probes,
            "min_energy": if args.probes > 0 { lo } else { 0.0 },
            "max_energy": hi,
            "within_bounds": args.probes == 0 || (lo >= a2 - slack && hi <= b2 + slack),
        },
    });
    let params = vec![
        format!("base={}", args.base.name()),
        format!("w={:?}", args.w),
        format!("subset={subset:?}"),
        format!("probes={}", args.probes),
    ];
    Ok(Outcome::json(results, s.inputs, params))
}

fn gap_json(report: &GapReport) -> Value {
    let defects: Vec<Value> = report
        .defect_per_generator
        .iter()
        .map(|(label, d)| json!({"generator": label, "defect": d}))
        .collect();
    json!({
        "laplacian_min_eig": report.laplacian_min_eig,
        "combined": report.combined,
        "defect_per_generator": defects,
        "excluded_dim": report.excluded_dim,
        "threshold": report.threshold,
    })
}

pub fn gap_cmd(
    ctx: &Ctx,
    group: &Path,
    generators: &str,
    rep: BaseRep,
    include_invariants: bool,
) -> Result<Outcome, Failure> {
    let inp = input::read(group)?;
    let g = Arc::new(input::group(&inp, ctx.seed)?);
    let gens = input::index_list(generators)?;
    let pi = base_rep(rep, &g)?;
    let family = GeneratorFamily::from_representation(&pi, &gens)?;
    let report = best_almost_invariant(&family, !include_invariants)?;
    let mut results = gap_json(&report);
    results["rep"] = json!(rep.name());
    results["exclude_invariants"] = json!(!include_invariants);
    Ok(Outcome::json(
        results,
        vec![inp],
        vec![
            format!("generators={gens:?}"),
            format!("rep={}", rep.name()),
            format!("include={include_invariants}"),
        ],
    ))
}

fn angle_strings(m: &DualMeasure, j: usize) -> Vec<String> {
    m.atoms()[j].angle.iter().map(|a| a.to_string()).collect()
}

pub fn dual_measure_cmd(path: &Path) -> Result<Outcome, Failure> {
    let inp = input::read(path)?;
    let m = input::measure(&inp)?;
    let ob = thai1_obstruction(&m);
    let gap = best_almost_invariant(&dual_measure_rep(&m)?, false)?;
    let atoms: Vec<Value> = (0..m.atoms().len())
        .map(|j| {
            let chars: Vec<Value> = m
                .generators()
                .iter()
                .map(|g| {
                    let z = m.character(j, g);
                    json!({"generator": g, "pairing": m.pairing(j, g).to_string(), "value": [z.re, z.im]})
                })
                .collect();
            json!({
                "angle": angle_strings(&m, j),
                "weight": m.atoms()[j].weight,
                "laplacian_diagonal": ob.per_atom[j],
                "characters": chars,
            })
        })
        .collect();
    let results = json!({
        "rank": m.rank(),
        "atoms": atoms,
        "identity_in_support": m.identity_atom().is_some(),
        "obstruction": {"c": ob.c, "argmin": ob.argmin},
        "laplacian_min_eig": gap.laplacian_min_eig,
    });
    Ok(Outcome::json(results, vec![inp], vec![]))
}

pub fn thai1_cmd(path: &Path, rule: SetRule) -> Result<Outcome, Failure> {
    let inp = input::read(path)?;
    let m = input::measure(&inp)?;
    let count = m.atoms().len();
    let sets: Vec<Vec<usize>> = match rule {
        SetRule::Tail => (0..count).map(|n| (n..count).collect()).collect(),
        SetRule::Singletons => (0..count).map(|n| vec![n]).collect(),
    };
    let w = thai1_witnesses(&m, &sets)?;
    let ob = thai1_obstruction(&m);
    let rows: Vec<Value> = w
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "atoms": r.atoms,
                "mass": r.mass,
                "max_distance": r.max_distance,
                "combined": r.combined,
                "defects": r.defects,
            })
        })
        .collect();
    let table = Table {
        header: vec!["n", "size", "mass", "max_distance", "combined", "defects"],
        rows: w
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.atoms.len().to_string(),
                    format_float(r.mass),
                    format_float(r.max_distance),
                    format_float(r.combined),
                    r.defects.iter().map(|d| format_float(*d)).collect::<Vec<_>>().join(";"),
                ]
            })
            .collect(),
    };
    let results = json!({
        "sets": rule.name(),
        "rows": rows,
        "nested": w.nested,
        "non_increasing": w.non_increasing,
        "obstruction": {"c": ob.c, "argmin": ob.argmin},
        "identity_in_support": m.identity_atom().is_some(),
    });
    Ok(Outcome {
        results,
        table: Some(table),
        inputs: vec![inp],
        params: vec![format!("sets={}", rule.name())],
    })
}

fn bessel_rows(
    n_max: u32,
    normalization: HaarNormalization,
) -> Result<(Value, framecraft::dyadic::BesselReport), Failure> {
    let rep = bessel_divergence(n_max, normalization)?;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| json!({"n": r.n, "inner": r.inner.to_string(), "partial_sum": r.partial_sum.to_string()}))
        .collect();
    Ok((Value::Array(rows), rep))
}

pub fn haar_demo_cmd(
    ctx: &Ctx,
    n_max: u32,
    gram_range: i64,
    normalization: HaarNormalization,
) -> Result<Outcome, Failure> {
    if gram_range < 0 {
        return Err(Failure::Validation("gram range must be nonnegative".into()));
    }
    let (rows, rep) = bessel_rows(n_max, normalization)?;
    let gram = haar_gram(-gram_range..=gram_range, -gram_range..=gram_range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut probes = vec![
        ("haar", DyadicStep::haar()),
        (
            "indicator",
            DyadicStep::indicator(BigRational::from_integer(0.into()), BigRational::from_integer(1.into()))?,
        ),
    ];
    for _ in 0..8 {
        probes.push(("random", DyadicStep::random(&mut rng, 5, 3)));
    }
    let mut conj = Vec::new();
    for n in 1..=n_max {
        let holds = probes
            .iter()
            .map(|(_, p)| conjugation_identity(n, p))
            .collect::<framecraft::Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        conj.push(json!({"n": n, "holds": holds}));
    }
    let results = json!({
        "normalization": normalization,
        "norm_squared": rep.norm_squared.to_string(),
        "overlaps": rows,
        "threshold": rep.threshold,
        "gram": {
            "range": [-gram_range, gram_range],
            "size": gram.len(),
            "identity": is_identity(&gram),
        },
        "conjugation": conj,
        "probes": probes.len(),
        "relation_holds": probes.iter().all(|(_, p)| defining_relation(p)),
    });
    Ok(Outcome::json(
        results,
        vec![],
        vec![
            format!("n_max={n_max}"),
            format!("gram_range={gram_range}"),
            format!("normalization={normalization:?}"),
        ],
    ))
}

pub fn bessel_cmd(n_max: u32, normalization: HaarNormalization) -> Result<Outcome, Failure> {
    let (rows, rep) = bessel_rows(n_max, normalization)?;
    let last = rep.final_partial_sum();
    let results = json!({
        "normalization": normalization,
        "norm_squared": rep.norm_squared.to_string(),
        "n_max": n_max,
        "threshold": rep.threshold,
        "final_partial_sum": last.to_string(),
        "final_partial_sum_approx": last.to_f64(),
        "rows": rows,
    });
    Ok(Outcome::json(
        results,
        vec![],
        vec![format!("n_max={n_max}"), format!("normalization={normalization:?}")],
    ))
}
