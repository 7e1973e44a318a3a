#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// One golden case: file stem under `tests/golden` and the arguments, run from `tests/data`.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args }
}

pub const CASES: &[Case] = &[
    case("frame_report_standard_basis", &["frame-report", "standard_basis.json"]),
    case("frame_report_skewed", &["frame-report", "skewed.json"]),
    case("frame_report_overflow", &["frame-report", "overflow.json"]),
    case(
        "frame_report_csv_rejected",
        &["frame-report", "skewed.json", "--format", "csv"],
    ),
    case("canonical_skewed", &["canonical", "skewed.json"]),
    case(
        "truncation_profile_diag",
        &["truncation-profile", "--family", "diag", "--sizes", "2,4,8,16"],
    ),
    case(
        "truncation_profile_diag_squared",
        &["truncation-profile", "--family", "diag:2", "--sizes", "3,5"],
    ),
    case(
        "truncation_profile_overlap_json",
        &[
            "truncation-profile",
            "--family",
            "overlap",
            "--sizes",
            "4,16,64",
            "--format",
            "json",
        ],
    ),
    case("truncation_profile_unsorted", &["truncation-profile", "--sizes", "4,2"]),
    case("group_validate_product", &["group-validate", "c2xc4.json"]),
    case("group_validate_symmetric", &["group-validate", "s3.json"]),
    case("group_validate_non_latin", &["group-validate", "non_latin.json"]),
    case("group_validate_malformed", &["group-validate", "malformed.json"]),
    case("group_validate_wrong_type", &["group-validate", "wrong_type.json"]),
    case("group_validate_bad_factor", &["group-validate", "bad_factor.json"]),
    case(
        "cocycle_check_s3_rotations",
        &["cocycle-check", "s3.json", "--subgroup", "s3_rotations.json"],
    ),
    case(
        "cocycle_check_s4_a4",
        &["cocycle-check", "s4.json", "--subgroup", "a4.json"],
    ),
    case(
        "cocycle_check_shifted",
        &[
            "cocycle-check",
            "s3.json",
            "--subgroup",
            "s3_rotations.json",
            "--cocycle",
            "s3_shifted_cocycle.json",
        ],
    ),
    case(
        "cocycle_check_invalid_table",
        &[
            "cocycle-check",
            "s3.json",
            "--subgroup",
            "s3_rotations.json",
            "--cocycle",
            "constant_cocycle.json",
        ],
    ),
    case(
        "induce_s3_regular",
        &["induce", "s3.json", "--subgroup", "s3_rotations.json"],
    ),
    case(
        "induce_c6_fourier",
        &["induce", "c6.json", "--subgroup", "c6_sub3.json", "--base", "fourier"],
    ),
    case(
        "framext_s3_parseval",
        &["framext", "s3.json", "--subgroup", "s3_rotations.json"],
    ),
    case(
        "framext_s3_weighted",
        &["framext", "s3.json", "--subgroup", "s3_rotations.json", "--w", "2,1,0"],
    ),
    case(
        "framext_a4_weighted",
        &[
            "framext",
            "s4.json",
            "--subgroup",
            "a4.json",
            "--w",
            "2,1,0,0,0,0,0,0,0,0,0,0",
        ],
    ),
    case(
        "framext_c6_fourier",
        &[
            "framext",
            "c6.json",
            "--subgroup",
            "c6_sub3.json",
            "--base",
            "fourier",
            "--w",
            "1,0.5:0.5,0",
        ],
    ),
    case(
        "framext_shifted_cocycle",
        &[
            "framext",
            "s3.json",
            "--subgroup",
            "s3_rotations.json",
            "--cocycle",
            "s3_shifted_cocycle.json",
            "--w",
            "2,1,0",
        ],
    ),
    case("gap_c6_regular", &["gap", "c6.json", "--generators", "1"]),
    case("gap_s3_regular", &["gap", "s3.json", "--generators", "1,3"]),
    case(
        "gap_c6_with_invariants",
        &["gap", "c6.json", "--generators", "1", "--include-invariants"],
    ),
    case("dual_measure_thirds_halves", &["dual-measure", "thirds_halves.json"]),
    case("dual_measure_torus2", &["dual-measure", "torus2.json"]),
    case("thai1_dyadic_tail", &["thai1", "dyadic_atoms.json"]),
    case(
        "thai1_dyadic_singletons_json",
        &["thai1", "dyadic_atoms.json", "--sets", "singletons", "--format", "json"],
    ),
    case("haar_demo", &["haar-demo"]),
    case(
        "haar_demo_half_norm",
        &["haar-demo", "--n-max", "4", "--normalization", "half-norm"],
    ),
    case("bessel_divergence", &["bessel-divergence"]),
    case(
        "bessel_divergence_seed_hex",
        &["bessel-divergence", "--n-max", "6", "--seed", "0xBEEF"],
    ),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn data_dir() -> PathBuf {
    crate_dir().join("tests").join("data")
}

pub fn golden_dir() -> PathBuf {
    crate_dir().join("tests").join("golden")
}

pub fn golden_path(case: &Case) -> PathBuf {
    golden_dir().join(format!("{}.out", case.name))
}

pub struct Captured {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_in(dir: &Path, args: &[&str], envs: &[(&str, &str)]) -> Captured {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_framecraft"));
    cmd.args(args).current_dir(dir).env_remove("FRAMECRAFT_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("failed to launch framecraft");
    Captured {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("stdout is utf-8"),
        stderr: String::from_utf8(out.stderr).expect("stderr is utf-8"),
    }
}

pub fn run(args: &[&str]) -> Captured {
    run_in(&data_dir(), args, &[])
}

/// The text stored in a golden file.
pub fn render(case: &Case, out: &Captured) -> String {
    format!(
        "$ framecraft {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        case.args.join(" "),
        out.code,
        out.stdout,
        out.stderr
    )
}

/// Runs a case twice. Returns the rendering or a description of the mismatch.
pub fn run_twice(case: &Case) -> Result<String, String> {
    let first = render(case, &run(case.args));
    let second = render(case, &run(case.args));
    if first == second {
        Ok(first)
    } else {
        Err(format!("{}: two consecutive runs differ", case.name))
    }
}

pub fn check_golden(case: &Case) -> Result<(), String> {
    let actual = run_twice(case)?;
    let path = golden_path(case);
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: cannot read {}: {e}", case.name, path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!(
            "{}: output differs from {}\n{}",
            case.name,
            path.display(),
            first_difference(&expected, &actual)
        ))
    }
}

fn first_difference(expected: &str, actual: &str) -> String {
    for (i, (e, a)) in expected.lines().zip(actual.lines()).enumerate() {
        if e != a {
            return format!("line {}:\n  expected: {e}\n  actual:   {a}", i + 1);
        }
    }
    format!(
        "length differs: expected {} lines, got {}",
        expected.lines().count(),
        actual.lines().count()
    )
}
