#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub env: &'static [(&'static str, &'static str)],
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case {
        name,
        args,
        env: &[],
    }
}

/// Every golden invocation. Paths are relative to the crate root.
pub const CASES: &[Case] = &[
    case(
        "arf_file",
        &[
            "arf",
            "--form",
            "tests/data/form4_arf0.form",
            "--democratic",
        ],
    ),
    case("arf_inline_odd", &["arf", "--form", "11", "--democratic"]),
    case(
        "arf_bad_bits",
        &["arf", "--form", "tests/data/bad_bits.form"],
    ),
    case(
        "arf_bad_gram",
        &["arf", "--form", "tests/data/bad_gram.form"],
    ),
    case("psi_swap", &["psi", "--form", "11", "--matrix", "01/10"]),
    case(
        "psi_not_orthogonal",
        &["psi", "--form", "00", "--matrix", "11/01"],
    ),
    case(
        "q_a4",
        &[
            "q",
            "--surface",
            "tests/data/torus_arf0.surface",
            "--word",
            "tests/data/a4.word",
        ],
    ),
    case(
        "q_identity",
        &[
            "q",
            "--surface",
            "tests/data/torus_arf0.surface",
            "--word",
            "tests/data/empty.word",
        ],
    ),
    case(
        "q_even_twist",
        &[
            "q",
            "--surface",
            "tests/data/torus_arf0.surface",
            "--word",
            "tests/data/bad_twist.word",
        ],
    ),
    case(
        "q_umap",
        &[
            "q",
            "--surface",
            "tests/data/genus2_arf0.surface",
            "--word",
            "tests/data/umap.word",
        ],
    ),
    case(
        "q_b2b1",
        &[
            "q",
            "--surface",
            "tests/data/torus_arf1.surface",
            "--word",
            "tests/data/b2b1.word",
        ],
    ),
    case(
        "q_torus_flip",
        &[
            "q",
            "--surface",
            "00",
            "--matrix",
            "10/01",
            "--epsilon",
            "1",
        ],
    ),
    case(
        "q_sphere_flip",
        &[
            "q",
            "--surface",
            "tests/data/sphere.surface",
            "--matrix",
            "tests/data/empty.matrix",
            "--epsilon",
            "1",
        ],
    ),
    case(
        "decompose_o4",
        &[
            "decompose",
            "--form",
            "tests/data/form4_arf0.form",
            "--matrix",
            "tests/data/o4.matrix",
        ],
    ),
    case(
        "decompose_swap",
        &["decompose", "--form", "00", "--matrix", "01/10"],
    ),
    case(
        "verify_o4",
        &[
            "verify",
            "--form",
            "tests/data/form4_arf0.form",
            "--matrix",
            "tests/data/o4.matrix",
            "--decomposition",
            "tests/data/o4.decomposition",
        ],
    ),
    case(
        "verify_mismatch",
        &[
            "verify",
            "--form",
            "tests/data/form4_arf0.form",
            "--matrix",
            "tests/data/o4.matrix",
            "--decomposition",
            "tests/data/wrong.decomposition",
        ],
    ),
    case(
        "check_rh_same",
        &[
            "check-rh",
            "--surface",
            "tests/data/torus_arf0.surface",
            "--surface",
            "00",
        ],
    ),
    case(
        "check_rh_permuted",
        &["check-rh", "--surface", "1001", "--surface", "0110"],
    ),
    case(
        "check_rh_arf_differs",
        &[
            "check-rh",
            "--surface",
            "00",
            "--surface",
            "tests/data/torus_arf1.surface",
        ],
    ),
    case("enumerate_dim2_arf1", &["enumerate", "--form", "11"]),
    case("enumerate_dim2_arf0", &["enumerate", "--form", "00"]),
    case("catalog_arf0", &["catalog", "--genus", "1", "--arf", "0"]),
    case("catalog_arf1", &["catalog", "--genus", "1", "--arf", "1"]),
    case("catalog_genus2", &["catalog", "--genus", "2", "--arf", "0"]),
    case("usage_missing_word", &["q", "--surface", "00"]),
    case(
        "missing_file",
        &["q", "--surface", "00", "--word", "tests/data/absent.word"],
    ),
    case("enumerate_guard", &["enumerate", "--form", "0000000000"]),
    Case {
        name: "enumerate_guard_override",
        args: &["enumerate", "--form", "000000"],
        env: &[("ARF_ENGINE_MAX_DIM", "4")],
    },
    Case {
        name: "democratic_guard_override",
        args: &["arf", "--form", "0000000000", "--democratic"],
        env: &[("ARF_ENGINE_MAX_DIM", "8")],
    },
];

pub fn crate_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs the binary and renders status, stdout and stderr as one transcript.
pub fn transcript(case: &Case) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_arf-engine"));
    cmd.args(case.args)
        .current_dir(crate_root())
        .env_remove("ARF_ENGINE_MAX_DIM");
    for (k, v) in case.env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("failed to spawn arf-engine");
    format!(
        "status {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}

pub fn golden_path(case: &Case) -> PathBuf {
    crate_root()
        .join("tests/golden")
        .join(format!("{}.txt", case.name))
}
