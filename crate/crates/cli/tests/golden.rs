//! Golden-file tests: each case runs the binary from `tests/fixtures` and
//! compares exit code and stdout with `tests/golden/<name>.out`. Set
//! `UPDATE_GOLDEN=1` to rewrite the files.

use std::path::PathBuf;
use std::process::Command;

struct Case {
    name: &'static str,
    args: &'static [&'static str],
    env: &'static [(&'static str, &'static str)],
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, env: &[] }
}

const Y2_SWAPPED: &str = "0,0,0,0,0,0,0,1,0,-1";

const CASES: &[Case] = &[
    // curve
    case("curve_classify_line", &["curve", "classify", "--curve", "line.json"]),
    case("curve_classify_scroll_cubic", &["curve", "classify", "--curve", "scroll_cubic.json"]),
    case("curve_classify_pretty", &["--pretty", "curve", "classify", "--curve", "cone_cubic.json"]),
    case("curve_vertex_cone_conic", &["curve", "vertex", "--curve", "cone_conic.json"]),
    case("curve_vertex_scroll_conic", &["curve", "vertex", "--curve", "scroll_conic.json"]),
    case("curve_envelope_scroll_conic", &["curve", "envelope", "--curve", "scroll_conic.json"]),
    case("curve_envelope_line", &["curve", "envelope", "--curve", "line.json"]),
    case("curve_axis_scroll_cubic", &["curve", "axis", "--curve", "scroll_cubic.json"]),
    case("curve_axis_cone_cubic", &["curve", "axis", "--curve", "cone_cubic.json"]),
    case("curve_member_y4", &["curve", "member", "--curve", "line.json", "--section", "Y4"]),
    case("curve_member_y3", &["curve", "member", "--curve", "line.json", "--section", "Y3"]),
    case("curve_member_custom", &["curve", "member", "--curve", "line.json", "--section", "y5_custom.json"]),
    case("curve_malformed", &["curve", "classify", "--curve", "truncated.json"]),
    case("curve_one_row", &["curve", "classify", "--curve", "one_row.json"]),
    case("curve_missing_file", &["curve", "classify", "--curve", "nowhere.json"]),
    // section
    case("section_fiber_lines_y4", &["section", "fiber-lines", "--point", "[0,1,0,0,0]", "--section", "Y4"]),
    case("section_fiber_lines_c0", &["section", "fiber-lines", "--point", "[1,1,0,0,-1]", "--section", "Y4"]),
    case("section_fiber_lines_y6", &["section", "fiber-lines", "--point", "[1,0,0,0,0]"]),
    case("section_fiber_lines_pretty", &["--pretty", "section", "fiber-lines", "--point", "[0,1,0,0,0]", "--section", "Y4"]),
    case("section_plane_fiber_sigma", &["section", "plane-fiber", "--plane", "[[0,0,0,0,1],[1,0,0,0,0],[0,1,0,0,0]]", "--section", "Y5"]),
    case("section_plane_fiber_generic", &["section", "plane-fiber", "--plane", "[[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0]]", "--section", "Y5"]),
    case("section_plane_fiber_custom", &["section", "plane-fiber", "--plane", "[[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0]]", "--section", "y5_custom.json"]),
    case("section_sigma31_e4", &["section", "sigma31", "--point", "[0,0,0,0,1]", "--section", "Y5"]),
    case("section_sigma31_general", &["section", "sigma31", "--point", "[1,2,\"1/3\",0,1]", "--section", "Y5"]),
    case("section_sigma22_pi", &["section", "sigma22", "--plane", "[[1,0,0,0,0],[0,1,0,0,0],[0,0,0,0,1]]", "--section", "Y4"]),
    case("section_conic_y3", &["section", "conic", "--space", "[[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0]]", "--section", "Y3"]),
    case("section_conic_wrong_section", &["section", "conic", "--space", "[[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0]]", "--section", "Y4"]),
    case("section_nbundle_y4_on", &["section", "nbundle", "--vertex", "[1,1,0,0,-1]", "--plane", "[[1,0,0,0,0],[0,1,0,0,0],[0,0,0,0,1]]", "--section", "Y4"]),
    case("section_nbundle_y4_off", &["section", "nbundle", "--vertex", "[1,0,0,0,1]", "--plane", "[[1,0,0,0,0],[0,1,0,0,0],[0,0,0,0,1]]", "--section", "Y4"]),
    case("section_nbundle_y5", &["section", "nbundle", "--vertex", "[1,0,0,0,0]", "--plane", "[[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0]]", "--section", "Y5"]),
    case("section_nbundle_not_in_section", &["section", "nbundle", "--vertex", "[0,1,0,0,0]", "--plane", "[[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0]]", "--section", "Y4"]),
    case("section_bad_point", &["section", "fiber-lines", "--point", "[1,0,0]"]),
    case("section_bad_json", &["section", "fiber-lines", "--point", "[1,0,"]),
    case("section_bad_file", &["section", "fiber-lines", "--point", "[1,0,0,0,0]", "--section", "bad_section.json"]),
    case("section_unknown_preset", &["section", "fiber-lines", "--point", "[1,0,0,0,0]", "--section", "Y7"]),
    // ideal
    case("ideal_sigma20_linear", &["ideal", "interpolate", "--locus", "sigma20", "--degree", "1"]),
    case("ideal_sigma20_quadrics_modulo", &["ideal", "interpolate", "--locus", "sigma20", "--degree", "2", "--modulo-lower"]),
    case("ideal_c0", &["ideal", "interpolate", "--locus", "c0", "--degree", "2", "--seed", "7"]),
    case("ideal_gr25", &["ideal", "interpolate", "--locus", "gr25", "--degree", "2"]),
    case("ideal_y3_vertex", &["ideal", "interpolate", "--locus", "y3-vertex", "--degree", "3", "--jobs", "2"]),
    case("ideal_unknown_locus", &["ideal", "interpolate", "--locus", "nowhere", "--degree", "2"]),
    // enum
    case("enum_y2_lines", &["enum", "--p", "5", "--object", "lines", "--section", "Y2", "--witnesses"]),
    case("enum_y4_planes22", &["enum", "--p", "3", "--object", "planes22", "--section", "Y4", "--witnesses"]),
    case("enum_y5_planes31", &["enum", "--p", "2", "--object", "planes31", "--section", "Y5", "--jobs", "3"]),
    case("enum_y5_lines_direct", &["enum", "--p", "2", "--object", "lines-direct", "--section", "Y5"]),
    case("enum_y4_subspaces", &["enum", "--p", "3", "--object", "subspaces", "--k", "3", "--section", "Y4", "--witnesses"]),
    case("enum_budget", &["enum", "--p", "7", "--object", "planes22", "--section", "Y4", "--budget", "100"]),
    case("enum_not_prime", &["enum", "--p", "9", "--object", "lines"]),
    case("enum_unknown_object", &["enum", "--p", "3", "--object", "conics"]),
    Case {
        name: "enum_y2_env_override",
        args: &["enum", "--p", "3", "--object", "lines", "--section", "Y2"],
        env: &[("GRASCURVE_Y2_H4", Y2_SWAPPED)],
    },
    Case {
        name: "enum_y2_env_bad",
        args: &["enum", "--p", "3", "--object", "lines", "--section", "Y2"],
        env: &[("GRASCURVE_Y2_H4", "1,2,3")],
    },
    // verify
    case("verify_list", &["verify", "--list"]),
    case("verify_unique_sigma22", &["verify", "unique-sigma22-plane"]),
    case("verify_two_checks", &["verify", "sigma31-fiber", "flag-fiber-structure"]),
    case("verify_pretty", &["--pretty", "verify", "conic-kernel-rank"]),
    case("verify_skipped", &["verify", "y2-line-count", "--budget", "10"]),
    case("verify_unknown", &["verify", "no-such-id"]),
    case("verify_nothing", &["verify"]),
    case("verify_ids_and_all", &["verify", "--all", "cubic-axis"]),
    // usage
    case("help_top", &["--help"]),
    case("help_enum", &["enum", "--help"]),
    case("usage_unknown_subcommand", &["frobnicate"]),
    case("usage_missing_flag", &["section", "fiber-lines"]),
    case("usage_zero_jobs", &["--jobs", "0", "curve", "classify", "--curve", "line.json"]),
];

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn run(c: &Case) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_grascurve"));
    cmd.args(c.args).current_dir(dir("fixtures")).env_remove("GRASCURVE_Y2_H4");
    for (k, v) in c.env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    format!("exit: {}\n{}", out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 stdout"))
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for c in CASES {
        let got = run(c);
        let path = dir("golden").join(format!("{}.out", c.name));
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(want) => failures.push(format!("{}: expected\n{want}\ngot\n{got}", c.name)),
            Err(_) => failures.push(format!("{}: missing golden file {}", c.name, path.display())),
        }
    }
    assert!(failures.is_empty(), "{} golden mismatches:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn every_golden_file_has_a_case() {
    for entry in std::fs::read_dir(dir("golden")).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        let stem = name.trim_end_matches(".out");
        assert!(CASES.iter().any(|c| c.name == stem), "stale golden file {name}");
    }
}

#[test]
fn case_names_are_unique() {
    for c in CASES {
        assert_eq!(CASES.iter().filter(|d| d.name == c.name).count(), 1, "{}", c.name);
    }
}
