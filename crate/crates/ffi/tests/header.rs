use std::path::Path;
use std::process::Command;

fn header() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/classnum.h");
    std::fs::read_to_string(path).expect("header is generated by the build script")
}

#[test]
fn header_declares_the_interface() {
    let h = header();
    for name in [
        "classnum_last_error",
        "classnum_string_free",
        "classnum_hurwitz",
        "classnum_class_number",
        "classnum_series_new",
        "classnum_series_from_text",
        "classnum_series_free",
        "classnum_series_prec",
        "classnum_series_coeff",
        "classnum_series_to_text",
        "classnum_identify",
        "classnum_check_relation",
        "classnum_verify_theorem",
        "classnum_nonhol_check",
        "CLASSNUM_STATUS_OK",
        "CLASSNUM_STATUS_CHECK_FAILED",
        "typedef struct ClassnumSeries ClassnumSeries",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    assert!(cc.status.success());
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/classnum.h");
    let status = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
}
