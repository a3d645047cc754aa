//! Compiles and runs a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "trop.h"

int main(void) {
    TropCurve *a = NULL, *b = NULL;
    if (trop_curve_from_text("x^2 + y", &a) != TROP_STATUS_OK) return 1;
    if (trop_curve_from_text("x + y^2", &b) != TROP_STATUS_OK) return 2;
    int64_t total = 0;
    char *json = NULL;
    if (trop_intersect(a, b, true, &total, &json) != TROP_STATUS_OK) return 3;
    if (total != 3) return 4;
    trop_string_free(json);
    TropCurve *bad = NULL;
    if (trop_curve_from_text("0++x", &bad) != TROP_STATUS_SYNTAX) return 5;
    if (strstr(trop_last_error(), "position 2") == NULL) return 6;
    TropCycle *cyc = NULL;
    if (trop_cycle_new(a, &cyc) != TROP_STATUS_NOT_ELLIPTIC) return 7;
    trop_curve_free(a);
    trop_curve_free(b);
    printf("ok\n");
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // <target>/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("trop.h").exists());
    let lib = target_dir().join("libtrop_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("smoke.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let exe = work.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&header_dir)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .expect("cc is available");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
