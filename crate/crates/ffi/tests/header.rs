//! The generated header must be valid C and link against the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn header_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header_dir().join("padic_strings.h")).unwrap();
    for name in [
        "typedef struct PsString PsString",
        "PS_STATUS_OK = 0",
        "ps_last_error_message",
        "ps_string_from_json",
        "ps_string_free",
        "ps_zeta_eval",
        "ps_complex_dimensions",
        "ps_volume_direct",
        "ps_volume_series",
        "ps_average_content",
        "ps_artin_product",
        "ps_veneziano",
        "ps_cstring_free",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

fn staticlib() -> Option<PathBuf> {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libpadic_strings_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipped");
        return;
    }
    let Some(lib) = staticlib() else {
        eprintln!("static library not built yet; skipped");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "padic_strings.h"

int main(void) {
    PsString *s = NULL;
    if (ps_string_cantor_p(3, &s) != PS_STATUS_OK) return 1;
    double d = 0.0;
    if (ps_dimension(s, &d) != PS_STATUS_OK) return 2;
    char *v = NULL;
    if (ps_volume_direct(s, "1/9", &d, &v) != PS_STATUS_OK) return 3;
    if (strcmp(v, "2/9") != 0) return 4;
    ps_cstring_free(v);
    ps_string_free(s);
    if (ps_string_cantor_p(4, &s) != PS_STATUS_ARGUMENT) return 5;
    if (ps_last_error_message() == NULL) return 6;
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header_dir())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program failed: {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
