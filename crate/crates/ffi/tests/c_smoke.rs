//! Compiles and runs a small C program against the generated header and the
//! static library, when a C compiler is available.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "erconn.h"

int main(void) {
    ErconnNMin m;
    if (erconn_n_min(10, 0.1, ERCONN_N_MIN_FORM_CONSERVATIVE, &m) != ERCONN_STATUS_OK) return 1;
    if (m.rounded_up != 12) return 2;
    ErconnProbabilityBound b;
    if (erconn_probability_bound(50, 0.1, 5, &b) != ERCONN_STATUS_BELOW_N_MIN) return 3;
    if (erconn_last_error_message() == NULL) return 4;
    ErconnGraph *g = NULL;
    if (erconn_graph_sample(30, 0.3, 2, 7, &g) != ERCONN_STATUS_OK) return 5;
    bool connected = false;
    double l2 = 0.0;
    erconn_graph_is_connected(g, &connected);
    erconn_graph_lambda2(g, &l2);
    if (connected != (l2 > 1e-8)) return 6;
    erconn_graph_free(g);
    printf("ok %llu\n", (unsigned long long)m.rounded_up);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler found; skipping");
        return;
    }
    let lib = target_dir().join("liberconn_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    let bin = dir.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok 12\n");
    let _ = std::fs::remove_dir_all(&dir);
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("erconn-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
