use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hamnf_ffi::*;

fn last_error() -> String {
    let p = hnf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn run_to_string(sys: *const HnfSystem, mode: HnfMode, format: HnfFormat, verify: bool) -> (HnfStatus, String) {
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { hnf_run(sys, mode, HnfPolicy::ZeroFirst, format, verify, &mut out) };
    if out.is_null() {
        return (status, String::new());
    }
    let s = unsafe { CStr::from_ptr(out) }.to_string_lossy().into_owned();
    unsafe { hnf_string_free(out) };
    (status, s)
}

#[test]
fn parse_run_and_free() {
    let text = CString::new("weight 1 1; H = -1/2*x2^2; P1 = x1^2; P2 = x1*x2; N = 5").unwrap();
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { hnf_system_parse(text.as_ptr(), &mut sys) }, HnfStatus::Ok);
    assert_eq!(unsafe { hnf_system_truncation(sys) }, 5);
    assert_eq!(unsafe { hnf_system_chi(sys) }, 0);
    let (status, doc) = run_to_string(sys, HnfMode::Gnf, HnfFormat::Records, true);
    assert_eq!(status, HnfStatus::Ok);
    assert!(doc.starts_with("hamnf-records 1\n"));
    assert!(doc.contains("status ok"));
    unsafe { hnf_system_free(sys) };
}

#[test]
fn preset_matches_the_library() {
    let name = CString::new("binom:3,2").unwrap();
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { hnf_system_preset(name.as_ptr(), 6, 4, &mut sys) }, HnfStatus::Ok);
    let (status, doc) = run_to_string(sys, HnfMode::Gphnf, HnfFormat::Text, false);
    assert_eq!(status, HnfStatus::Ok);
    let direct = hamnf::catalog::preset_system("binom:3,2".parse().unwrap(), 6, 4).unwrap();
    let cfg = hamnf::cli::JobConfig {
        mode: hamnf::cli::Mode::Gphnf,
        ..Default::default()
    };
    assert_eq!(doc, hamnf::cli::render_report(&cfg, &hamnf::cli::run(&cfg, &direct).unwrap()));
    unsafe { hnf_system_free(sys) };
}

#[test]
fn error_codes_and_messages() {
    let mut sys = ptr::null_mut();
    let bad = CString::new("weight 1 1; H = x1^2 +; N = 3").unwrap();
    assert_eq!(unsafe { hnf_system_parse(bad.as_ptr(), &mut sys) }, HnfStatus::Parse);
    assert!(sys.is_null());
    assert!(last_error().contains("column"));

    let coprime = CString::new("weight 2 4; H = x1^2; N = 3").unwrap();
    assert_eq!(unsafe { hnf_system_parse(coprime.as_ptr(), &mut sys) }, HnfStatus::Validation);
    assert!(last_error().contains("coprime"));

    let saddle = CString::new("diag:1").unwrap();
    assert_eq!(unsafe { hnf_system_preset(saddle.as_ptr(), 4, 1, &mut sys) }, HnfStatus::Ok);
    let (status, doc) = run_to_string(sys, HnfMode::Gnf, HnfFormat::Text, false);
    assert_eq!((status, doc.as_str()), (HnfStatus::Internal, ""));
    unsafe { hnf_system_free(sys) };

    assert_eq!(unsafe { hnf_system_parse(ptr::null(), &mut sys) }, HnfStatus::NullPointer);
    assert_eq!(unsafe { hnf_system_parse(bad.as_ptr(), ptr::null_mut()) }, HnfStatus::NullPointer);
    let (status, _) = run_to_string(ptr::null(), HnfMode::Gnf, HnfFormat::Text, false);
    assert_eq!(status, HnfStatus::NullPointer);
    let invalid = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { hnf_system_parse(invalid.as_ptr(), &mut sys) }, HnfStatus::InvalidUtf8);
    unsafe {
        hnf_system_free(ptr::null_mut());
        hnf_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { hnf_system_truncation(ptr::null()) }, 0);
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "hamnf.h"

int main(void) {
    HnfSystem *sys = NULL;
    if (hnf_system_preset("takens:3", 5, 2, &sys) != HNF_STATUS_OK) return 10;
    char *out = NULL;
    if (hnf_run(sys, HNF_MODE_GNF, HNF_POLICY_ZERO_FIRST, HNF_FORMAT_RECORDS, true, &out) != HNF_STATUS_OK) return 11;
    int ok = strstr(out, "status ok") != NULL;
    hnf_string_free(out);
    hnf_system_free(sys);
    if (hnf_system_parse("weight 2 4; H = x1^2; N = 3", &sys) != HNF_STATUS_VALIDATION) return 12;
    puts(hnf_last_error());
    return ok ? 0 : 13;
}
"#;

#[test]
fn header_compiles_and_links_from_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libhamnf_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("hnf_smoke.c");
    let bin = tmp.join("hnf_smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("coprime"));
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
