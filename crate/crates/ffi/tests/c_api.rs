use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use tamagawa_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    tmg_string_free(s);
    out
}

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(tmg_last_error())
            .to_str()
            .unwrap()
            .to_owned()
    }
}

fn group(label: &str) -> *mut TmgGroup {
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { tmg_group_new(cstr(label).as_ptr(), &mut g) },
        TmgStatus::Ok
    );
    g
}

fn curve(spec: &str, q: u64) -> *mut TmgCurve {
    let mut c = ptr::null_mut();
    assert_eq!(
        unsafe { tmg_curve_parse(cstr(spec).as_ptr(), q, &mut c) },
        TmgStatus::Ok
    );
    c
}

#[test]
fn group_accessors() {
    unsafe {
        let g = group("E8");
        let (mut rank, mut dim, mut n) = (0u32, 0u64, 0u64);
        assert_eq!(tmg_group_rank(g, &mut rank), TmgStatus::Ok);
        assert_eq!(tmg_group_dimension(g, &mut dim), TmgStatus::Ok);
        assert_eq!(tmg_group_num_positive_roots(g, &mut n), TmgStatus::Ok);
        assert_eq!((rank, dim, n), (8, 248, 120));

        let mut degrees = [0u32; 8];
        let mut len = 0usize;
        assert_eq!(
            tmg_group_degrees(g, degrees.as_mut_ptr(), 8, &mut len),
            TmgStatus::Ok
        );
        assert_eq!(&degrees[..len], &[2, 8, 12, 14, 18, 20, 24, 30]);
        assert_eq!(
            tmg_group_degrees(g, degrees.as_mut_ptr(), 3, &mut len),
            TmgStatus::BufferTooSmall
        );
        assert_eq!(len, 8);

        let mut s = ptr::null_mut();
        assert_eq!(tmg_group_weyl_order(g, &mut s), TmgStatus::Ok);
        assert_eq!(take(s), "696729600");
        assert_eq!(tmg_group_label(g, &mut s), TmgStatus::Ok);
        assert_eq!(take(s), "E8");
        tmg_group_free(g);
    }
}

#[test]
fn chevalley_order() {
    unsafe {
        let g = group("A1");
        let mut s = ptr::null_mut();
        assert_eq!(tmg_group_chevalley_order(g, 2, &mut s), TmgStatus::Ok);
        assert_eq!(take(s), "6");
        assert_eq!(
            tmg_group_chevalley_order(g, 6, &mut s),
            TmgStatus::InvalidArgument
        );
        assert!(last_error().contains('6'), "{}", last_error());
        tmg_group_free(g);
    }
}

#[test]
fn bad_labels() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            tmg_group_new(cstr("Z9").as_ptr(), &mut g),
            TmgStatus::ParseError
        );
        assert!(g.is_null());
        assert_eq!(
            tmg_group_new(cstr("D3").as_ptr(), &mut g),
            TmgStatus::InvalidArgument
        );
        assert_eq!(tmg_group_new(ptr::null(), &mut g), TmgStatus::NullPointer);
        let invalid = [0xffu8, 0];
        assert_eq!(
            tmg_group_new(invalid.as_ptr().cast(), &mut g),
            TmgStatus::InvalidUtf8
        );
        assert_eq!(
            tmg_group_new(cstr("A1").as_ptr(), ptr::null_mut()),
            TmgStatus::NullPointer
        );
        // Freeing NULL is allowed.
        tmg_group_free(ptr::null_mut());
        tmg_curve_free(ptr::null_mut());
        tmg_string_free(ptr::null_mut());
    }
}

#[test]
fn curves_and_point_counts() {
    unsafe {
        let c = curve("weil:q=2,g=1,num=1,0,2", 0);
        let (mut q, mut g) = (0u64, 0u32);
        assert_eq!(tmg_curve_field_size(c, &mut q), TmgStatus::Ok);
        assert_eq!(tmg_curve_genus(c, &mut g), TmgStatus::Ok);
        assert_eq!((q, g), (2, 1));
        let mut s = ptr::null_mut();
        assert_eq!(tmg_curve_point_count(c, 2, &mut s), TmgStatus::Ok);
        assert_eq!(take(s), "9");
        assert_eq!(
            tmg_curve_point_count(c, 0, &mut s),
            TmgStatus::InvalidArgument
        );
        tmg_curve_free(c);

        let p1 = curve("p1", 2);
        assert_eq!(tmg_curve_point_count(p1, 3, &mut s), TmgStatus::Ok);
        assert_eq!(take(s), "9");
        assert_eq!(tmg_curve_description(p1, &mut s), TmgStatus::Ok);
        assert_eq!(take(s), "p1");
        tmg_curve_free(p1);

        let mut c = ptr::null_mut();
        assert_eq!(
            tmg_curve_parse(cstr("p1").as_ptr(), 0, &mut c),
            TmgStatus::InvalidArgument
        );
        assert_eq!(
            tmg_curve_parse(cstr("elliptic:p=3,a=[0,0,0,0,0]").as_ptr(), 0, &mut c),
            TmgStatus::InvalidArgument
        );
        assert_eq!(
            tmg_curve_parse(cstr("weil:q=2").as_ptr(), 0, &mut c),
            TmgStatus::ParseError
        );
        assert!(c.is_null());
    }
}

#[test]
fn traces_and_series() {
    unsafe {
        let g = group("A1");
        let c = curve("p1", 2);
        let mut s = ptr::null_mut();
        assert_eq!(tmg_trace_total(g, c, &mut s), TmgStatus::Ok);
        assert_eq!(take(s), "8/3");
        assert_eq!(tmg_tamagawa_rhs(g, c, &mut s), TmgStatus::Ok);
        assert_eq!(take(s), "1/3");
        let mut identical = 0u8;
        assert_eq!(tmg_series_identity(g, c, 20, &mut identical), TmgStatus::Ok);
        assert_eq!(identical, 1);
        assert_eq!(
            tmg_series_identity(g, c, 10_000, &mut identical),
            TmgStatus::InvalidArgument
        );
        assert_eq!(
            tmg_trace_total(ptr::null(), c, &mut s),
            TmgStatus::NullPointer
        );
        tmg_curve_free(c);
        tmg_group_free(g);
    }
}

#[test]
fn verification_json_matches_cli() {
    unsafe {
        let mut s = ptr::null_mut();
        let status = tmg_verify_tamagawa_json(cstr("A1").as_ptr(), cstr("p1").as_ptr(), 3, &mut s);
        assert_eq!(status, TmgStatus::Ok);
        let json = take(s);
        let mut config =
            tamagawa_core::cli::RunConfig::new(tamagawa_core::cli::Command::VerifyTamagawa);
        config.group = Some("A1".into());
        config.curve = Some("p1".into());
        config.q = Some(3);
        config.format = tamagawa_core::cli::Format::Json;
        assert_eq!(json, tamagawa_core::cli::run(&config).stdout);
        assert!(json.contains("\"tamagawa_rhs\": \"1/16\""), "{json}");
        assert_eq!(last_error(), "");
    }
}

#[test]
fn last_error_is_thread_local() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            tmg_group_new(cstr("Q1").as_ptr(), &mut g),
            TmgStatus::ParseError
        );
        let here = last_error();
        assert!(!here.is_empty());
        let there = std::thread::spawn(last_error).join().unwrap();
        assert_eq!(there, "");
        assert_eq!(last_error(), here);
    }
}

fn target_dir() -> PathBuf {
    // .../target/<profile>/deps/c_api-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

/// Compiles a C client against the generated header and the static library.
#[test]
fn c_client_links_and_runs() {
    let header_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(header_dir.join("tamagawa.h").exists());
    let lib = target_dir().join("libtamagawa_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or {} missing", lib.display());
        return;
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("client.c");
    let bin = dir.join("client");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "tamagawa.h"

int main(void) {
    TmgGroup *g = NULL;
    TmgCurve *c = NULL;
    char *s = NULL;
    if (tmg_group_new("G2", &g) != TMG_STATUS_OK) return 10;
    if (tmg_curve_parse("p1", 2, &c) != TMG_STATUS_OK) return 11;
    if (tmg_group_chevalley_order(g, 2, &s) != TMG_STATUS_OK) return 12;
    printf("%s\n", s);
    tmg_string_free(s);
    if (tmg_tamagawa_rhs(g, c, &s) != TMG_STATUS_OK) return 13;
    printf("%s\n", s);
    tmg_string_free(s);
    if (tmg_group_new("E9", &g) != TMG_STATUS_INVALID_ARGUMENT) return 14;
    if (strlen(tmg_last_error()) == 0) return 15;
    tmg_curve_free(c);
    tmg_group_free(g);
    return 0;
}
"#,
    )
    .unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to compile");
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "C client exited with {:?}",
        out.status
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "12096");
    // q^{-dim G} * zeta(2) * zeta(6) on P^1/F_2
    assert_eq!(lines[1], "1/5859");
}
