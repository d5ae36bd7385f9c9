use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use kneser_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 256];
    unsafe {
        kneser_last_error(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

fn members(f: *const KneserFamily) -> Vec<Vec<u32>> {
    let (mut n, mut r) = (0, 0);
    unsafe {
        assert_eq!(kneser_family_params(f, &mut n, &mut r), KneserStatus::Ok);
        (0..kneser_family_len(f))
            .map(|i| {
                let mut buf = vec![0u32; r as usize];
                assert_eq!(
                    kneser_family_member(f, i, buf.as_mut_ptr(), buf.len()),
                    KneserStatus::Ok
                );
                buf
            })
            .collect()
    }
}

#[test]
fn family_round_trip_and_verify() {
    let sets = [1u32, 2, 3, 5, 1, 2, 6, 9];
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(kneser_family_new(9, 4, sets.as_ptr(), 2, &mut f), KneserStatus::Ok);
        assert_eq!(members(f), vec![vec![1, 2, 3, 5], vec![1, 2, 6, 9]]);
        let mut res = KneserVerifyResult::default();
        let mut viol = ptr::null_mut();
        assert_eq!(
            kneser_verify(f, KneserInvariant::TwoPacking, 0, &mut res, &mut viol),
            KneserStatus::Ok
        );
        assert!(res.valid);
        assert_eq!(kneser_family_len(viol), 0);
        kneser_family_free(viol);
        kneser_family_free(f);
    }
}

#[test]
fn invalid_packing_reports_pair() {
    let sets = [1u32, 2, 3, 4, 5, 6, 7, 8];
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(kneser_family_new(9, 4, sets.as_ptr(), 2, &mut f), KneserStatus::Ok);
        let mut res = KneserVerifyResult::default();
        let mut viol = ptr::null_mut();
        kneser_verify(f, KneserInvariant::TwoPacking, 0, &mut res, &mut viol);
        assert!(!res.valid);
        assert_eq!(kneser_family_len(viol), 2);
        kneser_family_free(viol);
        kneser_family_free(f);
    }
}

#[test]
fn errors_set_status_and_message() {
    let bad = [1u32, 2, 3, 10];
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(
            kneser_family_new(9, 4, bad.as_ptr(), 1, &mut f),
            KneserStatus::InvalidFamily
        );
        assert!(f.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(kneser_family_new(5, 4, ptr::null(), 0, &mut f), KneserStatus::Parameter);
        assert_eq!(
            kneser_family_new(9, 4, ptr::null(), 1, &mut f),
            KneserStatus::NullPointer
        );
        assert_eq!(
            kneser_family_new(9, 4, bad.as_ptr(), 1, ptr::null_mut()),
            KneserStatus::NullPointer
        );
        let name = CString::new("no_such_thing").unwrap();
        assert_eq!(
            kneser_construct(name.as_ptr(), 0, 9, 0, 3, 0, ptr::null(), &mut f),
            KneserStatus::Parameter
        );
        let mut out = 0;
        assert_eq!(kneser_threshold_prediction(9, 3, &mut out), KneserStatus::Ok);
        assert_eq!(kneser_family_len(ptr::null()), 0);
        kneser_family_free(ptr::null_mut());
    }
}

#[test]
fn construct_and_solve() {
    let name = CString::new("rho3").unwrap();
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(
            kneser_construct(name.as_ptr(), 0, 10, 0, 3, 0, ptr::null(), &mut f),
            KneserStatus::Ok
        );
        assert_eq!(kneser_family_len(f), 3);
        let mut res = KneserVerifyResult::default();
        kneser_verify(f, KneserInvariant::TwoPacking, 0, &mut res, ptr::null_mut());
        assert!(res.valid);
        kneser_family_free(f);

        let mut out = std::mem::zeroed::<KneserSolveOutcome>();
        let mut w = ptr::null_mut();
        assert_eq!(
            kneser_solve(KneserInvariant::GammaK, 5, 2, 2, 30.0, 1, &mut out, &mut w),
            KneserStatus::Ok
        );
        assert_eq!(out.status, KneserSolveStatus::Optimal);
        assert_eq!(out.value, 4);
        assert_eq!(kneser_family_len(w), 4);
        kneser_family_free(w);

        assert_eq!(
            kneser_solve(KneserInvariant::GammaXkt, 4, 2, 2, 30.0, 1, &mut out, &mut w),
            KneserStatus::Ok
        );
        assert_eq!(out.status, KneserSolveStatus::Undefined);
        assert!(w.is_null());
        assert_eq!(
            kneser_solve(KneserInvariant::GammaK, 5, 2, 2, -1.0, 1, &mut out, &mut w),
            KneserStatus::Parameter
        );
    }
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(kneser_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn c_smoke_program() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = manifest.join("../../target/debug");
    let lib = target.join("libkneser_ffi.a");
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let exe = std::env::temp_dir().join(format!("kneser_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "smoke exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
        {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
