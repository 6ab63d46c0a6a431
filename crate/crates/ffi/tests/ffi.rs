use std::ffi::{c_int, CStr, CString};
use std::process::Command;
use std::ptr;

use rpsp_ffi::*;

const TWO_AGENTS: &str = "kep 7 8 2 3 6\nagents 0 0 1 1 0 1 1\narc 0 1\narc 0 2\narc 1 0\narc 2 3\narc 3 0\narc 4 5\narc 5 6\narc 6 4\n";

fn parse(text: &str) -> Result<*mut RpspInstance, RpspStatus> {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    match unsafe { rpsp_instance_parse(c.as_ptr(), &mut out) } {
        RpspStatus::Ok => Ok(out),
        s => Err(s),
    }
}

fn last_error() -> String {
    let p = rpsp_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn parse_serialize_round_trip() {
    let text = "rpsp 4 2 2 2 2\nagents 0 0 1 1\nset 0 1\nset 2 3\n";
    let inst = parse(text).unwrap();
    unsafe {
        assert_eq!(rpsp_instance_num_sets(inst), 2);
        assert_eq!(rpsp_instance_num_elements(inst), 4);
        let mut s = ptr::null_mut();
        assert_eq!(rpsp_instance_serialize(inst, &mut s), RpspStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), text);
        rpsp_string_free(s);
        rpsp_instance_free(inst);
    }
}

#[test]
fn error_codes() {
    assert_eq!(parse("rpsp 1 0 1 x 0\n").unwrap_err(), RpspStatus::Parse);
    assert!(last_error().contains("line 1"));
    assert_eq!(
        parse("rpsp 2 1 1 1 0\nagents 0 0\nset 0 1\n").unwrap_err(),
        RpspStatus::InvalidInstance
    );
    let wide = format!("rpsp 64 0 1 1 0\nagents{}\n", " 0".repeat(64));
    assert_eq!(parse(&wide).unwrap_err(), RpspStatus::SizeLimit);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { rpsp_instance_parse(ptr::null(), &mut out) },
        RpspStatus::NullPointer
    );
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { rpsp_instance_parse(bad.as_ptr().cast(), &mut out) },
        RpspStatus::InvalidUtf8
    );
}

#[test]
fn solve_two_agent_kep() {
    let inst = parse(TWO_AGENTS).unwrap();
    unsafe {
        let mut res = ptr::null_mut();
        assert_eq!(rpsp_solve(inst, -1, RpspAlgo::Auto, &mut res), RpspStatus::Ok);
        assert_eq!(rpsp_result_is_yes(res), 0);
        assert_eq!(rpsp_result_witness_len(res), 0);
        rpsp_result_free(res);

        assert_eq!(rpsp_solve(inst, 0, RpspAlgo::Ke, &mut res), RpspStatus::Ok);
        assert_eq!(rpsp_result_is_yes(res), 1);
        let mut written = 0;
        let mut buf = [0usize; 1];
        assert_eq!(
            rpsp_result_witness(res, buf.as_mut_ptr(), 1, &mut written),
            RpspStatus::BufferTooSmall
        );
        assert_eq!(written, 2);
        let mut buf = [0usize; 4];
        assert_eq!(
            rpsp_result_witness(res, buf.as_mut_ptr(), 4, &mut written),
            RpspStatus::Ok
        );
        assert_eq!(&buf[..written], &[1, 2]);

        let mut ok: c_int = -1;
        assert_eq!(
            rpsp_verify(inst, buf.as_ptr(), written, 0, &mut ok),
            RpspStatus::Ok
        );
        assert_eq!(ok, 1);
        assert_eq!(
            rpsp_verify(inst, buf.as_ptr(), written, 1, &mut ok),
            RpspStatus::Ok
        );
        assert_eq!(ok, 0);
        let overlapping = [0usize, 1];
        assert_eq!(
            rpsp_verify(inst, overlapping.as_ptr(), 2, -1, &mut ok),
            RpspStatus::InvalidPacking
        );
        rpsp_result_free(res);

        assert_eq!(
            rpsp_solve(inst, 1, RpspAlgo::Fpt, &mut res),
            RpspStatus::InvalidParameter
        );
        assert_eq!(
            rpsp_solve(inst, -2, RpspAlgo::Auto, &mut res),
            RpspStatus::InvalidParameter
        );
        rpsp_instance_free(inst);
    }
}

#[test]
fn kernelize_handles() {
    let inst = parse("rpsp 6 3 2 2 2\nagents 0 1 0 1 0 1\nset 0 1\nset 2 3\nset 4 5\n").unwrap();
    unsafe {
        let mut yes = 0;
        let mut red = ptr::null_mut();
        assert_eq!(rpsp_kernelize(inst, 0, &mut yes, &mut red), RpspStatus::Ok);
        assert_eq!(yes, 1);
        assert!(red.is_null());
        rpsp_instance_free(inst);
    }
    let inst = parse("rpsp 4 2 2 2 3\nagents 0 1 0 1\nset 0 1\nset 1 2\n").unwrap();
    unsafe {
        let mut yes = 1;
        let mut red = ptr::null_mut();
        assert_eq!(rpsp_kernelize(inst, 1, &mut yes, &mut red), RpspStatus::Ok);
        assert_eq!(yes, 0);
        assert_eq!(rpsp_instance_num_sets(red), 2);
        rpsp_instance_free(red);
        rpsp_instance_free(inst);
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        rpsp_instance_free(ptr::null_mut());
        rpsp_result_free(ptr::null_mut());
        rpsp_string_free(ptr::null_mut());
        assert_eq!(rpsp_result_is_yes(ptr::null()), 0);
        assert_eq!(rpsp_instance_num_sets(ptr::null()), 0);
    }
}

#[test]
fn header_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/rpsp.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "rpsp_instance_parse",
        "rpsp_solve",
        "rpsp_result_witness",
        "rpsp_last_error_message",
        "RPSP_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        format!("#include \"{header}\"\nint main(void) {{ return rpsp_last_error_message() == 0; }}\n"),
    )
    .unwrap();
    match Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg(&src)
        .status()
    {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler found; skipping syntax check"),
    }
}
