//! C ABI over `qcap`.
//!
//! Every fallible function returns a [`QcapStatus`] and writes its result
//! through an out pointer. On failure a message is available from
//! [`qcap_last_error`] on the calling thread. Codes are opaque handles that
//! must be released with [`qcap_code_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qcap::capacity::CapacityResult;
use qcap::{ChannelAssignment, Error, PauliChannel, StabilizerCode};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidCode = 3,
    TooLarge = 4,
    NoThreshold = 5,
    Numerical = 6,
    Panic = 7,
}

/// Capacity of a code or scheme, mirroring the Rust result type.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QcapCapacity {
    pub q_ss: f64,
    pub s_x2: f64,
    pub h_syndrome: f64,
    pub h_joint: f64,
    pub p: usize,
}

impl From<CapacityResult> for QcapCapacity {
    fn from(r: CapacityResult) -> Self {
        Self {
            q_ss: r.q_ss,
            s_x2: r.s_x2,
            h_syndrome: r.h_syndrome,
            h_joint: r.h_joint,
            p: r.p,
        }
    }
}

/// Opaque stabilizer code handle.
pub struct QcapCode(StabilizerCode);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> QcapStatus {
    match e {
        Error::InvalidCode(_)
        | Error::InvalidPauliString(..)
        | Error::CodeDescription(_)
        | Error::SizeMismatch { .. } => QcapStatus::InvalidCode,
        Error::EnumerationCap { .. } | Error::TupleLimit(_) | Error::QubitCount(_) => {
            QcapStatus::TooLarge
        }
        Error::NoSignChange { .. } => QcapStatus::NoThreshold,
        Error::Unnormalized(_) => QcapStatus::Numerical,
        _ => QcapStatus::InvalidArgument,
    }
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), (QcapStatus, String)>) -> QcapStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            QcapStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            QcapStatus::Panic
        }
    }
}

fn lift<T>(r: qcap::Result<T>) -> Result<T, (QcapStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (QcapStatus, String) {
    (QcapStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (QcapStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `code` must be null or a live handle from this library.
unsafe fn code_ref<'a>(code: *const QcapCode) -> Result<&'a StabilizerCode, (QcapStatus, String)> {
    code.as_ref().map(|c| &c.0).ok_or_else(|| null("code"))
}

unsafe fn new_code(r: qcap::Result<StabilizerCode>, out: *mut *mut QcapCode) -> QcapStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let code = lift(r)?;
        out.write(Box::into_raw(Box::new(QcapCode(code))));
        Ok(())
    })
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn qcap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qcap_code_cat(p: usize, out: *mut *mut QcapCode) -> QcapStatus {
    new_code(qcap::cat_code(p), out)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qcap_code_rotated_cat(p: usize, out: *mut *mut QcapCode) -> QcapStatus {
    new_code(qcap::rotated_cat_code(p), out)
}

/// Parses a JSON code description
/// `{"n": .., "generators": [..], "logical_x": .., "logical_z": ..}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qcap_code_from_json(
    json: *const c_char,
    out: *mut *mut QcapCode,
) -> QcapStatus {
    if json.is_null() {
        return guard(|| Err(null("json")));
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => return guard(|| Err((QcapStatus::InvalidArgument, "json is not UTF-8".into()))),
    };
    new_code(StabilizerCode::from_json(text), out)
}

/// # Safety
/// `code` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qcap_code_free(code: *mut QcapCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Number of physical qubits, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcap_code_n(code: *const QcapCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.n())
}

/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qcap_qss_depolarizing(
    code: *const QcapCode,
    f: f64,
    out: *mut QcapCapacity,
) -> QcapStatus {
    guard(|| {
        let code = code_ref(code)?;
        let assignment = lift(ChannelAssignment::depolarizing(f, code.n()))?;
        let dist = lift(qcap::joint_distribution(code, &assignment))?;
        write_out(out, lift(qcap::q_ss(&dist))?.into())
    })
}

/// Capacity under the Pauli channel `probs = {pI, pX, pY, pZ}`.
///
/// # Safety
/// `code` must be a live handle, `probs` must point to four doubles and
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qcap_qss_pauli(
    code: *const QcapCode,
    probs: *const f64,
    out: *mut QcapCapacity,
) -> QcapStatus {
    guard(|| {
        let code = code_ref(code)?;
        if probs.is_null() {
            return Err(null("probs"));
        }
        let channel = lift(PauliChannel::new(*probs.cast::<[f64; 4]>()))?;
        let dist = lift(qcap::joint_distribution(
            code,
            &ChannelAssignment::uniform(channel, code.n()),
        ))?;
        let r = lift(qcap::q_ss(&dist))?;
        write_out(out, r.into())
    })
}

/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qcap_coherent_information(
    code: *const QcapCode,
    f: f64,
    out: *mut f64,
) -> QcapStatus {
    guard(|| {
        let code = code_ref(code)?;
        let assignment = lift(ChannelAssignment::depolarizing(f, code.n()))?;
        let dist = lift(qcap::joint_distribution(code, &assignment))?;
        write_out(out, lift(qcap::coherent_information(&dist))?)
    })
}

/// Closed-form capacity of `cat(p)`; any `p >= 1`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qcap_cat_qss(p: usize, f: f64, out: *mut QcapCapacity) -> QcapStatus {
    guard(|| write_out(out, lift(qcap::cat_qss(p, f))?.into()))
}

/// `1 - H(f, (1-f)/3, (1-f)/3, (1-f)/3)`.
#[no_mangle]
pub extern "C" fn qcap_hashing_capacity(f: f64) -> f64 {
    qcap::hashing_capacity(f)
}

#[no_mangle]
pub extern "C" fn qcap_asymptotic_threshold() -> f64 {
    qcap::asymptotic_threshold()
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qcap_cat_threshold(p: usize, out: *mut f64) -> QcapStatus {
    guard(|| write_out(out, lift(qcap::cat::cat_threshold(p))?))
}

/// Capacity of `count` nested codes, innermost first.
///
/// # Safety
/// `levels` must point to `count` live handles and `out` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn qcap_concatenated_qss(
    levels: *const *const QcapCode,
    count: usize,
    f: f64,
    out: *mut QcapCapacity,
) -> QcapStatus {
    guard(|| {
        if levels.is_null() && count > 0 {
            return Err(null("levels"));
        }
        let handles = if count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(levels, count)
        };
        let codes = handles
            .iter()
            .map(|&h| code_ref(h).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        write_out(out, lift(qcap::concatenated_qss(&codes, f))?.into())
    })
}

/// Threshold of a rotated `cat(5)` inner code under a `cat(5)` outer code.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qcap_double_cat_threshold(out: *mut f64) -> QcapStatus {
    guard(|| write_out(out, lift(qcap::double_cat_threshold())?))
}
