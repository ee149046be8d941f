//! C ABI over `incentive-core`.
//!
//! Every fallible call returns an [`IncStatus`]; results go through out
//! pointers. Closures and trees are opaque handles released with their
//! `_free` function. Integer sets are passed as `(const int64_t *, size_t)`;
//! a null pointer is accepted when the length is 0. The message for the most
//! recent failure on the calling thread is available from
//! [`inc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use incentive_core::{
    closure_membership, closure_msg, enumerate_tree, is_admissible, is_incentive, ClosureKind,
    ClosureResult, EnumerationBound, Error, GenSet, IncentiveSpec, IncentiveTree, SequenceModel,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    GcdNotOne = 3,
    NotAdmissible = 4,
    InvalidSequence = 5,
    InvalidRemoval = 6,
    RootMissesX = 7,
    BoundTooLarge = 8,
    InfiniteFamily = 9,
    IterationLimit = 10,
    Internal = 11,
    BufferTooSmall = 12,
    OutOfRange = 13,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncBoundKind {
    MaxFrobenius = 0,
    MaxGenus = 1,
    MaxDepth = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncClosureKind {
    Numerical = 0,
    MultipleOf = 1,
    Trivial = 2,
}

/// Opaque handle to the smallest incentive containing a set.
pub struct IncClosure(ClosureResult);

/// Opaque handle to an enumerated tree.
pub struct IncTree(IncentiveTree);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> IncStatus {
    match e {
        Error::Domain(_) => IncStatus::Domain,
        Error::GcdNotOne(_) => IncStatus::GcdNotOne,
        Error::NotAdmissible { .. } => IncStatus::NotAdmissible,
        Error::InvalidSequence(_) => IncStatus::InvalidSequence,
        Error::InvalidRemoval { .. } => IncStatus::InvalidRemoval,
        Error::RootMissesX(_) => IncStatus::RootMissesX,
        Error::BoundTooLarge { .. } => IncStatus::BoundTooLarge,
        Error::InfiniteFamily => IncStatus::InfiniteFamily,
        Error::IterationLimit(_) => IncStatus::IterationLimit,
        Error::Internal(_) => IncStatus::Internal,
    }
}

enum Fail {
    Core(Error),
    Status(IncStatus, &'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

/// Runs `f`, mapping errors and panics onto status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> IncStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IncStatus::Ok,
        Ok(Err(Fail::Core(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_last_error(msg);
            s
        }
        Err(_) => {
            set_last_error("panic inside incentive-ffi");
            IncStatus::Internal
        }
    }
}

/// # Safety
/// `p` must be null with `len == 0`, or point to `len` readable values.
unsafe fn slice<'a>(p: *const i64, len: usize) -> Result<&'a [i64], Fail> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(Fail::Status(
            IncStatus::NullPointer,
            "null array with non-zero length",
        ))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Status(IncStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Copies `values` into `buf`; `*out_len` always receives the full length.
///
/// # Safety
/// `buf` must be valid for `cap` writes (or null with `cap == 0`).
unsafe fn write_array(
    values: &[i64],
    buf: *mut i64,
    cap: usize,
    out_len: *mut usize,
) -> Result<(), Fail> {
    write(out_len, values.len())?;
    if cap < values.len() {
        return Err(Fail::Status(IncStatus::BufferTooSmall, "buffer too small"));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(Fail::Status(IncStatus::NullPointer, "null output buffer"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

fn spec(c: &[i64]) -> Result<IncentiveSpec, Fail> {
    Ok(IncentiveSpec::new(c.iter().copied())?)
}

/// Message describing the last failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn inc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `c` must hold `c_len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inc_theta(c: *const i64, c_len: usize, out: *mut i64) -> IncStatus {
    guard(|| {
        let c = spec(slice(c, c_len)?)?;
        write(out, c.theta())
    })
}

/// # Safety
/// Array arguments must hold the stated number of values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inc_is_admissible(
    x: *const i64,
    x_len: usize,
    c: *const i64,
    c_len: usize,
    out: *mut bool,
) -> IncStatus {
    guard(|| {
        let c = spec(slice(c, c_len)?)?;
        write(out, is_admissible(slice(x, x_len)?, &c))
    })
}

/// Whether the monoid generated by `gens` is a C-incentive.
///
/// # Safety
/// Array arguments must hold the stated number of values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inc_is_incentive(
    gens: *const i64,
    gens_len: usize,
    c: *const i64,
    c_len: usize,
    out: *mut bool,
) -> IncStatus {
    guard(|| {
        let c = spec(slice(c, c_len)?)?;
        let g = GenSet::new(slice(gens, gens_len)?.iter().copied())?.minimal();
        write(out, is_incentive(&g, &c))
    })
}

/// Computes the smallest C-incentive containing `x`. On success `*out`
/// receives a handle to release with [`inc_closure_free`].
///
/// # Safety
/// Array arguments must hold the stated number of values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inc_closure_new(
    x: *const i64,
    x_len: usize,
    c: *const i64,
    c_len: usize,
    out: *mut *mut IncClosure,
) -> IncStatus {
    guard(|| {
        let c = spec(slice(c, c_len)?)?;
        let r = closure_msg(slice(x, x_len)?, &c)?;
        write(out, Box::into_raw(Box::new(IncClosure(r))))
    })
}

/// # Safety
/// `handle` must come from [`inc_closure_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn inc_closure_free(handle: *mut IncClosure) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `handle` must be a live closure handle.
#[no_mangle]
pub unsafe extern "C" fn inc_closure_kind(handle: *const IncClosure) -> IncClosureKind {
    match handle.as_ref().map(|h| h.0.kind) {
        Some(ClosureKind::Numerical) => IncClosureKind::Numerical,
        Some(ClosureKind::MultipleOf(_)) => IncClosureKind::MultipleOf,
        Some(ClosureKind::Trivial) | None => IncClosureKind::Trivial,
    }
}

/// The `d` with closure `= d·S`; 1 for numerical and trivial closures.
///
/// # Safety
/// `handle` must be a live closure handle.
#[no_mangle]
pub unsafe extern "C" fn inc_closure_divisor(handle: *const IncClosure) -> i64 {
    handle.as_ref().map_or(1, |h| h.0.divisor())
}

/// Copies the minimal generators (at full scale). `*out_len` receives the
/// count even when the buffer is too small.
///
/// # Safety
/// `handle` must be live; `buf` must be valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn inc_closure_msg(
    handle: *const IncClosure,
    buf: *mut i64,
    cap: usize,
    out_len: *mut usize,
) -> IncStatus {
    guard(|| {
        let h = handle
            .as_ref()
            .ok_or(Fail::Status(IncStatus::NullPointer, "null closure handle"))?;
        write_array(h.0.generators.generators(), buf, cap, out_len)
    })
}

/// Frobenius number and genus of the reduced numerical semigroup.
///
/// # Safety
/// `handle` must be live; out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn inc_closure_stats(
    handle: *const IncClosure,
    frobenius: *mut i64,
    genus: *mut usize,
) -> IncStatus {
    guard(|| {
        let h = handle
            .as_ref()
            .ok_or(Fail::Status(IncStatus::NullPointer, "null closure handle"))?;
        let s = h.0.semigroup.as_ref().ok_or(Fail::Status(
            IncStatus::Domain,
            "trivial closure has no Frobenius number",
        ))?;
        write(frobenius, s.frobenius())?;
        write(genus, s.genus())
    })
}

/// # Safety
/// `handle` must be a live closure handle.
#[no_mangle]
pub unsafe extern "C" fn inc_closure_contains(handle: *const IncClosure, n: i64) -> bool {
    handle.as_ref().is_some_and(|h| h.0.contains(n))
}

/// Membership of `n` in the closure of `x`, computed without generators.
///
/// # Safety
/// Array arguments must hold the stated number of values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inc_closure_membership(
    x: *const i64,
    x_len: usize,
    c: *const i64,
    c_len: usize,
    n: i64,
    out: *mut bool,
) -> IncStatus {
    guard(|| {
        let c = spec(slice(c, c_len)?)?;
        write(out, closure_membership(slice(x, x_len)?, &c, n)?)
    })
}

/// # Safety
/// Array arguments must hold the stated number of values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inc_mab_member(
    a: *const i64,
    a_len: usize,
    b: *const i64,
    b_len: usize,
    n: i64,
    out: *mut bool,
) -> IncStatus {
    guard(|| {
        let model = SequenceModel::new(
            slice(a, a_len)?.iter().copied(),
            slice(b, b_len)?.iter().copied(),
        )?;
        write(out, model.contains(n))
    })
}

/// # Safety
/// Array arguments must hold the stated number of values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inc_mab_invoice(
    a: *const i64,
    a_len: usize,
    b: *const i64,
    b_len: usize,
    seq: *const i64,
    seq_len: usize,
    out: *mut i64,
) -> IncStatus {
    guard(|| {
        let model = SequenceModel::new(
            slice(a, a_len)?.iter().copied(),
            slice(b, b_len)?.iter().copied(),
        )?;
        write(out, model.invoice(slice(seq, seq_len)?)?)
    })
}

/// Enumerates the tree of numerical C-incentives, restricted to those
/// containing `x` when `has_x` is set.
///
/// # Safety
/// Array arguments must hold the stated number of values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inc_tree_new(
    c: *const i64,
    c_len: usize,
    has_x: bool,
    x: *const i64,
    x_len: usize,
    bound_kind: IncBoundKind,
    bound_value: u64,
    out: *mut *mut IncTree,
) -> IncStatus {
    guard(|| {
        let c = spec(slice(c, c_len)?)?;
        let x = if has_x { Some(slice(x, x_len)?) } else { None };
        let bound = match bound_kind {
            IncBoundKind::MaxFrobenius => EnumerationBound::MaxFrobenius(bound_value),
            IncBoundKind::MaxGenus => EnumerationBound::MaxGenus(bound_value),
            IncBoundKind::MaxDepth => EnumerationBound::MaxDepth(bound_value),
        };
        let tree = enumerate_tree(&c, x, bound)?;
        write(out, Box::into_raw(Box::new(IncTree(tree))))
    })
}

/// # Safety
/// `handle` must come from [`inc_tree_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn inc_tree_free(handle: *mut IncTree) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `handle` must be a live tree handle.
#[no_mangle]
pub unsafe extern "C" fn inc_tree_node_count(handle: *const IncTree) -> usize {
    handle.as_ref().map_or(0, |t| t.0.node_count())
}

/// Whether the bound cut off part of the tree.
///
/// # Safety
/// `handle` must be a live tree handle.
#[no_mangle]
pub unsafe extern "C" fn inc_tree_truncated(handle: *const IncTree) -> bool {
    handle.as_ref().is_some_and(|t| t.0.truncated)
}

unsafe fn node<'a>(
    handle: *const IncTree,
    index: usize,
) -> Result<&'a incentive_core::TreeNode, Fail> {
    let t = handle
        .as_ref()
        .ok_or(Fail::Status(IncStatus::NullPointer, "null tree handle"))?;
    t.0.nodes.get(index).ok_or(Fail::Status(
        IncStatus::OutOfRange,
        "node index out of range",
    ))
}

/// # Safety
/// `handle` must be live; `buf` must be valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn inc_tree_node_msg(
    handle: *const IncTree,
    index: usize,
    buf: *mut i64,
    cap: usize,
    out_len: *mut usize,
) -> IncStatus {
    guard(|| {
        let n = node(handle, index)?;
        write_array(n.semigroup.msg().as_slice(), buf, cap, out_len)
    })
}

/// Parent id and removed generator of a node; both −1 for the root.
///
/// # Safety
/// `handle` must be live; out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn inc_tree_node_edge(
    handle: *const IncTree,
    index: usize,
    parent: *mut i64,
    removed_generator: *mut i64,
) -> IncStatus {
    guard(|| {
        let n = node(handle, index)?;
        write(parent, n.parent.map_or(-1, |p| p as i64))?;
        write(removed_generator, n.removed_generator.unwrap_or(-1))
    })
}

/// # Safety
/// `handle` must be live; out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn inc_tree_node_stats(
    handle: *const IncTree,
    index: usize,
    frobenius: *mut i64,
    genus: *mut usize,
    depth: *mut usize,
) -> IncStatus {
    guard(|| {
        let n = node(handle, index)?;
        write(frobenius, n.semigroup.frobenius())?;
        write(genus, n.semigroup.genus())?;
        write(depth, n.depth)
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// The tree as JSON. Release with [`inc_string_free`]; null on failure.
///
/// # Safety
/// `handle` must be a live tree handle.
#[no_mangle]
pub unsafe extern "C" fn inc_tree_to_json(handle: *const IncTree) -> *mut c_char {
    handle
        .as_ref()
        .map_or(ptr::null_mut(), |t| into_c_string(t.0.to_json()))
}

/// The tree in Graphviz DOT. Release with [`inc_string_free`].
///
/// # Safety
/// `handle` must be a live tree handle.
#[no_mangle]
pub unsafe extern "C" fn inc_tree_to_dot(handle: *const IncTree) -> *mut c_char {
    handle
        .as_ref()
        .map_or(ptr::null_mut(), |t| into_c_string(t.0.to_dot()))
}

/// # Safety
/// `s` must come from one of the string-returning functions and not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn inc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
