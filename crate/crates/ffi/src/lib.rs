//! C ABI over the strip operator and the disc family.
//!
//! Every function returns an [`SbStatus`]. Objects are opaque handles created
//! by `*_new` and released by the matching `*_free`. Complex samples cross the
//! boundary as arrays of [`SbComplex`] in grid node order. After a failure,
//! [`sb_last_error`] copies a description of the error for the calling thread.

use num_complex::Complex64;
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use strip_bergman::disc::DiscFamily;
use strip_bergman::geometry::{tangent_centers, GridFunction, StripGrid, WeightRule};
use strip_bergman::{build_strip_grid, Error, Interp, PiOperator};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Parameter = 3,
    GridMismatch = 4,
    IllConditioned = 5,
    Numerical = 6,
    TooLarge = 7,
    Config = 8,
    Io = 9,
    Panic = 10,
}

/// Interpolation along `x`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbInterp {
    Spectral = 0,
    Cubic = 1,
}

/// A complex number laid out as two doubles.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbComplex {
    pub re: f64,
    pub im: f64,
}

/// Strip grid handle.
pub struct SbGrid(Arc<StripGrid>);

/// Discretised `π` handle.
pub struct SbPi(PiOperator);

/// Disc family handle.
pub struct SbDisc(DiscFamily);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SbStatus {
    match e {
        Error::Domain(_) => SbStatus::Domain,
        Error::Parameter(_) => SbStatus::Parameter,
        Error::GridMismatch(_) => SbStatus::GridMismatch,
        Error::IllConditioned { .. } => SbStatus::IllConditioned,
        Error::Numerical(_) => SbStatus::Numerical,
        Error::TooLarge { .. } => SbStatus::TooLarge,
        Error::Config(_) => SbStatus::Config,
        Error::Io(_) => SbStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> SbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SbStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            SbStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            SbStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn write<T>(p: *mut T, v: T, what: &'static str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    p.write(v);
    Ok(())
}

unsafe fn slice_in<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_out<'a, T>(p: *mut T, len: usize, what: &'static str) -> Result<&'a mut [T], Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

fn check_len(got: usize, want: usize) -> Result<(), Fail> {
    if got != want {
        return Err(Fail::Lib(Error::GridMismatch(format!(
            "buffer holds {got} values, grid has {want} nodes"
        ))));
    }
    Ok(())
}

fn to_c(z: Complex64) -> SbComplex {
    SbComplex { re: z.re, im: z.im }
}

fn from_c(z: &SbComplex) -> Complex64 {
    Complex64::new(z.re, z.im)
}

/// Copy the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len` bytes). Returns the full message length, or 0 if no
/// error has been recorded.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn sb_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Centres `t1 <= t2` of the two unit circles through `z` in the strip.
///
/// # Safety
/// `t1` and `t2` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sb_tangent_centers(z: SbComplex, t1: *mut f64, t2: *mut f64) -> SbStatus {
    guard(|| {
        let (a, b) = tangent_centers(from_c(&z))?;
        write(t1, a, "t1")?;
        write(t2, b, "t2")
    })
}

/// Build an `nx × ny` grid on `[−m−pad, m+pad] × (−1, 1)` with weight exponent `alpha`.
///
/// # Safety
/// `out` must be valid for writes. The handle must be released with [`sb_grid_free`].
#[no_mangle]
pub unsafe extern "C" fn sb_grid_new(
    m: f64,
    pad: f64,
    nx: usize,
    ny: usize,
    alpha: f64,
    out: *mut *mut SbGrid,
) -> SbStatus {
    guard(|| {
        let g = build_strip_grid(m, pad, nx, ny, alpha)?;
        write(out, Box::into_raw(Box::new(SbGrid(Arc::new(g)))), "out")
    })
}

/// Release a grid. Null is ignored.
///
/// # Safety
/// `grid` must come from [`sb_grid_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sb_grid_free(grid: *mut SbGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Number of grid nodes (`nx · ny`).
///
/// # Safety
/// `grid` must be a live handle and `len` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sb_grid_len(grid: *const SbGrid, len: *mut usize) -> SbStatus {
    guard(|| write(len, deref(grid, "grid")?.0.len(), "len"))
}

/// Node coordinates in grid order (row `j` major, `i` fastest), plus the
/// quadrature weight of each node.
///
/// # Safety
/// `nodes` and `weights` must hold `len` elements; `weights` may be null.
#[no_mangle]
pub unsafe extern "C" fn sb_grid_nodes(
    grid: *const SbGrid,
    nodes: *mut SbComplex,
    weights: *mut f64,
    len: usize,
) -> SbStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.0;
        check_len(len, g.len())?;
        let out = slice_out(nodes, len, "nodes")?;
        for (k, z) in out.iter_mut().enumerate() {
            *z = to_c(g.point(k));
        }
        if !weights.is_null() {
            slice_out(weights, len, "weights")?.copy_from_slice(&g.quad_weights);
        }
        Ok(())
    })
}

/// Whether the row weights use the piecewise-linear fallback rule.
///
/// # Safety
/// `grid` must be a live handle and `fallback` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sb_grid_uses_fallback(grid: *const SbGrid, fallback: *mut bool) -> SbStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.0;
        write(fallback, g.weight_rule == WeightRule::PiecewiseLinear, "fallback")
    })
}

/// Weighted `L²` norm of grid values.
///
/// # Safety
/// `values` must hold `len` elements and `norm` be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sb_grid_norm(
    grid: *const SbGrid,
    values: *const SbComplex,
    len: usize,
    norm: *mut f64,
) -> SbStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.0;
        check_len(len, g.len())?;
        let v = slice_in(values, len, "values")?.iter().map(from_c).collect();
        let f = GridFunction::new(g.clone(), v)?;
        write(norm, f.norm(), "norm")
    })
}

/// Assemble `π` with Szegő degree `n` (< ny) on a grid. The operator keeps its
/// own reference to the grid.
///
/// # Safety
/// `grid` must be a live handle and `out` valid for writes. Release with [`sb_pi_free`].
#[no_mangle]
pub unsafe extern "C" fn sb_pi_new(
    grid: *const SbGrid,
    n: usize,
    interp: SbInterp,
    out: *mut *mut SbPi,
) -> SbStatus {
    guard(|| {
        let g = deref(grid, "grid")?.0.clone();
        let interp = match interp {
            SbInterp::Spectral => Interp::Spectral,
            SbInterp::Cubic => Interp::Cubic,
        };
        let op = PiOperator::new(g, n, interp)?;
        write(out, Box::into_raw(Box::new(SbPi(op))), "out")
    })
}

/// Release an operator. Null is ignored.
///
/// # Safety
/// `op` must come from [`sb_pi_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sb_pi_free(op: *mut SbPi) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// `output = π input` on grid values. The buffers may not overlap.
///
/// # Safety
/// `input` and `output` must each hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn sb_pi_apply(
    op: *const SbPi,
    input: *const SbComplex,
    output: *mut SbComplex,
    len: usize,
) -> SbStatus {
    guard(|| {
        let op = &deref(op, "op")?.0;
        check_len(len, op.grid.len())?;
        let v: Vec<Complex64> = slice_in(input, len, "input")?.iter().map(from_c).collect();
        let r = op.apply_values(&v);
        for (o, z) in slice_out(output, len, "output")?.iter_mut().zip(r) {
            *o = to_c(z);
        }
        Ok(())
    })
}

/// Relative asymmetry of `π` in the grid metric.
///
/// # Safety
/// `op` must be a live handle and `defect` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sb_pi_asymmetry(op: *const SbPi, defect: *mut f64) -> SbStatus {
    guard(|| write(defect, deref(op, "op")?.0.asymmetry_defect(), "defect"))
}

/// Build the disc family for `0 <= eps < 1` on an `ns × npsi` grid.
///
/// # Safety
/// `out` must be valid for writes. Release with [`sb_disc_free`].
#[no_mangle]
pub unsafe extern "C" fn sb_disc_new(eps: f64, ns: usize, npsi: usize, out: *mut *mut SbDisc) -> SbStatus {
    guard(|| {
        let fam = DiscFamily::new(eps, ns, npsi)?;
        write(out, Box::into_raw(Box::new(SbDisc(fam))), "out")
    })
}

/// Release a disc family. Null is ignored.
///
/// # Safety
/// `disc` must come from [`sb_disc_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sb_disc_free(disc: *mut SbDisc) {
    if !disc.is_null() {
        drop(Box::from_raw(disc));
    }
}

/// Number of disc grid nodes.
///
/// # Safety
/// `disc` must be a live handle and `len` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sb_disc_len(disc: *const SbDisc, len: *mut usize) -> SbStatus {
    guard(|| write(len, deref(disc, "disc")?.0.len(), "len"))
}

/// Node positions `ζ` and measure weights of the disc grid.
///
/// # Safety
/// `nodes` and `weights` must hold `len` elements; `weights` may be null.
#[no_mangle]
pub unsafe extern "C" fn sb_disc_nodes(
    disc: *const SbDisc,
    nodes: *mut SbComplex,
    weights: *mut f64,
    len: usize,
) -> SbStatus {
    guard(|| {
        let fam = &deref(disc, "disc")?.0;
        check_len(len, fam.len())?;
        for (o, z) in slice_out(nodes, len, "nodes")?.iter_mut().zip(&fam.zeta) {
            *o = to_c(*z);
        }
        if !weights.is_null() {
            slice_out(weights, len, "weights")?.copy_from_slice(&fam.weights);
        }
        Ok(())
    })
}

/// `output = T input` for the averaged disc projection.
///
/// # Safety
/// `input` and `output` must each hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn sb_disc_apply(
    disc: *const SbDisc,
    input: *const SbComplex,
    output: *mut SbComplex,
    len: usize,
) -> SbStatus {
    guard(|| {
        let fam = &deref(disc, "disc")?.0;
        check_len(len, fam.len())?;
        let v: Vec<Complex64> = slice_in(input, len, "input")?.iter().map(from_c).collect();
        let r = fam.apply_values(&v);
        for (o, z) in slice_out(output, len, "output")?.iter_mut().zip(r) {
            *o = to_c(z);
        }
        Ok(())
    })
}
