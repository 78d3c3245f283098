//! C ABI over `bookspace`.
//!
//! Lattices and points are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`BksStatus`]; on failure the
//! message is available from [`bks_last_error`] on the same thread. Strings
//! returned through `out` parameters are owned by the caller and released
//! with [`bks_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bookspace::audit::{audit_book, check_lattice};
use bookspace::export::book_to_off;
use bookspace::json::{complex_to_json, lattice_to_json, parse_lattice, parse_point, point_to_json, PointForm};
use bookspace::realization::{level_generator, sample_point};
use bookspace::{
    join_points, meet_points, order_complex, phi, rational, sup_distance, ElementRef, Error, FiniteLattice,
    RealizationPoint, SublatticeKind,
};

/// Result codes shared by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BksStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotALattice = 4,
    CyclicCovers = 5,
    InvalidParams = 6,
    NotAdmissible = 7,
    InvalidPoint = 8,
    LatticeMismatch = 9,
    NotPure = 10,
    UnsupportedDimension = 11,
    NotABook = 12,
    UnknownLabel = 13,
    OutOfRange = 14,
    BufferTooSmall = 15,
    Panic = 16,
}

impl From<&Error> for BksStatus {
    fn from(err: &Error) -> Self {
        match err {
            Error::NotALattice(..) => BksStatus::NotALattice,
            Error::CyclicCovers => BksStatus::CyclicCovers,
            Error::DuplicateLabel(_) | Error::EmptyLattice | Error::InvalidParams(_) => BksStatus::InvalidParams,
            Error::UnknownLabel(_) => BksStatus::UnknownLabel,
            Error::NotAdmissible(_) => BksStatus::NotAdmissible,
            Error::InvalidPoint(_) => BksStatus::InvalidPoint,
            Error::LatticeMismatch => BksStatus::LatticeMismatch,
            Error::NotPure(..) => BksStatus::NotPure,
            Error::InvalidComplex(_) | Error::Parse(_) => BksStatus::Parse,
            Error::UnsupportedDimension(_) => BksStatus::UnsupportedDimension,
            Error::NotABook => BksStatus::NotABook,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BksSublattice {
    N5 = 0,
    M3 = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BksPointForm {
    Barycentric = 0,
    Function = 1,
}

/// Opaque lattice handle.
pub struct BksLattice {
    inner: FiniteLattice,
}

/// Opaque realization point handle, tied to the lattice it was made with.
pub struct BksPoint {
    inner: RealizationPoint,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(BksStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure(BksStatus::from(&err), err.to_string())
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> BksStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            BksStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            BksStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure(BksStatus::NullArgument, format!("`{name}` is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(BksStatus::InvalidUtf8, format!("`{name}` is not UTF-8")))
}

unsafe fn lattice_arg<'a>(p: *const BksLattice) -> Result<&'a FiniteLattice, Failure> {
    p.as_ref().map(|l| &l.inner).ok_or_else(|| null("lattice"))
}

unsafe fn point_arg<'a>(p: *const BksPoint, name: &str) -> Result<&'a RealizationPoint, Failure> {
    p.as_ref().map(|pt| &pt.inner).ok_or_else(|| null(name))
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let c = CString::new(text).map_err(|_| Failure(BksStatus::Parse, "string contains NUL".into()))?;
    write(out, c.into_raw(), "out")
}

fn element(lattice: &FiniteLattice, index: usize) -> Result<ElementRef, Failure> {
    lattice.element_at(index).ok_or_else(|| {
        Failure(
            BksStatus::OutOfRange,
            format!("element index {index} out of range for {} elements", lattice.len()),
        )
    })
}

fn boxed_lattice(inner: FiniteLattice) -> *mut BksLattice {
    Box::into_raw(Box::new(BksLattice { inner }))
}

fn boxed_point(inner: RealizationPoint) -> *mut BksPoint {
    Box::into_raw(Box::new(BksPoint { inner }))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bks_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn bks_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bks_lattice_book(d: usize, n: usize, out: *mut *mut BksLattice) -> BksStatus {
    guard(|| {
        let lattice = FiniteLattice::book(d, n)?;
        write(out, boxed_lattice(lattice), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn bks_lattice_chain(k: usize, out: *mut *mut BksLattice) -> BksStatus {
    guard(|| {
        let lattice = FiniteLattice::chain(k)?;
        write(out, boxed_lattice(lattice), "out")
    })
}

/// Parses `{"elements": [...], "covers": [[lower, upper], ...]}`.
#[no_mangle]
pub unsafe extern "C" fn bks_lattice_from_json(json: *const c_char, out: *mut *mut BksLattice) -> BksStatus {
    guard(|| {
        let lattice = parse_lattice(str_arg(json, "json")?)?;
        write(out, boxed_lattice(lattice), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn bks_lattice_free(lattice: *mut BksLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bks_lattice_to_json(lattice: *const BksLattice, out: *mut *mut c_char) -> BksStatus {
    guard(|| write_string(out, lattice_to_json(lattice_arg(lattice)?)))
}

/// Number of elements; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn bks_lattice_size(lattice: *const BksLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.inner.len())
}

#[no_mangle]
pub unsafe extern "C" fn bks_lattice_index_of(
    lattice: *const BksLattice,
    label: *const c_char,
    out: *mut usize,
) -> BksStatus {
    guard(|| {
        let l = lattice_arg(lattice)?;
        let x = l.element(str_arg(label, "label")?)?;
        write(out, x.index(), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn bks_lattice_label(
    lattice: *const BksLattice,
    index: usize,
    out: *mut *mut c_char,
) -> BksStatus {
    guard(|| {
        let l = lattice_arg(lattice)?;
        write_string(out, l.label(element(l, index)?).to_owned())
    })
}

#[no_mangle]
pub unsafe extern "C" fn bks_lattice_leq(lattice: *const BksLattice, x: usize, y: usize, out: *mut bool) -> BksStatus {
    guard(|| {
        let l = lattice_arg(lattice)?;
        write(out, l.leq(element(l, x)?, element(l, y)?), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn bks_lattice_meet(
    lattice: *const BksLattice,
    x: usize,
    y: usize,
    out: *mut usize,
) -> BksStatus {
    guard(|| {
        let l = lattice_arg(lattice)?;
        write(out, l.meet(element(l, x)?, element(l, y)?).index(), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn bks_lattice_join(
    lattice: *const BksLattice,
    x: usize,
    y: usize,
    out: *mut usize,
) -> BksStatus {
    guard(|| {
        let l = lattice_arg(lattice)?;
        write(out, l.join(element(l, x)?, element(l, y)?).index(), "out")
    })
}

/// Modular law scan. `triple` must hold 3 slots and is written only when a
/// violation is found.
#[no_mangle]
pub unsafe extern "C" fn bks_lattice_check_modular(
    lattice: *const BksLattice,
    found: *mut bool,
    triple: *mut usize,
) -> BksStatus {
    guard(|| {
        let w = lattice_arg(lattice)?.check_modular();
        write_triple(w.map(|w| w.triple), found, triple)
    })
}

/// Distributive law scan; same contract as [`bks_lattice_check_modular`].
#[no_mangle]
pub unsafe extern "C" fn bks_lattice_check_distributive(
    lattice: *const BksLattice,
    found: *mut bool,
    triple: *mut usize,
) -> BksStatus {
    guard(|| {
        let w = lattice_arg(lattice)?.check_distributive();
        write_triple(w.map(|w| w.triple), found, triple)
    })
}

unsafe fn write_triple(w: Option<[ElementRef; 3]>, found: *mut bool, triple: *mut usize) -> Result<(), Failure> {
    write(found, w.is_some(), "found")?;
    if let Some(t) = w {
        if triple.is_null() {
            return Err(null("triple"));
        }
        for (i, x) in t.iter().enumerate() {
            triple.add(i).write(x.index());
        }
    }
    Ok(())
}

/// Searches for an N5 or M3 copy. `images` must hold 5 slots (template
/// order `0, a, b, c, 1` for N5 and `0, a1, a2, a3, 1` for M3).
#[no_mangle]
pub unsafe extern "C" fn bks_lattice_find_sublattice(
    lattice: *const BksLattice,
    kind: BksSublattice,
    found: *mut bool,
    images: *mut usize,
) -> BksStatus {
    guard(|| {
        let kind = match kind {
            BksSublattice::N5 => SublatticeKind::N5,
            BksSublattice::M3 => SublatticeKind::M3,
        };
        let w = lattice_arg(lattice)?.find_forbidden_sublattice(kind);
        write(found, w.is_some(), "found")?;
        if let Some(w) = w {
            if images.is_null() {
                return Err(null("images"));
            }
            for (i, x) in w.images.iter().enumerate() {
                images.add(i).write(x.index());
            }
        }
        Ok(())
    })
}

/// All law verdicts as a JSON document.
#[no_mangle]
pub unsafe extern "C" fn bks_lattice_check_json(lattice: *const BksLattice, out: *mut *mut c_char) -> BksStatus {
    guard(|| write_string(out, check_lattice(lattice_arg(lattice)?).to_json()))
}

/// `{"vertices": [...], "facets": [[...], ...]}` for the order complex.
#[no_mangle]
pub unsafe extern "C" fn bks_order_complex_json(lattice: *const BksLattice, out: *mut *mut c_char) -> BksStatus {
    guard(|| write_string(out, complex_to_json(&order_complex(lattice_arg(lattice)?))))
}

#[no_mangle]
pub unsafe extern "C" fn bks_order_complex_dimension(lattice: *const BksLattice, out: *mut usize) -> BksStatus {
    guard(|| write(out, order_complex(lattice_arg(lattice)?).dimension(), "out"))
}

/// Writes `f_0..f_dim` into `buffer`. `len` receives the number of entries;
/// on [`BksStatus::BufferTooSmall`] it holds the required capacity.
#[no_mangle]
pub unsafe extern "C" fn bks_order_complex_f_vector(
    lattice: *const BksLattice,
    buffer: *mut u64,
    capacity: usize,
    len: *mut usize,
) -> BksStatus {
    guard(|| {
        let f = order_complex(lattice_arg(lattice)?).f_vector();
        write(len, f.len(), "len")?;
        if f.len() > capacity {
            return Err(Failure(
                BksStatus::BufferTooSmall,
                format!("f-vector needs {} slots", f.len()),
            ));
        }
        if buffer.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(f.as_ptr(), buffer, f.len());
        Ok(())
    })
}

/// Degree of the single highest-degree non-manifold ridge, or 0 when every
/// ridge lies in at most two facets.
#[no_mangle]
pub unsafe extern "C" fn bks_order_complex_max_ridge_degree(lattice: *const BksLattice, out: *mut usize) -> BksStatus {
    guard(|| {
        let ridges = order_complex(lattice_arg(lattice)?).nonmanifold_ridges()?;
        write(out, ridges.iter().map(|r| r.degree).max().unwrap_or(0), "out")
    })
}

/// OFF mesh text for a 2-dimensional book lattice.
#[no_mangle]
pub unsafe extern "C" fn bks_export_off(lattice: *const BksLattice, out: *mut *mut c_char) -> BksStatus {
    guard(|| write_string(out, book_to_off(lattice_arg(lattice)?)?))
}

#[no_mangle]
pub unsafe extern "C" fn bks_point_phi(lattice: *const BksLattice, index: usize, out: *mut *mut BksPoint) -> BksStatus {
    guard(|| {
        let l = lattice_arg(lattice)?;
        write(out, boxed_point(phi(l, element(l, index)?)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn bks_point_sample(lattice: *const BksLattice, seed: u64, out: *mut *mut BksPoint) -> BksStatus {
    guard(|| write(out, boxed_point(sample_point(lattice_arg(lattice)?, seed)), "out"))
}

/// Accepts the barycentric (`chain`/`weights`) or function (`values`) form.
#[no_mangle]
pub unsafe extern "C" fn bks_point_from_json(
    lattice: *const BksLattice,
    json: *const c_char,
    out: *mut *mut BksPoint,
) -> BksStatus {
    guard(|| {
        let p = parse_point(lattice_arg(lattice)?, str_arg(json, "json")?)?;
        write(out, boxed_point(p), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn bks_point_to_json(
    lattice: *const BksLattice,
    point: *const BksPoint,
    form: BksPointForm,
    out: *mut *mut c_char,
) -> BksStatus {
    guard(|| {
        let l = lattice_arg(lattice)?;
        let p = point_arg(point, "point")?;
        if !p.belongs_to(l) {
            return Err(Error::LatticeMismatch.into());
        }
        let form = match form {
            BksPointForm::Barycentric => PointForm::Barycentric,
            BksPointForm::Function => PointForm::Function,
        };
        write_string(out, point_to_json(l, p, form))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bks_point_free(point: *mut BksPoint) {
    if !point.is_null() {
        drop(Box::from_raw(point));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bks_point_meet(
    lattice: *const BksLattice,
    f: *const BksPoint,
    g: *const BksPoint,
    out: *mut *mut BksPoint,
) -> BksStatus {
    guard(|| {
        let r = meet_points(lattice_arg(lattice)?, point_arg(f, "f")?, point_arg(g, "g")?)?;
        write(out, boxed_point(r), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn bks_point_join(
    lattice: *const BksLattice,
    f: *const BksPoint,
    g: *const BksPoint,
    out: *mut *mut BksPoint,
) -> BksStatus {
    guard(|| {
        let r = join_points(lattice_arg(lattice)?, point_arg(f, "f")?, point_arg(g, "g")?)?;
        write(out, boxed_point(r), "out")
    })
}

/// True when both handles hold the same point of the same lattice.
#[no_mangle]
pub unsafe extern "C" fn bks_point_equal(f: *const BksPoint, g: *const BksPoint, out: *mut bool) -> BksStatus {
    guard(|| write(out, point_arg(f, "f")? == point_arg(g, "g")?, "out"))
}

/// Sup-norm distance as an exact `"p/q"` string.
#[no_mangle]
pub unsafe extern "C" fn bks_point_sup_distance(
    f: *const BksPoint,
    g: *const BksPoint,
    out: *mut *mut c_char,
) -> BksStatus {
    guard(|| {
        let d = sup_distance(point_arg(f, "f")?, point_arg(g, "g")?)?;
        write_string(out, rational::format(&d))
    })
}

/// `h_s(f)` for a level `s` given as a `"p/q"` string in `(0, 1]`.
#[no_mangle]
pub unsafe extern "C" fn bks_point_level_generator(
    lattice: *const BksLattice,
    point: *const BksPoint,
    level: *const c_char,
    out: *mut usize,
) -> BksStatus {
    guard(|| {
        let s = rational::parse(str_arg(level, "level")?)?;
        let g = level_generator(lattice_arg(lattice)?, point_arg(point, "point")?, &s)?;
        write(out, g.index(), "out")
    })
}

/// Full audit of `M_{d,n}` as a JSON report. `all_expected` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn bks_audit_book_json(
    d: usize,
    n: usize,
    samples: usize,
    seed: u64,
    all_expected: *mut bool,
    out: *mut *mut c_char,
) -> BksStatus {
    guard(|| {
        let report = audit_book(d, n, samples, seed)?;
        if !all_expected.is_null() {
            all_expected.write(report.all_expected);
        }
        write_string(out, report.to_json())
    })
}
