//! C ABI for the iidtest library.
//!
//! Handles are opaque pointers created and freed by this library; every
//! fallible call returns an [`IidStatus`] and stores a human-readable
//! message retrievable with [`iid_last_error_message`] on failure.

use std::cell::RefCell;
use std::ffi::CString;

use libc::{c_char, size_t};

use iidtest::cli::exit_code_for;
use iidtest::error::Error;
use iidtest::estimators::Basis;
use iidtest::experiments::FunctionFamily;
use iidtest::models::{simulate, InnovationLaw, ModelSpec, SeedSpec};
use iidtest::portmanteau::{run_variant, TestResult, TestVariant, VariantKind};
use iidtest::Series;

/// Status of a C API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IidStatus {
    IidOk = 0,
    IidNullPointer = 1,
    IidInvalidArgument = 2,
    IidDataError = 3,
    IidNumericalError = 4,
}

/// Statistic variant selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IidVariant {
    IidVariantPlainT = 0,
    IidVariantLjungL = 1,
    IidVariantWhitenedT = 2,
    IidVariantWhitenedL = 3,
}

/// Transform family selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IidFunctions {
    IidFunctionsId = 0,
    IidFunctionsAbs = 1,
    IidFunctionsIdAbs = 2,
    IidFunctionsIdSquare = 3,
    IidFunctionsTrig = 4,
}

/// Contemporaneous matrix used by whitened variants.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IidBasis {
    IidBasisCorrelation = 0,
    IidBasisCovariance = 1,
}

/// Simulated model selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IidModel {
    IidModelAr1 = 0,
    IidModelMa1 = 1,
    IidModelSv = 2,
    IidModelGarch = 3,
}

/// Innovation law selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IidInnovations {
    IidInnovationsGaussian = 0,
    IidInnovationsLaplace = 1,
    IidInnovationsLaplaceLiteral = 2,
}

/// Opaque series handle.
pub struct IidSeries(Series);

/// Opaque test result handle.
pub struct IidTestResult(TestResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_from(err: &Error) -> IidStatus {
    set_last_error(&err.to_string());
    match exit_code_for(err) {
        1 => IidStatus::IidInvalidArgument,
        2 => IidStatus::IidDataError,
        _ => IidStatus::IidNumericalError,
    }
}

fn null_pointer(what: &str) -> IidStatus {
    set_last_error(&format!("null pointer: {what}"));
    IidStatus::IidNullPointer
}

/// Message of the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread; never free it.
#[no_mangle]
pub extern "C" fn iid_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Create a series handle from a buffer of finite values (length >= 2).
///
/// # Safety
/// `values` must point to `len` readable doubles and `out` must be a valid
/// location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn iid_series_create(
    values: *const f64,
    len: size_t,
    out: *mut *mut IidSeries,
) -> IidStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    if values.is_null() {
        return null_pointer("values");
    }
    let slice = std::slice::from_raw_parts(values, len);
    match Series::new(slice.to_vec()) {
        Ok(series) => {
            *out = Box::into_raw(Box::new(IidSeries(series)));
            IidStatus::IidOk
        }
        Err(err) => status_from(&err),
    }
}

/// Free a series handle; a null pointer is a no-op.
///
/// # Safety
/// `series` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn iid_series_free(series: *mut IidSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Number of observations in the series, or 0 for a null handle.
///
/// # Safety
/// `series` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn iid_series_len(series: *const IidSeries) -> size_t {
    if series.is_null() {
        return 0;
    }
    (*series).0.len()
}

/// Copy the observations into `out`, which must hold at least `capacity`
/// doubles; fails if the series is longer than the buffer.
///
/// # Safety
/// `series` must be a live handle; `out` must point to `capacity` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn iid_series_copy(
    series: *const IidSeries,
    out: *mut f64,
    capacity: size_t,
) -> IidStatus {
    if series.is_null() {
        return null_pointer("series");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    let values = (*series).0.values();
    if values.len() > capacity {
        set_last_error(&format!(
            "buffer of capacity {capacity} cannot hold {} values",
            values.len()
        ));
        return IidStatus::IidInvalidArgument;
    }
    std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    IidStatus::IidOk
}

/// Simulate one of the models into a new series handle. The dependence
/// parameter `a` must lie in (0, 1); GARCH uses the equal-thirds form.
///
/// # Safety
/// `out` must be a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn iid_simulate(
    model: IidModel,
    a: f64,
    innovations: IidInnovations,
    n: size_t,
    master_seed: u64,
    stream_index: u64,
    out: *mut *mut IidSeries,
) -> IidStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    let law = match innovations {
        IidInnovations::IidInnovationsGaussian => InnovationLaw::gaussian(),
        IidInnovations::IidInnovationsLaplace => InnovationLaw::laplace(),
        IidInnovations::IidInnovationsLaplaceLiteral => InnovationLaw::laplace_literal(),
    };
    let spec = match model {
        IidModel::IidModelAr1 => ModelSpec::ar1(a, law, n),
        IidModel::IidModelMa1 => ModelSpec::ma1(a, law, n),
        IidModel::IidModelSv => ModelSpec::sv(a, law, n),
        IidModel::IidModelGarch => ModelSpec::garch_equal(a, law, n),
    };
    let result = spec.and_then(|spec| simulate(&spec, &SeedSpec::new(master_seed, stream_index)));
    match result {
        Ok(series) => {
            *out = Box::into_raw(Box::new(IidSeries(series)));
            IidStatus::IidOk
        }
        Err(err) => status_from(&err),
    }
}

/// Run one portmanteau test over the series.
///
/// `c` is the weighting constant of the L-type variants (use 2 for the
/// classic choice) and `trig_scale` the frequency of the trig family (use 1
/// unless selected).
///
/// # Safety
/// `series` must be a live handle and `out` a valid location for one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn iid_test_run(
    series: *const IidSeries,
    variant: IidVariant,
    functions: IidFunctions,
    lags: size_t,
    c: f64,
    trig_scale: f64,
    basis: IidBasis,
    out: *mut *mut IidTestResult,
) -> IidStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    if series.is_null() {
        return null_pointer("series");
    }
    let family = match functions {
        IidFunctions::IidFunctionsId => FunctionFamily::Id,
        IidFunctions::IidFunctionsAbs => FunctionFamily::Abs,
        IidFunctions::IidFunctionsIdAbs => FunctionFamily::IdAbs,
        IidFunctions::IidFunctionsIdSquare => FunctionFamily::IdSquare,
        IidFunctions::IidFunctionsTrig => FunctionFamily::Trig,
    };
    let kind = match variant {
        IidVariant::IidVariantPlainT => VariantKind::PlainT,
        IidVariant::IidVariantLjungL => VariantKind::LjungL,
        IidVariant::IidVariantWhitenedT => VariantKind::WhitenedT,
        IidVariant::IidVariantWhitenedL => VariantKind::WhitenedL,
    };
    let basis = match basis {
        IidBasis::IidBasisCorrelation => Basis::Correlation,
        IidBasis::IidBasisCovariance => Basis::Covariance,
    };
    let result = family
        .build(trig_scale)
        .and_then(|funcs| run_variant(&(*series).0, &funcs, lags, TestVariant { kind, c, basis }));
    match result {
        Ok(result) => {
            *out = Box::into_raw(Box::new(IidTestResult(result)));
            IidStatus::IidOk
        }
        Err(err) => status_from(&err),
    }
}

/// Statistic value, or NaN for a null handle.
///
/// # Safety
/// `result` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn iid_test_result_statistic(result: *const IidTestResult) -> f64 {
    if result.is_null() {
        return f64::NAN;
    }
    (*result).0.statistic
}

/// Upper-tail p-value, or NaN for a null handle.
///
/// # Safety
/// `result` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn iid_test_result_p_value(result: *const IidTestResult) -> f64 {
    if result.is_null() {
        return f64::NAN;
    }
    (*result).0.p_value
}

/// Chi-squared degrees of freedom, or 0 for a null handle.
///
/// # Safety
/// `result` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn iid_test_result_df(result: *const IidTestResult) -> size_t {
    if result.is_null() {
        return 0;
    }
    (*result).0.df
}

/// Whether the test rejects at the given significance level; false for a
/// null handle.
///
/// # Safety
/// `result` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn iid_test_result_rejects(result: *const IidTestResult, alpha: f64) -> bool {
    if result.is_null() {
        return false;
    }
    (*result).0.rejects_at(alpha)
}

/// Free a test result handle; a null pointer is a no-op.
///
/// # Safety
/// `result` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn iid_test_result_free(result: *mut IidTestResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}
