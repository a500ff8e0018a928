//! C ABI over the codebook, decoder, and simulator.
//!
//! Conventions: every function returns a [`BsscStatus`]; results travel
//! through caller-owned output buffers; the codebook handle is opaque and
//! freed with [`bssc_codebook_free`]. Complex vectors are passed as
//! separate `re`/`im` arrays of length `2^m`. Panics never cross the
//! boundary; they surface as `BSSC_STATUS_INTERNAL`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;

use bssc::codebook::{codebook_size, BsscParams, MAX_INDEXED_DIM};
use bssc::decoder::{decode_multi, decode_noiseless, ReceivedSignal};
use bssc::error::Error;
use bssc::sim::{run_trials, CodebookKind, DecoderKind, TrialConfig};

/// Result of every interface call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[allow(non_camel_case_types)]
pub enum BsscStatus {
    /// Success.
    BSSC_STATUS_OK = 0,
    /// A pointer was null or an argument was out of range.
    BSSC_STATUS_INVALID_ARGUMENT = 1,
    /// The signal could not be reconstructed as a codeword.
    BSSC_STATUS_DECODE_FAILURE = 2,
    /// The configuration was rejected.
    BSSC_STATUS_CONFIG = 3,
    /// An unexpected internal failure; never expected in normal use.
    BSSC_STATUS_INTERNAL = 4,
}

use BsscStatus::*;

/// Opaque codebook handle: fixes the dimension exponent `m` and with it
/// the id space `0..bssc_codebook_size()`.
pub struct BsscCodebook {
    m: usize,
}

/// The algebraic description of one codeword, mirroring the CSV columns of
/// the codebook export.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct BsscCodewordInfo {
    /// Subspace rank `r`; the support has `2^r` points.
    pub rank: u32,
    /// Leading-set bitmask of the subspace, big-endian over positions.
    pub leading_mask: u64,
    /// Free-entry bits of the echelon basis within its leading-set cell.
    pub free_bits: u64,
    /// Upper-triangle bits of the symmetric form.
    pub form_bits: u64,
    /// The selector `b` as an integer.
    pub selector: u64,
}

/// Aggregate statistics of one Monte-Carlo run.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct BsscSimStats {
    pub trials: u64,
    pub users_total: u64,
    pub per_user_errors: u64,
    pub per_trial_errors: u64,
    pub per_user_error_prob: f64,
    pub per_trial_error_prob: f64,
    /// 95% Wilson interval on the per-user error probability.
    pub ci_low: f64,
    pub ci_high: f64,
}

fn guarded<F: FnOnce() -> BsscStatus>(f: F) -> BsscStatus {
    // Output buffers are only written on success paths, so suppressing the
    // unwind-safety obligation does not expose torn state.
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(BSSC_STATUS_INTERNAL)
}

fn status_of(err: &Error) -> BsscStatus {
    match err {
        Error::DecodeFailure(_) => BSSC_STATUS_DECODE_FAILURE,
        Error::Config(_) | Error::Resource(_) => BSSC_STATUS_CONFIG,
        _ => BSSC_STATUS_INVALID_ARGUMENT,
    }
}

/// Creates a codebook handle for dimension exponent `m` (1..=9). Returns
/// null when `m` is out of range. Free with [`bssc_codebook_free`].
#[no_mangle]
pub extern "C" fn bssc_codebook_new(m: u32) -> *mut BsscCodebook {
    let m = m as usize;
    if m == 0 || m > MAX_INDEXED_DIM {
        return std::ptr::null_mut();
    }
    Box::into_raw(Box::new(BsscCodebook { m }))
}

/// Frees a handle from [`bssc_codebook_new`]; null is a no-op.
///
/// # Safety
/// `handle` must be null or a pointer previously returned by
/// [`bssc_codebook_new`] that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn bssc_codebook_free(handle: *mut BsscCodebook) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of codewords in the handle's codebook.
///
/// # Safety
/// `handle` must be a live pointer from [`bssc_codebook_new`].
#[no_mangle]
pub unsafe extern "C" fn bssc_codebook_size(handle: *const BsscCodebook) -> u64 {
    if handle.is_null() {
        return 0;
    }
    codebook_size((*handle).m)
}

/// Ambient dimension `N = 2^m` of the handle's codewords.
///
/// # Safety
/// `handle` must be a live pointer from [`bssc_codebook_new`].
#[no_mangle]
pub unsafe extern "C" fn bssc_codebook_dim(handle: *const BsscCodebook) -> u64 {
    if handle.is_null() {
        return 0;
    }
    1u64 << (*handle).m
}

unsafe fn signal_from_raw(
    m: usize,
    re: *const f64,
    im: *const f64,
    len: usize,
) -> Option<ReceivedSignal> {
    if re.is_null() || im.is_null() || len != 1usize << m {
        return None;
    }
    let re = std::slice::from_raw_parts(re, len);
    let im = std::slice::from_raw_parts(im, len);
    let samples: Vec<Complex64> = re
        .iter()
        .zip(im)
        .map(|(&r, &i)| Complex64::new(r, i))
        .collect();
    ReceivedSignal::new(samples).ok()
}

/// Writes codeword `id` into the caller's `re`/`im` buffers of length
/// `len == 2^m`.
///
/// # Safety
/// `handle` must be live; `re` and `im` must point to `len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn bssc_encode(
    handle: *const BsscCodebook,
    id: u64,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> BsscStatus {
    if handle.is_null() || re.is_null() || im.is_null() {
        return BSSC_STATUS_INVALID_ARGUMENT;
    }
    let m = (*handle).m;
    if len != 1usize << m {
        return BSSC_STATUS_INVALID_ARGUMENT;
    }
    let re = std::slice::from_raw_parts_mut(re, len);
    let im = std::slice::from_raw_parts_mut(im, len);
    guarded(move || {
        let Ok(params) = BsscParams::from_id(m, id) else {
            return BSSC_STATUS_INVALID_ARGUMENT;
        };
        let vector = params.codeword().to_complex();
        for ((target_re, target_im), z) in re.iter_mut().zip(im.iter_mut()).zip(vector) {
            *target_re = z.re;
            *target_im = z.im;
        }
        BSSC_STATUS_OK
    })
}

/// Fills the algebraic description of codeword `id`.
///
/// # Safety
/// `handle` must be live; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn bssc_codeword_info(
    handle: *const BsscCodebook,
    id: u64,
    out: *mut BsscCodewordInfo,
) -> BsscStatus {
    if handle.is_null() || out.is_null() {
        return BSSC_STATUS_INVALID_ARGUMENT;
    }
    let m = (*handle).m;
    let out = &mut *out;
    guarded(move || {
        let Ok(params) = BsscParams::from_id(m, id) else {
            return BSSC_STATUS_INVALID_ARGUMENT;
        };
        *out = BsscCodewordInfo {
            rank: params.rank() as u32,
            leading_mask: params.label().subspace().leading_mask() as u64,
            free_bits: params.label().subspace().cell_bits(),
            form_bits: params.label().form_bits(),
            selector: params.selector().index() as u64,
        };
        BSSC_STATUS_OK
    })
}

/// Reconstructs a single noiseless codeword from `re`/`im` of length
/// `len == 2^m` and writes its id.
///
/// # Safety
/// `handle` must be live; `re`/`im` must point to `len` readable doubles;
/// `out_id` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bssc_decode_single(
    handle: *const BsscCodebook,
    re: *const f64,
    im: *const f64,
    len: usize,
    out_id: *mut u64,
) -> BsscStatus {
    if handle.is_null() || out_id.is_null() {
        return BSSC_STATUS_INVALID_ARGUMENT;
    }
    let m = (*handle).m;
    let Some(signal) = signal_from_raw(m, re, im, len) else {
        return BSSC_STATUS_INVALID_ARGUMENT;
    };
    let out_id = &mut *out_id;
    guarded(move || match decode_noiseless(&signal) {
        Ok(params) => {
            *out_id = params.id();
            BSSC_STATUS_OK
        }
        Err(err) => status_of(&err),
    })
}

/// Multi-user reconstruction: writes `users` recovered ids and their
/// least-squares coefficients into caller-owned arrays of length `users`.
///
/// # Safety
/// `handle` must be live; `re`/`im` must point to `len` readable doubles;
/// `out_ids`, `out_coeff_re`, `out_coeff_im` must each hold `users`
/// writable elements.
#[no_mangle]
pub unsafe extern "C" fn bssc_decode_multi(
    handle: *const BsscCodebook,
    re: *const f64,
    im: *const f64,
    len: usize,
    users: usize,
    out_ids: *mut u64,
    out_coeff_re: *mut f64,
    out_coeff_im: *mut f64,
) -> BsscStatus {
    if handle.is_null()
        || out_ids.is_null()
        || out_coeff_re.is_null()
        || out_coeff_im.is_null()
        || users == 0
    {
        return BSSC_STATUS_INVALID_ARGUMENT;
    }
    let m = (*handle).m;
    let Some(signal) = signal_from_raw(m, re, im, len) else {
        return BSSC_STATUS_INVALID_ARGUMENT;
    };
    let out_ids = std::slice::from_raw_parts_mut(out_ids, users);
    let out_re = std::slice::from_raw_parts_mut(out_coeff_re, users);
    let out_im = std::slice::from_raw_parts_mut(out_coeff_im, users);
    guarded(move || match decode_multi(&signal, users) {
        Ok(result) => {
            for (slot, params) in out_ids.iter_mut().zip(&result.recovered) {
                *slot = params.id();
            }
            for ((sre, sim_), h) in out_re.iter_mut().zip(out_im.iter_mut()).zip(&result.coefficients)
            {
                *sre = h.re;
                *sim_ = h.im;
            }
            BSSC_STATUS_OK
        }
        Err(err) => status_of(&err),
    })
}

/// Runs a Monte-Carlo experiment. `codebook_kind`: 0 = bssc, 1 = bc,
/// 2 = random. `decoder_kind`: 0 = structured, 1 = exhaustive.
///
/// # Safety
/// `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn bssc_simulate(
    m: u32,
    users: usize,
    trials: u64,
    seed: u64,
    codebook_kind: u32,
    decoder_kind: u32,
    noise_variance: f64,
    out: *mut BsscSimStats,
) -> BsscStatus {
    if out.is_null() {
        return BSSC_STATUS_INVALID_ARGUMENT;
    }
    let out = &mut *out;
    guarded(move || {
        let mut cfg = TrialConfig::new(m as usize, users, trials, seed);
        cfg.codebook = match codebook_kind {
            0 => CodebookKind::Bssc,
            1 => CodebookKind::Bc,
            2 => CodebookKind::Random,
            _ => return BSSC_STATUS_INVALID_ARGUMENT,
        };
        cfg.decoder = match decoder_kind {
            0 => DecoderKind::Structured,
            1 => DecoderKind::Exhaustive,
            _ => return BSSC_STATUS_INVALID_ARGUMENT,
        };
        cfg.noise_variance = noise_variance;
        match run_trials(&cfg) {
            Ok(stats) => {
                *out = BsscSimStats {
                    trials: stats.trials,
                    users_total: stats.users_total,
                    per_user_errors: stats.per_user_errors,
                    per_trial_errors: stats.per_trial_errors,
                    per_user_error_prob: stats.per_user_error_prob,
                    per_trial_error_prob: stats.per_trial_error_prob,
                    ci_low: stats.ci_low,
                    ci_high: stats.ci_high,
                };
                BSSC_STATUS_OK
            }
            Err(err) => status_of(&err),
        }
    })
}
