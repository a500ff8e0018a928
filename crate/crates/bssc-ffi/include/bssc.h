/* C interface to the bssc binary subspace chirp library. */

#ifndef BSSC_H
#define BSSC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every interface call.
typedef enum BsscStatus {
  // Success.
  BSSC_STATUS_OK = 0,
  // A pointer was null or an argument was out of range.
  BSSC_STATUS_INVALID_ARGUMENT = 1,
  // The signal could not be reconstructed as a codeword.
  BSSC_STATUS_DECODE_FAILURE = 2,
  // The configuration was rejected.
  BSSC_STATUS_CONFIG = 3,
  // An unexpected internal failure; never expected in normal use.
  BSSC_STATUS_INTERNAL = 4,
} BsscStatus;

// Opaque codebook handle: fixes the dimension exponent `m` and with it
// the id space `0..bssc_codebook_size()`.
typedef struct BsscCodebook BsscCodebook;

// The algebraic description of one codeword, mirroring the CSV columns of
// the codebook export.
typedef struct BsscCodewordInfo {
  // Subspace rank `r`; the support has `2^r` points.
  uint32_t rank;
  // Leading-set bitmask of the subspace, big-endian over positions.
  uint64_t leading_mask;
  // Free-entry bits of the echelon basis within its leading-set cell.
  uint64_t free_bits;
  // Upper-triangle bits of the symmetric form.
  uint64_t form_bits;
  // The selector `b` as an integer.
  uint64_t selector;
} BsscCodewordInfo;

// Aggregate statistics of one Monte-Carlo run.
typedef struct BsscSimStats {
  uint64_t trials;
  uint64_t users_total;
  uint64_t per_user_errors;
  uint64_t per_trial_errors;
  double per_user_error_prob;
  double per_trial_error_prob;
  // 95% Wilson interval on the per-user error probability.
  double ci_low;
  double ci_high;
} BsscSimStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a codebook handle for dimension exponent `m` (1..=9). Returns
// null when `m` is out of range. Free with [`bssc_codebook_free`].
struct BsscCodebook *bssc_codebook_new(uint32_t m);

// Frees a handle from [`bssc_codebook_new`]; null is a no-op.
//
// # Safety
// `handle` must be null or a pointer previously returned by
// [`bssc_codebook_new`] that has not been freed yet.
void bssc_codebook_free(struct BsscCodebook *handle);

// Number of codewords in the handle's codebook.
//
// # Safety
// `handle` must be a live pointer from [`bssc_codebook_new`].
uint64_t bssc_codebook_size(const struct BsscCodebook *handle);

// Ambient dimension `N = 2^m` of the handle's codewords.
//
// # Safety
// `handle` must be a live pointer from [`bssc_codebook_new`].
uint64_t bssc_codebook_dim(const struct BsscCodebook *handle);

// Writes codeword `id` into the caller's `re`/`im` buffers of length
// `len == 2^m`.
//
// # Safety
// `handle` must be live; `re` and `im` must point to `len` writable
// doubles.
enum BsscStatus bssc_encode(const struct BsscCodebook *handle,
                            uint64_t id,
                            double *re,
                            double *im,
                            size_t len);

// Fills the algebraic description of codeword `id`.
//
// # Safety
// `handle` must be live; `out` must point to writable storage.
enum BsscStatus bssc_codeword_info(const struct BsscCodebook *handle,
                                   uint64_t id,
                                   struct BsscCodewordInfo *out);

// Reconstructs a single noiseless codeword from `re`/`im` of length
// `len == 2^m` and writes its id.
//
// # Safety
// `handle` must be live; `re`/`im` must point to `len` readable doubles;
// `out_id` must be writable.
enum BsscStatus bssc_decode_single(const struct BsscCodebook *handle,
                                   const double *re,
                                   const double *im,
                                   size_t len,
                                   uint64_t *out_id);

// Multi-user reconstruction: writes `users` recovered ids and their
// least-squares coefficients into caller-owned arrays of length `users`.
//
// # Safety
// `handle` must be live; `re`/`im` must point to `len` readable doubles;
// `out_ids`, `out_coeff_re`, `out_coeff_im` must each hold `users`
// writable elements.
enum BsscStatus bssc_decode_multi(const struct BsscCodebook *handle,
                                  const double *re,
                                  const double *im,
                                  size_t len,
                                  size_t users,
                                  uint64_t *out_ids,
                                  double *out_coeff_re,
                                  double *out_coeff_im);

// Runs a Monte-Carlo experiment. `codebook_kind`: 0 = bssc, 1 = bc,
// 2 = random. `decoder_kind`: 0 = structured, 1 = exhaustive.
//
// # Safety
// `out` must point to writable storage.
enum BsscStatus bssc_simulate(uint32_t m,
                              size_t users,
                              uint64_t trials,
                              uint64_t seed,
                              uint32_t codebook_kind,
                              uint32_t decoder_kind,
                              double noise_variance,
                              struct BsscSimStats *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BSSC_H */
