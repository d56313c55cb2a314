/*
 * Licensed under the Apache License, Version 2.0 (the "License"); you may
 * not use this file except in compliance with the License. You may obtain
 * a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */

#ifndef ADMISSIBLE_H
#define ADMISSIBLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum AdmStatus {
  ADM_STATUS_OK = 0,
  ADM_STATUS_NULL_POINTER = 1,
  ADM_STATUS_INVALID_COMPLEX = 2,
  ADM_STATUS_OUT_OF_RANGE = 3,
  ADM_STATUS_PANIC = 4,
} AdmStatus;

/**
 * An 8-line complex on the 8 points of F_2^3.
 */
typedef struct AdmComplex AdmComplex;

/**
 * Counts from a sweep over a rank range.
 */
typedef struct AdmLedger AdmLedger;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or NULL. The
 * pointer is valid until the next call into this library on the same thread.
 */
const char *adm_last_error_message(void);

/**
 * Builds a complex from 8 lines given as 16 point indices `a0 b0 a1 b1 ...`.
 *
 * # Safety
 * `endpoints` must point to 16 readable bytes; `out` must be writable.
 */
enum AdmStatus adm_complex_new(const uint8_t *endpoints, struct AdmComplex **out);

/**
 * Builds the complex with the given colex rank, `0 <= rank < 3108105`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AdmStatus adm_complex_from_rank(uint64_t rank, struct AdmComplex **out);

/**
 * # Safety
 * `c` must be NULL or a handle from this library not yet freed.
 */
void adm_complex_free(struct AdmComplex *c);

/**
 * # Safety
 * `c` must be a live handle; `out` writable.
 */
enum AdmStatus adm_complex_rank(const struct AdmComplex *c, uint64_t *out);

/**
 * 28-bit mask of the complex's lines, line `{i, j}` (i < j) at bit
 * `j(j-1)/2 + i`.
 *
 * # Safety
 * `c` must be a live handle; `out` writable.
 */
enum AdmStatus adm_complex_mask(const struct AdmComplex *c, uint32_t *out);

/**
 * Writes the label index in `0..adm_label_count()`.
 *
 * # Safety
 * `c` must be a live handle; `out` writable.
 */
enum AdmStatus adm_complex_classify(const struct AdmComplex *c, uint32_t *out);

/**
 * # Safety
 * `c` must be a live handle; `out` writable.
 */
enum AdmStatus adm_complex_is_admissible(const struct AdmComplex *c, bool *out);

/**
 * Exact determinant of the 8x8 incidence matrix, rows in ascending line
 * order.
 *
 * # Safety
 * `c` must be a live handle; `out` writable.
 */
enum AdmStatus adm_complex_determinant(const struct AdmComplex *c, int64_t *out);

uint32_t adm_label_count(void);

/**
 * Static NUL-terminated name of a label index, or NULL when out of range.
 */
const char *adm_label_name(uint32_t label);

/**
 * Sweeps ranks `[start, end)` with both admissibility oracles on `jobs`
 * threads. The ledger does not depend on `jobs`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AdmStatus adm_ledger_sweep(uint64_t start,
                                uint64_t end,
                                uint32_t jobs,
                                struct AdmLedger **out);

/**
 * # Safety
 * `l` must be NULL or a handle from this library not yet freed.
 */
void adm_ledger_free(struct AdmLedger *l);

/**
 * # Safety
 * `l` must be a live handle; `out` writable.
 */
enum AdmStatus adm_ledger_count(const struct AdmLedger *l, uint32_t label, uint64_t *out);

/**
 * # Safety
 * `l` must be a live handle; `out` writable.
 */
enum AdmStatus adm_ledger_total(const struct AdmLedger *l, uint64_t *out);

/**
 * # Safety
 * `l` must be a live handle; `out` writable.
 */
enum AdmStatus adm_ledger_admissible(const struct AdmLedger *l, uint64_t *out);

/**
 * Complexes on which the graph criterion and the determinant disagree.
 *
 * # Safety
 * `l` must be a live handle; `out` writable.
 */
enum AdmStatus adm_ledger_oracle_disagreements(const struct AdmLedger *l, uint64_t *out);

/**
 * Sorted-key JSON rendering; free the result with [`adm_string_free`].
 *
 * # Safety
 * `l` must be a live handle; `out` writable.
 */
enum AdmStatus adm_ledger_to_json(const struct AdmLedger *l, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void adm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADMISSIBLE_H */
