#ifndef TURAN_H
#define TURAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TuranStatus {
  TURAN_STATUS_OK = 0,
  TURAN_STATUS_NULL_POINTER = 1,
  TURAN_STATUS_INVALID_UTF8 = 2,
  TURAN_STATUS_PARSE = 3,
  TURAN_STATUS_DOMAIN = 4,
  TURAN_STATUS_PRECONDITION = 5,
  TURAN_STATUS_NOT_REAL_ROOTED = 6,
  TURAN_STATUS_INPUT = 7,
  TURAN_STATUS_IO = 8,
  TURAN_STATUS_INTERNAL = 9,
} TuranStatus;

typedef struct TuranReport TuranReport;

typedef struct TuranSequence TuranSequence;

/**
 * Options for [`turan_run_check`]. Zero fields mean "default".
 */
typedef struct TuranCheckOptions {
  bool has_range;
  int64_t range_lo;
  int64_t range_hi;
  /**
   * Level for `klogconcave`; 0 selects 2.
   */
  uint32_t j;
  /**
   * Ratio for `criterion` as `r_num / r_den`; `r_den == 0` leaves it unset.
   */
  int64_t r_num;
  int64_t r_den;
  /**
   * Depth for `branden`; 0 selects 3.
   */
  uint32_t depth;
  bool interior;
} TuranCheckOptions;

typedef struct TuranSummary {
  uint64_t holds;
  uint64_t holds_strict;
  uint64_t fails;
  uint64_t not_applicable;
  bool has_first_fail;
  int64_t first_fail_index;
} TuranSummary;

typedef struct TuranRootCertificate {
  uint64_t distinct_real_roots;
  uint64_t degree_of_squarefree_part;
  bool is_real_rooted;
  bool all_roots_nonpositive;
} TuranRootCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a sequence from a spec string such as `partition`, `binomial:10`,
 * `geometric:5/2:20`, `hermite:6`, `laguerre:6`, `terms:1,2,1` or
 * `csv:PATH`. `partition_top` is the last index for `partition`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TuranStatus turan_sequence_parse(const char *spec,
                                      uintptr_t partition_top,
                                      struct TuranSequence **out);

/**
 * `p(0), …, p(n_max)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TuranStatus turan_sequence_partition(uintptr_t n_max, struct TuranSequence **out);

/**
 * Terms `num[i] / den[i]` starting at `start_index`. `den` may be null for
 * integer terms.
 *
 * # Safety
 * `num` (and `den` when non-null) must point to `len` readable values.
 */
enum TuranStatus turan_sequence_from_terms(const int64_t *num,
                                           const int64_t *den,
                                           uintptr_t len,
                                           uintptr_t start_index,
                                           struct TuranSequence **out);

/**
 * Number of terms, or 0 for a null handle.
 *
 * # Safety
 * `seq` must be null or a live handle.
 */
uintptr_t turan_sequence_len(const struct TuranSequence *seq);

/**
 * # Safety
 * `seq` must be null or a handle not yet freed.
 */
void turan_sequence_free(struct TuranSequence *seq);

/**
 * Runs the named check (`hot`, `ineq1`, `marik`, …). `options` may be null.
 *
 * # Safety
 * `seq` must be a live handle, `name` a NUL-terminated string, `options`
 * null or valid, and `out` a valid pointer.
 */
enum TuranStatus turan_run_check(const struct TuranSequence *seq,
                                 const char *name,
                                 const struct TuranCheckOptions *options,
                                 struct TuranReport **out);

/**
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum TuranStatus turan_report_summary(const struct TuranReport *report, struct TuranSummary *out);

/**
 * The report as JSON; free with [`turan_string_free`].
 *
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum TuranStatus turan_report_to_json(const struct TuranReport *report, char **out);

/**
 * The report as CSV; free with [`turan_string_free`].
 *
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum TuranStatus turan_report_to_csv(const struct TuranReport *report, char **out);

/**
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void turan_report_free(struct TuranReport *report);

/**
 * Sturm certificate for `Σ (num[i]/den[i]) x^i`. `den` may be null.
 *
 * # Safety
 * `num` (and `den` when non-null) must point to `len` readable values and
 * `out` must be valid.
 */
enum TuranStatus turan_certify(const int64_t *num,
                               const int64_t *den,
                               uintptr_t len,
                               struct TuranRootCertificate *out);

/**
 * Runs the partition tables and cited ranges up to `max_n`.
 *
 * # Safety
 * `verified` must be a valid pointer.
 */
enum TuranStatus turan_verify_claims(uintptr_t max_n, bool *verified);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void turan_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *turan_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TURAN_H */
