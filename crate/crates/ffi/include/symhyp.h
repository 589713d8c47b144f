#ifndef SYMHYP_H
#define SYMHYP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SymhypStatus {
  SYMHYP_STATUS_OK = 0,
  SYMHYP_STATUS_NULL_POINTER = 1,
  SYMHYP_STATUS_DOMAIN = 2,
  SYMHYP_STATUS_EMPTY_INPUT = 3,
  SYMHYP_STATUS_RESOURCE = 4,
  SYMHYP_STATUS_UNSUPPORTED = 5,
  SYMHYP_STATUS_PARSE = 6,
  // A Rust panic was caught at the boundary.
  SYMHYP_STATUS_INTERNAL = 7,
} SymhypStatus;

// A degree bound, threshold or criterion.
typedef struct SymhypBoundReport SymhypBoundReport;

// Outcome of a condition check over all non-identity cycle types.
typedef struct SymhypConditionReport SymhypConditionReport;

// Exact rational number.
typedef struct SymhypRational SymhypRational;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL after a
// successful one. Free with `symhyp_string_free`.
char *symhyp_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void symhyp_string_free(char *s);

// Library version, a static string.
const char *symhyp_version(void);

// Parses `"p/q"`, an integer or a decimal.
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be writable.
enum SymhypStatus symhyp_rational_parse(const char *text, struct SymhypRational **out);

// `num / den`, or NULL when `den` is zero.
struct SymhypRational *symhyp_rational_new(int64_t num, int64_t den);

// Lowest-terms `"p/q"`, or `"p"` for integers. Free with
// `symhyp_string_free`.
//
// # Safety
// `q` must be NULL or a live rational handle.
char *symhyp_rational_to_string(const struct SymhypRational *q);

// Nearest double; NaN for a NULL handle.
//
// # Safety
// `q` must be NULL or a live rational handle.
double symhyp_rational_to_f64(const struct SymhypRational *q);

// Numerator and denominator when both fit in 64 bits.
//
// # Safety
// `q` must be a live rational handle; `num` and `den` must be writable.
enum SymhypStatus symhyp_rational_parts(const struct SymhypRational *q, int64_t *num, int64_t *den);

// # Safety
// `q` must be NULL or a live rational handle, which becomes invalid.
void symhyp_rational_free(struct SymhypRational *q);

// `C_p((B^n)^m)` from the closed form, normalized to `C_{nm} = 1`.
// Requires `n >= 5`.
//
// # Safety
// `out` must be writable.
enum SymhypStatus symhyp_closed_form_cp(uint32_t n,
                                        uint32_t m,
                                        uint32_t p,
                                        struct SymhypRational **out);

// `C_p((B^n)^m)` by exact minimization over the canonical shapes,
// normalized to `C_{nm} = 1`.
//
// # Safety
// `out` must be writable.
enum SymhypStatus symhyp_minimized_cp(uint32_t n,
                                      uint32_t m,
                                      uint32_t p,
                                      struct SymhypRational **out);

// `C_p((B^n)^m)` by enumerating every admissible shape; fails with
// `SYMHYP_STATUS_RESOURCE` when more than `budget` subsets are needed.
//
// # Safety
// `out` must be writable.
enum SymhypStatus symhyp_brute_force_cp(uint32_t n,
                                        uint32_t m,
                                        uint32_t p,
                                        uint64_t budget,
                                        struct SymhypRational **out);

// Sum of all exponents of a permutation with cycle lengths `parts`
// acting on `(C^n)^m`, `m` the sum of the parts.
//
// # Safety
// `parts` must point to `len` integers; `out` must be writable.
enum SymhypStatus symhyp_sigma_sum(const uint32_t *parts, uintptr_t len, uint32_t n, uint64_t *out);

// `n(m-1) + 2 - alpha (n-2)(m-2)/2`.
//
// # Safety
// `alpha` must be a live rational handle; `out` must be writable.
enum SymhypStatus symhyp_lemcrit_threshold(uint32_t n,
                                           uint32_t m,
                                           const struct SymhypRational *alpha,
                                           struct SymhypRational **out);

// Checks `a_{i_1} + ... + a_{i_d} >= r (1 - alpha)` for every
// non-identity element of `S_m` acting on `(C^n)^m`.
//
// # Safety
// `alpha` must be a live rational handle; `out` must be writable.
enum SymhypStatus symhyp_check_condition(uint32_t m,
                                         uint32_t n,
                                         uint32_t d,
                                         const struct SymhypRational *alpha,
                                         struct SymhypConditionReport **out);

// # Safety
// `report` must be a live condition report.
bool symhyp_condition_holds(const struct SymhypConditionReport *report);

// Cycle type of the witness, e.g. `"(2,1)"`, or NULL when the condition
// holds. Free with `symhyp_string_free`.
//
// # Safety
// `report` must be a live condition report.
char *symhyp_condition_witness(const struct SymhypConditionReport *report);

// Smallest sum of `d` exponents of the witness; fails with
// `SYMHYP_STATUS_DOMAIN` when the condition holds.
//
// # Safety
// `report` must be a live condition report; `out` must be writable.
enum SymhypStatus symhyp_condition_min_sum(const struct SymhypConditionReport *report,
                                           uint64_t *out);

// # Safety
// `report` must be NULL or a live condition report, which becomes invalid.
void symhyp_condition_report_free(struct SymhypConditionReport *report);

// `(2n-1)^5 (2m^2 + 10n - 1)`.
//
// # Safety
// `out` must be writable.
enum SymhypStatus symhyp_bound_kobayashi(uint64_t n, uint64_t m, struct SymhypBoundReport **out);

// `16 n^5 (5n + 2m^2 + 4)`.
//
// # Safety
// `out` must be writable.
enum SymhypStatus symhyp_bound_bk19(uint64_t n, uint64_t m, struct SymhypBoundReport **out);

// `(n + n')^((n + n')^2) 2m(m-1)` for `n' >= n`.
//
// # Safety
// `out` must be writable.
enum SymhypStatus symhyp_bound_debarre(uint64_t n,
                                       uint64_t nprime,
                                       uint64_t m,
                                       struct SymhypBoundReport **out);

// Criterion `d/r > 2m(m-1)`.
//
// # Safety
// `out` must be writable.
enum SymhypStatus symhyp_bound_hypcrit(uint64_t d,
                                       uint64_t r,
                                       uint64_t m,
                                       struct SymhypBoundReport **out);

// Dimension threshold `(m-1)n + 2`.
//
// # Safety
// `out` must be writable.
enum SymhypStatus symhyp_bound_subvariety(uint64_t n, uint64_t m, struct SymhypBoundReport **out);

// Degree threshold `n(m-1) + 6` for ball quotients.
//
// # Safety
// `out` must be writable.
enum SymhypStatus symhyp_bound_ball_quotient(uint64_t n,
                                             uint64_t m,
                                             struct SymhypBoundReport **out);

// Criterion `gamma delta > 2m(m-1)`.
//
// # Safety
// `gamma` and `delta` must be live rational handles; `out` must be
// writable.
enum SymhypStatus symhyp_bound_compact_quotient(const struct SymhypRational *gamma,
                                                const struct SymhypRational *delta,
                                                uint64_t m,
                                                struct SymhypBoundReport **out);

// Orbifold multiplicity of a fiber given as `"t:m,t:m,..."`, e.g.
// `"2:3,1:inf"`.
//
// # Safety
// `fiber` must be a valid NUL-terminated string; `out` must be writable.
enum SymhypStatus symhyp_bound_orbifold(const char *fiber, struct SymhypBoundReport **out);

// Exact value as text: an integer, `"p/q"`, `"inf"` or a verdict. Free with
// `symhyp_string_free`.
//
// # Safety
// `report` must be NULL or a live bound report.
char *symhyp_bound_value(const struct SymhypBoundReport *report);

// 1 if the criterion holds, 0 if not, -1 for plain bounds.
//
// # Safety
// `report` must be a live bound report.
int32_t symhyp_bound_satisfied(const struct SymhypBoundReport *report);

// Margin of a strict criterion; `SYMHYP_STATUS_UNSUPPORTED` for bounds
// without one.
//
// # Safety
// `report` must be a live bound report; `out` must be writable.
enum SymhypStatus symhyp_bound_margin(const struct SymhypBoundReport *report,
                                      struct SymhypRational **out);

// # Safety
// `report` must be NULL or a live bound report, which becomes invalid.
void symhyp_bound_report_free(struct SymhypBoundReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMHYP_H */
