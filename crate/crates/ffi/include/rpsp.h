#ifndef RPSP_H
#define RPSP_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call.
 */
typedef enum RpspStatus {
  RPSP_STATUS_OK = 0,
  RPSP_STATUS_NULL_POINTER = 1,
  RPSP_STATUS_INVALID_UTF8 = 2,
  RPSP_STATUS_PARSE = 3,
  RPSP_STATUS_INVALID_INSTANCE = 4,
  RPSP_STATUS_INVALID_PACKING = 5,
  RPSP_STATUS_INVALID_PARAMETER = 6,
  RPSP_STATUS_SIZE_LIMIT = 7,
  RPSP_STATUS_INTERNAL = 8,
  RPSP_STATUS_BUFFER_TOO_SMALL = 9,
} RpspStatus;

/**
 * Solver selection, see `rpsp_solve`.
 */
typedef enum RpspAlgo {
  RPSP_ALGO_AUTO = 0,
  RPSP_ALGO_FPT = 1,
  RPSP_ALGO_ONE_REJECTION = 2,
  RPSP_ALGO_BRUTE = 3,
  RPSP_ALGO_KE = 4,
} RpspAlgo;

/**
 * A validated instance.
 */
typedef struct RpspInstance RpspInstance;

/**
 * The answer and witness of a solve call.
 */
typedef struct RpspSolveResult RpspSolveResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *rpsp_last_error_message(void);

/**
 * Parses an instance in `rpsp` or `kep` text format; `kep` graphs are
 * translated to their set packing instance.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum RpspStatus rpsp_instance_parse(const char *text, struct RpspInstance **out);

/**
 * # Safety
 * `inst` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void rpsp_instance_free(struct RpspInstance *inst);

/**
 * Writes the canonical `rpsp` text of `inst` to `*out`; release it with
 * `rpsp_string_free`.
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum RpspStatus rpsp_instance_serialize(const struct RpspInstance *inst, char **out);

/**
 * Number of sets, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t rpsp_instance_num_sets(const struct RpspInstance *inst);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t rpsp_instance_num_elements(const struct RpspInstance *inst);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void rpsp_string_free(char *s);

/**
 * Decides the instance at rejection budget `budget` (-1 for unbounded).
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum RpspStatus rpsp_solve(const struct RpspInstance *inst,
                           int64_t budget,
                           enum RpspAlgo algo,
                           struct RpspSolveResult **out);

/**
 * 1 for a yes answer, 0 for no or a null handle.
 *
 * # Safety
 * `res` must be null or a live handle.
 */
int rpsp_result_is_yes(const struct RpspSolveResult *res);

/**
 * Number of sets in the witness (0 when there is none).
 *
 * # Safety
 * `res` must be null or a live handle.
 */
size_t rpsp_result_witness_len(const struct RpspSolveResult *res);

/**
 * Copies the witness set indices into `buf`, which holds `cap` entries.
 * `*written` receives the witness length, also when the buffer is too
 * small.
 *
 * # Safety
 * `res` must be a live handle, `buf` valid for `cap` writes and `written` a
 * valid pointer.
 */
enum RpspStatus rpsp_result_witness(const struct RpspSolveResult *res,
                                    size_t *buf,
                                    size_t cap,
                                    size_t *written);

/**
 * # Safety
 * `res` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void rpsp_result_free(struct RpspSolveResult *res);

/**
 * Sets `*ok` to 1 when the packing given by `len` set indices covers at
 * least `k` elements and no agent rejects it within `budget` (-1 for
 * unbounded), else 0. Overlapping or unknown sets yield
 * `RPSP_STATUS_INVALID_PACKING`.
 *
 * # Safety
 * `inst` must be a live handle, `sets` valid for `len` reads and `ok` a
 * valid pointer.
 */
enum RpspStatus rpsp_verify(const struct RpspInstance *inst,
                            const size_t *sets,
                            size_t len,
                            int64_t budget,
                            int *ok);

/**
 * Runs the kernel. On a decided yes, `*decided_yes` is 1 and `*reduced` is
 * null; otherwise `*reduced` receives a new handle for the reduced
 * instance. A non-zero `eager` keeps reducing below the size bound.
 *
 * # Safety
 * `inst` must be a live handle; `decided_yes` and `reduced` valid pointers.
 */
enum RpspStatus rpsp_kernelize(const struct RpspInstance *inst,
                               int eager,
                               int *decided_yes,
                               struct RpspInstance **reduced);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RPSP_H */
