#ifndef QCAP_H
#define QCAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QcapStatus {
  QCAP_STATUS_OK = 0,
  QCAP_STATUS_NULL_POINTER = 1,
  QCAP_STATUS_INVALID_ARGUMENT = 2,
  QCAP_STATUS_INVALID_CODE = 3,
  QCAP_STATUS_TOO_LARGE = 4,
  QCAP_STATUS_NO_THRESHOLD = 5,
  QCAP_STATUS_NUMERICAL = 6,
  QCAP_STATUS_PANIC = 7,
} QcapStatus;

/*
 Opaque stabilizer code handle.
 */
typedef struct QcapCode QcapCode;

/*
 Capacity of a code or scheme, mirroring the Rust result type.
 */
typedef struct QcapCapacity {
  double q_ss;
  double s_x2;
  double h_syndrome;
  double h_joint;
  size_t p;
} QcapCapacity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or an empty string.
 The pointer stays valid until the next call into this library.
 */
const char *qcap_last_error(void);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QcapStatus qcap_code_cat(size_t p, struct QcapCode **out);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QcapStatus qcap_code_rotated_cat(size_t p, struct QcapCode **out);

/*
 Parses a JSON code description
 `{"n": .., "generators": [..], "logical_x": .., "logical_z": ..}`.

 # Safety
 `json` must be a NUL-terminated string and `out` valid for writes.
 */
enum QcapStatus qcap_code_from_json(const char *json, struct QcapCode **out);

/*
 # Safety
 `code` must be null or a handle not yet freed.
 */
void qcap_code_free(struct QcapCode *code);

/*
 Number of physical qubits, or 0 for a null handle.

 # Safety
 `code` must be null or a live handle.
 */
size_t qcap_code_n(const struct QcapCode *code);

/*
 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum QcapStatus qcap_qss_depolarizing(const struct QcapCode *code,
                                      double f,
                                      struct QcapCapacity *out);

/*
 Capacity under the Pauli channel `probs = {pI, pX, pY, pZ}`.

 # Safety
 `code` must be a live handle, `probs` must point to four doubles and
 `out` must be valid for writes.
 */
enum QcapStatus qcap_qss_pauli(const struct QcapCode *code,
                               const double *probs,
                               struct QcapCapacity *out);

/*
 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum QcapStatus qcap_coherent_information(const struct QcapCode *code, double f, double *out);

/*
 Closed-form capacity of `cat(p)`; any `p >= 1`.

 # Safety
 `out` must be valid for writes.
 */
enum QcapStatus qcap_cat_qss(size_t p, double f, struct QcapCapacity *out);

/*
 `1 - H(f, (1-f)/3, (1-f)/3, (1-f)/3)`.
 */
double qcap_hashing_capacity(double f);

double qcap_asymptotic_threshold(void);

/*
 # Safety
 `out` must be valid for writes.
 */
enum QcapStatus qcap_cat_threshold(size_t p, double *out);

/*
 Capacity of `count` nested codes, innermost first.

 # Safety
 `levels` must point to `count` live handles and `out` must be valid for
 writes.
 */
enum QcapStatus qcap_concatenated_qss(const struct QcapCode *const *levels,
                                      size_t count,
                                      double f,
                                      struct QcapCapacity *out);

/*
 Threshold of a rotated `cat(5)` inner code under a `cat(5)` outer code.

 # Safety
 `out` must be valid for writes.
 */
enum QcapStatus qcap_double_cat_threshold(double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCAP_H */
