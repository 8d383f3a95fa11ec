/* Exercises the shared-library C interface: version and error reporting,
 * basis handles, scar amplitudes, and the JSON command runner.  Compiled as
 * plain C to prove the header needs no C++ compiler. */

#include <math.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "scarlab/scarlab.h"

static int failures = 0;

#define CHECK(cond)                                                     \
  do {                                                                  \
    if (!(cond)) {                                                      \
      fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond);   \
      ++failures;                                                       \
    }                                                                   \
  } while (0)

static void test_version(void) {
  const char* v = scarlab_version();
  CHECK(v != NULL);
  CHECK(v != NULL && strlen(v) > 0);
}

static void test_basis_handle(void) {
  scarlab_basis* b = scarlab_basis_new("lgt", 3, 2, 1, 1);
  CHECK(b != NULL);
  if (!b) return;
  CHECK(scarlab_basis_dimension(b) == 32);
  CHECK(scarlab_basis_n_qubits(b) == 12);

  uint64_t first = scarlab_basis_state_at(b, 0);
  CHECK(first != UINT64_MAX);

  CHECK(scarlab_basis_state_at(b, 9999) == UINT64_MAX);
  CHECK(strlen(scarlab_last_error()) > 0);

  scarlab_basis_free(b);

  CHECK(scarlab_basis_new("nonsense", 3, 2, 1, 1) == NULL);
  CHECK(strlen(scarlab_last_error()) > 0);
}

static void test_scar_amplitudes(void) {
  CHECK(scarlab_scar_count(3) == 12);
  CHECK(scarlab_scar_count(4) == 2);
  CHECK(scarlab_scar_count(1) == -1);

  scarlab_basis* b = scarlab_basis_new("lgt", 3, 2, 1, 1);
  CHECK(b != NULL);
  if (!b) return;
  int64_t dim = scarlab_basis_dimension(b);
  double* re = (double*)malloc((size_t)dim * sizeof(double));
  double* im = (double*)malloc((size_t)dim * sizeof(double));
  CHECK(re != NULL && im != NULL);

  int count = scarlab_scar_count(3);
  for (int idx = 0; idx < count; ++idx) {
    int rc = scarlab_scar_amplitudes(b, idx, re, im);
    CHECK(rc == SCARLAB_OK);
    double norm2 = 0.0;
    double max_im = 0.0;
    for (int64_t i = 0; i < dim; ++i) {
      norm2 += re[i] * re[i] + im[i] * im[i];
      if (fabs(im[i]) > max_im) max_im = fabs(im[i]);
    }
    CHECK(fabs(norm2 - 1.0) <= 1e-12);
    CHECK(max_im <= 1e-15); /* amplitudes are real in this gauge */
  }

  /* A NULL imaginary buffer is allowed. */
  CHECK(scarlab_scar_amplitudes(b, 0, re, NULL) == SCARLAB_OK);

  CHECK(scarlab_scar_amplitudes(b, count, re, im) == SCARLAB_ERR_USAGE);
  CHECK(scarlab_scar_amplitudes(NULL, 0, re, im) == SCARLAB_ERR_USAGE);

  free(re);
  free(im);
  scarlab_basis_free(b);
}

static void test_run(void) {
  char* payload = NULL;
  int rc = scarlab_run("{\"command\": \"scar-table\", \"L\": 3}", &payload);
  CHECK(rc == SCARLAB_OK);
  CHECK(payload != NULL);
  if (payload) {
    CHECK(strstr(payload, "scars") != NULL);
    scarlab_free(payload);
  }

  payload = NULL;
  rc = scarlab_run("{\"command\": \"no-such-command\"}", &payload);
  CHECK(rc == SCARLAB_ERR_USAGE);
  CHECK(payload == NULL);
  CHECK(strlen(scarlab_last_error()) > 0);

  CHECK(scarlab_run(NULL, &payload) == SCARLAB_ERR_USAGE);
  CHECK(scarlab_run("{\"command\": \"scar-table\"}", NULL) == SCARLAB_ERR_USAGE);

  /* Malformed JSON is a usage error, not a crash. */
  payload = NULL;
  CHECK(scarlab_run("{not json", &payload) == SCARLAB_ERR_USAGE);
}

int main(void) {
  test_version();
  test_basis_handle();
  test_scar_amplitudes();
  test_run();
  if (failures == 0) {
    printf("c_api: all checks passed\n");
    return 0;
  }
  fprintf(stderr, "c_api: %d check(s) failed\n", failures);
  return 1;
}
