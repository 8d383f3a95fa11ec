/* C interface of the scarlab shared library.
 *
 * Conventions:
 *   - Functions returning int use 0 for success; nonzero codes are
 *     SCARLAB_ERR_* values below (scarlab_run additionally passes through
 *     the command's own exit code).
 *   - After any failure, scarlab_last_error() returns a thread-local
 *     human-readable message (valid until the next call on that thread).
 *   - Strings returned through char** are heap-allocated; release them
 *     with scarlab_free().
 */
#ifndef SCARLAB_H
#define SCARLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SCARLAB_OK 0
#define SCARLAB_ERR_VERIFY 1 /* checks ran and failed */
#define SCARLAB_ERR_USAGE 2  /* invalid configuration or arguments */
#define SCARLAB_ERR_RUNTIME 3

const char* scarlab_version(void);
const char* scarlab_last_error(void);
void scarlab_free(char* p);

/* Executes one run configuration (JSON document mirroring the CLI flags:
 * command, side, L, k, g, epsilon, epsilon_plaquette, vx, vy, cut_a, cut_b,
 * t0, t1, nt, layers, initial, alpha, kidx, route, seed, out, format).
 * On success *payload receives the rendered output (also written to the
 * `out` path when that field is set).  Returns SCARLAB_OK, SCARLAB_ERR_VERIFY
 * when a verification command found failures (payload still filled), or an
 * error code with *payload = NULL. */
int scarlab_run(const char* config_json, char** payload);

/* ---- sector bases ------------------------------------------------------ */

typedef struct scarlab_basis scarlab_basis;

/* side is "lgt" or "ising"; vx, vy are the gauge-sector ribbon eigenvalues
 * (ignored on the spin side).  NULL on error. */
scarlab_basis* scarlab_basis_new(const char* side, int L, int k, int vx,
                                 int vy);
void scarlab_basis_free(scarlab_basis* b);

int64_t scarlab_basis_dimension(const scarlab_basis* b);
int scarlab_basis_n_qubits(const scarlab_basis* b);
/* Packed configuration bits of basis element i (bit q = link/spin q). */
uint64_t scarlab_basis_state_at(const scarlab_basis* b, int64_t i);

/* ---- scar states ------------------------------------------------------- */

/* Number of scar labels at this L: 2 for even L, 4L for odd L;
 * -1 on invalid L. */
int scarlab_scar_count(int L);

/* Amplitudes of scar state `index` (0 .. scarlab_scar_count-1, label order:
 * defect column outer, family inner) in the given basis.  out_re/out_im must
 * hold scarlab_basis_dimension(b) doubles each; out_im may be NULL (the
 * amplitudes are real).  Returns 0 on success. */
int scarlab_scar_amplitudes(const scarlab_basis* b, int index, double* out_re,
                            double* out_im);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SCARLAB_H */
