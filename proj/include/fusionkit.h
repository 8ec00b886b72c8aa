/* C interface to the fusion-system toolkit.
 *
 * Every entry point returns one of the FK_* status codes.  On FK_OK the
 * out_json parameter (where present) receives a NUL-terminated JSON
 * document allocated by the library; release it with fk_string_free.  On
 * failure the output is untouched and fk_last_error() describes the fault
 * for the calling thread.
 *
 * Group selectors: alt:n, sym:n, cyclic:n, dihedral:k, semidihedral:k,
 * quaternion:k, elemabelian:p:r, psl2:q, m11, file:path.  A group file
 * holds `degree: n`, optional `p: q`, then `generators:` with one
 * cycle-notation permutation per line.  Pass p = 0 to use the prime from a
 * group file; selectors without one then fail with FK_EINPUT.
 */

#ifndef FUSIONKIT_H
#define FUSIONKIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define FK_OK 0        /* success */
#define FK_EINPUT 1    /* malformed selector, file, prime or argument */
#define FK_ECAPACITY 2 /* a configured size cap was exceeded */
#define FK_EINTERNAL 3 /* invariant failure inside the library */

/* Search caps.  A zero field means the default in parentheses. */
typedef struct fk_caps {
  uint64_t max_s_order;        /* largest |S| accepted (512) */
  uint64_t max_morphisms;      /* morphism-closure bound (1000000) */
  uint64_t max_aut_bruteforce; /* automorphism enumeration bound (10000) */
} fk_caps;

/* Library version string, statically allocated. */
const char* fk_version(void);

/* Description of the last failure on this thread; empty if none. */
const char* fk_last_error(void);

/* Releases a string returned through an out_json parameter. */
void fk_string_free(char* s);

/* Structural report of the fusion system of the selected group at p:
 * class table, focal and hyperfocal subgroups, cores, saturation,
 * reducedness, constraint and the reduction trace.  with_linking adds the
 * automorphism transfer data (kappa/mu kernel analysis). */
int fk_analyze(const char* selector, int p, int with_linking,
               const fk_caps* caps, char** out_json);

/* Reduction trace of the system: core-centralizer quotient, then
 * alternating minimal subsystems of p-power and prime-to-p index. */
int fk_reduce(const char* selector, int p, const fk_caps* caps,
              char** out_json);

/* Isomorphism test between the systems of two groups at the same prime,
 * with a witness generator mapping when one exists. */
int fk_compare(const char* selector_a, const char* selector_b, int p,
               const fk_caps* caps, char** out_json);

/* Automorphism transfer report alone. */
int fk_linking(const char* selector, int p, const fk_caps* caps,
               char** out_json);

/* Built-in example groups with orders and default primes. */
int fk_catalog(char** out_json);

/* A constructed fusion system held by the library for repeated queries. */
typedef struct fk_system fk_system;

int fk_system_open(const char* selector, int p, const fk_caps* caps,
                   fk_system** out);
void fk_system_close(fk_system* s);

/* Prime and Sylow order of an open system. */
int fk_system_p(const fk_system* s);
uint64_t fk_system_s_order(const fk_system* s);

/* Same document as fk_analyze, computed from the held system. */
int fk_system_analyze(fk_system* s, int with_linking, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* FUSIONKIT_H */
