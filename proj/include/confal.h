#ifndef CONFAL_H
#define CONFAL_H

/*
 * C interface to the exact conformal-algebra engine.
 *
 * Handles are opaque; every fallible call returns a status code and reports
 * detail through optional out-parameters.  All returned strings are owned by
 * the caller and released with confal_free_string.
 *
 * Status codes:
 *   0  success / property verified
 *   1  verification failure (axioms or certified identity broken)
 *   2  parse or usage error
 *   3  computation exceeded a declared bound
 *   70 internal error
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct confal_algebra confal_algebra;

const char* confal_version(void);

/* NULL on failure; *err (when non-NULL) receives the message. */
confal_algebra* confal_load_file(const char* path, char** err);
confal_algebra* confal_load_string(const char* text, char** err);
void confal_release(confal_algebra* alg);
void confal_free_string(char* s);

/* Axiom suite of the declared kind on d-power instances up to max_dpow
 * (max_dpow <= 0 selects the default).  *report carries the outcome text,
 * including any violations. */
int confal_verify(confal_algebra* alg, int max_dpow, char** report, char** err);

/* Completion of the enveloping module system under the file's declared
 * order and bounds; *out receives the rule certificate. */
int confal_complete(confal_algebra* alg, char** out, char** err);

/* Reduced form of an element expression over the completed envelope.
 * Grammar: prod(n, e1, e2) | d(e) | c:<rational>*<e> | e + e | generator. */
int confal_normal_form(confal_algebra* alg, const char* expr, char** out,
                       char** err);

/* Irreducible module words with X-degree <= max_degree and at most max_dpow
 * translation letters, ascending in the completion order. */
int confal_basis(confal_algebra* alg, int max_degree, int max_dpow, char** out,
                 char** err);

/* Graded Poisson tables and the plain lambda-table of the file itself.
 * target: "pv2" | "pv3" | "pk10" | "pk10hat" | "generic". */
int confal_table(confal_algebra* alg, const char* target, int cap, char** out,
                 char** err);

#ifdef __cplusplus
}
#endif

#endif /* CONFAL_H */
