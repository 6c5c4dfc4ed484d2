/* orderlab — exact computation with positively ordered semigroups.
 *
 * C interface over the C++ core: opaque handles, integer status codes,
 * JSON text in and out. Every returned string is heap-allocated and must
 * be released with ol_string_free. Handles are immutable after creation
 * and safe to share across threads for read-only use.
 */
#ifndef ORDERLAB_H
#define ORDERLAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ol_instance ol_instance;

typedef enum ol_status {
  OL_OK = 0,
  OL_PARSE_ERROR = 1,
  OL_BACKEND_MISMATCH = 2,
  OL_NOT_AN_IDEAL = 3,
  OL_UNSUPPORTED_PROPERTY = 4,
  OL_UNSUPPORTED_BACKEND = 5,
  OL_HYPOTHESIS_FAILURE = 6,
  OL_NOT_ORDER_PRESERVING = 7,
  OL_BAD_ARGUMENT = 8,
  OL_INTERNAL_ERROR = 9
} ol_status;

const char* ol_version(void);

/* thread-local description of the last failure */
const char* ol_last_error(void);

void ol_string_free(char* s);

/* ---- instances ------------------------------------------------------- */

/* parses an instance document (see docs/instance-format.md) */
ol_status ol_instance_parse(const char* json_text, ol_instance** out);

/* loads a named instance from the built-in catalog */
ol_status ol_catalog_instance(const char* name, ol_instance** out);

void ol_instance_free(ol_instance* inst);

/* round-trips the instance back to its document form */
ol_status ol_instance_to_json(const ol_instance* inst, char** out);

/* catalog listing with construction notes and expected verdicts */
ol_status ol_catalog_list(char** out);

/* ---- budgets ----------------------------------------------------------
 * budget_json may be NULL for the defaults; otherwise an object with any
 * of "sample_box", "n_max", "coeff_bound", "chain_depth".                */

/* ---- core operations --------------------------------------------------
 * Elements are JSON literals in the instance's element format. Verdicts
 * come back as {"value":"yes|no|unknown","certificate":{...}}.           */

ol_status ol_add(const ol_instance* inst, const char* x, const char* y, char** out);
ol_status ol_leq(const ol_instance* inst, const char* x, const char* y, const char* budget_json,
                 char** verdict);
ol_status ol_contains(const ol_instance* inst, const char* vector_json, const char* budget_json,
                      char** verdict);

/* relations: which is one of "s", "p", "d" */
ol_status ol_rel(const ol_instance* inst, const char* which, const char* x, const char* y,
                 const char* budget_json, char** verdict);

/* property names are kebab-case (e.g. "almost-unperforated") */
ol_status ol_check_property(const ol_instance* inst, const char* property,
                            const char* budget_json, char** verdict);

/* full property matrix, implication suite and summaries */
ol_status ol_report(const ol_instance* inst, const char* budget_json, char** out);

/* ---- grothendieck ------------------------------------------------------
 * request: {"elements":[g,...]} with group elements in the instance's
 * group-carrier format; the reply carries the group descriptor and a cone
 * membership table over Gr+, Gr++ and their au hulls.                     */
ol_status ol_gr(const ol_instance* inst, const char* request_json, const char* budget_json,
                char** out);

/* ---- tensor product ----------------------------------------------------
 * formal sums are lists of [element, "compact:n" | "soft:p/q" | "soft:inf"] */
ol_status ol_tensor_leq(const ol_instance* inst, const char* lhs_json, const char* rhs_json,
                        const char* budget_json, char** out);
ol_status ol_unit_leq(const ol_instance* inst, const char* x, const char* y,
                      const char* budget_json, char** verdict);

/* ---- Cu layer ----------------------------------------------------------
 * request:
 *   {"op":"axiom","axiom":"O5|O6|weak-cancellation|almost-divisible"}
 *   {"op":"leq","u":{...},"v":{...},"depth":8}
 *   {"op":"unit-leq","u":{...},"v":{...}}
 *   {"op":"thm65"}
 *   {"op":"tensor-compacts"}
 *   {"op":"interpolate","x":elem,"s":"p/q","t":"p/q"}
 *   {"op":"compact-test","f":[[elem, zval],...]}                         */
ol_status ol_cu(const ol_instance* inst, const char* request_json, const char* budget_json,
                char** out);

/* ---- verify ------------------------------------------------------------
 * request: {"theorems":["P4.3",...] (empty = all),
 *           "instances":["cuz",...] (empty = whole catalog)}
 * any_fail is set to 1 when some check fails.                             */
ol_status ol_verify(const char* request_json, const char* budget_json, char** report,
                    int* any_fail);

#ifdef __cplusplus
}
#endif

#endif /* ORDERLAB_H */
