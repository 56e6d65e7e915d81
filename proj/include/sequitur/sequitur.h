/* C interface to the sequitur library.
 *
 * Strings returned through char** are owned by the caller and released with
 * sq_string_free. On failure the out parameters are left untouched and the
 * calling thread's last error describes the problem. */
#ifndef SEQUITUR_SEQUITUR_H
#define SEQUITUR_SEQUITUR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SEQUITUR_BUILDING)
#define SQ_API __attribute__((visibility("default")))
#else
#define SQ_API
#endif

typedef enum sq_status {
  SQ_OK = 0,
  SQ_E_INVALID_ARGUMENT = 1,
  SQ_E_PARSE = 2,              /* calculus, goal or JSON text rejected */
  SQ_E_UNKNOWN_RULE = 3,
  SQ_E_STALE_GOAL = 4,
  SQ_E_ILLEGAL_APPLICATION = 5,
  SQ_E_NOT_A_CUT = 6,
  SQ_E_CHECK = 7,              /* checker precondition not met */
  SQ_E_INTERNAL = 8
} sq_status;

typedef struct sq_calculus sq_calculus;
typedef struct sq_session sq_session;

SQ_API const char* sq_version(void);
SQ_API const char* sq_status_name(sq_status status);

/* Message of the last failure on this thread, "" if none. */
SQ_API const char* sq_last_error(void);
/* {"error": CODE, "message": ..., "diagnostics": [{line, column, code, message}]} */
SQ_API const char* sq_last_error_json(void);

SQ_API void sq_string_free(char* s);

SQ_API sq_status sq_calculus_parse(const char* text, sq_calculus** out);
SQ_API void sq_calculus_free(sq_calculus* calc);
/* Zones, connectives and rules with their LaTeX. */
SQ_API sq_status sq_calculus_json(const sq_calculus* calc, char** out_json);
/* Canonical plain-text form. */
SQ_API sq_status sq_calculus_print(const sq_calculus* calc, char** out_text);

/* Render options are a JSON object or NULL:
 * {"macroStyle": "infer"|"bussproofs", "zoneSeparator": ";", "turnstile": "\\vdash"} */
SQ_API sq_status sq_render_sequent(const sq_calculus* calc, const char* goal,
                                   const char* options_json, char** out_latex);
SQ_API sq_status sq_render_rules(const sq_calculus* calc, const char* rule,
                                 const char* options_json, char** out_latex);
SQ_API sq_status sq_render_tree(const sq_calculus* calc, const char* tree_json,
                                const char* options_json, char** out_latex);
SQ_API sq_status sq_latex_document(const char* body, const char* options_json, char** out_latex);

/* Bounded proof search. *found is 0 and *out_json "null" when no proof exists
 * within depth; otherwise the proof tree. */
SQ_API sq_status sq_prove(const sq_calculus* calc, const char* goal, size_t depth, int* found,
                          char** out_json);

/* property: identity | weakening | invert | permute | cut.
 * params_json: {"rule", "ruleUp", "ruleDown", "depth", plus render options}.
 * Either output may be NULL. *worst is 0 when every case is proved, 2 when
 * some case is unknown and 3 when some case failed. */
SQ_API sq_status sq_check(const sq_calculus* calc, const char* property, const char* params_json,
                          char** out_report_json, char** out_report_tex, int* worst);

SQ_API sq_status sq_session_new(const sq_calculus* calc, const char* goal, sq_session** out);
SQ_API void sq_session_free(sq_session* session);
/* {"tree", "openGoals", "complete", "depth", "latex"} */
SQ_API sq_status sq_session_json(const sq_session* session, const char* options_json,
                                 char** out_json);
/* Ordered list of applications of `rule` to the open goal `goal_id`. */
SQ_API sq_status sq_session_applications(const sq_session* session, size_t goal_id,
                                         const char* rule, const char* options_json,
                                         char** out_json);
SQ_API sq_status sq_session_apply(sq_session* session, size_t goal_id, const char* rule,
                                  size_t index);
/* No effect at the initial goal. */
SQ_API sq_status sq_session_undo(sq_session* session);

#ifdef __cplusplus
}
#endif

#endif
