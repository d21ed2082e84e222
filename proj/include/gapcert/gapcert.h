/* C interface to the gapcert library. All handles are opaque; strings
 * returned through char** are owned by the caller and released with
 * gc_string_free. Error text for the last failing call on the current thread
 * is available from gc_last_error. */
#ifndef GAPCERT_GAPCERT_H
#define GAPCERT_GAPCERT_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(GAPCERT_BUILDING)
#define GC_API __attribute__((visibility("default")))
#else
#define GC_API
#endif

typedef struct gc_instance gc_instance;
typedef struct gc_report gc_report;
typedef struct gc_scan gc_scan;

typedef enum {
  GC_OK = 0,
  GC_ERR_PARSE = 1,              /* malformed document or missing field */
  GC_ERR_INVALID_PERMUTATION = 2,
  GC_ERR_UNSUPPORTED = 3,        /* parameter outside the supported range */
  GC_ERR_REJECTED = 4,           /* directed, disconnected, bipartite, not invariant */
  GC_ERR_PRECONDITION = 5,
  GC_ERR_NUMERIC = 6,            /* eigensolver or conditioning failure */
  GC_ERR_ARGUMENT = 7,           /* null pointer or bad option value */
  GC_ERR_INTERNAL = 8
} gc_status;

typedef enum { GC_FORMAT_JSON = 0, GC_FORMAT_CSV = 1 } gc_format;

typedef struct {
  double xi;           /* used only when xi_set != 0; must lie in [0, 1] */
  int xi_set;
  double tolerance;    /* relative slack for every inequality */
  int max_exact_bipartiteness;
  int max_exact_cheeger;
  int max_group_order;
  int max_instances;   /* overrides the family spec cap when > 0 */
  int workers;         /* scan threads */
} gc_options;

GC_API void gc_options_default(gc_options* options);

GC_API gc_status gc_instance_from_file(const char* path, const gc_options* options, gc_instance** out);
GC_API gc_status gc_instance_from_json(const char* json, const gc_options* options, gc_instance** out);
GC_API void gc_instance_free(gc_instance* instance);

/* Sets *valid to 1 or 0; *reason receives the rejection reason (empty when valid). */
GC_API gc_status gc_instance_validation(const gc_instance* instance, int* valid, char** reason);
GC_API int gc_instance_vertex_count(const gc_instance* instance);
GC_API int gc_instance_degree(const gc_instance* instance);

/* JSON document with the descending eigenvalues, mu and mu2. */
GC_API gc_status gc_spectrum_json(const gc_instance* instance, char** out);

GC_API gc_status gc_certify(const gc_instance* instance, const gc_options* options, gc_report** out);
/* 1 when no check failed. */
GC_API int gc_report_overall(const gc_report* report);
GC_API int gc_report_failed_count(const gc_report* report);
GC_API int gc_report_check_count(const gc_report* report);
GC_API gc_status gc_report_serialize(const gc_report* report, gc_format format, char** out);
GC_API gc_status gc_report_hypothesis_summary(const gc_report* report, char** out);
GC_API void gc_report_free(gc_report* report);

GC_API gc_status gc_scan_from_file(const char* path, const gc_options* options, gc_scan** out);
GC_API gc_status gc_scan_from_json(const char* json, const gc_options* options, gc_scan** out);
GC_API int gc_scan_failed_count(const gc_scan* scan);
GC_API int gc_scan_certified_count(const gc_scan* scan);
GC_API gc_status gc_scan_serialize(const gc_scan* scan, gc_format format, char** out);
GC_API void gc_scan_free(gc_scan* scan);

GC_API void gc_string_free(char* s);
GC_API const char* gc_last_error(void);
GC_API const char* gc_status_name(gc_status status);

#ifdef __cplusplus
}
#endif

#endif /* GAPCERT_GAPCERT_H */
