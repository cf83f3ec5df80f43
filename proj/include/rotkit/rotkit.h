#ifndef ROTKIT_H
#define ROTKIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RK_API __declspec(dllexport)
#else
#define RK_API __attribute__((visibility("default")))
#endif

/* Status codes. On anything but RK_OK, rk_last_error() describes the failure. */
typedef enum rk_status {
  RK_OK = 0,
  RK_ERR_PARSE = 1,
  RK_ERR_STRUCTURE = 2,
  RK_ERR_DOMAIN = 3,
  RK_ERR_DERIVATION = 4,
  RK_ERR_SURGERY = 5,
  RK_ERR_NOT_FOUND = 6,
  RK_ERR_IO = 7,
  RK_ERR_ARGUMENT = 8,
  RK_ERR_INTERNAL = 9
} rk_status;

typedef struct rk_rotation rk_rotation;
typedef struct rk_report rk_report;

typedef struct rk_stats {
  int64_t vertices;
  int64_t edges;
  int64_t faces;
  int64_t genus;
} rk_stats;

/* Message of the last failure on this thread; empty after a success. */
RK_API const char* rk_last_error(void);
RK_API const char* rk_status_name(rk_status status);

/* Strings returned through char** are owned by the caller. The report
   out-parameters of rk_derive, rk_apply and rk_search may be NULL. */
RK_API void rk_string_free(char* s);

RK_API rk_status rk_rotation_parse(const char* text, rk_rotation** out);
RK_API rk_status rk_rotation_read(const char* path, rk_rotation** out);
RK_API rk_status rk_rotation_write(const rk_rotation* rot, const char* path);
RK_API rk_status rk_rotation_text(const rk_rotation* rot, char** out);
RK_API rk_status rk_rotation_stats(const rk_rotation* rot, rk_stats* out);
RK_API void rk_rotation_free(rk_rotation* rot);

/* Derived embedding of a log bundle file, with a report of its census. */
RK_API rk_status rk_derive(const char* bundle_path, rk_rotation** out, rk_report** report);

/* Applies a surgery script file. The report is produced even when a step fails. */
RK_API rk_status rk_apply(const rk_rotation* rot, const char* script_path, rk_rotation** out, rk_report** report);

/* Completion search. RK_ERR_NOT_FOUND when the bounds are exhausted; the
   report then names the bounds. On success *script holds the first result. */
RK_API rk_status rk_search(const rk_rotation* rot, const char* spec_path, char** script, rk_report** report);

/* complete_n <= 0 skips the K_n check. */
RK_API rk_status rk_verify_file(const char* path, int complete_n, rk_report** out);
RK_API rk_status rk_check_logs(const char* bundle_path, rk_report** out);

/* name is k18, k20 or k23; out_dir may be NULL. */
RK_API rk_status rk_run_case(const char* name, const char* data_dir, const char* out_dir, rk_report** out);

RK_API int rk_report_passed(const rk_report* report);
RK_API rk_status rk_report_text(const rk_report* report, char** out);
RK_API rk_status rk_report_json(const rk_report* report, char** out);
RK_API void rk_report_free(rk_report* report);

#ifdef __cplusplus
}
#endif

#endif
