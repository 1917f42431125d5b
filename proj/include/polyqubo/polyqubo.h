// Copyright 2026 The polyqubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

/*
 * C interface to polyqubo: compile polynomial and linear systems of equations
 * into pseudo-Boolean objectives and QUBO matrices, and solve them by
 * exhaustive search, simulated annealing or conjugate gradient.
 *
 * Every object is an opaque handle released with its *_free function. Every
 * fallible call returns a pq_status; on failure pq_last_error() holds a
 * message for the calling thread. Strings returned through char** out
 * parameters are released with pq_string_free. Matrices are row-major.
 *
 * Bit layout: bit r of variable j is bits[j * R + r] (little-endian within
 * each variable). Quadratized QUBOs append auxiliary bits after the logical
 * ones.
 */

#ifndef POLYQUBO_POLYQUBO_H
#define POLYQUBO_POLYQUBO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(POLYQUBO_BUILDING_LIBRARY)
#    define PQ_API __declspec(dllexport)
#  else
#    define PQ_API __declspec(dllimport)
#  endif
#else
#  define PQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pq_status {
    PQ_OK = 0,
    PQ_ERR_INVALID_ARGUMENT = 1,
    PQ_ERR_DIMENSION_MISMATCH = 2,
    PQ_ERR_PARSE = 3,
    PQ_ERR_IO = 4,
    PQ_ERR_LIMIT_EXCEEDED = 5,
    PQ_ERR_UNSUPPORTED = 6,
    PQ_ERR_NUMERICAL = 7,
    PQ_ERR_NOT_CONVERGED = 8,
    PQ_ERR_INVALID_HANDLE = 9,
    PQ_ERR_INTERNAL = 99
} pq_status;

typedef struct pq_system pq_system;
typedef struct pq_encoding pq_encoding;
typedef struct pq_pubo pq_pubo;
typedef struct pq_qubo pq_qubo;
typedef struct pq_samples pq_samples;
typedef struct pq_dataset pq_dataset;
typedef struct pq_sweep_report pq_sweep_report;
typedef struct pq_trace pq_trace;

PQ_API const char* pq_version(void);
PQ_API const char* pq_status_name(pq_status status);
/* Message of the most recent failure on this thread ("" if none). */
PQ_API const char* pq_last_error(void);
PQ_API void pq_string_free(char* str);

/* ---- polynomial systems ------------------------------------------------ */

PQ_API pq_status pq_system_parse_json(const char* text, pq_system** out);
PQ_API pq_status pq_system_load(const char* path, pq_system** out);
/* Degree-1 system P0 + P1 x; p1 is n_equations x n_variables. */
PQ_API pq_status pq_system_create_linear(size_t n_equations, size_t n_variables, const double* p1, const double* p0,
                                         pq_system** out);
PQ_API void pq_system_free(pq_system* system);
PQ_API pq_status pq_system_shape(const pq_system* system, size_t* n_equations, size_t* n_variables, size_t* degree);
PQ_API pq_status pq_system_to_json(const pq_system* system, char** out);
PQ_API pq_status pq_system_residuals(const pq_system* system, const double* x, size_t n_x, double* out, size_t n_out);
PQ_API pq_status pq_system_chi_squared(const pq_system* system, const double* x, size_t n_x, double* out);
/* P1 (n_equations x n_variables) and P0; either output may be NULL. */
PQ_API pq_status pq_system_linear_parts(const pq_system* system, double* p1, size_t n_p1, double* p0, size_t n_p0);

/* ---- bit encodings ----------------------------------------------------- */

PQ_API pq_status pq_encoding_create(const double* scale, const double* offset, size_t n_variables,
                                    unsigned bits_per_var, pq_encoding** out);
PQ_API pq_status pq_encoding_from_range(const double* lo, const double* hi, size_t n_variables, unsigned bits_per_var,
                                        pq_encoding** out);
PQ_API pq_status pq_encoding_refine(const pq_encoding* encoding, const double* x_star, size_t n_x, pq_encoding** out);
PQ_API void pq_encoding_free(pq_encoding* encoding);
PQ_API pq_status pq_encoding_shape(const pq_encoding* encoding, size_t* n_variables, unsigned* bits_per_var);
/* Either output may be NULL. */
PQ_API pq_status pq_encoding_params(const pq_encoding* encoding, double* scale, double* offset, size_t n);
PQ_API pq_status pq_encoding_decode(const pq_encoding* encoding, const uint8_t* bits, size_t n_bits, double* x,
                                    size_t n_x);

/* ---- compilation ------------------------------------------------------- */

typedef enum pq_aux_mode { PQ_AUX_LAZY = 0, PQ_AUX_ALL = 1 } pq_aux_mode;

/* Residual sum of squares as a pseudo-Boolean polynomial, constants included. */
PQ_API pq_status pq_compile_pubo(const pq_system* system, const pq_encoding* encoding, pq_pubo** out);
PQ_API void pq_pubo_free(pq_pubo* pubo);
PQ_API pq_status pq_pubo_info(const pq_pubo* pubo, size_t* num_bits, size_t* num_terms, size_t* max_order,
                              double* offset);
PQ_API pq_status pq_pubo_energy(const pq_pubo* pubo, const uint8_t* bits, size_t n_bits, double* out);
PQ_API pq_status pq_choose_penalty(const pq_pubo* pubo, double* out);
PQ_API pq_status pq_quadratize(const pq_pubo* pubo, double penalty, pq_aux_mode mode, pq_qubo** out);
/* ||P1 x + P0||^2 for a degree-1 system. */
PQ_API pq_status pq_compile_linear_qubo(const pq_system* system, const pq_encoding* encoding, pq_qubo** out);

PQ_API void pq_qubo_free(pq_qubo* qubo);
PQ_API pq_status pq_qubo_info(const pq_qubo* qubo, size_t* num_bits, size_t* num_logical, size_t* num_aux,
                              double* offset, double* penalty);
PQ_API pq_status pq_qubo_entry(const pq_qubo* qubo, size_t i, size_t j, double* out);
PQ_API pq_status pq_qubo_aux_pair(const pq_qubo* qubo, size_t aux_index, size_t* i, size_t* j);
PQ_API pq_status pq_qubo_energy(const pq_qubo* qubo, const uint8_t* bits, size_t n_bits, double* out);
/* Extends logical bits with auxiliaries equal to their pair products. */
PQ_API pq_status pq_qubo_lift(const pq_qubo* qubo, const uint8_t* logical, size_t n_logical, uint8_t* out,
                              size_t n_out);
PQ_API pq_status pq_qubo_to_text(const pq_qubo* qubo, char** out);
PQ_API pq_status pq_qubo_parse_text(const char* text, pq_qubo** out);

/* ---- solvers ----------------------------------------------------------- */

typedef struct pq_anneal_params {
    uint64_t reads;
    size_t sweeps;
    uint64_t seed;
    double t_hot;  /* <= 0 selects max|q| * L */
    double t_cold; /* <= 0 selects 1e-3 * min non-zero |q| */
    unsigned workers; /* 0 = hardware concurrency */
} pq_anneal_params;

PQ_API void pq_anneal_params_default(pq_anneal_params* params);

typedef enum pq_backend_kind { PQ_BACKEND_BRUTE = 0, PQ_BACKEND_ANNEAL = 1 } pq_backend_kind;

typedef struct pq_backend {
    pq_backend_kind kind;
    size_t max_bits; /* brute force limit */
    pq_anneal_params anneal;
} pq_backend;

PQ_API void pq_backend_default(pq_backend* backend, pq_backend_kind kind);

PQ_API pq_status pq_brute_force_pubo(const pq_pubo* pubo, size_t max_bits, pq_samples** out);
PQ_API pq_status pq_brute_force_qubo(const pq_qubo* qubo, size_t max_bits, pq_samples** out);
PQ_API pq_status pq_anneal(const pq_qubo* qubo, const pq_anneal_params* params, pq_samples** out);
PQ_API pq_status pq_solve_qubo(const pq_qubo* qubo, const pq_backend* backend, pq_samples** out);

PQ_API void pq_samples_free(pq_samples* samples);
PQ_API pq_status pq_samples_info(const pq_samples* samples, size_t* num_records, uint64_t* total_reads,
                                 size_t* num_bits, double* min_energy, double* hit_fraction);
/* Record idx in ascending energy order; bits may be NULL. */
PQ_API pq_status pq_samples_record(const pq_samples* samples, size_t idx, uint8_t* bits, size_t n_bits,
                                   double* energy, uint64_t* count);
PQ_API pq_status pq_samples_to_json(const pq_samples* samples, char** out);

typedef struct pq_cg_result {
    size_t iterations;
    double relative_residual_norm;
    int converged;
} pq_cg_result;

/* Solves P1 x + P0 = 0 for symmetric positive definite P1 (n x n). Returns
 * PQ_OK with converged = 0 when max_iter is reached. */
PQ_API pq_status pq_conjugate_gradient(const double* p1, const double* p0, size_t n, double tol, size_t max_iter,
                                       double* x_out, pq_cg_result* result);

/* ---- regression -------------------------------------------------------- */

typedef enum pq_fit_objective { PQ_FIT_GLS = 0, PQ_FIT_NORMAL_RESIDUAL = 1 } pq_fit_objective;

/* noisy != 0 draws y about the mean with the given seed. */
PQ_API pq_status pq_dataset_generate(size_t x_count, double corr_base, int noisy, uint64_t seed, pq_dataset** out);
/* covariance_path may be NULL (identity covariance). */
PQ_API pq_status pq_dataset_load_csv(const char* data_path, const char* covariance_path, pq_dataset** out);
PQ_API pq_status pq_dataset_write_csv(const pq_dataset* dataset, const char* data_path, const char* covariance_path);
PQ_API void pq_dataset_free(pq_dataset* dataset);
PQ_API pq_status pq_dataset_size(const pq_dataset* dataset, size_t* out);
/* basis is "poly:<degree>". */
PQ_API pq_status pq_normal_equations(const pq_dataset* dataset, const char* basis, pq_system** out);
PQ_API pq_status pq_gls_objective(const pq_dataset* dataset, const char* basis, const double* params, size_t n,
                                  double* out);

typedef struct pq_fit_summary {
    double qubo_energy;
    double energy_without_offset;
    double gls_objective;
    double normal_chi_squared;
    size_t num_bits;
} pq_fit_summary;

PQ_API pq_status pq_regression_fit(const pq_dataset* dataset, const char* basis, const pq_encoding* encoding,
                                   const pq_backend* backend, pq_fit_objective objective, double* params,
                                   size_t n_params, pq_fit_summary* summary, pq_samples** samples);

/* ---- conditioned linear systems ---------------------------------------- */

/* out receives n*n entries. */
PQ_API pq_status pq_make_conditioned_matrix(size_t n, double kappa, uint64_t seed, double* out);
PQ_API pq_status pq_make_rhs(size_t n, double* out);
PQ_API pq_status pq_relative_residual(const double* p1, const double* p0, size_t n, const double* x, double* out);
/* bits may be NULL. */
PQ_API pq_status pq_forward_error_minimum(const double* p1, const double* p0, size_t n, const pq_encoding* encoding,
                                          double* x_out, uint8_t* bits, size_t n_bits, double* relative_residual);

typedef enum pq_sweep_kind { PQ_SWEEP_SIZE = 0, PQ_SWEEP_CONDITION = 1, PQ_SWEEP_PRECISION = 2 } pq_sweep_kind;

typedef struct pq_sweep_config {
    pq_sweep_kind kind;
    const double* values; /* NULL selects the kind's defaults */
    size_t num_values;
    size_t size;   /* 0 keeps the kind's default */
    double kappa;  /* <= 0 keeps the kind's default */
    unsigned bits; /* 0 keeps the kind's default */
    uint64_t seed;
    int has_range;
    double lo;
    double hi;
    pq_backend backend;
} pq_sweep_config;

PQ_API void pq_sweep_config_default(pq_sweep_config* config, pq_sweep_kind kind);

typedef struct pq_sweep_point {
    double param;
    size_t size;
    double kappa;
    unsigned bits;
    size_t num_bits;
    double min_energy;
    double relative_residual;
    double hit_fraction;
    uint64_t reads;
    int has_forward_error;
    double forward_error_residual;
} pq_sweep_point;

PQ_API pq_status pq_run_sweep(const pq_sweep_config* config, pq_sweep_report** out);
PQ_API void pq_sweep_report_free(pq_sweep_report* report);
PQ_API pq_status pq_sweep_report_size(const pq_sweep_report* report, size_t* out);
PQ_API pq_status pq_sweep_report_point(const pq_sweep_report* report, size_t idx, pq_sweep_point* out);
PQ_API pq_status pq_sweep_report_to_csv(const pq_sweep_report* report, char** out);
PQ_API pq_status pq_sweep_report_to_json(const pq_sweep_report* report, char** out);

PQ_API pq_status pq_iterate_solve(const double* p1, const double* p0, size_t n, unsigned bits_per_var,
                                  size_t num_iters, double lo, double hi, const pq_backend* backend, pq_trace** out);
PQ_API void pq_trace_free(pq_trace* trace);
PQ_API pq_status pq_trace_size(const pq_trace* trace, size_t* out);
/* x (length n) may be NULL. */
PQ_API pq_status pq_trace_record(const pq_trace* trace, size_t idx, double* x, size_t n, double* relative_residual,
                                 double* hit_fraction, uint64_t* reads);
PQ_API pq_status pq_trace_to_json(const pq_trace* trace, char** out);

#ifdef __cplusplus
}
#endif

#endif /* POLYQUBO_POLYQUBO_H */
