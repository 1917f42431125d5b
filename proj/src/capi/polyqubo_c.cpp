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

#include "polyqubo/polyqubo.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polyqubo/compiler.hpp"
#include "polyqubo/encoding.hpp"
#include "polyqubo/error.hpp"
#include "polyqubo/linsys_lab.hpp"
#include "polyqubo/polysys.hpp"
#include "polyqubo/pubo.hpp"
#include "polyqubo/qubo.hpp"
#include "polyqubo/regression.hpp"
#include "polyqubo/solvers.hpp"

struct pq_system {
    polyqubo::PolynomialSystem value;
};
struct pq_encoding {
    polyqubo::BitEncoding value;
};
struct pq_pubo {
    polyqubo::PseudoBooleanPolynomial value;
};
struct pq_qubo {
    polyqubo::QuboMatrix value;
};
struct pq_samples {
    polyqubo::SampleSet value;
};
struct pq_dataset {
    polyqubo::RegressionDataset value;
};
struct pq_sweep_report {
    polyqubo::SweepReport value;
};
struct pq_trace {
    polyqubo::IterationTrace value;
};

namespace {

using namespace polyqubo;

thread_local std::string g_last_error;

pq_status fail(pq_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

pq_status from_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument: return PQ_ERR_INVALID_ARGUMENT;
        case ErrorCode::kDimensionMismatch: return PQ_ERR_DIMENSION_MISMATCH;
        case ErrorCode::kParse: return PQ_ERR_PARSE;
        case ErrorCode::kIo: return PQ_ERR_IO;
        case ErrorCode::kLimitExceeded: return PQ_ERR_LIMIT_EXCEEDED;
        case ErrorCode::kUnsupported: return PQ_ERR_UNSUPPORTED;
        case ErrorCode::kNumerical: return PQ_ERR_NUMERICAL;
        case ErrorCode::kNotConverged: return PQ_ERR_NOT_CONVERGED;
    }
    return PQ_ERR_INTERNAL;
}

template <class F>
pq_status guarded(F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const Error& e) {
        return fail(from_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(PQ_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(PQ_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(PQ_ERR_INTERNAL, "unknown error");
    }
}

#define PQ_REQUIRE(cond, what)                                   \
    do {                                                         \
        if (!(cond)) return fail(PQ_ERR_INVALID_HANDLE, what);   \
    } while (0)

#define PQ_CHECK_ARG(cond, what)                                   \
    do {                                                           \
        if (!(cond)) return fail(PQ_ERR_INVALID_ARGUMENT, what);   \
    } while (0)

#define PQ_CHECK_LEN(cond, what)                                     \
    do {                                                             \
        if (!(cond)) return fail(PQ_ERR_DIMENSION_MISMATCH, what);   \
    } while (0)

char* dup_string(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

Eigen::MatrixXd row_major(const double* data, std::size_t rows, std::size_t cols) {
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = data[i * cols + j];
    return m;
}

Eigen::VectorXd vec(const double* data, std::size_t n) {
    return Eigen::Map<const Eigen::VectorXd>(data, static_cast<Eigen::Index>(n));
}

AnnealOptions anneal_options(const pq_anneal_params& p) {
    AnnealOptions o;
    o.reads = p.reads;
    o.sweeps = p.sweeps;
    o.seed = p.seed;
    if (p.t_hot > 0) o.t_hot = p.t_hot;
    if (p.t_cold > 0) o.t_cold = p.t_cold;
    o.workers = p.workers;
    return o;
}

QuboBackend to_backend(const pq_backend* b) {
    if (!b) return BruteForceBackend{};
    if (b->kind == PQ_BACKEND_ANNEAL) return AnnealBackend{anneal_options(b->anneal)};
    if (b->kind != PQ_BACKEND_BRUTE) throw Error(ErrorCode::kInvalidArgument, "unknown backend kind");
    return BruteForceBackend{b->max_bits};
}

SampleSet ground_state_samples(const GroundState& gs) {
    SampleSet set;
    set.solver = "brute_force";
    set.total_reads = 1;
    set.records.push_back({gs.states.front(), gs.energy, 1});
    return set;
}

}  // namespace

extern "C" {

const char* pq_version(void) { return "0.1.0"; }

const char* pq_status_name(pq_status status) {
    switch (status) {
        case PQ_OK: return "ok";
        case PQ_ERR_INVALID_ARGUMENT: return "invalid argument";
        case PQ_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
        case PQ_ERR_PARSE: return "parse error";
        case PQ_ERR_IO: return "i/o error";
        case PQ_ERR_LIMIT_EXCEEDED: return "limit exceeded";
        case PQ_ERR_UNSUPPORTED: return "unsupported";
        case PQ_ERR_NUMERICAL: return "numerical failure";
        case PQ_ERR_NOT_CONVERGED: return "not converged";
        case PQ_ERR_INVALID_HANDLE: return "invalid handle";
        case PQ_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* pq_last_error(void) { return g_last_error.c_str(); }

void pq_string_free(char* str) { std::free(str); }

/* ---- systems ---- */

pq_status pq_system_parse_json(const char* text, pq_system** out) {
    PQ_REQUIRE(text && out, "null argument");
    return guarded([&] {
        *out = new pq_system{PolynomialSystem::from_json(text)};
        return PQ_OK;
    });
}

pq_status pq_system_load(const char* path, pq_system** out) {
    PQ_REQUIRE(path && out, "null argument");
    return guarded([&] {
        *out = new pq_system{PolynomialSystem::load(path)};
        return PQ_OK;
    });
}

pq_status pq_system_create_linear(size_t n_equations, size_t n_variables, const double* p1, const double* p0,
                                  pq_system** out) {
    PQ_REQUIRE(p1 && p0 && out, "null argument");
    return guarded([&] {
        *out = new pq_system{
            PolynomialSystem::linear(row_major(p1, n_equations, n_variables), vec(p0, n_equations))};
        return PQ_OK;
    });
}

void pq_system_free(pq_system* system) { delete system; }

pq_status pq_system_shape(const pq_system* system, size_t* n_equations, size_t* n_variables, size_t* degree) {
    PQ_REQUIRE(system, "null system");
    if (n_equations) *n_equations = system->value.num_equations();
    if (n_variables) *n_variables = system->value.num_variables();
    if (degree) *degree = system->value.degree();
    return PQ_OK;
}

pq_status pq_system_to_json(const pq_system* system, char** out) {
    PQ_REQUIRE(system && out, "null argument");
    return guarded([&] {
        *out = dup_string(system->value.to_json());
        return PQ_OK;
    });
}

pq_status pq_system_residuals(const pq_system* system, const double* x, size_t n_x, double* out, size_t n_out) {
    PQ_REQUIRE(system && x && out, "null argument");
    PQ_CHECK_LEN(n_out == system->value.num_equations(), "output length must equal n_equations");
    return guarded([&] {
        auto r = system->value.evaluate_residuals({x, n_x});
        std::copy(r.begin(), r.end(), out);
        return PQ_OK;
    });
}

pq_status pq_system_chi_squared(const pq_system* system, const double* x, size_t n_x, double* out) {
    PQ_REQUIRE(system && x && out, "null argument");
    return guarded([&] {
        *out = system->value.chi_squared({x, n_x});
        return PQ_OK;
    });
}

pq_status pq_system_linear_parts(const pq_system* system, double* p1, size_t n_p1, double* p0, size_t n_p0) {
    PQ_REQUIRE(system, "null system");
    const auto& s = system->value;
    return guarded([&] {
        if (p1) {
            PQ_CHECK_LEN(n_p1 == s.num_equations() * s.num_variables(), "p1 length must be n_equations*n_variables");
            Eigen::MatrixXd m = s.linear_matrix();
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j) p1[i * m.cols() + j] = m(i, j);
        }
        if (p0) {
            PQ_CHECK_LEN(n_p0 == s.num_equations(), "p0 length must be n_equations");
            Eigen::VectorXd v = s.constant_vector();
            std::copy(v.begin(), v.end(), p0);
        }
        return PQ_OK;
    });
}

/* ---- encodings ---- */

pq_status pq_encoding_create(const double* scale, const double* offset, size_t n_variables, unsigned bits_per_var,
                             pq_encoding** out) {
    PQ_REQUIRE(scale && offset && out, "null argument");
    return guarded([&] {
        *out = new pq_encoding{BitEncoding({scale, scale + n_variables}, {offset, offset + n_variables}, bits_per_var)};
        return PQ_OK;
    });
}

pq_status pq_encoding_from_range(const double* lo, const double* hi, size_t n_variables, unsigned bits_per_var,
                                 pq_encoding** out) {
    PQ_REQUIRE(lo && hi && out, "null argument");
    return guarded([&] {
        *out = new pq_encoding{BitEncoding::from_range({lo, n_variables}, {hi, n_variables}, bits_per_var)};
        return PQ_OK;
    });
}

pq_status pq_encoding_refine(const pq_encoding* encoding, const double* x_star, size_t n_x, pq_encoding** out) {
    PQ_REQUIRE(encoding && x_star && out, "null argument");
    return guarded([&] {
        *out = new pq_encoding{encoding->value.refine({x_star, n_x})};
        return PQ_OK;
    });
}

void pq_encoding_free(pq_encoding* encoding) { delete encoding; }

pq_status pq_encoding_shape(const pq_encoding* encoding, size_t* n_variables, unsigned* bits_per_var) {
    PQ_REQUIRE(encoding, "null encoding");
    if (n_variables) *n_variables = encoding->value.num_variables();
    if (bits_per_var) *bits_per_var = encoding->value.bits_per_var();
    return PQ_OK;
}

pq_status pq_encoding_params(const pq_encoding* encoding, double* scale, double* offset, size_t n) {
    PQ_REQUIRE(encoding, "null encoding");
    PQ_CHECK_LEN(n == encoding->value.num_variables(), "length must equal n_variables");
    if (scale) std::copy(encoding->value.scale().begin(), encoding->value.scale().end(), scale);
    if (offset) std::copy(encoding->value.offset().begin(), encoding->value.offset().end(), offset);
    return PQ_OK;
}

pq_status pq_encoding_decode(const pq_encoding* encoding, const uint8_t* bits, size_t n_bits, double* x, size_t n_x) {
    PQ_REQUIRE(encoding && bits && x, "null argument");
    PQ_CHECK_LEN(n_x == encoding->value.num_variables(), "output length must equal n_variables");
    return guarded([&] {
        auto v = encoding->value.decode({bits, n_bits});
        std::copy(v.begin(), v.end(), x);
        return PQ_OK;
    });
}

/* ---- compilation ---- */

pq_status pq_compile_pubo(const pq_system* system, const pq_encoding* encoding, pq_pubo** out) {
    PQ_REQUIRE(system && encoding && out, "null argument");
    return guarded([&] {
        *out = new pq_pubo{compile_pubo(system->value, encoding->value)};
        return PQ_OK;
    });
}

void pq_pubo_free(pq_pubo* pubo) { delete pubo; }

pq_status pq_pubo_info(const pq_pubo* pubo, size_t* num_bits, size_t* num_terms, size_t* max_order, double* offset) {
    PQ_REQUIRE(pubo, "null pubo");
    if (num_bits) *num_bits = pubo->value.num_bits();
    if (num_terms) *num_terms = pubo->value.terms().size();
    if (max_order) *max_order = pubo->value.max_order();
    if (offset) *offset = pubo->value.offset();
    return PQ_OK;
}

pq_status pq_pubo_energy(const pq_pubo* pubo, const uint8_t* bits, size_t n_bits, double* out) {
    PQ_REQUIRE(pubo && bits && out, "null argument");
    return guarded([&] {
        *out = pubo->value.energy({bits, n_bits});
        return PQ_OK;
    });
}

pq_status pq_choose_penalty(const pq_pubo* pubo, double* out) {
    PQ_REQUIRE(pubo && out, "null argument");
    return guarded([&] {
        *out = choose_penalty(pubo->value);
        return PQ_OK;
    });
}

pq_status pq_quadratize(const pq_pubo* pubo, double penalty, pq_aux_mode mode, pq_qubo** out) {
    PQ_REQUIRE(pubo && out, "null argument");
    PQ_CHECK_ARG(mode == PQ_AUX_LAZY || mode == PQ_AUX_ALL, "unknown aux mode");
    return guarded([&] {
        *out = new pq_qubo{quadratize(pubo->value, penalty, mode == PQ_AUX_ALL ? AuxMode::kAll : AuxMode::kLazy)};
        return PQ_OK;
    });
}

pq_status pq_compile_linear_qubo(const pq_system* system, const pq_encoding* encoding, pq_qubo** out) {
    PQ_REQUIRE(system && encoding && out, "null argument");
    return guarded([&] {
        *out = new pq_qubo{compile_linear_qubo(system->value, encoding->value)};
        return PQ_OK;
    });
}

void pq_qubo_free(pq_qubo* qubo) { delete qubo; }

pq_status pq_qubo_info(const pq_qubo* qubo, size_t* num_bits, size_t* num_logical, size_t* num_aux, double* offset,
                       double* penalty) {
    PQ_REQUIRE(qubo, "null qubo");
    const auto& q = qubo->value;
    if (num_bits) *num_bits = q.num_bits();
    if (num_logical) *num_logical = q.num_logical();
    if (num_aux) *num_aux = q.num_aux();
    if (offset) *offset = q.offset();
    if (penalty) *penalty = q.penalty();
    return PQ_OK;
}

pq_status pq_qubo_entry(const pq_qubo* qubo, size_t i, size_t j, double* out) {
    PQ_REQUIRE(qubo && out, "null argument");
    return guarded([&] {
        *out = qubo->value.at(i, j);
        return PQ_OK;
    });
}

pq_status pq_qubo_aux_pair(const pq_qubo* qubo, size_t aux_index, size_t* i, size_t* j) {
    PQ_REQUIRE(qubo && i && j, "null argument");
    const auto& pairs = qubo->value.aux_map().pairs;
    PQ_CHECK_ARG(aux_index < pairs.size(), "aux index out of range");
    *i = pairs[aux_index].first;
    *j = pairs[aux_index].second;
    return PQ_OK;
}

pq_status pq_qubo_energy(const pq_qubo* qubo, const uint8_t* bits, size_t n_bits, double* out) {
    PQ_REQUIRE(qubo && bits && out, "null argument");
    return guarded([&] {
        *out = qubo->value.energy({bits, n_bits});
        return PQ_OK;
    });
}

pq_status pq_qubo_lift(const pq_qubo* qubo, const uint8_t* logical, size_t n_logical, uint8_t* out, size_t n_out) {
    PQ_REQUIRE(qubo && logical && out, "null argument");
    PQ_CHECK_LEN(n_out == qubo->value.num_bits(), "output length must equal num_bits");
    return guarded([&] {
        auto lifted = qubo->value.lift({logical, n_logical});
        std::copy(lifted.begin(), lifted.end(), out);
        return PQ_OK;
    });
}

pq_status pq_qubo_to_text(const pq_qubo* qubo, char** out) {
    PQ_REQUIRE(qubo && out, "null argument");
    return guarded([&] {
        *out = dup_string(qubo->value.to_text());
        return PQ_OK;
    });
}

pq_status pq_qubo_parse_text(const char* text, pq_qubo** out) {
    PQ_REQUIRE(text && out, "null argument");
    return guarded([&] {
        *out = new pq_qubo{QuboMatrix::from_text(text)};
        return PQ_OK;
    });
}

/* ---- solvers ---- */

void pq_anneal_params_default(pq_anneal_params* params) {
    if (!params) return;
    AnnealOptions d;
    params->reads = d.reads;
    params->sweeps = d.sweeps;
    params->seed = d.seed;
    params->t_hot = 0.0;
    params->t_cold = 0.0;
    params->workers = 0;
}

void pq_backend_default(pq_backend* backend, pq_backend_kind kind) {
    if (!backend) return;
    backend->kind = kind;
    backend->max_bits = BruteForceBackend{}.max_bits;
    pq_anneal_params_default(&backend->anneal);
}

pq_status pq_brute_force_pubo(const pq_pubo* pubo, size_t max_bits, pq_samples** out) {
    PQ_REQUIRE(pubo && out, "null argument");
    return guarded([&] {
        BruteForceOptions o;
        o.max_bits = max_bits;
        *out = new pq_samples{ground_state_samples(brute_force(pubo->value, o))};
        return PQ_OK;
    });
}

pq_status pq_brute_force_qubo(const pq_qubo* qubo, size_t max_bits, pq_samples** out) {
    PQ_REQUIRE(qubo && out, "null argument");
    return guarded([&] {
        *out = new pq_samples{solve_qubo(qubo->value, BruteForceBackend{max_bits})};
        return PQ_OK;
    });
}

pq_status pq_anneal(const pq_qubo* qubo, const pq_anneal_params* params, pq_samples** out) {
    PQ_REQUIRE(qubo && out, "null argument");
    return guarded([&] {
        pq_anneal_params p;
        if (params) {
            p = *params;
        } else {
            pq_anneal_params_default(&p);
        }
        *out = new pq_samples{simulated_anneal(qubo->value, anneal_options(p))};
        return PQ_OK;
    });
}

pq_status pq_solve_qubo(const pq_qubo* qubo, const pq_backend* backend, pq_samples** out) {
    PQ_REQUIRE(qubo && out, "null argument");
    return guarded([&] {
        *out = new pq_samples{solve_qubo(qubo->value, to_backend(backend))};
        return PQ_OK;
    });
}

void pq_samples_free(pq_samples* samples) { delete samples; }

pq_status pq_samples_info(const pq_samples* samples, size_t* num_records, uint64_t* total_reads, size_t* num_bits,
                          double* min_energy, double* hit_fraction) {
    PQ_REQUIRE(samples, "null samples");
    const auto& s = samples->value;
    return guarded([&] {
        if (num_records) *num_records = s.records.size();
        if (total_reads) *total_reads = s.total_reads;
        if (num_bits) *num_bits = s.records.empty() ? 0 : s.records.front().bits.size();
        if (min_energy) *min_energy = s.min_energy();
        if (hit_fraction) *hit_fraction = s.hit_fraction();
        return PQ_OK;
    });
}

pq_status pq_samples_record(const pq_samples* samples, size_t idx, uint8_t* bits, size_t n_bits, double* energy,
                            uint64_t* count) {
    PQ_REQUIRE(samples, "null samples");
    const auto& recs = samples->value.records;
    PQ_CHECK_ARG(idx < recs.size(), "record index out of range");
    const auto& r = recs[idx];
    if (bits) {
        PQ_CHECK_LEN(n_bits == r.bits.size(), "bits length must equal the record width");
        std::copy(r.bits.begin(), r.bits.end(), bits);
    }
    if (energy) *energy = r.energy;
    if (count) *count = r.count;
    return PQ_OK;
}

pq_status pq_samples_to_json(const pq_samples* samples, char** out) {
    PQ_REQUIRE(samples && out, "null argument");
    return guarded([&] {
        *out = dup_string(samples->value.to_json());
        return PQ_OK;
    });
}

pq_status pq_conjugate_gradient(const double* p1, const double* p0, size_t n, double tol, size_t max_iter,
                                double* x_out, pq_cg_result* result) {
    PQ_REQUIRE(p1 && p0 && x_out, "null argument");
    return guarded([&] {
        auto rep = conjugate_gradient(row_major(p1, n, n), vec(p0, n), tol, max_iter);
        std::copy(rep.solution.begin(), rep.solution.end(), x_out);
        if (result) {
            result->iterations = rep.iterations;
            result->relative_residual_norm = rep.final_relative_residual_norm;
            result->converged = rep.converged ? 1 : 0;
        }
        return PQ_OK;
    });
}

/* ---- regression ---- */

pq_status pq_dataset_generate(size_t x_count, double corr_base, int noisy, uint64_t seed, pq_dataset** out) {
    PQ_REQUIRE(out, "null argument");
    return guarded([&] {
        std::optional<std::uint64_t> s;
        if (noisy) s = seed;
        *out = new pq_dataset{generate_dataset(x_count, corr_base, s)};
        return PQ_OK;
    });
}

pq_status pq_dataset_load_csv(const char* data_path, const char* covariance_path, pq_dataset** out) {
    PQ_REQUIRE(data_path && out, "null argument");
    return guarded([&] {
        std::optional<std::filesystem::path> cov;
        if (covariance_path) cov = covariance_path;
        *out = new pq_dataset{RegressionDataset::load_csv(data_path, cov)};
        return PQ_OK;
    });
}

pq_status pq_dataset_write_csv(const pq_dataset* dataset, const char* data_path, const char* covariance_path) {
    PQ_REQUIRE(dataset && data_path, "null argument");
    return guarded([&] {
        std::optional<std::filesystem::path> cov;
        if (covariance_path) cov = covariance_path;
        dataset->value.write_csv(data_path, cov);
        return PQ_OK;
    });
}

void pq_dataset_free(pq_dataset* dataset) { delete dataset; }

pq_status pq_dataset_size(const pq_dataset* dataset, size_t* out) {
    PQ_REQUIRE(dataset && out, "null argument");
    *out = dataset->value.size();
    return PQ_OK;
}

pq_status pq_normal_equations(const pq_dataset* dataset, const char* basis, pq_system** out) {
    PQ_REQUIRE(dataset && basis && out, "null argument");
    return guarded([&] {
        auto b = BasisSet::parse(basis, dataset->value.x);
        *out = new pq_system{normal_equations(dataset->value, b)};
        return PQ_OK;
    });
}

pq_status pq_gls_objective(const pq_dataset* dataset, const char* basis, const double* params, size_t n,
                           double* out) {
    PQ_REQUIRE(dataset && basis && params && out, "null argument");
    return guarded([&] {
        auto b = BasisSet::parse(basis, dataset->value.x);
        *out = gls_objective(dataset->value, b, {params, n});
        return PQ_OK;
    });
}

pq_status pq_regression_fit(const pq_dataset* dataset, const char* basis, const pq_encoding* encoding,
                            const pq_backend* backend, pq_fit_objective objective, double* params, size_t n_params,
                            pq_fit_summary* summary, pq_samples** samples) {
    PQ_REQUIRE(dataset && basis && encoding && params, "null argument");
    PQ_CHECK_ARG(objective == PQ_FIT_GLS || objective == PQ_FIT_NORMAL_RESIDUAL, "unknown fit objective");
    return guarded([&] {
        auto b = BasisSet::parse(basis, dataset->value.x);
        PQ_CHECK_LEN(n_params == b.size(), "params length must equal the basis size");
        auto fit = fit_qubo(dataset->value, b, encoding->value, to_backend(backend),
                            objective == PQ_FIT_GLS ? FitObjective::kGls : FitObjective::kNormalResidual);
        std::copy(fit.parameters.begin(), fit.parameters.end(), params);
        if (summary) {
            summary->qubo_energy = fit.qubo_energy;
            summary->energy_without_offset = fit.energy_without_offset;
            summary->gls_objective = fit.gls_objective;
            summary->normal_chi_squared = fit.normal_chi_squared;
            summary->num_bits = fit.qubo.num_bits();
        }
        if (samples) *samples = new pq_samples{std::move(fit.samples)};
        return PQ_OK;
    });
}

/* ---- linear systems ---- */

pq_status pq_make_conditioned_matrix(size_t n, double kappa, uint64_t seed, double* out) {
    PQ_REQUIRE(out, "null argument");
    return guarded([&] {
        Eigen::MatrixXd m = make_conditioned_matrix({n, kappa, seed});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] = m(i, j);
        return PQ_OK;
    });
}

pq_status pq_make_rhs(size_t n, double* out) {
    PQ_REQUIRE(out, "null argument");
    return guarded([&] {
        Eigen::VectorXd v = make_rhs(n);
        std::copy(v.begin(), v.end(), out);
        return PQ_OK;
    });
}

pq_status pq_relative_residual(const double* p1, const double* p0, size_t n, const double* x, double* out) {
    PQ_REQUIRE(p1 && p0 && x && out, "null argument");
    return guarded([&] {
        *out = relative_residual(row_major(p1, n, n), vec(p0, n), {x, n});
        return PQ_OK;
    });
}

pq_status pq_forward_error_minimum(const double* p1, const double* p0, size_t n, const pq_encoding* encoding,
                                   double* x_out, uint8_t* bits, size_t n_bits, double* rel) {
    PQ_REQUIRE(p1 && p0 && encoding && x_out, "null argument");
    return guarded([&] {
        auto fe = forward_error_minimum(row_major(p1, n, n), vec(p0, n), encoding->value);
        std::copy(fe.x.begin(), fe.x.end(), x_out);
        if (bits) {
            PQ_CHECK_LEN(n_bits == fe.bits.size(), "bits length must equal num_bits");
            std::copy(fe.bits.begin(), fe.bits.end(), bits);
        }
        if (rel) *rel = fe.relative_residual;
        return PQ_OK;
    });
}

static SweepKind to_kind(pq_sweep_kind k) {
    switch (k) {
        case PQ_SWEEP_SIZE: return SweepKind::kSize;
        case PQ_SWEEP_CONDITION: return SweepKind::kCondition;
        case PQ_SWEEP_PRECISION: return SweepKind::kPrecision;
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown sweep kind");
}

void pq_sweep_config_default(pq_sweep_config* config, pq_sweep_kind kind) {
    if (!config) return;
    *config = pq_sweep_config{};
    config->kind = kind;
    pq_backend_default(&config->backend, PQ_BACKEND_BRUTE);
}

pq_status pq_run_sweep(const pq_sweep_config* config, pq_sweep_report** out) {
    PQ_REQUIRE(config && out, "null argument");
    return guarded([&] {
        auto cfg = SweepConfig::defaults(to_kind(config->kind));
        if (config->values) cfg.values.assign(config->values, config->values + config->num_values);
        if (config->size) cfg.size = config->size;
        if (config->kappa > 0) cfg.kappa = config->kappa;
        if (config->bits) cfg.bits = config->bits;
        cfg.seed = config->seed;
        if (config->has_range) {
            cfg.lo = config->lo;
            cfg.hi = config->hi;
        }
        cfg.backend = to_backend(&config->backend);
        *out = new pq_sweep_report{run_sweep(cfg)};
        return PQ_OK;
    });
}

void pq_sweep_report_free(pq_sweep_report* report) { delete report; }

pq_status pq_sweep_report_size(const pq_sweep_report* report, size_t* out) {
    PQ_REQUIRE(report && out, "null argument");
    *out = report->value.points.size();
    return PQ_OK;
}

pq_status pq_sweep_report_point(const pq_sweep_report* report, size_t idx, pq_sweep_point* out) {
    PQ_REQUIRE(report && out, "null argument");
    PQ_CHECK_ARG(idx < report->value.points.size(), "point index out of range");
    const auto& p = report->value.points[idx];
    out->param = p.param;
    out->size = p.size;
    out->kappa = p.kappa;
    out->bits = p.bits;
    out->num_bits = p.num_bits;
    out->min_energy = p.min_energy;
    out->relative_residual = p.relative_residual;
    out->hit_fraction = p.hit_fraction;
    out->reads = p.reads;
    out->has_forward_error = p.forward_error_residual.has_value() ? 1 : 0;
    out->forward_error_residual = p.forward_error_residual.value_or(0.0);
    return PQ_OK;
}

pq_status pq_sweep_report_to_csv(const pq_sweep_report* report, char** out) {
    PQ_REQUIRE(report && out, "null argument");
    return guarded([&] {
        *out = dup_string(report->value.to_csv());
        return PQ_OK;
    });
}

pq_status pq_sweep_report_to_json(const pq_sweep_report* report, char** out) {
    PQ_REQUIRE(report && out, "null argument");
    return guarded([&] {
        *out = dup_string(report->value.to_json());
        return PQ_OK;
    });
}

pq_status pq_iterate_solve(const double* p1, const double* p0, size_t n, unsigned bits_per_var, size_t num_iters,
                           double lo, double hi, const pq_backend* backend, pq_trace** out) {
    PQ_REQUIRE(p1 && p0 && out, "null argument");
    return guarded([&] {
        *out = new pq_trace{
            iterate_solve(row_major(p1, n, n), vec(p0, n), bits_per_var, num_iters, to_backend(backend), lo, hi)};
        return PQ_OK;
    });
}

void pq_trace_free(pq_trace* trace) { delete trace; }

pq_status pq_trace_size(const pq_trace* trace, size_t* out) {
    PQ_REQUIRE(trace && out, "null argument");
    *out = trace->value.records.size();
    return PQ_OK;
}

pq_status pq_trace_record(const pq_trace* trace, size_t idx, double* x, size_t n, double* relative_residual,
                          double* hit_fraction, uint64_t* reads) {
    PQ_REQUIRE(trace, "null trace");
    const auto& recs = trace->value.records;
    PQ_CHECK_ARG(idx < recs.size(), "record index out of range");
    const auto& r = recs[idx];
    if (x) {
        PQ_CHECK_LEN(n == r.x.size(), "x length must equal n_variables");
        std::copy(r.x.begin(), r.x.end(), x);
    }
    if (relative_residual) *relative_residual = r.relative_residual;
    if (hit_fraction) *hit_fraction = r.hit_fraction;
    if (reads) *reads = r.reads;
    return PQ_OK;
}

pq_status pq_trace_to_json(const pq_trace* trace, char** out) {
    PQ_REQUIRE(trace && out, "null argument");
    return guarded([&] {
        *out = dup_string(trace->value.to_json());
        return PQ_OK;
    });
}

}  // extern "C"
