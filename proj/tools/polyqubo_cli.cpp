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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyqubo/polyqubo.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;

struct Failure : std::runtime_error {
    Failure(int exit_code, const std::string& message) : std::runtime_error(message), exit_code(exit_code) {}
    int exit_code;
};

[[noreturn]] void config_error(const std::string& message) { throw Failure(kExitConfig, message); }

void check(pq_status status) {
    if (status == PQ_OK) return;
    std::string msg = pq_last_error();
    if (msg.empty()) msg = pq_status_name(status);
    switch (status) {
        case PQ_ERR_NUMERICAL:
        case PQ_ERR_NOT_CONVERGED:
        case PQ_ERR_INTERNAL:
            throw Failure(kExitSolver, msg);
        default:
            throw Failure(kExitConfig, msg);
    }
}

template <class T, void (*Free)(T*)>
struct Handle {
    T* ptr = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(ptr); }
    T** out() { return &ptr; }
    T* get() const { return ptr; }
};

using System = Handle<pq_system, pq_system_free>;
using Encoding = Handle<pq_encoding, pq_encoding_free>;
using Pubo = Handle<pq_pubo, pq_pubo_free>;
using Qubo = Handle<pq_qubo, pq_qubo_free>;
using Samples = Handle<pq_samples, pq_samples_free>;
using Dataset = Handle<pq_dataset, pq_dataset_free>;
using Report = Handle<pq_sweep_report, pq_sweep_report_free>;
using Trace = Handle<pq_trace, pq_trace_free>;

std::string take(char* s) {
    std::string out(s);
    pq_string_free(s);
    return out;
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            config_error(std::string(flag) + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) config_error(std::string(flag) + ": empty list");
    return out;
}

std::vector<double> broadcast(const std::string& text, std::size_t n, const char* flag) {
    auto v = parse_list(text, flag);
    if (v.size() == 1) v.assign(n, v.front());
    if (v.size() != n)
        config_error(std::string(flag) + ": expected 1 or " + std::to_string(n) + " values, got " +
                     std::to_string(v.size()));
    return v;
}

std::string bit_string(const std::vector<uint8_t>& bits) {
    std::string s;
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

/* ---- shared option groups ---- */

struct SolverFlags {
    std::string backend = "brute";
    std::size_t max_bits = 24;
    uint64_t reads = 1000;
    std::size_t sweeps = 1000;
    uint64_t seed = 0;
    std::optional<double> t_hot;
    std::optional<double> t_cold;

    void attach(CLI::App* app, const std::vector<std::string>& backends) {
        app->add_option("--backend", backend, "solver backend")->check(CLI::IsMember(backends))->capture_default_str();
        app->add_option("--max-bits", max_bits, "brute-force size limit")->capture_default_str();
        app->add_option("--reads", reads, "anneal reads")->capture_default_str();
        app->add_option("--sweeps", sweeps, "anneal sweeps per read")->capture_default_str();
        app->add_option("--seed", seed, "random seed")->capture_default_str();
        app->add_option("--t-hot", t_hot, "initial anneal temperature");
        app->add_option("--t-cold", t_cold, "final anneal temperature");
    }

    pq_backend make() const {
        pq_backend b;
        pq_backend_default(&b, backend == "anneal" ? PQ_BACKEND_ANNEAL : PQ_BACKEND_BRUTE);
        b.max_bits = max_bits;
        b.anneal.reads = reads;
        b.anneal.sweeps = sweeps;
        b.anneal.seed = seed;
        if (t_hot) b.anneal.t_hot = *t_hot;
        if (t_cold) b.anneal.t_cold = *t_cold;
        return b;
    }

    json echo() const {
        json j;
        j["backend"] = backend;
        if (backend == "brute") j["max_bits"] = max_bits;
        if (backend == "anneal") {
            j["reads"] = reads;
            j["sweeps"] = sweeps;
            j["seed"] = seed;
            j["t_hot"] = t_hot ? json(*t_hot) : json(nullptr);
            j["t_cold"] = t_cold ? json(*t_cold) : json(nullptr);
        }
        return j;
    }

    void validate() const {
        if (t_hot && !(*t_hot > 0)) config_error("--t-hot must be positive");
        if (t_cold && !(*t_cold > 0)) config_error("--t-cold must be positive");
        if (t_hot && t_cold && *t_cold > *t_hot) config_error("--t-cold must not exceed --t-hot");
        if (reads == 0) config_error("--reads must be positive");
        if (sweeps == 0) config_error("--sweeps must be positive");
    }

    void check_brute_size(std::size_t bits) const {
        if (backend == "brute" && bits > max_bits)
            config_error("brute force over " + std::to_string(bits) + " bits exceeds the limit of " +
                         std::to_string(max_bits) + " bits (--max-bits)");
    }
};

struct OutputFlags {
    std::string out;
    std::string format = "json";
    bool no_timing = false;

    void attach(CLI::App* app, const std::vector<std::string>& formats) {
        app->add_option("--out", out, "output file (default: stdout or $POLYQUBO_OUTPUT_DIR)");
        app->add_option("--format", format, "report format")->check(CLI::IsMember(formats))->capture_default_str();
        app->add_flag("--no-timing", no_timing, "omit wall_time_s for byte-stable reports");
    }

    void write(const std::string& command, const std::string& text) const {
        std::filesystem::path path;
        if (!out.empty()) {
            path = out;
        } else if (const char* dir = std::getenv("POLYQUBO_OUTPUT_DIR"); dir && *dir) {
            path = std::filesystem::path(dir) / (command + "." + format);
        }
        if (path.empty()) {
            std::cout << text;
            return;
        }
        if (path.has_parent_path()) {
            std::error_code ec;
            std::filesystem::create_directories(path.parent_path(), ec);
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) config_error("cannot open '" + path.string() + "' for writing");
        f << text;
        if (!f) config_error("failed writing '" + path.string() + "'");
        std::cerr << "wrote " << path.string() << "\n";
    }
};

struct RangeFlags {
    std::string lo = "-1";
    std::string hi = "1";
    unsigned bits = 2;

    void attach(CLI::App* app, const char* lo_default, const char* hi_default, unsigned bits_default) {
        lo = lo_default;
        hi = hi_default;
        bits = bits_default;
        app->add_option("--lo", lo, "range lower bound (scalar or comma list)")->capture_default_str();
        app->add_option("--hi", hi, "range upper bound (scalar or comma list)")->capture_default_str();
        app->add_option("--bits", bits, "bits per variable")->capture_default_str();
    }

    json echo(std::size_t n) const {
        return json{{"lo", broadcast(lo, n, "--lo")}, {"hi", broadcast(hi, n, "--hi")}, {"bits", bits}};
    }

    void make(std::size_t n, Encoding& enc) const {
        auto l = broadcast(lo, n, "--lo");
        auto h = broadcast(hi, n, "--hi");
        check(pq_encoding_from_range(l.data(), h.data(), n, bits, enc.out()));
    }
};

std::string finish(json report, bool no_timing, std::chrono::steady_clock::time_point start) {
    if (!no_timing)
        report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report.dump(2) + "\n";
}

json samples_json(const Samples& s) {
    char* text = nullptr;
    check(pq_samples_to_json(s.get(), &text));
    return json::parse(take(text));
}

std::vector<uint8_t> best_bits(const Samples& s) {
    std::size_t width = 0;
    check(pq_samples_info(s.get(), nullptr, nullptr, &width, nullptr, nullptr));
    std::vector<uint8_t> bits(width);
    check(pq_samples_record(s.get(), 0, bits.data(), bits.size(), nullptr, nullptr));
    return bits;
}

void write_qubo(const Qubo& q, const std::string& path) {
    if (path.empty()) return;
    char* text = nullptr;
    check(pq_qubo_to_text(q.get(), &text));
    std::ofstream f(path, std::ios::binary);
    if (!f) config_error("cannot open '" + path + "' for writing");
    f << take(text);
}

double p0_norm_squared(const System& sys, std::size_t n_eq) {
    std::vector<double> p0(n_eq);
    check(pq_system_linear_parts(sys.get(), nullptr, 0, p0.data(), p0.size()));
    double s = 0;
    for (double v : p0) s += v * v;
    return s;
}

json solution_json(const System& sys, std::size_t n_eq, const std::vector<double>& x,
                   const std::optional<std::vector<uint8_t>>& bits) {
    double chi2 = 0;
    check(pq_system_chi_squared(sys.get(), x.data(), x.size(), &chi2));
    json j;
    j["x"] = x;
    if (bits) j["bits"] = bit_string(*bits);
    j["chi_squared"] = chi2;
    double denom = p0_norm_squared(sys, n_eq);
    j["relative_residual"] = denom > 0 ? json(chi2 / denom) : json(nullptr);
    return j;
}

/* ---- solve-poly / solve-linear ---- */

struct SolveCommand {
    bool linear = false;
    std::string input;
    RangeFlags range;
    SolverFlags solver;
    OutputFlags output;
    std::string aux = "lazy";
    std::optional<double> penalty;
    std::string qubo_out;
    double cg_tol = 1e-6;
    std::size_t cg_max_iter = 10000;

    CLI::App* attach(CLI::App& app) {
        auto* sub = linear ? app.add_subcommand("solve-linear", "solve a linear system P0 + P1 x = 0")
                           : app.add_subcommand("solve-poly", "solve a polynomial system by QUBO minimization");
        sub->add_option("input", input, "system JSON file")->required();
        range.attach(sub, "-1", "1", 2);
        solver.attach(sub, {"brute", "anneal", "cg"});
        output.attach(sub, {"json"});
        if (!linear) {
            sub->add_option("--aux", aux, "auxiliary allocation")->check(CLI::IsMember({"lazy", "all"}))
                ->capture_default_str();
            sub->add_option("--penalty", penalty, "penalty C (default 1 + 2 sum|c|)");
        }
        sub->add_option("--qubo-out", qubo_out, "also write the QUBO as text");
        sub->add_option("--tol", cg_tol, "CG tolerance")->capture_default_str();
        sub->add_option("--max-iter", cg_max_iter, "CG iteration cap")->capture_default_str();
        return sub;
    }

    int run() {
        auto start = std::chrono::steady_clock::now();
        solver.validate();
        System sys;
        check(pq_system_load(input.c_str(), sys.out()));
        std::size_t n_eq = 0, n_var = 0, degree = 0;
        check(pq_system_shape(sys.get(), &n_eq, &n_var, &degree));
        if (linear && degree != 1)
            config_error(input + ": solve-linear needs a degree-1 system, got degree " + std::to_string(degree));
        if (solver.backend == "cg" && degree != 1)
            config_error("--backend cg is only valid for degree-1 systems (got degree " + std::to_string(degree) + ")");

        const char* command = linear ? "solve-linear" : "solve-poly";
        json report;
        report["command"] = command;
        json cfg;
        cfg["input"] = input;
        cfg["system"] = {{"n_equations", n_eq}, {"n_variables", n_var}, {"degree", degree}};
        cfg["solver"] = solver.echo();

        if (solver.backend == "cg") {
            if (n_eq != n_var) config_error("--backend cg needs a square system");
            cfg["cg"] = {{"tol", cg_tol}, {"max_iter", cg_max_iter}};
            report["config"] = cfg;
            std::vector<double> p1(n_eq * n_var), p0(n_eq), x(n_var);
            check(pq_system_linear_parts(sys.get(), p1.data(), p1.size(), p0.data(), p0.size()));
            pq_cg_result res{};
            check(pq_conjugate_gradient(p1.data(), p0.data(), n_var, cg_tol, cg_max_iter, x.data(), &res));
            report["solver_output"] = {{"solver", "cg"},
                                       {"iterations", res.iterations},
                                       {"relative_residual_norm", res.relative_residual_norm},
                                       {"converged", res.converged != 0}};
            report["solution"] = solution_json(sys, n_eq, x, std::nullopt);
            output.write(command, finish(std::move(report), output.no_timing, start));
            if (!res.converged) {
                std::cerr << "error: conjugate gradient did not converge in " << cg_max_iter << " iterations\n";
                return kExitSolver;
            }
            return kExitOk;
        }

        cfg["encoding"] = range.echo(n_var);
        Encoding enc;
        range.make(n_var, enc);
        std::size_t logical = n_var * range.bits;

        Qubo qubo;
        Pubo pubo;
        json problem;
        problem["logical_bits"] = logical;
        if (degree == 1 && linear) {
            check(pq_compile_linear_qubo(sys.get(), enc.get(), qubo.out()));
            problem["form"] = "linear";
        } else {
            if (!linear) cfg["aux"] = aux;
            check(pq_compile_pubo(sys.get(), enc.get(), pubo.out()));
            std::size_t terms = 0, order = 0;
            check(pq_pubo_info(pubo.get(), nullptr, &terms, &order, nullptr));
            double c = 0;
            if (penalty) {
                c = *penalty;
            } else {
                check(pq_choose_penalty(pubo.get(), &c));
            }
            problem["form"] = "pubo";
            problem["pubo_terms"] = terms;
            problem["pubo_max_order"] = order;
            if (order <= 4) {
                check(pq_quadratize(pubo.get(), c, aux == "all" ? PQ_AUX_ALL : PQ_AUX_LAZY, qubo.out()));
            } else if (solver.backend == "anneal" || !qubo_out.empty()) {
                check(pq_quadratize(pubo.get(), c, aux == "all" ? PQ_AUX_ALL : PQ_AUX_LAZY, qubo.out()));
            }
        }
        if (penalty) cfg["penalty"] = *penalty;
        report["config"] = cfg;

        if (qubo.get()) {
            std::size_t total = 0, n_aux = 0;
            double offset = 0, c = 0;
            check(pq_qubo_info(qubo.get(), &total, nullptr, &n_aux, &offset, &c));
            problem["aux_bits"] = n_aux;
            problem["total_bits"] = total;
            problem["penalty"] = c;
            problem["offset"] = offset;
        } else {
            problem["aux_bits"] = nullptr;
            problem["total_bits"] = nullptr;
            problem["penalty"] = nullptr;
        }
        report["problem"] = problem;
        write_qubo(qubo, qubo_out);

        Samples samples;
        if (solver.backend == "brute") {
            solver.check_brute_size(logical);
            if (pubo.get()) {
                check(pq_brute_force_pubo(pubo.get(), solver.max_bits, samples.out()));
            } else {
                check(pq_brute_force_qubo(qubo.get(), solver.max_bits, samples.out()));
            }
        } else {
            pq_backend b = solver.make();
            check(pq_solve_qubo(qubo.get(), &b, samples.out()));
        }
        report["solver_output"] = samples_json(samples);

        auto bits = best_bits(samples);
        bits.resize(logical);
        std::vector<double> x(n_var);
        check(pq_encoding_decode(enc.get(), bits.data(), bits.size(), x.data(), x.size()));
        double energy = 0;
        check(pq_samples_info(samples.get(), nullptr, nullptr, nullptr, &energy, nullptr));
        json sol = solution_json(sys, n_eq, x, bits);
        sol["energy"] = energy;
        report["solution"] = sol;
        output.write(command, finish(std::move(report), output.no_timing, start));
        return kExitOk;
    }
};

/* ---- regress ---- */

struct RegressCommand {
    bool noiseless = false;
    std::optional<uint64_t> noise_seed;
    std::string data;
    std::string cov;
    std::size_t x_count = 50;
    double corr = 0.9;
    std::string basis = "poly:2";
    std::string objective = "gls";
    std::string export_data;
    std::string export_cov;
    RangeFlags range;
    SolverFlags solver;
    OutputFlags output;

    CLI::App* attach(CLI::App& app) {
        auto* sub = app.add_subcommand("regress", "generalized least-squares fit via QUBO");
        auto* nl = sub->add_flag("--noiseless", noiseless, "use the exact mean as observations");
        auto* ns = sub->add_option("--noise-seed", noise_seed, "draw correlated noise with this seed");
        auto* d = sub->add_option("--data", data, "CSV with x,y columns");
        sub->add_option("--cov", cov, "covariance CSV (default identity)")->needs(d);
        nl->excludes(ns)->excludes(d);
        ns->excludes(d);
        sub->add_option("--x-count", x_count, "synthetic grid size")->capture_default_str();
        sub->add_option("--corr", corr, "synthetic correlation base")->capture_default_str();
        sub->add_option("--basis", basis, "basis spec poly:<degree>")->capture_default_str();
        sub->add_option("--objective", objective, "QUBO objective")->check(CLI::IsMember({"gls", "rss"}))
            ->capture_default_str();
        sub->add_option("--export-data", export_data, "write the dataset CSV");
        sub->add_option("--export-cov", export_cov, "write the covariance CSV")->needs("--export-data");
        range.attach(sub, "0", "15", 4);
        solver.attach(sub, {"brute", "anneal"});
        output.attach(sub, {"json"});
        return sub;
    }

    int run() {
        auto start = std::chrono::steady_clock::now();
        solver.validate();
        Dataset ds;
        json cfg;
        if (!data.empty()) {
            check(pq_dataset_load_csv(data.c_str(), cov.empty() ? nullptr : cov.c_str(), ds.out()));
            cfg["data"] = data;
            cfg["cov"] = cov.empty() ? json(nullptr) : json(cov);
        } else {
            if (!noiseless && !noise_seed) noiseless = true;
            check(pq_dataset_generate(x_count, corr, noise_seed ? 1 : 0, noise_seed.value_or(0), ds.out()));
            cfg["synthetic"] = {{"x_count", x_count},
                                {"corr", corr},
                                {"noise_seed", noise_seed ? json(*noise_seed) : json(nullptr)}};
        }
        if (!export_data.empty())
            check(pq_dataset_write_csv(ds.get(), export_data.c_str(), export_cov.empty() ? nullptr : export_cov.c_str()));

        System normal;
        check(pq_normal_equations(ds.get(), basis.c_str(), normal.out()));
        std::size_t n_params = 0;
        check(pq_system_shape(normal.get(), nullptr, &n_params, nullptr));
        cfg["basis"] = basis;
        cfg["objective"] = objective;
        cfg["encoding"] = range.echo(n_params);
        cfg["solver"] = solver.echo();

        Encoding enc;
        range.make(n_params, enc);
        solver.check_brute_size(n_params * range.bits);

        pq_backend b = solver.make();
        std::vector<double> params(n_params);
        pq_fit_summary summary{};
        Samples samples;
        check(pq_regression_fit(ds.get(), basis.c_str(), enc.get(), &b,
                                objective == "gls" ? PQ_FIT_GLS : PQ_FIT_NORMAL_RESIDUAL, params.data(), n_params,
                                &summary, samples.out()));

        json report;
        report["command"] = "regress";
        report["config"] = cfg;
        report["problem"] = {{"logical_bits", summary.num_bits}, {"aux_bits", 0}, {"penalty", nullptr}};
        report["solver_output"] = samples_json(samples);
        auto bits = best_bits(samples);
        double chi2 = 0;
        check(pq_system_chi_squared(normal.get(), params.data(), params.size(), &chi2));
        double denom = p0_norm_squared(normal, n_params);
        report["solution"] = {{"parameters", params},
                              {"bits", bit_string(bits)},
                              {"energy", summary.qubo_energy},
                              {"energy_without_offset", summary.energy_without_offset},
                              {"gls_objective", summary.gls_objective},
                              {"chi_squared", chi2},
                              {"relative_residual", denom > 0 ? json(chi2 / denom) : json(nullptr)}};
        output.write("regress", finish(std::move(report), output.no_timing, start));
        return kExitOk;
    }
};

/* ---- sweep ---- */

struct SweepCommand {
    std::string kind = "size";
    std::string kappas;
    std::string sizes;
    std::string bits_list;
    std::optional<std::size_t> n;
    std::optional<double> kappa;
    std::optional<unsigned> bits;
    std::optional<double> lo;
    std::optional<double> hi;
    SolverFlags solver;
    OutputFlags output;

    CLI::App* attach(CLI::App& app) {
        auto* sub = app.add_subcommand("sweep", "size, condition or precision sweep on conditioned systems");
        sub->add_option("--kind", kind, "sweep kind")->check(CLI::IsMember({"size", "condition", "precision"}))
            ->capture_default_str();
        sub->add_option("--kappas", kappas, "condition numbers (condition sweep)");
        sub->add_option("--sizes", sizes, "system sizes (size sweep)");
        sub->add_option("--bits-list", bits_list, "bits per variable (precision sweep)");
        sub->add_option("--n", n, "fixed system size");
        sub->add_option("--kappa", kappa, "fixed condition number");
        sub->add_option("--bits", bits, "fixed bits per variable");
        sub->add_option("--lo", lo, "search range lower bound");
        sub->add_option("--hi", hi, "search range upper bound");
        solver.attach(sub, {"brute", "anneal"});
        output.attach(sub, {"csv", "json"});
        output.format = "csv";
        return sub;
    }

    int run() {
        auto start = std::chrono::steady_clock::now();
        solver.validate();
        if (lo.has_value() != hi.has_value()) config_error("--lo and --hi must be given together");
        pq_sweep_config c;
        pq_sweep_kind k = kind == "size" ? PQ_SWEEP_SIZE : kind == "condition" ? PQ_SWEEP_CONDITION : PQ_SWEEP_PRECISION;
        pq_sweep_config_default(&c, k);
        std::vector<double> values;
        const std::string* list = k == PQ_SWEEP_SIZE ? &sizes : k == PQ_SWEEP_CONDITION ? &kappas : &bits_list;
        const char* list_flag = k == PQ_SWEEP_SIZE ? "--sizes" : k == PQ_SWEEP_CONDITION ? "--kappas" : "--bits-list";
        for (auto [other, flag] : {std::pair{&sizes, "--sizes"}, {&kappas, "--kappas"}, {&bits_list, "--bits-list"}})
            if (other != list && !other->empty()) config_error(std::string(flag) + " does not apply to --kind " + kind);
        if (!list->empty()) {
            values = parse_list(*list, list_flag);
            c.values = values.data();
            c.num_values = values.size();
        }
        if (n) c.size = *n;
        if (kappa) c.kappa = *kappa;
        if (bits) c.bits = *bits;
        c.seed = solver.seed;
        if (lo) {
            c.has_range = 1;
            c.lo = *lo;
            c.hi = *hi;
        }
        c.backend = solver.make();
        Report rep;
        check(pq_run_sweep(&c, rep.out()));
        char* text = nullptr;
        if (output.format == "csv") {
            check(pq_sweep_report_to_csv(rep.get(), &text));
            output.write("sweep", take(text));
            return kExitOk;
        }
        check(pq_sweep_report_to_json(rep.get(), &text));
        json report;
        report["command"] = "sweep";
        json cfg = {{"kind", kind}};
        if (!values.empty()) cfg["values"] = values;
        cfg["n"] = n ? json(*n) : json(nullptr);
        cfg["kappa"] = kappa ? json(*kappa) : json(nullptr);
        cfg["bits"] = bits ? json(*bits) : json(nullptr);
        cfg["lo"] = lo ? json(*lo) : json(nullptr);
        cfg["hi"] = hi ? json(*hi) : json(nullptr);
        cfg["seed"] = solver.seed;
        cfg["solver"] = solver.echo();
        report["config"] = cfg;
        report["sweep"] = json::parse(take(text));
        output.write("sweep", finish(std::move(report), output.no_timing, start));
        return kExitOk;
    }
};

/* ---- iterate ---- */

struct IterateCommand {
    std::size_t n = 4;
    double kappa = 1.1;
    unsigned bits = 4;
    std::size_t iters = 9;
    double lo = -1;
    double hi = 1;
    SolverFlags solver;
    OutputFlags output;

    CLI::App* attach(CLI::App& app) {
        auto* sub = app.add_subcommand("iterate", "iterative refinement on a conditioned system");
        sub->add_option("--n", n, "system size")->capture_default_str();
        sub->add_option("--kappa", kappa, "condition number")->capture_default_str();
        sub->add_option("--bits", bits, "bits per variable")->capture_default_str();
        sub->add_option("--iters", iters, "refinement iterations")->capture_default_str();
        sub->add_option("--lo", lo, "initial range lower bound")->capture_default_str();
        sub->add_option("--hi", hi, "initial range upper bound")->capture_default_str();
        solver.attach(sub, {"brute", "anneal"});
        output.attach(sub, {"json"});
        return sub;
    }

    int run() {
        auto start = std::chrono::steady_clock::now();
        solver.validate();
        solver.check_brute_size(n * bits);
        std::vector<double> p1(n * n), p0(n);
        check(pq_make_conditioned_matrix(n, kappa, solver.seed, p1.data()));
        check(pq_make_rhs(n, p0.data()));
        for (double& v : p0) v = -v;
        pq_backend b = solver.make();
        Trace trace;
        check(pq_iterate_solve(p1.data(), p0.data(), n, bits, iters, lo, hi, &b, trace.out()));
        std::size_t count = 0;
        check(pq_trace_size(trace.get(), &count));
        std::vector<double> x(n);
        double rel = 0;
        check(pq_trace_record(trace.get(), count - 1, x.data(), n, &rel, nullptr, nullptr));
        char* text = nullptr;
        check(pq_trace_to_json(trace.get(), &text));

        json report;
        report["command"] = "iterate";
        report["config"] = {{"n", n}, {"kappa", kappa}, {"bits", bits}, {"iters", iters},
                            {"lo", lo}, {"hi", hi}, {"seed", solver.seed}, {"solver", solver.echo()}};
        report["problem"] = {{"logical_bits", n * bits}, {"aux_bits", 0}, {"penalty", nullptr}};
        report["trace"] = json::parse(take(text));
        report["solution"] = {{"x", x}, {"relative_residual", rel}, {"iterations_run", count}};
        output.write("iterate", finish(std::move(report), output.no_timing, start));
        return kExitOk;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyqubo: polynomial and linear systems as QUBO problems"};
    app.set_version_flag("--version", pq_version());
    app.require_subcommand(1);

    SolveCommand poly;
    SolveCommand lin;
    lin.linear = true;
    RegressCommand regress;
    SweepCommand sweep;
    IterateCommand iterate;
    auto* poly_app = poly.attach(app);
    auto* lin_app = lin.attach(app);
    auto* regress_app = regress.attach(app);
    auto* sweep_app = sweep.attach(app);
    auto* iterate_app = iterate.attach(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*poly_app) return poly.run();
        if (*lin_app) return lin.run();
        if (*regress_app) return regress.run();
        if (*sweep_app) return sweep.run();
        if (*iterate_app) return iterate.run();
    } catch (const Failure& f) {
        std::cerr << "error: " << f.what() << "\n";
        return f.exit_code;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitConfig;
}
