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

#include "polyqubo/linsys_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "polyqubo/compiler.hpp"
#include "polyqubo/error.hpp"
#include "polyqubo/polysys.hpp"
#include "polyqubo/rng.hpp"

namespace polyqubo {

Eigen::MatrixXd make_conditioned_matrix(const ConditionedSpec& spec) {
    if (spec.size == 0) throw Error(ErrorCode::kInvalidArgument, "matrix size must be >= 1");
    if (!std::isfinite(spec.kappa) || !(spec.kappa >= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "condition number must be finite and >= 1");
    }
    if (spec.size == 1 && spec.kappa != 1.0) {
        throw Error(ErrorCode::kInvalidArgument, "a 1 x 1 matrix can only have condition number 1");
    }
    const auto n = static_cast<Eigen::Index>(spec.size);
    Rng rng(spec.seed);
    Eigen::MatrixXd gaussian(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) gaussian(i, j) = rng.normal();
    }
    const Eigen::MatrixXd u = Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian).householderQ();
    Eigen::VectorXd lambda(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        lambda(i) = n == 1 ? 1.0 : 1.0 + (spec.kappa - 1.0) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    Eigen::MatrixXd m = u * lambda.asDiagonal() * u.transpose();
    return 0.5 * (m + m.transpose());
}

Eigen::VectorXd make_rhs(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "right-hand side length must be >= 1");
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    if (n == 1) {
        v(0) = 1.0;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) v(i) = 1.0 - 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

LinearInstance make_instance(const ConditionedSpec& spec) {
    return {make_conditioned_matrix(spec), -make_rhs(spec.size)};
}

double relative_residual(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0, std::span<const double> x) {
    if (p1.rows() != p0.size() || p1.cols() != static_cast<Eigen::Index>(x.size())) {
        throw Error(ErrorCode::kDimensionMismatch, "relative residual: P1, P0 and x disagree in size");
    }
    const double denom = p0.squaredNorm();
    if (denom == 0.0) throw Error(ErrorCode::kInvalidArgument, "relative residual is undefined for P0 = 0");
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    return (p1 * xv + p0).squaredNorm() / denom;
}

namespace {

Eigen::VectorXd reference_solution(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0) {
    const CgReport cg = conjugate_gradient(p1, p0, 1e-13, 100 * static_cast<std::size_t>(p1.rows()) + 1000);
    if (!cg.converged && cg.final_relative_residual_norm > 1e-8) {
        throw Error(ErrorCode::kNotConverged, "reference CG solve did not converge (relative residual " +
                                                  std::to_string(cg.final_relative_residual_norm) + ")");
    }
    return cg.solution;
}

ForwardErrorPoint round_to_grid(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0, const BitEncoding& encoding,
                                const Eigen::VectorXd& solution) {
    ForwardErrorPoint point;
    const std::vector<double> target(solution.data(), solution.data() + solution.size());
    point.bits = encoding.encode_levels(encoding.nearest_levels(target));
    point.x = encoding.decode(point.bits);
    point.relative_residual = relative_residual(p1, p0, point.x);
    return point;
}

}  // namespace

ForwardErrorPoint forward_error_minimum(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0,
                                        const BitEncoding& encoding) {
    return round_to_grid(p1, p0, encoding, reference_solution(p1, p0));
}

const char* to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::kSize: return "size";
        case SweepKind::kCondition: return "condition";
        case SweepKind::kPrecision: return "precision";
    }
    return "unknown";
}

SweepKind parse_sweep_kind(std::string_view name) {
    if (name == "size") return SweepKind::kSize;
    if (name == "condition") return SweepKind::kCondition;
    if (name == "precision") return SweepKind::kPrecision;
    throw Error(ErrorCode::kInvalidArgument, "unknown sweep kind '" + std::string(name) + "'");
}

SweepConfig SweepConfig::defaults(SweepKind kind) {
    SweepConfig c;
    c.kind = kind;
    switch (kind) {
        case SweepKind::kSize:
            c.kappa = 1.1;
            c.bits = 2;
            c.values = {2, 4, 6, 8, 10, 12};
            break;
        case SweepKind::kCondition:
            c.size = 12;
            c.bits = 2;
            c.values = {1.1, 10, 100, 1000};
            break;
        case SweepKind::kPrecision:
            c.size = 4;
            c.kappa = 1.1;
            c.values = {1, 2, 3, 4, 5, 6};
            break;
    }
    return c;
}

namespace {

std::size_t as_count(double v, const char* what) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e6) {
        throw Error(ErrorCode::kInvalidArgument, std::string(what) + " values must be positive integers");
    }
    return static_cast<std::size_t>(v);
}

std::string csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config) {
    if (config.values.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one value");
    if (config.lo.has_value() != config.hi.has_value()) {
        throw Error(ErrorCode::kInvalidArgument, "sweep range needs both lo and hi");
    }
    SweepReport report;
    report.kind = config.kind;
    for (double value : config.values) {
        SweepPoint point;
        point.param = value;
        point.size = config.kind == SweepKind::kSize ? as_count(value, "size") : config.size;
        point.kappa = config.kind == SweepKind::kCondition ? value : config.kappa;
        point.bits = config.kind == SweepKind::kPrecision ? static_cast<unsigned>(as_count(value, "bit")) : config.bits;

        const LinearInstance inst = make_instance({point.size, point.kappa, config.seed});
        const Eigen::VectorXd reference = reference_solution(inst.p1, inst.p0);
        if (config.lo) {
            point.lo = *config.lo;
            point.hi = *config.hi;
        } else {
            point.lo = reference.minCoeff();
            point.hi = reference.maxCoeff();
            if (!(point.hi - point.lo > 1e-12)) {
                point.lo -= 0.5;
                point.hi += 0.5;
            }
        }
        const std::vector<double> lo(point.size, point.lo);
        const std::vector<double> hi(point.size, point.hi);
        const BitEncoding enc = BitEncoding::from_range(lo, hi, point.bits);
        const QuboMatrix qubo = compile_linear_qubo(PolynomialSystem::linear(inst.p1, inst.p0), enc);
        const SampleSet samples = solve_qubo(qubo, config.backend);

        point.num_bits = qubo.num_bits();
        point.min_energy = samples.min_energy();
        point.relative_residual = relative_residual(inst.p1, inst.p0, enc.decode(samples.best().bits));
        point.hit_fraction = samples.hit_fraction();
        point.reads = samples.total_reads;
        if (config.kind != SweepKind::kCondition) {
            point.forward_error_residual = round_to_grid(inst.p1, inst.p0, enc, reference).relative_residual;
        }
        report.points.push_back(point);
    }
    std::stable_sort(report.points.begin(), report.points.end(),
                     [](const SweepPoint& a, const SweepPoint& b) { return a.param < b.param; });
    return report;
}

std::string SweepReport::to_csv() const {
    std::ostringstream out;
    out << "param,min_energy,rel_residual,hit_fraction,forward_error_residual\n";
    for (const auto& p : points) {
        out << csv_number(p.param) << ',' << csv_number(p.min_energy) << ',' << csv_number(p.relative_residual) << ','
            << csv_number(p.hit_fraction) << ',';
        if (p.forward_error_residual) out << csv_number(*p.forward_error_residual);
        out << '\n';
    }
    return out.str();
}

std::string SweepReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["kind"] = to_string(kind);
    auto& arr = doc["points"] = nlohmann::ordered_json::array();
    for (const auto& p : points) {
        nlohmann::ordered_json j;
        j["param"] = p.param;
        j["size"] = p.size;
        j["kappa"] = p.kappa;
        j["bits_per_var"] = p.bits;
        j["lo"] = p.lo;
        j["hi"] = p.hi;
        j["num_bits"] = p.num_bits;
        j["min_energy"] = p.min_energy;
        j["rel_residual"] = p.relative_residual;
        j["hit_fraction"] = p.hit_fraction;
        j["reads"] = p.reads;
        j["forward_error_residual"] = p.forward_error_residual ? nlohmann::ordered_json(*p.forward_error_residual)
                                                               : nlohmann::ordered_json(nullptr);
        arr.push_back(std::move(j));
    }
    return doc.dump(2);
}

IterationTrace iterate_solve(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0, unsigned bits,
                             std::size_t num_iters, const QuboBackend& backend, double lo, double hi) {
    if (num_iters == 0) throw Error(ErrorCode::kInvalidArgument, "iteration count must be >= 1");
    const PolynomialSystem system = PolynomialSystem::linear(p1, p0);
    const std::size_t n = system.num_variables();
    BitEncoding enc = BitEncoding::from_range(std::vector<double>(n, lo), std::vector<double>(n, hi), bits);

    IterationTrace trace;
    for (std::size_t it = 0; it < num_iters; ++it) {
        const QuboMatrix qubo = compile_linear_qubo(system, enc);
        const SampleSet samples = solve_qubo(qubo, backend);
        IterationRecord rec{enc, samples.best().bits, enc.decode(samples.best().bits)};
        rec.relative_residual = relative_residual(p1, p0, rec.x);
        rec.hit_fraction = samples.hit_fraction();
        rec.reads = samples.total_reads;
        for (std::uint64_t level : enc.nearest_levels(rec.x)) {
            if (level == 0 || level == enc.max_level()) rec.on_boundary = true;
        }
        const bool done = rec.relative_residual < 1e-14;
        const std::vector<double> incumbent = rec.x;
        trace.records.push_back(std::move(rec));
        if (done) break;
        // The window is centred on the incumbent, which also recentres a boundary hit.
        enc = enc.refine(incumbent);
    }
    return trace;
}

std::string IterationTrace::to_json() const {
    nlohmann::ordered_json doc;
    auto& arr = doc["iterations"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        std::vector<double> upper(r.encoding.num_variables());
        for (std::size_t j = 0; j < upper.size(); ++j) upper[j] = r.encoding.upper(j);
        nlohmann::ordered_json j;
        j["iteration"] = k + 1;
        j["lo"] = r.encoding.offset();
        j["hi"] = upper;
        j["scale"] = r.encoding.scale();
        j["state"] = bits_to_string(r.bits);
        j["x"] = r.x;
        j["relative_residual"] = r.relative_residual;
        j["hit_fraction"] = r.hit_fraction;
        j["reads"] = r.reads;
        j["on_boundary"] = r.on_boundary;
        arr.push_back(std::move(j));
    }
    return doc.dump(2);
}

}  // namespace polyqubo
