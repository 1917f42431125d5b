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

#include "polyqubo/polysys.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "polyqubo/error.hpp"

namespace polyqubo {

using nlohmann::json;

std::size_t tensor_width(std::size_t num_variables, std::size_t order) {
    std::size_t width = 1;
    for (std::size_t n = 0; n < order; ++n) {
        if (num_variables != 0 && width > std::numeric_limits<std::size_t>::max() / num_variables) {
            throw Error(ErrorCode::kLimitExceeded, "coefficient tensor of order " + std::to_string(order) +
                                                       " is too large to store densely");
        }
        width *= num_variables;
    }
    return width;
}

PolynomialSystem::PolynomialSystem(std::size_t num_equations, std::size_t num_variables,
                                   std::vector<std::vector<double>> coeffs)
    : num_equations_(num_equations), num_variables_(num_variables), coeffs_(std::move(coeffs)) {
    if (num_equations_ == 0) throw Error(ErrorCode::kInvalidArgument, "n_equations must be positive");
    if (num_variables_ == 0) throw Error(ErrorCode::kInvalidArgument, "n_variables must be positive");
    if (coeffs_.empty()) throw Error(ErrorCode::kInvalidArgument, "coeffs must hold at least the order-0 tensor");
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        const std::size_t expected = num_equations_ * tensor_width(num_variables_, n);
        if (coeffs_[n].size() != expected) {
            throw Error(ErrorCode::kDimensionMismatch,
                        "coeffs[" + std::to_string(n) + "] has " + std::to_string(coeffs_[n].size()) +
                            " entries, expected N x V^" + std::to_string(n) + " = " + std::to_string(expected));
        }
        for (double c : coeffs_[n]) {
            if (!std::isfinite(c)) {
                throw Error(ErrorCode::kInvalidArgument, "coeffs[" + std::to_string(n) + "] contains a non-finite value");
            }
        }
    }
}

PolynomialSystem PolynomialSystem::linear(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0) {
    if (p1.rows() != p0.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "P1 has " + std::to_string(p1.rows()) + " rows but P0 has " +
                                                       std::to_string(p0.size()) + " entries");
    }
    std::vector<double> c0(p0.data(), p0.data() + p0.size());
    std::vector<double> c1(static_cast<std::size_t>(p1.size()));
    for (Eigen::Index i = 0; i < p1.rows(); ++i) {
        for (Eigen::Index j = 0; j < p1.cols(); ++j) c1[i * p1.cols() + j] = p1(i, j);
    }
    return PolynomialSystem(static_cast<std::size_t>(p1.rows()), static_cast<std::size_t>(p1.cols()),
                            {std::move(c0), std::move(c1)});
}

namespace {

// Flattens a nested array of known shape, naming the offending path on error.
void flatten(const json& node, std::size_t depth, std::size_t num_variables, const std::string& path,
             std::vector<double>& out) {
    if (depth == 0) {
        if (!node.is_number()) throw Error(ErrorCode::kParse, path + ": expected a number");
        out.push_back(node.get<double>());
        return;
    }
    if (!node.is_array() || node.size() != num_variables) {
        throw Error(ErrorCode::kParse,
                    path + ": expected an array of length " + std::to_string(num_variables) + " (n_variables)");
    }
    for (std::size_t k = 0; k < node.size(); ++k) {
        flatten(node[k], depth - 1, num_variables, path + "[" + std::to_string(k) + "]", out);
    }
}

std::size_t positive_field(const json& doc, const char* name) {
    if (!doc.contains(name)) throw Error(ErrorCode::kParse, std::string("missing field '") + name + "'");
    const json& v = doc[name];
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw Error(ErrorCode::kParse, std::string("field '") + name + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

}  // namespace

PolynomialSystem PolynomialSystem::from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::kParse, std::string("malformed system JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::kParse, "system JSON must be an object");
    const std::size_t n_eq = positive_field(doc, "n_equations");
    const std::size_t n_var = positive_field(doc, "n_variables");
    const std::size_t degree = positive_field(doc, "degree");
    if (n_eq == 0 || n_var == 0) throw Error(ErrorCode::kParse, "n_equations and n_variables must be positive");
    if (!doc.contains("coeffs") || !doc["coeffs"].is_array()) {
        throw Error(ErrorCode::kParse, "missing array field 'coeffs'");
    }
    const json& coeffs = doc["coeffs"];
    if (coeffs.size() != degree + 1) {
        throw Error(ErrorCode::kParse, "coeffs has " + std::to_string(coeffs.size()) + " orders but degree " +
                                           std::to_string(degree) + " needs " + std::to_string(degree + 1));
    }
    std::vector<std::vector<double>> tensors(degree + 1);
    for (std::size_t n = 0; n <= degree; ++n) {
        const json& t = coeffs[n];
        const std::string path = "coeffs[" + std::to_string(n) + "]";
        if (!t.is_array() || t.size() != n_eq) {
            throw Error(ErrorCode::kParse,
                        path + ": expected an array of length " + std::to_string(n_eq) + " (n_equations)");
        }
        tensors[n].reserve(n_eq * tensor_width(n_var, n));
        for (std::size_t i = 0; i < n_eq; ++i) {
            flatten(t[i], n, n_var, path + "[" + std::to_string(i) + "]", tensors[n]);
        }
    }
    return PolynomialSystem(n_eq, n_var, std::move(tensors));
}

PolynomialSystem PolynomialSystem::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIo, "cannot open system file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return from_json(buffer.str());
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

namespace {

json unflatten(std::span<const double> values, std::size_t depth, std::size_t width) {
    if (depth == 0) return values.front();
    json arr = json::array();
    const std::size_t stride = values.size() / width;
    for (std::size_t k = 0; k < width; ++k) arr.push_back(unflatten(values.subspan(k * stride, stride), depth - 1, width));
    return arr;
}

}  // namespace

std::string PolynomialSystem::to_json() const {
    nlohmann::ordered_json doc;
    doc["n_equations"] = num_equations_;
    doc["n_variables"] = num_variables_;
    doc["degree"] = degree();
    json coeffs = json::array();
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        json per_eq = json::array();
        const std::size_t width = tensor_width(num_variables_, n);
        for (std::size_t i = 0; i < num_equations_; ++i) {
            per_eq.push_back(unflatten(std::span(coeffs_[n]).subspan(i * width, width), n, num_variables_));
        }
        coeffs.push_back(per_eq);
    }
    doc["coeffs"] = coeffs;
    return doc.dump();
}

void PolynomialSystem::check_point(std::span<const double> x) const {
    if (x.size() != num_variables_) {
        throw Error(ErrorCode::kDimensionMismatch, "solution vector has length " + std::to_string(x.size()) +
                                                       " but the coefficient tensors expect n_variables = " +
                                                       std::to_string(num_variables_));
    }
}

std::vector<double> PolynomialSystem::evaluate_residuals(std::span<const double> x) const {
    check_point(x);
    std::vector<double> residuals(num_equations_, 0.0);
    // monomials[t] holds x_{j1} * ... * x_{jn} for the row-major flattening t of (j1..jn).
    std::vector<double> monomials{1.0};
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        if (n > 0) {
            std::vector<double> next(monomials.size() * num_variables_);
            for (std::size_t t = 0; t < monomials.size(); ++t) {
                for (std::size_t j = 0; j < num_variables_; ++j) next[t * num_variables_ + j] = monomials[t] * x[j];
            }
            monomials = std::move(next);
        }
        const std::vector<double>& tensor = coeffs_[n];
        for (std::size_t i = 0; i < num_equations_; ++i) {
            const double* row = tensor.data() + i * monomials.size();
            double acc = 0.0;
            for (std::size_t t = 0; t < monomials.size(); ++t) acc += row[t] * monomials[t];
            residuals[i] += acc;
        }
    }
    return residuals;
}

double PolynomialSystem::chi_squared(std::span<const double> x) const {
    double sum = 0.0;
    for (double f : evaluate_residuals(x)) sum += f * f;
    return sum;
}

Eigen::MatrixXd PolynomialSystem::linear_matrix() const {
    Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(num_equations_, num_variables_);
    if (coeffs_.size() < 2) return p1;
    for (std::size_t i = 0; i < num_equations_; ++i) {
        for (std::size_t j = 0; j < num_variables_; ++j) p1(i, j) = coeffs_[1][i * num_variables_ + j];
    }
    return p1;
}

Eigen::VectorXd PolynomialSystem::constant_vector() const {
    return Eigen::Map<const Eigen::VectorXd>(coeffs_[0].data(), static_cast<Eigen::Index>(num_equations_));
}

}  // namespace polyqubo
