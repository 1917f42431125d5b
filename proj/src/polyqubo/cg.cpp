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

#include <cmath>
#include <string>

#include "polyqubo/error.hpp"
#include "polyqubo/solvers.hpp"

namespace polyqubo {

CgReport conjugate_gradient(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0, double tol, std::size_t max_iter) {
    if (p1.rows() != p1.cols() || p1.rows() != p0.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "CG needs a square P1 matching P0");
    }
    if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "CG tolerance must be > 0");
    if (!p1.isApprox(p1.transpose(), 1e-12)) throw Error(ErrorCode::kInvalidArgument, "CG needs a symmetric P1");

    CgReport report;
    report.solution = Eigen::VectorXd::Zero(p0.size());
    const double norm0 = p0.norm();
    if (norm0 == 0.0) {
        report.converged = true;
        return report;
    }
    Eigen::VectorXd r = -p0;
    Eigen::VectorXd p = r;
    double rr = r.squaredNorm();
    double best_true = 1.0;
    int stalled = 0;
    report.final_relative_residual_norm = 1.0;
    while (report.iterations < max_iter) {
        const Eigen::VectorXd ap = p1 * p;
        const double curvature = p.dot(ap);
        if (!(curvature > 0.0)) {
            if (p.squaredNorm() == 0.0) break;
            throw Error(ErrorCode::kNumerical, "CG met non-positive curvature; P1 is not positive definite");
        }
        const double alpha = rr / curvature;
        report.solution += alpha * p;
        r -= alpha * ap;
        ++report.iterations;
        double rr_next = r.squaredNorm();
        report.final_relative_residual_norm = std::sqrt(rr_next) / norm0;
        if (report.final_relative_residual_norm <= tol) {
            // The recursive residual drifts from the true one; confirm before stopping.
            r = -(p1 * report.solution + p0);
            rr_next = r.squaredNorm();
            report.final_relative_residual_norm = std::sqrt(rr_next) / norm0;
            if (report.final_relative_residual_norm <= tol) {
                report.converged = true;
                break;
            }
            // Restart from the true residual; stop once it no longer improves.
            if (report.final_relative_residual_norm < 0.5 * best_true) {
                best_true = report.final_relative_residual_norm;
                stalled = 0;
            } else if (++stalled >= 3) {
                break;
            }
            p = r;
            rr = rr_next;
            continue;
        }
        p = r + (rr_next / rr) * p;
        rr = rr_next;
    }
    if (!report.converged) report.final_relative_residual_norm = (p1 * report.solution + p0).norm() / norm0;
    return report;
}

}  // namespace polyqubo
