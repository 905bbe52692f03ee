// SPDX-License-Identifier: MIT
#pragma once

#include "sepdec/geometry.hpp"
#include "sepdec/piecewise_linear.hpp"

#include <string>
#include <vector>

namespace sepdec {

struct SolverOptions {
    double tol = 1e-3;
    int max_iter = 32;
    int max_n = 24;
    /// eps_i = ||f_{i-1}|| / eps_divisor; the per-step 6 eps bound gives the
    /// contraction factor rho = 6 / eps_divisor.
    double eps_divisor = 12.0;
};

struct TraceEntry {
    int iter = 0;
    double eps = 0.0;
    double residual_sup = 0.0;
    double norm_g = 0.0;
    double norm_h = 0.0;
    int level = 0;
    double entering_norm = 0.0;
};

struct DecompositionResult {
    PiecewiseLinear g_total = PiecewiseLinear::constant(0.0);
    PiecewiseLinear h_total = PiecewiseLinear::constant(0.0);
    std::vector<TraceEntry> trace;
    double f_norm = 0.0;
    double final_residual = 0.0;
    bool converged = false;
};

/// Repeats decompose_step on the running residual until its sup-norm is at
/// most tol or max_iter steps have run. Not converging is reported through
/// `converged`, not thrown.
DecompositionResult decompose(const PlaneSample& sample, const SolverOptions& options = {});

struct ResidualReport {
    std::vector<double> residuals;
    double sup = 0.0;
    double mean = 0.0;
};

ResidualReport evaluate(const DecompositionResult& result, const PlaneSample& sample);

/// {"iter","eps","residual_sup","norm_g","norm_h","level_n"} as one JSON line.
std::string trace_line(const TraceEntry& entry);

}  // namespace sepdec
