// SPDX-License-Identifier: MIT
#include "sepdec/solver.hpp"

#include "sepdec/error.hpp"
#include "sepdec/log.hpp"
#include "sepdec/step.hpp"

#include <json.hpp>

#include <cmath>

namespace sepdec {

DecompositionResult decompose(const PlaneSample& sample, const SolverOptions& options) {
    if (!(options.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
    if (options.max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be >= 1");
    if (!(options.eps_divisor >= 12.0)) {
        throw Error(ErrorKind::InvalidArgument, "eps divisor below 12 gives no contraction");
    }
    if (auto w = detect_three_array(sample)) {
        throw Error(ErrorKind::ArrayPresent, "points " + std::to_string(w->a1) + ", " + std::to_string(w->a2) +
                                                 ", " + std::to_string(w->a3) + " form a 3-point array");
    }

    const double rho = 6.0 / options.eps_divisor;
    DecompositionResult result;
    result.f_norm = sup_norm(sample);
    result.g_total = PiecewiseLinear::constant(0.0, sample.bounds().x_min);
    result.h_total = PiecewiseLinear::constant(0.0, sample.bounds().y_min);

    PlaneSample current = sample;
    double current_norm = result.f_norm;
    for (int iter = 1; iter <= options.max_iter && current_norm > options.tol; ++iter) {
        const double eps = current_norm / options.eps_divisor;
        StepResult step = decompose_step(current, eps, StepOptions{options.max_n});

        if (step.norm_g > current_norm || step.norm_h > 2.0 * current_norm) {
            throw Error(ErrorKind::GuaranteeViolated, "step norms exceed the entering residual's bounds");
        }
        if (step.residual_sup > result.f_norm * std::pow(rho, iter)) {
            throw Error(ErrorKind::GuaranteeViolated,
                        "iteration " + std::to_string(iter) + " leaves the geometric envelope");
        }
        result.trace.push_back({iter, eps, step.residual_sup, step.norm_g, step.norm_h, step.level, current_norm});
        log(LogLevel::info, trace_line(result.trace.back()));

        result.g_total = result.g_total + step.g;
        result.h_total = result.h_total + step.h;
        current = current.with_values(step.residuals);
        current_norm = step.residual_sup;
    }

    result.final_residual = evaluate(result, sample).sup;
    result.converged = result.final_residual <= options.tol;
    return result;
}

ResidualReport evaluate(const DecompositionResult& result, const PlaneSample& sample) {
    ResidualReport report;
    report.residuals.reserve(sample.size());
    double total = 0.0;
    for (const auto& p : sample.points()) {
        const double r = p.f - result.g_total(p.x) - result.h_total(p.y);
        report.residuals.push_back(r);
        report.sup = std::max(report.sup, std::abs(r));
        total += std::abs(r);
    }
    report.mean = total / static_cast<double>(sample.size());
    return report;
}

std::string trace_line(const TraceEntry& entry) {
    nlohmann::ordered_json j;
    j["iter"] = entry.iter;
    j["eps"] = entry.eps;
    j["residual_sup"] = entry.residual_sup;
    j["norm_g"] = entry.norm_g;
    j["norm_h"] = entry.norm_h;
    j["level_n"] = entry.level;
    return j.dump();
}

}  // namespace sepdec
