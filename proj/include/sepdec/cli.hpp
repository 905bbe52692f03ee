// SPDX-License-Identifier: MIT
#pragma once

#include "sepdec/generate.hpp"
#include "sepdec/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sepdec {

/// Exit codes of the `sepdec` binary.
enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,
    kExitArrayPresent = 2,
    kExitNotConverged = 3,
    kExitResolutionExhausted = 4,
    kExitGuarantee = 5,
};

struct GeneratorSpec {
    Family family = Family::monotone_curve;
    std::size_t size = 200;
    std::uint64_t seed = 7;
    FunctionKind kind = FunctionKind::smooth;
};

struct RunConfig {
    std::optional<std::filesystem::path> input;
    std::optional<GeneratorSpec> generator;
    double tol = 1e-3;
    int max_iter = 32;
    std::optional<double> eps;  // single-step mode
    int max_n = 24;
    double eps_divisor = 12.0;
    std::filesystem::path out_dir = ".";
    bool verify = false;
    bool plot = false;
};

/// Throws InvalidArgument on tol <= 0, max_iter < 1, max_n outside [0, 40].
void validate(const RunConfig& config);

/// Writes g.csv, h.csv, trace.jsonl, report.json to out_dir; returns an ExitCode.
int run_decompose(const RunConfig& config);

/// points.csv (x,y,f,residual), g_plot.csv and h_plot.csv (1000 samples
/// across the bounding box).
void emit_plotdata(const DecompositionResult& result, const PlaneSample& sample,
                   const std::filesystem::path& dir);

/// Writes `contents` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Entry point of the `sepdec` binary.
int cli_main(int argc, const char* const* argv);

}  // namespace sepdec
