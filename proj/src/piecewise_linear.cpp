// SPDX-License-Identifier: MIT
#include "sepdec/piecewise_linear.hpp"

#include "sepdec/error.hpp"
#include "sepdec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace sepdec {

PiecewiseLinear::PiecewiseLinear(std::vector<Breakpoint> breakpoints) : breakpoints_(std::move(breakpoints)) {
    if (breakpoints_.empty()) throw Error(ErrorKind::InvalidArgument, "piecewise-linear function needs a breakpoint");
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        if (!std::isfinite(breakpoints_[k].value)) {
            throw Error(ErrorKind::InvalidArgument, "non-finite breakpoint value");
        }
        if (k > 0 && !(breakpoints_[k - 1].at < breakpoints_[k].at)) {
            throw Error(ErrorKind::InvalidArgument, "breakpoints must be strictly increasing");
        }
    }
}

PiecewiseLinear PiecewiseLinear::constant(double value, const ExactCoord& at) {
    return PiecewiseLinear({{at, value}});
}

double PiecewiseLinear::operator()(const ExactCoord& x) const {
    const auto& bp = breakpoints_;
    if (x <= bp.front().at) return bp.front().value;
    if (x >= bp.back().at) return bp.back().value;
    // first breakpoint strictly greater than x; x lies in [hi-1, hi)
    auto hi = std::upper_bound(bp.begin(), bp.end(), x,
                               [](const ExactCoord& v, const Breakpoint& b) { return v < b.at; });
    auto lo = std::prev(hi);
    if (lo->at == x) return lo->value;
    const double t = ratio_to_double(x - lo->at, hi->at - lo->at);
    const double v = lo->value + t * (hi->value - lo->value);
    return std::clamp(v, std::min(lo->value, hi->value), std::max(lo->value, hi->value));
}

double PiecewiseLinear::sup_norm() const {
    double m = 0.0;
    for (const auto& b : breakpoints_) m = std::max(m, std::abs(b.value));
    return m;
}

PiecewiseLinear operator+(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    std::vector<ExactCoord> at;
    at.reserve(a.breakpoints().size() + b.breakpoints().size());
    for (const auto& p : a.breakpoints()) at.push_back(p.at);
    for (const auto& p : b.breakpoints()) at.push_back(p.at);
    std::sort(at.begin(), at.end());
    at.erase(std::unique(at.begin(), at.end()), at.end());

    std::vector<Breakpoint> merged;
    merged.reserve(at.size());
    for (auto& x : at) {
        const double v = a(x) + b(x);
        merged.push_back({std::move(x), v});
    }
    return PiecewiseLinear(std::move(merged));
}

void write_piecewise_linear(std::ostream& out, const PiecewiseLinear& fn) {
    out << kPiecewiseLinearHeader << '\n';
    for (const auto& b : fn.breakpoints()) out << b.at.to_string() << ',' << format_double(b.value) << '\n';
}

PiecewiseLinear read_piecewise_linear(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind(kPiecewiseLinearHeader, 0) != 0) {
        throw Error(ErrorKind::Parse, std::string("missing header '") + kPiecewiseLinearHeader + "'");
    }
    std::vector<Breakpoint> bps;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::Parse, "breakpoint line needs 'coordinate,value'");
        std::size_t used = 0;
        const std::string value_text = line.substr(comma + 1);
        double value = 0.0;
        try {
            value = std::stod(value_text, &used);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, "bad breakpoint value '" + value_text + "'");
        }
        bps.push_back({ExactCoord::parse(line.substr(0, comma)), value});
    }
    return PiecewiseLinear(std::move(bps));
}

PiecewiseLinear read_piecewise_linear(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    return read_piecewise_linear(in);
}

}  // namespace sepdec
