// SPDX-License-Identifier: MIT
#include "sepdec/geometry.hpp"

#include "sepdec/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace sepdec {

PlaneSample::PlaneSample(std::vector<SamplePoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error(ErrorKind::InvalidArgument, "sample is empty");

    std::vector<std::size_t> order(points_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points_[a].x != points_[b].x) return points_[a].x < points_[b].x;
        return points_[a].y < points_[b].y;
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
        const auto& a = points_[order[k - 1]];
        const auto& b = points_[order[k]];
        if (a.x == b.x && a.y == b.y) {
            throw Error(ErrorKind::InvalidArgument,
                        "duplicate point (" + a.x.to_string() + ", " + a.y.to_string() + ") at rows " +
                            std::to_string(std::min(order[k - 1], order[k])) + " and " +
                            std::to_string(std::max(order[k - 1], order[k])));
        }
    }

    bounds_ = {points_[0].x, points_[0].x, points_[0].y, points_[0].y};
    for (const auto& p : points_) {
        if (!std::isfinite(p.f)) throw Error(ErrorKind::InvalidArgument, "non-finite function value");
        bounds_.x_min = std::min(bounds_.x_min, p.x);
        bounds_.x_max = std::max(bounds_.x_max, p.x);
        bounds_.y_min = std::min(bounds_.y_min, p.y);
        bounds_.y_max = std::max(bounds_.y_max, p.y);
    }
}

std::vector<double> PlaneSample::values() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.f);
    return out;
}

PlaneSample PlaneSample::with_values(const std::vector<double>& values) const {
    if (values.size() != points_.size()) {
        throw Error(ErrorKind::InvalidArgument, "value count does not match the sample");
    }
    PlaneSample copy = *this;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) throw Error(ErrorKind::InvalidArgument, "non-finite function value");
        copy.points_[i].f = values[i];
    }
    return copy;
}

std::optional<ArrayWitness> detect_three_array(const PlaneSample& sample) {
    // Smallest other index sharing x (resp. y); the groups keep indices sorted.
    std::map<ExactCoord, std::vector<std::size_t>> by_x;
    std::map<ExactCoord, std::vector<std::size_t>> by_y;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        by_x[sample[i].x].push_back(i);
        by_y[sample[i].y].push_back(i);
    }
    auto smallest_other = [](const std::vector<std::size_t>& group, std::size_t self) {
        for (std::size_t k : group) {
            if (k != self) return std::optional<std::size_t>(k);
        }
        return std::optional<std::size_t>();
    };
    for (std::size_t mid = 0; mid < sample.size(); ++mid) {
        const auto x_mate = smallest_other(by_x[sample[mid].x], mid);
        if (!x_mate) continue;
        const auto y_mate = smallest_other(by_y[sample[mid].y], mid);
        if (!y_mate) continue;
        return ArrayWitness{std::min(*x_mate, *y_mate), mid, std::max(*x_mate, *y_mate)};
    }
    return std::nullopt;
}

double sup_norm(const std::vector<double>& values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double sup_norm(const PlaneSample& sample) {
    double m = 0.0;
    for (const auto& p : sample.points()) m = std::max(m, std::abs(p.f));
    return m;
}

ExactCoord linf_distance(const SamplePoint& a, const SamplePoint& b) {
    return std::max(abs(a.x - b.x), abs(a.y - b.y));
}

double modulus_delta(const PlaneSample& sample, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");

    // Each pair with |Δf| >= eps forces 2δ <= its distance.
    std::optional<ExactCoord> tightest;
    const auto& pts = sample.points();
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            if (std::abs(pts[a].f - pts[b].f) < eps) continue;
            ExactCoord d = linf_distance(pts[a], pts[b]);
            if (!tightest || d < *tightest) tightest = std::move(d);
        }
    }
    if (!tightest) return 1.0;
    for (int k = 0; k <= kMaxDeltaExponent; ++k) {
        // 2 * 2^-k <= distance
        if (ExactCoord::dyadic(2, k) <= *tightest) return std::ldexp(1.0, -k);
    }
    throw Error(ErrorKind::NoModulus, "no dyadic delta >= 2^-" + std::to_string(kMaxDeltaExponent) +
                                          " separates the sample at eps = " + format_double(eps) +
                                          "; closest offending pair is at distance " + tightest->to_string());
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_value(const std::string& text, std::size_t line) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": bad function value '" + t + "'");
    }
    return v;
}

}  // namespace

PlaneSample read_sample_csv(std::istream& in) {
    std::vector<SamplePoint> points;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty() || text[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(text);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(trim(field));
        if (points.empty() && fields == std::vector<std::string>{"x", "y", "f"}) continue;
        if (fields.size() != 3) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": expected 3 fields x,y,f");
        }
        try {
            points.push_back({ExactCoord::parse(fields[0]), ExactCoord::parse(fields[1]), parse_value(fields[2], line)});
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Parse) throw;
            throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + e.what());
        }
    }
    if (points.empty()) throw Error(ErrorKind::Parse, "no points in input");
    return PlaneSample(std::move(points));
}

PlaneSample read_sample_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    return read_sample_csv(in);
}

void write_sample_csv(std::ostream& out, const PlaneSample& sample) {
    out << "# x,y,f\n";
    for (const auto& p : sample.points()) {
        out << p.x.to_string() << ',' << p.y.to_string() << ',' << format_double(p.f) << '\n';
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace sepdec
