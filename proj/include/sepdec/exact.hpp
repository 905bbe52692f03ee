// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sepdec {

/// Exact rational plane coordinate.
///
/// Parsed from decimal strings ("-0.125", "3e-2") or "p/q" and printed back
/// as a terminating decimal whenever the denominator is of the form 2^a 5^b,
/// so every value written by this library reads back bit-for-bit.
class ExactCoord {
public:
    ExactCoord() = default;
    explicit ExactCoord(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
    explicit ExactCoord(long integer) : value_(integer) {}

    /// numerator / 2^level
    static ExactCoord dyadic(std::int64_t numerator, int level);
    static ExactCoord parse(std::string_view text);

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] double to_double() const { return value_.get_d(); }
    [[nodiscard]] const mpq_class& value() const noexcept { return value_; }

    /// floor(value * 2^level); throws InvalidArgument if it does not fit in int64.
    [[nodiscard]] std::int64_t floor_scaled(int level) const;

    friend ExactCoord operator+(const ExactCoord& a, const ExactCoord& b) {
        return ExactCoord(mpq_class(a.value_ + b.value_));
    }
    friend ExactCoord operator-(const ExactCoord& a, const ExactCoord& b) {
        return ExactCoord(mpq_class(a.value_ - b.value_));
    }
    friend bool operator==(const ExactCoord& a, const ExactCoord& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const ExactCoord& a, const ExactCoord& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_{0};
};

ExactCoord abs(const ExactCoord& a);

/// num / den computed exactly, then converted to double (truncating).
double ratio_to_double(const ExactCoord& num, const ExactCoord& den);

}  // namespace sepdec
