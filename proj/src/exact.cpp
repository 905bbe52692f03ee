// SPDX-License-Identifier: MIT
#include "sepdec/exact.hpp"

#include "sepdec/error.hpp"

#include <cctype>
#include <limits>
#include <string>

namespace sepdec {

namespace {

mpz_class pow10(unsigned long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
    return r;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void bad(std::string_view text) {
    throw Error(ErrorKind::Parse, "not an exact coordinate: '" + std::string(text) + "'");
}

ExactCoord parse_fraction(std::string_view text, std::size_t slash) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
        negative = num[0] == '-';
        num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) bad(text);
    if (negative) n = -n;
    return ExactCoord(mpq_class(n, d));
}

}  // namespace

ExactCoord ExactCoord::dyadic(std::int64_t numerator, int level) {
    mpq_class v(static_cast<long>(numerator));
    mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(level));
    return ExactCoord(std::move(v));
}

ExactCoord ExactCoord::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) bad(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) return parse_fraction(text, slash);

    std::string_view rest = text;
    bool negative = false;
    if (rest[0] == '-' || rest[0] == '+') {
        negative = rest[0] == '-';
        rest.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = rest.substr(e + 1);
        rest = rest.substr(0, e);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text[0] == '-' || exp_text[0] == '+')) {
            exp_negative = exp_text[0] == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6) bad(text);
        exponent = std::stol(std::string(exp_text));
        if (exp_negative) exponent = -exponent;
    }
    std::string_view int_part = rest;
    std::string_view frac_part;
    if (auto dot = rest.find('.'); dot != std::string_view::npos) {
        int_part = rest.substr(0, dot);
        frac_part = rest.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) bad(text);
    if (!int_part.empty() && !all_digits(int_part)) bad(text);
    if (!frac_part.empty() && !all_digits(frac_part)) bad(text);

    std::string digits(int_part);
    digits.append(frac_part);
    mpz_class num(digits.empty() ? std::string("0") : digits, 10);
    if (negative) num = -num;
    const long scale = static_cast<long>(frac_part.size()) - exponent;
    mpq_class value;
    if (scale >= 0) {
        value = mpq_class(num, pow10(static_cast<unsigned long>(scale)));
    } else {
        value = mpq_class(num * pow10(static_cast<unsigned long>(-scale)));
    }
    return ExactCoord(std::move(value));
}

std::string ExactCoord::to_string() const {
    const mpz_class& num = value_.get_num();
    mpz_class den = value_.get_den();
    if (den == 1) return num.get_str();

    unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
    unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
    if (den != 1) return num.get_str() + "/" + value_.get_den().get_str();

    // num / (2^a 5^b) = num * 2^(k-a) 5^(k-b) / 10^k
    const unsigned long k = std::max(twos, fives);
    mpz_class scaled = num;
    mpz_class factor;
    mpz_ui_pow_ui(factor.get_mpz_t(), 2, k - twos);
    scaled *= factor;
    mpz_ui_pow_ui(factor.get_mpz_t(), 5, k - fives);
    scaled *= factor;

    const bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string digits = scaled.get_str();
    if (digits.size() <= k) digits.insert(0, k - digits.size() + 1, '0');
    digits.insert(digits.size() - k, ".");
    return negative ? "-" + digits : digits;
}

std::int64_t ExactCoord::floor_scaled(int level) const {
    mpz_class num = value_.get_num();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(level));
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), value_.get_den().get_mpz_t());
    if (!q.fits_slong_p()) {
        throw Error(ErrorKind::InvalidArgument,
                    "cell index overflows at level " + std::to_string(level) + " for " + to_string());
    }
    return static_cast<std::int64_t>(q.get_si());
}

ExactCoord abs(const ExactCoord& a) {
    return ExactCoord(mpq_class(::abs(a.value())));
}

double ratio_to_double(const ExactCoord& num, const ExactCoord& den) {
    return mpq_class(num.value() / den.value()).get_d();
}

}  // namespace sepdec
