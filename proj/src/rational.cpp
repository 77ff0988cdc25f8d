#include "ccl/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ccl {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational pow10(long exponent) {
    Rational r = 1;
    for (long i = 0; i < exponent; ++i) r *= 10;
    return r;
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();

    std::string_view s = text;
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw fail();
        Rational d{std::string(den)};
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        value = Rational(std::string(num)) / d;
    } else {
        std::string_view mantissa = s;
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = s.substr(0, e);
            auto exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) throw fail();
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
        }
        auto dot = mantissa.find('.');
        std::string_view int_part = mantissa.substr(0, dot);
        std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : mantissa.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) throw fail();
        if (!int_part.empty() && !all_digits(int_part)) throw fail();
        if (!frac_part.empty() && !all_digits(frac_part)) throw fail();
        if (dot != std::string_view::npos && frac_part.empty() && int_part.empty()) throw fail();

        std::string digits = std::string(int_part) + std::string(frac_part);
        value = Rational(digits.empty() ? std::string("0") : digits);
        exponent -= static_cast<long>(frac_part.size());
        if (exponent >= 0)
            value *= pow10(exponent);
        else
            value /= pow10(-exponent);
    }
    return negative ? Rational(-value) : value;
}

std::string to_fraction_string(const Rational& value) {
    return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_literal_string(const Rational& value) {
    using boost::multiprecision::mpz_int;
    mpz_int den = boost::multiprecision::denominator(value);
    int twos = 0;
    int fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) {
        std::string out = to_fraction_string(value);
        return out.substr(out.size() - 2) == "/1" ? out.substr(0, out.size() - 2) : out;
    }
    const int digits = std::max(twos, fives);
    mpz_int scaled = boost::multiprecision::numerator(value);
    mpz_int factor = 1;
    for (int i = 0; i < digits; ++i) factor *= 10;
    scaled = scaled * factor / boost::multiprecision::denominator(value);

    bool negative = scaled < 0;
    std::string text = (negative ? mpz_int(-scaled) : scaled).str();
    if (digits > 0) {
        if (static_cast<int>(text.size()) <= digits) text.insert(0, static_cast<std::size_t>(digits) + 1 - text.size(), '0');
        text.insert(text.size() - static_cast<std::size_t>(digits), ".");
    }
    return negative ? "-" + text : text;
}

} // namespace ccl
