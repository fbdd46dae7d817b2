#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pgg {

// Exact rational on 64-bit parts; comparisons cross-multiply in 128 bits.
// Large enough for thresholds and costs here, with no epsilon anywhere.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    std::int64_t floor() const {
        // num/den rounded toward negative infinity
        std::int64_t q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }

    std::string to_string() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const __int128 lhs = static_cast<__int128>(a.num) * b.den;
        const __int128 rhs = static_cast<__int128>(b.num) * a.den;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Rat& a, const Rat& b) { return (a <=> b) == 0; }
};

Rat parse_rat(const std::string& token);  // "p/q" or a bare integer

}  // namespace pgg
