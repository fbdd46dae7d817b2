#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pgg {

// Parse failure in any of the text formats. `position` is a byte offset for
// single-line inputs and a line number for line-oriented files.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Raised when an exhaustive operation is asked to exceed its hard cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// All randomized operations use mt19937_64 seeded explicitly; reports echo
// the seed so runs can be replayed.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound) via rejection sampling, so results do not
// depend on the standard library's distribution implementation.
inline std::uint64_t bounded(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bounded: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace pgg
