#include "pgg/pattern.hpp"

#include <algorithm>
#include <stdexcept>

#include "pgg/util.hpp"

namespace pgg {

namespace {

bool all_zero(const std::vector<std::uint8_t>& bits) {
    return std::all_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b == 0; });
}

// Shortest word whose repetition equals `word`.
std::vector<std::uint8_t> primitive_root(const std::vector<std::uint8_t>& word) {
    const std::size_t n = word.size();
    for (std::size_t d = 1; d <= n / 2; ++d) {
        if (n % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < n && repeats; ++i) {
            repeats = word[i] == word[i - d];
        }
        if (repeats) return {word.begin(), word.begin() + static_cast<std::ptrdiff_t>(d)};
    }
    return word;
}

}  // namespace

int Pattern::at(std::int64_t index) const {
    if (index < 0) throw std::invalid_argument("Pattern::at: negative index");
    const auto p = static_cast<std::int64_t>(prefix.size());
    if (index < p) return prefix[static_cast<std::size_t>(index)];
    if (period.empty()) return 0;
    return period[static_cast<std::size_t>((index - p) % static_cast<std::int64_t>(period.size()))];
}

std::string Pattern::to_string() const {
    std::string out;
    for (std::uint8_t b : prefix) out += static_cast<char>('0' + b);
    if (period.empty()) {
        out += "0*";
    } else {
        out += '(';
        for (std::uint8_t b : period) out += static_cast<char>('0' + b);
        out += ")*";
    }
    return out;
}

Pattern canonical_pattern(std::vector<std::uint8_t> prefix, std::vector<std::uint8_t> period) {
    if (!period.empty() && all_zero(period)) period.clear();
    if (period.empty()) {
        while (!prefix.empty() && prefix.back() == 0) prefix.pop_back();
        return Pattern{std::move(prefix), {}};
    }
    period = primitive_root(period);
    // Pull the period start as far left as possible; rotating keeps the
    // word primitive, and the loop invariant keeps the denoted sequence
    // unchanged. Afterwards the prefix cannot end with a copy of the word.
    while (!prefix.empty() && prefix.back() == period.back()) {
        prefix.pop_back();
        std::rotate(period.begin(), period.end() - 1, period.end());
    }
    return Pattern{std::move(prefix), std::move(period)};
}

Pattern parse_pattern(std::string_view text) {
    auto parse_bits = [&](std::size_t from, std::size_t to) {
        std::vector<std::uint8_t> bits;
        bits.reserve(to - from);
        for (std::size_t i = from; i < to; ++i) {
            if (text[i] != '0' && text[i] != '1') {
                throw ParseError("pattern: expected '0' or '1'", i);
            }
            bits.push_back(static_cast<std::uint8_t>(text[i] - '0'));
        }
        return bits;
    };

    if (text.size() >= 2 && text.substr(text.size() - 2) == ")*") {
        const std::size_t open = text.find('(');
        if (open == std::string_view::npos) {
            throw ParseError("pattern: missing '(' for ')*'", text.size() - 2);
        }
        if (text.size() < open + 4) {
            throw ParseError("pattern: empty periodic word", open + 1);
        }
        auto prefix = parse_bits(0, open);
        auto word = parse_bits(open + 1, text.size() - 2);
        return canonical_pattern(std::move(prefix), std::move(word));
    }
    if (text.size() >= 2 && text.substr(text.size() - 2) == "0*") {
        auto prefix = parse_bits(0, text.size() - 2);
        return canonical_pattern(std::move(prefix), {});
    }
    throw ParseError("pattern: must end with \"0*\" or \"(bits)*\"", text.size());
}

std::optional<std::int64_t> leading_ones(const Pattern& p) {
    if (!p.zero_forever() || p.prefix.empty()) return std::nullopt;
    if (!std::all_of(p.prefix.begin(), p.prefix.end(), [](std::uint8_t b) { return b == 1; })) {
        return std::nullopt;
    }
    return static_cast<std::int64_t>(p.prefix.size());
}

std::optional<std::int64_t> picky_gap(const Pattern& p) {
    if (!p.zero_forever() || p.prefix.size() < 3) return std::nullopt;
    const auto& pre = p.prefix;
    if (pre.front() != 1 || pre.back() != 1) return std::nullopt;
    for (std::size_t i = 1; i + 1 < pre.size(); ++i) {
        if (pre[i] != 0) return std::nullopt;
    }
    return static_cast<std::int64_t>(pre.size()) - 2;
}

Pattern decreasing_pattern(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("decreasing_pattern: k must be >= 1");
    return Pattern{std::vector<std::uint8_t>(static_cast<std::size_t>(k), 1), {}};
}

Pattern picky_pattern(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("picky_pattern: k must be >= 1");
    std::vector<std::uint8_t> pre(static_cast<std::size_t>(k) + 2, 0);
    pre.front() = 1;
    pre.back() = 1;
    return Pattern{std::move(pre), {}};
}

namespace {

// The truncated alternating class: 1,0,1,0,...,1 (odd length >= 3), zeros after.
bool is_truncated_alternating(const Pattern& p) {
    if (!p.zero_forever()) return false;
    const auto& pre = p.prefix;
    if (pre.size() < 3 || pre.size() % 2 == 0) return false;
    for (std::size_t i = 0; i < pre.size(); ++i) {
        if (pre[i] != (i % 2 == 0 ? 1 : 0)) return false;
    }
    return true;
}

// 11 .* 0 .* 1 then zeros: starts with two ones, has a zero strictly between
// position 1 and the last one.
bool is_double_one_dip(const Pattern& p) {
    if (!p.zero_forever()) return false;
    const auto& pre = p.prefix;
    if (pre.size() < 4) return false;
    if (pre[0] != 1 || pre[1] != 1) return false;
    const std::size_t last_one = pre.size() - 1;  // canonical: no trailing zeros
    for (std::size_t i = 2; i < last_one; ++i) {
        if (pre[i] == 0) return true;
    }
    return false;
}

// 1 0^+ 1 1 .* then zeros: a one, a run of zeros, then a double one.
bool is_gap_then_double_one(const Pattern& p) {
    if (!p.zero_forever()) return false;
    const auto& pre = p.prefix;
    if (pre.size() < 4) return false;
    if (pre[0] != 1 || pre[1] != 0) return false;
    std::size_t j = 1;
    while (j < pre.size() && pre[j] == 0) ++j;
    return j + 1 < pre.size() && pre[j] == 1 && pre[j + 1] == 1;
}

}  // namespace

std::vector<PatternClass> classify_pattern(const Pattern& p) {
    std::vector<PatternClass> out;
    if (leading_ones(p)) out.push_back({"1+0+", kVerdictAlwaysExists});
    if (p.prefix.empty() && p.period == std::vector<std::uint8_t>{1, 0}) {
        out.push_back({"(10)*", kVerdictPolynomial});
    }
    if (picky_gap(p)) out.push_back({"10+10*", kVerdictNpComplete});
    if (is_truncated_alternating(p)) out.push_back({"(10)+10*", kVerdictNpComplete});
    if (is_double_one_dip(p)) out.push_back({"11.*0.*10*", kVerdictNpComplete});
    if (is_gap_then_double_one(p)) out.push_back({"10+11.*0+", kVerdictNpComplete});
    if (out.empty()) out.push_back({"unclassified", "unknown"});
    return out;
}

}  // namespace pgg
