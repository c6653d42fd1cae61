// Finite binary words, prefix meets and the dyadic order <_Q.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rf {

using Rational = boost::multiprecision::cpp_rational;

class BitString {
public:
    BitString() = default;

    // Accepts raw '0'/'1' digits; "e" and "" both denote the empty word.
    explicit BitString(std::string_view text);

    static BitString from_bits(const std::vector<bool>& bits);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    bool operator[](std::size_t i) const { return bits_[i] == '1'; }
    bool at(std::size_t i) const;

    // Raw digits, "" for the empty word.
    const std::string& digits() const noexcept { return bits_; }
    // Text form: "e" for the empty word.
    std::string str() const { return bits_.empty() ? "e" : bits_; }

    BitString prefix(std::size_t n) const;
    BitString child(bool b) const;
    BitString operator+(const BitString& rhs) const;
    BitString& push_back(bool b);

    bool operator==(const BitString&) const = default;
    // Canonical length-then-lex order.
    std::strong_ordering operator<=>(const BitString& rhs) const noexcept;

private:
    std::string bits_;
};

// a is an initial segment of b (a = b allowed).
bool is_prefix(const BitString& a, const BitString& b) noexcept;
bool is_proper_prefix(const BitString& a, const BitString& b) noexcept;
bool comparable(const BitString& a, const BitString& b) noexcept;

std::size_t meet_length(const BitString& a, const BitString& b) noexcept;
BitString meet(const BitString& a, const BitString& b);

// Lexicographic order, a proper prefix sorts before its extensions.
bool lex_less(const BitString& a, const BitString& b) noexcept;

std::strong_ordering cmp_q(const BitString& a, const BitString& b) noexcept;
inline bool q_less(const BitString& a, const BitString& b) noexcept { return cmp_q(a, b) < 0; }

// Sum over i < |a| of (a(i) - 1/2) * 2^-i.
Rational q_value(const BitString& a);

// Some c with a <_Q c <_Q b; requires a <_Q b.
BitString q_between(const BitString& a, const BitString& b);

// All words of length <= max_len in canonical order.
std::vector<BitString> words_up_to(std::size_t max_len);

std::vector<BitString> sorted_unique(std::vector<BitString> v);

struct BitStringHash {
    std::size_t operator()(const BitString& s) const noexcept
    {
        return std::hash<std::string>{}(s.digits());
    }
};

}  // namespace rf
