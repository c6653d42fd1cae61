// Naive reference implementations used as test oracles. Nothing here calls
// into the library except for the BitString value type.
#pragma once

#include "rf/bitstring.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using rf::BitString;

inline std::string w(const BitString& s) { return s.digits(); }

inline std::string meet(const std::string& a, const std::string& b)
{
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i])
        ++i;
    return a.substr(0, i);
}

inline bool prefix(const std::string& a, const std::string& b)
{
    return a.size() <= b.size() && b.compare(0, a.size(), a) == 0;
}

// All words of length < h.
inline std::vector<std::string> full_words(int h)
{
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < out.size(); ++i)
        if (static_cast<int>(out[i].size()) + 1 < h) {
            out.push_back(out[i] + "0");
            out.push_back(out[i] + "1");
        }
    return out;
}

// Strong subtree of the full binary tree: nodes on common lengths, one root,
// each non-top node has exactly one extension per bit on the next used length,
// and nothing floats.
inline bool strong_in_full(const std::set<std::string>& s, int height_wanted = -1)
{
    if (s.empty())
        return false;
    std::set<std::size_t> lens;
    for (const auto& x : s)
        lens.insert(x.size());
    std::vector<std::size_t> L(lens.begin(), lens.end());
    if (height_wanted >= 0 && static_cast<int>(L.size()) != height_wanted)
        return false;
    std::size_t roots = 0;
    for (const auto& x : s)
        roots += x.size() == L[0];
    if (roots != 1)
        return false;
    for (std::size_t j = 0; j + 1 < L.size(); ++j) {
        for (const auto& x : s) {
            if (x.size() != L[j])
                continue;
            for (char b : {'0', '1'}) {
                int hits = 0;
                for (const auto& y : s)
                    if (y.size() == L[j + 1] && prefix(x + b, y))
                        ++hits;
                if (hits != 1)
                    return false;
            }
        }
        for (const auto& y : s) {
            if (y.size() != L[j + 1])
                continue;
            bool has = false;
            for (const auto& x : s)
                has |= x.size() == L[j] && prefix(x, y);
            if (!has)
                return false;
        }
    }
    return true;
}

// The dyadic value times 2^(scale_bits+1); exact for |a| <= scale_bits.
inline std::int64_t q_scaled(const std::string& a, int scale_bits)
{
    std::int64_t v = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        v += (a[i] == '1' ? 1 : -1) * (std::int64_t{1} << (scale_bits - static_cast<int>(i)));
    return v;
}

inline std::set<std::string> meet_closure(const std::set<std::string>& s)
{
    std::set<std::string> out = s;
    for (const auto& a : s)
        for (const auto& b : s)
            out.insert(meet(a, b));
    return out;
}

// Fixed seed so failures reproduce.
inline std::mt19937_64& rng()
{
    static std::mt19937_64 g(20261019);
    return g;
}

}  // namespace oracle
