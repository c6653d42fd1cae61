#include "rf/minimizer.hpp"

#include <algorithm>
#include <stdexcept>

namespace rf {

std::vector<BitString> minimizer_scaffold(int max_len)
{
    if (max_len < 0)
        throw std::invalid_argument("negative scaffold depth");
    // Level by level, leaves by increasing length, child 0 before child 1; each
    // new node is padded with zeros until it is at least two longer than anything so far.
    std::vector<BitString> out{BitString{}};
    std::size_t longest = 0;
    std::size_t level_begin = 0;
    for (int lvl = 0; lvl < max_len; ++lvl) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (bool b : {false, true}) {
                BitString s = out[i].child(b);
                while (s.size() < longest + 2)
                    s.push_back(false);
                longest = s.size();
                out.push_back(std::move(s));
            }
        level_begin = level_end;
    }
    return out;
}

BitString minimizer_scaffold_word(const BitString& address)
{
    // Address a has length 2 * rank(a), rank(a) = 2^|a| - 1 + value(a), and
    // carries a(i) at the length of its prefix of length i; everything else is 0.
    auto rank = [](const BitString& a) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            v = (v << 1) | (a[i] ? 1u : 0u);
        return (std::uint64_t{1} << a.size()) - 1 + v;
    };
    if (address.size() > 40)
        throw std::invalid_argument("minimizer address too long");
    std::string bits(2 * rank(address), '0');
    for (std::size_t i = 0; i < address.size(); ++i)
        if (address[i])
            bits[2 * rank(address.prefix(i))] = '1';
    return BitString(bits);
}

MinimizerTree minimizer_tree(int depth)
{
    if (depth < 1)
        throw std::invalid_argument("minimizer depth must be >= 1");
    if (depth > 9)
        throw std::invalid_argument("minimizer depth above 9 is not supported");
    // Keep the images of addresses made of the blocks 00 and 01.
    MinimizerTree t;
    t.depth = depth;
    for (const auto& u : words_up_to(static_cast<std::size_t>(depth - 1))) {
        BitString a;
        for (std::size_t i = 0; i < u.size(); ++i)
            a.push_back(false).push_back(u[i]);
        t.nodes.push_back(minimizer_scaffold_word(a));
        t.addresses.push_back(u);
    }
    return t;
}

MinimizerReport validate_minimizer(const std::vector<BitString>& nodes)
{
    MinimizerReport r;
    // Meet closure: in lex order every pairwise meet is an adjacent meet.
    std::vector<BitString> lex = nodes;
    std::sort(lex.begin(), lex.end(), lex_less);
    std::vector<BitString> closure = nodes;
    for (std::size_t i = 0; i + 1 < lex.size(); ++i)
        closure.push_back(meet(lex[i], lex[i + 1]));
    closure = sorted_unique(std::move(closure));

    for (std::size_t i = 0; i + 1 < closure.size(); ++i)
        if (closure[i].size() == closure[i + 1].size()) {
            r.distinct_meet_lengths = false;
            r.problems.push_back("equal lengths: " + closure[i].str() + " " + closure[i + 1].str());
        }

    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j)
            if (is_proper_prefix(nodes[i], nodes[j]) && nodes[j][nodes[i].size()]) {
                r.prefix_extends_by_zero = false;
                r.problems.push_back("extension by 1: " + nodes[i].str() + " < " + nodes[j].str());
            }

    for (std::size_t i = 0; i < closure.size(); ++i)
        for (std::size_t j = i + 1; j < closure.size(); ++j) {
            const auto& s = closure[i];
            const auto& u = closure[j];
            if (s.size() < u.size() && !is_prefix(s, u) && u[s.size()]) {
                r.off_meet_extends_by_zero = false;
                r.problems.push_back("reads 1 at a foreign length: " + s.str() + " " + u.str());
            }
        }
    return r;
}

}  // namespace rf
