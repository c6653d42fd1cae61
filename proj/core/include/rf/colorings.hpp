// Named lower-bound colorings as injectable objects, and color censuses.
#pragma once

#include "rf/bitstring.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace rf {

// Bijection from words to naturals.
struct EnumOrder {
    std::function<std::uint64_t(const BitString&)> rank;

    // length-then-lex: rank(e) = 0, rank(0) = 1, rank(1) = 2, ...
    static EnumOrder length_lex();
    // Explicit ranks; ranking an unlisted word throws std::out_of_range.
    static EnumOrder from_table(std::map<BitString, std::uint64_t> ranks);
};

std::uint64_t length_lex_rank(const BitString& s);

// Stage approximations of a set of naturals.
struct ApproxOracle {
    std::function<bool(std::int64_t element, std::int64_t stage)> in;
    std::function<std::int64_t(std::int64_t element)> stabilization;

    // Element e is in from stage enters_at[e] on; unlisted elements never enter.
    static ApproxOracle from_entries(std::map<std::int64_t, std::int64_t> enters_at);
    // [{"element": e, "enters_at": s}, ...]; throws std::invalid_argument on bad input.
    static ApproxOracle from_json(const std::string& text);
    static ApproxOracle from_file(const std::string& path);
};

// Pair colorings orient the pair by <_Q first. Equal strings throw.
int f_lt_q(const BitString& a, const BitString& b);
int devlin_f0(const BitString& a, const BitString& b, const EnumOrder& e = EnumOrder::length_lex());

// Requires x < y < z.
int jockusch_fJ(std::int64_t x, std::int64_t y, std::int64_t z, const ApproxOracle& o);
// Uses (|a meet b|, shorter length, longer length); these must be strictly increasing.
int jockusch_fJ(const BitString& a, const BitString& b, const ApproxOracle& o);

using Color = std::vector<int>;

struct Coloring {
    std::string name;
    int arity = 2;
    std::function<Color(const std::vector<BitString>&)> fn;

    // Throws std::invalid_argument on a tuple of the wrong size.
    Color operator()(const std::vector<BitString>& tuple) const;
};

Coloring f_lt_q_coloring();
Coloring devlin_f0_coloring(EnumOrder e = EnumOrder::length_lex());
Coloring jockusch_coloring(ApproxOracle o);
Coloring constant_coloring(int c, int arity = 2);
// Index of the tuple's type in the sorted catalog of all tuple types of size n.
Coloring tuple_type_coloring(int n);
std::size_t tuple_type_range(int n);
// Colors concatenate; arities must match.
Coloring product(const Coloring& a, const Coloring& b);

// "f-lt-q", "devlin-f0", "tuple-type:n", "jockusch:oracle.json", "constant:c", "product(a,b)".
Coloring parse_coloring_spec(const std::string& spec);

// All n-element subsets of the nodes, members and subsets in canonical order.
std::vector<std::vector<BitString>> subsets_of(const std::vector<BitString>& nodes, int n);

std::set<Color> colors_used(const Coloring& c, const std::vector<std::vector<BitString>>& family,
                            unsigned threads = 1);

}  // namespace rf
