// A tree on which every tuple type is forced to its minimal form, built
// level by level, plus an independent checker of its three conditions.
#pragma once

#include "rf/bitstring.hpp"
#include "rf/tree.hpp"

#include <string>
#include <vector>

namespace rf {

// The tree is perfect but not meet-closed as a set of words, so it is kept
// as a node list with the tree address of each node.
struct MinimizerTree {
    int depth = 0;
    std::vector<BitString> nodes;      // level by level, lex order of addresses
    std::vector<BitString> addresses;  // addresses[i] is the tree position of nodes[i]
};

// Prefix of `depth` levels (depth >= 1, at most 9).
MinimizerTree minimizer_tree(int depth);

// The scaffold before thinning: f(a) for every address a of length <= max_len.
// Returned in address order (length-then-lex of a).
std::vector<BitString> minimizer_scaffold(int max_len);
// Closed form of the scaffold image of one address.
BitString minimizer_scaffold_word(const BitString& address);

struct MinimizerReport {
    bool distinct_meet_lengths = true;  // (1) nodes of the meet closure have distinct lengths
    bool prefix_extends_by_zero = true;  // (2) sigma < tau in T implies sigma0 <= tau
    bool off_meet_extends_by_zero = true;  // (3) incomparable meet-closure nodes read 0 at the shorter length
    std::vector<std::string> problems;
    bool ok() const { return distinct_meet_lengths && prefix_extends_by_zero && off_meet_extends_by_zero; }
};

MinimizerReport validate_minimizer(const std::vector<BitString>& nodes);

}  // namespace rf
