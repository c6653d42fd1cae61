// Joyce orders and graphs: label tables, trees, coded string forms, the
// DLO witness, the diagonalizing encodings and blossom trees.
#pragma once

#include "rf/bitstring.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rf {

// Elements are 0..n-1 and the order is the index order.
struct JoyceOrderTable {
    std::vector<std::vector<std::int64_t>> label;  // symmetric n x n

    std::size_t size() const { return label.size(); }
    std::int64_t at(std::size_t x, std::size_t y) const { return label[x][y]; }
    bool operator==(const JoyceOrderTable&) const = default;
};

struct Violation {
    std::string rule;  // "Jo1".."Jo4", "coded", "lengths", ...
    std::vector<std::size_t> witness;
    std::string detail;
};

// Throws std::invalid_argument if the table is not square, not symmetric or has negative labels.
std::vector<Violation> validate_joyce_order(const JoyceOrderTable& t);

// Same structure with labels renamed onto 0..k-1.
JoyceOrderTable rerank(const JoyceOrderTable& t);

std::size_t distinct_labels(const JoyceOrderTable& t);

// A full binary tree with labels increasing from parent to child, stored in preorder.
struct JoyceTree {
    struct Node {
        std::int64_t label = 0;
        int left = -1, right = -1;
        bool operator==(const Node&) const = default;
    };
    std::vector<Node> nodes;

    std::size_t leaf_count() const;
    // "(label left right)" with "-" for a missing child.
    std::string str() const;
    static JoyceTree parse(std::string_view text);
    bool operator==(const JoyceTree&) const = default;
};

// Split at the minimal label, relabel onto 1..2n-1. Throws std::invalid_argument
// for an invalid or empty order.
JoyceTree joyce_tree_of(const JoyceOrderTable& t);

// Leaves left to right, a pair labelled by the label of its meet.
JoyceOrderTable order_of(const JoyceTree& t);

// Joyce trees with n leaves, sorted by their text form; 1 <= n <= 6.
std::vector<JoyceTree> enumerate_joyce_trees(int n);
std::uint64_t count_joyce_trees(int n);

using CodedJoyceOrder = std::vector<BitString>;

// Labels are re-ranked first; string x has length <x,x> and bit j set iff some
// y < x has <x,y> = j. Output follows the element order.
CodedJoyceOrder encode_coded_order(const JoyceOrderTable& t);

// Strings sorted lexicographically, labels |s ∧ t|.
JoyceOrderTable coded_order_table(const std::vector<BitString>& s);

std::vector<Violation> validate_coded_joyce_order(const std::vector<BitString>& s);
// Strings sorted lexicographically, labels the length-then-lex rank of s ∧ t
// among all pairwise meets.
JoyceOrderTable coded_order_rank_table(const std::vector<BitString>& s);

// Members of (000 ∪ 100)*01 of length <= max_len, length-then-lex.
CodedJoyceOrder dlo_prefix(int max_len);
bool in_dlo_language(const BitString& s);
// The same strings under labels v(s ∧ t), v the length-then-lex rank.
JoyceOrderTable dlo_joyce_order(int max_len);

// s(j) 0 0 per letter, then 01.
BitString hat_encode(const BitString& s);
// s(j) s(j) s(j) per letter, then 01.
BitString graph_triple_encode(const BitString& s);

// Throws std::invalid_argument on equal lengths.
bool epn(const BitString& a, const BitString& b);

struct JoyceGraphTable {
    JoyceOrderTable order;
    std::vector<std::vector<bool>> edge;  // symmetric, irreflexive
    bool operator==(const JoyceGraphTable&) const = default;
};

// Throws std::invalid_argument for a malformed label or edge table.
std::vector<Violation> validate_joyce_graph(const JoyceGraphTable& g);

// Strings sorted lexicographically; edges from epn, none between equal lengths.
JoyceGraphTable coded_graph_table(const std::vector<BitString>& s);
std::vector<Violation> validate_coded_joyce_graph(const std::vector<BitString>& s);

// Labels re-ranked first. Throws std::invalid_argument for an invalid graph.
std::vector<BitString> encode_coded_graph(const JoyceGraphTable& g);

struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

// "K3", "E3" (no edges), "P3" (path), "C4" (cycle) or "3:0-1,1-2".
SimpleGraph parse_graph(std::string_view text);
// Smallest adjacency bitmask over all vertex relabelings; n <= 8.
std::uint64_t canonical_graph(int n, const std::vector<std::vector<bool>>& adj);

// Isomorphism classes of Joyce graphs of size n (1 <= n <= 5), optionally only
// those whose underlying graph is isomorphic to filter.
std::uint64_t count_joyce_graphs(int n, const std::optional<SimpleGraph>& filter = std::nullopt);

struct BlossomTreeTable {
    int depth = 0;
    std::map<BitString, BitString> f, g;
    bool operator==(const BlossomTreeTable&) const = default;
};

// Throws std::invalid_argument if the domains differ or are not prefix-closed.
std::vector<Violation> validate_blossom(const BlossomTreeTable& b);
// Domain 2^{<=depth}; 1 <= depth <= 7.
BlossomTreeTable generate_blossom(int depth);

// A triple-encoded string of a new length <= search_len, linked by epn to all
// of f1 and none of f0. Throws std::invalid_argument if f0 and f1 overlap, are
// not among the vertices, or two vertices share a length.
std::optional<BitString> rado_extend(const std::vector<BitString>& vertices, const std::vector<BitString>& f0,
                                     const std::vector<BitString>& f1, int search_len);

}  // namespace rf
