// Finite rooted meet-closed trees of binary words and their strong subtrees.
#pragma once

#include "rf/bitstring.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rf {

struct TreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class FiniteTree {
public:
    // Throws TreeError unless the set is non-empty, rooted and meet-closed.
    explicit FiniteTree(std::vector<BitString> nodes);
    static std::optional<FiniteTree> try_make(std::vector<BitString> nodes);

    // Nodes in canonical (length-then-lex) order; index 0 is the root.
    const std::vector<BitString>& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const BitString& node(std::size_t i) const { return nodes_[i]; }
    const BitString& root() const { return nodes_.front(); }

    std::optional<std::size_t> index_of(const BitString& s) const;
    bool contains(const BitString& s) const { return index_of(s).has_value(); }

    // Number of proper initial segments of the node inside the set.
    int level(std::size_t i) const { return level_[i]; }
    int level_of(const BitString& s) const;
    int height() const noexcept { return static_cast<int>(by_level_.size()); }
    const std::vector<std::size_t>& level_nodes(int lvl) const { return by_level_.at(static_cast<std::size_t>(lvl)); }

    std::optional<std::size_t> parent(std::size_t i) const;
    // Direct extensions, sorted by the branching bit.
    const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }
    std::vector<std::size_t> leaves() const;
    bool is_leaf(std::size_t i) const { return children_[i].empty(); }

    // Nodes at ambient level lvl extending node i (i itself when lvl == level(i)).
    std::vector<std::size_t> descendants_at(std::size_t i, int lvl) const;

    bool operator==(const FiniteTree& o) const { return nodes_ == o.nodes_; }

private:
    struct Unchecked {};
    FiniteTree(std::vector<BitString> nodes, Unchecked);
    static std::optional<std::string> defect(const std::vector<BitString>& sorted);
    void index();

    std::vector<BitString> nodes_;
    std::vector<int> level_;
    std::vector<std::ptrdiff_t> parent_;
    std::vector<std::vector<std::size_t>> children_;
    std::vector<std::vector<std::size_t>> by_level_;
};

// The full binary tree 2^{<h}: all words of length < h.
FiniteTree full_binary_tree(int h);

// Level function: subtree level j sits at ambient level values[j].
struct LevelFunction {
    std::vector<int> values;
    bool operator==(const LevelFunction&) const = default;
    auto operator<=>(const LevelFunction&) const = default;
};

struct StrongSubtreeWitness {
    FiniteTree subtree;
    LevelFunction level_fn;
};

std::optional<StrongSubtreeWitness> is_strong_subtree(const std::vector<BitString>& s, const FiniteTree& t);

// Every strong subtree of height n, sorted by node list. threads > 1 splits by root.
std::vector<StrongSubtreeWitness> enumerate_strong_subtrees(const FiniteTree& t, int n, unsigned threads = 1);
std::vector<StrongSubtreeWitness> enumerate_strong_subtrees_with_leaves(const FiniteTree& t, int n,
                                                                        unsigned threads = 1);

// Lexicographic comparison of canonical node lists.
bool node_list_less(const std::vector<BitString>& a, const std::vector<BitString>& b);

// All strictly increasing sequences of length n with values < bound, in lex order.
std::vector<std::vector<int>> increasing_sequences(int n, int bound);

}  // namespace rf
