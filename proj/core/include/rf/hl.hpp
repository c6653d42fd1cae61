// Finitary Halpern-Lauchli and Milliken searches, dense matrices, minimal HL
// heights and the widget recursion. Every search returns a checkable certificate.
#pragma once

#include "rf/bitstring.hpp"
#include "rf/tree.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rf {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// Search space over the state budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A bound too large to evaluate exhaustively.
struct ScaleError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

// Partial table, color out of range, or a tuple outside the domain.
struct ColoringError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A certificate naming a node that is not in its tree.
struct CertificateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using TupleTable = std::map<std::vector<BitString>, int>;

// Colors of same-level tuples, levels below the smallest tree height.
struct LevelProductColoring {
    std::vector<FiniteTree> trees;
    int k = 1;
    TupleTable table;
};

// Throws ColoringError unless the table is total and in range.
void check_level_coloring(const LevelProductColoring& c);
LevelProductColoring make_level_coloring(std::vector<FiniteTree> trees, int k,
                                         const std::function<int(const std::vector<BitString>&)>& f);

struct HLCertificate {
    std::vector<StrongSubtreeWitness> witnesses;  // one per tree, same level function
    int color = 0;
    bool leaves = false;  // only the top level product counts, and it sits on leaves
};

// Lexicographically least in search order: level function first, then the
// choices level by level, tree by tree, nodes in canonical order.
std::optional<HLCertificate> search_level_product_mono(const LevelProductColoring& c, int N, bool leaves = false,
                                                       std::uint64_t budget = kDefaultBudget);

bool verify_certificate(const LevelProductColoring& c, int N, const HLCertificate& cert);

using LevelBound = std::function<std::int64_t(std::int64_t)>;

// Colors of the leaf products of the full b-bounded trees of one height.
struct LeafColoring {
    std::vector<FiniteTree> trees;
    TupleTable table;
};

// Nodes at level i get b(i) children; b must stay in {1, 2}.
FiniteTree full_bounded_tree(int h, const LevelBound& b);

struct MinFhlResult {
    std::optional<int> h;
    bool cap_exceeded = false;
    // The least defeating coloring at h - 1 (absent for h = 1).
    std::optional<LeafColoring> failure;
};

MinFhlResult min_fhl(int N, int k, int d, const LevelBound& b, int h_max, unsigned threads = 1,
                     std::uint64_t budget = kDefaultBudget);

// Colors of all tuples of the full product T_0 x ... x T_{d-1}.
struct ProductColoring {
    std::vector<FiniteTree> trees;
    int k = 1;
    TupleTable table;
};

void check_product_coloring(const ProductColoring& c);
ProductColoring make_product_coloring(std::vector<FiniteTree> trees, int k,
                                      const std::function<int(const std::vector<BitString>&)>& f);

struct DenseMatrixCertificate {
    std::vector<BitString> pi;
    int m = 0;
    std::vector<std::vector<BitString>> parts;
    int color = 0;
};

// Least level of pi, then least m; one extension per level-m node.
std::optional<DenseMatrixCertificate> find_dense_matrix(const ProductColoring& c,
                                                        std::uint64_t budget = kDefaultBudget);

bool verify_certificate(const ProductColoring& c, const DenseMatrixCertificate& cert);

// Colors of strong subtrees of height n, keyed by node list.
struct SubtreeColoring {
    FiniteTree tree;
    int n = 1;
    int k = 1;
    TupleTable table;
};

void check_subtree_coloring(const SubtreeColoring& c);
SubtreeColoring make_subtree_coloring(FiniteTree t, int n, int k,
                                      const std::function<int(const std::vector<BitString>&)>& f);

struct MillikenCertificate {
    StrongSubtreeWitness witness;
    int m = 0;
    int color = 0;
};

std::optional<MillikenCertificate> milliken_search(const SubtreeColoring& c, int m,
                                                   std::uint64_t budget = kDefaultBudget);

bool verify_certificate(const SubtreeColoring& c, const MillikenCertificate& cert);

// base^(2^exp2), kept symbolic.
struct PowerTower {
    BigInt base;
    BigInt exp2;

    // The value when it fits in 64 bits.
    std::optional<BigInt> exact() const;
    bool operator==(const PowerTower&) const = default;
};

using FhlBackend = std::function<std::int64_t(int N, const PowerTower& k, const BigInt& d, const LevelBound& b)>;

FhlBackend constant_backend(std::int64_t value);
// min_fhl itself; ScaleError when K or D exceed 64 bits, or the cap is hit.
FhlBackend exhaustive_backend(int h_max = 6, std::uint64_t budget = kDefaultBudget);

struct WidgetParams {
    int N = 0;
    std::int64_t ell = 0;
    int n = 1;
    int k = 1;
    int d = 1;
    LevelBound b = [](std::int64_t) { return std::int64_t{2}; };
    FhlBackend backend;
};

struct WidgetStep {
    PowerTower K;
    BigInt D;
    std::int64_t fhl = 0;
    std::int64_t H = 0;  // H_N after this step
};

// The K count ranges over the full b-bounded trees cut at ell + H_{N-1}.
std::vector<WidgetStep> widget_steps(const WidgetParams& p);
std::int64_t widget_bound(const WidgetParams& p);

}  // namespace rf
