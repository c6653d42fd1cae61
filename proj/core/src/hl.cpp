#include "rf/hl.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <limits>
#include <string>
#include <thread>

namespace rf {

namespace {

int min_height(const std::vector<FiniteTree>& trees)
{
    int h = std::numeric_limits<int>::max();
    for (const auto& t : trees)
        h = std::min(h, t.height());
    return trees.empty() ? 0 : h;
}

std::string tuple_text(const std::vector<BitString>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].str();
    return s + ")";
}

// Calls f on every tuple of the product of the given index lists, first coordinate slowest.
template <class F>
void for_each_product(const std::vector<const std::vector<std::size_t>*>& lists, F&& f)
{
    for (auto* l : lists)
        if (l->empty())
            return;
    std::vector<std::size_t> pick(lists.size(), 0), cur(lists.size());
    while (true) {
        for (std::size_t i = 0; i < lists.size(); ++i)
            cur[i] = (*lists[i])[pick[i]];
        f(cur);
        std::size_t i = lists.size();
        while (i > 0 && ++pick[i - 1] == lists[i - 1]->size())
            pick[--i] = 0;
        if (i == 0)
            break;
    }
}

std::vector<BitString> words_of(const FiniteTree& t, const std::vector<std::size_t>& idx)
{
    std::vector<BitString> out;
    out.reserve(idx.size());
    for (auto i : idx)
        out.push_back(t.node(i));
    return out;
}

void require_trees(const std::vector<FiniteTree>& trees, int k)
{
    if (trees.empty())
        throw ColoringError("at least one tree is required");
    if (k < 1)
        throw ColoringError("color count must be >= 1");
}

// Dense level tables: colors[level][sum pos_i * stride_i].
struct LevelTables {
    const std::vector<FiniteTree>* trees = nullptr;
    std::vector<std::vector<std::size_t>> pos;     // per tree, node -> rank within its level
    std::vector<std::vector<std::size_t>> stride;  // per level, per tree
    std::vector<std::vector<int>> colors;

    explicit LevelTables(const std::vector<FiniteTree>& ts) : trees(&ts)
    {
        const int h = min_height(ts);
        for (const auto& t : ts) {
            std::vector<std::size_t> p(t.size());
            for (int l = 0; l < t.height(); ++l) {
                const auto& ln = t.level_nodes(l);
                for (std::size_t r = 0; r < ln.size(); ++r)
                    p[ln[r]] = r;
            }
            pos.push_back(std::move(p));
        }
        for (int l = 0; l < h; ++l) {
            std::vector<std::size_t> s(ts.size());
            std::size_t acc = 1;
            for (std::size_t i = ts.size(); i-- > 0;) {
                s[i] = acc;
                acc *= ts[i].level_nodes(l).size();
            }
            stride.push_back(std::move(s));
            colors.emplace_back(acc, 0);
        }
    }

    std::size_t index(int level, const std::vector<std::size_t>& nodes) const
    {
        std::size_t x = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            x += pos[i][nodes[i]] * stride[static_cast<std::size_t>(level)][i];
        return x;
    }
};

LevelTables tables_from(const LevelProductColoring& c)
{
    LevelTables lt(c.trees);
    for (int l = 0; l < static_cast<int>(lt.colors.size()); ++l) {
        std::vector<const std::vector<std::size_t>*> lists;
        for (const auto& t : c.trees)
            lists.push_back(&t.level_nodes(l));
        for_each_product(lists, [&](const std::vector<std::size_t>& tup) {
            std::vector<BitString> key;
            for (std::size_t i = 0; i < tup.size(); ++i)
                key.push_back(c.trees[i].node(tup[i]));
            lt.colors[static_cast<std::size_t>(l)][lt.index(l, tup)] = c.table.at(key);
        });
    }
    return lt;
}

struct SearchHit {
    std::vector<int> f;
    std::vector<std::vector<std::size_t>> nodes;  // per tree
    int color = 0;
};

class HLSearch {
public:
    HLSearch(const LevelTables& lt, int N, bool leaves, std::uint64_t budget)
        : lt_(lt), trees_(*lt.trees), d_(trees_.size()), N_(N), leaves_(leaves), budget_(budget)
    {
    }

    std::optional<SearchHit> run()
    {
        const int h = min_height(trees_);
        if (N_ > h)
            return std::nullopt;
        for (const auto& f : increasing_sequences(N_, h)) {
            f_ = f;
            S_.assign(d_, std::vector<std::vector<std::size_t>>(static_cast<std::size_t>(N_)));
            color_ = -1;
            std::vector<Slot> slots;
            for (std::size_t i = 0; i < d_; ++i) {
                Slot s{i, {}};
                for (auto v : trees_[i].level_nodes(f_[0]))
                    if (admissible(i, v, 0))
                        s.options.push_back(v);
                slots.push_back(std::move(s));
            }
            if (fill(0, slots, 0)) {
                SearchHit hit{f_, {}, color_};
                for (std::size_t i = 0; i < d_; ++i) {
                    std::vector<std::size_t> all;
                    for (const auto& lvl : S_[i])
                        all.insert(all.end(), lvl.begin(), lvl.end());
                    hit.nodes.push_back(std::move(all));
                }
                return hit;
            }
        }
        return std::nullopt;
    }

    std::uint64_t used() const { return used_; }

private:
    struct Slot {
        std::size_t tree;
        std::vector<std::size_t> options;
    };

    // Leaf mode: top nodes are leaves of the ambient tree, lower ones are not.
    bool admissible(std::size_t i, std::size_t v, int j) const
    {
        if (!leaves_)
            return true;
        return (j + 1 == N_) == trees_[i].is_leaf(v);
    }

    bool checked(int j) const { return !leaves_ || j + 1 == N_; }

    bool check_new(int j, std::size_t v)
    {
        const int lvl = f_[static_cast<std::size_t>(j)];
        std::vector<const std::vector<std::size_t>*> lists;
        for (std::size_t i = 0; i + 1 < d_; ++i)
            lists.push_back(&S_[i][static_cast<std::size_t>(j)]);
        std::vector<std::size_t> last{v};
        lists.push_back(&last);
        bool ok = true;
        for_each_product(lists, [&](const std::vector<std::size_t>& tup) {
            if (!ok)
                return;
            int c = lt_.colors[static_cast<std::size_t>(lvl)][lt_.index(lvl, tup)];
            if (color_ < 0)
                color_ = c;
            else if (c != color_)
                ok = false;
        });
        return ok;
    }

    bool fill(int j, const std::vector<Slot>& slots, std::size_t si)
    {
        if (si == slots.size())
            return next_level(j);
        const auto& sl = slots[si];
        auto& dest = S_[sl.tree][static_cast<std::size_t>(j)];
        for (auto v : sl.options) {
            if (++used_ > budget_)
                throw BudgetExceeded("search exceeded " + std::to_string(budget_) + " states");
            const int saved = color_;
            dest.push_back(v);
            bool ok = !(checked(j) && sl.tree + 1 == d_) || check_new(j, v);
            if (ok && fill(j, slots, si + 1))
                return true;
            dest.pop_back();
            color_ = saved;
        }
        return false;
    }

    bool next_level(int j)
    {
        if (j + 1 == N_)
            return true;
        const int next = f_[static_cast<std::size_t>(j) + 1];
        std::vector<Slot> slots;
        for (std::size_t i = 0; i < d_; ++i) {
            std::size_t before = slots.size();
            for (auto v : S_[i][static_cast<std::size_t>(j)])
                for (auto c : trees_[i].children(v)) {
                    Slot s{i, {}};
                    for (auto w : trees_[i].descendants_at(c, next))
                        if (admissible(i, w, j + 1))
                            s.options.push_back(w);
                    if (s.options.empty())
                        return false;
                    slots.push_back(std::move(s));
                }
            if (slots.size() == before)
                return false;  // this tree would stop short of height N
        }
        return fill(j + 1, slots, 0);
    }

    const LevelTables& lt_;
    const std::vector<FiniteTree>& trees_;
    std::size_t d_;
    int N_;
    bool leaves_;
    std::uint64_t budget_;
    std::uint64_t used_ = 0;
    std::vector<int> f_;
    std::vector<std::vector<std::vector<std::size_t>>> S_;
    int color_ = -1;
};

HLCertificate to_certificate(const std::vector<FiniteTree>& trees, const SearchHit& hit, bool leaves)
{
    HLCertificate cert;
    cert.color = hit.color;
    cert.leaves = leaves;
    for (std::size_t i = 0; i < trees.size(); ++i)
        cert.witnesses.push_back({FiniteTree(words_of(trees[i], hit.nodes[i])), LevelFunction{hit.f}});
    return cert;
}

}  // namespace

void check_level_coloring(const LevelProductColoring& c)
{
    require_trees(c.trees, c.k);
    const std::size_t d = c.trees.size();
    std::size_t expected = 0;
    for (int l = 0; l < min_height(c.trees); ++l) {
        std::vector<const std::vector<std::size_t>*> lists;
        for (const auto& t : c.trees)
            lists.push_back(&t.level_nodes(l));
        for_each_product(lists, [&](const std::vector<std::size_t>& tup) {
            ++expected;
            std::vector<BitString> key;
            for (std::size_t i = 0; i < d; ++i)
                key.push_back(c.trees[i].node(tup[i]));
            auto it = c.table.find(key);
            if (it == c.table.end())
                throw ColoringError("no color for tuple " + tuple_text(key));
            if (it->second < 0 || it->second >= c.k)
                throw ColoringError("color out of range at " + tuple_text(key));
        });
    }
    if (c.table.size() != expected)
        throw ColoringError("table has tuples outside the level products");
}

LevelProductColoring make_level_coloring(std::vector<FiniteTree> trees, int k,
                                         const std::function<int(const std::vector<BitString>&)>& f)
{
    require_trees(trees, k);
    LevelProductColoring c{std::move(trees), k, {}};
    for (int l = 0; l < min_height(c.trees); ++l) {
        std::vector<const std::vector<std::size_t>*> lists;
        for (const auto& t : c.trees)
            lists.push_back(&t.level_nodes(l));
        for_each_product(lists, [&](const std::vector<std::size_t>& tup) {
            std::vector<BitString> key;
            for (std::size_t i = 0; i < tup.size(); ++i)
                key.push_back(c.trees[i].node(tup[i]));
            int v = f(key);
            c.table.emplace(std::move(key), v);
        });
    }
    check_level_coloring(c);
    return c;
}

std::optional<HLCertificate> search_level_product_mono(const LevelProductColoring& c, int N, bool leaves,
                                                       std::uint64_t budget)
{
    if (N < 1)
        throw std::invalid_argument("height N must be >= 1");
    check_level_coloring(c);
    auto lt = tables_from(c);
    HLSearch s(lt, N, leaves, budget);
    auto hit = s.run();
    if (!hit)
        return std::nullopt;
    return to_certificate(c.trees, *hit, leaves);
}

bool verify_certificate(const LevelProductColoring& c, int N, const HLCertificate& cert)
{
    if (cert.witnesses.size() != c.trees.size() || N < 1)
        return false;
    if (cert.color < 0 || cert.color >= c.k)
        return false;
    std::optional<LevelFunction> common;
    for (std::size_t i = 0; i < c.trees.size(); ++i) {
        const auto& nodes = cert.witnesses[i].subtree.nodes();
        for (const auto& x : nodes)
            if (!c.trees[i].contains(x))
                throw CertificateError("node " + x.str() + " is not in tree " + std::to_string(i));
        auto w = is_strong_subtree(nodes, c.trees[i]);
        if (!w || w->subtree.height() != N || !(w->level_fn == cert.witnesses[i].level_fn))
            return false;
        if (common && !(*common == w->level_fn))
            return false;
        common = w->level_fn;
        if (cert.leaves)
            for (auto li : w->subtree.leaves()) {
                if (w->subtree.level(li) + 1 != N)
                    return false;
                if (!c.trees[i].is_leaf(*c.trees[i].index_of(w->subtree.node(li))))
                    return false;
            }
    }
    for (int j = 0; j < N; ++j) {
        if (cert.leaves && j + 1 != N)
            continue;
        std::vector<std::vector<std::size_t>> idx;
        for (const auto& w : cert.witnesses)
            idx.push_back(w.subtree.level_nodes(j));
        std::vector<const std::vector<std::size_t>*> lists;
        for (const auto& v : idx)
            lists.push_back(&v);
        bool ok = true;
        for_each_product(lists, [&](const std::vector<std::size_t>& tup) {
            std::vector<BitString> key;
            for (std::size_t i = 0; i < tup.size(); ++i)
                key.push_back(cert.witnesses[i].subtree.node(tup[i]));
            auto it = c.table.find(key);
            if (it == c.table.end() || it->second != cert.color)
                ok = false;
        });
        if (!ok)
            return false;
    }
    return true;
}

FiniteTree full_bounded_tree(int h, const LevelBound& b)
{
    if (h < 1)
        throw std::invalid_argument("tree height must be >= 1");
    std::vector<BitString> all{BitString{}}, level{BitString{}};
    for (int i = 0; i + 1 < h; ++i) {
        auto w = b(i);
        if (w < 1 || w > 2)
            throw std::invalid_argument("binary trees need b(i) in {1,2}, got b(" + std::to_string(i) +
                                        ") = " + std::to_string(w));
        std::vector<BitString> next;
        for (const auto& x : level)
            for (int c = 0; c < w; ++c)
                next.push_back(x.child(c == 1));
        all.insert(all.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return FiniteTree(std::move(all));
}

namespace {

// Colors of leaf tuples from the coloring index, tuple 0 fixed at color 0.
void decode_coloring(std::uint64_t idx, int k, std::vector<int>& top)
{
    for (std::size_t p = top.size(); p-- > 1;) {
        top[p] = static_cast<int>(idx % static_cast<std::uint64_t>(k));
        idx /= static_cast<std::uint64_t>(k);
    }
    top[0] = 0;
}

LeafColoring leaf_coloring(const std::vector<FiniteTree>& trees, const LevelTables& lt, const std::vector<int>& top)
{
    LeafColoring out{trees, {}};
    const int h = min_height(trees);
    std::vector<const std::vector<std::size_t>*> lists;
    for (const auto& t : trees)
        lists.push_back(&t.level_nodes(h - 1));
    for_each_product(lists, [&](const std::vector<std::size_t>& tup) {
        std::vector<BitString> key;
        for (std::size_t i = 0; i < tup.size(); ++i)
            key.push_back(trees[i].node(tup[i]));
        out.table.emplace(std::move(key), top[lt.index(h - 1, tup)]);
    });
    return out;
}

}  // namespace

MinFhlResult min_fhl(int N, int k, int d, const LevelBound& b, int h_max, unsigned threads, std::uint64_t budget)
{
    if (N < 1 || k < 1 || d < 1 || h_max < 1)
        throw std::invalid_argument("min_fhl needs N, k, d, h_max >= 1");
    threads = std::max(1u, threads);
    MinFhlResult res;
    std::optional<LeafColoring> prev_failure;
    std::uint64_t spent = 0;
    for (int h = 1; h <= h_max; ++h) {
        std::vector<FiniteTree> trees(static_cast<std::size_t>(d), full_bounded_tree(h, b));
        LevelTables lt(trees);
        auto& top = lt.colors.back();
        const std::size_t L = top.size();
        if (N > h) {
            std::fill(top.begin(), top.end(), 0);
            prev_failure = leaf_coloring(trees, lt, top);
            continue;
        }
        BigInt count = boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(L - 1));
        if (count > BigInt(budget - spent))
            throw BudgetExceeded("min_fhl: " + count.str() + " colorings at height " + std::to_string(h));
        const auto total = count.convert_to<std::uint64_t>();

        std::atomic<std::uint64_t> best{total}, used{spent};
        auto worker = [&](unsigned w) {
            LevelTables mine = lt;
            auto& colors = mine.colors.back();
            for (std::uint64_t idx = w; idx < total; idx += threads) {
                if (idx >= best.load())
                    break;
                decode_coloring(idx, k, colors);
                HLSearch s(mine, N, true, budget);
                bool found = s.run().has_value();
                if (used.fetch_add(s.used() + 1) + s.used() + 1 > budget)
                    throw BudgetExceeded("min_fhl exceeded " + std::to_string(budget) + " states");
                if (!found) {
                    auto cur = best.load();
                    while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
                    }
                    break;
                }
            }
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::future<void>> jobs;
            for (unsigned w = 0; w < threads; ++w)
                jobs.push_back(std::async(std::launch::async, worker, w));
            for (auto& j : jobs)
                j.get();
        }
        spent = used.load();
        if (best.load() == total) {
            res.h = h;
            res.failure = std::move(prev_failure);
            return res;
        }
        std::vector<int> defeating(L);
        decode_coloring(best.load(), k, defeating);
        prev_failure = leaf_coloring(trees, lt, defeating);
    }
    res.cap_exceeded = true;
    return res;
}

namespace {

std::size_t product_index(const std::vector<FiniteTree>& trees, const std::vector<std::size_t>& tup)
{
    std::size_t x = 0;
    for (std::size_t i = 0; i < tup.size(); ++i)
        x = x * trees[i].size() + tup[i];
    return x;
}

std::vector<const std::vector<std::size_t>*> all_nodes(const std::vector<FiniteTree>& trees,
                                                       std::vector<std::vector<std::size_t>>& storage)
{
    storage.clear();
    for (const auto& t : trees) {
        std::vector<std::size_t> v(t.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = i;
        storage.push_back(std::move(v));
    }
    std::vector<const std::vector<std::size_t>*> lists;
    for (const auto& v : storage)
        lists.push_back(&v);
    return lists;
}

class DenseSearch {
public:
    DenseSearch(const std::vector<FiniteTree>& trees, std::vector<int> colors, std::uint64_t budget)
        : trees_(trees), d_(trees.size()), colors_(std::move(colors)), budget_(budget)
    {
    }

    std::optional<DenseMatrixCertificate> run()
    {
        const int h = min_height(trees_);
        for (int L = 0; L < h; ++L)
            for (int m = L + 1; m < h; ++m) {
                std::vector<const std::vector<std::size_t>*> lists;
                for (const auto& t : trees_)
                    lists.push_back(&t.level_nodes(L));
                std::optional<DenseMatrixCertificate> found;
                for_each_product(lists, [&](const std::vector<std::size_t>& pi) {
                    if (!found)
                        found = try_pi(pi, m);
                });
                if (found)
                    return found;
            }
        return std::nullopt;
    }

private:
    struct Slot {
        std::size_t tree;
        std::vector<std::size_t> options;
    };

    std::optional<DenseMatrixCertificate> try_pi(const std::vector<std::size_t>& pi, int m)
    {
        std::vector<Slot> slots;
        for (std::size_t i = 0; i < d_; ++i) {
            const auto& t = trees_[i];
            auto taus = t.descendants_at(pi[i], m);
            if (taus.empty())
                return std::nullopt;
            for (auto tau : taus) {
                Slot s{i, {}};
                for (std::size_t x = 0; x < t.size(); ++x)
                    if (is_prefix(t.node(tau), t.node(x)))
                        s.options.push_back(x);
                slots.push_back(std::move(s));
            }
        }
        P_.assign(d_, {});
        color_ = -1;
        if (!fill(slots, 0))
            return std::nullopt;
        DenseMatrixCertificate cert;
        cert.m = m;
        cert.color = color_;
        for (std::size_t i = 0; i < d_; ++i) {
            cert.pi.push_back(trees_[i].node(pi[i]));
            auto part = words_of(trees_[i], P_[i]);
            std::sort(part.begin(), part.end());
            cert.parts.push_back(std::move(part));
        }
        return cert;
    }

    bool check_new(std::size_t v)
    {
        std::vector<const std::vector<std::size_t>*> lists;
        for (std::size_t i = 0; i + 1 < d_; ++i)
            lists.push_back(&P_[i]);
        std::vector<std::size_t> last{v};
        lists.push_back(&last);
        bool ok = true;
        for_each_product(lists, [&](const std::vector<std::size_t>& tup) {
            if (!ok)
                return;
            int c = colors_[product_index(trees_, tup)];
            if (color_ < 0)
                color_ = c;
            else if (c != color_)
                ok = false;
        });
        return ok;
    }

    bool fill(const std::vector<Slot>& slots, std::size_t si)
    {
        if (si == slots.size())
            return true;
        const auto& sl = slots[si];
        for (auto v : sl.options) {
            if (++used_ > budget_)
                throw BudgetExceeded("dense search exceeded " + std::to_string(budget_) + " states");
            const int saved = color_;
            P_[sl.tree].push_back(v);
            bool ok = sl.tree + 1 != d_ || check_new(v);
            if (ok && fill(slots, si + 1))
                return true;
            P_[sl.tree].pop_back();
            color_ = saved;
        }
        return false;
    }

    const std::vector<FiniteTree>& trees_;
    std::size_t d_;
    std::vector<int> colors_;
    std::uint64_t budget_;
    std::uint64_t used_ = 0;
    std::vector<std::vector<std::size_t>> P_;
    int color_ = -1;
};

}  // namespace

void check_product_coloring(const ProductColoring& c)
{
    require_trees(c.trees, c.k);
    std::vector<std::vector<std::size_t>> storage;
    auto lists = all_nodes(c.trees, storage);
    std::size_t expected = 0;
    for_each_product(lists, [&](const std::vector<std::size_t>& tup) {
        ++expected;
        std::vector<BitString> key;
        for (std::size_t i = 0; i < tup.size(); ++i)
            key.push_back(c.trees[i].node(tup[i]));
        auto it = c.table.find(key);
        if (it == c.table.end())
            throw ColoringError("no color for tuple " + tuple_text(key));
        if (it->second < 0 || it->second >= c.k)
            throw ColoringError("color out of range at " + tuple_text(key));
    });
    if (c.table.size() != expected)
        throw ColoringError("table has tuples outside the product");
}

ProductColoring make_product_coloring(std::vector<FiniteTree> trees, int k,
                                      const std::function<int(const std::vector<BitString>&)>& f)
{
    require_trees(trees, k);
    ProductColoring c{std::move(trees), k, {}};
    std::vector<std::vector<std::size_t>> storage;
    auto lists = all_nodes(c.trees, storage);
    for_each_product(lists, [&](const std::vector<std::size_t>& tup) {
        auto key = std::vector<BitString>{};
        for (std::size_t i = 0; i < tup.size(); ++i)
            key.push_back(c.trees[i].node(tup[i]));
        int v = f(key);
        c.table.emplace(std::move(key), v);
    });
    check_product_coloring(c);
    return c;
}

std::optional<DenseMatrixCertificate> find_dense_matrix(const ProductColoring& c, std::uint64_t budget)
{
    check_product_coloring(c);
    std::vector<std::vector<std::size_t>> storage;
    auto lists = all_nodes(c.trees, storage);
    std::size_t total = 1;
    for (const auto& t : c.trees)
        total *= t.size();
    std::vector<int> colors(total);
    for_each_product(lists, [&](const std::vector<std::size_t>& tup) {
        std::vector<BitString> key;
        for (std::size_t i = 0; i < tup.size(); ++i)
            key.push_back(c.trees[i].node(tup[i]));
        colors[product_index(c.trees, tup)] = c.table.at(key);
    });
    return DenseSearch(c.trees, std::move(colors), budget).run();
}

bool verify_certificate(const ProductColoring& c, const DenseMatrixCertificate& cert)
{
    const std::size_t d = c.trees.size();
    if (cert.pi.size() != d || cert.parts.size() != d)
        return false;
    if (cert.color < 0 || cert.color >= c.k)
        return false;
    int L = -1;
    for (std::size_t i = 0; i < d; ++i) {
        const auto& t = c.trees[i];
        if (!t.contains(cert.pi[i]))
            throw CertificateError("pi node " + cert.pi[i].str() + " is not in tree " + std::to_string(i));
        for (const auto& x : cert.parts[i])
            if (!t.contains(x))
                throw CertificateError("part node " + x.str() + " is not in tree " + std::to_string(i));
        int l = t.level_of(cert.pi[i]);
        if (L >= 0 && l != L)
            return false;
        L = l;
        if (cert.m <= L || cert.m >= t.height() || cert.parts[i].empty())
            return false;
        // every level-m node above pi_i has an extension in the part
        bool any = false;
        for (auto tau : t.level_nodes(cert.m)) {
            if (!is_prefix(cert.pi[i], t.node(tau)))
                continue;
            any = true;
            bool ext = std::any_of(cert.parts[i].begin(), cert.parts[i].end(),
                                   [&](const BitString& x) { return is_prefix(t.node(tau), x); });
            if (!ext)
                return false;
        }
        if (!any)
            return false;
    }
    std::vector<std::size_t> pick(d, 0);
    while (true) {
        std::vector<BitString> key;
        for (std::size_t i = 0; i < d; ++i)
            key.push_back(cert.parts[i][pick[i]]);
        auto it = c.table.find(key);
        if (it == c.table.end() || it->second != cert.color)
            return false;
        std::size_t i = d;
        while (i > 0 && ++pick[i - 1] == cert.parts[i - 1].size())
            pick[--i] = 0;
        if (i == 0)
            break;
    }
    return true;
}

void check_subtree_coloring(const SubtreeColoring& c)
{
    if (c.k < 1 || c.n < 1)
        throw ColoringError("need k >= 1 and n >= 1");
    auto all = enumerate_strong_subtrees(c.tree, c.n);
    for (const auto& w : all) {
        auto it = c.table.find(w.subtree.nodes());
        if (it == c.table.end())
            throw ColoringError("no color for subtree " + tuple_text(w.subtree.nodes()));
        if (it->second < 0 || it->second >= c.k)
            throw ColoringError("color out of range at " + tuple_text(w.subtree.nodes()));
    }
    if (c.table.size() != all.size())
        throw ColoringError("table has entries that are not strong subtrees of height n");
}

SubtreeColoring make_subtree_coloring(FiniteTree t, int n, int k,
                                      const std::function<int(const std::vector<BitString>&)>& f)
{
    SubtreeColoring c{std::move(t), n, k, {}};
    if (n < 1)
        throw ColoringError("need n >= 1");
    for (const auto& w : enumerate_strong_subtrees(c.tree, n))
        c.table.emplace(w.subtree.nodes(), f(w.subtree.nodes()));
    check_subtree_coloring(c);
    return c;
}

std::optional<MillikenCertificate> milliken_search(const SubtreeColoring& c, int m, std::uint64_t budget)
{
    if (m < c.n)
        throw std::invalid_argument("target height m must be >= n");
    check_subtree_coloring(c);
    std::uint64_t used = 0;
    for (auto& S : enumerate_strong_subtrees(c.tree, m)) {
        int color = -1;
        bool ok = true;
        for (const auto& w : enumerate_strong_subtrees(S.subtree, c.n)) {
            if (++used > budget)
                throw BudgetExceeded("milliken search exceeded " + std::to_string(budget) + " states");
            int v = c.table.at(w.subtree.nodes());
            if (color < 0)
                color = v;
            else if (v != color) {
                ok = false;
                break;
            }
        }
        if (ok && color >= 0)
            return MillikenCertificate{std::move(S), m, color};
    }
    return std::nullopt;
}

bool verify_certificate(const SubtreeColoring& c, const MillikenCertificate& cert)
{
    const auto& nodes = cert.witness.subtree.nodes();
    for (const auto& x : nodes)
        if (!c.tree.contains(x))
            throw CertificateError("node " + x.str() + " is not in the tree");
    if (cert.color < 0 || cert.color >= c.k || cert.m < c.n)
        return false;
    auto w = is_strong_subtree(nodes, c.tree);
    if (!w || w->subtree.height() != cert.m || !(w->level_fn == cert.witness.level_fn))
        return false;
    const auto& S = w->subtree;
    std::size_t seen = 0;
    auto check = [&](const std::vector<BitString>& sub) {
        ++seen;
        auto it = c.table.find(sub);
        return it != c.table.end() && it->second == cert.color;
    };
    if (S.size() <= 12) {
        // every subset that is a strong subtree of S of height n
        for (std::uint32_t mask = 1; mask < (1u << S.size()); ++mask) {
            std::vector<BitString> sub;
            for (std::size_t i = 0; i < S.size(); ++i)
                if (mask >> i & 1u)
                    sub.push_back(S.node(i));
            auto sw = is_strong_subtree(sub, S);
            if (sw && sw->subtree.height() == c.n && !check(sw->subtree.nodes()))
                return false;
        }
    } else {
        for (const auto& sw : enumerate_strong_subtrees(S, c.n))
            if (!check(sw.subtree.nodes()))
                return false;
    }
    return seen > 0;
}

std::optional<BigInt> PowerTower::exact() const
{
    if (base < 0 || exp2 < 0)
        throw std::invalid_argument("power tower needs non-negative base and exponent");
    if (base <= 1)
        return base;
    if (exp2 > 6)
        return std::nullopt;
    const BigInt limit = BigInt(1) << 64;
    BigInt v = base;
    for (int i = 0; i < exp2.convert_to<int>(); ++i) {
        v *= v;
        if (v > limit)
            return std::nullopt;
    }
    return v;
}

FhlBackend constant_backend(std::int64_t value)
{
    return [value](int, const PowerTower&, const BigInt&, const LevelBound&) { return value; };
}

FhlBackend exhaustive_backend(int h_max, std::uint64_t budget)
{
    return [h_max, budget](int N, const PowerTower& k, const BigInt& d, const LevelBound& b) -> std::int64_t {
        auto K = k.exact();
        if (!K)
            throw ScaleError("color count K exceeds 2^64; the exhaustive backend cannot evaluate it");
        if (*K > std::numeric_limits<int>::max() || d > 64)
            throw ScaleError("K = " + K->str() + ", D = " + d.str() + " is beyond exhaustive search");
        auto r = min_fhl(N, K->convert_to<int>(), d.convert_to<int>(), b, h_max, 1, budget);
        if (!r.h)
            throw ScaleError("min_fhl cap " + std::to_string(h_max) + " exceeded");
        return *r.h;
    };
}

std::vector<WidgetStep> widget_steps(const WidgetParams& p)
{
    if (p.N < 0 || p.ell < 0 || p.n < 1 || p.k < 1 || p.d < 1)
        throw std::invalid_argument("widget needs N, ell >= 0 and n, k, d >= 1");
    if (!p.backend)
        throw std::invalid_argument("widget needs an fhl backend");
    constexpr std::int64_t kMaxLevels = 1'000'000;
    std::vector<WidgetStep> steps;
    std::int64_t H = 0;
    for (int s = 1; s <= p.N; ++s) {
        const std::int64_t h = p.ell + H;
        if (h > kMaxLevels)
            throw ScaleError("widget height " + std::to_string(h) + " is too large to unfold");
        // full b-bounded trees: nodes below level h and nodes at level h
        BigInt below = 0, width = 1;
        for (std::int64_t j = 0; j < h; ++j) {
            below += width;
            width *= p.b(j);
        }
        WidgetStep st;
        st.K = PowerTower{BigInt(p.k), BigInt(p.d) * (below + width)};
        st.D = BigInt(p.d) * width;
        LevelBound B = [b = p.b, H](std::int64_t x) { return b(x + H); };
        st.fhl = p.backend(2, st.K, st.D, B);
        H += st.fhl;
        st.H = H;
        steps.push_back(std::move(st));
    }
    return steps;
}

std::int64_t widget_bound(const WidgetParams& p)
{
    auto steps = widget_steps(p);
    return p.ell + (steps.empty() ? 0 : steps.back().H);
}

}  // namespace rf
