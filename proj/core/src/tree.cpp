#include "rf/tree.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <numeric>

namespace rf {

namespace {

std::vector<BitString> lex_sorted(std::vector<BitString> v)
{
    std::sort(v.begin(), v.end(), lex_less);
    return v;
}

}  // namespace

std::optional<std::string> FiniteTree::defect(const std::vector<BitString>& sorted)
{
    if (sorted.empty())
        return "empty node set";
    const BitString& r = sorted.front();
    if (sorted.size() > 1 && sorted[1].size() == r.size())
        return "no unique root";
    for (const auto& s : sorted)
        if (!is_prefix(r, s))
            return "node " + s.str() + " does not extend the root";
    // In lex order every pairwise meet is the meet of some adjacent pair.
    auto lex = lex_sorted(sorted);
    for (std::size_t i = 0; i + 1 < lex.size(); ++i) {
        auto m = meet(lex[i], lex[i + 1]);
        if (!std::binary_search(sorted.begin(), sorted.end(), m))
            return "not meet-closed: missing " + m.str();
    }
    return std::nullopt;
}

FiniteTree::FiniteTree(std::vector<BitString> nodes)
    : nodes_(sorted_unique(std::move(nodes)))
{
    if (auto d = defect(nodes_))
        throw TreeError(*d);
    index();
}

FiniteTree::FiniteTree(std::vector<BitString> nodes, Unchecked)
    : nodes_(std::move(nodes))
{
    index();
}

std::optional<FiniteTree> FiniteTree::try_make(std::vector<BitString> nodes)
{
    auto sorted = sorted_unique(std::move(nodes));
    if (defect(sorted))
        return std::nullopt;
    return FiniteTree(std::move(sorted), Unchecked{});
}

void FiniteTree::index()
{
    const std::size_t n = nodes_.size();
    level_.assign(n, 0);
    parent_.assign(n, -1);
    children_.assign(n, {});
    // Walk in lex order keeping the chain of ancestors on a stack.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(nodes_[a], nodes_[b]); });
    std::vector<std::size_t> stack;
    for (std::size_t i : order) {
        while (!stack.empty() && !is_prefix(nodes_[stack.back()], nodes_[i]))
            stack.pop_back();
        if (!stack.empty()) {
            parent_[i] = static_cast<std::ptrdiff_t>(stack.back());
            level_[i] = level_[stack.back()] + 1;
            children_[stack.back()].push_back(i);
        }
        stack.push_back(i);
    }
    int h = 0;
    for (int l : level_)
        h = std::max(h, l + 1);
    by_level_.assign(static_cast<std::size_t>(h), {});
    for (std::size_t i = 0; i < n; ++i)
        by_level_[static_cast<std::size_t>(level_[i])].push_back(i);
}

std::optional<std::size_t> FiniteTree::index_of(const BitString& s) const
{
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), s);
    if (it == nodes_.end() || *it != s)
        return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

int FiniteTree::level_of(const BitString& s) const
{
    auto i = index_of(s);
    if (!i)
        throw std::invalid_argument("word " + s.str() + " is not a node");
    return level_[*i];
}

std::optional<std::size_t> FiniteTree::parent(std::size_t i) const
{
    if (parent_[i] < 0)
        return std::nullopt;
    return static_cast<std::size_t>(parent_[i]);
}

std::vector<std::size_t> FiniteTree::leaves() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (children_[i].empty())
            out.push_back(i);
    return out;
}

std::vector<std::size_t> FiniteTree::descendants_at(std::size_t i, int lvl) const
{
    std::vector<std::size_t> out;
    std::vector<std::size_t> todo{i};
    while (!todo.empty()) {
        auto v = todo.back();
        todo.pop_back();
        if (level_[v] == lvl) {
            out.push_back(v);
            continue;
        }
        if (level_[v] < lvl)
            for (auto c : children_[v])
                todo.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

FiniteTree full_binary_tree(int h)
{
    if (h < 1)
        throw TreeError("full binary tree needs height >= 1");
    return FiniteTree(words_up_to(static_cast<std::size_t>(h - 1)));
}

std::optional<StrongSubtreeWitness> is_strong_subtree(const std::vector<BitString>& s, const FiniteTree& t)
{
    for (const auto& x : s)
        if (!t.contains(x))
            throw std::invalid_argument("word " + x.str() + " is not a node of the ambient tree");
    auto sub = FiniteTree::try_make(s);
    if (!sub)
        return std::nullopt;
    LevelFunction f;
    f.values.assign(static_cast<std::size_t>(sub->height()), -1);
    for (std::size_t i = 0; i < sub->size(); ++i) {
        int sl = sub->level(i);
        int tl = t.level_of(sub->node(i));
        auto& slot = f.values[static_cast<std::size_t>(sl)];
        if (slot == -1)
            slot = tl;
        else if (slot != tl)
            return std::nullopt;
    }
    for (std::size_t j = 1; j < f.values.size(); ++j)
        if (f.values[j] <= f.values[j - 1])
            return std::nullopt;
    for (std::size_t i = 0; i < sub->size(); ++i) {
        if (sub->level(i) + 1 == sub->height())
            continue;
        auto ti = *t.index_of(sub->node(i));
        if (sub->children(i).size() != t.children(ti).size())
            return std::nullopt;
    }
    return StrongSubtreeWitness{std::move(*sub), std::move(f)};
}

bool node_list_less(const std::vector<BitString>& a, const std::vector<BitString>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<std::vector<int>> increasing_sequences(int n, int bound)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int v = from; v < bound; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    if (n >= 0)
        rec(0);
    return out;
}

namespace {

// Strong subtrees with the given level function and root.
void expand(const FiniteTree& t, const std::vector<int>& f, std::size_t root,
            std::vector<StrongSubtreeWitness>& out)
{
    const int n = static_cast<int>(f.size());
    std::vector<std::size_t> chosen{root};
    // Each ambient child of a frontier node needs one descendant at the next chosen level.
    std::function<void(std::vector<std::size_t>, int)> level_step;
    level_step = [&](std::vector<std::size_t> frontier, int j) {
        if (j + 1 == n) {
            std::vector<BitString> nodes;
            nodes.reserve(chosen.size());
            for (auto i : chosen)
                nodes.push_back(t.node(i));
            out.push_back({FiniteTree(std::move(nodes)), LevelFunction{f}});
            return;
        }
        std::vector<std::vector<std::size_t>> options;
        for (auto v : frontier)
            for (auto c : t.children(v)) {
                auto d = t.descendants_at(c, f[static_cast<std::size_t>(j) + 1]);
                if (d.empty())
                    return;
                options.push_back(std::move(d));
            }
        if (options.empty())
            return;  // the subtree would stop short of height n
        std::vector<std::size_t> pick(options.size(), 0);
        while (true) {
            std::vector<std::size_t> next;
            for (std::size_t k = 0; k < options.size(); ++k)
                next.push_back(options[k][pick[k]]);
            auto saved = chosen.size();
            chosen.insert(chosen.end(), next.begin(), next.end());
            level_step(next, j + 1);
            chosen.resize(saved);
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == options[k].size())
                pick[k++] = 0;
            if (k == pick.size())
                break;
        }
    };
    level_step({root}, 0);
}

std::vector<StrongSubtreeWitness> enumerate_for_roots(const FiniteTree& t, int n,
                                                      const std::vector<std::size_t>& roots)
{
    std::vector<StrongSubtreeWitness> out;
    for (auto r : roots)
        for (const auto& seq : increasing_sequences(n - 1, t.height())) {
            if (!seq.empty() && seq.front() <= t.level(r))
                continue;
            std::vector<int> f{t.level(r)};
            f.insert(f.end(), seq.begin(), seq.end());
            expand(t, f, r, out);
        }
    return out;
}

}  // namespace

std::vector<StrongSubtreeWitness> enumerate_strong_subtrees(const FiniteTree& t, int n, unsigned threads)
{
    if (n < 1)
        throw std::invalid_argument("strong subtree height must be >= 1");
    std::vector<StrongSubtreeWitness> out;
    if (threads <= 1) {
        std::vector<std::size_t> roots(t.size());
        std::iota(roots.begin(), roots.end(), 0);
        out = enumerate_for_roots(t, n, roots);
    } else {
        std::vector<std::vector<std::size_t>> parts(threads);
        for (std::size_t i = 0; i < t.size(); ++i)
            parts[i % threads].push_back(i);
        std::vector<std::future<std::vector<StrongSubtreeWitness>>> jobs;
        for (auto& p : parts)
            jobs.push_back(std::async(std::launch::async, [&t, n, &p] { return enumerate_for_roots(t, n, p); }));
        for (auto& j : jobs)
            for (auto& w : j.get())
                out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return node_list_less(a.subtree.nodes(), b.subtree.nodes());
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.subtree == b.subtree; }),
              out.end());
    return out;
}

std::vector<StrongSubtreeWitness> enumerate_strong_subtrees_with_leaves(const FiniteTree& t, int n,
                                                                        unsigned threads)
{
    auto all = enumerate_strong_subtrees(t, n, threads);
    std::vector<StrongSubtreeWitness> out;
    for (auto& w : all) {
        bool ok = true;
        for (auto i : w.subtree.leaves())
            if (!t.is_leaf(*t.index_of(w.subtree.node(i)))) {
                ok = false;
                break;
            }
        if (ok)
            out.push_back(std::move(w));
    }
    return out;
}

}  // namespace rf
