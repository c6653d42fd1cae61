#include "rf/joyce.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rf {

namespace {

void check_table(const JoyceOrderTable& t)
{
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (t.label[i].size() != n)
            throw std::invalid_argument("label table is not square");
        for (std::size_t j = 0; j < n; ++j) {
            if (t.label[i][j] < 0)
                throw std::invalid_argument("negative label");
            if (t.label[i][j] != t.label[j][i])
                throw std::invalid_argument("label table is not symmetric at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
        }
    }
}

void check_edges(const JoyceGraphTable& g)
{
    const std::size_t n = g.order.size();
    if (g.edge.size() != n)
        throw std::invalid_argument("edge table size differs from the order");
    for (std::size_t i = 0; i < n; ++i) {
        if (g.edge[i].size() != n)
            throw std::invalid_argument("edge table is not square");
        if (g.edge[i][i])
            throw std::invalid_argument("edge table has a loop");
        for (std::size_t j = 0; j < n; ++j)
            if (g.edge[i][j] != g.edge[j][i])
                throw std::invalid_argument("edge table is not symmetric");
    }
}

std::string quad(std::size_t x, std::size_t y, std::size_t z, std::size_t t)
{
    return "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + "," + std::to_string(t) + ")";
}

// Violations of Jo1-Jo3 on a checked table.
std::vector<Violation> order_violations(const JoyceOrderTable& t)
{
    std::vector<Violation> out;
    const std::size_t n = t.size();
    auto L = [&](std::size_t a, std::size_t b) { return t.label[a][b]; };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                if (L(x, y) < L(x, z)) {
                    if ((x < y) != (z < y))
                        out.push_back({"Jo1", {x, y, z}, "<x,y> < <x,z> but x,z lie on different sides of y"});
                    if (L(x, y) != L(z, y))
                        out.push_back({"Jo2", {x, y, z}, "<x,y> < <x,z> but <x,y> != <z,y>"});
                }
                for (std::size_t w = z; w < n; ++w) {
                    if (x == y && y == z && z == w)
                        continue;
                    if (L(x, y) == L(z, w) && !(L(x, y) < std::min(L(x, z), L(y, w))))
                        out.push_back({"Jo3", {x, y, z, w},
                                       "<x,y> = <z,t> = " + std::to_string(L(x, y)) + " at " + quad(x, y, z, w) +
                                           " is not below min(<x,z>,<y,t>)"});
                }
            }
    return out;
}

std::vector<Violation> jo4_violations(const JoyceGraphTable& g)
{
    std::vector<Violation> out;
    const std::size_t n = g.order.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = y + 1; z < n; ++z)
                if (g.order.at(x, x) < g.order.at(y, z) && g.edge[x][y] != g.edge[x][z])
                    out.push_back({"Jo4", {x, y, z}, "<x,x> < <y,z> but x is linked to exactly one of y,z"});
    return out;
}

// Coded condition: |rho| > |s∧t| and s∧t not a prefix of rho forces rho(|s∧t|) = 0.
void coded_violations(const std::vector<BitString>& s, bool distinct_only, std::vector<Violation>& out)
{
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a; b < s.size(); ++b) {
            if (distinct_only && a == b)
                continue;
            BitString m = meet(s[a], s[b]);
            for (std::size_t r = 0; r < s.size(); ++r)
                if (s[r].size() > m.size() && !is_prefix(m, s[r]) && s[r][m.size()])
                    out.push_back({"coded", {a, b, r},
                                   s[r].str() + " reads 1 at |" + s[a].str() + " ∧ " + s[b].str() + "| = " +
                                       std::to_string(m.size())});
        }
}

std::vector<BitString> lex_sorted(std::vector<BitString> s)
{
    std::sort(s.begin(), s.end(), lex_less);
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("repeated string");
    return s;
}

JoyceOrderTable meet_length_table(const std::vector<BitString>& s)
{
    JoyceOrderTable t;
    t.label.assign(s.size(), std::vector<std::int64_t>(s.size(), 0));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            t.label[i][j] = static_cast<std::int64_t>(meet_length(s[i], s[j]));
    return t;
}

void throw_if_invalid(const std::vector<Violation>& v, const char* what)
{
    if (!v.empty())
        throw std::invalid_argument(std::string(what) + ": " + v.front().rule + " " + v.front().detail);
}

// Coded graph strings for a checked, valid, re-ranked graph.
std::vector<BitString> coded_graph_strings(const JoyceOrderTable& r, const std::vector<std::vector<bool>>& edge)
{
    const std::size_t n = r.size();
    std::int64_t top = 0;
    for (const auto& row : r.label)
        for (auto v : row)
            top = std::max(top, v);
    std::vector<std::int64_t> self_of(static_cast<std::size_t>(top) + 1, -1);
    for (std::size_t y = 0; y < n; ++y)
        self_of[static_cast<std::size_t>(r.at(y, y))] = static_cast<std::int64_t>(y);
    std::vector<BitString> out;
    out.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::string bits(static_cast<std::size_t>(r.at(x, x)), '0');
        for (std::size_t y = 0; y < n; ++y)
            if (y != x && y < x)
                bits[static_cast<std::size_t>(r.at(x, y))] = '1';
        for (std::size_t j = 0; j < bits.size(); ++j) {
            auto y = self_of[j];
            if (y >= 0 && edge[x][static_cast<std::size_t>(y)])
                bits[j] = '1';
        }
        out.emplace_back(bits);
    }
    return out;
}

}  // namespace

std::vector<Violation> validate_joyce_order(const JoyceOrderTable& t)
{
    check_table(t);
    return order_violations(t);
}

JoyceOrderTable rerank(const JoyceOrderTable& t)
{
    check_table(t);
    std::vector<std::int64_t> values;
    for (const auto& row : t.label)
        values.insert(values.end(), row.begin(), row.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    JoyceOrderTable r = t;
    for (auto& row : r.label)
        for (auto& v : row)
            v = std::lower_bound(values.begin(), values.end(), v) - values.begin();
    return r;
}

std::size_t distinct_labels(const JoyceOrderTable& t)
{
    std::set<std::int64_t> s;
    for (const auto& row : t.label)
        s.insert(row.begin(), row.end());
    return s.size();
}

// ---------------------------------------------------------------------------
// Joyce trees

std::size_t JoyceTree::leaf_count() const
{
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.left < 0 && n.right < 0; }));
}

std::string JoyceTree::str() const
{
    if (nodes.empty())
        return "-";
    std::string out;
    auto rec = [&](auto&& self, int v) -> void {
        if (v < 0) {
            out += '-';
            return;
        }
        const Node& n = nodes[static_cast<std::size_t>(v)];
        out += '(' + std::to_string(n.label) + ' ';
        self(self, n.left);
        out += ' ';
        self(self, n.right);
        out += ')';
    };
    rec(rec, 0);
    return out;
}

JoyceTree JoyceTree::parse(std::string_view text)
{
    JoyceTree t;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && text[pos] == ' ')
            ++pos;
    };
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad Joyce tree at offset " + std::to_string(pos) + ": " + why);
    };
    auto rec = [&](auto&& self) -> int {
        skip();
        if (pos < text.size() && text[pos] == '-') {
            ++pos;
            return -1;
        }
        if (pos >= text.size() || text[pos] != '(')
            fail("expected '(' or '-'");
        ++pos;
        skip();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
            ++pos;
        if (start == pos)
            fail("expected a label");
        int me = static_cast<int>(t.nodes.size());
        t.nodes.push_back({std::stoll(std::string(text.substr(start, pos - start))), -1, -1});
        int l = self(self);
        int r = self(self);
        t.nodes[static_cast<std::size_t>(me)].left = l;
        t.nodes[static_cast<std::size_t>(me)].right = r;
        skip();
        if (pos >= text.size() || text[pos] != ')')
            fail("expected ')'");
        ++pos;
        return me;
    };
    if (rec(rec) < 0)
        return t;
    skip();
    if (pos != text.size())
        fail("trailing text");
    return t;
}

JoyceTree joyce_tree_of(const JoyceOrderTable& t)
{
    if (t.size() == 0)
        throw std::invalid_argument("empty Joyce order");
    throw_if_invalid(validate_joyce_order(t), "invalid Joyce order");
    JoyceTree out;
    auto build = [&](auto&& self, const std::vector<std::size_t>& elems) -> int {
        std::size_t bx = elems[0], by = elems[0];
        for (auto x : elems)
            for (auto y : elems)
                if (x <= y && t.at(x, y) < t.at(bx, by)) {
                    bx = x;
                    by = y;
                }
        int me = static_cast<int>(out.nodes.size());
        out.nodes.push_back({t.at(bx, by), -1, -1});
        if (elems.size() == 1)
            return me;
        const auto l = t.at(bx, by);
        std::vector<std::size_t> left, right;
        for (auto z : elems) {
            if (t.at(bx, z) > l)
                left.push_back(z);
            else if (t.at(by, z) > l)
                right.push_back(z);
        }
        if (bx == by || left.empty() || right.empty() || left.size() + right.size() != elems.size())
            throw std::logic_error("Joyce order does not split at its minimal label");
        int a = self(self, left);
        int b = self(self, right);
        out.nodes[static_cast<std::size_t>(me)].left = a;
        out.nodes[static_cast<std::size_t>(me)].right = b;
        return me;
    };
    std::vector<std::size_t> all(t.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    build(build, all);
    std::vector<std::int64_t> labels;
    for (const auto& n : out.nodes)
        labels.push_back(n.label);
    std::sort(labels.begin(), labels.end());
    for (auto& n : out.nodes)
        n.label = (std::lower_bound(labels.begin(), labels.end(), n.label) - labels.begin()) + 1;
    return out;
}

JoyceOrderTable order_of(const JoyceTree& t)
{
    if (t.nodes.empty())
        throw std::invalid_argument("empty Joyce tree");
    std::vector<std::int64_t> leaf_label;
    std::vector<std::vector<std::int64_t>> pair;  // filled after leaves are counted
    // Leaves under each node, left to right.
    auto leaves = [&](auto&& self, int v) -> std::vector<std::size_t> {
        const auto& n = t.nodes[static_cast<std::size_t>(v)];
        if (n.left < 0 && n.right < 0) {
            leaf_label.push_back(n.label);
            return {leaf_label.size() - 1};
        }
        if (n.left < 0 || n.right < 0)
            throw std::invalid_argument("Joyce tree node with one child");
        auto a = self(self, n.left);
        auto b = self(self, n.right);
        for (auto i : a)
            for (auto j : b)
                pair.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), n.label});
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    leaves(leaves, 0);
    JoyceOrderTable o;
    const std::size_t n = leaf_label.size();
    o.label.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        o.label[i][i] = leaf_label[i];
    for (const auto& p : pair) {
        auto i = static_cast<std::size_t>(p[0]), j = static_cast<std::size_t>(p[1]);
        o.label[i][j] = o.label[j][i] = p[2];
    }
    return o;
}

namespace {

// All Joyce trees with k leaves using exactly the given increasing labels.
std::vector<JoyceTree> trees_on(const std::vector<std::int64_t>& labels, int k)
{
    if (k == 1)
        return {JoyceTree{{{labels[0], -1, -1}}}};
    std::vector<JoyceTree> out;
    std::vector<std::int64_t> rest(labels.begin() + 1, labels.end());
    const int m = static_cast<int>(rest.size());
    for (int a = 1; a < k; ++a) {
        const int take = 2 * a - 1;
        std::vector<bool> pick(static_cast<std::size_t>(m), false);
        std::fill(pick.begin(), pick.begin() + take, true);
        do {
            std::vector<std::int64_t> l, r;
            for (int i = 0; i < m; ++i)
                (pick[static_cast<std::size_t>(i)] ? l : r).push_back(rest[static_cast<std::size_t>(i)]);
            auto lt = trees_on(l, a);
            auto rt = trees_on(r, k - a);
            for (const auto& x : lt)
                for (const auto& y : rt) {
                    JoyceTree t;
                    t.nodes.push_back({labels[0], 1, static_cast<int>(1 + x.nodes.size())});
                    for (auto n : x.nodes) {
                        if (n.left >= 0) n.left += 1;
                        if (n.right >= 0) n.right += 1;
                        t.nodes.push_back(n);
                    }
                    const int off = static_cast<int>(1 + x.nodes.size());
                    for (auto n : y.nodes) {
                        if (n.left >= 0) n.left += off;
                        if (n.right >= 0) n.right += off;
                        t.nodes.push_back(n);
                    }
                    out.push_back(std::move(t));
                }
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

}  // namespace

std::vector<JoyceTree> enumerate_joyce_trees(int n)
{
    if (n < 1 || n > 6)
        throw std::invalid_argument("Joyce tree enumeration supports 1 <= n <= 6");
    std::vector<std::int64_t> labels(static_cast<std::size_t>(2 * n - 1));
    std::iota(labels.begin(), labels.end(), std::int64_t{1});
    auto all = trees_on(labels, n);
    std::vector<std::pair<std::string, std::size_t>> keyed;
    for (std::size_t i = 0; i < all.size(); ++i)
        keyed.emplace_back(all[i].str(), i);
    std::sort(keyed.begin(), keyed.end());
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    std::vector<JoyceTree> out;
    for (const auto& [s, i] : keyed)
        out.push_back(all[i]);
    return out;
}

std::uint64_t count_joyce_trees(int n)
{
    return enumerate_joyce_trees(n).size();
}

// ---------------------------------------------------------------------------
// Coded orders

CodedJoyceOrder encode_coded_order(const JoyceOrderTable& t)
{
    auto r = rerank(t);
    throw_if_invalid(order_violations(r), "invalid Joyce order");
    CodedJoyceOrder out;
    for (std::size_t x = 0; x < r.size(); ++x) {
        std::string bits(static_cast<std::size_t>(r.at(x, x)), '0');
        for (std::size_t y = 0; y < x; ++y)
            bits[static_cast<std::size_t>(r.at(x, y))] = '1';
        out.emplace_back(bits);
    }
    return out;
}

JoyceOrderTable coded_order_table(const std::vector<BitString>& s)
{
    return meet_length_table(lex_sorted(s));
}

std::vector<Violation> validate_coded_joyce_order(const std::vector<BitString>& s)
{
    auto sorted = lex_sorted(s);
    auto out = order_violations(meet_length_table(sorted));
    coded_violations(sorted, false, out);
    return out;
}

bool in_dlo_language(const BitString& s)
{
    if (s.size() < 2 || s.size() % 3 != 2)
        return false;
    const std::size_t n = s.size() / 3;
    for (std::size_t j = 0; j < n; ++j)
        if (s[3 * j + 1] || s[3 * j + 2])
            return false;
    return !s[3 * n] && s[3 * n + 1];
}

CodedJoyceOrder dlo_prefix(int max_len)
{
    if (max_len < 2)
        throw std::invalid_argument("dlo_prefix needs max_len >= 2");
    CodedJoyceOrder out;
    for (int n = 0; 3 * n + 2 <= max_len; ++n)
        for (const auto& u : words_up_to(static_cast<std::size_t>(n)))
            if (static_cast<int>(u.size()) == n)
                out.push_back(hat_encode(u));
    std::sort(out.begin(), out.end());
    return out;
}

JoyceOrderTable coded_order_rank_table(const std::vector<BitString>& strings)
{
    auto s = lex_sorted(strings);
    std::vector<BitString> meets;
    for (const auto& a : s)
        for (const auto& b : s)
            meets.push_back(meet(a, b));
    meets = sorted_unique(std::move(meets));
    JoyceOrderTable t;
    t.label.assign(s.size(), std::vector<std::int64_t>(s.size(), 0));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            t.label[i][j] = std::lower_bound(meets.begin(), meets.end(), meet(s[i], s[j])) - meets.begin();
    return t;
}

JoyceOrderTable dlo_joyce_order(int max_len)
{
    return coded_order_rank_table(dlo_prefix(max_len));
}

BitString hat_encode(const BitString& s)
{
    std::string out;
    for (std::size_t j = 0; j < s.size(); ++j) {
        out += s[j] ? '1' : '0';
        out += "00";
    }
    return BitString(out + "01");
}

BitString graph_triple_encode(const BitString& s)
{
    std::string out;
    for (std::size_t j = 0; j < s.size(); ++j)
        out.append(3, s[j] ? '1' : '0');
    return BitString(out + "01");
}

bool epn(const BitString& a, const BitString& b)
{
    if (a.size() == b.size())
        throw std::invalid_argument("epn is defined on strings of different lengths");
    const auto& lo = a.size() < b.size() ? a : b;
    const auto& hi = a.size() < b.size() ? b : a;
    return hi[lo.size()];
}

// ---------------------------------------------------------------------------
// Joyce graphs

std::vector<Violation> validate_joyce_graph(const JoyceGraphTable& g)
{
    check_table(g.order);
    check_edges(g);
    auto out = order_violations(g.order);
    auto j4 = jo4_violations(g);
    out.insert(out.end(), j4.begin(), j4.end());
    return out;
}

JoyceGraphTable coded_graph_table(const std::vector<BitString>& s)
{
    auto sorted = lex_sorted(s);
    JoyceGraphTable g{meet_length_table(sorted), {}};
    g.edge.assign(sorted.size(), std::vector<bool>(sorted.size(), false));
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = 0; j < sorted.size(); ++j)
            if (sorted[i].size() != sorted[j].size())
                g.edge[i][j] = epn(sorted[i], sorted[j]);
    return g;
}

std::vector<Violation> validate_coded_joyce_graph(const std::vector<BitString>& s)
{
    auto sorted = lex_sorted(s);
    std::vector<Violation> out;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            if (sorted[i].size() == sorted[j].size())
                out.push_back({"lengths", {i, j}, sorted[i].str() + " and " + sorted[j].str() + " have equal length"});
    auto g = coded_graph_table(sorted);
    auto v = order_violations(g.order);
    out.insert(out.end(), v.begin(), v.end());
    auto j4 = jo4_violations(g);
    out.insert(out.end(), j4.begin(), j4.end());
    coded_violations(sorted, true, out);
    return out;
}

std::vector<BitString> encode_coded_graph(const JoyceGraphTable& g)
{
    throw_if_invalid(validate_joyce_graph(g), "invalid Joyce graph");
    return coded_graph_strings(rerank(g.order), g.edge);
}

SimpleGraph parse_graph(std::string_view text)
{
    auto bad = [&] { return std::invalid_argument("bad graph spec: " + std::string(text)); };
    auto number = [&](std::string_view s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw bad();
        return std::stoi(std::string(s));
    };
    SimpleGraph g;
    if (auto colon = text.find(':'); colon != std::string_view::npos) {
        g.n = number(text.substr(0, colon));
        auto rest = text.substr(colon + 1);
        while (!rest.empty()) {
            auto comma = rest.find(',');
            auto item = rest.substr(0, comma);
            auto dash = item.find('-');
            if (dash == std::string_view::npos)
                throw bad();
            int a = number(item.substr(0, dash)), b = number(item.substr(dash + 1));
            if (a == b || a >= g.n || b >= g.n)
                throw bad();
            g.edges.emplace_back(std::min(a, b), std::max(a, b));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
    } else {
        if (text.size() < 2)
            throw bad();
        g.n = number(text.substr(1));
        switch (text[0]) {
        case 'K':
            for (int a = 0; a < g.n; ++a)
                for (int b = a + 1; b < g.n; ++b)
                    g.edges.emplace_back(a, b);
            break;
        case 'E': break;
        case 'P':
            for (int a = 0; a + 1 < g.n; ++a)
                g.edges.emplace_back(a, a + 1);
            break;
        case 'C':
            if (g.n < 3)
                throw bad();
            for (int a = 0; a < g.n; ++a)
                g.edges.emplace_back(std::min(a, (a + 1) % g.n), std::max(a, (a + 1) % g.n));
            break;
        default: throw bad();
        }
    }
    if (g.n < 1)
        throw bad();
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

std::uint64_t canonical_graph(int n, const std::vector<std::vector<bool>>& adj)
{
    if (n < 0 || n > 8)
        throw std::invalid_argument("canonical_graph supports n <= 8");
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
        std::uint64_t m = 0;
        int bit = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b, ++bit)
                if (adj[static_cast<std::size_t>(p[static_cast<std::size_t>(a)])][static_cast<std::size_t>(p[static_cast<std::size_t>(b)])])
                    m |= std::uint64_t{1} << bit;
        best = std::min(best, m);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

std::uint64_t count_joyce_graphs(int n, const std::optional<SimpleGraph>& filter)
{
    if (n < 1 || n > 5)
        throw std::invalid_argument("Joyce graph counting supports 1 <= n <= 5");
    if (filter && filter->n != n)
        throw std::invalid_argument("filter graph has " + std::to_string(filter->n) + " vertices, expected " +
                                    std::to_string(n));
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            pairs.emplace_back(a, b);
    const std::uint32_t masks = 1u << pairs.size();
    auto adjacency = [&](std::uint32_t m) {
        std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if ((m >> i) & 1u) {
                auto [a, b] = pairs[i];
                adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
                adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
            }
        return adj;
    };
    std::vector<bool> allowed(masks, true);
    if (filter) {
        std::vector<std::vector<bool>> fa(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
        for (auto [a, b] : filter->edges)
            fa[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = fa[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
        const auto target = canonical_graph(n, fa);
        for (std::uint32_t m = 0; m < masks; ++m)
            allowed[m] = canonical_graph(n, adjacency(m)) == target;
    }
    auto pair_index = [&](int a, int b) {
        if (a > b)
            std::swap(a, b);
        return static_cast<std::size_t>(std::find(pairs.begin(), pairs.end(), std::make_pair(a, b)) - pairs.begin());
    };
    // Isomorphisms fix positions, so (tree, edge set) pairs are already distinct classes.
    std::set<std::pair<std::string, std::uint32_t>> seen;
    for (const auto& tree : enumerate_joyce_trees(n)) {
        auto o = order_of(tree);
        // Jo4 forces equal edge status on pairs of (x,y) and (x,z).
        std::vector<std::pair<std::size_t, std::size_t>> ties;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = y + 1; z < n; ++z)
                    if (y != x && z != x && o.at(static_cast<std::size_t>(x), static_cast<std::size_t>(x)) <
                                                o.at(static_cast<std::size_t>(y), static_cast<std::size_t>(z)))
                        ties.emplace_back(pair_index(x, y), pair_index(x, z));
        for (std::uint32_t m = 0; m < masks; ++m) {
            if (!allowed[m])
                continue;
            bool ok = std::all_of(ties.begin(), ties.end(),
                                  [&](auto t) { return ((m >> t.first) & 1u) == ((m >> t.second) & 1u); });
            if (ok)
                seen.emplace(tree.str(), m);
        }
    }
    return seen.size();
}

// ---------------------------------------------------------------------------
// Blossom trees

std::vector<Violation> validate_blossom(const BlossomTreeTable& b)
{
    std::vector<BitString> dom;
    for (const auto& [k, v] : b.f)
        dom.push_back(k);
    {
        std::vector<BitString> gd;
        for (const auto& [k, v] : b.g)
            gd.push_back(k);
        if (gd != dom)
            throw std::invalid_argument("f and g have different domains");
    }
    for (const auto& s : dom)
        if (!s.empty() && !b.f.count(s.prefix(s.size() - 1)))
            throw std::invalid_argument("domain not prefix-closed at " + s.str());
    std::vector<Violation> out;
    auto idx = [&](const BitString& s) {
        return static_cast<std::size_t>(std::lower_bound(dom.begin(), dom.end(), s) - dom.begin());
    };
    const auto& f = b.f;
    const auto& g = b.g;
    for (const auto& s : dom)
        for (const auto& t : dom) {
            const auto& fs = f.at(s);
            const auto& ft = f.at(t);
            if (is_proper_prefix(s, t) && !is_proper_prefix(fs, ft))
                out.push_back({"prefix", {idx(s), idx(t)}, "f(" + s.str() + ") is not a proper prefix of f(" + t.str() + ")"});
            if (!comparable(s, t) && lex_less(s, t) && !(lex_less(fs, ft) && !comparable(fs, ft)))
                out.push_back({"lex", {idx(s), idx(t)}, "f does not keep " + s.str() + " left of " + t.str()});
            if (s < t && f.at(meet(s, t)) != meet(fs, ft))
                out.push_back({"meet", {idx(s), idx(t)}, "f(" + s.str() + " ∧ " + t.str() + ") != f(" + s.str() + ") ∧ f(" + t.str() + ")"});
            if (t.size() > s.size() && !(ft.size() > g.at(s).size()))
                out.push_back({"cond2", {idx(s), idx(t)}, "|f(" + t.str() + ")| <= |g(" + s.str() + ")|"});
            if (t.size() == s.size() && f.count(t.child(false)) && f.count(t.child(true))) {
                const std::size_t p = g.at(s).size();
                const auto& a = f.at(t.child(false));
                const auto& c = f.at(t.child(true));
                if (a.size() <= p || c.size() <= p || a[p] == c[p])
                    out.push_back({"cond3", {idx(s), idx(t)},
                                   "f(" + t.str() + "0) and f(" + t.str() + "1) do not split at |g(" + s.str() + ")| = " +
                                       std::to_string(p)});
            }
        }
    for (const auto& s : dom)
        if (!is_proper_prefix(f.at(s), g.at(s)))
            out.push_back({"cond1", {idx(s)}, "g(" + s.str() + ") does not strictly extend f(" + s.str() + ")"});
    return out;
}

BlossomTreeTable generate_blossom(int depth)
{
    if (depth < 1 || depth > 7)
        throw std::invalid_argument("generate_blossom supports 1 <= depth <= 7");
    // Joyce graph on the triple encodings of 2^{<=depth+1}: lex order, labels by
    // the length-then-lex rank of meets, edges epn between different lengths.
    auto dom = words_up_to(static_cast<std::size_t>(depth + 1));
    std::vector<BitString> img;
    for (const auto& s : dom)
        img.push_back(graph_triple_encode(s));
    std::vector<std::size_t> order(dom.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lex_less(img[a], img[b]); });
    const std::size_t n = order.size();
    std::vector<BitString> meets;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            meets.push_back(meet(img[order[i]], img[order[j]]));
    meets = sorted_unique(std::move(meets));
    JoyceOrderTable t;
    t.label.assign(n, std::vector<std::int64_t>(n, 0));
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& a = img[order[i]];
            const auto& c = img[order[j]];
            t.label[i][j] = std::lower_bound(meets.begin(), meets.end(), meet(a, c)) - meets.begin();
            if (a.size() != c.size())
                edge[i][j] = epn(a, c);
        }
    auto coded = coded_graph_strings(t, edge);
    std::map<BitString, BitString> e;  // domain word -> coded string
    for (std::size_t i = 0; i < n; ++i)
        e[dom[order[i]]] = coded[i];
    BlossomTreeTable b;
    b.depth = depth;
    for (const auto& s : dom) {
        if (static_cast<int>(s.size()) > depth)
            continue;
        b.g[s] = e.at(s);
        b.f[s] = meet(e.at(s.child(false)), e.at(s.child(true)));
    }
    return b;
}

std::optional<BitString> rado_extend(const std::vector<BitString>& vertices, const std::vector<BitString>& f0,
                                     const std::vector<BitString>& f1, int search_len)
{
    auto sorted = sorted_unique(vertices);
    std::size_t longest = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i].size() == sorted[i + 1].size())
            throw std::invalid_argument("vertices must have distinct lengths");
        longest = std::max(longest, sorted[i].size());
    }
    std::map<std::size_t, bool> need;  // position -> required bit
    auto add = [&](const std::vector<BitString>& fs, bool bit) {
        for (const auto& v : fs) {
            if (!std::binary_search(sorted.begin(), sorted.end(), v))
                throw std::invalid_argument("rado_extend: " + v.str() + " is not a vertex");
            auto [it, fresh] = need.emplace(v.size(), bit);
            if (!fresh)
                throw std::invalid_argument("rado_extend: " + v.str() + " is in both f0 and f1");
        }
    };
    add(f0, false);
    add(f1, true);
    for (std::size_t m = 0; 3 * m + 2 <= static_cast<std::size_t>(std::max(search_len, 0)); ++m) {
        if (!sorted.empty() && 3 * m + 2 <= longest)
            continue;
        std::vector<int> letter(m, -1);
        bool ok = true;
        for (auto [p, bit] : need) {
            if (p < 3 * m) {
                int& l = letter[p / 3];
                if (l >= 0 && l != static_cast<int>(bit))
                    ok = false;
                l = bit ? 1 : 0;
            } else if (p == 3 * m) {
                ok = ok && !bit;
            } else {
                ok = ok && bit;  // p == 3m+1, since every vertex is shorter
            }
        }
        if (!ok)
            continue;
        BitString s;
        for (int l : letter)
            s.push_back(l == 1);
        return graph_triple_encode(s);
    }
    return std::nullopt;
}

}  // namespace rf
