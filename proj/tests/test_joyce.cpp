#include "oracle.hpp"

#include "rf/joyce.hpp"
#include "rf/tree.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace rf;

namespace {

std::vector<BitString> words(std::initializer_list<const char*> l)
{
    std::vector<BitString> v;
    for (auto* s : l)
        v.emplace_back(s);
    return v;
}

bool has_rule(const std::vector<Violation>& v, const std::string& r)
{
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.rule == r; });
}

// Insert a new element at position pos with the given row; labels of the old
// table are doubled and shifted by one so that new labels can fall in gaps.
JoyceOrderTable extend(const JoyceOrderTable& t, std::size_t pos, const std::vector<std::int64_t>& row)
{
    const std::size_t n = t.size() + 1;
    JoyceOrderTable out;
    out.label.assign(n, std::vector<std::int64_t>(n, 0));
    auto old = [&](std::size_t i) { return i < pos ? i : i - 1; };
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (i != pos)
            for (std::size_t j = 0; j < n; ++j)
                if (j != pos)
                    out.label[i][j] = 2 * t.label[old(i)][old(j)] + 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == pos)
            continue;
        out.label[pos][i] = out.label[i][pos] = row[r++];
    }
    out.label[pos][pos] = row[r];
    return out;
}

// Every valid Joyce order of each size up to max_n, up to order-preserving
// relabelling, grown one element at a time. Raw (un-reranked) tables too.
struct Catalog {
    std::map<int, std::set<std::vector<std::vector<std::int64_t>>>> canon;
    std::map<int, std::vector<JoyceOrderTable>> raw;
};

Catalog all_orders(int max_n)
{
    Catalog c;
    JoyceOrderTable one{{{0}}};
    c.canon[1].insert(one.label);
    c.raw[1].push_back(one);
    c.raw[1].push_back(JoyceOrderTable{{{3}}});
    for (int n = 2; n <= max_n; ++n) {
        for (const auto& lab : c.canon[n - 1]) {
            JoyceOrderTable t{lab};
            std::int64_t top = 0;
            for (const auto& r : lab)
                for (auto v : r)
                    top = std::max(top, v);
            const std::int64_t hi = 2 * top + 2;  // labels 0..hi after doubling
            const std::size_t slots = static_cast<std::size_t>(n);  // n-1 pair labels + self label
            std::vector<std::int64_t> row(slots, 0);
            for (std::size_t pos = 0; pos < static_cast<std::size_t>(n); ++pos) {
                std::fill(row.begin(), row.end(), 0);
                while (true) {
                    auto e = extend(t, pos, row);
                    if (validate_joyce_order(e).empty()) {
                        c.canon[n].insert(rerank(e).label);
                        if (n <= 3)
                            c.raw[n].push_back(e);
                    }
                    std::size_t i = 0;
                    while (i < slots && row[i] == hi)
                        row[i++] = 0;
                    if (i == slots)
                        break;
                    ++row[i];
                }
            }
        }
    }
    return c;
}

const Catalog& catalog()
{
    static const Catalog c = all_orders(4);
    return c;
}

}  // namespace

TEST_CASE("validate_joyce_order examples")
{
    JoyceOrderTable two{{{1, 0}, {0, 2}}};
    CHECK(validate_joyce_order(two).empty());
    JoyceOrderTable same{{{1, 0}, {0, 1}}};
    CHECK(has_rule(validate_joyce_order(same), "Jo3"));
    CHECK(validate_joyce_order(JoyceOrderTable{{{0}}}).empty());
    CHECK_THROWS_AS(validate_joyce_order(JoyceOrderTable{{{1, 0}, {1, 2}}}), std::invalid_argument);
}

TEST_CASE("joyce_tree_of examples")
{
    CHECK(joyce_tree_of(JoyceOrderTable{{{0}}}).str() == "(1 - -)");
    JoyceOrderTable two{{{1, 0}, {0, 2}}};
    CHECK(joyce_tree_of(two).str() == "(1 (2 - -) (3 - -))");
    CHECK(JoyceTree::parse("(1 (2 - -) (3 - -))") == joyce_tree_of(two));
    CHECK_THROWS(joyce_tree_of(JoyceOrderTable{{{1, 0}, {0, 1}}}));
}

TEST_CASE("exhaustive Joyce orders: counts, label law, subset closure")
{
    const auto& c = catalog();
    const std::size_t tangent[] = {0, 1, 2, 16, 272};
    for (int n = 1; n <= 4; ++n) {
        std::set<std::string> trees;
        bool law = true, closed = true;
        for (const auto& lab : c.canon.at(n)) {
            JoyceOrderTable t{lab};
            trees.insert(joyce_tree_of(t).str());
            law &= distinct_labels(t) == static_cast<std::size_t>(2 * n - 1);
            // drop each element
            for (std::size_t k = 0; k < t.size() && n > 1; ++k) {
                JoyceOrderTable s;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    if (i == k)
                        continue;
                    std::vector<std::int64_t> r;
                    for (std::size_t j = 0; j < t.size(); ++j)
                        if (j != k)
                            r.push_back(t.label[i][j]);
                    s.label.push_back(r);
                }
                closed &= validate_joyce_order(s).empty();
            }
        }
        CHECK_MESSAGE(c.canon.at(n).size() == tangent[n], "n = ", n);
        CHECK(trees.size() == tangent[n]);
        CHECK(law);
        CHECK(closed);
        CHECK(count_joyce_trees(n) == tangent[n]);
    }
}

TEST_CASE("joyce_tree_of is a complete invariant up to size 3")
{
    for (int n = 1; n <= 3; ++n) {
        const auto& raw = catalog().raw.at(n);
        std::size_t bad = 0;
        for (const auto& a : raw)
            for (const auto& b : raw)
                bad += (joyce_tree_of(a) == joyce_tree_of(b)) != (rerank(a) == rerank(b));
        CHECK_MESSAGE(bad == 0, "n = ", n);
        CHECK(raw.size() > 1);
    }
}

TEST_CASE("order_of inverts joyce_tree_of")
{
    for (int n = 1; n <= 4; ++n)
        for (const auto& t : enumerate_joyce_trees(n)) {
            CHECK(joyce_tree_of(order_of(t)) == t);
            CHECK(t.leaf_count() == static_cast<std::size_t>(n));
        }
}

TEST_CASE("encode_coded_order")
{
    JoyceOrderTable two{{{1, 0}, {0, 2}}};
    CHECK(encode_coded_order(two) == words({"0", "10"}));
    CHECK(encode_coded_order(JoyceOrderTable{{{0}}}) == words({"e"}));
    for (int n = 1; n <= 4; ++n)
        for (const auto& lab : catalog().canon.at(n)) {
            JoyceOrderTable t{lab};
            auto s = encode_coded_order(t);
            CHECK(validate_coded_joyce_order(s).empty());
            for (std::size_t i = 0; i < s.size(); ++i)
                CHECK(static_cast<std::int64_t>(s[i].size()) == t.label[i][i]);
            CHECK(joyce_tree_of(coded_order_table(s)) == joyce_tree_of(t));
        }
    CHECK_THROWS(encode_coded_order(JoyceOrderTable{{{1, 0}, {0, 1}}}));
}

TEST_CASE("validate_coded_joyce_order")
{
    auto jo3 = validate_coded_joyce_order(words({"1", "10"}));
    CHECK(has_rule(jo3, "Jo3"));
    // equal lengths mean equal self-labels, which Jo3 forbids under meet-length labels
    CHECK(has_rule(validate_coded_joyce_order(words({"0", "1"})), "Jo3"));
    CHECK(has_rule(validate_coded_joyce_order(words({"01", "00001", "10001"})), "Jo3"));
    // with rank labels these sets are Joyce orders
    CHECK(validate_joyce_order(coded_order_rank_table(words({"0", "1"}))).empty());
    CHECK(validate_joyce_order(coded_order_rank_table(words({"01", "00001", "10001"}))).empty());
    CHECK_FALSE(validate_joyce_order(coded_order_rank_table(words({"1", "10"}))).empty());
    CHECK(validate_coded_joyce_order(words({"0", "10"})).empty());
}

TEST_CASE("dlo prefix")
{
    CHECK(in_dlo_language(BitString("10000010001")));
    CHECK_FALSE(in_dlo_language(BitString("0110")));
    CHECK(dlo_prefix(2) == words({"01"}));
    CHECK(dlo_prefix(5) == words({"01", "00001", "10001"}));
    for (int L = 2; L <= 11; ++L) {
        auto p = dlo_prefix(L);
        for (const auto& s : p)
            CHECK(in_dlo_language(s));
        CHECK(validate_joyce_order(dlo_joyce_order(L)).empty());
    }
    // membership against a direct oracle
    for (const auto& s : words_up_to(8)) {
        const auto& d = s.digits();
        bool in = d.size() >= 2 && d.size() % 3 == 2 && d.substr(d.size() - 2) == "01";
        for (std::size_t i = 0; in && i + 2 < d.size(); i += 3)
            in = d[i + 1] == '0' && d[i + 2] == '0';
        CHECK(in_dlo_language(s) == in);
    }
}

TEST_CASE("hat encoding")
{
    CHECK(hat_encode(BitString("0110")) == BitString("00010010000001"));
    CHECK(hat_encode(BitString("e")) == BitString("01"));
    CHECK(hat_encode(BitString("1")) == BitString("10001"));
    CHECK(graph_triple_encode(BitString("10")) == BitString("11100001"));
    for (const auto& s : words_up_to(5)) {
        auto h = hat_encode(s);
        CHECK(h.size() == 3 * s.size() + 2);
        CHECK(in_dlo_language(h));
    }
}

TEST_CASE("hat image keeps the Joyce structure of coded orders up to size 3")
{
    auto all = words_up_to(4);
    std::size_t coded = 0, bad = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i; j < all.size(); ++j)
            for (std::size_t k = j; k < all.size(); ++k) {
                std::set<BitString> s{all[i], all[j], all[k]};
                std::vector<BitString> x(s.begin(), s.end());
                if (!validate_coded_joyce_order(x).empty())
                    continue;
                ++coded;
                std::vector<BitString> hx;
                for (const auto& w : x)
                    hx.push_back(hat_encode(w));
                bad += joyce_tree_of(coded_order_table(hx)) != joyce_tree_of(coded_order_table(x));
            }
    CHECK(coded > 100);
    CHECK(bad == 0);
}

TEST_CASE("at most one coded copy of each shape per strong subtree")
{
    // Read a strong subtree in its own coordinates: the word of branching bits.
    auto coords = [](const StrongSubtreeWitness& u, const BitString& x) {
        const auto& L = u.level_fn.values;
        std::string d;
        for (std::size_t j = 0; j + 1 < L.size() && static_cast<std::size_t>(L[j + 1]) <= x.size(); ++j)
            d.push_back(x[static_cast<std::size_t>(L[j])] ? '1' : '0');
        return BitString(d);
    };
    auto t = full_binary_tree(5);
    auto shapes = enumerate_joyce_trees(2);
    std::size_t fewest = 99, most = 0, subtrees = 0;
    for (const auto& u : enumerate_strong_subtrees(t, 3)) {
        ++subtrees;
        std::map<std::string, std::size_t> per_shape;
        const auto& nodes = u.subtree.nodes();
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                auto x = sorted_unique({coords(u, nodes[i]), coords(u, nodes[j])});
                if (!validate_coded_joyce_order(x).empty())
                    continue;
                ++per_shape[joyce_tree_of(coded_order_table(x)).str()];
            }
        CHECK(per_shape.size() <= shapes.size());
        for (const auto& s : shapes) {
            most = std::max(most, per_shape[s.str()]);
            fewest = std::min(fewest, per_shape[s.str()]);
        }
    }
    CHECK(subtrees > 0);
    // at most one copy, and every shape has its copy in every subtree
    CHECK(most == 1);
    CHECK(fewest == 1);
}

TEST_CASE("epn")
{
    CHECK(epn(BitString("11"), BitString("1")));
    CHECK_FALSE(epn(BitString("10001"), BitString("1")));
    CHECK(epn(BitString("1"), BitString("11")));
    CHECK_THROWS_AS(epn(BitString("1"), BitString("0")), std::invalid_argument);
}

TEST_CASE("Joyce graphs")
{
    auto cg = coded_graph_table(words({"0", "11"}));
    CHECK(validate_coded_joyce_graph(words({"0", "11"})).empty());
    CHECK(cg.edge[0][1]);

    JoyceGraphTable with{JoyceOrderTable{{{1, 0}, {0, 2}}}, {{false, true}, {true, false}}};
    JoyceGraphTable without{JoyceOrderTable{{{1, 0}, {0, 2}}}, {{false, false}, {false, false}}};
    CHECK(encode_coded_graph(with) == words({"0", "11"}));
    CHECK(encode_coded_graph(without) == words({"0", "10"}));
    // labels are re-ranked on the way in, so a lone self-label becomes 0
    CHECK(encode_coded_graph(JoyceGraphTable{JoyceOrderTable{{{3}}}, {{false}}}) == words({"e"}));

    // Jo4: <x,x> below <y,z> but x linked to y only
    JoyceGraphTable bad{JoyceOrderTable{{{1, 0, 0}, {0, 3, 2}, {0, 2, 4}}},
                        {{false, true, false}, {true, false, false}, {false, false, false}}};
    REQUIRE(validate_joyce_order(bad.order).empty());
    CHECK(has_rule(validate_joyce_graph(bad), "Jo4"));
    CHECK_THROWS(validate_joyce_graph(JoyceGraphTable{JoyceOrderTable{{{1, 0}, {0, 2}}}, {{true, false}, {false, false}}}));
}

TEST_CASE("coded graph round trips for every Joyce graph up to size 3")
{
    for (int n = 1; n <= 3; ++n)
        for (const auto& lab : catalog().canon.at(n)) {
            JoyceOrderTable o{lab};
            const int pairs = n * (n - 1) / 2;
            for (int mask = 0; mask < (1 << pairs); ++mask) {
                JoyceGraphTable g{o, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false))};
                int b = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j, ++b)
                        g.edge[i][j] = g.edge[j][i] = (mask >> b & 1) != 0;
                if (!validate_joyce_graph(g).empty())
                    continue;
                auto s = encode_coded_graph(g);
                CHECK(validate_coded_joyce_graph(s).empty());
                auto back = coded_graph_table(s);
                CHECK(joyce_tree_of(back.order) == joyce_tree_of(o));
                CHECK(back.edge == g.edge);
            }
        }
}

TEST_CASE("Joyce graph counts")
{
    CHECK(count_joyce_graphs(1) == 1);
    CHECK(count_joyce_graphs(2) == 4);
    CHECK(count_joyce_graphs(3) == 112);
    CHECK(count_joyce_graphs(3, parse_graph("K3")) == 16);
    CHECK_THROWS(count_joyce_graphs(3, parse_graph("K4")));
    // the four graphs on three vertices partition the census
    for (int n = 2; n <= 3; ++n) {
        std::uint64_t sum = 0;
        if (n == 2)
            sum = count_joyce_graphs(2, parse_graph("E2")) + count_joyce_graphs(2, parse_graph("K2"));
        else
            sum = count_joyce_graphs(3, parse_graph("E3")) + count_joyce_graphs(3, parse_graph("3:0-1")) +
                  count_joyce_graphs(3, parse_graph("P3")) + count_joyce_graphs(3, parse_graph("K3"));
        CHECK(sum == count_joyce_graphs(n));
    }
}

TEST_CASE("blossom trees")
{
    for (int d = 1; d <= 4; ++d)
        CHECK_MESSAGE(validate_blossom(generate_blossom(d)).empty(), "depth ", d);
    auto b = generate_blossom(2);
    auto same = b;
    same.g = same.f;
    CHECK(has_rule(validate_blossom(same), "cond1"));

    // swap the images of two equal-length children to break the splitting bit
    auto c = b;
    bool broke = false;
    for (auto& [s, img] : c.f) {
        if (s.size() != 1)
            continue;
        auto s0 = s.child(false), s1 = s.child(true);
        if (c.f.count(s0) && c.f.count(s1)) {
            c.f[s1] = c.f[s0];
            broke = true;
            break;
        }
    }
    REQUIRE(broke);
    CHECK_FALSE(validate_blossom(c).empty());

    auto hole = b;
    hole.f.erase(BitString("0"));
    hole.g.erase(BitString("0"));
    CHECK_THROWS(validate_blossom(hole));
}

TEST_CASE("rado_extend")
{
    auto r = rado_extend(words({"01"}), {}, words({"01"}), 8);
    REQUIRE(r.has_value());
    CHECK(epn(*r, BitString("01")));
    CHECK(r->size() <= 8);
    auto any = rado_extend(words({"01"}), {}, {}, 8);
    CHECK(any.has_value());
    CHECK(any->size() != 2);
    CHECK_FALSE(rado_extend(words({"01"}), {}, words({"01"}), 2).has_value());
    CHECK_THROWS(rado_extend(words({"01"}), words({"01"}), words({"01"}), 8));

    // random extension problems over triple-encoded vertices
    std::vector<BitString> verts;
    for (const auto& s : words_up_to(2))
        verts.push_back(graph_triple_encode(s));
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end(),
                            [](const BitString& a, const BitString& b) { return a.size() == b.size(); }),
                verts.end());
    for (int mask = 0; mask < 27; ++mask) {
        std::vector<BitString> f0, f1;
        int m = mask;
        for (std::size_t i = 0; i < verts.size() && i < 3; ++i, m /= 3) {
            if (m % 3 == 1)
                f0.push_back(verts[i]);
            else if (m % 3 == 2)
                f1.push_back(verts[i]);
        }
        auto x = rado_extend(verts, f0, f1, 40);
        REQUIRE(x.has_value());
        for (const auto& v : f1)
            CHECK(epn(*x, v));
        for (const auto& v : f0)
            CHECK_FALSE(epn(*x, v));
    }
}
