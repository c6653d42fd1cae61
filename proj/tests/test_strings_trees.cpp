#include "oracle.hpp"

#include "rf/bitstring.hpp"
#include "rf/tree.hpp"

#include <doctest.h>

#include <set>

using namespace rf;

namespace {

BitString B(const char* s) { return BitString(s); }

std::vector<BitString> words(std::initializer_list<const char*> l)
{
    std::vector<BitString> v;
    for (auto* s : l)
        v.emplace_back(s);
    return v;
}

std::set<std::string> as_set(const std::vector<BitString>& v)
{
    std::set<std::string> s;
    for (const auto& x : v)
        s.insert(x.digits());
    return s;
}

}  // namespace

TEST_CASE("bitstring text forms")
{
    CHECK(B("e").empty());
    CHECK(B("").str() == "e");
    CHECK(B("0110").str() == "0110");
    CHECK_THROWS_AS(B("012"), std::invalid_argument);
    CHECK(B("01").child(true) == B("011"));
    CHECK(B("0110").prefix(2) == B("01"));
    CHECK_THROWS(B("01").at(2));
    // canonical order is length first
    CHECK(B("1") < B("00"));
    CHECK(B("00") < B("01"));
}

TEST_CASE("meet examples")
{
    CHECK(meet(B("0101"), B("0110")) == B("01"));
    CHECK(meet(B("01"), B("0110")) == B("01"));
    CHECK(meet(B("e"), B("1")) == B("e"));
    CHECK(meet_length(B("0101"), B("0110")) == 2);
}

TEST_CASE("meet is idempotent, commutative and associative")
{
    auto& g = oracle::rng();
    auto rand_word = [&] {
        std::string s(g() % 9, '0');
        for (auto& c : s)
            c = g() % 2 ? '1' : '0';
        return BitString(s);
    };
    for (int i = 0; i < 3000; ++i) {
        auto a = rand_word(), b = rand_word(), c = rand_word();
        CHECK(meet(a, a) == a);
        CHECK(meet(a, b) == meet(b, a));
        CHECK(meet(meet(a, b), c) == meet(a, meet(b, c)));
        CHECK(meet(a, b).digits() == oracle::meet(a.digits(), b.digits()));
    }
}

TEST_CASE("cmp_q examples")
{
    CHECK(cmp_q(B("0"), B("01")) < 0);
    CHECK(cmp_q(B("00"), B("0")) < 0);
    CHECK(cmp_q(B("01"), B("10")) < 0);
    CHECK(cmp_q(B("1"), B("1")) == 0);
}

TEST_CASE("q_value examples")
{
    CHECK(q_value(B("e")) == 0);
    CHECK(q_value(B("1")) == Rational(1, 2));
    CHECK(q_value(B("10")) == Rational(1, 4));
}

TEST_CASE("cmp_q agrees with q_value on all words of length <= 8")
{
    auto all = words_up_to(8);
    REQUIRE(all.size() == 511);
    std::vector<std::int64_t> scaled;
    std::vector<Rational> exact;
    for (const auto& a : all) {
        scaled.push_back(oracle::q_scaled(a.digits(), 8));
        exact.push_back(q_value(a));
    }
    long bad = 0, bad_exact = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j) {
            bool lt = q_less(all[i], all[j]);
            bad += lt != (scaled[i] < scaled[j]);
            bad_exact += lt != (exact[i] < exact[j]);
        }
    CHECK(bad == 0);
    CHECK(bad_exact == 0);
}

TEST_CASE("density helper gives short witnesses")
{
    auto all = words_up_to(5);
    long bad = 0;
    for (const auto& a : all)
        for (const auto& b : all) {
            if (!q_less(a, b))
                continue;
            auto c = q_between(a, b);
            bad += !(q_less(a, c) && q_less(c, b) && c.size() <= a.size() + b.size() + 2);
        }
    CHECK(bad == 0);
    CHECK_THROWS_AS(q_between(B("1"), B("0")), std::invalid_argument);
}

TEST_CASE("finite trees")
{
    CHECK_THROWS_AS(FiniteTree(words({"0", "1"})), TreeError);  // no root
    CHECK_THROWS_AS(FiniteTree(words({"e", "00", "01"})), TreeError);  // meet 0 missing
    CHECK_NOTHROW(FiniteTree(words({"e", "00", "1"})));
    CHECK_FALSE(FiniteTree::try_make({}).has_value());
    FiniteTree t(words({"e", "01", "0101", "0110"}));
    CHECK(t.height() == 3);
    CHECK(t.level_of(B("01")) == 1);
    CHECK(t.level_of(B("0110")) == 2);
    CHECK(full_binary_tree(3).size() == 7);
}

TEST_CASE("strong subtree examples from the three-set figure")
{
    auto t = full_binary_tree(5);
    auto s0 = is_strong_subtree(words({"01", "0101", "0110"}), t);
    REQUIRE(s0.has_value());
    CHECK(s0->level_fn.values == std::vector<int>{2, 4});
    CHECK_FALSE(is_strong_subtree(words({"01", "0100", "0101"}), t).has_value());
    CHECK_FALSE(is_strong_subtree(words({"01", "0101", "011"}), t).has_value());
    CHECK_THROWS_AS(is_strong_subtree(words({"010101"}), t), std::invalid_argument);
}

TEST_CASE("enumerate_strong_subtrees counts")
{
    CHECK(enumerate_strong_subtrees(full_binary_tree(3), 1).size() == 7);
    CHECK(enumerate_strong_subtrees(full_binary_tree(3), 2).size() == 7);
    CHECK(enumerate_strong_subtrees(full_binary_tree(2), 2).size() == 1);
    CHECK(enumerate_strong_subtrees_with_leaves(full_binary_tree(3), 2).size() == 6);
    CHECK(enumerate_strong_subtrees_with_leaves(full_binary_tree(3), 3).size() == 1);
    CHECK(enumerate_strong_subtrees_with_leaves(full_binary_tree(2), 2).size() == 1);
}

TEST_CASE("enumeration matches a subset-by-subset oracle on the height-4 tree")
{
    auto nodes = oracle::full_words(4);
    REQUIRE(nodes.size() == 15);
    std::map<int, std::set<std::set<std::string>>> expected;
    for (std::uint32_t mask = 1; mask < (1u << nodes.size()); ++mask) {
        std::set<std::string> s;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (mask >> i & 1)
                s.insert(nodes[i]);
        for (int n = 1; n <= 4; ++n)
            if (oracle::strong_in_full(s, n))
                expected[n].insert(s);
    }
    auto t = full_binary_tree(4);
    for (int n = 1; n <= 4; ++n) {
        std::set<std::set<std::string>> got;
        for (const auto& w : enumerate_strong_subtrees(t, n))
            got.insert(as_set(w.subtree.nodes()));
        CHECK_MESSAGE(got == expected[n], "height ", n);
    }
}

TEST_CASE("enumeration output passes the checker and ignores thread count")
{
    for (int h = 2; h <= 5; ++h) {
        auto t = full_binary_tree(h);
        for (int n = 1; n <= h; ++n) {
            auto one = enumerate_strong_subtrees(t, n, 1);
            auto three = enumerate_strong_subtrees(t, n, 3);
            REQUIRE(one.size() == three.size());
            for (std::size_t i = 0; i < one.size(); ++i) {
                CHECK(one[i].subtree == three[i].subtree);
                auto w = is_strong_subtree(one[i].subtree.nodes(), t);
                REQUIRE(w.has_value());
                CHECK(w->level_fn == one[i].level_fn);
            }
            CHECK(enumerate_strong_subtrees_with_leaves(t, n, 1).size() ==
                  enumerate_strong_subtrees_with_leaves(t, n, 2).size());
        }
    }
}

TEST_CASE("strong subtree relation is transitive inside the height-4 tree")
{
    auto t = full_binary_tree(4);
    long checked = 0, bad = 0;
    for (int n = 1; n <= 4; ++n)
        for (const auto& s : enumerate_strong_subtrees(t, n)) {
            const FiniteTree& st = s.subtree;
            for (int m = 1; m <= st.height(); ++m)
                for (const auto& u : enumerate_strong_subtrees(st, m)) {
                    ++checked;
                    bad += !is_strong_subtree(u.subtree.nodes(), t).has_value();
                }
        }
    CHECK(checked > 500);
    CHECK(bad == 0);
}

TEST_CASE("increasing sequences")
{
    auto v = increasing_sequences(2, 4);
    CHECK(v.size() == 6);
    CHECK(v.front() == std::vector<int>{0, 1});
    CHECK(v.back() == std::vector<int>{2, 3});
}
