#include "oracle.hpp"

#include "rf/colorings.hpp"
#include "rf/minimizer.hpp"
#include "rf/types.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace rf;

namespace {

BitString B(const char* s) { return BitString(s); }

std::vector<BitString> chain(int len)
{
    std::vector<BitString> v;
    std::string s;
    for (int i = 0; i <= len; ++i) {
        v.emplace_back(s);
        s.push_back(i % 2 ? '1' : '0');
    }
    return v;
}

}  // namespace

TEST_CASE("f_lt_q")
{
    CHECK(f_lt_q(B("0"), B("01")) == 1);
    CHECK(f_lt_q(B("0"), B("00")) == 0);
    CHECK(f_lt_q(B("01"), B("10")) == 0);
    CHECK_THROWS_AS(f_lt_q(B("0"), B("0")), std::invalid_argument);
}

TEST_CASE("devlin_f0")
{
    CHECK(devlin_f0(B("e"), B("0")) == 1);
    CHECK(devlin_f0(B("e"), B("1")) == 0);
    CHECK(devlin_f0(B("0"), B("1")) == 0);
    CHECK_THROWS_AS(devlin_f0(B("1"), B("1")), std::invalid_argument);

    CHECK(length_lex_rank(B("e")) == 0);
    CHECK(length_lex_rank(B("0")) == 1);
    CHECK(length_lex_rank(B("1")) == 2);
    CHECK(length_lex_rank(B("00")) == 3);
    // ranks are a bijection on a prefix
    std::set<std::uint64_t> seen;
    for (const auto& w : words_up_to(6))
        seen.insert(length_lex_rank(w));
    CHECK(seen.size() == 127);
    CHECK(*seen.rbegin() == 126);

    auto e = EnumOrder::from_table({{B("e"), 5}, {B("0"), 1}});
    CHECK(devlin_f0(B("e"), B("0"), e) == 0);
    CHECK_THROWS_AS(devlin_f0(B("e"), B("1"), e), std::out_of_range);
    CHECK_THROWS(EnumOrder::from_table({{B("e"), 1}, {B("0"), 1}}));
}

TEST_CASE("pair colorings ignore argument order")
{
    auto all = words_up_to(5);
    long bad = 0;
    for (const auto& a : all)
        for (const auto& b : all) {
            if (a == b)
                continue;
            bad += f_lt_q(a, b) != f_lt_q(b, a);
            bad += devlin_f0(a, b) != devlin_f0(b, a);
            // f_lt_q against its definition through the dyadic values
            const auto& lo = oracle::q_scaled(a.digits(), 6) < oracle::q_scaled(b.digits(), 6) ? a : b;
            const auto& hi = &lo == &a ? b : a;
            bad += f_lt_q(a, b) != (lo.size() < hi.size() ? 1 : 0);
        }
    CHECK(bad == 0);
}

TEST_CASE("jockusch_fJ")
{
    auto o = ApproxOracle::from_entries({{0, 5}});
    CHECK(jockusch_fJ(1, 2, 3, o) == 1);
    CHECK(jockusch_fJ(1, 4, 6, o) == 0);
    for (int y = 1; y < 8; ++y)
        for (int z = y + 1; z < 9; ++z)
            CHECK(jockusch_fJ(0, y, z, o) == 1);
    CHECK_THROWS_AS(jockusch_fJ(2, 1, 3, o), std::invalid_argument);
    CHECK_THROWS_AS(jockusch_fJ(1, 2, 2, o), std::invalid_argument);
    // pair form uses (meet length, shorter, longer)
    CHECK(jockusch_fJ(B("0000"), B("011111"), o) == 0);
    CHECK(jockusch_fJ(B("00"), B("011"), o) == 1);
}

TEST_CASE("jockusch_fJ stabilizes once the oracle has")
{
    auto o = ApproxOracle::from_entries({{0, 3}, {1, 7}, {2, 4}, {4, 11}});
    for (std::int64_t x = 0; x <= 5; ++x) {
        std::int64_t stable = 0;
        for (std::int64_t e = 0; e < x; ++e)
            stable = std::max(stable, o.stabilization(e));
        for (std::int64_t y = x + 1; y <= 14; ++y) {
            std::set<int> tail;
            for (std::int64_t z = std::max(y, stable) + 1; z <= 20; ++z)
                tail.insert(jockusch_fJ(x, y, z, o));
            CHECK(tail.size() <= 1);
        }
    }
}

TEST_CASE("oracle JSON")
{
    auto o = ApproxOracle::from_json(R"([{"element": 0, "enters_at": 5}, {"element": 3, "enters_at": 1}])");
    CHECK_FALSE(o.in(0, 4));
    CHECK(o.in(0, 5));
    CHECK(o.in(3, 1));
    CHECK_FALSE(o.in(1, 100));
    CHECK(o.stabilization(0) == 5);
    CHECK_THROWS(ApproxOracle::from_json("{}"));
    CHECK_THROWS(ApproxOracle::from_json(R"([{"element": 0}])"));
    CHECK_THROWS(ApproxOracle::from_json(R"([{"element": 0, "enters_at": 1}, {"element": 0, "enters_at": 2}])"));
    CHECK_THROWS(ApproxOracle::from_json("not json"));
}

TEST_CASE("tuple-type coloring")
{
    CHECK(tuple_type_range(2) == 7);
    CHECK(tuple_type_range(1) == 1);
    auto c = tuple_type_coloring(2);
    CHECK(colors_used(c, subsets_of(words_up_to(2), 2)).size() == 7);
    CHECK(colors_used(c, subsets_of(chain(5), 2)).size() == 2);
    CHECK(colors_used(c, subsets_of(minimizer_tree(8).nodes, 2)).size() == 3);
    CHECK_THROWS_AS(c({B("0")}), std::invalid_argument);
    CHECK_THROWS(c({B("0"), B("0")}));
    CHECK_THROWS(tuple_type_coloring(5));
}

TEST_CASE("tuple-type coloring on the minimizer tree matches the census")
{
    for (int n = 1; n <= 3; ++n) {
        auto used = colors_used(tuple_type_coloring(n), subsets_of(minimizer_tree(2 * n + 1).nodes, n)).size();
        CHECK(used == count_types(n, CountKind::TupMin, CountMethod::Minimizer).count);
    }
    auto used3 = colors_used(tuple_type_coloring(3), subsets_of(minimizer_tree(7).nodes, 3)).size();
    // published t_TT(3)
    WARN(used3 == 29);
}

TEST_CASE("products and constant colorings")
{
    auto p = product(f_lt_q_coloring(), constant_coloring(0));
    auto used = colors_used(p, subsets_of(words_up_to(2), 2));
    CHECK(used == std::set<Color>{{0, 0}, {1, 0}});
    CHECK(colors_used(constant_coloring(4, 3), subsets_of(words_up_to(2), 3)) == std::set<Color>{{4}});
    CHECK_THROWS(product(f_lt_q_coloring(), constant_coloring(0, 3)));
    // thread count does not matter
    auto fam = subsets_of(words_up_to(3), 2);
    CHECK(colors_used(tuple_type_coloring(2), fam, 1) == colors_used(tuple_type_coloring(2), fam, 3));
}

TEST_CASE("coloring specs")
{
    CHECK(parse_coloring_spec("f-lt-q")({B("0"), B("01")}) == Color{1});
    CHECK(parse_coloring_spec("devlin-f0")({B("e"), B("0")}) == Color{1});
    CHECK(parse_coloring_spec("tuple-type:2").arity == 2);
    CHECK(parse_coloring_spec("constant:3")({B("0"), B("1")}) == Color{3});
    auto p = parse_coloring_spec("product(f-lt-q,product(constant:1,devlin-f0))");
    CHECK(p({B("e"), B("0")}) == Color{0, 1, 1});
    CHECK_THROWS(parse_coloring_spec("nope"));
    CHECK_THROWS(parse_coloring_spec("constant:x"));
    CHECK_THROWS(parse_coloring_spec("jockusch:/nonexistent/oracle.json"));

    auto path = (std::filesystem::temp_directory_path() / "rf_test_oracle.json").string();
    {
        std::ofstream f(path);
        f << R"([{"element": 0, "enters_at": 5}])";
    }
    auto j = parse_coloring_spec("jockusch:" + path);
    CHECK(j({B("0000"), B("011111")}) == Color{0});
    std::filesystem::remove(path);
}

TEST_CASE("rank-least member of a two-sided set sees both f0 colors")
{
    // Finite stand-in for density: whenever the rank-least member of a set has
    // members on both sides of it under <_Q, both colors appear on its pairs.
    auto all = words_up_to(6);
    auto& g = oracle::rng();
    int tried = 0;
    auto f0 = devlin_f0_coloring();
    while (tried < 2000) {
        std::vector<BitString> s;
        for (int i = 0; i < 8 + static_cast<int>(g() % 8); ++i)
            s.push_back(all[g() % all.size()]);
        s = sorted_unique(s);
        if (s.size() < 8)
            continue;
        const auto& least = s.front();  // canonical order is rank order
        bool below = false, above = false;
        for (const auto& x : s) {
            below |= q_less(x, least);
            above |= q_less(least, x);
        }
        if (!below || !above)
            continue;
        ++tried;
        CHECK(colors_used(f0, subsets_of(s, 2)) == std::set<Color>{{0}, {1}});
    }
}
