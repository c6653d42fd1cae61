#include "oracle.hpp"

#include "rf/minimizer.hpp"
#include "rf/types.hpp"

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

std::vector<std::vector<BitString>> subsets(const std::vector<BitString>& nodes, int n)
{
    std::vector<std::vector<BitString>> out;
    std::vector<int> pick(n);
    for (int i = 0; i < n; ++i)
        pick[i] = i;
    const int N = static_cast<int>(nodes.size());
    if (n > N)
        return out;
    while (true) {
        std::vector<BitString> t;
        for (int i : pick)
            t.push_back(nodes[i]);
        out.push_back(t);
        int i = n - 1;
        while (i >= 0 && pick[i] == N - n + i)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < n; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return out;
}

// Minimizer conditions re-derived with plain strings.
bool minimizer_conditions_hold(const std::vector<BitString>& nodes)
{
    std::set<std::string> s;
    for (const auto& x : nodes)
        s.insert(x.digits());
    auto mc = oracle::meet_closure(s);
    std::set<std::size_t> lens;
    for (const auto& x : mc)
        if (!lens.insert(x.size()).second)
            return false;
    for (const auto& a : s)
        for (const auto& b : s)
            if (a.size() < b.size() && oracle::prefix(a, b) && !oracle::prefix(a + "0", b))
                return false;
    for (const auto& a : mc)
        for (const auto& b : mc)
            if (a.size() < b.size() && !oracle::prefix(a, b) && b[a.size()] != '0')
                return false;
    return true;
}

}  // namespace

TEST_CASE("closure examples")
{
    auto c = full_closure(words({"00", "010", "1"}));
    CHECK(c.nodes == words({"e", "0", "1", "00", "01", "010"}));
    CHECK(full_closure(words({"0"})).nodes == words({"0"}));
    CHECK(full_closure(words({"0", "01"})).nodes == words({"0", "01"}));
    CHECK(meet_closure(words({"00", "01"})) == words({"0", "00", "01"}));
}

TEST_CASE("closure is a fixed point and a superset")
{
    auto all = words_up_to(4);
    auto& g = oracle::rng();
    for (int i = 0; i < 500; ++i) {
        std::vector<BitString> s;
        for (int j = 0, n = 1 + static_cast<int>(g() % 4); j < n; ++j)
            s.push_back(all[g() % all.size()]);
        s = sorted_unique(s);
        auto c = full_closure(s).nodes;
        CHECK(full_closure(c).nodes == c);
        for (const auto& x : s)
            CHECK(std::find(c.begin(), c.end(), x) != c.end());
        // meet- and level-closed
        for (const auto& a : c)
            for (const auto& b : c) {
                CHECK(std::find(c.begin(), c.end(), meet(a, b)) != c.end());
                if (a.size() <= b.size())
                    CHECK(std::find(c.begin(), c.end(), b.prefix(a.size())) != c.end());
            }
    }
}

TEST_CASE("signature examples")
{
    CHECK(embedding_signature(words({"0", "00"})) != embedding_signature(words({"0", "01"})));
    CHECK(tuple_signature(words({"0", "00"})) != tuple_signature(words({"0", "01"})));
    CHECK(weak_signature(words({"0", "00"})) == weak_signature(words({"0", "01"})));
    CHECK(tuple_signature(words({"0", "1"})).body == "(*(-,-),*(-,-))");
    CHECK(tuple_signature(words({"0", "1", "e"})).body == "*(*(-,-),*(-,-))");
    CHECK(embedding_signature(words({"0", "1"})).body == "((-,-),(-,-))");
    CHECK_THROWS_AS(tuple_signature(words({"0", "0"})), std::invalid_argument);
}

TEST_CASE("weak flags")
{
    auto f = classify_weak_type(weak_signature(words({"0", "1"})));
    CHECK_FALSE(f.length_injective);
    CHECK(f.meet_avoiding);
    f = classify_weak_type(weak_signature(words({"0", "01"})));
    CHECK(f.length_injective);
    CHECK(f.meet_avoiding);
    CHECK_FALSE(classify_weak_type(weak_signature(words({"0", "1", "e"}))).meet_avoiding);
    CHECK_THROWS(classify_weak_type(embedding_signature(words({"0"}))));
}

TEST_CASE("signatures: canonical, permutation invariant, representatives realize them")
{
    for (int n = 1; n <= 3; ++n) {
        for (const auto& e : type_catalog(n, CountKind::TupAll, CountMethod::Brute)) {
            CHECK(canonicalize(e.signature) == e.signature);
            auto t = e.representative;
            CHECK(tuple_signature(t) == e.signature);
            std::sort(t.begin(), t.end());
            do {
                CHECK(tuple_signature(t) == e.signature);
            } while (std::next_permutation(t.begin(), t.end()));
            CHECK(tuple_signature(representative(e.signature)) == e.signature);
        }
    }
    CHECK_THROWS(canonicalize(TypeSignature{SigKind::Tuple, "(*(-,-)"}));
}

TEST_CASE("count examples")
{
    CHECK(count_types(2, CountKind::TupAll, CountMethod::Brute).count == 7);
    CHECK(count_types(3, CountKind::EmbAll, CountMethod::Brute).count == 345);
    CHECK(count_types(2, CountKind::TupMin, CountMethod::Predicate).count == 3);
    CHECK(count_types(0, CountKind::EmbAll, CountMethod::Brute).count == 1);
    CHECK(count_types(4, CountKind::TupMin, CountMethod::Predicate).count == 635);
    CHECK_THROWS_AS(count_types(2, CountKind::TupMin, CountMethod::Brute), std::invalid_argument);
    CHECK_THROWS_AS(count_types(2, CountKind::TupAll, CountMethod::Minimizer), std::invalid_argument);
}

TEST_CASE("table rows 0..3")
{
    CHECK(census_row(0) == CensusRow{0, 1, 1, 1, 1});
    CHECK(census_row(1) == CensusRow{1, 1, 1, 1, 1});
    CHECK(census_row(2) == CensusRow{2, 7, 7, 3, 3});
    CHECK(census_row(3) == CensusRow{3, 345, 369, 27, 29});
    CHECK(census_row(3, 3) == census_row(3, 1));
}

TEST_CASE("brute domain self-test: longer words add no types")
{
    for (int n = 1; n <= 3; ++n) {
        auto a = census_row(n);
        auto b = census_row_with_bound(n, 2 * n);
        CHECK(a.emb_all == b.emb_all);
        CHECK(a.tup_all == b.tup_all);
    }
}

TEST_CASE("predicate with full length injectivity agrees with the minimizer")
{
    for (int n = 0; n <= 4; ++n) {
        auto p = count_types(n, CountKind::TupMin, CountMethod::Predicate, 1, LengthRule::MeetClosure).count;
        auto m = count_types(n, CountKind::TupMin, CountMethod::Minimizer).count;
        CHECK_MESSAGE(p == m, "n = ", n);
        auto pe = count_types(n, CountKind::EmbMin, CountMethod::Predicate, 1, LengthRule::MeetClosure).count;
        auto me = count_types(n, CountKind::EmbMin, CountMethod::Minimizer).count;
        CHECK_MESSAGE(pe == me, "n = ", n);
    }
    // depth guard for the minimizer census
    for (int n = 1; n <= 3; ++n)
        CHECK(minimizer_census(n, 2 * n - 1) == minimizer_census(n, 2 * n + 1));
}

TEST_CASE("minimizer tree conditions")
{
    for (int d = 1; d <= 8; ++d) {
        auto t = minimizer_tree(d);
        CHECK(t.nodes.size() == (std::size_t{1} << d) - 1);
        auto r = validate_minimizer(t.nodes);
        CHECK_MESSAGE(r.ok(), "depth ", d);
        CHECK(minimizer_conditions_hold(t.nodes));
    }
    CHECK_THROWS(minimizer_tree(0));
    // the full binary tree breaks condition (1)
    CHECK_FALSE(validate_minimizer(words_up_to(2)).ok());
    CHECK_FALSE(minimizer_conditions_hold(words_up_to(2)));
}

TEST_CASE("types realized in the minimizer tree")
{
    CHECK(types_realized(minimizer_tree(4).nodes, 2, SigKind::Tuple).size() == 3);
    auto triples = types_realized(minimizer_tree(6).nodes, 3, SigKind::Tuple).size();
    CHECK(triples == count_types(3, CountKind::TupMin, CountMethod::Minimizer).count);
    // published t_TT(3)
    WARN(triples == 29);
}

TEST_CASE("tuple and weak types coincide on the minimizer tree")
{
    auto nodes = minimizer_tree(5).nodes;
    for (int n = 1; n <= 3; ++n) {
        std::map<std::string, std::string> t2w, w2t;
        bool ok = true;
        for (const auto& t : subsets(nodes, n)) {
            auto ts = tuple_signature(t).body, ws = weak_signature(t).body;
            ok &= t2w.emplace(ts, ws).first->second == ws;
            ok &= w2t.emplace(ws, ts).first->second == ts;
            auto f = classify_weak_type(weak_signature(t));
            ok &= f.length_injective && f.meet_avoiding;
        }
        CHECK_MESSAGE(ok, "n = ", n);
    }
}

TEST_CASE("every length-injective meet-avoiding weak type is realized in perfect prefixes")
{
    for (int n = 1; n <= 3; ++n) {
        std::set<TypeSignature> wanted;
        for (const auto& e : type_catalog(n, CountKind::TupAll, CountMethod::Brute)) {
            auto w = weak_signature(e.representative);
            auto f = classify_weak_type(w);
            if (f.length_injective && f.meet_avoiding)
                wanted.insert(w);
        }
        auto in_full = types_realized(words_up_to(2 * n), n, SigKind::WeakTuple);
        auto in_min = types_realized(minimizer_tree(2 * n + 1).nodes, n, SigKind::WeakTuple);
        std::set<TypeSignature> full(in_full.begin(), in_full.end()), mini(in_min.begin(), in_min.end());
        for (const auto& w : wanted) {
            CHECK(full.count(w) == 1);
            CHECK(mini.count(w) == 1);
        }
        CHECK(mini.size() == wanted.size());
    }
}

TEST_CASE("exactly one weak type of pairwise comparable strings")
{
    for (int n = 1; n <= 4; ++n) {
        std::set<TypeSignature> weak, strong;
        for (const auto& top : words_up_to(static_cast<std::size_t>(2 * n - 2))) {
            if (static_cast<int>(top.size()) + 1 < n)
                continue;
            // choose n-1 proper prefix lengths of top
            for (const auto& lens : increasing_sequences(n - 1, static_cast<int>(top.size()))) {
                std::vector<BitString> chain{top};
                for (int l : lens)
                    chain.push_back(top.prefix(static_cast<std::size_t>(l)));
                weak.insert(weak_signature(chain));
                strong.insert(tuple_signature(chain));
            }
        }
        CHECK_MESSAGE(weak.size() == 1, "n = ", n);
        if (n == 2)
            CHECK(strong.size() == 2);
    }
}

TEST_CASE("height recurrence")
{
    CHECK(embedding_types_of_height_recurrence(0) == 1);
    CHECK(embedding_types_of_height_recurrence(1) == 1);
    CHECK(embedding_types_of_height_recurrence(2) == 3);
    CHECK(embedding_types_of_height_recurrence(3) == 21);
    CHECK(embedding_types_of_height_recurrence(4) == 651);
    for (int h = 0; h <= 4; ++h)
        CHECK(embedding_types_of_height_recurrence(h) == embedding_types_of_height_direct(h));
}
