#include "rf/colorings.hpp"

#include "rf/types.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace rf {

std::uint64_t length_lex_rank(const BitString& s)
{
    if (s.size() >= 63)
        throw std::out_of_range("word too long to rank");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        v = v << 1 | (s[i] ? 1u : 0u);
    return ((std::uint64_t{1} << s.size()) - 1) + v;
}

EnumOrder EnumOrder::length_lex()
{
    return EnumOrder{length_lex_rank};
}

EnumOrder EnumOrder::from_table(std::map<BitString, std::uint64_t> ranks)
{
    std::set<std::uint64_t> seen;
    for (const auto& [w, r] : ranks)
        if (!seen.insert(r).second)
            throw std::invalid_argument("rank " + std::to_string(r) + " used twice");
    auto shared = std::make_shared<const std::map<BitString, std::uint64_t>>(std::move(ranks));
    return EnumOrder{[shared](const BitString& s) {
        auto it = shared->find(s);
        if (it == shared->end())
            throw std::out_of_range("no rank for " + s.str());
        return it->second;
    }};
}

ApproxOracle ApproxOracle::from_entries(std::map<std::int64_t, std::int64_t> enters_at)
{
    auto shared = std::make_shared<const std::map<std::int64_t, std::int64_t>>(std::move(enters_at));
    ApproxOracle o;
    o.in = [shared](std::int64_t e, std::int64_t s) {
        auto it = shared->find(e);
        return it != shared->end() && it->second <= s;
    };
    o.stabilization = [shared](std::int64_t e) -> std::int64_t {
        auto it = shared->find(e);
        return it == shared->end() ? 0 : it->second;
    };
    return o;
}

ApproxOracle ApproxOracle::from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("oracle: ") + e.what());
    }
    if (!j.is_array())
        throw std::invalid_argument("oracle: expected an array of {element, enters_at}");
    std::map<std::int64_t, std::int64_t> m;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("element") || !e.contains("enters_at") ||
            !e["element"].is_number_integer() || !e["enters_at"].is_number_integer())
            throw std::invalid_argument("oracle: each entry needs integer element and enters_at");
        auto el = e["element"].get<std::int64_t>();
        auto st = e["enters_at"].get<std::int64_t>();
        if (el < 0 || st < 0)
            throw std::invalid_argument("oracle: negative element or stage");
        if (!m.emplace(el, st).second)
            throw std::invalid_argument("oracle: element " + std::to_string(el) + " listed twice");
    }
    return from_entries(std::move(m));
}

ApproxOracle ApproxOracle::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read oracle file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

namespace {

// (smaller, larger) under <_Q.
std::pair<const BitString*, const BitString*> orient(const BitString& a, const BitString& b)
{
    if (a == b)
        throw std::invalid_argument("pair colorings need distinct strings, got " + a.str() + " twice");
    return q_less(a, b) ? std::pair{&a, &b} : std::pair{&b, &a};
}

void need_arity(const std::vector<BitString>& t, std::size_t n)
{
    if (t.size() != n)
        throw std::invalid_argument("expected a tuple of size " + std::to_string(n) + ", got " +
                                    std::to_string(t.size()));
}

}  // namespace

int f_lt_q(const BitString& a, const BitString& b)
{
    auto [lo, hi] = orient(a, b);
    return lo->size() < hi->size() ? 1 : 0;
}

int devlin_f0(const BitString& a, const BitString& b, const EnumOrder& e)
{
    auto [lo, hi] = orient(a, b);
    return e.rank(*lo) < e.rank(*hi) ? 0 : 1;
}

int jockusch_fJ(std::int64_t x, std::int64_t y, std::int64_t z, const ApproxOracle& o)
{
    if (!(0 <= x && x < y && y < z))
        throw std::invalid_argument("jockusch_fJ needs 0 <= x < y < z");
    for (std::int64_t e = 0; e < x; ++e)
        if (o.in(e, y) != o.in(e, z))
            return 0;
    return 1;
}

int jockusch_fJ(const BitString& a, const BitString& b, const ApproxOracle& o)
{
    auto x = static_cast<std::int64_t>(meet_length(a, b));
    auto y = static_cast<std::int64_t>(std::min(a.size(), b.size()));
    auto z = static_cast<std::int64_t>(std::max(a.size(), b.size()));
    return jockusch_fJ(x, y, z, o);
}

Color Coloring::operator()(const std::vector<BitString>& tuple) const
{
    need_arity(tuple, static_cast<std::size_t>(arity));
    return fn(tuple);
}

Coloring f_lt_q_coloring()
{
    return {"f-lt-q", 2, [](const std::vector<BitString>& t) { return Color{f_lt_q(t[0], t[1])}; }};
}

Coloring devlin_f0_coloring(EnumOrder e)
{
    return {"devlin-f0", 2, [e = std::move(e)](const std::vector<BitString>& t) {
                return Color{devlin_f0(t[0], t[1], e)};
            }};
}

Coloring jockusch_coloring(ApproxOracle o)
{
    return {"jockusch", 2, [o = std::move(o)](const std::vector<BitString>& t) {
                return Color{jockusch_fJ(t[0], t[1], o)};
            }};
}

Coloring constant_coloring(int c, int arity)
{
    if (arity < 1)
        throw std::invalid_argument("arity must be >= 1");
    return {"constant:" + std::to_string(c), arity, [c](const std::vector<BitString>&) { return Color{c}; }};
}

namespace {

using TypeIndex = std::map<std::string, int>;

std::shared_ptr<const TypeIndex> type_index(int n)
{
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const TypeIndex>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    auto idx = std::make_shared<TypeIndex>();
    int i = 0;
    for (const auto& e : type_catalog(n, CountKind::TupAll, CountMethod::Brute))
        idx->emplace(e.signature.body, i++);
    cache.emplace(n, idx);
    return idx;
}

}  // namespace

std::size_t tuple_type_range(int n)
{
    return type_index(n)->size();
}

Coloring tuple_type_coloring(int n)
{
    if (n < 1 || n > 4)
        throw std::invalid_argument("tuple-type coloring supports 1 <= n <= 4");
    auto idx = type_index(n);
    return {"tuple-type:" + std::to_string(n), n, [idx](const std::vector<BitString>& t) {
                auto sig = tuple_signature(t);
                auto it = idx->find(sig.body);
                if (it == idx->end())
                    throw std::logic_error("tuple type " + sig.body + " missing from the catalog");
                return Color{it->second};
            }};
}

Coloring product(const Coloring& a, const Coloring& b)
{
    if (a.arity != b.arity)
        throw std::invalid_argument("product of colorings with arities " + std::to_string(a.arity) + " and " +
                                    std::to_string(b.arity));
    return {"product(" + a.name + "," + b.name + ")", a.arity, [a, b](const std::vector<BitString>& t) {
                auto x = a.fn(t);
                auto y = b.fn(t);
                x.insert(x.end(), y.begin(), y.end());
                return x;
            }};
}

Coloring parse_coloring_spec(const std::string& spec)
{
    auto starts = [&](std::string_view p) { return spec.rfind(p, 0) == 0; };
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw std::invalid_argument("bad number in coloring spec: " + spec);
        return v;
    };
    if (spec == "f-lt-q")
        return f_lt_q_coloring();
    if (spec == "devlin-f0")
        return devlin_f0_coloring();
    if (starts("tuple-type:"))
        return tuple_type_coloring(to_int(spec.substr(11)));
    if (starts("constant:"))
        return constant_coloring(to_int(spec.substr(9)));
    if (starts("jockusch:"))
        return jockusch_coloring(ApproxOracle::from_file(spec.substr(9)));
    if (starts("product(") && spec.back() == ')') {
        auto inner = spec.substr(8, spec.size() - 9);
        int depth = 0;
        for (std::size_t i = 0; i < inner.size(); ++i) {
            if (inner[i] == '(')
                ++depth;
            else if (inner[i] == ')')
                --depth;
            else if (inner[i] == ',' && depth == 0)
                return product(parse_coloring_spec(inner.substr(0, i)), parse_coloring_spec(inner.substr(i + 1)));
        }
    }
    throw std::invalid_argument("unknown coloring spec: " + spec);
}

std::vector<std::vector<BitString>> subsets_of(const std::vector<BitString>& nodes, int n)
{
    auto sorted = sorted_unique(nodes);
    std::vector<std::vector<BitString>> out;
    if (n < 0 || static_cast<std::size_t>(n) > sorted.size())
        return out;
    std::vector<std::size_t> pick(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < pick.size(); ++i)
        pick[i] = i;
    const std::size_t N = sorted.size();
    while (true) {
        std::vector<BitString> t;
        for (auto i : pick)
            t.push_back(sorted[i]);
        out.push_back(std::move(t));
        std::size_t i = pick.size();
        while (i > 0 && pick[i - 1] == N - pick.size() + i - 1)
            --i;
        if (i == 0)
            break;
        ++pick[i - 1];
        for (std::size_t j = i; j < pick.size(); ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return out;
}

std::set<Color> colors_used(const Coloring& c, const std::vector<std::vector<BitString>>& family, unsigned threads)
{
    threads = std::max(1u, threads);
    auto part = [&](unsigned w) {
        std::set<Color> s;
        for (std::size_t i = w; i < family.size(); i += threads)
            s.insert(c(family[i]));
        return s;
    };
    if (threads == 1)
        return part(0);
    std::vector<std::future<std::set<Color>>> jobs;
    for (unsigned w = 0; w < threads; ++w)
        jobs.push_back(std::async(std::launch::async, part, w));
    std::set<Color> out;
    for (auto& j : jobs)
        out.merge(j.get());
    return out;
}

}  // namespace rf
