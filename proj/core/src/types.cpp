#include "rf/types.hpp"

#include "type_kernel.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace rf {

std::vector<BitString> meet_closure(const std::vector<BitString>& s)
{
    std::vector<BitString> out = s;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            out.push_back(meet(s[i], s[j]));
    return sorted_unique(std::move(out));
}

std::vector<BitString> level_closure(const std::vector<BitString>& s)
{
    std::set<std::size_t> lengths;
    for (const auto& x : s)
        lengths.insert(x.size());
    std::vector<BitString> out;
    for (const auto& x : s)
        for (auto l : lengths)
            if (l <= x.size())
                out.push_back(x.prefix(l));
    return sorted_unique(std::move(out));
}

ClosedTree full_closure(const std::vector<BitString>& s)
{
    if (s.empty())
        throw std::invalid_argument("closure of an empty set");
    return ClosedTree{level_closure(meet_closure(s))};
}

std::string to_string(SigKind k)
{
    switch (k) {
    case SigKind::Embedding: return "embedding";
    case SigKind::Tuple: return "tuple";
    case SigKind::WeakTuple: return "weak-tuple";
    }
    return "?";
}

SigKind sig_kind_from_string(const std::string& s)
{
    if (s == "embedding") return SigKind::Embedding;
    if (s == "tuple") return SigKind::Tuple;
    if (s == "weak-tuple") return SigKind::WeakTuple;
    throw std::invalid_argument("unknown signature kind: " + s);
}

namespace {

void require_distinct(const std::vector<BitString>& tuple)
{
    auto u = sorted_unique(tuple);
    if (u.size() != tuple.size())
        throw std::invalid_argument("tuple has repeated elements");
}

std::string term(const FiniteTree& c, std::size_t v, const std::vector<BitString>& members, bool weak,
                 bool marks)
{
    std::string slot[2] = {"-", "-"};
    const auto& kids = c.children(v);
    const std::size_t len = c.node(v).size();
    for (auto k : kids) {
        int dir = c.node(k)[len] ? 1 : 0;
        if (weak && kids.size() == 1)
            dir = 0;
        slot[dir] = term(c, k, members, weak, marks);
    }
    std::string out;
    if (marks && std::binary_search(members.begin(), members.end(), c.node(v)))
        out += '*';
    out += '(' + slot[0] + ',' + slot[1] + ')';
    return out;
}

TypeSignature signature_of(const std::vector<BitString>& tuple, SigKind kind)
{
    require_distinct(tuple);
    if (tuple.empty())
        return {kind, "-"};
    FiniteTree c(full_closure(tuple).nodes);
    auto members = sorted_unique(tuple);
    return {kind, term(c, 0, members, kind == SigKind::WeakTuple, kind != SigKind::Embedding)};
}

// Parsed term: nodes in preorder.
struct TermNode {
    bool mark = false;
    int child[2] = {-1, -1};
};

struct TermParser {
    const std::string& s;
    std::size_t pos = 0;
    std::vector<TermNode> nodes;

    [[noreturn]] void fail() const
    {
        throw std::invalid_argument("malformed signature at offset " + std::to_string(pos) + ": " + s);
    }
    void expect(char c)
    {
        if (pos >= s.size() || s[pos] != c)
            fail();
        ++pos;
    }
    int parse_term()
    {
        int id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        if (pos < s.size() && s[pos] == '*') {
            nodes[static_cast<std::size_t>(id)].mark = true;
            ++pos;
        }
        expect('(');
        int a = parse_slot();
        expect(',');
        int b = parse_slot();
        expect(')');
        nodes[static_cast<std::size_t>(id)].child[0] = a;
        nodes[static_cast<std::size_t>(id)].child[1] = b;
        return id;
    }
    int parse_slot()
    {
        if (pos < s.size() && s[pos] == '-') {
            ++pos;
            return -1;
        }
        return parse_term();
    }
};

std::vector<TermNode> parse_body(const std::string& body)
{
    if (body == "-")
        return {};
    TermParser p{body, 0, {}};
    p.parse_term();
    if (p.pos != body.size())
        p.fail();
    return std::move(p.nodes);
}

void rep_walk(const std::vector<TermNode>& t, int v, const BitString& at, std::vector<BitString>& all,
              std::vector<BitString>& marked)
{
    all.push_back(at);
    if (t[static_cast<std::size_t>(v)].mark)
        marked.push_back(at);
    for (int b = 0; b < 2; ++b)
        if (int c = t[static_cast<std::size_t>(v)].child[b]; c >= 0)
            rep_walk(t, c, at.child(b == 1), all, marked);
}

}  // namespace

TypeSignature embedding_signature(const std::vector<BitString>& tuple)
{
    return signature_of(tuple, SigKind::Embedding);
}

TypeSignature tuple_signature(const std::vector<BitString>& tuple)
{
    return signature_of(tuple, SigKind::Tuple);
}

TypeSignature weak_signature(const std::vector<BitString>& tuple)
{
    return signature_of(tuple, SigKind::WeakTuple);
}

std::vector<BitString> representative(const TypeSignature& sig)
{
    auto t = parse_body(sig.body);
    if (t.empty())
        return {};
    std::vector<BitString> all, marked;
    rep_walk(t, 0, BitString{}, all, marked);
    if (sig.kind == SigKind::Embedding) {
        for (const auto& n : t)
            if (n.mark)
                throw std::invalid_argument("embedding signature carries marks");
        return all;
    }
    if (sig.kind == SigKind::WeakTuple)
        for (const auto& n : t)
            if (n.child[1] >= 0 && n.child[0] < 0)
                throw std::invalid_argument("weak signature has a single child in slot 1");
    return marked;
}

TypeSignature canonicalize(const TypeSignature& sig)
{
    auto t = parse_body(sig.body);
    if (t.empty())
        return {sig.kind, "-"};
    auto rep = representative(sig);
    if (sig.kind == SigKind::Embedding)
        return embedding_signature(rep);
    // A tuple type is generated by its marked nodes; every leaf must be one.
    for (const auto& n : t)
        if (n.child[0] < 0 && n.child[1] < 0 && !n.mark)
            throw std::invalid_argument("unmarked leaf in tuple signature: " + sig.body);
    auto again = signature_of(rep, sig.kind);
    if (again.body != sig.body)
        throw std::invalid_argument("signature is not the closure of its marked nodes: " + sig.body);
    return again;
}

WeakFlags classify_weak_type(const TypeSignature& sig)
{
    if (sig.kind == SigKind::Embedding)
        throw std::invalid_argument("weak-type predicates need a tuple signature");
    auto rep = representative(sig);
    WeakFlags f{true, true, true};
    for (std::size_t i = 0; i < rep.size(); ++i)
        for (std::size_t j = i + 1; j < rep.size(); ++j)
            if (rep[i].size() == rep[j].size())
                f.member_lengths_distinct = false;
    auto mc = meet_closure(rep);
    for (std::size_t i = 0; i + 1 < mc.size(); ++i)
        if (mc[i].size() == mc[i + 1].size())
            f.length_injective = false;
    auto members = sorted_unique(rep);
    for (std::size_t i = 0; i < rep.size(); ++i)
        for (std::size_t j = i + 1; j < rep.size(); ++j)
            if (!comparable(rep[i], rep[j]) &&
                std::binary_search(members.begin(), members.end(), meet(rep[i], rep[j])))
                f.meet_avoiding = false;
    return f;
}

std::string to_string(CountKind k)
{
    switch (k) {
    case CountKind::EmbAll: return "emb-all";
    case CountKind::TupAll: return "tup-all";
    case CountKind::EmbMin: return "emb-min";
    case CountKind::TupMin: return "tup-min";
    }
    return "?";
}

std::string to_string(CountMethod m)
{
    switch (m) {
    case CountMethod::Brute: return "brute";
    case CountMethod::Predicate: return "predicate";
    case CountMethod::Minimizer: return "minimizer";
    }
    return "?";
}

std::string to_string(LengthRule r)
{
    return r == LengthRule::Members ? "members" : "meet-closure";
}

LengthRule length_rule_from_string(const std::string& s)
{
    if (s == "members") return LengthRule::Members;
    if (s == "meet-closure") return LengthRule::MeetClosure;
    throw std::invalid_argument("unknown length rule: " + s);
}

CountKind count_kind_from_string(const std::string& s)
{
    if (s == "emb-all") return CountKind::EmbAll;
    if (s == "tup-all") return CountKind::TupAll;
    if (s == "emb-min") return CountKind::EmbMin;
    if (s == "tup-min") return CountKind::TupMin;
    throw std::invalid_argument("unknown count kind: " + s);
}

CountMethod count_method_from_string(const std::string& s)
{
    if (s == "brute") return CountMethod::Brute;
    if (s == "predicate") return CountMethod::Predicate;
    if (s == "minimizer") return CountMethod::Minimizer;
    throw std::invalid_argument("unknown count method: " + s);
}

// ---------------------------------------------------------------------------
// Census driver

namespace {

using detail::PackedSig;
using detail::PackedSigHash;
using detail::TupleClass;
using detail::Word;

constexpr int kMaxTuple = 8;
using Combo = std::array<std::uint16_t, kMaxTuple>;

// First tuple (in enumeration order) realizing each signature.
using FirstSeen = std::unordered_map<PackedSig, Combo, PackedSigHash>;

struct CensusMaps {
    FirstSeen emb, tup, min_emb, min_tup;
};

void note(FirstSeen& m, const PackedSig& s, const Combo& c)
{
    auto [it, fresh] = m.try_emplace(s, c);
    if (!fresh && c < it->second)
        it->second = c;
}

void merge_into(FirstSeen& into, const FirstSeen& from)
{
    for (const auto& [k, v] : from)
        note(into, k, v);
}

enum class Mode { Brute, Minimizer };

// make(combo, words) fills n words; returns false to skip the combo.
using WordMaker = std::function<bool(const Combo&, Word*)>;

CensusMaps run_census(int n, std::size_t domain, Mode mode, unsigned threads, const WordMaker& make,
                      LengthRule rule = LengthRule::Members)
{
    if (n > kMaxTuple)
        throw std::invalid_argument("tuple size too large for the census");
    threads = std::max(1u, threads);
    auto worker = [&](unsigned part) {
        CensusMaps maps;
        Combo c{};
        Word words[kMaxTuple];
        TupleClass cls;
        // Combinations in lex order; the first index selects the partition.
        std::function<void(int, std::size_t)> rec = [&](int pos, std::size_t from) {
            if (pos == n) {
                if (!make(c, words))
                    return;
                detail::classify(words, n, cls);
                if (mode == Mode::Brute) {
                    note(maps.emb, cls.emb, c);
                    note(maps.tup, cls.tup, c);
                    bool lengths_ok = rule == LengthRule::Members ? cls.member_lengths_distinct
                                                                  : cls.length_injective;
                    if (lengths_ok && cls.meet_avoiding) {
                        note(maps.min_emb, cls.weak_emb, c);
                        note(maps.min_tup, cls.weak, c);
                    }
                } else {
                    note(maps.min_emb, cls.emb, c);
                    note(maps.min_tup, cls.tup, c);
                    note(maps.emb, cls.weak, c);  // weak partition, for the coincidence check
                }
                return;
            }
            for (std::size_t i = from; i < domain; ++i) {
                if (pos == 0 && i % threads != part)
                    continue;
                c[static_cast<std::size_t>(pos)] = static_cast<std::uint16_t>(i);
                rec(pos + 1, i + 1);
            }
        };
        rec(0, 0);
        return maps;
    };
    CensusMaps total;
    if (threads == 1) {
        total = worker(0);
    } else {
        std::vector<std::future<CensusMaps>> jobs;
        for (unsigned p = 0; p < threads; ++p)
            jobs.push_back(std::async(std::launch::async, worker, p));
        for (auto& j : jobs) {
            auto m = j.get();
            merge_into(total.emb, m.emb);
            merge_into(total.tup, m.tup);
            merge_into(total.min_emb, m.min_emb);
            merge_into(total.min_tup, m.min_tup);
        }
    }
    return total;
}

std::vector<Word> brute_domain(int max_len)
{
    std::vector<Word> out;
    for (const auto& w : words_up_to(static_cast<std::size_t>(std::max(0, max_len))))
        out.push_back(detail::pack(w));
    return out;
}

CensusMaps brute_maps(int n, int max_len, unsigned threads, LengthRule rule)
{
    auto domain = brute_domain(max_len);
    return run_census(n, domain.size(), Mode::Brute, threads, [&](const Combo& c, Word* w) {
        for (int i = 0; i < n; ++i)
            w[i] = domain[c[static_cast<std::size_t>(i)]];
        return true;
    }, rule);
}

// Minimizer tree in address form. A node at level j is a word u of length j;
// its scaffold address doubles every letter into the block 0u(i). Only the
// relative order of scaffold lengths matters, and that order is the
// length-then-lex order of scaffold addresses.
struct Address {
    std::uint32_t bits = 0;  // bit i = letter i
    int len = 0;
    std::uint64_t key() const
    {
        // rank in length-then-lex order of addresses
        std::uint64_t v = 0;
        for (int i = 0; i < len; ++i)
            v = (v << 1) | ((bits >> i) & 1u);
        return ((std::uint64_t{1} << len) - 1) + v;
    }
    bool at(int i) const { return (bits >> i) & 1u; }
    bool operator==(const Address&) const = default;
};

Address scaffold_address(Word u)
{
    Address a;
    a.len = 2 * u.len;
    for (int i = 0; i < u.len; ++i)
        if ((u.bits >> i) & 1u)
            a.bits |= 1u << (2 * i + 1);
    return a;
}

bool address_prefix(const Address& a, const Address& b)
{
    if (a.len > b.len)
        return false;
    std::uint32_t m = a.len >= 32 ? ~0u : ((1u << a.len) - 1u);
    return (a.bits & m) == (b.bits & m);
}

Address address_meet(const Address& a, const Address& b)
{
    int m = std::min(a.len, b.len);
    std::uint32_t diff = a.bits ^ b.bits;
    int l = m;
    for (int i = 0; i < m; ++i)
        if ((diff >> i) & 1u) {
            l = i;
            break;
        }
    Address r;
    r.len = l;
    r.bits = a.bits & (l >= 32 ? ~0u : ((1u << l) - 1u));
    return r;
}

// Compressed words: positions are the scaffold lengths of the meet closure.
void model_words(const Address* members, int n, Word* out)
{
    Address m[kMaxTuple * kMaxTuple];
    int k = 0;
    auto add = [&](const Address& a) {
        for (int i = 0; i < k; ++i)
            if (m[i] == a)
                return;
        m[k++] = a;
    };
    for (int i = 0; i < n; ++i)
        add(members[i]);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            add(address_meet(members[i], members[j]));
    std::sort(m, m + k, [](const Address& a, const Address& b) { return a.key() < b.key(); });
    for (int i = 0; i < n; ++i) {
        Word w;
        for (int q = 0; q < k; ++q) {
            if (m[q].key() >= members[i].key())
                break;
            bool bit = m[q].len < members[i].len && address_prefix(m[q], members[i]) && members[i].at(m[q].len);
            if (bit)
                w.bits |= 1u << w.len;
            ++w.len;
        }
        out[i] = w;
    }
}

CensusMaps minimizer_maps(int n, int depth, unsigned threads)
{
    std::vector<Word> nodes;
    for (const auto& u : words_up_to(static_cast<std::size_t>(depth - 1)))
        nodes.push_back(detail::pack(u));
    std::vector<Address> addr;
    for (auto u : nodes)
        addr.push_back(scaffold_address(u));
    // Types are invariant under moving the tuple into another cone, so only
    // tuples whose meet is the root are visited.
    return run_census(n, nodes.size(), Mode::Minimizer, threads, [&](const Combo& c, Word* w) {
        if (n >= 2) {
            bool has_root = false, has0 = false, has1 = false;
            for (int i = 0; i < n; ++i) {
                Word u = nodes[c[static_cast<std::size_t>(i)]];
                if (u.len == 0)
                    has_root = true;
                else if (u.bits & 1u)
                    has1 = true;
                else
                    has0 = true;
            }
            if (!has_root && !(has0 && has1))
                return false;
        } else if (nodes[c[0]].len != 0) {
            return false;
        }
        Address a[kMaxTuple];
        for (int i = 0; i < n; ++i)
            a[i] = addr[c[static_cast<std::size_t>(i)]];
        model_words(a, n, w);
        return true;
    });
}

}  // namespace

CensusRow census_row_with_bound(int n, int max_len, unsigned threads, LengthRule rule)
{
    if (n < 0)
        throw std::invalid_argument("negative tuple size");
    if (n == 0)
        return {0, 1, 1, 1, 1};
    auto m = brute_maps(n, max_len, threads, rule);
    return {n, m.emb.size(), m.tup.size(), m.min_emb.size(), m.min_tup.size()};
}

CensusRow census_row(int n, unsigned threads, LengthRule rule)
{
    return census_row_with_bound(n, std::max(0, 2 * n - 2), threads, rule);
}

CensusRow minimizer_census(int n, int depth, unsigned threads)
{
    if (n < 0)
        throw std::invalid_argument("negative tuple size");
    if (depth < 1)
        throw std::invalid_argument("minimizer depth must be >= 1");
    if (n == 0)
        return {0, 0, 0, 1, 1};
    auto m = minimizer_maps(n, depth, threads);
    // emb/tup columns are unused here; emb carries the weak partition size.
    return {n, m.emb.size(), 0, m.min_emb.size(), m.min_tup.size()};
}

namespace {

int minimizer_depth(int n) { return std::max(1, 2 * n - 1); }

void check_method(CountKind kind, CountMethod method)
{
    bool min_kind = kind == CountKind::EmbMin || kind == CountKind::TupMin;
    if (min_kind == (method == CountMethod::Brute))
        throw std::invalid_argument("method " + to_string(method) + " does not apply to " + to_string(kind));
}

}  // namespace

TypeCount count_types(int n, CountKind kind, CountMethod method, unsigned threads, LengthRule rule)
{
    check_method(kind, method);
    auto t0 = std::chrono::steady_clock::now();
    TypeCount r{n, kind, method, 0, {}};
    if (method == CountMethod::Minimizer) {
        auto row = minimizer_census(n, minimizer_depth(n), threads);
        r.count = kind == CountKind::EmbMin ? row.emb_min : row.tup_min;
    } else {
        auto row = census_row(n, threads, rule);
        switch (kind) {
        case CountKind::EmbAll: r.count = row.emb_all; break;
        case CountKind::TupAll: r.count = row.tup_all; break;
        case CountKind::EmbMin: r.count = row.emb_min; break;
        case CountKind::TupMin: r.count = row.tup_min; break;
        }
    }
    r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    return r;
}

std::vector<CatalogEntry> type_catalog(int n, CountKind kind, CountMethod method, unsigned threads,
                                       LengthRule rule)
{
    check_method(kind, method);
    std::vector<CatalogEntry> out;
    const SigKind sk = (kind == CountKind::EmbAll || kind == CountKind::EmbMin)
                           ? SigKind::Embedding
                           : (method == CountMethod::Predicate ? SigKind::WeakTuple : SigKind::Tuple);
    if (n == 0)
        return {CatalogEntry{{sk, "-"}, {}}};
    std::vector<std::pair<std::string, Combo>> rows;
    std::function<std::vector<BitString>(const Combo&)> tuple_of;
    if (method == CountMethod::Minimizer) {
        int depth = minimizer_depth(n);
        std::vector<Address> addr;
        for (const auto& u : words_up_to(static_cast<std::size_t>(depth - 1)))
            addr.push_back(scaffold_address(detail::pack(u)));
        tuple_of = [addr, n](const Combo& c) {
            Address a[kMaxTuple];
            Word w[kMaxTuple];
            for (int i = 0; i < n; ++i)
                a[i] = addr[c[static_cast<std::size_t>(i)]];
            model_words(a, n, w);
            std::vector<BitString> t;
            for (int i = 0; i < n; ++i)
                t.push_back(detail::unpack(w[i]));
            return t;
        };
        auto m = minimizer_maps(n, depth, threads);
        const auto& src = kind == CountKind::EmbMin ? m.min_emb : m.min_tup;
        for (const auto& [k, c] : src) {
            auto t = tuple_of(c);
            rows.emplace_back(signature_of(t, sk).body, c);
        }
    } else {
        auto domain = words_up_to(static_cast<std::size_t>(std::max(0, 2 * n - 2)));
        tuple_of = [domain, n](const Combo& c) {
            std::vector<BitString> t;
            for (int i = 0; i < n; ++i)
                t.push_back(domain[c[static_cast<std::size_t>(i)]]);
            return t;
        };
        auto m = brute_maps(n, std::max(0, 2 * n - 2), threads, rule);
        const FirstSeen* src = nullptr;
        switch (kind) {
        case CountKind::EmbAll: src = &m.emb; break;
        case CountKind::TupAll: src = &m.tup; break;
        case CountKind::EmbMin: src = &m.min_emb; break;
        case CountKind::TupMin: src = &m.min_tup; break;
        }
        for (const auto& [k, c] : *src) {
            auto t = tuple_of(c);
            std::string body = signature_of(t, method == CountMethod::Predicate ? SigKind::WeakTuple : sk).body;
            if (kind == CountKind::EmbMin)
                body.erase(std::remove(body.begin(), body.end(), '*'), body.end());
            rows.emplace_back(body, c);
        }
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [body, c] : rows) {
        TypeSignature sig{sk, body};
        std::vector<BitString> rep;
        if (method == CountMethod::Predicate) {
            // Zero-normalized generating tuple of the weak type.
            auto t = tuple_of(c);
            rep = representative(weak_signature(t));
        } else {
            rep = tuple_of(c);
        }
        out.push_back({std::move(sig), std::move(rep)});
    }
    return out;
}

BigInt embedding_types_of_height_recurrence(int h)
{
    if (h < 0)
        throw std::invalid_argument("negative height");
    std::vector<BigInt> e{1, 1};
    while (static_cast<int>(e.size()) <= h) {
        std::size_t n = e.size() - 1;
        BigInt below = 0;
        for (std::size_t i = 0; i < n; ++i)
            below += e[i];
        e.push_back(2 * e[n] * below + e[n] * e[n]);
    }
    return e[static_cast<std::size_t>(h)];
}

std::uint64_t embedding_types_of_height_direct(int h)
{
    if (h < 0 || h > 5)
        throw std::invalid_argument("direct shape enumeration supports heights 0..5");
    if (h == 0)
        return 1;  // the empty tree
    // Prefix-closed sets containing the root inside 2^{<h}, one per shape.
    std::unordered_set<std::string> seen;
    std::vector<BitString> cur{BitString{}};
    std::function<void(std::size_t)> grow = [&](std::size_t frontier_from) {
        // Each node in cur from frontier_from decides which children to add.
        std::vector<BitString> frontier(cur.begin() + static_cast<std::ptrdiff_t>(frontier_from), cur.end());
        std::vector<BitString> slots;
        for (const auto& f : frontier)
            if (static_cast<int>(f.size()) + 1 < h) {
                slots.push_back(f.child(false));
                slots.push_back(f.child(true));
            }
        const std::size_t k = slots.size();
        if (k == 0) {
            int height = 0;
            for (const auto& x : cur)
                height = std::max(height, static_cast<int>(x.size()) + 1);
            if (height == h)
                seen.insert(embedding_signature(cur).body);
            return;
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            std::size_t saved = cur.size();
            for (std::size_t i = 0; i < k; ++i)
                if ((mask >> i) & 1u)
                    cur.push_back(slots[i]);
            if (cur.size() == saved) {
                int height = 0;
                for (const auto& x : cur)
                    height = std::max(height, static_cast<int>(x.size()) + 1);
                if (height == h)
                    seen.insert(embedding_signature(cur).body);
            } else {
                grow(saved);
            }
            cur.resize(saved);
        }
    };
    grow(0);
    return seen.size();
}

std::vector<TypeSignature> types_realized(const std::vector<BitString>& nodes, int n, SigKind kind)
{
    std::set<TypeSignature> seen;
    std::vector<BitString> tuple;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(tuple.size()) == n) {
            seen.insert(signature_of(tuple, kind));
            return;
        }
        for (std::size_t i = from; i < nodes.size(); ++i) {
            tuple.push_back(nodes[i]);
            rec(i + 1);
            tuple.pop_back();
        }
    };
    rec(0);
    return {seen.begin(), seen.end()};
}

}  // namespace rf
