#include "type_kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace rf::detail {

Word pack(const BitString& s)
{
    if (s.size() > 31)
        throw std::length_error("word too long for the packed kernel");
    Word w;
    w.len = static_cast<std::uint8_t>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i])
            w.bits |= 1u << i;
    return w;
}

BitString unpack(Word w)
{
    BitString s;
    for (int i = 0; i < w.len; ++i)
        s.push_back((w.bits >> i) & 1u);
    return s;
}

namespace {

constexpr int kMaxNodes = 64;

inline std::uint32_t mask(int len) { return len >= 32 ? ~0u : ((1u << len) - 1u); }

inline int meet_len(Word a, Word b)
{
    int m = std::min(a.len, b.len);
    std::uint32_t diff = (a.bits ^ b.bits) & mask(m);
    return diff ? std::min(m, __builtin_ctz(diff)) : m;
}

struct Node {
    std::uint32_t bits;
    std::int8_t level;
    std::int8_t child[2];
    bool mark;
};

struct Emitter {
    PackedSig sig;
    void put(unsigned code)
    {
        if (sig.nbits + 3 > 192)
            throw std::length_error("closure too large for packed signature");
        for (int b = 0; b < 3; ++b, ++sig.nbits)
            if ((code >> b) & 1u)
                sig.w[sig.nbits / 64] |= std::uint64_t{1} << (sig.nbits % 64);
    }
};

void emit(const Node* nodes, int v, bool weak, bool marks, Emitter& e)
{
    const Node& n = nodes[v];
    int c0 = n.child[0], c1 = n.child[1];
    bool has0 = c0 >= 0, has1 = c1 >= 0;
    if (weak && has1 && !has0) {
        has0 = true;
        has1 = false;
        c0 = c1;
        c1 = -1;
    }
    e.put((has0 ? 1u : 0u) | (has1 ? 2u : 0u) | ((marks && n.mark) ? 4u : 0u));
    if (has0)
        emit(nodes, c0, weak, marks, e);
    if (has1)
        emit(nodes, c1, weak, marks, e);
}

}  // namespace

void classify(const Word* words, int n, TupleClass& out)
{
    int lens[64];
    int k = 0;
    for (int i = 0; i < n; ++i) {
        lens[k++] = words[i].len;
        for (int j = i + 1; j < n; ++j)
            lens[k++] = meet_len(words[i], words[j]);
    }
    std::sort(lens, lens + k);
    k = static_cast<int>(std::unique(lens, lens + k) - lens);

    Node nodes[kMaxNodes];
    int count = 0;
    int start[33];
    for (int lv = 0; lv < k; ++lv) {
        start[lv] = count;
        const int L = lens[lv];
        const std::uint32_t m = mask(L);
        for (int i = 0; i < n; ++i) {
            if (words[i].len < L)
                continue;
            std::uint32_t p = words[i].bits & m;
            int found = -1;
            for (int q = start[lv]; q < count; ++q)
                if (nodes[q].bits == p) {
                    found = q;
                    break;
                }
            if (found < 0) {
                if (count == kMaxNodes)
                    throw std::length_error("closure too large for packed kernel");
                found = count++;
                nodes[found] = Node{p, static_cast<std::int8_t>(lv), {-1, -1}, false};
            }
            if (words[i].len == L)
                nodes[found].mark = true;
        }
        if (lv > 0) {
            const int P = lens[lv - 1];
            const std::uint32_t pm = mask(P);
            for (int q = start[lv]; q < count; ++q)
                for (int r = start[lv - 1]; r < start[lv]; ++r)
                    if (nodes[r].bits == (nodes[q].bits & pm)) {
                        nodes[r].child[(nodes[q].bits >> P) & 1u] = static_cast<std::int8_t>(q);
                        break;
                    }
        }
    }
    start[k] = count;

    out.length_injective = true;
    out.meet_avoiding = true;
    out.member_lengths_distinct = true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (words[i].len == words[j].len)
                out.member_lengths_distinct = false;
    for (int lv = 0; lv < k; ++lv) {
        int special = 0;
        for (int q = start[lv]; q < start[lv + 1]; ++q) {
            bool branching = nodes[q].child[0] >= 0 && nodes[q].child[1] >= 0;
            if (branching || nodes[q].mark)
                ++special;
            if (branching && nodes[q].mark)
                out.meet_avoiding = false;
        }
        if (special > 1)
            out.length_injective = false;
    }

    Emitter e1, e2, e3, e4;
    emit(nodes, 0, false, false, e1);
    emit(nodes, 0, false, true, e2);
    emit(nodes, 0, true, true, e3);
    emit(nodes, 0, true, false, e4);
    out.emb = e1.sig;
    out.tup = e2.sig;
    out.weak = e3.sig;
    out.weak_emb = e4.sig;
}

}  // namespace rf::detail
