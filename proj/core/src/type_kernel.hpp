// Packed words and signatures for the census inner loop.
#pragma once

#include "rf/bitstring.hpp"

#include <array>
#include <cstdint>
#include <functional>

namespace rf::detail {

// Bit i of `bits` is the i-th letter.
struct Word {
    std::uint32_t bits = 0;
    std::uint8_t len = 0;
};

Word pack(const BitString& s);
BitString unpack(Word w);

// Preorder node codes, three bits per node: has slot 0, has slot 1, marked.
struct PackedSig {
    std::array<std::uint64_t, 3> w{};
    std::uint16_t nbits = 0;
    bool operator==(const PackedSig&) const = default;
};

struct PackedSigHash {
    std::size_t operator()(const PackedSig& s) const noexcept
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ s.nbits;
        for (auto x : s.w) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

struct TupleClass {
    PackedSig emb, tup, weak, weak_emb;
    bool length_injective = false;  // over the meet closure
    bool member_lengths_distinct = false;
    bool meet_avoiding = false;
};

// Words must be pairwise distinct, n >= 1.
void classify(const Word* words, int n, TupleClass& out);

}  // namespace rf::detail
