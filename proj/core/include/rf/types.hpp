// Closures, canonical type signatures and the type censuses.
#pragma once

#include "rf/bitstring.hpp"
#include "rf/tree.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace rf {

std::vector<BitString> meet_closure(const std::vector<BitString>& s);
// Adds every truncation of a member to the length of a shorter member.
std::vector<BitString> level_closure(const std::vector<BitString>& s);

struct ClosedTree {
    std::vector<BitString> nodes;  // canonical order
    bool operator==(const ClosedTree&) const = default;
};

ClosedTree full_closure(const std::vector<BitString>& s);

enum class SigKind { Embedding, Tuple, WeakTuple };

struct TypeSignature {
    SigKind kind = SigKind::Embedding;
    // Term grammar: T ::= mark "(" C "," C ")", C ::= "-" | T, mark in {"", "*"}.
    // The empty tuple is "-".
    std::string body;

    bool operator==(const TypeSignature&) const = default;
    auto operator<=>(const TypeSignature&) const = default;
};

std::string to_string(SigKind k);
SigKind sig_kind_from_string(const std::string& s);

// Throws std::invalid_argument on repeated elements.
TypeSignature embedding_signature(const std::vector<BitString>& tuple);
TypeSignature tuple_signature(const std::vector<BitString>& tuple);
TypeSignature weak_signature(const std::vector<BitString>& tuple);

// Re-parses and re-serializes; throws std::invalid_argument on malformed bodies.
TypeSignature canonicalize(const TypeSignature& sig);

// Words realizing the signature with every edge one bit long; single
// children of weak signatures take bit 0. Embedding signatures yield every node.
std::vector<BitString> representative(const TypeSignature& sig);

struct WeakFlags {
    bool length_injective = false;  // distinct lengths across the meet closure
    bool meet_avoiding = false;
    bool member_lengths_distinct = false;  // distinct lengths among the tuple itself
    bool operator==(const WeakFlags&) const = default;
};

// Throws std::invalid_argument for embedding signatures.
WeakFlags classify_weak_type(const TypeSignature& sig);

enum class CountKind { EmbAll, TupAll, EmbMin, TupMin };

// Which length condition the PREDICATE columns apply together with meet avoidance.
// Members asks only that the tuple's own strings have distinct lengths; this is
// the reading that reproduces the published e_TT/t_TT columns. MeetClosure is the
// full length-injectivity condition, which is what the minimizer tree realizes.
enum class LengthRule { Members, MeetClosure };
enum class CountMethod { Brute, Predicate, Minimizer };

std::string to_string(CountKind k);
std::string to_string(CountMethod m);
std::string to_string(LengthRule r);
LengthRule length_rule_from_string(const std::string& s);
CountKind count_kind_from_string(const std::string& s);
CountMethod count_method_from_string(const std::string& s);

struct TypeCount {
    int n = 0;
    CountKind kind = CountKind::EmbAll;
    CountMethod method = CountMethod::Brute;
    std::uint64_t count = 0;
    std::chrono::milliseconds elapsed{0};
};

struct CatalogEntry {
    TypeSignature signature;
    std::vector<BitString> representative;
};

// Throws std::invalid_argument for incompatible kind/method pairs.
TypeCount count_types(int n, CountKind kind, CountMethod method, unsigned threads = 1,
                      LengthRule rule = LengthRule::Members);

// Distinct signatures with the first realizing tuple found, sorted by body.
std::vector<CatalogEntry> type_catalog(int n, CountKind kind, CountMethod method, unsigned threads = 1,
                                       LengthRule rule = LengthRule::Members);

// All four columns of one row from a single pass over the brute-force domain.
struct CensusRow {
    int n = 0;
    std::uint64_t emb_all = 0, tup_all = 0, emb_min = 0, tup_min = 0;
    bool operator==(const CensusRow&) const = default;
};
CensusRow census_row(int n, unsigned threads = 1, LengthRule rule = LengthRule::Members);

// Census over words of length <= max_len instead of 2n-2.
CensusRow census_row_with_bound(int n, int max_len, unsigned threads = 1,
                                LengthRule rule = LengthRule::Members);

// MINIMIZER method at an explicit depth (levels of the minimizer tree).
CensusRow minimizer_census(int n, int depth, unsigned threads = 1);

using BigInt = boost::multiprecision::cpp_int;

BigInt embedding_types_of_height_recurrence(int h);
// Counts distinct signatures of prefix-closed sets of exact height h; h <= 5.
std::uint64_t embedding_types_of_height_direct(int h);

// Distinct signatures among n-element subsets of a node set.
std::vector<TypeSignature> types_realized(const std::vector<BitString>& nodes, int n, SigKind kind);

}  // namespace rf
