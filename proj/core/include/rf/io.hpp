// Text and JSON forms: node sets, witnesses, colorings, validator inputs and certificates.
#pragma once

#include "rf/bitstring.hpp"
#include "rf/hl.hpp"
#include "rf/joyce.hpp"
#include "rf/tree.hpp"
#include "rf/types.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rf {

using Json = nlohmann::ordered_json;

// Malformed input text or JSON.
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// One word per line, "e" for the empty word; blank lines and '#' comments skipped.
std::vector<BitString> parse_node_set(std::string_view text);
std::string format_node_set(const std::vector<BitString>& nodes);

std::string read_file(const std::string& path);

Json words_json(const std::vector<BitString>& v);
std::vector<BitString> words_from_json(const Json& j);

// {"nodes": [...], "levels": [...]}
Json witness_json(const StrongSubtreeWitness& w);
Json violations_json(const std::vector<Violation>& v);

// {"labels": [[...], ...]}
JoyceOrderTable joyce_order_from_json(const Json& j);
// {"labels": [[...]], "edges": [[a, b], ...]}
JoyceGraphTable joyce_graph_from_json(const Json& j);
// {"depth": d, "f": {"word": "word", ...}, "g": {...}}
BlossomTreeTable blossom_from_json(const Json& j);
Json blossom_json(const BlossomTreeTable& b);

// {"trees": [[...], ...], "k": k, "table": [{"tuple": [...], "color": c}, ...]}
Json coloring_json(const std::vector<FiniteTree>& trees, int k, const TupleTable& table);
LevelProductColoring level_coloring_from_json(const Json& j);
ProductColoring product_coloring_from_json(const Json& j);
// {"tree": [...], "n": n, "k": k, "table": [{"nodes": [...], "color": c}, ...]}
Json subtree_coloring_json(const SubtreeColoring& c);
SubtreeColoring subtree_coloring_from_json(const Json& j);

Json leaf_coloring_json(const LeafColoring& c);

// Self-contained certificate documents, the problem embedded.
Json certificate_json(const LevelProductColoring& c, int N, const HLCertificate& cert);
Json certificate_json(const ProductColoring& c, const DenseMatrixCertificate& cert);
Json certificate_json(const SubtreeColoring& c, const MillikenCertificate& cert);
// A coloring of leaf products with no monochromatic height-N leaf tuple.
Json failure_certificate_json(int N, int k, const LeafColoring& c);

// Re-checks a certificate document. Throws ParseError on malformed documents
// and CertificateError on dangling nodes.
bool verify_certificate_json(const Json& doc);

// Independent of the search: enumerates leaf-preserving strong subtrees per tree
// and combines those with a common level function.
bool verify_failure_coloring(int N, const LeafColoring& c);

}  // namespace rf
