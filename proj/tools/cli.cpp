#include "cli.hpp"

#include "rf/colorings.hpp"
#include "rf/hl.hpp"
#include "rf/io.hpp"
#include "rf/joyce.hpp"
#include "rf/tree.hpp"
#include "rf/types.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#ifndef RF_CODE_VERSION
#define RF_CODE_VERSION "dev"
#endif

namespace rf::cli {

namespace fs = std::filesystem;

const char* code_version()
{
    return RF_CODE_VERSION;
}

namespace {

// Result body plus exit code.
struct Outcome {
    Json result;
    int code = kOk;
};

struct Common {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool no_cache = false;
    bool csv = false;
    bool timing = false;
};

// FNV-1a, enough to name cache files; the full key is stored and compared on load.
std::string key_hash(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

fs::path cache_dir()
{
    if (const char* d = std::getenv("RF_CACHE_DIR"); d && *d)
        return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x)
        return fs::path(x) / "rf";
    if (const char* h = std::getenv("HOME"); h && *h)
        return fs::path(h) / ".cache" / "rf";
    return fs::temp_directory_path() / "rf-cache";
}

std::optional<Json> cache_load(const std::string& key)
{
    std::ifstream in(cache_dir() / (key_hash(key) + ".json"));
    if (!in)
        return std::nullopt;
    try {
        auto j = Json::parse(in);
        if (j.value("key", "") == key && j.contains("result"))
            return j["result"];
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

void cache_store(const std::string& key, const Json& result, std::ostream& err)
{
    std::error_code ec;
    fs::create_directories(cache_dir(), ec);
    auto path = cache_dir() / (key_hash(key) + ".json");
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream o(tmp);
        if (!o) {
            err << "warning: cannot write cache in " << cache_dir() << "\n";
            return;
        }
        o << Json{{"key", key}, {"result", result}}.dump() << "\n";
    }
    fs::rename(tmp, path, ec);
    if (ec)
        err << "warning: cache write failed: " << ec.message() << "\n";
}

std::string csv_cell(const Json& v)
{
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

// Header of keys and one row of values; tables with a "csv" member print that instead.
std::string to_csv(const Json& result)
{
    if (result.contains("csv") && result["csv"].is_string())
        return result["csv"].get<std::string>();
    if (result.contains("rows") && result["rows"].is_array() && !result["rows"].empty() &&
        result["rows"][0].is_object()) {
        std::string s;
        bool first = true;
        for (const auto& row : result["rows"]) {
            if (first) {
                std::string h;
                for (const auto& [k, v] : row.items())
                    h += (h.empty() ? "" : ",") + k;
                s += h + "\n";
                first = false;
            }
            std::string line;
            bool lead = true;
            for (const auto& [k, v] : row.items()) {
                line += (lead ? "" : ",") + csv_cell(v);
                lead = false;
            }
            s += line + "\n";
        }
        return s;
    }
    std::string head, row;
    bool first = true;
    for (const auto& [k, v] : result.items()) {
        head += (first ? "" : ",") + csv_cell(Json(k));
        row += (first ? "" : ",") + csv_cell(v);
        first = false;
    }
    return head + "\n" + row + "\n";
}

std::vector<BitString> read_node_file(const std::string& path)
{
    return parse_node_set(read_file(path));
}

Json read_json_file(const std::string& path)
{
    auto text = read_file(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream o(path);
    if (!o)
        throw ParseError("cannot write " + path);
    o << j.dump(2) << "\n";
}

// ---- count ----

Outcome count_types_cmd(int n, const std::string& kind, const std::string& method, const std::string& rule,
                        unsigned threads)
{
    auto k = count_kind_from_string(kind);
    auto m = count_method_from_string(method);
    auto r = length_rule_from_string(rule);
    auto tc = count_types(n, k, m, threads, r);
    return {Json{{"n", n}, {"object", "types"}, {"kind", kind}, {"method", method}, {"count", tc.count}}};
}

Outcome count_joyce_trees_cmd(int n)
{
    return {Json{{"n", n}, {"object", "joyce-tree"}, {"count", count_joyce_trees(n)}}};
}

Outcome count_joyce_graphs_cmd(int n, const std::string& graph)
{
    std::optional<SimpleGraph> filter;
    if (!graph.empty())
        filter = parse_graph(graph);
    Json j{{"n", n}, {"object", "joyce-graph"}};
    if (!graph.empty())
        j["graph"] = graph;
    j["count"] = count_joyce_graphs(n, filter);
    return {j};
}

Outcome count_emb_height_cmd(int h)
{
    const auto rec = embedding_types_of_height_recurrence(h);
    Json j{{"h", h}, {"object", "emb-height"}};
    // exact decimal string once it outgrows 64 bits
    if (rec <= std::numeric_limits<std::uint64_t>::max())
        j["count"] = rec.convert_to<std::uint64_t>();
    else
        j["count"] = rec.str();
    j["recurrence"] = rec.str();
    if (h <= 5) {
        auto direct = embedding_types_of_height_direct(h);
        j["direct"] = direct;
        j["agree"] = rec == direct;
    }
    return {j};
}

// ---- validate ----

Outcome validate_cmd(const std::string& object, const std::string& file, const std::string& labels)
{
    std::vector<Violation> v;
    Json extra;
    if (object == "joyce-order") {
        v = validate_joyce_order(joyce_order_from_json(read_json_file(file)));
    } else if (object == "coded-order") {
        if (labels == "length")
            v = validate_coded_joyce_order(read_node_file(file));
        else if (labels == "rank")
            v = validate_joyce_order(coded_order_rank_table(read_node_file(file)));
        else
            throw ParseError("--labels must be length or rank");
    } else if (object == "joyce-graph") {
        v = validate_joyce_graph(joyce_graph_from_json(read_json_file(file)));
    } else if (object == "coded-graph") {
        v = validate_coded_joyce_graph(read_node_file(file));
    } else if (object == "blossom") {
        v = validate_blossom(blossom_from_json(read_json_file(file)));
    } else if (object == "strong-subtree") {
        auto j = read_json_file(file);
        if (!j.is_object() || !j.contains("tree") || !j.contains("nodes"))
            throw ParseError("strong-subtree file needs 'tree' and 'nodes'");
        auto tree_words = words_from_json(j["tree"]);
        auto t = FiniteTree::try_make(tree_words);
        if (!t)
            throw ParseError("'tree' is not a rooted meet-closed tree");
        auto nodes = words_from_json(j["nodes"]);
        std::optional<StrongSubtreeWitness> w;
        for (const auto& x : nodes)
            if (!t->contains(x))
                v.push_back({"membership", {}, "node " + x.str() + " is not in the tree"});
        if (v.empty()) {
            w = is_strong_subtree(nodes, *t);
            if (w)
                extra = witness_json(*w);
            else
                v.push_back({"strong-subtree", {}, "not a strong subtree"});
        }
    } else {
        throw ParseError("unknown validate object '" + object + "'");
    }
    Json j{{"object", object}, {"valid", v.empty()}, {"violations", violations_json(v)}};
    if (!extra.is_null())
        j["witness"] = extra;
    return {j, v.empty() ? kOk : kNegative};
}

// ---- search ----

using TupleFn = std::function<int(const std::vector<BitString>&)>;

struct Builtin {
    int k = 1;
    TupleFn fn;
};

Builtin tuple_builtin(const std::string& name, int height, int k, std::uint64_t seed)
{
    if (name == "level-parity")
        return {2, [](const std::vector<BitString>& t) { return static_cast<int>(t[0].size() % 2); }};
    if (name == "level-identity")
        return {height, [](const std::vector<BitString>& t) { return static_cast<int>(t[0].size()); }};
    if (name == "constant")
        return {1, [](const std::vector<BitString>&) { return 0; }};
    if (name == "root-apart")
        return {2, [](const std::vector<BitString>& t) {
                    return std::all_of(t.begin(), t.end(), [](const BitString& w) { return w.empty(); }) ? 0 : 1;
                }};
    if (name == "first-bit")
        return {3, [](const std::vector<BitString>& t) { return t[0].empty() ? 2 : (t[0][0] ? 1 : 0); }};
    if (name == "random") {
        if (k < 1)
            throw ParseError("random coloring needs --k >= 1");
        auto rng = std::make_shared<std::mt19937_64>(seed);
        return {k, [rng, k](const std::vector<BitString>&) {
                    return static_cast<int>((*rng)() % static_cast<std::uint64_t>(k));
                }};
    }
    throw ParseError("unknown builtin coloring '" + name + "'");
}

struct SearchOpts {
    std::string problem, builtin = "level-parity", out = "certificate.json";
    int height = 3, d = 1, N = 2, k = 2, n = 1, m = 2, cap = 4;
    std::string b = "2";
    bool leaves = false;
    std::uint64_t seed = 1, budget = kDefaultBudget;
};

Json search_params(const std::string& kind, const SearchOpts& o)
{
    Json p{{"kind", kind}};
    if (kind == "min-fhl") {
        p["N"] = o.N;
        p["k"] = o.k;
        p["d"] = o.d;
        p["b"] = o.b;
        p["cap"] = o.cap;
    } else {
        if (!o.problem.empty())
            p["problem"] = o.problem;
        else {
            p["builtin"] = o.builtin;
            p["height"] = o.height;
            if (kind != "milliken")
                p["d"] = o.d;
            if (o.builtin == "random") {
                p["k"] = o.k;
                p["seed"] = o.seed;
            }
        }
        if (kind == "hl") {
            p["N"] = o.N;
            p["leaves"] = o.leaves;
        }
        if (kind == "milliken") {
            p["n"] = o.n;
            p["m"] = o.m;
        }
    }
    p["budget"] = o.budget;
    p["out"] = o.out;
    return p;
}

LevelBound parse_bound(const std::string& spec)
{
    std::vector<std::int64_t> vals;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            auto v = std::stoll(part, &used);
            if (used != part.size())
                throw std::invalid_argument("");
            vals.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("--b expects comma-separated integers, got '" + spec + "'");
        }
    }
    if (vals.empty())
        throw ParseError("--b is empty");
    // the last value repeats
    return [vals](std::int64_t i) {
        return vals[static_cast<std::size_t>(std::min<std::int64_t>(i, static_cast<std::int64_t>(vals.size()) - 1))];
    };
}

// Colors a strong subtree by the tuple type of its leaves, types of different sizes kept apart.
SubtreeColoring leaf_type_coloring(int height, int n)
{
    const int max_leaves = n >= 3 ? 4 : 1 << (n - 1);
    std::map<int, Coloring> by_size;
    std::map<int, int> offset;
    int k = 0;
    for (int s = 1; s <= max_leaves; ++s) {
        offset[s] = k;
        k += static_cast<int>(tuple_type_range(s));
        by_size.emplace(s, tuple_type_coloring(s));
    }
    return make_subtree_coloring(full_binary_tree(height), n, k, [&](const std::vector<BitString>& nodes) {
        FiniteTree st(nodes);
        std::vector<BitString> leaves;
        for (auto i : st.leaves())
            leaves.push_back(st.node(i));
        int s = static_cast<int>(leaves.size());
        if (s > max_leaves)
            throw ParseError("tuple-type builtin needs subtrees with at most 4 leaves");
        return offset[s] + by_size.at(s)(leaves)[0];
    });
}

// The builtin applied to the subtree root.
SubtreeColoring root_coloring(const SearchOpts& o)
{
    auto b = tuple_builtin(o.builtin, o.height, o.k, o.seed);
    return make_subtree_coloring(full_binary_tree(o.height), o.n, b.k,
                                 [&](const std::vector<BitString>& nodes) { return b.fn({nodes.front()}); });
}

Outcome search_cmd(const std::string& kind, const SearchOpts& o, unsigned threads)
{
    if (kind == "min-fhl") {
        auto r = min_fhl(o.N, o.k, o.d, parse_bound(o.b), o.cap, threads, o.budget);
        if (r.cap_exceeded)
            return {Json{{"cap_exceeded", true}, {"cap", o.cap}}, kBudget};
        Json j{{"h", *r.h}};
        if (r.failure) {
            auto cert = failure_certificate_json(o.N, o.k, *r.failure);
            write_json_file(o.out, cert);
            j["failure_height"] = *r.h - 1;
            j["failure"] = cert["problem"]["table"];
            j["certificate_file"] = o.out;
        }
        return {j};
    }
    auto trees_for = [&](int count) {
        return std::vector<FiniteTree>(static_cast<std::size_t>(count), full_binary_tree(o.height));
    };
    if (kind == "hl") {
        LevelProductColoring c;
        if (!o.problem.empty()) {
            c = level_coloring_from_json(read_json_file(o.problem));
        } else {
            auto b = tuple_builtin(o.builtin, o.height, o.k, o.seed);
            c = make_level_coloring(trees_for(o.d), b.k, b.fn);
        }
        auto cert = search_level_product_mono(c, o.N, o.leaves, o.budget);
        if (!cert)
            return {Json{{"found", false}}, kNegative};
        auto doc = certificate_json(c, o.N, *cert);
        write_json_file(o.out, doc);
        return {Json{{"found", true}, {"color", cert->color}, {"witnesses", doc["witnesses"]},
                     {"certificate_file", o.out}}};
    }
    if (kind == "dense") {
        ProductColoring c;
        if (!o.problem.empty()) {
            c = product_coloring_from_json(read_json_file(o.problem));
        } else {
            auto b = tuple_builtin(o.builtin, o.height, o.k, o.seed);
            c = make_product_coloring(trees_for(o.d), b.k, b.fn);
        }
        auto cert = find_dense_matrix(c, o.budget);
        if (!cert)
            return {Json{{"found", false}}, kNegative};
        auto doc = certificate_json(c, *cert);
        write_json_file(o.out, doc);
        return {Json{{"found", true}, {"pi", doc["pi"]}, {"m", cert->m}, {"parts", doc["parts"]},
                     {"color", cert->color}, {"certificate_file", o.out}}};
    }
    if (kind == "milliken") {
        auto c = !o.problem.empty()           ? subtree_coloring_from_json(read_json_file(o.problem))
                 : o.builtin == "tuple-type" ? leaf_type_coloring(o.height, o.n)
                                             : root_coloring(o);
        auto cert = milliken_search(c, o.m, o.budget);
        if (!cert)
            return {Json{{"found", false}}, kNegative};
        auto doc = certificate_json(c, *cert);
        write_json_file(o.out, doc);
        return {Json{{"found", true}, {"color", cert->color}, {"witness", doc["witness"]},
                     {"certificate_file", o.out}}};
    }
    throw ParseError("unknown search kind '" + kind + "'");
}

Outcome verify_cmd(const std::string& file)
{
    auto doc = read_json_file(file);
    try {
        bool ok = verify_certificate_json(doc);
        Json j{{"valid", ok}};
        if (doc.contains("type"))
            j["type"] = doc["type"];
        return {j, ok ? kOk : kNegative};
    } catch (const CertificateError& e) {
        return {Json{{"valid", false}, {"type", doc.value("type", "")}, {"reason", e.what()}}, kNegative};
    }
}

// ---- table / catalog ----

Outcome table_cmd(int max_n, const std::string& out, unsigned threads)
{
    if (max_n < 0 || max_n > 4)
        throw ParseError("--max-n must be in 0..4");
    Json rows = Json::array();
    std::string csv = "n,e_sTT,t_sTT,e_TT,t_TT\n";
    for (int n = 0; n <= max_n; ++n) {
        auto r = census_row(n, threads);
        rows.push_back(Json{{"n", n}, {"e_sTT", r.emb_all}, {"t_sTT", r.tup_all}, {"e_TT", r.emb_min},
                            {"t_TT", r.tup_min}});
        csv += std::to_string(n) + "," + std::to_string(r.emb_all) + "," + std::to_string(r.tup_all) + "," +
               std::to_string(r.emb_min) + "," + std::to_string(r.tup_min) + "\n";
    }
    if (!out.empty()) {
        std::ofstream o(out);
        if (!o)
            throw ParseError("cannot write " + out);
        o << csv;
    }
    return {Json{{"rows", rows}, {"csv", csv}}};
}

Outcome catalog_cmd(int n, const std::string& kind, const std::string& method, unsigned threads)
{
    auto entries = type_catalog(n, count_kind_from_string(kind), count_method_from_string(method), threads);
    Json arr = Json::array();
    for (const auto& e : entries)
        arr.push_back(Json{{"kind", to_string(e.signature.kind)},
                           {"signature", e.signature.body},
                           {"representative", words_json(e.representative)}});
    Json rows = Json::array();
    std::string csv = "kind,signature,representative\n";
    for (const auto& e : arr) {
        std::string rep;
        for (const auto& w : e["representative"])
            rep += (rep.empty() ? "" : " ") + w.get<std::string>();
        csv += csv_cell(e["kind"]) + "," + csv_cell(e["signature"]) + "," + csv_cell(Json(rep)) + "\n";
    }
    return {Json{{"n", n}, {"kind", kind}, {"method", method}, {"count", arr.size()}, {"types", arr}, {"csv", csv}}};
}

struct Invocation {
    std::string command;
    Json params;
    bool cacheable = false;
    std::function<Outcome()> run;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite Ramsey toolkit: type censuses, Joyce structures, HL and Milliken searches", "rf"};
    app.fallthrough();
    app.require_subcommand(1);
    Common common;
    app.add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_flag("--no-cache", common.no_cache, "bypass the result cache");
    app.add_flag("--csv", common.csv, "print CSV instead of JSON");
    app.add_flag("--timing", common.timing, "add elapsed_ms to the output");

    std::optional<Invocation> inv;

    // count
    auto* count = app.add_subcommand("count", "count types, Joyce trees and graphs, embedding types by height");
    count->require_subcommand(1);
    int cn = 0, ch = 0;
    std::string ckind, cmethod = "brute", crule = "members", cgraph;
    auto* ct = count->add_subcommand("types", "tuple and embedding type counts");
    ct->add_option("--n", cn, "tuple size")->required();
    ct->add_option("--kind", ckind, "emb-all, tup-all, emb-min or tup-min")->required();
    ct->add_option("--method", cmethod, "brute, predicate or minimizer");
    ct->add_option("--length-rule", crule, "members or meet-closure");
    ct->callback([&] {
        inv = Invocation{"count types",
                         Json{{"n", cn}, {"kind", ckind}, {"method", cmethod}, {"length_rule", crule}},
                         true,
                         [&] { return count_types_cmd(cn, ckind, cmethod, crule, common.threads); }};
    });
    auto* cjt = count->add_subcommand("joyce-trees", "Joyce trees with n leaves");
    cjt->add_option("--n", cn)->required();
    cjt->callback([&] {
        inv = Invocation{"count joyce-trees", Json{{"n", cn}}, true, [&] { return count_joyce_trees_cmd(cn); }};
    });
    auto* cjg = count->add_subcommand("joyce-graphs", "Joyce graphs of size n up to isomorphism");
    cjg->add_option("--n", cn)->required();
    cjg->add_option("--graph", cgraph, "only graphs isomorphic to this one, e.g. K3");
    cjg->callback([&] {
        inv = Invocation{"count joyce-graphs", Json{{"n", cn}, {"graph", cgraph}}, true,
                         [&] { return count_joyce_graphs_cmd(cn, cgraph); }};
    });
    auto* ceh = count->add_subcommand("emb-height", "embedding types of exact height h");
    ceh->add_option("--height", ch)->required();
    ceh->callback([&] {
        inv = Invocation{"count emb-height", Json{{"h", ch}}, true, [&] { return count_emb_height_cmd(ch); }};
    });

    // validate
    auto* val = app.add_subcommand("validate", "check a structure file");
    std::string vobject, vfile, vlabels = "length";
    val->add_option("object", vobject,
                    "joyce-order, coded-order, joyce-graph, coded-graph, blossom or strong-subtree")
        ->required();
    val->add_option("file", vfile)->required();
    val->add_option("--labels", vlabels, "coded-order labels: length (|s ∧ t|) or rank (rank of s ∧ t)");
    val->callback([&] {
        Json p{{"object", vobject}, {"file", vfile}};
        if (vobject == "coded-order")
            p["labels"] = vlabels;
        inv = Invocation{"validate", p, false, [&] { return validate_cmd(vobject, vfile, vlabels); }};
    });

    // search
    auto* search = app.add_subcommand("search", "HL, dense matrix, Milliken and min-fhl searches");
    std::string skind;
    SearchOpts so;
    search->add_option("kind", skind, "hl, dense, milliken or min-fhl")->required();
    search->add_option("--problem", so.problem, "coloring problem JSON");
    search->add_option("--builtin", so.builtin,
                       "level-parity, level-identity, constant, root-apart, first-bit, random, tuple-type (milliken)");
    search->add_option("--height", so.height, "height of the builtin full binary trees");
    search->add_option("--d", so.d, "number of trees");
    search->add_option("--N", so.N, "subtree height (hl, min-fhl)");
    search->add_option("--k", so.k, "colors (min-fhl, random)");
    search->add_option("--n", so.n, "colored subtree height (milliken)");
    search->add_option("--m", so.m, "target subtree height (milliken)");
    search->add_option("--cap", so.cap, "largest height tried (min-fhl)");
    search->add_option("--b", so.b, "level bound b(0),b(1),...; the last value repeats");
    search->add_flag("--leaves", so.leaves, "leaf-preserving HL search");
    search->add_option("--seed", so.seed, "seed for the random builtin");
    search->add_option("--budget", so.budget, "state budget");
    search->add_option("--out", so.out, "certificate file");
    search->callback([&] {
        inv = Invocation{"search", search_params(skind, so), false,
                         [&] { return search_cmd(skind, so, common.threads); }};
    });

    // verify
    auto* ver = app.add_subcommand("verify", "re-check a certificate file");
    std::string vcert;
    ver->add_option("file", vcert)->required();
    ver->callback([&] {
        inv = Invocation{"verify", Json{{"file", vcert}}, false, [&] { return verify_cmd(vcert); }};
    });

    // table
    auto* tab = app.add_subcommand("table", "the type-count table, rows n = 0..max-n");
    int tmax = 4;
    std::string tout;
    tab->add_option("--max-n", tmax);
    tab->add_option("--out", tout, "also write the CSV here");
    tab->callback([&] {
        inv = Invocation{"table", Json{{"max_n", tmax}}, tout.empty(),
                         [&] { return table_cmd(tmax, tout, common.threads); }};
    });

    // emit-catalog
    auto* cat = app.add_subcommand("emit-catalog", "type signatures with representatives");
    int gn = 2;
    std::string gkind = "tup-all", gmethod = "brute";
    cat->add_option("--n", gn)->required();
    cat->add_option("--kind", gkind);
    cat->add_option("--method", gmethod);
    cat->callback([&] {
        inv = Invocation{"emit-catalog", Json{{"n", gn}, {"kind", gkind}, {"method", gmethod}}, true,
                         [&] { return catalog_cmd(gn, gkind, gmethod, common.threads); }};
    });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "rf: " << e.what() << "\n";
        out << Json{{"error", e.what()}, {"exit_code", kInputError}}.dump(2) << "\n";
        return kInputError;
    }
    if (!inv) {
        err << "rf: no command\n";
        return kInputError;
    }

    Json record{{"command", inv->command}, {"params", inv->params}};
    const std::string key = inv->command + "|" + inv->params.dump() + "|" + code_version();
    const auto t0 = std::chrono::steady_clock::now();
    Outcome res;
    std::string error;
    bool from_cache = false;
    try {
        if (inv->cacheable && !common.no_cache) {
            if (auto hit = cache_load(key)) {
                res.result = *hit;
                from_cache = true;
            }
        }
        if (!from_cache) {
            res = inv->run();
            if (inv->cacheable && !common.no_cache && res.code == kOk)
                cache_store(key, res.result, err);
        }
    } catch (const BudgetExceeded& e) {
        res.code = kBudget;
        error = e.what();
    } catch (const ScaleError& e) {
        res.code = kBudget;
        error = e.what();
    } catch (const std::invalid_argument& e) {
        res.code = kInputError;
        error = e.what();
    } catch (const std::out_of_range& e) {
        res.code = kInputError;
        error = e.what();
    } catch (const nlohmann::json::exception& e) {
        res.code = kInputError;
        error = e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);

    if (!error.empty()) {
        err << "rf: " << error << "\n";
        record["error"] = error;
        record["exit_code"] = res.code;
        record["code_version"] = code_version();
        out << record.dump(2) << "\n";
        return res.code;
    }
    if (common.csv) {
        out << to_csv(res.result);
        return res.code;
    }
    if (res.result.is_object())
        res.result.erase("csv");
    record["result"] = res.result;
    record["code_version"] = code_version();
    if (common.timing) {
        record["elapsed_ms"] = ms.count();
        record["cached"] = from_cache;
    }
    out << record.dump(2) << "\n";
    return res.code;
}

}  // namespace rf::cli
