#include "rf/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace rf {

namespace {

BitString parse_word(std::string_view w)
{
    if (w == "e" || w.empty())
        return BitString{};
    for (char c : w)
        if (c != '0' && c != '1')
            throw ParseError("not a binary word: '" + std::string(w) + "'");
    return BitString(w);
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const Json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_number_integer())
        throw ParseError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::string str_field(const Json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_string())
        throw ParseError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

FiniteTree tree_from_json(const Json& j)
{
    try {
        return FiniteTree(words_from_json(j));
    } catch (const TreeError& e) {
        throw ParseError(std::string("bad tree: ") + e.what());
    }
}

std::vector<FiniteTree> trees_from_json(const Json& j)
{
    if (!j.is_array() || j.empty())
        throw ParseError("'trees' must be a non-empty array of node lists");
    std::vector<FiniteTree> out;
    for (const auto& t : j)
        out.push_back(tree_from_json(t));
    return out;
}

TupleTable table_from_json(const Json& j, const char* key)
{
    if (!j.is_array())
        throw ParseError("'table' must be an array");
    TupleTable t;
    for (const auto& e : j) {
        auto words = words_from_json(field(e, key));
        if (!t.emplace(std::move(words), int_field(e, "color")).second)
            throw ParseError("table lists a tuple twice");
    }
    return t;
}

Json table_json(const TupleTable& t, const char* key)
{
    Json arr = Json::array();
    for (const auto& [k, v] : t)
        arr.push_back(Json{{key, words_json(k)}, {"color", v}});
    return arr;
}

// Absent when the nodes do not form a tree; callers treat that as a failed check.
std::optional<StrongSubtreeWitness> witness_from_json(const Json& j)
{
    auto nodes = words_from_json(field(j, "nodes"));
    const auto& lv = field(j, "levels");
    if (!lv.is_array())
        throw ParseError("'levels' must be an array");
    LevelFunction f;
    for (const auto& x : lv) {
        if (!x.is_number_integer())
            throw ParseError("levels must be integers");
        f.values.push_back(x.get<int>());
    }
    auto t = FiniteTree::try_make(std::move(nodes));
    if (!t)
        return std::nullopt;
    return StrongSubtreeWitness{std::move(*t), std::move(f)};
}

}  // namespace

std::vector<BitString> parse_node_set(std::string_view text)
{
    std::vector<BitString> out;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (auto h = line.find('#'); h != std::string_view::npos)
            line = line.substr(0, h);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.remove_suffix(1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
            line.remove_prefix(1);
        if (line.empty())
            continue;
        try {
            out.push_back(parse_word(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::string format_node_set(const std::vector<BitString>& nodes)
{
    std::string s;
    for (const auto& n : nodes)
        s += n.str() + "\n";
    return s;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json words_json(const std::vector<BitString>& v)
{
    Json a = Json::array();
    for (const auto& w : v)
        a.push_back(w.str());
    return a;
}

std::vector<BitString> words_from_json(const Json& j)
{
    if (!j.is_array())
        throw ParseError("expected an array of words");
    std::vector<BitString> out;
    for (const auto& w : j) {
        if (!w.is_string())
            throw ParseError("words must be strings");
        out.push_back(parse_word(w.get<std::string>()));
    }
    return out;
}

Json witness_json(const StrongSubtreeWitness& w)
{
    return Json{{"nodes", words_json(w.subtree.nodes())}, {"levels", w.level_fn.values}};
}

Json violations_json(const std::vector<Violation>& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(Json{{"rule", x.rule}, {"witness", x.witness}, {"detail", x.detail}});
    return a;
}

JoyceOrderTable joyce_order_from_json(const Json& j)
{
    const auto& l = field(j, "labels");
    if (!l.is_array())
        throw ParseError("'labels' must be an array of rows");
    JoyceOrderTable t;
    for (const auto& row : l) {
        if (!row.is_array())
            throw ParseError("label rows must be arrays");
        std::vector<std::int64_t> r;
        for (const auto& x : row) {
            if (!x.is_number_integer())
                throw ParseError("labels must be integers");
            r.push_back(x.get<std::int64_t>());
        }
        t.label.push_back(std::move(r));
    }
    return t;
}

JoyceGraphTable joyce_graph_from_json(const Json& j)
{
    JoyceGraphTable g;
    g.order = joyce_order_from_json(j);
    const auto n = g.order.size();
    g.edge.assign(n, std::vector<bool>(n, false));
    const auto& e = field(j, "edges");
    if (!e.is_array())
        throw ParseError("'edges' must be an array of pairs");
    for (const auto& p : e) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned())
            throw ParseError("edges are pairs of element indices");
        auto a = p[0].get<std::size_t>(), b = p[1].get<std::size_t>();
        if (a >= n || b >= n || a == b)
            throw ParseError("edge endpoint out of range or a loop");
        g.edge[a][b] = g.edge[b][a] = true;
    }
    return g;
}

BlossomTreeTable blossom_from_json(const Json& j)
{
    BlossomTreeTable b;
    b.depth = int_field(j, "depth");
    for (const char* key : {"f", "g"}) {
        const auto& m = field(j, key);
        if (!m.is_object())
            throw ParseError(std::string("'") + key + "' must map words to words");
        auto& dest = key[0] == 'f' ? b.f : b.g;
        for (const auto& [k, v] : m.items()) {
            if (!v.is_string())
                throw ParseError("map values must be words");
            dest.emplace(parse_word(k), parse_word(v.get<std::string>()));
        }
    }
    return b;
}

Json blossom_json(const BlossomTreeTable& b)
{
    Json f = Json::object(), g = Json::object();
    for (const auto& [k, v] : b.f)
        f[k.str()] = v.str();
    for (const auto& [k, v] : b.g)
        g[k.str()] = v.str();
    return Json{{"depth", b.depth}, {"f", f}, {"g", g}};
}

Json coloring_json(const std::vector<FiniteTree>& trees, int k, const TupleTable& table)
{
    Json ts = Json::array();
    for (const auto& t : trees)
        ts.push_back(words_json(t.nodes()));
    return Json{{"trees", ts}, {"k", k}, {"table", table_json(table, "tuple")}};
}

LevelProductColoring level_coloring_from_json(const Json& j)
{
    return {trees_from_json(field(j, "trees")), int_field(j, "k"), table_from_json(field(j, "table"), "tuple")};
}

ProductColoring product_coloring_from_json(const Json& j)
{
    return {trees_from_json(field(j, "trees")), int_field(j, "k"), table_from_json(field(j, "table"), "tuple")};
}

Json subtree_coloring_json(const SubtreeColoring& c)
{
    return Json{{"tree", words_json(c.tree.nodes())},
                {"n", c.n},
                {"k", c.k},
                {"table", table_json(c.table, "nodes")}};
}

SubtreeColoring subtree_coloring_from_json(const Json& j)
{
    return {tree_from_json(field(j, "tree")), int_field(j, "n"), int_field(j, "k"),
            table_from_json(field(j, "table"), "nodes")};
}

Json leaf_coloring_json(const LeafColoring& c)
{
    return coloring_json(c.trees, 0, c.table);
}

Json certificate_json(const LevelProductColoring& c, int N, const HLCertificate& cert)
{
    Json ws = Json::array();
    for (const auto& w : cert.witnesses)
        ws.push_back(witness_json(w));
    return Json{{"type", "hl"},  {"N", N}, {"leaves", cert.leaves}, {"color", cert.color}, {"witnesses", ws},
                {"problem", coloring_json(c.trees, c.k, c.table)}};
}

Json certificate_json(const ProductColoring& c, const DenseMatrixCertificate& cert)
{
    Json parts = Json::array();
    for (const auto& p : cert.parts)
        parts.push_back(words_json(p));
    return Json{{"type", "dense"}, {"pi", words_json(cert.pi)}, {"m", cert.m},
                {"parts", parts},  {"color", cert.color},       {"problem", coloring_json(c.trees, c.k, c.table)}};
}

Json certificate_json(const SubtreeColoring& c, const MillikenCertificate& cert)
{
    return Json{{"type", "milliken"},
                {"m", cert.m},
                {"color", cert.color},
                {"witness", witness_json(cert.witness)},
                {"problem", subtree_coloring_json(c)}};
}

Json failure_certificate_json(int N, int k, const LeafColoring& c)
{
    Json p = coloring_json(c.trees, k, c.table);
    return Json{{"type", "fhl-failure"}, {"N", N}, {"problem", p}};
}

bool verify_failure_coloring(int N, const LeafColoring& c)
{
    if (c.trees.empty() || N < 1)
        return false;
    const std::size_t d = c.trees.size();
    // every leaf tuple is colored
    std::size_t leaf_tuples = 1;
    for (const auto& t : c.trees)
        leaf_tuples *= t.leaves().size();
    if (c.table.size() != leaf_tuples)
        return false;
    for (const auto& [k, v] : c.table) {
        if (k.size() != d)
            return false;
        for (std::size_t i = 0; i < d; ++i) {
            auto idx = c.trees[i].index_of(k[i]);
            if (!idx)
                throw CertificateError("node " + k[i].str() + " is not in tree " + std::to_string(i));
            if (!c.trees[i].is_leaf(*idx))
                return false;
        }
    }
    // leaf-preserving subtrees per tree, grouped by level function
    std::vector<std::map<LevelFunction, std::vector<std::vector<BitString>>>> groups(d);
    for (std::size_t i = 0; i < d; ++i)
        for (const auto& w : enumerate_strong_subtrees_with_leaves(c.trees[i], N)) {
            std::vector<BitString> top;
            for (auto li : w.subtree.level_nodes(N - 1))
                top.push_back(w.subtree.node(li));
            groups[i][w.level_fn].push_back(std::move(top));
        }
    for (const auto& [f, tops0] : groups[0]) {
        std::vector<const std::vector<std::vector<BitString>>*> per{&tops0};
        bool common = true;
        for (std::size_t i = 1; i < d; ++i) {
            auto it = groups[i].find(f);
            if (it == groups[i].end()) {
                common = false;
                break;
            }
            per.push_back(&it->second);
        }
        if (!common)
            continue;
        std::vector<std::size_t> pick(d, 0);
        while (true) {
            // colors of the product of the chosen top levels
            std::vector<std::size_t> q(d, 0);
            std::set<int> seen;
            while (true) {
                std::vector<BitString> key;
                for (std::size_t i = 0; i < d; ++i)
                    key.push_back((*per[i])[pick[i]][q[i]]);
                auto it = c.table.find(key);
                if (it == c.table.end())
                    return false;
                seen.insert(it->second);
                std::size_t i = d;
                while (i > 0 && ++q[i - 1] == (*per[i - 1])[pick[i - 1]].size())
                    q[--i] = 0;
                if (i == 0)
                    break;
            }
            if (seen.size() == 1)
                return false;
            std::size_t i = d;
            while (i > 0 && ++pick[i - 1] == per[i - 1]->size())
                pick[--i] = 0;
            if (i == 0)
                break;
        }
    }
    return true;
}

bool verify_certificate_json(const Json& doc)
{
    const auto type = str_field(doc, "type");
    const auto& prob = field(doc, "problem");
    if (type == "hl") {
        auto c = level_coloring_from_json(prob);
        HLCertificate cert;
        cert.color = int_field(doc, "color");
        const auto& lv = field(doc, "leaves");
        if (!lv.is_boolean())
            throw ParseError("'leaves' must be a boolean");
        cert.leaves = lv.get<bool>();
        const auto& ws = field(doc, "witnesses");
        if (!ws.is_array())
            throw ParseError("'witnesses' must be an array");
        for (const auto& w : ws) {
            auto x = witness_from_json(w);
            if (!x)
                return false;
            cert.witnesses.push_back(std::move(*x));
        }
        try {
            check_level_coloring(c);
        } catch (const ColoringError&) {
            return false;
        }
        return verify_certificate(c, int_field(doc, "N"), cert);
    }
    if (type == "dense") {
        auto c = product_coloring_from_json(prob);
        DenseMatrixCertificate cert;
        cert.pi = words_from_json(field(doc, "pi"));
        cert.m = int_field(doc, "m");
        cert.color = int_field(doc, "color");
        const auto& parts = field(doc, "parts");
        if (!parts.is_array())
            throw ParseError("'parts' must be an array");
        for (const auto& p : parts)
            cert.parts.push_back(words_from_json(p));
        try {
            check_product_coloring(c);
        } catch (const ColoringError&) {
            return false;
        }
        return verify_certificate(c, cert);
    }
    if (type == "milliken") {
        auto c = subtree_coloring_from_json(prob);
        auto w = witness_from_json(field(doc, "witness"));
        if (!w)
            return false;
        MillikenCertificate cert{std::move(*w), int_field(doc, "m"), int_field(doc, "color")};
        try {
            check_subtree_coloring(c);
        } catch (const ColoringError&) {
            return false;
        }
        return verify_certificate(c, cert);
    }
    if (type == "fhl-failure") {
        auto c = level_coloring_from_json(prob);
        for (const auto& [k, v] : c.table)
            if (v < 0 || v >= c.k)
                return false;
        return verify_failure_coloring(int_field(doc, "N"), LeafColoring{c.trees, c.table});
    }
    throw ParseError("unknown certificate type '" + type + "'");
}

}  // namespace rf
