#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace privgraph {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;  // canonical form: first < second

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Simple undirected graph over dense node ids 0..n-1. Construction
// canonicalizes: self-loops dropped, duplicate/reversed edges merged.
class Graph {
public:
    Graph() = default;

    Graph(std::size_t node_count, std::vector<Edge> edges) : node_count_(node_count) {
        for (auto& [u, w] : edges) {
            if (u >= node_count_ || w >= node_count_)
                throw std::invalid_argument("edge endpoint out of range");
            if (u > w) std::swap(u, w);
        }
        std::erase_if(edges, [](const Edge& e) { return e.first == e.second; });
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges_ = std::move(edges);
        adj_.assign(node_count_, {});
        for (const auto& [u, w] : edges_) {
            adj_[u].push_back(w);
            adj_[w].push_back(u);
        }
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    }

    std::size_t node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// Edges in canonical sorted order.
    const std::vector<Edge>& edges() const { return edges_; }

    /// Sorted neighbor list.
    const std::vector<NodeId>& neighbors(NodeId u) const { return adj_[u]; }

    std::size_t degree(NodeId u) const { return adj_[u].size(); }

    bool has_edge(NodeId u, NodeId w) const {
        if (u >= node_count_ || w >= node_count_ || u == w) return false;
        const auto& nbrs = adj_[u].size() <= adj_[w].size() ? adj_[u] : adj_[w];
        NodeId target = adj_[u].size() <= adj_[w].size() ? w : u;
        return std::binary_search(nbrs.begin(), nbrs.end(), target);
    }

private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adj_;
};

inline std::vector<std::size_t> degree_sequence(const Graph& g) {
    std::vector<std::size_t> deg(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) deg[u] = g.degree(u);
    return deg;
}

// Bidirectional mapping between external node labels (arbitrary strings)
// and the dense ids used internally.
struct LabelMap {
    std::vector<std::string> id_to_label;
    std::unordered_map<std::string, NodeId> label_to_id;

    NodeId intern(const std::string& label) {
        auto it = label_to_id.find(label);
        if (it != label_to_id.end()) return it->second;
        NodeId id = static_cast<NodeId>(id_to_label.size());
        id_to_label.push_back(label);
        label_to_id.emplace(label, id);
        return id;
    }

    /// Label for id; ids beyond the interned range (declared via a node-count
    /// header but never mentioned in an edge) fall back to their decimal id.
    std::string label(NodeId id) const {
        if (id < id_to_label.size()) return id_to_label[id];
        return std::to_string(id);
    }
};

struct ParsedGraph {
    Graph graph;
    LabelMap labels;
};

// Edge-list text format: one "u w" pair per line, '#' starts a comment,
// blank lines ignored. An optional "n=<count>" line declares the node count
// so graphs with isolated nodes round-trip. Node labels are arbitrary
// whitespace-free tokens; ids are assigned in order of first appearance.
inline ParsedGraph parse_edge_list(std::istream& in) {
    ParsedGraph out;
    std::vector<Edge> edges;
    std::size_t declared = 0;
    bool has_declared = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string a, b;
        if (!(ls >> a)) continue;  // blank
        if (a.rfind("n=", 0) == 0) {
            std::string rest;
            if (ls >> rest) throw ParseError(lineno, "unexpected token after node-count header");
            const std::string digits = a.substr(2);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError(lineno, "malformed node-count header '" + a + "'");
            declared = std::max(declared, static_cast<std::size_t>(std::stoull(digits)));
            has_declared = true;
            continue;
        }
        if (!(ls >> b)) throw ParseError(lineno, "expected two node labels, got one");
        std::string extra;
        if (ls >> extra) throw ParseError(lineno, "expected two node labels, got more");
        NodeId ua = out.labels.intern(a);  // intern left-to-right: argument
        NodeId ub = out.labels.intern(b);  // evaluation order is unspecified
        edges.emplace_back(ua, ub);
    }
    std::size_t n = out.labels.id_to_label.size();
    if (has_declared) {
        if (declared < n)
            throw ParseError(lineno, "node-count header smaller than number of distinct labels");
        n = declared;
    }
    out.graph = Graph(n, std::move(edges));
    return out;
}

inline ParsedGraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

/// Writes the canonical form: node-count header, then edges sorted by id
/// pair. Always emitting the header keeps isolated nodes intact on re-parse.
inline void write_edge_list(std::ostream& out, const Graph& g, const LabelMap& labels) {
    out << "n=" << g.node_count() << "\n";
    for (const auto& [u, w] : g.edges()) out << labels.label(u) << " " << labels.label(w) << "\n";
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    write_edge_list(out, g, LabelMap{});
}

}  // namespace privgraph
