#pragma once

#include <cstdint>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace flagcodes {

enum class NodeKind { source, internal, receiver };

// Directed acyclic multigraph with one source, unit-capacity edges, and at
// least one receiver reachable from the source.
class NetworkTopology {
  public:
    NetworkTopology(std::vector<std::string> names, std::vector<NodeKind> kinds,
                    std::vector<std::pair<std::size_t, std::size_t>> edges)
        : names_(std::move(names)), kinds_(std::move(kinds)), edges_(std::move(edges)) {
        require(names_.size() == kinds_.size(), Errc::LengthMismatch,
                "one kind per node required");
        const std::size_t n = names_.size();
        std::size_t sources = 0, receivers = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (kinds_[i] == NodeKind::source) {
                sources++;
                source_ = i;
            }
            if (kinds_[i] == NodeKind::receiver) receivers_.push_back(i);
        }
        receivers = receivers_.size();
        require(sources == 1, Errc::InconsistentInput, "need exactly one source node");
        require(receivers >= 1, Errc::InconsistentInput, "need at least one receiver");

        out_edges_.assign(n, {});
        std::vector<std::size_t> indegree(n, 0);
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto [from, to] = edges_[e];
            require(from < n && to < n, Errc::InconsistentInput, "edge endpoint out of range");
            out_edges_[from].push_back(e);
            ++indegree[to];
        }
        require(indegree[source_] == 0, Errc::InconsistentInput, "source has an in-edge");

        // Kahn's algorithm; smallest-index tie break keeps the order stable.
        auto remaining = indegree;
        std::vector<bool> placed(n, false);
        while (order_.size() < n) {
            std::size_t pick = n;
            for (std::size_t i = 0; i < n; ++i)
                if (!placed[i] && remaining[i] == 0) {
                    pick = i;
                    break;
                }
            require(pick < n, Errc::InconsistentInput, "topology has a cycle");
            placed[pick] = true;
            order_.push_back(pick);
            for (auto e : out_edges_[pick]) --remaining[edges_[e].second];
        }

        std::vector<bool> reached(n, false);
        std::deque<std::size_t> queue{source_};
        reached[source_] = true;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (auto e : out_edges_[u])
                if (!reached[edges_[e].second]) {
                    reached[edges_[e].second] = true;
                    queue.push_back(edges_[e].second);
                }
        }
        for (auto r : receivers_)
            require(reached[r], Errc::InconsistentInput,
                    "receiver " + names_[r] + " unreachable from the source");
    }

    std::size_t node_count() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    NodeKind kind(std::size_t i) const { return kinds_.at(i); }
    std::size_t source() const { return source_; }
    const std::vector<std::size_t>& receivers() const { return receivers_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
    const std::vector<std::size_t>& out_edges(std::size_t node) const {
        return out_edges_.at(node);
    }
    const std::vector<std::size_t>& topological_order() const { return order_; }

    std::size_t node_index(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        fail(Errc::ParseError, "unknown node " + name);
    }

    // Max-flow from the source with all edges at capacity 1 (parallel edges
    // add up), via shortest augmenting paths.
    std::size_t min_cut(std::size_t receiver) const {
        require(receiver < names_.size(), Errc::ParameterOutOfRange, "node index out of range");
        const std::size_t n = names_.size();
        std::vector<std::vector<std::int64_t>> cap(n, std::vector<std::int64_t>(n, 0));
        for (const auto& [from, to] : edges_) ++cap[from][to];
        std::size_t flow = 0;
        while (true) {
            std::vector<std::size_t> parent(n, n);
            parent[source_] = source_;
            std::deque<std::size_t> queue{source_};
            while (!queue.empty() && parent[receiver] == n) {
                const std::size_t u = queue.front();
                queue.pop_front();
                for (std::size_t v = 0; v < n; ++v)
                    if (parent[v] == n && cap[u][v] > 0) {
                        parent[v] = u;
                        queue.push_back(v);
                    }
            }
            if (parent[receiver] == n) return flow;
            std::int64_t bottleneck = INT64_MAX;
            for (std::size_t v = receiver; v != source_; v = parent[v])
                bottleneck = std::min(bottleneck, cap[parent[v]][v]);
            for (std::size_t v = receiver; v != source_; v = parent[v]) {
                cap[parent[v]][v] -= bottleneck;
                cap[v][parent[v]] += bottleneck;
            }
            flow += static_cast<std::size_t>(bottleneck);
        }
    }

  private:
    std::vector<std::string> names_;
    std::vector<NodeKind> kinds_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::vector<std::size_t>> out_edges_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> receivers_;
    std::size_t source_ = 0;
};

// Text format: "node <name> <source|internal|receiver>" lines first,
// then "edge <from> <to>" lines, one per parallel edge.
inline NetworkTopology read_topology(std::istream& is) {
    std::vector<std::string> names;
    std::vector<NodeKind> kinds;
    std::map<std::string, std::size_t> index;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "node") {
            std::string name, kind;
            if (!(ls >> name >> kind)) fail(Errc::ParseError, "node line needs name and kind");
            if (index.count(name)) fail(Errc::ParseError, "duplicate node " + name);
            NodeKind k;
            if (kind == "source")
                k = NodeKind::source;
            else if (kind == "internal")
                k = NodeKind::internal;
            else if (kind == "receiver")
                k = NodeKind::receiver;
            else
                fail(Errc::ParseError, "unknown node kind " + kind);
            index[name] = names.size();
            names.push_back(name);
            kinds.push_back(k);
        } else if (word == "edge") {
            std::string from, to;
            if (!(ls >> from >> to)) fail(Errc::ParseError, "edge line needs two endpoints");
            if (!index.count(from)) fail(Errc::ParseError, "unknown node " + from);
            if (!index.count(to)) fail(Errc::ParseError, "unknown node " + to);
            edges.emplace_back(index[from], index[to]);
        } else {
            fail(Errc::ParseError, "unknown directive " + word);
        }
    }
    return NetworkTopology(std::move(names), std::move(kinds), std::move(edges));
}

inline void write_topology(std::ostream& os, const NetworkTopology& net) {
    for (std::size_t i = 0; i < net.node_count(); ++i) {
        os << "node " << net.name(i) << ' ';
        switch (net.kind(i)) {
            case NodeKind::source: os << "source"; break;
            case NodeKind::internal: os << "internal"; break;
            case NodeKind::receiver: os << "receiver"; break;
        }
        os << '\n';
    }
    for (const auto& [from, to] : net.edges())
        os << "edge " << net.name(from) << ' ' << net.name(to) << '\n';
}

inline NetworkTopology topology_from_string(const std::string& s) {
    std::istringstream is(s);
    return read_topology(is);
}

}  // namespace flagcodes
