#include "biofab/split/ontology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "biofab/io/table.hpp"

namespace biofab::split {

void OntologyGraph::validate() const {
    std::set<std::string> known(node_ids.begin(), node_ids.end());
    if (known.size() != node_ids.size())
        throw std::invalid_argument("ontology: duplicate node ids");
    std::map<std::string, std::size_t> in_degree;
    std::map<std::string, std::vector<std::string>> children;
    for (const auto& id : node_ids) in_degree[id] = 0;
    for (const auto& [parent, child] : edges) {
        if (!known.count(parent) || !known.count(child))
            throw std::invalid_argument("ontology: edge references unknown node");
        children[parent].push_back(child);
        ++in_degree[child];
    }
    // Kahn's algorithm; leftovers mean a cycle
    std::vector<std::string> queue;
    for (const auto& [id, deg] : in_degree)
        if (deg == 0) queue.push_back(id);
    std::size_t visited = 0;
    while (!queue.empty()) {
        const std::string id = queue.back();
        queue.pop_back();
        ++visited;
        for (const auto& c : children[id])
            if (--in_degree[c] == 0) queue.push_back(c);
    }
    if (visited != node_ids.size())
        throw std::invalid_argument("ontology: cyclic parent-child relations");
}

OntologyGraph OntologyGraph::from_delimited(const std::string& path) {
    const io::Table t = io::read_table(path);
    const std::size_t cp = t.column("parent"), cc = t.column("child");
    OntologyGraph g;
    std::set<std::string> seen;
    auto add_node = [&](const std::string& id) {
        if (seen.insert(id).second) g.node_ids.push_back(id);
    };
    for (const auto& row : t.rows) {
        add_node(row[cp]);
        add_node(row[cc]);
        g.edges.emplace_back(row[cp], row[cc]);
    }
    g.validate();
    return g;
}

std::map<std::string, Side> partition_ontology(const OntologyGraph& graph,
                                               std::vector<SubtreeAssignment>* detail) {
    graph.validate();

    std::map<std::string, std::vector<std::string>> children;
    std::set<std::string> has_parent;
    for (const auto& [parent, child] : graph.edges) {
        children[parent].push_back(child);
        has_parent.insert(child);
    }

    struct Subtree {
        std::string root;
        std::vector<std::string> nodes;  // full descendant closure, root first
    };
    std::vector<Subtree> subtrees;
    for (const auto& id : graph.node_ids) {
        if (has_parent.count(id)) continue;  // not a root
        Subtree st{id, {}};
        std::set<std::string> visited;
        std::vector<std::string> stack{id};
        while (!stack.empty()) {
            const std::string node = stack.back();
            stack.pop_back();
            if (!visited.insert(node).second) continue;
            st.nodes.push_back(node);
            const auto it = children.find(node);
            if (it != children.end())
                for (const auto& c : it->second) stack.push_back(c);
        }
        std::sort(st.nodes.begin() + 1, st.nodes.end());  // canonical order after the root
        subtrees.push_back(std::move(st));
    }

    std::sort(subtrees.begin(), subtrees.end(), [](const Subtree& a, const Subtree& b) {
        if (a.nodes.size() != b.nodes.size()) return a.nodes.size() > b.nodes.size();
        return a.root < b.root;
    });

    std::map<std::string, Side> assignment;
    std::set<std::string> claimed;
    std::size_t index = 0;
    for (const auto& st : subtrees) {
        SubtreeAssignment sa;
        sa.root = st.root;
        sa.side = index % 2 == 0 ? Side::train : Side::test;
        for (const auto& node : st.nodes) {
            if (!claimed.insert(node).second) continue;  // kept by an earlier subtree
            sa.nodes.push_back(node);
            assignment[node] = sa.side;
        }
        if (detail) detail->push_back(std::move(sa));
        ++index;
    }
    return assignment;
}

}  // namespace biofab::split
