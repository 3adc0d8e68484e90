#pragma once

#include <map>
#include <string>
#include <vector>

#include "biofab/stats/ssgsea.hpp"

namespace biofab::split {

/// Pathway hierarchy: nodes carry member gene sets, edges are parent->child.
/// Must be acyclic; isolated nodes act as their own roots.
struct OntologyGraph {
    std::vector<std::string> node_ids;
    std::map<std::string, stats::GeneSet> members;
    std::vector<std::pair<std::string, std::string>> edges;

    void validate() const;  // throws on cycles or unknown edge endpoints

    /// Two-column parent,child delimited text.
    static OntologyGraph from_delimited(const std::string& path);
};

enum class Side { train, test };

struct SubtreeAssignment {
    std::string root;
    std::vector<std::string> nodes;  // root + unclaimed descendants
    Side side = Side::train;
};

/// Subtrees (root plus descendants) sorted by size descending (ties by root
/// id) and assigned alternately starting with train. Nodes reachable from
/// several roots stay with the first subtree in that order.
std::map<std::string, Side> partition_ontology(const OntologyGraph& graph,
                                               std::vector<SubtreeAssignment>* detail = nullptr);

}  // namespace biofab::split
