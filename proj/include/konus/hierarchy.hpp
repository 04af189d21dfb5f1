#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "konus/afriat.hpp"
#include "konus/core.hpp"

namespace konus {

/// A good named by label or by 0-based column position.
struct GoodRef {
    std::string id;
    std::optional<std::size_t> position;
};

/// Utility tree. A leaf lists goods; an internal node lists child nodes and
/// optional pass-through goods that enter its aggregate unchanged.
struct PartitionTree {
    std::string name;
    std::vector<GoodRef> goods;        // leaf only
    std::vector<PartitionTree> children;
    std::vector<GoodRef> passthrough;  // internal only

    bool leaf() const noexcept { return children.empty() && passthrough.empty(); }
};

/// Parses {"name": ..., "goods": [...]} leaves and
/// {"name": ..., "children": [...], "passthrough": [...]} internal nodes.
/// Goods are label strings or integer positions.
PartitionTree parse_partition_tree(std::istream& in, const std::string& source = "tree");
PartitionTree load_partition_tree(const std::string& path);

/// One child composite good: its index series and the goods it covers.
struct CompositeGood {
    std::string name;
    IndexSeries series;
    GroupSelection goods;
};

/// Statistics over composite goods (price Q_k, quantity F_k) followed by the
/// pass-through goods. Throws InputError when selections overlap.
TradeStatistics aggregate(const TradeStatistics& ts, const std::vector<CompositeGood>& children,
                          const std::optional<GroupSelection>& passthrough);

struct HierarchyNode {
    std::string name;
    std::size_t depth = 0;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
    GroupSelection goods{std::vector<std::size_t>{0}};  // original goods covered
    bool aggregated = false;   // every child passed, so the node's statistics exist
    bool harp_pass = false;
    double omega_h = 0.0;      // of the node's own (aggregated) statistics
    double flat_omega_h = 0.0; // of the original goods it covers
    std::optional<TradeStatistics> statistics;
    std::optional<HarpMultipliers> multipliers;
    std::optional<IndexSeries> series;
};

struct HierarchyReport {
    double omega = 1.0;
    std::vector<HierarchyNode> nodes;  // depth-first pre-order, root first
};

/// Depth-first: leaves are restricted and tested, internal nodes aggregate
/// children that passed HARP(omega). Failed nodes are reported, not thrown.
HierarchyReport build_hierarchy(const TradeStatistics& ts, const PartitionTree& tree, double omega = 1.0);

/// Indented tree with verdicts, one node per line.
std::string render_tree(const HierarchyReport& report);

}  // namespace konus
