#include "konus/hierarchy.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "konus/axioms.hpp"
#include "konus/irrationality.hpp"

namespace konus {

namespace {

using nlohmann::json;

std::vector<GoodRef> parse_goods(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw InputError(where + ": goods must be an array");
    std::vector<GoodRef> out;
    for (const auto& g : arr) {
        if (g.is_string()) out.push_back({g.get<std::string>(), std::nullopt});
        else if (g.is_number_unsigned()) out.push_back({{}, g.get<std::size_t>()});
        else throw InputError(where + ": good must be a label or a nonnegative integer");
    }
    return out;
}

PartitionTree parse_node(const json& j, const std::string& source, const std::string& path) {
    if (!j.is_object()) throw InputError(source + ": node " + path + " must be an object");
    PartitionTree node;
    node.name = j.value("name", path);
    const std::string where = source + ": node '" + node.name + "'";
    const bool has_goods = j.contains("goods");
    const bool has_children = j.contains("children") || j.contains("passthrough");
    if (has_goods == has_children) throw InputError(where + " needs either goods or children/passthrough");
    if (has_goods) {
        node.goods = parse_goods(j.at("goods"), where);
        if (node.goods.empty()) throw InputError(where + " has no goods");
        return node;
    }
    if (j.contains("children")) {
        const auto& ch = j.at("children");
        if (!ch.is_array()) throw InputError(where + ": children must be an array");
        for (std::size_t i = 0; i < ch.size(); ++i)
            node.children.push_back(parse_node(ch[i], source, path + "/" + std::to_string(i)));
    }
    if (j.contains("passthrough")) node.passthrough = parse_goods(j.at("passthrough"), where);
    if (node.children.empty() && node.passthrough.empty()) throw InputError(where + " is empty");
    return node;
}

std::size_t resolve(const GoodRef& g, const TradeStatistics& ts) {
    if (g.position) {
        if (*g.position >= ts.goods()) throw InputError("good position " + std::to_string(*g.position) + " out of range");
        return *g.position;
    }
    const auto& ids = ts.good_ids();
    auto it = std::find(ids.begin(), ids.end(), g.id);
    if (it == ids.end()) throw InputError("unknown good '" + g.id + "'");
    return static_cast<std::size_t>(it - ids.begin());
}

GroupSelection resolve_all(const std::vector<GoodRef>& refs, const TradeStatistics& ts, const std::string& node) {
    std::vector<std::size_t> idx;
    for (const auto& r : refs) idx.push_back(resolve(r, ts));
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw InputError("node '" + node + "' lists a good twice");
    return GroupSelection(std::move(idx));
}

class Builder {
public:
    Builder(const TradeStatistics& ts, double omega, HierarchyReport& rep) : ts_(ts), omega_(omega), rep_(rep) {}

    std::size_t visit(const PartitionTree& node, std::size_t depth, std::optional<std::size_t> parent) {
        const std::size_t self = rep_.nodes.size();
        rep_.nodes.push_back({});
        rep_.nodes[self].name = node.name;
        rep_.nodes[self].depth = depth;
        rep_.nodes[self].parent = parent;

        if (node.leaf()) {
            const GroupSelection goods = resolve_all(node.goods, ts_, node.name);
            rep_.nodes[self].goods = goods;
            rep_.nodes[self].aggregated = true;
            std::optional<TradeStatistics> restricted;
            try {
                restricted = restrict_to_group(ts_, goods);
            } catch (const InputError& e) {
                throw InputError("node '" + node.name + "': " + e.what());
            }
            evaluate(self, std::move(*restricted));
            return self;
        }

        std::vector<std::size_t> kids;
        for (const auto& c : node.children) kids.push_back(visit(c, depth + 1, self));
        std::optional<GroupSelection> pass;
        if (!node.passthrough.empty()) pass = resolve_all(node.passthrough, ts_, node.name);

        std::vector<std::size_t> covered = pass ? pass->indices() : std::vector<std::size_t>{};
        for (std::size_t k : kids) {
            const auto& g = rep_.nodes[k].goods.indices();
            covered.insert(covered.end(), g.begin(), g.end());
        }
        std::sort(covered.begin(), covered.end());
        if (std::adjacent_find(covered.begin(), covered.end()) != covered.end())
            throw InputError("node '" + node.name + "': children and pass-through goods overlap");

        HierarchyNode& me = rep_.nodes[self];
        me.children = kids;
        me.goods = GroupSelection(covered);
        me.flat_omega_h = harp_irrationality(restrict_to_group(ts_, me.goods));

        const bool ready = std::all_of(kids.begin(), kids.end(), [&](std::size_t k) { return rep_.nodes[k].harp_pass; });
        if (!ready) return self;
        std::vector<CompositeGood> composites;
        for (std::size_t k : kids)
            composites.push_back({rep_.nodes[k].name, *rep_.nodes[k].series, rep_.nodes[k].goods});
        rep_.nodes[self].aggregated = true;
        evaluate(self, aggregate(ts_, composites, pass));
        return self;
    }

private:
    void evaluate(std::size_t self, TradeStatistics stats) {
        HierarchyNode& me = rep_.nodes[self];
        me.omega_h = harp_irrationality(stats);
        if (me.children.empty()) me.flat_omega_h = me.omega_h;
        me.harp_pass = check_harp(stats, omega_).satisfied;
        if (me.harp_pass) {
            me.multipliers = solve_harp_multipliers(stats, omega_);
            me.series = konus_divisia_series(stats, *me.multipliers);
        }
        me.statistics = std::move(stats);
    }

    const TradeStatistics& ts_;
    double omega_;
    HierarchyReport& rep_;
};

}  // namespace

PartitionTree parse_partition_tree(std::istream& in, const std::string& source) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": " + e.what());
    }
    return parse_node(j, source, "root");
}

PartitionTree load_partition_tree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_partition_tree(in, path);
}

TradeStatistics aggregate(const TradeStatistics& ts, const std::vector<CompositeGood>& children,
                          const std::optional<GroupSelection>& passthrough) {
    const std::size_t T = ts.periods();
    std::vector<unsigned char> used(ts.goods(), 0);
    auto claim = [&](const GroupSelection& g) {
        g.validate_for(ts.goods());
        for (std::size_t i : g.indices()) {
            if (used[i]) throw InputError("aggregate: good '" + ts.good_ids()[i] + "' appears in two blocks");
            used[i] = 1;
        }
    };
    for (const auto& c : children) {
        claim(c.goods);
        if (c.series.price.size() != T || c.series.consumption.size() != T)
            throw InputError("aggregate: index series for '" + c.name + "' has wrong length");
    }
    if (passthrough) claim(*passthrough);

    const std::size_t width = children.size() + (passthrough ? passthrough->size() : 0);
    if (width == 0) throw InputError("aggregate: nothing to aggregate");
    Matrix<double> p(T, width), x(T, width);
    std::vector<std::string> ids;
    for (const auto& c : children) ids.push_back(c.name);
    if (passthrough)
        for (std::size_t i : passthrough->indices()) ids.push_back(ts.good_ids()[i]);
    for (std::size_t t = 0; t < T; ++t) {
        std::size_t col = 0;
        for (const auto& c : children) {
            p(t, col) = c.series.price[t];
            x(t, col) = c.series.consumption[t];
            ++col;
        }
        if (passthrough)
            for (std::size_t i : passthrough->indices()) {
                p(t, col) = ts.price(t)[i];
                x(t, col) = ts.quantity(t)[i];
                ++col;
            }
    }
    return TradeStatistics(std::move(p), std::move(x), std::move(ids), ts.period_ids());
}

HierarchyReport build_hierarchy(const TradeStatistics& ts, const PartitionTree& tree, double omega) {
    HierarchyReport rep;
    rep.omega = omega;
    Builder(ts, omega, rep).visit(tree, 0, std::nullopt);
    return rep;
}

std::string render_tree(const HierarchyReport& report) {
    std::ostringstream os;
    for (const auto& n : report.nodes) {
        os << std::string(2 * n.depth, ' ') << n.name << " [" << n.goods.size() << " goods] ";
        if (!n.aggregated) os << "not aggregated (a child failed)";
        else os << (n.harp_pass ? "HARP pass" : "HARP fail") << " omega_H=" << n.omega_h;
        if (!n.children.empty()) os << " flat omega_H=" << n.flat_omega_h;
        os << '\n';
    }
    return os.str();
}

}  // namespace konus
