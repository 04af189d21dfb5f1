#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "konus/afriat.hpp"
#include "konus/axioms.hpp"
#include "konus/econometrics.hpp"
#include "konus/fixture.hpp"
#include "konus/forecast.hpp"
#include "konus/hierarchy.hpp"
#include "konus/irrationality.hpp"
#include "report.hpp"

namespace konus::cli {

namespace {

struct Options {
    std::string prices, quantities;
    double omega = 1.0;
    double tolerance = 0.0;
    std::string out;
    std::size_t workers = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 0;

    // test
    std::string axiom = "both";
    // forecast
    std::vector<double> price_new;
    double budget = 0.0;
    std::vector<std::string> points;
    bool no_direct_edge = false;
    // power
    std::size_t max_order = 2;
    // groups
    std::vector<std::size_t> sizes;
    std::size_t samples = 1000;
    // hierarchy
    std::string tree;
    // fixture
    double epsilon = 0.0;
    bool check_inclusion = false;
    std::size_t resolution = 64;
    SyntheticSpec synthetic;
    std::string kind = "ces";
    // replay
    std::string manifest;
};

void add_data(CLI::App* sub, Options& o) {
    sub->add_option("prices", o.prices, "Price table (CSV, periods by goods)")->required()->check(CLI::ExistingFile);
    sub->add_option("quantities", o.quantities, "Quantity table (CSV, same layout)")
        ->required()
        ->check(CLI::ExistingFile);
}

void add_out(CLI::App* sub, Options& o) {
    sub->add_option("--out", o.out, "Output directory (default $KONUS_OUT or ./konus-out)");
}

void add_omega(CLI::App* sub, Options& o) {
    sub->add_option("--omega", o.omega, "Efficiency level omega")->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", o.tolerance, "Additive slack for axiom comparisons")->check(CLI::NonNegativeNumber);
}

void add_workers(CLI::App* sub, Options& o) {
    sub->add_option("--workers", o.workers, "Worker threads (0 = hardware concurrency)");
}

std::string verdict_word(bool ok) { return ok ? "satisfied" : "violated"; }

std::vector<double> parse_point(const std::string& text, std::size_t m) {
    std::vector<double> x;
    std::stringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        try {
            std::size_t used = 0;
            x.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw InputError("point '" + text + "': unparseable value '" + cell + "'");
        }
    }
    if (x.size() != m)
        throw InputError("point '" + text + "' has " + std::to_string(x.size()) + " coordinates, expected " +
                         std::to_string(m));
    for (double v : x)
        if (!(v >= 0.0)) throw InputError("point '" + text + "' has a negative coordinate");
    return x;
}

class Context {
public:
    Context(std::string command, const std::vector<std::string>& args, const Options& o)
        : out(resolve_output_dir(o.out)) {
        manifest.command = std::move(command);
        manifest.argv = args;
    }

    TradeStatistics load(const Options& o) {
        record_input(o.prices);
        record_input(o.quantities);
        return load_trade_statistics(o.prices, o.quantities);
    }

    void record_input(const std::string& path) {
        const std::string abs = std::filesystem::absolute(path).lexically_normal().string();
        manifest.inputs.push_back(abs);
        for (auto& a : manifest.argv)
            if (a == path) a = abs;
    }

    int finish(int code) {
        out.write_manifest(manifest);
        std::cout << "outputs written to " << out.path().string() << "\n";
        return code;
    }

    OutputDir out;
    RunManifest manifest;
};

int cmd_test(Context& ctx, const Options& o) {
    const TradeStatistics ts = ctx.load(o);
    ctx.manifest.omega = o.omega;
    ctx.manifest.tolerance = o.tolerance;
    std::vector<Row> rows;
    bool all = true;
    auto report = [&](const std::string& name, const AxiomVerdict& v) {
        const std::string text = v.satisfied ? "" : describe(v.witness, ts, o.omega);
        std::cout << name << "(" << format_number(o.omega) << "): " << verdict_word(v.satisfied) << "\n";
        if (!v.satisfied) std::cout << "  " << text << "\n";
        rows.push_back({name, format_number(o.omega), format_number(o.tolerance), v.satisfied ? "1" : "0", text});
        all = all && v.satisfied;
    };
    if (o.axiom != "harp") report("GARP", check_garp(ts, o.omega, o.tolerance));
    if (o.axiom != "garp") report("HARP", check_harp(ts, o.omega, o.tolerance));
    ctx.out.write_csv("verdict.csv", {"axiom", "omega", "tolerance", "satisfied", "witness"}, rows);
    return ctx.finish(all ? kExitPass : kExitViolated);
}

int cmd_indices(Context& ctx, const Options& o) {
    const TradeStatistics ts = ctx.load(o);
    ctx.manifest.omega = o.omega;
    ctx.manifest.tolerance = o.tolerance;
    const auto& ids = ts.period_ids();
    bool ok = true;
    try {
        const HarpMultipliers lm = solve_harp_multipliers(ts, o.omega, o.tolerance);
        const IndexSeries series = konus_divisia_series(ts, lm);
        std::vector<Row> rows;
        for (std::size_t t = 0; t < ts.periods(); ++t)
            rows.push_back({ids[t], format_number(lm.lambda[t]), format_number(series.consumption[t]),
                            format_number(series.price[t])});
        ctx.out.write_csv("indices.csv", {"period", "lambda", "consumption_index", "price_index"}, rows);
        std::cout << "HARP(" << format_number(o.omega) << ") multipliers and Konus-Divisia indices:\n";
        for (const auto& r : rows) std::cout << "  " << r[0] << "  lambda=" << r[1] << "  F=" << r[2] << "  Q=" << r[3] << "\n";
    } catch (const HarpViolation& e) {
        ok = false;
        std::cout << describe(e.witness, ts, o.omega) << "\n";
    }
    try {
        const AfriatSolution sol = solve_afriat_numbers(ts, o.omega, o.tolerance);
        std::vector<Row> rows;
        for (std::size_t t = 0; t < ts.periods(); ++t)
            rows.push_back({ids[t], format_number(sol.utility[t]), format_number(sol.lambda[t])});
        ctx.out.write_csv("afriat.csv", {"period", "utility", "lambda"}, rows);
        std::cout << "GARP(" << format_number(o.omega) << ") Afriat numbers written\n";
    } catch (const GarpViolation& e) {
        ok = false;
        std::cout << describe(e.witness, ts, o.omega) << "\n";
    }
    return ctx.finish(ok ? kExitPass : kExitViolated);
}

int cmd_irrationality(Context& ctx, const Options& o) {
    const TradeStatistics ts = ctx.load(o);
    const IrrationalityReport r = irrationality_report(ts);
    const std::string g_note = r.attained_g ? "attained" : "infimum, not attained";
    std::cout << "omega_G = " << format_number(r.omega_g) << " (" << g_note << ")\n";
    std::cout << "omega_H = " << format_number(r.omega_h) << "\n";
    const bool has_g = !std::holds_alternative<std::monostate>(r.garp_witness);
    const bool has_h = r.omega_h > 1.0 && !std::holds_alternative<std::monostate>(r.harp_witness);
    const std::string gw = has_g ? describe(r.garp_witness, ts, std::nextafter(r.omega_g, 0.0)) : "";
    const std::string hw = has_h ? describe(r.harp_witness, ts, 1.0) : "";
    ctx.out.write_csv("irrationality.csv", {"index", "value", "attained", "witness"},
                      {{"omega_G", format_number(r.omega_g), r.attained_g ? "1" : "0", gw},
                       {"omega_H", format_number(r.omega_h), "1", hw}});
    return ctx.finish(kExitPass);
}

int cmd_forecast(Context& ctx, const Options& o, bool seeded) {
    const TradeStatistics ts = ctx.load(o);
    ctx.manifest.omega = o.omega;
    if (o.price_new.size() != ts.goods())
        throw InputError("--price-new has " + std::to_string(o.price_new.size()) + " entries, expected " +
                         std::to_string(ts.goods()));
    if (o.trials > 0 && !seeded) throw InputError("forecast size estimation needs an explicit --seed");

    ForecastCone cone;
    try {
        cone = gamma_coefficients(ts, o.omega, o.price_new);
    } catch (const HarpViolation& e) {
        std::cout << describe(e.witness, ts, o.omega) << "\n";
        return ctx.finish(kExitViolated);
    }
    std::vector<Row> gamma_rows;
    for (std::size_t s = 0; s < ts.periods(); ++s) gamma_rows.push_back({ts.period_ids()[s], format_number(cone.gamma[s])});
    ctx.out.write_csv("gamma.csv", {"period", "gamma"}, gamma_rows);
    std::cout << "gamma:";
    for (double g : cone.gamma) std::cout << " " << format_number(g);
    std::cout << "\n";

    if (o.budget > 0.0) {
        const Polytope poly = kh_polytope(cone, ts, o.budget);
        ctx.out.write_polytope("kh", poly, ts.good_ids());
        if (poly.vertices_enumerated) {
            std::cout << "K_H vertices on the budget plane:\n";
            for (const auto& v : poly.vertices) {
                std::cout << " ";
                for (double x : v) std::cout << " " << format_number(x);
                std::cout << "\n";
            }
        }
    }

    if (!o.points.empty()) {
        Row header{"point"};
        header.insert(header.end(), ts.good_ids().begin(), ts.good_ids().end());
        header.insert(header.end(), {"in_kh", "in_kg", "law_of_demand"});
        std::vector<Row> rows;
        for (std::size_t i = 0; i < o.points.size(); ++i) {
            const auto x = parse_point(o.points[i], ts.goods());
            const bool kh = kh_membership(cone, ts, x, o.tolerance);
            const bool kg = kg_membership(ts, o.omega, o.price_new, x, o.tolerance);
            const bool lod = law_of_demand_outer(ts, o.omega, o.price_new, x, !o.no_direct_edge);
            Row r{std::to_string(i + 1)};
            for (double v : x) r.push_back(format_number(v));
            r.insert(r.end(), {kh ? "1" : "0", kg ? "1" : "0", lod ? "1" : "0"});
            rows.push_back(std::move(r));
            std::cout << "point " << o.points[i] << ": K_H " << (kh ? "in" : "out") << ", K_G " << (kg ? "in" : "out")
                      << ", law of demand " << (lod ? "in" : "out") << "\n";
        }
        ctx.out.write_csv("points.csv", header, rows);
    }

    if (o.trials > 0) {
        ctx.manifest.seed = o.seed;
        ctx.manifest.trials = o.trials;
        const PairedSize size = forecast_size(ts, o.trials, o.seed, o.workers);
        std::vector<Row> rows;
        for (const SizeReport* r : {&size.garp, &size.harp}) {
            rows.push_back({r->axiom, std::to_string(r->trials), std::to_string(r->hits), format_number(r->f_hat()),
                            std::to_string(o.seed)});
            std::cout << "F_" << r->axiom << " = " << format_number(r->f_hat()) << " (" << r->hits << "/" << r->trials
                      << ")\n";
        }
        ctx.out.write_csv("size.csv", {"axiom", "B", "hits", "f_hat", "seed"}, rows);
    }
    return ctx.finish(kExitPass);
}

int cmd_power(Context& ctx, const Options& o) {
    const TradeStatistics ts = ctx.load(o);
    ctx.manifest.seed = o.seed;
    ctx.manifest.trials = o.trials;
    const auto models = fit_price_models(ts, o.max_order);
    std::vector<Row> model_rows;
    for (const auto& m : models) {
        Row r{m.good_id, std::to_string(m.order)};
        for (std::size_t k = 0; k <= 2; ++k) r.push_back(k < m.beta.size() ? format_number(m.beta[k]) : "");
        r.push_back(format_number(m.sigma2));
        r.push_back(format_number(m.aic));
        model_rows.push_back(std::move(r));
    }
    ctx.out.write_csv("ar_models.csv", {"good", "order", "beta0", "beta1", "beta2", "sigma2", "aic"}, model_rows);

    const PowerReport p = power_estimate(ts, o.trials, o.seed, o.workers, o.max_order);
    ctx.out.write_csv("power.csv", {"axiom", "B", "rejections", "w_hat", "seed"},
                      {{"GARP", std::to_string(p.trials), std::to_string(p.rejections_g), format_number(p.w_hat_g()),
                        std::to_string(o.seed)},
                       {"HARP", std::to_string(p.trials), std::to_string(p.rejections_h), format_number(p.w_hat_h()),
                        std::to_string(o.seed)}});
    std::vector<Row> trial_rows;
    for (std::size_t b = 0; b < p.trials; ++b)
        trial_rows.push_back({std::to_string(b), format_number(p.omega_g[b]), format_number(p.omega_h[b])});
    ctx.out.write_csv("power_trials.csv", {"trial", "omega_G", "omega_H"}, trial_rows);
    std::cout << "W_G = " << format_number(p.w_hat_g()) << " (" << p.rejections_g << "/" << p.trials << ")\n";
    std::cout << "W_H = " << format_number(p.w_hat_h()) << " (" << p.rejections_h << "/" << p.trials << ")\n";
    return ctx.finish(kExitPass);
}

int cmd_groups(Context& ctx, const Options& o) {
    const TradeStatistics ts = ctx.load(o);
    ctx.manifest.seed = o.seed;
    ctx.manifest.trials = o.samples;
    std::vector<std::size_t> sizes = o.sizes;
    if (sizes.empty())
        for (std::size_t k = 2; k <= ts.goods(); ++k) sizes.push_back(k);
    const auto curve = random_group_probability(ts, sizes, o.samples, o.seed, o.workers);
    std::vector<Row> rows;
    for (std::size_t i = 0; i < curve.sizes.size(); ++i) {
        rows.push_back({std::to_string(curve.sizes[i]), std::to_string(curve.groups[i]),
                        curve.exhaustive[i] ? "1" : "0", std::to_string(curve.resampled[i]),
                        format_number(curve.p_garp[i]), format_number(curve.p_harp[i])});
        std::cout << "size " << curve.sizes[i] << ": p_GARP=" << rows.back()[4] << " p_HARP=" << rows.back()[5]
                  << (curve.exhaustive[i] ? " (all groups)" : "") << "\n";
    }
    ctx.out.write_csv("groups.csv", {"size", "groups", "exhaustive", "resampled", "p_garp", "p_harp"}, rows);
    return ctx.finish(kExitPass);
}

int cmd_hierarchy(Context& ctx, const Options& o) {
    const TradeStatistics ts = ctx.load(o);
    ctx.record_input(o.tree);
    ctx.manifest.omega = o.omega;
    const PartitionTree tree = load_partition_tree(o.tree);
    const HierarchyReport rep = build_hierarchy(ts, tree, o.omega);
    std::vector<Row> nodes, series;
    for (const auto& n : rep.nodes) {
        std::string goods;
        for (std::size_t g : n.goods.indices()) goods += (goods.empty() ? "" : " ") + ts.good_ids()[g];
        nodes.push_back({n.name, std::to_string(n.depth), n.parent ? rep.nodes[*n.parent].name : "",
                         std::to_string(n.goods.size()), goods, n.aggregated ? "1" : "0", n.harp_pass ? "1" : "0",
                         n.aggregated ? format_number(n.omega_h) : "", format_number(n.flat_omega_h)});
        if (n.series)
            for (std::size_t t = 0; t < ts.periods(); ++t)
                series.push_back({n.name, ts.period_ids()[t], format_number(n.series->consumption[t]),
                                  format_number(n.series->price[t])});
    }
    ctx.out.write_csv("hierarchy.csv",
                      {"node", "depth", "parent", "size", "goods", "aggregated", "harp_pass", "omega_h", "flat_omega_h"},
                      nodes);
    ctx.out.write_csv("node_indices.csv", {"node", "period", "consumption_index", "price_index"}, series);
    const std::string text = render_tree(rep);
    ctx.out.write_text("tree.txt", text);
    std::cout << text;
    return ctx.finish(kExitPass);
}

int cmd_counterexample(Context& ctx, const Options& o) {
    const CounterexampleFixture fix(o.epsilon);
    const TradeStatistics base = fix.statistics();
    ctx.out.write_matrix("prices.csv", base.prices(), base.period_ids(), base.good_ids());
    ctx.out.write_matrix("quantities.csv", base.quantities(), base.period_ids(), base.good_ids());
    const auto xs = intersection_demands(fix);
    std::vector<Row> xrows;
    for (std::size_t t = 0; t < 3; ++t) xrows.push_back({base.period_ids()[t], format_number(xs[t])});
    ctx.out.write_csv("intersection_demands.csv", {"period", "expenditure"}, xrows);

    const ForecastCone cone = gamma_coefficients(base, 1.0, fix.price_new);
    const Polytope kh = kh_polytope(cone, base, fix.x_new);
    const Polytope g = support_polytope(fix);
    ctx.out.write_polytope("kh", kh, base.good_ids());
    ctx.out.write_polytope("g", g, base.good_ids());

    auto print = [](const std::string& name, const Polytope& p) {
        std::cout << name << " vertices:";
        for (const auto& v : p.vertices) {
            std::cout << " (";
            for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? ", " : "") << format_number(v[i]);
            std::cout << ")";
        }
        std::cout << "\n";
    };
    std::cout << "epsilon = " << format_number(o.epsilon) << ", GARP " << verdict_word(check_garp(base).satisfied)
              << ", HARP " << verdict_word(check_harp(base).satisfied) << "\n";
    print("K_H", kh);
    print("G", g);

    int code = kExitPass;
    if (o.check_inclusion) {
        const InclusionCheck c = check_inclusion(fix, o.resolution);
        std::string witness;
        for (std::size_t i = 0; i < c.witness.size(); ++i) witness += (i ? " " : "") + format_number(c.witness[i]);
        ctx.out.write_csv("inclusion.csv",
                          {"grid_points", "in_kh", "in_g", "kh_outside_g", "g_outside_kh", "g_mismatch",
                           "vertices_in_g", "strict", "witness"},
                          {{std::to_string(c.grid_points), std::to_string(c.in_kh), std::to_string(c.in_g),
                            std::to_string(c.kh_outside_g), std::to_string(c.g_outside_kh),
                            std::to_string(c.g_mismatch), c.vertices_in_g ? "1" : "0", c.strict() ? "1" : "0",
                            witness}});
        if (c.strict()) {
            std::cout << "K_H strictly contained in G (witness " << witness << ")\n";
        } else {
            std::cout << "strict inclusion not confirmed: " << c.kh_outside_g << " grid points in K_H outside G\n";
            code = kExitViolated;
        }
    }
    return ctx.finish(code);
}

int cmd_synthetic(Context& ctx, Options o) {
    o.synthetic.kind = o.kind == "random" ? SyntheticKind::Random : SyntheticKind::Ces;
    o.synthetic.seed = o.seed;
    ctx.manifest.seed = o.seed;
    const TradeStatistics ts = synthetic_statistics(o.synthetic);
    ctx.out.write_matrix("prices.csv", ts.prices(), ts.period_ids(), ts.good_ids());
    ctx.out.write_matrix("quantities.csv", ts.quantities(), ts.period_ids(), ts.good_ids());
    std::cout << "synthetic statistics: " << ts.periods() << " periods, " << ts.goods() << " goods\n";
    return ctx.finish(kExitPass);
}

int cmd_replay(const Options& o) {
    std::ifstream in(o.manifest);
    if (!in) throw InputError("cannot open manifest " + o.manifest);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(o.manifest + ": " + e.what());
    }
    if (!j.contains("argv") || !j["argv"].is_array()) throw InputError(o.manifest + ": no argv recorded");
    std::vector<std::string> args;
    for (const auto& a : j["argv"]) {
        if (!a.is_string()) throw InputError(o.manifest + ": argv entries must be strings");
        args.push_back(a.get<std::string>());
    }
    if (!args.empty() && args.front() == "replay") throw InputError(o.manifest + ": cannot replay a replay");
    if (!o.out.empty()) {
        std::vector<std::string> kept;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--out") {
                ++i;
                continue;
            }
            if (args[i].rfind("--out=", 0) == 0) continue;
            kept.push_back(args[i]);
        }
        kept.push_back("--out");
        kept.push_back(o.out);
        args = std::move(kept);
    }
    return run(args);
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Revealed-preference tests, Konus-Divisia indices and forecasting sets", "konus"};
    app.set_version_flag("--version", toolkit_version());
    app.require_subcommand(1);
    Options o;

    auto* test = app.add_subcommand("test", "Check GARP(omega) and HARP(omega)");
    add_data(test, o);
    add_omega(test, o);
    add_out(test, o);
    test->add_option("--axiom", o.axiom, "garp, harp or both")->check(CLI::IsMember({"garp", "harp", "both"}));

    auto* indices = app.add_subcommand("indices", "HARP multipliers, Konus-Divisia indices and Afriat numbers");
    add_data(indices, o);
    add_omega(indices, o);
    add_out(indices, o);

    auto* irr = app.add_subcommand("irrationality", "Irrationality indices omega_G and omega_H");
    add_data(irr, o);
    add_out(irr, o);

    auto* forecast = app.add_subcommand("forecast", "Forecasting sets for a new price vector");
    add_data(forecast, o);
    add_omega(forecast, o);
    add_out(forecast, o);
    add_workers(forecast, o);
    forecast->add_option("--price-new", o.price_new, "New prices, comma separated")->required()->delimiter(',');
    forecast->add_option("--budget", o.budget, "Expenditure for the K_H polytope")->check(CLI::PositiveNumber);
    forecast->add_option("--point", o.points, "Candidate demand to classify, comma separated (repeatable)");
    forecast->add_flag("--no-direct-edge", o.no_direct_edge, "Law-of-demand paths need an intermediate period");
    forecast->add_option("--trials", o.trials, "Monte Carlo trials for the forecast size");
    auto* forecast_seed = forecast->add_option("--seed", o.seed, "Random seed");

    auto* power = app.add_subcommand("power", "Power of the GARP and HARP tests against AR price paths");
    add_data(power, o);
    add_out(power, o);
    add_workers(power, o);
    power->add_option("--trials", o.trials, "Monte Carlo trials")->required()->check(CLI::PositiveNumber);
    power->add_option("--seed", o.seed, "Random seed")->required();
    power->add_option("--max-order", o.max_order, "Largest AR order")->check(CLI::Range(0, 2));

    auto* groups = app.add_subcommand("groups", "Probability that random groups of goods pass GARP and HARP");
    add_data(groups, o);
    add_out(groups, o);
    add_workers(groups, o);
    groups->add_option("--sizes", o.sizes, "Group sizes, comma separated (default 2..m)")->delimiter(',');
    groups->add_option("--samples", o.samples, "Groups per size")->check(CLI::PositiveNumber);
    groups->add_option("--seed", o.seed, "Random seed")->required();

    auto* hierarchy = app.add_subcommand("hierarchy", "Nested Konus-Divisia aggregation along a tree");
    add_data(hierarchy, o);
    add_omega(hierarchy, o);
    add_out(hierarchy, o);
    hierarchy->add_option("--tree", o.tree, "Tree description (JSON)")->required()->check(CLI::ExistingFile);

    auto* fixture = app.add_subcommand("fixture", "Built-in datasets");
    fixture->require_subcommand(1);
    auto* counterexample = fixture->add_subcommand("appendix2", "Three goods on ray Engel curves");
    add_out(counterexample, o);
    counterexample->add_option("--epsilon", o.epsilon, "Off-axis demand share in [0, 1)");
    counterexample->add_flag("--check-inclusion", o.check_inclusion, "Compare K_H with the GARP support set");
    counterexample->add_option("--resolution", o.resolution, "Grid steps per simplex axis")->check(CLI::PositiveNumber);
    auto* synthetic = fixture->add_subcommand("synthetic", "Random or CES statistics");
    add_out(synthetic, o);
    synthetic->add_option("--periods", o.synthetic.periods, "Periods")->check(CLI::PositiveNumber);
    synthetic->add_option("--goods", o.synthetic.goods, "Goods")->check(CLI::PositiveNumber);
    synthetic->add_option("--kind", o.kind, "ces or random")->check(CLI::IsMember({"ces", "random"}));
    synthetic->add_option("--elasticity", o.synthetic.elasticity, "CES substitution elasticity")
        ->check(CLI::PositiveNumber);
    synthetic->add_option("--drift", o.synthetic.price_drift, "Log price step deviation")
        ->check(CLI::NonNegativeNumber);
    synthetic->add_option("--seed", o.seed, "Random seed")->required();

    auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    replay->add_option("manifest", o.manifest, "manifest.json")->required();
    replay->add_option("--out", o.out, "Write to this directory instead");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitInputError;
    }

    if (*replay) return cmd_replay(o);
    auto with_context = [&](const std::string& name, auto&& body) {
        Context ctx(name, args, o);
        return body(ctx);
    };
    if (*test) return with_context("test", [&](Context& c) { return cmd_test(c, o); });
    if (*indices) return with_context("indices", [&](Context& c) { return cmd_indices(c, o); });
    if (*irr) return with_context("irrationality", [&](Context& c) { return cmd_irrationality(c, o); });
    if (*forecast)
        return with_context("forecast", [&](Context& c) { return cmd_forecast(c, o, forecast_seed->count() > 0); });
    if (*power) return with_context("power", [&](Context& c) { return cmd_power(c, o); });
    if (*groups) return with_context("groups", [&](Context& c) { return cmd_groups(c, o); });
    if (*hierarchy) return with_context("hierarchy", [&](Context& c) { return cmd_hierarchy(c, o); });
    if (*counterexample) return with_context("fixture appendix2", [&](Context& c) { return cmd_counterexample(c, o); });
    if (*synthetic) return with_context("fixture synthetic", [&](Context& c) { return cmd_synthetic(c, o); });
    throw std::logic_error("no command selected");
}

int run_guarded(const std::vector<std::string>& args) {
    try {
        return run(args);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const GarpViolation& e) {
        std::cerr << e.what() << "\n";
        return kExitViolated;
    } catch (const HarpViolation& e) {
        std::cerr << e.what() << "\n";
        return kExitViolated;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
}

}  // namespace konus::cli
