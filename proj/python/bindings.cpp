#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "konus/afriat.hpp"
#include "konus/axioms.hpp"
#include "konus/econometrics.hpp"
#include "konus/fixture.hpp"
#include "konus/forecast.hpp"
#include "konus/hierarchy.hpp"
#include "konus/irrationality.hpp"

namespace py = pybind11;
using namespace konus;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix<double> to_matrix(const DoubleArray& a, const char* what) {
    if (a.ndim() != 2) throw InputError(std::string(what) + " must be a 2-D array");
    Matrix<double> m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    auto view = a.unchecked<2>();
    for (py::ssize_t r = 0; r < a.shape(0); ++r)
        for (py::ssize_t c = 0; c < a.shape(1); ++c) m(r, c) = view(r, c);
    return m;
}

py::array_t<double> to_array(const Matrix<double>& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) view(r, c) = m(r, c);
    return out;
}

py::dict verdict_dict(const AxiomVerdict& v) {
    py::dict d;
    d["satisfied"] = v.satisfied;
    d["omega"] = v.omega;
    if (const auto* g = std::get_if<GarpWitness>(&v.witness)) {
        d["chain"] = g->chain;
    } else if (const auto* h = std::get_if<HarpWitness>(&v.witness)) {
        d["cycle"] = h->cycle;
        d["product"] = h->product;
    }
    return d;
}

py::dict size_dict(const PairedSize& p) {
    py::dict d;
    d["trials"] = p.garp.trials;
    d["seed"] = p.seed;
    d["garp_hits"] = p.garp.hits;
    d["harp_hits"] = p.harp.hits;
    d["f_garp"] = p.garp.f_hat();
    d["f_harp"] = p.harp.f_hat();
    return d;
}

py::dict power_dict(const PowerReport& p) {
    py::dict d;
    d["trials"] = p.trials;
    d["seed"] = p.seed;
    d["rejections_g"] = p.rejections_g;
    d["rejections_h"] = p.rejections_h;
    d["w_garp"] = p.w_hat_g();
    d["w_harp"] = p.w_hat_h();
    d["omega_g"] = p.omega_g;
    d["omega_h"] = p.omega_h;
    return d;
}

py::list hierarchy_list(const HierarchyReport& rep) {
    py::list out;
    for (const auto& n : rep.nodes) {
        py::dict d;
        d["name"] = n.name;
        d["depth"] = n.depth;
        d["parent"] = n.parent ? py::cast(*n.parent) : py::none();
        d["goods"] = n.goods.indices();
        d["aggregated"] = n.aggregated;
        d["harp_pass"] = n.harp_pass;
        d["omega_h"] = n.omega_h;
        d["flat_omega_h"] = n.flat_omega_h;
        if (n.series) {
            d["consumption"] = n.series->consumption;
            d["price"] = n.series->price;
        }
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_konus, m) {
    m.doc() = "Revealed-preference tests and Konus-Divisia indices";
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<GarpViolation>(m, "GarpViolation", PyExc_RuntimeError);
    py::register_exception<HarpViolation>(m, "HarpViolation", PyExc_RuntimeError);

    py::class_<TradeStatistics>(m, "TradeStatistics")
        .def(py::init([](const DoubleArray& prices, const DoubleArray& quantities, std::vector<std::string> goods,
                         std::vector<std::string> periods) {
                 return TradeStatistics(to_matrix(prices, "prices"), to_matrix(quantities, "quantities"),
                                        std::move(goods), std::move(periods));
             }),
             py::arg("prices"), py::arg("quantities"), py::arg("good_ids") = std::vector<std::string>{},
             py::arg("period_ids") = std::vector<std::string>{})
        .def_static("load", py::overload_cast<const std::string&, const std::string&>(&load_trade_statistics),
                    py::arg("prices_path"), py::arg("quantities_path"))
        .def_property_readonly("periods", &TradeStatistics::periods)
        .def_property_readonly("goods", &TradeStatistics::goods)
        .def_property_readonly("prices", [](const TradeStatistics& ts) { return to_array(ts.prices()); })
        .def_property_readonly("quantities", [](const TradeStatistics& ts) { return to_array(ts.quantities()); })
        .def_property_readonly("good_ids", &TradeStatistics::good_ids)
        .def_property_readonly("period_ids", &TradeStatistics::period_ids)
        .def("cross_values", [](const TradeStatistics& ts) { return to_array(cross_value_matrix(ts).values); })
        .def("paasche", [](const TradeStatistics& ts) { return to_array(paasche_matrix(ts).values); })
        .def("restrict", [](const TradeStatistics& ts, std::vector<std::size_t> goods) {
            return restrict_to_group(ts, GroupSelection(std::move(goods)));
        })
        .def("__repr__", [](const TradeStatistics& ts) {
            std::ostringstream os;
            os << "TradeStatistics(periods=" << ts.periods() << ", goods=" << ts.goods() << ")";
            return os.str();
        });

    m.def("check_garp",
          [](const TradeStatistics& ts, double omega, double tol) { return verdict_dict(check_garp(ts, omega, tol)); },
          py::arg("ts"), py::arg("omega") = 1.0, py::arg("tolerance") = 0.0);
    m.def("check_harp",
          [](const TradeStatistics& ts, double omega, double tol) { return verdict_dict(check_harp(ts, omega, tol)); },
          py::arg("ts"), py::arg("omega") = 1.0, py::arg("tolerance") = 0.0);

    m.def("harp_irrationality", &harp_irrationality, py::arg("ts"));
    m.def(
        "garp_irrationality",
        [](const TradeStatistics& ts) {
            const GarpIndex g = garp_irrationality(ts);
            return py::make_tuple(g.value, g.attained);
        },
        py::arg("ts"), "Returns (omega_G, attained).");

    m.def(
        "harp_multipliers",
        [](const TradeStatistics& ts, double omega) { return solve_harp_multipliers(ts, omega).lambda; },
        py::arg("ts"), py::arg("omega") = 1.0);
    m.def(
        "afriat_numbers",
        [](const TradeStatistics& ts, double omega) {
            const AfriatSolution s = solve_afriat_numbers(ts, omega);
            return py::make_tuple(s.utility, s.lambda);
        },
        py::arg("ts"), py::arg("omega") = 1.0, "Returns (utility, lambda).");
    m.def(
        "konus_divisia",
        [](const TradeStatistics& ts) {
            const IndexSeries s = konus_divisia_series(ts, solve_harp_multipliers(ts));
            return py::make_tuple(s.consumption, s.price);
        },
        py::arg("ts"), "Returns (consumption index F, price index Q).");

    m.def(
        "gamma_coefficients",
        [](const TradeStatistics& ts, std::vector<double> price_new, double omega) {
            return gamma_coefficients(ts, omega, price_new).gamma;
        },
        py::arg("ts"), py::arg("price_new"), py::arg("omega") = 1.0);
    m.def(
        "kh_membership",
        [](const TradeStatistics& ts, std::vector<double> price_new, std::vector<double> x, double omega) {
            return kh_membership(gamma_coefficients(ts, omega, price_new), ts, x);
        },
        py::arg("ts"), py::arg("price_new"), py::arg("x"), py::arg("omega") = 1.0);
    m.def(
        "kg_membership",
        [](const TradeStatistics& ts, std::vector<double> price_new, std::vector<double> x, double omega) {
            return kg_membership(ts, omega, price_new, x);
        },
        py::arg("ts"), py::arg("price_new"), py::arg("x"), py::arg("omega") = 1.0);

    m.def(
        "forecast_size",
        [](const TradeStatistics& ts, std::size_t trials, std::uint64_t seed, std::size_t workers) {
            PairedSize p;
            {
                py::gil_scoped_release release;
                p = forecast_size(ts, trials, seed, workers);
            }
            return size_dict(p);
        },
        py::arg("ts"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 1);
    m.def(
        "power_estimate",
        [](const TradeStatistics& ts, std::size_t trials, std::uint64_t seed, std::size_t workers,
           std::size_t max_order) {
            PowerReport p;
            {
                py::gil_scoped_release release;
                p = power_estimate(ts, trials, seed, workers, max_order);
            }
            return power_dict(p);
        },
        py::arg("ts"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 1, py::arg("max_order") = 2);

    m.def(
        "fit_ar",
        [](std::vector<double> z, std::size_t max_order) {
            const ARModel a = fit_ar(z, max_order);
            py::dict d;
            d["order"] = a.order;
            d["beta"] = a.beta;
            d["std_errors"] = a.std_errors;
            d["aic"] = a.aic;
            return d;
        },
        py::arg("series"), py::arg("max_order") = 2);

    m.def(
        "hierarchy",
        [](const TradeStatistics& ts, const std::string& tree_json, double omega) {
            std::istringstream in(tree_json);
            return hierarchy_list(build_hierarchy(ts, parse_partition_tree(in), omega));
        },
        py::arg("ts"), py::arg("tree_json"), py::arg("omega") = 1.0);

    m.def(
        "counterexample_statistics", [](double eps) { return CounterexampleFixture(eps).statistics(); },
        py::arg("epsilon") = 0.0);
    m.def(
        "synthetic_statistics",
        [](std::size_t periods, std::size_t goods, const std::string& kind, std::uint64_t seed) {
            SyntheticSpec spec;
            spec.periods = periods;
            spec.goods = goods;
            if (kind == "ces") spec.kind = SyntheticKind::Ces;
            else if (kind == "random") spec.kind = SyntheticKind::Random;
            else throw InputError("kind must be 'ces' or 'random'");
            spec.seed = seed;
            return synthetic_statistics(spec);
        },
        py::arg("periods"), py::arg("goods"), py::arg("kind") = "ces", py::arg("seed") = 1);
}
