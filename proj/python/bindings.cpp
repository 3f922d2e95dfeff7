// Python bindings for the exact tight-span toolkit.  Rationals cross
// the boundary as fractions.Fraction (floats are rejected, matching the
// library's exactness contract).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tspan/distance_space.hpp"
#include "tspan/diversity.hpp"
#include "tspan/domination.hpp"
#include "tspan/errors.hpp"
#include "tspan/json_io.hpp"
#include "tspan/real_tree.hpp"
#include "tspan/tightspan.hpp"

namespace py = pybind11;
using namespace tspan;

namespace pybind11::detail {

template <>
struct type_caster<Rational> {
    PYBIND11_TYPE_CASTER(Rational, const_name("Fraction"));

    bool load(handle src, bool) {
        if (PyBool_Check(src.ptr()) || PyFloat_Check(src.ptr())) {
            return false;  // floats stay out by design
        }
        try {
            if (PyLong_Check(src.ptr())) {
                value = parse_rational(py::str(src).cast<std::string>());
                return true;
            }
            if (PyUnicode_Check(src.ptr())) {
                value = parse_rational(src.cast<std::string>());
                return true;
            }
            const object fraction = module_::import("fractions").attr("Fraction");
            if (isinstance(src, fraction)) {
                value = parse_rational(py::str(src).cast<std::string>());
                return true;
            }
        } catch (const ParseError&) {
            return false;
        }
        return false;
    }

    static handle cast(const Rational& src, return_value_policy, handle) {
        const object fraction = module_::import("fractions").attr("Fraction");
        return fraction(to_string(src)).release();
    }
};

}  // namespace pybind11::detail

namespace {

std::string certificate_repr(const Certificate& certificate) {
    return "<Certificate " + to_string(certificate) + ">";
}

DominatingMetric as_dominating(const DistanceSpace& base, const DistanceSpace& rho) {
    return DominatingMetric(Metric(rho), base);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Exact tight spans of finite distance spaces, subtree representations, "
        "dominating metrics and diversities.";

    py::register_exception<Error>(m, "TspanError", PyExc_ValueError);

    py::class_<Certificate>(m, "Certificate")
        .def_property_readonly("kind",
                               [](const Certificate& c) { return to_string(c.kind); })
        .def_readonly("witness", &Certificate::witness)
        .def_readonly("lhs", &Certificate::lhs)
        .def_readonly("rhs", &Certificate::rhs)
        .def("ok", &Certificate::ok)
        .def("__bool__", &Certificate::ok)
        .def("__repr__", &certificate_repr);

    py::class_<DistanceSpace>(m, "DistanceSpace")
        .def(py::init<std::vector<std::string>, RationalMatrix>(), py::arg("labels"),
             py::arg("matrix"))
        .def_property_readonly("labels", &DistanceSpace::labels)
        .def_property_readonly("matrix", &DistanceSpace::table)
        .def("__len__", &DistanceSpace::size)
        .def("at",
             [](const DistanceSpace& d, const std::string& a, const std::string& b) {
                 return d.at(d.index_of(a), d.index_of(b));
             })
        .def("diameter", &DistanceSpace::diameter)
        .def("__repr__", [](const DistanceSpace& d) {
            return "<DistanceSpace on " + std::to_string(d.size()) + " points>";
        });

    m.def("check_metric", &check_metric);
    m.def("check_four_point", &check_four_point);
    m.def("check_extended_four_point", &check_extended_four_point);
    m.def("restrict", &restrict, py::arg("space"), py::arg("labels"));

    // Tight span operations on plain coordinate vectors.
    m.def("in_pd", &in_pd);
    m.def("in_td", &in_td);
    m.def("f_sharp", &f_sharp);
    m.def("d_inf", &d_inf);
    m.def("d_inf_by_formula", &d_inf_by_formula);
    m.def("retract_to_td",
          [](const DistanceSpace& d, const PointFunction& f) {
              return retract_to_td(d, f).function;
          });
    m.def(
        "contraction_retract",
        [](const DistanceSpace& d, const PointFunction& f, const Rational& tolerance) {
            ContractionOptions options;
            options.tolerance = tolerance;
            const auto result = contraction_retract(d, f, options);
            return py::make_tuple(result.point, result.snapped);
        },
        py::arg("space"), py::arg("start"), py::arg("tolerance") = pow2_inverse(40));
    m.def("geodesic_point",
          [](const DistanceSpace& d, const std::string& x, const std::string& y,
             const Rational& t) { return geodesic_point(d, x, y, t).function; });
    m.def("kappa_gates", [](const DistanceSpace& d, const std::string& x) {
        std::vector<PointFunction> gates;
        for (const auto& gate : kappa_gates(d, x)) gates.push_back(gate.function);
        return gates;
    });
    m.def("nearest_kappa_point",
          [](const DistanceSpace& d, const PointFunction& f, const std::string& x) {
              return nearest_kappa_point(d, make_tight_span_point(d, f), x).function;
          });
    m.def("kappa_common_point",
          [](const DistanceSpace& d, const std::string& x, const std::string& y) {
              return kappa_common_point(d, x, y).function;
          });
    m.def("verify_kappa_distance",
          [](const DistanceSpace& d, const std::string& x, const std::string& y) {
              const auto witness = verify_kappa_distance(d, x, y);
              return py::make_tuple(witness.in_kappa_x.function, witness.in_kappa_y.function,
                                    witness.distance);
          });
    m.def("tight_span_vertices", &tight_span_vertices);

    // Dominating metrics, exchanged as plain distance spaces.
    m.def("some_dominating_metric", [](const DistanceSpace& d) {
        return some_dominating_metric(d).metric().space();
    });
    m.def("pin_pair", [](const DistanceSpace& base, const DistanceSpace& rho,
                         const std::string& x, const std::string& y) {
        return pin_pair(as_dominating(base, rho), x, y).metric().space();
    });
    m.def(
        "minimal_dominating_metric",
        [](const DistanceSpace& d,
           const std::optional<std::vector<std::pair<std::string, std::string>>>& order) {
            return (order ? minimal_dominating_metric(d, *order)
                          : minimal_dominating_metric(d))
                .metric()
                .space();
        },
        py::arg("space"), py::arg("order") = py::none());
    m.def("verify_minimal", [](const DistanceSpace& base, const DistanceSpace& rho) {
        return verify_minimal(as_dominating(base, rho));
    });
    m.def("kuratowski",
          [](const DistanceSpace& base, const DistanceSpace& rho, const std::string& x) {
              return kuratowski(as_dominating(base, rho), x);
          });
    m.def(
        "embed_minimal_metric",
        [](const DistanceSpace& base, const DistanceSpace& rho, const Rational& tolerance) {
            return embed_minimal_metric(base, as_dominating(base, rho), tolerance);
        },
        py::arg("space"), py::arg("metric"), py::arg("tolerance") = pow2_inverse(40));
    m.def("metric_from_point", [](const DistanceSpace& d, const PointFunction& f) {
        return metric_from_point(d, make_tight_span_point(d, f)).metric().space();
    });

    // Trees and subtree representations.
    py::class_<TreePoint>(m, "TreePoint")
        .def_static("at_vertex", &TreePoint::at_vertex)
        .def_static("on_edge", &TreePoint::on_edge)
        .def_readonly("vertex", &TreePoint::vertex)
        .def_readonly("edge", &TreePoint::edge)
        .def_readonly("offset", &TreePoint::offset)
        .def("is_vertex", &TreePoint::is_vertex);

    py::class_<TreeEdge>(m, "TreeEdge")
        .def_readonly("u", &TreeEdge::u)
        .def_readonly("v", &TreeEdge::v)
        .def_readonly("length", &TreeEdge::length);

    py::class_<TreeSegment>(m, "TreeSegment")
        .def_readonly("edge", &TreeSegment::edge)
        .def_property_readonly("from_offset",
                               [](const TreeSegment& s) { return s.from; })
        .def_property_readonly("to_offset", [](const TreeSegment& s) { return s.to; });

    py::class_<Subtree>(m, "Subtree")
        .def_readonly("vertices", &Subtree::vertices)
        .def_readonly("segments", &Subtree::segments);

    py::class_<WeightedTree>(m, "WeightedTree")
        .def(py::init([](std::size_t vertex_count,
                         const std::vector<std::tuple<std::size_t, std::size_t, Rational>>&
                             edges) {
                 std::vector<TreeEdge> list;
                 for (const auto& [u, v, length] : edges) list.push_back({u, v, length});
                 return WeightedTree(vertex_count, std::move(list));
             }),
             py::arg("vertex_count"), py::arg("edges"))
        .def_property_readonly("vertex_count", &WeightedTree::vertex_count)
        .def_property_readonly("edges", &WeightedTree::edges)
        .def_property_readonly("anchors", &WeightedTree::anchors)
        .def("set_anchor", &WeightedTree::set_anchor)
        .def("anchor", &WeightedTree::anchor)
        .def("degree", &WeightedTree::degree)
        .def("to_newick", [](const WeightedTree& t) { return tree_to_newick(t); })
        .def("__repr__", [](const WeightedTree& t) {
            return "<WeightedTree with " + std::to_string(t.vertex_count()) + " vertices>";
        });

    m.def("tree_distance",
          py::overload_cast<const WeightedTree&, const std::string&, const std::string&>(
              &tree_distance));
    m.def("tree_point_distance",
          py::overload_cast<const WeightedTree&, const TreePoint&, const TreePoint&>(
              &tree_distance));
    m.def("subtree_distance", &subtree_distance);
    m.def("total_length", &total_length);
    m.def("hull_length", &hull_length);
    m.def("additive_tree_reconstruction",
          [](const DistanceSpace& rho) { return additive_tree_reconstruction(Metric(rho)); });

    py::class_<SubtreeRepresentation>(m, "SubtreeRepresentation")
        .def_readonly("tree", &SubtreeRepresentation::tree)
        .def_readonly("subtrees", &SubtreeRepresentation::subtrees);

    m.def("build_subtree_representation", &build_subtree_representation);
    m.def("verify_subtree_representation", &verify_subtree_representation);
    m.def("random_subtree_distance", &random_subtree_distance, py::arg("seed"),
          py::arg("n_points"), py::arg("tree_size"));

    // Diversities.
    py::class_<Diversity>(m, "Diversity")
        .def(py::init<std::vector<std::string>, SubsetFunction, std::size_t>(),
             py::arg("elements"), py::arg("table"),
             py::arg("element_cap") = Diversity::default_element_cap)
        .def_property_readonly("elements", &Diversity::elements)
        .def_property_readonly("table", &Diversity::table)
        .def("at", [](const Diversity& delta,
                      const std::vector<std::string>& members) {
            return delta.at(delta.subset_of_elements(members));
        })
        .def("subset_label",
             [](const Diversity& delta, const std::vector<std::string>& members) {
                 return delta.subset_label(delta.subset_of_elements(members));
             })
        .def("__repr__", [](const Diversity& delta) {
            return "<Diversity on " + std::to_string(delta.ground_size()) + " elements>";
        });

    m.def("check_diversity_axioms", &check_diversity_axioms);
    m.def("diameter_diversity",
          [](const DistanceSpace& rho) { return diameter_diversity(Metric(rho)); });
    m.def("l1_diversity", &l1_diversity);
    m.def("phylogenetic_diversity", &phylogenetic_diversity);
    m.def("d_delta", &d_delta);
    m.def("g_map", &g_map);
    m.def("in_p_delta", &in_p_delta);
    m.def("in_p2", &in_p2);
    m.def("in_t_delta", &in_t_delta);
    m.def("in_t2", &in_t2);
    m.def("delta_t", &delta_t);
    m.def("embed_into_td", &embed_into_td);
    m.def("check_nice", [](const Diversity& delta) {
        const auto result = check_nice(delta);
        return py::make_tuple(result.equal,
                              result.witness ? py::cast(*result.witness) : py::none());
    });
    m.def("is_arboreal", &is_arboreal);
    m.def("b_set", [](const Diversity& delta, const std::vector<std::string>& members) {
        const SubsetMask result = b_set(delta, delta.subset_of_elements(members));
        std::vector<std::string> out;
        for (std::size_t i = 0; i < delta.ground_size(); ++i) {
            if (result >> i & 1) out.push_back(delta.elements()[i]);
        }
        return out;
    });

    py::class_<PhylogeneticResult>(m, "PhylogeneticResult")
        .def_readonly("phylogenetic", &PhylogeneticResult::phylogenetic)
        .def_readonly("tree", &PhylogeneticResult::tree)
        .def_readonly("metric_witness", &PhylogeneticResult::metric_witness)
        .def_property_readonly("witness_subset",
                               [](const PhylogeneticResult& result) -> py::object {
                                   if (!result.witness_subset) return py::none();
                                   return py::cast(*result.witness_subset);
                               })
        .def_readonly("delta_value", &PhylogeneticResult::delta_value)
        .def_readonly("hull_value", &PhylogeneticResult::hull_value)
        .def("__bool__",
             [](const PhylogeneticResult& result) { return result.phylogenetic; });

    m.def("is_phylogenetic", &is_phylogenetic);
}
