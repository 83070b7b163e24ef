#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "powmon/report_io.hpp"

namespace py = pybind11;
using namespace powmon;

namespace {

// statement failures surface in python as their own exception type
struct theorem_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
T unwrap(Outcome<T> outcome) {
    if (!outcome.ok()) throw theorem_violation(outcome.violation);
    return std::move(*outcome.value);
}

Mask subset_mask(const std::vector<int>& elements) {
    Mask m = 0;
    for (int e : elements) {
        if (e < 0 || e >= 32) throw contract_error("element index out of range");
        m |= Mask{1} << e;
    }
    if (!(m & 1)) throw contract_error("subsets of the carrier must contain 0");
    return m;
}

std::vector<int> subset_elements(Mask m) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (m >> i & 1) out.push_back(i);
    return out;
}

}  // namespace

PYBIND11_MODULE(_powmon, m) {
    m.doc() = "reduced power monoid of a finite abelian group";

    py::register_exception<invariant_error>(m, "InvariantError", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<theorem_violation>(m, "TheoremViolation", PyExc_RuntimeError);

    py::class_<GroupSpec>(m, "GroupSpec")
        .def_readonly("invariant_factors", &GroupSpec::invariant_factors)
        .def_readonly("order", &GroupSpec::order)
        .def("rank", &GroupSpec::rank)
        .def("__eq__", [](const GroupSpec& a, const GroupSpec& b) { return a == b; })
        .def("__repr__", [](const GroupSpec& g) {
            return "GroupSpec([" + format_group(g.invariant_factors) + "])";
        });

    py::class_<Subgroup>(m, "Subgroup")
        .def_readonly("members", &Subgroup::members)
        .def_readonly("order", &Subgroup::order)
        .def("__repr__",
             [](const Subgroup& h) { return "Subgroup(" + format_subset(h.members) + ")"; });

    py::class_<GroupAutMap>(m, "GroupAutMap")
        .def_readonly("image", &GroupAutMap::image)
        .def("is_identity", &GroupAutMap::is_identity);

    py::class_<MonoidMap>(m, "MonoidMap")
        .def_readonly("image", &MonoidMap::image)
        .def("is_identity", &MonoidMap::is_identity)
        .def("__eq__", [](const MonoidMap& a, const MonoidMap& b) { return a == b; });

    py::class_<PullbackResult>(m, "PullbackResult")
        .def_readonly("map", &PullbackResult::map)
        .def_readonly("trivial", &PullbackResult::trivial);

    py::class_<PowerContext>(m, "PowerContext")
        .def(py::init<const GroupSpec&>())
        .def_property_readonly("order", &PowerContext::order)
        .def_property_readonly("carrier_size", &PowerContext::carrier_size);

    m.def("make_group", &make_group, py::arg("factors"));
    m.def("add", &add);
    m.def("negate", &negate);
    m.def("element_order", &element_order);
    m.def("subgroup_generated", &subgroup_generated);
    m.def("enumerate_subgroups", &enumerate_subgroups, py::arg("group"),
          py::arg("order_bound") = kDefaultGroupOrderBound);
    m.def("enumerate_group_automorphisms", &enumerate_group_automorphisms, py::arg("group"),
          py::arg("order_bound") = kDefaultGroupOrderBound);
    m.def("classify_invariant_factors",
          py::overload_cast<const GroupSpec&>(&classify_invariant_factors));

    m.def("subset_mask", &subset_mask, "bitmask of a zero-containing element list");
    m.def("subset_elements", &subset_elements, "sorted element list of a mask");

    m.def("sumset", &sumset);
    m.def("n_fold_sum", &n_fold_sum);
    m.def("stabilization_index", [](const PowerContext& ctx, Mask x) {
        StabilizationResult r = stabilization_index(ctx, x);
        return py::make_tuple(r.index, r.limit);
    });
    m.def("divides", &divides);
    m.def("is_idempotent", &is_idempotent);
    m.def("is_subgroup_set", &is_subgroup_set);
    m.def("punctured", &punctured);
    m.def("divisible_by_subgroup_family", &divisible_by_subgroup_family);
    m.def("enumerate_carrier", &enumerate_carrier);
    m.def("cayley_rows", [](const PowerContext& ctx, int parallelism) {
        CayleyTable t = cayley_table(ctx, parallelism);
        std::vector<std::vector<CarrierIndex>> rows(t.size);
        for (std::uint32_t i = 0; i < t.size; ++i)
            rows[i].assign(t.cells.begin() + static_cast<std::size_t>(i) * t.size,
                           t.cells.begin() + static_cast<std::size_t>(i + 1) * t.size);
        return rows;
    }, py::arg("ctx"), py::arg("parallelism") = 1);

    m.def("identity_monoid_map", &identity_monoid_map);
    m.def("augmentation", &augmentation);
    m.def("pullback",
          [](const PowerContext& ctx, const MonoidMap& f) { return unwrap(pullback(ctx, f)); });
    m.def("is_monoid_automorphism", &is_monoid_automorphism);
    m.def("compose", py::overload_cast<const PowerContext&, const MonoidMap&, const MonoidMap&>(
                         &compose));
    m.def("invert",
          py::overload_cast<const PowerContext&, const MonoidMap&>(&invert));
    m.def("normalize_by_pullback", [](const PowerContext& ctx, const MonoidMap& f) {
        return unwrap(normalize_by_pullback(ctx, f));
    });

    m.def(
        "enumerate_trivial_pullback_automorphisms",
        [](const PowerContext& ctx, std::uint64_t budget) {
            return enumerate_trivial_pullback_automorphisms(ctx, SearchBudget{budget});
        },
        py::arg("ctx"), py::arg("budget") = SearchBudget{}.max_nodes);
    m.def(
        "enumerate_monoid_automorphisms",
        [](const PowerContext& ctx, std::uint64_t budget) {
            return enumerate_monoid_automorphisms(ctx, SearchBudget{budget});
        },
        py::arg("ctx"), py::arg("budget") = SearchBudget{}.max_nodes);
    m.def("naive_enumerate", &naive_enumerate);

    m.def(
        "verify_group_json",
        [](const std::vector<int>& factors, std::uint64_t budget) {
            VerificationReport rep = verify_group(make_group(factors), SearchBudget{budget});
            return json_of_report(rep).dump(2);
        },
        py::arg("factors"), py::arg("budget") = SearchBudget{}.max_nodes,
        "full verification report for one group, as a JSON string");
    m.def("abelian_groups_up_to", &abelian_groups_up_to);
}
