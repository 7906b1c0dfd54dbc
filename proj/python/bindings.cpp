#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "flatrank/field.hpp"
#include "flatrank/fw.hpp"
#include "flatrank/io.hpp"
#include "flatrank/rainbow.hpp"
#include "flatrank/rng.hpp"
#include "flatrank/search.hpp"
#include "flatrank/setfam.hpp"
#include "flatrank/tensor.hpp"

namespace py = pybind11;
using namespace flatrank;
using io::Json;

namespace {

// Structured documents cross the boundary as JSON text in the file formats.
Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw io::FormatError(e.what());
  }
}

std::string dump(const Json& j) { return j.dump(); }

std::vector<std::uint64_t> entries_of(const Tensor& t) { return {t.entries().begin(), t.entries().end()}; }

}  // namespace

PYBIND11_MODULE(_flatrank, m) {
  m.doc() = "Flattening ranks of semi-diagonal tensors over finite fields";

  py::register_exception<FieldError>(m, "FieldError", PyExc_ValueError);
  py::register_exception<TensorError>(m, "TensorError", PyExc_ValueError);
  py::register_exception<SetFamilyError>(m, "SetFamilyError", PyExc_ValueError);
  py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);
  py::register_exception<HypergraphError>(m, "HypergraphError", PyExc_ValueError);
  py::register_exception<SearchError>(m, "SearchError", PyExc_ValueError);
  py::register_exception<io::FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<BadboxSamplingError>(m, "BadboxSamplingError", PyExc_RuntimeError);

  py::class_<FieldDescriptor>(m, "Field")
      .def_property_readonly("characteristic", &FieldDescriptor::characteristic)
      .def_property_readonly("degree", &FieldDescriptor::degree)
      .def_property_readonly("order", &FieldDescriptor::order)
      .def_property_readonly("reduction_poly", &FieldDescriptor::reduction_poly)
      .def_property_readonly("is_binary", [](const FieldDescriptor& f) { return f.kind() == FieldKind::Binary; })
      .def("reduce", &FieldDescriptor::reduce)
      .def("add", &FieldDescriptor::add)
      .def("sub", &FieldDescriptor::sub)
      .def("neg", &FieldDescriptor::neg)
      .def("mul", &FieldDescriptor::mul)
      .def("pow", &FieldDescriptor::pow)
      .def("inv", &FieldDescriptor::inv)
      .def("to_json", [](const FieldDescriptor& f) { return dump(io::field_to_json(f)); })
      .def("__eq__", [](const FieldDescriptor& a, const FieldDescriptor& b) { return a == b; })
      .def("__repr__", &FieldDescriptor::name);

  m.def("prime_field", &make_prime_field, py::arg("p"));
  m.def("binary_field", &make_binary_field, py::arg("k"));
  m.def("parse_field", &io::parse_field_spec, py::arg("spec"));

  py::class_<Tensor>(m, "Tensor")
      .def(py::init<std::vector<std::size_t>, FieldDescriptor>(), py::arg("dims"), py::arg("field"))
      .def(py::init<std::vector<std::size_t>, FieldDescriptor, std::vector<std::uint64_t>>(), py::arg("dims"),
           py::arg("field"), py::arg("entries"))
      .def_property_readonly("dims", &Tensor::dims)
      .def_property_readonly("order", &Tensor::order)
      .def_property_readonly("field", &Tensor::field)
      .def_property_readonly("entries", &entries_of)
      .def("__getitem__", [](const Tensor& t, const std::vector<std::size_t>& idx) { return t.at(idx); })
      .def("__setitem__",
           [](Tensor& t, const std::vector<std::size_t>& idx, std::uint64_t v) { t.set(idx, v); })
      .def("__eq__", [](const Tensor& a, const Tensor& b) { return a == b; })
      .def("is_zero", &Tensor::is_zero)
      .def("flattening_rank", [](const Tensor& t, std::size_t axis) { return flattening_rank(t, axis); },
           py::arg("axis"))
      .def("flattening_ranks", [](const Tensor& t) { return flattening_ranks(t); })
      .def("mfrank", [](const Tensor& t) { return max_flattening_rank(t); })
      .def("sum_franks", [](const Tensor& t) { return sum_flattening_ranks(t); })
      .def("is_semi_diagonal", [](const Tensor& t) { return is_semi_diagonal(t); })
      .def("to_json", [](const Tensor& t) { return dump(io::tensor_to_json(t)); })
      .def_static("from_json", [](const std::string& s) { return io::tensor_from_json(parse(s)); });

  m.def("diagonal_tensor", &diagonal_tensor, py::arg("side"), py::arg("order"), py::arg("field"));
  m.def("partition_construction", &partition_construction, py::arg("side"), py::arg("order"), py::arg("field"));
  m.def("axis_constant_construction", &axis_constant_construction, py::arg("side"), py::arg("order"),
        py::arg("axis"), py::arg("field"));

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_property_readonly("seed", &Rng::seed)
      .def("next", &Rng::next)
      .def("uniform", &Rng::uniform, py::arg("bound"));

  m.def("random_semidiagonal",
        [](std::size_t a, std::size_t d, const FieldDescriptor& f, Rng& rng) { return random_semidiagonal(a, d, f, rng); },
        py::arg("a"), py::arg("d"), py::arg("field"), py::arg("rng"));

  // Document-level entry points: JSON text in, JSON text out.
  m.def("oddtown_tensor", [](const std::string& s) { return oddtown_tensor(io::tuple_family_from_json(parse(s))); });
  m.def("is_cross_oddtown", [](const std::string& s) { return is_cross_oddtown(io::tuple_family_from_json(parse(s))); });
  m.def("cross_oddtown_bound", &cross_oddtown_bound, py::arg("n"), py::arg("d"));
  m.def("fw_tensor", [](const std::string& family, const std::string& config) {
    return fw_tensor(io::set_family_from_json(parse(family)), io::configuration_from_json(parse(config)));
  });
  m.def("is_config_satisfying", [](const std::string& family, const std::string& config, bool by_positions) {
    return is_config_satisfying(io::set_family_from_json(parse(family)), io::configuration_from_json(parse(config)),
                                by_positions ? Distinctness::Positions : Distinctness::Sets);
  }, py::arg("family"), py::arg("config"), py::arg("by_positions") = false);
  m.def("fw_size_bound", [](const std::string& config, unsigned n) {
    return fw_size_bound(io::configuration_from_json(parse(config)), n);
  });
  m.def("sample_badbox_family", [](unsigned t, unsigned s, std::uint64_t seed) {
    return dump(io::badbox_family_to_json(sample_badbox_family(t, s, seed)));
  }, py::arg("t"), py::arg("s"), py::arg("seed"));
  m.def("rainbow_tensor", [](const std::string& s) { return rainbow_tensor(io::hypergraph_from_json(parse(s))); });
  m.def("certify_no_rainbow_bound", [](const std::string& s) {
    return dump(io::rainbow_report_to_json(certify_no_rainbow_bound(io::hypergraph_from_json(parse(s)))));
  });
  m.def("rainbow_bound", &rainbow_bound, py::arg("r"), py::arg("t"));
  m.def("bollobas_verify", [](const std::string& s) {
    return dump(io::bollobas_report_to_json(bollobas_verify(io::set_pair_system_from_json(parse(s)))));
  });
  m.def("exhaustive_min_mfrank", [](std::size_t a, std::size_t d) {
    return dump(io::search_report_to_json(exhaustive_min_mfrank(a, d)));
  }, py::arg("a"), py::arg("d"));
  m.def("random_semidiagonal_sweep", [](std::size_t a, std::size_t d, const FieldDescriptor& f, std::uint64_t samples,
                                        std::uint64_t seed) {
    return dump(io::search_report_to_json(random_semidiagonal_sweep(a, d, f, samples, seed)));
  }, py::arg("a"), py::arg("d"), py::arg("field"), py::arg("samples"), py::arg("seed"));
  m.def("random_cross_oddtown_search", [](unsigned n, std::size_t d, std::uint64_t budget, std::uint64_t seed) {
    Rng rng(seed);
    return dump(io::search_report_to_json(random_cross_oddtown_search(n, d, budget, rng)));
  }, py::arg("n"), py::arg("d"), py::arg("budget"), py::arg("seed"));
}
