#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neutro/cli.hpp"
#include "neutro/error.hpp"
#include "neutro/tree.hpp"
#include "neutro/triplet.hpp"
#include "neutro/zorn.hpp"

namespace py = pybind11;

namespace {

using Strings3 = std::array<std::string, 3>;

neutro::Triplet to_triplet(const Strings3& s) {
  return neutro::make_triplet(neutro::Rational::parse(s[0]), neutro::Rational::parse(s[1]),
                              neutro::Rational::parse(s[2]));
}

Strings3 from_triplet(const neutro::Triplet& t) {
  const auto& c = t.components();
  return {c[0].str(), c[1].str(), c[2].str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Neutrosophic choice functions over set families, prefix trees and "
            "inclusion families";

  static py::exception<neutro::Error> exc(m, "NeutroError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const neutro::Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(exc.ptr())(e.what());
      err.attr("kind") = std::string(neutro::to_string(e.kind()));
      err.attr("where") = e.where();
      PyErr_SetObject(exc.ptr(), err.ptr());
    }
  });

  m.def("make_triplet",
        [](const Strings3& s) { return from_triplet(to_triplet(s)); },
        "Validate a triplet of \"num/den\" strings and return it in lowest terms.",
        py::arg("triplet"));
  m.def("classify",
        [](const Strings3& s) {
          return std::string(neutro::to_string(neutro::classify(to_triplet(s))));
        },
        py::arg("triplet"));
  m.def("classify_threshold",
        [](const Strings3& s, const std::string& p) {
          return std::string(neutro::to_string(
              neutro::classify_threshold(to_triplet(s), neutro::Rational::parse(p))));
        },
        py::arg("triplet"), py::arg("p"));
  m.def("random_triplet",
        [](std::uint64_t state, std::int64_t bound) {
          auto sample = neutro::random_triplet(neutro::RngState{state}, bound);
          return py::make_tuple(from_triplet(sample.triplet), sample.next.s);
        },
        "Returns (triplet, next_state).", py::arg("state"), py::arg("denominator_bound"));
  m.def("string_relation",
        [](const std::string& a, const std::string& b) {
          return std::string(neutro::to_string(
              neutro::string_relation(neutro::BitString(a), neutro::BitString(b))));
        },
        py::arg("sigma"), py::arg("tau"));
  m.def("check_chain_closed",
        [](const std::vector<std::vector<std::string>>& members) {
          return neutro::check_chain_closed(neutro::ZornFamily(members));
        },
        py::arg("members"));
  m.def("commands", &neutro::cli::commands);
  m.def("run",
        [](const std::string& command, const std::string& document,
           std::optional<std::uint64_t> seed, std::optional<std::int64_t> bound,
           std::optional<std::size_t> horizon, std::size_t count,
           std::optional<std::string> threshold) {
          neutro::cli::RunOptions opts;
          opts.seed = seed;
          opts.bound = bound;
          opts.horizon = horizon;
          opts.count = count;
          if (threshold) opts.threshold = neutro::Rational::parse(*threshold);
          auto result = neutro::cli::run_text(command, document, opts);
          return py::make_tuple(result.exit_code, result.output.dump());
        },
        "Run a CLI command on a JSON document string; returns (exit_code, json).",
        py::arg("command"), py::arg("document"), py::arg("seed") = py::none(),
        py::arg("bound") = py::none(), py::arg("horizon") = py::none(),
        py::arg("count") = 2, py::arg("threshold") = py::none());
}
