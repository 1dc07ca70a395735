#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hopt/checks.hpp"
#include "hopt/constructions.hpp"
#include "hopt/driver.hpp"
#include "hopt/dsl.hpp"
#include "hopt/errors.hpp"
#include "hopt/skeleton.hpp"
#include "hopt/suites.hpp"

namespace py = pybind11;
using namespace hopt;

namespace {

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(py::str(r.get_str()));
}

py::list to_py(const QMatrix& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(fraction(m(i, j)));
    rows.append(row);
  }
  return rows;
}

// Accepts nested sequences of ints, Fractions or "n/d" strings.
QMatrix from_py(const py::sequence& rows) {
  const std::size_t r = py::len(rows);
  std::size_t c = 0;
  std::vector<Rational> data;
  for (std::size_t i = 0; i < r; ++i) {
    const py::sequence row = rows[i];
    if (i == 0) c = py::len(row);
    if (py::len(row) != c) throw AssignmentError("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) data.push_back(parse_rational(py::str(row[j]).cast<std::string>()));
  }
  return QMatrix(r, c, std::move(data));
}

py::object to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact matrix semantics for higher-order process theories";

  py::register_exception<Error>(m, "HoptError");
  py::register_exception<TypeError>(m, "TypeCheckError", PyExc_TypeError);
  py::register_exception<ParseError>(m, "ParseError");

  py::enum_<Mode>(m, "Mode").value("FULL", Mode::Full).value("CAUSAL", Mode::Causal);

  py::class_<Obj>(m, "Obj")
      .def_static("unit", &Obj::unit)
      .def_static("base", &Obj::base)
      .def("__mul__", [](const Obj& a, const Obj& b) { return a * b; })
      .def("arrow", [](const Obj& a, const Obj& b) { return arrow(a, b); })
      .def("dual", [](const Obj& a) { return dual(a); })
      .def("__eq__", [](const Obj& a, const Obj& b) { return a == b; })
      .def("__str__", &Obj::str)
      .def("__repr__", [](const Obj& a) { return "Obj(" + a.str() + ")"; });

  py::class_<Signature>(m, "Signature")
      .def(py::init<>())
      .def("add_base", &Signature::add_base, py::arg("name"), py::arg("dim"), py::arg("causal") = false,
           py::return_value_policy::reference_internal)
      .def("add_generator", &Signature::add_generator, py::return_value_policy::reference_internal);

  py::class_<Term>(m, "Term")
      .def_static("gen", &Term::gen)
      .def_static("id", &Term::id)
      .def_static("compose", &Term::compose)
      .def_static("tensor", &Term::tensor)
      .def_static("swap", &Term::swap)
      .def_static("eps", &Term::eps)
      .def_static("eta", &Term::eta)
      .def_static("seq", &Term::seq)
      .def_static("par", &Term::par)
      .def_static("delta", &Term::delta)
      .def_static("hatid", &Term::hat_id)
      .def_static("discard", &Term::discard)
      .def_static("lunit", &Term::lunit)
      .def_static("lunit_inv", &Term::lunit_inv)
      .def_static("runit", &Term::runit)
      .def_static("runit_inv", &Term::runit_inv)
      .def_static("assoc", &Term::assoc)
      .def_static("assoc_inv", &Term::assoc_inv)
      .def("__matmul__", [](const Term& g, const Term& f) { return Term::compose(g, f); })
      .def("__mul__", [](const Term& f, const Term& g) { return Term::tensor(f, g); })
      .def("__eq__", [](const Term& a, const Term& b) { return a == b; })
      .def("__str__", &Term::str)
      .def("__repr__", [](const Term& t) { return "Term(" + t.str() + ")"; });

  m.def("typecheck", [](const Term& t, const Signature& sig) {
    const TypedTerm tt = typecheck(t, sig);
    return py::make_tuple(tt.dom, tt.cod);
  });
  auto typed = [](const Term& t, const Signature& sig) { return typecheck(t, sig); };
  m.def("curry", [typed](const Term& t, const Signature& sig) { return curry(typed(t, sig)); });
  m.def("hat", [typed](const Term& t, const Signature& sig) { return hat(typed(t, sig)); });
  m.def("dualiser", &dualiser);
  m.def("lift", &lift);
  m.def("phi", &phi);
  m.def("phi_inv", &phi_inv);

  py::class_<Interpretation>(m, "Interpretation")
      .def(py::init<Signature, Mode>(), py::arg("sig"), py::arg("mode") = Mode::Full)
      .def("set_generator", [](Interpretation& i, const std::string& n, const py::sequence& rows) {
        i.set_generator(n, from_py(rows));
      })
      .def("generator", [](const Interpretation& i, const std::string& n) { return to_py(i.generator(n)); })
      .def("dim", &Interpretation::dim)
      .def_property_readonly("mode", &Interpretation::mode);

  m.def("random_interpretation",
        [](const Signature& sig, std::uint64_t seed, std::uint32_t max_entry, Mode mode) {
          return random_interpretation(sig, seed, max_entry, mode);
        },
        py::arg("sig"), py::arg("seed"), py::arg("max_entry") = 9, py::arg("mode") = Mode::Full);
  m.def("eval", [](const Term& t, const Interpretation& i) { return to_py(eval(t, i)); });
  m.def("check_eq", &check_eq);

  m.def("list_theorems", [] {
    std::vector<std::string> names;
    for (const auto& s : theorem_suites()) names.push_back(s.name);
    return names;
  });
  m.def("run_suite",
        [](const std::string& name, Mode mode, std::uint64_t seed, std::vector<std::size_t> dims,
           std::optional<std::size_t> count, std::size_t max_dim) {
          SuiteOptions o;
          o.mode = mode;
          o.seed = seed;
          o.dims = std::move(dims);
          o.count = count;
          o.max_dim = max_dim;
          py::list out;
          run_suite(name, o, [&](const CheckReport& r) { out.append(to_py(r.to_json())); });
          return out;
        },
        py::arg("name"), py::arg("mode") = Mode::Causal, py::arg("seed") = 0,
        py::arg("dims") = std::vector<std::size_t>{}, py::arg("count") = py::none(), py::arg("max_dim") = 3);

  m.def("signalling_analysis",
        [](const py::sequence& channel, const std::vector<Obj>& ins, const std::vector<Obj>& outs,
           const Interpretation& i) {
          const BMatrix b = signalling_analysis(from_py(channel), ins, outs, i);
          std::vector<std::vector<bool>> rows(b.rows(), std::vector<bool>(b.cols()));
          for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) rows[r][c] = b(r, c).value;
          return rows;
        });

  m.def("format_source", [](const std::string& src) { return dsl::print(dsl::parse(src)); });
  m.def("run_source",
        [](const std::string& src, Mode mode, std::uint64_t seed, bool json) {
          RunConfig cfg;
          cfg.mode = mode;
          cfg.seed = seed;
          cfg.json = json;
          std::ostringstream out, err;
          const int rc = run_source(cfg, src, out, err);
          return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("source"), py::arg("mode") = Mode::Causal, py::arg("seed") = 0, py::arg("json") = true);
}
