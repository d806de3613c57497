#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "siegel/congruence.hpp"
#include "siegel/error.hpp"
#include "siegel/sfex.hpp"
#include "siegel/theta.hpp"

namespace py = pybind11;
using namespace siegel;

namespace {

py::object to_py(const Int& x) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

Int from_py(const py::handle& h) { return Int(py::str(py::int_(py::reinterpret_borrow<py::object>(h))).cast<std::string>()); }

py::list to_py(const IntVector& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

py::tuple key_tuple(const HalfIntegralMatrix& t) { return py::tuple(to_py(t.upper_triangle())); }

HalfIntegralMatrix from_upper(int n, const py::sequence& upper) {
  IntVector v;
  for (const auto& x : upper) v.push_back(from_py(x));
  return HalfIntegralMatrix::from_upper_triangle(n, v);
}

IntMatrix from_rows(const py::sequence& rows) {
  const int n = static_cast<int>(py::len(rows));
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    const auto row = rows[i].cast<py::sequence>();
    if (static_cast<int>(py::len(row)) != n) throw Error(ErrorCode::InvalidArgument, "Gram matrix is not square");
    for (int j = 0; j < n; ++j) g(i, j) = from_py(row[j]);
  }
  return g;
}

EvenLattice lattice_arg(const py::object& lattice) {
  if (py::isinstance<py::str>(lattice)) return catalog(lattice.cast<std::string>());
  return make_lattice(from_rows(lattice.cast<py::sequence>()));
}

py::object optional_int(const std::optional<int>& v) { return v ? py::object(py::int_(*v)) : py::object(py::none()); }

py::dict report_dict(const SingularityReport& r) {
  py::dict d;
  d["p"] = to_py(r.p);
  d["m"] = r.m;
  d["weight"] = to_py(r.weight);
  d["pRank"] = r.p_rank;
  d["singularRank"] = optional_int(r.singular_rank);
  d["traceBound"] = to_py(r.trace_bound);
  py::dict th;
  th["lhs"] = r.singular_rank ? to_py(r.lhs) : py::object(py::none());
  th["modulus"] = to_py(r.modulus);
  th["holds"] = r.theorem_holds ? py::object(py::bool_(*r.theorem_holds)) : py::object(py::none());
  d["theorem"] = th;
  d["status"] = to_string(r.status);
  py::list w;
  for (const auto& x : r.witnesses) {
    py::dict e;
    e["T"] = key_tuple(x.T);
    e["residues"] = to_py(x.residues);
    w.append(e);
  }
  d["witnesses"] = w;
  return d;
}

py::object slice_dict(const std::optional<SliceCheck>& s) {
  if (!s) return py::none();
  py::dict d;
  d["holds"] = s->holds;
  d["witness"] = key_tuple(s->witness);
  d["r"] = s->r;
  d["t"] = s->t;
  d["checked"] = s->checked;
  d["counterexamples"] = s->counterexamples.size();
  return d;
}

py::list qseries_list(const QSeries& q) {
  py::list out;
  for (std::int64_t j = 0; j <= q.bound; ++j) out.append(to_py(q[j]));
  return out;
}

}  // namespace

PYBIND11_MODULE(_siegelmod, m) {
  m.doc() = "Exact Fourier expansions of Siegel theta series and mod p singularity checks";

  static py::exception<Error> error(m, "SiegelError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<FourierExpansion>(m, "Expansion")
      .def_property_readonly("degree", &FourierExpansion::degree)
      .def_property_readonly("weight", [](const FourierExpansion& f) { return f.rep().weight(); })
      .def_property_readonly("dimension", &FourierExpansion::dimension)
      .def_property_readonly("embed", &FourierExpansion::embed)
      .def_property_readonly("modulus", [](const FourierExpansion& f) { return to_py(f.modulus()); })
      .def_property_readonly("trace_bound", [](const FourierExpansion& f) { return to_py(f.trace_bound()); })
      .def("coefficients",
           [](const FourierExpansion& f) {
             py::dict d;
             for (const auto& [t, v] : f.coefficients()) d[key_tuple(t)] = to_py(v);
             return d;
           })
      .def(
          "coeff", [](const FourierExpansion& f, const py::sequence& upper) { return to_py(get_coeff(f, from_upper(f.degree(), upper))); },
          py::arg("upper"), "a(T) for T given by the upper triangle of 2T; any representative of the class")
      .def("to_sfex",
           [](const FourierExpansion& f) {
             std::ostringstream os;
             write_sfex(os, f);
             return os.str();
           })
      .def("__eq__", [](const FourierExpansion& a, const FourierExpansion& b) { return a == b; })
      .def("__repr__", [](const FourierExpansion& f) {
        return "<Expansion degree " + std::to_string(f.degree()) + " weight " + format_weight(f.rep().weight()) +
               " classes " + std::to_string(f.coefficients().size()) + ">";
      });

  m.def("catalog_names", &catalog_names);
  m.def("weyl_dimension", [](const HighestWeight& w) { return to_py(weyl_dimension(w)); });
  m.def("theorem_check", [](const py::int_& k, int r, const py::int_& p, int mm) { return theorem_check(from_py(k), r, from_py(p), mm); },
        py::arg("k"), py::arg("r"), py::arg("p"), py::arg("m"));
  m.def("choose_t", [](int n, const py::sequence& upper, const py::int_& p, int mm) { return choose_t(from_upper(n, upper), from_py(p), mm); },
        py::arg("degree"), py::arg("upper"), py::arg("p"), py::arg("m"));
  m.def("canonical", [](int n, const py::sequence& upper) { return key_tuple(canonical(from_upper(n, upper)).form); },
        py::arg("degree"), py::arg("upper"));

  m.def(
      "scalar_theta", [](const py::object& lattice, int n, const py::int_& bound) { return scalar_theta(lattice_arg(lattice), n, from_py(bound)); },
      py::arg("lattice"), py::arg("degree"), py::arg("bound"));
  m.def(
      "harmonic_theta",
      [](const py::object& lattice, int n, const py::int_& bound, int d) {
        const EvenLattice l = lattice_arg(lattice);
        const auto qs = invariant_harmonics(l, d);
        if (qs.empty()) throw Error(ErrorCode::NotPluriharmonic, "no Aut-invariant harmonic of degree " + std::to_string(d));
        return poly_theta(l, n, sym_power_coefficient(qs.front(), n), from_py(bound));
      },
      py::arg("lattice"), py::arg("degree"), py::arg("bound"), py::arg("sym"));
  m.def("read_sfex", [](const std::string& text) {
    std::istringstream is(text);
    return read_sfex(is);
  });
  m.def("p_rank", [](const FourierExpansion& f, const py::int_& p) { return p_rank(f, from_py(p)); });
  m.def("is_mod_singular", [](const FourierExpansion& f, const py::int_& p, int mm) { return optional_int(is_mod_singular(f, from_py(p), mm)); },
        py::arg("f"), py::arg("p"), py::arg("m") = 1);
  m.def("report", [](const FourierExpansion& f, const py::int_& p, int mm) { return report_dict(report(f, from_py(p), mm)); },
        py::arg("f"), py::arg("p"), py::arg("m") = 1);
  m.def(
      "pipeline",
      [](const FourierExpansion& f, const py::int_& p, int mm, int t) {
        const PipelineResult res = pipeline(f, from_py(p), mm, t);
        py::dict d;
        d["report"] = report_dict(res.report);
        d["identity1"] = slice_dict(res.identity1);
        d["identity3"] = slice_dict(res.identity3);
        if (res.extraction) {
          const auto& e = *res.extraction;
          py::dict x;
          x["j0"] = e.j0;
          x["c"] = to_py(e.c);
          x["alphas"] = to_py(e.alphas);
          x["R"] = key_tuple(e.R);
          x["t"] = e.t;
          x["g"] = qseries_list(e.g);
          x["theta"] = qseries_list(e.theta);
          x["verdict"] = e.verdict;
          d["extraction"] = x;
        } else {
          d["extraction"] = py::none();
        }
        d["square"] = res.square ? py::object(py::bool_(*res.square)) : py::object(py::none());
        d["skipped"] = res.skipped;
        d["passed"] = res.passed();
        return d;
      },
      py::arg("f"), py::arg("p"), py::arg("m") = 1, py::arg("t") = 0);
}
