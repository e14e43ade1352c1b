#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "apzeta/cli.hpp"
#include "apzeta/diophantine.hpp"
#include "apzeta/divisor.hpp"
#include "apzeta/expr.hpp"
#include "apzeta/expsum.hpp"
#include "apzeta/moments.hpp"
#include "apzeta/numerics.hpp"
#include "apzeta/zeta.hpp"

namespace py = pybind11;
using namespace apzeta;

namespace {

py::int_ to_py_int(const mpz_class& z) {
    return py::cast<py::int_>(py::module_::import("builtins").attr("int")(z.get_str()));
}

Real real_arg(const py::object& value, int bits) {
    if (py::isinstance<py::str>(value)) return eval_expr(value.cast<std::string>(), bits);
    return Real(value.cast<double>(), bits);
}

}  // namespace

PYBIND11_MODULE(_apzeta, m) {
    m.doc() = "discrete second moments of zeta on arithmetic progressions";

    m.def("set_default_precision_bits", &set_default_precision_bits);
    m.def("default_precision_bits", &default_precision_bits);

    m.def("e_of", [](double x) { return e_of(x); }, py::arg("x"));
    m.def("reduce_mod_one", [](double x) { return reduce_mod_one(x); }, py::arg("x"));
    m.def("dist_to_nearest_int", &dist_to_nearest_int, py::arg("x"));
    m.def("eval_expr",
          [](const std::string& text, int bits) { return eval_expr(text, bits).to_double(); },
          py::arg("text"), py::arg("bits") = 0);

    py::class_<DivisorTable>(m, "DivisorTable")
        .def_property_readonly("limit", &DivisorTable::limit)
        .def("d", &DivisorTable::d, py::arg("n"))
        .def("prefix", &DivisorTable::prefix, py::arg("n"))
        .def("save", [](const DivisorTable& t, const std::string& p) { t.save(p); })
        .def_static("load", [](const std::string& p) { return DivisorTable::load(p); });
    m.def("sieve", &sieve, py::arg("limit"), py::arg("entry_cap") = DivisorTable::kDefaultEntryCap);
    m.def("divisor_sum", &divisor_sum, py::arg("table"), py::arg("x"));
    m.def("delta", [](const DivisorTable& t, double x) { return delta(t, x).delta; },
          py::arg("table"), py::arg("x"));

    py::enum_<ZetaMethod>(m, "ZetaMethod")
        .value("riemann_siegel", ZetaMethod::riemann_siegel)
        .value("euler_maclaurin", ZetaMethod::euler_maclaurin);
    py::class_<CriticalPoint>(m, "CriticalPoint")
        .def_readonly("t", &CriticalPoint::t)
        .def_readonly("zeta_abs_sq", &CriticalPoint::zeta_abs_sq)
        .def_readonly("method", &CriticalPoint::method);
    m.def("zeta_half_line", py::overload_cast<double>(&zeta_half_line), py::arg("t"));
    m.def("zeta_half_line", py::overload_cast<double, ZetaMethod>(&zeta_half_line), py::arg("t"),
          py::arg("method"));
    m.def("zeta_on_line", &zeta_on_line, py::arg("t"), py::arg("method"));
    m.def("riemann_siegel_theta", &riemann_siegel_theta, py::arg("t"));
    m.def("chi_factor", &chi_factor, py::arg("s"));

    py::class_<AfeDecomposition>(m, "AfeDecomposition")
        .def_readonly("t", &AfeDecomposition::t)
        .def_readonly("main_sum", &AfeDecomposition::main_sum)
        .def_readonly("mirrored_sum", &AfeDecomposition::mirrored_sum)
        .def_readonly("residual", &AfeDecomposition::residual);
    m.def("afe_decompose", &afe_decompose, py::arg("t"), py::arg("table"));

    py::class_<MeanSquare>(m, "MeanSquare")
        .def_readonly("T", &MeanSquare::T)
        .def_readonly("integral", &MeanSquare::integral)
        .def_readonly("main_term", &MeanSquare::main_term)
        .def_readonly("error_term", &MeanSquare::error_term);
    m.def("continuous_mean_square",
          [](double T, double step) { return continuous_mean_square(T, QuadratureSpec{step}); },
          py::arg("T"), py::arg("step") = 0.0);

    py::enum_<ExpSumAlgorithm>(m, "ExpSumAlgorithm")
        .value("direct", ExpSumAlgorithm::direct)
        .value("hyperbola", ExpSumAlgorithm::hyperbola)
        .value("rational_closed_form", ExpSumAlgorithm::rational_closed_form);
    py::class_<ExpSumResult>(m, "ExpSumResult")
        .def_readonly("M", &ExpSumResult::M)
        .def_readonly("alpha", &ExpSumResult::alpha)
        .def_readonly("value", &ExpSumResult::value)
        .def_readonly("algorithm", &ExpSumResult::algorithm)
        .def_readonly("accuracy", &ExpSumResult::accuracy);
    m.def("geometric_sum", &geometric_sum, py::arg("alpha"), py::arg("n1"), py::arg("n2"));
    m.def("divisor_expsum_direct",
          [](const DivisorTable& t, std::uint64_t M, const py::object& alpha, int bits) {
              return divisor_expsum_direct(t, M, real_arg(alpha, bits));
          },
          py::arg("table"), py::arg("M"), py::arg("alpha"), py::arg("bits") = 0);
    m.def("divisor_expsum_hyperbola",
          [](std::uint64_t M, const py::object& alpha, int bits) {
              return divisor_expsum_hyperbola(M, real_arg(alpha, bits));
          },
          py::arg("M"), py::arg("alpha"), py::arg("bits") = 0);
    py::class_<RationalExpSum>(m, "RationalExpSum")
        .def_readonly("value", &RationalExpSum::value)
        .def_readonly("predicted_main", &RationalExpSum::predicted_main)
        .def_readonly("residual", &RationalExpSum::residual);
    m.def("divisor_expsum_rational", &divisor_expsum_rational, py::arg("table"), py::arg("x"),
          py::arg("r"), py::arg("s"));

    m.def("continued_fraction",
          [](const py::object& alpha, int n_terms, int bits) {
              ContinuedFraction cf = continued_fraction(real_arg(alpha, bits), n_terms);
              py::list quot, conv;
              for (const auto& a : cf.quotients) quot.append(to_py_int(a));
              for (const auto& [p, q] : cf.convergents)
                  conv.append(py::make_tuple(to_py_int(p), to_py_int(q)));
              py::dict out;
              out["quotients"] = quot;
              out["convergents"] = conv;
              out["certified_terms"] = cf.certified_terms;
              out["exhausted"] = cf.exhausted;
              return out;
          },
          py::arg("alpha"), py::arg("n_terms"), py::arg("bits") = 0);
    m.def("dirichlet_approx",
          [](const py::object& alpha, std::uint64_t M, int bits) {
              RationalApprox ra = dirichlet_approx(real_arg(alpha, bits), M);
              py::dict out;
              out["p"] = to_py_int(ra.p);
              out["q"] = to_py_int(ra.q);
              out["err"] = ra.err;
              out["M"] = ra.M;
              return out;
          },
          py::arg("alpha"), py::arg("M"), py::arg("bits") = 0);

    py::class_<ProgressionSpec>(m, "ProgressionSpec")
        .def_static("generic",
                    [](const py::object& a, double b, int bits) {
                        return ProgressionSpec::generic(real_arg(a, bits), b);
                    },
                    py::arg("a"), py::arg("b") = 0.0, py::arg("bits") = 0)
        .def_static("rational_power", &ProgressionSpec::rational_power, py::arg("r"), py::arg("s"),
                    py::arg("k0"), py::arg("b") = 0.0)
        .def_property_readonly("b", &ProgressionSpec::b)
        .def_property_readonly("a", &ProgressionSpec::spacing_d);

    m.def("classify_spacing",
          [](const ProgressionSpec& spec, int k_max, double T) {
              SpacingClassification c = classify_spacing(spec, k_max, T);
              py::list entries;
              for (const auto& e : c.entries) {
                  py::dict d;
                  d["k"] = e.k;
                  d["rational"] = e.rational;
                  if (e.rational) {
                      d["num"] = to_py_int(e.num);
                      d["den"] = to_py_int(e.den);
                  }
                  if (e.best) {
                      d["p"] = to_py_int(e.best->p);
                      d["q"] = to_py_int(e.best->q);
                      d["err"] = e.best->err;
                  }
                  entries.append(d);
              }
              py::dict out;
              out["entries"] = entries;
              out["power_l"] = c.power_l;
              out["x"] = to_py_int(c.x);
              out["y"] = to_py_int(c.y);
              return out;
          },
          py::arg("spec"), py::arg("k_max"), py::arg("T_for_generic") = 1e4);

    m.def("waldschmidt_floor",
          [](std::int64_t k, std::int64_t a, const py::object& p) {
              mpz_class pz(py::str(p).cast<std::string>());
              return waldschmidt_floor(k, a, pz).log_bound;
          },
          py::arg("k"), py::arg("a"), py::arg("p"));
    m.def("waldschmidt_logp_floor", &waldschmidt_logp_floor, py::arg("T"), py::arg("k"),
          py::arg("a"));

    py::class_<DeltaFactor>(m, "DeltaFactor")
        .def_readonly("r", &DeltaFactor::r)
        .def_readonly("s", &DeltaFactor::s)
        .def_readonly("b", &DeltaFactor::b)
        .def_readonly("factor_1_plus_delta", &DeltaFactor::factor_1_plus_delta)
        .def_readonly("delta", &DeltaFactor::delta);
    m.def("delta_factor", &delta_factor, py::arg("r"), py::arg("s"), py::arg("b"));
    m.def("main_term_thm1", &main_term_thm1, py::arg("a"), py::arg("T"),
          py::arg("leading_only") = false);
    m.def("main_term_thm2", &main_term_thm2, py::arg("spec"), py::arg("T"));

    m.def("discrete_moment",
          [](const ProgressionSpec& spec, double T, int threads) {
              MomentRequest req;
              req.spec = spec;
              req.T = T;
              req.grid.threads = threads;
              return discrete_moment(req);
          },
          py::arg("spec"), py::arg("T"), py::arg("threads") = 0);
    m.def("key_sum",
          [](const ProgressionSpec& spec, double T, const DivisorTable& table, bool intro) {
              return key_sum(spec, T, table, intro ? KeySumForm::intro : KeySumForm::refined);
          },
          py::arg("spec"), py::arg("T"), py::arg("table"), py::arg("intro") = false);

    py::class_<MomentReport>(m, "MomentReport")
        .def_readonly("T", &MomentReport::T)
        .def_readonly("a", &MomentReport::a)
        .def_readonly("b", &MomentReport::b)
        .def_readonly("form", &MomentReport::form)
        .def_readonly("empirical", &MomentReport::empirical)
        .def_readonly("predicted_leading", &MomentReport::predicted_leading)
        .def_readonly("predicted_full", &MomentReport::predicted_full)
        .def_readonly("ratio_leading", &MomentReport::ratio_leading)
        .def_readonly("ratio_full", &MomentReport::ratio_full)
        .def_readonly("key_sum_value", &MomentReport::key_sum_value)
        .def_readonly("key_sum_over_tlogt", &MomentReport::key_sum_over_tlogt)
        .def_readonly("diagnostics", &MomentReport::diagnostics);
    m.def("moment_report",
          [](const ProgressionSpec& spec, double T, const DivisorTable& table, int threads) {
              MomentRequest req;
              req.spec = spec;
              req.T = T;
              req.grid.threads = threads;
              return moment_report(req, table);
          },
          py::arg("spec"), py::arg("T"), py::arg("table"), py::arg("threads") = 0);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
