#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "bohrlab/algebra/free_algebra.h"
#include "bohrlab/algebra/membership.h"
#include "bohrlab/algebra/perturbation.h"
#include "bohrlab/construct/embedding.h"
#include "bohrlab/construct/block_poly.h"
#include "bohrlab/error.h"
#include "bohrlab/harness/commands.h"
#include "bohrlab/series/dirichlet.h"
#include "bohrlab/series/index.h"
#include "bohrlab/series/prime_table.h"
#include "bohrlab/series/series_io.h"

namespace py = pybind11;
using namespace bohrlab;

namespace {

// Python ints cross the boundary as decimal strings.
BigInt to_big(const py::int_& n) { return BigInt(py::str(n).cast<std::string>()); }
py::int_ from_big(const BigInt& n) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(n.str().c_str(), nullptr, 10));
}

SparseSeries dirichlet_from(const std::vector<std::pair<py::int_, Complex>>& terms) {
  SparseSeries out;
  for (const auto& [n, c] : terms) {
    const BigInt b = to_big(n);
    if (b < 1) throw InvalidInput("Dirichlet indices start at 1");
    out = add(out, SparseSeries::dirichlet_term(b, c));
  }
  return out;
}

std::vector<std::pair<py::int_, Complex>> dirichlet_terms(const SparseSeries& d) {
  const SparseSeries dir = d.as(Side::kDirichlet);  // idx points into this
  const IndexedSeries idx(dir);
  std::vector<std::pair<py::int_, Complex>> out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.emplace_back(from_big(idx.index_of(i)), idx.entries()[i].term->coeff);
  }
  return out;
}

std::string cert_text(const Certificate& c) { return certificate_to_json(c).dump(); }

py::dict perturbation_dict(const PerturbationResult& r) {
  py::dict out;
  out["D"] = r.D;
  out["D1"] = r.D1;
  out["D2"] = r.D2;
  out["D3"] = r.D3;
  out["D4"] = r.D4;
  out["w"] = r.w;
  out["r"] = r.r;
  out["d2_degree"] = r.d2_degree;
  out["d2_blocks"] = r.d2_blocks;
  out["distance_bound_sup"] = r.distance_bound_sup;
  out["distance_bound_sum"] = r.distance_bound_sum;
  out["homogeneity"] = cert_text(r.homogeneity);
  out["witness_bounds"] = cert_text(r.witness_bounds);
  return out;
}

MembershipQuery make_query(std::uint32_t j, std::uint32_t k, double ell, std::uint32_t m) {
  MembershipQuery q;
  q.j = j;
  q.k = k;
  q.ell = ell;
  q.m = m;
  q.validate();
  return q;
}

}  // namespace

PYBIND11_MODULE(_bohrlab, mod) {
  mod.doc() = "Sparse Dirichlet series, maximal-strip constructions and their certificates.";

  // Translators run newest first, so the base class goes first.
  py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<ResourceError>(mod, "ResourceError", PyExc_MemoryError);
  py::register_exception<BudgetExceeded>(mod, "BudgetExceeded", PyExc_MemoryError);
  py::register_exception<InvalidInput>(mod, "InvalidInput", PyExc_ValueError);

  py::class_<SparseSeries>(mod, "Series")
      .def(py::init<>())
      .def_static("dirichlet", &dirichlet_from, py::arg("terms"),
                  "From [(n, coefficient), ...].")
      .def_static("from_json", [](const std::string& s) { return series_from_string(s); })
      .def("to_json", [](const SparseSeries& d) { return series_to_string(d); })
      .def("terms", &dirichlet_terms, "[(n, coefficient), ...] in increasing n.")
      .def("coefficient",
           [](const SparseSeries& d, const py::int_& n) {
             return d.coefficient(index_to_multiindex(to_big(n)));
           })
      .def_property_readonly("side",
                             [](const SparseSeries& d) { return std::string(side_name(d.side())); })
      .def("__len__", &SparseSeries::size)
      .def("__eq__", [](const SparseSeries& a, const SparseSeries& b) { return a == b; })
      .def("__add__", [](const SparseSeries& a, const SparseSeries& b) { return add(a, b); })
      .def("__sub__", [](const SparseSeries& a, const SparseSeries& b) { return subtract(a, b); })
      .def("__mul__", [](const SparseSeries& a, const SparseSeries& b) { return multiply(a, b); })
      .def("__rmul__", [](const SparseSeries& a, Complex c) { return scale(c, a); })
      .def("__pow__", [](const SparseSeries& a, std::uint32_t q) { return power(a, q); })
      .def("__repr__", [](const SparseSeries& d) {
        return "<Series " + std::string(side_name(d.side())) + " with " +
               std::to_string(d.size()) + " terms>";
      });

  mod.def("nth_prime", [](std::size_t k) { return nth_prime(k); });
  mod.def("omega_tilde", &omega_tilde);
  mod.def("homogeneous_part", &homogeneous_part);
  mod.def("h2_norm", &h2_norm);
  mod.def("h2_inner", &h2_inner);
  mod.def("partial_abs_sum",
          [](const SparseSeries& d, double sigma, const py::int_& n) {
            return partial_abs_sum(d, sigma, to_big(n));
          },
          py::arg("d"), py::arg("sigma"), py::arg("N"));
  mod.def("evaluate", [](const SparseSeries& d, Complex s) { return evaluate_dirichlet(d, s); });

  mod.def("make_blocks",
          [](std::uint64_t u, std::uint64_t v, std::uint32_t p, std::uint32_t K, std::uint32_t m) {
            return make_blocks(u, v, p, K, m).blocks;
          },
          py::arg("u"), py::arg("v"), py::arg("p"), py::arg("K"), py::arg("m"));

  mod.def("construct",
          [](std::uint32_t m, std::uint32_t p, std::uint32_t K, double epsilon,
             std::size_t samples, std::uint64_t seed) {
            const auto scheme = make_blocks(0, 1, p, K, m);
            const auto params = ConstructionParams::solve(m, p, K, epsilon);
            const auto bp = make_P(scheme, params);
            SupNormOptions sup;
            sup.samples = samples;
            sup.seed = seed;
            py::dict out;
            out["P"] = bp.p;
            out["growth"] = cert_text(certify_growth(bp.p, scheme, params));
            out["norms"] = cert_text(certify_norms(bp, scheme, params, sup));
            return out;
          },
          py::arg("m") = 2, py::arg("p") = 5, py::arg("K") = 4, py::arg("epsilon") = 0.5,
          py::arg("samples") = 64, py::arg("seed") = 1);

  mod.def("embed_l1",
          [](const std::vector<Complex>& lambda, std::uint32_t M_max, std::uint32_t K) {
            EmbeddingOptions o;
            o.M_max = M_max;
            o.K = K;
            const auto r = embed_l1(lambda, o);
            return py::make_tuple(r.image, cert_text(r.certificate));
          },
          py::arg("lambda_"), py::arg("M_max") = 4, py::arg("K") = 2);
  mod.def("embed_l2",
          [](const std::vector<Complex>& lambda, std::uint32_t M_max, std::uint32_t K) {
            EmbeddingOptions o;
            o.M_max = M_max;
            o.K = K;
            const auto r = embed_l2(lambda, o);
            return py::make_tuple(r.image, cert_text(r.isometry));
          },
          py::arg("lambda_"), py::arg("M_max") = 4, py::arg("K") = 2);

  mod.def("w_exponent", &w_exponent, py::arg("k"), py::arg("m"), py::arg("r"));
  mod.def("density_perturbation",
          [](const SparseSeries& d1, double epsilon, std::uint32_t j, std::uint32_t k, double ell,
             std::uint32_t m, std::uint64_t u, std::uint64_t v) {
            return perturbation_dict(
                density_perturbation(d1, epsilon, make_query(j, k, ell, m), Progression{u, v}));
          },
          py::arg("d1"), py::arg("epsilon"), py::arg("j") = 1, py::arg("k") = 2,
          py::arg("ell") = 10.0, py::arg("m") = 2, py::arg("u") = 0, py::arg("v") = 1);
  mod.def("membership_witness",
          [](const SparseSeries& d, const std::vector<std::vector<Complex>>& samples,
             std::uint32_t j, std::uint32_t k, double ell, std::uint32_t m) {
            return cert_text(membership_witness(d, make_query(j, k, ell, m), samples));
          },
          py::arg("d"), py::arg("samples"), py::arg("j") = 1, py::arg("k") = 2,
          py::arg("ell") = 10.0, py::arg("m") = 2);
  mod.def("disjointness_certificate",
          [](std::size_t count, std::uint64_t seed, std::uint64_t u, std::uint64_t v) {
            return cert_text(disjointness_certificate(count, seed, Progression{u, v}));
          },
          py::arg("count") = 50, py::arg("seed") = 1, py::arg("u") = 0, py::arg("v") = 2);

  mod.def("run",
          [](const std::string& command, const std::string& config_json,
             const std::filesystem::path& out) {
            RunConfig c = RunConfig::from_json(nlohmann::json::parse(config_json));
            c.command = command;
            CommandOutcome r;
            if (command == "construct") r = cmd_construct(c, out);
            else if (command == "embed") r = cmd_embed(c, out);
            else if (command == "perturb") r = cmd_perturb(c, out);
            else throw InvalidInput("unknown command " + command);
            return py::make_tuple(r.exit_code, r.summary.dump());
          },
          py::arg("command"), py::arg("config_json") = "{}", py::arg("out"));
  mod.def("verify",
          [](const std::filesystem::path& series, const std::filesystem::path& cert) {
            const auto v = cmd_verify(series, cert);
            return py::make_tuple(v.match, v.verdict, v.detail);
          });
  mod.def("verify_directory", [](const std::filesystem::path& dir) {
    const auto v = verify_directory(dir);
    return py::make_tuple(v.match, v.verdict, v.detail);
  });
}
