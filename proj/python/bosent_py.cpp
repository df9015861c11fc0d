#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bosent/criteria.hpp"
#include "bosent/dynamics.hpp"
#include "bosent/error.hpp"
#include "bosent/io.hpp"
#include "bosent/negativity.hpp"
#include "bosent/partial_transpose.hpp"

namespace py = pybind11;
using namespace bosent;

namespace {

NegativityMethod parse_method(const std::string& name) {
  if (name == "sector") return NegativityMethod::SectorDecomposition;
  if (name == "two-mode") return NegativityMethod::TwoModeClosedForm;
  if (name == "oracle") return NegativityMethod::BruteForceOracle;
  throw InvalidInput("unknown method '" + name + "' (sector, two-mode, oracle)");
}

py::dict report_dict(const NegativityReport& r) {
  py::list off;
  for (const auto& o : r.off_diagonal) off.append(py::make_tuple(o.k, o.l, o.trace_norm));
  py::dict d;
  d["total"] = r.total;
  d["method"] = to_string(r.method);
  d["per_minor"] = r.per_minor;
  d["off_diagonal"] = off;
  return d;
}

py::dict verdict_dict(const ClassificationVerdict& v) {
  py::dict d;
  d["verdict"] = to_string(v.verdict);
  d["negativity"] = v.negativity;
  d["rule"] = v.rule;
  d["note"] = v.note;
  if (v.certificate) {
    py::list terms;
    for (const auto& t : v.certificate->terms) {
      py::dict term;
      term["weight"] = t.weight;
      term["k"] = t.k;
      term["left"] = t.left;
      term["right"] = t.right;
      terms.append(term);
    }
    d["certificate"] = terms;
    d["reconstruction_error"] = v.certificate->reconstruction_error;
  }
  py::list diags;
  for (const auto& m : v.diagnostics) {
    py::dict dm;
    dm["k"] = m.k;
    dm["trace"] = m.trace;
    dm["negativity"] = m.negativity;
    dm["pt_min_eigenvalue"] = m.pt_min_eigenvalue;
    dm["realignment_norm"] = m.realignment_norm;
    dm["realignment_violated"] = m.realignment_violated;
    diags.append(dm);
  }
  d["diagnostics"] = diags;
  return d;
}

}  // namespace

PYBIND11_MODULE(_bosent, m) {
  m.doc() = "Entanglement of fixed-particle-number bosonic states across mode bipartitions";

  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<FockBasis, std::shared_ptr<FockBasis>>(m, "Basis")
      .def(py::init([](int n, int modes, int left) {
             return std::const_pointer_cast<FockBasis>(build_basis(n, {modes, left}));
           }),
           py::arg("N"), py::arg("M"), py::arg("m"))
      .def_property_readonly("N", &FockBasis::particles)
      .def_property_readonly("M", &FockBasis::modes)
      .def_property_readonly("m", &FockBasis::left_modes)
      .def_property_readonly("dimension", &FockBasis::dimension)
      .def("sectors",
           [](const FockBasis& b) {
             std::vector<std::tuple<int, std::size_t, std::size_t>> out;
             for (const auto& s : b.sectors()) out.emplace_back(s.k, s.d1, s.d2);
             return out;
           })
      .def("index_of", &FockBasis::flat_index_of, py::arg("occupation"))
      .def("occupation_of",
           [](const FockBasis& b, std::size_t flat) { return b.occupation_of(b.sector_index(flat)); })
      .def("__eq__", &FockBasis::operator==)
      .def("__repr__", [](const FockBasis& b) {
        return "Basis(N=" + std::to_string(b.particles()) + ", M=" + std::to_string(b.modes()) +
               ", m=" + std::to_string(b.left_modes()) + ")";
      });

  py::class_<PureState>(m, "PureState")
      .def_property_readonly("amplitudes", &PureState::amplitudes)
      .def_property_readonly("basis",
                             [](const PureState& s) { return std::const_pointer_cast<FockBasis>(s.basis_ptr()); })
      .def("density", &pure_to_density);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_static("from_dense",
                  [](const std::shared_ptr<FockBasis>& b, const Matrix& dense) {
                    return DensityMatrix::from_dense(b, dense);
                  })
      .def_property_readonly("basis",
                             [](const DensityMatrix& r) { return std::const_pointer_cast<FockBasis>(r.basis_ptr()); })
      .def("dense", &DensityMatrix::dense)
      .def("block", &DensityMatrix::block, py::arg("k"), py::arg("l"))
      .def("minor", &DensityMatrix::minor, py::arg("k"))
      .def("trace", &DensityMatrix::trace)
      .def("is_block_diagonal", &DensityMatrix::is_block_diagonal);

  m.def("noon_state", &noon_state, py::arg("N"));
  m.def("fock_state",
        [](const std::shared_ptr<FockBasis>& b, const OccupationVector& occ) {
          return from_fock_occupation(b, occ);
        });
  m.def("pure_state", [](const std::shared_ptr<FockBasis>& b, const Vector& amps) {
    return PureState(b, amps);
  });
  m.def("random_density",
        [](const std::shared_ptr<FockBasis>& b, std::size_t rank, std::uint64_t seed) {
          return random_density(b, rank, seed);
        },
        py::arg("basis"), py::arg("rank"), py::arg("seed"));
  m.def("random_pure_state",
        [](const std::shared_ptr<FockBasis>& b, std::uint64_t seed) { return random_pure_state(b, seed); },
        py::arg("basis"), py::arg("seed"));
  m.def("block_diagonal_project", &block_diagonal_project);
  m.def("horodecki_qutrit_state", &horodecki_qutrit_state, py::arg("a"));
  m.def("embed_qutrit_block",
        [](const std::shared_ptr<FockBasis>& b, const Matrix& block, const std::vector<double>& w) {
          return embed_qutrit_block(b, block, w);
        },
        py::arg("basis"), py::arg("block"), py::arg("weights"));

  m.def("negativity",
        [](const DensityMatrix& rho, const std::string& method) {
          switch (parse_method(method)) {
            case NegativityMethod::TwoModeClosedForm: return report_dict(negativity_two_mode(rho));
            case NegativityMethod::BruteForceOracle: return report_dict(negativity_oracle(rho));
            default: return report_dict(negativity_general(rho));
          }
        },
        py::arg("rho"), py::arg("method") = "sector");
  m.def("weighted_negativity", [](const std::vector<std::pair<double, DensityMatrix>>& parts) {
    NumberSectorMixture mix;
    mix.components = parts;
    return weighted_negativity(mix);
  });
  m.def("partial_transpose", &partial_transpose_first, py::arg("op"), py::arg("d1"), py::arg("d2"));
  m.def("realignment", &realignment, py::arg("op"), py::arg("d1"), py::arg("d2"));

  m.def("schmidt_rank", [](const PureState& psi) { return schmidt_decompose(psi).schmidt_rank; });
  m.def("schmidt_coefficients",
        [](const PureState& psi) { return schmidt_decompose(psi).singular_values; });
  m.def("is_ppt", [](const DensityMatrix& rho) { return is_ppt(rho).ppt; });
  m.def("classify", [](const DensityMatrix& rho) { return verdict_dict(classify(rho)); });

  m.def("dephase",
        [](const DensityMatrix& rho, double gamma, double t) {
          return dephase_closed_form(rho, {gamma, t});
        },
        py::arg("rho"), py::arg("gamma"), py::arg("t"));
  m.def("negativity_trajectory",
        [](const DensityMatrix& rho, double gamma, const std::vector<double>& grid) {
          std::vector<std::pair<double, double>> out;
          for (const auto& p : negativity_trajectory(rho, gamma, grid)) out.emplace_back(p.t, p.negativity);
          return out;
        },
        py::arg("rho"), py::arg("gamma"), py::arg("times"));

  m.def("loads", [](const std::string& text) { return io::parse_state(text).density(); });
  m.def("load", [](const std::string& path) { return io::load_state(path).density(); });
  m.def("dumps", py::overload_cast<const DensityMatrix&>(&io::serialize_state));
  m.def("dumps", py::overload_cast<const PureState&>(&io::serialize_state));
}
