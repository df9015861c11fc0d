#include "bosent/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "bosent/error.hpp"
#include "json.hpp"

namespace bosent::io {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw InvalidInput("state file: " + what);
}

int require_int(const json& doc, const char* key) {
  if (!doc.contains(key)) schema_error(std::string("missing field \"") + key + "\"");
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) schema_error(std::string("field \"") + key + "\" must be an integer");
  const auto x = v.get<long long>();
  if (x < -1000000 || x > 1000000) schema_error(std::string("field \"") + key + "\" out of range");
  return static_cast<int>(x);
}

double require_double(const json& entry, const char* key) {
  if (!entry.contains(key)) schema_error(std::string("entry missing \"") + key + "\"");
  const auto& v = entry.at(key);
  if (!v.is_number()) schema_error(std::string("entry field \"") + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) schema_error("non-finite entry value");
  return x;
}

OccupationVector require_occupation(const json& entry, const char* key,
                                    const FockBasis& basis) {
  if (!entry.contains(key)) schema_error(std::string("entry missing \"") + key + "\"");
  const auto& v = entry.at(key);
  if (!v.is_array()) schema_error(std::string("\"") + key + "\" must be an array");
  OccupationVector occ;
  for (const auto& x : v) {
    if (!x.is_number_integer()) schema_error("occupation numbers must be integers");
    const auto n = x.get<long long>();
    if (n < 0 || n > basis.particles()) schema_error("occupation number out of range");
    occ.push_back(static_cast<int>(n));
  }
  basis.index_of(occ);  // length and particle-count checks
  return occ;
}

json occupation_json(const FockBasis& basis, std::size_t flat) {
  return basis.occupation_of(basis.sector_index(flat));
}

json header(const FockBasis& basis, const char* kind) {
  json doc;
  doc["N"] = basis.particles();
  doc["M"] = basis.modes();
  doc["m"] = basis.left_modes();
  doc["kind"] = kind;
  return doc;
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json vector_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_json(v(i)));
  return arr;
}

}  // namespace

DensityMatrix StateFile::density() const {
  if (const auto* psi = std::get_if<PureState>(&state)) return pure_to_density(*psi);
  return std::get<DensityMatrix>(state);
}

const FockBasis& StateFile::basis() const {
  return std::visit([](const auto& s) -> const FockBasis& { return s.basis(); }, state);
}

StateFile parse_state(const std::string& text, const TolerancePolicy& policy) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema_error(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("top level must be an object");
  const int n = require_int(doc, "N");
  const int modes = require_int(doc, "M");
  const int left = require_int(doc, "m");
  if (n < 0) schema_error("N must be >= 0");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) schema_error("missing string field \"kind\"");
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind != "pure" && kind != "density") schema_error("kind must be \"pure\" or \"density\"");
  if (!doc.contains("entries") || !doc.at("entries").is_array()) schema_error("missing array \"entries\"");

  const ModeBipartition bip{modes, left};
  bip.validate();
  if (binomial(static_cast<std::int64_t>(n) + modes - 1, n) > 1000000) {
    schema_error("basis dimension exceeds 10^6");
  }
  auto basis = build_basis(n, bip);
  const auto dim = static_cast<Eigen::Index>(basis->dimension());

  if (kind == "pure") {
    Vector amps = Vector::Zero(dim);
    std::set<std::size_t> seen;
    for (const auto& entry : doc.at("entries")) {
      if (!entry.is_object()) schema_error("entries must be objects");
      if (entry.contains("col")) schema_error("pure-state entries must not carry \"col\"");
      const auto idx = basis->flat_index_of(require_occupation(entry, "row", *basis));
      if (!seen.insert(idx).second) schema_error("duplicate entry");
      amps(static_cast<Eigen::Index>(idx)) =
          Complex(require_double(entry, "re"), require_double(entry, "im"));
    }
    return {PureState(basis, std::move(amps), policy)};
  }

  Matrix dense = Matrix::Zero(dim, dim);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& entry : doc.at("entries")) {
    if (!entry.is_object()) schema_error("entries must be objects");
    const auto r = basis->flat_index_of(require_occupation(entry, "row", *basis));
    const auto c = basis->flat_index_of(require_occupation(entry, "col", *basis));
    if (!seen.insert({r, c}).second) schema_error("duplicate entry");
    dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
        Complex(require_double(entry, "re"), require_double(entry, "im"));
  }
  return {DensityMatrix::from_dense(basis, dense, policy)};
}

StateFile load_state(const std::string& path, const TolerancePolicy& policy) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const std::runtime_error& e) {
    throw InvalidInput(e.what());
  }
  return parse_state(text, policy);
}

std::string serialize_state(const PureState& psi) {
  const auto& basis = psi.basis();
  json doc = header(basis, "pure");
  json entries = json::array();
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    const Complex z = psi.amplitudes()(static_cast<Eigen::Index>(i));
    if (z == Complex(0.0, 0.0)) continue;
    entries.push_back({{"row", occupation_json(basis, i)}, {"re", z.real()}, {"im", z.imag()}});
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

std::string serialize_state(const DensityMatrix& rho) {
  const auto& basis = rho.basis();
  json doc = header(basis, "density");
  json entries = json::array();
  const Matrix dense = rho.dense();
  for (std::size_t r = 0; r < basis.dimension(); ++r) {
    for (std::size_t c = 0; c < basis.dimension(); ++c) {
      const Complex z = dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (z == Complex(0.0, 0.0)) continue;
      entries.push_back({{"row", occupation_json(basis, r)},
                         {"col", occupation_json(basis, c)},
                         {"re", z.real()},
                         {"im", z.imag()}});
    }
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

std::string serialize_state(const StateFile& file) {
  return std::visit([](const auto& s) { return serialize_state(s); }, file.state);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string negativity_report_json(const NegativityReport& report) {
  json doc;
  doc["total"] = report.total;
  doc["method"] = to_string(report.method);
  doc["per_minor"] = report.per_minor;
  json off = json::array();
  for (const auto& od : report.off_diagonal) {
    off.push_back({{"k", od.k}, {"l", od.l}, {"trace_norm", od.trace_norm}});
  }
  doc["off_diagonal"] = std::move(off);
  return doc.dump(2) + "\n";
}

std::string verdict_json(const ClassificationVerdict& verdict, const PptResult& ppt) {
  json doc;
  doc["verdict"] = to_string(verdict.verdict);
  doc["negativity"] = verdict.negativity;
  doc["rule"] = verdict.rule;
  doc["is_ppt"] = ppt.ppt;
  if (verdict.certificate) {
    json terms = json::array();
    for (const auto& t : verdict.certificate->terms) {
      terms.push_back({{"weight", t.weight},
                       {"k", t.k},
                       {"left", vector_json(t.left)},
                       {"right", vector_json(t.right)}});
    }
    doc["certificate"] = {{"reconstruction_error", verdict.certificate->reconstruction_error},
                          {"terms", std::move(terms)}};
  }
  json diag;
  if (!verdict.diagnostics.empty()) {
    json minors = json::array();
    for (const auto& d : verdict.diagnostics) {
      minors.push_back({{"k", d.k},
                        {"trace", d.trace},
                        {"negativity", d.negativity},
                        {"pt_min_eigenvalue", d.pt_min_eigenvalue},
                        {"realignment_norm", d.realignment_norm},
                        {"realignment_violated", d.realignment_violated}});
    }
    diag["minors"] = std::move(minors);
  }
  if (!verdict.note.empty()) diag["note"] = verdict.note;
  if (!diag.is_null()) {
    json blocks = json::array();
    for (const auto& b : ppt.offending_blocks) {
      blocks.push_back({{"k", b.k}, {"l", b.l}, {"frobenius", b.frobenius}});
    }
    diag["offending_blocks"] = std::move(blocks);
    diag["npt_minors"] = ppt.npt_minors;
    doc["diagnostics"] = std::move(diag);
  }
  return doc.dump(2) + "\n";
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& points) {
  std::string out = "t,negativity\n";
  for (const auto& p : points) {
    out += format_double(p.t);
    out += ',';
    out += format_double(p.negativity);
    out += '\n';
  }
  return out;
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace bosent::io
