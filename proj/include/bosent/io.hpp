#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bosent/criteria.hpp"
#include "bosent/dynamics.hpp"
#include "bosent/negativity.hpp"
#include "bosent/states.hpp"

namespace bosent::io {

/// Contents of a state file: a pure state or a density matrix.
struct StateFile {
  std::variant<PureState, DensityMatrix> state;

  bool is_pure() const { return std::holds_alternative<PureState>(state); }
  /// The density matrix (pure states are converted).
  DensityMatrix density() const;
  const FockBasis& basis() const;
};

/// Parses and validates a state document:
///   {"N", "M", "m", "kind": "pure"|"density",
///    "entries": [{"row": [...], "col": [...], "re", "im"}]}
/// Throws InvalidInput on any schema or validity violation.
StateFile parse_state(const std::string& text,
                      const TolerancePolicy& policy = default_policy());
StateFile load_state(const std::string& path,
                     const TolerancePolicy& policy = default_policy());

/// Canonical documents: entries in flat basis order, exact zeros omitted.
std::string serialize_state(const PureState& psi);
std::string serialize_state(const DensityMatrix& rho);
std::string serialize_state(const StateFile& file);

/// Writes text to a file; throws std::runtime_error on I/O failure.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

/// {"total", "method", "per_minor": [...], "off_diagonal": [{"k","l","trace_norm"}]}
std::string negativity_report_json(const NegativityReport& report);

/// {"verdict", "negativity", "rule", "is_ppt", "certificate"?, "diagnostics"?}
std::string verdict_json(const ClassificationVerdict& verdict, const PptResult& ppt);

/// "t,negativity" header plus one %.17g row per point.
std::string trajectory_csv(const std::vector<TrajectoryPoint>& points);

/// %.17g formatting.
std::string format_double(double value);

/// 64-bit FNV-1a digest of a byte string, as 16 hex digits.
std::string digest(const std::string& bytes);

}  // namespace bosent::io
