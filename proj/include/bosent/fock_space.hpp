#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace bosent {

/// Split of M modes into the first m (left party) and the remaining M - m
/// (right party).
struct ModeBipartition {
  int modes = 0;       // M
  int left_modes = 0;  // m

  int right_modes() const { return modes - left_modes; }
  /// Throws InvalidInput unless M >= 1 and 0 <= m <= M.
  void validate() const;
};

/// Number of bosons per mode.
using OccupationVector = std::vector<int>;

struct SectorShape {
  int k = 0;            // particles in the left party
  std::size_t d1 = 0;   // left sector dimension, C(k+m-1, k)
  std::size_t d2 = 0;   // right sector dimension, C(N-k+M-m-1, N-k)
  std::size_t dim() const { return d1 * d2; }
};

/// Position of a basis vector: sector k, left index sigma, right index
/// sigma_prime.
struct SectorIndex {
  int k = 0;
  std::size_t sigma = 0;
  std::size_t sigma_prime = 0;

  friend bool operator==(const SectorIndex&, const SectorIndex&) = default;
};

/// Exact binomial coefficient C(n, r) with overflow detection. C(n, r) = 0
/// for r < 0 or r > n, except C(-1, 0) = 1 (empty party, no particles).
/// Throws std::overflow_error if the result does not fit in 64 bits.
std::uint64_t binomial(std::int64_t n, std::int64_t r);

/// All occupations of `modes` modes holding exactly `particles` bosons, in
/// descending lexicographic order (the first one has every particle in the
/// first mode).
std::vector<OccupationVector> enumerate_occupations(int modes, int particles);

/// Dimensions (d1, d2) of sector k. Throws InvalidInput for k outside [0, N].
std::pair<std::size_t, std::size_t> sector_dims(int n_particles,
                                                const ModeBipartition& bip,
                                                int k);

/// Fixed-N Fock basis in the mode-bipartition adapted labelling. Immutable
/// once built; share it through `std::shared_ptr<const FockBasis>`.
///
/// Flat indices run over sectors k = 0..N in order; inside a sector the
/// composite index is sigma * d2 + sigma_prime (left index slowest).
class FockBasis {
 public:
  FockBasis(int n_particles, ModeBipartition bip);

  int particles() const { return n_; }
  const ModeBipartition& bipartition() const { return bip_; }
  int modes() const { return bip_.modes; }
  int left_modes() const { return bip_.left_modes; }
  int right_modes() const { return bip_.right_modes(); }

  const std::vector<SectorShape>& sectors() const { return sectors_; }
  const SectorShape& sector(int k) const;
  /// Flat index of the first basis vector of sector k.
  std::size_t sector_offset(int k) const;
  std::size_t dimension() const { return dim_; }

  /// Occupations of the left party with k particles, descending lex.
  const std::vector<OccupationVector>& left_states(int k) const;
  /// Occupations of the right party with N - k particles, descending lex.
  const std::vector<OccupationVector>& right_states(int k) const;

  /// Throws InvalidInput if the vector has the wrong length, a negative entry
  /// or does not sum to N.
  SectorIndex index_of(const OccupationVector& occ) const;
  OccupationVector occupation_of(const SectorIndex& idx) const;

  std::size_t flat_index(const SectorIndex& idx) const;
  SectorIndex sector_index(std::size_t flat) const;
  std::size_t flat_index_of(const OccupationVector& occ) const {
    return flat_index(index_of(occ));
  }

  bool operator==(const FockBasis& other) const {
    return n_ == other.n_ && bip_.modes == other.bip_.modes &&
           bip_.left_modes == other.bip_.left_modes;
  }

 private:
  void check_k(int k) const;

  int n_;
  ModeBipartition bip_;
  std::vector<SectorShape> sectors_;
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
  std::vector<std::vector<OccupationVector>> left_;
  std::vector<std::vector<OccupationVector>> right_;
  std::map<OccupationVector, std::size_t> left_lookup_;
  std::map<OccupationVector, std::size_t> right_lookup_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

/// Convenience: validated, shared basis.
BasisPtr build_basis(int n_particles, ModeBipartition bip);

}  // namespace bosent
