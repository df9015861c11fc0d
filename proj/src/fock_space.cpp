#include "bosent/fock_space.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bosent/error.hpp"

namespace bosent {

void ModeBipartition::validate() const {
  if (modes < 1) {
    throw InvalidInput("bipartition: number of modes M must be >= 1");
  }
  if (left_modes < 0 || left_modes > modes) {
    std::ostringstream msg;
    msg << "bipartition: need 0 <= m <= M, got m=" << left_modes
        << " M=" << modes;
    throw InvalidInput(msg.str());
  }
}

std::uint64_t binomial(std::int64_t n, std::int64_t r) {
  if (n == -1 && r == 0) return 1;
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    // acc = C(n - r + i, i) stays exact: C(a, i-1) * a' / i is integral.
    acc = acc * static_cast<unsigned __int128>(n - r + i) /
          static_cast<unsigned __int128>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      std::ostringstream msg;
      msg << "binomial(" << n << ", " << r << ") overflows 64 bits";
      throw std::overflow_error(msg.str());
    }
  }
  return static_cast<std::uint64_t>(acc);
}

namespace {

void fill_occupations(int mode, int remaining, OccupationVector& cur,
                      std::vector<OccupationVector>& out) {
  const int modes = static_cast<int>(cur.size());
  if (mode == modes - 1) {
    cur[mode] = remaining;
    out.push_back(cur);
    return;
  }
  for (int n = remaining; n >= 0; --n) {
    cur[mode] = n;
    fill_occupations(mode + 1, remaining - n, cur, out);
  }
}

std::size_t checked_size(std::uint64_t v) {
  if (v > std::numeric_limits<std::size_t>::max()) {
    throw std::overflow_error("dimension does not fit in size_t");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<OccupationVector> enumerate_occupations(int modes, int particles) {
  std::vector<OccupationVector> out;
  if (particles < 0 || modes < 0) return out;
  if (modes == 0) {
    if (particles == 0) out.emplace_back();
    return out;
  }
  OccupationVector cur(static_cast<std::size_t>(modes), 0);
  fill_occupations(0, particles, cur, out);
  return out;
}

std::pair<std::size_t, std::size_t> sector_dims(int n_particles,
                                                const ModeBipartition& bip,
                                                int k) {
  bip.validate();
  if (n_particles < 0) throw InvalidInput("particle number must be >= 0");
  if (k < 0 || k > n_particles) {
    std::ostringstream msg;
    msg << "sector k=" << k << " outside [0, " << n_particles << "]";
    throw InvalidInput(msg.str());
  }
  const std::int64_t m = bip.left_modes;
  const std::int64_t mr = bip.right_modes();
  const std::int64_t kk = k;
  const std::int64_t rest = n_particles - k;
  return {checked_size(binomial(kk + m - 1, kk)),
          checked_size(binomial(rest + mr - 1, rest))};
}

FockBasis::FockBasis(int n_particles, ModeBipartition bip)
    : n_(n_particles), bip_(bip) {
  bip_.validate();
  if (n_ < 0) throw InvalidInput("particle number must be >= 0");
  sectors_.reserve(static_cast<std::size_t>(n_) + 1);
  for (int k = 0; k <= n_; ++k) {
    auto [d1, d2] = sector_dims(n_, bip_, k);
    auto left = enumerate_occupations(bip_.left_modes, k);
    auto right = enumerate_occupations(bip_.right_modes(), n_ - k);
    if (left.size() != d1 || right.size() != d2) {
      throw std::logic_error("Fock enumeration disagrees with sector_dims");
    }
    for (std::size_t i = 0; i < left.size(); ++i) left_lookup_[left[i]] = i;
    for (std::size_t i = 0; i < right.size(); ++i) right_lookup_[right[i]] = i;
    left_.push_back(std::move(left));
    right_.push_back(std::move(right));
    offsets_.push_back(dim_);
    sectors_.push_back({k, d1, d2});
    if (d1 != 0 && d2 > std::numeric_limits<std::size_t>::max() / d1) {
      throw std::overflow_error("sector dimension overflows size_t");
    }
    dim_ += d1 * d2;
  }
}

void FockBasis::check_k(int k) const {
  if (k < 0 || k > n_) {
    std::ostringstream msg;
    msg << "sector k=" << k << " outside [0, " << n_ << "]";
    throw InvalidInput(msg.str());
  }
}

const SectorShape& FockBasis::sector(int k) const {
  check_k(k);
  return sectors_[static_cast<std::size_t>(k)];
}

std::size_t FockBasis::sector_offset(int k) const {
  check_k(k);
  return offsets_[static_cast<std::size_t>(k)];
}

const std::vector<OccupationVector>& FockBasis::left_states(int k) const {
  check_k(k);
  return left_[static_cast<std::size_t>(k)];
}

const std::vector<OccupationVector>& FockBasis::right_states(int k) const {
  check_k(k);
  return right_[static_cast<std::size_t>(k)];
}

SectorIndex FockBasis::index_of(const OccupationVector& occ) const {
  if (static_cast<int>(occ.size()) != bip_.modes) {
    std::ostringstream msg;
    msg << "occupation vector has " << occ.size() << " entries, expected "
        << bip_.modes;
    throw InvalidInput(msg.str());
  }
  if (std::any_of(occ.begin(), occ.end(), [](int n) { return n < 0; })) {
    throw InvalidInput("occupation vector has a negative entry");
  }
  const int total = std::accumulate(occ.begin(), occ.end(), 0);
  if (total != n_) {
    std::ostringstream msg;
    msg << "occupation vector holds " << total << " particles, expected " << n_;
    throw InvalidInput(msg.str());
  }
  const auto split = occ.begin() + bip_.left_modes;
  OccupationVector left(occ.begin(), split);
  OccupationVector right(split, occ.end());
  const int k = std::accumulate(left.begin(), left.end(), 0);
  return {k, left_lookup_.at(left), right_lookup_.at(right)};
}

OccupationVector FockBasis::occupation_of(const SectorIndex& idx) const {
  const auto& left = left_states(idx.k);
  const auto& right = right_states(idx.k);
  if (idx.sigma >= left.size() || idx.sigma_prime >= right.size()) {
    throw InvalidInput("sector index out of range");
  }
  OccupationVector occ = left[idx.sigma];
  occ.insert(occ.end(), right[idx.sigma_prime].begin(),
             right[idx.sigma_prime].end());
  return occ;
}

std::size_t FockBasis::flat_index(const SectorIndex& idx) const {
  const auto& s = sector(idx.k);
  if (idx.sigma >= s.d1 || idx.sigma_prime >= s.d2) {
    throw InvalidInput("sector index out of range");
  }
  return offsets_[static_cast<std::size_t>(idx.k)] + idx.sigma * s.d2 +
         idx.sigma_prime;
}

SectorIndex FockBasis::sector_index(std::size_t flat) const {
  if (flat >= dim_) throw InvalidInput("flat basis index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat);
  // Skip back over empty sectors sharing the same offset.
  std::size_t k = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  while (sectors_[k].dim() == 0) --k;
  const std::size_t local = flat - offsets_[k];
  return {static_cast<int>(k), local / sectors_[k].d2, local % sectors_[k].d2};
}

BasisPtr build_basis(int n_particles, ModeBipartition bip) {
  return std::make_shared<const FockBasis>(n_particles, bip);
}

}  // namespace bosent
