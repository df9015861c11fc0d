#include "bosent/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "bosent/error.hpp"

namespace bosent {

namespace {

void require_basis(const BasisPtr& basis) {
  if (!basis) throw InvalidInput("null basis");
}

double factorial_sqrt(int n) {
  return std::sqrt(std::tgamma(static_cast<double>(n) + 1.0));
}

void check_weights(const std::vector<double>& weights, std::size_t count,
                   const TolerancePolicy& policy) {
  if (weights.size() != count) {
    throw InvalidInput("mix: number of weights differs from number of states");
  }
  if (weights.empty()) throw InvalidInput("mix: no states given");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidInput("mix: weights must be finite and non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > policy.trace_tol) {
    std::ostringstream msg;
    msg << "mix: weights sum to " << sum << ", expected 1";
    throw InvalidInput(msg.str());
  }
}

Vector gaussian_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------- PureState

PureState::PureState(BasisPtr basis, Vector amplitudes,
                     const TolerancePolicy& policy)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
  require_basis(basis_);
  if (static_cast<std::size_t>(amps_.size()) != basis_->dimension()) {
    std::ostringstream msg;
    msg << "pure state has " << amps_.size() << " amplitudes, basis has "
        << basis_->dimension();
    throw InvalidInput(msg.str());
  }
  if (!amps_.allFinite()) throw InvalidInput("pure state: non-finite amplitude");
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > policy.trace_tol) {
    std::ostringstream msg;
    msg << "pure state is not normalized (|psi|^2 = " << norm2 << ")";
    throw InvalidInput(msg.str());
  }
}

Matrix PureState::coefficient_matrix(int k) const {
  const auto& s = basis_->sector(k);
  const auto off = static_cast<Eigen::Index>(basis_->sector_offset(k));
  Matrix c(static_cast<Eigen::Index>(s.d1), static_cast<Eigen::Index>(s.d2));
  for (std::size_t i = 0; i < s.d1; ++i) {
    for (std::size_t j = 0; j < s.d2; ++j) {
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          amps_(off + static_cast<Eigen::Index>(i * s.d2 + j));
    }
  }
  return c;
}

// ------------------------------------------------------------ DensityMatrix

DensityMatrix::DensityMatrix(BasisPtr basis, BlockMap blocks)
    : basis_(std::move(basis)), blocks_(std::move(blocks)) {
  require_basis(basis_);
  const int n = basis_->particles();
  for (auto it = blocks_.begin(); it != blocks_.end();) {
    const auto [k, l] = it->first;
    if (k < 0 || k > n || l < 0 || l > n) {
      throw InvalidInput("density block sector index out of range");
    }
    const auto& sk = basis_->sector(k);
    const auto& sl = basis_->sector(l);
    if (static_cast<std::size_t>(it->second.rows()) != sk.dim() ||
        static_cast<std::size_t>(it->second.cols()) != sl.dim()) {
      std::ostringstream msg;
      msg << "density block (" << k << "," << l << ") has shape "
          << it->second.rows() << "x" << it->second.cols() << ", expected "
          << sk.dim() << "x" << sl.dim();
      throw InvalidInput(msg.str());
    }
    if (it->second.size() == 0 || it->second.isZero(0.0)) {
      it = blocks_.erase(it);
    } else {
      ++it;
    }
  }
}

DensityMatrix DensityMatrix::from_blocks(BasisPtr basis, BlockMap blocks,
                                         const TolerancePolicy& policy) {
  DensityMatrix rho(std::move(basis), std::move(blocks));
  rho.validate(policy);
  return rho;
}

DensityMatrix DensityMatrix::from_blocks_unchecked(BasisPtr basis,
                                                   BlockMap blocks) {
  return DensityMatrix(std::move(basis), std::move(blocks));
}

DensityMatrix DensityMatrix::from_dense_unchecked(BasisPtr basis,
                                                  const Matrix& dense) {
  require_basis(basis);
  const auto dim = static_cast<Eigen::Index>(basis->dimension());
  if (dense.rows() != dim || dense.cols() != dim) {
    std::ostringstream msg;
    msg << "dense density matrix is " << dense.rows() << "x" << dense.cols()
        << ", basis dimension is " << dim;
    throw InvalidInput(msg.str());
  }
  BlockMap blocks;
  for (const auto& sk : basis->sectors()) {
    if (sk.dim() == 0) continue;
    for (const auto& sl : basis->sectors()) {
      if (sl.dim() == 0) continue;
      blocks[{sk.k, sl.k}] = dense.block(
          static_cast<Eigen::Index>(basis->sector_offset(sk.k)),
          static_cast<Eigen::Index>(basis->sector_offset(sl.k)),
          static_cast<Eigen::Index>(sk.dim()), static_cast<Eigen::Index>(sl.dim()));
    }
  }
  return DensityMatrix(std::move(basis), std::move(blocks));
}

DensityMatrix DensityMatrix::from_dense(BasisPtr basis, const Matrix& dense,
                                        const TolerancePolicy& policy) {
  auto rho = from_dense_unchecked(std::move(basis), dense);
  rho.validate(policy);
  return rho;
}

Matrix DensityMatrix::block(int k, int l) const {
  auto it = blocks_.find({k, l});
  if (it != blocks_.end()) return it->second;
  const auto& sk = basis_->sector(k);
  const auto& sl = basis_->sector(l);
  return Matrix::Zero(static_cast<Eigen::Index>(sk.dim()),
                      static_cast<Eigen::Index>(sl.dim()));
}

bool DensityMatrix::is_block_diagonal() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const auto& kv) { return kv.first.first == kv.first.second; });
}

Matrix DensityMatrix::dense() const {
  const auto dim = static_cast<Eigen::Index>(basis_->dimension());
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& [key, b] : blocks_) {
    out.block(static_cast<Eigen::Index>(basis_->sector_offset(key.first)),
              static_cast<Eigen::Index>(basis_->sector_offset(key.second)),
              b.rows(), b.cols()) = b;
  }
  return out;
}

double DensityMatrix::trace() const {
  double tr = 0.0;
  for (const auto& [key, b] : blocks_) {
    if (key.first == key.second) tr += b.trace().real();
  }
  return tr;
}

Complex DensityMatrix::entry(std::size_t row, std::size_t col) const {
  const auto r = basis_->sector_index(row);
  const auto c = basis_->sector_index(col);
  auto it = blocks_.find({r.k, c.k});
  if (it == blocks_.end()) return {0.0, 0.0};
  const auto& sr = basis_->sector(r.k);
  const auto& sc = basis_->sector(c.k);
  return it->second(static_cast<Eigen::Index>(r.sigma * sr.d2 + r.sigma_prime),
                    static_cast<Eigen::Index>(c.sigma * sc.d2 + c.sigma_prime));
}

ValidityReport DensityMatrix::check(const TolerancePolicy& policy) const {
  ValidityReport rep;
  rep.trace = trace();
  for (const auto& [key, b] : blocks_) {
    if (!b.allFinite()) {
      rep.hermiticity_deviation = std::numeric_limits<double>::infinity();
      rep.min_eigenvalue = -std::numeric_limits<double>::infinity();
      return rep;
    }
    const Matrix partner = block(key.second, key.first);
    rep.hermiticity_deviation = std::max(
        rep.hermiticity_deviation, (b - partner.adjoint()).cwiseAbs().maxCoeff());
  }
  const double scale = std::max(1.0, std::abs(rep.trace));
  if (rep.hermiticity_deviation > policy.hermiticity_tol * scale) return rep;

  // Permissive policy so that eigvalsh never rejects what we just measured.
  TolerancePolicy loose = policy;
  loose.hermiticity_tol = std::numeric_limits<double>::infinity();
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  if (is_block_diagonal()) {
    for (const auto& [key, b] : blocks_) {
      rep.min_eigenvalue =
          std::min(rep.min_eigenvalue, numerics::min_eigenvalue(b, loose));
    }
    // Unstored minors contribute zero eigenvalues.
    for (const auto& s : basis_->sectors()) {
      if (s.dim() > 0 && !has_block(s.k, s.k)) {
        rep.min_eigenvalue = std::min(rep.min_eigenvalue, 0.0);
      }
    }
  } else {
    rep.min_eigenvalue = numerics::min_eigenvalue(dense(), loose);
  }
  if (basis_->dimension() == 0) rep.min_eigenvalue = 0.0;
  rep.valid = rep.min_eigenvalue >= -policy.psd_floor * scale &&
              std::abs(rep.trace - 1.0) <= policy.trace_tol;
  return rep;
}

void DensityMatrix::validate(const TolerancePolicy& policy) const {
  const auto rep = check(policy);
  if (rep.valid) return;
  std::ostringstream msg;
  msg << "invalid density matrix: ";
  const double scale = std::max(1.0, std::abs(rep.trace));
  if (!(rep.hermiticity_deviation <= policy.hermiticity_tol * scale)) {
    msg << "not Hermitian (deviation " << rep.hermiticity_deviation << ")";
  } else if (rep.min_eigenvalue < -policy.psd_floor * scale) {
    msg << "not positive semidefinite (min eigenvalue " << rep.min_eigenvalue
        << ")";
  } else {
    msg << "trace " << rep.trace << " differs from 1";
  }
  throw InvalidInput(msg.str());
}

void NumberSectorMixture::validate(const TolerancePolicy& policy) const {
  if (components.empty()) throw InvalidInput("mixture has no components");
  double sum = 0.0;
  for (const auto& [w, rho] : components) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidInput("mixture weights must be finite and non-negative");
    }
    sum += w;
    rho.validate(policy);
  }
  if (std::abs(sum - 1.0) > policy.trace_tol) {
    std::ostringstream msg;
    msg << "mixture weights sum to " << sum << ", expected 1";
    throw InvalidInput(msg.str());
  }
}

// ------------------------------------------------------------- constructors

PureState from_fock_occupation(BasisPtr basis, const OccupationVector& occ) {
  require_basis(basis);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  amps(static_cast<Eigen::Index>(basis->flat_index_of(occ))) = 1.0;
  return PureState(std::move(basis), std::move(amps));
}

namespace {

/// Expands a homogeneous polynomial acting on the vacuum of one party into
/// that party's Fock states with `particles` bosons.
Vector expand_polynomial(const PolynomialSpec& poly, int party_modes,
                         const std::vector<OccupationVector>& states,
                         const char* name) {
  std::map<OccupationVector, std::size_t> lookup;
  for (std::size_t i = 0; i < states.size(); ++i) lookup[states[i]] = i;
  Vector out = Vector::Zero(static_cast<Eigen::Index>(states.size()));
  for (const auto& term : poly.terms) {
    if (static_cast<int>(term.degrees.size()) != party_modes) {
      std::ostringstream msg;
      msg << "polynomial " << name << ": monomial has " << term.degrees.size()
          << " degrees, party has " << party_modes << " modes";
      throw InvalidInput(msg.str());
    }
    auto it = lookup.find(term.degrees);
    if (it == lookup.end()) {
      throw std::logic_error("monomial degree not found among party states");
    }
    // (a^dag)^n |0> = sqrt(n!) |n> per mode.
    double norm = 1.0;
    for (int n : term.degrees) norm *= factorial_sqrt(n);
    out(static_cast<Eigen::Index>(it->second)) += term.coefficient * norm;
  }
  return out;
}

int homogeneous_degree(const PolynomialSpec& poly, const char* name) {
  if (poly.terms.empty()) {
    std::ostringstream msg;
    msg << "polynomial " << name << " has no terms";
    throw InvalidInput(msg.str());
  }
  std::optional<int> degree;
  for (const auto& term : poly.terms) {
    if (std::any_of(term.degrees.begin(), term.degrees.end(),
                    [](int d) { return d < 0; })) {
      std::ostringstream msg;
      msg << "polynomial " << name << " has a negative degree";
      throw InvalidInput(msg.str());
    }
    const int d = std::accumulate(term.degrees.begin(), term.degrees.end(), 0);
    if (degree && *degree != d) {
      std::ostringstream msg;
      msg << "polynomial " << name << " is not homogeneous (degrees " << *degree
          << " and " << d << ")";
      throw InvalidInput(msg.str());
    }
    degree = d;
  }
  return *degree;
}

}  // namespace

PureState from_local_polynomials(BasisPtr basis, const PolynomialSpec& p,
                                 const PolynomialSpec& q) {
  require_basis(basis);
  const int k0 = homogeneous_degree(p, "P");
  const int rest = homogeneous_degree(q, "Q");
  const int n = basis->particles();
  if (k0 + rest != n) {
    std::ostringstream msg;
    msg << "polynomial degrees " << k0 << " + " << rest
        << " do not add up to N = " << n;
    throw InvalidInput(msg.str());
  }
  const Vector left =
      expand_polynomial(p, basis->left_modes(), basis->left_states(k0), "P");
  const Vector right =
      expand_polynomial(q, basis->right_modes(), basis->right_states(k0), "Q");
  const double norm = left.norm() * right.norm();
  if (!(norm > 0.0)) {
    throw InvalidInput("local polynomials produce the zero vector");
  }
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  const auto off = static_cast<Eigen::Index>(basis->sector_offset(k0));
  for (Eigen::Index i = 0; i < left.size(); ++i) {
    amps.segment(off + i * right.size(), right.size()) = left(i) * right;
  }
  amps /= norm;
  return PureState(std::move(basis), std::move(amps));
}

PureState normalized_state(BasisPtr basis, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidInput("cannot normalize a zero or non-finite vector");
  }
  return PureState(std::move(basis), amplitudes / norm);
}

DensityMatrix pure_to_density(const PureState& psi) {
  const auto& basis = psi.basis();
  BlockMap blocks;
  for (const auto& sk : basis.sectors()) {
    if (sk.dim() == 0) continue;
    const Vector a = psi.amplitudes().segment(
        static_cast<Eigen::Index>(basis.sector_offset(sk.k)),
        static_cast<Eigen::Index>(sk.dim()));
    if (a.isZero(0.0)) continue;
    for (const auto& sl : basis.sectors()) {
      if (sl.dim() == 0) continue;
      const Vector b = psi.amplitudes().segment(
          static_cast<Eigen::Index>(basis.sector_offset(sl.k)),
          static_cast<Eigen::Index>(sl.dim()));
      if (b.isZero(0.0)) continue;
      blocks[{sk.k, sl.k}] = a * b.adjoint();
    }
  }
  return DensityMatrix::from_blocks_unchecked(psi.basis_ptr(), std::move(blocks));
}

DensityMatrix mix(const std::vector<double>& weights,
                  const std::vector<PureState>& states,
                  const TolerancePolicy& policy) {
  check_weights(weights, states.size(), policy);
  std::vector<DensityMatrix> rhos;
  rhos.reserve(states.size());
  for (const auto& s : states) rhos.push_back(pure_to_density(s));
  return mix(weights, rhos, policy);
}

DensityMatrix mix(const std::vector<double>& weights,
                  const std::vector<DensityMatrix>& states,
                  const TolerancePolicy& policy) {
  check_weights(weights, states.size(), policy);
  const BasisPtr basis = states.front().basis_ptr();
  BlockMap blocks;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!(states[i].basis() == *basis)) {
      throw InvalidInput("mix: states live in different Fock bases");
    }
    if (weights[i] == 0.0) continue;
    for (const auto& [key, b] : states[i].stored_blocks()) {
      auto it = blocks.find(key);
      if (it == blocks.end()) {
        blocks.emplace(key, weights[i] * b);
      } else {
        it->second += weights[i] * b;
      }
    }
  }
  return DensityMatrix::from_blocks(basis, std::move(blocks), policy);
}

DensityMatrix random_density(BasisPtr basis, std::size_t rank,
                             std::uint64_t seed) {
  require_basis(basis);
  const std::size_t dim = basis->dimension();
  if (rank < 1 || rank > dim) {
    std::ostringstream msg;
    msg << "random_density: rank " << rank << " outside [1, " << dim << "]";
    throw InvalidInput(msg.str());
  }
  std::mt19937_64 rng(seed);
  Matrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank));
  for (Eigen::Index c = 0; c < g.cols(); ++c) g.col(c) = gaussian_vector(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix::from_dense_unchecked(std::move(basis), rho);
}

PureState random_pure_state(BasisPtr basis, std::uint64_t seed) {
  require_basis(basis);
  std::mt19937_64 rng(seed);
  return normalized_state(basis, gaussian_vector(basis->dimension(), rng));
}

PureState random_product_state(BasisPtr basis, int k, std::uint64_t seed) {
  require_basis(basis);
  const auto& s = basis->sector(k);
  if (s.dim() == 0) throw InvalidInput("random_product_state: empty sector");
  std::mt19937_64 rng(seed);
  const Vector a = gaussian_vector(s.d1, rng);
  const Vector b = gaussian_vector(s.d2, rng);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  const auto off = static_cast<Eigen::Index>(basis->sector_offset(k));
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    amps.segment(off + i * b.size(), b.size()) = a(i) * b;
  }
  return normalized_state(std::move(basis), std::move(amps));
}

DensityMatrix block_diagonal_project(const DensityMatrix& rho) {
  BlockMap blocks;
  for (const auto& [key, b] : rho.stored_blocks()) {
    if (key.first == key.second) blocks.emplace(key, b);
  }
  return DensityMatrix::from_blocks_unchecked(rho.basis_ptr(), std::move(blocks));
}

Matrix horodecki_qutrit_state(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    throw InvalidInput("horodecki_qutrit_state: parameter a must lie in (0, 1)");
  }
  Matrix r = Matrix::Zero(9, 9);
  for (int i = 0; i < 9; ++i) r(i, i) = a;
  for (int i : {0, 4, 8}) {
    for (int j : {0, 4, 8}) r(i, j) = a;
  }
  r(6, 6) = (1.0 + a) / 2.0;
  r(8, 8) = (1.0 + a) / 2.0;
  r(6, 8) = r(8, 6) = std::sqrt(1.0 - a * a) / 2.0;
  return r / (8.0 * a + 1.0);
}

DensityMatrix embed_qutrit_block(BasisPtr basis, const Matrix& qutrit_block,
                                 const std::vector<double>& weights,
                                 const std::vector<std::optional<Matrix>>& fillers,
                                 const TolerancePolicy& policy) {
  require_basis(basis);
  if (basis->particles() != 4 || basis->modes() != 4 || basis->left_modes() != 2) {
    throw InvalidInput("embed_qutrit_block needs the N=4, M=4, m=2 basis");
  }
  if (qutrit_block.rows() != 9 || qutrit_block.cols() != 9) {
    throw InvalidInput("embed_qutrit_block: qutrit block must be 9x9");
  }
  if (numerics::hermiticity_deviation(qutrit_block) > policy.hermiticity_tol ||
      !numerics::is_psd(qutrit_block, policy) ||
      std::abs(qutrit_block.trace() - Complex(1.0)) > policy.trace_tol) {
    throw InvalidInput("embed_qutrit_block: qutrit block must be PSD with trace 1");
  }
  if (weights.size() != 5) {
    throw InvalidInput("embed_qutrit_block: need one weight per sector k=0..4");
  }
  check_weights(weights, 5, policy);
  if (!fillers.empty() && fillers.size() != 5) {
    throw InvalidInput("embed_qutrit_block: fillers must be empty or have 5 entries");
  }

  BlockMap blocks;
  for (int k = 0; k <= 4; ++k) {
    const auto d = static_cast<Eigen::Index>(basis->sector(k).dim());
    Matrix content;
    if (k == 2) {
      content = qutrit_block;
    } else if (!fillers.empty() && fillers[static_cast<std::size_t>(k)]) {
      content = *fillers[static_cast<std::size_t>(k)];
      if (content.rows() != d || content.cols() != d) {
        throw InvalidInput("embed_qutrit_block: filler has the wrong shape");
      }
      if (numerics::hermiticity_deviation(content) > policy.hermiticity_tol ||
          !numerics::is_psd(content, policy) ||
          std::abs(content.trace() - Complex(1.0)) > policy.trace_tol) {
        throw InvalidInput("embed_qutrit_block: filler must be PSD with trace 1");
      }
    } else {
      content = Matrix::Identity(d, d) / static_cast<double>(d);
    }
    blocks[{k, k}] = weights[static_cast<std::size_t>(k)] * content;
  }
  return DensityMatrix::from_blocks(std::move(basis), std::move(blocks), policy);
}

PureState perturbation_state(BasisPtr basis, std::uint64_t seed) {
  return random_pure_state(std::move(basis), seed);
}

DensityMatrix perturb_offdiagonal(const DensityMatrix& rho, double eps,
                                  std::uint64_t seed) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw InvalidInput("perturb_offdiagonal: eps must lie in [0, 1]");
  }
  if (eps == 0.0) return rho;
  const DensityMatrix tau = pure_to_density(perturbation_state(rho.basis_ptr(), seed));
  BlockMap blocks;
  for (const auto& [key, b] : rho.stored_blocks()) blocks.emplace(key, (1.0 - eps) * b);
  for (const auto& [key, b] : tau.stored_blocks()) {
    auto it = blocks.find(key);
    if (it == blocks.end()) {
      blocks.emplace(key, eps * b);
    } else {
      it->second += eps * b;
    }
  }
  return DensityMatrix::from_blocks_unchecked(rho.basis_ptr(), std::move(blocks));
}

PureState noon_state(int n_particles) {
  if (n_particles < 1) throw InvalidInput("noon_state: need N >= 1");
  auto basis = build_basis(n_particles, {2, 1});
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  const double h = 1.0 / std::sqrt(2.0);
  amps(static_cast<Eigen::Index>(basis->flat_index_of({n_particles, 0}))) = h;
  amps(static_cast<Eigen::Index>(basis->flat_index_of({0, n_particles}))) = h;
  return PureState(std::move(basis), std::move(amps));
}

}  // namespace bosent
