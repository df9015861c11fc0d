#include "bosent/partial_transpose.hpp"

#include <sstream>

#include "bosent/error.hpp"

namespace bosent {

RealignedBlock realign_block(const DensityMatrix& rho, int k, int l) {
  const auto& basis = rho.basis();
  const int n = basis.particles();
  if (k < 0 || k > n || l < 0 || l > n) {
    std::ostringstream msg;
    msg << "realign_block: sector pair (" << k << "," << l << ") outside [0, "
        << n << "]";
    throw InvalidInput(msg.str());
  }
  const auto& sk = basis.sector(k);
  const auto& sl = basis.sector(l);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(sl.d1 * sk.d2),
                            static_cast<Eigen::Index>(sk.d1 * sl.d2));
  if (!rho.has_block(k, l)) return {k, l, out};
  const Matrix& b = rho.stored_blocks().at({k, l});
  for (std::size_t s = 0; s < sk.d1; ++s) {
    for (std::size_t sp = 0; sp < sk.d2; ++sp) {
      const auto row = static_cast<Eigen::Index>(s * sk.d2 + sp);
      for (std::size_t t = 0; t < sl.d1; ++t) {
        for (std::size_t tp = 0; tp < sl.d2; ++tp) {
          out(static_cast<Eigen::Index>(t * sk.d2 + sp),
              static_cast<Eigen::Index>(s * sl.d2 + tp)) =
              b(row, static_cast<Eigen::Index>(t * sl.d2 + tp));
        }
      }
    }
  }
  return {k, l, out};
}

namespace {

void require_square_product(const Matrix& op, std::size_t d1, std::size_t d2,
                            const char* what) {
  const auto d = static_cast<Eigen::Index>(d1 * d2);
  if (op.rows() != d || op.cols() != d) {
    std::ostringstream msg;
    msg << what << ": matrix is " << op.rows() << "x" << op.cols()
        << ", expected " << d << "x" << d;
    throw InvalidInput(msg.str());
  }
}

}  // namespace

Matrix partial_transpose_first(const Matrix& op, std::size_t d1, std::size_t d2) {
  require_square_product(op, d1, d2, "partial_transpose_first");
  Matrix out(op.rows(), op.cols());
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = 0; b < d2; ++b)
          out(static_cast<Eigen::Index>(a * d2 + j), static_cast<Eigen::Index>(i * d2 + b)) =
              op(static_cast<Eigen::Index>(i * d2 + j), static_cast<Eigen::Index>(a * d2 + b));
  return out;
}

Matrix partial_transpose_second(const Matrix& op, std::size_t d1, std::size_t d2) {
  require_square_product(op, d1, d2, "partial_transpose_second");
  Matrix out(op.rows(), op.cols());
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = 0; b < d2; ++b)
          out(static_cast<Eigen::Index>(i * d2 + b), static_cast<Eigen::Index>(a * d2 + j)) =
              op(static_cast<Eigen::Index>(i * d2 + j), static_cast<Eigen::Index>(a * d2 + b));
  return out;
}

Matrix realignment(const Matrix& op, std::size_t d1, std::size_t d2) {
  require_square_product(op, d1, d2, "realignment");
  Matrix out(static_cast<Eigen::Index>(d1 * d1), static_cast<Eigen::Index>(d2 * d2));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = 0; b < d2; ++b)
          out(static_cast<Eigen::Index>(i * d1 + a), static_cast<Eigen::Index>(j * d2 + b)) =
              op(static_cast<Eigen::Index>(i * d2 + j), static_cast<Eigen::Index>(a * d2 + b));
  return out;
}

// ------------------------------------------------------------ ExtendedSpace

ExtendedSpace::ExtendedSpace(const FockBasis& basis, std::size_t cap)
    : n_(basis.particles()) {
  const std::int64_t n = n_;
  const std::uint64_t d1 = binomial(n + basis.left_modes(), n);
  const std::uint64_t d2 = binomial(n + basis.right_modes(), n);
  if (d1 != 0 && d2 > cap / d1) {
    std::ostringstream msg;
    msg << "extended space D1*D2 = " << d1 << "*" << d2 << " exceeds the cap of "
        << cap << " rows";
    throw CapExceeded(msg.str());
  }
  d1_ = static_cast<std::size_t>(d1);
  d2_ = static_cast<std::size_t>(d2);
  std::size_t lo = 0;
  std::size_t ro = 0;
  for (int c = 0; c <= n_; ++c) {
    left_offsets_.push_back(lo);
    right_offsets_.push_back(ro);
    lo += binomial(static_cast<std::int64_t>(c) + basis.left_modes() - 1, c);
    ro += binomial(static_cast<std::int64_t>(c) + basis.right_modes() - 1, c);
  }
  if (lo != d1_ || ro != d2_) {
    throw std::logic_error("extended space offsets disagree with dimensions");
  }
}

std::size_t ExtendedSpace::left_index(int count, std::size_t sigma) const {
  return left_offsets_.at(static_cast<std::size_t>(count)) + sigma;
}

std::size_t ExtendedSpace::right_index(int count, std::size_t sigma) const {
  return right_offsets_.at(static_cast<std::size_t>(count)) + sigma;
}

std::size_t ExtendedSpace::embed_index(const FockBasis& basis,
                                       std::size_t flat) const {
  const auto idx = basis.sector_index(flat);
  return index(left_index(idx.k, idx.sigma),
               right_index(basis.particles() - idx.k, idx.sigma_prime));
}

ExtendedOperator embed_extended(const DensityMatrix& rho, std::size_t cap) {
  const auto& basis = rho.basis();
  ExtendedSpace space(basis, cap);
  const auto d = static_cast<Eigen::Index>(space.dimension());
  Matrix out = Matrix::Zero(d, d);
  const Matrix dense = rho.dense();
  for (std::size_t r = 0; r < basis.dimension(); ++r) {
    for (std::size_t c = 0; c < basis.dimension(); ++c) {
      out(static_cast<Eigen::Index>(space.embed_index(basis, r)),
          static_cast<Eigen::Index>(space.embed_index(basis, c))) =
          dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return {std::move(space), std::move(out)};
}

ExtendedOperator extended_partial_transpose(const DensityMatrix& rho,
                                            std::size_t cap) {
  // |k,s; N-k,s'><l,t; N-l,t'|  ->  |l,t; N-k,s'><k,s; N-l,t'|
  const auto& basis = rho.basis();
  const int n = basis.particles();
  ExtendedSpace space(basis, cap);
  const auto d = static_cast<Eigen::Index>(space.dimension());
  Matrix out = Matrix::Zero(d, d);
  const Matrix dense = rho.dense();
  for (std::size_t r = 0; r < basis.dimension(); ++r) {
    const auto row = basis.sector_index(r);
    for (std::size_t c = 0; c < basis.dimension(); ++c) {
      const auto col = basis.sector_index(c);
      const std::size_t i = space.index(space.left_index(col.k, col.sigma),
                                        space.right_index(n - row.k, row.sigma_prime));
      const std::size_t j = space.index(space.left_index(row.k, row.sigma),
                                        space.right_index(n - col.k, col.sigma_prime));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return {std::move(space), std::move(out)};
}

}  // namespace bosent
