#include "bosent/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bosent/error.hpp"
#include "bosent/partial_transpose.hpp"

namespace bosent {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::SeparableCertified: return "SeparableCertified";
    case Verdict::EntangledNPT: return "EntangledNPT";
    case Verdict::PPTUndecided: return "PPTUndecided";
  }
  return "unknown";
}

namespace {

Matrix reshape(const Vector& v, std::size_t d1, std::size_t d2) {
  Matrix m(static_cast<Eigen::Index>(d1), static_cast<Eigen::Index>(d2));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          v(static_cast<Eigen::Index>(i * d2 + j));
  return m;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Tolerance for calling a numerically computed eigenvector a product vector.
/// The certificate built from it is then checked at reconstruction_tol.
double product_tolerance(const TolerancePolicy& policy) {
  return std::sqrt(policy.zero_threshold);
}

using ProductVectors = std::vector<std::pair<Vector, Vector>>;

std::pair<Vector, Vector> normalized_factors(const std::pair<Vector, Vector>& f) {
  const double na = f.first.norm();
  const double nb = f.second.norm();
  return {f.first / na, f.second / nb};
}

/// Orthonormal product basis of span{u, v} (u, v orthonormal), if one exists.
std::optional<ProductVectors> product_basis_2d(const Vector& u, const Vector& v,
                                               std::size_t d1, std::size_t d2,
                                               double tol) {
  const Matrix mu = reshape(u, d1, d2);
  const Matrix mv = reshape(v, d1, d2);
  // Every 2x2 minor of alpha*U + beta*V is a quadratic form in (alpha, beta).
  struct Form { Complex a, b, c; };
  std::vector<Form> forms;
  for (Eigen::Index i = 0; i < mu.rows(); ++i)
    for (Eigen::Index j = i + 1; j < mu.rows(); ++j)
      for (Eigen::Index p = 0; p < mu.cols(); ++p)
        for (Eigen::Index q = p + 1; q < mu.cols(); ++q) {
          const Complex a = mu(i, p) * mu(j, q) - mu(i, q) * mu(j, p);
          const Complex c = mv(i, p) * mv(j, q) - mv(i, q) * mv(j, p);
          const Complex b = mu(i, p) * mv(j, q) + mv(i, p) * mu(j, q) -
                            mu(i, q) * mv(j, p) - mv(i, q) * mu(j, p);
          forms.push_back({a, b, c});
        }

  std::vector<std::pair<Complex, Complex>> coeffs;
  const auto biggest = std::max_element(forms.begin(), forms.end(), [](const Form& x, const Form& y) {
    return std::max({std::abs(x.a), std::abs(x.b), std::abs(x.c)}) <
           std::max({std::abs(y.a), std::abs(y.b), std::abs(y.c)});
  });
  if (biggest == forms.end() ||
      std::max({std::abs(biggest->a), std::abs(biggest->b), std::abs(biggest->c)}) <= tol) {
    // Every vector of the span is a product vector.
    coeffs = {{1.0, 0.0}, {0.0, 1.0}};
  } else {
    const Form f = *biggest;
    const double scale = std::max({std::abs(f.a), std::abs(f.b), std::abs(f.c)});
    if (std::abs(f.a) <= tol * scale) {
      coeffs.push_back({1.0, 0.0});
      coeffs.push_back({-f.c, f.b});
    } else {
      const Complex disc = std::sqrt(f.b * f.b - 4.0 * f.a * f.c);
      coeffs.push_back({(-f.b + disc) / (2.0 * f.a), 1.0});
      coeffs.push_back({(-f.b - disc) / (2.0 * f.a), 1.0});
    }
  }
  // Orthogonal complements inside the span are candidates too.
  const std::size_t roots = coeffs.size();
  for (std::size_t i = 0; i < roots; ++i) {
    coeffs.push_back({-std::conj(coeffs[i].second), std::conj(coeffs[i].first)});
  }

  std::vector<Vector> vecs;
  ProductVectors factors;
  for (const auto& [alpha, beta] : coeffs) {
    Vector x = alpha * u + beta * v;
    const double n = x.norm();
    if (!(n > 0.0)) continue;
    x /= n;
    auto f = product_factors(reshape(x, d1, d2), tol);
    if (!f) continue;
    vecs.push_back(x);
    factors.push_back(normalized_factors(*f));
  }
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i + 1; j < vecs.size(); ++j)
      if (std::abs(vecs[i].dot(vecs[j])) <= tol) return ProductVectors{factors[i], factors[j]};
  return std::nullopt;
}

/// Projector onto Fock vectors only: the Fock vectors themselves.
std::optional<ProductVectors> fock_spanned_basis(const Matrix& proj, std::size_t d1,
                                                 std::size_t d2, double tol) {
  const Matrix off = proj - Matrix(proj.diagonal().asDiagonal());
  if (off.size() && off.cwiseAbs().maxCoeff() > tol) return std::nullopt;
  ProductVectors out;
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d2; ++j) {
      const double p = proj(static_cast<Eigen::Index>(i * d2 + j),
                            static_cast<Eigen::Index>(i * d2 + j)).real();
      if (std::abs(p - 1.0) <= tol) {
        out.push_back({Vector::Unit(static_cast<Eigen::Index>(d1), static_cast<Eigen::Index>(i)),
                       Vector::Unit(static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(j))});
      } else if (std::abs(p) > tol) {
        return std::nullopt;
      }
    }
  }
  return out;
}

/// Projector P = P_A (x) P_B: products of the factors' eigenvectors.
std::optional<ProductVectors> product_projector_basis(const Matrix& proj, std::size_t d1,
                                                      std::size_t d2, double tol) {
  const Matrix r = realignment(proj, d1, d2);
  Eigen::BDCSVD<Matrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return std::nullopt;
  if (s.size() > 1 && s(1) > tol * s(0)) return std::nullopt;
  Matrix a(static_cast<Eigen::Index>(d1), static_cast<Eigen::Index>(d1));
  Matrix b(static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(d2));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t p = 0; p < d1; ++p)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) =
          svd.matrixU()(static_cast<Eigen::Index>(i * d1 + p), 0);
  for (std::size_t j = 0; j < d2; ++j)
    for (std::size_t q = 0; q < d2; ++q)
      b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(q)) =
          s(0) * std::conj(svd.matrixV()(static_cast<Eigen::Index>(j * d2 + q), 0));
  const Complex tr = a.trace();
  if (std::abs(tr) <= tol) return std::nullopt;
  const Complex phase = tr / std::abs(tr);
  a /= phase;
  b *= phase;
  a = (0.5 * (a + a.adjoint())).eval();
  b = (0.5 * (b + b.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> ea(a), eb(b);
  const double amax = ea.eigenvalues().cwiseAbs().maxCoeff();
  const double bmax = eb.eigenvalues().cwiseAbs().maxCoeff();
  ProductVectors out;
  Matrix rebuilt = Matrix::Zero(proj.rows(), proj.cols());
  for (Eigen::Index i = 0; i < ea.eigenvalues().size(); ++i) {
    if (std::abs(ea.eigenvalues()(i)) < 0.5 * amax) continue;
    for (Eigen::Index j = 0; j < eb.eigenvalues().size(); ++j) {
      if (std::abs(eb.eigenvalues()(j)) < 0.5 * bmax) continue;
      const Vector x = kron(ea.eigenvectors().col(i), eb.eigenvectors().col(j));
      rebuilt += x * x.adjoint();
      out.push_back({ea.eigenvectors().col(i), eb.eigenvectors().col(j)});
    }
  }
  if ((rebuilt - proj).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return out;
}

/// Product eigenbasis of one minor, or nullopt.
std::optional<std::vector<ProductTerm>> minor_product_eigenbasis(
    const Matrix& minor, int k, std::size_t d1, std::size_t d2,
    const TolerancePolicy& policy) {
  std::vector<ProductTerm> terms;
  if (minor.size() == 0) return terms;
  const double tol = product_tolerance(policy);
  const auto eig = numerics::eigh(minor, policy);
  const Eigen::Index n = eig.values.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && eig.values(stop) - eig.values(stop - 1) <=
                           policy.degeneracy_tol * std::max(1.0, std::abs(eig.values(stop)))) {
      ++stop;
    }
    const Eigen::Index count = stop - start;
    const double lambda = eig.values.segment(start, count).mean();
    if (std::abs(lambda) > policy.zero_threshold) {
      const Matrix vecs = eig.vectors.middleCols(start, count);
      std::optional<ProductVectors> basis;
      if (count == 1) {
        if (auto f = product_factors(reshape(vecs.col(0), d1, d2), tol)) {
          basis = ProductVectors{normalized_factors(*f)};
        }
      } else {
        const Matrix proj = vecs * vecs.adjoint();
        basis = fock_spanned_basis(proj, d1, d2, tol);
        if (!basis) basis = product_projector_basis(proj, d1, d2, tol);
        if (!basis && count == 2) {
          basis = product_basis_2d(vecs.col(0), vecs.col(1), d1, d2, tol);
        }
      }
      if (!basis) return std::nullopt;
      // Weight each product vector by its Rayleigh quotient; inside a
      // degenerate cluster this is the cluster eigenvalue.
      for (const auto& [left, right] : *basis) {
        const Vector x = kron(left, right);
        terms.push_back({x.dot(minor * x).real(), k, left, right});
      }
    }
    start = stop;
  }
  return terms;
}

double certificate_error(const DensityMatrix& rho, const SeparableCertificate& cert) {
  const DensityMatrix rebuilt = cert.reconstruct(rho.basis_ptr());
  double err2 = 0.0;
  for (const auto& [key, b] : rho.stored_blocks()) {
    err2 += (b - rebuilt.block(key.first, key.second)).squaredNorm();
  }
  for (const auto& [key, b] : rebuilt.stored_blocks()) {
    if (!rho.has_block(key.first, key.second)) err2 += b.squaredNorm();
  }
  return std::sqrt(err2);
}

SeparableCertificate make_certificate(const DensityMatrix& rho,
                                      std::vector<ProductTerm> terms) {
  double sum = 0.0;
  for (const auto& t : terms) sum += std::max(t.weight, 0.0);
  SeparableCertificate cert;
  for (auto& t : terms) {
    if (t.weight <= 0.0) continue;
    t.weight /= sum;
    cert.terms.push_back(std::move(t));
  }
  cert.reconstruction_error = certificate_error(rho, cert);
  return cert;
}

}  // namespace

std::optional<std::pair<Vector, Vector>> product_factors(const Matrix& coeffs,
                                                         double tol) {
  if (coeffs.size() == 0) return std::nullopt;
  Eigen::BDCSVD<Matrix> svd(coeffs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector s = svd.singularValues();
  if (!(s(0) > 0.0)) return std::nullopt;
  if (s.size() > 1 && s(1) > tol * s(0)) return std::nullopt;
  return std::make_pair(Vector(svd.matrixU().col(0) * s(0)),
                        Vector(svd.matrixV().col(0).conjugate()));
}

DensityMatrix SeparableCertificate::reconstruct(const BasisPtr& basis) const {
  BlockMap blocks;
  for (const auto& t : terms) {
    const Vector x = kron(t.left, t.right);
    auto it = blocks.find({t.k, t.k});
    if (it == blocks.end()) {
      blocks.emplace(BlockKey{t.k, t.k}, t.weight * x * x.adjoint());
    } else {
      it->second += t.weight * x * x.adjoint();
    }
  }
  return DensityMatrix::from_blocks_unchecked(basis, std::move(blocks));
}

SchmidtDecomposition schmidt_decompose(const PureState& psi,
                                       const TolerancePolicy& policy) {
  const auto& basis = psi.basis();
  SchmidtDecomposition out;
  std::vector<double> values;
  for (const auto& s : basis.sectors()) {
    Matrix c = psi.coefficient_matrix(s.k);
    if (c.size() > 0) {
      const RealVector sv = numerics::singular_values(c);
      values.insert(values.end(), sv.data(), sv.data() + sv.size());
      if (sv(0) > policy.zero_threshold) out.support.push_back(s.k);
    }
    out.coefficient_matrices.push_back(std::move(c));
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  out.singular_values = Eigen::Map<RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
  out.schmidt_rank = static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(),
                    [&](double v) { return v > policy.zero_threshold; }));
  return out;
}

std::vector<MinorDiagnostic> minor_diagnostics(const DensityMatrix& rho,
                                               const TolerancePolicy& policy) {
  std::vector<MinorDiagnostic> out;
  const auto& basis = rho.basis();
  for (const auto& s : basis.sectors()) {
    if (s.dim() == 0 || !rho.has_block(s.k, s.k)) continue;
    const Matrix minor = rho.minor(s.k);
    MinorDiagnostic d;
    d.k = s.k;
    d.trace = minor.trace().real();
    if (d.trace <= policy.zero_threshold) continue;
    const Matrix pt = partial_transpose_first(minor, s.d1, s.d2);
    TolerancePolicy loose = policy;
    loose.hermiticity_tol = std::max(policy.hermiticity_tol, 1e-9);
    d.pt_min_eigenvalue = numerics::min_eigenvalue(pt, loose);
    d.negativity = 0.5 * (numerics::trace_norm(pt) - d.trace);
    d.realignment_norm = numerics::trace_norm(realignment(minor / d.trace, s.d1, s.d2));
    d.realignment_violated = d.realignment_norm > 1.0 + policy.zero_threshold;
    out.push_back(d);
  }
  return out;
}

ClassificationVerdict decide_one_vs_rest(const DensityMatrix& rho,
                                         const TolerancePolicy& policy) {
  const auto& basis = rho.basis();
  if (basis.left_modes() != 1 && basis.right_modes() != 1) {
    throw InvalidInput("one-vs-rest decision needs m = 1 or M - m = 1");
  }
  ClassificationVerdict out;
  out.rule = "one-vs-rest";
  out.negativity = negativity_general(rho, policy).total;
  if (out.negativity > policy.zero_threshold) {
    out.verdict = Verdict::EntangledNPT;
    out.diagnostics = minor_diagnostics(rho, policy);
    return out;
  }
  // Diagonalize each minor inside the multi-mode party; the single-mode party
  // carries a fixed Fock state per sector.
  std::vector<ProductTerm> terms;
  for (const auto& s : basis.sectors()) {
    if (s.dim() == 0 || !rho.has_block(s.k, s.k)) continue;
    const auto eig = numerics::eigh(rho.minor(s.k), policy);
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
      if (eig.values(i) <= 0.0) continue;
      ProductTerm t;
      t.weight = eig.values(i);
      t.k = s.k;
      if (s.d1 == 1) {
        t.left = Vector::Ones(1);
        t.right = eig.vectors.col(i);
      } else {
        t.left = eig.vectors.col(i);
        t.right = Vector::Ones(1);
      }
      terms.push_back(std::move(t));
    }
  }
  auto cert = make_certificate(rho, std::move(terms));
  if (cert.reconstruction_error > policy.reconstruction_tol) {
    out.verdict = Verdict::PPTUndecided;
    std::ostringstream note;
    note << "certificate reconstruction error " << cert.reconstruction_error
         << " exceeds tolerance";
    out.note = note.str();
    out.diagnostics = minor_diagnostics(rho, policy);
    return out;
  }
  out.verdict = Verdict::SeparableCertified;
  out.certificate = std::move(cert);
  return out;
}

PptResult is_ppt(const DensityMatrix& rho, const TolerancePolicy& policy) {
  PptResult out;
  const auto& basis = rho.basis();
  for (const auto& [key, b] : rho.stored_blocks()) {
    if (key.first >= key.second) continue;
    const double f = b.norm();
    if (f >= policy.zero_threshold) out.offending_blocks.push_back({key.first, key.second, f});
  }
  out.block_diagonal = out.offending_blocks.empty();
  TolerancePolicy loose = policy;
  loose.hermiticity_tol = std::max(policy.hermiticity_tol, 1e-9);
  for (const auto& s : basis.sectors()) {
    if (s.dim() == 0) continue;
    const Matrix pt = realign_block(rho, s.k, s.k).matrix;
    const double mn = numerics::min_eigenvalue(pt, loose);
    out.minor_min_eigenvalues.emplace_back(s.k, mn);
    if (mn < -policy.psd_floor) out.npt_minors.push_back(s.k);
  }
  out.ppt = out.block_diagonal && out.npt_minors.empty();
  return out;
}

DiagonalMinorResult diagonal_minor_class_check(const DensityMatrix& rho,
                                               const TolerancePolicy& policy) {
  DiagonalMinorResult out;
  const auto& basis = rho.basis();
  for (const auto& s : basis.sectors()) {
    if (s.dim() == 0 || !rho.has_block(s.k, s.k)) continue;
    auto terms = minor_product_eigenbasis(rho.minor(s.k), s.k, s.d1, s.d2, policy);
    if (!terms) {
      out.failing_sector = s.k;
      out.adapted_basis.clear();
      return out;
    }
    out.adapted_basis.insert(out.adapted_basis.end(), terms->begin(), terms->end());
  }
  out.in_class = true;
  return out;
}

ClassificationVerdict classify(const DensityMatrix& rho, const TolerancePolicy& policy) {
  const auto& basis = rho.basis();
  const auto neg = negativity_general(rho, policy);
  if (neg.total > policy.zero_threshold) {
    ClassificationVerdict out;
    out.verdict = Verdict::EntangledNPT;
    out.negativity = neg.total;
    out.rule = "negativity";
    out.diagnostics = minor_diagnostics(rho, policy);
    return out;
  }
  if (basis.left_modes() == 1 || basis.right_modes() == 1) {
    return decide_one_vs_rest(rho, policy);
  }
  ClassificationVerdict out;
  out.negativity = neg.total;
  const auto dm = diagonal_minor_class_check(rho, policy);
  if (dm.in_class) {
    auto cert = make_certificate(rho, dm.adapted_basis);
    if (cert.reconstruction_error <= policy.reconstruction_tol) {
      out.verdict = Verdict::SeparableCertified;
      out.rule = "diagonal-minor-class";
      out.certificate = std::move(cert);
      return out;
    }
    std::ostringstream note;
    note << "product eigenbasis found but certificate reconstruction error "
         << cert.reconstruction_error << " exceeds tolerance";
    out.note = note.str();
  } else {
    std::ostringstream note;
    note << "minor k=" << dm.failing_sector << " has no product eigenbasis";
    out.note = note.str();
  }
  out.verdict = Verdict::PPTUndecided;
  out.rule = "undecided";
  out.diagnostics = minor_diagnostics(rho, policy);
  return out;
}

}  // namespace bosent
