#include "crembed/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace crembed {

namespace {

double tensor_max_abs(const std::vector<Complex>& tensor) {
  double m = 0.0;
  for (Complex z : tensor) m = std::max(m, std::abs(z));
  return m;
}

void require_finite(const std::vector<Complex>& tensor) {
  for (Complex z : tensor)
    if (!is_finite(z)) throw Error("structure constants contain a non-finite entry");
}

}  // namespace

StructureConstants::StructureConstants(int dim, std::vector<Complex> tensor)
    : dim_(dim), tensor_(std::move(tensor)), max_abs_(tensor_max_abs(tensor_)) {}

StructureConstants StructureConstants::from_full(int dim, std::vector<Complex> tensor) {
  if (dim <= 0) throw IndexOutOfRange("algebra dimension must be positive");
  const auto expected = static_cast<std::size_t>(dim) * dim * dim;
  if (tensor.size() != expected) {
    std::ostringstream msg;
    msg << "structure tensor has " << tensor.size() << " entries, expected " << expected;
    throw IndexOutOfRange(msg.str());
  }
  require_finite(tensor);
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      for (int g = 0; g < dim; ++g) {
        const auto ab = (static_cast<std::size_t>(a) * dim + b) * dim + g;
        const auto ba = (static_cast<std::size_t>(b) * dim + a) * dim + g;
        if (tensor[ab] != -tensor[ba]) {
          std::ostringstream msg;
          msg << "c[" << a + 1 << "][" << b + 1 << "]^" << g + 1
              << " != -c[" << b + 1 << "][" << a + 1 << "]^" << g + 1;
          throw AntisymmetryViolation(msg.str(), a, b, g);
        }
      }
    }
  }
  return StructureConstants(dim, std::move(tensor));
}

StructureConstants StructureConstants::from_brackets(int dim,
                                                     std::span<const BracketTerm> terms) {
  if (dim <= 0) throw IndexOutOfRange("algebra dimension must be positive");
  std::vector<Complex> tensor(static_cast<std::size_t>(dim) * dim * dim, Complex(0));
  for (const BracketTerm& term : terms) {
    if (term.i < 0 || term.j >= dim || term.gamma < 0 || term.gamma >= dim)
      throw IndexOutOfRange("bracket term index out of range");
    if (term.i >= term.j)
      throw AntisymmetryViolation("bracket terms must have i < j; the mirrored entry is implied",
                                  term.i, term.j, term.gamma);
    if (!is_finite(term.c)) throw Error("bracket coefficient is not finite");
    const auto ij = (static_cast<std::size_t>(term.i) * dim + term.j) * dim + term.gamma;
    const auto ji = (static_cast<std::size_t>(term.j) * dim + term.i) * dim + term.gamma;
    tensor[ij] += term.c;
    tensor[ji] -= term.c;
  }
  return StructureConstants(dim, std::move(tensor));
}

std::vector<BracketTerm> StructureConstants::nonzero_brackets() const {
  std::vector<BracketTerm> out;
  for (int a = 0; a < dim_; ++a)
    for (int b = a + 1; b < dim_; ++b)
      for (int g = 0; g < dim_; ++g)
        if (Complex v = c(a, b, g); v != Complex(0)) out.push_back({a, b, g, v});
  return out;
}

LieAlgebra::LieAlgebra(StructureConstants constants, std::vector<std::string> labels,
                       double jacobi_tol)
    : constants_(std::move(constants)), labels_(std::move(labels)) {
  const int s = constants_.dim();
  if (!labels_.empty() && static_cast<int>(labels_.size()) != s)
    throw IndexOutOfRange("label count does not match the algebra dimension");

  // Jacobi residual over triples a < b < g (coinciding indices cancel by
  // antisymmetry); tolerance is relative to the quadratic scale of c.
  double worst = 0.0;
  int wa = -1, wb = -1, wg = -1, wn = -1;
  for (int a = 0; a < s; ++a) {
    for (int b = a + 1; b < s; ++b) {
      for (int g = b + 1; g < s; ++g) {
        for (int n = 0; n < s; ++n) {
          Complex sum(0);
          for (int m = 0; m < s; ++m) {
            sum += constants_.c(a, b, m) * constants_.c(m, g, n)
                 + constants_.c(b, g, m) * constants_.c(m, a, n)
                 + constants_.c(g, a, m) * constants_.c(m, b, n);
          }
          if (double r = std::abs(sum); r > worst) {
            worst = r;
            wa = a; wb = b; wg = g; wn = n;
          }
        }
      }
    }
  }
  jacobi_residual_ = worst;

  const double scale = std::max(1.0, constants_.max_abs());
  if (worst > jacobi_tol * scale * scale) {
    std::ostringstream msg;
    msg << "Jacobi identity fails on (xi_" << wa + 1 << ", xi_" << wb + 1 << ", xi_"
        << wg + 1 << ") component " << wn + 1 << ": residual " << worst;
    throw JacobiViolation(msg.str(), worst, wa, wb, wg, wn);
  }
}

Vector LieAlgebra::bracket(const Vector& u, const Vector& v) const {
  const int s = dim();
  if (u.size() != s || v.size() != s)
    throw IndexOutOfRange("bracket operands must match the algebra dimension");
  Vector w = Vector::Zero(s);
  for (int a = 0; a < s; ++a) {
    if (u[a] == Complex(0)) continue;
    for (int b = 0; b < s; ++b) {
      if (v[b] == Complex(0)) continue;
      const Complex uv = u[a] * v[b];
      for (int g = 0; g < s; ++g) w[g] += uv * constants_.c(a, b, g);
    }
  }
  return w;
}

LieAlgebra build_algebra(StructureConstants constants, std::vector<std::string> labels,
                         double jacobi_tol) {
  return LieAlgebra(std::move(constants), std::move(labels), jacobi_tol);
}

Matrix adjoint_matrix(const LieAlgebra& algebra, int alpha) {
  const int s = algebra.dim();
  if (alpha < 0 || alpha >= s) throw IndexOutOfRange("adjoint index out of range");
  Matrix m = Matrix::Zero(s, s);
  for (int b = 0; b < s; ++b)
    for (int g = 0; g < s; ++g) m(g, b) = algebra.c(alpha, b, g);
  return m;
}

std::string AlgebraClass::to_string() const {
  switch (kind) {
    case Kind::abelian: return "abelian";
    case Kind::nilpotent: return "nilpotent(step " + std::to_string(step) + ")";
    case Kind::solvable: return "solvable(derived length " + std::to_string(derived_length) + ")";
    case Kind::general: return "general";
  }
  return "general";
}

namespace {

// Orthonormal basis of span{ [u, v] : u in A, v in B } for subspaces given
// by orthonormal column bases.
Matrix bracket_span(const LieAlgebra& algebra, const Matrix& a_basis, const Matrix& b_basis,
                    double rank_tol) {
  const int s = algebra.dim();
  Matrix products(s, a_basis.cols() * b_basis.cols());
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < a_basis.cols(); ++i)
    for (Eigen::Index j = 0; j < b_basis.cols(); ++j)
      products.col(col++) = algebra.bracket(a_basis.col(i), b_basis.col(j));
  return column_space_basis(products, rank_tol);
}

}  // namespace

AlgebraClass classify(const LieAlgebra& algebra, double rank_tol) {
  const int s = algebra.dim();
  const Matrix full = Matrix::Identity(s, s);

  if (algebra.constants().is_zero()) return {AlgebraClass::Kind::abelian, 1, 1};

  // Lower central series: g^1 = g, g^{i+1} = [g, g^i].
  {
    Matrix term = full;
    int step = 1;
    while (term.cols() > 0) {
      Matrix next = bracket_span(algebra, full, term, rank_tol);
      if (next.cols() == 0) return {AlgebraClass::Kind::nilpotent, step, 0};
      if (next.cols() >= term.cols()) break;  // stabilized nonzero
      term = std::move(next);
      ++step;
    }
  }

  // Derived series: g^(0) = g, g^(i+1) = [g^(i), g^(i)].
  {
    Matrix term = full;
    int length = 0;
    while (term.cols() > 0) {
      Matrix next = bracket_span(algebra, term, term, rank_tol);
      ++length;
      if (next.cols() == 0) return {AlgebraClass::Kind::solvable, 0, length};
      if (next.cols() >= term.cols()) break;
      term = std::move(next);
    }
  }

  return {AlgebraClass::Kind::general, 0, 0};
}

LieAlgebra permute_basis(const LieAlgebra& algebra, const std::vector<int>& perm) {
  const int s = algebra.dim();
  if (static_cast<int>(perm.size()) != s)
    throw IndexOutOfRange("permutation length does not match the algebra dimension");
  std::vector<bool> seen(s, false);
  for (int p : perm) {
    if (p < 0 || p >= s || seen[p]) throw IndexOutOfRange("not a permutation of the basis");
    seen[p] = true;
  }

  // xi'_a = xi_{perm[a]}  =>  c'_{ab}^g = c_{perm[a] perm[b]}^{perm[g]}.
  std::vector<Complex> tensor(static_cast<std::size_t>(s) * s * s);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      for (int g = 0; g < s; ++g)
        tensor[(static_cast<std::size_t>(a) * s + b) * s + g] =
            algebra.c(perm[a], perm[b], perm[g]);

  std::vector<std::string> labels;
  if (!algebra.labels().empty()) {
    labels.resize(s);
    for (int a = 0; a < s; ++a) labels[a] = algebra.labels()[perm[a]];
  }
  return LieAlgebra(StructureConstants::from_full(s, std::move(tensor)), std::move(labels));
}

}  // namespace crembed
