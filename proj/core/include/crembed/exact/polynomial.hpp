#pragma once

#include <map>
#include <string>
#include <vector>

#include "crembed/exact/rational.hpp"

namespace crembed::exact {

/// Exponent vector of a monomial in t^1..t^s; slot m holds the exponent
/// of t^{m+1}.
using Exponents = std::vector<unsigned>;

/// Graded lexicographic order with t^1 < t^2 < ... — total degree first,
/// then lexicographic from the highest variable down.  Fixing the order
/// makes every serialized polynomial bit-exact.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Multivariate polynomial over the Gaussian rationals.  Zero-coefficient
/// terms are never stored, so is_zero() is a structural test.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, GaussianRational c);
  static Polynomial variable(int nvars, int var);  // the monomial t^{var+1}

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const GaussianRational& c) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  bool operator==(const Polynomial& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  /// Exact partial derivative with respect to t^{var+1}.
  Polynomial derivative(int var) const;

  /// Substitute t^m -> c * t^m for every variable simultaneously: each
  /// term of total degree d picks up the factor c^d.  With c = -i this is
  /// the analytic continuation.
  Polynomial scale_variables(const GaussianRational& c) const;

  GaussianRational evaluate(const std::vector<GaussianRational>& t) const;
  Complex evaluate(const Vector& t) const;

  /// Terms in canonical (grlex-ascending) order.
  const std::map<Exponents, GaussianRational, GrlexLess>& terms() const { return terms_; }

  /// Human-readable form like "1 - t1^2/2 + i t1 t2"; "0" when zero.
  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const GaussianRational& c);

  int nvars_ = 0;
  std::map<Exponents, GaussianRational, GrlexLess> terms_;

  friend class PolyMatrix;
};

/// Dense matrix of polynomials sharing one variable list.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols, int nvars);

  static PolyMatrix identity(int n, int nvars);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return nvars_; }

  Polynomial& operator()(int r, int c) { return entries_[r * cols_ + c]; }
  const Polynomial& operator()(int r, int c) const { return entries_[r * cols_ + c]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix scaled(const Polynomial& p) const;        // entrywise p * entry
  PolyMatrix scaled(const GaussianRational& c) const;  // entrywise c * entry
  PolyMatrix scale_variables(const GaussianRational& c) const;
  PolyMatrix derivative(int var) const;  // entrywise exact partial

  bool is_zero() const;
  int max_total_degree() const;  // -1 when all entries are zero

  /// Floating-point evaluation at a complex coordinate vector.
  Matrix evaluate(const Vector& t) const;
  /// Exact evaluation at a rational point.
  std::vector<GaussianRational> evaluate(const std::vector<GaussianRational>& t) const;

  bool operator==(const PolyMatrix& o) const;

 private:
  int rows_ = 0, cols_ = 0, nvars_ = 0;
  std::vector<Polynomial> entries_;
};

}  // namespace crembed::exact
