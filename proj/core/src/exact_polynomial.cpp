#include "crembed/exact/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "crembed/errors.hpp"

namespace crembed::exact {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error("cannot convert non-finite value to a rational");
  return Rational(x);  // dyadic expansion, exact
}

std::string rational_to_string(const Rational& r) {
  return r.str();  // "p" or "p/q", canonical sign on the numerator
}

Rational rational_from_string(const std::string& text) {
  try {
    if (text.empty()) throw std::runtime_error("empty");
    Rational r(text);
    return r;
  } catch (const std::exception&) {
    throw ParseError("malformed rational literal: \"" + text + "\"");
  }
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const Rational norm = b.re * b.re + b.im * b.im;
  if (norm == 0) throw Error("division by zero Gaussian rational");
  return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  const auto degree = [](const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
  };
  const unsigned da = degree(a), db = degree(b);
  if (da != db) return da < db;
  // Equal degree: lexicographic with the highest variable most significant
  // (the variable order is t^1 < t^2 < ...).
  const std::size_t width = std::max(a.size(), b.size());
  for (std::size_t i = width; i-- > 0;) {
    const unsigned ea = i < a.size() ? a[i] : 0;
    const unsigned eb = i < b.size() ? b[i] : 0;
    if (ea != eb) return ea < eb;
  }
  return false;
}

Polynomial Polynomial::constant(int nvars, GaussianRational c) {
  Polynomial p(nvars);
  if (!c.is_zero()) p.terms_.emplace(Exponents(nvars, 0), std::move(c));
  return p;
}

Polynomial Polynomial::variable(int nvars, int var) {
  if (var < 0 || var >= nvars) throw IndexOutOfRange("polynomial variable out of range");
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[var] = 1;
  p.terms_.emplace(std::move(e), GaussianRational(1));
  return p;
}

int Polynomial::total_degree() const {
  // Grlex order puts the highest total degree last.
  if (terms_.empty()) return -1;
  const Exponents& top = terms_.rbegin()->first;
  return static_cast<int>(std::accumulate(top.begin(), top.end(), 0u));
}

void Polynomial::add_term(const Exponents& e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw IndexOutOfRange("polynomial variable counts differ");
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw IndexOutOfRange("polynomial variable counts differ");
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw IndexOutOfRange("polynomial variable counts differ");
  Polynomial out(nvars_);
  Exponents e(nvars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  }
  return out;
}

Polynomial Polynomial::operator*(const GaussianRational& c) const {
  Polynomial out(nvars_);
  if (c.is_zero()) return out;
  for (const auto& [e, coeff] : terms_) out.terms_.emplace(e, coeff * c);
  return out;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw IndexOutOfRange("derivative variable out of range");
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents lowered = e;
    --lowered[var];
    out.terms_.emplace(std::move(lowered), c * GaussianRational(static_cast<int>(e[var])));
  }
  return out;
}

Polynomial Polynomial::scale_variables(const GaussianRational& c) const {
  Polynomial out(nvars_);
  for (const auto& [e, coeff] : terms_) {
    const unsigned degree = std::accumulate(e.begin(), e.end(), 0u);
    GaussianRational factor(1);
    for (unsigned j = 0; j < degree; ++j) factor *= c;
    out.add_term(e, coeff * factor);
  }
  return out;
}

GaussianRational Polynomial::evaluate(const std::vector<GaussianRational>& t) const {
  if (static_cast<int>(t.size()) != nvars_)
    throw IndexOutOfRange("evaluation point dimension does not match the variable count");
  GaussianRational sum(0);
  for (const auto& [e, c] : terms_) {
    GaussianRational value = c;
    for (int i = 0; i < nvars_; ++i)
      for (unsigned j = 0; j < e[i]; ++j) value *= t[i];
    sum += value;
  }
  return sum;
}

Complex Polynomial::evaluate(const Vector& t) const {
  if (static_cast<int>(t.size()) != nvars_)
    throw IndexOutOfRange("evaluation point dimension does not match the variable count");
  Complex sum(0);
  for (const auto& [e, c] : terms_) {
    Complex value = c.to_complex();
    for (int i = 0; i < nvars_; ++i)
      for (unsigned j = 0; j < e[i]; ++j) value *= t[i];
    sum += value;
  }
  return sum;
}

namespace {

std::string coefficient_to_string(const GaussianRational& c) {
  if (c.im == 0) return rational_to_string(c.re);
  std::string im_part;
  if (c.im == 1) {
    im_part = "i";
  } else if (c.im == -1) {
    im_part = "-i";
  } else {
    im_part = rational_to_string(c.im) + "i";
  }
  if (c.re == 0) return im_part;
  std::string joined = rational_to_string(c.re);
  joined += (c.im > 0 ? "+" : "");
  return "(" + joined + im_part + ")";
}

std::string monomial_to_string(const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += " ";
    out += "t" + std::to_string(i + 1);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    std::string coeff = coefficient_to_string(c);
    const std::string mono = monomial_to_string(e);
    if (!mono.empty()) {
      if (coeff == "1") {
        coeff = mono;
      } else if (coeff == "-1") {
        coeff = "-" + mono;
      } else {
        coeff += " " + mono;
      }
    }
    if (out.empty()) {
      out = coeff;
    } else if (!coeff.empty() && coeff[0] == '-') {
      out += " - " + coeff.substr(1);
    } else {
      out += " + " + coeff;
    }
  }
  return out;
}

PolyMatrix::PolyMatrix(int rows, int cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars),
      entries_(static_cast<std::size_t>(rows) * cols, Polynomial(nvars)) {}

PolyMatrix PolyMatrix::identity(int n, int nvars) {
  PolyMatrix m(n, n, nvars);
  for (int i = 0; i < n; ++i) m(i, i) = Polynomial::constant(nvars, GaussianRational(1));
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_ || nvars_ != o.nvars_)
    throw IndexOutOfRange("polynomial matrix product shape mismatch");
  PolyMatrix out(rows_, o.cols_, nvars_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Polynomial& left = (*this)(i, k);
      if (left.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o(k, j).is_zero()) continue;
        out(i, j) += left * o(k, j);
      }
    }
  }
  return out;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || nvars_ != o.nvars_)
    throw IndexOutOfRange("polynomial matrix sum shape mismatch");
  PolyMatrix out = *this;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) += o(i, j);
  return out;
}

PolyMatrix PolyMatrix::scaled(const Polynomial& p) const {
  PolyMatrix out(rows_, cols_, nvars_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j) * p;
  return out;
}

PolyMatrix PolyMatrix::scaled(const GaussianRational& c) const {
  PolyMatrix out(rows_, cols_, nvars_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j) * c;
  return out;
}

PolyMatrix PolyMatrix::scale_variables(const GaussianRational& c) const {
  PolyMatrix out(rows_, cols_, nvars_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).scale_variables(c);
  return out;
}

PolyMatrix PolyMatrix::derivative(int var) const {
  PolyMatrix out(rows_, cols_, nvars_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).derivative(var);
  return out;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Polynomial& p) { return p.is_zero(); });
}

int PolyMatrix::max_total_degree() const {
  int degree = -1;
  for (const Polynomial& p : entries_) degree = std::max(degree, p.total_degree());
  return degree;
}

Matrix PolyMatrix::evaluate(const Vector& t) const {
  Matrix out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).evaluate(t);
  return out;
}

std::vector<GaussianRational> PolyMatrix::evaluate(const std::vector<GaussianRational>& t) const {
  std::vector<GaussianRational> out;
  out.reserve(entries_.size());
  for (const Polynomial& p : entries_) out.push_back(p.evaluate(t));
  return out;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && nvars_ == o.nvars_ && entries_ == o.entries_;
}

}  // namespace crembed::exact
