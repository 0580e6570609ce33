#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlsgrow/rational.hpp"

namespace nls {

/// One symbolic factor d^alpha u or d^alpha conj(u); alpha holds per-axis
/// spatial derivative orders. Canonical order: conjugates after plain
/// factors, then by total order, then lexicographically by alpha.
struct Factor {
  std::array<std::uint8_t, 3> alpha{0, 0, 0};
  bool conj = false;

  int total_order() const { return alpha[0] + alpha[1] + alpha[2]; }

  friend std::strong_ordering operator<=>(const Factor& a, const Factor& b) {
    if (a.conj != b.conj) return a.conj <=> b.conj;
    if (int at = a.total_order(), bt = b.total_order(); at != bt)
      return at <=> bt;
    return a.alpha <=> b.alpha;
  }
  friend bool operator==(const Factor& a, const Factor& b) = default;
};

/// Product of factors with an exact coefficient; factors kept sorted.
struct Monomial {
  GaussianRational coeff;
  std::vector<Factor> factors;

  int max_factor_order() const;
};

/// Ordering on factor multisets (coefficients ignored); total and
/// deterministic, used to normalize expressions.
bool factors_less(const std::vector<Factor>& a, const std::vector<Factor>& b);

/// Normalized sum of monomials: like terms merged, zero coefficients
/// dropped, deterministic term order. Immutable value type; every operation
/// returns a fresh expression.
class SymExpr {
 public:
  explicit SymExpr(int dim) : dim_(dim) {}

  static SymExpr zero(int dim) { return SymExpr(dim); }
  /// The bare field u (or conj(u)).
  static SymExpr field(int dim, bool conj = false);
  static SymExpr constant(int dim, GaussianRational c);
  static SymExpr monomial(int dim, GaussianRational c,
                          std::vector<Factor> factors);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Monomial>& terms() const { return terms_; }

  SymExpr scaled(const GaussianRational& c) const;
  SymExpr conjugated() const;

  /// Leibniz derivative along one spatial axis.
  SymExpr spatial_derivative(int axis) const;
  /// sum_j d^2/dx_j^2
  SymExpr laplacian() const;

  /// Largest per-factor spatial order over all terms (0 for empty).
  int max_factor_order() const;
  /// Smallest factor count over all terms; -1 for the zero expression.
  int min_factor_count() const;

  friend SymExpr operator+(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator-(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
  friend bool operator==(const SymExpr& a, const SymExpr& b);

  /// Deterministic text form, e.g. "-1i * u u u* + 1i * D(0,2)u + ...".
  std::string str() const;

  /// Real part (e + conj(e))/2.
  SymExpr real_part() const;

  class Builder;

 private:
  int dim_;
  std::vector<Monomial> terms_;
};

/// Accumulates monomials and produces a normalized expression.
class SymExpr::Builder {
 public:
  explicit Builder(int dim) : dim_(dim) {}
  void add(const GaussianRational& c, const std::vector<Factor>& factors);
  void add(const Monomial& m) { add(m.coeff, m.factors); }
  void add_expr(const SymExpr& e, const GaussianRational& scale = 1);
  SymExpr build() const;

 private:
  int dim_;
  std::map<std::vector<Factor>, GaussianRational,
           bool (*)(const std::vector<Factor>&, const std::vector<Factor>&)>
      acc_{&factors_less};
};

}  // namespace nls
