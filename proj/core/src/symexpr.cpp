#include "nlsgrow/symexpr.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nls {

namespace {

std::string rat_str(const BigRat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

std::string GaussianRational::str() const {
  if (is_zero()) return "0";
  if (im == 0) return rat_str(re);
  if (re == 0) return rat_str(im) + "i";
  std::string s = "(" + rat_str(re);
  if (im > 0) s += "+";
  return s + rat_str(im) + "i)";
}

int Monomial::max_factor_order() const {
  int m = 0;
  for (const auto& f : factors) m = std::max(m, f.total_order());
  return m;
}

bool factors_less(const std::vector<Factor>& a, const std::vector<Factor>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void SymExpr::Builder::add(const GaussianRational& c,
                           const std::vector<Factor>& factors) {
  if (c.is_zero()) return;
  std::vector<Factor> sorted = factors;
  std::sort(sorted.begin(), sorted.end());
  auto [it, inserted] = acc_.try_emplace(std::move(sorted), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc_.erase(it);
  }
}

void SymExpr::Builder::add_expr(const SymExpr& e, const GaussianRational& s) {
  if (e.dim() != dim_)
    throw std::invalid_argument("SymExpr: dimension mismatch");
  for (const auto& m : e.terms()) add(s * m.coeff, m.factors);
}

SymExpr SymExpr::Builder::build() const {
  SymExpr e(dim_);
  e.terms_.reserve(acc_.size());
  for (const auto& [factors, coeff] : acc_)
    e.terms_.push_back(Monomial{coeff, factors});
  return e;
}

SymExpr SymExpr::field(int dim, bool conj) {
  return monomial(dim, 1, {Factor{{0, 0, 0}, conj}});
}

SymExpr SymExpr::constant(int dim, GaussianRational c) {
  return monomial(dim, std::move(c), {});
}

SymExpr SymExpr::monomial(int dim, GaussianRational c,
                          std::vector<Factor> factors) {
  Builder b(dim);
  b.add(c, factors);
  return b.build();
}

SymExpr SymExpr::scaled(const GaussianRational& c) const {
  Builder b(dim_);
  b.add_expr(*this, c);
  return b.build();
}

SymExpr SymExpr::conjugated() const {
  Builder b(dim_);
  for (const auto& m : terms_) {
    std::vector<Factor> flipped = m.factors;
    for (auto& f : flipped) f.conj = !f.conj;
    b.add(m.coeff.conj(), flipped);
  }
  return b.build();
}

SymExpr SymExpr::spatial_derivative(int axis) const {
  if (axis < 0 || axis >= dim_)
    throw std::invalid_argument("SymExpr: axis out of range");
  Builder b(dim_);
  for (const auto& m : terms_) {
    for (std::size_t j = 0; j < m.factors.size(); ++j) {
      std::vector<Factor> fs = m.factors;
      if (fs[j].alpha[axis] == 255)
        throw std::overflow_error("SymExpr: derivative order overflow");
      fs[j].alpha[axis]++;
      b.add(m.coeff, fs);
    }
  }
  return b.build();
}

SymExpr SymExpr::laplacian() const {
  Builder b(dim_);
  for (int a = 0; a < dim_; ++a)
    b.add_expr(spatial_derivative(a).spatial_derivative(a));
  return b.build();
}

int SymExpr::max_factor_order() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.max_factor_order());
  return m;
}

int SymExpr::min_factor_count() const {
  if (terms_.empty()) return -1;
  std::size_t m = terms_[0].factors.size();
  for (const auto& t : terms_) m = std::min(m, t.factors.size());
  return int(m);
}

SymExpr operator+(const SymExpr& a, const SymExpr& b) {
  SymExpr::Builder out(a.dim());
  out.add_expr(a);
  out.add_expr(b);
  return out.build();
}

SymExpr operator-(const SymExpr& a, const SymExpr& b) {
  SymExpr::Builder out(a.dim());
  out.add_expr(a);
  out.add_expr(b, GaussianRational(-1));
  return out.build();
}

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("SymExpr: dimension mismatch");
  SymExpr::Builder out(a.dim());
  for (const auto& ma : a.terms()) {
    for (const auto& mb : b.terms()) {
      std::vector<Factor> fs = ma.factors;
      fs.insert(fs.end(), mb.factors.begin(), mb.factors.end());
      out.add(ma.coeff * mb.coeff, fs);
    }
  }
  return out.build();
}

bool operator==(const SymExpr& a, const SymExpr& b) {
  if (a.dim_ != b.dim_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].coeff == b.terms_[i].coeff) ||
        a.terms_[i].factors != b.terms_[i].factors)
      return false;
  }
  return true;
}

SymExpr SymExpr::real_part() const {
  SymExpr::Builder out(dim_);
  out.add_expr(*this, GaussianRational(BigRat(1, 2)));
  out.add_expr(conjugated(), GaussianRational(BigRat(1, 2)));
  return out.build();
}

std::string SymExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& m : terms_) {
    if (!first) os << " + ";
    first = false;
    os << m.coeff.str();
    if (!m.factors.empty()) {
      os << " *";
      for (const auto& f : m.factors) {
        os << " ";
        if (f.total_order() > 0) {
          os << "D(";
          for (int a = 0; a < dim_; ++a) {
            if (a) os << ",";
            os << int(f.alpha[a]);
          }
          os << ")";
        }
        os << (f.conj ? "u*" : "u");
      }
    }
  }
  return os.str();
}

}  // namespace nls
