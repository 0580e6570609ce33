#include "nlsgrow/ibp.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

namespace nls {

namespace {

struct ClassKey {
  int dim = 0;
  int n_plain = 0;
  int n_conj = 0;
  std::array<int, 3> totals{0, 0, 0};

  friend bool operator<(const ClassKey& a, const ClassKey& b) {
    return std::tie(a.dim, a.n_plain, a.n_conj, a.totals) <
           std::tie(b.dim, b.n_plain, b.n_conj, b.totals);
  }
};

ClassKey key_of(int dim, const std::vector<Factor>& factors) {
  ClassKey k;
  k.dim = dim;
  for (const auto& f : factors) {
    (f.conj ? k.n_conj : k.n_plain)++;
    for (int a = 0; a < 3; ++a) k.totals[a] += f.alpha[a];
  }
  return k;
}

// All multisets of `count` factors with fixed conj flag and per-axis
// derivative sums. Generated as non-increasing factor sequences.
void enumerate_group(int dim, bool conj, int count, std::array<int, 3> sums,
                     std::vector<Factor>& current,
                     std::vector<std::vector<Factor>>& out) {
  if (count == 0) {
    if (sums == std::array<int, 3>{0, 0, 0}) out.push_back(current);
    return;
  }
  // candidates bounded above by the previously placed factor
  const Factor* prev = current.empty() ? nullptr : &current.back();
  std::array<int, 3> a{0, 0, 0};
  const int m0 = sums[0], m1 = dim > 1 ? sums[1] : 0, m2 = dim > 2 ? sums[2] : 0;
  for (a[0] = m0; a[0] >= 0; --a[0])
    for (a[1] = m1; a[1] >= 0; --a[1])
      for (a[2] = m2; a[2] >= 0; --a[2]) {
        Factor f{{std::uint8_t(a[0]), std::uint8_t(a[1]), std::uint8_t(a[2])},
                 conj};
        if (prev && *prev < f) continue;
        current.push_back(f);
        enumerate_group(dim, conj, count - 1,
                        {sums[0] - a[0], sums[1] - a[1], sums[2] - a[2]},
                        current, out);
        current.pop_back();
      }
}

std::vector<std::vector<Factor>> enumerate_class(const ClassKey& key) {
  std::vector<std::vector<Factor>> result;
  // split each axis total between the plain and conjugate groups
  std::array<int, 3> split{0, 0, 0};
  const int t0 = key.totals[0], t1 = key.totals[1], t2 = key.totals[2];
  for (split[0] = 0; split[0] <= t0; ++split[0])
    for (split[1] = 0; split[1] <= t1; ++split[1])
      for (split[2] = 0; split[2] <= t2; ++split[2]) {
        std::vector<std::vector<Factor>> plain, conj;
        std::vector<Factor> scratch;
        enumerate_group(key.dim, false, key.n_plain, split, scratch, plain);
        if (plain.empty()) continue;
        enumerate_group(key.dim, true, key.n_conj,
                        {t0 - split[0], t1 - split[1], t2 - split[2]}, scratch,
                        conj);
        for (const auto& pu : plain)
          for (const auto& pc : conj) {
            std::vector<Factor> m = pu;
            m.insert(m.end(), pc.begin(), pc.end());
            std::sort(m.begin(), m.end());
            result.push_back(std::move(m));
          }
      }
  std::sort(result.begin(), result.end(), factors_less);
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

// Elimination priority: monomials whose derivative orders are concentrated on
// few factors come first, so the normal form prefers spread-out derivatives.
bool eliminate_first(const std::vector<Factor>& a,
                     const std::vector<Factor>& b) {
  auto profile = [](const std::vector<Factor>& fs) {
    std::vector<int> orders;
    orders.reserve(fs.size());
    for (const auto& f : fs) orders.push_back(f.total_order());
    std::sort(orders.rbegin(), orders.rend());
    return orders;
  };
  const auto pa = profile(a), pb = profile(b);
  if (pa != pb) return pa > pb;
  return factors_less(b, a);
}

struct ClassData {
  // class monomials in elimination order (index = column)
  std::vector<std::vector<Factor>> monomials;
  std::map<std::vector<Factor>, int, bool (*)(const std::vector<Factor>&,
                                              const std::vector<Factor>&)>
      index{&factors_less};
  // pivot column -> substitution over non-pivot columns
  std::map<int, std::vector<std::pair<int, BigRat>>> pivots;
};

using Row = std::map<int, BigRat>;

// Leibniz expansion of d_a(g) as a coefficient row over the class index.
Row divergence_row(const std::vector<Factor>& g, int axis,
                   const ClassData& cls) {
  Row row;
  for (std::size_t j = 0; j < g.size(); ++j) {
    std::vector<Factor> m = g;
    m[j].alpha[axis]++;
    std::sort(m.begin(), m.end());
    row[cls.index.at(m)] += 1;
  }
  return row;
}

const ClassData& class_data(const ClassKey& key) {
  static std::mutex mutex;
  static std::map<ClassKey, ClassData*> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  auto* cls = new ClassData;
  cls->monomials = enumerate_class(key);
  std::sort(cls->monomials.begin(), cls->monomials.end(), eliminate_first);
  for (std::size_t i = 0; i < cls->monomials.size(); ++i)
    cls->index.emplace(cls->monomials[i], int(i));

  // gather one relation per (axis, monomial one derivative short)
  std::vector<Row> rows;
  for (int a = 0; a < key.dim; ++a) {
    if (key.totals[a] == 0) continue;
    ClassKey reduced = key;
    reduced.totals[a]--;
    for (const auto& g : enumerate_class(reduced))
      rows.push_back(divergence_row(g, a, *cls));
  }

  // exact Gaussian elimination to reduced row echelon form
  std::map<int, Row> pivot_rows;  // leading column -> normalized row
  for (Row row : rows) {
    // reduce by existing pivots
    for (auto it2 = row.begin(); it2 != row.end();) {
      auto p = pivot_rows.find(it2->first);
      if (p == pivot_rows.end()) {
        ++it2;
        continue;
      }
      const BigRat c = it2->second;
      it2 = row.erase(it2);
      for (const auto& [col, val] : p->second) {
        if (col == p->first) continue;
        BigRat& slot = row[col];
        slot -= c * val;
        if (slot == 0) row.erase(col);
      }
      // restart scan: erase/insert may have shuffled iteration
      it2 = row.begin();
    }
    if (row.empty()) continue;
    const int lead = row.begin()->first;
    const BigRat inv = row.begin()->second;
    for (auto& [col, val] : row) val /= inv;
    // back-substitute into rows that already use this column
    for (auto& [plead, prow] : pivot_rows) {
      auto hit = prow.find(lead);
      if (hit == prow.end()) continue;
      const BigRat c = hit->second;
      prow.erase(hit);
      for (const auto& [col, val] : row) {
        if (col == lead) continue;
        BigRat& slot = prow[col];
        slot -= c * val;
        if (slot == 0) prow.erase(col);
      }
    }
    pivot_rows.emplace(lead, std::move(row));
  }

  for (const auto& [lead, row] : pivot_rows) {
    std::vector<std::pair<int, BigRat>> subst;
    for (const auto& [col, val] : row)
      if (col != lead) subst.emplace_back(col, -val);
    cls->pivots.emplace(lead, std::move(subst));
  }

  cache.emplace(key, cls);
  return *cls;
}

}  // namespace

SymExpr ibp_normal_form(const SymExpr& integrand) {
  const int dim = integrand.dim();

  // group terms by class
  std::map<ClassKey, std::vector<const Monomial*>> by_class;
  for (const auto& m : integrand.terms())
    by_class[key_of(dim, m.factors)].push_back(&m);

  SymExpr::Builder out(dim);
  for (const auto& [key, terms] : by_class) {
    if (key.totals == std::array<int, 3>{0, 0, 0}) {
      for (const auto* m : terms) out.add(*m);  // derivative-free: no relations
      continue;
    }
    const ClassData& cls = class_data(key);
    std::map<int, GaussianRational> vec;
    for (const auto* m : terms) vec[cls.index.at(m->factors)] += m->coeff;
    // substitute pivot columns (rows reference non-pivot columns only)
    for (auto& [col, coeff] : vec) {
      auto p = cls.pivots.find(col);
      if (p == cls.pivots.end() || coeff.is_zero()) continue;
      for (const auto& [tcol, tval] : p->second)
        vec[tcol] += coeff * GaussianRational(tval);
      coeff = GaussianRational();
    }
    for (const auto& [col, coeff] : vec)
      if (!coeff.is_zero()) out.add(coeff, cls.monomials[col]);
  }
  return out.build();
}

}  // namespace nls
