#include "alex/alexander.hpp"

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace alex {

namespace {

Exponent to_exponent(const std::vector<long>& v) {
  Exponent e(v.size());
  for (size_t i = 0; i < v.size(); ++i) e[i] = static_cast<int>(v[i]);
  return e;
}

// All ascending k-subsets of {0,...,n-1}.
std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// A +-monomial determinant forces the minor gcd to be 1 in canonical form.
bool is_unit_monomial(const LaurentPoly& p) {
  if (p.term_count() != 1) return false;
  const Rational& c = p.terms().begin()->second;
  return c == 1 || c == -1;
}

bool is_one(const LaurentPoly& p) {
  return p.is_constant() && !p.is_zero() &&
         p.terms().begin()->second == 1;
}

}  // namespace

FoxMatrix fox_matrix(const WeightedPresentation& p) {
  FoxMatrix fm;
  fm.rows = p.gen_count();
  fm.cols = p.relator_count();
  fm.entries.assign(fm.rows, std::vector<RingElement>(fm.cols));
  for (int j = 0; j < fm.cols; ++j) {
    for (int i = 0; i < fm.rows; ++i) {
      fm.entries[i][j] = involute(fox_derivative(p.relators[j], i));
    }
  }
  return fm;
}

LaurentPoly abelianize(const RingElement& e, const WeightedPresentation& p) {
  LaurentPoly out(p.components);
  for (const auto& [word, coeff] : e.terms()) {
    out.add_term(to_exponent(p.ab_image(word)),
                 Rational(static_cast<long>(coeff)));
  }
  return out;
}

AbelianMatrix b0_matrix(const WeightedPresentation& p) {
  FoxMatrix fm = fox_matrix(p);
  AbelianMatrix am;
  am.rows = fm.rows;
  am.cols = fm.cols;
  am.nvars = p.components;
  am.entries.assign(am.rows, std::vector<LaurentPoly>(am.cols,
                                                      LaurentPoly(am.nvars)));
  for (int i = 0; i < am.rows; ++i) {
    for (int j = 0; j < am.cols; ++j) {
      am.entries[i][j] = abelianize(fm.entries[i][j], p);
    }
  }
  return am;
}

LaurentPoly minor_det(const AbelianMatrix& a, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
  if (rows.size() != cols.size()) {
    throw std::invalid_argument("minor_det: non-square index sets");
  }
  const int k = static_cast<int>(rows.size());
  if (k == 0) return LaurentPoly::constant(a.nvars, 1);
  // Expand along the columns in order; memoize on the set of unused rows.
  std::unordered_map<std::uint64_t, LaurentPoly> memo;
  auto det = [&](auto&& self, std::uint64_t mask) -> LaurentPoly {
    if (mask == 0) return LaurentPoly::constant(a.nvars, 1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int col = k - __builtin_popcountll(mask);
    LaurentPoly acc(a.nvars);
    int sign = 1;
    for (int r = 0; r < k; ++r) {
      if (!(mask & (std::uint64_t{1} << r))) continue;
      const LaurentPoly& e = a.entry(rows[r], cols[col]);
      if (!e.is_zero()) {
        LaurentPoly sub = self(self, mask & ~(std::uint64_t{1} << r));
        acc = acc + (sign > 0 ? e * sub : -(e * sub));
      }
      sign = -sign;
    }
    return memo.emplace(mask, std::move(acc)).first->second;
  };
  return det(det, (std::uint64_t{1} << k) - 1);
}

namespace {

LaurentPoly minor_gcd_impl(const AbelianMatrix& a, int k, bool parallel) {
  if (k < 0) throw std::invalid_argument("minor_gcd: negative size");
  if (k == 0) return LaurentPoly::constant(a.nvars, 1);
  if (a.rows < k || a.cols < k) return LaurentPoly::zero(a.nvars);
  const auto rowsets = combinations(a.rows, k);
  const auto colsets = combinations(a.cols, k);
  const std::int64_t total =
      static_cast<std::int64_t>(rowsets.size()) *
      static_cast<std::int64_t>(colsets.size());
  std::vector<LaurentPoly> dets(total, LaurentPoly(a.nvars));
  std::atomic<bool> unit_found{false};

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      if (unit_found.load(std::memory_order_relaxed)) continue;
      const auto& rs = rowsets[idx / static_cast<std::int64_t>(colsets.size())];
      const auto& cs = colsets[idx % static_cast<std::int64_t>(colsets.size())];
      LaurentPoly d = minor_det(a, rs, cs);
      if (is_unit_monomial(d)) {
        unit_found.store(true, std::memory_order_relaxed);
      }
      dets[idx] = std::move(d);
    }
  } else {
    for (std::int64_t idx = 0; idx < total; ++idx) {
      if (unit_found.load(std::memory_order_relaxed)) break;
      const auto& rs = rowsets[idx / static_cast<std::int64_t>(colsets.size())];
      const auto& cs = colsets[idx % static_cast<std::int64_t>(colsets.size())];
      LaurentPoly d = minor_det(a, rs, cs);
      if (is_unit_monomial(d)) {
        unit_found.store(true, std::memory_order_relaxed);
      }
      dets[idx] = std::move(d);
    }
  }

  if (unit_found.load()) return LaurentPoly::constant(a.nvars, 1);
  LaurentPoly g = LaurentPoly::zero(a.nvars);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    if (dets[idx].is_zero()) continue;
    g = laurent_gcd(g, dets[idx]);
    if (is_one(g)) break;
  }
  return canonicalize(g);
}

}  // namespace

LaurentPoly minor_gcd(const AbelianMatrix& a, int k) {
  return minor_gcd_impl(a, k, false);
}

LaurentPoly minor_gcd_parallel(const AbelianMatrix& a, int k) {
  return minor_gcd_impl(a, k, true);
}

LaurentPoly multi_alexander(const WeightedPresentation& p) {
  AbelianMatrix b0 = b0_matrix(p);
  return minor_gcd_parallel(b0, p.gen_count() - 1);
}

LaurentPoly uni_alexander(const WeightedPresentation& p) {
  bool any = false;
  for (long w : p.component_weights) any = any || w != 0;
  if (!any) {
    throw std::invalid_argument("uni_alexander: psi is identically zero");
  }
  AbelianMatrix b0 = b0_matrix(p);
  AbelianMatrix spec;
  spec.rows = b0.rows;
  spec.cols = b0.cols;
  spec.nvars = 1;
  spec.entries.assign(spec.rows,
                      std::vector<LaurentPoly>(spec.cols, LaurentPoly(1)));
  for (int i = 0; i < b0.rows; ++i) {
    for (int j = 0; j < b0.cols; ++j) {
      spec.entries[i][j] =
          specialize_weights(b0.entries[i][j], p.component_weights);
    }
  }
  return rational_primitive(minor_gcd_parallel(spec, p.gen_count() - 1));
}

Delta0 delta0(const WeightedPresentation& p) {
  LaurentPoly multi = multi_alexander(p);
  if (multi.is_zero()) return Delta0{true, 0};
  return Delta0{false,
                degree_spread(multi, std::vector<long>(p.components, 1))};
}

InvariantRecord invariant_record(const WeightedPresentation& p) {
  InvariantRecord rec;
  rec.m = p.gen_count();
  rec.l = p.relator_count();
  rec.s = p.components;
  rec.multi = multi_alexander(p);
  rec.uni = uni_alexander(p);
  rec.d0 = rec.multi.is_zero()
               ? Delta0{true, 0}
               : Delta0{false, degree_spread(rec.multi,
                                             std::vector<long>(rec.s, 1))};
  return rec;
}

}  // namespace alex
