#pragma once

// Reference normal ordering by repeated adjacent swaps  p_a x_b -> x_b p_a - i hbar g_ab.
// Shares no code with the library's closed-form contraction; only the
// conversion helpers at the bottom touch library types.

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "rgupz/opalg.hpp"

namespace word_oracle {

struct Letter {
  bool momentum;
  int index;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// {i power mod 4, hbar, a1, a2, eps, gamma^2}
using Key = std::array<int, 6>;
using Scalar = std::map<Key, mpq_class>;
using WordPoly = std::map<Word, Scalar>;

inline void add_into(Scalar& acc, const Key& key, const mpq_class& value) {
  Key k = key;
  mpq_class v = value;
  k[0] %= 4;
  if (k[0] >= 2) {  // i^2 = -1
    k[0] -= 2;
    v = -v;
  }
  auto& slot = acc[k];
  slot += v;
  if (slot == 0) acc.erase(k);
}

inline Scalar multiply(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& [ka, va] : a) {
    for (const auto& [kb, vb] : b) {
      Key k{};
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
      add_into(out, k, va * vb);
    }
  }
  return out;
}

inline void add_into(WordPoly& acc, const Word& w, const Scalar& s) {
  auto& slot = acc[w];
  for (const auto& [k, v] : s) add_into(slot, k, v);
  if (slot.empty()) acc.erase(w);
}

inline int metric_diagonal(bool minkowski, int index) { return minkowski && index == 0 ? -1 : 1; }

/// Rewrites every word until all x letters precede all p letters, then sorts
/// each block by index (letters of one kind commute).
inline WordPoly normal_order(const WordPoly& input, bool minkowski) {
  WordPoly pending = input;
  WordPoly done;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key();
    const Scalar& c = node.mapped();
    std::size_t k = 0;
    while (k + 1 < w.size() && !(w[k].momentum && !w[k + 1].momentum)) ++k;
    if (k + 1 >= w.size()) {
      Word sorted = w;
      std::stable_sort(sorted.begin(), sorted.end());  // x (false) before p (true), then index
      add_into(done, sorted, c);
      continue;
    }
    Word swapped = w;
    std::swap(swapped[k], swapped[k + 1]);
    add_into(pending, swapped, c);
    if (w[k].index == w[k + 1].index) {
      Word contracted;
      contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<long>(k));
      contracted.insert(contracted.end(), w.begin() + static_cast<long>(k) + 2, w.end());
      // -i hbar g_aa
      Scalar factor;
      add_into(factor, Key{1, 1, 0, 0, 0, 0}, mpq_class(-metric_diagonal(minkowski, w[k].index)));
      add_into(pending, contracted, multiply(c, factor));
    }
  }
  return done;
}

inline WordPoly product(const WordPoly& a, const WordPoly& b, bool minkowski) {
  WordPoly raw;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      add_into(raw, w, multiply(ca, cb));
    }
  }
  return normal_order(raw, minkowski);
}

// ---- conversion to and from library polynomials

inline WordPoly from_library(const rgupz::opalg::OperatorPoly& poly) {
  WordPoly out;
  for (const auto& [mono, coeff] : poly.terms()) {
    Word w;
    for (int idx = 0; idx < rgupz::opalg::kMaxIndex; ++idx) {
      for (int e = 0; e < mono.x[idx]; ++e) w.push_back({false, idx});
    }
    for (int idx = 0; idx < rgupz::opalg::kMaxIndex; ++idx) {
      for (int e = 0; e < mono.p[idx]; ++e) w.push_back({true, idx});
    }
    Scalar s;
    for (const auto& [pm, q] : coeff.terms()) {
      Key k{pm.i};
      for (std::size_t i = 0; i < rgupz::opalg::kParamCount; ++i) k[i + 1] = pm.exps[i];
      add_into(s, k, q);
    }
    add_into(out, w, s);
  }
  return out;
}

/// Requires every word to be normal ordered already.
inline rgupz::opalg::OperatorPoly to_library(const WordPoly& poly, const rgupz::opalg::Metric& metric) {
  rgupz::opalg::OperatorPoly out(metric);
  for (const auto& [w, s] : poly) {
    rgupz::opalg::OpMonomial m;
    for (const auto& letter : w) {
      auto& slot = letter.momentum ? m.p[letter.index] : m.x[letter.index];
      ++slot;
    }
    rgupz::opalg::Coefficient c;
    for (const auto& [k, q] : s) {
      rgupz::opalg::ParamMonomial pm;
      pm.i = static_cast<std::uint8_t>(k[0]);
      for (std::size_t i = 0; i < rgupz::opalg::kParamCount; ++i) pm.exps[i] = static_cast<std::uint8_t>(k[i + 1]);
      c.add_term(pm, q);
    }
    out.add_term(m, c);
  }
  return out;
}

/// Random polynomials with small rational coefficients in {i, hbar, a1}.
class Generator {
 public:
  Generator(std::uint64_t seed, bool minkowski, int dimension)
      : rng_(seed), minkowski_(minkowski), first_(minkowski ? 0 : 1), last_(minkowski ? 3 : dimension) {}

  rgupz::opalg::Metric metric() const {
    return minkowski_ ? rgupz::opalg::Metric::minkowski() : rgupz::opalg::Metric::euclidean(last_);
  }

  Scalar scalar() {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> bit(0, 1);
    int n = 0;
    while (n == 0) n = num(rng_);
    mpq_class q(n, den(rng_));
    q.canonicalize();
    Scalar s;
    add_into(s, Key{bit(rng_), bit(rng_), bit(rng_), 0, 0, 0}, q);
    return s;
  }

  Word normal_word(int max_degree) {
    std::uniform_int_distribution<int> degree(0, max_degree);
    std::uniform_int_distribution<int> index(first_, last_);
    std::uniform_int_distribution<int> bit(0, 1);
    Word w;
    const int d = degree(rng_);
    for (int i = 0; i < d; ++i) w.push_back({bit(rng_) == 1, index(rng_)});
    std::stable_sort(w.begin(), w.end());
    return w;
  }

  /// At most `max_terms` terms, each of total degree <= max_degree.
  WordPoly poly(int max_degree, int max_terms) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    WordPoly out;
    const int t = terms(rng_);
    for (int i = 0; i < t; ++i) add_into(out, normal_word(max_degree), scalar());
    return out;
  }

  rgupz::opalg::OperatorPoly library_poly(int max_degree, int max_terms) {
    return to_library(poly(max_degree, max_terms), metric());
  }

 private:
  std::mt19937_64 rng_;
  bool minkowski_;
  int first_;
  int last_;
};

}  // namespace word_oracle
