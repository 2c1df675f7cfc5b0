#pragma once

#include "vertexlab/abelian.hpp"
#include "vertexlab/rational.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace vertexlab {

/// Sector-dependent offset added to the creation-mode degrees.
enum class DegreeShift {
  /// 2 - chi(alpha, alpha); the vacuum sits in degree 2.
  two_minus_form,
  /// chi(alpha, alpha); the vacuum sits in degree 0 and deg u_n w = deg u + deg w - 2n - 2.
  form,
};

inline long long sector_shift(DegreeShift shift, long long self_pairing) {
  return shift == DegreeShift::two_minus_form ? 2 - self_pairing : self_pairing;
}

/// A creation variable: generator index and depth i >= 1.
struct Mode {
  int gen = 0;
  int depth = 1;
  auto operator<=>(const Mode&) const = default;
};

/// Sector times a monomial in commuting (even) and anticommuting (odd) variables.
/// Canonical form: even sorted with positive exponents, odd strictly increasing.
template <class Tag>
struct Monomial {
  Coords sector;
  std::vector<std::pair<Mode, int>> even;
  std::vector<Mode> odd;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  /// Total number of factors counted with multiplicity.
  int length() const {
    int n = static_cast<int>(odd.size());
    for (const auto& [m, e] : even) n += e;
    return n;
  }
  /// Sum of depths counted with multiplicity.
  int weight() const {
    int w = 0;
    for (const auto& [m, e] : even) w += m.depth * e;
    for (const auto& m : odd) w += m.depth;
    return w;
  }
  int max_depth() const {
    int d = 0;
    for (const auto& [m, e] : even) d = std::max(d, m.depth);
    for (const auto& m : odd) d = std::max(d, m.depth);
    return d;
  }
  int exponent(const Mode& m) const {
    auto it = std::lower_bound(even.begin(), even.end(), std::make_pair(m, 0),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    return (it != even.end() && it->first == m) ? it->second : 0;
  }
};

/// Sorts the odd factors, returning the permutation sign, or nullopt when a factor repeats.
template <class Tag>
std::optional<int> canonicalize(Monomial<Tag>& m) {
  int sign = 1;
  auto& o = m.odd;
  for (std::size_t i = 1; i < o.size(); ++i)
    for (std::size_t j = i; j > 0 && o[j - 1] > o[j]; --j) {
      std::swap(o[j - 1], o[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < o.size(); ++i)
    if (o[i - 1] == o[i]) return std::nullopt;
  std::sort(m.even.begin(), m.even.end());
  std::vector<std::pair<Mode, int>> merged;
  for (const auto& [mode, e] : m.even) {
    if (!merged.empty() && merged.back().first == mode)
      merged.back().second += e;
    else
      merged.emplace_back(mode, e);
  }
  std::erase_if(merged, [](const auto& p) { return p.second == 0; });
  m.even = std::move(merged);
  return sign;
}

/// Finite exact-rational linear combination of canonical monomials.
template <class Tag>
class LinComb {
public:
  using Mono = Monomial<Tag>;
  using Map = std::map<Mono, Rational>;

  LinComb() = default;
  LinComb(const Mono& m, const Rational& c) { add(m, c); }

  /// Adds c times an already canonical monomial.
  void add(const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  /// Canonicalizes m (absorbing the sign) before adding.
  void add_raw(Mono m, const Rational& c) {
    auto s = canonicalize(m);
    if (!s) return;
    add(m, *s > 0 ? c : Rational(-c));
  }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  LinComb& operator*=(const Rational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= k;
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(LinComb a, const Rational& k) { return a *= k; }
  friend LinComb operator*(const Rational& k, LinComb a) { return a *= k; }
  bool operator==(const LinComb&) const = default;

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }
  Rational coefficient(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

private:
  Map terms_;
};

/// Product of monomials in Q[group] (x) SSym: sectors add, odd factors are concatenated a then b.
template <class Tag>
std::optional<std::pair<int, Monomial<Tag>>> multiply(const FGAbelianGroup& group, const Monomial<Tag>& a,
                                                      const Monomial<Tag>& b) {
  Monomial<Tag> m;
  m.sector = group.add(a.sector, b.sector);
  m.even = a.even;
  m.even.insert(m.even.end(), b.even.begin(), b.even.end());
  m.odd = a.odd;
  m.odd.insert(m.odd.end(), b.odd.begin(), b.odd.end());
  auto s = canonicalize(m);
  if (!s) return std::nullopt;
  return std::make_pair(*s, std::move(m));
}

template <class Tag>
LinComb<Tag> multiply(const FGAbelianGroup& group, const LinComb<Tag>& a, const LinComb<Tag>& b) {
  LinComb<Tag> out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      auto p = multiply(group, ma, mb);
      if (!p) continue;
      Rational c = ca * cb;
      if (p->first < 0) c = -c;
      out.add(p->second, c);
    }
  return out;
}

/// Removes one copy of the even variable m, returning its former exponent (0 if absent).
template <class Tag>
int remove_even(Monomial<Tag>& mono, const Mode& m) {
  for (auto it = mono.even.begin(); it != mono.even.end(); ++it)
    if (it->first == m) {
      int e = it->second;
      if (--it->second == 0) mono.even.erase(it);
      return e;
    }
  return 0;
}

/// Position of the odd variable m, or -1.
template <class Tag>
int odd_position(const Monomial<Tag>& mono, const Mode& m) {
  auto it = std::find(mono.odd.begin(), mono.odd.end(), m);
  return it == mono.odd.end() ? -1 : static_cast<int>(it - mono.odd.begin());
}

/// Appends every monomial of total depth <= depth in the given even and odd generators, for one sector.
template <class Tag>
void enumerate_monomials(const Coords& sector, const std::vector<int>& even_gens, const std::vector<int>& odd_gens,
                         int depth, std::vector<Monomial<Tag>>& out) {
  struct Slot {
    Mode mode;
    bool odd;
  };
  std::vector<Slot> slots;
  for (int i = 1; i <= depth; ++i) {
    for (int g : even_gens) slots.push_back({{g, i}, false});
    for (int g : odd_gens) slots.push_back({{g, i}, true});
  }
  Monomial<Tag> cur;
  cur.sector = sector;
  auto rec = [&](auto&& self, std::size_t from, int budget) -> void {
    Monomial<Tag> m = cur;
    canonicalize(m);
    out.push_back(m);
    for (std::size_t k = from; k < slots.size(); ++k) {
      const auto& s = slots[k];
      if (s.mode.depth > budget) continue;
      if (s.odd) {
        cur.odd.push_back(s.mode);
        self(self, k + 1, budget - s.mode.depth);
        cur.odd.pop_back();
      } else {
        cur.even.emplace_back(s.mode, 1);
        self(self, k, budget - s.mode.depth);
        cur.even.pop_back();
      }
    }
  };
  rec(rec, 0, depth);
}

} // namespace vertexlab
