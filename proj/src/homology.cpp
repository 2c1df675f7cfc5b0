#include "vertexlab/homology.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace vertexlab {

namespace {

template <class Tag>
Monomial<Tag> make_monomial(const VarietyModel& m, const Coords& alpha, const std::vector<std::pair<int, int>>& factors,
                            int& sign) {
  Monomial<Tag> mono;
  mono.sector = alpha;
  for (const auto& [v, i] : factors) {
    if (v < 0 || static_cast<std::size_t>(v) >= m.kbasis.size()) throw std::out_of_range("K-basis index out of range");
    if (m.kbasis[static_cast<std::size_t>(v)].parity == 0)
      mono.even.emplace_back(Mode{v, i}, 1);
    else
      mono.odd.push_back(Mode{v, i});
  }
  auto s = canonicalize(mono);
  sign = s ? *s : 0;
  return mono;
}

/// Single-factor cap on one monomial; returns the coefficient (0 when the factor is absent).
Rational cap_factor(UMonomial& u, const Mode& f, bool odd) {
  const Rational scale = 1 / factorial(f.depth - 1);
  if (!odd) {
    const int e = remove_even(u, f);
    return e == 0 ? Rational(0) : Rational(e) * scale;
  }
  const int p = odd_position(u, f);
  if (p < 0) return 0;
  u.odd.erase(u.odd.begin() + p);
  return scale * sign_power(p);
}

std::string sector_text(const Coords& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s;
}

} // namespace

HClass u_generator(const VarietyModel& m, const Coords& alpha, int v, int i) {
  int sign = 0;
  auto mono = make_monomial<HomologyTag>(m, alpha, {{v, i}}, sign);
  return HClass(mono, sign);
}

MuMonomial mu_generator(const VarietyModel& m, const Coords& alpha, int v, int i) {
  int sign = 0;
  return make_monomial<CohomologyTag>(m, alpha, {{v, i}}, sign);
}

HClass unit_class(const Coords& alpha) {
  UMonomial u;
  u.sector = alpha;
  return HClass(u, 1);
}

Rational mu_pair(const MuMonomial& mu, const UMonomial& u) {
  for (const auto& [mode, e] : mu.even)
    if (mode.depth < 1) throw std::invalid_argument("pairing needs positive-depth factors");
  for (const auto& mode : mu.odd)
    if (mode.depth < 1) throw std::invalid_argument("pairing needs positive-depth factors");
  if (mu.odd != u.odd || mu.even != u.even) return 0;
  Rational value = 1;
  for (const auto& [mode, e] : mu.even) {
    Rational denom = 1;
    const Rational f = factorial(mode.depth - 1);
    for (int k = 0; k < e; ++k) denom *= f;
    value *= factorial(e) / denom;
  }
  for (const auto& mode : mu.odd) value /= factorial(mode.depth - 1);
  return value;
}

HClass cap(const HClass& eta, const MuMonomial& mu) {
  HClass out;
  for (const auto& [u, c] : eta) {
    UMonomial r = u;
    Rational coef = c;
    for (const auto& [mode, e] : mu.even) {
      if (mode.depth < 1) throw std::invalid_argument("depth-0 factors need the sector scalar");
      for (int k = 0; k < e && coef != 0; ++k) coef *= cap_factor(r, mode, false);
    }
    for (const auto& mode : mu.odd) {
      if (mode.depth < 1) throw std::invalid_argument("depth-0 factors need the sector scalar");
      if (coef != 0) coef *= cap_factor(r, mode, true);
    }
    out.add(r, coef);
  }
  return out;
}

HClass phi_push(const FGAbelianGroup& sectors, const HClass& a, const HClass& b) {
  return multiply(sectors, a, b);
}

long long homological_degree(const UMonomial& m) {
  long long d = 0;
  for (const auto& [mode, e] : m.even) d += 2LL * mode.depth * e;
  for (const auto& mode : m.odd) d += 2LL * mode.depth - 1;
  return d;
}

JoyceVA::JoyceVA(VarietyModel model, Variant variant, SignFunction epsilon)
    : model_(std::move(model)), variant_(variant), eps_(std::move(epsilon)), sectors_(model_.bplus()),
      form_(working_form(model_, variant)) {
  const auto even = model_.even_indices();
  for (const auto& g : model_.bplus_gens) {
    std::vector<long long> row(model_.kbasis.size(), 0);
    for (std::size_t r = 0; r < even.size(); ++r) row[static_cast<std::size_t>(even[r])] = g[r];
    sector_coords_.push_back(std::move(row));
  }
}

long long JoyceVA::coordinate(int v, const Coords& alpha) const {
  long long s = 0;
  for (std::size_t c = 0; c < alpha.size(); ++c) s += alpha[c] * sector_coords_[c][static_cast<std::size_t>(v)];
  return s;
}

long long JoyceVA::sector_form(const Coords& a, const Coords& b) const {
  const auto n = static_cast<int>(model_.kbasis.size());
  long long s = 0;
  for (int v = 0; v < n; ++v) {
    const long long av = coordinate(v, a);
    if (av == 0) continue;
    for (int w = 0; w < n; ++w) s += av * form(v, w) * coordinate(w, b);
  }
  return s;
}

long long JoyceVA::hat_degree(const UMonomial& m, DegreeShift shift) const {
  return homological_degree(m) + sector_shift(shift, sector_form(m.sector, m.sector));
}

std::optional<long long> JoyceVA::hat_degree(const HClass& c, DegreeShift shift) const {
  std::optional<long long> d;
  for (const auto& [m, x] : c) {
    const long long dm = hat_degree(m, shift);
    if (d && *d != dm) return std::nullopt;
    d = dm;
  }
  return d;
}

HClass JoyceVA::u_class(const Coords& alpha, const std::vector<std::pair<int, int>>& factors) const {
  int sign = 0;
  auto mono = make_monomial<HomologyTag>(model_, sectors_.canonical(alpha), factors, sign);
  return sign == 0 ? HClass{} : HClass(mono, sign);
}

HClass JoyceVA::cap(const HClass& eta, const MuMonomial& mu) const {
  MuMonomial positive = mu;
  std::erase_if(positive.even, [](const auto& p) { return p.first.depth == 0; });
  std::erase_if(positive.odd, [](const auto& m) { return m.depth == 0; });
  HClass out;
  for (const auto& [u, c] : eta) {
    Rational scalar = c;
    for (const auto& [mode, e] : mu.even)
      if (mode.depth == 0)
        for (int k = 0; k < e; ++k) scalar *= rat(coordinate(mode.gen, u.sector));
    for (const auto& mode : mu.odd)
      if (mode.depth == 0) scalar *= rat(coordinate(mode.gen, u.sector));
    out += vertexlab::cap(HClass(u, scalar), positive);
  }
  return out;
}

HClass JoyceVA::psi_push(long long k, const HClass& eta) const {
  if (k < 0) return {};
  const Coords zero = sectors_.zero();
  const auto n = static_cast<int>(model_.kbasis.size());
  using Poly = std::vector<HClass>;  // index = power of z
  auto times = [&](const Poly& a, const Poly& b) {
    Poly out(static_cast<std::size_t>(k + 1));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; i + j < out.size() && j < b.size(); ++j)
        if (!a[i].empty() && !b[j].empty()) out[i + j] += phi_push(sectors_, a[i], b[j]);
    return out;
  };
  HClass out;
  for (const auto& [m, c] : eta) {
    // D(z) 1_alpha = exp(sum_j z^j / j * u_{iota alpha, j})
    Poly acc(static_cast<std::size_t>(k + 1));
    acc[0] = unit_class(m.sector);
    Poly ex(static_cast<std::size_t>(k + 1));
    ex[0] = unit_class(zero);
    for (long long q = 1; q <= k; ++q) {
      HClass sum;
      for (long long j = 1; j <= q; ++j) {
        HClass x;
        for (int v = 0; v < n; ++v) {
          const long long av = coordinate(v, m.sector);
          if (av != 0) x += u_generator(model_, zero, v, static_cast<int>(j)) * rat(av);
        }
        sum += phi_push(sectors_, x, ex[static_cast<std::size_t>(q - j)]);
      }
      ex[static_cast<std::size_t>(q)] = sum * (Rational(1) / rat(q));
    }
    acc = times(acc, ex);
    // D(z) u_{v,i} = sum_m z^m C(i+m-1, m) u_{v,i+m}, applied factor by factor in order
    auto factor_series = [&](const Mode& f) {
      Poly s(static_cast<std::size_t>(k + 1));
      for (long long mm = 0; mm <= k; ++mm)
        s[static_cast<std::size_t>(mm)] =
            u_generator(model_, zero, f.gen, f.depth + static_cast<int>(mm)) * binomial(f.depth + mm - 1, mm);
      return s;
    };
    for (const auto& [mode, e] : m.even)
      for (int r = 0; r < e; ++r) acc = times(acc, factor_series(mode));
    for (const auto& mode : m.odd) acc = times(acc, factor_series(mode));
    out += acc[static_cast<std::size_t>(k)] * c;
  }
  return out;
}

std::vector<ExtTerm> JoyceVA::ext_ch(int i, const Coords& alpha, const Coords& beta) const {
  (void)alpha;
  (void)beta;
  std::vector<ExtTerm> out;
  const auto n = static_cast<int>(model_.kbasis.size());
  for (int j = 0; j <= i; ++j) {
    const int k = i - j;
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (form(v, w) != 0) out.push_back({rat(sign_power(k) * form(v, w)), v, j, w, k});
  }
  return out;
}

Rational JoyceVA::ext_rank(const Coords& alpha, const Coords& beta) const {
  Rational s = 0;
  for (const auto& t : ext_ch(0, alpha, beta))
    s += t.coefficient * rat(coordinate(t.v, alpha)) * rat(coordinate(t.w, beta));
  return s;
}

HClass JoyceVA::mode_monomial(const UMonomial& u, long long n, const UMonomial& w) const {
  const Coords& alpha = u.sector;
  const Coords& beta = w.sector;
  const long long target = -n - 1;
  const long long shift = sector_form(alpha, beta);
  const long long a = hat_degree(u);
  const int prefactor = epsilon(alpha, beta) * sign_power(a * sector_form(beta, beta));

  struct Cap {
    Rational coefficient;
    long long zpow;
    int v, j, w, k;
  };
  // terms of sum_i (-1)^{i-1} (i-1)! z^{-i} ch_i that can act on u (x) w
  auto present = [](const UMonomial& m, int gen, int depth, bool odd) {
    return odd ? odd_position(m, Mode{gen, depth}) >= 0 : m.exponent(Mode{gen, depth}) > 0;
  };
  std::vector<Cap> terms;
  const int du = u.max_depth(), dw = w.max_depth();
  for (int i = 1; i <= du + dw; ++i)
    for (const auto& t : ext_ch(i, alpha, beta)) {
      if (t.j > du || t.k > dw) continue;
      if (t.j == 0 ? coordinate(t.v, alpha) == 0 : !present(u, t.v, t.j, is_odd(t.v))) continue;
      if (t.k == 0 ? coordinate(t.w, beta) == 0 : !present(w, t.w, t.k, is_odd(t.w))) continue;
      terms.push_back({t.coefficient * rat(sign_power(i - 1)) * factorial(i - 1), -i, t.v, t.j, t.w, t.k});
    }

  using Key = std::tuple<long long, UMonomial, UMonomial>;
  std::map<Key, Rational> current{{Key{0, u, w}, Rational(1)}};
  std::map<Key, Rational> total = current;
  for (int order = 1; !current.empty(); ++order) {
    std::map<Key, Rational> next;
    for (const auto& [key, c] : current) {
      const auto& [z, left, right] = key;
      for (const auto& t : terms) {
        UMonomial l = left, r = right;
        const bool odd_left = t.j > 0 && is_odd(t.v);
        const bool odd_right = t.k > 0 && is_odd(t.w);
        Rational coef = c * t.coefficient;
        // (L (x) R) cap (m1 (x) m2) = (-1)^{|m2| (|L| + |m1|)} (L cap m1) (x) (R cap m2)
        if (odd_right && ((left.odd.size() + (odd_left ? 1 : 0)) % 2 == 1)) coef = -coef;
        coef *= t.j == 0 ? rat(coordinate(t.v, alpha)) : cap_factor(l, Mode{t.v, t.j}, is_odd(t.v));
        if (coef == 0) continue;
        coef *= t.k == 0 ? rat(coordinate(t.w, beta)) : cap_factor(r, Mode{t.w, t.k}, is_odd(t.w));
        if (coef == 0) continue;
        auto& slot = next[Key{z + t.zpow, l, r}];
        slot += coef / order;
      }
    }
    std::erase_if(next, [](const auto& p) { return p.second == 0; });
    for (const auto& [key, c] : next) total[key] += c;
    current = std::move(next);
  }

  HClass out;
  std::map<std::pair<long long, UMonomial>, HClass> pushed;
  for (const auto& [key, c] : total) {
    if (c == 0) continue;
    const auto& [z, left, right] = key;
    const long long k = target - shift - z;
    if (k < 0) continue;
    auto it = pushed.find({k, left});
    if (it == pushed.end()) it = pushed.emplace(std::make_pair(k, left), psi_push(k, HClass(left, 1))).first;
    out += phi_push(sectors_, it->second, HClass(right, c));
  }
  return out * Rational(prefactor);
}

HClass JoyceVA::mode(const HClass& u, long long n, const HClass& w) const {
  HClass out;
  for (const auto& [mu, cu] : u)
    for (const auto& [mw, cw] : w) out += mode_monomial(mu, n, mw) * (cu * cw);
  return out;
}

HClass JoyceVA::generator_mode(int v, long long n, const HClass& eta) const {
  const Coords zero = sectors_.zero();
  HClass out;
  for (const auto& [m, c] : eta) {
    const int sign = is_odd(v) ? sign_power(sector_form(m.sector, m.sector)) : 1;
    const HClass one(m, c * sign);
    if (n <= -1) {
      out += phi_push(sectors_, u_generator(model_, zero, v, static_cast<int>(-n)), one);
      continue;
    }
    for (int w = 0; w < static_cast<int>(model_.kbasis.size()); ++w) {
      if (form(v, w) == 0) continue;
      MuMonomial mu = mu_generator(model_, m.sector, w, static_cast<int>(n));
      out += cap(one, mu) * (factorial(n) * rat(form(v, w)));
    }
  }
  return out;
}

std::string format_class(const VarietyModel& m, const HClass& c) {
  if (c.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [u, x] : c) {
    const Rational a = abs(x);
    out += first ? (x < 0 ? "-" : "") : (x < 0 ? " - " : " + ");
    first = false;
    std::vector<std::string> factors;
    Coords zero(u.sector.size(), 0);
    auto atom = [&](const Mode& f) {
      const Coords& s = factors.empty() ? u.sector : zero;
      return "u(" + sector_text(s) + "; " + m.kbasis[static_cast<std::size_t>(f.gen)].name + "," +
             std::to_string(f.depth) + ")";
    };
    for (const auto& [mode, e] : u.even)
      for (int k = 0; k < e; ++k) factors.push_back(atom(mode));
    for (const auto& mode : u.odd) factors.push_back(atom(mode));
    if (factors.empty()) factors.push_back(u.sector == zero ? "vac" : "e[" + sector_text(u.sector) + "]");
    std::string term = a == 1 ? "" : (a.get_den() == 1 ? a.get_num().get_str() : a.get_str()) + "*";
    for (std::size_t i = 0; i < factors.size(); ++i) term += (i ? "*" : "") + factors[i];
    out += term;
  }
  return out;
}

} // namespace vertexlab
