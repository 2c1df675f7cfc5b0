#include "vertexlab/vertex.hpp"

#include "vertexlab/parallel.hpp"

#include <array>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

namespace vertexlab {

std::string to_string(TensorSign s) {
  return s == TensorSign::printed ? "printed: (-1)^{p(u) chi+(beta,beta)}"
                                  : "standard: (-1)^{#odd(u) chi+(beta,beta)}";
}

LatticeVA::LatticeVA(FockSpace space, SignFunction epsilon, TensorSign sign)
    : space_(std::move(space)), eps_(std::move(epsilon)), sign_(sign) {}

namespace {

QVec to_qvec(const std::vector<long long>& v) {
  QVec q;
  q.reserve(v.size());
  for (long long x : v) q.push_back(rat(x));
  return q;
}

void add_to(Series& s, long long p, const FockState& x) {
  if (x.empty()) return;
  s[p] += x;
  if (s[p].empty()) s.erase(p);
}

int max_depth(const FockState& s) {
  int d = 0;
  for (const auto& [m, c] : s) d = std::max(d, m.max_depth());
  return d;
}

int max_weight(const FockState& s) {
  int w = 0;
  for (const auto& [m, c] : s) w = std::max(w, m.weight());
  return w;
}

/// e^alpha times s, for states whose odd content is absent or already accounted for.
FockState shift_sector(const FockSpace& space, const Coords& alpha, const FockState& s) {
  FockState out;
  for (const auto& [m, c] : s) {
    BasisMonomial r = m;
    r.sector = space.add(alpha, m.sector);
    out.add(r, c);
  }
  return out;
}

/// Expanded list of boson factors (with multiplicity) of u.
std::vector<Mode> boson_factors(const BasisMonomial& u) {
  std::vector<Mode> f;
  for (const auto& [mode, e] : u.even)
    for (int k = 0; k < e; ++k) f.push_back(mode);
  return f;
}

} // namespace

int LatticeVA::fusion_sign(const BasisMonomial& u, const Coords& beta) const {
  if (space_.sector_parity(beta) == 0) return 1;
  long long p = static_cast<long long>(u.odd.size());
  if (sign_ == TensorSign::printed) p += space_.sector_parity(u.sector);
  return sign_power(p);
}

FockState LatticeVA::translate(const FockState& s) const {
  FockState out;
  for (const auto& [m, c] : s) {
    const auto ia = space_.iota_free(m.sector);
    for (std::size_t v = 0; v < ia.size(); ++v) {
      if (ia[v] == 0) continue;
      BasisMonomial r = m;
      r.even.emplace_back(Mode{static_cast<int>(v), 1}, 1);
      out.add_raw(std::move(r), c * rat(ia[v]));
    }
    for (const auto& [mode, e] : m.even) {
      BasisMonomial r = m;
      remove_even(r, mode);
      r.even.emplace_back(Mode{mode.gen, mode.depth + 1}, 1);
      out.add_raw(std::move(r), c * rat(static_cast<long long>(e) * mode.depth));
    }
    for (std::size_t p = 0; p < m.odd.size(); ++p) {
      BasisMonomial r = m;
      ++r.odd[p].depth;
      out.add_raw(std::move(r), c * rat(m.odd[p].depth));
    }
  }
  return out;
}

Series LatticeVA::apply_gamma(const Coords& alpha, const Series& in, long long pmax) const {
  const QVec ia = to_qvec(space_.iota_free(alpha));
  Series out;
  for (const auto& [p, state] : in) {
    // split by sector so the cocycle and the z-shift are well defined
    std::map<Coords, FockState> by_sector;
    for (const auto& [m, c] : state) by_sector[m.sector].add(m, c);
    for (const auto& [beta, s] : by_sector) {
      const Rational eps = eps_(alpha, beta);
      const long long shift = space_.sector_pair(alpha, beta);
      // annihilation exponential: r R_r = -sum_j b_j(ia) R_{r-j}
      const int wmax = max_weight(s);
      std::vector<FockState> ann{s * eps};
      for (int r = 1; r <= wmax; ++r) {
        FockState acc;
        for (int j = 1; j <= r; ++j) acc += b_mode(space_, ia, j, ann[static_cast<std::size_t>(r - j)]);
        ann.push_back(acc * (Rational(-1) / r));
      }
      for (int r = 0; r <= wmax; ++r) {
        const auto& base_state = ann[static_cast<std::size_t>(r)];
        if (base_state.empty()) continue;
        const long long base = p + shift - r;
        if (base > pmax) continue;
        // creation exponential: q E_q = sum_k b_{-k}(ia) E_{q-k}
        std::vector<FockState> cre{base_state};
        add_to(out, base, shift_sector(space_, alpha, base_state));
        for (long long q = 1; base + q <= pmax; ++q) {
          FockState acc;
          for (long long k = 1; k <= q; ++k) acc += b_mode(space_, ia, -k, cre[static_cast<std::size_t>(q - k)]);
          acc *= Rational(1) / rat(q);
          cre.push_back(acc);
          add_to(out, base + q, shift_sector(space_, alpha, acc));
        }
      }
    }
  }
  return out;
}

FockState LatticeVA::gamma_mode(const Coords& alpha, long long n, const FockState& s) const {
  const long long target = -n - 1;
  Series in;
  in[0] = s;
  Series out = apply_gamma(space_.sectors().canonical(alpha), in, target);
  auto it = out.find(target);
  return it == out.end() ? FockState{} : it->second;
}

Series LatticeVA::boson_part(const BasisMonomial& u, const BasisMonomial& wb, long long pmax) const {
  const auto factors = boson_factors(u);
  const std::size_t L = factors.size();
  Series total;
  for (std::size_t mask = 0; mask < (std::size_t{1} << L); ++mask) {
    // bits set in mask take the creation part; the rest act first as annihilators
    Series x;
    x[0] = FockState(wb, 1);
    for (std::size_t s = 0; s < L; ++s) {
      if (mask & (std::size_t{1} << s)) continue;
      const Mode f = factors[s];
      Series next;
      for (const auto& [p, state] : x) {
        const int d = max_depth(state);
        for (int m = 0; m <= d; ++m) {
          const Rational c = binomial(-m - 1, f.depth - 1);
          add_to(next, p - m - f.depth, b_mode(space_, f.gen, m, state) * c);
        }
      }
      x = std::move(next);
    }
    x = apply_gamma(u.sector, x, pmax);
    for (std::size_t s = 0; s < L; ++s) {
      if (!(mask & (std::size_t{1} << s))) continue;
      const Mode f = factors[s];
      Series next;
      for (const auto& [p, state] : x)
        for (long long m = f.depth; p + m - f.depth <= pmax; ++m)
          add_to(next, p + m - f.depth, b_mode(space_, f.gen, -m, state) * binomial(m - 1, f.depth - 1));
      x = std::move(next);
    }
    for (const auto& [p, state] : x) add_to(total, p, state);
  }
  return total;
}

Series LatticeVA::fermion_part(const BasisMonomial& u, const BasisMonomial& wf, long long pmax) const {
  const auto& factors = u.odd;
  const std::size_t k = factors.size();
  Series total;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    // moving the creation parts (mask bits) left of the annihilation parts
    long long inversions = 0;
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t t = s + 1; t < k; ++t)
        if (!(mask & (std::size_t{1} << s)) && (mask & (std::size_t{1} << t))) ++inversions;
    Series x;
    x[0] = FockState(wf, sign_power(inversions));
    for (std::size_t s = k; s-- > 0;) {
      if (mask & (std::size_t{1} << s)) continue;
      const Mode f = factors[s];
      Series next;
      for (const auto& [p, state] : x) {
        const int d = max_depth(state);
        for (int m = 1; m <= d; ++m)
          add_to(next, p - m - f.depth, f_mode(space_, f.gen, m, state) * binomial(-m - 1, f.depth - 1));
      }
      x = std::move(next);
    }
    for (std::size_t s = k; s-- > 0;) {
      if (!(mask & (std::size_t{1} << s))) continue;
      const Mode f = factors[s];
      Series next;
      for (const auto& [p, state] : x)
        for (long long m = f.depth; p + m - f.depth <= pmax; ++m)
          add_to(next, p + m - f.depth, f_mode(space_, f.gen, -m, state) * binomial(m - 1, f.depth - 1));
      x = std::move(next);
    }
    for (const auto& [p, state] : x) add_to(total, p, state);
  }
  return total;
}

FockState LatticeVA::y_monomial(const BasisMonomial& u, long long n, const BasisMonomial& w) const {
  BasisMonomial wb;
  wb.sector = w.sector;
  wb.even = w.even;
  BasisMonomial wf;
  wf.sector = space_.sectors().zero();
  wf.odd = w.odd;

  long long boson_low = space_.sector_pair(u.sector, w.sector) - wb.weight();
  for (const auto& [mode, e] : u.even) boson_low -= static_cast<long long>(mode.depth) * e;
  long long fermion_low = -wf.weight();
  for (const auto& mode : u.odd) fermion_low -= mode.depth;

  const long long target = -n - 1;
  if (target < boson_low + fermion_low) return {};
  const Series bos = boson_part(u, wb, target - fermion_low);
  const Series fer = fermion_part(u, wf, target - boson_low);
  FockState out;
  for (const auto& [p, b] : bos) {
    auto it = fer.find(target - p);
    if (it == fer.end()) continue;
    out += space_.multiply(b, it->second);
  }
  return out * Rational(fusion_sign(u, w.sector));
}

FockState LatticeVA::y_mode(const FockState& u, long long n, const FockState& w) const {
  FockState out;
  for (const auto& [mu, cu] : u)
    for (const auto& [mw, cw] : w) out += y_monomial(mu, n, mw) * (cu * cw);
  return out;
}

long long LatticeVA::mode_upper_bound(const BasisMonomial& u, const BasisMonomial& w) const {
  return u.weight() + w.weight() - space_.sector_pair(u.sector, w.sector) - 1;
}

long long LatticeVA::mode_upper_bound(const FockState& u, const FockState& w) const {
  long long best = std::numeric_limits<int>::min();
  for (const auto& [mu, cu] : u)
    for (const auto& [mw, cw] : w) best = std::max(best, mode_upper_bound(mu, mw));
  return best;
}

int LatticeVA::parity(const FockState& s) const {
  std::optional<int> p;
  for (const auto& [m, c] : s) {
    int q = vertexlab::parity(space_, m);
    if (p && *p != q) throw std::invalid_argument("state has mixed parity");
    p = q;
  }
  return p.value_or(0);
}

FockState LatticeVA::y_peeled(const BasisMonomial& u, long long n, const BasisMonomial& w) const {
  if (u.odd.empty() && u.even.empty())
    return gamma_mode(u.sector, n, FockState(w, 1)) * Rational(fusion_sign(u, w.sector));

  BasisMonomial rest = u;
  bool odd = !u.odd.empty();
  Mode a;
  Rational lead = 1;
  if (odd) {
    // e^alpha B f_x F' = (-1)^{chi+(alpha,alpha)} f_{-k}(x) (e^alpha B F')
    a = u.odd.front();
    rest.odd.erase(rest.odd.begin());
    lead = sign_power(space_.sector_parity(u.sector));
  } else {
    a = u.even.front().first;
    remove_even(rest, a);
  }
  auto act = [&](long long m, const FockState& s) {
    return odd ? f_mode(space_, a.gen, m, s) : b_mode(space_, a.gen, m, s);
  };
  auto apply_rest = [&](long long j, const FockState& s) {
    FockState out;
    for (const auto& [m, c] : s) out += y_peeled(rest, j, m) * c;
    return out;
  };

  const long long k = a.depth;
  const FockState wstate(w, 1);
  FockState out;
  // creation half of the derivative field sits to the left
  const long long bound = mode_upper_bound(rest, w);
  for (long long m = -1; n - m - k <= bound; --m) {
    const FockState inner = y_peeled(rest, n - m - k, w);
    if (!inner.empty()) out += act(m, inner) * binomial(-m - 1, k - 1);
  }
  const int swap = odd ? sign_power(vertexlab::parity(space_, rest)) : 1;
  for (long long m = 0; m <= w.max_depth(); ++m) {
    const FockState moved = act(m, wstate);
    if (!moved.empty()) out += apply_rest(n - m - k, moved) * (binomial(-m - 1, k - 1) * swap);
  }
  return out * lead;
}

FockState LatticeVA::y_mode_reconstructed(const FockState& u, long long n, const FockState& w) const {
  FockState out;
  for (const auto& [mu, cu] : u)
    for (const auto& [mw, cw] : w) out += y_peeled(mu, n, mw) * (cu * cw);
  return out;
}

namespace {

/// Memoized u_n(w) for fixed u and w.
class ModeTable {
public:
  ModeTable(const LatticeVA& va, FockState u, FockState w)
      : va_(va), u_(std::move(u)), w_(std::move(w)), bound_(va.mode_upper_bound(u_, w_)) {}
  const FockState& operator()(long long n) {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    FockState r = n > bound_ ? FockState{} : va_.y_mode(u_, n, w_);
    return cache_.emplace(n, std::move(r)).first->second;
  }
  long long bound() const { return bound_; }

private:
  const LatticeVA& va_;
  FockState u_, w_;
  long long bound_;
  std::map<long long, FockState> cache_;
};

std::string mismatch(const FockSpace& space, const std::string& where, const FockState& lhs, const FockState& rhs) {
  return where + ": lhs = " + format_state(space, lhs) + ", rhs = " + format_state(space, rhs);
}

} // namespace

AxiomReport check_vacuum_creation(const LatticeVA& va, const FockState& u, int window) {
  AxiomReport rep;
  rep.axiom = "vacuum-creation";
  const auto& space = va.space();
  const FockState vac = space.vacuum();
  auto fail = [&rep](std::string d) {
    if (rep.ok) rep.detail = std::move(d);
    rep.ok = false;
  };
  for (long long n = -window - 1; n <= window; ++n) {
    ++rep.comparisons;
    FockState got = va.y_mode(vac, n, u);
    FockState want = n == -1 ? u : FockState{};
    if (got != want) fail(mismatch(space, "vac_" + std::to_string(n) + " u", got, want));
  }
  FockState tk = u;
  for (int k = 0; k <= window; ++k) {
    ++rep.comparisons;
    FockState got = va.y_mode(u, -k - 1, vac);
    FockState want = tk * (1 / factorial(k));
    if (got != want) fail(mismatch(space, "u_" + std::to_string(-k - 1) + " vac", got, want));
    tk = va.translate(tk);
  }
  for (long long n = 0; n <= window; ++n) {
    ++rep.comparisons;
    FockState got = va.y_mode(u, n, vac);
    if (!got.empty()) fail(mismatch(space, "u_" + std::to_string(n) + " vac", got, {}));
  }
  return rep;
}

AxiomReport check_skew(const LatticeVA& va, const FockState& u, const FockState& w, int window) {
  AxiomReport rep;
  rep.axiom = "skew-symmetry";
  const auto& space = va.space();
  const int sign = sign_power(static_cast<long long>(va.parity(u)) * va.parity(w));
  ModeTable wu(va, w, u);
  for (long long m = -window; m <= window; ++m) {
    ++rep.comparisons;
    FockState lhs = va.y_mode(u, m, w);
    FockState rhs;
    for (long long k = 0; m + k <= wu.bound(); ++k) {
      FockState t = wu(m + k);
      for (long long r = 0; r < k; ++r) t = va.translate(t);
      rhs += t * (Rational(sign_power(m + 1 + k)) / factorial(k));
    }
    rhs *= Rational(sign);
    if (lhs != rhs && rep.ok) {
      rep.ok = false;
      rep.detail = mismatch(space, "mode " + std::to_string(m), lhs, rhs);
    }
  }
  return rep;
}

AxiomReport check_weak_assoc(const LatticeVA& va, const FockState& u, const FockState& v, const FockState& w,
                             int n_max, int window) {
  AxiomReport rep;
  rep.axiom = "weak-associativity";
  const auto& space = va.space();
  ModeTable uv(va, u, v);
  ModeTable vw(va, v, w);
  std::map<long long, ModeTable> left;  // (u_p v)_q w keyed by p
  std::map<std::pair<long long, long long>, FockState> right;  // u_k (v_l w)
  auto lhs_term = [&](long long p, long long q) -> FockState {
    if (p > uv.bound()) return {};
    auto it = left.find(p);
    if (it == left.end()) it = left.emplace(p, ModeTable(va, uv(p), w)).first;
    return it->second(q);
  };
  auto rhs_term = [&](long long k, long long l) -> FockState {
    auto key = std::make_pair(k, l);
    auto it = right.find(key);
    if (it == right.end()) it = right.emplace(key, va.y_mode(u, k, vw(l))).first;
    return it->second;
  };
  std::string first_failure;
  for (int N = 0; N <= n_max; ++N) {
    bool ok = true;
    for (long long a = -window; a <= window && ok; ++a)
      for (long long b = -window; b <= window && ok; ++b) {
        ++rep.comparisons;
        FockState lhs;
        for (long long j = 0; j <= N; ++j) lhs += lhs_term(j - a - 1, N - j - b - 1) * binomial(N, j);
        FockState rhs;
        for (long long l = -b - 1; l <= vw.bound(); ++l) {
          const long long j = b + l + 1;
          const long long k = N - 2 - a - b - l;
          rhs += rhs_term(k, l) * binomial(N - k - 1, j);
        }
        if (lhs != rhs) {
          ok = false;
          if (first_failure.empty())
            first_failure = mismatch(space, "N=" + std::to_string(N) + " z1^" + std::to_string(a) + " z2^" +
                                                std::to_string(b), lhs, rhs);
        }
      }
    if (ok) {
      rep.minimal_n = N;
      return rep;
    }
  }
  rep.ok = false;
  rep.detail = "no N <= " + std::to_string(n_max) + "; first failure " + first_failure;
  return rep;
}

AxiomReport check_locality(const LatticeVA& va, const FockState& u, const FockState& v,
                           const std::vector<FockState>& probes, int n_max, int window) {
  AxiomReport rep;
  rep.axiom = "locality";
  const auto& space = va.space();
  const int sign = sign_power(static_cast<long long>(va.parity(u)) * va.parity(v));
  struct ProbeTables {
    ModeTable ux, vx;
    std::map<std::pair<long long, long long>, FockState> uv, vu;
  };
  std::vector<ProbeTables> tables;
  for (const auto& x : probes) tables.push_back({ModeTable(va, u, x), ModeTable(va, v, x), {}, {}});
  auto bracket = [&](ProbeTables& t, long long m, long long l) {
    auto key = std::make_pair(m, l);
    auto it = t.uv.find(key);
    if (it == t.uv.end()) it = t.uv.emplace(key, va.y_mode(u, m, t.vx(l))).first;
    auto jt = t.vu.find(key);
    if (jt == t.vu.end()) jt = t.vu.emplace(key, va.y_mode(v, l, t.ux(m))).first;
    return it->second - jt->second * Rational(sign);
  };
  std::string first_failure;
  for (int N = 0; N <= n_max; ++N) {
    bool ok = true;
    for (std::size_t x = 0; x < tables.size() && ok; ++x)
      for (long long a = -window; a <= window && ok; ++a)
        for (long long b = -window; b <= window && ok; ++b) {
          ++rep.comparisons;
          FockState acc;
          for (long long j = 0; j <= N; ++j)
            acc += bracket(tables[x], j - a - 1, N - j - b - 1) * (binomial(N, j) * sign_power(N - j));
          if (!acc.empty()) {
            ok = false;
            if (first_failure.empty())
              first_failure = mismatch(space, "N=" + std::to_string(N) + " probe " + std::to_string(x) + " z^" +
                                                  std::to_string(a) + " x^" + std::to_string(b), acc, {});
          }
        }
    if (ok) {
      rep.minimal_n = N;
      return rep;
    }
  }
  rep.ok = false;
  rep.detail = "no N <= " + std::to_string(n_max) + "; first failure " + first_failure;
  return rep;
}

} // namespace vertexlab

namespace vertexlab {

namespace {

/// Folds per-sample reports into one, keeping the first failure and the largest exponent found.
AxiomReport fold(const std::string& name, const std::vector<AxiomReport>& parts) {
  AxiomReport out;
  out.axiom = name;
  for (const auto& r : parts) {
    out.comparisons += r.comparisons;
    if (r.minimal_n && (!out.minimal_n || *r.minimal_n > *out.minimal_n)) out.minimal_n = r.minimal_n;
    if (!r.ok && out.ok) {
      out.ok = false;
      out.detail = r.detail;
    }
  }
  return out;
}

} // namespace

AxiomSuiteReport run_axiom_suite(const LatticeVA& va, const AxiomSuiteOptions& options) {
  const FockSpace& space = va.space();
  const auto states = window_basis(space, options.sector_window, options.depth);
  std::vector<FockState> light;
  for (const auto& s : states)
    if (s.begin()->first.weight() <= 1) light.push_back(s);

  std::mt19937_64 rng(options.seed);
  auto draw = [&](const std::vector<FockState>& from) -> const FockState& {
    std::uniform_int_distribution<std::size_t> pick(0, from.size() - 1);
    return from[pick(rng)];
  };
  std::vector<std::pair<FockState, FockState>> pairs;
  for (int k = 0; k < options.samples; ++k) {
    const FockState& u = draw(states);
    pairs.emplace_back(u, draw(states));
  }
  std::vector<std::array<FockState, 3>> triples;
  for (int k = 0; k < options.triples; ++k) {
    const FockState& u = draw(light);
    const FockState& v = draw(light);
    triples.push_back({u, v, draw(states)});
  }
  // Locality on every pair of generating fields; probes are the vacuum and one drawn state.
  std::vector<FockState> gens;
  for (int v = 0; v < space.even_rank(); ++v) gens.push_back(b_mode(space, v, -1, space.vacuum()));
  for (int w = 0; w < space.odd_rank(); ++w) gens.push_back(f_mode(space, w, -1, space.vacuum()));
  const auto& group = space.sectors();
  for (std::size_t c = 0; c < group.size(); ++c) {
    gens.push_back(space.exp_sector(group.generator(c)));
    if (static_cast<int>(c) < group.free_rank()) gens.push_back(space.exp_sector(group.negate(group.generator(c))));
  }
  std::vector<std::array<FockState, 4>> local;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j) local.push_back({gens[i], gens[j], draw(states), space.vacuum()});
  AxiomSuiteReport report;
  report.window_states = states.size();

  std::vector<AxiomReport> vac(states.size());
  parallel_for(states.size(), [&](std::size_t k) { vac[k] = check_vacuum_creation(va, states[k], options.max_z); });
  report.axioms.push_back(fold("vacuum", vac));

  std::vector<AxiomReport> skew(pairs.size()), recon(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto& [u, w] = pairs[k];
    skew[k] = check_skew(va, u, w, options.max_z);
    AxiomReport& r = recon[k];
    for (long long n = -options.max_z; n <= options.max_z; ++n) {
      ++r.comparisons;
      if (va.y_mode(u, n, w) == va.y_mode_reconstructed(u, n, w)) continue;
      if (r.ok)
        r.detail = "u=" + format_state(space, u) + " w=" + format_state(space, w) + " n=" + std::to_string(n) +
                   ": field formula and reconstruction differ";
      r.ok = false;
    }
  });
  report.axioms.push_back(fold("skew_symmetry", skew));
  report.axioms.push_back(fold("reconstruction", recon));

  std::vector<AxiomReport> assoc(triples.size());
  parallel_for(triples.size(), [&](std::size_t k) {
    const auto& [u, v, w] = triples[k];
    assoc[k] = check_weak_assoc(va, u, v, w, options.n_max, options.search_window);
  });
  report.axioms.push_back(fold("weak_associativity", assoc));

  std::vector<AxiomReport> loc(local.size());
  parallel_for(local.size(), [&](std::size_t k) {
    const auto& [u, v, x, vac0] = local[k];
    loc[k] = check_locality(va, u, v, {x, vac0}, options.n_max, options.search_window);
  });
  report.axioms.push_back(fold("locality", loc));
  return report;
}

} // namespace vertexlab
