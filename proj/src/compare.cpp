#include "vertexlab/compare.hpp"

#include "vertexlab/parallel.hpp"

#include <random>
#include <stdexcept>

namespace vertexlab {

namespace {

/// Tally of one slot of a parallel sweep.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::optional<Divergence> first;

  void record(bool ok, const std::function<Divergence()>& describe) {
    ++checks;
    if (ok) return;
    ++failures;
    if (!first) first = describe();
  }
};

void merge(const std::vector<Tally>& slots, std::size_t& counter, CompareReport& report) {
  for (const auto& t : slots) {
    counter += t.checks;
    report.failures += t.failures;
    if (t.first && !report.first_divergence) report.first_divergence = t.first;
  }
}

FockState apply_eta(const SignMap& eta, const FockState& s) {
  FockState out;
  for (const auto& [m, c] : s) {
    auto it = eta.find(m.sector);
    if (it == eta.end()) throw WindowExceeded("sector outside the domain of eta");
    out.add(m, it->second > 0 ? c : Rational(-c));
  }
  return out;
}

} // namespace

SideMap::SideMap(const VarietyModel& m) {
  for (std::size_t g = 0; g < m.kbasis.size(); ++g) {
    auto& list = m.kbasis[g].parity == 0 ? even_ : odd_;
    locals_.emplace_back(m.kbasis[g].parity, static_cast<int>(list.size()));
    list.push_back(static_cast<int>(g));
  }
}

int SideMap::global(int parity, int local) const {
  const auto& list = parity == 0 ? even_ : odd_;
  return list.at(static_cast<std::size_t>(local));
}

FockState SideMap::to_fock(const HClass& c) const {
  FockState out;
  for (const auto& [m, coef] : c) {
    BasisMonomial b;
    b.sector = m.sector;
    for (const auto& [mode, e] : m.even) {
      auto [p, l] = local(mode.gen);
      if (p != 0) throw std::logic_error("odd generator stored as even factor");
      b.even.emplace_back(Mode{l, mode.depth}, e);
    }
    for (const auto& mode : m.odd) {
      auto [p, l] = local(mode.gen);
      if (p != 1) throw std::logic_error("even generator stored as odd factor");
      b.odd.push_back(Mode{l, mode.depth});
    }
    out.add_raw(b, coef);
  }
  return out;
}

HClass SideMap::to_hclass(const FockState& s) const {
  HClass out;
  for (const auto& [m, coef] : s) {
    UMonomial u;
    u.sector = m.sector;
    for (const auto& [mode, e] : m.even) u.even.emplace_back(Mode{global(0, mode.gen), mode.depth}, e);
    for (const auto& mode : m.odd) u.odd.push_back(Mode{global(1, mode.gen), mode.depth});
    out.add_raw(u, coef);
  }
  return out;
}

ComparisonPair::ComparisonPair(const VarietyModel& m, Variant variant, SignFunction eps, TensorSign sign)
    : map(m), abstract(FockSpace(superlattice_of(m, variant)), eps, sign), geometric(m, variant, eps) {}

std::vector<HClass> window_basis(const JoyceVA& geo, int sector_window, int depth) {
  std::vector<UMonomial> monos;
  for (const auto& a : window_elements(geo.sectors(), sector_window))
    enumerate_monomials<HomologyTag>(a, geo.model().even_indices(), geo.model().odd_indices(), depth, monos);
  std::vector<HClass> out;
  out.reserve(monos.size());
  for (const auto& m : monos) out.emplace_back(m, Rational(1));
  return out;
}

CompareReport compare_fields(const VarietyModel& m, Variant variant, const SignFunction& eps,
                             const CompareOptions& options) {
  const ComparisonPair pair(m, variant, eps, options.sign);
  const auto& geo = pair.geometric;
  const auto& va = pair.abstract;
  const auto basis = window_basis(geo, options.sector_window, options.depth);
  const auto& fmt = [&](const HClass& c) { return format_class(m, c); };

  CompareReport report;
  report.variety = m.name;
  report.variant = variant;
  report.sign = options.sign;
  report.window_states = basis.size();
  report.even_generators = m.even_indices().size();
  report.odd_generators = m.odd_indices().size();
  const Coords origin = geo.sectors().zero();

  auto field_sweep = [&](const std::vector<HClass>& fields, const std::string& check, bool closed_form,
                         int max_depth, int max_mode, std::size_t& counter) {
    std::vector<const HClass*> states;
    for (const auto& w : basis)
      if (w.begin()->first.weight() <= max_depth) states.push_back(&w);
    std::vector<Tally> main(states.size()), closed(states.size());
    parallel_for(states.size(), [&](std::size_t k) {
      const HClass& w = *states[k];
      const FockState fw = pair.map.to_fock(w);
      for (std::size_t f = 0; f < fields.size(); ++f) {
        const HClass& u = fields[f];
        const FockState fu = pair.map.to_fock(u);
        for (long long n = -max_mode; n <= max_mode; ++n) {
          HClass a = pair.map.to_hclass(va.y_mode(fu, n, fw));
          HClass g = geo.mode(u, n, w);
          main[k].record(a == g, [&] { return Divergence{check, fmt(u), fmt(w), n, fmt(a), fmt(g)}; });
          if (closed_form) {
            int v = u.begin()->first.even.empty() ? u.begin()->first.odd.front().gen
                                                  : u.begin()->first.even.front().first.gen;
            HClass c = geo.generator_mode(v, n, w);
            closed[k].record(c == g, [&] { return Divergence{"closed_form", fmt(u), fmt(w), n, fmt(c), fmt(g)}; });
          }
        }
      }
    });
    merge(main, counter, report);
    if (closed_form) merge(closed, report.closed_form_checks, report);
  };

  std::vector<HClass> generators;
  for (std::size_t v = 0; v < m.kbasis.size(); ++v)
    generators.push_back(u_generator(m, origin, static_cast<int>(v), 1));
  field_sweep(generators, "generator", true, options.depth, options.max_mode, report.generator_checks);

  std::vector<HClass> units;
  const auto& group = geo.sectors();
  for (std::size_t c = 0; c < group.size(); ++c) {
    Coords e = group.zero();
    e[c] = 1;
    units.push_back(unit_class(group.canonical(e)));
    if (static_cast<int>(c) < group.free_rank()) {
      e[c] = -1;
      units.push_back(unit_class(group.canonical(e)));
    }
  }
  field_sweep(units, "sector_field", false, options.sector_field_depth, options.sector_field_max_mode,
              report.sector_field_checks);

  // Each window monomial is reached from the vacuum: a sector-unit mode, then generator creation modes.
  {
    std::vector<Tally> slots(basis.size());
    parallel_for(basis.size(), [&](std::size_t k) {
      const UMonomial& target = basis[k].begin()->first;
      std::vector<std::pair<Mode, bool>> factors;
      for (const auto& [mode, e] : target.even)
        for (int r = 0; r < e; ++r) factors.emplace_back(mode, false);
      for (const auto& mode : target.odd) factors.emplace_back(mode, true);
      const HClass vac = unit_class(origin), unit = unit_class(target.sector);
      HClass g = geo.mode(unit, -1, vac);
      FockState a = va.y_mode(pair.map.to_fock(unit), -1, pair.map.to_fock(vac));
      for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        HClass u = u_generator(m, origin, it->first.gen, 1);
        g = geo.mode(u, -it->first.depth, g);
        a = va.y_mode(pair.map.to_fock(u), -it->first.depth, a);
      }
      HClass ga = pair.map.to_hclass(a);
      bool ok = g.size() == 1 && g.begin()->first == target && ga == g;
      slots[k].record(ok, [&] { return Divergence{"spanning", "", fmt(basis[k]), 0, fmt(ga), fmt(g)}; });
    });
    merge(slots, report.spanning_checks, report);
  }

  // Random pairs whose first entry is neither a generator nor a sector unit.
  {
    std::mt19937_64 rng(options.seed);
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const UMonomial& u = basis[k].begin()->first;
      bool unit = u.length() == 0;
      bool generator = u.length() == 1 && u.weight() == 1 && u.sector == origin;
      if (!unit && !generator) candidates.push_back(k);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (!candidates.empty()) {
      std::uniform_int_distribution<std::size_t> pick_u(0, candidates.size() - 1), pick_w(0, basis.size() - 1);
      for (int attempt = 0; static_cast<int>(pairs.size()) < options.random_pairs && attempt < 100000; ++attempt) {
        std::size_t iu = candidates[pick_u(rng)], iw = pick_w(rng);
        const Coords& a = basis[iu].begin()->first.sector;
        const Coords& b = basis[iw].begin()->first.sector;
        if (geo.sector_form(a, b) >= options.random_pair_min_form) pairs.emplace_back(iu, iw);
      }
    }
    std::vector<Tally> slots(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
      const HClass& u = basis[pairs[k].first];
      const HClass& w = basis[pairs[k].second];
      const FockState fu = pair.map.to_fock(u), fw = pair.map.to_fock(w);
      for (long long n = -options.max_mode; n <= options.max_mode; ++n) {
        HClass a = pair.map.to_hclass(va.y_mode(fu, n, fw));
        HClass g = geo.mode(u, n, w);
        slots[k].record(a == g, [&] { return Divergence{"random_pair", fmt(u), fmt(w), n, fmt(a), fmt(g)}; });
      }
    });
    merge(slots, report.random_pair_checks, report);
  }
  return report;
}

SignMap random_eta(const FGAbelianGroup& group, int window, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  SignMap eta;
  for (const auto& a : window_elements(group, window)) eta[a] = coin(rng) ? 1 : -1;
  eta[group.zero()] = 1;
  return eta;
}

IndependenceReport epsilon_independence(const SuperLattice& lattice, const SignCocycle& eps, const SignMap& eta,
                                        int max_mode, int depth, int extra_fields, std::uint64_t seed) {
  const FockSpace space(lattice);
  const LatticeVA original(space, eps.function());
  const LatticeVA twisted(space, twist(eps, eta).function());
  const auto basis = window_basis(space, 1, depth);

  std::vector<FockState> fields;
  for (int v = 0; v < space.even_rank(); ++v) fields.push_back(b_mode(space, v, -1, space.vacuum()));
  for (int w = 0; w < space.odd_rank(); ++w) fields.push_back(f_mode(space, w, -1, space.vacuum()));
  const auto& group = space.sectors();
  for (std::size_t c = 0; c < group.size(); ++c) {
    Coords e = group.zero();
    e[c] = 1;
    fields.push_back(space.exp_sector(group.canonical(e)));
    if (static_cast<int>(c) < group.free_rank()) {
      e[c] = -1;
      fields.push_back(space.exp_sector(group.canonical(e)));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int r = 0; r < extra_fields; ++r) fields.push_back(basis[pick(rng)]);

  std::vector<std::size_t> checks(basis.size()), failures(basis.size());
  std::vector<std::string> details(basis.size());
  parallel_for(basis.size(), [&](std::size_t k) {
    const FockState& w = basis[k];
    const FockState tw = apply_eta(eta, w);
    for (const auto& u : fields) {
      const FockState tu = apply_eta(eta, u);
      for (long long n = -max_mode; n <= max_mode; ++n) {
        ++checks[k];
        FockState lhs = apply_eta(eta, original.y_mode(u, n, w));
        FockState rhs = twisted.y_mode(tu, n, tw);
        if (lhs == rhs) continue;
        ++failures[k];
        if (details[k].empty())
          details[k] = "u=" + format_state(space, u) + " n=" + std::to_string(n) + " w=" + format_state(space, w) +
                       ": " + format_state(space, lhs) + " vs " + format_state(space, rhs);
      }
    }
  });
  IndependenceReport report;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    report.checks += checks[k];
    report.failures += failures[k];
    if (report.detail.empty()) report.detail = details[k];
  }
  return report;
}

IndependenceReport epsilon_independence(const SuperLattice& lattice, const SignCocycle& eps,
                                        const SignFunction& eps2, int window, int max_mode, int depth) {
  auto eta = cohomologous(eps.function(), eps2, lattice, window);
  if (!eta) {
    IndependenceReport report;
    report.refused = true;
    report.detail = "cocycles are not cohomologous on the window; no intertwiner exists";
    return report;
  }
  return epsilon_independence(lattice, eps, *eta, max_mode, depth);
}

} // namespace vertexlab
