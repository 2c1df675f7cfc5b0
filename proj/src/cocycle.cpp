#include "vertexlab/cocycle.hpp"

#include "vertexlab/rational.hpp"

#include <boost/dynamic_bitset.hpp>

namespace vertexlab {

SignCocycle::SignCocycle(FGAbelianGroup group, std::vector<std::vector<int>> signs)
    : group_(std::move(group)), signs_(std::move(signs)) {
  if (signs_.size() != group_.size()) throw DimensionMismatch("sign matrix has wrong size");
  for (const auto& row : signs_) {
    if (row.size() != group_.size()) throw DimensionMismatch("sign matrix is not square");
    for (int s : row)
      if (s != 1 && s != -1) throw std::invalid_argument("sign matrix entries must be +1 or -1");
  }
}

int SignCocycle::operator()(const Coords& a, const Coords& b) const {
  group_.check(a);
  group_.check(b);
  long long odd = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] % 2 == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (signs_[i][j] < 0 && b[j] % 2 != 0) ++odd;
  }
  return sign_power(odd);
}

SignFunction SignCocycle::function() const {
  return [self = *this](const Coords& a, const Coords& b) { return self(a, b); };
}

void SignTable::set(const Coords& a, const Coords& b, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("table entries must be +1 or -1");
  entries_[{group_.canonical(a), group_.canonical(b)}] = sign;
}

bool SignTable::contains(const Coords& a, const Coords& b) const {
  return entries_.count({group_.canonical(a), group_.canonical(b)}) != 0;
}

int SignTable::operator()(const Coords& a, const Coords& b) const {
  auto it = entries_.find({group_.canonical(a), group_.canonical(b)});
  if (it == entries_.end()) throw WindowExceeded("sign table has no entry for this pair");
  return it->second;
}

SignFunction SignTable::function() const {
  return [self = *this](const Coords& a, const Coords& b) { return self(a, b); };
}

IntMatrix bplus_gram(const SuperLattice& lattice) {
  const auto n = lattice.bplus.size();
  std::vector<Coords> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(apply_iota(lattice, lattice.bplus.generator(i)));
  IntMatrix g(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = pair(lattice.even, images[i], images[j]);
  return g;
}

namespace {

long long gram_pair(const IntMatrix& g, const Coords& a, const Coords& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * g[i][j] * b[j];
  }
  return s;
}

} // namespace

long long commutation_exponent(const IntMatrix& gram, const Coords& a, const Coords& b) {
  return gram_pair(gram, a, b) + gram_pair(gram, a, a) * gram_pair(gram, b, b);
}

SignCocycle build_epsilon(const SuperLattice& lattice) {
  const auto& g = lattice.bplus;
  const IntMatrix gram = bplus_gram(lattice);
  const auto r = static_cast<std::size_t>(g.free_rank());
  // exponents on torsion generators must be even, or the closed form depends on the representative
  for (std::size_t t = r; t < g.size(); ++t)
    for (std::size_t x = 0; x < g.size(); ++x)
      if (gram[t][x] % 2 != 0 || gram[x][t] % 2 != 0)
        throw TorsionObstruction("torsion generator " + std::to_string(t) +
                                 " pairs oddly with generator " + std::to_string(x));
  std::vector<std::vector<int>> s(g.size(), std::vector<int>(g.size(), 1));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) s[i][j] = sign_power(gram[i][j] + gram[i][i] * gram[j][j]);
  return SignCocycle(g, std::move(s));
}

std::vector<Coords> window_elements(const FGAbelianGroup& group, int window) {
  std::vector<Coords> out;
  Coords x = group.zero();
  const auto r = static_cast<std::size_t>(group.free_rank());
  std::vector<long long> lo(group.size()), hi(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) {
    lo[i] = i < r ? -window : 0;
    hi[i] = i < r ? window : group.torsion_orders()[i - r] - 1;
    x[i] = lo[i];
  }
  while (true) {
    out.push_back(x);
    std::size_t k = 0;
    while (k < x.size() && x[k] == hi[k]) {
      x[k] = lo[k];
      ++k;
    }
    if (k == x.size()) break;
    ++x[k];
  }
  return out;
}

namespace {

template <class Lookup>
CocycleReport verify_impl(const Lookup& eps, const SuperLattice& lattice, int window) {
  CocycleReport rep;
  const auto& g = lattice.bplus;
  const IntMatrix gram = bplus_gram(lattice);
  const auto elems = window_elements(g, window);
  const Coords zero = g.zero();
  auto record = [&rep](std::string rule, std::vector<Coords> args) {
    ++rep.total_violations;
    if (rep.violations.size() < 10) rep.violations.push_back({std::move(rule), std::move(args)});
  };
  for (const auto& a : elems) {
    auto e0 = eps(a, zero), e1 = eps(zero, a);
    if ((e0 && *e0 != 1) || (e1 && *e1 != 1)) record("normalization", {a});
  }
  for (const auto& a : elems)
    for (const auto& b : elems) {
      auto ab = eps(a, b), ba = eps(b, a);
      if (ab && ba && *ab != sign_power(commutation_exponent(gram, a, b)) * *ba) record("commutation", {a, b});
    }
  // group 2-cocycle identity eps(a, b) eps(a + b, c) = eps(a, b + c) eps(b, c)
  for (const auto& a : elems)
    for (const auto& b : elems) {
      auto ab = eps(a, b);
      if (!ab) continue;
      const Coords apb = g.add(a, b);
      for (const auto& c : elems) {
        ++rep.triples_checked;
        auto bc = eps(b, c);
        auto abc = eps(apb, c);
        auto a_bc = eps(a, g.add(b, c));
        if (!bc || !abc || !a_bc) continue;
        if (*ab * *abc != *a_bc * *bc) record("associativity", {a, b, c});
      }
    }
  return rep;
}

} // namespace

CocycleReport verify_cocycle(const SignCocycle& eps, const SuperLattice& lattice, int window) {
  auto lookup = [&eps](const Coords& a, const Coords& b) -> std::optional<int> { return eps(a, b); };
  return verify_impl(lookup, lattice, window);
}

CocycleReport verify_cocycle(const SignTable& eps, const SuperLattice& lattice, int window) {
  auto lookup = [&eps](const Coords& a, const Coords& b) -> std::optional<int> {
    if (!eps.contains(a, b)) return std::nullopt;
    return eps(a, b);
  };
  return verify_impl(lookup, lattice, window);
}

SignTable twist(const SignFunction& eps, const FGAbelianGroup& group, const SignMap& eta) {
  auto zero_it = eta.find(group.zero());
  if (zero_it == eta.end() || zero_it->second != 1) throw std::invalid_argument("eta(0) must be 1");
  SignTable out(group);
  for (const auto& [a, ea] : eta)
    for (const auto& [b, eb] : eta) {
      auto it = eta.find(group.add(a, b));
      if (it == eta.end()) continue;
      out.set(a, b, eps(a, b) * ea * eb * it->second);
    }
  return out;
}

SignTable twist(const SignCocycle& eps, const SignMap& eta) { return twist(eps.function(), eps.group(), eta); }

std::optional<SignMap> cohomologous(const SignFunction& eps1, const SignFunction& eps2,
                                    const SuperLattice& lattice, int window) {
  const auto& g = lattice.bplus;
  const auto elems = window_elements(g, window);
  std::map<Coords, std::size_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  const std::size_t n = elems.size();
  // unknown bit x_g encodes eta(g) = (-1)^x_g; column n holds the right-hand side
  std::vector<boost::dynamic_bitset<>> rows;
  {
    boost::dynamic_bitset<> row(n + 1);
    row.set(index.at(g.zero()));
    rows.push_back(row);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto it = index.find(g.add(elems[i], elems[j]));
      if (it == index.end()) continue;
      boost::dynamic_bitset<> row(n + 1);
      row.flip(i);
      row.flip(j);
      row.flip(it->second);
      if (eps1(elems[i], elems[j]) != eps2(elems[i], elems[j])) row.set(n);
      if (row.any()) rows.push_back(row);
    }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && !rows[p].test(col)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t q = 0; q < rows.size(); ++q)
      if (q != rank && rows[q].test(col)) rows[q] ^= rows[rank];
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t q = rank; q < rows.size(); ++q)
    if (rows[q].test(n)) return std::nullopt;
  std::vector<int> bits(n, 0);
  for (std::size_t k = 0; k < rank; ++k) bits[pivot_col[k]] = rows[k].test(n) ? 1 : 0;
  SignMap eta;
  for (std::size_t i = 0; i < n; ++i) eta[elems[i]] = bits[i] ? -1 : 1;
  return eta;
}

} // namespace vertexlab
