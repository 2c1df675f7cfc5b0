#pragma once

#include "vertexlab/abelian.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vertexlab {

class TorsionObstruction : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class WindowExceeded : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Sign function eps(alpha, beta) on B+.
using SignFunction = std::function<int(const Coords&, const Coords&)>;

/// Biadditive sign system: eps(sum a_i e_i, sum b_j e_j) = prod s_ij^(a_i b_j).
class SignCocycle {
public:
  SignCocycle() = default;
  SignCocycle(FGAbelianGroup group, std::vector<std::vector<int>> signs);

  int operator()(const Coords& a, const Coords& b) const;
  const FGAbelianGroup& group() const { return group_; }
  const std::vector<std::vector<int>>& signs() const { return signs_; }
  SignFunction function() const;

private:
  FGAbelianGroup group_;
  std::vector<std::vector<int>> signs_;
};

/// Sign values stored pair by pair on a finite set of elements.
class SignTable {
public:
  SignTable() = default;
  explicit SignTable(FGAbelianGroup group) : group_(std::move(group)) {}

  void set(const Coords& a, const Coords& b, int sign);
  bool contains(const Coords& a, const Coords& b) const;
  /// Throws WindowExceeded for pairs that were never stored.
  int operator()(const Coords& a, const Coords& b) const;
  const FGAbelianGroup& group() const { return group_; }
  const std::map<std::pair<Coords, Coords>, int>& entries() const { return entries_; }
  SignFunction function() const;

private:
  FGAbelianGroup group_;
  std::map<std::pair<Coords, Coords>, int> entries_;
};

/// eta: B+ window -> {+1, -1}.
using SignMap = std::map<Coords, int>;

/// Gram matrix chi+(iota e_i, iota e_j) on the generators of B+.
IntMatrix bplus_gram(const SuperLattice& lattice);

/// chi+(ia, ib) + chi+(ia, ia) chi+(ib, ib): the exponent in the commutation rule.
long long commutation_exponent(const IntMatrix& gram, const Coords& a, const Coords& b);

/// Ordered-basis solution of the sign equations; throws TorsionObstruction.
SignCocycle build_epsilon(const SuperLattice& lattice);

/// Canonical elements with free coordinates in [-window, window].
std::vector<Coords> window_elements(const FGAbelianGroup& group, int window);

struct CocycleViolation {
  /// "normalization", "commutation" or "associativity"
  std::string rule;
  std::vector<Coords> args;
};

struct CocycleReport {
  std::vector<CocycleViolation> violations;  ///< first ten
  std::size_t total_violations = 0;
  std::size_t triples_checked = 0;
  bool ok() const { return total_violations == 0; }
};

CocycleReport verify_cocycle(const SignCocycle& eps, const SuperLattice& lattice, int window);
CocycleReport verify_cocycle(const SignTable& eps, const SuperLattice& lattice, int window);

/// eps'(a, b) = eps(a, b) eta(a) eta(b) eta(a + b) for a, b, a + b in the domain of eta.
SignTable twist(const SignFunction& eps, const FGAbelianGroup& group, const SignMap& eta);
SignTable twist(const SignCocycle& eps, const SignMap& eta);

/// Solves for eta with twist(eps1, eta) = eps2 on the window; nullopt if none exists.
std::optional<SignMap> cohomologous(const SignFunction& eps1, const SignFunction& eps2,
                                    const SuperLattice& lattice, int window);

} // namespace vertexlab
