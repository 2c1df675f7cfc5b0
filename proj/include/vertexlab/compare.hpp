#pragma once

#include "vertexlab/homology.hpp"
#include "vertexlab/vertex.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vertexlab {

/// Identification of u_{alpha,v,i} with b_{-i}(v) e^alpha (even v) or f_{-i}(v) e^alpha (odd v).
class SideMap {
public:
  explicit SideMap(const VarietyModel& m);

  /// (parity, index within that parity) of a K-basis element.
  std::pair<int, int> local(int global) const { return locals_.at(static_cast<std::size_t>(global)); }
  int global(int parity, int local) const;

  FockState to_fock(const HClass& c) const;
  HClass to_hclass(const FockState& s) const;

private:
  std::vector<std::pair<int, int>> locals_;
  std::vector<int> even_, odd_;
};

/// Both vertex algebras for one variety, variant and cocycle.
struct ComparisonPair {
  ComparisonPair(const VarietyModel& m, Variant variant, SignFunction eps, TensorSign sign = TensorSign::printed);
  SideMap map;
  LatticeVA abstract;
  JoyceVA geometric;
};

struct CompareOptions {
  int max_mode = 5;
  int depth = 3;
  int sector_window = 1;
  std::uint64_t seed = 7;
  int random_pairs = 20;
  /// Smaller window for the sector-unit fields, whose outputs grow with chi(alpha, beta).
  int sector_field_depth = 2;
  int sector_field_max_mode = 3;
  /// Random pairs are redrawn until chi~(alpha, beta) >= this; output size grows like partitions of -chi.
  long long random_pair_min_form = -1;
  TensorSign sign = TensorSign::printed;
};

struct Divergence {
  std::string check;
  std::string u;
  std::string w;
  long long n = 0;
  std::string abstract_value;
  std::string geometric_value;
};

struct CompareReport {
  std::string variety;
  Variant variant = Variant::cy;
  TensorSign sign = TensorSign::printed;
  std::size_t window_states = 0;
  std::size_t even_generators = 0;
  std::size_t odd_generators = 0;
  std::size_t generator_checks = 0;
  std::size_t closed_form_checks = 0;
  std::size_t sector_field_checks = 0;
  std::size_t random_pair_checks = 0;
  std::size_t spanning_checks = 0;
  std::size_t failures = 0;
  std::optional<Divergence> first_divergence;
  bool ok() const { return failures == 0; }
};

/// Every monomial with sector in [-window, window]^r and total depth <= depth.
std::vector<HClass> window_basis(const JoyceVA& geo, int sector_window, int depth);

/// Generator fields (both sides and the closed form), sector fields, spanning, and random pairs.
CompareReport compare_fields(const VarietyModel& m, Variant variant, const SignFunction& eps,
                             const CompareOptions& options = {});

struct IndependenceReport {
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// Set when the two cocycles are not cohomologous on the window; nothing is checked then.
  bool refused = false;
  std::string detail;
  bool ok() const { return !refused && failures == 0; }
};

/// Checks that e^alpha x -> eta(alpha) e^alpha x intertwines the algebras built from eps and twist(eps, eta).
/// Fields tested: generators, sector units, and `extra_fields` window states drawn with `seed`.
IndependenceReport epsilon_independence(const SuperLattice& lattice, const SignCocycle& eps, const SignMap& eta,
                                        int max_mode = 3, int depth = 2, int extra_fields = 6,
                                        std::uint64_t seed = 11);

/// Looks for a witness on [-window, window]^r first and refuses when eps2 is not cohomologous to eps.
IndependenceReport epsilon_independence(const SuperLattice& lattice, const SignCocycle& eps,
                                        const SignFunction& eps2, int window = 2, int max_mode = 3,
                                        int depth = 2);

/// Random eta on the window [-window, window]^r with eta(0) = 1.
SignMap random_eta(const FGAbelianGroup& group, int window, std::uint64_t seed);

} // namespace vertexlab
