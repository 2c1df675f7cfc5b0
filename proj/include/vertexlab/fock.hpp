#pragma once

#include "vertexlab/abelian.hpp"
#include "vertexlab/cocycle.hpp"
#include "vertexlab/rational.hpp"
#include "vertexlab/superalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vertexlab {

struct FockTag {};

/// e^alpha times boson creations b_{v,i}^n times fermion creations f_{w,j}.
using BasisMonomial = Monomial<FockTag>;
/// Exact-rational combination of basis monomials.
using FockState = LinComb<FockTag>;

/// The state space built on a super-lattice, with the data the mode operators need.
class FockSpace {
public:
  explicit FockSpace(SuperLattice lattice);

  const SuperLattice& lattice() const { return lattice_; }
  const FGAbelianGroup& sectors() const { return lattice_.bplus; }
  int even_rank() const { return lattice_.even.group().free_rank(); }
  int odd_rank() const { return lattice_.odd.group().free_rank(); }

  long long chi_plus(int v, int w) const { return lattice_.even.entry(v, w); }
  long long chi_minus(int v, int w) const { return lattice_.odd.entry(v, w); }
  /// chi+(iota a, iota b).
  long long sector_pair(const Coords& a, const Coords& b) const;
  /// chi+(v, iota b) for an even basis vector v.
  long long basis_sector_pair(int v, const Coords& b) const;
  /// Free coordinates of iota(a) in the even basis.
  std::vector<long long> iota_free(const Coords& a) const;
  int sector_parity(const Coords& a) const { return sector_pair(a, a) % 2 == 0 ? 0 : 1; }

  Coords add(const Coords& a, const Coords& b) const { return sectors().add(a, b); }
  BasisMonomial sector_monomial(const Coords& a) const;
  FockState vacuum() const;
  FockState exp_sector(const Coords& a) const;
  /// Left multiplication in the super-commutative algebra (sectors add).
  FockState multiply(const FockState& a, const FockState& b) const;

private:
  SuperLattice lattice_;
  IntMatrix gram_;
  std::vector<Coords> iota_columns_;
};

/// Bosonic mode b_n(v) for v a rational vector in the even basis.
FockState b_mode(const FockSpace& space, const QVec& v, long long n, const FockState& s);
FockState b_mode(const FockSpace& space, int v, long long n, const FockState& s);

/// Fermionic mode f_n(w) for w a rational vector in the odd basis.
FockState f_mode(const FockSpace& space, const QVec& w, long long n, const FockState& s);
FockState f_mode(const FockSpace& space, int w, long long n, const FockState& s);

/// Every monomial with sector in [-window, window]^r and total depth <= depth, as one-term states.
std::vector<FockState> window_basis(const FockSpace& space, int sector_window, int depth);

/// 2i per boson b_{-i}, 2j - 1 per fermion f_{-j}, plus the sector shift.
long long degree(const FockSpace& space, const BasisMonomial& m, DegreeShift shift = DegreeShift::two_minus_form);
/// Common degree of all monomials, or nullopt when inhomogeneous (or zero).
std::optional<long long> degree(const FockSpace& space, const FockState& s,
                                DegreeShift shift = DegreeShift::two_minus_form);
int parity(const FockSpace& space, const BasisMonomial& m);

/// Renders a state in the expression grammar, e.g. "2/3*e[1]*b(v1,2) - f(w1,1)".
std::string format_state(const FockSpace& space, const FockState& s);

} // namespace vertexlab
