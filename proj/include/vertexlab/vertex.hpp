#pragma once

#include "vertexlab/cocycle.hpp"
#include "vertexlab/fock.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vertexlab {

/// Sign used when a field of u passes the bosonic part of w in the even (x) odd fusion.
enum class TensorSign {
  /// (-1)^{p(u) chi+(beta, beta)} with p(u) the full parity of u.
  printed,
  /// (-1)^{|odd factors of u| chi+(beta, beta)}: the usual Koszul rule.
  standard,
};

std::string to_string(TensorSign s);

/// Laurent coefficients: power of z -> state.
using Series = std::map<long long, FockState>;

/// The vertex algebra V_A with a chosen sign cocycle.
class LatticeVA {
public:
  LatticeVA(FockSpace space, SignFunction epsilon, TensorSign sign = TensorSign::printed);

  const FockSpace& space() const { return space_; }
  TensorSign tensor_sign() const { return sign_; }
  int epsilon(const Coords& a, const Coords& b) const { return eps_(a, b); }

  /// The translation operator T.
  FockState translate(const FockState& s) const;
  /// z^{-n-1} coefficient of Gamma_alpha(z) s, including the cocycle factor.
  FockState gamma_mode(const Coords& alpha, long long n, const FockState& s) const;
  /// u_n(w) via the normal-ordered product of generator fields and Gamma_alpha.
  FockState y_mode(const FockState& u, long long n, const FockState& w) const;
  /// u_n(w) by peeling one creation operator at a time off u.
  FockState y_mode_reconstructed(const FockState& u, long long n, const FockState& w) const;
  /// Largest n with u_n(w) possibly nonzero.
  long long mode_upper_bound(const BasisMonomial& u, const BasisMonomial& w) const;
  long long mode_upper_bound(const FockState& u, const FockState& w) const;

  /// Parity of a homogeneous state (degree mod 2); throws on mixed parity.
  int parity(const FockState& s) const;

private:
  FockState y_monomial(const BasisMonomial& u, long long n, const BasisMonomial& w) const;
  FockState y_peeled(const BasisMonomial& u, long long n, const BasisMonomial& w) const;
  Series boson_part(const BasisMonomial& u, const BasisMonomial& wb, long long pmax) const;
  Series fermion_part(const BasisMonomial& u, const BasisMonomial& wf, long long pmax) const;
  Series apply_gamma(const Coords& alpha, const Series& in, long long pmax) const;
  int fusion_sign(const BasisMonomial& u, const Coords& beta) const;

  FockSpace space_;
  SignFunction eps_;
  TensorSign sign_;
};

/// Outcome of one axiom check.
struct AxiomReport {
  std::string axiom;
  bool ok = true;
  std::size_t comparisons = 0;
  /// Minimal exponent found by the associativity and locality searches.
  std::optional<int> minimal_n;
  /// First failure, human readable.
  std::string detail;
};

/// Y(|0>, z) u = u, u_{-k-1}|0> = T^k u / k! for k <= window, and u_n|0> = 0 for 0 <= n <= window.
AxiomReport check_vacuum_creation(const LatticeVA& va, const FockState& u, int window);

/// u_m w against the skew-symmetry expansion for |m| <= window.
AxiomReport check_skew(const LatticeVA& va, const FockState& u, const FockState& w, int window);

/// Smallest N <= n_max with weak associativity on all z1^a z2^b, |a|, |b| <= window.
AxiomReport check_weak_assoc(const LatticeVA& va, const FockState& u, const FockState& v, const FockState& w,
                             int n_max, int window);

/// Smallest N <= n_max with (z - x)^N [Y(u,z), Y(v,x)] = 0 on every probe and window coefficient.
AxiomReport check_locality(const LatticeVA& va, const FockState& u, const FockState& v,
                           const std::vector<FockState>& probes, int n_max, int window);

struct AxiomSuiteOptions {
  /// Mode window for vacuum, skew-symmetry and reconstruction checks.
  int max_z = 6;
  /// Window states: sectors in [-sector_window, sector_window]^r, total depth <= depth.
  int depth = 3;
  int sector_window = 1;
  /// Random pairs for skew-symmetry and reconstruction.
  int samples = 50;
  std::uint64_t seed = 7;
  /// Largest N tried by the associativity and locality searches.
  int n_max = 8;
  int triples = 12;
  /// Coefficient window for the associativity and locality searches.
  int search_window = 2;
};

/// One aggregated report per axiom: vacuum, skew_symmetry, reconstruction, weak_associativity, locality.
struct AxiomSuiteReport {
  std::vector<AxiomReport> axioms;
  std::size_t window_states = 0;
  bool ok() const {
    for (const auto& a : axioms)
      if (!a.ok) return false;
    return true;
  }
};

/// Vacuum on all window states, skew-symmetry and reconstruction on seeded pairs,
/// associativity on seeded triples, locality on every pair of generating fields.
AxiomSuiteReport run_axiom_suite(const LatticeVA& va, const AxiomSuiteOptions& options = {});

} // namespace vertexlab
