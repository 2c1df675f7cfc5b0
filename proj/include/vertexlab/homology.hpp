#pragma once

#include "vertexlab/cocycle.hpp"
#include "vertexlab/geometry.hpp"
#include "vertexlab/superalg.hpp"

#include <string>
#include <vector>

namespace vertexlab {

struct HomologyTag {};
struct CohomologyTag {};

/// Sector times a monomial in the u_{v,i} (i >= 1); v indexes the full K-basis.
/// Even K-basis elements live in `even`, odd ones in `odd`.
using UMonomial = Monomial<HomologyTag>;
/// Homology class: rational combination of u-monomials over sectors.
using HClass = LinComb<HomologyTag>;
/// Sector times a monomial in the mu_{v,i}; depth 0 factors stand for the scalars a_v(alpha).
using MuMonomial = Monomial<CohomologyTag>;

/// u_{alpha,v,i} as a one-term class.
HClass u_generator(const VarietyModel& m, const Coords& alpha, int v, int i);
/// mu_{alpha,v,i} as a monomial.
MuMonomial mu_generator(const VarietyModel& m, const Coords& alpha, int v, int i);
/// 1_alpha.
HClass unit_class(const Coords& alpha);

/// The pairing of cohomology with homology monomials: prod m!/((i-1)!)^m on matching exponents, else 0.
Rational mu_pair(const MuMonomial& mu, const UMonomial& u);

/// eta cap mu for mu without depth-0 factors; a right action.
HClass cap(const HClass& eta, const MuMonomial& mu);

/// Product with sectors added; odd factors of a stay left of those of b.
HClass phi_push(const FGAbelianGroup& sectors, const HClass& a, const HClass& b);

/// Homological degree: 2i per even factor, 2i-1 per odd factor.
long long homological_degree(const UMonomial& m);

/// One term c * mu_{alpha,v,j} (x) mu_{beta,w,k} of a Chern character of the Ext complex.
struct ExtTerm {
  Rational coefficient;
  int v = 0;
  int j = 0;
  int w = 0;
  int k = 0;
};

/// The geometric vertex algebra on the Chern-character model of the moduli stack's homology.
class JoyceVA {
public:
  JoyceVA(VarietyModel model, Variant variant, SignFunction epsilon);

  const VarietyModel& model() const { return model_; }
  Variant variant() const { return variant_; }
  const FGAbelianGroup& sectors() const { return sectors_; }
  /// The working form on K-basis indices.
  long long form(int v, int w) const { return form_[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]; }
  /// chi~(alpha, beta) on sectors.
  long long sector_form(const Coords& a, const Coords& b) const;
  /// a_v(alpha): coordinate of alpha along the K-basis element v.
  long long coordinate(int v, const Coords& alpha) const;
  bool is_odd(int v) const { return model_.kbasis[static_cast<std::size_t>(v)].parity == 1; }
  int epsilon(const Coords& a, const Coords& b) const { return eps_(a, b); }

  /// Homological degree plus the sector shift (2 - chi~(alpha, alpha) by default).
  long long hat_degree(const UMonomial& m, DegreeShift shift = DegreeShift::two_minus_form) const;
  std::optional<long long> hat_degree(const HClass& c, DegreeShift shift = DegreeShift::two_minus_form) const;

  /// Cap product that also evaluates depth-0 factors as the scalars a_v(alpha).
  HClass cap(const HClass& eta, const MuMonomial& mu) const;
  /// Coefficient of z^k in the action of the translation family on eta.
  HClass psi_push(long long k, const HClass& eta) const;
  /// Degree-i Chern character of the Ext complex between sectors alpha and beta.
  std::vector<ExtTerm> ext_ch(int i, const Coords& alpha, const Coords& beta) const;
  /// Scalar value of ext_ch(0, alpha, beta).
  Rational ext_rank(const Coords& alpha, const Coords& beta) const;

  /// z^{-n-1} coefficient of the field of u applied to w, assembled from cap, psi_push and phi_push.
  HClass mode(const HClass& u, long long n, const HClass& w) const;
  /// Closed-form field of the generator u_{0,v,1}.
  HClass generator_mode(int v, long long n, const HClass& eta) const;

  /// Builds a one-term class, routing v to the even or odd factor list.
  HClass u_class(const Coords& alpha, const std::vector<std::pair<int, int>>& factors) const;

private:
  HClass mode_monomial(const UMonomial& u, long long n, const UMonomial& w) const;

  VarietyModel model_;
  Variant variant_;
  SignFunction eps_;
  FGAbelianGroup sectors_;
  IntMatrix form_;
  /// sector_coords_[c][v]: a_v of the c-th B+ generator.
  std::vector<std::vector<long long>> sector_coords_;
};

/// Renders a class as "c*u([a]; v, i)*..." terms.
std::string format_class(const VarietyModel& m, const HClass& c);

} // namespace vertexlab
