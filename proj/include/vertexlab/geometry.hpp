#pragma once

#include "vertexlab/abelian.hpp"
#include "vertexlab/cocycle.hpp"
#include "vertexlab/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vertexlab {

class ModelInvalid : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Graded basis element of a cohomology ring.
struct CohomologyGenerator {
  std::string name;
  int degree = 0;
};

/// Finite-dimensional graded-commutative Q-algebra with an integration functional.
/// Basis element 0 is the unit.
class CohomologyRing {
public:
  CohomologyRing() = default;
  /// products[i][j] is the coordinate vector of g_i g_j.
  CohomologyRing(std::vector<CohomologyGenerator> basis, std::vector<std::vector<QVec>> products, QVec integral,
                 int complex_dim);

  std::size_t size() const { return basis_.size(); }
  const CohomologyGenerator& generator(std::size_t k) const { return basis_[k]; }
  const std::vector<CohomologyGenerator>& basis() const { return basis_; }
  int complex_dim() const { return dim_; }
  const QVec& product(std::size_t i, std::size_t j) const { return products_[i][j]; }
  const QVec& integral_values() const { return integral_; }

  QVec zero() const { return QVec(size(), 0); }
  QVec unit() const;
  QVec multiply(const QVec& x, const QVec& y) const;
  Rational integrate(const QVec& x) const;

  /// Unit, graded commutativity, associativity on basis triples, integration only in top degree.
  std::vector<std::string> validate() const;

private:
  std::vector<CohomologyGenerator> basis_;
  std::vector<std::vector<QVec>> products_;
  QVec integral_;
  int dim_ = 0;
};

/// v -> v^dual: degree 2k and 2k+1 components are scaled by (-1)^k.
QVec dual_inv(const CohomologyRing& ring, const QVec& c);

/// Element of the K-theory basis Q with its Chern character.
struct KElement {
  std::string name;
  /// 0 for K^0, 1 for K^1.
  int parity = 0;
  QVec ch;
};

struct VarietyModel {
  std::string name;
  CohomologyRing ring;
  QVec todd;
  std::vector<KElement> kbasis;
  /// Generators of B+ as integer coordinates in the even part of the K-basis; free generators first.
  IntMatrix bplus_gens;
  /// Orders of the trailing torsion generators of B+.
  std::vector<long long> bplus_torsion;
  /// n when the variety is 2n-Calabi-Yau.
  std::optional<int> cy2n;

  std::vector<int> even_indices() const;
  std::vector<int> odd_indices() const;
  FGAbelianGroup bplus() const;
};

/// chi(v, w) = integral of ch(v)^dual ch(w) Td.
Rational euler(const VarietyModel& m, const QVec& ch_v, const QVec& ch_w);
Rational euler(const VarietyModel& m, int v, int w);
Rational euler_sym(const VarietyModel& m, int v, int w);
/// chi on the K-basis elements listed in idx.
std::vector<QVec> euler_matrix(const VarietyModel& m, const std::vector<int>& idx, bool symmetrized = false);

/// Ring, Todd class, parity, integrality and Calabi-Yau symmetry checks.
std::vector<std::string> validate_variety(const VarietyModel& m);

/// "p1", "p2", "elliptic", "genus_g(G)", "k3_reduced".
VarietyModel builtin(const std::string& name);
VarietyModel genus_g(int g);
std::vector<std::string> builtin_names();

/// Parses a variety description and, unless told otherwise, validates it.
/// Throws SchemaError on layout problems and ModelInvalid on failed checks.
VarietyModel load_variety(const std::string& path, bool validate = true);
VarietyModel variety_from_json_text(const std::string& text, bool validate = true);
/// Inverse of variety_from_json_text; integers stay JSON numbers, fractions become "p/q" strings.
std::string variety_to_json_text(const VarietyModel& m);
/// Built-in name or path to a JSON file.
VarietyModel resolve_variety(const std::string& name_or_path);

/// Which Euler form builds the even lattice.
enum class Variant {
  /// chi itself, with any solution of the cocycle equations
  cy,
  /// chi_sym on the even part, chi on the odd part, eps = (-1)^chi
  general,
};

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

/// The working form on the full K-basis: chi or chi_sym on even pairs, chi on odd pairs, 0 on mixed pairs.
IntMatrix working_form(const VarietyModel& m, Variant variant);

/// A+ = even K-basis lattice, A- = odd K-basis lattice, iota = B+ inclusion.
SuperLattice superlattice_of(const VarietyModel& m, Variant variant);

/// Solved cocycle for the CY variant; (-1)^{chi(alpha, beta)} for the general variant.
SignCocycle variant_epsilon(const VarietyModel& m, Variant variant);

} // namespace vertexlab
