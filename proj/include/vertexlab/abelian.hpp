#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vertexlab {

/// Integer coordinate vector of a group element; free coordinates come first.
using Coords = std::vector<long long>;
using IntMatrix = std::vector<std::vector<long long>>;

/// Input file that does not follow the expected JSON layout.
class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Z^r (+) Z/d_1 (+) ... (+) Z/d_m with canonical torsion coordinates in [0, d_k).
class FGAbelianGroup {
public:
  FGAbelianGroup() = default;
  FGAbelianGroup(int free_rank, std::vector<long long> torsion_orders);

  int free_rank() const { return free_rank_; }
  const std::vector<long long>& torsion_orders() const { return torsion_; }
  /// Number of generators (free plus torsion).
  std::size_t size() const { return static_cast<std::size_t>(free_rank_) + torsion_.size(); }
  bool is_free() const { return torsion_.empty(); }

  Coords zero() const { return Coords(size(), 0); }
  Coords generator(std::size_t k) const;
  Coords canonical(Coords x) const;
  bool is_canonical(const Coords& x) const;
  bool is_zero(const Coords& x) const;
  Coords add(const Coords& x, const Coords& y) const;
  Coords negate(const Coords& x) const;
  Coords scale(long long k, const Coords& x) const;

  /// Throws DimensionMismatch unless x has one coordinate per generator.
  void check(const Coords& x) const;

  bool operator==(const FGAbelianGroup&) const = default;

private:
  int free_rank_ = 0;
  std::vector<long long> torsion_;
};

enum class Symmetry { symmetric, antisymmetric };

/// Integer bilinear form given by its matrix on the group's generators.
class IntBilinearForm {
public:
  IntBilinearForm() = default;
  IntBilinearForm(FGAbelianGroup group, IntMatrix matrix, Symmetry tag);

  const FGAbelianGroup& group() const { return group_; }
  const IntMatrix& matrix() const { return matrix_; }
  Symmetry symmetry() const { return tag_; }
  long long entry(std::size_t i, std::size_t j) const { return matrix_[i][j]; }

private:
  FGAbelianGroup group_;
  IntMatrix matrix_;
  Symmetry tag_ = Symmetry::symmetric;
};

/// x^T M y over the free coordinates.
long long pair(const IntBilinearForm& form, const Coords& x, const Coords& y);

/// Even part (A+, chi+), odd part (A-, chi-), and iota: B+ -> A+.
struct SuperLattice {
  IntBilinearForm even;
  IntBilinearForm odd;
  FGAbelianGroup bplus;
  /// iota[r][c]: coordinate r of the image of B+ generator c.
  IntMatrix iota;
  /// Display names of the free generators of A+ and A-.
  std::vector<std::string> even_names;
  std::vector<std::string> odd_names;
};

Coords apply_iota(const SuperLattice& lattice, const Coords& beta);

struct Violation {
  std::string kind;
  std::string detail;
};

/// Checks form symmetry, torsion-killing, and that iota respects torsion orders.
std::vector<Violation> validate_superlattice(const SuperLattice& lattice);

/// Reads {"even":{"free_rank","torsion","form","names"}, "odd":{...}, "bplus":{"free_rank","torsion"}, "iota"}.
/// Without "bplus" and "iota", B+ = A+ and iota is the identity. Throws SchemaError.
SuperLattice lattice_from_json_text(const std::string& text);
SuperLattice load_lattice(const std::string& path);
std::string lattice_to_json_text(const SuperLattice& lattice);

/// Fill default names ("v1", ..., "w1", ...) where none were given.
void ensure_names(SuperLattice& lattice);

} // namespace vertexlab
