#include "vertexlab/abelian.hpp"

#include <sstream>

namespace vertexlab {

namespace {

long long mod_floor(long long a, long long d) {
  long long r = a % d;
  return r < 0 ? r + d : r;
}

std::string coords_str(const Coords& x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ')';
  return os.str();
}

} // namespace

FGAbelianGroup::FGAbelianGroup(int free_rank, std::vector<long long> torsion_orders)
    : free_rank_(free_rank), torsion_(std::move(torsion_orders)) {
  if (free_rank_ < 0) throw std::invalid_argument("negative free rank");
  for (long long d : torsion_)
    if (d < 2) throw std::invalid_argument("torsion order must be at least 2");
}

Coords FGAbelianGroup::generator(std::size_t k) const {
  if (k >= size()) throw DimensionMismatch("generator index out of range");
  Coords x = zero();
  x[k] = 1;
  return x;
}

void FGAbelianGroup::check(const Coords& x) const {
  if (x.size() != size())
    throw DimensionMismatch("element has " + std::to_string(x.size()) + " coordinates, group has " +
                            std::to_string(size()) + " generators");
}

Coords FGAbelianGroup::canonical(Coords x) const {
  check(x);
  for (std::size_t k = 0; k < torsion_.size(); ++k) {
    auto& c = x[static_cast<std::size_t>(free_rank_) + k];
    c = mod_floor(c, torsion_[k]);
  }
  return x;
}

bool FGAbelianGroup::is_canonical(const Coords& x) const {
  if (x.size() != size()) return false;
  for (std::size_t k = 0; k < torsion_.size(); ++k) {
    long long c = x[static_cast<std::size_t>(free_rank_) + k];
    if (c < 0 || c >= torsion_[k]) return false;
  }
  return true;
}

bool FGAbelianGroup::is_zero(const Coords& x) const {
  Coords c = canonical(x);
  for (long long v : c)
    if (v != 0) return false;
  return true;
}

Coords FGAbelianGroup::add(const Coords& x, const Coords& y) const {
  check(x);
  check(y);
  Coords r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return canonical(std::move(r));
}

Coords FGAbelianGroup::negate(const Coords& x) const { return scale(-1, x); }

Coords FGAbelianGroup::scale(long long k, const Coords& x) const {
  check(x);
  Coords r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = k * x[i];
  return canonical(std::move(r));
}

IntBilinearForm::IntBilinearForm(FGAbelianGroup group, IntMatrix matrix, Symmetry tag)
    : group_(std::move(group)), matrix_(std::move(matrix)), tag_(tag) {
  if (matrix_.size() != group_.size()) throw DimensionMismatch("form matrix has wrong number of rows");
  for (const auto& row : matrix_)
    if (row.size() != group_.size()) throw DimensionMismatch("form matrix is not square");
}

long long pair(const IntBilinearForm& form, const Coords& x, const Coords& y) {
  form.group().check(x);
  form.group().check(y);
  const auto r = static_cast<std::size_t>(form.group().free_rank());
  long long s = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < r; ++j) s += x[i] * form.entry(i, j) * y[j];
  }
  return s;
}

Coords apply_iota(const SuperLattice& lattice, const Coords& beta) {
  lattice.bplus.check(beta);
  const auto& target = lattice.even.group();
  if (lattice.iota.size() != target.size()) throw DimensionMismatch("iota has wrong number of rows");
  Coords r(target.size(), 0);
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (lattice.iota[i].size() != beta.size()) throw DimensionMismatch("iota has wrong number of columns");
    for (std::size_t j = 0; j < beta.size(); ++j) r[i] += lattice.iota[i][j] * beta[j];
  }
  return target.canonical(std::move(r));
}

namespace {

void check_form(const IntBilinearForm& f, const std::string& label, std::vector<Violation>& out) {
  const auto n = f.group().size();
  const auto r = static_cast<std::size_t>(f.group().free_rank());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      long long a = f.entry(i, j), b = f.entry(j, i);
      bool ok = f.symmetry() == Symmetry::symmetric ? a == b : a == -b;
      if (!ok && i < j)
        out.push_back({"symmetry", label + " entries (" + std::to_string(i) + "," + std::to_string(j) + ")"});
    }
    if (f.symmetry() == Symmetry::antisymmetric && f.entry(i, i) != 0)
      out.push_back({"symmetry", label + " diagonal entry " + std::to_string(i) + " is nonzero"});
  }
  for (std::size_t t = r; t < n; ++t) {
    bool nonzero = false;
    for (std::size_t j = 0; j < n; ++j) nonzero = nonzero || f.entry(t, j) != 0 || f.entry(j, t) != 0;
    if (nonzero) out.push_back({"torsion-kill", label + " torsion generator " + std::to_string(t)});
  }
}

} // namespace

std::vector<Violation> validate_superlattice(const SuperLattice& lattice) {
  std::vector<Violation> out;
  check_form(lattice.even, "even form", out);
  check_form(lattice.odd, "odd form", out);
  const auto& target = lattice.even.group();
  if (lattice.iota.size() != target.size()) {
    out.push_back({"dimension", "iota rows do not match A+"});
    return out;
  }
  for (const auto& row : lattice.iota)
    if (row.size() != lattice.bplus.size()) {
      out.push_back({"dimension", "iota columns do not match B+"});
      return out;
    }
  const auto r = static_cast<std::size_t>(lattice.bplus.free_rank());
  for (std::size_t k = 0; k < lattice.bplus.torsion_orders().size(); ++k) {
    Coords img = apply_iota(lattice, lattice.bplus.generator(r + k));
    Coords killed = target.scale(lattice.bplus.torsion_orders()[k], img);
    if (!target.is_zero(killed))
      out.push_back({"iota-torsion", "order of B+ torsion generator " + std::to_string(r + k) +
                                         " does not kill its image " + coords_str(img)});
  }
  return out;
}

void ensure_names(SuperLattice& lattice) {
  const auto ne = static_cast<std::size_t>(lattice.even.group().free_rank());
  const auto no = static_cast<std::size_t>(lattice.odd.group().free_rank());
  if (lattice.even_names.size() != ne) {
    lattice.even_names.clear();
    for (std::size_t i = 0; i < ne; ++i) lattice.even_names.push_back("v" + std::to_string(i + 1));
  }
  if (lattice.odd_names.size() != no) {
    lattice.odd_names.clear();
    for (std::size_t i = 0; i < no; ++i) lattice.odd_names.push_back("w" + std::to_string(i + 1));
  }
}

} // namespace vertexlab
