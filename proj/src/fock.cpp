#include "vertexlab/fock.hpp"

namespace vertexlab {

FockSpace::FockSpace(SuperLattice lattice) : lattice_(std::move(lattice)) {
  ensure_names(lattice_);
  gram_ = bplus_gram(lattice_);
  for (std::size_t c = 0; c < lattice_.bplus.size(); ++c)
    iota_columns_.push_back(apply_iota(lattice_, lattice_.bplus.generator(c)));
}

long long FockSpace::sector_pair(const Coords& a, const Coords& b) const {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * gram_[i][j] * b[j];
  }
  return s;
}

std::vector<long long> FockSpace::iota_free(const Coords& a) const {
  std::vector<long long> r(static_cast<std::size_t>(even_rank()), 0);
  for (std::size_t c = 0; c < a.size(); ++c)
    if (a[c] != 0)
      for (std::size_t i = 0; i < r.size(); ++i) r[i] += a[c] * iota_columns_[c][i];
  return r;
}

long long FockSpace::basis_sector_pair(int v, const Coords& b) const {
  const auto ib = iota_free(b);
  long long s = 0;
  for (std::size_t j = 0; j < ib.size(); ++j) s += chi_plus(v, static_cast<int>(j)) * ib[j];
  return s;
}

BasisMonomial FockSpace::sector_monomial(const Coords& a) const {
  BasisMonomial m;
  m.sector = sectors().canonical(a);
  return m;
}

FockState FockSpace::vacuum() const { return FockState(sector_monomial(sectors().zero()), 1); }

FockState FockSpace::exp_sector(const Coords& a) const { return FockState(sector_monomial(a), 1); }

FockState FockSpace::multiply(const FockState& a, const FockState& b) const {
  return vertexlab::multiply(sectors(), a, b);
}

namespace {

void check_index(int v, int rank, const char* what) {
  if (v < 0 || v >= rank) throw DimensionMismatch(std::string(what) + " index out of range");
}

std::vector<int> first_n(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

} // namespace

FockState b_mode(const FockSpace& space, int v, long long n, const FockState& s) {
  check_index(v, space.even_rank(), "even basis");
  FockState out;
  for (const auto& [m, c] : s) {
    if (n < 0) {
      BasisMonomial r = m;
      r.even.emplace_back(Mode{v, static_cast<int>(-n)}, 1);
      out.add_raw(std::move(r), c);
    } else if (n == 0) {
      out.add(m, c * rat(space.basis_sector_pair(v, m.sector)));
    } else {
      for (const auto& [mode, e] : m.even) {
        if (mode.depth != n) continue;
        long long chi = space.chi_plus(v, mode.gen);
        if (chi == 0) continue;
        BasisMonomial r = m;
        remove_even(r, mode);
        out.add(r, c * rat(n * chi * e));
      }
    }
  }
  return out;
}

FockState b_mode(const FockSpace& space, const QVec& v, long long n, const FockState& s) {
  if (static_cast<int>(v.size()) != space.even_rank()) throw DimensionMismatch("vector not in the even basis");
  FockState out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out += b_mode(space, static_cast<int>(i), n, s) * v[i];
  return out;
}

FockState f_mode(const FockSpace& space, int w, long long n, const FockState& s) {
  check_index(w, space.odd_rank(), "odd basis");
  FockState out;
  if (n == 0) return out;
  for (const auto& [m, c] : s) {
    // the odd generator passes e^alpha, whose parity is chi+(alpha, alpha)
    const Rational cs = space.sector_parity(m.sector) ? Rational(-c) : c;
    if (n < 0) {
      BasisMonomial r = m;
      r.odd.insert(r.odd.begin(), Mode{w, static_cast<int>(-n)});
      out.add_raw(std::move(r), cs);
    } else {
      for (std::size_t p = 0; p < m.odd.size(); ++p) {
        if (m.odd[p].depth != n) continue;
        long long chi = space.chi_minus(w, m.odd[p].gen);
        if (chi == 0) continue;
        BasisMonomial r = m;
        r.odd.erase(r.odd.begin() + static_cast<long>(p));
        out.add(r, cs * rat(n * chi * sign_power(static_cast<long long>(p))));
      }
    }
  }
  return out;
}

FockState f_mode(const FockSpace& space, const QVec& w, long long n, const FockState& s) {
  if (static_cast<int>(w.size()) != space.odd_rank()) throw DimensionMismatch("vector not in the odd basis");
  FockState out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0) out += f_mode(space, static_cast<int>(i), n, s) * w[i];
  return out;
}

long long degree(const FockSpace& space, const BasisMonomial& m, DegreeShift shift) {
  long long d = sector_shift(shift, space.sector_pair(m.sector, m.sector));
  for (const auto& [mode, e] : m.even) d += 2LL * mode.depth * e;
  for (const auto& mode : m.odd) d += 2LL * mode.depth - 1;
  return d;
}

std::optional<long long> degree(const FockSpace& space, const FockState& s, DegreeShift shift) {
  std::optional<long long> d;
  for (const auto& [m, c] : s) {
    long long dm = degree(space, m, shift);
    if (d && *d != dm) return std::nullopt;
    d = dm;
  }
  return d;
}

int parity(const FockSpace& space, const BasisMonomial& m) {
  long long d = degree(space, m);
  return d % 2 == 0 ? 0 : 1;
}

std::vector<FockState> window_basis(const FockSpace& space, int sector_window, int depth) {
  std::vector<BasisMonomial> monos;
  for (const auto& a : window_elements(space.sectors(), sector_window))
    enumerate_monomials<FockTag>(a, first_n(space.even_rank()), first_n(space.odd_rank()), depth, monos);
  std::vector<FockState> out;
  out.reserve(monos.size());
  for (const auto& m : monos) out.emplace_back(m, Rational(1));
  return out;
}

std::string format_state(const FockSpace& space, const FockState& s) {
  if (s.empty()) return "0";
  const auto& lat = space.lattice();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : s) {
    Rational a = abs(c);
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::vector<std::string> factors;
    if (!space.sectors().is_zero(m.sector)) {
      std::string e = "e[";
      for (std::size_t i = 0; i < m.sector.size(); ++i) e += (i ? "," : "") + std::to_string(m.sector[i]);
      factors.push_back(e + "]");
    }
    for (const auto& [mode, e] : m.even)
      for (int k = 0; k < e; ++k)
        factors.push_back("b(" + lat.even_names[static_cast<std::size_t>(mode.gen)] + "," +
                          std::to_string(mode.depth) + ")");
    for (const auto& mode : m.odd)
      factors.push_back("f(" + lat.odd_names[static_cast<std::size_t>(mode.gen)] + "," +
                        std::to_string(mode.depth) + ")");
    if (factors.empty()) factors.push_back("vac");
    std::string term = a == 1 ? "" : (a.get_den() == 1 ? a.get_num().get_str() : a.get_str()) + "*";
    for (std::size_t i = 0; i < factors.size(); ++i) term += (i ? "*" : "") + factors[i];
    out += term;
  }
  return out;
}

} // namespace vertexlab
