#include "vertexlab/geometry.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>
#include <tuple>

namespace vertexlab {

CohomologyRing::CohomologyRing(std::vector<CohomologyGenerator> basis, std::vector<std::vector<QVec>> products,
                               QVec integral, int complex_dim)
    : basis_(std::move(basis)), products_(std::move(products)), integral_(std::move(integral)), dim_(complex_dim) {
  const auto n = basis_.size();
  if (n == 0) throw SchemaError("cohomology basis is empty");
  if (products_.size() != n || integral_.size() != n) throw SchemaError("cohomology tables have the wrong size");
  for (const auto& row : products_) {
    if (row.size() != n) throw SchemaError("multiplication table is not square");
    for (const auto& v : row)
      if (v.size() != n) throw SchemaError("product vector has the wrong length");
  }
}

QVec CohomologyRing::unit() const {
  QVec u = zero();
  u[0] = 1;
  return u;
}

QVec CohomologyRing::multiply(const QVec& x, const QVec& y) const {
  QVec out = zero();
  for (std::size_t i = 0; i < size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < size(); ++j) {
      if (y[j] == 0) continue;
      const Rational c = x[i] * y[j];
      const auto& p = products_[i][j];
      for (std::size_t k = 0; k < size(); ++k)
        if (p[k] != 0) out[k] += c * p[k];
    }
  }
  return out;
}

Rational CohomologyRing::integrate(const QVec& x) const {
  Rational s = 0;
  for (std::size_t k = 0; k < size(); ++k) s += x[k] * integral_[k];
  return s;
}

std::vector<std::string> CohomologyRing::validate() const {
  std::vector<std::string> problems;
  const auto n = size();
  auto basis_vec = [&](std::size_t k) {
    QVec v = zero();
    v[k] = 1;
    return v;
  };
  if (basis_[0].degree != 0) problems.push_back("basis element 0 must be the degree-0 unit");
  for (std::size_t j = 0; j < n; ++j)
    if (product(0, j) != basis_vec(j) || product(j, 0) != basis_vec(j))
      problems.push_back("element 0 is not a unit for " + basis_[j].name);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int di = basis_[i].degree, dj = basis_[j].degree;
      const auto& p = product(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (p[k] != 0 && basis_[k].degree != di + dj)
          problems.push_back("product " + basis_[i].name + "*" + basis_[j].name + " is not homogeneous");
      QVec swapped = product(j, i);
      for (auto& c : swapped) c *= sign_power(static_cast<long long>(di) * dj);
      if (swapped != p) problems.push_back(basis_[i].name + ", " + basis_[j].name + " do not graded-commute");
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto a = basis_vec(i), b = basis_vec(j), c = basis_vec(k);
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
          problems.push_back("associativity fails on " + basis_[i].name + ", " + basis_[j].name + ", " +
                             basis_[k].name);
      }
  for (std::size_t k = 0; k < n; ++k)
    if (integral_[k] != 0 && basis_[k].degree != 2 * dim_)
      problems.push_back("integration is nonzero on " + basis_[k].name + " below top degree");
  return problems;
}

QVec dual_inv(const CohomologyRing& ring, const QVec& c) {
  QVec out = c;
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const int d = ring.generator(k).degree;
    out[k] *= sign_power(d / 2);
  }
  return out;
}

std::vector<int> VarietyModel::even_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < kbasis.size(); ++i)
    if (kbasis[i].parity == 0) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> VarietyModel::odd_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < kbasis.size(); ++i)
    if (kbasis[i].parity == 1) out.push_back(static_cast<int>(i));
  return out;
}

FGAbelianGroup VarietyModel::bplus() const {
  const int free = static_cast<int>(bplus_gens.size()) - static_cast<int>(bplus_torsion.size());
  if (free < 0) throw SchemaError("more torsion orders than B+ generators");
  return FGAbelianGroup(free, bplus_torsion);
}

Rational euler(const VarietyModel& m, const QVec& ch_v, const QVec& ch_w) {
  const auto& r = m.ring;
  return r.integrate(r.multiply(r.multiply(dual_inv(r, ch_v), ch_w), m.todd));
}

Rational euler(const VarietyModel& m, int v, int w) {
  return euler(m, m.kbasis.at(static_cast<std::size_t>(v)).ch, m.kbasis.at(static_cast<std::size_t>(w)).ch);
}

Rational euler_sym(const VarietyModel& m, int v, int w) { return euler(m, v, w) + euler(m, w, v); }

std::vector<QVec> euler_matrix(const VarietyModel& m, const std::vector<int>& idx, bool symmetrized) {
  std::vector<QVec> out(idx.size(), QVec(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      out[i][j] = symmetrized ? euler_sym(m, idx[i], idx[j]) : euler(m, idx[i], idx[j]);
  return out;
}

std::vector<std::string> validate_variety(const VarietyModel& m) {
  std::vector<std::string> problems = m.ring.validate();
  const auto& r = m.ring;
  if (m.todd.size() != r.size()) {
    problems.push_back("Todd class has the wrong length");
    return problems;
  }
  if (m.todd[0] != 1) problems.push_back("Todd class degree-0 component is not 1");
  for (std::size_t k = 1; k < r.size(); ++k)
    if (m.todd[k] != 0 && r.generator(k).degree % 2 != 0) problems.push_back("Todd class has an odd component");
  for (const auto& e : m.kbasis) {
    if (e.ch.size() != r.size()) {
      problems.push_back("Chern character of " + e.name + " has the wrong length");
      return problems;
    }
    if (e.parity != 0 && e.parity != 1) problems.push_back("parity of " + e.name + " must be 0 or 1");
    for (std::size_t k = 0; k < r.size(); ++k)
      if (e.ch[k] != 0 && r.generator(k).degree % 2 != e.parity)
        problems.push_back("parity mismatch in the Chern character of " + e.name);
  }
  const auto even = m.even_indices();
  for (const auto& g : m.bplus_gens)
    if (g.size() != even.size()) problems.push_back("B+ generator has the wrong number of coordinates");
  if (m.bplus_torsion.size() > m.bplus_gens.size()) problems.push_back("more torsion orders than B+ generators");
  for (std::size_t i = 0; i < m.kbasis.size(); ++i)
    for (std::size_t j = 0; j < m.kbasis.size(); ++j) {
      const Rational x = euler(m, static_cast<int>(i), static_cast<int>(j));
      if (x.get_den() != 1)
        problems.push_back("chi(" + m.kbasis[i].name + ", " + m.kbasis[j].name + ") = " + to_string(x) +
                           " is not an integer");
    }
  if (m.cy2n) {
    if (r.complex_dim() != 2 * *m.cy2n) problems.push_back("Calabi-Yau flag does not match the dimension");
    for (int i : even)
      for (int j : even)
        if (euler(m, i, j) != euler(m, j, i)) problems.push_back("chi is not symmetric on the even part");
  }
  return problems;
}

namespace {

/// Ring assembled from sparse products; products with element 0 are implied.
CohomologyRing make_ring(std::vector<CohomologyGenerator> basis,
                         const std::vector<std::tuple<std::size_t, std::size_t, QVec>>& mul, QVec integral, int dim) {
  const auto n = basis.size();
  std::vector<std::vector<QVec>> products(n, std::vector<QVec>(n, QVec(n, 0)));
  for (std::size_t j = 0; j < n; ++j) {
    products[0][j][j] = 1;
    products[j][0][j] = 1;
  }
  for (const auto& [i, j, v] : mul) {
    if (i >= n || j >= n) throw SchemaError("product index out of range");
    products[i][j] = v;
  }
  return CohomologyRing(std::move(basis), std::move(products), std::move(integral), dim);
}

QVec qvec(std::initializer_list<Rational> xs) { return QVec(xs); }

QVec unit_vec(std::size_t n, std::size_t k, const Rational& c = 1) {
  QVec v(n, 0);
  v[k] = c;
  return v;
}

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

VarietyModel make_p1() {
  VarietyModel m;
  m.name = "p1";
  m.ring = make_ring({{"1", 0}, {"h", 2}}, {}, qvec({0, 1}), 1);
  m.todd = qvec({1, 1});
  m.kbasis = {{"O", 0, qvec({1, 0})}, {"O(1)", 0, qvec({1, 1})}};
  m.bplus_gens = identity(2);
  return m;
}

VarietyModel make_p2() {
  VarietyModel m;
  m.name = "p2";
  m.ring = make_ring({{"1", 0}, {"h", 2}, {"h2", 4}}, {{1, 1, qvec({0, 0, 1})}}, qvec({0, 0, 1}), 2);
  m.todd = qvec({1, Rational(3) / 2, 1});
  for (int d = 0; d <= 2; ++d)
    m.kbasis.push_back({d == 0 ? "O" : "O(" + std::to_string(d) + ")", 0, qvec({1, d, rat(d * d) / 2})});
  m.bplus_gens = identity(3);
  return m;
}

VarietyModel make_k3_reduced() {
  VarietyModel m;
  m.name = "k3_reduced";
  m.ring = make_ring({{"1", 0}, {"h1", 2}, {"h2", 2}, {"p", 4}},
                     {{1, 2, qvec({0, 0, 0, 1})}, {2, 1, qvec({0, 0, 0, 1})}}, qvec({0, 0, 0, 1}), 2);
  m.todd = qvec({1, 0, 0, 2});
  m.kbasis = {{"O", 0, qvec({1, 0, 0, 0})},
              {"L1", 0, qvec({1, 1, 0, 0})},
              {"L2", 0, qvec({1, 0, 1, 0})},
              {"pt", 0, qvec({0, 0, 0, 1})}};
  m.bplus_gens = identity(4);
  m.cy2n = 1;
  return m;
}

} // namespace

VarietyModel genus_g(int g) {
  if (g < 1) throw std::invalid_argument("genus must be at least 1");
  const auto n = static_cast<std::size_t>(2 * g + 2);
  const std::size_t top = n - 1;
  std::vector<CohomologyGenerator> basis{{"1", 0}};
  const bool single = g == 1;
  for (int i = 1; i <= g; ++i) basis.push_back({single ? "a" : "a" + std::to_string(i), 1});
  for (int i = 1; i <= g; ++i) basis.push_back({single ? "b" : "b" + std::to_string(i), 1});
  basis.push_back({"p", 2});
  std::vector<std::tuple<std::size_t, std::size_t, QVec>> mul;
  for (std::size_t i = 1; i <= static_cast<std::size_t>(g); ++i) {
    const std::size_t a = i, b = i + static_cast<std::size_t>(g);
    mul.emplace_back(a, b, unit_vec(n, top, 1));
    mul.emplace_back(b, a, unit_vec(n, top, -1));
  }
  VarietyModel m;
  m.name = single ? "elliptic" : "genus_g(" + std::to_string(g) + ")";
  m.ring = make_ring(basis, mul, unit_vec(n, top), 1);
  m.todd = unit_vec(n, 0);
  m.todd[top] = 1 - g;
  m.kbasis.push_back({"O", 0, unit_vec(n, 0)});
  m.kbasis.push_back({"pt", 0, unit_vec(n, top)});
  for (std::size_t i = 1; i <= static_cast<std::size_t>(2 * g); ++i) {
    std::string nm = basis[i].name;
    nm[0] = static_cast<char>(std::toupper(nm[0]));
    m.kbasis.push_back({nm, 1, unit_vec(n, i)});
  }
  m.bplus_gens = identity(2);
  return m;
}

std::vector<std::string> builtin_names() { return {"p1", "p2", "elliptic", "genus_g(G)", "k3_reduced"}; }

VarietyModel builtin(const std::string& name) {
  VarietyModel m;
  std::smatch match;
  static const std::regex genus(R"(genus_g\((\d+)\))");
  if (name == "p1")
    m = make_p1();
  else if (name == "p2")
    m = make_p2();
  else if (name == "elliptic")
    m = genus_g(1);
  else if (name == "k3_reduced")
    m = make_k3_reduced();
  else if (std::regex_match(name, match, genus))
    m = genus_g(std::stoi(match[1].str()));
  else
    throw std::invalid_argument("unknown built-in variety '" + name + "'");
  auto problems = validate_variety(m);
  if (!problems.empty()) throw ModelInvalid(name + ": " + problems.front());
  return m;
}

namespace {

using nlohmann::json;

Rational json_rational(const json& j) {
  if (j.is_number_integer()) return rat(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw SchemaError("expected an integer or a \"p/q\" string, got " + j.dump());
}

QVec json_qvec(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) throw SchemaError(what + " must be an array of length " + std::to_string(n));
  QVec v;
  for (const auto& x : j) v.push_back(json_rational(x));
  return v;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

} // namespace

VarietyModel variety_from_json_text(const std::string& text, bool validate) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  try {
    VarietyModel m;
    m.name = field(j, "name").get<std::string>();
    const int dim = field(j, "dim").get<int>();
    const auto& coh = field(j, "cohomology");
    std::vector<CohomologyGenerator> basis;
    for (const auto& b : field(coh, "basis")) basis.push_back({field(b, "name").get<std::string>(), field(b, "deg").get<int>()});
    const auto n = basis.size();
    std::vector<std::tuple<std::size_t, std::size_t, QVec>> mul;
    for (const auto& entry : field(coh, "mul")) {
      if (!entry.is_array() || entry.size() != 3) throw SchemaError("mul entries must be [i, j, [coeffs]]");
      mul.emplace_back(entry[0].get<std::size_t>(), entry[1].get<std::size_t>(), json_qvec(entry[2], n, "product"));
    }
    m.ring = make_ring(basis, mul, json_qvec(field(coh, "integrate"), n, "integrate"), dim);
    m.todd = json_qvec(field(j, "todd"), n, "todd");
    for (const auto& k : field(j, "kbasis"))
      m.kbasis.push_back({field(k, "name").get<std::string>(), field(k, "parity").get<int>(),
                          json_qvec(field(k, "ch"), n, "ch")});
    const auto& bp = field(j, "bplus");
    m.bplus_gens = field(bp, "gens").get<IntMatrix>();
    if (bp.contains("torsion")) m.bplus_torsion = bp.at("torsion").get<std::vector<long long>>();
    if (j.contains("cy2n") && !j.at("cy2n").is_null()) m.cy2n = j.at("cy2n").get<int>();
    if (validate) {
      auto problems = validate_variety(m);
      if (!problems.empty()) throw ModelInvalid(m.name + ": " + problems.front());
    }
    return m;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("schema violation: ") + e.what());
  }
}

std::string variety_to_json_text(const VarietyModel& m) {
  auto qjson = [](const QVec& v) {
    json a = json::array();
    for (const auto& x : v) {
      if (x.get_den() == 1)
        a.push_back(x.get_num().get_si());
      else
        a.push_back(to_string(x));
    }
    return a;
  };
  const auto& ring = m.ring;
  json basis = json::array(), mul = json::array();
  for (const auto& g : ring.basis()) basis.push_back({{"name", g.name}, {"deg", g.degree}});
  for (std::size_t i = 1; i < ring.size(); ++i)
    for (std::size_t j = 1; j < ring.size(); ++j) {
      const QVec& p = ring.product(i, j);
      if (std::any_of(p.begin(), p.end(), [](const Rational& x) { return x != 0; }))
        mul.push_back({i, j, qjson(p)});
    }
  json kbasis = json::array();
  for (const auto& k : m.kbasis) kbasis.push_back({{"name", k.name}, {"parity", k.parity}, {"ch", qjson(k.ch)}});
  json j = {{"name", m.name},
            {"dim", ring.complex_dim()},
            {"cohomology", {{"basis", basis}, {"mul", mul}, {"integrate", qjson(ring.integral_values())}}},
            {"todd", qjson(m.todd)},
            {"kbasis", kbasis},
            {"bplus", {{"gens", m.bplus_gens}, {"torsion", m.bplus_torsion}}}};
  j["cy2n"] = m.cy2n ? json(*m.cy2n) : json(nullptr);
  return j.dump(2);
}

VarietyModel load_variety(const std::string& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return variety_from_json_text(ss.str(), validate);
}

VarietyModel resolve_variety(const std::string& name_or_path) {
  static const std::regex genus(R"(genus_g\(\d+\))");
  if (name_or_path == "p1" || name_or_path == "p2" || name_or_path == "elliptic" || name_or_path == "k3_reduced" ||
      std::regex_match(name_or_path, genus))
    return builtin(name_or_path);
  return load_variety(name_or_path);
}

std::string to_string(Variant v) { return v == Variant::cy ? "cy" : "general"; }

Variant parse_variant(const std::string& s) {
  if (s == "cy") return Variant::cy;
  if (s == "general") return Variant::general;
  throw std::invalid_argument("variant must be 'cy' or 'general'");
}

IntMatrix working_form(const VarietyModel& m, Variant variant) {
  const auto n = m.kbasis.size();
  IntMatrix out(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (m.kbasis[i].parity != m.kbasis[j].parity) continue;
      const bool sym = variant == Variant::general && m.kbasis[i].parity == 0;
      const Rational x = sym ? euler_sym(m, static_cast<int>(i), static_cast<int>(j))
                             : euler(m, static_cast<int>(i), static_cast<int>(j));
      if (x.get_den() != 1) throw ModelInvalid("Euler form is not integral on the K-basis");
      out[i][j] = x.get_num().get_si();
    }
  return out;
}

SuperLattice superlattice_of(const VarietyModel& m, Variant variant) {
  const IntMatrix w = working_form(m, variant);
  const auto even = m.even_indices(), odd = m.odd_indices();
  auto block = [&w](const std::vector<int>& idx) {
    IntMatrix b(idx.size(), std::vector<long long>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j)
        b[i][j] = w[static_cast<std::size_t>(idx[i])][static_cast<std::size_t>(idx[j])];
    return b;
  };
  SuperLattice L;
  L.even = IntBilinearForm(FGAbelianGroup(static_cast<int>(even.size()), {}), block(even), Symmetry::symmetric);
  L.odd = IntBilinearForm(FGAbelianGroup(static_cast<int>(odd.size()), {}), block(odd), Symmetry::antisymmetric);
  L.bplus = m.bplus();
  L.iota.assign(even.size(), std::vector<long long>(m.bplus_gens.size(), 0));
  for (std::size_t c = 0; c < m.bplus_gens.size(); ++c)
    for (std::size_t r = 0; r < even.size(); ++r) L.iota[r][c] = m.bplus_gens[c][r];
  for (int i : even) L.even_names.push_back(m.kbasis[static_cast<std::size_t>(i)].name);
  for (int i : odd) L.odd_names.push_back(m.kbasis[static_cast<std::size_t>(i)].name);
  return L;
}

SignCocycle variant_epsilon(const VarietyModel& m, Variant variant) {
  if (variant == Variant::cy) return build_epsilon(superlattice_of(m, Variant::cy));
  // eps(alpha, beta) = (-1)^{chi(alpha, beta)} with the unsymmetrized chi
  const SuperLattice raw = superlattice_of(m, Variant::cy);
  const auto g = raw.bplus;
  std::vector<std::vector<int>> s(g.size(), std::vector<int>(g.size(), 1));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      s[i][j] = sign_power(pair(raw.even, apply_iota(raw, g.generator(i)), apply_iota(raw, g.generator(j))));
  return SignCocycle(g, std::move(s));
}

} // namespace vertexlab
