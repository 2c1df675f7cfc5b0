#include "vertexlab/abelian.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace vertexlab {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

IntMatrix int_matrix(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of rows");
  IntMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw SchemaError(where + ": expected an array of rows");
    std::vector<long long> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw SchemaError(where + ": entries must be integers");
      r.push_back(x.get<long long>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

FGAbelianGroup group_of(const json& j, const std::string& where) {
  const json& r = field(j, "free_rank", where);
  if (!r.is_number_integer() || r.get<long long>() < 0) throw SchemaError(where + ": free_rank must be >= 0");
  std::vector<long long> torsion;
  if (j.contains("torsion")) {
    if (!j.at("torsion").is_array()) throw SchemaError(where + ": torsion must be an array");
    for (const auto& d : j.at("torsion")) {
      if (!d.is_number_integer() || d.get<long long>() < 2) throw SchemaError(where + ": torsion orders must be >= 2");
      torsion.push_back(d.get<long long>());
    }
  }
  return FGAbelianGroup(r.get<int>(), torsion);
}

IntBilinearForm form_of(const json& j, Symmetry tag, const std::string& where, std::vector<std::string>& names) {
  FGAbelianGroup g = group_of(j, where);
  IntMatrix m = j.contains("form") ? int_matrix(j.at("form"), where + ".form") : IntMatrix{};
  if (m.empty() && g.size() > 0) m.assign(g.size(), std::vector<long long>(g.size(), 0));
  if (m.size() != g.size()) throw SchemaError(where + ".form: expected " + std::to_string(g.size()) + " rows");
  for (const auto& row : m)
    if (row.size() != g.size()) throw SchemaError(where + ".form: expected a square matrix");
  if (j.contains("names")) {
    for (const auto& n : j.at("names")) {
      if (!n.is_string()) throw SchemaError(where + ".names: expected strings");
      names.push_back(n.get<std::string>());
    }
    if (names.size() != static_cast<std::size_t>(g.free_rank()))
      throw SchemaError(where + ".names: one name per free generator");
  }
  return IntBilinearForm(g, m, tag);
}

json group_json(const FGAbelianGroup& g) { return {{"free_rank", g.free_rank()}, {"torsion", g.torsion_orders()}}; }

} // namespace

SuperLattice lattice_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("lattice: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("lattice: expected an object");
  SuperLattice lat;
  lat.even = form_of(field(j, "even", "lattice"), Symmetry::symmetric, "even", lat.even_names);
  if (j.contains("odd"))
    lat.odd = form_of(j.at("odd"), Symmetry::antisymmetric, "odd", lat.odd_names);
  else
    lat.odd = IntBilinearForm(FGAbelianGroup(0, {}), {}, Symmetry::antisymmetric);
  const std::size_t ne = lat.even.group().size();
  if (j.contains("bplus") != j.contains("iota")) throw SchemaError("lattice: give both \"bplus\" and \"iota\" or neither");
  if (j.contains("bplus")) {
    lat.bplus = group_of(j.at("bplus"), "bplus");
    lat.iota = int_matrix(j.at("iota"), "iota");
    if (lat.iota.size() != ne) throw SchemaError("iota: one row per generator of the even group");
    for (const auto& row : lat.iota)
      if (row.size() != lat.bplus.size()) throw SchemaError("iota: one column per generator of B+");
  } else {
    lat.bplus = lat.even.group();
    lat.iota.assign(ne, std::vector<long long>(ne, 0));
    for (std::size_t k = 0; k < ne; ++k) lat.iota[k][k] = 1;
  }
  ensure_names(lat);
  return lat;
}

SuperLattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return lattice_from_json_text(ss.str());
}

std::string lattice_to_json_text(const SuperLattice& lattice) {
  json even = group_json(lattice.even.group());
  even["form"] = lattice.even.matrix();
  even["names"] = lattice.even_names;
  json odd = group_json(lattice.odd.group());
  odd["form"] = lattice.odd.matrix();
  odd["names"] = lattice.odd_names;
  json j = {{"even", even}, {"odd", odd}, {"bplus", group_json(lattice.bplus)}, {"iota", lattice.iota}};
  return j.dump(2);
}

} // namespace vertexlab
