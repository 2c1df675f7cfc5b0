#pragma once

#include "vertexlab/abelian.hpp"
#include "vertexlab/fock.hpp"

#include <string>

namespace vertexlab::testing {

/// Directory holding the sample JSON inputs.
inline std::string data_path(const std::string& file) { return std::string(VERTEXLAB_DATA_DIR) + "/" + file; }

/// Free even lattice with the given Gram matrix, optional odd part, B+ = A+ and iota = id.
inline SuperLattice free_lattice(const IntMatrix& even, const IntMatrix& odd = {}) {
  SuperLattice lat;
  const int r = static_cast<int>(even.size());
  lat.even = IntBilinearForm(FGAbelianGroup(r, {}), even, Symmetry::symmetric);
  lat.odd = IntBilinearForm(FGAbelianGroup(static_cast<int>(odd.size()), {}), odd, Symmetry::antisymmetric);
  lat.bplus = lat.even.group();
  lat.iota.assign(static_cast<std::size_t>(r), std::vector<long long>(static_cast<std::size_t>(r), 0));
  for (int k = 0; k < r; ++k) lat.iota[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = 1;
  ensure_names(lat);
  return lat;
}

/// b_{-i}(v) applied to s.
inline FockState boson(const FockSpace& space, int v, int i, const FockState& s) { return b_mode(space, v, -i, s); }
inline FockState fermion(const FockSpace& space, int w, int i, const FockState& s) { return f_mode(space, w, -i, s); }

} // namespace vertexlab::testing
