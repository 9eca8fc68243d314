#pragma once

#include <vector>

namespace oscdecay {

// Deterministic quasi-uniform sample of the unit sphere S^{dim-1}.
//
//   dim == 2 : circle lattice, samples_per_dim points
//   dim == 4 : product-angle lattice, samples_per_dim^3 points
//   dim >= 6 : golden-ratio additive recurrence mapped through Box-Muller,
//              samples_per_dim^3 points (capped)
//
// The 2*dim signed coordinate axis points are always appended, so degeneracies
// on the axes (the common failure mode for rank-one checks) are hit exactly.
std::vector<std::vector<double>> sphere_lattice(int dim, int samples_per_dim);

}  // namespace oscdecay
