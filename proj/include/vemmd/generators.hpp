#pragma once

#include <cstdint>
#include <string>

#include "vemmd/mesh.hpp"

namespace vemmd {

enum class MeshFamily {
  Triangular,
  Square,
  Concave,
  VoronoiStructured,
  VoronoiRandom,
};

MeshFamily mesh_family_from_string(const std::string& name);
std::string to_string(MeshFamily family);

/// Generates one of the five benchmark families on the unit square.
/// n is the subdivision count per direction (n^2 seeds for the Voronoi
/// families). Deterministic for a fixed seed; the seed only matters for the
/// Voronoi families. For triangular/square/concave, h halves when n doubles.
PolyMesh generate(MeshFamily family, int n, std::uint64_t seed = 0);

}  // namespace vemmd
