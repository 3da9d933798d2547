#pragma once
#include <string>
#include <vector>

#include "ruledgeo/ruled_surface.hpp"
#include "ruledgeo/striction.hpp"

namespace ruledgeo::io {

// Wavefront OBJ: `v x y z` in chart coordinates, quad faces over the (u,v)
// grid restricted to valid vertices, striction branches as `l` polylines.
// Scalar fields travel in the sidecar CSV keyed by grid index.
std::string mesh_obj(const MeshGrid& mesh,
                     const StrictionResult* striction = nullptr);

}  // namespace ruledgeo::io
