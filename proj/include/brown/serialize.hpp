#pragma once

#include <json.hpp>

#include "brown/cover.hpp"
#include "brown/potential.hpp"

namespace brown {

using Json = nlohmann::json;

/// {"d": rows, ["cols": cols,] "re": [[..]], "im": [[..]]}; "cols" is omitted
/// for square matrices.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const Json& j, const Tolerances& tol = default_tols());

Json idempotent_to_json(const Idempotent& e);
Idempotent idempotent_from_json(const Json& j, const Tolerances& tol = default_tols());

Json decomposition_to_json(const JointDecomposition& dec);

Json map_to_json(const MapDescriptor& m);
MapDescriptor map_from_json(const Json& j);

Json region_to_json(const Region& r);
Region region_from_json(const Json& j);

Json report_to_json(const Report& r);

/// "re1,im1,...,ren,imn,weight" rows.
std::string measure_to_csv(const AtomicMeasure& mu);

/// "x,y,mass" rows.
std::string grid_to_csv(const GridDensity& g);

/// "z_re,z_im,w_re,w_im,delta,level" rows.
std::string cover_to_csv(const BoxCover& c);

/// Binary P6 heatmap of cell masses; fixed five-stop colormap over
/// mass / max(mass) (negative cells clamp to the low stop).
std::string grid_to_ppm(const GridDensity& g);

}  // namespace brown
