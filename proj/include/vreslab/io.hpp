#ifndef VRESLAB_IO_HPP
#define VRESLAB_IO_HPP

#include <json.hpp>

#include "vreslab/betti.hpp"
#include "vreslab/int_matrix.hpp"
#include "vreslab/point_ideal.hpp"
#include "vreslab/vres.hpp"

namespace vreslab {

using Json = nlohmann::ordered_json;

/// {n, m, p, seed, points: [[x-coords],[y-coords]], ...}
Json to_json(const PointSet& pts);
PointSet point_set_from_json(const Json& j);

/// {window, entries: [{k, i, j, beta}], boundary_clean}
Json to_json(const BettiTable& bt);
BettiTable betti_table_from_json(const Json& j);

/// {stages: [[{i, j, mult}]]}
Json to_json(const FreeComplexShape& shape);
FreeComplexShape shape_from_json(const Json& j);

/// [{cell: [i, j], expected, actual}]
Json diff_report(const std::vector<CellDiff>& diffs);
/// Stage-wise multiset difference of two shapes, same record layout with k.
Json shape_diff_report(const FreeComplexShape& expected, const FreeComplexShape& actual);

Json to_json(const MrcReport& report, bool include_cells = false);

}  // namespace vreslab

#endif
