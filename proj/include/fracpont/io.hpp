#pragma once

#include "fracpont/grid.hpp"
#include "fracpont/ocp.hpp"

#include <json.hpp>

#include <string>

namespace fracpont {

// CSV layout: header "t,v1,...,vdim", one row per node, values printed with
// 17 significant digits so a write/read cycle is lossless.
void write_path_csv(const SampledPath& path, const std::string& filename);

// Accepts any header whose first column is "t"; remaining columns become the
// path dimensions. The grid is reconstructed from the t column, which must be
// uniformly spaced.
SampledPath read_path_csv(const std::string& filename);

// Trajectory table for a sweep result: t, q1..qd, u1..um, p1..pd, dHdv1..dHdvm.
void write_iterate_csv(const PontryaginIterate& iterate, const std::string& filename);

nlohmann::json iterate_summary(const PontryaginIterate& iterate);

void write_json(const nlohmann::json& doc, const std::string& filename);

} // namespace fracpont
