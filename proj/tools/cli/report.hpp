#pragma once

#include <string>

#include <json.hpp>

#include "shiftop/analysis.hpp"
#include "shiftop/oracle.hpp"
#include "shiftop/spectrum.hpp"

namespace shiftop::cli {

using Json = nlohmann::ordered_json;

// Reals rounded to 12 significant digits; non-finite values become null.
Json number(double x);

Json to_json(Arc const& arc);
Json to_json(PeriodicStructure const& ps, Shift const& s);
Json to_json(InvertibilityReport const& report);
Json to_json(EvidenceRecord const& record);

std::string dump(Json const& doc);

}  // namespace shiftop::cli
