#pragma once

// JSON views of the library's reports. Key order is fixed so output is byte-stable.

#include "cacforge/cac.hpp"
#include "cacforge/diagonal.hpp"
#include "cacforge/scan.hpp"
#include "json.hpp"

namespace cacforge {

using ojson = nlohmann::ordered_json;

ojson to_json(const FieldCtx& field);
ojson to_json(const FieldCtx& field, const DiagonalReport& report);
ojson to_json(const FieldCtx& field, const ZeroCoordClassification& c);
ojson to_json(const BoundSheet& sheet);
ojson to_json(const CacSizeSheet& sheet);
ojson to_json(const TripleWitness& tw);
ojson to_json(const ScanRecord& rec, bool timing = true);
ojson to_json(const PEllSet& set);

}  // namespace cacforge
