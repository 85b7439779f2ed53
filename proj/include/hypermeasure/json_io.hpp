#pragma once
// JSON forms of the certificates and reports. Non-finite doubles become null.

#include "json.hpp"

#include "hypermeasure/constants_pipeline.hpp"
#include "hypermeasure/measures.hpp"
#include "hypermeasure/tables.hpp"

namespace hm {

using nlohmann::json;

void to_json(json& j, const Grid& g);
void from_json(const json& j, Grid& g);
void to_json(json& j, const ConstantsCert& c);
void from_json(const json& j, ConstantsCert& c);
void to_json(json& j, const MeasureConstants& k);
void from_json(const json& j, MeasureConstants& k);
void to_json(json& j, const MeasureResult& r);
void from_json(const json& j, MeasureResult& r);

void to_json(json& j, const DnChoice& c);
void to_json(json& j, const ReverifyReport& r);
void to_json(json& j, const EscalationReport& r);
void to_json(json& j, const ConvergentReport& r);
void to_json(json& j, const QEstimate& e);
void to_json(json& j, const RemainderBracket& b);
void to_json(json& j, const TableRow& r);

}  // namespace hm
