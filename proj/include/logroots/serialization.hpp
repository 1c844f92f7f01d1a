#pragma once

#include <string>

#include <json.hpp>

#include "logroots/coeff_models.hpp"
#include "logroots/experiments.hpp"
#include "logroots/majorant.hpp"
#include "logroots/poisson_limit.hpp"

namespace logroots {

using Json = nlohmann::json;

// Non-finite doubles are written as the strings "inf", "-inf" and "nan".
Json number_to_json(double x);
double number_from_json(const Json& j);

void to_json(Json& j, const TailSpec& s);
void from_json(const Json& j, TailSpec& s);
void to_json(Json& j, const PlanarPoint& p);
void from_json(const Json& j, PlanarPoint& p);
void to_json(Json& j, const Segment& s);
void from_json(const Json& j, Segment& s);
void to_json(Json& j, const Majorant& m);
void from_json(const Json& j, Majorant& m);
void to_json(Json& j, const Mark& m);
void from_json(const Json& j, Mark& m);
void to_json(Json& j, const PointProcessSample& s);
void from_json(const Json& j, PointProcessSample& s);
void to_json(Json& j, const Rectangle& r);
void from_json(const Json& j, Rectangle& r);
/// Missing optional fields keep their defaults.
void to_json(Json& j, const ExperimentConfig& c);
void from_json(const Json& j, ExperimentConfig& c);
void to_json(Json& j, const StatisticRecord& r);
void from_json(const Json& j, StatisticRecord& r);
/// {config, statistics, uncertified_fraction, seed, runtime_seconds}
void to_json(Json& j, const ExperimentReport& r);
void from_json(const Json& j, ExperimentReport& r);

/// Report JSON without the runtime field, for determinism comparisons.
std::string deterministic_dump(const ExperimentReport& r);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace logroots
