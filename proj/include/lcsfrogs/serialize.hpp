#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lcsfrogs/chain.hpp"
#include "lcsfrogs/montecarlo.hpp"

namespace lcsfrogs {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings so nothing is lost on the way.
Json to_json(const GammaCurve& c);
GammaCurve gamma_curve_from_json(const Json& j);

Json to_json(const SummaryStats& s);
SummaryStats summary_from_json(const Json& j);

Json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const Json& j);

// "trial,value" rows.
std::string samples_csv(std::span<const double> samples);
std::vector<double> samples_from_csv(const std::string& text);

// One empirical distribution as "position(s),count,frequency" rows.
// Positions are joined with spaces when there are several.
struct DistributionRow {
  std::vector<int> positions;
  std::uint64_t count = 0;
};
std::string distribution_csv(std::span<const DistributionRow> rows);
std::vector<DistributionRow> distribution_from_csv(const std::string& text);

// Cell text with %.17g, so doubles survive a round trip.
std::string format_double(double x);

}  // namespace lcsfrogs
