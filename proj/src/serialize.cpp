#include "lcsfrogs/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "lcsfrogs/error.hpp"

namespace lcsfrogs {

namespace {

Json rational_or_null(const std::optional<Rational>& q) {
  return q ? Json(format_rational(*q)) : Json(nullptr);
}

std::optional<Rational> optional_rational(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return parse_rational(j[key].get<std::string>());
}

// Infinity has no JSON spelling; the open end of the last segment is null.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> lines_after_header(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw Error("csv: expected header '" + header + "'");
  std::vector<std::string> out;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const GammaCurve& c) {
  Json j;
  j["k"] = c.k;
  Json bps = Json::array();
  for (const auto& b : c.breakpoints) {
    bps.push_back({{"rho", b.rho_exact ? Json(format_rational(*b.rho_exact)) : Json(b.rho)},
                   {"gamma", b.gamma_exact ? Json(format_rational(*b.gamma_exact)) : Json(b.gamma)},
                   {"rho_value", b.rho},
                   {"gamma_value", b.gamma},
                   {"tau", b.tau ? Json(*b.tau) : Json(nullptr)}});
  }
  j["breakpoints"] = std::move(bps);
  Json segs = Json::array();
  for (const auto& s : c.segments) {
    segs.push_back({{"from", rational_or_null(s.from_exact)},
                    {"to", rational_or_null(s.to_exact)},
                    {"from_value", s.from},
                    {"to_value", finite_or_null(s.to)},
                    {"slope", format_rational(s.slope)}});
  }
  j["segments"] = std::move(segs);
  return j;
}

GammaCurve gamma_curve_from_json(const Json& j) {
  GammaCurve c;
  c.k = j.at("k").get<int>();
  for (const auto& b : j.at("breakpoints")) {
    GammaBreakpoint bp{};
    bp.rho = b.at("rho_value").get<double>();
    bp.gamma = b.at("gamma_value").get<double>();
    if (!b.at("tau").is_null()) bp.tau = b["tau"].get<double>();
    if (b.at("rho").is_string()) bp.rho_exact = parse_rational(b["rho"].get<std::string>());
    if (b.at("gamma").is_string()) bp.gamma_exact = parse_rational(b["gamma"].get<std::string>());
    c.breakpoints.push_back(std::move(bp));
  }
  for (const auto& s : j.at("segments")) {
    GammaSegment seg{};
    seg.from = s.at("from_value").get<double>();
    seg.to = s.at("to_value").is_null() ? std::numeric_limits<double>::infinity()
                                        : s["to_value"].get<double>();
    seg.slope = parse_rational(s.at("slope").get<std::string>());
    seg.from_exact = optional_rational(s, "from");
    seg.to_exact = optional_rational(s, "to");
    c.segments.push_back(std::move(seg));
  }
  return c;
}

Json to_json(const SummaryStats& s) {
  return {{"count", s.count}, {"mean", s.mean}, {"stddev", s.stddev}, {"min", s.min}, {"max", s.max}};
}

SummaryStats summary_from_json(const Json& j) {
  SummaryStats s;
  s.count = j.at("count").get<std::int64_t>();
  s.mean = j.at("mean").get<double>();
  s.stddev = j.at("stddev").get<double>();
  s.min = j.at("min").get<double>();
  s.max = j.at("max").get<double>();
  return s;
}

Json to_json(const ExperimentConfig& c) {
  return {{"seed", c.seed},
          {"trials", c.trials},
          {"n", c.n},
          {"alphabet_size", c.alphabet_size},
          {"threads", c.threads}};
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  c.seed = j.at("seed").get<std::uint64_t>();
  c.trials = j.at("trials").get<std::int64_t>();
  c.n = j.at("n").get<std::int64_t>();
  c.alphabet_size = j.at("alphabet_size").get<int>();
  c.threads = j.value("threads", 1);
  return c;
}

std::string samples_csv(std::span<const double> samples) {
  std::string out = "trial,value\n";
  for (std::size_t i = 0; i < samples.size(); ++i)
    out += std::to_string(i) + "," + format_double(samples[i]) + "\n";
  return out;
}

std::vector<double> samples_from_csv(const std::string& text) {
  std::vector<double> out;
  for (const auto& line : lines_after_header(text, "trial,value")) {
    auto cells = split(line, ',');
    if (cells.size() != 2) throw Error("csv: bad row '" + line + "'");
    out.push_back(std::stod(cells[1]));
  }
  return out;
}

std::string distribution_csv(std::span<const DistributionRow> rows) {
  std::uint64_t total = 0;
  for (const auto& r : rows) total += r.count;
  std::string out = "position(s),count,frequency\n";
  for (const auto& r : rows) {
    std::string pos;
    for (std::size_t i = 0; i < r.positions.size(); ++i)
      pos += (i ? " " : "") + std::to_string(r.positions[i]);
    const double f = total == 0 ? 0.0 : static_cast<double>(r.count) / static_cast<double>(total);
    out += pos + "," + std::to_string(r.count) + "," + format_double(f) + "\n";
  }
  return out;
}

std::vector<DistributionRow> distribution_from_csv(const std::string& text) {
  std::vector<DistributionRow> out;
  for (const auto& line : lines_after_header(text, "position(s),count,frequency")) {
    auto cells = split(line, ',');
    if (cells.size() != 3) throw Error("csv: bad row '" + line + "'");
    DistributionRow r;
    for (const auto& p : split(cells[0], ' '))
      if (!p.empty()) r.positions.push_back(std::stoi(p));
    r.count = std::stoull(cells[1]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace lcsfrogs
