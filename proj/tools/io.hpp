#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "semigen/generator.hpp"
#include "semigen/loewner_cp.hpp"
#include "semigen/semiflow.hpp"
#include "semigen/value_regions.hpp"

namespace semigen::io {

using Json = nlohmann::json;

/// Parses a file into JSON; ConfigError on unreadable or malformed input.
Json read_json_file(const std::string& path);

/// {"re": x, "im": y}; a bare number is accepted as a real value.
Complex complex_from_json(const Json& j);
Json complex_to_json(Complex z);

/// {"atoms": [{"theta": t, "mass": m}, ...], "gamma": g, "offset": c}; every key optional.
AtomicHerglotz herglotz_from_json(const Json& j);
Json herglotz_to_json(const AtomicHerglotz& p);

/// {"tau": .., "sigmas": [theta, ...], "lambdas": [...]}.
FixedPointConfig config_from_json(const Json& j);
Json config_to_json(const FixedPointConfig& c);

/// Config keys plus "p".
GeneratorSpec spec_from_json(const Json& j);
Json spec_to_json(const GeneratorSpec& s);

/// A GeneratorSpec, or {"tau": .., "pstar": {...}} for a Berkson-Porta pair.
Generator generator_from_json(const Json& j);

Json disk_to_json(const DiskRegion& d);
Json interval_to_json(const IntervalRegion& i);
Json charted_to_json(const ChartedDisk& c);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

std::string region_csv(const std::vector<BoundarySample>& samples);
std::string trajectory_csv(const Trajectory& traj);

struct SvgMark {
  Complex point;
  double radius = 0.0;
};

/// Closed paths and point marks in the viewBox "-1.2 -1.2 2.4 2.4", scaled so
/// that everything fits in the unit square; stroke width 0.01.
std::string svg_document(const std::vector<std::vector<Complex>>& paths, const std::vector<SvgMark>& marks = {});

void write_text_file(const std::string& path, const std::string& text);

} // namespace semigen::io
