#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "semigen/error.hpp"

namespace semigen::io {

namespace {

double number(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing key \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("key \"") + key + "\" must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw ConfigError(std::string("missing array \"") + key + "\"");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ConfigError(std::string("array \"") + key + "\" must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

} // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object()) throw ConfigError("complex value must be a number or an object");
  if (j.contains("theta")) return BoundaryPoint(number(j, "theta")).value();
  return {number(j, "re"), j.contains("im") ? number(j, "im") : 0.0};
}

Json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

AtomicHerglotz herglotz_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("Herglotz function must be an object");
  std::vector<AtomicHerglotz::Atom> atoms;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw ConfigError("\"atoms\" must be an array");
    for (const auto& a : j.at("atoms")) {
      double mass = number(a, "mass");
      if (!(mass >= 0.0)) throw DomainError("atom masses must be nonnegative");
      atoms.push_back({BoundaryPoint(number(a, "theta")), mass});
    }
  }
  double gamma = j.contains("gamma") ? number(j, "gamma") : 0.0;
  double offset = j.contains("offset") ? number(j, "offset") : 0.0;
  if (!(offset >= 0.0)) throw DomainError("offset must be nonnegative");
  return AtomicHerglotz(std::move(atoms), gamma, offset);
}

Json herglotz_to_json(const AtomicHerglotz& p) {
  Json atoms = Json::array();
  for (const auto& a : p.atoms()) atoms.push_back({{"theta", a.point.theta()}, {"mass", a.mass}});
  Json j{{"atoms", atoms}, {"gamma", p.gamma()}};
  if (p.offset() != 0.0) j["offset"] = p.offset();
  return j;
}

FixedPointConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be an object");
  if (!j.contains("tau")) throw ConfigError("missing key \"tau\"");
  Complex tau = complex_from_json(j.at("tau"));
  std::vector<BoundaryPoint> sigmas;
  for (double t : numbers(j, "sigmas")) sigmas.emplace_back(t);
  return FixedPointConfig(tau, std::move(sigmas), numbers(j, "lambdas"));
}

Json config_to_json(const FixedPointConfig& c) {
  Json sigmas = Json::array();
  for (const auto& s : c.sigmas()) sigmas.push_back(s.theta());
  return {{"tau", complex_to_json(c.tau())}, {"sigmas", sigmas}, {"lambdas", c.lambdas()}};
}

GeneratorSpec spec_from_json(const Json& j) {
  FixedPointConfig config = config_from_json(j);
  AtomicHerglotz p = j.contains("p") ? herglotz_from_json(j.at("p")) : AtomicHerglotz();
  return {config, p};
}

Json spec_to_json(const GeneratorSpec& s) {
  Json j = config_to_json(s.config);
  j["p"] = herglotz_to_json(s.p);
  return j;
}

Generator generator_from_json(const Json& j) {
  if (j.is_object() && j.contains("pstar")) {
    if (!j.contains("tau")) throw ConfigError("missing key \"tau\"");
    BerksonPortaSpec bp{complex_from_json(j.at("tau")), herglotz_from_json(j.at("pstar"))};
    if (!is_generator(bp)) throw DomainError("malformed Berkson-Porta pair");
    return bp;
  }
  return spec_from_json(j);
}

Json disk_to_json(const DiskRegion& d) {
  return {{"kind", "disk"}, {"center", complex_to_json(d.center)}, {"radius", d.radius}};
}

Json interval_to_json(const IntervalRegion& i) { return {{"kind", "interval"}, {"lo", i.lo}, {"hi", i.hi}}; }

Json charted_to_json(const ChartedDisk& c) {
  Json j{{"kind", "charted_disk"},
         {"chart", c.chart == ChartedDisk::Chart::Reciprocal ? "reciprocal" : "linear"},
         {"factor", complex_to_json(c.factor)},
         {"disk", disk_to_json(c.disk)}};
  if (c.zero_only) j["zero_only"] = true;
  return j;
}

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string region_csv(const std::vector<BoundarySample>& samples) {
  std::ostringstream out;
  out << "param,re,im\n";
  for (const auto& s : samples)
    out << format_number(s.param) << ',' << format_number(s.point.real()) << ',' << format_number(s.point.imag()) << '\n';
  return out.str();
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t,re,im,dre,dim\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    Complex d = traj.derivs ? (*traj.derivs)[i] : Complex(std::nan(""), std::nan(""));
    out << format_number(traj.times[i]) << ',' << format_number(traj.points[i].real()) << ','
        << format_number(traj.points[i].imag()) << ',' << format_number(d.real()) << ',' << format_number(d.imag())
        << '\n';
  }
  return out.str();
}

std::string svg_document(const std::vector<std::vector<Complex>>& paths, const std::vector<SvgMark>& marks) {
  double extent = 0.0;
  for (const auto& path : paths)
    for (Complex z : path) extent = std::max({extent, std::abs(z.real()), std::abs(z.imag())});
  for (const auto& m : marks)
    extent = std::max({extent, std::abs(m.point.real()), std::abs(m.point.imag())});
  const double scale = extent > 0.0 && std::isfinite(extent) ? 1.0 / extent : 1.0;

  auto coord = [scale](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v * scale);
    std::string s(buf);
    return s == "-0.000000" ? std::string("0.000000") : s;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.2 -1.2 2.4 2.4\">\n";
  out << "<circle cx=\"0\" cy=\"0\" r=\"" << coord(1.0) << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.01\"/>\n";
  for (const auto& path : paths) {
    if (path.empty()) continue;
    out << "<path d=\"";
    for (std::size_t i = 0; i < path.size(); ++i)
      out << (i == 0 ? "M" : " L") << coord(path[i].real()) << ' ' << coord(-path[i].imag());
    out << " Z\" fill=\"none\" stroke=\"black\" stroke-width=\"0.01\"/>\n";
  }
  for (const auto& m : marks)
    out << "<circle cx=\"" << coord(m.point.real()) << "\" cy=\"" << coord(-m.point.imag()) << "\" r=\""
        << format_number(m.radius) << "\" fill=\"#c0392b\"/>\n";
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
  if (!out) throw ConfigError("failed writing " + path);
}

} // namespace semigen::io
