#include "logroots/serialization.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace logroots {

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("expected a number, got " + j.dump());
}

void to_json(Json& j, const TailSpec& s) {
  j = Json{{"family", to_string(s.family)}, {"alpha", s.alpha}, {"c", s.c}, {"p", s.p},
           {"complex_coeffs", s.complex_coeffs}};
}

void from_json(const Json& j, TailSpec& s) {
  s.family = tail_family_from_string(j.at("family").get<std::string>());
  if (s.family == TailFamily::FigOneB) s = TailSpec::fig_one_b();
  s.alpha = j.value("alpha", s.alpha);
  s.c = j.value("c", s.c);
  s.p = j.value("p", s.p);
  s.complex_coeffs = j.value("complex_coeffs", s.complex_coeffs);
  s.validate();
}

void to_json(Json& j, const PlanarPoint& p) { j = Json::array({p.x, p.y}); }

void from_json(const Json& j, PlanarPoint& p) {
  p.x = number_from_json(j.at(0));
  p.y = number_from_json(j.at(1));
}

void to_json(Json& j, const Segment& s) {
  j = Json{{"x_lo", s.x_lo}, {"x_hi", s.x_hi}, {"S", s.S}, {"R", s.R},
           {"lo_vertex", s.lo_vertex}, {"hi_vertex", s.hi_vertex}};
}

void from_json(const Json& j, Segment& s) {
  s.x_lo = j.at("x_lo").get<double>();
  s.x_hi = j.at("x_hi").get<double>();
  s.S = j.at("S").get<double>();
  s.R = j.at("R").get<double>();
  s.lo_vertex = j.at("lo_vertex").get<std::size_t>();
  s.hi_vertex = j.at("hi_vertex").get<std::size_t>();
}

void to_json(Json& j, const Majorant& m) {
  j = Json{{"vertices", m.vertices}, {"segments", m.segments}, {"x_min", m.x_min}, {"x_max", m.x_max}};
}

void from_json(const Json& j, Majorant& m) {
  m.vertices = j.at("vertices").get<std::vector<PlanarPoint>>();
  m.segments = j.at("segments").get<std::vector<Segment>>();
  m.x_min = j.at("x_min").get<double>();
  m.x_max = j.at("x_max").get<double>();
  for (const auto& s : m.segments)
    if (s.hi_vertex >= m.vertices.size() || s.lo_vertex >= s.hi_vertex)
      throw std::invalid_argument("majorant JSON: segment refers to a missing vertex");
}

void to_json(Json& j, const Mark& m) { j = Json::array({m.sigma, m.pi}); }

void from_json(const Json& j, Mark& m) {
  m.sigma = j.at(0).get<int>();
  m.pi = j.at(1).get<int>();
}

void to_json(Json& j, const PointProcessSample& s) {
  j = Json{{"alpha", s.alpha}, {"v_min", s.v_min}, {"atoms", s.atoms}};
  if (s.marks) j["marks"] = *s.marks;
}

void from_json(const Json& j, PointProcessSample& s) {
  s.alpha = j.at("alpha").get<double>();
  s.v_min = j.at("v_min").get<double>();
  s.atoms = j.at("atoms").get<std::vector<PlanarPoint>>();
  s.marks.reset();
  if (j.contains("marks")) s.marks = j.at("marks").get<std::vector<Mark>>();
  s.validate();
}

void to_json(Json& j, const Rectangle& r) { j = Json::array({r.u1, r.u2, r.t}); }

void from_json(const Json& j, Rectangle& r) {
  r.u1 = j.at(0).get<double>();
  r.u2 = j.at(1).get<double>();
  r.t = j.at(2).get<double>();
}

void to_json(Json& j, const ExperimentConfig& c) {
  j = Json{{"kind", to_string(c.kind)}, {"spec", c.spec},       {"n", c.n},
           {"trials", c.trials},        {"seed", c.master_seed}, {"miss_tol", c.miss_tol},
           {"kappa", c.kappa},          {"parity", to_string(c.parity)},
           {"rectangles", c.rectangles}};
  if (!c.output_path.empty()) j["output_path"] = c.output_path;
  if (!c.raw_csv_path.empty()) j["raw_csv_path"] = c.raw_csv_path;
}

void from_json(const Json& j, ExperimentConfig& c) {
  static const char* known[] = {"kind",  "spec",   "n",          "trials",      "seed",
                                "miss_tol", "kappa", "parity", "rectangles", "output_path",
                                "raw_csv_path"};
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::invalid_argument("experiment config: unknown field '" + key + "'");
  }
  c.kind = experiment_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("spec")) c.spec = j.at("spec").get<TailSpec>();
  c.n = j.value("n", c.n);
  c.trials = j.value("trials", c.trials);
  c.master_seed = j.value("seed", c.master_seed);
  c.miss_tol = j.value("miss_tol", c.miss_tol);
  c.kappa = j.value("kappa", c.kappa);
  if (j.contains("parity")) c.parity = parity_from_string(j.at("parity").get<std::string>());
  if (j.contains("rectangles")) c.rectangles = j.at("rectangles").get<std::vector<Rectangle>>();
  c.output_path = j.value("output_path", c.output_path);
  c.raw_csv_path = j.value("raw_csv_path", c.raw_csv_path);
}

void to_json(Json& j, const StatisticRecord& r) {
  j = Json{{"name", r.name},
           {"estimate", number_to_json(r.estimate)},
           {"std_error", number_to_json(r.std_error)},
           {"theory", r.theory ? number_to_json(*r.theory) : Json(nullptr)},
           {"z", r.z ? number_to_json(*r.z) : Json(nullptr)},
           {"band", r.band},
           {"pass", r.pass}};
}

void from_json(const Json& j, StatisticRecord& r) {
  r.name = j.at("name").get<std::string>();
  r.estimate = number_from_json(j.at("estimate"));
  r.std_error = number_from_json(j.at("std_error"));
  r.theory.reset();
  r.z.reset();
  if (j.contains("theory") && !j.at("theory").is_null()) r.theory = number_from_json(j.at("theory"));
  if (j.contains("z") && !j.at("z").is_null()) r.z = number_from_json(j.at("z"));
  r.band = j.value("band", 3.0);
  r.pass = j.at("pass").get<bool>();
}

void to_json(Json& j, const ExperimentReport& r) {
  j = Json{{"config", r.config},
           {"statistics", r.statistics},
           {"uncertified_fraction",
            r.uncertified_fraction ? number_to_json(*r.uncertified_fraction) : Json(nullptr)},
           {"seed", r.config.master_seed},
           {"runtime_seconds", r.runtime_seconds}};
}

void from_json(const Json& j, ExperimentReport& r) {
  r.config = j.at("config").get<ExperimentConfig>();
  r.statistics = j.at("statistics").get<std::vector<StatisticRecord>>();
  r.uncertified_fraction.reset();
  if (!j.at("uncertified_fraction").is_null())
    r.uncertified_fraction = number_from_json(j.at("uncertified_fraction"));
  r.runtime_seconds = j.value("runtime_seconds", 0.0);
  r.raw_columns.clear();
  r.raw_rows.clear();
}

std::string deterministic_dump(const ExperimentReport& r) {
  Json j = r;
  j.erase("runtime_seconds");
  return j.dump();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace logroots
