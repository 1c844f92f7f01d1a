#include "logroots/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <locale>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "logroots/coeff_models.hpp"
#include "logroots/experiments.hpp"
#include "logroots/limit_formulas.hpp"
#include "logroots/poisson_limit.hpp"
#include "logroots/roots.hpp"
#include "logroots/serialization.hpp"

namespace logroots {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::string> kSynopsis = {
    {"simulate-process", "logroots simulate-process --alpha A [--seed S] [--miss-tol T] [--out FILE]"},
    {"el-alpha", "logroots el-alpha [--grid A1,A2,...] [--out FILE]"},
    {"roots", "logroots roots --spec NAME|FILE --n N [--alpha A] [--seed S] [--verify] [--out FILE]"},
    {"verify-lemma", "logroots verify-lemma --coeffs-file FILE [--out FILE]"},
    {"experiment",
     "logroots experiment --config FILE [--spec NAME|FILE] [--alpha A] [--n N] [--trials T] [--seed S]"
     " [--kappa K] [--miss-tol T] [--parity even|odd] [--out FILE]"},
    {"plot-data", "logroots plot-data --input FILE [--x COL] [--y COL] [--series COL] [--out FILE]"},
};

std::ostringstream csv_stream() {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(std::numeric_limits<double>::max_digits10);
  return s;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) out << text;
  else write_text_file(path, text);
}

TailSpec resolve_spec(const std::string& arg, std::optional<double> alpha) {
  TailSpec spec;
  if (std::filesystem::exists(arg)) {
    spec = read_json_file(arg).get<TailSpec>();
  } else {
    TailFamily family;
    try {
      family = tail_family_from_string(arg);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    switch (family) {
      case TailFamily::ParetoLog: spec = TailSpec::pareto_log(alpha.value_or(0.5)); break;
      case TailFamily::FigOneB: spec = TailSpec::fig_one_b(); break;
      case TailFamily::SlowLog: spec = TailSpec::slow_log(); break;
      case TailFamily::Gaussian: spec = TailSpec::gaussian(); break;
    }
    return spec;
  }
  if (alpha) spec.alpha = *alpha;
  spec.validate();
  return spec;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    is.imbue(std::locale::classic());
    double v;
    if (!(is >> v) || !(is >> std::ws).eof()) throw UsageError("--grid: not a number: '" + item + "'");
    grid.push_back(v);
  }
  if (grid.empty()) throw UsageError("--grid: empty list");
  return grid;
}

std::vector<LogComplex> read_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  in.imbue(std::locale::classic());
  std::vector<LogComplex> coeffs;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream is(line);
    is.imbue(std::locale::classic());
    std::string lm_text;
    double phase;
    if (!(is >> lm_text >> phase))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 'log_modulus phase'");
    double lm;
    if (lm_text == "-inf") lm = -std::numeric_limits<double>::infinity();
    else lm = std::stod(lm_text);
    coeffs.emplace_back(lm, phase);
  }
  if (coeffs.size() < 2) throw std::runtime_error(path + ": need at least two coefficients");
  return coeffs;
}

int cmd_simulate(double alpha, std::uint64_t seed, double miss_tol, const std::string& out_path,
                 std::ostream& out) {
  Rng rng(seed);
  const MajorantSample s = sample_majorant(alpha, rng, miss_tol);
  Json j{{"alpha", alpha},
         {"seed", seed},
         {"miss_tol", miss_tol},
         {"process", s.process},
         {"majorant", s.majorant},
         {"segment_count", s.segment_count},
         {"miss_certificate", s.miss_certificate}};
  emit(j.dump(2) + "\n", out_path, out);
  return kExitOk;
}

int cmd_el_alpha(const std::string& grid_text, const std::string& out_path, std::ostream& out) {
  std::vector<double> grid;
  if (grid_text.empty())
    for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
  else
    grid = parse_grid(grid_text);
  for (double a : grid)
    if (!(a > 0.0 && a < 1.0)) throw UsageError("--grid: alpha values must lie in (0,1)");
  auto csv = csv_stream();
  csv << "alpha,closed,integral,prob_two_segments\n";
  for (double a : grid)
    csv << a << ',' << expected_segments_closed(a) << ',' << expected_segments_integral(a) << ','
        << prob_two_segments(a) << '\n';
  emit(csv.str(), out_path, out);
  return kExitOk;
}

int cmd_roots(const TailSpec& spec, std::size_t n, std::uint64_t seed, bool verify,
              const std::string& out_path, std::ostream& out) {
  if (n < 1) throw UsageError("--n must be >= 1");
  Rng rng(seed);
  const auto coeffs = sample_polynomial(spec, n, rng);
  const RootPrediction pred = predict_root_boxes(coeffs);
  const double b_n = spec.has_tail_index() ? normalizing_sequences(spec, n).b_n : 1.0;
  auto csv = csv_stream();
  csv << "segment,m,log_r,arg,scaled_log_r,certified,delta,zeta,winding\n";
  for (std::size_t i = 0; i < pred.segments.size(); ++i) {
    const auto& s = pred.segments[i];
    const double span = static_cast<double>(s.span());
    for (std::size_t m = 1; m <= s.span(); ++m) {
      const double arg = wrap_phase((s.phi + 2.0 * std::numbers::pi * static_cast<double>(m)) / span);
      csv << i << ',' << m << ',' << s.R << ',' << arg << ',' << b_n * s.R << ',' << s.certified << ',';
      if (s.certified) {
        csv << s.certificate->delta << ',' << s.certificate->zeta << ',';
        if (verify) {
          RootBox box{i, m, s.R, s.certificate->delta, arg, s.certificate->zeta};
          try {
            csv << winding_count(coeffs, box_contour(box));
          } catch (const ContourGuardError&) {
            csv << "guard";
          }
        }
      } else {
        csv << ",,";
      }
      csv << '\n';
    }
  }
  emit(csv.str(), out_path, out);
  return kExitOk;
}

int cmd_verify_lemma(const std::string& path, const std::string& out_path, std::ostream& out) {
  const auto coeffs = read_coefficients(path);
  const RootPrediction pred = predict_root_boxes(coeffs);
  std::optional<std::vector<LogPoint>> direct;
  try {
    direct = solve_roots_direct(coeffs);
  } catch (const std::exception&) {
    // outside the direct solver's range; winding numbers only
  }
  bool ok = true;
  Json segments = Json::array();
  for (std::size_t i = 0; i < pred.segments.size(); ++i) {
    const auto& s = pred.segments[i];
    Json js{{"k", s.k}, {"l", s.l}, {"R", s.R}, {"phi", s.phi}, {"h", number_to_json(s.h)},
            {"certified", s.certified}};
    if (s.certificate) {
      js["delta"] = s.certificate->delta;
      js["zeta"] = s.certificate->zeta;
    }
    if (s.eps_plus) {
      js["eps_plus"] = *s.eps_plus;
      js["eps_minus"] = *s.eps_minus;
    }
    Json boxes = Json::array();
    for (const auto& box : pred.boxes) {
      if (box.segment_index != i) continue;
      Json jb{{"m", box.m}, {"log_r", box.log_r_center}, {"phase", box.phase_center}};
      try {
        const int w = winding_count(coeffs, box_contour(box));
        jb["winding"] = w;
        ok = ok && w == 1;
      } catch (const ContourGuardError& e) {
        jb["winding"] = nullptr;
        ok = false;
      }
      if (direct) {
        const auto inside = std::count_if(direct->begin(), direct->end(),
                                          [&](const LogPoint& z) { return box.contains(z); });
        jb["direct_roots_inside"] = inside;
        ok = ok && inside == 1;
      }
      boxes.push_back(jb);
    }
    js["boxes"] = boxes;
    segments.push_back(js);
  }
  Json j{{"degree", pred.degree},
         {"all_certified", pred.all_certified()},
         {"certified_roots", pred.certified_root_count()},
         {"segments", segments},
         {"verified", ok}};
  if (direct) {
    Json roots = Json::array();
    for (const auto& z : *direct) roots.push_back({number_to_json(z.log_r), z.arg});
    j["direct_roots"] = roots;
  }
  emit(j.dump(2) + "\n", out_path, out);
  return ok ? kExitOk : kExitExperimentFailed;
}

void write_raw_csv(const ExperimentReport& report, const std::string& path) {
  auto csv = csv_stream();
  for (std::size_t c = 0; c < report.raw_columns.size(); ++c)
    csv << (c ? "," : "") << report.raw_columns[c];
  csv << '\n';
  for (const auto& row : report.raw_rows) {
    for (std::size_t c = 0; c < row.size(); ++c) csv << (c ? "," : "") << row[c];
    csv << '\n';
  }
  write_text_file(path, csv.str());
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

int cmd_plot_data(const std::string& input, std::string x, std::string y, const std::string& series,
                  const std::string& out_path, std::ostream& out) {
  auto csv = csv_stream();
  csv << "x,y" << (series.empty() ? "" : ",series") << '\n';
  const bool is_csv = std::filesystem::path(input).extension() == ".csv";
  if (is_csv) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open " + input);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(input + ": empty CSV");
    const auto header = split_csv_line(line);
    auto column = [&](const std::string& name) {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) throw UsageError("column '" + name + "' not in " + input);
      return static_cast<std::size_t>(it - header.begin());
    };
    if (header.size() < 2 && (x.empty() || y.empty())) throw UsageError("CSV needs two columns");
    const std::size_t cx = x.empty() ? 0 : column(x);
    const std::size_t cy = y.empty() ? 1 : column(y);
    const std::optional<std::size_t> cs = series.empty() ? std::nullopt : std::optional(column(series));
    while (std::getline(in, line)) {
      const auto cells = split_csv_line(line);
      const std::size_t need = std::max({cx, cy, cs.value_or(0)});
      if (cells.size() <= need) continue;
      csv << cells[cx] << ',' << cells[cy];
      if (cs) csv << ',' << cells[*cs];
      csv << '\n';
    }
    emit(csv.str(), out_path, out);
    return kExitOk;
  }

  const Json j = read_json_file(input);
  // (x, y, series) triples of the known JSON artifacts
  std::vector<std::tuple<double, double, std::string>> rows;
  if (j.contains("process") && j.contains("majorant")) {
    for (const auto& a : j.at("process").get<PointProcessSample>().atoms) rows.emplace_back(a.x, a.y, "atom");
    for (const auto& v : j.at("majorant").get<Majorant>().vertices) rows.emplace_back(v.x, v.y, "majorant");
  } else if (j.contains("statistics")) {
    const auto stats = j.at("statistics").get<std::vector<StatisticRecord>>();
    for (std::size_t i = 0; i < stats.size(); ++i) rows.emplace_back(double(i), stats[i].estimate, stats[i].name);
  } else if (j.contains("segments") && j.contains("degree")) {
    for (const auto& s : j.at("segments"))
      for (const auto& b : s.at("boxes"))
        rows.emplace_back(b.at("log_r").get<double>(), b.at("phase").get<double>(), "box");
  } else {
    throw std::runtime_error(input + ": unrecognised artifact");
  }
  for (const auto& [rx, ry, rs] : rows) {
    csv << rx << ',' << ry;
    if (!series.empty()) csv << ',' << rs;
    csv << '\n';
  }
  emit(csv.str(), out_path, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Roots of random polynomials with heavy-tailed log-coefficients", "logroots"};
  app.require_subcommand(1);

  double alpha = 0.5;
  std::uint64_t seed = 0;
  double miss_tol = 1e-6, kappa = 0.05;
  std::size_t n = 0, trials = 1;
  std::string out_path, grid, spec_arg, coeffs_file, config_path, parity_arg, input, xcol, ycol, scol;
  bool verify = false;

  auto* sim = app.add_subcommand("simulate-process", "Sample the limit point process and its majorant");
  sim->add_option("--alpha", alpha, "tail index in (0,1)")->required();
  sim->add_option("--seed", seed);
  sim->add_option("--miss-tol", miss_tol);
  sim->add_option("--out", out_path);

  auto* el = app.add_subcommand("el-alpha", "Table of E L_alpha by both routes");
  el->add_option("--grid", grid, "comma separated alpha values");
  el->add_option("--out", out_path);

  auto* roots = app.add_subcommand("roots", "Predicted root boxes of a random polynomial");
  roots->add_option("--spec", spec_arg)->required();
  roots->add_option("--n", n)->required();
  auto* roots_alpha = roots->add_option("--alpha", alpha);
  roots->add_option("--seed", seed);
  roots->add_flag("--verify", verify, "winding-check every certified box");
  roots->add_option("--out", out_path);

  auto* lemma = app.add_subcommand("verify-lemma", "Certify and verify user-supplied coefficients");
  lemma->add_option("--coeffs-file", coeffs_file)->required();
  lemma->add_option("--out", out_path);

  auto* exp = app.add_subcommand("experiment", "Run an experiment configuration");
  exp->add_option("--config", config_path)->required();
  auto* exp_spec = exp->add_option("--spec", spec_arg);
  auto* exp_alpha = exp->add_option("--alpha", alpha);
  auto* exp_n = exp->add_option("--n", n);
  auto* exp_trials = exp->add_option("--trials", trials);
  auto* exp_seed = exp->add_option("--seed", seed);
  auto* exp_kappa = exp->add_option("--kappa", kappa);
  auto* exp_tol = exp->add_option("--miss-tol", miss_tol);
  auto* exp_parity = exp->add_option("--parity", parity_arg);
  exp->add_option("--out", out_path);

  auto* plot = app.add_subcommand("plot-data", "Re-project a stored result into x,y[,series] CSV");
  plot->add_option("--input", input)->required();
  plot->add_option("--x", xcol);
  plot->add_option("--y", ycol);
  plot->add_option("--series", scol);
  plot->add_option("--out", out_path);

  auto synopsis = [&]() -> std::string {
    for (const auto* sub : app.get_subcommands()) return kSynopsis.at(sub->get_name());
    std::string all;
    for (const auto& [name, text] : kSynopsis) all += "  " + text + "\n";
    return "usage:\n" + all;
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << synopsis() << "\n";
    return kExitUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(alpha, seed, miss_tol, out_path, out);
    if (el->parsed()) return cmd_el_alpha(grid, out_path, out);
    if (roots->parsed())
      return cmd_roots(resolve_spec(spec_arg, roots_alpha->count() ? std::optional(alpha) : std::nullopt),
                       n, seed, verify, out_path, out);
    if (lemma->parsed()) return cmd_verify_lemma(coeffs_file, out_path, out);
    if (plot->parsed()) return cmd_plot_data(input, xcol, ycol, scol, out_path, out);
    if (exp->parsed()) {
      ExperimentConfig config = read_json_file(config_path).get<ExperimentConfig>();
      if (exp_spec->count())
        config.spec = resolve_spec(spec_arg, exp_alpha->count() ? std::optional(alpha) : std::nullopt);
      else if (exp_alpha->count())
        config.spec.alpha = alpha;
      if (exp_n->count()) config.n = n;
      if (exp_trials->count()) config.trials = trials;
      if (exp_seed->count()) config.master_seed = seed;
      if (exp_kappa->count()) config.kappa = kappa;
      if (exp_tol->count()) config.miss_tol = miss_tol;
      if (exp_parity->count()) {
        try {
          config.parity = parity_from_string(parity_arg);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      if (!out_path.empty()) config.output_path = out_path;
      try {
        config.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const ExperimentReport report = run_experiment(config);
      emit(Json(report).dump(2) + "\n", config.output_path, out);
      if (!config.raw_csv_path.empty()) write_raw_csv(report, config.raw_csv_path);
      return report.all_pass() ? kExitOk : kExitExperimentFailed;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << synopsis() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace logroots
