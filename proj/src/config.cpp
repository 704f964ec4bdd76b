#include "cbo/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace cbo {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view v, const std::string& where) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    raise(ErrorCode::ParseError, where + ": expected a number, got '" +
                                     std::string(v) + "'");
  return out;
}

std::uint64_t parse_u64(std::string_view v, const std::string& where) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    raise(ErrorCode::ParseError, where + ": expected a nonnegative integer, got '" +
                                     std::string(v) + "'");
  return out;
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view v, const std::string& where, Parse p) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const std::size_t comma = v.find(',', pos);
    const std::string_view tok =
        trim(v.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    if (tok.empty())
      raise(ErrorCode::ParseError, where + ": empty list element");
    out.push_back(p(tok, where));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

void append_double(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    ++line_no;
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      raise(ErrorCode::ParseError,
            "line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const std::string where = "line " + std::to_string(line_no) + ", " + key;
    if (value.empty())
      raise(ErrorCode::ParseError, where + ": empty value");

    if (key == "command") cfg.command = std::string(value);
    else if (key == "preset") apply_preset(cfg, value);
    else if (key == "manifold") cfg.manifold = std::string(value);
    else if (key == "objective") cfg.objective = std::string(value);
    else if (key == "lambda") cfg.lambda = parse_double(value, where);
    else if (key == "sigma") cfg.sigma = parse_double(value, where);
    else if (key == "alpha") cfg.alpha = parse_double(value, where);
    else if (key == "dt") cfg.dt = parse_double(value, where);
    else if (key == "t_max") cfg.t_max = parse_double(value, where);
    else if (key == "n_particles") cfg.n_particles = parse_u64(value, where);
    else if (key == "seed") cfg.seed = parse_u64(value, where);
    else if (key == "stop_rule") cfg.stop_rule = std::string(value);
    else if (key == "stop_eps") cfg.stop_eps = parse_double(value, where);
    else if (key == "n_values")
      cfg.n_values = parse_list<std::uint64_t>(value, where, parse_u64);
    else if (key == "n_repeats") cfg.n_repeats = parse_u64(value, where);
    else if (key == "m_reference") cfg.m_reference = parse_u64(value, where);
    else if (key == "t_check") cfg.t_check = parse_double(value, where);
    else if (key == "phi") cfg.phi = std::string(value);
    else if (key == "dt_list")
      cfg.dt_list = parse_list<double>(value, where, parse_double);
    else if (key == "defect_repeats") cfg.defect_repeats = parse_u64(value, where);
    else if (key == "bench_seeds") cfg.bench_seeds = parse_u64(value, where);
    else if (key == "success_threshold")
      cfg.success_threshold = parse_double(value, where);
    else if (key == "out_csv") cfg.out_csv = std::string(value);
    else if (key == "out_json") cfg.out_json = std::string(value);
    else if (key == "threads") cfg.threads = parse_u64(value, where);
    else
      raise(ErrorCode::ParseError,
            "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::string s;
  const auto field = [&s](const char* k, const std::string& v) {
    s += k;
    s += " = ";
    s += v;
    s += '\n';
  };
  const auto field_d = [&](const char* k, double v) {
    std::string t;
    append_double(t, v);
    field(k, t);
  };
  const auto field_u = [&](const char* k, std::uint64_t v) {
    field(k, std::to_string(v));
  };

  field("command", cfg.command);
  field("manifold", cfg.manifold);
  field("objective", cfg.objective);
  field_d("lambda", cfg.lambda);
  field_d("sigma", cfg.sigma);
  field_d("alpha", cfg.alpha);
  field_d("dt", cfg.dt);
  field_d("t_max", cfg.t_max);
  field_u("n_particles", cfg.n_particles);
  field_u("seed", cfg.seed);
  field("stop_rule", cfg.stop_rule);
  field_d("stop_eps", cfg.stop_eps);
  {
    std::string t;
    for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
      if (i) t += ',';
      t += std::to_string(cfg.n_values[i]);
    }
    field("n_values", t);
  }
  field_u("n_repeats", cfg.n_repeats);
  field_u("m_reference", cfg.m_reference);
  field_d("t_check", cfg.t_check);
  field("phi", cfg.phi);
  {
    std::string t;
    for (std::size_t i = 0; i < cfg.dt_list.size(); ++i) {
      if (i) t += ',';
      append_double(t, cfg.dt_list[i]);
    }
    field("dt_list", t);
  }
  field_u("defect_repeats", cfg.defect_repeats);
  field_u("bench_seeds", cfg.bench_seeds);
  field_d("success_threshold", cfg.success_threshold);
  if (!cfg.out_csv.empty()) field("out_csv", cfg.out_csv);
  if (!cfg.out_json.empty()) field("out_json", cfg.out_json);
  field_u("threads", cfg.threads);
  return s;
}

void validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> problems;
  const auto need = [&problems](bool ok, const char* msg) {
    if (!ok) problems.emplace_back(msg);
  };

  need(cfg.command == "run" || cfg.command == "rates-lln" ||
           cfg.command == "rates-coupled" || cfg.command == "rates-weak" ||
           cfg.command == "defect-scan" || cfg.command == "bench",
       "command must be one of run, rates-lln, rates-coupled, rates-weak, "
       "defect-scan, bench");
  need(cfg.lambda > 0.0, "lambda must be positive");
  need(cfg.sigma >= 0.0, "sigma must be nonnegative");
  need(cfg.alpha > 0.0, "alpha must be positive");
  need(cfg.dt > 0.0, "dt must be positive");
  need(cfg.t_max > 0.0, "t_max must be positive");
  need(!(cfg.dt > 0.0 && cfg.t_max > 0.0) || cfg.dt <= cfg.t_max,
       "dt must not exceed t_max");
  need(cfg.n_particles >= 1, "n_particles must be >= 1");
  need(cfg.stop_rule == "fixed" || cfg.stop_rule == "diameter" ||
           cfg.stop_rule == "residual",
       "stop_rule must be fixed, diameter or residual");
  need(cfg.stop_rule == "fixed" || cfg.stop_eps > 0.0,
       "stop_eps must be positive");
  need(!cfg.n_values.empty(), "n_values must be nonempty");
  for (std::size_t k = 0; k + 1 < cfg.n_values.size(); ++k)
    need(cfg.n_values[k] < cfg.n_values[k + 1],
         "n_values must be strictly increasing");
  need(cfg.n_repeats >= 1, "n_repeats must be >= 1");
  need(cfg.m_reference >= 1, "m_reference must be >= 1");
  need(cfg.t_check > 0.0, "t_check must be positive");
  need(!cfg.dt_list.empty(), "dt_list must be nonempty");
  for (std::size_t k = 0; k < cfg.dt_list.size(); ++k)
    need(cfg.dt_list[k] > 0.0, "dt_list entries must be positive");
  for (std::size_t k = 0; k + 1 < cfg.dt_list.size(); ++k)
    need(cfg.dt_list[k] > cfg.dt_list[k + 1],
         "dt_list must be strictly decreasing");
  need(cfg.defect_repeats >= 1, "defect_repeats must be >= 1");
  need(cfg.bench_seeds >= 1, "bench_seeds must be >= 1");
  need(cfg.success_threshold > 0.0, "success_threshold must be positive");

  try {
    parse_manifold(cfg.manifold);
  } catch (const Error& e) {
    problems.emplace_back(e.what());
  }
  try {
    parse_objective(cfg.objective);
  } catch (const Error& e) {
    problems.emplace_back(e.what());
  }
  if (cfg.command == "rates-weak") {
    try {
      parse_test_function(cfg.phi);
    } catch (const Error& e) {
      problems.emplace_back(e.what());
    }
  }

  if (!problems.empty()) {
    std::string msg = problems[0];
    for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
    raise(ErrorCode::ValidationError, msg);
  }
}

void apply_preset(ExperimentConfig& cfg, std::string_view preset) {
  const auto base = [&cfg](const char* manifold, const std::string& objective) {
    cfg.manifold = manifold;
    cfg.objective = objective;
    cfg.lambda = 1.0;
    cfg.sigma = 0.25;
    cfg.alpha = 50.0;
    cfg.dt = 0.05;
    cfg.t_max = 5.0;
    cfg.n_particles = 20;
    cfg.stop_rule = "fixed";
  };
  if (preset == "sphere-north" || preset == "figure2") {
    base("sphere:radius=1,dim=3", "ackley:vstar=0,0,1");
  } else if (preset == "sphere-tilted") {
    std::string obj = "ackley:vstar=";
    append_double(obj, -1.0 / std::sqrt(2.0));
    obj += ",-0.5,0.5";
    base("sphere:radius=1,dim=3", obj);
  } else if (preset == "torus-top" || preset == "figure3") {
    base("torus:R=1,r=0.5", "ackley:vstar=0,1,0.5");
  } else if (preset == "torus-inner") {
    base("torus:R=1,r=0.5", "ackley:vstar=0.5,0,0");
  } else {
    raise(ErrorCode::ParseError, "unknown preset '" + std::string(preset) +
                                     "' (sphere-north, sphere-tilted, "
                                     "torus-top, torus-inner)");
  }
}

namespace {

/// Splits "k1=v1,k2=v2,..." where a comma not followed by 'key=' continues
/// the previous value (so vector values stay comma-separated).
std::vector<std::pair<std::string, std::string>> split_kv(std::string_view body,
                                                          const std::string& where) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = body.find(',', pos);
    const std::string_view tok =
        trim(body.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    const std::size_t eq = tok.find('=');
    if (eq != std::string_view::npos) {
      out.emplace_back(std::string(trim(tok.substr(0, eq))),
                       std::string(trim(tok.substr(eq + 1))));
    } else if (!out.empty()) {
      out.back().second += ',';
      out.back().second += std::string(tok);
    } else if (!tok.empty()) {
      raise(ErrorCode::ParseError, where + ": expected key=value, got '" +
                                       std::string(tok) + "'");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Manifold parse_manifold(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view kind = trim(spec.substr(0, colon));
  const std::string_view body =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const std::string where = "manifold '" + std::string(spec) + "'";

  if (kind == "sphere") {
    double radius = 1.0;
    std::uint64_t dim = 3;
    for (const auto& [k, v] : split_kv(body, where)) {
      if (k == "radius") radius = parse_double(v, where);
      else if (k == "dim") dim = parse_u64(v, where);
      else raise(ErrorCode::ParseError, where + ": unknown key '" + k + "'");
    }
    return Manifold::sphere(radius, dim);
  }
  if (kind == "torus") {
    double R = 1.0, r = 0.5;
    for (const auto& [k, v] : split_kv(body, where)) {
      if (k == "R") R = parse_double(v, where);
      else if (k == "r") r = parse_double(v, where);
      else raise(ErrorCode::ParseError, where + ": unknown key '" + k + "'");
    }
    return Manifold::torus(R, r);
  }
  raise(ErrorCode::ParseError, where + ": kind must be sphere or torus");
}

Objective parse_objective(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view kind = trim(spec.substr(0, colon));
  const std::string_view body =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const std::string where = "objective '" + std::string(spec) + "'";

  if (kind != "ackley")
    raise(ErrorCode::ParseError, where + ": kind must be ackley");
  std::vector<double> vstar;
  double A = 20.0, a = 0.2, b = 3.0, B = 20.0;
  for (const auto& [k, v] : split_kv(body, where)) {
    if (k == "vstar") vstar = parse_list<double>(v, where, parse_double);
    else if (k == "A") A = parse_double(v, where);
    else if (k == "a") a = parse_double(v, where);
    else if (k == "b") b = parse_double(v, where);
    else if (k == "B") B = parse_double(v, where);
    else raise(ErrorCode::ParseError, where + ": unknown key '" + k + "'");
  }
  if (vstar.empty())
    raise(ErrorCode::ParseError, where + ": vstar is required");
  return Objective::ackley(std::move(vstar), A, a, b, B);
}

TestFunction parse_test_function(std::string_view spec) {
  const std::string where = "phi '" + std::string(spec) + "'";
  if (spec == "one") return TestFunction::constant_one();
  const std::size_t colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  if (colon == std::string_view::npos || colon + 1 >= spec.size())
    raise(ErrorCode::ParseError, where + ": expected coord:<k> or coordsq:<k>");
  const std::uint64_t c = parse_u64(trim(spec.substr(colon + 1)), where);
  if (kind == "coord") return TestFunction::coordinate(c);
  if (kind == "coordsq") return TestFunction::coordinate_square(c);
  raise(ErrorCode::ParseError, where + ": expected one, coord:<k> or coordsq:<k>");
}

SimConfig make_sim_config(const ExperimentConfig& cfg) {
  validate_config(cfg);
  SimConfig sim;
  sim.lambda = cfg.lambda;
  sim.sigma = cfg.sigma;
  sim.alpha = cfg.alpha;
  sim.dt = cfg.dt;
  sim.t_max = cfg.t_max;
  sim.n_particles = cfg.n_particles;
  sim.seed = cfg.seed;
  sim.manifold = parse_manifold(cfg.manifold);
  sim.objective = parse_objective(cfg.objective);
  if (cfg.stop_rule == "fixed") sim.stop.rule = StopRule::FixedHorizon;
  else if (cfg.stop_rule == "diameter") sim.stop.rule = StopRule::DiameterBelow;
  else sim.stop.rule = StopRule::ConsensusResidualBelow;
  sim.stop.eps = cfg.stop_eps;
  sim.validate();
  return sim;
}

}  // namespace cbo
