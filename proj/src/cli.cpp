// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "locprob/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "locprob/analytic.hpp"
#include "locprob/error.hpp"
#include "locprob/montecarlo.hpp"
#include "locprob/table.hpp"
#include "locprob/thresholds.hpp"

#ifndef LOCPROB_VERSION
#define LOCPROB_VERSION "unknown"
#endif

namespace locprob::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sweepable parameters in canonical order. Grids are the Cartesian product
// in this order with the sweep axis innermost.
const std::vector<std::string> kAxes = {"sigma_s", "n_p", "beta_th", "d_max", "rho_l", "rho_nl",
                                        "radius",  "n_nl", "xi",     "p",     "omega"};

std::string flag_of(const std::string& axis) {
  std::string flag = "--" + axis;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + format_double(values[i]);
  return s;
}

struct Sweep {
  std::string axis;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log = false;

  std::vector<double> values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      v[i] = log ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start))) : start + f * (stop - start);
    }
    v.front() = start;
    v.back() = count == 1 ? start : stop;
    return v;
  }

  std::string canonical() const {
    return axis + ":" + format_double(start) + ":" + format_double(stop) + ":" + std::to_string(count) + ":" +
           (log ? "log" : "lin");
  }
};

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("cannot parse " + what + " '" + text + "'");
  return v;
}

Sweep parse_sweep(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 5) throw UsageError("--sweep expects var:start:stop:count:lin|log, got '" + spec + "'");
  Sweep s;
  s.axis = parts[0];
  if (std::find(kAxes.begin(), kAxes.end(), s.axis) == kAxes.end()) {
    throw UsageError("unknown sweep variable '" + s.axis + "'");
  }
  s.start = parse_number(parts[1], "sweep start");
  s.stop = parse_number(parts[2], "sweep stop");
  const double count = parse_number(parts[3], "sweep count");
  if (count < 1 || count != std::floor(count) || count > 1e6) throw UsageError("sweep count must be an integer >= 1");
  s.count = static_cast<int>(count);
  if (parts[4] != "lin" && parts[4] != "log") throw UsageError("sweep scale must be lin or log");
  s.log = parts[4] == "log";
  if (!std::isfinite(s.start) || !std::isfinite(s.stop)) throw UsageError("sweep bounds must be finite");
  if (s.log && (s.start <= 0.0 || s.stop <= 0.0)) throw UsageError("log sweep bounds must be > 0");
  return s;
}

// Everything the parser collects. Axis lists hold comma-separated values.
struct Options {
  std::map<std::string, std::vector<double>> axes;
  std::string sweep;
  std::string format = "csv";
  std::string out;
  std::string quantity;
  std::string level = "node";
  std::string kind;
  std::string regime = "log_anchors";
  std::string preset;
  std::int64_t trials = 1000;
  std::int64_t seed = 1;
  int anchors = 3;
  double truncation_tolerance = 1e-3;
  double margin_factor = 0.0;
  unsigned threads = 0;
  double q = 1.0;
  double t = 1.0;
  std::vector<double> n_grid = {1e3, 1e4, 1e6, 1e9};
};

using Point = std::map<std::string, double>;

// Resolved request: which axes matter, their values, and how to name the mode.
struct Plan {
  std::string command;
  std::string mode_flag;
  std::string mode;
  std::set<std::string> relevant;
  std::vector<std::pair<std::string, std::vector<double>>> axes;  // provided axes, canonical order
  std::optional<Sweep> sweep;
  bool channel = false;

  bool has(const std::string& axis) const {
    return std::any_of(axes.begin(), axes.end(), [&](const auto& a) { return a.first == axis; });
  }
};

ChannelModel channel_at(const Point& pt) {
  if (pt.count("d_max")) return ChannelModel::from_d_max(pt.at("sigma_s"), pt.at("n_p"), pt.at("d_max"));
  return ChannelModel(pt.at("sigma_s"), pt.at("n_p"), pt.at("beta_th"));
}

Shadowing shadowing_at(const Point& pt) { return Shadowing(pt.at("sigma_s"), pt.at("n_p")); }

// Mean NL count from --n-nl or from rho_nl pi R^2.
double count_at(const Point& pt) {
  if (pt.count("n_nl")) return pt.at("n_nl");
  return pt.at("rho_nl") * std::numbers::pi * pt.at("radius") * pt.at("radius");
}

const std::set<std::string> kChannel = {"sigma_s", "n_p", "beta_th", "d_max"};
const std::set<std::string> kShadowing = {"sigma_s", "n_p"};

std::set<std::string> with(std::set<std::string> base, std::initializer_list<std::string> extra) {
  base.insert(extra.begin(), extra.end());
  return base;
}

Plan make_plan(const std::string& command, const Options& o) {
  Plan plan;
  plan.command = command;
  bool count_group = false;
  if (command == "analytic") {
    plan.mode_flag = "--quantity";
    plan.mode = o.quantity;
    if (o.quantity == "lambda_bounded" || o.quantity == "lambda_gap") {
      plan.relevant = with(kChannel, {"rho_l", "radius"});
    } else if (o.quantity == "lambda_unbounded" || o.quantity == "p_el") {
      plan.relevant = with(kChannel, {"rho_l"});
    } else if (o.quantity == "p_n_el") {
      plan.relevant = with(kChannel, {"rho_l"});
      count_group = true;
    } else if (o.quantity == "min_density") {
      plan.relevant = kChannel;
    } else {
      throw UsageError("--quantity must be one of lambda_bounded, lambda_unbounded, lambda_gap, p_el, p_n_el, "
                       "min_density");
    }
  } else if (command == "simulate") {
    plan.mode_flag = "--level";
    plan.mode = o.level;
    if (o.level != "node" && o.level != "network") throw UsageError("--level must be node or network");
    plan.relevant = with(kChannel, {"rho_l", "rho_nl", "radius"});
  } else if (command == "threshold") {
    plan.mode_flag = "--kind";
    plan.mode = o.kind;
    if (o.kind == "node_rho") {
      plan.relevant = kChannel;
    } else if (o.kind == "node_dmax") {
      plan.relevant = with(kShadowing, {"rho_l"});
    } else if (o.kind == "net_rho") {
      plan.relevant = kChannel;
      count_group = true;
    } else if (o.kind == "net_dmax") {
      plan.relevant = with(kShadowing, {"rho_l"});
      count_group = true;
    } else if (o.kind == "p0") {
      plan.relevant = with(kChannel, {"radius", "xi"});
    } else if (o.kind == "theorem2") {
      plan.relevant = with(kShadowing, {"rho_l", "omega"});
    } else {
      throw UsageError("--kind must be one of node_rho, node_dmax, net_rho, net_dmax, p0, theorem2");
    }
  } else if (command == "asymptotic") {
    plan.relevant = with(kChannel, {"radius", "xi", "p"});
  } else {
    throw UsageError("unknown command '" + command + "'");
  }
  if (count_group) plan.relevant.insert({"n_nl", "rho_nl", "radius"});
  plan.channel = plan.relevant.count("beta_th") > 0;

  const std::string what = plan.mode.empty() ? "command " + command : plan.mode_flag + " " + plan.mode;
  if (!o.sweep.empty()) {
    plan.sweep = parse_sweep(o.sweep);
    if (!o.axes.at(plan.sweep->axis).empty()) {
      throw UsageError(flag_of(plan.sweep->axis) + " conflicts with --sweep over the same variable");
    }
  }
  auto provided = [&](const std::string& axis) {
    return !o.axes.at(axis).empty() || (plan.sweep && plan.sweep->axis == axis);
  };
  for (const auto& axis : kAxes) {
    if (!provided(axis)) continue;
    if (!plan.relevant.count(axis)) throw UsageError(flag_of(axis) + " does not affect " + what);
    plan.axes.emplace_back(axis, plan.sweep && plan.sweep->axis == axis ? plan.sweep->values() : o.axes.at(axis));
  }
  if (plan.sweep) {
    // Move the swept axis innermost.
    auto it = std::find_if(plan.axes.begin(), plan.axes.end(), [&](const auto& a) { return a.first == plan.sweep->axis; });
    std::rotate(it, it + 1, plan.axes.end());
  }

  if (plan.channel) {
    if (provided("beta_th") == provided("d_max")) throw UsageError("exactly one of --beta-th and --d-max is required");
  }
  if (count_group) {
    const bool by_count = provided("n_nl");
    if (by_count && (provided("rho_nl") || provided("radius"))) {
      throw UsageError("give either --n-nl or --rho-nl with --radius, not both");
    }
    if (!by_count && !(provided("rho_nl") && provided("radius"))) {
      throw UsageError(what + " needs --n-nl or both --rho-nl and --radius");
    }
  }
  for (const auto& axis : plan.relevant) {
    if (axis == "beta_th" || axis == "d_max") continue;
    if (count_group && (axis == "n_nl" || axis == "rho_nl" || axis == "radius")) continue;
    if (!provided(axis)) throw UsageError(what + " requires " + flag_of(axis));
  }
  return plan;
}

std::vector<Point> expand(const Plan& plan) {
  std::vector<Point> points{Point{}};
  for (const auto& [axis, values] : plan.axes) {
    std::vector<Point> next;
    next.reserve(points.size() * values.size());
    for (const auto& base : points) {
      for (double v : values) {
        Point p = base;
        p[axis] = v;
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }
  return points;
}

// Leading columns naming the grid point. Channel tables always carry both
// beta_th and d_max.
std::vector<std::string> axis_columns(const Plan& plan) {
  std::vector<std::string> cols;
  std::vector<std::string> order;
  for (const auto& axis : kAxes) {
    if (plan.channel && (axis == "beta_th" || axis == "d_max")) {
      order.push_back(axis);
    } else if (plan.has(axis)) {
      order.push_back(axis);
    }
  }
  return order;
}

std::vector<Cell> axis_cells(const Plan& plan, const Point& pt) {
  std::vector<Cell> cells;
  std::optional<ChannelModel> model;
  if (plan.channel) model = channel_at(pt);
  for (const auto& axis : axis_columns(plan)) {
    if (axis == "beta_th") {
      cells.emplace_back(model->beta_th());
    } else if (axis == "d_max" && plan.channel) {
      cells.emplace_back(model->d_max());
    } else {
      cells.emplace_back(pt.at(axis));
    }
  }
  return cells;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Canonical command line that regenerates the table.
std::vector<std::string> replay_args(const Plan& plan, const Options& o) {
  std::vector<std::string> args{plan.command};
  if (!plan.mode_flag.empty()) args.insert(args.end(), {plan.mode_flag, plan.mode});
  for (const auto& axis : kAxes) {
    if (!o.axes.at(axis).empty()) args.insert(args.end(), {flag_of(axis), join(o.axes.at(axis))});
  }
  if (plan.sweep) args.insert(args.end(), {"--sweep", plan.sweep->canonical()});
  if (plan.command == "simulate") {
    args.insert(args.end(), {"--trials", std::to_string(o.trials), "--seed", std::to_string(o.seed), "--anchors",
                             std::to_string(o.anchors), "--truncation-tolerance",
                             format_double(o.truncation_tolerance)});
    if (o.margin_factor > 0.0) args.insert(args.end(), {"--margin-factor", format_double(o.margin_factor)});
  }
  if (plan.command == "asymptotic") {
    args.insert(args.end(), {"--regime", o.regime, "--q", format_double(o.q)});
    if (o.regime == "linear_anchors") args.insert(args.end(), {"--t", format_double(o.t)});
    args.insert(args.end(), {"--n-grid", join(o.n_grid)});
  }
  args.insert(args.end(), {"--format", o.format});
  return args;
}

void add_metadata(ResultTable& table, const Plan& plan, const Options& o) {
  std::string line;
  for (const auto& a : replay_args(plan, o)) line += (line.empty() ? "" : " ") + a;
  table.set_metadata("tool", "locprob");
  table.set_metadata("version", LOCPROB_VERSION);
  table.set_metadata("command", plan.command);
  if (!plan.mode.empty()) table.set_metadata(plan.mode_flag.substr(2), plan.mode);
  for (const auto& [axis, values] : plan.axes) {
    if (!plan.sweep || plan.sweep->axis != axis) table.set_metadata(axis, join(values));
  }
  if (plan.sweep) table.set_metadata("sweep", plan.sweep->canonical());
  if (plan.command == "simulate") {
    table.set_metadata("trials", std::to_string(o.trials));
    table.set_metadata("seed", std::to_string(o.seed));
    table.set_metadata("anchors", std::to_string(o.anchors));
    table.set_metadata("truncation_tolerance", format_double(o.truncation_tolerance));
    table.set_metadata("margin_factor", o.margin_factor > 0.0 ? format_double(o.margin_factor) : "auto");
  }
  if (plan.command == "asymptotic") {
    table.set_metadata("regime", o.regime);
    table.set_metadata("q", format_double(o.q));
    if (o.regime == "linear_anchors") table.set_metadata("t", format_double(o.t));
    table.set_metadata("n_grid", join(o.n_grid));
  }
  table.set_metadata("args", line);
  table.set_metadata("timestamp", utc_timestamp());
}

struct Outcome {
  ResultTable table;
  int code = kSuccess;
};

Outcome cmd_analytic(const Plan& plan, const Options& o) {
  auto cols = axis_columns(plan);
  const std::string& q = o.quantity;
  const bool derived_count = q == "p_n_el" && !plan.has("n_nl");
  if (q == "lambda_bounded") cols.insert(cols.end(), {"lambda_bounded"});
  if (q == "lambda_unbounded") cols.insert(cols.end(), {"lambda_unbounded"});
  if (q == "lambda_gap") cols.insert(cols.end(), {"lambda_bounded", "lambda_unbounded", "gap", "relative_gap"});
  if (q == "p_el") cols.insert(cols.end(), {"lambda", "p_el"});
  if (q == "p_n_el") {
    if (derived_count) cols.push_back("n_nl");
    cols.insert(cols.end(), {"lambda", "p_n_el"});
  }
  if (q == "min_density") cols.insert(cols.end(), {"min_density"});

  Outcome res{ResultTable(cols)};
  for (const auto& pt : expand(plan)) {
    const auto model = channel_at(pt);
    auto row = axis_cells(plan, pt);
    if (q == "lambda_bounded") {
      row.emplace_back(analytic::expected_neighbors_bounded(model, pt.at("rho_l"), pt.at("radius")));
    } else if (q == "lambda_unbounded") {
      row.emplace_back(analytic::expected_neighbors_unbounded(model, pt.at("rho_l")));
    } else if (q == "lambda_gap") {
      const double bounded = analytic::expected_neighbors_bounded(model, pt.at("rho_l"), pt.at("radius"));
      const double unbounded = analytic::expected_neighbors_unbounded(model, pt.at("rho_l"));
      const double fraction = analytic::unbounded_tail_fraction(model, pt.at("radius"));
      row.insert(row.end(), {bounded, unbounded, fraction * unbounded, fraction});
    } else if (q == "p_el") {
      const double lambda = analytic::expected_neighbors_unbounded(model, pt.at("rho_l"));
      row.insert(row.end(), {lambda, analytic::single_node_localization_probability(lambda)});
    } else if (q == "p_n_el") {
      const double lambda = analytic::expected_neighbors_unbounded(model, pt.at("rho_l"));
      const double n = count_at(pt);
      if (derived_count) row.emplace_back(n);
      row.insert(row.end(), {lambda, analytic::network_localization_probability(lambda, n)});
    } else {
      row.emplace_back(analytic::minimum_density(model));
    }
    res.table.add_row(std::move(row));
  }
  return res;
}

Outcome cmd_simulate(const Plan& plan, const Options& o) {
  if (o.trials < 1) throw ParameterError("--trials must be >= 1");
  if (o.seed < 0) throw ParameterError("--seed must be >= 0");
  auto cols = axis_columns(plan);
  cols.insert(cols.end(), {"trials", "seed", "samples", "events", "vacuous_trials", "estimate", "ci_low", "ci_high",
                           "analytic", "status"});
  Outcome res{ResultTable(cols)};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& pt : expand(plan)) {
    const SimConfig cfg{.deployment = {pt.at("rho_l"), pt.at("rho_nl"), pt.at("radius")},
                        .channel = channel_at(pt),
                        .trials = o.trials,
                        .master_seed = static_cast<std::uint64_t>(o.seed),
                        .margin_factor = o.margin_factor > 0.0 ? std::optional(o.margin_factor) : std::nullopt,
                        .anchor_requirement = o.anchors,
                        .truncation_tolerance = o.truncation_tolerance,
                        .threads = o.threads};
    cfg.validate();

    const double lambda = analytic::expected_neighbors_unbounded(cfg.channel, cfg.deployment.rho_l);
    const auto tail = analytic::poisson_tail(lambda, o.anchors);
    const double n = cfg.deployment.mean_nl_count();
    double expected = tail.success;
    if (o.level == "network") {
      expected = tail.success > 0.0 ? std::exp(n * std::log1p(-tail.failure)) : 0.0;
      if (tail.success < 0.5 && tail.success > 0.0) expected = std::exp(n * std::log(tail.success));
    }
    auto row = axis_cells(plan, pt);
    try {
      const auto est = o.level == "node" ? mc::estimate_node_localization(cfg) : mc::estimate_network_localization(cfg);
      row.insert(row.end(), {Cell{est.trials}, Cell{o.seed}, Cell{est.samples}, Cell{est.events},
                             Cell{est.vacuous_trials}, Cell{est.estimate}, Cell{est.ci_low}, Cell{est.ci_high},
                             Cell{expected}, Cell{std::string("ok")}});
    } catch (const DegenerateSampleError& e) {
      row.insert(row.end(), {Cell{o.trials}, Cell{o.seed}, Cell{std::int64_t{0}}, Cell{std::int64_t{0}},
                             Cell{o.trials}, Cell{nan}, Cell{nan}, Cell{nan}, Cell{expected},
                             Cell{std::string("degenerate: ") + e.what()}});
      res.code = kDegenerateSample;
    }
    res.table.add_row(std::move(row));
  }
  return res;
}

Outcome cmd_threshold(const Plan& plan, const Options& o) {
  const std::string& kind = o.kind;
  auto cols = axis_columns(plan);
  const bool network = kind == "net_rho" || kind == "net_dmax";
  const bool derived_count = network && !plan.has("n_nl");
  if (derived_count) cols.push_back("n_nl");
  if (kind == "node_rho" || kind == "node_dmax") cols.insert(cols.end(), {"threshold", "lambda", "residual"});
  if (network) {
    cols.insert(cols.end(), {"threshold", "lambda", "residual", "iterations", "bracket_lo", "bracket_hi",
                             "sign_changes", "single_node_threshold", "ratio"});
  }
  if (kind == "p0") cols.insert(cols.end(), {"gamma", "p0"});
  if (kind == "theorem2") cols.insert(cols.end(), {"required_d_max", "lambda"});

  Outcome res{ResultTable(cols)};
  for (const auto& pt : expand(plan)) {
    auto row = axis_cells(plan, pt);
    if (kind == "node_rho") {
      const auto model = channel_at(pt);
      const double rho = thresholds::single_node_density_threshold(model);
      row.insert(row.end(), {rho, thresholds::density_gain(model) * rho,
                             std::abs(thresholds::density_equation(model, 1.0, rho))});
    } else if (kind == "node_dmax") {
      const auto sh = shadowing_at(pt);
      const double d = thresholds::single_node_range_threshold(sh, pt.at("rho_l"));
      row.insert(row.end(), {d, thresholds::range_gain(sh, pt.at("rho_l")) * d * d,
                             std::abs(thresholds::range_equation(sh, pt.at("rho_l"), 1.0, d))});
    } else if (network) {
      const double n = count_at(pt);
      if (derived_count) row.emplace_back(n);
      ThresholdResult r;
      double single = 0.0, lambda = 0.0;
      if (kind == "net_rho") {
        const auto model = channel_at(pt);
        r = thresholds::network_density_threshold(model, n);
        single = thresholds::single_node_density_threshold(model);
        lambda = thresholds::density_gain(model) * r.value;
      } else {
        const auto sh = shadowing_at(pt);
        r = thresholds::network_range_threshold(sh, pt.at("rho_l"), n);
        single = thresholds::single_node_range_threshold(sh, pt.at("rho_l"));
        lambda = thresholds::range_gain(sh, pt.at("rho_l")) * r.value * r.value;
      }
      row.insert(row.end(), {Cell{r.value}, Cell{lambda}, Cell{r.residual}, Cell{std::int64_t{r.iterations}},
                             Cell{r.bracket.lo}, Cell{r.bracket.hi},
                             Cell{static_cast<std::int64_t>(r.sign_changes.size())}, Cell{single},
                             Cell{r.value / single}});
    } else if (kind == "p0") {
      const auto model = channel_at(pt);
      row.insert(row.end(), {thresholds::asymptotic_gamma(model, pt.at("radius")),
                             thresholds::dense_network_p0(model, pt.at("radius"), pt.at("xi"))});
    } else {
      const auto sh = shadowing_at(pt);
      const double d = thresholds::theorem2_required_range(sh, pt.at("rho_l"), pt.at("omega"));
      row.insert(row.end(), {d, thresholds::range_gain(sh, pt.at("rho_l")) * d * d});
    }
    res.table.add_row(std::move(row));
  }
  return res;
}

GrowthRegime parse_regime(const std::string& name) {
  if (name == "log_anchors") return GrowthRegime::kLogAnchors;
  if (name == "log_of_targets") return GrowthRegime::kLogOfTargets;
  if (name == "linear_anchors") return GrowthRegime::kLinearAnchors;
  throw UsageError("--regime must be log_anchors, log_of_targets or linear_anchors");
}

Outcome cmd_asymptotic(const Plan& plan, const Options& o) {
  auto cols = axis_columns(plan);
  cols.insert(cols.end(), {"n", "n_l", "n_nl", "lambda", "p_network", "expected_failures", "gamma", "p0"});
  Outcome res{ResultTable(cols)};
  const auto regime = parse_regime(o.regime);
  for (const auto& pt : expand(plan)) {
    const auto model = channel_at(pt);
    const double gamma = thresholds::asymptotic_gamma(model, pt.at("radius"));
    const double p0 = thresholds::dense_network_p0(model, pt.at("radius"), pt.at("xi"));
    const GrowthSpec spec{pt.at("xi"), pt.at("p"), o.q, o.t, regime};
    for (const auto& tp : thresholds::dense_network_localization_limit(spec, gamma, o.n_grid)) {
      auto row = axis_cells(plan, pt);
      row.insert(row.end(), {tp.n, tp.n_l, tp.n_nl, tp.lambda, tp.p_network, tp.expected_failures, gamma, p0});
      res.table.add_row(std::move(row));
    }
  }
  return res;
}

struct Preset {
  const char* name;
  std::vector<std::string> args;
};

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"p_loc",
       {"analytic", "--quantity", "p_el", "--sigma-s", "4,9", "--n-p", "2,4", "--beta-th", "20,30", "--sweep",
        "rho_l:1e-4:1:81:log"}},
      {"e_d_v",
       {"analytic", "--quantity", "lambda_unbounded", "--sigma-s", "4,9", "--n-p", "2,4", "--beta-th", "20,30",
        "--sweep", "rho_l:1e-4:1:81:log"}},
      {"min_rho_l",
       {"analytic", "--quantity", "min_density", "--n-p", "2,3,4", "--beta-th", "20,30,40", "--sweep",
        "sigma_s:0:12:49:lin"}},
      {"thr_rho_l",
       {"analytic", "--quantity", "p_n_el", "--sigma-s", "4", "--n-p", "2", "--beta-th", "40", "--rho-nl", "0.1",
        "--radius", "100", "--sweep", "rho_l:1e-5:1e-2:121:log"}},
      {"thr_dmax",
       {"analytic", "--quantity", "p_n_el", "--sigma-s", "4", "--n-p", "2", "--rho-l", "0.1", "--rho-nl", "0.1",
        "--radius", "100", "--sweep", "d_max:1.01:10:121:log"}},
      {"finite_thr_ro_l",
       {"threshold", "--kind", "net_rho", "--sigma-s", "0,4,8,12", "--n-p", "2,4", "--rho-nl", "0.1", "--radius",
        "100", "--sweep", "beta_th:20:60:41:lin"}},
      {"finite_thr_d_max",
       {"threshold", "--kind", "net_dmax", "--sigma-s", "0,4,8,12", "--n-p", "4", "--rho-nl", "0.1", "--radius",
        "100", "--sweep", "rho_l:1e-3:1:31:log"}},
      {"asympt_p0",
       {"asymptotic", "--sigma-s", "9", "--n-p", "4", "--beta-th", "30", "--radius", "60", "--xi", "0.51",
        "--n-grid", "1e3,1e4,1e6,1e9", "--sweep", "p:0.5:80:160:lin"}},
  };
  return table;
}

void write_table(const ResultTable& table, const Options& o, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) throw UsageError("cannot open --out file '" + o.out + "'");
    sink = &file;
  }
  if (o.format == "json") {
    write_json(table, *sink);
  } else {
    write_csv(table, *sink);
  }
  sink->flush();
  if (!*sink) throw UsageError("failed writing the output table");
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : presets()) names.emplace_back(p.name);
  return names;
}

std::vector<std::string> preset_arguments(const std::string& name) {
  for (const auto& p : presets()) {
    if (name == p.name) return p.args;
  }
  throw ParameterError("unknown preset '" + name + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Localization probability of wireless sensor networks under log-normal shadowing", "locprob"};
  app.set_version_flag("--version", LOCPROB_VERSION);
  app.set_config("--config", "", "key=value file mirroring the long flags; flags on the command line win");
  app.require_subcommand(1);

  Options o;
  for (const auto& axis : kAxes) {
    o.axes[axis];
    app.add_option(flag_of(axis), o.axes[axis], "value or comma-separated list")->delimiter(',');
  }
  app.add_option("--sweep", o.sweep, "var:start:stop:count:lin|log");
  app.add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out, "write the table here instead of stdout");
  app.add_option("--quantity", o.quantity, "analytic quantity");
  app.add_option("--level", o.level, "simulation level: node or network");
  app.add_option("--kind", o.kind, "threshold kind");
  app.add_option("--regime", o.regime, "log_anchors, log_of_targets or linear_anchors");
  app.add_option("--preset", o.preset, "figure preset for reproduce");
  app.add_option("--trials", o.trials, "Monte Carlo trials per grid point");
  app.add_option("--seed", o.seed, "master seed");
  app.add_option("--anchors", o.anchors, "links needed to localize");
  app.add_option("--truncation-tolerance", o.truncation_tolerance, "relative neighbor mass ignored beyond the cutoff");
  app.add_option("--margin-factor", o.margin_factor, "generation half-width as a multiple of R (default: automatic)");
  app.add_option("--threads", o.threads, "worker threads (0: all cores)");
  app.add_option("--q", o.q, "NL-count prefactor");
  app.add_option("--t", o.t, "NL-count exponent for linear_anchors");
  app.add_option("--n-grid", o.n_grid, "asymptotic parameter values")->delimiter(',');

  for (const char* name : {"analytic", "simulate", "threshold", "asymptotic", "reproduce"}) {
    app.add_subcommand(name)->fallthrough();
  }
  app.get_subcommand("analytic")->description("closed-form neighbor means and localization probabilities");
  app.get_subcommand("simulate")->description("Monte Carlo estimate beside its analytic value");
  app.get_subcommand("threshold")->description("single-node and network thresholds with solver diagnostics");
  app.get_subcommand("asymptotic")->description("P_N trajectories in the dense-network regime");
  app.get_subcommand("reproduce")->description("run a bundled figure preset");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "reproduce") {
      if (o.preset.empty()) throw UsageError("reproduce requires --preset (" + [] {
        std::string s;
        for (const auto& n : preset_names()) s += (s.empty() ? "" : ", ") + n;
        return s;
      }() + ")");
      auto expanded = preset_arguments(o.preset);
      expanded.insert(expanded.end(), {"--format", o.format});
      if (!o.out.empty()) expanded.insert(expanded.end(), {"--out", o.out});
      return run(expanded, out, err);
    }
    if (!o.preset.empty()) throw UsageError("--preset only applies to reproduce");
    const Plan plan = make_plan(command, o);
    Outcome res;
    if (command == "analytic") res = cmd_analytic(plan, o);
    if (command == "simulate") res = cmd_simulate(plan, o);
    if (command == "threshold") res = cmd_threshold(plan, o);
    if (command == "asymptotic") res = cmd_asymptotic(plan, o);
    add_metadata(res.table, plan, o);
    write_table(res.table, o, out);
    if (res.code == kDegenerateSample) err << "locprob: degenerate sample in at least one grid point\n";
    return res.code;
  } catch (const UsageError& e) {
    err << "locprob: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParameterError& e) {
    err << "locprob: invalid parameter: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericalError& e) {
    err << "locprob: solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace locprob::cli
