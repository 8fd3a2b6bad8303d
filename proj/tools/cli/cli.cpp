// Copyright 2026 The qvis Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qvis/dist_core.hpp"
#include "qvis/error.hpp"
#include "qvis/evaluate.hpp"
#include "qvis/quorum_pmf.hpp"
#include "qvis/sim.hpp"
#include "qvis/staleness.hpp"
#include "qvis/tune.hpp"

namespace qvis::cli {
namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, std::int64_t, std::uint64_t, std::string>;

// A flat table: CSV writes it as-is, JSON writes each row as an object.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Record {
  std::string command;
  Json inputs = Json::object();
  Table table;
};

double rounded(double v) { return std::stod(format_number(v)); }

Json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return rounded(v);
        } else {
          return v;
        }
      },
      c);
}

std::string to_csv(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      c);
}

void write(const Record& record, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    const auto& cols = record.table.columns;
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& row : record.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << to_csv(row[i]);
      out << '\n';
    }
    return;
  }
  Json rows = Json::array();
  for (const auto& row : record.table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      obj[record.table.columns[i]] = to_json(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  Json doc = Json::object();
  doc["schema_version"] = "1";
  doc["command"] = record.command;
  doc["inputs"] = record.inputs;
  doc["results"] = Json{{"rows", std::move(rows)}};
  out << doc.dump(2) << '\n';
}

struct ModelFlags {
  int n = 0;
  int w = 0;
  int r = 0;
  double lambda = 1.0;
  double xi = 1.0;
  double t = 0.0;
  double write_shift = 0.0;
  double read_shift = 0.0;
};

struct SimFlags {
  std::uint64_t trials = 200000;
  std::uint64_t seed = 0;
  std::uint32_t chunks = 1;
};

void add_sim_flags(CLI::App* cmd, SimFlags& f) {
  cmd->add_option("--trials", f.trials, "Monte Carlo trials")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Generator seed")
      ->envname(kSeedEnv)
      ->capture_default_str();
  cmd->add_option("--chunks", f.chunks, "Worker chunks (result is independent of it)")
      ->capture_default_str();
}

DelayModel delays_of(const ModelFlags& f) {
  DelayModel d{Rate(f.lambda), Rate(f.xi), f.write_shift, f.read_shift};
  d.validate();
  return d;
}

// start:stop:step, stop inclusive.
std::vector<double> parse_sweep(const std::string& text) {
  const auto a = text.find(':');
  const auto b = text.find(':', a == std::string::npos ? a : a + 1);
  if (a == std::string::npos || b == std::string::npos) {
    throw InvalidArgument("--t-sweep must be start:stop:step, got '" + text + "'");
  }
  double start = 0, stop = 0, step = 0;
  try {
    start = std::stod(text.substr(0, a));
    stop = std::stod(text.substr(a + 1, b - a - 1));
    step = std::stod(text.substr(b + 1));
  } catch (const std::exception&) {
    throw InvalidArgument("--t-sweep must be start:stop:step, got '" + text + "'");
  }
  if (!(step > 0) || !(stop >= start) || !std::isfinite(stop)) {
    throw InvalidArgument("--t-sweep needs step > 0 and stop >= start");
  }
  const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9));
  if (count > 1000000) throw InvalidArgument("--t-sweep has too many points");
  std::vector<double> ts;
  for (std::int64_t k = 0; k <= count; ++k) ts.push_back(start + static_cast<double>(k) * step);
  return ts;
}

Record pmf_record(const ModelFlags& f, int read_rank) {
  Record rec{"pmf", {}, {}};
  rec.inputs = {{"n", f.n}, {"w", f.w}, {"lambda", rounded(f.lambda)}, {"t", rounded(f.t)}};
  rec.table.columns = {"n", "w", "lambda", "t"};
  const bool at_read = read_rank > 0;
  if (at_read) {
    rec.inputs["xi"] = rounded(f.xi);
    rec.inputs["at_read_j"] = read_rank;
    rec.table.columns.insert(rec.table.columns.end(), {"xi", "at_read_j"});
  }
  rec.table.columns.insert(rec.table.columns.end(), {"s", "probability"});

  // R is irrelevant to S(t); for the read-time PMF it only bounds j.
  const QuorumSpec spec{f.n, f.w, at_read ? f.n : 1};
  const auto pmf = at_read
                       ? quorum_size_at_read_pmf(spec, delays_of(f), f.t, read_rank)
                       : quorum_size_pmf(spec, Rate(f.lambda), f.t);
  for (int s = pmf.w(); s <= pmf.n(); ++s) {
    std::vector<Cell> row{std::int64_t{f.n}, std::int64_t{f.w}, f.lambda, f.t};
    if (at_read) {
      row.emplace_back(f.xi);
      row.emplace_back(std::int64_t{read_rank});
    }
    row.emplace_back(std::int64_t{s});
    row.emplace_back(pmf[s]);
    rec.table.rows.push_back(std::move(row));
  }
  return rec;
}

Record staleness_record(const ModelFlags& f, const std::string& method_name,
                        const std::string& sweep, const SimFlags& sf) {
  const auto method = parse_method(method_name);
  if (!method) throw InvalidArgument("unknown --method '" + method_name + "'");
  const QuorumSpec spec{f.n, f.w, f.r};
  spec.validate();
  const auto delays = delays_of(f);
  const std::vector<double> ts = sweep.empty() ? std::vector<double>{f.t} : parse_sweep(sweep);
  for (double t : ts) checked_time(t);

  Record rec{"staleness", {}, {}};
  rec.inputs = {{"n", f.n},         {"w", f.w},
                {"r", f.r},         {"lambda", rounded(f.lambda)},
                {"xi", rounded(f.xi)}, {"write_shift", rounded(f.write_shift)},
                {"read_shift", rounded(f.read_shift)}, {"method", method_name}};
  if (sweep.empty()) {
    rec.inputs["t"] = rounded(f.t);
  } else {
    rec.inputs["t_sweep"] = sweep;
  }
  const bool simulated =
      *method == Method::sim ||
      (*method == Method::automatic && resolve_method(spec, delays) == Method::sim);
  if (simulated) {
    rec.inputs["trials"] = sf.trials;
    rec.inputs["seed"] = sf.seed;
  }
  rec.table.columns = {"n", "w", "r", "lambda", "xi", "t", "method", "p_t", "bound"};
  if (simulated) {
    rec.table.columns.insert(rec.table.columns.end(), {"ci95_halfwidth", "trials", "seed"});
  }
  const double bound = worst_case_bound(spec).probability;
  const SimOptions sim{sf.trials, sf.seed, sf.chunks};
  for (double t : ts) {
    const auto est = evaluate_pt(spec, delays, t, *method, sim);
    std::vector<Cell> row{std::int64_t{f.n}, std::int64_t{f.w}, std::int64_t{f.r},
                          f.lambda, f.xi, t, std::string(to_string(est.method)),
                          est.probability, bound};
    if (simulated) {
      row.emplace_back(est.ci_halfwidth.value_or(0.0));
      row.emplace_back(est.trials.value_or(0));
      row.emplace_back(sf.seed);
    }
    rec.table.rows.push_back(std::move(row));
  }
  return rec;
}

Record simulate_record(const ModelFlags& f, const SimFlags& sf) {
  const sim::SimConfig config{{f.n, f.w, f.r}, delays_of(f), f.t, sf.trials, sf.seed, sf.chunks};
  const auto res = sim::estimate_pt(config);
  Record rec{"simulate", {}, {}};
  rec.inputs = {{"n", f.n},
                {"w", f.w},
                {"r", f.r},
                {"lambda", rounded(f.lambda)},
                {"xi", rounded(f.xi)},
                {"t", rounded(f.t)},
                {"write_shift", rounded(f.write_shift)},
                {"read_shift", rounded(f.read_shift)},
                {"trials", sf.trials},
                {"seed", sf.seed}};
  // chunks is not echoed: it never changes the result.
  rec.table.columns = {"n",          "w",          "r",           "lambda",
                       "xi",         "t",          "write_shift", "read_shift",
                       "trials",     "seed",       "stale_count", "estimate",
                       "ci95_halfwidth", "ci95_lower", "ci95_upper"};
  rec.table.rows.push_back({std::int64_t{f.n}, std::int64_t{f.w}, std::int64_t{f.r}, f.lambda,
                            f.xi, f.t, f.write_shift, f.read_shift, res.trials, res.seed,
                            res.stale_count, res.estimate, res.ci95_halfwidth, res.ci95_lower,
                            res.ci95_upper});
  return rec;
}

Record tune_record(const ModelFlags& f, double epsilon, double t_max,
                   const std::string& objective_name, const SimFlags& sf) {
  const auto objective = parse_objective(objective_name);
  if (!objective) throw InvalidArgument("unknown --objective '" + objective_name + "'");
  TuningRequest req{f.n, delays_of(f), epsilon, t_max, *objective,
                    SimOptions{sf.trials, sf.seed, sf.chunks}};
  const auto result = tune(req);
  Record rec{"tune", {}, {}};
  rec.inputs = {{"n", f.n},
                {"lambda", rounded(f.lambda)},
                {"xi", rounded(f.xi)},
                {"write_shift", rounded(f.write_shift)},
                {"read_shift", rounded(f.read_shift)},
                {"epsilon", rounded(epsilon)},
                {"t_max", rounded(t_max)},
                {"objective", objective_name},
                {"trials", sf.trials},
                {"seed", sf.seed}};
  rec.table.columns = {"n", "lambda", "xi", "epsilon", "t_max", "objective", "w", "r", "t_min",
                       "p_at_t", "expected_write_latency", "expected_read_latency", "method"};
  for (const auto& e : result.pareto) {
    rec.table.rows.push_back({std::int64_t{f.n}, f.lambda, f.xi, epsilon, t_max, objective_name,
                              std::int64_t{e.w}, std::int64_t{e.r}, e.t_min, e.p_at_t,
                              e.expected_write_latency, e.expected_read_latency,
                              std::string(to_string(e.method))});
  }
  return rec;
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stale-read probabilities for partial-quorum replicated stores", "qvis"};
  app.set_config("--config", "", "TOML/INI file with flag values; command-line flags win");
  app.require_subcommand(1);

  ModelFlags mf;
  SimFlags sf;
  std::string format = "json";

  auto* pmf = app.add_subcommand("pmf", "Distribution of the write-quorum size S(t)");
  int read_rank = 0;
  pmf->add_option("--n", mf.n, "Replica count N")->required();
  pmf->add_option("--w", mf.w, "Write quorum W")->required();
  pmf->add_option("--lambda", mf.lambda, "Write delay rate")->capture_default_str();
  pmf->add_option("--t", mf.t, "Time since write completion")->capture_default_str();
  pmf->add_option("--at-read-j", read_rank,
                  "Evaluate S(t + Z_(j)) for read responder rank j instead of S(t)");
  pmf->add_option("--xi", mf.xi, "Read delay rate (with --at-read-j)")->capture_default_str();
  add_format(pmf, format);

  auto* stale = app.add_subcommand("staleness", "Probability that a read returns stale data");
  std::string method = "auto";
  std::string sweep;
  stale->add_option("--n", mf.n, "Replica count N")->required();
  stale->add_option("--w", mf.w, "Write quorum W")->required();
  stale->add_option("--r", mf.r, "Read quorum R")->required();
  stale->add_option("--lambda", mf.lambda, "Write delay rate")->capture_default_str();
  stale->add_option("--xi", mf.xi, "Read delay rate")->capture_default_str();
  stale->add_option("--t", mf.t, "Time since write completion")->capture_default_str();
  stale->add_option("--write-shift", mf.write_shift, "Write delay shift (simulation only)");
  stale->add_option("--read-shift", mf.read_shift, "Read delay shift (simulation only)");
  stale->add_option("--method", method, "auto, closed, general, bound or sim")
      ->capture_default_str();
  stale->add_option("--t-sweep", sweep, "start:stop:step; one row per t");
  add_sim_flags(stale, sf);
  add_format(stale, format);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the stale-read probability");
  simulate->add_option("--n", mf.n, "Replica count N")->required();
  simulate->add_option("--w", mf.w, "Write quorum W")->required();
  simulate->add_option("--r", mf.r, "Read quorum R")->required();
  simulate->add_option("--lambda", mf.lambda, "Write delay rate")->capture_default_str();
  simulate->add_option("--xi", mf.xi, "Read delay rate")->capture_default_str();
  simulate->add_option("--t", mf.t, "Time since write completion")->capture_default_str();
  simulate->add_option("--write-shift", mf.write_shift, "Write delay shift");
  simulate->add_option("--read-shift", mf.read_shift, "Read delay shift");
  add_sim_flags(simulate, sf);
  add_format(simulate, format);

  auto* tune_cmd = app.add_subcommand("tune", "Pareto set of (W, R, t) meeting a staleness target");
  double epsilon = 0.1;
  double t_max = 0.0;
  std::string objective = "min_sum";
  tune_cmd->add_option("--n", mf.n, "Replica count N")->required();
  tune_cmd->add_option("--lambda", mf.lambda, "Write delay rate")->capture_default_str();
  tune_cmd->add_option("--xi", mf.xi, "Read delay rate")->capture_default_str();
  tune_cmd->add_option("--write-shift", mf.write_shift, "Write delay shift");
  tune_cmd->add_option("--read-shift", mf.read_shift, "Read delay shift");
  tune_cmd->add_option("--epsilon", epsilon, "Target stale-read probability")->required();
  tune_cmd->add_option("--t-max", t_max, "Largest acceptable visibility delay")
      ->capture_default_str();
  tune_cmd->add_option("--objective", objective,
                       "min_read_latency, min_write_latency or min_sum")
      ->capture_default_str();
  add_sim_flags(tune_cmd, sf);
  add_format(tune_cmd, format);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    Record rec;
    if (*pmf) {
      rec = pmf_record(mf, read_rank);
    } else if (*stale) {
      rec = staleness_record(mf, method, sweep, sf);
    } else if (*simulate) {
      rec = simulate_record(mf, sf);
    } else {
      rec = tune_record(mf, epsilon, t_max, objective, sf);
    }
    write(rec, format, out);
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "qvis: invalid parameters: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const UnsupportedMethod& e) {
    err << "qvis: unsupported method: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const NumericalInstability& e) {
    err << "qvis: numerical instability: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace qvis::cli
