// Copyright 2026 The geomeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geomeas/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "geomeas/analytic.hpp"
#include "geomeas/errors.hpp"
#include "geomeas/io.hpp"
#include "geomeas/stationarity.hpp"

namespace geomeas::cli {

namespace {

using nlohmann::json;
using io::format_double;

double to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InputError("bad number '" + std::string(s) + "'");
  }
  return v;
}

MeasureOptions measure_options(const Options& opts) {
  MeasureOptions m;
  m.family_samples = opts.family_samples;
  m.oracle.seed = opts.seed;
  return m;
}

// Runs `body` against the requested sink and maps exceptions onto exit codes.
int guarded(const Options& opts, std::ostream& out, std::ostream& err,
            const std::function<int(std::ostream&)>& body) {
  try {
    if (opts.out.empty()) return body(out);
    std::ostringstream buf;
    const int code = body(buf);
    std::ofstream file(opts.out, std::ios::binary);
    if (!file) throw InputError("cannot write '" + opts.out + "'");
    file << buf.str();
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const StateError& e) {
    err << "error: " << e.what() << '\n';
    return kExitState;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

std::string qubit_text(const SingleQubitState& q) {
  auto c = [](cplx z) { return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")"; };
  return "[" + c(q.a0) + ", " + c(q.a1) + "]";
}

void write_result(const MeasureResult& r, Format format, std::ostream& out) {
  switch (format) {
    case Format::json:
      out << io::measure_result_json(r) << '\n';
      return;
    case Format::csv:
      out << "lambda_sq,e_g,method,degenerate,disagreement,fallback,nearest_count\n"
          << format_double(r.lambda_sq) << ',' << format_double(r.e_g) << ',' << to_string(r.method)
          << ',' << (r.degenerate ? "true" : "false") << ',' << (r.disagreement ? "true" : "false")
          << ',' << (r.fallback ? "true" : "false") << ',' << r.nearest.size() << '\n';
      return;
    case Format::table:
      out << "lambda_sq    " << format_double(r.lambda_sq) << '\n'
          << "e_g          " << format_double(r.e_g) << '\n'
          << "method       " << to_string(r.method) << '\n'
          << "degenerate   " << (r.degenerate ? "yes" : "no") << '\n';
      if (r.family_param) {
        out << "family       azimuth in [" << format_double(r.family_param->azimuth_start) << ", "
            << format_double(r.family_param->azimuth_stop) << "), " << r.family_param->samples
            << " samples\n";
      }
      for (std::size_t k = 0; k < r.nearest.size(); ++k) {
        const auto& p = r.nearest[k];
        out << "nearest[" << k << "]   " << qubit_text(p.q1) << " x " << qubit_text(p.q2) << " x "
            << qubit_text(p.q3) << '\n';
      }
      return;
  }
}

// Explicit 53-bit draw: uniform_real_distribution is not pinned across standard libraries.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> resolve_sample(const SweepSpec& spec, std::vector<double> raw,
                                   const std::vector<int>& rest_slots) {
  if (!rest_slots.empty()) {
    double others = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (std::find(rest_slots.begin(), rest_slots.end(), static_cast<int>(i)) == rest_slots.end()) {
        others += raw[i] * raw[i];
      }
    }
    if (others > 1.0 + 1e-12) throw InputError("'rest' parameter undefined: other coefficients exceed unit norm");
    raw[static_cast<std::size_t>(rest_slots.front())] = std::sqrt(std::max(0.0, 1.0 - others));
  }
  if (spec.family == Family::ww) return raw;
  double n = 0.0;
  for (double v : raw) n += v * v;
  if (!(n > 0.0)) throw InputError("sweep sample with all-zero coefficients");
  n = std::sqrt(n);
  for (double& v : raw) v /= n;
  return raw;
}

struct Row {
  std::vector<double> params;
  MeasureResult result;
};

std::vector<Row> compute_rows(const SweepSpec& spec, const std::vector<std::vector<double>>& samples,
                              const Options& opts) {
  std::vector<Row> rows(samples.size());
  const MeasureOptions mopts = measure_options(opts);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= samples.size()) return;
      try {
        rows[i].params = samples[i];
        rows[i].result = measure(make_family_state(spec.family, samples[i]), opts.policy, mopts);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(samples.size());
      }
    }
  };
  const unsigned n_threads = std::clamp<unsigned>(std::thread::hardware_concurrency(), 1u,
                                                  static_cast<unsigned>(std::max<std::size_t>(samples.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace

Format format_from_string(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "table") return Format::table;
  throw InputError("unknown format '" + std::string(name) + "'");
}

ParamSpec parse_param_spec(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw InputError("parameter spec must be name=value, name=start:stop:steps or name=rest");
  }
  ParamSpec p;
  p.name = std::string(text.substr(0, eq));
  const std::string_view body = text.substr(eq + 1);
  if (body == "rest") {
    p.kind = ParamSpec::Kind::rest;
    return p;
  }
  const auto c1 = body.find(':');
  if (c1 == std::string_view::npos) {
    p.kind = ParamSpec::Kind::fixed;
    p.start = p.stop = to_double(body);
    return p;
  }
  const auto c2 = body.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw InputError("range must be start:stop:steps");
  p.kind = ParamSpec::Kind::range;
  p.start = to_double(body.substr(0, c1));
  p.stop = to_double(body.substr(c1 + 1, c2 - c1 - 1));
  const std::string_view steps = body.substr(c2 + 1);
  const auto [ptr, ec] = std::from_chars(steps.data(), steps.data() + steps.size(), p.steps);
  if (ec != std::errc() || ptr != steps.data() + steps.size()) throw InputError("bad step count");
  if (p.steps < 2) throw InputError("range needs steps >= 2");
  return p;
}

std::vector<std::vector<double>> sweep_samples(const SweepSpec& spec, const Options& opts) {
  const auto names = family_param_names(spec.family);
  std::vector<ParamSpec> axes(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) axes[i].name = std::string(names[i]);
  std::vector<int> rest_slots;
  for (const auto& p : spec.params) {
    const auto it = std::find(names.begin(), names.end(), p.name);
    if (it == names.end()) {
      throw InputError("family " + std::string(to_string(spec.family)) + " has no parameter '" + p.name + "'");
    }
    const auto slot = static_cast<std::size_t>(it - names.begin());
    axes[slot] = p;
    if (p.kind == ParamSpec::Kind::rest) rest_slots.push_back(static_cast<int>(slot));
    if (spec.family == Family::wtype && (p.start < 0.0 || p.stop < 0.0)) {
      throw InputError("wtype coefficients must be non-negative");
    }
  }
  if (rest_slots.size() > 1) throw InputError("at most one parameter may be 'rest'");
  if (!rest_slots.empty() && spec.family == Family::ww) throw InputError("ww has no 'rest' parameter");

  std::vector<std::vector<double>> out;
  if (opts.samples > 0) {
    std::mt19937_64 rng(opts.seed);
    for (int s = 0; s < opts.samples; ++s) {
      std::vector<double> raw(axes.size(), 0.0);
      for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i].kind == ParamSpec::Kind::range) {
          raw[i] = axes[i].start + unit_draw(rng) * (axes[i].stop - axes[i].start);
        } else {
          raw[i] = axes[i].start;
        }
      }
      out.push_back(resolve_sample(spec, std::move(raw), rest_slots));
    }
    return out;
  }

  std::vector<int> counter(axes.size(), 0);
  for (;;) {
    std::vector<double> raw(axes.size(), 0.0);
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const auto& a = axes[i];
      raw[i] = a.kind == ParamSpec::Kind::range
                   ? a.start + (a.stop - a.start) * counter[i] / (a.steps - 1)
                   : a.start;
    }
    out.push_back(resolve_sample(spec, std::move(raw), rest_slots));
    int i = static_cast<int>(axes.size()) - 1;
    for (; i >= 0; --i) {
      const auto& a = axes[static_cast<std::size_t>(i)];
      const int len = a.kind == ParamSpec::Kind::range ? a.steps : 1;
      if (++counter[static_cast<std::size_t>(i)] < len) break;
      counter[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

int cmd_compute(const std::string& input, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(opts, out, err, [&](std::ostream& sink) {
    const PureState3 state = io::load_state(input, opts.strict);
    write_result(measure(state, opts.policy, measure_options(opts)), opts.format, sink);
    return kExitOk;
  });
}

int cmd_sweep(const SweepSpec& spec, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(opts, out, err, [&](std::ostream& sink) {
    const auto samples = sweep_samples(spec, opts);
    const auto rows = compute_rows(spec, samples, opts);
    const auto names = family_param_names(spec.family);
    if (opts.format == Format::json) {
      json arr = json::array();
      for (const auto& row : rows) {
        json params = json::object();
        for (std::size_t i = 0; i < names.size(); ++i) params[std::string(names[i])] = row.params[i];
        arr.push_back({{"params", params},
                       {"lambda_sq", row.result.lambda_sq},
                       {"e_g", row.result.e_g},
                       {"method", to_string(row.result.method)},
                       {"degenerate", row.result.degenerate}});
      }
      sink << json{{"family", to_string(spec.family)}, {"rows", arr}}.dump(2) << '\n';
      return kExitOk;
    }
    const char sep = opts.format == Format::csv ? ',' : '\t';
    for (const auto& n : names) sink << n << sep;
    sink << "lambda_sq" << sep << "e_g" << sep << "method" << sep << "degenerate\n";
    for (const auto& row : rows) {
      for (double v : row.params) sink << format_double(v) << sep;
      sink << format_double(row.result.lambda_sq) << sep << format_double(row.result.e_g) << sep
           << to_string(row.result.method) << sep << (row.result.degenerate ? "true" : "false") << '\n';
    }
    return kExitOk;
  });
}

int cmd_check(const std::string& input, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(opts, out, err, [&](std::ostream& sink) {
    const PureState3 state = io::load_state(input, opts.strict);
    const MeasureOptions mopts = measure_options(opts);

    std::vector<std::pair<std::string, double>> values;
    if (detect_family(state)) {
      values.emplace_back("analytic", measure(state, Policy::analytic_only, mopts).lambda_sq);
    }
    bool stationary_failed = false;
    try {
      values.emplace_back("stationary", solve_stationary(pair_reduction(state, Pair::AB)).best().value);
    } catch (const NoStationaryPoint&) {
      stationary_failed = true;
    }
    values.emplace_back("oracle", oracle_maximize(state, mopts.oracle).lambda_sq);

    bool pass = !stationary_failed;
    json deltas = json::object();
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        const double d = std::abs(values[i].second - values[j].second);
        deltas[values[i].first + "-" + values[j].first] = d;
        if (!(d <= opts.check_tol)) pass = false;
      }
    }
    if (opts.format == Format::json) {
      json vals = json::object();
      for (const auto& [k, v] : values) vals[k] = v;
      if (stationary_failed) vals["stationary"] = nullptr;
      sink << json{{"values", vals}, {"deltas", deltas}, {"tolerance", opts.check_tol}, {"pass", pass}}.dump(2)
           << '\n';
    } else {
      const char sep = opts.format == Format::csv ? ',' : '\t';
      sink << "method" << sep << "lambda_sq\n";
      for (const auto& [k, v] : values) sink << k << sep << format_double(v) << '\n';
      if (stationary_failed) sink << "stationary" << sep << "failed\n";
      sink << "pass" << sep << (pass ? "true" : "false") << '\n';
    }
    return pass ? kExitOk : kExitValidation;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric measure of entanglement for three-qubit pure states", "geomeas"};
  app.require_subcommand(1);

  Options opts;
  std::string policy = "auto";
  std::string format = "json";
  std::string input;
  std::string family;
  std::vector<std::string> param_specs;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--policy", policy, "auto, analytic, stationary or oracle")
        ->check(CLI::IsMember({"auto", "analytic", "stationary", "oracle"}));
    sub->add_option("--out", opts.out, "Write output to this file instead of stdout");
    sub->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--seed", opts.seed, "Seed for oracle restarts and random sweep draws");
    sub->add_option("--samples", opts.samples, "sweep: number of random parameter draws instead of the grid");
    sub->add_option("--family-samples", opts.family_samples, "Azimuth samples of a degenerate nearest-state family")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--strict", opts.strict, "Reject non-normalized inputs instead of normalizing them");
  };

  auto* compute = app.add_subcommand("compute", "Entanglement eigenvalue and nearest product state(s)");
  compute->add_option("input", input, "State JSON file or family literal (W, GHZ, Wtilde, wtype(a,b,c), ...)")
      ->required();
  add_common(compute);

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over a family");
  sweep->add_option("family", family, "wtype, symmetric or ww")
      ->required()
      ->check(CLI::IsMember({"wtype", "symmetric", "ww"}));
  sweep->add_option("--param", param_specs, "name=value | name=start:stop:steps | name=rest");
  add_common(sweep);

  auto* check = app.add_subcommand("check", "Cross-validate the analytic, stationary and oracle routes");
  check->add_option("input", input, "State JSON file or family literal")->required();
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  opts.policy = policy_from_string(policy);
  opts.format = format_from_string(format);
  if (compute->parsed()) return cmd_compute(input, opts, out, err);
  if (check->parsed()) return cmd_check(input, opts, out, err);

  SweepSpec spec;
  try {
    spec.family = family_from_string(family);
    for (const auto& p : param_specs) spec.params.push_back(parse_param_spec(p));
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return cmd_sweep(spec, opts, out, err);
}

}  // namespace geomeas::cli
