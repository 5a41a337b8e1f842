// Copyright 2026 The ballean-lab Authors
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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "ballean/all.hpp"

namespace {

constexpr int kExitUsage = 3;

std::vector<std::size_t> parse_ints(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    std::size_t used = 0;
    const long long v = std::stoll(item, &used);
    if (used != item.size() || v < 0) throw std::invalid_argument("not a non-negative integer: " + item);
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

int cmd_run(const std::string& path, const std::string& out_path, unsigned jobs) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "ballean-lab: cannot read " << path << "\n";
    return kExitUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json report;
  std::optional<std::string> target;
  try {
    const auto scenario = ballean::parse_scenario(buf.str());
    report = ballean::run_scenario(scenario, jobs);
    target = out_path.empty() ? scenario.output : std::optional<std::string>(out_path);
  } catch (const ballean::ScenarioError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return kExitUsage;
  }
  const std::string text = report.dump(2) + "\n";
  if (target) {
    std::ofstream out(*target);
    if (!out) {
      std::cerr << "ballean-lab: cannot write " << *target << "\n";
      return kExitUsage;
    }
    out << text;
    for (const auto& c : report.at("checks")) {
      std::cout << c.at("name").get<std::string>() << ": " << c.at("verdict").get<std::string>() << "\n";
    }
  } else {
    std::cout << text;
  }
  return ballean::report_exit_code(report);
}

int cmd_list_checks() {
  for (const auto& c : ballean::check_catalog()) {
    std::cout << c.name << "  (" << ballean::to_string(c.applies) << ")\n    " << c.summary << "\n";
    for (const auto& p : c.params) {
      std::cout << "    " << p.name << ": " << ballean::to_string(p.type) << (p.required ? "" : ", optional");
      if (!p.choices.empty()) {
        std::cout << " {";
        for (std::size_t i = 0; i < p.choices.size(); ++i) std::cout << (i ? "|" : "") << p.choices[i];
        std::cout << "}";
      }
      std::cout << "\n";
    }
  }
  return 0;
}

template <class P, class R>
int print_hyperball(const ballean::Ballean<P, R>& base, const std::vector<std::size_t>& set, const R& radius) {
  const auto hyper = ballean::hyperballean(base);
  const auto h = ballean::FinSet::from_members(set);
  if (!hyper.index_of(h)) {
    std::cerr << "ballean-lab: " << ballean::to_string(h) << " is not a bounded subset of the base\n";
    return kExitUsage;
  }
  if (!hyper.admits_radius(radius)) {
    std::cerr << "ballean-lab: radius outside the truncation\n";
    return kExitUsage;
  }
  std::cout << nlohmann::json(ballean::hyperball_sets(hyper, h, radius)).dump() << "\n";
  return 0;
}

int cmd_oracle_hyperball(const std::string& family, const std::string& set_text, const std::string& radius_text,
                         std::size_t n) {
  using namespace ballean;
  const auto set = parse_ints(set_text);
  if (set.empty()) {
    std::cerr << "ballean-lab: --set must name at least one element\n";
    return kExitUsage;
  }
  const std::size_t base_size = family == "doubled" ? 2 * n : n;
  for (auto x : set) {
    if (x >= base_size) {
      std::cerr << "ballean-lab: base element " << x << " is outside {0.." << base_size - 1 << "}\n";
      return kExitUsage;
    }
  }
  if (family == "f_ballean" || family == "doubled") {
    const auto radius = FinSet::from_members(parse_ints(radius_text));
    const auto t = make_truncation(n, 0);
    if (family == "f_ballean") return print_hyperball(f_ballean(t), set, radius);
    return print_hyperball(doubled_ballean(t), set, radius);
  }
  if (family == "line" || family == "pow2") {
    const auto metric = metric_by_name(family);
    const auto r = parse_ints(radius_text);
    if (r.size() != 1) {
      std::cerr << "ballean-lab: metric radii are a single non-negative integer\n";
      return kExitUsage;
    }
    // The diameter as an extra witness radius keeps every subset bounded.
    const Rational diameter = n > 1 ? metric.eval(0, n - 1) : Rational(0);
    const Rational radius(static_cast<std::int64_t>(r[0]));
    return print_hyperball(metric_ballean(metric, make_truncation(n, 0), {diameter, radius}), set, radius);
  }
  std::cerr << "ballean-lab: unknown family '" << family << "' (f_ballean, doubled, line, pow2)\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-truncation checks for balleans and hyperballeans", "ballean-lab"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario file and emit a JSON report");
  std::string scenario_path, out_path;
  unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_path, "Report path (default: the scenario's output key, else stdout)");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  app.add_subcommand("list-checks", "List the available checks and their parameters");

  auto* oracle = app.add_subcommand("oracle", "Brute-force oracle queries");
  oracle->require_subcommand(1);
  auto* hyperball = oracle->add_subcommand("hyperball", "Print the hyperball of a set as sorted arrays");
  std::string family, set_text, radius_text;
  std::size_t n = 0;
  hyperball->add_option("--family", family, "f_ballean, doubled, line or pow2")->required();
  hyperball->add_option("--set", set_text, "Comma-separated base elements")->required();
  hyperball->add_option("--radius", radius_text, "Comma-separated set radius, or one integer for metrics")->required();
  hyperball->add_option("-N", n, "Base universe size")->required()->check(CLI::Range(1, 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(scenario_path, out_path, jobs);
    if (app.got_subcommand("list-checks")) return cmd_list_checks();
    if (hyperball->parsed()) return cmd_oracle_hyperball(family, set_text, radius_text, n);
  } catch (const std::exception& e) {
    std::cerr << "ballean-lab: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
