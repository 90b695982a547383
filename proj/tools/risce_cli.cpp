// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The risce Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// risce: command-line front end over the C API.
//
//   risce run CONFIG [-o OUT] [--format csv|json] [--seed N] [-j N]
//   risce validate CONFIG
//   risce overhead CONFIG
//   risce schemes
//
// Exit codes: 0 success, 1 config error, 2 runtime failure.

#include <CLI11.hpp>
#include <cinttypes>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include "risce/risce.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct ConfigDeleter {
  void operator()(risce_config* c) const { risce_config_free(c); }
};
struct ReportDeleter {
  void operator()(risce_report* r) const { risce_report_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { risce_string_free(s); }
};
using ConfigPtr = std::unique_ptr<risce_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<risce_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_code(risce_status st) {
  switch (st) {
    case RISCE_OK: return kExitOk;
    case RISCE_ERR_CONFIG: return kExitConfig;
    default: return kExitRuntime;
  }
}

int report_error(const char* what, risce_status st) {
  std::fprintf(stderr, "risce %s: %s\n", what, risce_last_error());
  return exit_code(st);
}

std::optional<ConfigPtr> load(const std::string& path, int& code) {
  risce_config* raw = nullptr;
  if (const auto st = risce_config_load(path.c_str(), &raw); st != RISCE_OK) {
    code = report_error("config", st);
    return std::nullopt;
  }
  return ConfigPtr(raw);
}

std::string fmt_snr(double snr) {
  if (snr > 1e308) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", snr);
  return buf;
}

int cmd_run(const std::string& config, const std::string& output, const std::string& format,
            std::optional<std::uint64_t> seed, int parallelism) {
  int code = kExitOk;
  auto cfg = load(config, code);
  if (!cfg) return code;
  if (seed) risce_config_set_seed(cfg->get(), *seed);

  risce_report* raw = nullptr;
  if (const auto st = risce_run(cfg->get(), parallelism, &raw); st != RISCE_OK) {
    return report_error("run", st);
  }
  ReportPtr report(raw);

  if (!output.empty()) {
    if (const auto st = risce_report_write(report.get(), output.c_str(), format.c_str()); st != RISCE_OK) {
      return report_error("run", st);
    }
  }

  // The report goes to stdout when no output file is given; the summary
  // then moves to stderr.
  std::FILE* summary = output.empty() ? stderr : stdout;
  std::fprintf(summary, "# %s\n", risce_snr_convention());
  size_t rows = 0;
  risce_report_row_count(report.get(), &rows);
  for (size_t i = 0; i < rows; ++i) {
    risce_report_row r{};
    risce_report_row_get(report.get(), i, &r);
    std::fprintf(summary,
                 "%-13s snr_db=%-5s nmse=%.6e stderr=%.3e trials=%d failures=%d slots=%lld "
                 "amortized=%.4g\n",
                 r.scheme, fmt_snr(r.snr_db).c_str(), r.nmse_mean, r.nmse_stderr, r.trials,
                 r.failures, r.raw_slots, r.amortized_slots);
  }

  if (output.empty()) {
    char* text = nullptr;
    const auto st = format == "json" ? risce_report_to_json(report.get(), &text)
                                     : risce_report_to_csv(report.get(), &text);
    if (st != RISCE_OK) return report_error("run", st);
    StringPtr owned(text);
    std::fputs(owned.get(), stdout);
    return std::fflush(stdout) == 0 ? kExitOk : kExitRuntime;
  }
  return kExitOk;
}

int cmd_validate(const std::string& config) {
  int code = kExitOk;
  auto cfg = load(config, code);
  if (!cfg) return code;
  char* text = nullptr;
  if (const auto st = risce_config_to_json(cfg->get(), &text); st != RISCE_OK) {
    return report_error("validate", st);
  }
  StringPtr owned(text);
  std::printf("%s: valid\n%s\n", config.c_str(), owned.get());
  return kExitOk;
}

int cmd_overhead(const std::string& config) {
  int code = kExitOk;
  auto cfg = load(config, code);
  if (!cfg) return code;
  size_t n = 0;
  risce_overhead_count(cfg->get(), &n);
  std::printf("%-14s %12s %12s %16s\n", "scheme", "unknowns", "raw_slots", "amortized_slots");
  for (size_t i = 0; i < n; ++i) {
    risce_overhead_row r{};
    if (const auto st = risce_overhead_row_get(cfg->get(), i, &r); st != RISCE_OK) {
      return report_error("overhead", st);
    }
    std::printf("%-14s %12lld %12lld %16.10g\n", r.scheme, r.unknowns, r.raw_slots, r.amortized_slots);
  }
  return kExitOk;
}

int cmd_schemes() {
  for (size_t i = 0; i < risce_scheme_count(); ++i) std::printf("%s\n", risce_scheme_name(i));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo benchmark of RIS channel estimation schemes"};
  app.set_version_flag("--version", std::string(risce_version()));
  app.require_subcommand(1);

  std::string config, output, format = "csv";
  std::optional<std::uint64_t> seed;
  int parallelism = 0;

  auto* run = app.add_subcommand("run", "run the experiment and write a report");
  run->add_option("config", config, "experiment config (JSON)")->required();
  run->add_option("-o,--output", output, "report file (default: stdout)");
  run->add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("-j,--parallelism", parallelism, "worker threads (0 = machine default)")
      ->check(CLI::NonNegativeNumber);

  auto* validate = app.add_subcommand("validate", "check a config without running anything");
  validate->add_option("config", config, "experiment config (JSON)")->required();

  auto* overhead = app.add_subcommand("overhead", "print pilot overhead and unknown counts");
  overhead->add_option("config", config, "experiment config (JSON)")->required();

  app.add_subcommand("schemes", "list the simulated schemes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (run->parsed()) return cmd_run(config, output, format, seed, parallelism);
  if (validate->parsed()) return cmd_validate(config);
  if (overhead->parsed()) return cmd_overhead(config);
  return cmd_schemes();
}
