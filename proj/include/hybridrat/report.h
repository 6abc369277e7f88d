#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "hybridrat/family_file.h"

namespace hybridrat {

using Json = nlohmann::ordered_json;

/// Values given on the command line or through the environment; unset fields fall back to the family file, then to
/// the defaults of RunOptions.
struct Settings {
  std::optional<Rational> precision;
  std::optional<long> max_ramification;
  std::optional<Rational> search_depth;
  std::optional<long> max_probes;
  std::optional<Rational> t0;
  std::optional<long> samples;
  std::optional<long> iterate_power;
};

struct RunOptions {
  Rational precision = 32;
  long max_ramification = 12;
  Rational search_depth = 4;
  long max_probes = 5000;
  Rational t0 = Rational(1, 2);
  long samples = 30;
  long iterate_power = 2;
};

/// Throws std::invalid_argument when a resolved value is out of range.
RunOptions resolve(const Settings& given, const FamilyFile& file);

enum ExitCode { exit_definite = 0, exit_input_error = 1, exit_inconclusive = 2 };

struct RunResult {
  Json report;
  int exit_code;
};

/// Runs one of limit, pgr, classify, verify, iterate. Analysis failures are reported, never thrown.
RunResult run(const std::string& command, const FamilyFile& file, const RunOptions& options,
              const std::string& input_name);

/// Report for input that could not be read or parsed.
RunResult input_error(const std::string& command, const std::string& input_name, const std::exception& error);

std::string render_json(const Json& report);
std::string render_text(const Json& report);

}  // namespace hybridrat
