#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "hybridrat/report.h"

using namespace hybridrat;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

long parse_long(const std::string& flag, const std::string& text) {
  Rational v;
  try {
    v = parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw InputError(flag + ": expected an integer, got '" + text + "'");
  }
  if (v.get_den() != 1 || !v.get_num().fits_slong_p()) throw InputError(flag + ": expected an integer, got '" + text + "'");
  return v.get_num().get_si();
}

Rational parse_value(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw InputError(flag + ": expected a rational number p or p/q, got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limits, potential good reduction and hybrid convergence for families of rational maps."};
  std::string command;
  std::string file = "-";
  std::string inline_text;
  std::string format = "json";
  std::string precision, max_ramification, search_depth, max_probes, t0, samples, iterate_power;

  app.add_option("command", command, "limit | pgr | classify | verify | iterate")
      ->required()
      ->check(CLI::IsMember({"limit", "pgr", "classify", "verify", "iterate"}));
  app.add_option("file", file, "family file, '-' for standard input");
  auto* inline_opt = app.add_option("--family", inline_text, "family given inline instead of a file");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}))->envname("HYBRIDRAT_FORMAT");
  auto* o_precision = app.add_option("--precision", precision, "series truncation order (default 32)")
                          ->envname("HYBRIDRAT_PRECISION");
  auto* o_ram = app.add_option("--max-ramification", max_ramification, "largest denominator of s (default 12)")
                    ->envname("HYBRIDRAT_MAX_RAMIFICATION");
  auto* o_depth = app.add_option("--search-depth", search_depth, "search window |s| <= depth (default 4)")
                      ->envname("HYBRIDRAT_SEARCH_DEPTH");
  auto* o_probes = app.add_option("--max-probes", max_probes, "probe budget of the search (default 5000)")
                       ->envname("HYBRIDRAT_MAX_PROBES");
  auto* o_t0 = app.add_option("--t0", t0, "sampling base in (0, 1) (default 1/2)")->envname("HYBRIDRAT_T0");
  auto* o_samples = app.add_option("--samples", samples, "number of samples N (default 30)")->envname("HYBRIDRAT_SAMPLES");
  auto* o_power = app.add_option("--iterate-power", iterate_power, "iterate order l (default 2)")
                      ->envname("HYBRIDRAT_ITERATE_POWER");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input_error;
  }

  const std::string input_name = inline_opt->count() ? "<inline>" : file;
  RunResult result;
  try {
    const std::string text = inline_opt->count() ? inline_text : read_input(file);
    FamilyFile family = parse_family(text);
    Settings s;
    if (o_precision->count()) s.precision = parse_value("--precision", precision);
    if (o_ram->count()) s.max_ramification = parse_long("--max-ramification", max_ramification);
    if (o_depth->count()) s.search_depth = parse_value("--search-depth", search_depth);
    if (o_probes->count()) s.max_probes = parse_long("--max-probes", max_probes);
    if (o_t0->count()) s.t0 = parse_value("--t0", t0);
    if (o_samples->count()) s.samples = parse_long("--samples", samples);
    if (o_power->count()) s.iterate_power = parse_long("--iterate-power", iterate_power);
    RunOptions options;
    try {
      options = resolve(s, family);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    result = run(command, family, options, input_name);
  } catch (const InputError& e) {
    result = input_error(command, input_name, e);
  }

  std::cout << (format == "text" ? render_text(result.report) : render_json(result.report));
  return result.exit_code;
}
