#include "hybridrat/report.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace hybridrat {

namespace {

const char* const kCommands[] = {"limit", "pgr", "classify", "verify", "iterate"};

double significant12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x + 0.0);
  return std::strtod(buf, nullptr);
}

Json skeleton(const std::string& command, const std::string& input_name) {
  Json r;
  r["command"] = command;
  r["input"] = {{"file", input_name}};
  for (const char* key : {"classification", "verdict", "ord_res", "pgr", "witness", "witness_recheck", "min_ord_res",
                          "ramification", "probes", "limit", "conjugated", "convergence"}) {
    r[key] = nullptr;
  }
  r["diagnostics"] = Json::object();
  return r;
}

Json echo(const FamilyFile& file, const std::string& input_name) {
  Json in;
  in["file"] = input_name;
  in["degree"] = file.degree;
  Json num = Json::array(), den = Json::array();
  for (const auto& e : file.num) num.push_back(to_string(*e));
  for (const auto& e : file.den) den.push_back(to_string(*e));
  in["num"] = num;
  in["den"] = den;
  return in;
}

Json describe(const ValuedRationalMap& f) {
  Json j;
  j["map"] = f.to_string();
  j["ord_res"] = to_string(ord_res(f));
  const bool good = good_reduction(f);
  j["good_reduction"] = good;
  j["in_beth"] = in_beth(f);
  j["reduction"] = reduce(f).to_string();
  return j;
}

void put_search(Json& r, const PgrReport& report) {
  r["verdict"] = to_string(report.verdict);
  r["pgr"] = report.verdict == Verdict::inconclusive ? Json(nullptr) : Json(report.verdict == Verdict::pgr);
  r["min_ord_res"] = to_string(report.min_ord_res);
  r["probes"] = report.probes;
  if (report.verdict == Verdict::pgr) {
    r["witness"] = "M = " + report.witness.matrix().to_expression();
    r["witness_recheck"] = report.witness_rechecked;
    r["ramification"] = report.ramification;
  } else {
    r["witness_recheck"] = nullptr;
  }
  if (report.oracle_min) r["diagnostics"]["oracle_min"] = to_string(*report.oracle_min);
  if (!report.note.empty()) r["diagnostics"]["note"] = report.note;
}

SearchConfig config_of(const RunOptions& o) {
  SearchConfig c;
  c.s_bound = o.search_depth;
  c.e_max = static_cast<int>(o.max_ramification);
  c.delta_min = ratio(1, o.max_ramification);
  c.max_probes = o.max_probes;
  return c;
}

struct Searched {
  AdaptiveLimit limit;
  ValuedRationalMap target;
  PgrReport report;
};

// The search on the l-th iterate of the limit, re-expanding the family when a probe runs out of precision.
Searched search(const FamilySpec& spec, const RunOptions& o, int power) {
  Rational tau = o.precision;
  for (int attempt = 0;; ++attempt) {
    AdaptiveLimit limit = family_limit_adaptive(spec, tau);
    ValuedRationalMap target = power == 1 ? limit.map : iterate(limit.map, power);
    PgrReport report = minimize_ord_res(target, config_of(o));
    if (report.verdict != Verdict::inconclusive || !report.precision_limited || attempt >= 4) {
      return {limit, target, report};
    }
    tau = limit.precision * 2;
  }
}

Json convergence_entry(const std::string& name, const ConvergenceReport& c, double tolerance) {
  Json j;
  j["observable"] = name;
  j["valuation"] = to_string(c.valuation);
  j["predicted_log"] = significant12(c.valuation.get_d() * log_abs(c.t0));
  j["tail_from"] = c.tail_start + 1;
  j["tail_deviation"] = significant12(c.tail_deviation);
  j["within_tolerance"] = c.tail_deviation < tolerance;
  Json rows = Json::array();
  for (const auto& s : c.samples) {
    Json row;
    row["n"] = s.n;
    row["epsilon"] = to_string(s.epsilon);
    row["measured_log"] = significant12(s.measured_log);
    row["predicted_log"] = significant12(s.predicted_log);
    row["deviation"] = significant12(s.deviation);
    rows.push_back(row);
  }
  j["samples"] = rows;
  return j;
}

void run_command(Json& r, const std::string& command, const FamilyFile& file, const RunOptions& o, int& exit_code) {
  const FamilySpec spec = file.spec();
  if (command == "limit") {
    AdaptiveLimit limit = family_limit_adaptive(spec, o.precision);
    r["limit"] = describe(limit.map);
    r["ord_res"] = to_string(ord_res(limit.map));
    r["diagnostics"]["precision"] = to_string(limit.precision);
    if (auto m = file.matrix()) {
      ConjugatedLimit c = conjugated_family_limit(spec, *m, o.precision);
      Json j = describe(c.map);
      j["conjugate_of_limit"] = c.reference.to_string();
      j["commutes"] = c.commutes;
      j["beth_landing"] = c.beth_landing;
      r["conjugated"] = j;
    }
    return;
  }
  if (command == "pgr" || command == "iterate") {
    const int power = command == "iterate" ? static_cast<int>(o.iterate_power) : 1;
    Searched s = search(spec, o, power);
    r["limit"] = describe(s.target);
    if (power > 1) r["limit"]["iterate_power"] = power;
    r["ord_res"] = to_string(ord_res(s.target));
    r["diagnostics"]["precision"] = to_string(s.limit.precision);
    put_search(r, s.report);
    if (s.report.verdict == Verdict::inconclusive) exit_code = exit_inconclusive;
    return;
  }
  if (command == "classify") {
    try {
      FamilyClassification c = classify_family(spec, o.precision, config_of(o));
      r["classification"] = to_string(c.label);
      r["limit"] = describe(c.limit);
      r["ord_res"] = to_string(c.ord_res);
      r["diagnostics"]["precision"] = to_string(c.precision);
      if (c.pgr) {
        put_search(r, *c.pgr);
      } else {
        // Good reduction already: the identity is a witness.
        r["verdict"] = "pgr";
        r["pgr"] = true;
        r["min_ord_res"] = "0";
        r["witness"] = "M = " + ConjugationMatrix::identity().to_expression();
        r["witness_recheck"] = good_reduction(c.limit);
        r["ramification"] = 1;
        r["probes"] = 0;
      }
    } catch (const Inconclusive& e) {
      r["classification"] = "inconclusive";
      put_search(r, e.report());
      exit_code = exit_inconclusive;
    }
    return;
  }
  if (command == "verify") {
    const std::size_t vars = 2 * static_cast<std::size_t>(file.degree) + 2;
    std::vector<std::pair<std::string, MvPolynomial>> observables;
    const auto names = file.variable_names();
    if (file.observables.empty()) {
      observables.emplace_back("Res", resultant_polynomial(file.degree));
      // Coordinates that vanish on the whole family carry no information.
      for (std::size_t i = 0; i < vars; ++i) {
        const auto& entry = i <= static_cast<std::size_t>(file.degree) ? spec.num[i] : spec.den[i - spec.num.size()];
        if (!entry.is_zero()) observables.emplace_back(names[i], MvPolynomial::variable(vars, i));
      }
    } else {
      const auto polys = file.observable_polynomials();
      for (std::size_t i = 0; i < polys.size(); ++i) observables.emplace_back(to_string(*file.observables[i]), polys[i]);
    }
    Json table = Json::array();
    for (const auto& [name, p] : observables) {
      table.push_back(convergence_entry(name, verify_convergence(spec, p, o.t0, o.samples), 0.02));
    }
    r["convergence"] = table;
    r["diagnostics"]["t0"] = to_string(o.t0);
    r["diagnostics"]["samples"] = o.samples;
    return;
  }
  throw std::invalid_argument("unknown command '" + command + "'");
}

}  // namespace

RunOptions resolve(const Settings& given, const FamilyFile& file) {
  RunOptions o;
  if (auto v = given.precision ? given.precision : file.precision) o.precision = *v;
  if (auto v = given.max_ramification ? given.max_ramification : file.max_ramification) o.max_ramification = *v;
  if (auto v = given.search_depth ? given.search_depth : file.search_depth) o.search_depth = *v;
  if (auto v = given.max_probes ? given.max_probes : file.max_probes) o.max_probes = *v;
  if (auto v = given.t0 ? given.t0 : file.t0) o.t0 = *v;
  if (auto v = given.samples ? given.samples : file.samples) o.samples = *v;
  if (auto v = given.iterate_power ? given.iterate_power : file.iterate_power) o.iterate_power = *v;
  if (o.precision <= 0) throw std::invalid_argument("precision must be positive");
  if (o.max_ramification < 1) throw std::invalid_argument("max-ramification must be at least 1");
  if (o.search_depth <= 0) throw std::invalid_argument("search-depth must be positive");
  if (o.max_probes < 1) throw std::invalid_argument("max-probes must be at least 1");
  if (o.t0 <= 0 || o.t0 >= 1) throw std::invalid_argument("t0 must lie in (0, 1)");
  if (o.samples < 5) throw std::invalid_argument("samples must be at least 5");
  if (o.iterate_power < 1 || o.iterate_power > 16) throw std::invalid_argument("iterate-power must lie in [1, 16]");
  return o;
}

RunResult run(const std::string& command, const FamilyFile& file, const RunOptions& options,
              const std::string& input_name) {
  Json r = skeleton(command, input_name);
  r["input"] = echo(file, input_name);
  r["diagnostics"]["precision"] = to_string(options.precision);
  r["diagnostics"]["max_ramification"] = options.max_ramification;
  r["diagnostics"]["search_depth"] = to_string(options.search_depth);
  r["diagnostics"]["max_probes"] = options.max_probes;
  int exit_code = exit_definite;
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands)) {
    r["error"] = {{"type", "usage"}, {"message", "unknown command '" + command + "'"}};
    return {r, exit_input_error};
  }
  try {
    run_command(r, command, file, options, exit_code);
  } catch (const PrecisionExhausted& e) {
    r["verdict"] = "inconclusive";
    r["error"] = {{"type", "precision_exhausted"}, {"message", e.what()}};
    exit_code = exit_inconclusive;
  } catch (const DegenerateMap& e) {
    r["error"] = {{"type", "degenerate_map"}, {"message", e.what()}};
    exit_code = exit_input_error;
  } catch (const SampleUndefined& e) {
    r["error"] = {{"type", "sample_undefined"}, {"message", e.what()}};
    exit_code = exit_input_error;
  } catch (const Error& e) {
    r["error"] = {{"type", "error"}, {"message", e.what()}};
    exit_code = exit_input_error;
  } catch (const std::invalid_argument& e) {
    r["error"] = {{"type", "invalid_argument"}, {"message", e.what()}};
    exit_code = exit_input_error;
  }
  return {r, exit_code};
}

RunResult input_error(const std::string& command, const std::string& input_name, const std::exception& error) {
  Json r = skeleton(command, input_name);
  Json e;
  if (auto* s = dynamic_cast<const SyntaxError*>(&error)) {
    e["type"] = "syntax";
    e["line"] = s->line();
    e["column"] = s->column();
  } else if (dynamic_cast<const ArityError*>(&error)) {
    e["type"] = "arity";
  } else if (dynamic_cast<const DegreeError*>(&error)) {
    e["type"] = "degree";
  } else {
    e["type"] = "input";
  }
  e["message"] = error.what();
  r["error"] = e;
  return {r, exit_input_error};
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

namespace {

std::string scalar(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render(std::ostringstream& out, const Json& value, const std::string& indent) {
  for (const auto& [key, v] : value.items()) {
    if (v.is_object()) {
      out << indent << key << ":\n";
      render(out, v, indent + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << indent << key << ":\n";
      for (const auto& item : v) {
        out << indent << "  -\n";
        render(out, item, indent + "    ");
      }
    } else if (v.is_array()) {
      out << indent << key << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
      out << "]\n";
    } else {
      out << indent << key << ": " << scalar(v) << "\n";
    }
  }
}

void render_samples(std::ostringstream& out, const Json& samples, const std::string& indent) {
  char line[160];
  std::snprintf(line, sizeof line, "%s%4s  %-8s  %19s  %19s  %19s\n", indent.c_str(), "n", "eps", "measured_log",
                "predicted_log", "deviation");
  out << line;
  for (const auto& s : samples) {
    std::snprintf(line, sizeof line, "%s%4lld  %-8s  %19.12g  %19.12g  %19.12g\n", indent.c_str(),
                  static_cast<long long>(s["n"].get<long>()), s["epsilon"].get<std::string>().c_str(),
                  s["measured_log"].get<double>(), s["predicted_log"].get<double>(), s["deviation"].get<double>());
    out << line;
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  for (const auto& [key, v] : report.items()) {
    if (key == "convergence" && v.is_array()) {
      out << "convergence:\n";
      for (const auto& entry : v) {
        Json head = entry;
        head.erase("samples");
        out << "  -\n";
        render(out, head, "    ");
        render_samples(out, entry["samples"], "    ");
      }
      continue;
    }
    Json single = Json::object();
    single[key] = v;
    render(out, single, "");
  }
  return out.str();
}

}  // namespace hybridrat
