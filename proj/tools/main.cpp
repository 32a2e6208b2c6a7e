// infomeasure CLI: compute | audit | characterize | profile.
//
// Thin orchestration over the C API (infomeasure.h).  Exit codes:
//   0  success / all checks passed
//   1  an audit or characterization ran but did not pass
//   2  usage or validation error

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infomeasure.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct InputData {
  std::vector<double> p;
  std::optional<std::vector<double>> r;
};

[[noreturn]] void die(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(kExitUsage);
}

void die_on_error(im_status status) {
  if (status == IM_OK) return;
  die(im_last_error_message());
}

InputData load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot open input file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    die("invalid JSON in '" + path + "': " + e.what());
  }
  if (!doc.is_object() || !doc.contains("p") || !doc["p"].is_array()) {
    die("input must be a JSON object with a \"p\" array");
  }
  InputData data;
  try {
    data.p = doc["p"].get<std::vector<double>>();
    if (doc.contains("r")) {
      if (!doc["r"].is_array()) die("\"r\" must be an array of numbers");
      data.r = doc["r"].get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    die(std::string("distribution arrays must hold numbers: ") + e.what());
  }
  if (data.p.empty()) die("\"p\" must be nonempty");
  if (data.r.has_value() && data.r->empty()) die("\"r\" must be nonempty");
  return data;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

uint64_t default_seed() {
  if (const char* env = std::getenv("INFOMEASURE_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

bool is_builtin_divergence(const std::string& name) {
  return name == "kl" || name == "q-kl";
}

bool builtin_needs_q(const std::string& name) {
  return name == "q-entropy" || name == "q-kl";
}

// Shared "which measure" flags for audit and characterize.
struct MeasureSpec {
  std::string builtin;
  std::string dsl;
  std::string kind = "";
  std::optional<double> q;
};

im_measure* make_measure(const MeasureSpec& spec) {
  if (spec.builtin.empty() == spec.dsl.empty()) {
    die("choose exactly one of a built-in measure name or --dsl");
  }
  im_measure* measure = nullptr;
  if (!spec.builtin.empty()) {
    if (builtin_needs_q(spec.builtin) && !spec.q.has_value()) {
      die("measure '" + spec.builtin + "' needs --q");
    }
    die_on_error(im_measure_builtin(spec.builtin.c_str(),
                                    spec.q.value_or(1.0), &measure));
    return measure;
  }
  if (spec.kind.empty()) die("--dsl needs --kind entropy|divergence");
  const im_measure_kind kind =
      spec.kind == "entropy" ? IM_KIND_ENTROPY : IM_KIND_DIVERGENCE;
  const im_status status =
      im_measure_dsl(spec.dsl.c_str(), kind, spec.q.has_value() ? 1 : 0,
                     spec.q.value_or(0.0), &measure);
  if (status == IM_ERR_PARSE) {
    std::cerr << "error: " << im_last_error_message() << "\n";
    size_t begin = 0;
    size_t end = 0;
    if (im_last_error_span(&begin, &end)) {
      std::cerr << spec.dsl << "\n";
      std::cerr << std::string(begin, ' ')
                << std::string(end > begin ? end - begin : 1, '^') << "\n";
    }
    std::exit(kExitUsage);
  }
  die_on_error(status);
  return measure;
}

void add_measure_flags(CLI::App* cmd, MeasureSpec& spec) {
  cmd->add_option("measure", spec.builtin,
                  "built-in measure: shannon | kl | q-entropy | q-kl");
  cmd->add_option("--dsl", spec.dsl, "candidate measure as a DSL expression");
  cmd->add_option("--kind", spec.kind, "measure kind for --dsl")
      ->check(CLI::IsMember({"entropy", "divergence"}));
  cmd->add_option("--q", spec.q, "q parameter");
}

int cmd_compute(const std::string& measure, std::optional<double> q,
                const std::string& input_path) {
  if (measure != "shannon" && measure != "kl" && measure != "q-entropy" &&
      measure != "q-kl") {
    die("unknown measure '" + measure +
        "' (expected shannon, kl, q-entropy or q-kl)");
  }
  if (builtin_needs_q(measure) && !q.has_value()) {
    die("measure '" + measure + "' needs --q");
  }
  if (!builtin_needs_q(measure) && q.has_value()) {
    die("--q only applies to q-entropy and q-kl");
  }
  const InputData data = load_input(input_path);
  double value = 0.0;

  if (!is_builtin_divergence(measure)) {
    im_distribution* dist = nullptr;
    die_on_error(im_distribution_create(data.p.data(), data.p.size(), &dist));
    const im_status status =
        measure == "shannon" ? im_shannon_entropy(dist, &value)
                             : im_q_entropy(dist, *q, &value);
    im_distribution_free(dist);
    die_on_error(status);
  } else {
    if (!data.r.has_value()) {
      die("measure '" + measure + "' needs an \"r\" array in the input");
    }
    // Validate the coordinates first so a support violation is reported as
    // an infinite divergence, not a generic pair error.
    im_distribution* p_dist = nullptr;
    im_distribution* r_dist = nullptr;
    die_on_error(im_distribution_create(data.p.data(), data.p.size(), &p_dist));
    im_distribution_free(p_dist);
    die_on_error(
        im_distribution_create(data.r->data(), data.r->size(), &r_dist));
    im_distribution_free(r_dist);
    if (data.p.size() != data.r->size()) {
      die("\"p\" and \"r\" must have the same length");
    }
    for (size_t i = 0; i < data.p.size(); ++i) {
      if (data.p[i] > 0.0 && (*data.r)[i] == 0.0) {
        std::cout << "infinite: p_i>0, r_i=0 at index " << i << "\n";
        return kExitUsage;
      }
    }
    im_pair* pair = nullptr;
    die_on_error(
        im_pair_create(data.p.data(), data.r->data(), data.p.size(), &pair));
    const im_status status = measure == "kl"
                                 ? im_relative_entropy(pair, &value)
                                 : im_q_relative_entropy(pair, *q, &value);
    im_pair_free(pair);
    die_on_error(status);
  }
  std::cout << format_value(value) << "\n";
  return kExitOk;
}

int cmd_audit(const MeasureSpec& spec, const std::vector<std::string>& axioms,
              const im_audit_options& options, const std::string& report_path) {
  im_measure* measure = make_measure(spec);
  std::vector<const char*> names;
  names.reserve(axioms.size());
  for (const std::string& a : axioms) names.push_back(a.c_str());

  char* report_json = nullptr;
  int all_pass = 0;
  const im_status status =
      im_audit_run(measure, names.empty() ? nullptr : names.data(),
                   names.size(), &options, &report_json, &all_pass);
  im_measure_free(measure);
  die_on_error(status);

  const std::string report(report_json);
  im_string_free(report_json);

  const auto doc = nlohmann::json::parse(report);
  for (const auto& rec : doc["axioms"]) {
    char line[256];
    std::snprintf(line, sizeof(line),
                  "%s: trials=%d max_residual=%.3e mean_residual=%.3e %s",
                  rec["name"].get<std::string>().c_str(),
                  rec["trials"].get<int>(), rec["max_residual"].get<double>(),
                  rec["mean_residual"].get<double>(),
                  rec["pass"].get<bool>() ? "PASS" : "FAIL");
    std::cout << line << "\n";
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) die("cannot write report to '" + report_path + "'");
    out << report;
  }
  return all_pass != 0 ? kExitOk : kExitFailed;
}

int cmd_characterize(const MeasureSpec& spec, const std::string& method,
                     const im_characterize_options& options) {
  im_measure* measure = make_measure(spec);
  char* result_json = nullptr;
  int within_tol = 0;
  const im_status status = im_characterize_run(measure, method.c_str(),
                                               &options, &result_json,
                                               &within_tol);
  im_measure_free(measure);
  die_on_error(status);
  std::cout << result_json;
  im_string_free(result_json);
  return within_tol != 0 ? kExitOk : kExitFailed;
}

int cmd_profile(const std::string& input_path, double q_from, double q_to,
                int steps, const std::string& out_path) {
  if (steps < 2) die("--steps must be at least 2");
  if (!(q_from < q_to)) die("--q-from must be smaller than --q-to");
  const InputData data = load_input(input_path);

  im_distribution* dist = nullptr;
  im_pair* pair = nullptr;
  if (data.r.has_value()) {
    if (data.p.size() != data.r->size()) {
      die("\"p\" and \"r\" must have the same length");
    }
    die_on_error(
        im_pair_create(data.p.data(), data.r->data(), data.p.size(), &pair));
  } else {
    die_on_error(im_distribution_create(data.p.data(), data.p.size(), &dist));
  }

  std::ostringstream csv;
  csv << "q,value\n";
  for (int j = 0; j < steps; ++j) {
    double qv;
    if (j == 0) {
      qv = q_from;
    } else if (j == steps - 1) {
      qv = q_to;
    } else {
      qv = q_from + (q_to - q_from) * j / (steps - 1);
    }
    double value = 0.0;
    const im_status status = pair != nullptr
                                 ? im_q_relative_entropy(pair, qv, &value)
                                 : im_q_entropy(dist, qv, &value);
    if (status != IM_OK) {
      im_pair_free(pair);
      im_distribution_free(dist);
      die(im_last_error_message());
    }
    csv << format_value(qv) << "," << format_value(value) << "\n";
  }
  im_pair_free(pair);
  im_distribution_free(dist);

  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) die("cannot write profile to '" + out_path + "'");
    out << csv.str();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information measures on finite probability distributions"};
  app.require_subcommand(1);

  // compute
  std::string compute_measure;
  std::optional<double> compute_q;
  std::string compute_input;
  CLI::App* compute = app.add_subcommand(
      "compute", "evaluate a built-in measure on a distribution file");
  compute->add_option("measure", compute_measure,
                      "shannon | kl | q-entropy | q-kl")
      ->required();
  compute->add_option("--q", compute_q, "q parameter for q-entropy / q-kl");
  compute->add_option("input", compute_input, "JSON file with p (and r)")
      ->required();

  // audit
  MeasureSpec audit_spec;
  std::vector<std::string> audit_axioms;
  std::string audit_report;
  im_audit_options audit_options;
  im_audit_options_init(&audit_options);
  audit_options.seed = default_seed();
  CLI::App* audit = app.add_subcommand(
      "audit", "run randomized axiom checks against a measure");
  add_measure_flags(audit, audit_spec);
  audit->add_option("--axioms", audit_axioms,
                    "axioms to audit (default: all for the measure kind)")
      ->delimiter(',');
  audit->add_option("--trials", audit_options.trials, "trials per axiom");
  audit->add_option("--max-n", audit_options.max_n,
                    "largest sampled distribution length");
  audit->add_option("--max-blocks", audit_options.max_blocks,
                    "largest number of chain blocks");
  audit->add_option("--tol", audit_options.tol, "residual tolerance");
  audit->add_option("--seed", audit_options.seed, "RNG seed");
  audit->add_option("--zero-prob", audit_options.zero_pattern_prob,
                    "zero-pattern probability");
  audit->add_option("--report", audit_report, "write the JSON report here");

  // characterize
  MeasureSpec char_spec;
  std::string char_method;
  im_characterize_options char_options;
  im_characterize_options_init(&char_options);
  char_options.seed = default_seed();
  CLI::App* characterize = app.add_subcommand(
      "characterize", "recover the scale constant of a measure");
  add_measure_flags(characterize, char_spec);
  characterize->add_option("--method", char_method, "fit | thm2 | thm3")
      ->required()
      ->check(CLI::IsMember({"fit", "thm2", "thm3"}));
  characterize->add_option("--trials", char_options.trials,
                           "instances for scaling verification");
  characterize->add_option("--seed", char_options.seed, "RNG seed");
  characterize->add_option("--tol", char_options.tol, "pass threshold");

  // profile
  std::string profile_input;
  std::string profile_out;
  double profile_from = 0.0;
  double profile_to = 2.0;
  int profile_steps = 0;
  CLI::App* profile = app.add_subcommand(
      "profile", "tabulate the q-entropy (or q-divergence) across q");
  profile->add_option("input", profile_input, "JSON file with p (and r)")
      ->required();
  profile->add_option("--q-from", profile_from, "start of the q range")
      ->required();
  profile->add_option("--q-to", profile_to, "end of the q range")->required();
  profile->add_option("--steps", profile_steps, "number of rows")->required();
  profile->add_option("--out", profile_out, "write CSV here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (compute->parsed()) {
    return cmd_compute(compute_measure, compute_q, compute_input);
  }
  if (audit->parsed()) {
    return cmd_audit(audit_spec, audit_axioms, audit_options, audit_report);
  }
  if (characterize->parsed()) {
    if (char_spec.q.has_value()) {
      char_options.has_q = 1;
      char_options.q = *char_spec.q;
    }
    return cmd_characterize(char_spec, char_method, char_options);
  }
  if (profile->parsed()) {
    return cmd_profile(profile_input, profile_from, profile_to, profile_steps,
                       profile_out);
  }
  return kExitUsage;
}
