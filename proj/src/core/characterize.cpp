#include "core/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/numeric.hpp"
#include "core/sampling.hpp"

namespace infomeasure {

namespace {

constexpr std::uint64_t kScalingStream = 101;

void require_divergence(const Measure& m, const char* what) {
  if (m.kind() != MeasureKind::divergence) {
    throw Error(ErrorCode::kind_mismatch,
                std::string(what) + " applies to divergence-type measures; '" +
                    m.label() + "' is entropy-type");
  }
}

}  // namespace

double ell(const Measure& m, double alpha) {
  require_divergence(m, "ell");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::domain_error,
                "alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  return m(AbsolutelyContinuousPair(Distribution({1.0, 0.0}),
                                    Distribution({alpha, 1.0 - alpha})));
}

double check_multiplicativity(const Measure& m, double alpha, double beta) {
  return std::fabs(ell(m, alpha * beta) - ell(m, alpha) - ell(m, beta));
}

std::vector<double> default_log_fit_grid() {
  std::vector<double> grid(32);
  for (std::size_t k = 1; k <= 32; ++k) grid[k - 1] = k / 32.0;
  return grid;
}

LogFitResult fit_log_constant(const Measure& m,
                              const std::vector<double>& grid) {
  require_divergence(m, "fit_log_constant");
  if (grid.empty()) {
    throw Error(ErrorCode::invalid_argument, "log-fit grid is empty");
  }
  std::vector<double> values(grid.size());
  CompensatedSum cross;
  CompensatedSum norm;
  bool usable = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = ell(m, grid[i]);
    const double x = std::log(grid[i]);
    if (x == 0.0) continue;  // alpha = 1 pins L(1) = 0, not the slope
    cross.add(-x * values[i]);
    norm.add(x * x);
    usable = true;
  }
  if (!usable) {
    throw Error(ErrorCode::invalid_argument,
                "log-fit grid has no usable points (all alpha = 1)");
  }
  LogFitResult result;
  result.c = cross.value() / norm.value();
  result.grid = grid;
  result.max_residual = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    result.max_residual =
        std::max(result.max_residual,
                 std::fabs(values[i] + result.c * std::log(grid[i])));
  }
  return result;
}

double extract_constant_q(const Measure& m, QParameter q) {
  if (m.kind() != MeasureKind::entropy) {
    throw Error(ErrorCode::kind_mismatch,
                "extract_constant_q applies to entropy-type measures; '" +
                    m.label() + "' is divergence-type");
  }
  if (q.is_unit()) {
    throw Error(ErrorCode::invalid_argument,
                "constant extraction needs q away from 1");
  }
  const double value = m(Distribution({0.5, 0.5}));
  return (1.0 - q.value()) / std::expm1((1.0 - q.value()) * std::log(2.0)) *
         value;
}

double extract_constant_q_rel(const Measure& m, QParameter q) {
  require_divergence(m, "extract_constant_q_rel");
  if (q.is_unit()) {
    throw Error(ErrorCode::invalid_argument,
                "constant extraction needs q away from 1");
  }
  const double value = m(AbsolutelyContinuousPair(
      Distribution({1.0, 0.0}), Distribution({0.5, 0.5})));
  return (q.value() - 1.0) /
         std::expm1((q.value() - 1.0) * std::log(2.0)) * value;
}

BFInstance build_bf_instance(const AbsolutelyContinuousPair& pair) {
  const Distribution& p = pair.p();
  const Distribution& r = pair.r();
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p[i] > 0.0)) {
      throw Error(ErrorCode::invalid_argument,
                  "build_bf_instance needs full-support p; index " +
                      std::to_string(i) + " is zero");
    }
  }
  double alpha = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    alpha = std::min(alpha, r[i] / p[i]);
  }
  std::vector<double> big_p(2 * n, 0.0);
  std::vector<double> big_r(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    big_p[i] = p[i];
    big_r[i] = alpha * p[i];
    // alpha <= r_i/p_i makes this nonnegative up to rounding of the ratio.
    big_r[n + i] = std::max(0.0, r[i] - alpha * p[i]);
  }
  return {alpha, AbsolutelyContinuousPair(Distribution(std::move(big_p)),
                                          Distribution(std::move(big_r)))};
}

double verify_scaling(const Measure& m, double c, const Measure& reference,
                      const ScalingOptions& options) {
  if (m.kind() != reference.kind()) {
    throw Error(ErrorCode::kind_mismatch,
                "verify_scaling needs measures of the same kind");
  }
  if (options.trials < 1) {
    throw Error(ErrorCode::invalid_argument, "trials must be >= 1");
  }
  double worst = 0.0;
  for (int i = 0; i < options.trials; ++i) {
    Rng rng(derive_seed(options.seed, kScalingStream,
                        static_cast<std::uint64_t>(i)));
    const std::size_t n =
        1 + rng.index(options.max_n > 0 ? options.max_n : 1);
    double deviation;
    if (m.kind() == MeasureKind::entropy) {
      Distribution p = sample_distribution(n, options.zero_pattern_prob, rng);
      deviation = std::fabs(m(p) - c * reference(p));
    } else {
      AbsolutelyContinuousPair pair =
          sample_pair(n, options.zero_pattern_prob, rng);
      deviation = std::fabs(m(pair) - c * reference(pair));
    }
    worst = std::max(worst, deviation);
  }
  return worst;
}

const char* characterization_method_name(CharacterizationMethod method) {
  switch (method) {
    case CharacterizationMethod::fit_log: return "fit_log";
    case CharacterizationMethod::thm2: return "thm2";
    case CharacterizationMethod::thm3: return "thm3";
  }
  return "?";
}

std::optional<CharacterizationMethod> characterization_method_from_name(
    const std::string& name) {
  if (name == "fit" || name == "fit_log") {
    return CharacterizationMethod::fit_log;
  }
  if (name == "thm2") return CharacterizationMethod::thm2;
  if (name == "thm3") return CharacterizationMethod::thm3;
  return std::nullopt;
}

nlohmann::ordered_json CharacterizationResult::to_json() const {
  nlohmann::ordered_json j;
  j["c"] = c;
  j["max_residual"] = max_residual;
  j["method"] = characterization_method_name(method);
  j["sign_note"] =
      sign_note.has_value() ? nlohmann::ordered_json(*sign_note)
                            : nlohmann::ordered_json(nullptr);
  return j;
}

CharacterizationResult characterize(const Measure& m,
                                    CharacterizationMethod method,
                                    const CharacterizationOptions& options) {
  ScalingOptions scaling;
  scaling.trials = options.trials;
  scaling.seed = options.seed;

  CharacterizationResult result;
  result.method = method;

  switch (method) {
    case CharacterizationMethod::fit_log: {
      require_divergence(m, "fit_log characterization");
      const LogFitResult fit = fit_log_constant(m, default_log_fit_grid());
      result.c = fit.c;
      result.max_residual =
          std::max(fit.max_residual,
                   verify_scaling(m, fit.c, Measure::kl(), scaling));
      break;
    }
    case CharacterizationMethod::thm2: {
      if (!options.q.has_value()) {
        throw Error(ErrorCode::invalid_argument,
                    "thm2 characterization needs a q parameter");
      }
      QParameter q(*options.q);
      result.c = extract_constant_q(m, q);
      result.max_residual =
          verify_scaling(m, result.c, Measure::q_entropy(q.value()), scaling);
      break;
    }
    case CharacterizationMethod::thm3: {
      if (!options.q.has_value()) {
        throw Error(ErrorCode::invalid_argument,
                    "thm3 characterization needs a q parameter");
      }
      QParameter q(*options.q);
      result.c = extract_constant_q_rel(m, q);
      result.max_residual =
          verify_scaling(m, result.c, Measure::q_kl(q.value()), scaling);
      result.sign_note =
          "constant uses the prefactor (q-1)/(2^(q-1)-1), which assigns "
          "c = +1 to the q-logarithmic relative entropy itself; the "
          "opposite sign (1-q) would assign c = -1";
      break;
    }
  }
  return result;
}

}  // namespace infomeasure
