#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/distribution.hpp"
#include "core/measure.hpp"

namespace infomeasure {

/// L(alpha) = m((1,0) || (alpha, 1-alpha)), the section of a divergence
/// measure whose log-linearity pins its scale.
double ell(const Measure& m, double alpha);

/// |L(alpha*beta) - L(alpha) - L(beta)|.
double check_multiplicativity(const Measure& m, double alpha, double beta);

struct LogFitResult {
  double c;             // least-squares fit of L(alpha) against -log(alpha)
  double max_residual;  // max over the grid of |L(alpha) + c log(alpha)|
  std::vector<double> grid;
};

/// The default grid {k/32 : 1 <= k <= 32}.
std::vector<double> default_log_fit_grid();

/// Fits L against -log on the grid.  Grid points with log(alpha) = 0
/// contribute only to the residual, not the estimate.
LogFitResult fit_log_constant(const Measure& m,
                              const std::vector<double>& grid);

/// The scale constant of an entropy-type measure at q != 1:
/// (1-q) / (2^(1-q) - 1) * m(1/2, 1/2).
double extract_constant_q(const Measure& m, QParameter q);

/// The scale constant of a divergence-type measure at q != 1:
/// (q-1) / (2^(q-1) - 1) * m((1,0) || (1/2,1/2)).  The prefactor sign is
/// fixed so that the q-logarithmic relative entropy itself gets c = +1.
double extract_constant_q_rel(const Measure& m, QParameter q);

/// The doubled pair ((p, 0...0), (alpha p, r - alpha p)) built from a
/// full-support pair with the maximal admissible alpha = min(1, min r_i/p_i).
struct BFInstance {
  double alpha;
  AbsolutelyContinuousPair big_pair;
};

BFInstance build_bf_instance(const AbsolutelyContinuousPair& pair);

struct ScalingOptions {
  int trials = 500;
  std::uint64_t seed = 0;
  std::size_t max_n = 8;
  double zero_pattern_prob = 0.25;
};

/// Max over sampled instances of |m(x) - c * reference(x)|.  Instances are
/// distributions or pairs according to the (matching) kinds.
double verify_scaling(const Measure& m, double c, const Measure& reference,
                      const ScalingOptions& options);

enum class CharacterizationMethod { fit_log, thm2, thm3 };

const char* characterization_method_name(CharacterizationMethod method);
std::optional<CharacterizationMethod> characterization_method_from_name(
    const std::string& name);

struct CharacterizationOptions {
  std::optional<double> q;
  double tol = 1e-9;
  int trials = 500;
  std::uint64_t seed = 0;
};

struct CharacterizationResult {
  double c;
  double max_residual;
  CharacterizationMethod method;
  std::optional<std::string> sign_note;

  bool within(double tol) const { return max_residual <= tol; }
  nlohmann::ordered_json to_json() const;
};

/// End-to-end pipeline: extracts the candidate constant by the requested
/// method and verifies m against c times the matching built-in reference.
/// max_residual is the verification deviation (for fit_log, combined with
/// the log-fit residual).
CharacterizationResult characterize(const Measure& m,
                                    CharacterizationMethod method,
                                    const CharacterizationOptions& options);

}  // namespace infomeasure
