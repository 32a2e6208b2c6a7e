#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/compose.hpp"
#include "core/distribution.hpp"
#include "core/measure.hpp"
#include "core/sampling.hpp"

namespace infomeasure {

// Residual checks.  Each returns the absolute residual of one identity on
// one concrete instance; zero means the instance satisfies the identity
// exactly.  The chain-type checks take a weight exponent: exponent 1 gives
// the plain chain rule, exponent q the q-deformed weights w_i^q w~_i^(1-q).

double check_symmetry(const Measure& m, const Distribution& p,
                      const Permutation& sigma);
double check_symmetry(const Measure& m, const AbsolutelyContinuousPair& pair,
                      const Permutation& sigma);

/// |m(p || p)|; divergence-type only.
double check_vanishing(const Measure& m, const Distribution& p);

double check_chain_rule(const Measure& m, const AbsolutelyContinuousPair& w,
                        const std::vector<AbsolutelyContinuousPair>& parts,
                        double weight_q = 1.0);

/// The two-element special case: the first entry of w is split by a pair
/// over 2 elements.
double check_recursivity(const Measure& m, const AbsolutelyContinuousPair& w,
                         const AbsolutelyContinuousPair& split,
                         double weight_q = 1.0);

/// The n = 2 special case of the chain rule (binary direct sum).
double check_two_block(const Measure& m, const AbsolutelyContinuousPair& w2,
                       const AbsolutelyContinuousPair& left,
                       const AbsolutelyContinuousPair& right,
                       double weight_q = 1.0);

double check_q_chain(const Measure& m, double q, const Distribution& w,
                     const std::vector<Distribution>& parts);
double check_q_mult(const Measure& m, double q, const Distribution& w,
                    const Distribution& p);
double check_q_rel_mult(const Measure& m, double q,
                        const AbsolutelyContinuousPair& w,
                        const AbsolutelyContinuousPair& p);

namespace detail {
// Signed residuals, used by the telescoping decomposition below.
double signed_chain(const Measure& m, const AbsolutelyContinuousPair& w,
                    const std::vector<AbsolutelyContinuousPair>& parts,
                    double weight_q);
double signed_recursivity(const Measure& m, const AbsolutelyContinuousPair& w,
                          const AbsolutelyContinuousPair& split,
                          double weight_q);
}  // namespace detail

/// Decomposes a full chain-rule instance into a telescoping sequence of
/// single-cell recursivity steps and returns the signed sum of their
/// residuals.  For any symmetric measure this agrees with the signed full
/// chain residual up to floating-point noise, which is the numerical
/// footprint of the classical equivalence between recursivity and the chain
/// rule.
double telescoped_chain_residual(
    const Measure& m, const AbsolutelyContinuousPair& w,
    const std::vector<AbsolutelyContinuousPair>& parts, double weight_q = 1.0);

enum class Axiom {
  symmetry,
  vanishing,
  chain,
  recursivity,
  two_block,
  q_chain,
  q_mult,
  q_rel_mult,
};

const char* axiom_name(Axiom axiom);
std::optional<Axiom> axiom_from_name(const std::string& name);
bool axiom_applies(Axiom axiom, MeasureKind kind);
std::vector<Axiom> axioms_for_kind(MeasureKind kind);

struct AuditOptions {
  int trials = 1000;
  std::size_t max_n = 8;
  std::size_t max_blocks = 4;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  double zero_pattern_prob = 0.25;
  /// Weight exponent for the chain-type identities.  Defaults to the
  /// measure's own q, or 1 when it has none.
  std::optional<double> weight_q;
};

struct AxiomResult {
  Axiom axiom;
  int trials;
  double max_residual;
  double mean_residual;
  nlohmann::ordered_json worst_instance;
  bool pass;
};

struct AuditReport {
  std::string measure;
  std::uint64_t seed;
  double tol;
  std::vector<AxiomResult> axioms;

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

/// Runs `options.trials` randomized instances of every requested axiom
/// against the measure.  Trial i of each axiom draws from a substream
/// derived from (seed, axiom, i), so the report is byte-deterministic for a
/// given seed and configuration.
AuditReport run_audit(const Measure& m, const std::vector<Axiom>& axioms,
                      const AuditOptions& options);

}  // namespace infomeasure
