#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "core/distribution.hpp"
#include "core/measures.hpp"

namespace infomeasure {

enum class MeasureKind { entropy, divergence };

/// A measure handle: an evaluable family of functions, one per length n,
/// either entropy-type (on distributions) or divergence-type (on absolutely
/// continuous pairs).  Built-ins, DSL-backed candidates and test fixtures
/// all flow through this type into the audit and characterization engines.
class Measure {
public:
  using EntropyFn = std::function<double(const Distribution&)>;
  using DivergenceFn = std::function<double(const AbsolutelyContinuousPair&)>;

  static Measure entropy(std::string label, EntropyFn fn,
                         std::optional<double> q = std::nullopt);
  static Measure divergence(std::string label, DivergenceFn fn,
                            std::optional<double> q = std::nullopt);

  static Measure shannon();
  static Measure kl();
  static Measure q_entropy(double q);
  static Measure q_kl(double q);

  /// c * base, with a label recording the scale.
  static Measure scaled(double c, const Measure& base);

  MeasureKind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  /// The deformation parameter this measure carries, if any.  Audits use it
  /// as the default exponent for q-weighted identities.
  std::optional<double> q() const { return q_; }

  double operator()(const Distribution& p) const;
  double operator()(const AbsolutelyContinuousPair& pair) const;

private:
  Measure(MeasureKind kind, std::string label, std::optional<double> q)
      : kind_(kind), label_(std::move(label)), q_(q) {}

  MeasureKind kind_;
  std::string label_;
  std::optional<double> q_;
  EntropyFn entropy_fn_;
  DivergenceFn divergence_fn_;
};

const char* measure_kind_name(MeasureKind kind);

}  // namespace infomeasure
