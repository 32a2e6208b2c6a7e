#include "core/measure.hpp"

#include <cstdio>

namespace infomeasure {

namespace {

std::string format_q(double q) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", q);
  return buf;
}

}  // namespace

Measure Measure::entropy(std::string label, EntropyFn fn,
                         std::optional<double> q) {
  Measure m(MeasureKind::entropy, std::move(label), q);
  m.entropy_fn_ = std::move(fn);
  return m;
}

Measure Measure::divergence(std::string label, DivergenceFn fn,
                            std::optional<double> q) {
  Measure m(MeasureKind::divergence, std::move(label), q);
  m.divergence_fn_ = std::move(fn);
  return m;
}

Measure Measure::shannon() {
  return entropy("shannon",
                 [](const Distribution& p) { return shannon_entropy(p); });
}

Measure Measure::kl() {
  return divergence("kl", [](const AbsolutelyContinuousPair& pair) {
    return relative_entropy(pair);
  });
}

Measure Measure::q_entropy(double q) {
  QParameter qp(q);
  return entropy("q-entropy(q=" + format_q(q) + ")",
                 [qp](const Distribution& p) {
                   return infomeasure::q_entropy(p, qp);
                 },
                 q);
}

Measure Measure::q_kl(double q) {
  QParameter qp(q);
  return divergence("q-kl(q=" + format_q(q) + ")",
                    [qp](const AbsolutelyContinuousPair& pair) {
                      return q_relative_entropy(pair, qp);
                    },
                    q);
}

Measure Measure::scaled(double c, const Measure& base) {
  const std::string label = format_q(c) + "*" + base.label();
  if (base.kind() == MeasureKind::entropy) {
    return entropy(label,
                   [c, base](const Distribution& p) { return c * base(p); },
                   base.q());
  }
  return divergence(label,
                    [c, base](const AbsolutelyContinuousPair& pair) {
                      return c * base(pair);
                    },
                    base.q());
}

double Measure::operator()(const Distribution& p) const {
  if (kind_ != MeasureKind::entropy) {
    throw Error(ErrorCode::kind_mismatch,
                "measure '" + label_ +
                    "' is divergence-type and needs a pair, not a "
                    "distribution");
  }
  return entropy_fn_(p);
}

double Measure::operator()(const AbsolutelyContinuousPair& pair) const {
  if (kind_ != MeasureKind::divergence) {
    throw Error(ErrorCode::kind_mismatch,
                "measure '" + label_ +
                    "' is entropy-type and needs a distribution, not a pair");
  }
  return divergence_fn_(pair);
}

const char* measure_kind_name(MeasureKind kind) {
  return kind == MeasureKind::entropy ? "entropy" : "divergence";
}

}  // namespace infomeasure
