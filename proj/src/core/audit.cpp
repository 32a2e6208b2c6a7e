#include "core/audit.hpp"

#include <cmath>
#include <utility>

#include "core/numeric.hpp"

namespace infomeasure {

namespace {

using nlohmann::ordered_json;

bool unit_exponent(double q) { return std::fabs(q - 1.0) <= 1e-12; }

// w^q * w~^(1-q) over the support of w; the plain chain weight at q = 1.
double chain_weight(double w, double w_tilde, double q) {
  if (!(w > 0.0)) return 0.0;
  if (unit_exponent(q)) return w;
  return std::pow(w, q) * std::pow(w_tilde, 1.0 - q);
}

ordered_json to_json_array(const std::vector<double>& xs) {
  return ordered_json(xs);
}

ordered_json permutation_json(const Permutation& sigma) {
  return ordered_json(sigma.mapping());
}

}  // namespace

double check_symmetry(const Measure& m, const Distribution& p,
                      const Permutation& sigma) {
  return std::fabs(m(p) - m(permute(p, sigma)));
}

double check_symmetry(const Measure& m, const AbsolutelyContinuousPair& pair,
                      const Permutation& sigma) {
  return std::fabs(m(pair) - m(permute(pair, sigma)));
}

double check_vanishing(const Measure& m, const Distribution& p) {
  if (m.kind() != MeasureKind::divergence) {
    throw Error(ErrorCode::kind_mismatch,
                "vanishing applies to divergence-type measures only");
  }
  return std::fabs(m(AbsolutelyContinuousPair(p, p)));
}

namespace detail {

double signed_chain(const Measure& m, const AbsolutelyContinuousPair& w,
                    const std::vector<AbsolutelyContinuousPair>& parts,
                    double weight_q) {
  const AbsolutelyContinuousPair composed = pair_compose(w, parts);
  CompensatedSum weighted;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double c = chain_weight(w.p()[i], w.r()[i], weight_q);
    if (c != 0.0) weighted.add(c * m(parts[i]));
  }
  return m(composed) - m(w) - weighted.value();
}

double signed_recursivity(const Measure& m, const AbsolutelyContinuousPair& w,
                          const AbsolutelyContinuousPair& split,
                          double weight_q) {
  if (split.size() != 2) {
    throw Error(ErrorCode::invalid_argument,
                "recursivity splits the first entry by a pair over 2 "
                "elements");
  }
  const std::size_t n = w.size();
  std::vector<double> cp;
  std::vector<double> cr;
  cp.reserve(n + 1);
  cr.reserve(n + 1);
  cp.push_back(w.p()[0] * split.p()[0]);
  cp.push_back(w.p()[0] * split.p()[1]);
  cr.push_back(w.r()[0] * split.r()[0]);
  cr.push_back(w.r()[0] * split.r()[1]);
  for (std::size_t i = 1; i < n; ++i) {
    cp.push_back(w.p()[i]);
    cr.push_back(w.r()[i]);
  }
  const AbsolutelyContinuousPair composed(Distribution(std::move(cp)),
                                          Distribution(std::move(cr)));
  const double weight = chain_weight(w.p()[0], w.r()[0], weight_q);
  return m(composed) - m(w) - weight * m(split);
}

double signed_two_block(const Measure& m, const AbsolutelyContinuousPair& w2,
                        const AbsolutelyContinuousPair& left,
                        const AbsolutelyContinuousPair& right,
                        double weight_q) {
  if (w2.size() != 2) {
    throw Error(ErrorCode::invalid_argument,
                "two-block check needs a weight pair over 2 elements");
  }
  const AbsolutelyContinuousPair composed = pair_compose(w2, {left, right});
  const double c_left = chain_weight(w2.p()[0], w2.r()[0], weight_q);
  const double c_right = chain_weight(w2.p()[1], w2.r()[1], weight_q);
  return m(composed) - m(w2) - c_left * m(left) - c_right * m(right);
}

double signed_q_chain(const Measure& m, double q, const Distribution& w,
                      const std::vector<Distribution>& parts) {
  const Distribution composed = compose(w, parts);
  CompensatedSum weighted;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) {
      const double c = unit_exponent(q) ? w[i] : std::pow(w[i], q);
      weighted.add(c * m(parts[i]));
    }
  }
  return m(composed) - m(w) - weighted.value();
}

double signed_q_mult(const Measure& m, double q, const Distribution& w,
                     const Distribution& p) {
  CompensatedSum power_sum;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) {
      power_sum.add(unit_exponent(q) ? w[i] : std::pow(w[i], q));
    }
  }
  return m(tensor(w, p)) - m(w) - power_sum.value() * m(p);
}

double signed_q_rel_mult(const Measure& m, double q,
                         const AbsolutelyContinuousPair& w,
                         const AbsolutelyContinuousPair& p) {
  const AbsolutelyContinuousPair composed(tensor(w.p(), p.p()),
                                          tensor(w.r(), p.r()));
  CompensatedSum power_sum;
  for (std::size_t i = 0; i < w.size(); ++i) {
    power_sum.add(chain_weight(w.p()[i], w.r()[i], q));
  }
  return m(composed) - m(w) - power_sum.value() * m(p);
}

}  // namespace detail

double check_chain_rule(const Measure& m, const AbsolutelyContinuousPair& w,
                        const std::vector<AbsolutelyContinuousPair>& parts,
                        double weight_q) {
  return std::fabs(detail::signed_chain(m, w, parts, weight_q));
}

double check_recursivity(const Measure& m, const AbsolutelyContinuousPair& w,
                         const AbsolutelyContinuousPair& split,
                         double weight_q) {
  return std::fabs(detail::signed_recursivity(m, w, split, weight_q));
}

double check_two_block(const Measure& m, const AbsolutelyContinuousPair& w2,
                       const AbsolutelyContinuousPair& left,
                       const AbsolutelyContinuousPair& right,
                       double weight_q) {
  return std::fabs(detail::signed_two_block(m, w2, left, right, weight_q));
}

double check_q_chain(const Measure& m, double q, const Distribution& w,
                     const std::vector<Distribution>& parts) {
  return std::fabs(detail::signed_q_chain(m, q, w, parts));
}

double check_q_mult(const Measure& m, double q, const Distribution& w,
                    const Distribution& p) {
  return std::fabs(detail::signed_q_mult(m, q, w, p));
}

double check_q_rel_mult(const Measure& m, double q,
                        const AbsolutelyContinuousPair& w,
                        const AbsolutelyContinuousPair& p) {
  return std::fabs(detail::signed_q_rel_mult(m, q, w, p));
}

namespace {

// Suffix masses rho_j = x_j + x_{j+1} + ... computed backwards, so the last
// remainder equals the last entry bit-exactly and the telescoped states end
// at the composed distribution itself.
std::vector<double> suffix_masses(const std::vector<double>& x) {
  std::vector<double> rho(x.size());
  rho.back() = x.back();
  for (std::size_t j = x.size() - 1; j-- > 0;) rho[j] = x[j] + rho[j + 1];
  return rho;
}

// The 2-distribution pair that splits remainder j-1 into entry j-1 and
// remainder j.  Cells with zero p-mass may be split by any valid pair.
AbsolutelyContinuousPair split_pair(const std::vector<double>& x,
                                    const std::vector<double>& rho,
                                    const std::vector<double>& xt,
                                    const std::vector<double>& rhot,
                                    std::size_t j) {
  std::vector<double> sr;
  if (rhot[j - 1] > 0.0) {
    sr = {xt[j - 1] / rhot[j - 1], rhot[j] / rhot[j - 1]};
  } else {
    sr = {1.0, 0.0};
  }
  std::vector<double> sp;
  if (rho[j - 1] > 0.0) {
    sp = {x[j - 1] / rho[j - 1], rho[j] / rho[j - 1]};
  } else {
    sp = sr;  // zero mass: any split absolutely continuous w.r.t. sr works
  }
  return {Distribution(std::move(sp)), Distribution(std::move(sr))};
}

}  // namespace

double telescoped_chain_residual(
    const Measure& m, const AbsolutelyContinuousPair& w,
    const std::vector<AbsolutelyContinuousPair>& parts, double weight_q) {
  if (parts.size() != w.size()) {
    throw Error(ErrorCode::invalid_argument,
                "telescoped chain needs one part pair per weight");
  }
  const std::size_t n = w.size();

  // The length-1 recursivity instance pins m((1)||(1)); its residual enters
  // the telescoped sum once per unit of total chain weight.
  const AbsolutelyContinuousPair one(Distribution({1.0}),
                                     Distribution({1.0}));
  const AbsolutelyContinuousPair half(Distribution({0.5, 0.5}),
                                      Distribution({0.5, 0.5}));
  const double r0 = detail::signed_recursivity(m, one, half, weight_q);

  CompensatedSum total_weight;
  for (std::size_t i = 0; i < n; ++i) {
    total_weight.add(chain_weight(w.p()[i], w.r()[i], weight_q));
  }

  CompensatedSum total;
  total.add(total_weight.value() * r0);

  // Big state: blocks 0..i-1 fully expanded, block i partially expanded,
  // blocks i+1.. still single cells.  Rebuilt per step from exact products,
  // so consecutive states share bits and the telescope cancels cleanly.
  std::vector<double> done_p;
  std::vector<double> done_r;

  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double>& x = parts[i].p().weights();
    const std::vector<double>& xt = parts[i].r().weights();
    const std::size_t k = x.size();
    const double wi = w.p()[i];
    const double wti = w.r()[i];
    const double block_weight = chain_weight(wi, wti, weight_q);

    if (k > 1) {
      const std::vector<double> rho = suffix_masses(x);
      const std::vector<double> rhot = suffix_masses(xt);

      auto big_state = [&](std::size_t cells) {
        // `cells` completed entries of block i plus its remainder.
        std::vector<double> bp = done_p;
        std::vector<double> br = done_r;
        for (std::size_t s = 0; s < cells; ++s) {
          bp.push_back(wi * x[s]);
          br.push_back(wti * xt[s]);
        }
        if (cells == 0) {
          bp.push_back(wi);  // unsplit cell, exactly the original weight
          br.push_back(wti);
        } else {
          bp.push_back(wi * rho[cells]);
          br.push_back(wti * rhot[cells]);
        }
        for (std::size_t t = i + 1; t < n; ++t) {
          bp.push_back(w.p()[t]);
          br.push_back(w.r()[t]);
        }
        return AbsolutelyContinuousPair(Distribution(std::move(bp)),
                                        Distribution(std::move(br)));
      };

      auto part_state = [&](std::size_t cells) {
        if (cells == 0) return one;
        std::vector<double> sp(x.begin(), x.begin() + cells);
        std::vector<double> sr(xt.begin(), xt.begin() + cells);
        sp.push_back(rho[cells]);
        sr.push_back(rhot[cells]);
        return AbsolutelyContinuousPair(Distribution(std::move(sp)),
                                        Distribution(std::move(sr)));
      };

      AbsolutelyContinuousPair big_prev = big_state(0);
      AbsolutelyContinuousPair part_prev = part_state(0);
      for (std::size_t j = 1; j < k; ++j) {
        const AbsolutelyContinuousPair sigma =
            split_pair(x, rho, xt, rhot, j);
        const double sigma_value = m(sigma);

        // Cell masses being split, as stored in the respective states.
        const double big_cell_p = j == 1 ? wi : wi * rho[j - 1];
        const double big_cell_r = j == 1 ? wti : wti * rhot[j - 1];
        const double part_weight =
            j == 1 ? 1.0 : chain_weight(rho[j - 1], rhot[j - 1], weight_q);

        AbsolutelyContinuousPair big_next = big_state(j);
        AbsolutelyContinuousPair part_next = part_state(j);

        const double big_step =
            m(big_next) - m(big_prev) -
            chain_weight(big_cell_p, big_cell_r, weight_q) * sigma_value;
        const double part_step =
            m(part_next) - m(part_prev) - part_weight * sigma_value;

        total.add(big_step);
        total.add(-block_weight * part_step);

        big_prev = std::move(big_next);
        part_prev = std::move(part_next);
      }
    }

    for (std::size_t j = 0; j < k; ++j) {
      done_p.push_back(wi * x[j]);
      done_r.push_back(wti * xt[j]);
    }
  }

  return total.value();
}

const char* axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::symmetry: return "symmetry";
    case Axiom::vanishing: return "vanishing";
    case Axiom::chain: return "chain";
    case Axiom::recursivity: return "recursivity";
    case Axiom::two_block: return "two-block";
    case Axiom::q_chain: return "q-chain";
    case Axiom::q_mult: return "q-mult";
    case Axiom::q_rel_mult: return "q-rel-mult";
  }
  return "?";
}

std::optional<Axiom> axiom_from_name(const std::string& name) {
  for (Axiom a : {Axiom::symmetry, Axiom::vanishing, Axiom::chain,
                  Axiom::recursivity, Axiom::two_block, Axiom::q_chain,
                  Axiom::q_mult, Axiom::q_rel_mult}) {
    if (name == axiom_name(a)) return a;
  }
  return std::nullopt;
}

bool axiom_applies(Axiom axiom, MeasureKind kind) {
  switch (axiom) {
    case Axiom::symmetry: return true;
    case Axiom::vanishing:
    case Axiom::chain:
    case Axiom::recursivity:
    case Axiom::two_block:
    case Axiom::q_rel_mult: return kind == MeasureKind::divergence;
    case Axiom::q_chain:
    case Axiom::q_mult: return kind == MeasureKind::entropy;
  }
  return false;
}

std::vector<Axiom> axioms_for_kind(MeasureKind kind) {
  if (kind == MeasureKind::entropy) {
    return {Axiom::symmetry, Axiom::q_chain, Axiom::q_mult};
  }
  return {Axiom::symmetry, Axiom::vanishing, Axiom::chain, Axiom::recursivity,
          Axiom::two_block, Axiom::q_rel_mult};
}

namespace {

// Stable per-axiom stream ids; part of the report determinism contract.
std::uint64_t axiom_stream(Axiom axiom) {
  switch (axiom) {
    case Axiom::symmetry: return 1;
    case Axiom::vanishing: return 2;
    case Axiom::chain: return 3;
    case Axiom::recursivity: return 4;
    case Axiom::two_block: return 5;
    case Axiom::q_chain: return 6;
    case Axiom::q_mult: return 7;
    case Axiom::q_rel_mult: return 8;
  }
  return 0;
}

struct TrialOutcome {
  double residual;
  ordered_json instance;
};

std::size_t size_in(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + rng.index(hi - lo + 1);
}

ordered_json pair_json(const AbsolutelyContinuousPair& pair, const char* pk,
                       const char* rk) {
  ordered_json j;
  j[pk] = to_json_array(pair.p().weights());
  j[rk] = to_json_array(pair.r().weights());
  return j;
}

TrialOutcome run_trial(const Measure& m, Axiom axiom,
                       const AuditOptions& opts, double weight_q, Rng& rng) {
  const double zp = opts.zero_pattern_prob;
  switch (axiom) {
    case Axiom::symmetry: {
      const std::size_t n = size_in(rng, 1, opts.max_n);
      if (m.kind() == MeasureKind::entropy) {
        Distribution p = sample_distribution(n, zp, rng);
        Permutation sigma = sample_permutation(n, rng);
        ordered_json inst;
        inst["p"] = to_json_array(p.weights());
        inst["sigma"] = permutation_json(sigma);
        return {check_symmetry(m, p, sigma), std::move(inst)};
      }
      AbsolutelyContinuousPair pair = sample_pair(n, zp, rng);
      Permutation sigma = sample_permutation(n, rng);
      ordered_json inst = pair_json(pair, "p", "r");
      inst["sigma"] = permutation_json(sigma);
      return {check_symmetry(m, pair, sigma), std::move(inst)};
    }
    case Axiom::vanishing: {
      const std::size_t n = size_in(rng, 1, opts.max_n);
      Distribution p = sample_distribution(n, zp, rng);
      ordered_json inst;
      inst["p"] = to_json_array(p.weights());
      return {check_vanishing(m, p), std::move(inst)};
    }
    case Axiom::chain: {
      const std::size_t blocks = size_in(rng, 1, opts.max_blocks);
      const std::size_t cap = std::max<std::size_t>(1, opts.max_n / blocks);
      AbsolutelyContinuousPair w = sample_pair(blocks, zp, rng);
      std::vector<AbsolutelyContinuousPair> parts;
      parts.reserve(blocks);
      for (std::size_t i = 0; i < blocks; ++i) {
        parts.push_back(sample_pair(size_in(rng, 1, cap), zp, rng));
      }
      ordered_json inst = pair_json(w, "w", "w_tilde");
      ordered_json jp = ordered_json::array();
      ordered_json jr = ordered_json::array();
      for (const auto& part : parts) {
        jp.push_back(to_json_array(part.p().weights()));
        jr.push_back(to_json_array(part.r().weights()));
      }
      inst["parts"] = std::move(jp);
      inst["parts_tilde"] = std::move(jr);
      return {check_chain_rule(m, w, parts, weight_q), std::move(inst)};
    }
    case Axiom::recursivity: {
      const std::size_t n = size_in(rng, 1, opts.max_n);
      AbsolutelyContinuousPair w = sample_pair(n, zp, rng);
      AbsolutelyContinuousPair split = sample_pair(2, zp, rng);
      ordered_json inst = pair_json(w, "w", "w_tilde");
      inst["split"] = to_json_array(split.p().weights());
      inst["split_tilde"] = to_json_array(split.r().weights());
      return {check_recursivity(m, w, split, weight_q), std::move(inst)};
    }
    case Axiom::two_block: {
      double wv;
      double wt;
      if (rng.uniform01() < zp) {
        wv = wt = rng.uniform01() < 0.5 ? 1.0 : 0.0;
      } else {
        wv = rng.uniform01();
        wt = rng.uniform_open();
      }
      AbsolutelyContinuousPair w2(Distribution({wv, 1.0 - wv}),
                                  Distribution({wt, 1.0 - wt}));
      const std::size_t cap = std::max<std::size_t>(1, opts.max_n / 2);
      AbsolutelyContinuousPair left = sample_pair(size_in(rng, 1, cap), zp, rng);
      AbsolutelyContinuousPair right =
          sample_pair(size_in(rng, 1, cap), zp, rng);
      ordered_json inst = pair_json(w2, "w", "w_tilde");
      ordered_json sub = pair_json(left, "p", "p_tilde");
      inst["left"] = std::move(sub);
      inst["right"] = pair_json(right, "p", "p_tilde");
      return {check_two_block(m, w2, left, right, weight_q), std::move(inst)};
    }
    case Axiom::q_chain: {
      const std::size_t blocks = size_in(rng, 1, opts.max_blocks);
      const std::size_t cap = std::max<std::size_t>(1, opts.max_n / blocks);
      Distribution w = sample_distribution(blocks, zp, rng);
      std::vector<Distribution> parts;
      parts.reserve(blocks);
      for (std::size_t i = 0; i < blocks; ++i) {
        parts.push_back(sample_distribution(size_in(rng, 1, cap), zp, rng));
      }
      ordered_json inst;
      inst["w"] = to_json_array(w.weights());
      ordered_json jp = ordered_json::array();
      for (const auto& part : parts) jp.push_back(to_json_array(part.weights()));
      inst["parts"] = std::move(jp);
      return {check_q_chain(m, weight_q, w, parts), std::move(inst)};
    }
    case Axiom::q_mult: {
      const std::size_t blocks = size_in(rng, 1, opts.max_blocks);
      const std::size_t cap = std::max<std::size_t>(1, opts.max_n / blocks);
      Distribution w = sample_distribution(blocks, zp, rng);
      Distribution p = sample_distribution(size_in(rng, 1, cap), zp, rng);
      ordered_json inst;
      inst["w"] = to_json_array(w.weights());
      inst["p"] = to_json_array(p.weights());
      return {check_q_mult(m, weight_q, w, p), std::move(inst)};
    }
    case Axiom::q_rel_mult: {
      const std::size_t blocks = size_in(rng, 1, opts.max_blocks);
      const std::size_t cap = std::max<std::size_t>(1, opts.max_n / blocks);
      AbsolutelyContinuousPair w = sample_pair(blocks, zp, rng);
      AbsolutelyContinuousPair p = sample_pair(size_in(rng, 1, cap), zp, rng);
      ordered_json inst = pair_json(w, "w", "w_tilde");
      ordered_json sub = pair_json(p, "p", "p_tilde");
      inst["pair"] = std::move(sub);
      return {check_q_rel_mult(m, weight_q, w, p), std::move(inst)};
    }
  }
  throw Error(ErrorCode::internal, "unknown axiom");
}

}  // namespace

bool AuditReport::all_pass() const {
  for (const AxiomResult& r : axioms) {
    if (!r.pass) return false;
  }
  return true;
}

nlohmann::ordered_json AuditReport::to_json() const {
  ordered_json j;
  j["measure"] = measure;
  j["seed"] = seed;
  j["tol"] = tol;
  ordered_json records = ordered_json::array();
  for (const AxiomResult& r : axioms) {
    ordered_json rec;
    rec["name"] = axiom_name(r.axiom);
    rec["trials"] = r.trials;
    rec["max_residual"] = r.max_residual;
    rec["mean_residual"] = r.mean_residual;
    rec["worst_instance"] = r.worst_instance;
    rec["pass"] = r.pass;
    records.push_back(std::move(rec));
  }
  j["axioms"] = std::move(records);
  j["not_checked"] = ordered_json::array({"measurability"});
  return j;
}

AuditReport run_audit(const Measure& m, const std::vector<Axiom>& axioms,
                      const AuditOptions& options) {
  if (options.trials < 1) {
    throw Error(ErrorCode::invalid_argument, "trials must be >= 1");
  }
  if (options.max_n < 2) {
    throw Error(ErrorCode::invalid_argument, "max-n must be >= 2");
  }
  if (options.max_blocks < 1) {
    throw Error(ErrorCode::invalid_argument, "max-blocks must be >= 1");
  }
  for (Axiom axiom : axioms) {
    if (!axiom_applies(axiom, m.kind())) {
      throw Error(ErrorCode::kind_mismatch,
                  std::string("axiom '") + axiom_name(axiom) +
                      "' does not apply to " + measure_kind_name(m.kind()) +
                      "-type measure '" + m.label() + "'");
    }
  }
  const double weight_q = options.weight_q.value_or(m.q().value_or(1.0));

  AuditReport report;
  report.measure = m.label();
  report.seed = options.seed;
  report.tol = options.tol;

  for (Axiom axiom : axioms) {
    AxiomResult result;
    result.axiom = axiom;
    result.trials = options.trials;
    result.max_residual = 0.0;
    result.worst_instance = ordered_json(nullptr);
    CompensatedSum mean;
    bool have_worst = false;
    for (int i = 0; i < options.trials; ++i) {
      Rng rng(derive_seed(options.seed, axiom_stream(axiom),
                          static_cast<std::uint64_t>(i)));
      TrialOutcome outcome = run_trial(m, axiom, options, weight_q, rng);
      mean.add(outcome.residual);
      if (!have_worst || outcome.residual > result.max_residual) {
        result.max_residual = outcome.residual;
        result.worst_instance = std::move(outcome.instance);
        have_worst = true;
      }
    }
    result.mean_residual = mean.value() / options.trials;
    result.pass = result.max_residual <= options.tol;
    report.axioms.push_back(std::move(result));
  }
  return report;
}

}  // namespace infomeasure
