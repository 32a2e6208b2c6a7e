// extern-C surface of the infomeasure library.  Opaque handles wrap the
// C++ core types; exceptions are translated into status codes plus a
// thread-local error message (and source span, for DSL parse errors).

#include "infomeasure.h"

#include <cstring>
#include <new>
#include <string>

#include "core/audit.hpp"
#include "core/characterize.hpp"
#include "core/compose.hpp"
#include "core/distribution.hpp"
#include "core/dsl.hpp"
#include "core/measure.hpp"
#include "core/measures.hpp"

using infomeasure::AbsolutelyContinuousPair;
using infomeasure::Distribution;
using infomeasure::Error;
using infomeasure::ErrorCode;
using infomeasure::Measure;
using infomeasure::MeasureKind;

struct im_distribution {
  Distribution value;
};

struct im_pair {
  AbsolutelyContinuousPair value;
};

struct im_measure {
  Measure value;
};

namespace {

thread_local std::string g_last_error;
thread_local bool g_has_span = false;
thread_local size_t g_span_begin = 0;
thread_local size_t g_span_end = 0;

void clear_error() {
  g_last_error.clear();
  g_has_span = false;
}

im_status set_error(im_status status, const std::string& message) {
  g_last_error = message;
  g_has_span = false;
  return status;
}

im_status translate(const Error& e) {
  g_last_error = e.what();
  if (e.span().has_value()) {
    g_has_span = true;
    g_span_begin = e.span()->begin;
    g_span_end = e.span()->end;
  } else {
    g_has_span = false;
  }
  switch (e.code()) {
    case ErrorCode::invalid_argument: return IM_ERR_INVALID_ARGUMENT;
    case ErrorCode::domain_error: return IM_ERR_DOMAIN;
    case ErrorCode::parse_error: return IM_ERR_PARSE;
    case ErrorCode::kind_mismatch: return IM_ERR_KIND_MISMATCH;
    case ErrorCode::internal: return IM_ERR_INTERNAL;
  }
  return IM_ERR_INTERNAL;
}

template <typename Fn>
im_status guarded(Fn&& fn) {
  try {
    clear_error();
    fn();
    return IM_OK;
  } catch (const Error& e) {
    return translate(e);
  } catch (const std::bad_alloc&) {
    return set_error(IM_ERR_NOMEM, "out of memory");
  } catch (const std::exception& e) {
    return set_error(IM_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(IM_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

im_status require(bool condition, const char* message) {
  if (condition) return IM_OK;
  return set_error(IM_ERR_INVALID_ARGUMENT, message);
}

}  // namespace

extern "C" {

const char* im_version(void) { return "0.1.0"; }

const char* im_last_error_message(void) { return g_last_error.c_str(); }

int im_last_error_span(size_t* begin, size_t* end) {
  if (!g_has_span) return 0;
  if (begin != nullptr) *begin = g_span_begin;
  if (end != nullptr) *end = g_span_end;
  return 1;
}

void im_string_free(char* s) { delete[] s; }

im_status im_distribution_create(const double* weights, size_t n,
                                 im_distribution** out) {
  if (require(weights != nullptr && out != nullptr,
              "weights and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = new im_distribution{
        Distribution(std::vector<double>(weights, weights + n))};
  });
}

im_status im_distribution_create_normalized(const double* weights, size_t n,
                                            im_distribution** out) {
  if (require(weights != nullptr && out != nullptr,
              "weights and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = new im_distribution{Distribution::normalized(
        std::vector<double>(weights, weights + n))};
  });
}

void im_distribution_free(im_distribution* d) { delete d; }

size_t im_distribution_size(const im_distribution* d) {
  return d == nullptr ? 0 : d->value.size();
}

im_status im_pair_create(const double* p, const double* r, size_t n,
                         im_pair** out) {
  if (require(p != nullptr && r != nullptr && out != nullptr,
              "p, r and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = new im_pair{AbsolutelyContinuousPair(
        Distribution(std::vector<double>(p, p + n)),
        Distribution(std::vector<double>(r, r + n)))};
  });
}

void im_pair_free(im_pair* pair) { delete pair; }

im_status im_q_logarithm(double x, double q, double* out) {
  if (require(out != nullptr, "out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = infomeasure::q_logarithm(x, q); });
}

im_status im_shannon_entropy(const im_distribution* p, double* out) {
  if (require(p != nullptr && out != nullptr,
              "p and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = infomeasure::shannon_entropy(p->value); });
}

im_status im_relative_entropy(const im_pair* pair, double* out) {
  if (require(pair != nullptr && out != nullptr,
              "pair and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = infomeasure::relative_entropy(pair->value); });
}

im_status im_relative_entropy_extended(const double* p, const double* r,
                                       size_t n, double* out) {
  if (require(p != nullptr && r != nullptr && out != nullptr,
              "p, r and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = infomeasure::relative_entropy_extended(
        Distribution(std::vector<double>(p, p + n)),
        Distribution(std::vector<double>(r, r + n)));
  });
}

im_status im_q_entropy(const im_distribution* p, double q, double* out) {
  if (require(p != nullptr && out != nullptr,
              "p and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = infomeasure::q_entropy(p->value, q); });
}

im_status im_q_relative_entropy(const im_pair* pair, double q, double* out) {
  if (require(pair != nullptr && out != nullptr,
              "pair and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded(
      [&] { *out = infomeasure::q_relative_entropy(pair->value, q); });
}

im_status im_measure_builtin(const char* name, double q, im_measure** out) {
  if (require(name != nullptr && out != nullptr,
              "name and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const std::string id(name);
    if (id == "shannon") {
      *out = new im_measure{Measure::shannon()};
    } else if (id == "kl") {
      *out = new im_measure{Measure::kl()};
    } else if (id == "q-entropy") {
      *out = new im_measure{Measure::q_entropy(q)};
    } else if (id == "q-kl") {
      *out = new im_measure{Measure::q_kl(q)};
    } else {
      throw Error(ErrorCode::invalid_argument,
                  "unknown measure '" + id +
                      "' (expected shannon, kl, q-entropy or q-kl)");
    }
  });
}

im_status im_measure_dsl(const char* source, im_measure_kind kind, int has_q,
                         double q, im_measure** out) {
  if (require(source != nullptr && out != nullptr,
              "source and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto expr = infomeasure::MeasureExpression::parse(source);
    const MeasureKind k = kind == IM_KIND_ENTROPY ? MeasureKind::entropy
                                                  : MeasureKind::divergence;
    std::optional<double> qopt;
    if (has_q != 0) qopt = q;
    *out = new im_measure{expr.as_measure(k, qopt)};
  });
}

void im_measure_free(im_measure* m) { delete m; }

im_measure_kind im_measure_kind_of(const im_measure* m) {
  return m != nullptr && m->value.kind() == MeasureKind::divergence
             ? IM_KIND_DIVERGENCE
             : IM_KIND_ENTROPY;
}

const char* im_measure_label(const im_measure* m) {
  return m == nullptr ? "" : m->value.label().c_str();
}

im_status im_measure_eval_distribution(const im_measure* m,
                                       const im_distribution* p, double* out) {
  if (require(m != nullptr && p != nullptr && out != nullptr,
              "m, p and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = m->value(p->value); });
}

im_status im_measure_eval_pair(const im_measure* m, const im_pair* pair,
                               double* out) {
  if (require(m != nullptr && pair != nullptr && out != nullptr,
              "m, pair and out must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = m->value(pair->value); });
}

void im_audit_options_init(im_audit_options* options) {
  if (options == nullptr) return;
  options->seed = 0;
  options->trials = 1000;
  options->max_n = 8;
  options->max_blocks = 4;
  options->tol = 1e-9;
  options->zero_pattern_prob = 0.25;
  options->has_weight_q = 0;
  options->weight_q = 1.0;
}

im_status im_audit_run(const im_measure* m, const char* const* axiom_names,
                       size_t n_axioms, const im_audit_options* options,
                       char** report_json, int* all_pass) {
  if (require(m != nullptr && options != nullptr && report_json != nullptr,
              "m, options and report_json must be non-null") != IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::vector<infomeasure::Axiom> axioms;
    if (n_axioms == 0) {
      axioms = infomeasure::axioms_for_kind(m->value.kind());
    } else {
      if (axiom_names == nullptr) {
        throw Error(ErrorCode::invalid_argument,
                    "axiom_names must be non-null when n_axioms > 0");
      }
      for (size_t i = 0; i < n_axioms; ++i) {
        auto axiom = infomeasure::axiom_from_name(axiom_names[i]);
        if (!axiom.has_value()) {
          throw Error(ErrorCode::invalid_argument,
                      std::string("unknown axiom '") + axiom_names[i] + "'");
        }
        axioms.push_back(*axiom);
      }
    }
    infomeasure::AuditOptions opts;
    opts.trials = options->trials;
    opts.max_n = options->max_n;
    opts.max_blocks = options->max_blocks;
    opts.tol = options->tol;
    opts.seed = options->seed;
    opts.zero_pattern_prob = options->zero_pattern_prob;
    if (options->has_weight_q != 0) opts.weight_q = options->weight_q;

    const infomeasure::AuditReport report =
        infomeasure::run_audit(m->value, axioms, opts);
    *report_json = copy_string(report.to_json().dump(2) + "\n");
    if (all_pass != nullptr) *all_pass = report.all_pass() ? 1 : 0;
  });
}

void im_characterize_options_init(im_characterize_options* options) {
  if (options == nullptr) return;
  options->has_q = 0;
  options->q = 0.0;
  options->tol = 1e-9;
  options->trials = 500;
  options->seed = 0;
}

im_status im_characterize_run(const im_measure* m, const char* method,
                              const im_characterize_options* options,
                              char** result_json, int* within_tol) {
  if (require(m != nullptr && method != nullptr && options != nullptr &&
                  result_json != nullptr,
              "m, method, options and result_json must be non-null") !=
      IM_OK) {
    return IM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto parsed = infomeasure::characterization_method_from_name(method);
    if (!parsed.has_value()) {
      throw Error(ErrorCode::invalid_argument,
                  std::string("unknown method '") + method +
                      "' (expected fit, thm2 or thm3)");
    }
    infomeasure::CharacterizationOptions opts;
    if (options->has_q != 0) opts.q = options->q;
    opts.tol = options->tol;
    opts.trials = options->trials;
    opts.seed = options->seed;
    const infomeasure::CharacterizationResult result =
        infomeasure::characterize(m->value, *parsed, opts);
    *result_json = copy_string(result.to_json().dump() + "\n");
    if (within_tol != nullptr) {
      *within_tol = result.within(options->tol) ? 1 : 0;
    }
  });
}

}  // extern "C"
