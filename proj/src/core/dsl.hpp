#pragma once

#include <memory>
#include <optional>
#include <string>

#include "core/distribution.hpp"
#include "core/measure.hpp"
#include "core/measures.hpp"

namespace infomeasure {

namespace dsl {
struct Node;
}

/// A candidate measure given as a per-index summand over the variables
/// p, r and q, with an optional affine wrapper applied to the summed value:
/// the source "affine(a, b, f(p, r, q))" evaluates to
///
///     a * sum over the support of p of f(p_i, r_i, q)  +  b.
///
/// Syntax errors carry a SourceSpan and the expected-token set; evaluation
/// never observes indices outside the support of p.
class MeasureExpression {
public:
  /// Grammar:
  ///   source := 'affine' '(' const ',' const ',' expr ')' | expr
  ///   expr   := term (('+'|'-') term)*
  ///   term   := factor (('*'|'/') factor)*
  ///   factor := unary ('^' factor)?          -- '^' is right-associative
  ///   unary  := '-'? atom
  ///   atom   := number | 'p' | 'r' | 'q' | func '(' expr ')' | '(' expr ')'
  ///   func   := 'log' | 'exp' | 'lnq'
  static MeasureExpression parse(std::string source);

  double evaluate(const Distribution& p, const Distribution* r,
                  std::optional<QParameter> q) const;

  /// Wraps the expression into a measure handle of the requested kind.
  /// Entropy-type expressions must not reference r; expressions referencing
  /// q need a q parameter.
  Measure as_measure(MeasureKind kind, std::optional<double> q) const;

  bool references_r() const { return references_r_; }
  bool references_q() const { return references_q_; }
  const std::string& source() const { return source_; }

  /// Canonical fully parenthesized rendering of the parsed tree.
  std::string to_string() const;

private:
  MeasureExpression() = default;

  std::string source_;
  std::shared_ptr<const dsl::Node> root_;
  double affine_scale_ = 1.0;
  double affine_offset_ = 0.0;
  bool has_affine_ = false;
  bool references_r_ = false;
  bool references_q_ = false;
};

/// Renders a caret diagnostic for a spanned error:
///   p*(1+
///        ^
std::string format_span_diagnostic(const std::string& source, SourceSpan span);

}  // namespace infomeasure
