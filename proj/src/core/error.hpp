#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace infomeasure {

enum class ErrorCode {
  invalid_argument,
  domain_error,
  parse_error,
  kind_mismatch,
  internal,
};

/// Byte range [begin, end) into a DSL source string, for caret diagnostics.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Error(ErrorCode code, std::string message, SourceSpan span,
        std::vector<std::string> expected = {})
      : std::runtime_error(std::move(message)),
        code_(code),
        span_(span),
        expected_(std::move(expected)) {}

  ErrorCode code() const { return code_; }
  const std::optional<SourceSpan>& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  ErrorCode code_;
  std::optional<SourceSpan> span_;
  std::vector<std::string> expected_;
};

}  // namespace infomeasure
