#pragma once

#include "lams/syntax.hpp"

#include <string>
#include <vector>

namespace lams {

struct SourceSpan {
  size_t start = 0;  // byte offsets, start <= end
  size_t end = 0;
  int line = 1;  // 1-based, of start
  int col = 1;
};

struct ParseError : std::runtime_error {
  ParseError(std::string msg, SourceSpan where, std::vector<std::string> expect = {})
      : std::runtime_error(std::move(msg)), span(where), expected(std::move(expect)) {}
  SourceSpan span;
  std::vector<std::string> expected;
};

/// Parses a single term; the result is in canonical form (sums flattened and
/// sorted, products right-associated). Scalar literals are built in `ring`.
TermPtr parse_term(const std::string& src, RingId ring = RingId::QSqrt2I);

TypePtr parse_type(const std::string& src);

/// Reads a `.lams` file: one top-level term, `#` comments, UTF-8.
TermPtr parse_file(const std::string& path, RingId ring = RingId::QSqrt2I);

}  // namespace lams
