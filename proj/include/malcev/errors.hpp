#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace malcev {

// Request outside an operation's domain: inverting zero, mixing coefficient
// fields, valuation of the empty series, bad preset data, and so on.
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A configured budget ran out: ball state budget, comparison degree cap,
// search height cap. Callers that hit this should raise the budget, not
// trust a partial answer.
class resource_cap_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A law the construction guarantees failed to hold on concrete data. This is
// the one error that means "the mathematics broke", and it maps to its own
// process exit code so harnesses can tell it apart from bad input.
class violation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Valuation of the exact zero series.
class zero_valuation_error : public domain_error {
public:
  zero_valuation_error() : domain_error("valuation of the zero series is undefined") {}
};

// Valuation of a series with no stored terms but a nonempty precision window:
// the true value may be nonzero with support hidden beyond the window.
class indeterminate_valuation_error : public domain_error {
public:
  indeterminate_valuation_error()
      : domain_error("valuation is indeterminate: no stored terms, support may hide beyond the precision window") {}
};

// Text that failed to parse. Carries the byte offset of the failure and the
// token classes that would have been accepted there.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& msg, std::size_t offset, std::vector<std::string> expected)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace malcev
