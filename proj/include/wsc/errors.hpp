#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsc {

// Input document failed to parse at the syntax level.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parsed input that violates a model constraint: duplicate ids, unknown
// references, cyclic parent chains, contradictory parameters.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Forward expansion stalled while wanted concepts were still uncovered.
class UnsatisfiableRequest : public std::runtime_error {
 public:
  UnsatisfiableRequest(const std::string& message, std::vector<std::string> uncovered)
      : std::runtime_error(message), uncovered_(std::move(uncovered)) {}

  const std::vector<std::string>& uncovered() const { return uncovered_; }

 private:
  std::vector<std::string> uncovered_;
};

// A knapsack step was asked to index more input concepts than the configured
// bit width allows.
class InputWidthExceeded : public std::runtime_error {
 public:
  InputWidthExceeded(const std::string& message, std::uint32_t width, std::uint32_t limit)
      : std::runtime_error(message), width_(width), limit_(limit) {}

  std::uint32_t width() const { return width_; }
  std::uint32_t limit() const { return limit_; }

 private:
  std::uint32_t width_;
  std::uint32_t limit_;
};

// Exhaustive enumeration refused because the instance is above its limit.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No service subset satisfies the request.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wsc
