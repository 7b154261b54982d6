#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paramodal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownName : Error {
  using Error::Error;
};

// Connective used outside the signature of the logic it is evaluated in.
struct SignatureError : Error {
  using Error::Error;
};

// Two specs disagree on a coordinate they are supposed to share.
struct CoherenceError : Error {
  using Error::Error;
};

// A generated multioperator produced an empty output set, or a Range spec
// had its lower bound above its upper bound.
struct ConsistencyError : Error {
  using Error::Error;
};

struct RowCapExceeded : Error {
  RowCapExceeded(std::size_t estimate, std::size_t cap)
      : Error("truth table would have up to " + std::to_string(estimate) +
              " rows, cap is " + std::to_string(cap)),
        estimate(estimate),
        cap(cap) {}
  std::size_t estimate;
  std::size_t cap;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& found)
      : Error(describe(offset, expected, found)),
        offset_(offset),
        expected_(std::move(expected)) {}

  // Byte offset into the input where parsing failed.
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string describe(std::size_t offset,
                              const std::vector<std::string>& expected,
                              const std::string& found) {
    std::string msg = "syntax error at offset " + std::to_string(offset) +
                      ": found " + found + ", expected one of";
    for (const auto& e : expected) msg += " " + e;
    return msg;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace paramodal
