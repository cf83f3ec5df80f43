#pragma once

#include <stdexcept>
#include <string>

namespace rotkit {

enum class ErrorCode {
  parse,       // malformed input text; message carries the line number
  structure,   // rotation system / current graph violates its invariants
  domain,      // argument outside the operation's domain
  derivation,  // log bundle cannot be turned into a triangular embedding
  surgery,     // a surgery precondition failed
  not_found,   // bounded search exhausted without a result
  io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace rotkit
