#ifndef ROCFLOW_ERRORS_HPP
#define ROCFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rocflow {

// Base class for all rocflow errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct BadParams : Error {
  explicit BadParams(const std::string& msg) : Error("BadParams: " + msg) {}
};

struct OutOfDomain : Error {
  explicit OutOfDomain(const std::string& msg) : Error("OutOfDomain: " + msg) {}
};

struct NonConvex : Error {
  explicit NonConvex(const std::string& msg) : Error("NonConvex: " + msg) {}
};

struct NonRealPsi : Error {
  explicit NonRealPsi(const std::string& msg) : Error("NonRealPsi: " + msg) {}
};

struct GridTooCoarse : Error {
  explicit GridTooCoarse(const std::string& msg) : Error("GridTooCoarse: " + msg) {}
};

struct NotParabolic : Error {
  explicit NotParabolic(const std::string& msg) : Error("NotParabolic: " + msg) {}
};

struct NotUmbilic : Error {
  explicit NotUmbilic(const std::string& msg) : Error("NotUmbilic: " + msg) {}
};

struct SyntaxError : Error {
  size_t position;
  SyntaxError(const std::string& msg, size_t pos)
      : Error("SyntaxError at position " + std::to_string(pos) + ": " + msg),
        position(pos) {}
};

struct UnknownIdentifier : Error {
  explicit UnknownIdentifier(const std::string& name)
      : Error("UnknownIdentifier: " + name) {}
};

struct EvalDomain : Error {
  explicit EvalDomain(const std::string& msg) : Error("EvalDomain: " + msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error("ConfigError: " + msg) {}
};

}  // namespace rocflow

#endif
