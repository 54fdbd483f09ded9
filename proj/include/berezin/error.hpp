#pragma once

#include <stdexcept>
#include <string>

namespace berezin {

/// Base of every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BEREZIN_DECLARE_ERROR(Name)            \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  };

BEREZIN_DECLARE_ERROR(DomainError)
BEREZIN_DECLARE_ERROR(TruncationError)
BEREZIN_DECLARE_ERROR(TruncationOverflow)
BEREZIN_DECLARE_ERROR(SingularPoint)
BEREZIN_DECLARE_ERROR(NonConvergence)
BEREZIN_DECLARE_ERROR(OutOfRange)
BEREZIN_DECLARE_ERROR(ZeroInput)
BEREZIN_DECLARE_ERROR(PencilFailure)
BEREZIN_DECLARE_ERROR(IllConditioned)
BEREZIN_DECLARE_ERROR(NotRankOne)
BEREZIN_DECLARE_ERROR(NoDiskDenominator)
BEREZIN_DECLARE_ERROR(DegenerateNode)
BEREZIN_DECLARE_ERROR(DegreeConstraint)

#undef BEREZIN_DECLARE_ERROR

/// Malformed JSON input. `path()` names the offending field, e.g. "atoms[2].kind".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error("SchemaError at " + (path.empty() ? std::string("<root>") : path) + ": " + what),
        path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace berezin
