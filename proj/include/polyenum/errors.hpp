#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyenum {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define POLYENUM_DEFINE_ERROR(Name)            \
  class Name : public Error {                  \
   public:                                     \
    using Error::Error;                        \
  }

// numerics
POLYENUM_DEFINE_ERROR(ZeroDenominator);
POLYENUM_DEFINE_ERROR(DivideByZero);

// polyio
POLYENUM_DEFINE_ERROR(UnsupportedOption);

// dictionary
POLYENUM_DEFINE_ERROR(InconsistentLinearity);
POLYENUM_DEFINE_ERROR(RankDeficientLinearity);
POLYENUM_DEFINE_ERROR(Infeasible);
POLYENUM_DEFINE_ERROR(NotPointed);
POLYENUM_DEFINE_ERROR(ZeroPivotElement);
POLYENUM_DEFINE_ERROR(AtRoot);
POLYENUM_DEFINE_ERROR(InvalidCobasis);

// orchestrator
POLYENUM_DEFINE_ERROR(BadVersion);
POLYENUM_DEFINE_ERROR(MalformedJobLine);
POLYENUM_DEFINE_ERROR(WorkerLost);
POLYENUM_DEFINE_ERROR(SinkWriteFailure);
POLYENUM_DEFINE_ERROR(ProtocolError);

// cli
POLYENUM_DEFINE_ERROR(UsageError);
POLYENUM_DEFINE_ERROR(DomainError);

#undef POLYENUM_DEFINE_ERROR

/// Input text that does not follow the file grammar; carries the 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace polyenum
