#pragma once

#include <stdexcept>
#include <string>

namespace wvsim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroVectorError : Error {
  using Error::Error;
};

struct DimMismatchError : Error {
  using Error::Error;
};

struct IndexOutOfRangeError : Error {
  using Error::Error;
};

struct RangeError : Error {
  using Error::Error;
};

struct OrthogonalSelectionError : Error {
  using Error::Error;
};

struct WidthMismatchError : Error {
  using Error::Error;
};

struct ZeroNormError : Error {
  using Error::Error;
};

struct EnvelopeFailureError : Error {
  using Error::Error;
};

struct NoAcceptedTrialsError : Error {
  using Error::Error;
};

struct WindowTooSmallError : Error {
  using Error::Error;
};

// Config-file or flag syntax problem; line is 1-based, 0 when not tied to a line.
struct ParseError : Error {
  int line;
  std::string field;
  ParseError(int line_, std::string field_, const std::string& msg)
      : Error(compose(line_, field_, msg)), line(line_), field(std::move(field_)) {}

 private:
  static std::string compose(int line, const std::string& field, const std::string& msg) {
    std::string out = "parse error";
    if (line > 0) out += " (line " + std::to_string(line) + ")";
    if (!field.empty()) out += " [" + field + "]";
    return out + ": " + msg;
  }
};

// A syntactically valid config that violates a constraint; field names the offender.
struct ValidationError : Error {
  std::string field;
  ValidationError(std::string field_, const std::string& msg)
      : Error("invalid config [" + field_ + "]: " + msg), field(std::move(field_)) {}
};

}  // namespace wvsim
