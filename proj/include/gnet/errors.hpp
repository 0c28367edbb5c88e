#pragma once

#include <stdexcept>
#include <string>

namespace gnet {

enum class ErrorKind {
  Parameter,       // invalid hyper-parameter or argument value
  Shape,           // dimension mismatch between matrices / models / files
  Normalization,   // a feature value outside [0,1] where the basis needs it
  Label,           // unknown label or too few classes
  Parse,           // malformed CSV or model file
  Stratification,  // split or fold cannot satisfy class-presence requirements
  Numeric,         // factorization failure or degenerate matrix
};

/// Base of every exception the library throws. The kind drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define GNET_DEFINE_ERROR(Name, Kind)                                        \
  class Name : public Error {                                                \
   public:                                                                   \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

GNET_DEFINE_ERROR(ParameterError, Parameter)
GNET_DEFINE_ERROR(ShapeError, Shape)
GNET_DEFINE_ERROR(NormalizationError, Normalization)
GNET_DEFINE_ERROR(LabelError, Label)
GNET_DEFINE_ERROR(ParseError, Parse)
GNET_DEFINE_ERROR(StratificationError, Stratification)
GNET_DEFINE_ERROR(NumericError, Numeric)

#undef GNET_DEFINE_ERROR

}  // namespace gnet
