#pragma once

#include <stdexcept>
#include <string>

namespace dppln {

/// Base class for every toolkit error, so callers can catch one type.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// material
class OutOfValidityRange : public Error { using Error::Error; };

// waveguide
class NoGuidedMode : public Error { using Error::Error; };
class NonConvergence : public Error { using Error::Error; };
class GeometryMismatch : public Error { using Error::Error; };

// grating
class ZeroOrderUnsupported : public Error { using Error::Error; };

// qpm
class NonPhysical : public Error { using Error::Error; };
class SingularOrders : public Error { using Error::Error; };
class NegativePeriod : public Error { using Error::Error; };
class EmptyLocus : public Error { using Error::Error; };

// eo
class IntegratorFailure : public Error { using Error::Error; };
class ZeroPower : public Error { using Error::Error; };
class Unreachable : public Error { using Error::Error; };

// biphoton
class GridTooNarrow : public Error { using Error::Error; };
class DegenerateState : public Error { using Error::Error; };

// cli
class SchemaError : public Error { using Error::Error; };
class IOError : public Error { using Error::Error; };

} // namespace dppln
