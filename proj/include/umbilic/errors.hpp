#ifndef UMBILIC_ERRORS_HPP
#define UMBILIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace umbilic {

/// Metric component matrix is numerically singular (|det| below threshold).
struct SingularMetricError : std::runtime_error {
  explicit SingularMetricError(const std::string& what) : std::runtime_error(what) {}
};

/// 1 - |beta|^2 <= 0: no unit normal exists at this point.
struct DegenerateNormalError : std::runtime_error {
  explicit DegenerateNormalError(const std::string& what) : std::runtime_error(what) {}
};

/// Family parameters violate their admissibility constraints.
struct InvalidParamsError : std::runtime_error {
  explicit InvalidParamsError(const std::string& what) : std::runtime_error(what) {}
};

/// Loop sampling hit a (near-)zero of the field.
struct ZeroOnLoopError : std::runtime_error {
  explicit ZeroOnLoopError(const std::string& what) : std::runtime_error(what) {}
};

/// Adjacent phase samples jumped by >= pi; the loop needs more samples.
struct UndersampledLoopError : std::runtime_error {
  explicit UndersampledLoopError(const std::string& what) : std::runtime_error(what) {}
};

/// A winding estimate was too far from an integer to snap.
struct IndexSnapError : std::runtime_error {
  explicit IndexSnapError(const std::string& what) : std::runtime_error(what) {}
};

/// Principal directions requested at an umbilic point.
struct UmbilicPointError : std::runtime_error {
  explicit UmbilicPointError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace umbilic

#endif
