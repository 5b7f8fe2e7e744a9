#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace dg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr int kMaxDim = 8;

// Deduplication / canonicalization tolerance for points.
inline constexpr double kPointTol = 1e-9;

enum class ErrorKind {
  InvalidInput,
  DimensionMismatch,
  NumericalFailure,
  PreconditionViolated,
  NotAChain,
  Degenerate,
};

const char* to_string(ErrorKind kind);

class GeomError : public std::runtime_error {
 public:
  GeomError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by stratification validation when two bodies are not comparable
/// by inclusion. Indices refer to the caller's input order.
class NotAChainError : public GeomError {
 public:
  NotAChainError(std::size_t i, std::size_t j);

  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

void require_dim(const Vec& x, int n, const char* where);
bool all_finite(const Vec& x);

}  // namespace dg
