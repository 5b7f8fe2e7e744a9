#include "descent_geom/types.hpp"

#include <cmath>

namespace dg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotAChain: return "NotAChain";
    case ErrorKind::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

NotAChainError::NotAChainError(std::size_t i, std::size_t j)
    : GeomError(ErrorKind::NotAChain,
                "bodies " + std::to_string(i) + " and " + std::to_string(j) +
                    " are not comparable by inclusion"),
      i_(i),
      j_(j) {}

void fail(ErrorKind kind, const std::string& what) {
  throw GeomError(kind, std::string(to_string(kind)) + ": " + what);
}

void require_dim(const Vec& x, int n, const char* where) {
  if (x.size() != n) {
    fail(ErrorKind::DimensionMismatch,
         std::string(where) + ": expected dimension " + std::to_string(n) +
             ", got " + std::to_string(x.size()));
  }
}

bool all_finite(const Vec& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) return false;
  }
  return true;
}

}  // namespace dg
