#include "descent_geom/sphere.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace dg {

double omega(int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "omega: n must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

namespace {

Mat random_rotation3(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Mat a(3, 3);
  for (int i = 0; i < 9; ++i) a.data()[i] = gauss(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

}  // namespace

SphereGrid make_grid(int n, std::size_t size, std::uint64_t seed) {
  if (n < 1 || n > kMaxDim) fail(ErrorKind::InvalidInput, "make_grid: dimension outside [1, 8]");
  if (size == 0) fail(ErrorKind::InvalidInput, "make_grid: size must be positive");
  SphereGrid g;
  g.dim = n;
  g.seed = seed;
  std::mt19937_64 rng(seed);

  if (n == 1) {
    g.directions = Mat(1, 2);
    g.directions << 1.0, -1.0;
    g.weights = Vec::Ones(2);
    return g;
  }

  const auto m = static_cast<Eigen::Index>(size);
  g.directions.resize(n, m);
  g.weights = Vec::Constant(m, omega(n) / static_cast<double>(m));

  if (n == 2) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double offset = uni(rng);
    for (Eigen::Index i = 0; i < m; ++i) {
      double a = 2.0 * std::numbers::pi * (static_cast<double>(i) + offset) / static_cast<double>(m);
      g.directions(0, i) = std::cos(a);
      g.directions(1, i) = std::sin(a);
    }
  } else if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    Mat rot = random_rotation3(rng);
    for (Eigen::Index i = 0; i < m; ++i) {
      double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(m);
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double a = golden * static_cast<double>(i);
      Vec p(3);
      p << r * std::cos(a), r * std::sin(a), z;
      g.directions.col(i) = rot * p;
    }
  } else {
    std::normal_distribution<double> gauss;
    for (Eigen::Index i = 0; i < m; ++i) {
      Vec p(n);
      do {
        for (int k = 0; k < n; ++k) p[k] = gauss(rng);
      } while (p.norm() < 1e-12);
      g.directions.col(i) = p.normalized();
    }
  }
  return g;
}

}  // namespace dg
