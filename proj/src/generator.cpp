#include "codiff/generator.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "codiff/polyhedral.hpp"
#include "codiff/random.hpp"

namespace codiff {

GeneratedPA generatePA(std::uint64_t seed, int d, int l, int s, double scale) {
  if (d < 1) throw InvalidArgument("generatePA: d must be at least 1");
  if (l < 2 * d) throw InvalidArgument("generatePA: l must be at least 2d");
  if (s < 1) throw InvalidArgument("generatePA: s must be at least 1");
  if (!(scale > 0.0)) throw InvalidArgument("generatePA: scale must be positive");

  Rng rng(seed);
  const int c = 2 * d + 1;
  std::vector<AugVector> plus;
  std::vector<AugVector> minus;
  for (int k = 0; k < d; ++k) {
    for (int sign : {1, -1}) {
      Vector v = Vector::Zero(d);
      v(k) = sign * c;
      plus.emplace_back(rng.uniform(-scale, scale), v);
    }
  }
  for (int i = 2 * d; i < l; ++i) {
    Vector v(d);
    for (int k = 0; k < d; ++k) v(k) = static_cast<double>(rng.uniformInt(-c, c));
    plus.emplace_back(rng.uniform(-scale, scale), v);
  }
  for (int j = 0; j < s; ++j) {
    Vector w(d);
    for (int k = 0; k < d; ++k) w(k) = static_cast<double>(rng.uniformInt(-2, 2));
    minus.emplace_back(rng.uniform(-scale, scale), w);
  }

  GeneratedPA out;
  out.f = DCForm(d, std::move(plus), std::move(minus));
  const LPOutcome oracle = paGlobalMin(out.f);
  if (!oracle.bounded()) throw GenerationFailure("generatePA: instance is unbounded below");
  out.f_star = oracle.value;
  out.argmin = oracle.argmin;

  // Hadamard bound on the Gram determinant of integer gradient differences.
  double diam = 1.0;
  for (const auto& p : out.f.plus) {
    for (const auto& q : out.f.plus) diam = std::max(diam, (p.v - q.v).norm());
  }
  out.theta_hat = scale * scale / std::pow(diam, 2.0 * (d - 1));
  return out;
}

int finiteTerminationBudget(int s, double gap, double theta) {
  const double steps = std::ceil(std::max(gap, 0.0) / std::min(theta, 1.0)) + 1.0;
  const double budget = 10.0 * s * steps;
  if (!(budget < static_cast<double>(INT_MAX))) return INT_MAX;
  return static_cast<int>(budget);
}

}  // namespace codiff
