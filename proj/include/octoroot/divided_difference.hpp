#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "octoroot/problem.hpp"
#include "octoroot/scalar.hpp"

namespace octoroot {

/// Two distinct interpolation nodes are too close to divide by their gap.
class NearSingularNodesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Interpolation node repeated `multiplicity` times (confluent when > 1).
template <Scalar T>
struct ConfluentNode {
  T point;
  int multiplicity = 1;
};

/// Node with its data already evaluated: taylor[k] = f^(k)(point)/k!,
/// taylor.size() == multiplicity.
template <Scalar T>
struct NodeSample {
  T point;
  std::vector<T> taylor;
};

/// Top row of the Newton divided-difference tableau,
/// [f[t0], f[t0,t1], ..., f[t0,...,tm]], for the node sequence obtained by
/// repeating each sample's point `taylor.size()` times. Within a confluent
/// block g[t,...,t] (k+1 copies) = g^(k)(t)/k!. Distinct nodes closer than
/// `min_gap` raise NearSingularNodesError; an exact coincidence between
/// different samples always does.
template <Scalar T>
std::vector<T> newton_coefficients(std::span<const NodeSample<T>> samples,
                                   const RealOf<T>& min_gap) {
  std::vector<std::size_t> group;
  std::vector<T> points;
  std::vector<std::size_t> rank;  // position inside the confluent block
  for (std::size_t s = 0; s < samples.size(); ++s) {
    if (samples[s].taylor.empty()) throw std::invalid_argument("node without data");
    for (std::size_t r = 0; r < samples[s].taylor.size(); ++r) {
      group.push_back(s);
      points.push_back(samples[s].point);
      rank.push_back(r);
    }
  }
  const std::size_t m = points.size();
  if (m == 0) throw std::invalid_argument("divided difference needs at least one node");

  // column[i] holds g[t_i, ..., t_{i+j}] for the current order j.
  std::vector<T> column;
  column.reserve(m);
  for (std::size_t i = 0; i < m; ++i) column.push_back(samples[group[i]].taylor[0]);
  std::vector<T> top{column[0]};

  for (std::size_t j = 1; j < m; ++j) {
    std::vector<T> next;
    next.reserve(m - j);
    for (std::size_t i = 0; i + j < m; ++i) {
      if (group[i] == group[i + j]) {
        const auto& taylor = samples[group[i]].taylor;
        next.push_back(taylor[rank[i + j] - rank[i]]);
        continue;
      }
      const T gap = points[i + j] - points[i];
      if (is_exact_zero(gap) || magnitude(gap) < min_gap) {
        throw NearSingularNodesError("distinct interpolation nodes coincide: " +
                                     ScalarTraits<T>::describe(points[i]));
      }
      next.push_back((column[i + 1] - column[i]) / gap);
    }
    column = std::move(next);
    top.push_back(column[0]);
  }
  return top;
}

/// Divided difference f[t_0, ..., t_m] for the expanded node list.
template <Scalar T>
T divided_difference(std::span<const NodeSample<T>> samples, const RealOf<T>& min_gap) {
  return newton_coefficients(samples, min_gap).back();
}

/// Evaluates f at each node (with derivatives where a node repeats) and
/// returns the divided difference. Distinct nodes must be further apart than
/// the scalar type's noise floor.
template <Scalar T, class F>
T divided_difference(const F& f, std::span<const ConfluentNode<T>> nodes) {
  std::vector<NodeSample<T>> samples;
  samples.reserve(nodes.size());
  for (const auto& node : nodes) {
    if (node.multiplicity < 1) throw std::invalid_argument("node multiplicity must be >= 1");
    NodeSample<T> s{node.point, {}};
    if (node.multiplicity == 1) {
      s.taylor.push_back(f.value(node.point));
    } else if (node.multiplicity == 2) {
      auto vs = f.value_and_derivative(node.point);
      s.taylor = {vs.value, vs.slope};
    } else {
      if constexpr (requires { f.taylor(node.point, 2); }) {
        if (node.multiplicity > 5) throw std::invalid_argument("node multiplicity above 5");
        s.taylor = f.taylor(node.point, node.multiplicity - 1);
      } else {
        throw std::invalid_argument("function does not provide higher derivatives");
      }
    }
    samples.push_back(std::move(s));
  }
  const auto& like = nodes.front().point;
  return divided_difference<T>(samples, ScalarTraits<T>::noise_floor(like));
}

}  // namespace octoroot
