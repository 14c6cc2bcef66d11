#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "octoroot/methods.hpp"
#include "octoroot/problem.hpp"

namespace octoroot {

/// Sampling window and iteration budget. Defaults: [-3,3]^2 at 600x600,
/// at most 15 iterations, capture radius 1e-3.
struct GridSpec {
  double re_min = -3.0;
  double re_max = 3.0;
  double im_min = -3.0;
  double im_max = 3.0;
  int width = 600;
  int height = 600;
  int max_iter = 15;
  double escape_tol = 1e-3;

  /// Throws std::invalid_argument on an empty window or non-positive sizes.
  void validate() const;

  /// Center of pixel (col, row); row 0 is the top edge (im_max).
  Complex sample_point(int col, int row) const;
};

struct BasinCell {
  static constexpr int kNone = -1;
  int root_index = kNone;
  int iterations = 0;

  bool converged() const { return root_index != kNone; }
  friend bool operator==(const BasinCell&, const BasinCell&) = default;
};

struct BasinGrid {
  GridSpec spec;
  std::vector<BasinCell> cells;  // row-major, top row first
  std::vector<Complex> roots;
  MethodId method = MethodId::m1;
  std::string polynomial;

  const BasinCell& at(int col, int row) const {
    return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(spec.width) +
                 static_cast<std::size_t>(col)];
  }
};

struct BasinMetrics {
  double ipp = 0.0;         // mean iterations per point
  double nc_percent = 0.0;  // share of nonconvergent points, in percent
  double icc = 0.0;         // mean iterations per convergent point
  std::int64_t total = 0;
  std::int64_t convergent = 0;
  std::int64_t iteration_sum = 0;            // over all cells
  std::int64_t convergent_iteration_sum = 0;  // over convergent cells only
};

/// Index of the first root within tol of z, if any.
template <Scalar T>
std::optional<int> nearest_root_within(const T& z, const std::vector<T>& roots,
                                       const RealOf<T>& tol) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (magnitude(z - roots[i]) < tol) return static_cast<int>(i);
  }
  return std::nullopt;
}

/// Follows the orbit of z0. The capture test runs once before the first step
/// (0 iterations) and after every step; a failed or non-finite step ends the
/// orbit as nonconvergent with max_iter iterations.
template <Scalar T, UnivariateFunction<T> F>
BasinCell classify_point(MethodId method, const MethodParams& params, const F& f,
                         const std::vector<T>& roots, const T& z0, int max_iter,
                         const RealOf<T>& escape_tol) {
  if (roots.empty()) throw std::invalid_argument("classification needs at least one root");
  T z = z0;
  if (auto hit = nearest_root_within(z, roots, escape_tol)) return {*hit, 0};
  for (int n = 1; n <= max_iter; ++n) {
    auto outcome = step(method, params, f, z);
    if (!outcome.ok()) break;
    z = std::move(outcome.next);
    if (auto hit = nearest_root_within(z, roots, escape_tol)) return {*hit, n};
  }
  return {BasinCell::kNone, max_iter};
}

/// Convenience overload in double precision on a problem's listed roots.
BasinCell classify_point(MethodId method, const MethodParams& params, const Problem& problem,
                         Complex z0, const GridSpec& spec);

/// Classifies every pixel in double precision. Pixels are independent, so the
/// work is split across `threads` workers (0 = hardware concurrency) with a
/// result identical to the sequential sweep.
BasinGrid render(MethodId method, const MethodParams& params, const Problem& problem,
                 const GridSpec& spec, unsigned threads = 0);

/// Same sweep carried out in BigComplex at ctx's precision.
BasinGrid render_high_precision(MethodId method, const MethodParams& params,
                                const Problem& problem, const GridSpec& spec,
                                const PrecisionContext& ctx, unsigned threads = 0);

BasinMetrics metrics(const BasinGrid& grid);

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Interleaved RGB8 raster, row-major, top row first.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  Rgb pixel(int col, int row) const;
};

class PaletteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ten well-separated colors; entry i is used for the i-th listed root.
const std::vector<Rgb>& default_palette();

/// Root i gets palette[i] dimmed by b(n) = 1 - 0.6 min(n, M-1)/(M-1) for n
/// iterations (rounded down per channel); nonconvergent cells are black.
Image colorize(const BasinGrid& grid, const std::vector<Rgb>& palette);

/// Channel value c scaled by b(n), computed in exact integer arithmetic.
std::uint8_t dim_channel(std::uint8_t c, int iterations, int max_iter);

}  // namespace octoroot
