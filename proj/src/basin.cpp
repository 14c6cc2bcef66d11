#include "octoroot/basin.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <fmt/format.h>

namespace octoroot {

void GridSpec::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max)) {
    throw std::invalid_argument(fmt::format("empty window [{}, {}] x [{}, {}]", re_min, re_max,
                                            im_min, im_max));
  }
  if (width < 1 || height < 1) throw std::invalid_argument("grid size must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  if (!(escape_tol > 0.0)) throw std::invalid_argument("escape_tol must be positive");
}

Complex GridSpec::sample_point(int col, int row) const {
  const double re = re_min + (col + 0.5) * (re_max - re_min) / width;
  const double im = im_max - (row + 0.5) * (im_max - im_min) / height;
  return {re, im};
}

BasinCell classify_point(MethodId method, const MethodParams& params, const Problem& problem,
                         Complex z0, const GridSpec& spec) {
  std::vector<Complex> roots;
  for (const auto& r : problem.known_roots) roots.push_back(to_complex_double(r));
  const ExprFunction<Complex> f(problem.expr);
  return classify_point(method, params, f, roots, z0, spec.max_iter, spec.escape_tol);
}

namespace {

// Rows are handed out through an atomic counter; each cell is written by
// exactly one worker and depends only on its own sample point.
template <class Classify>
void sweep(const GridSpec& spec, std::vector<BasinCell>& cells, unsigned threads,
           const Classify& classify) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.height));
  std::atomic<int> next_row{0};
  const auto worker = [&] {
    for (int row = next_row++; row < spec.height; row = next_row++) {
      for (int col = 0; col < spec.width; ++col) {
        cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(spec.width) +
              static_cast<std::size_t>(col)] = classify(spec.sample_point(col, row));
      }
    }
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
}

BasinGrid empty_grid(MethodId method, const Problem& problem, const GridSpec& spec) {
  spec.validate();
  if (problem.known_roots.empty()) {
    throw std::invalid_argument("problem '" + problem.name + "' has no listed roots");
  }
  BasinGrid grid;
  grid.spec = spec;
  grid.method = method;
  grid.polynomial = problem.name;
  for (const auto& r : problem.known_roots) grid.roots.push_back(to_complex_double(r));
  grid.cells.resize(static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height));
  return grid;
}

}  // namespace

BasinGrid render(MethodId method, const MethodParams& params, const Problem& problem,
                 const GridSpec& spec, unsigned threads) {
  BasinGrid grid = empty_grid(method, problem, spec);
  const ExprFunction<Complex> f(problem.expr);
  sweep(spec, grid.cells, threads, [&](Complex z0) {
    return classify_point(method, params, f, grid.roots, z0, spec.max_iter, spec.escape_tol);
  });
  return grid;
}

BasinGrid render_high_precision(MethodId method, const MethodParams& params,
                                const Problem& problem, const GridSpec& spec,
                                const PrecisionContext& ctx, unsigned threads) {
  BasinGrid grid = empty_grid(method, problem, spec);
  const ExprFunction<BigComplex> f(problem.expr);
  std::vector<BigComplex> roots;
  for (const auto& r : problem.known_roots) {
    roots.emplace_back(ctx, r.re(), r.im());
  }
  const BigReal tol = ctx.real(spec.escape_tol);
  sweep(spec, grid.cells, threads, [&](Complex z0) {
    return classify_point(method, params, f, roots, from_complex_double(ctx, z0), spec.max_iter,
                          tol);
  });
  return grid;
}

BasinMetrics metrics(const BasinGrid& grid) {
  if (grid.cells.empty()) throw std::invalid_argument("metrics of an empty grid");
  BasinMetrics m;
  for (const auto& cell : grid.cells) {
    ++m.total;
    m.iteration_sum += cell.iterations;
    if (cell.converged()) {
      ++m.convergent;
      m.convergent_iteration_sum += cell.iterations;
    }
  }
  const auto total = static_cast<double>(m.total);
  m.ipp = static_cast<double>(m.iteration_sum) / total;
  m.nc_percent = 100.0 * static_cast<double>(m.total - m.convergent) / total;
  m.icc = m.convergent == 0 ? 0.0
                            : static_cast<double>(m.convergent_iteration_sum) /
                                  static_cast<double>(m.convergent);
  return m;
}

Rgb Image::pixel(int col, int row) const {
  const std::size_t i =
      3 * (static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(col));
  return {rgb[i], rgb[i + 1], rgb[i + 2]};
}

const std::vector<Rgb>& default_palette() {
  static const std::vector<Rgb> palette{
      {230, 25, 75},   {60, 180, 75},  {0, 130, 200},  {255, 225, 25}, {245, 130, 48},
      {145, 30, 180},  {70, 240, 240}, {240, 50, 230}, {170, 110, 40}, {128, 128, 255},
  };
  return palette;
}

std::uint8_t dim_channel(std::uint8_t c, int iterations, int max_iter) {
  // b(n) = 1 - 0.6 k/(M-1) = (10(M-1) - 6k) / (10(M-1)), k = min(n, M-1).
  if (max_iter <= 1) return c;
  const long span = max_iter - 1;
  const long k = std::clamp<long>(iterations, 0, span);
  const long num = static_cast<long>(c) * (10 * span - 6 * k);
  return static_cast<std::uint8_t>(num / (10 * span));
}

Image colorize(const BasinGrid& grid, const std::vector<Rgb>& palette) {
  if (palette.size() < grid.roots.size()) {
    throw PaletteError(fmt::format("palette has {} colors but the grid has {} roots",
                                   palette.size(), grid.roots.size()));
  }
  Image img;
  img.width = grid.spec.width;
  img.height = grid.spec.height;
  img.rgb.resize(grid.cells.size() * 3, 0);
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const auto& cell = grid.cells[i];
    if (!cell.converged()) continue;
    const Rgb& base = palette[static_cast<std::size_t>(cell.root_index)];
    img.rgb[3 * i] = dim_channel(base.r, cell.iterations, grid.spec.max_iter);
    img.rgb[3 * i + 1] = dim_channel(base.g, cell.iterations, grid.spec.max_iter);
    img.rgb[3 * i + 2] = dim_channel(base.b, cell.iterations, grid.spec.max_iter);
  }
  return img;
}

}  // namespace octoroot
