#include <doctest.h>

#include <random>

#include "octoroot/basin.hpp"

using namespace octoroot;

namespace {

GridSpec small_grid(int n, double half_width) {
  GridSpec g;
  g.re_min = g.im_min = -half_width;
  g.re_max = g.im_max = half_width;
  g.width = g.height = n;
  return g;
}

}  // namespace

TEST_CASE("grid sampling and validation") {
  GridSpec g = small_grid(4, 2.0);
  CHECK(g.sample_point(0, 0) == Complex(-1.5, 1.5));
  CHECK(g.sample_point(3, 3) == Complex(1.5, -1.5));
  CHECK_NOTHROW(g.validate());
  g.re_max = g.re_min;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = small_grid(0, 1.0);
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = small_grid(2, 1.0);
  g.max_iter = 0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = small_grid(2, 1.0);
  g.escape_tol = 0.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("classify_point examples on x^2 - 1") {
  PrecisionContext ctx(40);
  const Problem p1 = builtin("p1", ctx);
  const GridSpec spec;
  const auto at_root = classify_point(MethodId::m1, {}, p1, Complex(1.0, 0.0), spec);
  CHECK(at_root.root_index == 0);
  CHECK(at_root.iterations == 0);
  const auto near = classify_point(MethodId::m1, {}, p1, Complex(1.4, 0.0), spec);
  CHECK(near.root_index == 0);
  CHECK(near.iterations >= 1);
  CHECK(near.iterations <= 2);
  const auto left = classify_point(MethodId::m3, {}, p1, Complex(-1.3, 0.2), spec);
  CHECK(left.root_index == 1);
  // f'(0) = 0: the first step fails and the point counts as nonconvergent.
  const auto origin = classify_point(MethodId::m1, {}, p1, Complex(0.0, 0.0), spec);
  CHECK_FALSE(origin.converged());
  CHECK(origin.iterations == spec.max_iter);
}

TEST_CASE("points inside the capture radius take zero iterations") {
  PrecisionContext ctx(40);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  const GridSpec spec;
  for (const char* name : {"p1", "p3", "p6"}) {
    const Problem p = builtin(name, ctx);
    for (std::size_t i = 0; i < p.known_roots.size(); ++i) {
      const Complex r = to_complex_double(p.known_roots[i]);
      for (int k = 0; k < 20; ++k) {
        const Complex z = r + std::polar(spec.escape_tol / 2, angle(rng));
        const auto cell = classify_point(MethodId::m2, {}, p, z, spec);
        CHECK(cell.root_index == static_cast<int>(i));
        CHECK(cell.iterations == 0);
      }
    }
  }
}

TEST_CASE("a 1x1 grid samples the window centre") {
  PrecisionContext ctx(40);
  GridSpec spec;
  spec.width = spec.height = 1;
  const auto grid = render(MethodId::m4, {}, builtin("p1", ctx), spec, 1);
  REQUIRE(grid.cells.size() == 1);
  CHECK_FALSE(grid.cells[0].converged());
  const auto m = metrics(grid);
  CHECK(m.nc_percent == 100.0);
  CHECK(m.ipp == 15.0);
  CHECK(m.icc == 0.0);
}

TEST_CASE("M4 on x^2 - 1 converges everywhere on the default grid") {
  PrecisionContext ctx(40);
  const auto grid = render(MethodId::m4, {}, builtin("p1", ctx), GridSpec{});
  const auto m = metrics(grid);
  CHECK(m.total == 360000);
  CHECK(m.convergent == m.total);
  CHECK(m.nc_percent == 0.0);
  CHECK(m.ipp == m.icc);
}

TEST_CASE("metrics of a hand-built grid") {
  BasinGrid grid;
  grid.spec = small_grid(2, 1.0);
  grid.roots = {Complex(1, 0), Complex(-1, 0)};
  grid.cells = {{0, 2}, {1, 3}, {BasinCell::kNone, 15}, {0, 0}};
  const auto m = metrics(grid);
  CHECK(m.total == 4);
  CHECK(m.convergent == 3);
  CHECK(m.iteration_sum == 20);
  CHECK(m.convergent_iteration_sum == 5);
  CHECK(m.ipp == 5.0);
  CHECK(m.nc_percent == 25.0);
  CHECK(m.icc == doctest::Approx(5.0 / 3.0));
  grid.cells.clear();
  CHECK_THROWS_AS(metrics(grid), std::invalid_argument);
}

TEST_CASE("metric identities hold on rendered grids") {
  PrecisionContext ctx(40);
  for (const char* name : {"p2", "p4", "p6"}) {
    for (auto id : kAllMethods) {
      const auto grid = render(id, {}, builtin(name, ctx), small_grid(40, 3.0));
      const auto m = metrics(grid);
      INFO(name << " " << method_name(id));
      const std::int64_t nonconvergent = m.total - m.convergent;
      CHECK(m.iteration_sum == m.convergent_iteration_sum + 15 * nonconvergent);
      CHECK(m.ipp * static_cast<double>(m.total) ==
            doctest::Approx(static_cast<double>(m.iteration_sum)));
      CHECK(m.nc_percent == doctest::Approx(100.0 * static_cast<double>(nonconvergent) /
                                            static_cast<double>(m.total)));
      CHECK(m.ipp >= m.icc);
      for (const auto& cell : grid.cells) {
        CHECK(cell.iterations >= 0);
        CHECK(cell.iterations <= 15);
      }
    }
  }
}

TEST_CASE("real polynomials give basins symmetric under conjugation") {
  PrecisionContext ctx(40);
  // Dyadic window and size: row r and row n-1-r sample exactly conjugate points.
  const GridSpec spec = small_grid(64, 2.0);
  for (const char* name : {"p1", "p2", "p5"}) {
    const Problem p = builtin(name, ctx);
    for (auto id : kAllMethods) {
      const auto grid = render(id, {}, p, spec, 1);
      INFO(name << " " << method_name(id));
      int mismatches = 0;
      for (int row = 0; row < spec.height; ++row) {
        for (int col = 0; col < spec.width; ++col) {
          const auto& a = grid.at(col, row);
          const auto& b = grid.at(col, spec.height - 1 - row);
          bool same = a.iterations == b.iterations && a.converged() == b.converged();
          if (same && a.converged()) {
            const Complex ra = grid.roots[static_cast<std::size_t>(a.root_index)];
            const Complex rb = grid.roots[static_cast<std::size_t>(b.root_index)];
            same = std::abs(ra - std::conj(rb)) < 1e-12;
          }
          if (!same) ++mismatches;
        }
      }
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("thread count does not change the grid") {
  PrecisionContext ctx(40);
  const Problem p = builtin("p4", ctx);
  const GridSpec spec = small_grid(50, 3.0);
  for (auto id : {MethodId::m1, MethodId::m5}) {
    const auto one = render(id, {}, p, spec, 1);
    const auto four = render(id, {}, p, spec, 4);
    CHECK(one.cells == four.cells);
  }
}

TEST_CASE("high-precision sweep agrees with the double sweep away from basin boundaries") {
  PrecisionContext ctx(60);
  const Problem p = builtin("p1", ctx);
  const GridSpec spec = small_grid(16, 3.0);
  const auto fast = render(MethodId::m2, {}, p, spec, 1);
  const auto slow = render_high_precision(MethodId::m2, {}, p, spec, ctx, 2);
  int same = 0;
  for (std::size_t i = 0; i < fast.cells.size(); ++i) same += fast.cells[i] == slow.cells[i];
  CHECK(same >= static_cast<int>(fast.cells.size()) - 4);
}

TEST_CASE("grids need listed roots") {
  PrecisionContext ctx(40);
  CHECK_THROWS_AS(render(MethodId::m1, {}, builtin("f1", ctx), small_grid(2, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("brightness scaling") {
  CHECK(dim_channel(255, 0, 15) == 255);
  CHECK(dim_channel(255, 14, 15) == 102);
  CHECK(dim_channel(255, 15, 15) == 102);
  CHECK(dim_channel(255, 7, 15) == 178);  // 255 * 0.7 = 178.5
  CHECK(dim_channel(0, 3, 15) == 0);
  CHECK(dim_channel(200, 5, 1) == 200);
  // monotone in n
  for (int n = 0; n < 14; ++n) CHECK(dim_channel(230, n + 1, 15) <= dim_channel(230, n, 15));
}

TEST_CASE("colorize") {
  BasinGrid grid;
  grid.spec = small_grid(2, 1.0);
  grid.spec.height = 1;
  grid.roots = {Complex(1, 0)};
  grid.cells = {{0, 14}, {BasinCell::kNone, 15}};
  const std::vector<Rgb> red{{255, 0, 0}};
  const Image img = colorize(grid, red);
  CHECK(img.width == 2);
  CHECK(img.height == 1);
  CHECK(img.pixel(0, 0) == Rgb{102, 0, 0});
  CHECK(img.pixel(1, 0) == Rgb{0, 0, 0});

  grid.roots.push_back(Complex(-1, 0));
  CHECK_THROWS_AS(colorize(grid, red), PaletteError);

  PrecisionContext ctx(40);
  const auto p6 = render(MethodId::m4, {}, builtin("p6", ctx), small_grid(8, 3.0));
  CHECK_NOTHROW(colorize(p6, default_palette()));
  const std::vector<Rgb> seven(default_palette().begin(), default_palette().begin() + 7);
  CHECK_THROWS_AS(colorize(p6, seven), PaletteError);
}
