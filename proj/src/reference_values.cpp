// Published values the `report` command compares against.

#include "octoroot/report.hpp"

namespace octoroot {

namespace {

using enum MethodId;

// Errors after one, two and three steps from the problem's standard initial
// guess, then COC and ACOC.
constexpr ErrorTableReference kErrorTable[] = {
    {"f1", m1, {"0.610e-6", "0.319e-46", "0.179e-368"}, 8.0000, 8.0000},
    {"f1", m2, {"0.721e-4", "0.230e-30", "0.252e-242"}, 8.0000, 7.9999},
    {"f1", m3, {"0.893e-4", "0.126e-30", "0.200e-245"}, 8.0000, 7.9999},
    {"f1", m4, {"0.753e-4", "0.619e-31", "0.128e-247"}, 8.0000, 7.9999},
    {"f1", m5, {"0.347e-3", "0.471e-25", "0.546e-200"}, 8.0000, 7.9999},
    {"f1", m6, {"0.328e-3", "0.256e-25", "0.345e-202"}, 8.0000, 7.9999},
    {"f2", m1, {"0.248e-3", "0.582e-32", "0.532e-261"}, 8.0000, 8.0000},
    {"f2", m2, {"0.157e-3", "0.119e-33", "0.138e-274"}, 8.0000, 7.9998},
    {"f2", m3, {"0.763e-4", "0.540e-35", "0.342e-284"}, 8.0000, 7.9999},
    {"f2", m4, {"0.871e-4", "0.134e-34", "0.438e-281"}, 8.0000, 7.9999},
    {"f2", m5, {"0.411e-3", "0.377e-29", "0.189e-237"}, 8.0000, 7.9999},
    {"f2", m6, {"0.273e-4", "0.321e-38", "0.117e-309"}, 8.0000, 7.9999},
    {"f3", m1, {"0.106e-7", "0.482e-63", "0.833e-506"}, 8.0000, 7.9999},
    {"f3", m2, {"0.614e-8", "0.328e-65", "0.217e-523"}, 8.0000, 8.0000},
    {"f3", m3, {"0.388e-8", "0.254e-67", "0.877e-541"}, 8.0000, 7.9999},
    {"f3", m4, {"0.175e-8", "0.154e-70", "0.582e-567"}, 8.0000, 8.0000},
    {"f3", m5, {"0.554e-8", "0.426e-66", "0.528e-531"}, 8.0000, 8.0000},
    {"f3", m6, {"0.100e-7", "0.136e-63", "0.154e-510"}, 8.0000, 7.9999},
    {"f4", m1, {"0.148e-7", "0.138e-61", "0.769e-494"}, 8.0000, 8.0000},
    {"f4", m2, {"0.433e-8", "0.134e-66", "0.116e-534"}, 8.0000, 7.9999},
    {"f4", m3, {"0.327e-10", "0.369e-84", "0.967e-676"}, 8.0000, 7.9999},
    {"f4", m4, {"0.642e-10", "0.101e-81", "0.389e-656"}, 8.0000, 7.9999},
    {"f4", m5, {"0.281e-8", "0.341e-68", "0.161e-547"}, 8.0000, 8.0000},
    {"f4", m6, {"0.727e-10", "0.543e-81", "0.530e-650"}, 8.0000, 7.9999},
};

// I/P, NC (%), Ic/C on the default 600x600 grid over [-3,3]^2.
constexpr BasinTableReference kBasinTable[] = {
    {"p1", m1, 2.21, 0.00111, 2.21}, {"p1", m2, 2.19, 0.0, 2.19},
    {"p1", m3, 2.16, 0.0, 2.16},     {"p1", m4, 2.11, 0.0, 2.11},
    {"p1", m5, 6.01, 71.0, 2.09},    {"p1", m6, 2.30, 0.0256, 2.30},
    {"p2", m1, 2.90, 0.125, 2.89},   {"p2", m2, 2.88, 0.00111, 2.88},
    {"p2", m3, 2.82, 0.00444, 2.82}, {"p2", m4, 2.73, 0.0, 2.73},
    {"p2", m5, 4.32, 27.5, 2.81},    {"p2", m6, 3.21, 0.216, 3.18},
    {"p3", m1, 3.22, 0.802, 3.13},   {"p3", m2, 2.99, 0.0178, 2.99},
    {"p3", m3, 2.94, 0.0367, 2.94},  {"p3", m4, 2.82, 0.0, 2.82},
    {"p3", m5, 3.28, 5.47, 2.99},    {"p3", m6, 3.42, 1.08, 3.30},
    {"p4", m1, 6.00, 17.7, 4.06},    {"p4", m2, 4.06, 0.819, 3.97},
    {"p4", m3, 4.21, 1.82, 4.01},    {"p4", m4, 3.95, 4.40, 3.44},
    {"p4", m5, 4.44, 20.0, 3.57},    {"p4", m6, 5.17, 9.35, 4.15},
    {"p5", m1, 6.89, 24.4, 4.27},    {"p5", m2, 4.81, 3.33, 4.46},
    {"p5", m3, 5.07, 5.70, 4.46},    {"p5", m4, 4.59, 7.05, 3.80},
    {"p5", m5, 5.02, 21.4, 4.02},    {"p5", m6, 5.78, 13.3, 4.36},
    {"p6", m1, 6.72, 18.2, 4.88},    {"p6", m2, 4.68, 2.29, 4.44},
    {"p6", m3, 4.89, 4.04, 4.46},    {"p6", m4, 4.44, 3.96, 4.00},
    {"p6", m5, 5.26, 11.8, 4.71},    {"p6", m6, 5.45, 8.49, 4.56},
};

}  // namespace

std::span<const ErrorTableReference> error_table_reference() { return kErrorTable; }

std::span<const BasinTableReference> basin_table_reference() { return kBasinTable; }

const ErrorTableReference* find_error_reference(std::string_view problem, MethodId method) {
  for (const auto& r : kErrorTable) {
    if (r.problem == problem && r.method == method) return &r;
  }
  return nullptr;
}

const BasinTableReference* find_basin_reference(std::string_view polynomial, MethodId method) {
  for (const auto& r : kBasinTable) {
    if (r.polynomial == polynomial && r.method == method) return &r;
  }
  return nullptr;
}

}  // namespace octoroot
