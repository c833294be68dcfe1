#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace depsum {

struct QuadratureSpec {
  double abs_tol = 1e-9;
  int max_depth = 40;
};

namespace detail {

inline double simpson_slice(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth, int max_depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson_slice(a, m, fa, flm, fm);
  double right = simpson_slice(m, b, fm, frm, fb);
  double delta = left + right - whole;
  // once the local tolerance sinks to roundoff scale, subdividing only chases
  // noise; accept the Richardson-corrected value
  double floor_tol = 1e-15 * (1.0 + std::abs(left) + std::abs(right));
  if (std::abs(delta) <= 15.0 * std::max(tol, floor_tol) || b - a < 1e-12)
    return left + right + delta / 15.0;
  if (depth >= max_depth)
    throw std::runtime_error("integrate: max depth exceeded on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "]");
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

// Oriented adaptive-Simpson integral of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec = {}) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, spec);
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = detail::simpson_slice(a, b, fa, fm, fb);
  return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, spec.abs_tol, 0, spec.max_depth);
}

}  // namespace depsum
