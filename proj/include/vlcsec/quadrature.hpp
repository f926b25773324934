#pragma once

// Globally adaptive Gauss–Kronrod (G10/K21) integration on finite intervals,
// QUADPACK-style error control: stop once err <= max(abs_tol, rel_tol*|I|).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "vlcsec/error.hpp"

namespace vlcsec::quad {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Options {
  double abs_tol = 0.0;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int intervals = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208067703388, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b, value, error;
  bool roundoff_limited;  // error estimate sits at the rounding floor; bisection cannot help
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk21(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double ahalf = std::abs(half);

  std::array<double, 10> f1{}, f2{};
  const double fc = f(center);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::abs(resk);
  for (int j = 0; j < 5; ++j) {
    const int k = 2 * j + 1;
    const double dx = half * kXgk[k];
    f1[k] = f(center - dx);
    f2[k] = f(center + dx);
    resg += kWg[j] * (f1[k] + f2[k]);
    resk += kWgk[k] * (f1[k] + f2[k]);
    resabs += kWgk[k] * (std::abs(f1[k]) + std::abs(f2[k]));
  }
  for (int j = 0; j < 5; ++j) {
    const int k = 2 * j;
    const double dx = half * kXgk[k];
    f1[k] = f(center - dx);
    f2[k] = f(center + dx);
    resk += kWgk[k] * (f1[k] + f2[k]);
    resabs += kWgk[k] * (std::abs(f1[k]) + std::abs(f2[k]));
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (int k = 0; k < 10; ++k) {
    resasc += kWgk[k] * (std::abs(f1[k] - reskh) + std::abs(f2[k] - reskh));
  }
  resabs *= ahalf;
  resasc *= ahalf;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  bool limited = false;
  if (resabs > uflow / (50.0 * eps)) {
    const double floor = 50.0 * eps * resabs;
    limited = err <= floor;
    err = std::max(floor, err);
  }
  return {a, b, resk * half, err, limited};
}

}  // namespace detail

/// Integrate f over [a, b]; never throws on non-convergence (check `converged`).
template <class F>
Result try_integrate(F&& f, double a, double b, const Options& opt = {}) {
  Result out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::priority_queue<detail::Panel> heap;
  std::vector<detail::Panel> frozen;  // panels too narrow to split further

  auto first = detail::gk21(f, a, b);
  out.evaluations = 21;
  heap.push(first);
  double total = first.value;
  double total_err = first.error;

  auto target = [&](double value) { return std::max(opt.abs_tol, opt.rel_tol * std::abs(value)); };

  while (!heap.empty() && total_err > target(total) &&
         static_cast<int>(heap.size() + frozen.size()) < opt.max_intervals) {
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = std::abs(worst.b - worst.a);
    if (worst.roundoff_limited ||
        width <= 256.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b)) || mid == worst.a ||
        mid == worst.b) {
      frozen.push_back(worst);
      if (heap.empty()) break;
      continue;
    }
    const auto left = detail::gk21(f, worst.a, mid);
    const auto right = detail::gk21(f, mid, worst.b);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  CompensatedSum value;
  CompensatedSum err;
  int count = 0;
  for (const auto& p : frozen) {
    value += p.value;
    err += p.error;
    ++count;
  }
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
    ++count;
  }
  out.value = value.value();
  out.abs_error = err.value();
  out.intervals = count;
  // Converged either on tolerance or because every remaining panel is at its rounding floor.
  out.converged = out.abs_error <= target(out.value) ||
                  (count < opt.max_intervals && frozen.size() == static_cast<std::size_t>(count) &&
                   std::all_of(frozen.begin(), frozen.end(), [](const auto& p) { return p.roundoff_limited; }));
  return out;
}

/// Integrate f over [a, b]; throws NumericError if the tolerance is not met.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}, const char* what = "integral") {
  auto r = try_integrate(f, a, b, opt);
  if (!r.converged) {
    std::ostringstream msg;
    msg.precision(6);
    msg << what << ": quadrature did not converge on [" << a << ", " << b << "]: estimate "
        << r.value << ", error " << r.abs_error << " after " << r.intervals << " intervals";
    throw NumericError(msg.str());
  }
  return r;
}

}  // namespace vlcsec::quad
