#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lpbesov {

/// Truncated Taylor series at a point: coefficients c[i] = f^(i)(x0)/i!.
/// Arithmetic propagates through +, -, *, /, exp and real powers, which is
/// enough to differentiate every built-in multiplier to machine precision.
class Jet {
 public:
  explicit Jet(int order) : c_(order + 1, 0.0) {
    if (order < 0) throw std::invalid_argument("jet order must be >= 0");
  }

  static Jet constant(double v, int order) {
    Jet j(order);
    j.c_[0] = v;
    return j;
  }
  static Jet variable(double x0, int order) {
    Jet j(order);
    j.c_[0] = x0;
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double value() const { return c_[0]; }
  double coeff(int i) const { return c_[i]; }
  double& coeff(int i) { return c_[i]; }

  double derivative(int r) const {
    if (r > order()) throw std::out_of_range("derivative order exceeds jet order");
    double fact = 1.0;
    for (int i = 2; i <= r; ++i) fact *= i;
    return c_[r] * fact;
  }

  Jet operator-() const {
    Jet r = *this;
    for (double& v : r.c_) v = -v;
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    for (int i = 0; i <= r.order(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    for (int i = 0; i <= r.order(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  friend Jet operator*(const Jet& a, double s) {
    Jet r = a;
    for (double& v : r.c_) v *= s;
    return r;
  }
  friend Jet operator*(double s, const Jet& a) { return a * s; }
  friend Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r.c_[0] += s;
    return r;
  }
  friend Jet operator-(double s, const Jet& a) { return (-a) + s; }
  friend Jet operator-(const Jet& a, double s) { return a + (-s); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order());
    for (int k = 0; k <= r.order(); ++k) {
      double acc = 0.0;
      for (int i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.c_[0] == 0.0) throw std::domain_error("jet division by zero value");
    Jet r(a.order());
    for (int k = 0; k <= r.order(); ++k) {
      double acc = a.c_[k];
      for (int i = 1; i <= k; ++i) acc -= b.c_[i] * r.c_[k - i];
      r.c_[k] = acc / b.c_[0];
    }
    return r;
  }

  friend Jet exp(const Jet& a) {
    Jet r(a.order());
    r.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k <= r.order(); ++k) {
      double acc = 0.0;
      for (int j = 1; j <= k; ++j) acc += j * a.c_[j] * r.c_[k - j];
      r.c_[k] = acc / k;
    }
    return r;
  }

  /// a^alpha for real alpha; requires a.value() > 0.
  friend Jet pow(const Jet& a, double alpha) {
    if (a.c_[0] <= 0.0) throw std::domain_error("jet pow requires positive value");
    Jet r(a.order());
    r.c_[0] = std::pow(a.c_[0], alpha);
    for (int k = 1; k <= r.order(); ++k) {
      double acc = 0.0;
      for (int i = 1; i <= k; ++i) acc += (alpha * i - (k - i)) * a.c_[i] * r.c_[k - i];
      r.c_[k] = acc / (k * a.c_[0]);
    }
    return r;
  }

 private:
  std::vector<double> c_;
};

}  // namespace lpbesov
