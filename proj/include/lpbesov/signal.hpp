#pragma once

#include <Eigen/Core>
#include <limits>

#include "lpbesov/group.hpp"

namespace lpbesov {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A real-valued function on group elements. The group is held by pointer and
/// must outlive the signal.
struct GroupSignal {
  const CayleyGroup* group = nullptr;
  Eigen::VectorXd values;

  GroupSignal() = default;
  GroupSignal(const CayleyGroup& g, Eigen::VectorXd v) : group(&g), values(std::move(v)) {
    if (values.size() != g.size()) throw std::invalid_argument("signal length != group size");
  }

  static GroupSignal zeros(const CayleyGroup& g) {
    return GroupSignal(g, Eigen::VectorXd::Zero(g.size()));
  }
  static GroupSignal constant(const CayleyGroup& g, double c) {
    return GroupSignal(g, Eigen::VectorXd::Constant(g.size(), c));
  }
  static GroupSignal delta(const CayleyGroup& g, int at) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(g.size());
    v[at] = 1.0;
    return GroupSignal(g, std::move(v));
  }
  /// Indicator of the ball B(e, r) in the word metric.
  static GroupSignal ball_indicator(const CayleyGroup& g, const WordMetric& m, int r) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(g.size());
    for (int x = 0; x < g.size(); ++x)
      if (m.dist[x] <= r) v[x] = 1.0;
    return GroupSignal(g, std::move(v));
  }

  double operator[](int i) const { return values[i]; }
  double& operator[](int i) { return values[i]; }
  int size() const { return static_cast<int>(values.size()); }
};

/// l^p norm under counting measure; p = kInfinity gives the sup norm.
double lp_norm(const GroupSignal& f, double p);

double inner(const GroupSignal& f, const GroupSignal& g);

void require_same_group(const GroupSignal& f, const GroupSignal& g);

}  // namespace lpbesov
