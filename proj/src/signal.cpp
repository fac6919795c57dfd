#include "lpbesov/signal.hpp"

#include <cmath>

namespace lpbesov {

double lp_norm(const GroupSignal& f, double p) {
  if (p == kInfinity) return f.values.cwiseAbs().maxCoeff();
  if (p < 1.0) throw std::invalid_argument("lp_norm requires p >= 1");
  if (p == 1.0) return f.values.cwiseAbs().sum();
  if (p == 2.0) return f.values.norm();
  double acc = 0.0;
  for (int i = 0; i < f.values.size(); ++i) acc += std::pow(std::abs(f.values[i]), p);
  return std::pow(acc, 1.0 / p);
}

double inner(const GroupSignal& f, const GroupSignal& g) {
  require_same_group(f, g);
  return f.values.dot(g.values);
}

void require_same_group(const GroupSignal& f, const GroupSignal& g) {
  if (f.group != g.group) throw std::invalid_argument("signals live on different groups");
}

}  // namespace lpbesov
