#include "cobit/capacity/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cobit::capacity {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& options) {
  const int n = static_cast<int>(x0.size());
  if (n < 1) throw std::invalid_argument("objective needs at least one variable");

  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::vector<Eigen::VectorXd> xs(n + 1, x0);
  for (int i = 0; i < n; ++i) xs[i + 1](i) += options.initial_step;
  std::vector<double> fs(n + 1);
  for (int i = 0; i <= n; ++i) fs[i] = f(xs[i]);

  std::vector<int> order(n + 1);
  NelderMeadResult out;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    int best = order.front();
    int worst = order.back();
    int second_worst = order[n - 1];

    double diameter = 0.0;
    for (int i = 0; i <= n; ++i)
      diameter = std::max(diameter, (xs[i] - xs[best]).norm());
    if (fs[worst] - fs[best] < options.f_tol && diameter < options.x_tol) {
      out.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += xs[i];
    centroid /= static_cast<double>(n);

    Eigen::VectorXd reflected = centroid + kReflect * (centroid - xs[worst]);
    double f_reflected = f(reflected);

    if (f_reflected < fs[best]) {
      Eigen::VectorXd expanded = centroid + kExpand * (reflected - centroid);
      double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        xs[worst] = std::move(expanded);
        fs[worst] = f_expanded;
      } else {
        xs[worst] = std::move(reflected);
        fs[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < fs[second_worst]) {
      xs[worst] = std::move(reflected);
      fs[worst] = f_reflected;
      continue;
    }

    bool outside = f_reflected < fs[worst];
    Eigen::VectorXd contracted = outside
        ? Eigen::VectorXd(centroid + kContract * (reflected - centroid))
        : Eigen::VectorXd(centroid - kContract * (centroid - xs[worst]));
    double f_contracted = f(contracted);
    if (f_contracted < std::min(f_reflected, fs[worst])) {
      xs[worst] = std::move(contracted);
      fs[worst] = f_contracted;
      continue;
    }

    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      xs[i] = xs[best] + kShrink * (xs[i] - xs[best]);
      fs[i] = f(xs[i]);
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fs[i] < fs[best]) best = i;
  out.x = xs[best];
  out.value = fs[best];
  out.iterations = iter;
  return out;
}

}  // namespace cobit::capacity
