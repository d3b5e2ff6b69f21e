#include "levy/special.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace levy {

namespace {

constexpr double lanczos_g = 7.0;

constexpr std::array<double, 9> lanczos_coef = {
  0.99999999999980993227684700473478,
  676.520368121885098567009190444019,
  -1259.13921672240287047156078755283,
  771.3234287776530788486528258894,
  -176.61502916214059906584551354,
  12.507343278686904814458936853,
  -0.13857109526572011689554707,
  9.984369578019570859563e-6,
  1.50563273514931155834e-7
};

// Series part A_g(x) for Gamma(x + 1) = sqrt(2 pi) t^(x + 1/2) e^-t A_g(x).
double lanczos_sum(double x)
{
  double sum = lanczos_coef[0];
  for (std::size_t k = 1; k < lanczos_coef.size(); ++k)
    sum += lanczos_coef[k] / (x + static_cast<double>(k));
  return sum;
}

} // namespace

double gamma(double x)
{
  if (std::isnan(x))
    return x;
  if (x <= 0.0 && x == std::floor(x))
    return std::numeric_limits<double>::quiet_NaN();
  if (x < 0.5)
    return pi / (std::sin(pi * x) * gamma(1.0 - x));
  const double xm1 = x - 1.0;
  const double t = xm1 + lanczos_g + 0.5;
  // split the power to postpone overflow near x = 170
  const double half = std::pow(t, 0.5 * (xm1 + 0.5));
  return std::sqrt(2.0 * pi) * half * (half * std::exp(-t)) * lanczos_sum(xm1);
}

double log_gamma(double x)
{
  if (x < 0.5)
    return std::log(pi / std::abs(std::sin(pi * x))) - log_gamma(1.0 - x);
  const double xm1 = x - 1.0;
  const double t = xm1 + lanczos_g + 0.5;
  return 0.5 * std::log(2.0 * pi) + (xm1 + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(xm1));
}

} // namespace levy
