#pragma once

namespace levy {

//! Gamma function by the Lanczos approximation (g = 7, 9 terms), reflection
//! for x < 1/2. Relative accuracy is about 1e-15 on (0, 170).
double gamma(double x);

//! log|Gamma(x)| for x > 0.
double log_gamma(double x);

constexpr double pi = 3.14159265358979323846264338327950288;

} // namespace levy
