#pragma once

namespace xbicorr {

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
// Series expansion for x < a + 1, Lentz continued fraction otherwise.
[[nodiscard]] double gamma_p(double a, double x);
[[nodiscard]] double gamma_q(double a, double x);

/// Upper-tail probability P(Chi2_df > x) via the regularized upper
/// incomplete gamma function Q(df/2, x/2). Non-increasing in x, in [0, 1].
[[nodiscard]] double chi_square_sf(double x, int df);

}  // namespace xbicorr
