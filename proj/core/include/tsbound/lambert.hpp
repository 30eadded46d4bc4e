#pragma once

namespace tsbound {

/// Lower real branch W_{-1}(x) of the inverse of w * exp(w), for x in [-1/e, 0).
///
/// Returns w <= -1 with |w e^w - x| below 1e-12. Halley iteration from the asymptotic
/// seed log(-x) - log(-log(-x)); near the branch point the seed comes from the series
/// in p = -sqrt(2 (1 + e x)) instead, where Halley alone converges slowly.
/// Throws InvalidInput outside the domain.
double lambert_w_minus1(double x);

}  // namespace tsbound
