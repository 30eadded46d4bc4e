#pragma once

#include <string_view>

namespace tsbound {

/// Which closed form of the capacity term E to use when turning a confidence level into a
/// penalty.
///
///  as_printed:      E = (4 vcd log(2mu+1) +   log(8/eta')) / mu
///  exact_inversion: E = (4 vcd log(2mu+1) + 4 log(8/eta')) / mu
///
/// exact_inversion is the algebraic inverse of the blocked VC tail bound; as_printed is the
/// widely quoted form and reproduces the published stochastic-volatility numbers.
enum class PenaltyVariant { as_printed, exact_inversion };

PenaltyVariant parse_penalty_variant(std::string_view name);
std::string_view to_string(PenaltyVariant v);

}  // namespace tsbound
