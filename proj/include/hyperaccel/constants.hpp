#pragma once

#include "hyperaccel/hpfloat.hpp"

namespace hyperaccel {

// pi from Machin's formula pi = 16 atan(1/5) - 4 atan(1/239).
// Requires precision_bits >= 64; abs_error <= 2^(4 - precision_bits).
HPFloat ref_pi(long precision_bits);

// zeta(3) from (5/2) sum_{k>=1} (-1)^(k-1) / (k^3 binom(2k,k)).
// Requires precision_bits >= 64; abs_error <= 2^(4 - precision_bits).
HPFloat ref_zeta3(long precision_bits);

}  // namespace hyperaccel
