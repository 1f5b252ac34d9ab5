#pragma once

#include <string>

namespace kcbpo {

// Instance text for the low-autocorrelation energy of a +-1 sequence of
// length n with lags 1..w, written over 0/1 variables v1..vn (minimize).
// Throws std::invalid_argument unless 1 <= w < n.
std::string gen_labs(int n, int w);

}  // namespace kcbpo
