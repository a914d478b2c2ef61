// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>

#include "rabiforge/statevector.hpp"

namespace rabiforge {

/// Wootters concurrence of a two-qubit density matrix: with the spin-flipped
/// state rho~ = (Y(x)Y) rho* (Y(x)Y) and R = sqrt(sqrt(rho) rho~ sqrt(rho)),
/// C = max{0, 2*lambda_max(R) - Tr R}, clipped to [0, 1].
double concurrence(const DensityMatrix& rho);

/// Entanglement-of-formation score used for block placement: the binary
/// entropy h(p) at p = 1/2 + sqrt(1 - C^2)/2. paper_literal switches to the
/// unnegated form with p = 1/2 + sqrt(1 - C)/2 for comparison runs.
double entropy_of_formation(double c, bool paper_literal = false);

/// Highest-entanglement qubit pair of the state, excluding `previous`; ties
/// break toward the lexicographically lowest pair.
std::pair<int, int> select_pair(const StateVector& state,
                                std::optional<std::pair<int, int>> previous,
                                bool paper_literal = false);

}  // namespace rabiforge
