#pragma once

namespace aiphase {

// reduced Planck constant, J s (CODATA 2018)
inline constexpr double hbar = 1.054571817e-34;

}  // namespace aiphase
