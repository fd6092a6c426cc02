#pragma once

#include <functional>

#include "crembed/maurer_cartan.hpp"

namespace crembed::detail {

/// Pointwise residual evaluation, parameterized on the FD policy so the
/// sweep can rerun the witness at probe steps for diagnostics.
using ResidualAtFn = std::function<ResidualTensor(const CoordinatePoint&, const FDSpec&)>;

/// Evaluate the residual over the sampling plan, keep the worst slot, and
/// attach a step diagnostic when the worst residual looks FD-limited.
ResidualReport sweep_residual(const ResidualAtFn& residual_at, const GridSpec& grid,
                              const FDSpec& fd, int dim);

/// Probe the witness point at steps h, h/2 (plain central differences) and
/// classify a suspiciously large residual as truncation-dominated
/// ("step_too_large") or round-off-dominated ("step_too_small").
/// Empty string when the residual is small enough to be healthy.
std::string diagnose_step(const ResidualAtFn& residual_at, const CoordinatePoint& witness,
                          const FDSpec& fd, double max_residual);

}  // namespace crembed::detail
