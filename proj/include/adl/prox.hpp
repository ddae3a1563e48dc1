#pragma once

#include <optional>

#include <Eigen/Core>

#include "adl/errors.hpp"

namespace adl {

/// Composite dual-averaging step with an l1 trust region.
///
/// Returns the exact minimiser over {b : ||b - center||_1 <= radius} of
///
///     <dual_sum / step_count, b> + lambda * ||b||_1 + (strength / sqrt(step_count)) * ||b - center||_2^2
///
/// If `pinned` is set, that coordinate is held at center[pinned] and excluded
/// from both penalties. The objective is separable apart from the ball
/// constraint, so each coordinate has a closed form for a given multiplier of
/// the constraint; the multiplier is found by bracketing on the monotone
/// l1 distance.
Eigen::VectorXd prox_step(const Eigen::Ref<const Eigen::VectorXd>& dual_sum,
                          const Eigen::Ref<const Eigen::VectorXd>& center, double radius, double lambda,
                          Index step_count, double strength = 1.0, std::optional<Index> pinned = std::nullopt);

/// Allocation-free variant used on the hot path; `out` must already have size p.
void prox_step_into(Eigen::Ref<Eigen::VectorXd> out, const Eigen::Ref<const Eigen::VectorXd>& dual_sum,
                    const Eigen::Ref<const Eigen::VectorXd>& center, double radius, double lambda,
                    Index step_count, double strength, std::optional<Index> pinned);

}  // namespace adl
