#pragma once

#include <cstddef>
#include <span>

namespace adsel {

/// Log-density with gradient, the interface the sampler drives. Densities
/// may return -inf; gradients are only requested through
/// value_and_gradient, which must leave `grad` untouched when the value
/// is -inf.
class Target {
public:
    virtual ~Target() = default;
    virtual std::size_t dim() const = 0;
    virtual double value(std::span<const double> x) const = 0;
    virtual double value_and_gradient(std::span<const double> x,
                                      std::span<double> grad) const = 0;
};

} // namespace adsel
