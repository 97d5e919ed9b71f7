#pragma once

#include <vector>

namespace hsbnet {

/// Bit-rate-to-message-rate transformation of a semantic link.
///
/// Two families are supported: a linear map with slope `sigma` (msg/bit), and a
/// concave piecewise-linear map through `breakpoints` (bit/s, msg/s) starting at
/// the origin. Beyond its last breakpoint a piecewise function is saturated.
class B2MFunction {
public:
    enum class Kind { Linear, PiecewiseLinear };

    struct Breakpoint {
        double bit_rate;
        double msg_rate;
        bool operator==(const Breakpoint&) const = default;
    };

    /// Default is the identity slope.
    B2MFunction() = default;

    static B2MFunction linear(double sigma);
    /// Throws ValidationError unless the points start at (0,0), increase strictly in both
    /// coordinates and have non-increasing slopes.
    static B2MFunction piecewise(std::vector<Breakpoint> breakpoints);

    Kind kind() const noexcept { return kind_; }
    double sigma() const noexcept { return sigma_; }
    const std::vector<Breakpoint>& breakpoints() const noexcept { return points_; }

    /// msg/s achievable at `bit_rate` bit/s.
    double eval(double bit_rate) const;
    /// Smallest bit rate reaching `msg_rate`; throws UnreachableRateError above saturation.
    double invert(double msg_rate) const;
    /// Largest reachable message rate (+inf for linear).
    double saturation() const noexcept;

    /// Segments as (bit-rate length, slope) pairs; the last linear segment has infinite length.
    struct Segment {
        double length;
        double slope;
    };
    std::vector<Segment> segments() const;

    bool operator==(const B2MFunction&) const = default;

private:
    Kind kind_ = Kind::Linear;
    double sigma_ = 1.0;
    std::vector<Breakpoint> points_;
};

}  // namespace hsbnet
