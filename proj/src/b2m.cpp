#include "hsbnet/b2m.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hsbnet/error.hpp"

namespace hsbnet {

B2MFunction B2MFunction::linear(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ValidationError("b2m.sigma", "slope must be finite and > 0");
    }
    B2MFunction f;
    f.kind_ = Kind::Linear;
    f.sigma_ = sigma;
    return f;
}

B2MFunction B2MFunction::piecewise(std::vector<Breakpoint> breakpoints) {
    if (breakpoints.size() < 2) {
        throw ValidationError("b2m.breakpoints", "need at least two breakpoints");
    }
    if (breakpoints.front().bit_rate != 0.0 || breakpoints.front().msg_rate != 0.0) {
        throw ValidationError("b2m.breakpoints", "first breakpoint must be (0, 0)");
    }
    double prev_slope = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < breakpoints.size(); ++k) {
        const auto& a = breakpoints[k - 1];
        const auto& b = breakpoints[k];
        if (!(b.bit_rate > a.bit_rate) || !(b.msg_rate > a.msg_rate) || !std::isfinite(b.bit_rate) ||
            !std::isfinite(b.msg_rate)) {
            throw ValidationError("b2m.breakpoints",
                                  "breakpoint " + std::to_string(k) + " is not strictly increasing");
        }
        const double slope = (b.msg_rate - a.msg_rate) / (b.bit_rate - a.bit_rate);
        if (slope > prev_slope * (1.0 + 1e-12)) {
            throw ValidationError("b2m.breakpoints",
                                  "segment " + std::to_string(k) + " breaks concavity");
        }
        prev_slope = slope;
    }
    B2MFunction f;
    f.kind_ = Kind::PiecewiseLinear;
    f.sigma_ = breakpoints[1].msg_rate / breakpoints[1].bit_rate;
    f.points_ = std::move(breakpoints);
    return f;
}

double B2MFunction::eval(double bit_rate) const {
    if (bit_rate <= 0.0) {
        return 0.0;
    }
    if (kind_ == Kind::Linear) {
        return sigma_ * bit_rate;
    }
    for (std::size_t k = 1; k < points_.size(); ++k) {
        const auto& a = points_[k - 1];
        const auto& b = points_[k];
        if (bit_rate <= b.bit_rate) {
            return a.msg_rate + (b.msg_rate - a.msg_rate) * (bit_rate - a.bit_rate) / (b.bit_rate - a.bit_rate);
        }
    }
    return points_.back().msg_rate;
}

double B2MFunction::invert(double msg_rate) const {
    if (msg_rate <= 0.0) {
        return 0.0;
    }
    if (kind_ == Kind::Linear) {
        return msg_rate / sigma_;
    }
    if (msg_rate > points_.back().msg_rate) {
        throw UnreachableRateError(msg_rate, points_.back().msg_rate);
    }
    for (std::size_t k = 1; k < points_.size(); ++k) {
        const auto& a = points_[k - 1];
        const auto& b = points_[k];
        if (msg_rate <= b.msg_rate) {
            return a.bit_rate + (b.bit_rate - a.bit_rate) * (msg_rate - a.msg_rate) / (b.msg_rate - a.msg_rate);
        }
    }
    return points_.back().bit_rate;
}

double B2MFunction::saturation() const noexcept {
    if (kind_ == Kind::Linear) {
        return std::numeric_limits<double>::infinity();
    }
    return points_.back().msg_rate;
}

std::vector<B2MFunction::Segment> B2MFunction::segments() const {
    if (kind_ == Kind::Linear) {
        return {{std::numeric_limits<double>::infinity(), sigma_}};
    }
    std::vector<Segment> out;
    out.reserve(points_.size() - 1);
    for (std::size_t k = 1; k < points_.size(); ++k) {
        const auto& a = points_[k - 1];
        const auto& b = points_[k];
        out.push_back({b.bit_rate - a.bit_rate, (b.msg_rate - a.msg_rate) / (b.bit_rate - a.bit_rate)});
    }
    return out;
}

}  // namespace hsbnet
