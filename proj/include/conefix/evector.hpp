#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "conefix/errors.hpp"

namespace conefix {

/// Element of the discretized ordered Banach space E: a fixed-length vector of
/// samples under the sup norm. Immutable after construction; every coordinate
/// is finite.
class EVector {
  public:
    explicit EVector(std::vector<double> samples) : samples_(std::move(samples)) {
        require(!samples_.empty(), "EVector must have dimension >= 1");
        for (double v : samples_)
            if (!std::isfinite(v)) throw Error("EVector coordinate is not finite");
    }

    static EVector zeros(std::size_t dim) { return EVector(std::vector<double>(dim, 0.0)); }

    std::size_t dimension() const { return samples_.size(); }
    double operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<double>& samples() const { return samples_; }

    double sup_norm() const {
        double m = 0.0;
        for (double v : samples_) m = std::max(m, std::fabs(v));
        return m;
    }

    /// Exact coordinatewise zero test.
    bool is_zero() const {
        for (double v : samples_)
            if (v != 0.0) return false;
        return true;
    }

    double min_coordinate() const {
        double m = samples_[0];
        for (double v : samples_) m = std::min(m, v);
        return m;
    }

    bool operator==(const EVector& other) const { return samples_ == other.samples_; }

    friend EVector operator+(const EVector& a, const EVector& b) {
        require(a.dimension() == b.dimension(), "EVector dimension mismatch");
        std::vector<double> out(a.dimension());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.samples_[i] + b.samples_[i];
        return EVector(std::move(out));
    }

    friend EVector operator-(const EVector& a, const EVector& b) {
        require(a.dimension() == b.dimension(), "EVector dimension mismatch");
        std::vector<double> out(a.dimension());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.samples_[i] - b.samples_[i];
        return EVector(std::move(out));
    }

    friend EVector operator*(double s, const EVector& a) {
        std::vector<double> out(a.dimension());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a.samples_[i];
        return EVector(std::move(out));
    }

  private:
    std::vector<double> samples_;
};

}  // namespace conefix
