#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "conefix/errors.hpp"

namespace conefix {

/// Closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double v) const { return v >= lo && v <= hi; }
    /// Point at parameter t in [0,1]; exact at the endpoints and the midpoint.
    double at(double t) const { return lo * (1.0 - t) + hi * t; }
};

/// One interval per coordinate of M.
using DomainBox = std::vector<Interval>;

inline void validate_box(const DomainBox& box) {
    require(!box.empty(), "domain box must have at least one interval");
    for (const auto& iv : box)
        require(iv.lo <= iv.hi, "domain interval has lo > hi");
}

/// Seeded uniform sampler. Draws are produced from raw mt19937_64 output so
/// streams are identical across platforms and standard-library versions
/// (std::uniform_real_distribution is implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double uniform(const Interval& iv) { return iv.at(uniform()); }

    /// Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t n) { return gen_() % n; }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

/// Element `index` of the van der Corput sequence in the given base.
inline double van_der_corput(std::uint64_t index, std::uint64_t base) {
    double result = 0.0;
    double denom = 1.0;
    while (index > 0) {
        denom *= static_cast<double>(base);
        result += static_cast<double>(index % base) / denom;
        index /= base;
    }
    return result;
}

/// Point `index` of the Halton sequence over `dim` coordinates, mapped into `box`
/// (cycled when dim exceeds box size).
inline std::vector<double> halton_point(std::uint64_t index, std::size_t dim, const DomainBox& box) {
    static constexpr std::uint64_t primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                               31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    std::vector<double> p(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const auto base = primes[j % (sizeof(primes) / sizeof(primes[0]))];
        p[j] = box[j % box.size()].at(van_der_corput(index + 1, base));
    }
    return p;
}

/// g evenly spaced points covering [iv.lo, iv.hi], endpoints included.
inline std::vector<double> lattice(const Interval& iv, std::size_t g) {
    require(g >= 2, "lattice needs at least two points");
    std::vector<double> pts(g);
    for (std::size_t i = 0; i < g; ++i)
        pts[i] = iv.at(static_cast<double>(i) / static_cast<double>(g - 1));
    return pts;
}

}  // namespace conefix
