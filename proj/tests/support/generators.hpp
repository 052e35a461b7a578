#ifndef MULTIROOT_TESTS_GENERATORS_HPP
#define MULTIROOT_TESTS_GENERATORS_HPP

// Seeded random problem generators shared by the property and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <multiroot/poly.hpp>
#include <multiroot/real.hpp>

namespace multiroot::testing
{

struct ConfigShape {
    int max_roots = 5;
    int max_multiplicity = 4;
    // Upper bound on sum(alpha) for algebraic, on sum(alpha)/2 otherwise.
    int max_degree = 10;
    double min_gap = 0.3;
    double lo = -2.0;
    double hi = 2.0;
};

// Root positions are drawn on a 1/1024 grid so they are exact at every precision.
inline Real grid_value(std::mt19937_64 &rng, double lo, double hi)
{
    std::uniform_int_distribution<long> dist(static_cast<long>(lo * 1024), static_cast<long>(hi * 1024));
    return Real(dist(rng)) / Real(1024);
}

inline std::vector<Real> separated_points(std::mt19937_64 &rng, int count, double lo, double hi, double min_gap)
{
    std::vector<Real> pts;
    const Real gap(min_gap);
    while (static_cast<int>(pts.size()) < count) {
        Real candidate = grid_value(rng, lo, hi);
        bool ok = true;
        for (const auto &p : pts) {
            ok = ok && abs(p - candidate) >= gap;
        }
        if (ok) {
            pts.push_back(std::move(candidate));
        }
    }
    return pts;
}

inline RootConfiguration random_configuration(std::mt19937_64 &rng, Family family, const ConfigShape &shape)
{
    std::uniform_int_distribution<int> roots_dist(1, shape.max_roots);
    std::uniform_int_distribution<int> mult_dist(1, shape.max_multiplicity);
    const int cap = family == Family::algebraic ? shape.max_degree : 2 * shape.max_degree;
    for (;;) {
        const int m = roots_dist(rng);
        std::vector<int> mult(static_cast<std::size_t>(m));
        int total = 0;
        for (auto &a : mult) {
            a = mult_dist(rng);
            total += a;
        }
        if (family != Family::algebraic && total % 2 != 0) {
            // Fix parity on the last root without leaving [1, max_multiplicity].
            const int fix = mult.back() < shape.max_multiplicity ? 1 : -1;
            mult.back() += fix;
            total += fix;
        }
        if (total > cap || mult.back() < 1) {
            continue;
        }
        return RootConfiguration(separated_points(rng, m, shape.lo, shape.hi, shape.min_gap), std::move(mult));
    }
}

// Exact roots shifted by independent uniform offsets in [-radius, radius].
inline std::vector<Real> perturbed(std::mt19937_64 &rng, const std::vector<Real> &roots, const Real &radius)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Real> out;
    out.reserve(roots.size());
    for (const auto &r : roots) {
        out.push_back(r + radius * Real(u(rng)));
    }
    return out;
}

} // namespace multiroot::testing

#endif
