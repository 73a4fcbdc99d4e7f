#pragma once

// Deterministic, prefix-stable sampling of points, pairs and triples.
// Box domains use a seed-rotated Halton sequence, so any budget's sample
// set is a prefix of every larger budget's set and coverage is
// stratified. Finite domains use hashed uniform indices.

#include <cstdint>
#include <vector>

#include "perturbed/errors.hpp"
#include "perturbed/space.hpp"

namespace perturbed {

namespace detail {

inline constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                  41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
inline constexpr int kNumPrimes = sizeof(kPrimes) / sizeof(kPrimes[0]);

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double radical_inverse(int base, std::uint64_t i) {
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
        i /= static_cast<std::uint64_t>(base);
        f *= inv;
    }
    return r;
}

// Coordinate axis `axis` of sample i in [0,1), Cranley-Patterson rotated
// by the seed.
inline double sample_unit(std::uint64_t seed, std::uint64_t i, int axis) {
    const double shift = unit_double(splitmix64(seed ^ (0xa076'1d64'78bd'642fULL *
                                                        static_cast<std::uint64_t>(axis + 1))));
    double u;
    if (axis < kNumPrimes) {
        u = radical_inverse(kPrimes[axis], i + 1) + shift;
    } else {
        u = unit_double(splitmix64(seed ^ splitmix64(i) ^
                                   (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(axis)))) +
            shift;
    }
    u -= std::floor(u);
    return u;
}

}  // namespace detail

// Yields the k-th element of the deterministic sample tuple stream.
// `slot` distinguishes the members of a pair/triple so they draw from
// disjoint Halton axes.
inline SpaceElement sample_element(const Domain& domain, std::uint64_t seed, std::uint64_t i,
                                   int slot = 0) {
    if (domain.empty()) throw EmptyDomain("domain admits no elements");
    if (domain.is_finite()) {
        const std::uint64_t h =
            detail::splitmix64(seed ^ detail::splitmix64(i * 3 + static_cast<std::uint64_t>(slot)));
        return domain.element_at(h % domain.cardinality());
    }
    const Box& b = domain.box();
    const int n = static_cast<int>(b.lo.size());
    std::vector<double> coords(b.lo.size());
    for (int axis = 0; axis < n; ++axis) {
        const double u = detail::sample_unit(seed, i, slot * n + axis);
        coords[static_cast<std::size_t>(axis)] =
            b.lo[static_cast<std::size_t>(axis)] +
            u * (b.hi[static_cast<std::size_t>(axis)] - b.lo[static_cast<std::size_t>(axis)]);
    }
    return SpaceElement{std::move(coords), std::nullopt};
}

// Reflection of a box point through the box center. For a symmetric box
// [-a, a] this is x -> -x, where Kannan suprema typically sit.
inline SpaceElement reflect_through_center(const Box& box, const SpaceElement& x) {
    std::vector<double> coords(x.coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        coords[i] = box.lo[i] + box.hi[i] - x.coords[i];
    }
    return SpaceElement{std::move(coords), std::nullopt};
}

// Enumerates every element of a finite domain.
inline std::vector<SpaceElement> all_elements(const Domain& domain) {
    std::vector<SpaceElement> out;
    out.reserve(domain.cardinality());
    for (std::size_t i = 0; i < domain.cardinality(); ++i) out.push_back(domain.element_at(i));
    return out;
}

}  // namespace perturbed
