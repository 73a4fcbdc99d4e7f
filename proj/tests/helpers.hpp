#pragma once

// Shared construction helpers for the test suites.

#include <optional>
#include <string>
#include <vector>

#include "perturbed/perturbed.hpp"

namespace test_helpers {

using namespace perturbed;

inline PerturbedSpace make_space(const std::string& d_src, const std::string& p_src, Mode mode,
                                 double c, std::vector<double> lo, std::vector<double> hi) {
    PerturbedSpace space;
    const int dim = static_cast<int>(lo.size());
    space.domain = Domain(Box{std::move(lo), std::move(hi)});
    space.D = Bivariate(dsl::parse(d_src, dsl::Context::D, dim), d_src);
    space.P = Bivariate(dsl::parse(p_src, dsl::Context::P, dim), p_src);
    space.mode = mode;
    space.c = c;
    return space;
}

inline PerturbedSpace make_finite_space(const std::string& d_src, const std::string& p_src,
                                        Mode mode, double c,
                                        std::vector<std::vector<double>> embedding) {
    PerturbedSpace space;
    const int dim = static_cast<int>(embedding.front().size());
    space.domain = Domain(FiniteSet{std::move(embedding)});
    space.D = Bivariate(dsl::parse(d_src, dsl::Context::D, dim), d_src);
    space.P = Bivariate(dsl::parse(p_src, dsl::Context::P, dim), p_src);
    space.mode = mode;
    space.c = c;
    return space;
}

inline SelfMap make_map(const std::string& src, std::size_t dim = 1) {
    return SelfMap::parse({src}, dim);
}

inline SpaceElement pt(double v) { return SpaceElement{{v}, std::nullopt}; }

inline SpaceElement pt(std::vector<double> v) { return SpaceElement{std::move(v), std::nullopt}; }

}  // namespace test_helpers
