#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "dcpso/types.hpp"

namespace dcpso {

enum class FunctionCategory { Unimodal, SimpleMultimodal, ComplexMultimodal };

const char* category_name(FunctionCategory c);

/// A black-box minimization target. `evaluate` must be pure and safe to
/// call concurrently from any worker thread. Reported errors are
/// evaluate(x) - f_star.
struct ObjectiveFunction {
    std::string name;
    std::size_t dimension = 0;
    SearchSpace bounds;
    double f_star = 0.0;
    /// A global minimizer; transforms and reports rely on it.
    std::vector<double> optimum;
    FunctionCategory category = FunctionCategory::Unimodal;
    std::function<double(std::span<const double>)> evaluate;

    double operator()(std::span<const double> x) const { return evaluate(x); }
    double operator()(std::initializer_list<double> x) const {
        return evaluate(std::span<const double>(x.begin(), x.size()));
    }
};

/// Seeded shift + rotation pair applied to a base function.
struct TransformSpec {
    std::vector<double> shift;    // strictly inside the base bounds
    std::vector<double> rotation; // row-major dimension x dimension, orthogonal
    std::uint64_t seed = 0;
};

} // namespace dcpso
