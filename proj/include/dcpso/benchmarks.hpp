#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dcpso/objective.hpp"

namespace dcpso {

/// Construct a base test function by name at the given dimension.
/// Known names: sphere, bent-cigar, rosenbrock, rastrigin, ncrastrigin,
/// schwefel, ackley, griewank. Bounds are [-100, 100]^D except schwefel
/// ([-500, 500]^D); every base has f_star = 0.
ObjectiveFunction make_base(const std::string& name, std::size_t dimension);

/// Draw a seeded transform for a base function: a shift strictly inside
/// the bounds (within the central 80% of the box) and a random rotation
/// obtained by Gram-Schmidt on a Gaussian matrix.
TransformSpec make_transform(const ObjectiveFunction& base, std::uint64_t seed);

/// Apply a shift + rotation to a base function. The returned function
/// evaluates the base on R(x - shift) translated so the base's own optimum
/// lands at x = shift; bounds, category and f_star carry over. Validates
/// the transform's dimensions and that the rotation is orthogonal (1e-10).
ObjectiveFunction shift_rotate(const ObjectiveFunction& base, const TransformSpec& spec,
                               std::string name = {});

struct CompositionComponent {
    ObjectiveFunction function; ///< component with a known optimum
    double sigma = 10.0;        ///< reach of the component's weight kernel
    double lambda = 1.0;        ///< value scale
    double bias = 0.0;          ///< value offset at the component's optimum
};

/// Normalized mixture weights of the components at x. A component whose
/// optimum coincides with x takes the full weight; otherwise weights are
/// exp(-d^2 / (2 D sigma^2)) / d, normalized to sum 1.
std::vector<double> composition_weights(std::span<const double> x,
                                        std::span<const CompositionComponent> components);

/// Weighted mixture of shifted component functions,
/// value = sum_i w_i(x) (lambda_i f_i(x) + bias_i). Requires at least two
/// components of equal dimension; f_star is the smallest bias, attained at
/// that component's optimum.
ObjectiveFunction make_composition(std::vector<CompositionComponent> components,
                                   std::string name = {});

/// Everything the registry can construct, for `list-functions` output.
struct FunctionInfo {
    std::string id;      ///< exact id or id pattern (with "(seed=K)")
    FunctionCategory category = FunctionCategory::Unimodal;
    std::string summary;
};

std::vector<FunctionInfo> list_functions();

/// Construct any registered function by id at the given dimension.
/// Grammar: "<base>", "<base>-sr", "<base>-sr(seed=K)", "hybrid-3(seed=K)",
/// "hybrid-5(seed=K)", "composition-4(seed=K)", "composition-6(seed=K)"
/// (seed defaults to 1; the id alone determines the landscape).
/// Unknown ids throw ConfigError.
ObjectiveFunction make_function(const std::string& id, std::size_t dimension);

} // namespace dcpso
