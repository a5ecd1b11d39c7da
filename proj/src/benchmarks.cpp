#include "dcpso/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <regex>
#include <string_view>

#include "dcpso/errors.hpp"
#include "dcpso/rng.hpp"
#include "dcpso/swarm.hpp"

namespace dcpso {

const char* category_name(FunctionCategory c) {
    switch (c) {
    case FunctionCategory::Unimodal: return "unimodal";
    case FunctionCategory::SimpleMultimodal: return "simple-multimodal";
    case FunctionCategory::ComplexMultimodal: return "complex-multimodal";
    }
    throw InternalError("category_name: unknown category");
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double sphere_fn(std::span<const double> z) {
    double s = 0.0;
    for (double v : z)
        s += v * v;
    return s;
}

double bent_cigar_fn(std::span<const double> z) {
    if (z.empty())
        return 0.0;
    double s = 0.0;
    for (std::size_t d = 1; d < z.size(); ++d)
        s += z[d] * z[d];
    return z[0] * z[0] + 1.0e6 * s;
}

double rosenbrock_fn(std::span<const double> z) {
    double s = 0.0;
    for (std::size_t d = 0; d + 1 < z.size(); ++d) {
        const double a = z[d + 1] - z[d] * z[d];
        const double b = z[d] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double rastrigin_fn(std::span<const double> z) {
    double s = 0.0;
    for (double v : z)
        s += v * v - 10.0 * std::cos(two_pi * v) + 10.0;
    return s;
}

// Non-continuous variant: coordinates beyond 0.5 snap to a half-integer grid.
double ncrastrigin_fn(std::span<const double> z) {
    double s = 0.0;
    for (double v : z) {
        const double y = std::fabs(v) < 0.5 ? v : std::round(2.0 * v) / 2.0;
        s += y * y - 10.0 * std::cos(two_pi * y) + 10.0;
    }
    return s;
}

// Modified Schwefel: the classic sine landscape inside [-500, 500], with a
// wrapped + quadratically penalized continuation outside so rotations stay
// well defined. Minimum 0 at 420.9687462275036 per coordinate.
double schwefel_fn(std::span<const double> z) {
    if (z.empty())
        return 0.0;
    const double n = static_cast<double>(z.size());
    double f = 0.0;
    for (double zi : z) {
        if (zi > 500.0) {
            const double w = 500.0 - std::fmod(zi, 500.0);
            const double t = (zi - 500.0) / 100.0;
            f -= w * std::sin(std::sqrt(std::fabs(w)));
            f += t * t / n;
        } else if (zi < -500.0) {
            const double w = std::fmod(std::fabs(zi), 500.0) - 500.0;
            const double t = (zi + 500.0) / 100.0;
            f -= w * std::sin(std::sqrt(std::fabs(w)));
            f += t * t / n;
        } else {
            f -= zi * std::sin(std::sqrt(std::fabs(zi)));
        }
    }
    return f + 418.9828872724338 * n;
}

double ackley_fn(std::span<const double> z) {
    if (z.empty())
        return 0.0;
    const double n = static_cast<double>(z.size());
    double sq = 0.0, cs = 0.0;
    for (double v : z) {
        sq += v * v;
        cs += std::cos(two_pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

double griewank_fn(std::span<const double> z) {
    double s = 0.0, p = 1.0;
    for (std::size_t d = 0; d < z.size(); ++d) {
        s += z[d] * z[d];
        p *= std::cos(z[d] / std::sqrt(static_cast<double>(d + 1)));
    }
    return s / 4000.0 - p + 1.0;
}

constexpr double schwefel_optimum = 420.9687462275036;

struct BaseDef {
    const char* name;
    double (*fn)(std::span<const double>);
    double lo, hi;
    double optimum_coord;
    FunctionCategory category;
    const char* summary;
};

constexpr BaseDef base_defs[] = {
    {"sphere", sphere_fn, -100.0, 100.0, 0.0, FunctionCategory::Unimodal,
     "sum of squares; the smooth sanity check"},
    {"bent-cigar", bent_cigar_fn, -100.0, 100.0, 0.0, FunctionCategory::Unimodal,
     "ill-conditioned quadratic ridge (1e6 condition)"},
    {"rosenbrock", rosenbrock_fn, -100.0, 100.0, 1.0, FunctionCategory::SimpleMultimodal,
     "curved valley; optimum at all-ones"},
    {"rastrigin", rastrigin_fn, -100.0, 100.0, 0.0, FunctionCategory::SimpleMultimodal,
     "regular grid of local minima"},
    {"ncrastrigin", ncrastrigin_fn, -100.0, 100.0, 0.0, FunctionCategory::SimpleMultimodal,
     "rastrigin with snapped (non-continuous) coordinates"},
    {"schwefel", schwefel_fn, -500.0, 500.0, schwefel_optimum, FunctionCategory::SimpleMultimodal,
     "deceptive sine landscape; optimum far from the center"},
    {"ackley", ackley_fn, -100.0, 100.0, 0.0, FunctionCategory::SimpleMultimodal,
     "nearly flat shell around a deep funnel"},
    {"griewank", griewank_fn, -100.0, 100.0, 0.0, FunctionCategory::SimpleMultimodal,
     "quadratic bowl overlaid with an oscillating product"},
};

const BaseDef* find_base(const std::string& name) {
    for (const BaseDef& def : base_defs)
        if (name == def.name)
            return &def;
    return nullptr;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// The landscape must be a function of (base name, user seed) alone.
std::uint64_t transform_stream_seed(std::string_view base_name, std::uint64_t seed) {
    return fnv1a(base_name) ^ (0x9e3779b97f4a7c15ULL * (seed + 1));
}

std::vector<double> random_rotation(std::size_t dim, Rng& rng) {
    std::vector<double> m(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        double* row = m.data() + i * dim;
        while (true) {
            for (std::size_t d = 0; d < dim; ++d)
                row[d] = rng.normal();
            // orthogonalize twice; once leaves measurable residue on
            // unlucky draws
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t j = 0; j < i; ++j) {
                    const double* prev = m.data() + j * dim;
                    double dot = 0.0;
                    for (std::size_t d = 0; d < dim; ++d)
                        dot += row[d] * prev[d];
                    for (std::size_t d = 0; d < dim; ++d)
                        row[d] -= dot * prev[d];
                }
            }
            double norm = 0.0;
            for (std::size_t d = 0; d < dim; ++d)
                norm += row[d] * row[d];
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (std::size_t d = 0; d < dim; ++d)
                    row[d] /= norm;
                break;
            }
        }
    }
    return m;
}

void check_rotation(const std::vector<double>& r, std::size_t dim) {
    if (r.size() != dim * dim)
        throw ConfigError("transform: rotation matrix size does not match the dimension");
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            double dot = 0.0;
            for (std::size_t d = 0; d < dim; ++d)
                dot += r[i * dim + d] * r[j * dim + d];
            const double expect = i == j ? 1.0 : 0.0;
            if (std::fabs(dot - expect) > 1e-10)
                throw ConfigError("transform: rotation matrix is not orthogonal");
        }
    }
}

} // namespace

ObjectiveFunction make_base(const std::string& name, std::size_t dimension) {
    const BaseDef* def = find_base(name);
    if (def == nullptr)
        throw ConfigError("unknown base function: " + name);
    if (dimension < 1)
        throw ConfigError("base function: dimension must be at least 1");
    if (name == "rosenbrock" && dimension < 2)
        throw ConfigError("rosenbrock needs dimension >= 2");

    ObjectiveFunction fn;
    fn.name = def->name;
    fn.dimension = dimension;
    fn.bounds = make_search_space(dimension, def->lo, def->hi);
    fn.f_star = 0.0;
    fn.optimum.assign(dimension, def->optimum_coord);
    fn.category = def->category;
    fn.evaluate = [f = def->fn](std::span<const double> x) { return f(x); };
    return fn;
}

TransformSpec make_transform(const ObjectiveFunction& base, std::uint64_t seed) {
    const std::size_t dim = base.dimension;
    Rng rng(transform_stream_seed(base.name, seed));
    TransformSpec spec;
    spec.seed = seed;
    spec.shift.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        const double lo = base.bounds.lower[d];
        const double hi = base.bounds.upper[d];
        const double margin = 0.1 * (hi - lo);
        spec.shift[d] = rng.uniform(lo + margin, hi - margin);
    }
    spec.rotation = random_rotation(dim, rng);
    return spec;
}

ObjectiveFunction shift_rotate(const ObjectiveFunction& base, const TransformSpec& spec,
                               std::string name) {
    const std::size_t dim = base.dimension;
    if (spec.shift.size() != dim)
        throw ConfigError("transform: shift vector size does not match the dimension");
    check_rotation(spec.rotation, dim);
    for (std::size_t d = 0; d < dim; ++d)
        if (!(spec.shift[d] > base.bounds.lower[d] && spec.shift[d] < base.bounds.upper[d]))
            throw ConfigError("transform: shift must lie strictly inside the bounds");

    ObjectiveFunction fn;
    fn.name = name.empty() ? base.name + "-sr" : std::move(name);
    fn.dimension = dim;
    fn.bounds = base.bounds;
    fn.f_star = base.f_star;
    fn.optimum = spec.shift;
    fn.category = base.category;
    // evaluate base at R(x - shift), translated so the base optimum lands
    // exactly at x = shift
    fn.evaluate = [inner = base.evaluate, rot = spec.rotation, shift = spec.shift,
                   anchor = base.optimum, dim](std::span<const double> x) {
        thread_local std::vector<double> delta, z;
        delta.assign(x.begin(), x.end());
        for (std::size_t d = 0; d < dim; ++d)
            delta[d] -= shift[d];
        z.assign(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            const double* row = rot.data() + i * dim;
            double acc = 0.0;
            for (std::size_t d = 0; d < dim; ++d)
                acc += row[d] * delta[d];
            z[i] = acc + anchor[i];
        }
        return inner(z);
    };
    return fn;
}

std::vector<double> composition_weights(std::span<const double> x,
                                        std::span<const CompositionComponent> components) {
    const std::size_t k = components.size();
    std::vector<double> w(k, 0.0);
    std::vector<double> dist(k, 0.0);
    std::vector<double> expo(k, 0.0);

    for (std::size_t i = 0; i < k; ++i) {
        const CompositionComponent& c = components[i];
        const std::vector<double>& o = c.function.optimum;
        double d2 = 0.0;
        for (std::size_t d = 0; d < x.size(); ++d) {
            const double diff = x[d] - o[d];
            d2 += diff * diff;
        }
        dist[i] = std::sqrt(d2);
        if (dist[i] == 0.0) {
            // sitting on a component's optimum: it takes everything
            w[i] = 1.0;
            return w;
        }
        expo[i] = -d2 / (2.0 * static_cast<double>(x.size()) * c.sigma * c.sigma);
    }

    const double top = *std::max_element(expo.begin(), expo.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        w[i] = std::exp(expo[i] - top) / dist[i];
        sum += w[i];
    }
    for (double& v : w)
        v /= sum;
    return w;
}

ObjectiveFunction make_composition(std::vector<CompositionComponent> components, std::string name) {
    if (components.size() < 2)
        throw ConfigError("composition: need at least two components");
    const std::size_t dim = components.front().function.dimension;
    for (const CompositionComponent& c : components) {
        if (c.function.dimension != dim)
            throw ConfigError("composition: components must share one dimension");
        if (c.function.optimum.size() != dim)
            throw ConfigError("composition: every component needs a known optimum");
        if (!(c.sigma > 0.0) || !std::isfinite(c.lambda) || !std::isfinite(c.bias))
            throw ConfigError("composition: sigma must be positive, lambda and bias finite");
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < components.size(); ++i)
        if (components[i].bias < components[best].bias)
            best = i;

    ObjectiveFunction fn;
    fn.name = name.empty() ? "composition" : std::move(name);
    fn.dimension = dim;
    fn.bounds = components.front().function.bounds;
    fn.f_star = components[best].bias;
    fn.optimum = components[best].function.optimum;
    fn.category = FunctionCategory::ComplexMultimodal;

    auto shared = std::make_shared<const std::vector<CompositionComponent>>(std::move(components));
    fn.evaluate = [shared](std::span<const double> x) {
        const std::vector<CompositionComponent>& comps = *shared;
        const std::vector<double> w = composition_weights(x, comps);
        double value = 0.0;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (w[i] == 0.0)
                continue;
            const CompositionComponent& c = comps[i];
            value += w[i] * (c.lambda * c.function.evaluate(x) + c.bias);
        }
        return value;
    };
    return fn;
}

namespace {

struct HybridPiece {
    double (*fn)(std::span<const double>);
    double anchor; ///< added to the chunk so the piece's optimum sits at zero
    double ratio;
};

// Seeded permutation + ratio partition of the rotated, shifted input; each
// chunk is scored by its own kernel. Optimum at the shift, value 0.
ObjectiveFunction make_hybrid(const std::vector<HybridPiece>& pieces, std::size_t dim,
                              std::uint64_t seed, const std::string& id) {
    ObjectiveFunction shell = make_base("sphere", dim); // borrows the standard box
    TransformSpec spec = make_transform(shell, seed ^ fnv1a(id));

    Rng rng(transform_stream_seed(id, seed));
    std::vector<std::size_t> perm(dim);
    for (std::size_t d = 0; d < dim; ++d)
        perm[d] = d;
    for (std::size_t d = dim; d > 1; --d)
        std::swap(perm[d - 1], perm[rng.index(d)]);

    std::vector<std::size_t> sizes(pieces.size(), 0);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        sizes[i] = static_cast<std::size_t>(std::floor(pieces[i].ratio * static_cast<double>(dim)));
        assigned += sizes[i];
    }
    for (std::size_t i = 0; assigned < dim; i = (i + 1) % pieces.size()) {
        ++sizes[i];
        ++assigned;
    }

    ObjectiveFunction fn;
    fn.name = id;
    fn.dimension = dim;
    fn.bounds = shell.bounds;
    fn.f_star = 0.0;
    fn.optimum = spec.shift;
    fn.category = FunctionCategory::ComplexMultimodal;
    fn.evaluate = [pieces, sizes, perm, rot = spec.rotation, shift = spec.shift,
                   dim](std::span<const double> x) {
        thread_local std::vector<double> delta, z, chunk;
        delta.assign(x.begin(), x.end());
        for (std::size_t d = 0; d < dim; ++d)
            delta[d] -= shift[d];
        z.assign(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            const double* row = rot.data() + i * dim;
            double acc = 0.0;
            for (std::size_t d = 0; d < dim; ++d)
                acc += row[d] * delta[d];
            z[i] = acc;
        }
        double value = 0.0;
        std::size_t offset = 0;
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            chunk.assign(sizes[p], 0.0);
            for (std::size_t d = 0; d < sizes[p]; ++d)
                chunk[d] = z[perm[offset + d]] + pieces[p].anchor;
            value += pieces[p].fn(chunk);
            offset += sizes[p];
        }
        return value;
    };
    return fn;
}

ObjectiveFunction make_registered_hybrid(int kind, std::size_t dim, std::uint64_t seed,
                                         const std::string& id) {
    std::vector<HybridPiece> pieces;
    if (kind == 3) {
        pieces = {{rastrigin_fn, 0.0, 0.3}, {griewank_fn, 0.0, 0.3}, {schwefel_fn, schwefel_optimum, 0.4}};
    } else {
        pieces = {{bent_cigar_fn, 0.0, 0.2},
                  {rastrigin_fn, 0.0, 0.2},
                  {griewank_fn, 0.0, 0.2},
                  {ackley_fn, 0.0, 0.2},
                  {schwefel_fn, schwefel_optimum, 0.2}};
    }
    return make_hybrid(pieces, dim, seed, id);
}

ObjectiveFunction make_registered_composition(int kind, std::size_t dim, std::uint64_t seed,
                                              const std::string& id) {
    struct Part {
        const char* base;
        double sigma, lambda, bias;
    };
    std::vector<Part> parts;
    if (kind == 4) {
        parts = {{"rastrigin", 10.0, 1.0, 0.0},
                 {"griewank", 20.0, 10.0, 100.0},
                 {"schwefel", 30.0, 1.0, 200.0},
                 {"ackley", 40.0, 10.0, 300.0}};
    } else {
        parts = {{"rastrigin", 10.0, 1.0, 0.0},
                 {"sphere", 20.0, 1e-3, 100.0},
                 {"bent-cigar", 30.0, 1e-6, 200.0},
                 {"griewank", 40.0, 10.0, 300.0},
                 {"ackley", 50.0, 10.0, 400.0},
                 {"schwefel", 60.0, 1.0, 500.0}};
    }
    std::vector<CompositionComponent> components;
    components.reserve(parts.size());
    std::uint64_t child = seed;
    for (const Part& p : parts) {
        ObjectiveFunction base = make_base(p.base, dim);
        ObjectiveFunction moved = shift_rotate(base, make_transform(base, child));
        components.push_back({std::move(moved), p.sigma, p.lambda, p.bias});
        child = child * 1000003ULL + 17ULL;
    }
    return make_composition(std::move(components), id);
}

} // namespace

std::vector<FunctionInfo> list_functions() {
    std::vector<FunctionInfo> out;
    for (const BaseDef& def : base_defs)
        out.push_back({def.name, def.category, def.summary});
    for (const BaseDef& def : base_defs)
        out.push_back({std::string(def.name) + "-sr(seed=K)", def.category,
                       std::string("shifted, rotated ") + def.name + "; seed optional"});
    out.push_back({"hybrid-3(seed=K)", FunctionCategory::ComplexMultimodal,
                   "rastrigin + griewank + schwefel on permuted coordinate blocks"});
    out.push_back({"hybrid-5(seed=K)", FunctionCategory::ComplexMultimodal,
                   "five-kernel block hybrid (cigar, rastrigin, griewank, ackley, schwefel)"});
    out.push_back({"composition-4(seed=K)", FunctionCategory::ComplexMultimodal,
                   "four shifted-rotated components blended by distance weights"});
    out.push_back({"composition-6(seed=K)", FunctionCategory::ComplexMultimodal,
                   "six shifted-rotated components blended by distance weights"});
    return out;
}

ObjectiveFunction make_function(const std::string& id, std::size_t dimension) {
    if (const BaseDef* def = find_base(id); def != nullptr)
        return make_base(id, dimension);

    static const std::regex sr_re(R"(^([a-z0-9-]+)-sr(?:\(seed=([0-9]+)\))?$)");
    static const std::regex family_re(R"(^(hybrid|composition)-([0-9]+)(?:\(seed=([0-9]+)\))?$)");

    const auto parse_seed = [&](const std::ssub_match& sm) -> std::uint64_t {
        if (!sm.matched)
            return 1;
        try {
            return std::stoull(sm.str());
        } catch (const std::exception&) {
            throw ConfigError("function id " + id + ": seed out of range");
        }
    };

    std::smatch m;
    if (std::regex_match(id, m, sr_re)) {
        const std::string base_name = m[1].str();
        if (find_base(base_name) == nullptr)
            throw ConfigError("unknown function id: " + id);
        ObjectiveFunction base = make_base(base_name, dimension);
        return shift_rotate(base, make_transform(base, parse_seed(m[2])), id);
    }
    if (std::regex_match(id, m, family_re)) {
        const std::string family = m[1].str();
        const std::string kind_text = m[2].str();
        const int kind = kind_text.size() <= 2 ? std::stoi(kind_text) : -1;
        const std::uint64_t seed = parse_seed(m[3]);
        if (family == "hybrid" && (kind == 3 || kind == 5))
            return make_registered_hybrid(kind, dimension, seed, id);
        if (family == "composition" && (kind == 4 || kind == 6))
            return make_registered_composition(kind, dimension, seed, id);
    }
    throw ConfigError("unknown function id: " + id + " (try list-functions)");
}

} // namespace dcpso
