#include "doctest.h"

#include <cmath>
#include <limits>
#include <memory>

#include "dcpso/benchmarks.hpp"
#include "dcpso/errors.hpp"
#include "dcpso/swarm.hpp"

using namespace dcpso;

namespace {

ObjectiveFunction counted(ObjectiveFunction f, std::shared_ptr<long> counter) {
    auto inner = f.evaluate;
    f.evaluate = [inner, counter](std::span<const double> x) {
        ++*counter;
        return inner(x);
    };
    return f;
}

SubSwarm sub_with_best(std::vector<double> pos, double fitness) {
    SubSwarm s;
    s.best.position = std::move(pos);
    s.best.fitness = fitness;
    return s;
}

} // namespace

TEST_CASE("search space construction and validation") {
    const SearchSpace space = make_search_space(3, -100.0, 100.0);
    CHECK(space.dimension == 3);
    CHECK(space.lower[0] == -100.0);
    CHECK(space.upper[2] == 100.0);
    // velocity cap defaults to 20% of the box extent
    for (double v : space.v_max)
        CHECK(v == doctest::Approx(40.0));
    CHECK_NOTHROW(space.validate());

    CHECK_THROWS_AS(make_search_space(0, -1.0, 1.0).validate(), ConfigError);
    CHECK_THROWS_AS(make_search_space({0.0, 0.0}, {1.0, 0.0}).validate(), ConfigError);
    CHECK_THROWS_AS(make_search_space({2.0}, {1.0}).validate(), ConfigError);

    SearchSpace ragged = make_search_space(2, 0.0, 1.0);
    ragged.v_max.pop_back();
    CHECK_THROWS_AS(ragged.validate(), ConfigError);
}

TEST_CASE("fitness ordering treats non-finite values as worst") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(fitness_less(1.0, 2.0));
    CHECK_FALSE(fitness_less(2.0, 1.0));
    CHECK_FALSE(fitness_less(1.0, 1.0));
    CHECK(fitness_less(inf, nan));
    CHECK(fitness_less(1.0, nan));
    CHECK_FALSE(fitness_less(nan, 1.0));
    CHECK_FALSE(fitness_less(nan, nan));
}

TEST_CASE("cell division produces identical labeled pairs") {
    const ObjectiveFunction sphere = make_base("sphere", 5);
    auto count = std::make_shared<long>(0);
    const ObjectiveFunction f = counted(sphere, count);
    Rng rng(42);

    const SwarmState state = cell_division_init(f.bounds, 7, f, rng);

    CHECK(state.subs.size() == 7);
    CHECK(state.evaluations == 7);
    CHECK(*count == 7); // one evaluation per seed, the twin reuses it

    double best_seen = std::numeric_limits<double>::infinity();
    for (const SubSwarm& sub : state.subs) {
        CHECK(sub.particle_non_g.label == ChannelKind::NonG);
        CHECK(sub.particle_g.label == ChannelKind::G);
        CHECK(sub.particle_non_g.position == sub.particle_g.position);
        CHECK(sub.particle_non_g.velocity == sub.particle_g.velocity);
        CHECK(sub.particle_non_g.fitness == sub.particle_g.fitness);
        CHECK(sub.best.position == sub.particle_non_g.position);
        CHECK(sub.best.fitness == sub.particle_non_g.fitness);
        CHECK(sub.best.fitness == doctest::Approx(sphere(sub.best.position)));
        CHECK_FALSE(sub.exemplar_valid);
        CHECK(sub.searches == 0);
        CHECK_FALSE(sub.non_g_improved);
        for (std::size_t d = 0; d < 5; ++d) {
            CHECK(sub.particle_non_g.position[d] >= f.bounds.lower[d]);
            CHECK(sub.particle_non_g.position[d] <= f.bounds.upper[d]);
            CHECK(std::fabs(sub.particle_non_g.velocity[d]) <= f.bounds.v_max[d]);
        }
        best_seen = std::min(best_seen, sub.best.fitness);
    }
    CHECK(state.best.fitness == best_seen);

    CHECK_THROWS_AS(cell_division_init(f.bounds, 1, f, rng), ConfigError);
}

TEST_CASE("cell division is seed deterministic") {
    const ObjectiveFunction f = make_base("rastrigin", 4);
    Rng a(7), b(7), c(8);
    const SwarmState sa = cell_division_init(f.bounds, 5, f, a);
    const SwarmState sb = cell_division_init(f.bounds, 5, f, b);
    const SwarmState sc = cell_division_init(f.bounds, 5, f, c);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(sa.subs[i].best.position == sb.subs[i].best.position);
        CHECK(sa.subs[i].best.fitness == sb.subs[i].best.fitness);
    }
    CHECK(sa.best.position != sc.best.position);
}

TEST_CASE("personal best replaces on improvement and on ties") {
    SubSwarm sub = sub_with_best({1.0, 1.0}, 5.0);

    SUBCASE("strict improvement") {
        const std::vector<double> cand{0.5, 0.5};
        CHECK(update_personal_best(sub, cand, 3.0));
        CHECK(sub.best.fitness == 3.0);
        CHECK(sub.best.position == cand);
    }
    SUBCASE("equal fitness still moves the best, enabling plateau drift") {
        const std::vector<double> cand{2.0, 2.0};
        CHECK(update_personal_best(sub, cand, 5.0));
        CHECK(sub.best.position == cand);
    }
    SUBCASE("worse candidate is ignored") {
        const std::vector<double> cand{9.0, 9.0};
        CHECK_FALSE(update_personal_best(sub, cand, 7.0));
        CHECK(sub.best.fitness == 5.0);
        CHECK(sub.best.position == std::vector<double>{1.0, 1.0});
    }
    SUBCASE("non-finite candidates are rejected") {
        const std::vector<double> cand{0.0, 0.0};
        CHECK_FALSE(update_personal_best(sub, cand, std::numeric_limits<double>::quiet_NaN()));
        CHECK_FALSE(update_personal_best(sub, cand, std::numeric_limits<double>::infinity()));
        CHECK_FALSE(update_personal_best(sub, cand, -std::numeric_limits<double>::infinity()));
        CHECK(sub.best.fitness == 5.0);
    }
}

TEST_CASE("personal best accepts a finite candidate over an unset best") {
    SubSwarm sub = sub_with_best({0.0}, std::numeric_limits<double>::infinity());
    const std::vector<double> cand{1.0};
    CHECK(update_personal_best(sub, cand, 123.0));
    CHECK(sub.best.fitness == 123.0);
}

TEST_CASE("global best promotes only strict improvements") {
    SwarmState state;
    state.space = make_search_space(2, -1.0, 1.0);

    SubSwarm first = sub_with_best({0.1, 0.1}, 4.0);
    CHECK(update_global_best(state, first));
    CHECK(state.best.fitness == 4.0);

    SubSwarm tie = sub_with_best({0.9, 0.9}, 4.0);
    CHECK_FALSE(update_global_best(state, tie));
    CHECK(state.best.position == first.best.position);

    SubSwarm better = sub_with_best({0.0, 0.0}, 3.5);
    CHECK(update_global_best(state, better));
    CHECK(state.best.fitness == 3.5);

    SubSwarm worse = sub_with_best({0.2, 0.2}, 9.0);
    CHECK_FALSE(update_global_best(state, worse));
    CHECK(state.best.fitness == 3.5);
}

TEST_CASE("coefficient schedules interpolate in evaluations") {
    const ScheduleParams params; // 0.9->0.4, 2.5->0.5, 0.5->2.5

    const Coefficients start = schedule_at(params, 0, 1000);
    CHECK(start.w == doctest::Approx(0.9));
    CHECK(start.c1 == doctest::Approx(2.5));
    CHECK(start.c2 == doctest::Approx(0.5));

    const Coefficients mid = schedule_at(params, 500, 1000);
    CHECK(mid.w == doctest::Approx(0.65));
    CHECK(mid.c1 == doctest::Approx(1.5));
    CHECK(mid.c2 == doctest::Approx(1.5));

    const Coefficients end = schedule_at(params, 1000, 1000);
    CHECK(end.w == doctest::Approx(0.4));
    CHECK(end.c1 == doctest::Approx(0.5));
    CHECK(end.c2 == doctest::Approx(2.5));

    // clamped outside the budget
    const Coefficients over = schedule_at(params, 2000, 1000);
    CHECK(over.w == doctest::Approx(0.4));
    CHECK(over.c2 == doctest::Approx(2.5));
}

TEST_CASE("rng streams are reproducible and well ranged") {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform01();
        CHECK(u == b.uniform01());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    Rng c(5);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t k = c.index(7);
        CHECK(k < 7);
    }
    // normal() should produce a roughly centered spread
    Rng d(9);
    double sum = 0.0, sum2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double z = d.normal();
        sum += z;
        sum2 += z * z;
    }
    CHECK(std::fabs(sum / n) < 0.05);
    CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.05));
}
