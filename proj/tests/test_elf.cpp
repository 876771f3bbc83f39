#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cudg/elf.hpp"

using namespace cudg;

TEST_CASE("targets split by adjacency") {
    // path 0-1, lone vertex 2: pairs (0,1) adjacent, (0,2),(1,2) not
    Graph g(3, {{0, 1}});
    DomainParams params;
    ElfState s = build_targets(g, params, 0.1);

    REQUIRE(s.vt_min.size() == 3);
    CHECK(s.vt_min[0] == doctest::Approx(16.0));        // d_min^2
    CHECK(s.vt_max[0] == doctest::Approx(105.2676));    // d_adj^2
    CHECK(s.vt_min[1] == doctest::Approx(107.3296));    // (10.26 + 0.1)^2
    CHECK(s.vt_max[1] == doctest::Approx(10000.0));     // (2L)^2
    CHECK(s.vt_min[2] == s.vt_min[1]);
    CHECK(s.alpha == 0.1);

    ElfState wide = build_targets(g, params, 5.0);
    CHECK(wide.vt_min[1] == doctest::Approx((10.26 + 5.0) * (10.26 + 5.0)));
    CHECK(wide.vt_min[0] == 16.0);  // adjacent targets don't move with alpha

    Graph k4 = complete_graph(4);
    ElfState all_adj = build_targets(k4, params, 0.1);
    for (double t : all_adj.vt_min) CHECK(t == 16.0);
    for (double t : all_adj.vt_max) CHECK(t == doctest::Approx(105.2676));

    CHECK_THROWS_AS(build_targets(g, params, 0.05), std::invalid_argument);  // below epsilon
}

TEST_CASE("loss value examples") {
    Graph g(2, {{0, 1}});
    DomainParams params;
    ElfState s = build_targets(g, params, 0.1);

    // squared distance 25: inside [16, 105.2676] -> zero loss
    auto [l0, d0] = elf({25.0}, s);
    CHECK(l0 == 0.0);
    CHECK(d0[0] == 0.0);

    // squared distance 121: over the upper target by 15.7324
    auto [l1, d1] = elf({121.0}, s);
    CHECK(l1 == doctest::Approx(15.7324));
    CHECK(d1[0] == doctest::Approx(1.0));

    // squared distance 9: under the lower target by 7
    auto [l2, d2] = elf({9.0}, s);
    CHECK(l2 == doctest::Approx(7.0));
    CHECK(d2[0] == doctest::Approx(-1.0));

    CHECK_THROWS_AS(elf({1.0, 2.0}, s), std::invalid_argument);
}

TEST_CASE("loss is zero exactly when no pair constraint is violated") {
    DomainParams params;
    std::mt19937_64 rng(515);
    std::uniform_real_distribution<double> coord(-45.0, 45.0);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        Graph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2 == 0) g.add_edge(i, j);

        Embedding emb(n, 2);
        for (double& c : emb.coords) c = coord(rng);

        double alpha = params.epsilon;
        ElfState s = build_targets(g, params, alpha);
        std::vector<double> v(pair_count(n));
        std::size_t k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++k) {
                double dx = emb.at(i, 0) - emb.at(j, 0);
                double dy = emb.at(i, 1) - emb.at(j, 1);
                v[k] = dx * dx + dy * dy;
            }
        auto [loss, grad] = elf(v, s);

        // alpha == epsilon makes the loss thresholds coincide with the
        // feasibility windows, so zero loss must match zero pair violations.
        DomainParams p = params;
        FeasibilityReport rep = check_embedding(g, emb, p);
        CHECK((loss == 0.0) == (rep.violation_count() == 0));
        for (std::size_t i = 0; i < grad.size(); ++i)
            if (grad[i] != 0.0) CHECK(loss > 0.0);
    }
}

TEST_CASE("alpha grows only on strictly better margins") {
    Graph g(3, {{0, 1}});
    DomainParams params;
    ElfState s = build_targets(g, params, params.epsilon);

    FeasibilityReport rep;
    rep.feasible = true;
    rep.d_adj = 8.0;
    rep.d_nadj = 12.0;

    CHECK(update_alpha(s, rep, g, params));
    CHECK(s.alpha == doctest::Approx(12.0 - 10.26));
    CHECK(s.vt_min[1] == doctest::Approx(12.0 * 12.0));  // (d_adj + alpha)^2 = d_nadj^2
    CHECK(s.vt_min[0] == 16.0);

    // same margin again: no strict improvement
    CHECK_FALSE(update_alpha(s, rep, g, params));
    CHECK(s.alpha == doctest::Approx(1.74));

    // worse margin: unchanged
    FeasibilityReport worse = rep;
    worse.d_nadj = 11.0;
    CHECK_FALSE(update_alpha(s, worse, g, params));
    CHECK(s.alpha == doctest::Approx(1.74));

    // better margin: grows again
    FeasibilityReport better = rep;
    better.d_nadj = 20.0;
    CHECK(update_alpha(s, better, g, params));
    CHECK(s.alpha == doctest::Approx(20.0 - 10.26));

    FeasibilityReport infeasible = rep;
    infeasible.feasible = false;
    CHECK_THROWS_AS(update_alpha(s, infeasible, g, params), std::logic_error);
}

TEST_CASE("margin at the smallest legal separation keeps the floor value") {
    Graph g(3, {{0, 1}});
    DomainParams params;
    ElfState s = build_targets(g, params, params.epsilon);

    // d_nadj exactly at the boundary d_adj + epsilon: candidate equals the
    // current floor, so nothing improves
    FeasibilityReport rep;
    rep.feasible = true;
    rep.d_adj = 8.0;
    rep.d_nadj = 10.26 + 0.1;
    CHECK_FALSE(update_alpha(s, rep, g, params));
    CHECK(s.alpha == params.epsilon);

    // even closer: the floor still applies
    FeasibilityReport close = rep;
    close.d_nadj = 10.30;
    CHECK_FALSE(update_alpha(s, close, g, params));
    CHECK(s.alpha == params.epsilon);
}

TEST_CASE("raising alpha tightens the non-adjacent penalty monotonically") {
    Graph g(3, {{0, 1}});
    DomainParams params;

    // squared non-adjacent distances that violate increasingly strict floors
    std::vector<double> v = {25.0, 120.0, 130.0};
    double prev = -1.0;
    for (double alpha : {0.1, 0.5, 1.0, 2.0, 4.0}) {
        ElfState s = build_targets(g, params, alpha);
        auto [loss, grad] = elf(v, s);
        CHECK(loss >= prev);
        prev = loss;
    }
}
