#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "qtiling/greedy.hpp"

using namespace qtiling;

namespace {

LatticeVector vec1(Coord a) {
    LatticeVector v = LatticeVector::zero(1);
    v[0] = a;
    return v;
}

LatticeVector vec2(Coord a, Coord b) {
    LatticeVector v = LatticeVector::zero(2);
    v[0] = a;
    v[1] = b;
    return v;
}

PointSet to_points(const std::vector<Coord>& xs) {
    PointSet out;
    for (Coord x : xs) out.push_back(vec1(x));
    canonicalize(out);
    return out;
}

}  // namespace

TEST_CASE("parameter selection and validation") {
    const GreedyParams a = default_params(2, 1);
    CHECK(a.r == 3);
    CHECK(a.L == 9);
    CHECK(a.D() == 6);
    CHECK(a.E() == 12);

    const GreedyParams b = default_params(1, 2);
    CHECK(b.r == 2);
    CHECK(b.L == 6);

    // minimality of the chosen r
    for (Coord N = 1; N <= 6; ++N)
        for (int d = 1; d <= 3; ++d) {
            const GreedyParams p = default_params(N, d);
            CHECK(p.r * p.r > N * N * d);
            CHECK((p.r - 1) * (p.r - 1) <= N * N * d);
            CHECK(p.L == 3 * p.r);
        }

    CHECK_THROWS_AS(validate_greedy_params(GreedyParams{0, 0, 3}, 1), std::invalid_argument);
    CHECK_THROWS_AS(validate_greedy_params(GreedyParams{0, 2, 5}, 1), std::invalid_argument);  // L < 3r
    CHECK_THROWS_AS(validate_greedy_params(GreedyParams{2, 2, 6}, 1), std::invalid_argument);  // r^2 <= N^2 d
    CHECK_THROWS_AS(validate_greedy_params(GreedyParams{1, 1, 3}, 0), std::invalid_argument);
    validate_greedy_params(GreedyParams{0, 2, 6}, 3);  // N = 0 skips the chain constraint
}

TEST_CASE("dependency radii") {
    CHECK(dependency_radius(5, 3, 3) == 17);
    CHECK(dependency_radius(5, 3, 1) == 5);
    CHECK(odometer_dependency_radius(5, 13) == 13);
    CHECK(odometer_dependency_radius(40, 13) == 40);
    CHECK_THROWS_AS(dependency_radius(-1, 3, 2), std::invalid_argument);
}

TEST_CASE("greedy window fixtures") {
    const GreedyParams params{0, 1, 3};
    {
        const OdometerSpec spec{1, {13}};
        const QuasiTilingWindow t0 = greedy_centers(spec, odometer_point(spec, vec1(0)), params, 13);
        CHECK(set_str(t0.centers) == "{(-13), (0), (13)}");

        const QuasiTilingWindow t5 = greedy_centers(spec, odometer_point(spec, vec1(5)), params, 13);
        CHECK(set_str(t5.centers) == "{(-5), (8)}");
    }
    {
        const OdometerSpec spec{1, {20}};
        const QuasiTilingWindow t = greedy_centers(spec, odometer_point(spec, vec1(0)), params, 20);
        CHECK(set_str(t.centers) == "{(-20), (-13), (0), (7), (20)}");
    }
}

TEST_CASE("greedy matches the literal set-builder, stage by stage") {
    const Coord L = 3;
    const GreedyParams params{0, 1, L};
    for (Coord m : {Coord{13}, Coord{20}}) {
        const OdometerSpec spec{1, {m}};
        const Coord W = 2 * m;  // two periods, so periodicity is exercised too
        for (Coord res = 0; res < m; ++res) {
            const SystemPoint x = odometer_point(spec, vec1(res));
            const oracles::DirectGreedy1d direct = oracles::direct_greedy_1d(m, res, L, W);

            const GreedyRun run = greedy_run(spec, x, params);
            CHECK(materialize_classes(run.classes(), m, W) == to_points(direct.final_centers));

            // prefix materialization: classes claimed by stages <= i agree
            // with the set-builder's snapshot after stage i+1
            for (Coord i = 0; i < m; ++i) {
                std::vector<LatticeVector> prefix;
                for (const auto& [cls, stage] : run.claims)
                    if (stage <= i) prefix.push_back(cls);
                CHECK(materialize_classes(prefix, m, W) ==
                      to_points(direct.stage_snapshots[static_cast<std::size_t>(i)]));
            }
        }
    }
}

TEST_CASE("greedy is equivariant on the residue torus") {
    const GreedyParams params{0, 1, 3};
    {
        const OdometerSpec spec{1, {13}};
        for (Coord res = 0; res < 13; ++res) {
            const SystemPoint x = odometer_point(spec, vec1(res));
            const GreedyRun base = greedy_run(spec, x, params);
            for (Coord v = -13; v <= 13; ++v) {
                const GreedyRun moved = greedy_run(spec, act(x, vec1(v), spec), params);
                REQUIRE(moved.claims.size() == base.claims.size());
                for (std::size_t k = 0; k < base.claims.size(); ++k) {
                    CHECK(moved.claims[k].first[0] == mod_nonneg(base.claims[k].first[0] - v, 13));
                    CHECK(moved.claims[k].second == base.claims[k].second);
                }
            }
        }
    }
    {
        const OdometerSpec spec{2, {13}};
        const std::vector<LatticeVector> shifts = {vec2(0, 0), vec2(1, 0),  vec2(0, 1),
                                                   vec2(5, 9), vec2(-7, 3), vec2(12, 12)};
        for (Coord a = 0; a < 13; a += 4)
            for (Coord b = 0; b < 13; b += 3) {
                const SystemPoint x = odometer_point(spec, vec2(a, b));
                const GreedyRun base = greedy_run(spec, x, params);
                for (const auto& v : shifts) {
                    const GreedyRun moved = greedy_run(spec, act(x, v, spec), params);
                    REQUIRE(moved.claims.size() == base.claims.size());
                    for (std::size_t k = 0; k < base.claims.size(); ++k) {
                        for (int i = 0; i < 2; ++i)
                            CHECK(moved.claims[k].first[i] ==
                                  mod_nonneg(base.claims[k].first[i] - v[i], 13));
                        CHECK(moved.claims[k].second == base.claims[k].second);
                    }
                }
            }
    }
}

TEST_CASE("greedy depends only on the partition-level residue") {
    const GreedyParams params{0, 1, 3};
    const OdometerSpec spec{1, {13, 39}};
    const SystemPoint deep_a = odometer_point(spec, vec1(5));
    const SystemPoint deep_b = odometer_point(spec, vec1(18));   // 18 = 5 mod 13
    const SystemPoint deep_c = odometer_point(spec, vec1(31));   // 31 = 5 mod 13

    const GreedyRun ra = greedy_run(spec, deep_a, params);
    CHECK(ra.partition.level == 1);
    CHECK(ra.claims == greedy_run(spec, deep_b, params).claims);
    CHECK(ra.claims == greedy_run(spec, deep_c, params).claims);

    SystemPoint with_fiber = deep_a;
    FiberWindow fw;
    fw.radius = 0;
    fw.symbols[vec1(0)] = 1;
    with_fiber.fiber = fw;
    CHECK(ra.claims == greedy_run(spec, with_fiber, params).claims);
}

TEST_CASE("greedy output passes the strengthened checks") {
    {
        const GreedyParams params = default_params(2, 1);  // r=3, L=9
        const OdometerSpec spec{1, {37}};
        for (Coord res = 0; res < 37; ++res) {
            const QuasiTilingWindow t = greedy_centers(spec, odometer_point(spec, vec1(res)), params, 37);
            const TilingVerdict verdict = check_greedy_output(t, params);
            INFO("residue " << res);
            CHECK(verdict.valid());
            CHECK(oracles::valid_tiling_brute(t.centers, params.r, params.D(), params.E()));
        }
    }
    {
        const GreedyParams params = default_params(1, 2);  // r=2, L=6
        const OdometerSpec spec{2, {25}};
        for (Coord a = 0; a < 25; ++a)
            for (Coord b = 0; b < 25; ++b) {
                const QuasiTilingWindow t =
                    greedy_centers(spec, odometer_point(spec, vec2(a, b)), params, 25);
                INFO("residue (" << a << "," << b << ")");
                CHECK(check_greedy_output(t, params).valid());
            }
    }
    {
        // an empty window fails condition (3), and the checker reports it
        const GreedyParams params{0, 1, 3};
        const QuasiTilingWindow empty = make_window(params.tiling(), 10, {}, 1);
        const TilingVerdict verdict = check_greedy_output(empty, params);
        REQUIRE_FALSE(verdict.valid());
        CHECK(verdict.violations.front().condition == TilingCondition::meets_origin_cube);

        CHECK_THROWS_AS(check_greedy_output(make_window(TilingParams{1, 1, 2}, 10, {}, 1), GreedyParams{0, 1, 3}),
                        std::invalid_argument);
    }
}

TEST_CASE("greedy error paths") {
    const GreedyParams params{0, 1, 3};
    const OdometerSpec spec{1, {5, 35}};
    const SystemPoint shallow = point_at_level(spec, 1, vec1(2));
    CHECK_THROWS_AS(greedy_run(spec, shallow, params), std::invalid_argument);  // partition lives at level 2

    const OdometerSpec flat{1, {13}};
    CHECK_THROWS_AS(greedy_centers(flat, odometer_point(flat, vec1(0)), params, 12), std::invalid_argument);
}
