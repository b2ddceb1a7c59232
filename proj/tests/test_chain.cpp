#include <cmath>

#include <doctest.h>

#include "mixtime/chain.hpp"
#include "mixtime/kernel_io.hpp"
#include "testutil.hpp"

using namespace mixtime;

namespace {

const MarkovKernel kTwoState({{0.75, 0.25}, {0.25, 0.75}});
const MarkovKernel kFunnel({{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.5, 0.5, 0.0}});

}  // namespace

TEST_SUITE("chain") {

TEST_CASE("total variation on worked distributions") {
    const StateDistribution p({0.3, 0.7});
    CHECK(total_variation(p, p) == 0.0);
    CHECK(total_variation(StateDistribution({1.0, 0.0}), StateDistribution({0.0, 1.0})) == 1.0);
    CHECK(total_variation(StateDistribution({0.75, 0.25}), StateDistribution({0.25, 0.75})) ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(total_variation(p, StateDistribution({0.2, 0.3, 0.5})),
                    std::invalid_argument);
}

TEST_CASE("total variation is a metric") {
    CounterRng rng(RandomSeed{101});
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 5);
        const auto p = testutil::random_distribution(rng, d);
        const auto q = testutil::random_distribution(rng, d);
        const auto r = testutil::random_distribution(rng, d);
        CHECK(total_variation(p, q) == total_variation(q, p));
        CHECK(total_variation(p, p) <= 1e-12);
        CHECK(total_variation(p, r) <= total_variation(p, q) + total_variation(q, r) + 1e-12);
        CHECK(total_variation(p, q) >= 0.0);
        CHECK(total_variation(p, q) <= 1.0);
    }
}

TEST_CASE("contraction property of the one-step kernel") {
    CounterRng rng(RandomSeed{202});
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 5);
        const auto kernel = testutil::random_kernel(rng, d, trial % 2 == 0 ? 0.3 : 0.0);
        const auto mu = testutil::random_distribution(rng, d);
        const auto nu = testutil::random_distribution(rng, d);
        const double lhs = total_variation(push_forward(mu, kernel), push_forward(nu, kernel));
        const double rhs = dobrushin_coefficient(kernel) * total_variation(mu, nu);
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("coefficient distance is dominated by the operator norm") {
    CounterRng rng(RandomSeed{303});
    for (int trial = 0; trial < 500; ++trial) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 5);
        const auto a = testutil::random_kernel(rng, d, 0.3);
        const auto b = testutil::random_kernel(rng, d, 0.0);
        CHECK(std::abs(dobrushin_coefficient(a) - dobrushin_coefficient(b)) <=
              max_row_l1_distance(a, b) + 1e-12);
    }
}

TEST_CASE("kernel power identities") {
    SUBCASE("s = 1 returns the kernel unchanged") {
        const auto p = kernel_power(kTwoState, 1);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(p(i, j) == kTwoState(i, j));
    }
    SUBCASE("worked two-state square") {
        const auto p = kernel_power(kTwoState, 2);
        CHECK(p(0, 0) == doctest::Approx(0.625).epsilon(1e-14));
        CHECK(p(0, 1) == doctest::Approx(0.375).epsilon(1e-14));
        CHECK(p(1, 0) == doctest::Approx(0.375).epsilon(1e-14));
    }
    SUBCASE("worked funnel square") {
        const auto p = kernel_power(kFunnel, 2);
        const std::vector<std::vector<double>> expected{
            {0.0, 0.0, 1.0}, {0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(p(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-14));
    }
    SUBCASE("s = 0 is rejected") { CHECK_THROWS_AS(kernel_power(kTwoState, 0), std::invalid_argument); }
    SUBCASE("powers compose") {
        CounterRng rng(RandomSeed{404});
        for (int trial = 0; trial < 20; ++trial) {
            const int d = 2 + static_cast<int>(rng.next_u64() % 4);
            const auto kernel = testutil::random_kernel(rng, d);
            const std::int64_t s = 1 + static_cast<std::int64_t>(rng.next_u64() % 4);
            const std::int64_t t = 1 + static_cast<std::int64_t>(rng.next_u64() % 4);
            // M^(s*t) = (M^s)^t and M^(s+t) = M^s * M^t
            const auto iterated = kernel_power(kernel_power(kernel, s), t);
            const auto product = kernel_multiply(kernel_power(kernel, s), kernel_power(kernel, t));
            const auto direct_mul = kernel_power(kernel, s * t);
            const auto direct_sum = kernel_power(kernel, s + t);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    CHECK(direct_mul(i, j) == doctest::Approx(iterated(i, j)).epsilon(1e-10));
                    CHECK(direct_sum(i, j) == doctest::Approx(product(i, j)).epsilon(1e-10));
                }
            }
        }
    }
}

TEST_CASE("stationary distribution") {
    SUBCASE("symmetric two-state chain") {
        const auto pi = stationary_distribution(kTwoState);
        CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-10));
    }
    SUBCASE("worked balance equation") {
        const auto pi = stationary_distribution(MarkovKernel({{0.9, 0.1}, {0.3, 0.7}}));
        CHECK(pi[0] == doctest::Approx(0.75).epsilon(1e-9));
        CHECK(pi[1] == doctest::Approx(0.25).epsilon(1e-9));
    }
    SUBCASE("rank-one kernel returns its row") {
        const std::vector<double> row{0.2, 0.3, 0.5};
        const auto pi = stationary_distribution(MarkovKernel({row, row, row}));
        for (int i = 0; i < 3; ++i) CHECK(pi[i] == doctest::Approx(row[i]).epsilon(1e-12));
    }
    SUBCASE("fixed point on random ergodic kernels") {
        CounterRng rng(RandomSeed{505});
        for (int trial = 0; trial < 20; ++trial) {
            const int d = 2 + static_cast<int>(rng.next_u64() % 5);
            const auto kernel = testutil::random_kernel(rng, d);
            const auto pi = stationary_distribution(kernel);
            CHECK(total_variation(push_forward(pi, kernel), pi) <= 1e-10);
        }
    }
    SUBCASE("oscillating iteration hits the cap") {
        const MarkovKernel periodic({{0.0, 1.0, 0.0}, {0.5, 0.0, 0.5}, {0.0, 1.0, 0.0}});
        CHECK_THROWS_AS(stationary_distribution(periodic), ConvergenceError);
    }
}

TEST_CASE("ergodicity of support matrices") {
    CHECK_FALSE(is_ergodic(MarkovKernel({{0.0, 1.0}, {1.0, 0.0}})));
    CHECK(is_ergodic(MarkovKernel({{0.5, 0.5}, {0.5, 0.5}})));
    CHECK(is_ergodic(kFunnel));
    CHECK(is_ergodic(kTwoState));
    // 3-cycle: irreducible but periodic
    CHECK_FALSE(is_ergodic(MarkovKernel({{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}})));
}

TEST_CASE("dobrushin coefficient on worked kernels") {
    CHECK(dobrushin_coefficient(MarkovKernel({{0.4, 0.6}, {0.4, 0.6}})) == 0.0);
    CHECK(dobrushin_coefficient(MarkovKernel({{1.0, 0.0}, {0.0, 1.0}})) == 1.0);
    CHECK(dobrushin_coefficient(kTwoState) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("beta ratio") {
    CHECK(beta_ratio(StateDistribution::uniform(4)) == doctest::Approx(1.0));
    CHECK(beta_ratio(StateDistribution({0.75, 0.25})) == doctest::Approx(3.0));
    CHECK(beta_ratio(StateDistribution({0.5, 0.25, 0.25})) == doctest::Approx(2.0));
    CHECK_THROWS_AS(beta_ratio(StateDistribution({1.0, 0.0})), std::invalid_argument);
}

TEST_CASE("construction rejects invalid inputs") {
    CHECK_THROWS_AS(StateDistribution({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(StateDistribution({1.2, -0.2}), std::invalid_argument);
    CHECK_THROWS_AS(StateDistribution({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(MarkovKernel({{0.5, 0.4}, {0.5, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(MarkovKernel({{1.5, -0.5}, {0.5, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(MarkovKernel(std::vector<std::vector<double>>{{1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(MarkovKernel({{0.5, 0.5}, {0.5, 0.4, 0.1}}), std::invalid_argument);
}

TEST_CASE("kernel json round trip") {
    const std::string text = kernel_to_json_text(kFunnel);
    const MarkovKernel back = parse_kernel_json(text);
    REQUIRE(back.dim() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(back(i, j) == kFunnel(i, j));

    CHECK_THROWS_AS(parse_kernel_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_json("{\"rows\": [[1.0]]}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_json("{\"d\": 3, \"rows\": [[0.5, 0.5], [0.5, 0.5]]}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_json("{\"d\": 2, \"rows\": [[0.9, 0.2], [0.5, 0.5]]}"),
                    std::invalid_argument);
}

}  // TEST_SUITE
