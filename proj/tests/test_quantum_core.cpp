#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "softbell/errors.hpp"
#include "softbell/quantum_core.hpp"

using namespace softbell;

namespace {

const Direction kX = Direction::unit_x();
const Direction kZ = Direction::unit_z();

Direction in_xz(double degrees) {
    return Direction::from_angles(degrees * std::numbers::pi / 180.0, 0.0);
}

}  // namespace

TEST_CASE("singlet amplitudes and normalization") {
    const auto psi = make_singlet();
    CHECK(psi[0] == Amplitude(0.0));
    CHECK(psi[1].real() == doctest::Approx(0.7071068).epsilon(1e-7));
    CHECK(psi[2].real() == doctest::Approx(-0.7071068).epsilon(1e-7));
    CHECK(psi[3] == Amplitude(0.0));
    CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
    CHECK(std::abs(overlap(make_singlet(), TwoQubitSpinState::basis(SpinOutcome::up(), SpinOutcome::up()))) == 0.0);
    // index 1 is (+,-), index 2 is (-,+)
    CHECK(TwoQubitSpinState::basis(SpinOutcome::up(), SpinOutcome::down())[1] == Amplitude(1.0));
    CHECK(TwoQubitSpinState::basis(SpinOutcome::down(), SpinOutcome::up())[2] == Amplitude(1.0));
}

TEST_CASE("spin outcome only admits +-1") {
    CHECK(SpinOutcome::from_value(1) == SpinOutcome::up());
    CHECK_THROWS_AS(SpinOutcome::from_value(0), PreconditionError);
}

TEST_CASE("joint distribution examples") {
    const auto psi = make_singlet();
    SUBCASE("z, z is perfectly anticorrelated") {
        const auto d = joint_distribution(psi, kZ, kZ);
        CHECK(d.p_pp == 0.0);
        CHECK(d.p_mm == 0.0);
        CHECK(d.p_pm == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(d.p_mp == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("z, x decorrelates (projector oracle)") {
        const auto d = joint_distribution(psi, kZ, kX);
        for (int sa : {1, -1})
            for (int sb : {1, -1}) {
                const double want = oracle::born_probability(psi, kZ, sa, kX, sb);
                CHECK(want == doctest::Approx(0.25).epsilon(1e-12));
                CHECK(d.probability(SpinOutcome::from_value(sa), SpinOutcome::from_value(sb)) ==
                      doctest::Approx(want).epsilon(1e-12));
            }
    }
    SUBCASE("equal arbitrary axes never give equal outcomes") {
        std::mt19937_64 g(11);
        for (int i = 0; i < 200; ++i) {
            const auto a = oracle::random_direction(g);
            const auto d = joint_distribution(psi, a, a);
            CHECK(d.p_pp == 0.0);
            CHECK(d.p_mm == 0.0);
        }
    }
}

TEST_CASE("joint distribution matches projector oracle for random states and axes") {
    std::mt19937_64 g(5);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 100; ++trial) {
        std::array<Amplitude, 4> amps;
        double n2 = 0.0;
        for (auto& c : amps) {
            c = Amplitude(n(g), n(g));
            n2 += std::norm(c);
        }
        for (auto& c : amps) c /= std::sqrt(n2);
        const TwoQubitSpinState psi(amps);
        const auto a = oracle::random_direction(g);
        const auto b = oracle::random_direction(g);
        const auto d = joint_distribution(psi, a, b);
        CHECK(std::abs(d.sum() - 1.0) < 1e-12);
        for (int sa : {1, -1})
            for (int sb : {1, -1}) {
                const double p = d.probability(SpinOutcome::from_value(sa), SpinOutcome::from_value(sb));
                CHECK(p >= 0.0);
                CHECK(std::abs(p - oracle::born_probability(psi, a, sa, b, sb)) < 1e-12);
            }
    }
}

TEST_CASE("non-normalized state is rejected") {
    const TwoQubitSpinState bad({Amplitude(1.0), Amplitude(1.0), Amplitude(0.0), Amplitude(0.0)});
    CHECK_THROWS_AS(joint_distribution(bad, kZ, kZ), PreconditionError);
    CHECK_THROWS_AS(collapse_after_A(bad, kZ, SpinOutcome::up()), PreconditionError);
}

TEST_CASE("singlet joint distribution is rotation invariant") {
    std::mt19937_64 g(17);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const auto psi = make_singlet();
    for (int i = 0; i < 200; ++i) {
        const auto a = oracle::random_direction(g);
        const auto b = oracle::random_direction(g);
        const auto axis = oracle::random_direction(g);
        const double t = angle(g);
        const auto d0 = joint_distribution(psi, a, b).cells();
        const auto d1 = joint_distribution(psi, oracle::rotate(a, axis, t), oracle::rotate(b, axis, t)).cells();
        for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(d0[c] - d1[c]) < 1e-10);
    }
}

TEST_CASE("measure_pair consumes exactly one draw") {
    RandomStream used(99, 3);
    RandomStream reference(99, 3);
    (void)measure_pair(make_singlet(), kZ, kX, used);
    (void)reference.uniform();
    CHECK(used.raw() == reference.raw());
}

TEST_CASE("measure_pair sampling") {
    const auto psi = make_singlet();
    SUBCASE("z, z outcomes always opposite; (+,-) frequency within 3 sigma") {
        RandomStream rng(2024);
        const int n = 100000;
        int pm = 0;
        for (int i = 0; i < n; ++i) {
            const auto [sa, sb] = measure_pair(psi, kZ, kZ, rng);
            REQUIRE(sa.value() == -sb.value());
            if (sa.value() == 1) ++pm;
        }
        const double p = joint_distribution(psi, kZ, kZ).p_pm;
        CHECK(std::abs(pm / double(n) - p) < 3.0 * oracle::binomial_sigma(p, n));
    }
    SUBCASE("equal random axes never return (+,+) or (-,-)") {
        std::mt19937_64 g(3);
        RandomStream rng(5);
        for (int i = 0; i < 20000; ++i) {
            const auto a = oracle::random_direction(g);
            const auto [sa, sb] = measure_pair(psi, a, a, rng);
            REQUIRE(sa != sb);
        }
    }
}

TEST_CASE("MC mean of sA*sB agrees with the analytic correlation for random axes") {
    std::mt19937_64 g(23);
    const auto psi = make_singlet();
    for (int pair = 0; pair < 20; ++pair) {
        const auto a = oracle::random_direction(g);
        const auto b = oracle::random_direction(g);
        RandomStream rng(77, static_cast<std::uint64_t>(pair));
        const int n = 100000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto [sa, sb] = measure_pair(psi, a, b, rng);
            sum += sa.value() * sb.value();
        }
        const double e = correlation_analytic(a, b);
        const double se = std::sqrt((1.0 - e * e) / n);
        CHECK(std::abs(sum / n - e) <= 4.0 * se + 1e-12);
    }
}

TEST_CASE("collapse after measuring A") {
    const auto psi = make_singlet();
    SUBCASE("z, +1 leaves B in |-z>") {
        const auto b = collapse_after_A(psi, kZ, SpinOutcome::up());
        CHECK(std::abs(b.norm() - 1.0) < 1e-12);
        CHECK(std::abs(b.amplitudes[0]) < 1e-15);
        CHECK(std::abs(std::abs(b.amplitudes[1]) - 1.0) < 1e-12);
    }
    SUBCASE("x, +1 leaves B in the -1 eigenstate of S_x") {
        const auto b = collapse_after_A(psi, kX, SpinOutcome::up());
        CHECK(std::abs(b.norm() - 1.0) < 1e-12);
        CHECK(b.probability(kX, SpinOutcome::down()) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(b.probability(kZ, SpinOutcome::down()) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("zero-probability outcome is a conditioning error") {
        const auto up = TwoQubitSpinState::basis(SpinOutcome::up(), SpinOutcome::up());
        CHECK_THROWS_AS(collapse_after_A(up, kZ, SpinOutcome::down()), ConditioningError);
    }
    SUBCASE("conditional B probabilities match joint_distribution") {
        std::mt19937_64 g(31);
        for (int i = 0; i < 200; ++i) {
            const auto a = oracle::random_direction(g);
            const auto b = oracle::random_direction(g);
            const auto joint = joint_distribution(psi, a, b);
            for (auto sa : {SpinOutcome::up(), SpinOutcome::down()}) {
                const auto state_b = collapse_after_A(psi, a, sa);
                CHECK(std::abs(state_b.norm() - 1.0) < 1e-12);
                const double marginal = joint.probability(sa, SpinOutcome::up()) + joint.probability(sa, SpinOutcome::down());
                for (auto sb : {SpinOutcome::up(), SpinOutcome::down()}) {
                    CHECK(std::abs(state_b.probability(b, sb) - joint.probability(sa, sb) / marginal) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("analytic correlation") {
    CHECK(correlation_analytic(kZ, kZ) == -1.0);
    CHECK(correlation_analytic(kZ, kX) == 0.0);
    CHECK(correlation_analytic(kZ, in_xz(45.0)) == doctest::Approx(-0.7071068).epsilon(1e-7));
    CHECK(correlation_analytic(kZ, -kZ) == 1.0);
    // Born-rule route agrees for random axes.
    std::mt19937_64 g(41);
    for (int i = 0; i < 100; ++i) {
        const auto a = oracle::random_direction(g);
        const auto b = oracle::random_direction(g);
        CHECK(std::abs(joint_distribution(make_singlet(), a, b).correlation() - correlation_analytic(a, b)) < 1e-12);
    }
}

TEST_CASE("CHSH analytic value") {
    CHECK(chsh_analytic(in_xz(0), in_xz(90), in_xz(45), in_xz(135)) == doctest::Approx(2.8284271).epsilon(1e-7));
    CHECK(chsh_analytic(kZ, kZ, kZ, kZ) == doctest::Approx(2.0));

    // Coarse grid maximization oracle over coplanar settings.
    double best = 0.0;
    for (int a = 0; a < 360; a += 15)
        for (int a2 = 0; a2 < 360; a2 += 15)
            for (int b = 0; b < 360; b += 15)
                for (int b2 = 0; b2 < 360; b2 += 15) {
                    best = std::max(best, chsh_analytic(in_xz(a), in_xz(a2), in_xz(b), in_xz(b2)));
                }
    CHECK(best <= 2.0 * std::numbers::sqrt2 + 1e-9);
    CHECK(best == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-9));

    std::mt19937_64 g(43);
    for (int i = 0; i < 2000; ++i) {
        const double s = chsh_analytic(oracle::random_direction(g), oracle::random_direction(g),
                                       oracle::random_direction(g), oracle::random_direction(g));
        CHECK(s <= 2.0 * std::numbers::sqrt2 + 1e-9);
    }
}

TEST_CASE("direction parsing and unit checks") {
    CHECK(parse_direction("z") == kZ);
    CHECK(parse_direction("-x") == -kX);
    CHECK(parse_direction("0, 0, 2") == kZ);
    const auto p = parse_direction("polar(90, 90)");
    CHECK(std::abs(p.y() - 1.0) < 1e-15);
    const auto d = Direction::from_angles(0.3, 1.1);
    CHECK(parse_direction(format_direction(d)) == d);
    CHECK_THROWS_AS(Direction::from_components(1.0, 1.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(parse_direction("up"), PreconditionError);
    CHECK_THROWS_AS(Direction::normalized(0, 0, 0), PreconditionError);
}

TEST_CASE("tilted directions stay unit and move by the requested angle") {
    std::mt19937_64 g(47);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const auto d = oracle::random_direction(g);
        const double angle = u(g);
        const auto t = d.tilted(angle, u(g) * 2.0);
        CHECK(std::abs(t.dot(t) - 1.0) < 1e-12);
        CHECK(std::abs(d.angle_to(t) - angle) < 1e-9);
    }
}
