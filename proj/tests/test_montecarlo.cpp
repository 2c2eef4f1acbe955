#include <doctest.h>

#include <set>

#include "spurion/audit.hpp"
#include "spurion/pipeline.hpp"
#include "spurion/random_walk.hpp"

using namespace spurion;

TEST_CASE("mt19937_64 reference vector holds") {
    // The C++ standard fixes the 10000th output of a default-seeded engine.
    std::mt19937_64 eng(5489u);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) v = eng();
    CHECK(v == 9981545732273789042ULL);
}

TEST_CASE("generate_random_walk deterministic cases") {
    const TimeSeries line = generate_random_walk({5, 1.0, 0.0, 0.0, 12345});
    REQUIRE(line.values.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(line.values[i] == doctest::Approx(i));

    const TimeSeries flat = generate_random_walk({4, 0.0, 0.0, 2.5, 1});
    for (int i = 0; i < 4; ++i) CHECK(flat.values[i] == doctest::Approx(2.5));

    CHECK_THROWS_AS(generate_random_walk({1, 0.0, 1.0, 0.0, 1}), Error);
    CHECK_THROWS_AS(generate_random_walk({10, 0.0, -1.0, 0.0, 1}), Error);
}

TEST_CASE("identical specs give identical walks; different seeds differ") {
    const RandomWalkSpec spec{50, -0.2, 0.7, 0.0, 987654321};
    const TimeSeries a = generate_random_walk(spec);
    const TimeSeries b = generate_random_walk(spec);
    CHECK(a.values.size() == 50);
    CHECK(a.values.allFinite());
    CHECK(a.values == b.values);
    RandomWalkSpec other = spec;
    other.seed += 1;
    CHECK(generate_random_walk(other).values != a.values);
}

TEST_CASE("generator sample mean over 1e6 draws is within 4 sigma/1000 of mu") {
    GaussianGenerator gen(2718281828ULL);
    const double mu = -0.2, sigma = 0.7;
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += mu + sigma * gen.next();
    CHECK(std::abs(sum / n - mu) <= 4.0 * sigma / 1000.0);
}

TEST_CASE("derive_trial_seed is deterministic and collision-free at small scale") {
    CHECK(derive_trial_seed(42, 7) == derive_trial_seed(42, 7));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10; ++i) seen.insert(derive_trial_seed(42, i));
    CHECK(seen.size() == 10);
    CHECK(derive_trial_seed(42, 0) != derive_trial_seed(43, 0));
}

namespace {

TimeSeries synthetic_target(std::uint64_t seed = 20240514) {
    // Trend-dominated I(1) series shaped like a long annual log-level record:
    // small positive drift with moderate noise, 159 observations.
    TimeSeries s = generate_random_walk({159, 0.004, 0.03, 3.694, seed}, 1841, "synthetic_target");
    return s;
}

}  // namespace

TEST_CASE("spurious_audit reproduces the drift-driven false-positive excess") {
    const TimeSeries target = synthetic_target();
    RandomWalkSpec walk;
    walk.mu = -0.2;
    walk.sigma = 0.7;
    const VecmSpec test{1, JohansenDet::NoIntercept};

    const AuditReport drifted = spurious_audit(target, walk, 300, test, 0.05, 1001);
    CHECK(drifted.n_trials == 300);
    CHECK(drifted.rejections <= drifted.n_trials);
    CHECK(drifted.false_positive_rate ==
          doctest::Approx(static_cast<double>(drifted.rejections) / 300.0));
    CHECK(drifted.false_positive_rate > 0.5);

    RandomWalkSpec driftless = walk;
    driftless.mu = 0.0;
    const AuditReport control = spurious_audit(target, driftless, 300, test, 0.05, 1001);
    CHECK(drifted.false_positive_rate - control.false_positive_rate >= 0.2);
}

TEST_CASE("spurious_audit is reproducible bit for bit, independent of threads") {
    const TimeSeries target = synthetic_target();
    RandomWalkSpec walk;
    walk.mu = -0.2;
    walk.sigma = 0.7;
    const VecmSpec test{1, JohansenDet::NoIntercept};
    const AuditReport a = spurious_audit(target, walk, 60, test, 0.05, 77, false, 1);
    const AuditReport b = spurious_audit(target, walk, 60, test, 0.05, 77, false, 4);
    REQUIRE(a.per_trial.size() == b.per_trial.size());
    for (std::size_t i = 0; i < a.per_trial.size(); ++i) {
        CHECK(a.per_trial[i].seed == b.per_trial[i].seed);
        CHECK(a.per_trial[i].trace == b.per_trial[i].trace);  // bitwise
        CHECK(a.per_trial[i].p == b.per_trial[i].p);
        CHECK(a.per_trial[i].rejected == b.per_trial[i].rejected);
    }
    CHECK(a.rejections == b.rejections);
    CHECK(a.screen_failures == b.screen_failures);
    CHECK(to_json(a) == to_json(b));
}

TEST_CASE("monotone drift effect over the mu grid") {
    const TimeSeries target = synthetic_target();
    const VecmSpec test{1, JohansenDet::NoIntercept};
    RandomWalkSpec walk;
    walk.sigma = 0.7;
    std::vector<double> rates;
    std::vector<WilsonInterval> cis;
    for (const double mu : {0.0, -0.1, -0.2}) {
        walk.mu = mu;
        const AuditReport rep = spurious_audit(target, walk, 1000, test, 0.05, 31337);
        rates.push_back(rep.false_positive_rate);
        cis.push_back(rep.wilson95);
    }
    CHECK(rates[1] >= rates[0]);
    CHECK(rates[2] >= rates[1]);
    // The endpoints' Wilson intervals must separate.
    CHECK(cis[0].high < cis[2].low);
}

TEST_CASE("audit gates on the target screen unless overridden") {
    GaussianGenerator gen(5150);
    Eigen::VectorXd noise(120);
    for (int i = 0; i < 120; ++i) noise[i] = gen.next();
    const TimeSeries stationary_target = TimeSeries::make("white_noise", 0, noise);
    RandomWalkSpec walk;
    walk.mu = -0.2;
    walk.sigma = 0.7;
    const VecmSpec test{1, JohansenDet::NoIntercept};
    CHECK_THROWS_AS(spurious_audit(stationary_target, walk, 10, test, 0.05, 1), Error);
    const AuditReport rep = spurious_audit(stationary_target, walk, 10, test, 0.05, 1, true);
    CHECK(rep.target_screen_overridden);

    CHECK_THROWS_AS(spurious_audit(synthetic_target(), walk, 0, test, 0.05, 1), Error);
}

TEST_CASE("size_power_experiment: johansen size on independent walks stays near nominal") {
    ExperimentConfig cfg;
    cfg.dgp = Dgp::IndependentWalks;
    cfg.T = 150;
    cfg.mu = 0.0;
    cfg.sigma = 1.0;
    cfg.test = {1, JohansenDet::UnrestrictedConstant};
    cfg.level = 0.05;
    const AuditReport rep = size_power_experiment(cfg, 10000, 99);
    MESSAGE("johansen unrestricted-constant size on driftless walks, T=150: ",
            rep.false_positive_rate);
    CHECK(rep.false_positive_rate <= 0.10);
    CHECK(rep.false_positive_rate >= 0.01);
}

TEST_CASE("size_power_experiment: drifted walks under noint reject in the majority") {
    ExperimentConfig cfg;
    cfg.dgp = Dgp::DriftedWalks;
    cfg.T = 150;
    cfg.mu = -0.2;
    cfg.sigma = 0.7;
    cfg.test = {1, JohansenDet::NoIntercept};
    cfg.level = 0.05;
    const AuditReport rep = size_power_experiment(cfg, 1000, 1234);
    CHECK(rep.false_positive_rate > 0.5);
}

TEST_CASE("size_power_experiment: cointegrated pairs select rank 1") {
    ExperimentConfig cfg;
    cfg.dgp = Dgp::CointegratedPair;
    cfg.T = 300;
    cfg.beta = 2.0;
    cfg.phi = 0.5;
    cfg.sigma = 1.0;
    cfg.test = {1, JohansenDet::NoIntercept};  // matches the driftless DGP
    cfg.level = 0.05;
    const AuditReport rep = size_power_experiment(cfg, 400, 55);
    CHECK(rep.false_positive_rate >= 0.93);  // here "rejection" = rank-1 selection
}

TEST_CASE("size_power_experiment: ADF power on stationary AR(0.5)") {
    ExperimentConfig cfg;
    cfg.dgp = Dgp::StationaryAR;
    cfg.T = 200;
    cfg.phi = 0.5;
    cfg.adf_spec = DeterministicSpec::SingleMean;
    cfg.adf_lags = 0;
    cfg.level = 0.05;
    const AuditReport rep = size_power_experiment(cfg, 400, 808);
    CHECK(rep.false_positive_rate >= 0.90);
    CHECK_THROWS_AS(size_power_experiment(cfg, 0, 1), Error);
}

TEST_CASE("wilson interval sanity") {
    const auto ci = wilson_ci95(50, 100);
    CHECK(ci.low > 0.40);
    CHECK(ci.high < 0.60);
    CHECK(ci.low < 0.5);
    CHECK(ci.high > 0.5);
    const auto zero = wilson_ci95(0, 20);
    CHECK(zero.low == doctest::Approx(0.0));
    CHECK(zero.high > 0.0);
    CHECK_THROWS_AS(wilson_ci95(0, 0), Error);
}
