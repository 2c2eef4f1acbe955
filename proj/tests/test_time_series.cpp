#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "spurion/random_walk.hpp"
#include "spurion/time_series.hpp"

using namespace spurion;

namespace {

std::filesystem::path write_temp_csv(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

TimeSeries make_series(std::vector<double> v, int start = 1900) {
    return TimeSeries::make("test", start, Eigen::Map<Eigen::VectorXd>(v.data(), v.size()));
}

}  // namespace

TEST_CASE("ingest_csv reads consecutive annual rows") {
    const auto path = write_temp_csv("spurion_ok.csv", "year,value\n1920,57.6\n1921,60.1\n");
    const TimeSeries s = ingest_csv(path);
    CHECK(s.start_index == 1920);
    REQUIRE(s.values.size() == 2);
    CHECK(s.values[0] == doctest::Approx(57.6));
    CHECK(s.values[1] == doctest::Approx(60.1));
    CHECK(s.provenance == path.string());
    std::filesystem::remove(path);
}

TEST_CASE("ingest_csv rejects a year gap naming the missing year") {
    const auto path = write_temp_csv("spurion_gap.csv", "year,value\n1920,1.0\n1922,2.0\n");
    CHECK_THROWS_WITH_AS(ingest_csv(path), doctest::Contains("gap at 1921"), Error);
    std::filesystem::remove(path);
}

TEST_CASE("ingest_csv rejects non-finite values naming the line") {
    const auto path = write_temp_csv("spurion_nan.csv", "year,value\n1920,nan\n");
    CHECK_THROWS_WITH_AS(ingest_csv(path), doctest::Contains("line 2"), Error);
    std::filesystem::remove(path);
}

TEST_CASE("ingest_csv handles CRLF and requires the exact header") {
    const auto ok = write_temp_csv("spurion_crlf.csv", "year,value\r\n1900,1.5\r\n1901,2.5\r\n");
    CHECK(ingest_csv(ok).values.size() == 2);
    std::filesystem::remove(ok);

    const auto bad = write_temp_csv("spurion_hdr.csv", "Year,Value\n1900,1\n");
    CHECK_THROWS_AS(ingest_csv(bad), Error);
    std::filesystem::remove(bad);

    const auto missing = std::filesystem::temp_directory_path() / "spurion_does_not_exist.csv";
    CHECK_THROWS_AS(ingest_csv(missing), Error);
}

TEST_CASE("log_transform") {
    const double e = std::exp(1.0);
    const TimeSeries s = make_series({1.0, e, e * e});
    const TimeSeries ln = log_transform(s);
    CHECK(ln.values[0] == doctest::Approx(0.0));
    CHECK(ln.values[1] == doctest::Approx(1.0));
    CHECK(ln.values[2] == doctest::Approx(2.0));
    CHECK(ln.transforms.back() == TransformTag::Log);
    CHECK(ln.values.size() == s.values.size());

    CHECK(log_transform(make_series({1, 1, 1})).values.isZero());

    CHECK_THROWS_WITH_AS(log_transform(make_series({2, 0, 3}, 1900)),
                         doctest::Contains("1901"), Error);
}

TEST_CASE("first_difference") {
    const TimeSeries constant = make_series({5, 5, 5});
    const TimeSeries d = first_difference(constant);
    CHECK(d.values.size() == 2);
    CHECK(d.values.isZero());
    CHECK(d.start_index == constant.start_index + 1);
    CHECK(d.transforms.back() == TransformTag::FirstDifference);

    const TimeSeries u = first_difference(make_series({1, 3, 6}));
    CHECK(u.values[0] == doctest::Approx(2.0));
    CHECK(u.values[1] == doctest::Approx(3.0));

    CHECK_THROWS_AS(first_difference(make_series({1.0})), Error);
}

TEST_CASE("first_difference round-trips exactly through cumulative sums") {
    // Walk-like data: consecutive values stay within a factor of two, so
    // each reconstruction step is exact in floating point.
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        RandomWalkSpec spec{200, 0.01, 0.05, 10.0, seed};
        const TimeSeries s = generate_random_walk(spec);
        const TimeSeries d = first_difference(s);
        double acc = s.values[0];
        for (Eigen::Index i = 0; i < d.values.size(); ++i) {
            acc += d.values[i];
            CHECK(acc == s.values[i + 1]);  // bitwise equality
        }
    }
}

TEST_CASE("growth_rate") {
    const TimeSeries g = growth_rate(make_series({100, 110}));
    CHECK(g.values.size() == 1);
    CHECK(g.values[0] == doctest::Approx(0.10));

    CHECK(growth_rate(make_series({100, 100, 100})).values.isZero());

    CHECK_THROWS_AS(growth_rate(make_series({1, 0, 2})), Error);
}

TEST_CASE("growth_rate tracks the log-difference to first order") {
    // Brute-force sweep of per-step growth rates across (-0.1, 0.1); the
    // gap to the log difference is a second-order Taylor remainder whose
    // worst case on the sweep is ~0.0054, below the 0.01 bound.
    double worst = 0.0;
    for (int i = -999; i <= 999; ++i) {
        const double rate = 0.0999 * static_cast<double>(i) / 999.0;
        const TimeSeries s = make_series({50.0, 50.0 * (1.0 + rate)}, 0);
        const TimeSeries g = growth_rate(s);
        const TimeSeries dl = first_difference(log_transform(s));
        CHECK(g.values[0] == doctest::Approx(rate).epsilon(1e-12));
        worst = std::max(worst, std::abs(g.values[0] - dl.values[0]));
    }
    CHECK(worst <= 0.01);
    CHECK(worst > 1e-4);  // the sweep actually exercises the bound
}

TEST_CASE("restrict_window") {
    std::vector<double> v(159);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    const TimeSeries s = make_series(v, 1841);  // 1841-1999
    CHECK(s.end_index() == 1999);

    const TimeSeries w = restrict_window(s, 1920, 1999);
    CHECK(w.values.size() == 80);
    CHECK(w.start_index == 1920);
    CHECK(w.values[0] == doctest::Approx(79.0));

    const TimeSeries full = restrict_window(s, 1841, 1999);
    CHECK(full.values == s.values);

    CHECK_THROWS_AS(restrict_window(s, 2005, 2010), Error);
}

TEST_CASE("align_pair") {
    std::vector<double> a(159), b(91);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<double>(i);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<double>(i) * 2.0;
    TimeSeries sa = make_series(a, 1841);   // 1841-1999
    TimeSeries sb = make_series(b, 1920);   // 1920-2010

    auto [ra, rb] = align_pair(sa, sb);
    CHECK(ra.start_index == 1920);
    CHECK(rb.start_index == 1920);
    CHECK(ra.values.size() == rb.values.size());
    CHECK(ra.values.size() == 80);

    auto [ia, ib] = align_pair(ra, rb);
    CHECK(ia.values == ra.values);
    CHECK(ib.values == rb.values);

    TimeSeries far = make_series({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 1850);
    TimeSeries apart = make_series({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 1900);
    CHECK_THROWS_AS(align_pair(far, apart), Error);
}

TEST_CASE("fake_annualize relabels the index and marks provenance") {
    std::vector<double> v(504);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 10.0 + std::sin(i * 0.1);
    const TimeSeries daily = make_series(v, 0);
    const TimeSeries fake = fake_annualize(daily, 1860);
    CHECK(fake.start_index == 1860);
    CHECK(fake.end_index() == 2363);
    CHECK(fake.values == daily.values);
    CHECK(fake.provenance.find("fake-annualized") != std::string::npos);

    const TimeSeries one = fake_annualize(make_series({3.0}), 1900);
    CHECK(one.start_index == 1900);
    CHECK(one.end_index() == 1900);

    const TimeSeries twice = fake_annualize(fake, 1860);
    CHECK(twice.values == fake.values);
    CHECK(twice.start_index == fake.start_index);
    CHECK(twice.provenance == fake.provenance);
}

TEST_CASE("exp then log round-trips to 1e-12 relative error") {
    RandomWalkSpec spec{100, 0.0, 0.3, 2.0, 77};
    const TimeSeries s = generate_random_walk(spec);
    TimeSeries expd = s;
    expd.values = s.values.array().exp().matrix();
    const TimeSeries back = log_transform(expd);
    for (Eigen::Index i = 0; i < s.values.size(); ++i)
        CHECK(back.values[i] == doctest::Approx(s.values[i]).epsilon(1e-12));
}

TEST_CASE("construction rejects non-finite and empty input") {
    Eigen::VectorXd empty(0);
    CHECK_THROWS_AS(TimeSeries::make("x", 0, empty), Error);
    Eigen::VectorXd bad(2);
    bad << 1.0, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(TimeSeries::make("x", 0, bad), Error);
}
