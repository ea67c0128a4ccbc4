#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "memdecide/error.hpp"
#include "memdecide/stream.hpp"
#include "oracles.hpp"

using namespace memdecide;

TEST_CASE("generate_random")
{
    Rng rng(1);
    SUBCASE("empty")
    {
        const auto s = generate_random({0, 1.0}, rng);
        CHECK(s.empty());
        CHECK(s.duration_s == 1.0);
    }
    SUBCASE("40 pulses in 2 s")
    {
        const auto s = generate_random({40, 2.0}, rng);
        REQUIRE(s.size() == 40);
        CHECK(std::is_sorted(s.times.begin(), s.times.end()));
        for (double t : s.times) {
            CHECK(t >= 0.0);
            CHECK(t < 2.0);
        }
    }
    SUBCASE("mean placement is the window centre")
    {
        std::vector<double> means;
        for (int r = 0; r < 1000; ++r) {
            const auto s = generate_random({10000, 1.0}, rng);
            double m = 0;
            for (double t : s.times) m += t;
            means.push_back(m / 10000.0);
        }
        const auto mv = oracle::mean_var(means);
        // Standard error of the grand mean: sqrt(1/12 / 1e4 / 1e3).
        const double se = std::sqrt(1.0 / 12.0 / 1e4 / 1e3);
        CHECK(std::abs(mv.mean - 0.5) < 3 * se);
    }
    SUBCASE("Kolmogorov-Smirnov against uniform")
    {
        const auto s = generate_random({10000, 3.0}, rng);
        std::vector<double> u;
        for (double t : s.times) u.push_back(t / 3.0);
        // 1% critical value ~ 1.628 / sqrt(n).
        CHECK(oracle::ks_uniform(u) < 1.628 / std::sqrt(10000.0));
    }
    SUBCASE("seed determinism")
    {
        Rng a(99), b(99);
        CHECK(generate_random({25, 1.0}, a).times == generate_random({25, 1.0}, b).times);
    }
    SUBCASE("invalid duration")
    {
        CHECK_THROWS_AS(generate_random({3, 0.0}, rng), InvalidArgument);
    }
}

TEST_CASE("generate_periodic")
{
    const auto s = generate_periodic(50, 10.0, 0.0);
    REQUIRE(s.size() == 50);
    CHECK(s.times.front() == 0.0);
    CHECK(s.times[3] == 0.3);
    CHECK(s.times.back() == 4.9);
    CHECK(s.duration_s > s.times.back());

    CHECK(generate_periodic(1, 10.0, 0.0).times == std::vector<double>{0.0});
    CHECK(generate_periodic(3, 2.0, 1.0).times == std::vector<double>{1.0, 1.5, 2.0});
    CHECK(generate_periodic(0, 2.0, 0.0).empty());
    CHECK_THROWS_AS(generate_periodic(3, 0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(generate_periodic(3, -1.0, 0.0), InvalidArgument);
}

TEST_CASE("stream CSV replay")
{
    Rng rng(4);
    const auto s = generate_random({30, 2.0}, rng);
    std::stringstream buf;
    write_stream_csv(buf, s);
    const auto back = read_stream_csv(buf, 2.0);
    CHECK(back.times == s.times);

    std::stringstream wrong_header("time\n0.1\n");
    CHECK_THROWS_AS(read_stream_csv(wrong_header, 1.0), FormatError);
    std::stringstream unsorted("t_s\n0.5\n0.1\n");
    CHECK_THROWS_AS(read_stream_csv(unsorted, 1.0), FormatError);
    std::stringstream outside("t_s\n1.5\n");
    CHECK_THROWS_AS(read_stream_csv(outside, 1.0), FormatError);
}
