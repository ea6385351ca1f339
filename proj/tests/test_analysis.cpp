#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "trichain/analysis.hpp"
#include "trichain/chains.hpp"

using namespace trichain;

TEST_CASE("mu formula") {
    CHECK(mu_of(DegreeSequence(std::vector<int>(6, 3))) == doctest::Approx(4.0 / 3.0));
    CHECK(mu_of(DegreeSequence(std::vector<int>(20, 3))) == doctest::Approx(4.0 / 3.0));
    CHECK(mu_of(DegreeSequence(std::vector<int>(6, 2))) == doctest::Approx(1.0 / 6.0));
    CHECK(mu_of(DegreeSequence(std::vector<int>(40, 2))) == doctest::Approx(1.0 / 6.0));
    for (int d = 3; d <= 6; ++d) {
        const int n = d % 2 == 0 ? 9 : 10;
        CHECK(mu_of(DegreeSequence(std::vector<int>(n, d))) ==
              doctest::Approx(std::pow(d - 1.0, 3) / 6.0));
    }
    // mu >= 1/6 whenever M2 >= M
    Rng rng(8);
    for (int rep = 0; rep < 50; ++rep) {
        const auto d = oracles::random_graphical(10, 2, 6, rng);
        if (d.m2() >= d.m()) CHECK(d.mu() >= 1.0 / 6.0 - 1e-15);
    }
}

TEST_CASE("total variation distance") {
    std::map<long long, double> p{{0, 0.5}, {1, 0.5}};
    CHECK(tv_distance(p, p) == doctest::Approx(0.0));

    std::map<long long, double> q{{2, 0.25}, {3, 0.75}};
    CHECK(tv_distance(p, q) == doctest::Approx(1.0));

    SUBCASE("shifted poisson identity against direct summation") {
        const double mu = 1.0;
        std::map<long long, double> a, b;
        for (long long k = 0; k <= 40; ++k) {
            a[k] = poisson_pmf(mu, k);
            b[k + 1] = poisson_pmf(mu, k);
        }
        double direct = poisson_pmf(mu, 0);  // only a has mass at 0
        for (long long k = 1; k <= 40; ++k)
            direct += std::abs(poisson_pmf(mu, k) - poisson_pmf(mu, k - 1));
        direct += poisson_pmf(mu, 40);  // only b has mass at 41
        CHECK(tv_distance(a, b) == doctest::Approx(direct / 2.0));
    }
    SUBCASE("metric properties on random distributions") {
        Rng rng(55);
        auto random_dist = [&](int support) {
            std::map<long long, double> d;
            double total = 0.0;
            for (int k = 0; k < support; ++k) {
                d[k] = rng.real() + 1e-3;
                total += d[k];
            }
            for (auto& [k, v] : d) v /= total;
            return d;
        };
        for (int rep = 0; rep < 30; ++rep) {
            const auto a = random_dist(8), b = random_dist(8), c = random_dist(8);
            CHECK(tv_distance(a, b) == doctest::Approx(tv_distance(b, a)));
            CHECK(tv_distance(a, a) < 1e-15);
            CHECK(tv_distance(a, c) <= tv_distance(a, b) + tv_distance(b, c) + 1e-12);
            CHECK(tv_distance(a, b) >= 0.0);
            CHECK(tv_distance(a, b) <= 1.0);
        }
    }
}

TEST_CASE("poisson pmf") {
    CHECK(poisson_pmf(1.7, 0) == doctest::Approx(std::exp(-1.7)));
    CHECK(poisson_pmf(0.0, 0) == doctest::Approx(1.0));
    CHECK(poisson_pmf(0.0, 3) == doctest::Approx(0.0));
    CHECK(poisson_pmf(4.0 / 3.0, 1) == doctest::Approx((4.0 / 3.0) * std::exp(-4.0 / 3.0)));
    // sums to one
    double total = 0.0;
    for (long long k = 0; k < 200; ++k) total += poisson_pmf(7.5, k);
    CHECK(total == doctest::Approx(1.0));
    CHECK_THROWS(poisson_pmf(-1.0, 0));
    CHECK_THROWS(poisson_pmf(1.0, -1));
}

TEST_CASE("poisson comparison report") {
    SUBCASE("a histogram shaped like the reference has negligible distance") {
        SampleStats stats;
        const double mu = 4.0 / 3.0;
        const long long scale = 1000000000;
        for (long long k = 0; k < 30; ++k) {
            const long long c = std::llround(poisson_pmf(mu, k) * scale);
            if (c > 0) {
                stats.histogram[k] = c;
                stats.n_samples += c;
            }
        }
        stats.finalize_moments();
        const auto cmp = compare_to_poisson(stats, mu);
        CHECK(cmp.tv < 1e-5);
        CHECK(cmp.mean_emp == doctest::Approx(mu).epsilon(1e-4));
    }
    SUBCASE("empty samples are an error") {
        SampleStats stats;
        CHECK_THROWS(compare_to_poisson(stats, 1.0));
    }
}

TEST_CASE("degree sequence checks") {
    SUBCASE("path on 5 vertices") {
        DegreeSequence d({1, 2, 2, 2, 1});
        Graph g(5);
        for (int i = 0; i + 1 < 5; ++i) g.add_edge(i, i + 1);
        const auto rep = degree_sequence_checks(d, g);
        CHECK(rep.m == 8);
        CHECK(rep.m2 == 6);
        CHECK(rep.m_minus_m2 == 2);
        CHECK(rep.all_components_paths);
        CHECK_FALSE(rep.m2_ge_m);
        CHECK_FALSE(rep.dbar_ge_2);
        CHECK(rep.iff_holds);
    }
    SUBCASE("cubic sequences have M2 = 2M") {
        DegreeSequence d(std::vector<int>(10, 3));
        const auto rep = degree_sequence_checks(d);
        CHECK(rep.m2 == 2 * rep.m);
        CHECK(rep.dbar == doctest::Approx(3.0));
        CHECK(rep.m2_ge_m);
        CHECK(rep.iff_holds);
    }
    SUBCASE("the provable direction holds over random graphical sequences") {
        // dbar >= 2 implies M2 >= M; the reverse implication fails for
        // sparse sequences with high-degree vertices (see the spider below)
        Rng rng(21);
        int sparse_seen = 0;
        for (int rep = 0; rep < 200; ++rep) {
            const auto d = oracles::random_graphical(4 + rng.below(8), 1, 3, rng);
            const auto r = degree_sequence_checks(d);
            if (r.dbar_ge_2) CHECK(r.m2_ge_m);
            if (!r.m2_ge_m) CHECK_FALSE(r.dbar_ge_2);
            if (!r.dbar_ge_2) ++sparse_seen;
        }
        CHECK(sparse_seen > 0);
    }
    SUBCASE("spider trees break the reverse implication") {
        // three degree-3 vertices and five leaves: M2 = 18 >= M = 14 while
        // dbar = 1.75 < 2, so M2 >= M does not force dbar >= 2
        const auto r = degree_sequence_checks(DegreeSequence({3, 3, 3, 1, 1, 1, 1, 1}));
        CHECK(r.m == 14);
        CHECK(r.m2 == 18);
        CHECK(r.m2_ge_m);
        CHECK_FALSE(r.dbar_ge_2);
        CHECK_FALSE(r.iff_holds);
    }
    SUBCASE("non-path components are detected") {
        Graph g(4);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 0);
        const auto rep = degree_sequence_checks(DegreeSequence({2, 2, 2, 0}), g);
        CHECK_FALSE(rep.all_components_paths);
    }
}

TEST_CASE("sample stats moments are consistent with the histogram") {
    SampleStats stats;
    Rng rng(77);
    for (int i = 0; i < 5000; ++i) stats.record(static_cast<long long>(rng.below(9)));
    stats.finalize_moments();
    double mean = 0.0;
    long long total = 0;
    for (const auto& [t, c] : stats.histogram) {
        mean += static_cast<double>(t) * c;
        total += c;
    }
    CHECK(total == stats.n_samples);
    mean /= total;
    CHECK(stats.mean == doctest::Approx(mean));
    CHECK(stats.n_samples == 5000);
}

TEST_CASE("scalar report bundles the derived quantities") {
    DegreeSequence d(std::vector<int>(100, 3));
    const auto rep = scalar_report(d, 2.0);
    CHECK(rep.m == 300);
    CHECK(rep.m2 == 600);
    CHECK(rep.mu == doctest::Approx(4.0 / 3.0));
    CHECK(rep.a_d == 150 * 149 / 2 - 300);
    CHECK(rep.a_d == d.a_pairs());
    CHECK(rep.nu == 3);
    CHECK(rep.lambda_mu == doctest::Approx(8.0 / 3.0));
}
