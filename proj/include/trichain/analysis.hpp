#pragma once

#include <map>
#include <vector>

#include "trichain/chains.hpp"
#include "trichain/degree_sequence.hpp"
#include "trichain/graph.hpp"

namespace trichain {

struct ScalarReport {
    long long m = 0;
    long long m2 = 0;
    double dbar = 0.0;
    double mu = 0.0;
    long long a_d = 0;
    long long nu = 0;
    double lambda_mu = 0.0;
};

ScalarReport scalar_report(const DegreeSequence& d, double lambda = 1.0);

// M2^3 / (6 M^3)
double mu_of(const DegreeSequence& d);

// Half the L1 distance between two distributions on a common countable
// support, clipped to [0, 1].
double tv_distance(const std::map<long long, double>& p, const std::map<long long, double>& q);

// e^{-mu} mu^k / k!, evaluated in log space.
double poisson_pmf(double mu, long long k);

struct PoissonComparison {
    double tv = 0.0;
    double mean_emp = 0.0;
    double mean_ref = 0.0;
    double var_emp = 0.0;
    double var_ref = 0.0;
    double se_mean = 0.0;  // batch-means standard error of the empirical mean
    std::vector<long long> support;
    std::vector<double> empirical_pmf;
    std::vector<double> poisson_pmf;
};

// Empirical t-distribution against Pois(mu). Thresholds are the caller's
// business; this only reports.
PoissonComparison compare_to_poisson(const SampleStats& stats, double mu);

struct DegreeChecksReport {
    long long m = 0;
    long long m2 = 0;
    double dbar = 0.0;
    bool m2_ge_m = false;
    bool dbar_ge_2 = false;
    bool iff_holds = false;          // M2 >= M  <=>  dbar >= 2
    bool has_graph = false;
    bool all_components_paths = false;
    long long m_minus_m2 = 0;
};

DegreeChecksReport degree_sequence_checks(const DegreeSequence& d);
DegreeChecksReport degree_sequence_checks(const DegreeSequence& d, const Graph& g);

}  // namespace trichain
