#pragma once

#include <vector>

#include "trichain/errors.hpp"

namespace trichain {

// Erdos-Gallai test on a non-increasing sequence (sum must be even).
bool erdos_gallai_graphical(const std::vector<int>& sorted_desc);

// A validated graphical degree sequence, stored non-increasing, with the
// scalars that drive everything else:
//   M  = sum d_i,  M2 = sum d_i (d_i - 1)
//   mu = M2^3 / (6 M^3)           (asymptotic mean triangle count)
//   a  = C(M/2, 2) - M2/2         (unordered non-incident edge pairs)
//   nu = floor(ln n / ln ln n)    (modified-chain cap, natural logs, min 1)
class DegreeSequence {
public:
    explicit DegreeSequence(std::vector<int> degrees);

    int n() const { return static_cast<int>(degrees_.size()); }
    const std::vector<int>& degrees() const { return degrees_; }
    int max_degree() const { return degrees_.front(); }
    int min_degree() const { return degrees_.back(); }

    long long m() const { return m_; }
    long long m2() const { return m2_; }
    double dbar() const { return static_cast<double>(m_) / n(); }
    double mu() const;
    long long a_pairs() const;
    long long default_nu() const;

private:
    std::vector<int> degrees_;
    long long m_ = 0;
    long long m2_ = 0;
};

}  // namespace trichain
