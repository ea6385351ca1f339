#include "trichain/degree_sequence.hpp"

#include <algorithm>
#include <cmath>

namespace trichain {

bool erdos_gallai_graphical(const std::vector<int>& d) {
    const int n = static_cast<int>(d.size());
    long long sum = 0;
    for (int x : d) {
        if (x < 0 || x > n - 1) return false;
        sum += x;
    }
    if (sum % 2 != 0) return false;

    // prefix sums and the k(k-1) + sum min(d_i, k) bound
    std::vector<long long> prefix(n + 1, 0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + d[i];
    for (int k = 1; k <= n; ++k) {
        long long lhs = prefix[k];
        long long rhs = static_cast<long long>(k) * (k - 1);
        for (int i = k; i < n; ++i) rhs += std::min(d[i], k);
        if (lhs > rhs) return false;
    }
    return true;
}

DegreeSequence::DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
    if (degrees_.empty()) throw NonGraphical("empty degree sequence");
    std::sort(degrees_.begin(), degrees_.end(), std::greater<int>());
    for (int d : degrees_) {
        m_ += d;
        m2_ += static_cast<long long>(d) * (d - 1);
    }
    if (m_ % 2 != 0) throw NonGraphical("odd degree sum");
    if (!erdos_gallai_graphical(degrees_)) throw NonGraphical("sequence is not graphical");
}

double DegreeSequence::mu() const {
    if (m_ == 0) return 0.0;
    const double r = static_cast<double>(m2_) / static_cast<double>(m_);
    return r * r * r / 6.0;
}

long long DegreeSequence::a_pairs() const {
    const long long half = m_ / 2;
    return half * (half - 1) / 2 - m2_ / 2;
}

long long DegreeSequence::default_nu() const {
    const int nn = n();
    if (nn < 3) return 1;
    const double v = std::log(static_cast<double>(nn));
    const double vv = std::log(v);
    if (vv <= 0.0) return 1;
    return std::max(1LL, static_cast<long long>(std::floor(v / vv)));
}

}  // namespace trichain
