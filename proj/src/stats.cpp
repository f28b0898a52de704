#include "roughcocycle/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace rough {

MeanSe mean_se(std::span<const double> values) {
    const int n = static_cast<int>(values.size());
    if (n < 1) throw std::invalid_argument("mean_se: empty sample");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    if (n == 1) return {mean, 0.0, 1};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1) / n), n};
}

MeanSe variance_se(std::span<const double> values) {
    const int n = static_cast<int>(values.size());
    if (n < 2) throw std::invalid_argument("variance_se: need at least two samples");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    double var = ss / (n - 1);
    return {var, var * std::sqrt(2.0 / (n - 1)), n};
}

double fit_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_log_slope: need matching samples, at least two");
    const int n = static_cast<int>(x.size());
    double mx = 0.0, my = 0.0;
    std::vector<double> lx(n), ly(n);
    for (int i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_log_slope: values must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_log_slope: degenerate abscissae");
    return sxy / sxx;
}

double kendall_tau(std::span<const double> values) {
    const int n = static_cast<int>(values.size());
    if (n < 2) throw std::invalid_argument("kendall_tau: need at least two values");
    int concordant = 0, discordant = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (values[j] > values[i]) ++concordant;
            else if (values[j] < values[i]) ++discordant;
        }
    return static_cast<double>(concordant - discordant) / (0.5 * n * (n - 1));
}

double kendall_tau_grouped(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2)
        throw std::invalid_argument("kendall_tau_grouped: need at least two groups");
    long long concordant = 0, discordant = 0;
    for (size_t a = 0; a < groups.size(); ++a)
        for (size_t b = a + 1; b < groups.size(); ++b)
            for (double va : groups[a])
                for (double vb : groups[b]) {
                    if (vb > va) ++concordant;
                    else if (vb < va) ++discordant;
                }
    long long total = concordant + discordant;
    if (total == 0) return 0.0;
    return static_cast<double>(concordant - discordant) / static_cast<double>(total);
}

}  // namespace rough
