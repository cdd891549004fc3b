#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace mvkit {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic random generator. Gaussian draws use Box-Muller on top of
/// mt19937_64 so streams do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Independent stream derived from (seed, stream); used to make
    /// per-view / per-draw work order-independent.
    static Rng keyed(std::uint64_t seed, std::uint64_t stream) {
        return Rng(splitmix64(seed ^ splitmix64(stream + 0x193a6754a8a7d469ULL)));
    }

    std::uint64_t next() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (~n + 1) % n;
        for (;;) {
            std::uint64_t r = gen_();
            if (r >= threshold) return r % n;
        }
    }

    /// Standard normal draw (Box-Muller, pair cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols) {
        Eigen::MatrixXd m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal();
        return m;
    }

    /// k distinct indices from [0, n), in sampled order (partial Fisher-Yates).
    std::vector<Eigen::Index> sample_without_replacement(Eigen::Index n, Eigen::Index k) {
        std::vector<Eigen::Index> pool(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        std::vector<Eigen::Index> out(static_cast<std::size_t>(k));
        for (Eigen::Index i = 0; i < k; ++i) {
            const auto j = i + static_cast<Eigen::Index>(below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            out[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
        }
        return out;
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace mvkit
