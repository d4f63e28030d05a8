#pragma once

// Random group elements and maximizer parameters shared by the unit and acceptance tests.

#include <cmath>
#include <random>
#include <vector>

#include "strichartz/symmetry.hpp"

namespace testing_support {

using namespace strichartz;

inline Rotate random_rotation(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<double> u(static_cast<std::size_t>(n));
    for (auto& x : u) x = g(rng);
    return frame_rotation(u);
}

inline std::vector<double> random_vector(int n, double scale, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = u(rng);
    return v;
}

/// Schrodinger word with bounded generator sizes.
inline std::vector<GGenerator> random_g_word(int n, int length, std::mt19937_64& rng, double size = 1.0) {
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<GGenerator> w;
    while (static_cast<int>(w.size()) < length) {
        switch (pick(rng)) {
            case 0: w.push_back(Translate{0.3 * size * u(rng), random_vector(n, 0.5 * size, rng)}); break;
            case 1: w.push_back(ParabolicDilate{std::exp(0.2 * size * u(rng))}); break;
            case 2: w.push_back(Scale{std::exp(size * u(rng))}); break;
            case 3: w.push_back(random_rotation(n, rng)); break;
            case 4: w.push_back(Phase{3.0 * u(rng)}); break;
            default: w.push_back(Galilean{random_vector(n, 0.5 * size, rng)}); break;
        }
    }
    return w;
}

/// Wave word. Boosts are skipped when with_boost is false; relative phases
/// are skipped when same_phase is set.
inline std::vector<LGenerator> random_l_word(int n, int length, std::mt19937_64& rng, bool with_boost = true,
                                             bool same_phase = false, double size = 1.0) {
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<LGenerator> w;
    while (static_cast<int>(w.size()) < length) {
        switch (pick(rng)) {
            case 0: w.push_back(Translate{0.5 * size * u(rng), random_vector(n, 0.5 * size, rng)}); break;
            case 1: w.push_back(Dilate{std::exp(0.2 * size * u(rng))}); break;
            case 2: w.push_back(Scale{std::exp(size * u(rng))}); break;
            case 3: w.push_back(random_rotation(n, rng)); break;
            case 4: {
                const double a = 3.0 * u(rng);
                w.push_back(PhasePair{a, same_phase ? a : 3.0 * u(rng)});
                break;
            }
            default:
                if (with_boost) w.push_back(Boost{0.3 * size * u(rng)});
                break;
        }
    }
    return w;
}

/// Frequency-form Gaussian with -Re A in [0.2, 2].
inline ExpQuadraticParams random_gaussian(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ExpQuadraticParams p;
    p.space = Space::frequency;
    p.A = {-1.1 - 0.9 * u(rng), u(rng)};
    for (int i = 0; i < n; ++i) p.b.emplace_back(u(rng), 2.0 * u(rng));
    p.C = {u(rng), 3.0 * u(rng)};
    return p;
}

/// Cone params with |Re b| at most 0.8 (-Re A).
inline ConeExpParams random_cone(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ConeExpParams p;
    p.dim = n;
    p.A = {-1.1 - 0.9 * u(rng), u(rng)};
    std::vector<double> dir = random_vector(n, 1.0, rng);
    double len = 0.0;
    for (double x : dir) len += x * x;
    len = std::sqrt(len);
    const double r = 0.8 * (0.5 + 0.5 * u(rng)) * -p.A.real();
    p.b.clear();
    for (int i = 0; i < n; ++i) p.b.emplace_back(r * dir[static_cast<std::size_t>(i)] / len, 2.0 * u(rng));
    p.C = {u(rng), 3.0 * u(rng)};
    p.D = {u(rng), 3.0 * u(rng)};
    return p;
}

}  // namespace testing_support
