#include "strichartz/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <random>

#include "strichartz/errors.hpp"
#include "strichartz/lens.hpp"
#include "strichartz/parallel.hpp"

namespace strichartz {

using std::numbers::pi;

const char* to_string(AscentMethod m) { return m == AscentMethod::lens ? "lens" : "window"; }

void AscentConfig::validate() const {
    if (max_iters < 0) throw InvalidArgument("max_iters must be >= 0");
    if (!(step > 0.0)) throw InvalidArgument("step must be positive");
    if (!(step_decay > 0.0 && step_decay < 1.0)) throw InvalidArgument("step_decay must lie in (0, 1)");
    if (!(grad_tol > 0.0)) throw InvalidArgument("grad_tol must be positive");
    if (!(armijo > 0.0 && armijo < 1.0)) throw InvalidArgument("armijo must lie in (0, 1)");
    if (max_backtracks < 1) throw InvalidArgument("max_backtracks must be >= 1");
    if (hermite_degree < 0) throw InvalidArgument("hermite_degree must be >= 0");
    if (band_limit < 0.0) throw InvalidArgument("band_limit must be >= 0");
    if (support_radius < 0.0) throw InvalidArgument("support_radius must be >= 0");
    if (oversample < 0) throw InvalidArgument("oversample must be >= 0");
}

double field_inner(const ComplexField& a, const ComplexField& b) {
    if (!(a.grid == b.grid) || a.space != b.space) throw InvalidArgument("fields differ in grid or space");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::real(std::conj(a.values[i]) * b.values[i]);
    if (a.space == Space::physical) return s * a.grid.cell_volume();
    return s * a.grid.dual_cell_volume() / std::pow(2.0 * pi, a.grid.dim);
}

double pair_inner(const WaveSplitPair& a, const WaveSplitPair& b) {
    return field_inner(a.f_plus, b.f_plus) + field_inner(a.f_minus, b.f_minus);
}

namespace {

constexpr std::size_t kBlocks = 32;

void check_spec(const EvolutionSpec& spec, Equation eq, int dim) {
    spec.validate();
    if (spec.equation != eq) throw InvalidArgument(std::string("spec is not a ") + to_string(eq) + " spec");
    if (spec.dim != dim) throw InvalidArgument("field dimension does not match spec dimension");
}

double power(double r2, double p) { return std::pow(r2, 0.5 * p); }

// ||u||_p^p over the window and, optionally, the frequency-space adjoint sum
// sum_t dt exp(-i t |xi|^2) FT(p |u|^(p-2) u).
double schr_window(const ComplexField& fhat, const EvolutionSpec& spec, std::vector<cplx>* adj) {
    const Grid& g = fhat.grid;
    const double p = spec.p();
    const double dt = spec.times.dt();
    const double vol = g.cell_volume();
    std::vector<double> k2(fhat.size());
    for (std::size_t i = 0; i < k2.size(); ++i) k2[i] = fhat.radius(i) * fhat.radius(i);
    const auto nt = static_cast<std::size_t>(spec.times.count);
    const std::size_t nb = std::min(kBlocks, nt);
    std::vector<double> part(nt, 0.0);
    std::vector<std::vector<cplx>> acc(adj ? nb : 0);
    parallel_for(nb, [&](std::size_t blk) {
        if (adj) acc[blk].assign(fhat.size(), cplx{0.0, 0.0});
        for (std::size_t k = nt * blk / nb; k < nt * (blk + 1) / nb; ++k) {
            const double t = spec.times.time(static_cast<int>(k));
            ComplexField m(g, Space::frequency);
            for (std::size_t i = 0; i < m.size(); ++i) m.values[i] = std::polar(1.0, t * k2[i]) * fhat.values[i];
            ComplexField u = inverse_fourier(m);
            double s = 0.0;
            for (auto& v : u.values) {
                const double r2 = std::norm(v);
                const double pw = power(r2, p);
                s += pw;
                v = r2 > 0 ? p * pw / r2 * dt * v : cplx{0.0, 0.0};
            }
            part[k] = s * vol * dt;
            if (adj) {
                const ComplexField w = forward_fourier(u);
                for (std::size_t i = 0; i < w.size(); ++i) acc[blk][i] += std::polar(1.0, -t * k2[i]) * w.values[i];
            }
        }
    });
    if (adj) {
        adj->assign(fhat.size(), cplx{0.0, 0.0});
        for (const auto& a : acc)
            for (std::size_t i = 0; i < a.size(); ++i) (*adj)[i] += a[i];
    }
    return pairwise_sum(part);
}

// Flat indices of g's frequency cells inside the grid with factor times as
// many points over the same extent.
std::vector<std::size_t> embed_index(const Grid& g, const Grid& fine, int factor) {
    std::vector<std::size_t> idx(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::size_t r = i, j = 0, stride = 1;
        for (int a = g.dim - 1; a >= 0; --a) {
            const auto na = static_cast<std::size_t>(g.points[static_cast<std::size_t>(a)]);
            const std::size_t k = r % na;
            r /= na;
            j += (k + na * static_cast<std::size_t>(factor - 1) / 2) * stride;
            stride *= static_cast<std::size_t>(fine.points[static_cast<std::size_t>(a)]);
        }
        idx[i] = j;
    }
    return idx;
}

Grid refined(const Grid& g, int factor) {
    std::array<int, 3> pts = g.points;
    for (int a = 0; a < g.dim; ++a) pts[static_cast<std::size_t>(a)] *= factor;
    return Grid(g.dim, pts, g.extent);
}

struct WaveWeights {
    std::vector<double> mod, weight;
};

WaveWeights wave_weights(const ComplexField& fhat) {
    WaveWeights w;
    w.mod.resize(fhat.size());
    w.weight.resize(fhat.size());
    for (std::size_t i = 0; i < fhat.size(); ++i) {
        w.mod[i] = fhat.radius(i);
        w.weight[i] = 1.0 / std::sqrt(regularized_frequency(fhat, i));
    }
    return w;
}

// Physical sums run on the spectrum zero-padded by `over` per axis.
double wave_window(const WaveSplitPair& pair, const EvolutionSpec& spec, int over, std::vector<cplx>* gp,
                   std::vector<cplx>* gm) {
    const Grid& g = pair.f_plus.grid;
    const Grid fine = refined(g, over);
    const std::vector<std::size_t> idx = embed_index(g, fine, over);
    const WaveWeights w = wave_weights(pair.f_plus);
    const double p = spec.p();
    const double dt = spec.times.dt();
    const double vol = fine.cell_volume();
    const auto nt = static_cast<std::size_t>(spec.times.count);
    const std::size_t nb = std::min(kBlocks, nt);
    const bool grad = gp != nullptr;
    std::vector<double> part(nt, 0.0);
    std::vector<std::vector<cplx>> ap(grad ? nb : 0), am(grad ? nb : 0);
    parallel_for(nb, [&](std::size_t blk) {
        if (grad) {
            ap[blk].assign(g.size(), cplx{0.0, 0.0});
            am[blk].assign(g.size(), cplx{0.0, 0.0});
        }
        for (std::size_t k = nt * blk / nb; k < nt * (blk + 1) / nb; ++k) {
            const double t = spec.times.time(static_cast<int>(k));
            ComplexField m(fine, Space::frequency);
            for (std::size_t i = 0; i < g.size(); ++i)
                m.values[idx[i]] = w.weight[i] * (std::polar(1.0, t * w.mod[i]) * pair.f_plus.values[i] +
                                                  std::polar(1.0, -t * w.mod[i]) * pair.f_minus.values[i]);
            ComplexField u = inverse_fourier(m);
            double s = 0.0;
            for (auto& v : u.values) {
                const double r2 = std::norm(v);
                const double pw = power(r2, p);
                s += pw;
                v = r2 > 0 ? p * pw / r2 * dt * v : cplx{0.0, 0.0};
            }
            part[k] = s * vol * dt;
            if (grad) {
                const ComplexField W = forward_fourier(u);
                for (std::size_t i = 0; i < g.size(); ++i) {
                    ap[blk][i] += w.weight[i] * std::polar(1.0, -t * w.mod[i]) * W.values[idx[i]];
                    am[blk][i] += w.weight[i] * std::polar(1.0, t * w.mod[i]) * W.values[idx[i]];
                }
            }
        }
    });
    if (grad) {
        gp->assign(g.size(), cplx{0.0, 0.0});
        gm->assign(g.size(), cplx{0.0, 0.0});
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t i = 0; i < g.size(); ++i) {
                (*gp)[i] += ap[b][i];
                (*gm)[i] += am[b][i];
            }
    }
    return pairwise_sum(part);
}

WaveSplitPair as_frequency(const WaveSplitPair& pair) {
    return {to_space(pair.f_plus, Space::frequency), to_space(pair.f_minus, Space::frequency)};
}

}  // namespace

double window_power_ratio(const ComplexField& f, const EvolutionSpec& spec) {
    check_spec(spec, Equation::schrodinger, f.grid.dim);
    const ComplexField fhat = to_space(f, Space::frequency);
    const double P = schr_window(fhat, spec, nullptr);
    const double N = std::pow(l2_norm(fhat) / std::pow(2.0 * pi, 0.5 * spec.dim), 2);
    if (!(N > 0)) throw InvalidArgument("zero field");
    return P / std::pow(N, 0.5 * spec.p());
}

double window_power_ratio(const WaveSplitPair& pair0, const EvolutionSpec& spec, int oversample) {
    if (oversample < 1) throw InvalidArgument("oversample must be >= 1");
    pair0.validate();
    check_spec(spec, Equation::wave, pair0.f_plus.grid.dim);
    const WaveSplitPair pair = as_frequency(pair0);
    const double P = wave_window(pair, spec, oversample, nullptr, nullptr);
    const double N = std::pow(wave_data_norm(pair), 2);
    if (!(N > 0)) throw InvalidArgument("zero field");
    return P / std::pow(N, 0.5 * spec.p());
}

ComplexField quotient_gradient(const ComplexField& f, const EvolutionSpec& spec) {
    check_spec(spec, Equation::schrodinger, f.grid.dim);
    const ComplexField fhat = to_space(f, Space::frequency);
    std::vector<cplx> adj;
    const double P = schr_window(fhat, spec, &adj);
    const double p = spec.p();
    const double N = field_inner(fhat, fhat);
    if (!(N > 0)) throw InvalidArgument("zero field");
    const double scale = std::pow(N, -0.5 * p);
    ComplexField G(fhat.grid, Space::frequency);
    for (std::size_t i = 0; i < G.size(); ++i) G.values[i] = (adj[i] - p * P / N * fhat.values[i]) * scale;
    return to_space(G, f.space);
}

WaveSplitPair quotient_gradient(const WaveSplitPair& pair0, const EvolutionSpec& spec, int oversample) {
    if (oversample < 1) throw InvalidArgument("oversample must be >= 1");
    pair0.validate();
    check_spec(spec, Equation::wave, pair0.f_plus.grid.dim);
    const WaveSplitPair pair = as_frequency(pair0);
    std::vector<cplx> gp, gm;
    const double P = wave_window(pair, spec, oversample, &gp, &gm);
    const double p = spec.p();
    const double N = std::pow(wave_data_norm(pair), 2);
    if (!(N > 0)) throw InvalidArgument("zero field");
    const double scale = std::pow(N, -0.5 * p);
    const Grid& g = pair.f_plus.grid;
    WaveSplitPair out{ComplexField(g, Space::frequency), ComplexField(g, Space::frequency)};
    for (std::size_t i = 0; i < g.size(); ++i) {
        out.f_plus.values[i] = (gp[i] - 2.0 * p * P / N * pair.f_plus.values[i]) * scale;
        out.f_minus.values[i] = (gm[i] - 2.0 * p * P / N * pair.f_minus.values[i]) * scale;
    }
    return out;
}

namespace {

using RatioFn = std::function<double(const std::vector<cplx>&, std::vector<cplx>*)>;

struct Problem {
    RatioFn ratio;
    double weight = 1.0;  // <a, b> = weight Re sum conj(a) b
    std::function<double(double)> quotient;
    std::function<void(std::vector<cplx>&)> mask;
};

double wnorm(const std::vector<cplx>& v, double weight) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(weight * s);
}

void normalise(std::vector<cplx>& v, double weight) {
    const double n = wnorm(v, weight);
    if (!(n > 0)) throw InvalidArgument("ascent state vanished");
    for (auto& x : v) x /= n;
}

std::vector<cplx> ascend(const Problem& pb, std::vector<cplx> x, const AscentConfig& cfg, AscentTrace& tr) {
    normalise(x, pb.weight);
    std::vector<cplx> g;
    double J = pb.ratio(x, &g);
    if (pb.mask) pb.mask(g);
    ++tr.evaluations;
    tr.quotients.push_back(pb.quotient(J));
    tr.max_evaluated = tr.quotients.back();
    tr.stop_reason = "max_iters";
    std::vector<cplx> xn(x.size());
    double last = cfg.step;
    for (int it = 0; it < cfg.max_iters; ++it) {
        const double gn = wnorm(g, pb.weight);
        tr.grad_norms.push_back(gn);
        tr.final_grad_norm = gn;
        if (gn < cfg.grad_tol) {
            tr.stop_reason = "grad_tol";
            return x;
        }
        // first trial is the configured step, later ones restart near the last accepted step
        double s = std::min(cfg.step, last / (cfg.step_decay * cfg.step_decay));
        bool accepted = false;
        for (int b = 0; b < cfg.max_backtracks; ++b) {
            for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] + s * g[i];
            normalise(xn, pb.weight);
            const double Jn = pb.ratio(xn, nullptr);
            ++tr.evaluations;
            tr.max_evaluated = std::max(tr.max_evaluated, pb.quotient(Jn));
            if (Jn >= J + cfg.armijo * s * gn * gn) {
                accepted = true;
                break;
            }
            s *= cfg.step_decay;
        }
        if (!accepted) {
            if (cfg.armijo * s * gn * gn <= 1e-14 * std::abs(J)) {
                tr.stop_reason = "stagnated";
                return x;
            }
            throw StagnationError("backtracking failed " + std::to_string(cfg.max_backtracks) +
                                  " times at iteration " + std::to_string(it));
        }
        last = s;
        x.swap(xn);
        J = pb.ratio(x, &g);
        if (pb.mask) pb.mask(g);
        ++tr.evaluations;
        tr.quotients.push_back(pb.quotient(J));
        tr.iterations = it + 1;
    }
    tr.final_grad_norm = wnorm(g, pb.weight);
    return x;
}

int default_degree(int n) { return n == 1 ? 24 : 16; }

}  // namespace

int window_oversample(const EvolutionSpec& spec, const AscentConfig& cfg) {
    if (cfg.oversample > 0) return cfg.oversample;
    return spec.equation == Equation::wave ? static_cast<int>(std::ceil(0.5 * spec.p())) : 1;
}

namespace {

void attach_fit(AscentTrace& tr, const ComplexField& field, const EvolutionSpec& spec) {
    try {
        tr.fit = fit_maximizer_family(field, spec);
        tr.has_fit = true;
    } catch (const Error&) {
        tr.has_fit = false;
    }
}

}  // namespace

AscentTrace maximize_quotient(const ComplexField& f0, const EvolutionSpec& spec, const AscentConfig& cfg) {
    cfg.validate();
    check_spec(spec, Equation::schrodinger, f0.grid.dim);
    AscentTrace tr;
    tr.method = cfg.method;
    if (cfg.method == AscentMethod::lens) {
        const HermiteLens lens(spec.dim, cfg.hermite_degree > 0 ? cfg.hermite_degree : default_degree(spec.dim));
        Problem pb;
        pb.ratio = [&](const std::vector<cplx>& a, std::vector<cplx>* g) { return lens.power_ratio(a, g); };
        pb.quotient = [&](double J) { return lens.quotient_from_ratio(J); };
        const auto a = ascend(pb, lens.project(f0), cfg, tr);
        tr.final_field = lens.sample(a, f0.grid);
    } else {
        const ComplexField f = to_space(f0, Space::physical);
        const double p = spec.p();
        Problem pb;
        pb.weight = f.grid.cell_volume();
        pb.ratio = [&](const std::vector<cplx>& v, std::vector<cplx>* g) {
            const ComplexField x(f.grid, Space::physical, v);
            if (g) *g = quotient_gradient(x, spec).values;
            return window_power_ratio(x, spec);
        };
        pb.quotient = [p](double J) { return std::pow(J, 1.0 / p); };
        std::vector<cplx> x = f.values;
        if (cfg.band_limit > 0.0) {
            // orthogonal projection onto |xi| <= band_limit, applied to the seed and every gradient
            const double band = cfg.band_limit;
            const Grid grid = f.grid;
            pb.mask = [band, grid](std::vector<cplx>& v) {
                ComplexField fh = forward_fourier(ComplexField(grid, Space::physical, std::move(v)));
                for (std::size_t i = 0; i < fh.size(); ++i)
                    if (fh.radius(i) > band) fh.values[i] = 0.0;
                v = inverse_fourier(fh).values;
            };
            pb.mask(x);
        }
        tr.final_field = ComplexField(f.grid, Space::physical, ascend(pb, x, cfg, tr));
    }
    attach_fit(tr, tr.final_field, spec);
    return tr;
}

AscentTrace maximize_quotient(const WaveSplitPair& p0, const EvolutionSpec& spec, const AscentConfig& cfg) {
    cfg.validate();
    p0.validate();
    check_spec(spec, Equation::wave, p0.f_plus.grid.dim);
    const WaveSplitPair pair = as_frequency(p0);
    const Grid& grid = pair.f_plus.grid;
    const std::size_t n = grid.size();
    const double p = spec.p();
    const int over = window_oversample(spec, cfg);
    auto split = [&](const std::vector<cplx>& v) {
        WaveSplitPair w{ComplexField(grid, Space::frequency), ComplexField(grid, Space::frequency)};
        std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n), w.f_plus.values.begin());
        std::copy(v.begin() + static_cast<std::ptrdiff_t>(n), v.end(), w.f_minus.values.begin());
        return w;
    };
    AscentTrace tr;
    tr.method = AscentMethod::window;
    Problem pb;
    pb.quotient = [p](double J) { return std::pow(J, 1.0 / p); };
    if (cfg.support_radius > 0.0) {
        std::vector<double> root(n);
        for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(regularized_frequency(pair.f_plus, i));
        const cplx I{0.0, 1.0};
        auto to_pair = [&](const std::vector<cplx>& v) {
            const ComplexField fh = forward_fourier(ComplexField(grid, Space::physical, {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)}));
            const ComplexField gh = forward_fourier(ComplexField(grid, Space::physical, {v.begin() + static_cast<std::ptrdiff_t>(n), v.end()}));
            WaveSplitPair w{ComplexField(grid, Space::frequency), ComplexField(grid, Space::frequency)};
            for (std::size_t i = 0; i < n; ++i) {
                w.f_plus.values[i] = 0.5 * (root[i] * fh.values[i] - I / root[i] * gh.values[i]);
                w.f_minus.values[i] = 0.5 * (root[i] * fh.values[i] + I / root[i] * gh.values[i]);
            }
            return w;
        };
        std::vector<bool> outside(n);
        const ComplexField probe(grid, Space::physical);
        for (std::size_t i = 0; i < n; ++i) outside[i] = probe.radius(i) > cfg.support_radius;
        pb.weight = grid.cell_volume();
        pb.ratio = [&](const std::vector<cplx>& v, std::vector<cplx>* g) {
            const WaveSplitPair w = to_pair(v);
            if (g) {
                const WaveSplitPair gr = quotient_gradient(w, spec, over);
                ComplexField gf(grid, Space::frequency), gg(grid, Space::frequency);
                for (std::size_t i = 0; i < n; ++i) {
                    gf.values[i] = 0.5 * root[i] * (gr.f_plus.values[i] + gr.f_minus.values[i]);
                    gg.values[i] = 0.5 * I / root[i] * (gr.f_plus.values[i] - gr.f_minus.values[i]);
                }
                const ComplexField pf = inverse_fourier(gf), pg = inverse_fourier(gg);
                g->assign(pf.values.begin(), pf.values.end());
                g->insert(g->end(), pg.values.begin(), pg.values.end());
            }
            return window_power_ratio(w, spec, over);
        };
        pb.mask = [outside, n](std::vector<cplx>& g) {
            for (std::size_t i = 0; i < n; ++i)
                if (outside[i]) g[i] = g[i + n] = cplx{0.0, 0.0};
        };
        ComplexField fh(grid, Space::frequency), gh(grid, Space::frequency);
        for (std::size_t i = 0; i < n; ++i) {
            fh.values[i] = (pair.f_plus.values[i] + pair.f_minus.values[i]) / root[i];
            gh.values[i] = I * root[i] * (pair.f_plus.values[i] - pair.f_minus.values[i]);
        }
        const ComplexField f = inverse_fourier(fh), g = inverse_fourier(gh);
        std::vector<cplx> x(f.values);
        x.insert(x.end(), g.values.begin(), g.values.end());
        pb.mask(x);
        tr.final_pair = to_pair(ascend(pb, x, cfg, tr));
        attach_fit(tr, tr.final_pair.f_plus, spec);
        return tr;
    }
    pb.weight = grid.dual_cell_volume() / std::pow(2.0 * pi, grid.dim);
    pb.ratio = [&](const std::vector<cplx>& v, std::vector<cplx>* g) {
        const WaveSplitPair w = split(v);
        if (g) {
            const WaveSplitPair gr = quotient_gradient(w, spec, over);
            g->assign(gr.f_plus.values.begin(), gr.f_plus.values.end());
            g->insert(g->end(), gr.f_minus.values.begin(), gr.f_minus.values.end());
        }
        return window_power_ratio(w, spec, over);
    };
    if (cfg.band_limit > 0.0) {
        std::vector<bool> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = pair.f_plus.radius(i) > cfg.band_limit;
        pb.mask = [out, n](std::vector<cplx>& g) {
            for (std::size_t i = 0; i < n; ++i)
                if (out[i]) g[i] = g[i + n] = cplx{0.0, 0.0};
        };
    }
    std::vector<cplx> x(pair.f_plus.values);
    x.insert(x.end(), pair.f_minus.values.begin(), pair.f_minus.values.end());
    if (pb.mask) pb.mask(x);
    tr.final_pair = split(ascend(pb, x, cfg, tr));
    attach_fit(tr, tr.final_pair.f_plus, spec);
    return tr;
}

double ascent_grid_error(const EvolutionSpec& spec, const AscentConfig& cfg, const Grid& g) {
    const double S = sharp_constant(spec.equation, spec.dim).value;
    if (spec.equation == Equation::wave) {
        const WaveSplitPair w = sample_cone_maximizer(canonical_cone_params(spec.dim), g);
        return std::abs(std::pow(window_power_ratio(w, spec, window_oversample(spec, cfg)), 1.0 / spec.p()) - S);
    }
    const ComplexField f = sample_gaussian_maximizer(canonical_gaussian(spec.dim, Space::physical), g);
    if (cfg.method == AscentMethod::lens) {
        const HermiteLens lens(spec.dim, cfg.hermite_degree > 0 ? cfg.hermite_degree : default_degree(spec.dim));
        std::vector<cplx> a(lens.size(), cplx{0.0, 0.0});
        a[0] = 1.0;
        return std::max(std::abs(lens.quotient(a) - S), 1e-12);
    }
    return std::abs(std::pow(window_power_ratio(f, spec), 1.0 / spec.p()) - S);
}

ComplexField random_seed_field(const Grid& g, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif;
    struct Bump {
        cplx c;
        std::array<double, 3> x0{}, k{};
        double w;
    };
    std::vector<Bump> bumps(3);
    for (auto& b : bumps) {
        const double re = normal(rng);
        b.c = {re, normal(rng)};
        for (int a = 0; a < g.dim; ++a) {
            b.x0[static_cast<std::size_t>(a)] = scale * normal(rng);
            b.k[static_cast<std::size_t>(a)] = normal(rng) / scale;
        }
        b.w = scale * scale * (0.5 + unif(rng));
    }
    return ComplexField::sample(g, Space::physical, [&](const std::array<double, 3>& x) {
        cplx s{0.0, 0.0};
        for (const auto& b : bumps) {
            double r2 = 0.0, ph = 0.0;
            for (int a = 0; a < g.dim; ++a) {
                const auto i = static_cast<std::size_t>(a);
                r2 += (x[i] - b.x0[i]) * (x[i] - b.x0[i]);
                ph += b.k[i] * x[i];
            }
            s += b.c * std::polar(std::exp(-r2 / b.w), ph);
        }
        return s;
    });
}

ExpFamilyFit fit_maximizer_family(const ComplexField& field, const EvolutionSpec& spec, double window) {
    if (!(window > 0.0 && window < 1.0)) throw InvalidArgument("window must lie in (0, 1)");
    const bool wave = spec.equation == Equation::wave;
    const int n = field.grid.dim;
    if (n != spec.dim) throw InvalidArgument("field dimension does not match spec dimension");
    FeqKind kind;
    if (!wave && n == 1) kind = FeqKind::schr1;
    else if (!wave && n == 2) kind = FeqKind::schr2;
    else if (wave && n == 2) kind = FeqKind::wave2;
    else if (wave && n == 3) kind = FeqKind::wave3;
    else throw UnsupportedCase("no family fit for this equation and dimension");
    const ComplexField f = to_space(field, wave ? Space::frequency : Space::physical);
    const Grid& g = f.grid;
    std::vector<cplx> vals(f.values);
    std::vector<bool> usable(g.size(), true);
    if (wave) {
        usable[g.zero_index()] = false;
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] *= std::sqrt(f.radius(i));
    }
    std::size_t peak = 0;
    double vmax = -1.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (usable[i] && std::abs(vals[i]) > vmax) {
            vmax = std::abs(vals[i]);
            peak = i;
        }
    if (!(vmax > 0.0)) throw VanishingSampleError("field vanishes on the fit window");
    const double thr = window * vmax;
    std::vector<long> order_of(g.size(), -1);
    std::vector<Point> pts;
    std::vector<cplx> vs;
    std::vector<long> parents;
    std::queue<std::pair<std::size_t, long>> q;
    q.push({peak, -1});
    order_of[peak] = 0;
    while (!q.empty()) {
        const auto [i, par] = q.front();
        q.pop();
        const long me = static_cast<long>(pts.size());
        order_of[i] = me;
        const auto pt = f.point(i);
        pts.emplace_back(pt.begin(), pt.begin() + n);
        vs.push_back(vals[i]);
        parents.push_back(par);
        const auto idx = g.unflatten(i);
        for (int a = 0; a < n; ++a)
            for (int d : {-1, 1}) {
                auto j = idx;
                j[static_cast<std::size_t>(a)] += d;
                if (j[static_cast<std::size_t>(a)] < 0 || j[static_cast<std::size_t>(a)] >= g.points[static_cast<std::size_t>(a)]) continue;
                const std::size_t fj = g.flatten(j);
                if (order_of[fj] != -1 || !usable[fj] || std::abs(vals[fj]) < thr) continue;
                order_of[fj] = -2;  // queued
                q.push({fj, me});
            }
    }
    return fit_exponential(pts, vs, kind, parents);
}

ExpQuadraticParams fitted_gaussian(const ExpFamilyFit& fit) {
    if (fit.kind != FeqKind::schr1 && fit.kind != FeqKind::schr2)
        throw InvalidArgument("fit is not a Schrodinger family fit");
    ExpQuadraticParams p;
    p.A = fit.A;
    p.b = fit.b;
    p.C = fit.C;
    p.space = Space::physical;
    return p;
}

PerturbationScan perturbation_scan(const ExpQuadraticParams& params, const EvolutionSpec& spec,
                                   const std::vector<ComplexField>& directions, const std::vector<double>& amplitudes,
                                   int hermite_degree) {
    check_spec(spec, Equation::schrodinger, params.dim());
    params.validate();
    if (directions.empty()) throw InvalidArgument("no perturbation directions");
    const Grid& g = directions.front().grid;
    const HermiteLens lens(spec.dim, hermite_degree > 0 ? hermite_degree : default_degree(spec.dim));
    const ExpQuadraticParams phys = params.space == Space::physical ? params : to_physical(params);
    const auto a0 = lens.project(sample_gaussian_maximizer(phys, g));
    double n0 = 0.0;
    for (const auto& v : a0) n0 += std::norm(v);
    n0 = std::sqrt(n0);
    PerturbationScan out;
    out.base_quotient = lens.quotient(a0);
    for (std::size_t d = 0; d < directions.size(); ++d) {
        if (!(directions[d].grid == g)) throw InvalidArgument("directions must share one grid");
        auto h = lens.project(directions[d]);
        double nh = 0.0;
        for (const auto& v : h) nh += std::norm(v);
        nh = std::sqrt(nh);
        if (!(nh > 0.0)) throw InvalidArgument("direction vanishes on the Hermite span");
        for (auto& v : h) v *= n0 / nh;
        double s24 = 0.0, sc2 = 0.0;
        std::vector<std::pair<double, double>> pts;
        for (double eps : amplitudes) {
            std::vector<cplx> a(a0);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += eps * h[i];
            PerturbationRow row;
            row.direction = d;
            row.amplitude = eps;
            row.quotient = eps == 0.0 ? out.base_quotient : lens.quotient(a);
            row.change = row.quotient - out.base_quotient;
            out.rows.push_back(row);
            pts.emplace_back(eps, row.change);
            s24 += std::pow(eps, 4);
            sc2 += row.change * eps * eps;
        }
        const double c = s24 > 0 ? -sc2 / s24 : 0.0;
        double mean = 0.0;
        for (const auto& [e, ch] : pts) mean += ch;
        mean /= static_cast<double>(std::max<std::size_t>(pts.size(), 1));
        double ss_res = 0.0, ss_tot = 0.0;
        for (const auto& [e, ch] : pts) {
            ss_res += std::pow(ch + c * e * e, 2);
            ss_tot += std::pow(ch - mean, 2);
        }
        out.curvature.push_back(c);
        out.r_squared.push_back(ss_tot > 0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0));
    }
    return out;
}

}  // namespace strichartz
