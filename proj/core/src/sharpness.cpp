#include "blowzoom/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "blowzoom/parallel.hpp"
#include "blowzoom/transport.hpp"

namespace blowzoom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sorted 1-d view with prefix sums for fast ball masses and slices
struct LineView {
    std::vector<double> x;
    std::vector<double> cum;  // cum[i] = sum of weights < index i

    explicit LineView(const AtomicMeasure& mu) {
        if (mu.dim() != 1) throw std::invalid_argument("sharpness: measures must be on R");
        x = mu.positions();
        cum.resize(x.size() + 1, 0.0);
        for (std::size_t i = 0; i < mu.size(); ++i) cum[i + 1] = cum[i] + mu.weight(i);
    }

    double mass_closed(double lo, double hi) const {
        auto a = std::lower_bound(x.begin(), x.end(), lo);
        auto b = std::upper_bound(x.begin(), x.end(), hi);
        return cum[b - x.begin()] - cum[a - x.begin()];
    }

    // weights retrieved from consecutive cum differences
    double weight(std::size_t i) const { return cum[i + 1] - cum[i]; }
};

// h-atomization of the Heaviside reference on [0, half], or of full Lebesgue
// on [-half, half] when two_sided
struct Reference {
    std::vector<double> pos;
    double w = 0.0;
    double mass = 0.0;

    Reference(double half, double h, bool two_sided) {
        double len = two_sided ? 2.0 * half : half;
        auto n = static_cast<std::size_t>(std::llround(len / h));
        if (n < 1) n = 1;
        if (n > 16u * 1000u * 1000u)
            throw std::invalid_argument("sharpness: reference atomization too fine; pass a larger h");
        w = len / static_cast<double>(n);
        double lo = two_sided ? -half : 0.0;
        pos.resize(n);
        for (std::size_t j = 0; j < n; ++j) pos[j] = lo + (static_cast<double>(j) + 0.5) * w;
        mass = len;
    }
};

// F_{window}(c T_{y,s#} mu, ref): merge the blown slice of mu with the signed
// reference and run the line solver on [-half, half]
double blown_distance(const LineView& mu, double y, double s, double c, const Reference& ref,
                      double half) {
    auto lo_it = std::lower_bound(mu.x.begin(), mu.x.end(), y - half * s);
    auto hi_it = std::upper_bound(mu.x.begin(), mu.x.end(), y + half * s);
    std::size_t lo = lo_it - mu.x.begin(), hi = hi_it - mu.x.begin();

    std::vector<double> xs, cs;
    xs.reserve((hi - lo) + ref.pos.size());
    cs.reserve((hi - lo) + ref.pos.size());
    std::size_t i = lo, j = 0;
    while (i < hi || j < ref.pos.size()) {
        double bx = i < hi ? (mu.x[i] - y) / s : kInf;
        double rx = j < ref.pos.size() ? ref.pos[j] : kInf;
        if (bx < rx) {
            if (bx >= -half && bx <= half) {
                xs.push_back(bx);
                cs.push_back(c * mu.weight(i));
            }
            ++i;
        } else if (rx < bx) {
            xs.push_back(rx);
            cs.push_back(-ref.w);
            ++j;
        } else {
            xs.push_back(bx);
            cs.push_back(c * mu.weight(i) - ref.w);
            ++i;
            ++j;
        }
    }
    std::vector<double> neg(cs.size());
    for (std::size_t t = 0; t < cs.size(); ++t) neg[t] = -cs[t];
    return std::max(line_flat_optimum(xs, cs, half), line_flat_optimum(xs, neg, half));
}

double default_h(const SharpnessConfig& cfg) {
    if (cfg.h > 0.0) return cfg.h;
    // reference slack 13.5 h an order below the F_3 search threshold eps^2
    return cfg.eps * cfg.eps / 135.0;
}

}  // namespace

std::optional<SupportGap> support_gap_scan(const AtomicMeasure& mu, const Box& window,
                                           double resolution) {
    if (mu.dim() != 1) throw std::invalid_argument("support_gap_scan: measures must be on R");
    if (mu.empty()) return std::nullopt;
    const auto& xs = mu.positions();
    SupportGap best;
    best.eps_gap = 0.0;
    auto consider = [&](double x, double gap, int side) {
        if (gap > best.eps_gap) best = SupportGap{x, gap, side};
    };
    consider(xs.front(), xs.front() - window.lo[0], -1);
    consider(xs.back(), window.hi[0] - xs.back(), +1);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        double gap = xs[i + 1] - xs[i];
        consider(xs[i], gap, +1);
    }
    if (best.eps_gap >= resolution && best.eps_gap > 0.0) return best;
    return std::nullopt;
}

double f3_heaviside(const AtomicMeasure& mu, double y, double s, double h) {
    if (!(s > 0.0) || !(h > 0.0)) throw std::invalid_argument("f3_heaviside: s and h must be positive");
    LineView view(mu);
    double mass = view.mass_closed(y - s, y + s);
    if (!(mass > 0.0)) throw std::domain_error("f3_heaviside: mu(B(y,s)) is zero");
    Reference ref(13.5, h, false);
    return blown_distance(view, y, s, 1.0 / mass, ref, 13.5);
}

SharpnessResult heaviside_avoider(const AtomicMeasure& mu, const SharpnessConfig& cfg) {
    if (!(cfg.eps > 0.0 && cfg.eps < 0.05)) throw std::invalid_argument("heaviside_avoider: eps must be in (0, 1/20)");
    if (!(cfg.eps_prime() > 0.0)) throw std::invalid_argument("heaviside_avoider: eps' must be positive");
    LineView view(mu);
    const double h = default_h(cfg);
    const double eps2 = cfg.eps * cfg.eps;
    const double threshold = cfg.threshold();

    SharpnessResult res;
    res.case_tag = 2;

    // y0: the mu-mass median unless overridden
    if (cfg.y0) {
        res.y0 = *cfg.y0;
    } else {
        double half_mass = view.cum.back() / 2.0;
        std::size_t i = std::lower_bound(view.cum.begin() + 1, view.cum.end(), half_mass) -
                        (view.cum.begin() + 1);
        res.y0 = view.x[std::min(i, view.x.size() - 1)];
    }

    // starting scale
    std::vector<double> candidates = cfg.r0_candidates;
    if (candidates.empty()) {
        double span = view.x.back() - view.x.front();
        double top = span / 27.0;
        for (int j = 0; j < 24; ++j) candidates.push_back(top * std::pow(2.0, -j));
    }
    Reference ref3(13.5, h, false);
    double r0 = 0.0;
    for (double r : candidates) {
        double m = view.mass_closed(res.y0 - r, res.y0 + r);
        if (!(m > 0.0)) continue;
        if (blown_distance(view, res.y0, r, 1.0 / m, ref3, 13.5) < eps2) {
            r0 = r;
            break;
        }
    }
    if (!(r0 > 0.0)) {
        res.no_r0 = true;
        res.x = res.y0;
        res.note = "no starting scale passes the F_3 test: direct evidence that the Heaviside "
                   "measure is not a tangent at y0";
        return res;
    }
    res.r0 = r0;

    // the x_i iteration
    double x_prev = res.y0 + r0;
    for (int i = 1; i <= cfg.i_max; ++i) {
        double r_i = std::pow(4.0, -i) * r0;
        double r_ip1 = r_i / 4.0;
        IterationRow row;
        row.i = i;
        row.r_i = r_i;

        struct Eval {
            double y, s, f3;
        };
        std::vector<Eval> grid;
        for (int gy = 0; gy < cfg.y_grid_points; ++gy) {
            double y = cfg.y_grid_points == 1
                           ? x_prev
                           : x_prev + r_i * gy / static_cast<double>(cfg.y_grid_points - 1);
            for (int gs = 1; gs <= cfg.s_grid_points; ++gs) {
                double s = r_ip1 + (r_i - r_ip1) * gs / static_cast<double>(cfg.s_grid_points);
                grid.push_back(Eval{y, s, kInf});
            }
        }
        parallel_for(grid.size(), [&](std::size_t g) {
            double m = view.mass_closed(grid[g].y - grid[g].s, grid[g].y + grid[g].s);
            if (m > 0.0)
                grid[g].f3 = blown_distance(view, grid[g].y, grid[g].s, 1.0 / m, ref3, 13.5);
        });
        for (const auto& ev : grid) {
            if (ev.f3 < eps2) {
                row.found = true;
                row.y_i = ev.y;
                row.s_i = ev.s;
                row.f3 = ev.f3;
                break;
            }
        }
        row.x_i = row.found ? row.y_i + r_i : x_prev;
        x_prev = row.x_i;
        res.iterations.push_back(row);
    }
    res.x = x_prev;

    // re-evaluated certificate across log-spaced scales in (r_{i_max+1}, r_0]
    Reference ref2(4.5, h, false);
    double r_low = std::pow(4.0, -(cfg.i_max + 1)) * r0;
    double ratio = r_low / r0;
    res.certificate.resize(cfg.cert_scales);
    parallel_for(static_cast<std::size_t>(cfg.cert_scales), [&](std::size_t j) {
        CertRow row;
        row.r = r0 * std::pow(ratio, static_cast<double>(j) / cfg.cert_scales);
        row.threshold = threshold;
        row.slack = ref2.mass * ref2.w;
        double m = view.mass_closed(res.x - row.r, res.x + row.r);
        if (m > 0.0) {
            row.distance = blown_distance(view, res.x, row.r, 1.0 / m, ref2, 4.5);
            row.pass = row.distance >= row.threshold - 1e-9;
        } else {
            row.distance = std::numeric_limits<double>::quiet_NaN();
            row.pass = false;
        }
        res.certificate[j] = row;
    });
    return res;
}

SharpnessResult gap_certificate(const AtomicMeasure& mu, const SupportGap& gap,
                                const SharpnessConfig& cfg) {
    LineView view(mu);
    const double h = default_h(cfg);
    SharpnessResult res;
    res.case_tag = 1;
    res.x = gap.x;
    res.y0 = gap.x;
    const double threshold = cfg.threshold();

    // scales small enough that the gap fills the relevant half-window
    double top = gap.eps_gap / 4.5;
    double low = top * std::pow(4.0, -(cfg.i_max + 1));
    double ratio = low / top;
    Reference ref(4.5, h, true);  // full Lebesgue on [-4.5, 4.5]
    res.certificate.resize(cfg.cert_scales);
    parallel_for(static_cast<std::size_t>(cfg.cert_scales), [&](std::size_t j) {
        CertRow row;
        row.r = top * std::pow(ratio, static_cast<double>(j) / cfg.cert_scales);
        row.threshold = threshold;
        row.slack = ref.mass * ref.w;
        double m = view.mass_closed(gap.x - row.r, gap.x + row.r);
        if (m > 0.0) {
            row.distance = blown_distance(view, gap.x, row.r, 1.0 / m, ref, 4.5);
            row.pass = row.distance >= row.threshold - 1e-9;
        } else {
            row.distance = std::numeric_limits<double>::quiet_NaN();
            row.pass = false;
        }
        res.certificate[j] = row;
    });
    res.note = "support gap of length " + std::to_string(gap.eps_gap) + " on side " +
               (gap.side > 0 ? std::string("+") : std::string("-")) +
               ": full Lebesgue cannot be a tangent here";
    return res;
}

}  // namespace blowzoom
