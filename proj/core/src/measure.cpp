#include "blowzoom/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"

namespace blowzoom {

namespace {

// lexicographic comparison of two atom positions
bool pos_less(const double* a, const double* b, int dim) {
    for (int i = 0; i < dim; ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

bool pos_equal(const double* a, const double* b, int dim) {
    for (int i = 0; i < dim; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

AtomicMeasure::AtomicMeasure(int dim, std::vector<double> positions, std::vector<double> weights)
    : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("AtomicMeasure: dim must be >= 1");
    if (positions.size() != weights.size() * static_cast<std::size_t>(dim))
        throw std::invalid_argument("AtomicMeasure: positions/weights size mismatch");
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("AtomicMeasure: weights must be positive and finite");
    }
    const std::size_t n = weights.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return pos_less(positions.data() + i * dim, positions.data() + j * dim, dim);
    });
    pos_.reserve(n * dim);
    w_.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double* p = positions.data() + order[k] * dim;
        if (!w_.empty() && pos_equal(pos_.data() + (w_.size() - 1) * dim, p, dim)) {
            w_.back() += weights[order[k]];  // coalesce duplicates
        } else {
            pos_.insert(pos_.end(), p, p + dim);
            w_.push_back(weights[order[k]]);
        }
    }
}

AtomicMeasure AtomicMeasure::delta(std::vector<double> x, double w) {
    int d = static_cast<int>(x.size());
    return AtomicMeasure(d, std::move(x), {w});
}

double AtomicMeasure::total_mass() const {
    double s = 0.0;
    for (double w : w_) s += w;
    return s;
}

AtomicMeasure AtomicMeasure::scaled(double c) const {
    if (!(c > 0.0)) throw std::invalid_argument("scaled: c must be positive");
    AtomicMeasure out(dim_);
    out.pos_ = pos_;
    out.w_ = w_;
    for (double& w : out.w_) w *= c;
    return out;
}

AtomicMeasure AtomicMeasure::plus(const AtomicMeasure& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("plus: dimension mismatch");
    std::vector<double> p = pos_;
    p.insert(p.end(), other.pos_.begin(), other.pos_.end());
    std::vector<double> w = w_;
    w.insert(w.end(), other.w_.begin(), other.w_.end());
    return AtomicMeasure(dim_, std::move(p), std::move(w));
}

AtomicMeasure restrict(const AtomicMeasure& mu, const Box& b) {
    if (b.dim() != mu.dim()) throw std::invalid_argument("restrict: dimension mismatch");
    AtomicMeasure out(mu.dim());
    std::vector<double> p, w;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        auto x = mu.position(i);
        if (b.contains(x)) {
            p.insert(p.end(), x.begin(), x.end());
            w.push_back(mu.weight(i));
        }
    }
    return AtomicMeasure(mu.dim(), std::move(p), std::move(w));
}

double mass_in(const AtomicMeasure& mu, const Box& b) {
    if (b.dim() != mu.dim()) throw std::invalid_argument("mass_in: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (b.contains(mu.position(i))) s += mu.weight(i);
    return s;
}

double mass_ball(const AtomicMeasure& mu, std::span<const double> x, double r) {
    if (static_cast<int>(x.size()) != mu.dim()) throw std::invalid_argument("mass_ball: dimension mismatch");
    if (!(r > 0.0)) throw std::invalid_argument("mass_ball: r must be positive");
    const double r2 = r * r;
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        auto p = mu.position(i);
        double d2 = 0.0;
        for (int k = 0; k < mu.dim(); ++k) d2 += sq(p[k] - x[k]);
        if (d2 <= r2) s += mu.weight(i);
    }
    return s;
}

AtomicMeasure discretize_lebesgue(const Box& b, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("discretize_lebesgue: h must be positive");
    const int d = b.dim();
    std::vector<std::int64_t> cells(d);
    for (int i = 0; i < d; ++i) {
        double side = b.side(i);
        double n = side / h;
        std::int64_t ni = static_cast<std::int64_t>(std::llround(n));
        if (ni < 1 || std::abs(ni * h - side) > 1e-12 * side)
            throw std::invalid_argument("discretize_lebesgue: h does not divide box side");
        cells[i] = ni;
    }
    std::int64_t total = 1;
    for (int i = 0; i < d; ++i) {
        if (total > (1LL << 40) / cells[i])
            throw std::invalid_argument("discretize_lebesgue: grid too large");
        total *= cells[i];
    }
    double wcell = 1.0;
    for (int i = 0; i < d; ++i) wcell *= h;

    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(total) * d);
    std::vector<std::int64_t> idx(d, 0);
    for (std::int64_t c = 0; c < total; ++c) {
        for (int i = 0; i < d; ++i) p.push_back(b.lo[i] + (idx[i] + 0.5) * h);
        for (int i = d - 1; i >= 0; --i) {
            if (++idx[i] < cells[i]) break;
            idx[i] = 0;
        }
    }
    std::vector<double> w(static_cast<std::size_t>(total), wcell);
    return AtomicMeasure(d, std::move(p), std::move(w));
}

namespace {

// distance from coordinate v to the nearest boundary hyperplane of the
// triadic grid of spacing s (boundaries at half-integer multiples of s)
double triadic_boundary_dist(double v, double s) {
    double t = v / s - 0.5;
    double f = t - std::floor(t);
    return std::min(f, 1.0 - f) * s;
}

}  // namespace

SampleSResult sample_S(const SampleSOptions& opt) {
    if (opt.n < 1) throw std::invalid_argument("sample_S: n must be >= 1");
    const int d = opt.window.dim();
    const Box in = standard_box(d, opt.n);
    if (!opt.window.contains_box(in)) throw std::invalid_argument("sample_S: window must contain I_n");

    // pool of rationals p/q, 1 <= p,q <= 16, in deterministic order
    std::vector<double> pool;
    for (int pp = 1; pp <= 16; ++pp)
        for (int qq = 1; qq <= 16; ++qq) pool.push_back(static_cast<double>(pp) / qq);
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);

    const double cube_side = pow3(-opt.n);            // side of cubes in Q_1^n
    const std::int64_t per_axis = ipow3(2 * opt.n);   // cubes of Q_1^n per axis inside I_n
    const double cell_norm = std::pow(cube_side, d);  // Lebesgue volume of one cube

    // atomize each cube with spacing h; h must divide the cube side
    double cells_f = cube_side / opt.h;
    std::int64_t cells = static_cast<std::int64_t>(std::llround(cells_f));
    if (cells < 1 || std::abs(cells * opt.h - cube_side) > 1e-12 * cube_side)
        throw std::invalid_argument("sample_S: h must divide the side 3^-n of the rational cubes");

    std::vector<double> p, w;
    std::vector<double> qs;

    // rational part on I_n: iterate cubes of Q_1^n inside I_n in lattice order
    std::vector<std::int64_t> ci(d, 0);
    std::int64_t ncubes = 1;
    for (int i = 0; i < d; ++i) ncubes *= per_axis;
    for (std::int64_t c = 0; c < ncubes; ++c) {
        double q = pool[pick(rng)];
        qs.push_back(q);
        // cube lower corner
        std::vector<double> lo(d);
        for (int i = 0; i < d; ++i) lo[i] = -pow3(opt.n) / 2.0 + ci[i] * cube_side;
        // grid atoms inside the cube; weight q * h^d / vol(cube) so the cube carries mass q
        double aw = q * std::pow(opt.h, d) / cell_norm;
        std::vector<std::int64_t> gi(d, 0);
        std::int64_t gn = 1;
        for (int i = 0; i < d; ++i) gn *= cells;
        for (std::int64_t g = 0; g < gn; ++g) {
            for (int i = 0; i < d; ++i) p.push_back(lo[i] + (gi[i] + 0.5) * opt.h);
            w.push_back(aw);
            for (int i = d - 1; i >= 0; --i) {
                if (++gi[i] < cells) break;
                gi[i] = 0;
            }
        }
        for (int i = d - 1; i >= 0; --i) {
            if (++ci[i] < per_axis) break;
            ci[i] = 0;
        }
    }

    // Lebesgue part on window \ I_n
    AtomicMeasure leb = discretize_lebesgue(opt.window, opt.h);
    for (std::size_t i = 0; i < leb.size(); ++i) {
        auto x = leb.position(i);
        if (!in.contains(x)) {
            p.insert(p.end(), x.begin(), x.end());
            w.push_back(leb.weight(i));
        }
    }

    AtomicMeasure out(d, std::move(p), std::move(w));

    // boundary-avoidance check over generations up to the configured depth
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto x = out.position(i);
        for (int j = -opt.boundary_depth; j <= opt.boundary_depth; ++j) {
            double s = pow3(j);
            for (int k = 0; k < d; ++k) {
                if (triadic_boundary_dist(x[k], s) < 1e-9 * s)
                    throw std::runtime_error("sample_S: atom lies on a triadic boundary hyperplane; perturb h");
            }
        }
    }
    return SampleSResult{std::move(out), std::move(qs)};
}

std::string to_json(const AtomicMeasure& mu) {
    nlohmann::json j;
    j["dim"] = mu.dim();
    nlohmann::json atoms = nlohmann::json::array();
    for (std::size_t i = 0; i < mu.size(); ++i) {
        nlohmann::json a;
        a["x"] = std::vector<double>(mu.position(i).begin(), mu.position(i).end());
        a["w"] = mu.weight(i);
        atoms.push_back(std::move(a));
    }
    j["atoms"] = std::move(atoms);
    return j.dump(1);
}

AtomicMeasure measure_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int d = j.at("dim").get<int>();
    std::vector<double> p, w;
    for (const auto& a : j.at("atoms")) {
        auto x = a.at("x").get<std::vector<double>>();
        if (static_cast<int>(x.size()) != d)
            throw std::invalid_argument("measure_from_json: atom dimension mismatch");
        p.insert(p.end(), x.begin(), x.end());
        w.push_back(a.at("w").get<double>());
    }
    return AtomicMeasure(d, std::move(p), std::move(w));
}

AtomicMeasure load_measure(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open measure file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return measure_from_json(ss.str());
}

void save_measure(const AtomicMeasure& mu, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write measure file: " + path);
    f << to_json(mu) << "\n";
}

}  // namespace blowzoom
