#include <cmath>
#include <queue>
#include <stdexcept>

#include "blowzoom/transport.hpp"

namespace blowzoom {

namespace {

// Convex nonincreasing piecewise-linear value function
//     V(p) = m + sum_h wt_h * max(0, pos_h - p),          wt_h > 0,
// with a lazy shift applied to all hinge positions. The DP state over the
// carried flow between consecutive nodes.
class ValueFn {
public:
    double plateau() const { return m_; }

    void shift(double c) { shift_ += c; }

    // Replace V by the running minimum  f -> min_{p <= f} [ V(p) + g|p| ].
    void add_edge(double g) {
        if (g <= 0.0) return;
        double cumwt = 0.0, cumval = 0.0;
        while (!heap_.empty()) {
            double b = heap_.top().pos + shift_;
            double wt = heap_.top().wt;
            if (!(b > 0.0) || cumwt + wt > g) break;
            cumwt += wt;
            cumval += wt * b;
            heap_.pop();
        }
        if (!heap_.empty() && heap_.top().pos + shift_ > 0.0) {
            // minimum sits at the hinge b: fold popped mass into it
            double b = heap_.top().pos + shift_;
            double wt = heap_.top().wt;
            heap_.pop();
            m_ += (cumval - b * cumwt) + g * b;
            push_abs(b, wt + cumwt - g);
            push_abs(0.0, 2.0 * g);
        } else {
            // minimum at p = 0
            m_ += cumval;
            push_abs(0.0, g + cumwt);
        }
    }

private:
    struct Hinge {
        double pos;  // stored; true position = pos + shift_
        double wt;
        bool operator<(const Hinge& o) const { return pos < o.pos; }
    };

    void push_abs(double true_pos, double wt) {
        if (wt > 0.0) heap_.push(Hinge{true_pos - shift_, wt});
    }

    std::priority_queue<Hinge> heap_;
    double m_ = 0.0;
    double shift_ = 0.0;
};

}  // namespace

double line_flat_optimum(std::span<const double> xs, std::span<const double> cs, double L) {
    if (xs.size() != cs.size()) throw std::invalid_argument("line_flat_optimum: size mismatch");
    if (!(L > 0.0)) throw std::invalid_argument("line_flat_optimum: L must be positive");
    ValueFn v;
    double prev = -L;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < prev - 1e-15 || xs[i] > L + 1e-15)
            throw std::invalid_argument("line_flat_optimum: xs must be sorted within [-L, L]");
        v.add_edge(xs[i] - prev);
        v.shift(cs[i]);
        prev = xs[i];
    }
    v.add_edge(L - prev);
    return v.plateau();
}

}  // namespace blowzoom
