#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blowzoom/geometry.hpp"

namespace blowzoom {

// Finite atomic measure on R^d. Atoms are kept sorted lexicographically by
// position and coalesced (duplicate positions merge, weights add). All
// weights are strictly positive.
class AtomicMeasure {
public:
    AtomicMeasure() : dim_(1) {}
    explicit AtomicMeasure(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("AtomicMeasure: dim must be >= 1");
    }
    // positions flattened dim-major: atom i occupies positions[i*dim .. i*dim+dim).
    AtomicMeasure(int dim, std::vector<double> positions, std::vector<double> weights);

    static AtomicMeasure delta(std::vector<double> x, double w);

    int dim() const { return dim_; }
    std::size_t size() const { return w_.size(); }
    bool empty() const { return w_.empty(); }

    std::span<const double> position(std::size_t i) const {
        return {pos_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }
    double weight(std::size_t i) const { return w_[i]; }
    const std::vector<double>& positions() const { return pos_; }
    const std::vector<double>& weights() const { return w_; }

    double total_mass() const;

    AtomicMeasure scaled(double c) const;
    AtomicMeasure plus(const AtomicMeasure& other) const;

private:
    int dim_;
    std::vector<double> pos_;
    std::vector<double> w_;
};

// Atoms of mu inside the half-open box B, weights unchanged.
AtomicMeasure restrict(const AtomicMeasure& mu, const Box& b);

// Mass of mu inside B (sum of weights of atoms in the half-open box).
double mass_in(const AtomicMeasure& mu, const Box& b);

// Mass of the closed Euclidean ball B(x, r).
double mass_ball(const AtomicMeasure& mu, std::span<const double> x, double r);

// Regular grid atomization of Lebesgue measure on B: atoms at cell centers of
// the h-grid tiling B, each of weight h^d. Requires h to divide every side of
// B within 1e-12 relative error.
AtomicMeasure discretize_lebesgue(const Box& b, double h);

struct SampleSOptions {
    int n = 1;                  // the family parameter: rational cubes fill I_n
    Box window;                 // must contain I_n
    double h = 1.0 / 27.0;      // atomization spacing, triadic (3^-m) recommended
    std::uint64_t seed = 1;
    int boundary_depth = 6;     // triadic generations checked for atom/boundary collisions
};

struct SampleSResult {
    AtomicMeasure measure;
    std::vector<double> q;      // the drawn rationals, one per cube of Q_1^n inside I_n
};

// A seeded member of the dense family S: rational multiples of normalized
// Lebesgue on the side-3^{-n} triadic cubes filling I_n, plus atomized
// Lebesgue on window \ I_n. Every atom avoids all triadic boundary
// hyperplanes up to the configured depth; construction throws on collision.
SampleSResult sample_S(const SampleSOptions& opt);

// Serialization: { "dim": d, "atoms": [ { "x": [..], "w": w }, .. ] }.
std::string to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const std::string& text);
AtomicMeasure load_measure(const std::string& path);
void save_measure(const AtomicMeasure& mu, const std::string& path);

}  // namespace blowzoom
