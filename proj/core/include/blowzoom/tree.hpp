#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace blowzoom {

// A word over the alphabet {1..b} stored as symbol list.
using Word = std::vector<int>;

Word parse_word(const std::string& text, int b);
std::string word_to_string(const Word& w, int b);

// Depth-n probability weights over the words of length n on {1..b}: the
// finite proxy for a Borel probability measure on the infinite tree, constant
// on depth-n cylinders. Weights sum to 1 within 1e-12.
class TreeMeasure {
public:
    TreeMeasure(int b, int n, std::map<Word, double> weights, bool normalize_check = true);

    static TreeMeasure uniform(int b, int n);
    static TreeMeasure point_mass(int b, const Word& y);  // all mass on one depth-|y| word

    int alphabet() const { return b_; }
    int depth() const { return n_; }
    const std::map<Word, double>& weights() const { return w_; }
    double weight(const Word& y) const;  // 0 when absent

    // total mass of the cylinder [y], |y| <= n
    double cylinder_mass(const Word& y) const;

    // normalized conditioning mu_y at depth n - |y|; requires mu[y] > 0 and |y| < n
    TreeMeasure condition(const Word& y) const;

    // the same measure represented one level deeper (weights split uniformly)
    TreeMeasure refine(int extra_levels) const;

private:
    int b_;
    int n_;
    std::map<Word, double> w_;
};

// Closed-form metric: pi = sum_{k=1}^{n-1} 2^{-(k+2)} sum_{|u|=k} |mu[u]-nu[u]|
//                         + 2^{-(n+1)}  sum_{|u|=n} |mu[u]-nu[u]|,
// the exact transport distance on the rooted tree whose parent edges realize
// the ultrametric 2^{-split}. Depths equalized by refinement.
double pi_metric(const TreeMeasure& mu, const TreeMeasure& nu);

// Independent oracle: the Lipschitz-potential program over one representative
// per depth-n cylinder under the ultrametric, with |phi| <= 1, solved through
// the transportation dual. Combined support capped at 400 words. Also reports
// whether the sup-norm bound was active at the optimum.
struct PiLpResult {
    double value = 0.0;
    bool bound_active = false;
};
PiLpResult pi_metric_lp(const TreeMeasure& mu, const TreeMeasure& nu);

// Measure-word pair traversed by the zoom map.
struct TreeState {
    TreeMeasure measure;
    Word word;
};

// ZOOM: one conditioning step on the first symbol plus shift of the word.
TreeState zoom(const TreeState& state);

// The conditioning orbit mu_{x|n} for the requested depths.
std::vector<TreeMeasure> micromeasure_orbit(const TreeMeasure& mu, const Word& x,
                                            const std::vector<int>& depths);

// mu^k: weight of the concatenation y z equals mu[y] * nu[z] for |y| = k.
// Conditioning at any y in I^k with mu[y] > 0 reproduces nu exactly.
TreeMeasure construct_tree_approximant(const TreeMeasure& mu, const TreeMeasure& nu, int k);

// The first N zoom iterates, each carrying weight 1/N.
std::vector<std::pair<TreeState, double>> empirical_distribution(const TreeMeasure& mu, const Word& x,
                                                                 int n_steps);

// Transport distance between two finite weighted state sets under
// d((mu,x),(nu,y)) = pi(mu,nu) + 2^{-first differing index}.
double distribution_distance(const std::vector<std::pair<TreeState, double>>& p1,
                             const std::vector<std::pair<TreeState, double>>& p2);

// Serialization: { "alphabet": b, "depth": n, "weights": { "112": w, .. } };
// digit strings for b <= 9, comma-separated symbols otherwise.
std::string to_json(const TreeMeasure& t);
TreeMeasure tree_from_json(const std::string& text);
TreeMeasure load_tree(const std::string& path);
void save_tree(const TreeMeasure& t, const std::string& path);

}  // namespace blowzoom
