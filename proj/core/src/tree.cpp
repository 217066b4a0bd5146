#include "blowzoom/tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "blowzoom/transport.hpp"
#include "json.hpp"

namespace blowzoom {

Word parse_word(const std::string& text, int b) {
    Word w;
    if (text.find(',') != std::string::npos) {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            w.push_back(std::stoi(tok));
        }
    } else {
        for (char ch : text) {
            if (ch < '1' || ch > '9') throw std::invalid_argument("parse_word: bad symbol");
            w.push_back(ch - '0');
        }
    }
    for (int s : w)
        if (s < 1 || s > b) throw std::invalid_argument("parse_word: symbol outside alphabet");
    return w;
}

std::string word_to_string(const Word& w, int b) {
    std::string out;
    if (b <= 9) {
        for (int s : w) out.push_back(static_cast<char>('0' + s));
    } else {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(w[i]);
        }
    }
    return out;
}

TreeMeasure::TreeMeasure(int b, int n, std::map<Word, double> weights, bool normalize_check)
    : b_(b), n_(n), w_(std::move(weights)) {
    if (b < 2) throw std::invalid_argument("TreeMeasure: alphabet size must be >= 2");
    if (n < 1) throw std::invalid_argument("TreeMeasure: depth must be >= 1");
    double total = 0.0;
    for (auto it = w_.begin(); it != w_.end();) {
        if (static_cast<int>(it->first.size()) != n)
            throw std::invalid_argument("TreeMeasure: word length must equal depth");
        for (int s : it->first)
            if (s < 1 || s > b) throw std::invalid_argument("TreeMeasure: symbol outside alphabet");
        if (it->second < 0.0) throw std::invalid_argument("TreeMeasure: negative weight");
        total += it->second;
        if (it->second == 0.0) it = w_.erase(it);
        else ++it;
    }
    if (normalize_check && std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("TreeMeasure: weights must sum to 1");
}

TreeMeasure TreeMeasure::uniform(int b, int n) {
    std::map<Word, double> w;
    Word cur(n, 1);
    double v = std::pow(static_cast<double>(b), -n);
    while (true) {
        w[cur] = v;
        int i = n - 1;
        while (i >= 0 && cur[i] == b) {
            cur[i] = 1;
            --i;
        }
        if (i < 0) break;
        ++cur[i];
    }
    return TreeMeasure(b, n, std::move(w));
}

TreeMeasure TreeMeasure::point_mass(int b, const Word& y) {
    if (y.empty()) throw std::invalid_argument("point_mass: word must be nonempty");
    std::map<Word, double> w;
    w[y] = 1.0;
    return TreeMeasure(b, static_cast<int>(y.size()), std::move(w));
}

double TreeMeasure::weight(const Word& y) const {
    auto it = w_.find(y);
    return it == w_.end() ? 0.0 : it->second;
}

double TreeMeasure::cylinder_mass(const Word& y) const {
    if (static_cast<int>(y.size()) > n_) throw std::invalid_argument("cylinder_mass: word longer than depth");
    double s = 0.0;
    // words are ordered lexicographically; the cylinder is a contiguous range
    auto lo = w_.lower_bound(y);
    for (auto it = lo; it != w_.end(); ++it) {
        if (!std::equal(y.begin(), y.end(), it->first.begin())) break;
        s += it->second;
    }
    return s;
}

TreeMeasure TreeMeasure::condition(const Word& y) const {
    if (static_cast<int>(y.size()) >= n_)
        throw std::invalid_argument("condition: depth exhausted");
    double cy = cylinder_mass(y);
    if (!(cy > 0.0)) throw std::domain_error("condition: zero cylinder mass");
    std::map<Word, double> w;
    auto lo = w_.lower_bound(y);
    for (auto it = lo; it != w_.end(); ++it) {
        if (!std::equal(y.begin(), y.end(), it->first.begin())) break;
        Word z(it->first.begin() + y.size(), it->first.end());
        w[z] = it->second / cy;
    }
    return TreeMeasure(b_, n_ - static_cast<int>(y.size()), std::move(w), false);
}

TreeMeasure TreeMeasure::refine(int extra_levels) const {
    if (extra_levels < 0) throw std::invalid_argument("refine: negative levels");
    if (extra_levels == 0) return *this;
    std::map<Word, double> w;
    double split = std::pow(static_cast<double>(b_), -extra_levels);
    for (const auto& [word, wt] : w_) {
        Word cur = word;
        cur.resize(word.size() + extra_levels, 1);
        while (true) {
            w[cur] = wt * split;
            int i = static_cast<int>(cur.size()) - 1;
            while (i >= static_cast<int>(word.size()) && cur[i] == b_) {
                cur[i] = 1;
                --i;
            }
            if (i < static_cast<int>(word.size())) break;
            ++cur[i];
        }
    }
    return TreeMeasure(b_, n_ + extra_levels, std::move(w), false);
}

namespace {

// per-level absolute cylinder-mass differences
double level_diff(const TreeMeasure& mu, const TreeMeasure& nu, int level) {
    // walk both weight maps, accumulating level-prefix masses
    std::map<Word, double> acc;
    for (const auto& [w, v] : mu.weights()) acc[Word(w.begin(), w.begin() + level)] += v;
    for (const auto& [w, v] : nu.weights()) acc[Word(w.begin(), w.begin() + level)] -= v;
    double s = 0.0;
    for (const auto& [_, v] : acc) s += std::abs(v);
    return s;
}

}  // namespace

double pi_metric(const TreeMeasure& mu0, const TreeMeasure& nu0) {
    if (mu0.alphabet() != nu0.alphabet()) throw std::invalid_argument("pi_metric: alphabet mismatch");
    TreeMeasure mu = mu0.refine(std::max(0, nu0.depth() - mu0.depth()));
    TreeMeasure nu = nu0.refine(std::max(0, mu0.depth() - nu0.depth()));
    const int n = mu.depth();
    double total = 0.0;
    for (int k = 1; k < n; ++k) total += std::pow(2.0, -(k + 2)) * level_diff(mu, nu, k);
    total += std::pow(2.0, -(n + 1)) * level_diff(mu, nu, n);
    return total;
}

PiLpResult pi_metric_lp(const TreeMeasure& mu0, const TreeMeasure& nu0) {
    if (mu0.alphabet() != nu0.alphabet()) throw std::invalid_argument("pi_metric_lp: alphabet mismatch");
    TreeMeasure mu = mu0.refine(std::max(0, nu0.depth() - mu0.depth()));
    TreeMeasure nu = nu0.refine(std::max(0, mu0.depth() - nu0.depth()));

    // combined support, one representative per depth-n word
    std::map<Word, double> charge;
    for (const auto& [w, v] : mu.weights()) charge[w] += v;
    for (const auto& [w, v] : nu.weights()) charge[w] -= v;
    if (charge.size() > 400) throw std::invalid_argument("pi_metric_lp: support exceeds 400 words");

    std::vector<const Word*> words;
    std::vector<double> c;
    for (const auto& [w, v] : charge) {
        words.push_back(&w);
        c.push_back(v);
    }
    const std::size_t m = words.size();
    std::vector<std::vector<double>> dist(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            std::size_t split = 0;
            while (split < words[i]->size() && (*words[i])[split] == (*words[j])[split]) ++split;
            dist[i][j] = dist[j][i] = std::pow(2.0, -static_cast<double>(split + 1));
        }

    // dual transportation with disposal/fill at the sup-norm bound cost 1;
    // bound activity shows up as boundary usage, detected by comparing with
    // an unbounded run (cost 1e6)
    auto solve = [&](double bound_cost, std::span<const double> charges) {
        // pack as a transportation problem over the explicit ultrametric with
        // boundary columns for the sup-norm bound
        std::vector<double> supply, demand;
        std::vector<std::size_t> si, di;
        for (std::size_t i = 0; i < m; ++i) {
            if (charges[i] > 0.0) { supply.push_back(charges[i]); si.push_back(i); }
            else if (charges[i] < 0.0) { demand.push_back(-charges[i]); di.push_back(i); }
        }
        double sp = 0.0, dm = 0.0;
        for (double v : supply) sp += v;
        for (double v : demand) dm += v;
        // balance with boundary nodes on both sides
        supply.push_back(dm);
        demand.push_back(sp);
        std::vector<std::vector<double>> cost(supply.size(), std::vector<double>(demand.size(), 0.0));
        for (std::size_t i = 0; i < si.size(); ++i)
            for (std::size_t j = 0; j < di.size(); ++j) cost[i][j] = dist[si[i]][di[j]];
        for (std::size_t i = 0; i < si.size(); ++i) cost[i][di.size()] = bound_cost;  // disposal
        for (std::size_t j = 0; j < di.size(); ++j) cost[si.size()][j] = bound_cost;  // fill
        cost[si.size()][di.size()] = 0.0;  // slack-to-slack
        return ssp_assignment(supply, demand, cost);
    };

    std::vector<double> cneg(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) cneg[i] = -c[i];
    double v_pos = solve(1.0, c);
    double v_neg = solve(1.0, cneg);
    double value = std::max(v_pos, v_neg);
    double unb = std::max(solve(1e6, c), solve(1e6, cneg));
    PiLpResult res;
    res.value = value;
    res.bound_active = value < unb - 1e-12;
    return res;
}

TreeState zoom(const TreeState& state) {
    if (state.word.empty()) throw std::invalid_argument("zoom: word exhausted");
    if (state.measure.depth() < 2) throw std::invalid_argument("zoom: measure depth exhausted");
    Word head{state.word.front()};
    TreeMeasure next = state.measure.condition(head);  // throws on zero cylinder
    Word tail(state.word.begin() + 1, state.word.end());
    return TreeState{std::move(next), std::move(tail)};
}

std::vector<TreeMeasure> micromeasure_orbit(const TreeMeasure& mu, const Word& x,
                                            const std::vector<int>& depths) {
    std::vector<TreeMeasure> out;
    for (int n : depths) {
        if (n < 1 || n >= mu.depth()) throw std::invalid_argument("micromeasure_orbit: depth out of range");
        if (static_cast<int>(x.size()) < n)
            throw std::invalid_argument("micromeasure_orbit: word too short");
        Word prefix(x.begin(), x.begin() + n);
        out.push_back(mu.condition(prefix));
    }
    return out;
}

TreeMeasure construct_tree_approximant(const TreeMeasure& mu, const TreeMeasure& nu, int k) {
    if (mu.alphabet() != nu.alphabet())
        throw std::invalid_argument("construct_tree_approximant: alphabet mismatch");
    if (k < 1 || k > mu.depth()) throw std::invalid_argument("construct_tree_approximant: bad k");
    // depth-k cylinder masses of mu
    std::map<Word, double> heads;
    for (const auto& [w, v] : mu.weights()) heads[Word(w.begin(), w.begin() + k)] += v;
    std::map<Word, double> out;
    for (const auto& [y, my] : heads) {
        if (!(my > 0.0)) continue;  // zero branches stay zero
        for (const auto& [z, vz] : nu.weights()) {
            Word yz = y;
            yz.insert(yz.end(), z.begin(), z.end());
            out[yz] = my * vz;
        }
    }
    return TreeMeasure(mu.alphabet(), k + nu.depth(), std::move(out), false);
}

std::vector<std::pair<TreeState, double>> empirical_distribution(const TreeMeasure& mu, const Word& x,
                                                                 int n_steps) {
    if (n_steps < 1) throw std::invalid_argument("empirical_distribution: N must be >= 1");
    std::vector<std::pair<TreeState, double>> out;
    TreeState s{mu, x};
    double w = 1.0 / n_steps;
    for (int i = 0; i < n_steps; ++i) {
        s = zoom(s);
        out.emplace_back(s, w);
    }
    return out;
}

namespace {

double state_distance(const TreeState& a, const TreeState& b) {
    double base = pi_metric(a.measure, b.measure);
    std::size_t split = 0;
    while (split < a.word.size() && split < b.word.size() && a.word[split] == b.word[split]) ++split;
    double word_part =
        (split == a.word.size() && split == b.word.size()) ? 0.0 : std::pow(2.0, -static_cast<double>(split + 1));
    return base + word_part;
}

}  // namespace

double distribution_distance(const std::vector<std::pair<TreeState, double>>& p1,
                             const std::vector<std::pair<TreeState, double>>& p2) {
    if (p1.empty() || p2.empty()) throw std::invalid_argument("distribution_distance: empty input");
    if (p1.size() * p2.size() > 250000)
        throw std::invalid_argument("distribution_distance: state sets too large");
    std::vector<double> supply, demand;
    for (const auto& [_, w] : p1) supply.push_back(w);
    for (const auto& [_, w] : p2) demand.push_back(w);
    std::vector<std::vector<double>> cost(p1.size(), std::vector<double>(p2.size(), 0.0));
    for (std::size_t i = 0; i < p1.size(); ++i)
        for (std::size_t j = 0; j < p2.size(); ++j)
            cost[i][j] = state_distance(p1[i].first, p2[j].first);
    return ssp_assignment(supply, demand, cost);
}

std::string to_json(const TreeMeasure& t) {
    nlohmann::json j;
    j["alphabet"] = t.alphabet();
    j["depth"] = t.depth();
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [word, v] : t.weights()) w[word_to_string(word, t.alphabet())] = v;
    j["weights"] = std::move(w);
    return j.dump(1);
}

TreeMeasure tree_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int b = j.at("alphabet").get<int>();
    int n = j.at("depth").get<int>();
    std::map<Word, double> w;
    for (auto it = j.at("weights").begin(); it != j.at("weights").end(); ++it)
        w[parse_word(it.key(), b)] = it.value().get<double>();
    return TreeMeasure(b, n, std::move(w));
}

TreeMeasure load_tree(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open tree measure file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return tree_from_json(ss.str());
}

void save_tree(const TreeMeasure& t, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write tree measure file: " + path);
    f << to_json(t) << "\n";
}

}  // namespace blowzoom
