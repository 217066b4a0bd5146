// blowzoom: blow-up and zoom experiments on atomic measures and tree measures.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "blowzoom/approximant.hpp"
#include "blowzoom/blowup.hpp"
#include "blowzoom/flat_metric.hpp"
#include "blowzoom/limsup.hpp"
#include "blowzoom/measure.hpp"
#include "blowzoom/sharpness.hpp"
#include "blowzoom/tree.hpp"
#include "json.hpp"

using namespace blowzoom;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw CLI::ValidationError("expected a comma-separated number list");
    return out;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_vector(text)) out.push_back(static_cast<int>(v));
    return out;
}

// box syntax: "lo,hi" (1-d), "lo1,hi1;lo2,hi2" (per axis), or "I:a"
Box parse_box(const std::string& text, int dim_hint = 1) {
    if (text.rfind("I:", 0) == 0) return standard_box(dim_hint, std::stoi(text.substr(2)));
    std::vector<double> lo, hi;
    std::stringstream ss(text);
    std::string axis;
    while (std::getline(ss, axis, ';')) {
        auto vals = parse_vector(axis);
        if (vals.size() != 2) throw CLI::ValidationError("box axis needs 'lo,hi'");
        lo.push_back(vals[0]);
        hi.push_back(vals[1]);
    }
    return Box(std::move(lo), std::move(hi));
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << body;
}

nlohmann::json cert_to_json(const CubeCertificate& c) {
    nlohmann::json j;
    j["cube"] = c.cube.label();
    j["c"] = c.c;
    j["w"] = c.w.w;
    j["distance"] = c.distance;
    j["threshold"] = c.threshold;
    j["pass"] = c.pass;
    j["applicable"] = c.applicable;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"blow-up calculus on atomic measures: flat metrics, cube certificates, "
                 "limsup experiments, sharpness scans, and tree micromeasures"};
    app.require_subcommand(1);

    int workers = 0;
    app.add_option("--workers", workers, "worker pool size (default: machine parallelism)");

    // ---- metric ----
    auto* metric = app.add_subcommand("metric", "F_a distance between two measure files");
    int m_a = 1;
    std::string m_lhs, m_rhs;
    metric->add_option("--a", m_a, "window level a")->required();
    metric->add_option("--lhs", m_lhs, "left measure file")->required();
    metric->add_option("--rhs", m_rhs, "right measure file")->required();

    // ---- metric-d ----
    auto* metricd = app.add_subcommand("metric-d", "summed metric d with certified truncation");
    std::string d_lhs, d_rhs;
    int d_amax = 20;
    metricd->add_option("--lhs", d_lhs)->required();
    metricd->add_option("--rhs", d_rhs)->required();
    metricd->add_option("--amax", d_amax, "partial-sum cutoff (default 20)");

    // ---- blowup ----
    auto* blow = app.add_subcommand("blowup", "apply T_{x,r,c} to a measure file");
    std::string b_x, b_in, b_out;
    double b_r = 1.0, b_c = 1.0;
    blow->add_option("--x", b_x, "center, comma-separated")->required();
    blow->add_option("--r", b_r, "scale r > 0")->required();
    blow->add_option("--c", b_c, "mass factor c > 0")->required();
    blow->add_option("--in", b_in)->required();
    blow->add_option("--out", b_out)->required();

    // ---- dup ----
    auto* dup = app.add_subcommand("dup", "weighted duplication of nu|I_a over the neighbours");
    std::string du_w, du_in, du_out;
    int du_a = 1;
    dup->add_option("--a", du_a)->required();
    dup->add_option("--weights", du_w, "3^d weights, first must be 1")->required();
    dup->add_option("--in", du_in)->required();
    dup->add_option("--out", du_out)->required();

    // ---- construct ----
    auto* cons = app.add_subcommand("construct", "build the per-cube template approximant");
    std::string c_mu, c_nu, c_window, c_out;
    int c_a = 1, c_k = 1;
    double c_background = 0.0;
    cons->add_option("--mu", c_mu)->required();
    cons->add_option("--nu", c_nu)->required();
    cons->add_option("--a", c_a)->required();
    cons->add_option("--k", c_k)->required();
    cons->add_option("--window", c_window, "box 'lo,hi' or 'I:a'")->required();
    cons->add_option("--out", c_out)->required();
    cons->add_option("--background", c_background,
                     "add this mass per covered cube before constructing (full-support fix)");

    // ---- certify ----
    auto* cert = app.add_subcommand("certify", "per-cube membership certificates");
    std::string ce_mu, ce_nu, ce_window, ce_out;
    int ce_a = 1, ce_n = 1, ce_kmax = 2;
    double ce_beta = 0.0;
    cert->add_option("--mu", ce_mu)->required();
    cert->add_option("--nu", ce_nu)->required();
    cert->add_option("--a", ce_a)->required();
    cert->add_option("--n", ce_n)->required();
    cert->add_option("--kmax", ce_kmax)->required();
    cert->add_option("--window", ce_window, "construction window (default I:{a+1})");
    cert->add_option("--beta", ce_beta, "override beta_a (must satisfy the allowed bound)");
    cert->add_option("--out", ce_out, "write the certificate list as JSON");

    // ---- probe ----
    auto* probe = app.add_subcommand("probe", "blow-up distances to a template at a point");
    std::string p_mu, p_nu, p_x, p_aks, p_out;
    int p_b = 1;
    probe->add_option("--mu", p_mu)->required();
    probe->add_option("--nu", p_nu)->required();
    probe->add_option("--x", p_x, "probe point, comma-separated")->required();
    probe->add_option("--alist", p_aks, "comma list of a:k pairs, e.g. 1:1,1:2,2:2")->required();
    probe->add_option("--b", p_b, "distance window level (default 1)");
    probe->add_option("--out", p_out, "CSV path (default stdout)");

    // ---- bc ----
    auto* bc = app.add_subcommand("bc", "second-moment lower bound for a finite event system");
    std::string bc_file;
    int bc_n = 0;
    bc->add_option("--events", bc_file, "JSON file: outcomes [{label,p}], events [[idx..]..]")
        ->required();
    bc->add_option("--N", bc_n, "first N events (default all)");

    // ---- cube-events ----
    auto* cev = app.add_subcommand("cube-events", "central-cube event system report");
    std::string cv_mu, cv_nu, cv_klist, cv_window, cv_out;
    int cv_a = 1, cv_b = 1;
    double cv_beta = 0.0;
    cev->add_option("--mu", cv_mu)->required();
    cev->add_option("--nu", cv_nu)->required();
    cev->add_option("--a", cv_a)->required();
    cev->add_option("--b", cv_b)->required();
    cev->add_option("--klist", cv_klist, "comma list of generations")->required();
    cev->add_option("--window", cv_window, "certification window (default I:{a+1})");
    cev->add_option("--beta", cv_beta, "override beta_a");
    cev->add_option("--out", cv_out, "CSV path (default stdout)");

    // ---- doubling ----
    auto* dbl = app.add_subcommand("doubling", "geometric scan of doubling ratios");
    std::string db_mu, db_x, db_out;
    double db_r0 = 1.0, db_factor = 2.0;
    int db_count = 8;
    dbl->add_option("--mu", db_mu)->required();
    dbl->add_option("--x", db_x)->required();
    dbl->add_option("--r0", db_r0)->required();
    dbl->add_option("--factor", db_factor, "scale shrink factor (default 2)");
    dbl->add_option("--count", db_count, "number of rows (default 8)");
    dbl->add_option("--out", db_out, "CSV path (default stdout)");

    // ---- sharpness ----
    auto* sharp = app.add_subcommand("sharpness", "support-gap scan / Heaviside avoider");
    std::string sh_mu, sh_out, sh_mode = "auto", sh_r0s;
    SharpnessConfig sh_cfg;
    double sh_y0 = 0.0;
    bool sh_have_y0 = false;
    double sh_gap_resolution = 0.05;
    sharp->add_option("--mu", sh_mu)->required();
    sharp->add_option("--eps", sh_cfg.eps, "epsilon budget in (0, 1/20), default 0.04");
    sharp->add_option("--imax", sh_cfg.i_max, "iteration count (default 12)");
    sharp->add_option("--ygrid", sh_cfg.y_grid_points, "y grid points per iteration");
    sharp->add_option("--sgrid", sh_cfg.s_grid_points, "s grid points per iteration");
    sharp->add_option("--h", sh_cfg.h, "reference spacing (default from eps)");
    sharp->add_option("--certscales", sh_cfg.cert_scales, "certificate rows (default 50)");
    sharp->add_option("--r0", sh_r0s, "comma list of starting-scale candidates");
    auto* y0opt = sharp->add_option("--y0", sh_y0, "override the starting point y0");
    sharp->add_option("--mode", sh_mode, "auto | gap | avoider (default auto)");
    sharp->add_option("--gap-resolution", sh_gap_resolution, "minimal reported gap length");
    sharp->add_option("--out", sh_out, "report JSON path; certificate CSV written alongside")
        ->required();

    // ---- tree ----
    auto* tree = app.add_subcommand("tree", "tree-measure calculus");
    tree->require_subcommand(1);
    auto* tpi = tree->add_subcommand("pi", "closed-form pi distance between tree measures");
    std::string tp_lhs, tp_rhs;
    bool tp_lp = false;
    tpi->add_option("--lhs", tp_lhs)->required();
    tpi->add_option("--rhs", tp_rhs)->required();
    tpi->add_flag("--lp", tp_lp, "also run the transport oracle");

    auto* tzoom = tree->add_subcommand("zoom", "zoom orbit along a word");
    std::string tz_mu, tz_x;
    int tz_n = 1;
    tzoom->add_option("--mu", tz_mu)->required();
    tzoom->add_option("--x", tz_x, "address word, digits or comma list")->required();
    tzoom->add_option("--N", tz_n, "number of zoom steps")->required();

    auto* tcons = tree->add_subcommand("construct", "depth-k template approximant");
    std::string tc_mu, tc_nu, tc_out;
    int tc_k = 1;
    tcons->add_option("--mu", tc_mu)->required();
    tcons->add_option("--nu", tc_nu)->required();
    tcons->add_option("--k", tc_k)->required();
    tcons->add_option("--out", tc_out)->required();

    auto* tdist = tree->add_subcommand("microdist", "empirical zoom distribution + distances");
    std::string td_mu, td_x, td_out;
    int td_n = 1;
    tdist->add_option("--mu", td_mu)->required();
    tdist->add_option("--x", td_x)->required();
    tdist->add_option("--N", td_n)->required();
    tdist->add_option("--out", td_out, "CSV prefix (default stdout)");

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate standard measure files");
    gen->require_subcommand(1);
    auto* gleb = gen->add_subcommand("lebesgue", "grid atomization of Lebesgue on a box");
    std::string gl_box, gl_out;
    double gl_h = 1.0 / 27.0;
    gleb->add_option("--box", gl_box, "box 'lo,hi[;lo,hi..]' or 'I:a'")->required();
    gleb->add_option("--h", gl_h)->required();
    gleb->add_option("--out", gl_out)->required();

    auto* ghev = gen->add_subcommand("heaviside", "atomized Lebesgue on [0, hi)");
    double gh_hi = 18.0, gh_h = 1e-4;
    std::string gh_out;
    ghev->add_option("--hi", gh_hi, "right end of the support window")->required();
    ghev->add_option("--h", gh_h)->required();
    ghev->add_option("--out", gh_out)->required();

    auto* gsam = gen->add_subcommand("sample-s", "seeded member of the rational-cube family");
    SampleSOptions gs_opt;
    std::string gs_window = "I:2", gs_out;
    gsam->add_option("--n", gs_opt.n, "family parameter (default 1)");
    gsam->add_option("--window", gs_window, "window box (default I:2)");
    gsam->add_option("--h", gs_opt.h, "atom spacing (default 1/27)");
    gsam->add_option("--seed", gs_opt.seed, "draw seed (default 1)");
    gsam->add_option("--depth", gs_opt.boundary_depth, "boundary-avoidance depth (default 6)");
    gsam->add_option("--out", gs_out)->required();

    auto* gann = gen->add_subcommand("annulus", "atomized Lebesgue outside the unit ball");
    double ga_outer = 3.0, ga_h = 1.0 / 128.0;
    std::string ga_out;
    gann->add_option("--outer", ga_outer, "outer radius of the window")->required();
    gann->add_option("--h", ga_h)->required();
    gann->add_option("--out", ga_out)->required();

    auto* gdel = gen->add_subcommand("delta", "single point mass");
    std::string gd_x, gd_out;
    double gd_w = 1.0;
    gdel->add_option("--x", gd_x)->required();
    gdel->add_option("--w", gd_w, "weight (default 1)");
    gdel->add_option("--out", gd_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;  // usage error
    }

    if (workers > 0) {
        setenv("BLOWZOOM_WORKERS", std::to_string(workers).c_str(), 1);
    }

    if (*metric) {
        double v = f_a(load_measure(m_lhs), load_measure(m_rhs), m_a);
        std::cout << fmt(v) << "\n";
        return 0;
    }
    if (*metricd) {
        MetricResult r = d_metric(load_measure(d_lhs), load_measure(d_rhs), d_amax);
        std::cout << fmt(r.value) << " certified_error " << fmt(r.certified_error);
        if (r.saturation_level) std::cout << " saturation_level " << *r.saturation_level;
        std::cout << "\n";
        return 0;
    }
    if (*blow) {
        AtomicMeasure mu = load_measure(b_in);
        AtomicMeasure out = blowup(mu, parse_vector(b_x), b_r, b_c);
        save_measure(out, b_out);
        std::cout << "blowup: " << out.size() << " atoms, mass " << fmt(out.total_mass()) << "\n";
        return 0;
    }
    if (*dup) {
        AtomicMeasure nu = load_measure(du_in);
        WeightVector w(nu.dim(), parse_vector(du_w));
        AtomicMeasure out = weighted_duplication(nu, du_a, w);
        save_measure(out, du_out);
        std::cout << "dup: " << out.size() << " atoms, mass " << fmt(out.total_mass()) << "\n";
        return 0;
    }
    if (*cons) {
        AtomicMeasure mu = load_measure(c_mu);
        AtomicMeasure nu = load_measure(c_nu);
        Box window = parse_box(c_window, mu.dim());
        if (c_background > 0.0) {
            // one background atom per covered cube
            std::vector<double> p, w;
            for (const CubeId& q : cubes_in_box(c_a, c_k, window)) {
                auto ctr = q.center();
                p.insert(p.end(), ctr.begin(), ctr.end());
                w.push_back(c_background);
            }
            mu = mu.plus(AtomicMeasure(mu.dim(), std::move(p), std::move(w)));
        }
        AtomicMeasure out = construct_mu_k(mu, nu, c_a, c_k, window);
        save_measure(out, c_out);
        std::cout << "construct: " << out.size() << " atoms, mass " << fmt(out.total_mass())
                  << (c_background > 0.0 ? " (background " + fmt(c_background) + " per cube)" : "")
                  << "\n";
        return 0;
    }
    if (*cert) {
        AtomicMeasure mu = load_measure(ce_mu);
        AtomicMeasure nu = load_measure(ce_nu);
        Box window = ce_window.empty() ? standard_box(mu.dim(), ce_a + 1)
                                       : parse_box(ce_window, mu.dim());
        MembershipResult res = certify_R_membership(mu, nu, ce_a, ce_n, ce_kmax, window, ce_beta);
        nlohmann::json j;
        j["certified_k"] = res.k ? nlohmann::json(*res.k) : nlohmann::json(nullptr);
        j["attempted_k_last"] = res.attempted_k_last;
        nlohmann::json certs = nlohmann::json::array();
        for (const auto& c : res.certificates) certs.push_back(cert_to_json(c));
        j["certificates"] = std::move(certs);
        std::string body = j.dump(1);
        if (!ce_out.empty()) write_text(ce_out, body + "\n");
        else std::cout << body << "\n";
        if (res.k) std::cout << "certified at k=" << *res.k << "\n";
        else std::cout << "not certified up to k=" << ce_kmax << "\n";
        return 0;
    }
    if (*probe) {
        AtomicMeasure mu = load_measure(p_mu);
        AtomicMeasure nu = load_measure(p_nu);
        std::vector<std::pair<int, int>> aks;
        std::stringstream ss(p_aks);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto pos = tok.find(':');
            if (pos == std::string::npos) throw CLI::ValidationError("--alist needs a:k pairs");
            aks.emplace_back(std::stoi(tok.substr(0, pos)), std::stoi(tok.substr(pos + 1)));
        }
        auto rows = tangent_probe(mu, parse_vector(p_x), nu, aks, p_b);
        std::ostringstream csv;
        csv << "# blow-up distances at a probe point: candidate normalization at the containing"
               " cube, F_b distance to the template, and the ball-radius threshold\n";
        csv << "a,k,cube,c,distance,threshold\n";
        for (const auto& r : rows)
            csv << r.a << "," << r.k << "," << r.cube.label() << "," << fmt(r.c) << ","
                << fmt(r.distance) << "," << fmt(r.threshold) << "\n";
        if (!p_out.empty()) write_text(p_out, csv.str());
        else std::cout << csv.str();
        return 0;
    }
    if (*bc) {
        std::ifstream f(bc_file);
        if (!f) throw std::runtime_error("cannot open " + bc_file);
        nlohmann::json j = nlohmann::json::parse(f);
        std::vector<std::string> labels;
        std::vector<double> prob;
        for (const auto& o : j.at("outcomes")) {
            labels.push_back(o.value("label", "w" + std::to_string(labels.size())));
            prob.push_back(o.at("p").get<double>());
        }
        FiniteProbSpace space(std::move(labels), std::move(prob));
        EventSeq events;
        for (const auto& ev : j.at("events"))
            events.events.push_back(ev.get<std::vector<std::size_t>>());
        std::size_t n = bc_n > 0 ? static_cast<std::size_t>(bc_n) : events.events.size();
        double bound = bc_lower_bound(space, events, n);
        double uni = periodic_limsup_prob(space, events);
        std::cout << fmt(bound) << " union_probability " << fmt(uni) << "\n";
        return 0;
    }
    if (*cev) {
        AtomicMeasure mu = load_measure(cv_mu);
        AtomicMeasure nu = load_measure(cv_nu);
        Box window = cv_window.empty() ? standard_box(mu.dim(), cv_a + 1)
                                       : parse_box(cv_window, mu.dim());
        auto klist = parse_ints(cv_klist);
        CubeEventReport rep = cube_event_system(mu, nu, cv_a, cv_b, klist, window, cv_beta);
        std::ostringstream csv;
        csv << "# central-cube event system: per-generation event probabilities under the"
               " normalized restriction of mu to I_b, with p_a, rho_a bounds\n";
        csv << "p_a," << fmt(rep.p_a) << "\n";
        csv << "rho_a," << fmt(rep.rho_a) << "\n";
        csv << "bc_lower_bound," << fmt(rep.bc_bound) << "\n";
        csv << "asymptotic_target," << fmt(rep.asymptote) << "\n";
        csv << "k,P(A_k),lower_bound,upper_bound\n";
        for (std::size_t i = 0; i < klist.size(); ++i)
            csv << klist[i] << "," << fmt(rep.event_prob[i]) << "," << fmt(rep.p_a / rep.rho_a)
                << "," << fmt(rep.p_a * rep.rho_a) << "\n";
        csv << "k_n,k_l,P(A_n&A_l),pair_bound\n";
        for (std::size_t i = 0; i < klist.size(); ++i)
            for (std::size_t l = 0; l < klist.size(); ++l)
                csv << klist[i] << "," << klist[l] << "," << fmt(rep.pair_prob[i][l]) << ","
                    << fmt(rep.rho_a * rep.rho_a * rep.p_a * rep.p_a) << "\n";
        if (!cv_out.empty()) write_text(cv_out, csv.str());
        else std::cout << csv.str();
        return 0;
    }
    if (*dbl) {
        AtomicMeasure mu = load_measure(db_mu);
        auto rows = doubling_scan(mu, parse_vector(db_x), db_r0, db_factor, db_count);
        std::ostringstream csv;
        csv << "# doubling ratios mu(B(x,2r))/mu(B(x,r)) on a geometric scale grid;"
               " empty inner balls flagged as infinite candidates\n";
        csv << "r,inner_mass,outer_mass,ratio,infinite_candidate\n";
        for (const auto& r : rows) {
            csv << fmt(r.r) << "," << fmt(r.inner) << "," << fmt(r.outer) << ","
                << (r.inner > 0.0 ? fmt(r.ratio) : "") << "," << (r.infinite_candidate ? 1 : 0)
                << "\n";
        }
        if (!db_out.empty()) write_text(db_out, csv.str());
        else std::cout << csv.str();
        return 0;
    }
    if (*sharp) {
        AtomicMeasure mu = load_measure(sh_mu);
        if (!sh_r0s.empty()) sh_cfg.r0_candidates = parse_vector(sh_r0s);
        if (y0opt->count() > 0) {
            sh_have_y0 = true;
            sh_cfg.y0 = sh_y0;
        }
        (void)sh_have_y0;

        SharpnessResult res;
        std::optional<SupportGap> gap;
        double span = mu.positions().empty()
                          ? 1.0
                          : mu.positions().back() - mu.positions().front();
        Box window({mu.positions().front() - 1e-9}, {mu.positions().back() + span * 1e-9 + 1e-9});
        if (sh_mode == "gap" || sh_mode == "auto") gap = support_gap_scan(mu, window, sh_gap_resolution);
        if (sh_mode != "avoider" && gap) {
            res = gap_certificate(mu, *gap, sh_cfg);
        } else {
            res = heaviside_avoider(mu, sh_cfg);
        }

        nlohmann::json j;
        j["case"] = res.case_tag;
        j["no_r0"] = res.no_r0;
        j["y0"] = res.y0;
        j["r0"] = res.r0;
        j["x"] = res.x;
        j["eps"] = sh_cfg.eps;
        j["eps_prime"] = sh_cfg.eps_prime();
        j["threshold"] = sh_cfg.threshold();
        if (!res.note.empty()) j["note"] = res.note;
        nlohmann::json iters = nlohmann::json::array();
        for (const auto& it : res.iterations) {
            nlohmann::json r;
            r["i"] = it.i;
            r["r_i"] = it.r_i;
            r["found"] = it.found;
            if (it.found) {
                r["y_i"] = it.y_i;
                r["s_i"] = it.s_i;
                r["f3"] = it.f3;
            }
            r["x_i"] = it.x_i;
            iters.push_back(std::move(r));
        }
        j["iterations"] = std::move(iters);
        write_text(sh_out, j.dump(1) + "\n");

        std::ostringstream csv;
        csv << "# re-evaluated certificate: blow-up distance at the returned point across"
               " log-spaced scales against the threshold min{eps'/52, eps^2}\n";
        csv << "r,distance,threshold,slack,pass\n";
        for (const auto& row : res.certificate)
            csv << fmt(row.r) << "," << fmt(row.distance) << "," << fmt(row.threshold) << ","
                << fmt(row.slack) << "," << (row.pass ? 1 : 0) << "\n";
        std::string csv_path = sh_out;
        auto dot = csv_path.rfind('.');
        csv_path = (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".csv";
        write_text(csv_path, csv.str());

        std::cout << "case " << res.case_tag << (res.no_r0 ? " (no r0)" : "") << " x "
                  << fmt(res.x) << " certificate rows " << res.certificate.size() << " -> "
                  << csv_path << "\n";
        return 0;
    }
    if (*tree) {
        if (*tpi) {
            TreeMeasure lhs = load_tree(tp_lhs);
            TreeMeasure rhs = load_tree(tp_rhs);
            double v = pi_metric(lhs, rhs);
            std::cout << fmt(v);
            if (tp_lp) {
                PiLpResult lp = pi_metric_lp(lhs, rhs);
                std::cout << " lp " << fmt(lp.value) << " bound_active " << lp.bound_active;
            }
            std::cout << "\n";
            return 0;
        }
        if (*tzoom) {
            TreeMeasure mu = load_tree(tz_mu);
            Word x = parse_word(tz_x, mu.alphabet());
            TreeState s{mu, x};
            for (int i = 1; i <= tz_n; ++i) {
                s = zoom(s);
                std::cout << "step " << i << " word " << word_to_string(s.word, mu.alphabet())
                          << " depth " << s.measure.depth() << "\n";
            }
            std::cout << to_json(s.measure) << "\n";
            return 0;
        }
        if (*tcons) {
            TreeMeasure mu = load_tree(tc_mu);
            TreeMeasure nu = load_tree(tc_nu);
            TreeMeasure out = construct_tree_approximant(mu, nu, tc_k);
            save_tree(out, tc_out);
            std::cout << "construct: depth " << out.depth() << ", " << out.weights().size()
                      << " words\n";
            return 0;
        }
        if (*tdist) {
            TreeMeasure mu = load_tree(td_mu);
            Word x = parse_word(td_x, mu.alphabet());
            auto states = empirical_distribution(mu, x, td_n);
            std::ostringstream csv;
            csv << "# zoom orbit states (remaining word, measure depth, weight) and the pairwise"
                   " transport distance matrix under the state metric\n";
            csv << "step,word,depth,weight\n";
            for (std::size_t i = 0; i < states.size(); ++i)
                csv << (i + 1) << "," << word_to_string(states[i].first.word, mu.alphabet()) << ","
                    << states[i].first.measure.depth() << "," << fmt(states[i].second) << "\n";
            csv << "pairwise\n";
            for (std::size_t i = 0; i < states.size(); ++i) {
                for (std::size_t l = 0; l < states.size(); ++l) {
                    if (l) csv << ",";
                    std::vector<std::pair<TreeState, double>> a{{states[i].first, 1.0}};
                    std::vector<std::pair<TreeState, double>> b{{states[l].first, 1.0}};
                    csv << fmt(distribution_distance(a, b));
                }
                csv << "\n";
            }
            if (!td_out.empty()) write_text(td_out + ".csv", csv.str());
            else std::cout << csv.str();
            return 0;
        }
    }
    if (*gen) {
        if (*gleb) {
            Box b = parse_box(gl_box);
            AtomicMeasure out = discretize_lebesgue(b, gl_h);
            save_measure(out, gl_out);
            std::cout << "lebesgue: " << out.size() << " atoms, mass " << fmt(out.total_mass())
                      << "\n";
            return 0;
        }
        if (*ghev) {
            AtomicMeasure out = discretize_lebesgue(Box({0.0}, {gh_hi}), gh_h);
            save_measure(out, gh_out);
            std::cout << "heaviside: " << out.size() << " atoms, mass " << fmt(out.total_mass())
                      << "\n";
            return 0;
        }
        if (*gsam) {
            gs_opt.window = parse_box(gs_window);
            SampleSResult res = sample_S(gs_opt);
            save_measure(res.measure, gs_out);
            std::cout << "sample-s: seed " << gs_opt.seed << ", " << res.measure.size()
                      << " atoms, rationals";
            for (double q : res.q) std::cout << " " << fmt(q);
            std::cout << "\n";
            return 0;
        }
        if (*gann) {
            AtomicMeasure left = discretize_lebesgue(Box({-ga_outer}, {-1.0}), ga_h);
            AtomicMeasure right = discretize_lebesgue(Box({1.0}, {ga_outer}), ga_h);
            AtomicMeasure out = left.plus(right);
            save_measure(out, ga_out);
            std::cout << "annulus: " << out.size() << " atoms, mass " << fmt(out.total_mass())
                      << "\n";
            return 0;
        }
        if (*gdel) {
            AtomicMeasure out = AtomicMeasure::delta(parse_vector(gd_x), gd_w);
            save_measure(out, gd_out);
            std::cout << "delta: 1 atom, mass " << fmt(gd_w) << "\n";
            return 0;
        }
    }
    return 2;
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error&) {
        return 2;  // handled by CLI11_PARSE already
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
