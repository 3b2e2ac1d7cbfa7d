// ltlab command line: optimize | kdv | clr | sweep | verify
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "ltlab/acceptance.hpp"
#include "ltlab/birman_schwinger.hpp"
#include "ltlab/functional.hpp"
#include "ltlab/io.hpp"
#include "ltlab/kdv.hpp"
#include "ltlab/scf.hpp"
#include "ltlab/schrodinger.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ltlab;

namespace {

std::string iso_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

std::string output_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("LTLAB_OUTPUT_DIR")) return env;
    return ".";
}

json make_envelope(const std::string& command, const json& config, const json& payload,
                   const json& provenance) {
    return {{"schema_version", 1},
            {"command", command},
            {"config", config},
            {"started", iso_now()},
            {"finished", iso_now()},
            {"payload", payload},
            {"provenance", provenance}};
}

void write_envelope(const json& env, const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream f(fs::path(dir) / name);
    f << env.dump(2) << "\n";
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (double v : parse_list(s)) out.push_back(static_cast<int>(std::lround(v)));
    return out;
}

InitSpec parse_init(const std::string& s) {
    InitSpec init;
    const auto colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (kind == "gaussian") {
        init.kind = InitSpec::Kind::gaussian;
        const auto p = parse_list(rest);
        if (p.size() >= 1) init.amplitude = p[0];
        if (p.size() >= 2) init.center = p[1];
        if (p.size() >= 3) init.width = p[2];
    } else if (kind == "two_bump") {
        init.kind = InitSpec::Kind::two_bump;
        const auto p = parse_list(rest);
        if (p.size() == 6) {
            init.amplitude = p[0];
            init.center = p[1];
            init.width = p[2];
            init.amplitude2 = p[3];
            init.center2 = p[4];
            init.width2 = p[5];
        } else if (!rest.empty()) {
            throw invalid_input("init two_bump wants 6 numbers a1,c1,w1,a2,c2,w2");
        } else {
            init.amplitude = 1.4;
            init.center = -8.0;
            init.width = std::sqrt(3.0);
            init.amplitude2 = 0.6;
            init.center2 = 8.0;
            init.width2 = 2.0;
        }
    } else if (kind == "file") {
        init.kind = InitSpec::Kind::file_csv;
        init.path = rest;
    } else if (kind == "solitons") {
        init.kind = InitSpec::Kind::soliton;
        const auto at = rest.find('@');
        const auto betas = parse_list(rest.substr(0, at));
        std::vector<double> shifts(betas.size(), 0.0);
        if (at != std::string::npos) shifts = parse_list(rest.substr(at + 1));
        init.soliton = SolitonSpec(betas, shifts);
    } else {
        throw invalid_input("unknown --init kind: " + kind);
    }
    return init;
}

json config_echo(const ScfConfig& c, unsigned seed, const std::string& init_str) {
    return {{"gamma", c.gamma},
            {"dim", c.dim},
            {"nstates", c.n_states},
            {"eta", c.eta},
            {"max_iter", c.max_iter},
            {"tol", c.tol_fixed_point},
            {"degeneracy_tol", c.degeneracy_tol},
            {"box", c.box},
            {"grid_n", c.grid_n},
            {"lmax", c.l_max},
            {"init", init_str},
            {"seed", seed}};
}

json provenance_json(const GridVariant& g, double tol, bool radial_restriction) {
    return {{"grid", grid_to_json(g)},
            {"tolerances", {{"fixed_point", tol}}},
            {"radial_restriction", radial_restriction}};
}

struct SweepPoint {
    double gamma;
    int dim;
    int nstates;
    size_t index;
};

// Values shared by the optimize and sweep commands, overridable per flag.
struct OptimizeArgs {
    double gamma = 1.5;
    int dim = 1;
    int nstates = 1;
    double eta = 0.5;
    int max_iter = 500;
    double tol = 1e-9;
    double box = 40.0;
    int grid_n = 4096;
    int lmax = -1;
    unsigned seed = 0;
    std::string init = "gaussian";
    std::string output;
    bool box_study = false;
};

ScfConfig to_scf_config(const OptimizeArgs& a) {
    ScfConfig c;
    c.gamma = a.gamma;
    c.dim = a.dim;
    c.n_states = a.nstates;
    c.eta = a.eta;
    c.max_iter = a.max_iter;
    c.tol_fixed_point = a.tol;
    c.box = a.box;
    c.grid_n = a.grid_n;
    c.l_max = a.lmax;
    c.seed = a.seed;
    c.init = parse_init(a.init);
    return c;
}

json run_optimize_payload(const OptimizeArgs& a, bool* converged) {
    const ScfConfig cfg = to_scf_config(a);
    const auto res = run_scf(cfg);
    *converged = res.converged;
    json payload = scf_to_json(res);
    payload["norm_power"] = lp_norm_power(res.V_star, cfg.gamma + 0.5 * cfg.dim);
    if (a.box_study) {
        ScfConfig half = cfg;
        half.grid_n = std::max(64, cfg.grid_n / 2);
        const auto res_half = run_scf(half);
        payload["box_study"] = {{"grid_n_half", half.grid_n},
                                {"L_estimate_half", res_half.L_estimate},
                                {"L_drift", res.L_estimate - res_half.L_estimate}};
    }
    return payload;
}

int cmd_optimize(const OptimizeArgs& a) {
    if (!gamma_admissible(a.gamma, a.dim) || a.gamma <= 0.0) {
        std::cerr << "error: gamma=" << a.gamma << " is not admissible in dimension " << a.dim
                  << "\n";
        return 1;
    }
    const ScfConfig cfg = to_scf_config(a);
    const auto res = run_scf(cfg);
    json payload = scf_to_json(res);
    payload["norm_power"] = lp_norm_power(res.V_star, cfg.gamma + 0.5 * cfg.dim);
    if (a.box_study) {
        ScfConfig half = cfg;
        half.grid_n = std::max(64, cfg.grid_n / 2);
        const auto rh = run_scf(half);
        payload["box_study"] = {{"grid_n_half", half.grid_n},
                                {"L_estimate_half", rh.L_estimate},
                                {"L_drift", res.L_estimate - rh.L_estimate}};
    }
    const std::string dir = output_dir(a.output);
    const json env = make_envelope("optimize", config_echo(cfg, a.seed, a.init), payload,
                                   provenance_json(res.V_star.grid, a.tol, a.dim > 1));
    write_envelope(env, dir, "optimize.json");
    write_potential_csv(res.V_star, (fs::path(dir) / "v_star.csv").string());
    std::cout << payload.dump(2) << "\n";
    return res.converged ? 0 : 2;
}

int cmd_kdv(const std::string& betas_str, const std::string& shifts_str, bool normalize,
            double box, int grid_n, const std::string& output) {
    const auto betas = parse_list(betas_str);
    auto shifts = shifts_str.empty() ? std::vector<double>(betas.size(), 0.0)
                                     : parse_list(shifts_str);
    SolitonSpec spec(betas, shifts);
    if (normalize) spec = normalize_to_manifold(spec);

    const Grid1D g(-box, box, grid_n);
    const auto V = soliton_profile(spec, g);
    const auto exact = exact_spectrum(spec);

    SpectrumRequest rq;
    rq.V = V;
    rq.count = spec.order();
    rq.want_vectors = false;
    const auto sp = lowest_eigenpairs(rq);
    double max_dl = 0.0;
    json table = json::array();
    for (int j = 0; j < spec.order(); ++j) {
        table.push_back({{"exact", exact[j]}, {"computed", sp.eigenvalues[j]}});
        max_dl = std::max(max_dl, std::abs(exact[j] - sp.eigenvalues[j]));
    }
    const auto rep = riesz_ratio(V, 1.5, spec.order());

    json payload = {{"betas", spec.betas},     {"shifts", spec.shifts},
                    {"spectrum", table},       {"max_abs_delta", max_dl},
                    {"riesz_ratio_3_2", rep.ratio}, {"sum_beta_cubed", [&] {
                         double s = 0;
                         for (double b : spec.betas) s += b * b * b;
                         return s;
                     }()}};
    const std::string dir = output_dir(output);
    json cfg = {{"betas", betas_str}, {"shifts", shifts_str}, {"normalize", normalize},
                {"box", box},         {"grid_n", grid_n}};
    const json env =
        make_envelope("kdv", cfg, payload, provenance_json(V.grid, 1e-10, false));
    write_envelope(env, dir, "kdv.json");
    write_potential_csv(V, (fs::path(dir) / "profile.csv").string());
    std::cout << payload.dump(2) << "\n";
    return 0;
}

int cmd_clr(int dim, const std::string& potential, double r_max, int grid_n, int count,
            int lmax, const std::string& output) {
    if (dim < 3) {
        std::cerr << "error: the critical case requires dim >= 3\n";
        return 1;
    }
    const RadialGrid g(r_max, grid_n, dim);
    PotentialField V;
    json closed = nullptr;
    if (potential == "sobolev") {
        auto sp = sphere_potential({0, dim}, g);
        V = sp.field;
        closed = sp.closed_form_norm;
    } else if (potential.rfind("vl:", 0) == 0) {
        auto sp = sphere_potential({std::stoi(potential.substr(3)), dim}, g);
        V = sp.field;
        closed = sp.closed_form_norm;
    } else if (potential.rfind("file:", 0) == 0) {
        V = potential_from_csv(potential.substr(5), dim);
    } else {
        std::cerr << "error: unknown --potential " << potential << "\n";
        return 1;
    }
    const auto bs = mu_spectrum(V, count, lmax);
    json payload = bs_to_json(bs);
    payload["decay_tail_constant"] = decay_tail_check(V);
    if (!closed.is_null()) payload["closed_form_norm"] = closed;

    const std::string dir = output_dir(output);
    json cfg = {{"dim", dim},     {"potential", potential}, {"box", r_max},
                {"grid_n", grid_n}, {"nstates", count},       {"lmax", lmax}};
    const json env = make_envelope("clr", cfg, payload, provenance_json(V.grid, 1e-10, true));
    write_envelope(env, dir, "clr.json");
    std::cout << payload.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const OptimizeArgs& base, const std::string& gammas_str,
              const std::string& dims_str, const std::string& nstates_str, int workers) {
    const auto gammas = gammas_str.empty() ? std::vector<double>{base.gamma}
                                           : parse_list(gammas_str);
    const auto dims = dims_str.empty() ? std::vector<int>{base.dim}
                                       : parse_int_list(dims_str);
    const auto nstates = nstates_str.empty() ? std::vector<int>{base.nstates}
                                             : parse_int_list(nstates_str);
    std::vector<SweepPoint> points;
    for (double gm : gammas)
        for (int d : dims)
            for (int ns : nstates) points.push_back({gm, d, ns, points.size()});

    const std::string dir = output_dir(base.output);
    fs::create_directories(dir);
    std::ofstream ledger(fs::path(dir) / "sweep.jsonl");
    std::ofstream csv(fs::path(dir) / "sweep.csv");
    csv << "gamma,dim,N,ratio,norm_power,neg_count\n";
    std::mutex append_mutex;

    std::atomic<size_t> next{0};
    std::atomic<int> errors{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            const auto& pt = points[i];
            OptimizeArgs a = base;
            a.gamma = pt.gamma;
            a.dim = pt.dim;
            a.nstates = pt.nstates;
            if (!gamma_admissible(a.gamma, a.dim) || a.gamma <= 0.0) {
                ++errors;
                continue;
            }
            try {
                bool conv = false;
                const json payload = run_optimize_payload(a, &conv);
                const json env = make_envelope(
                    "sweep", config_echo(to_scf_config(a), a.seed, a.init), payload,
                    json{{"point_index", pt.index}});
                std::lock_guard<std::mutex> lock(append_mutex);
                ledger << env.dump() << "\n";
                csv << format_double(pt.gamma) << "," << pt.dim << "," << pt.nstates << ","
                    << format_double(payload["L_estimate"].get<double>()) << ","
                    << format_double(payload["norm_power"].get<double>()) << ","
                    << payload["negative_count"].get<int>() << "\n";
            } catch (const std::exception& e) {
                ++errors;
                std::lock_guard<std::mutex> lock(append_mutex);
                std::cerr << "sweep point " << pt.index << " failed: " << e.what() << "\n";
            }
        }
    };
    std::vector<std::thread> pool;
    const int W = std::max(1, workers);
    for (int t = 0; t < W; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    std::cout << "sweep complete: " << points.size() << " points, " << errors.load()
              << " errors\n";
    return errors.load() == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-rank Lieb-Thirring and CLR constant laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its entries");

    OptimizeArgs oa;
    std::string gammas_list, dims_list, nstates_list;
    int workers = 1;

    auto* opt = app.add_subcommand("optimize", "self-consistent Euler-Lagrange optimization");
    opt->add_option("--gamma", oa.gamma);
    opt->add_option("--dim", oa.dim);
    opt->add_option("--nstates", oa.nstates);
    opt->add_option("--eta", oa.eta);
    opt->add_option("--max-iter", oa.max_iter);
    opt->add_option("--tol", oa.tol);
    opt->add_option("--box", oa.box);
    opt->add_option("--grid-n", oa.grid_n);
    opt->add_option("--lmax", oa.lmax);
    opt->add_option("--seed", oa.seed);
    opt->add_option("--init", oa.init);
    opt->add_option("--output", oa.output);
    opt->add_flag("--box-study", oa.box_study, "re-run at half resolution and report drift");

    std::string betas_str, shifts_str;
    bool normalize = false;
    double kdv_box = 60.0;
    int kdv_n = 8192;
    std::string kdv_output;
    auto* kdv = app.add_subcommand("kdv", "exact KdV N-soliton oracle");
    kdv->add_option("--betas", betas_str)->required();
    kdv->add_option("--shifts", shifts_str);
    kdv->add_flag("--normalize", normalize);
    kdv->add_option("--box", kdv_box);
    kdv->add_option("--grid-n", kdv_n);
    kdv->add_option("--output", kdv_output);

    int clr_dim = 3, clr_n = 16384, clr_count = 8, clr_lmax = -1;
    double clr_box = 200.0;
    std::string clr_potential = "sobolev", clr_output;
    auto* clr = app.add_subcommand("clr", "critical-case Birman-Schwinger spectrum");
    clr->add_option("--dim", clr_dim);
    clr->add_option("--potential", clr_potential);
    clr->add_option("--box", clr_box);
    clr->add_option("--grid-n", clr_n);
    clr->add_option("--nstates", clr_count);
    clr->add_option("--lmax", clr_lmax);
    clr->add_option("--output", clr_output);

    auto* sweep = app.add_subcommand("sweep", "parameter sweep over gamma, dim, N");
    sweep->add_option("--gammas", gammas_list);
    sweep->add_option("--dims", dims_list);
    sweep->add_option("--nstates-list", nstates_list);
    sweep->add_option("--workers", workers);
    sweep->add_option("--gamma", oa.gamma);
    sweep->add_option("--dim", oa.dim);
    sweep->add_option("--nstates", oa.nstates);
    sweep->add_option("--eta", oa.eta);
    sweep->add_option("--max-iter", oa.max_iter);
    sweep->add_option("--tol", oa.tol);
    sweep->add_option("--box", oa.box);
    sweep->add_option("--grid-n", oa.grid_n);
    sweep->add_option("--seed", oa.seed);
    sweep->add_option("--init", oa.init);
    sweep->add_option("--output", oa.output);

    bool quick = false;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_flag("--quick", quick, "sub-minute subset");

    // config file: JSON values act as defaults, explicit flags win
    try {
        app.allow_config_extras(true);
        for (int i = 1; i + 1 < argc; ++i) {
            if (std::string(argv[i]) == "--config") {
                std::ifstream f(argv[i + 1]);
                if (!f) throw invalid_input(std::string("missing config file: ") + argv[i + 1]);
                json j = json::parse(f);
                auto set_if = [&](const char* key, auto& target) {
                    if (j.contains(key)) target = j.at(key).get<std::decay_t<decltype(target)>>();
                };
                set_if("gamma", oa.gamma);
                set_if("dim", oa.dim);
                set_if("nstates", oa.nstates);
                set_if("eta", oa.eta);
                set_if("max_iter", oa.max_iter);
                set_if("tol", oa.tol);
                set_if("box", oa.box);
                set_if("grid_n", oa.grid_n);
                set_if("lmax", oa.lmax);
                set_if("init", oa.init);
                set_if("output", oa.output);
                set_if("seed", oa.seed);
            }
        }
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (opt->parsed()) return cmd_optimize(oa);
        if (kdv->parsed())
            return cmd_kdv(betas_str, shifts_str, normalize, kdv_box, kdv_n, kdv_output);
        if (clr->parsed())
            return cmd_clr(clr_dim, clr_potential, clr_box, clr_n, clr_count, clr_lmax,
                           clr_output);
        if (sweep->parsed())
            return cmd_sweep(oa, gammas_list, dims_list, nstates_list, workers);
        if (verify->parsed()) {
            const auto results = run_acceptance(quick);
            return report_acceptance(results) == 0 ? 0 : 1;
        }
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const breakdown_error& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
