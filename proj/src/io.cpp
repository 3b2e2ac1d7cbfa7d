#include "ltlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ltlab/birman_schwinger.hpp"
#include "ltlab/functional.hpp"
#include "ltlab/kdv.hpp"
#include "ltlab/scf.hpp"

namespace ltlab {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
    return std::string(buf, p);
}

std::string potential_to_csv(const PotentialField& V) {
    std::ostringstream os;
    os << (V.radial() ? "r,value" : "x,value") << "\n";
    for (int i = 0; i < V.size(); ++i)
        os << format_double(V.coord(i)) << "," << format_double(V.values[i]) << "\n";
    return os.str();
}

void write_potential_csv(const PotentialField& V, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw invalid_input("cannot open for writing: " + path);
    f << potential_to_csv(V);
}

PotentialField potential_from_csv_text(const std::string& text, int radial_dim) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw invalid_input("csv: empty input");
    const bool radial = line.rfind("r,", 0) == 0;
    if (!radial && line.rfind("x,", 0) != 0) throw invalid_input("csv: unknown header");
    std::vector<double> cs, vs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw invalid_input("csv: malformed row");
        double c = 0, v = 0;
        auto r1 = std::from_chars(line.data(), line.data() + comma, c);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), v);
        if (r1.ec != std::errc() || r2.ec != std::errc())
            throw invalid_input("csv: bad number in row");
        cs.push_back(c);
        vs.push_back(v);
    }
    const int n = static_cast<int>(cs.size());
    if (n < 3) throw invalid_input("csv: too few nodes");
    const double h = cs[1] - cs[0];
    for (int i = 1; i < n; ++i)
        if (std::abs(cs[i] - cs[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw invalid_input("csv: nodes not uniformly spaced");
    if (radial) {
        return PotentialField(RadialGrid(cs.back() + h, n, radial_dim), std::move(vs));
    }
    return PotentialField(Grid1D(cs.front() - h, cs.back() + h, n), std::move(vs));
}

PotentialField potential_from_csv(const std::string& path, int radial_dim) {
    std::ifstream f(path);
    if (!f) throw invalid_input("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return potential_from_csv_text(ss.str(), radial_dim);
}

json grid_to_json(const GridVariant& g) {
    if (std::holds_alternative<Grid1D>(g)) {
        const auto& l = std::get<Grid1D>(g);
        return {{"kind", "line"}, {"x_min", l.x_min}, {"x_max", l.x_max}, {"n", l.n}};
    }
    const auto& r = std::get<RadialGrid>(g);
    return {{"kind", "radial"}, {"r_max", r.r_max}, {"n", r.n}, {"dim", r.dim}};
}

GridVariant grid_from_json(const json& j) {
    const std::string kind = j.at("kind");
    if (kind == "line")
        return Grid1D(j.at("x_min").get<double>(), j.at("x_max").get<double>(),
                      j.at("n").get<int>());
    if (kind == "radial")
        return RadialGrid(j.at("r_max").get<double>(), j.at("n").get<int>(),
                          j.at("dim").get<int>());
    throw invalid_input("grid_from_json: unknown kind " + kind);
}

json potential_to_json(const PotentialField& V) {
    return {{"grid", grid_to_json(V.grid)}, {"values", V.values}};
}

PotentialField potential_from_json(const json& j) {
    auto g = grid_from_json(j.at("grid"));
    auto vals = j.at("values").get<std::vector<double>>();
    if (std::holds_alternative<Grid1D>(g))
        return PotentialField(std::get<Grid1D>(g), std::move(vals));
    return PotentialField(std::get<RadialGrid>(g), std::move(vals));
}

json spectrum_to_json(const SpectrumResult& r) {
    json channels = json::array();
    for (const auto& st : r.states)
        channels.push_back(
            {{"l", st.l}, {"multiplicity", st.multiplicity}, {"value", st.value}});
    return {{"eigenvalues", r.eigenvalues},
            {"channels", channels},
            {"negative_count", r.negative_count}};
}

json riesz_to_json(const RieszReport& r) {
    return {{"gamma", r.gamma},           {"dim", r.dim},
            {"n_states", r.n_states},     {"riesz_sum", r.riesz_sum},
            {"norm_power", r.norm_power}, {"ratio", r.ratio},
            {"eigenvalues", r.eigenvalues}, {"negative_count", r.negative_count}};
}

json scf_to_json(const ScfResult& r) {
    return {{"L_estimate", r.L_estimate},
            {"eigenvalues", r.spectrum.eigenvalues},
            {"negative_count", r.spectrum.negative_count},
            {"gap", r.gap},
            {"decay_rate_fit", r.decay_rate_fit},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"residual", r.residual}};
}

json bs_to_json(const BirmanSchwingerResult& r) {
    json channels = json::array();
    for (const auto& c : r.channels)
        channels.push_back({{"l", c.l}, {"multiplicity", c.multiplicity}, {"value", c.value}});
    json est = json::object();
    for (const auto& [N, v] : r.ell_estimates) est[std::to_string(N)] = v;
    return {{"mus", r.mus},
            {"channels", channels},
            {"ell_estimates", est},
            {"norm_power", r.norm_power}};
}

json manifold_fit_to_json(const ManifoldFit& f) {
    return {{"order", f.order},
            {"l2_distance", f.l2_distance},
            {"betas", f.fitted_spec.betas},
            {"shifts", f.fitted_spec.shifts}};
}

json binding_to_json(const BindingCorrection& b) {
    return {{"A_R", b.A_R},
            {"e_R", b.e_R},
            {"B_R", b.B_R},
            {"trial_ratio", b.trial_ratio},
            {"R_effective", b.R_effective}};
}

} // namespace ltlab
