#include "freefront/io.hpp"
#include "freefront/error.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace freefront {

const char* kVersion = "0.1.0";

json to_json(const AprioriBounds& b) {
    json j;
    j["sup_u0"] = b.sup_u0;
    j["sup_v0"] = b.sup_v0;
    j["sup_v0_prime"] = b.sup_v0_prime;
    j["k1"] = b.k1;
    j["k2"] = b.k2;
    j["L"] = b.L;
    j["Lstar"] = b.Lstar;
    j["k3"] = b.k3;
    j["eps_bar"] = b.eps_bar;
    j["delta0"] = b.delta0;
    j["eps0"] = b.eps0;
    j["M"] = b.M;
    j["T0"] = b.T0;
    j["Rbar"] = b.Rbar;
    j["rho_c0"] = b.rho_c0;
    j["rho_c0_star"] = b.rho_c0_star;
    j["rho_zero"] = b.rho_zero;
    j["mu_zero"] = b.mu_zero;
    j["L_u0"] = b.L_u0;
    j["L_J"] = b.L_J;
    j["R0"] = b.R(0.0);
    return j;
}

json to_json(const MonitorReport& m) {
    json j;
    j["checked"] = {{"fronts", m.check_fronts},
                    {"flux", m.check_flux},
                    {"growth", m.check_growth},
                    {"symmetry", m.check_symmetry}};
    j["min_w"] = m.min_w;
    j["max_w"] = m.max_w;
    j["min_z"] = m.min_z;
    j["max_z"] = m.max_z;
    j["min_w_preclamp"] = m.min_w_preclamp;
    j["min_z_preclamp"] = m.min_z_preclamp;
    j["min_h_increment"] = m.min_h_increment;
    j["max_g_increment"] = m.max_g_increment;
    j["max_speed_over_R"] = m.max_speed_over_R;
    j["min_flux_right"] = m.min_flux_right;
    j["max_flux_right"] = m.max_flux_right;
    j["min_flux_left"] = m.min_flux_left;
    j["max_flux_left"] = m.max_flux_left;
    j["max_width_over_growth"] = m.max_width_over_growth;
    j["max_sym_front"] = m.max_sym_front;
    j["max_sym_w"] = m.max_sym_w;
    j["max_sym_z"] = m.max_sym_z;
    j["frac_picard_converged"] = m.frac_picard_converged;
    j["max_picard_ratio"] = m.max_picard_ratio;
    j["final_dx_eff"] = m.final_dx_eff;
    j["breached"] = m.breached;
    if (m.breached) j["breach_detail"] = m.breach_detail;
    return j;
}

json to_json(const GammaReport& g) {
    json j;
    j["window_end"] = g.window_end;
    j["all_ok"] = g.all_ok();
    json conds = json::array();
    for (const auto& c : g.conditions) {
        json jc;
        jc["name"] = c.name;
        jc["checked"] = c.checked;
        jc["ok"] = c.ok;
        jc["worst"] = c.worst;
        if (!c.ok) jc["first_violation_t"] = c.first_violation_t;
        conds.push_back(jc);
    }
    j["conditions"] = conds;
    return j;
}

json to_json(const ConvergenceReport& c) {
    json j;
    json lv = json::array();
    for (const auto& l : c.levels) lv.push_back({{"dt", l.dt}, {"N", l.N}});
    j["levels"] = lv;
    j["h_final"] = c.h_final;
    j["p_h"] = c.p_h;
    j["p_w"] = c.p_w;
    j["p_z"] = c.p_z;
    j["dh"] = {c.dh12, c.dh23};
    j["dw"] = {c.dw12, c.dw23};
    j["dz"] = {c.dz12, c.dz23};
    j["monotone"] = c.monotone;
    return j;
}

json to_json(const ComparisonReport& c) {
    json j;
    j["ok"] = c.ok;
    j["min_psi"] = c.min_psi;
    j["min_gap"] = c.min_gap;
    if (!c.ok) {
        j["first_violation_t"] = c.first_violation_t;
        j["first_violation_node"] = c.first_violation_node;
    }
    return j;
}

std::string csv_fronts(const Trajectory& traj) {
    std::ostringstream out;
    out << "t,g,h,gdot,hdot,picard_iters,residual\n";
    for (const FrontRecord& r : traj.fronts)
        out << fmt_g17(r.t) << ',' << fmt_g17(r.g) << ',' << fmt_g17(r.h) << ','
            << fmt_g17(r.gdot) << ',' << fmt_g17(r.hdot) << ',' << r.picard_iters
            << ',' << fmt_g17(r.residual) << '\n';
    return out.str();
}

std::string csv_fields(const Trajectory& traj) {
    std::ostringstream out;
    out << "t,y,x,w,z\n";
    for (const FieldSnapshot& s : traj.snapshots) {
        for (std::size_t j = 0; j < s.x.size(); ++j) {
            const double y = s.y.empty() ? 0.0 : s.y[j];
            out << fmt_g17(s.t) << ',' << fmt_g17(y) << ',' << fmt_g17(s.x[j]) << ','
                << fmt_g17(s.w[j]) << ',' << fmt_g17(s.z[j]) << '\n';
        }
    }
    return out.str();
}

json run_header(const ConfigMap& echo, const AprioriBounds& b) {
    json j;
    j["version"] = kVersion;
    json cfg = json::object();
    for (const auto& [k, v] : echo) cfg[k] = v;
    j["config"] = cfg;
    j["apriori"] = to_json(b);
    return j;
}

ConfigMap config_from_header(const json& header) {
    if (!header.contains("config"))
        throw ConfigError("header has no config object");
    ConfigMap map;
    for (const auto& [k, v] : header.at("config").items())
        map[k] = v.get<std::string>();
    return map;
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << content;
}

bool write_run_output(const std::string& dir, const ConfigMap& echo,
                      const Trajectory& traj) {
    std::filesystem::create_directories(dir);
    spit_file(dir + "/header.json", run_header(echo, traj.bounds).dump(2) + "\n");
    spit_file(dir + "/fronts.csv", csv_fronts(traj));
    spit_file(dir + "/fields.csv", csv_fields(traj));

    json rep;
    rep["ok"] = !traj.monitor.breached;
    rep["monitor"] = to_json(traj.monitor);
    rep["gamma"] = to_json(traj.gamma);
    rep["steps"] = traj.steps;
    rep["dt_initial"] = traj.dt_initial;
    rep["dt_final"] = traj.dt_final;
    rep["dt_min"] = traj.dt_min;
    spit_file(dir + "/report.json", rep.dump(2) + "\n");
    return !traj.monitor.breached;
}

void write_error_report(const std::string& dir, const Error& err) {
    std::filesystem::create_directories(dir);
    json rep;
    rep["ok"] = false;
    rep["error"] = {{"kind", error_kind_name(err.kind())},
                    {"detail", err.detail()},
                    {"t", err.time()},
                    {"node", err.node()}};
    spit_file(dir + "/report.json", rep.dump(2) + "\n");
}

} // namespace freefront
