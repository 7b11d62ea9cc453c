#include "mnlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mnlab::io {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("io: cannot open " + path + " for writing");
    return f;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const PositiveSolution& sol) {
    auto f = open(path);
    f << "x,u,v,regime\n";
    for (const auto& arc : sol.arcs)
        for (const auto& s : arc.samples)
            f << fmt17(s.x) << ',' << fmt17(s.u) << ',' << fmt17(s.v) << ','
              << to_string(arc.regime) << '\n';
}

void write_solutions_csv(const std::string& path, const std::vector<PositiveSolution>& sols,
                         double warn_threshold) {
    auto f = open(path);
    f << "lambda,p,h,v0,r_max,x_max,symmetry,shoot_residual,fixed_point_residual,warn\n";
    for (const auto& s : sols) {
        const bool warn = s.fixed_point_residual > warn_threshold * std::max(1.0, s.r_max);
        f << fmt17(s.params.lambda) << ',' << fmt17(s.params.p) << ',' << fmt17(s.params.h) << ','
          << fmt17(s.v0) << ',' << fmt17(s.r_max) << ',' << fmt17(s.x_max) << ','
          << to_string(s.symmetry) << ',' << fmt17(s.shoot_residual) << ','
          << fmt17(s.fixed_point_residual) << ',' << (warn ? 1 : 0) << '\n';
    }
}

void write_solutions_json(const std::string& path, const std::vector<PositiveSolution>& sols,
                          const std::vector<std::string>& samples_refs, double warn_threshold) {
    nlohmann::ordered_json root = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < sols.size(); ++i) {
        const auto& s = sols[i];
        nlohmann::ordered_json rec;
        rec["params"] = {{"lambda", s.params.lambda}, {"p", s.params.p}, {"h", s.params.h}};
        rec["v0"] = s.v0;
        rec["r_max"] = s.r_max;
        rec["x_max"] = s.x_max;
        rec["symmetry"] = to_string(s.symmetry);
        rec["residuals"] = {{"shoot", s.shoot_residual},
                            {"fixed_point", s.fixed_point_residual},
                            {"energy_drift", s.energy_drift}};
        rec["warn"] = s.fixed_point_residual > warn_threshold * std::max(1.0, s.r_max);
        rec["samples_ref"] = i < samples_refs.size() ? samples_refs[i] : "";
        root.push_back(std::move(rec));
    }
    auto f = open(path);
    f << root.dump(2) << '\n';
}

void write_branch_csv(const std::string& path, const continuation::SweepResult& sweep,
                      double warn_threshold) {
    auto f = open(path);
    f << "lambda,h,r_max,v0,symmetry,shoot_residual,fixed_point_residual,warn\n";
    for (const auto& b : sweep.points) {
        const bool warn = b.fixed_point_residual > warn_threshold * std::max(1.0, b.r_max);
        f << fmt17(b.lambda) << ',' << fmt17(b.h) << ',' << fmt17(b.r_max) << ',' << fmt17(b.v0)
          << ',' << to_string(b.symmetry) << ',' << fmt17(b.shoot_residual) << ','
          << fmt17(b.fixed_point_residual) << ',' << (warn ? 1 : 0) << '\n';
    }
    for (const auto& msg : sweep.failures) f << "# failure: " << msg << '\n';
}

void write_blowup_csv(const std::string& path, const continuation::BlowupTable& table) {
    auto f = open(path);
    f << "h,sup_norm";
    for (double x : table.x_probes) f << ",u(" << fmt17(x) << ')';
    f << '\n';
    for (std::size_t i = 0; i < table.h_grid.size(); ++i) {
        f << fmt17(table.h_grid[i]) << ',' << fmt17(table.sup_norms[i]);
        for (double v : table.values[i]) f << ',' << fmt17(v);
        f << '\n';
    }
    for (const auto& msg : table.failures) f << "# failure: " << msg << '\n';
}

void write_sequence_csv(const std::string& path,
                        const std::vector<continuation::MetaSequenceRow>& rows) {
    auto f = open(path);
    f << "n,h,lambda,r_max,sup_error\n";
    for (const auto& r : rows)
        f << r.n << ',' << fmt17(r.h) << ',' << fmt17(r.lambda) << ',' << fmt17(r.r_max) << ','
          << fmt17(r.sup_error) << '\n';
}

void write_landscape_csv(const std::string& path, const std::vector<double>& thetas,
                         const std::vector<double>& r_values,
                         const std::vector<std::vector<double>>& phis) {
    auto f = open(path);
    f << "theta";
    for (double r : r_values) f << ",phi_R" << fmt17(r);
    f << '\n';
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        f << fmt17(thetas[i]);
        for (const auto& col : phis) f << ',' << fmt17(col[i]);
        f << '\n';
    }
}

}  // namespace mnlab::io
