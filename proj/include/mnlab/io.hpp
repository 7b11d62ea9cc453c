#pragma once
// Deterministic CSV/JSON emission. Numbers are serialized with 17
// significant digits so 64-bit floats round-trip; identical inputs produce
// byte-identical files (no timestamps anywhere).

#include <string>
#include <vector>

#include "mnlab/continuation.hpp"
#include "mnlab/core.hpp"
#include "mnlab/solvers.hpp"

namespace mnlab::io {

std::string fmt17(double v);

/// csv schema: x,u,v,regime
void write_trajectory_csv(const std::string& path, const PositiveSolution& sol);

/// csv schema: lambda,p,h,v0,r_max,x_max,symmetry,shoot_residual,fixed_point_residual,warn
void write_solutions_csv(const std::string& path, const std::vector<PositiveSolution>& sols,
                         double warn_threshold = 1e-6);

/// json records {params, v0, r_max, x_max, symmetry, residuals, samples_ref}
void write_solutions_json(const std::string& path, const std::vector<PositiveSolution>& sols,
                          const std::vector<std::string>& samples_refs,
                          double warn_threshold = 1e-6);

/// csv schema: lambda,h,r_max,v0,symmetry,shoot_residual,fixed_point_residual,warn
void write_branch_csv(const std::string& path, const continuation::SweepResult& sweep,
                      double warn_threshold = 1e-6);

/// csv schema: h,sup_norm,u(x_1),...,u(x_k) with one header naming the probes
void write_blowup_csv(const std::string& path, const continuation::BlowupTable& table);

/// csv schema: n,h,lambda,r_max,sup_error
void write_sequence_csv(const std::string& path,
                        const std::vector<continuation::MetaSequenceRow>& rows);

/// csv schema: theta,phi_R1,...,phi_Rk
void write_landscape_csv(const std::string& path, const std::vector<double>& thetas,
                         const std::vector<double>& r_values,
                         const std::vector<std::vector<double>>& phis);

}  // namespace mnlab::io
