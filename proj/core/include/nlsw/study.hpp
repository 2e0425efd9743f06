#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "nlsw/diagnostics.hpp"
#include "nlsw/oracle.hpp"

namespace nlsw {

// Benchmark initial data used by the study harness (smooth, real, periodic):
//   wave:     1 / (2 + cos^2 x + sin x)
//   velocity: 1 / (2 + sin^2 x + cos x)
double default_initial_wave(double x);
double default_initial_velocity(double x);

enum class StudyKind { spatial, temporal, single, oracle_check };

struct StudyConfig {
  double alpha = 1.0;
  int p = 1;
  double T = 1.0;
  std::vector<double> beta_list{0.0, 1.0, 2.0};
  std::vector<double> eps_list{1.0, 0.5, 0.25, 0.125, 0.0625};
  std::vector<int> M_list{8, 16, 32, 64};
  std::vector<double> tau_list{0.1, 0.05, 0.025, 0.0125, 0.00625};
  int ref_M = 128;
  double ref_tau = 5e-4;
  double domain_a;  // defaults set in the constructor: (-pi, pi)
  double domain_b;
  std::filesystem::path cache_dir;  // empty: keep references in memory only
  int jobs = 0;                     // 0: hardware concurrency
  double divergence_ceiling = 1e6;
  bool dealias = false;

  // `single` extras
  double t_final_override = -1.0;  // < 0: use T / eps^beta
  int snapshot_every = 0;          // > 0: dump coefficients every k steps
  std::filesystem::path snapshot_file;
  int series_every = 0;            // > 0: sample conserved quantities
  std::filesystem::path series_file;
  std::filesystem::path initial_data_file;  // CSV override: re0,im0,re1,im1

  // `oracle-check`
  double oracle_tau = 1e-4;
  double oracle_threshold = 1e-6;

  StudyConfig();
  void validate() const;  // throws std::invalid_argument before any compute
};

struct StudyRow {
  std::string label;
  double beta_exp = 0.0;
  double eps = 0.0;
  int M = 0;
  double tau = 0.0;
  double t_final = 0.0;
  double err_h1 = 0.0;
  double err_l2 = 0.0;
  double err_linf = 0.0;
  double mass_drift = 0.0;
  double energy_drift = 0.0;
  long long n_steps = 0;
  double wall_ms = 0.0;
  bool diverged = false;
  long long diverged_step = -1;
};

struct OrderFit {
  double beta_exp;
  double eps;
  double order;
};

// err(eps at this tau) / err(eps/2 at this tau)
struct EpsRatio {
  double beta_exp;
  double tau;
  double eps;
  double ratio;
};

struct StudyResult {
  StudyKind kind = StudyKind::single;
  std::vector<StudyRow> rows;
  std::vector<OrderFit> orders;  // temporal only
  std::vector<EpsRatio> ratios;  // temporal only
};

// Spatial sweep: for each (beta, eps, M) integrate at tau = ref_tau to
// t = T/eps^beta and compare with the cached fine reference. A diverging
// point becomes a flagged row; the study continues.
StudyResult run_spatial_study(const StudyConfig& config);

// Temporal sweep at M = ref_M over the tau ladder, plus per-(beta, eps)
// order fits and per-tau eps-halving ratios.
StudyResult run_temporal_study(const StudyConfig& config);

// One integration with full diagnostics and optional trajectory/conserved
// series emission.
StudyResult run_single(const StudyConfig& config);

struct OraclePoint {
  double eps;
  double h1_disagreement;
};

struct OracleCheckReport {
  std::vector<OraclePoint> points;
  double max_h1 = 0.0;
  double threshold = 0.0;
  bool ok = false;
};

// Fine-EWI reference vs RK4 trajectory on the beta = 0 points.
OracleCheckReport run_oracle_check(const StudyConfig& config);

// Fixed schema: case,beta,eps,M,tau,t_final,err_h1,err_l2,err_linf,
// mass_drift,energy_drift,n_steps,wall_ms. Floats carry 17 significant
// digits; wall_ms is timing-dependent, everything else is reproducible
// byte-for-byte given a warm reference cache.
void write_csv(std::span<const StudyRow> rows, std::ostream& out);

// JSON summary: fitted orders, scaling ratios, monotonicity checks, each
// with its expected window and a pass flag where one is defined.
void write_summary(const StudyResult& result, const StudyConfig& config,
                   std::ostream& out);

}  // namespace nlsw
