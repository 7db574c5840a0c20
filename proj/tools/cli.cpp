#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cascade/entanglement.hpp"
#include "cascade/qmath.hpp"
#include "cascade/tomography.hpp"

namespace cascade::cli {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json pair_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(pair_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

void write_csv_row(std::ostream& os, const std::vector<double>& cells) {
  for (size_t i = 0; i < cells.size(); ++i)
    os << (i ? "," : "") << num(cells[i]);
  os << "\n";
}

void write_table(const RunConfig& cfg, std::ostream& os,
                 const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows) {
  if (cfg.format == "json") {
    json j;
    j["columns"] = columns;
    j["rows"] = rows;
    os << j.dump(2) << "\n";
    return;
  }
  for (size_t i = 0; i < columns.size(); ++i)
    os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& r : rows) write_csv_row(os, r);
}

SteadyResult steady_for(const RunConfig& cfg) {
  return steady_state(cfg.params, 1e-9, std::max(cfg.t_max, 50.0), cfg.dt);
}

// Haar-uniform concurrence samples from the mixture of nested subspaces of
// the actual state: component d is drawn with weight w_d, then a uniform pure
// state in the span of the d leading eigenvectors.
std::vector<double> mixture_samples(const Eigen::Matrix4cd& photon,
                                    const EntanglementInvariants& inv,
                                    long n_samples, std::uint64_t seed) {
  HermitianSpectrum spec = hermitian_eig(photon);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double cw1 = inv.w1, cw2 = inv.w1 + inv.w2;
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n_samples));
  for (long s = 0; s < n_samples; ++s) {
    const double u = uni(rng);
    const int d = u < cw1 ? 1 : (u < cw2 ? 2 : 3);
    if (d == 1) {
      out.push_back(inv.e1);
      continue;
    }
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    double norm2 = 0.0;
    for (int i = 0; i < d; ++i) {
      Complex c(gauss(rng), gauss(rng));
      norm2 += std::norm(c);
      psi += c * spec.eigenvectors.col(i);
    }
    psi /= std::sqrt(norm2);
    out.push_back(2.0 * std::abs(psi(0) * psi(3) - psi(1) * psi(2)));
  }
  return out;
}

std::string sanitize(std::string msg) {
  std::replace(msg.begin(), msg.end(), ',', ';');
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  return msg;
}

} // namespace

void validate_config(const RunConfig& cfg) {
  validate_params(cfg.params);
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
    throw std::invalid_argument("dt must be positive");
  if (!(cfg.t_max > 0.0) || !std::isfinite(cfg.t_max))
    throw std::invalid_argument("t_max must be positive");
  if (cfg.sample_every < 1)
    throw std::invalid_argument("sample_every must be at least 1");
  if (cfg.n_bins < 16) throw std::invalid_argument("n_bins must be at least 16");
  if (cfg.mc_samples < 0)
    throw std::invalid_argument("mc_samples must be non-negative");
  if (cfg.format != "csv" && cfg.format != "json")
    throw std::invalid_argument("format must be csv or json");
}

void cmd_evolve(const RunConfig& cfg, std::ostream& os) {
  validate_config(cfg);
  Eigen::Matrix3cd rho0 = Eigen::Matrix3cd::Zero();
  rho0(0, 0) = 1.0;
  EvolveOptions opts;
  opts.t_max = cfg.t_max;
  opts.dt = cfg.dt;
  opts.sample_every = cfg.sample_every;
  std::vector<TracePoint> trace = evolve(cfg.params, rho0, opts);

  std::vector<std::vector<double>> rows;
  rows.reserve(trace.size());
  for (const TracePoint& pt : trace) {
    validate_density(pt.rho, "evolve sample");
    rows.push_back({pt.t, pt.rho(0, 0).real(), pt.rho(1, 1).real(),
                    pt.rho(2, 2).real(), purity(pt.rho)});
  }
  write_table(cfg, os, {"t", "p00", "p01", "p11", "purity"}, rows);
}

void cmd_steady(const RunConfig& cfg, std::ostream& os) {
  validate_config(cfg);
  SteadyResult sr = steady_for(cfg);
  validate_density(sr.rho, "steady state");
  Eigen::Matrix4cd photon = atomic_to_photon(sr.rho);
  validate_density(photon, "steady state (photon)");

  json j;
  j["photon"] = matrix_json(photon);
  j["atomic"] = matrix_json(sr.rho);
  j["purity"] = purity(sr.rho);
  j["residual"] = sr.residual;
  os << j.dump(2) << "\n";
}

void cmd_tomography(const RunConfig& cfg, std::ostream& os) {
  validate_config(cfg);
  SteadyResult sr = steady_for(cfg);
  validate_density(sr.rho, "tomography input");
  Eigen::Matrix4cd photon = atomic_to_photon(sr.rho);
  ObservableSet obs = atomic_observables(sr.rho);
  FieldObservableSet fobs = field_observables(photon);

  double roundtrip = 0.0;
  if (cfg.verify) {
    Eigen::Matrix4cd recon = reconstruct(obs);
    roundtrip = (recon - photon).cwiseAbs().maxCoeff();
    if (roundtrip > 1e-9)
      throw std::runtime_error("tomography round-trip error " + num(roundtrip) +
                               " exceeds 1e-9");
  }

  if (cfg.format == "json") {
    json j;
    j["p2"] = obs.p2;
    j["p3"] = obs.p3;
    j["s1"] = pair_json(obs.s1);
    j["s2"] = pair_json(obs.s2);
    j["c13"] = pair_json(obs.c13);
    j["a1"] = pair_json(fobs.a1);
    j["n1"] = fobs.n1;
    j["n2"] = fobs.n2;
    j["anom"] = pair_json(fobs.anom);
    j["g2"] = fobs.g2;
    if (cfg.verify) j["roundtrip_error"] = roundtrip;
    os << j.dump(2) << "\n";
    return;
  }
  std::vector<std::string> cols = {"p2",     "p3",     "s1_re",   "s1_im",
                                   "s2_re",  "s2_im",  "c13_re",  "c13_im",
                                   "a1_re",  "a1_im",  "n1",      "n2",
                                   "anom_re", "anom_im", "g2"};
  std::vector<double> row = {obs.p2,          obs.p3,
                             obs.s1.real(),   obs.s1.imag(),
                             obs.s2.real(),   obs.s2.imag(),
                             obs.c13.real(),  obs.c13.imag(),
                             fobs.a1.real(),  fobs.a1.imag(),
                             fobs.n1,         fobs.n2,
                             fobs.anom.real(), fobs.anom.imag(),
                             fobs.g2};
  if (cfg.verify) {
    cols.push_back("roundtrip_error");
    row.push_back(roundtrip);
  }
  write_table(cfg, os, cols, {row});
}

void cmd_pdf(const RunConfig& cfg, std::ostream& os) {
  validate_config(cfg);
  SteadyResult sr = steady_for(cfg);
  Eigen::Matrix4cd photon = atomic_to_photon(sr.rho);
  EntanglementInvariants inv = invariants_from_state(photon);

  PdfCurve total = assemble_pdf(inv, cfg.n_bins);
  CdfCurve cum = cdf(total);

  // Component columns: weighted rank-2 and rank-3 densities.
  std::vector<double> col_d2(total.grid.size(), 0.0), col_d3(total.grid.size(), 0.0);
  if (inv.w2 > 1e-14) {
    PdfCurve d2 = pdf_rho2(inv.x, inv.y, inv.z, cfg.n_bins);
    for (size_t k = 0; k < col_d2.size(); ++k) col_d2[k] = inv.w2 * d2.density[k];
  }
  if (inv.w3 > 1e-14) {
    PdfCurve d3 = pdf_rho3(inv.e_perp, cfg.n_bins);
    for (size_t k = 0; k < col_d3.size(); ++k) col_d3[k] = inv.w3 * d3.density[k];
  }

  std::vector<double> mc_pdf, mc_cdf;
  if (cfg.mc_samples > 0) {
    std::vector<double> samples =
        mixture_samples(photon, inv, cfg.mc_samples, cfg.seed);
    const int n = cfg.n_bins;
    const double h = 1.0 / (n - 1);
    std::vector<long> counts(n, 0);
    for (double E : samples) {
      int k = static_cast<int>(std::floor(E / h + 0.5));
      counts[std::clamp(k, 0, n - 1)]++;
    }
    mc_pdf.resize(n);
    for (int k = 0; k < n; ++k) {
      double width = (k == 0 || k == n - 1) ? 0.5 * h : h;
      mc_pdf[k] = static_cast<double>(counts[k]) / (cfg.mc_samples * width);
    }
    std::sort(samples.begin(), samples.end());
    mc_cdf.resize(n);
    for (int k = 0; k < n; ++k) {
      auto it = std::upper_bound(samples.begin(), samples.end(), total.grid[k]);
      mc_cdf[k] = static_cast<double>(it - samples.begin()) / cfg.mc_samples;
    }
  }

  std::vector<std::string> cols = {"E", "pdf_total", "pdf_d2", "pdf_d3", "cdf"};
  if (cfg.mc_samples > 0) {
    cols.push_back("mc_pdf");
    cols.push_back("mc_cdf");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(total.grid.size());
  for (size_t k = 0; k < total.grid.size(); ++k) {
    std::vector<double> row = {total.grid[k], total.density[k], col_d2[k],
                               col_d3[k], cum.values[k]};
    if (cfg.mc_samples > 0) {
      row.push_back(mc_pdf[k]);
      row.push_back(mc_cdf[k]);
    }
    rows.push_back(std::move(row));
  }

  if (cfg.format == "json") {
    json j;
    json deltas = json::array();
    for (auto [loc, wgt] : total.deltas) deltas.push_back(json::array({loc, wgt}));
    j["deltas"] = deltas;
    j["defect"] = total.defect;
    j["columns"] = cols;
    j["rows"] = rows;
    os << j.dump(2) << "\n";
    return;
  }
  for (auto [loc, wgt] : total.deltas)
    os << "# delta " << num(loc) << " " << num(wgt) << "\n";
  for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& r : rows) write_csv_row(os, r);
}

void cmd_sweep(const RunConfig& cfg, const SweepSpec& sweep, std::ostream& os) {
  validate_config(cfg);
  if (!(sweep.from < sweep.to))
    throw std::invalid_argument("sweep requires from < to");
  if (sweep.steps < 2) throw std::invalid_argument("sweep requires steps >= 2");

  double SystemParams::* field = nullptr;
  if (sweep.param == "omega1") field = &SystemParams::omega1;
  else if (sweep.param == "omega2") field = &SystemParams::omega2;
  else if (sweep.param == "delta1") field = &SystemParams::delta1;
  else if (sweep.param == "delta2") field = &SystemParams::delta2;
  else if (sweep.param == "gamma2") field = &SystemParams::gamma2;
  else if (sweep.param == "gamma3") field = &SystemParams::gamma3;
  else throw std::invalid_argument("unknown sweep parameter: " + sweep.param);

  const std::vector<std::string> cols = {sweep.param, "w1",    "w2",
                                         "w3",        "e1",    "e_cusp",
                                         "e_max",     "corr",  "error"};
  const double step = (sweep.to - sweep.from) / (sweep.steps - 1);

  json jrows = json::array();
  std::string csv;
  for (int i = 0; i < sweep.steps; ++i) {
    const double v = sweep.from + i * step;
    SystemParams p = cfg.params;
    p.*field = v;
    std::vector<double> vals(7, std::nan(""));
    std::string err;
    try {
      validate_params(p);
      SteadyResult sr = steady_state(p, 1e-9, std::max(cfg.t_max, 50.0), cfg.dt);
      Eigen::Matrix4cd photon = atomic_to_photon(sr.rho);
      validate_density(photon, "sweep point");
      EntanglementInvariants inv = invariants_from_state(photon);
      vals = {inv.w1, inv.w2, inv.w3, inv.e1, inv.e_cusp, inv.e_max,
              std::abs(photon(0, 3))};
    } catch (const std::exception& e) {
      err = sanitize(e.what());
    }
    if (cfg.format == "json") {
      json row = json::array({v});
      for (double x : vals) row.push_back(std::isnan(x) ? json() : json(x));
      row.push_back(err);
      jrows.push_back(row);
    } else {
      csv += num(v);
      for (double x : vals) csv += "," + (std::isnan(x) ? std::string("nan") : num(x));
      csv += "," + err + "\n";
    }
  }

  if (cfg.format == "json") {
    json j;
    j["columns"] = cols;
    j["rows"] = jrows;
    os << j.dump(2) << "\n";
    return;
  }
  for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n" << csv;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Driven cascade emitter: dynamics, tomography, and entanglement distributions"};
  app.require_subcommand(1);

  struct CommonOpts {
    RunConfig cfg;
    SystemParams flags;
    std::string preset;
    CLI::Option* opt[6] = {};
  };

  auto add_common = [](CLI::App* sub, CommonOpts& c) {
    c.opt[0] = sub->add_option("--omega1", c.flags.omega1, "Rabi frequency on the 1-2 transition");
    c.opt[1] = sub->add_option("--omega2", c.flags.omega2, "Rabi frequency on the 2-3 transition");
    c.opt[2] = sub->add_option("--delta1", c.flags.delta1, "Detuning of the first drive");
    c.opt[3] = sub->add_option("--delta2", c.flags.delta2, "Detuning of the second drive");
    c.opt[4] = sub->add_option("--gamma2", c.flags.gamma2, "Decay rate out of level 2");
    c.opt[5] = sub->add_option("--gamma3", c.flags.gamma3, "Decay rate out of level 3");
    sub->add_option("--preset", c.preset, "Named parameter set")
        ->check(CLI::IsMember({"pure", "bell", "mixed"}));
    sub->add_option("--t-max", c.cfg.t_max, "Integration horizon");
    sub->add_option("--dt", c.cfg.dt, "Integrator step");
    sub->add_option("--sample-every", c.cfg.sample_every, "Steps between trace samples");
    sub->add_option("--bins", c.cfg.n_bins, "Grid points for distribution curves");
    sub->add_option("--mc-samples", c.cfg.mc_samples, "Monte Carlo sample count for pdf");
    sub->add_option("--seed", c.cfg.seed, "Random seed");
    sub->add_option("--out", c.cfg.out, "Output path, '-' for stdout");
    sub->add_option("--format", c.cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--verify", c.cfg.verify, "Check the tomography reconstruction round trip");
  };

  const char* names[5] = {"evolve", "steady", "tomography", "pdf", "sweep"};
  const char* descs[5] = {"Integrate the master equation and emit the population trace",
                          "Emit the steady-state density matrices as JSON",
                          "Emit steady-state tomography and field observables",
                          "Emit the steady-state concurrence distribution",
                          "Scan one parameter and emit invariants per point"};
  CLI::App* subs[5];
  CommonOpts common[5];
  SweepSpec sweep;
  for (int i = 0; i < 5; ++i) {
    subs[i] = app.add_subcommand(names[i], descs[i]);
    add_common(subs[i], common[i]);
  }
  subs[4]->add_option("--param", sweep.param, "Parameter to sweep")->required();
  subs[4]->add_option("--from", sweep.from, "First value")->required();
  subs[4]->add_option("--to", sweep.to, "Last value")->required();
  subs[4]->add_option("--steps", sweep.steps, "Number of points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  int which = -1;
  for (int i = 0; i < 5; ++i)
    if (app.got_subcommand(subs[i])) which = i;

  try {
    CommonOpts& c = common[which];
    RunConfig cfg = c.cfg;
    SystemParams p;
    if (!c.preset.empty()) {
      if (c.preset == "pure") { p.omega1 = 3.0; p.omega2 = 6.0; }
      else if (c.preset == "bell") { p.omega1 = 6.0; p.omega2 = 6.0; }
      else { p.omega1 = 6.0; p.omega2 = 3.0; }
      p.delta1 = p.delta2 = 0.0;
      p.gamma2 = 6.0;
      p.gamma3 = 1.0;
    }
    if (c.opt[0]->count()) p.omega1 = c.flags.omega1;
    if (c.opt[1]->count()) p.omega2 = c.flags.omega2;
    if (c.opt[2]->count()) p.delta1 = c.flags.delta1;
    if (c.opt[3]->count()) p.delta2 = c.flags.delta2;
    if (c.opt[4]->count()) p.gamma2 = c.flags.gamma2;
    if (c.opt[5]->count()) p.gamma3 = c.flags.gamma3;
    cfg.params = p;
    validate_config(cfg);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (cfg.out != "-") {
      file.open(cfg.out, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open output path: " + cfg.out);
      os = &file;
    }

    switch (which) {
      case 0: cmd_evolve(cfg, *os); break;
      case 1: cmd_steady(cfg, *os); break;
      case 2: cmd_tomography(cfg, *os); break;
      case 3: cmd_pdf(cfg, *os); break;
      case 4: cmd_sweep(cfg, sweep, *os); break;
    }
    os->flush();
    if (os->fail()) throw std::runtime_error("write failure on output stream");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

} // namespace cascade::cli
