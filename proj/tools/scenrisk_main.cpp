//
// Copyright 2026 The scenrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line front end: certification, region export, a-priori bound
// sweeps, dataset sizing, and Monte Carlo coverage simulation.
//
// Exit codes: 0 success, 1 statistical-acceptance failure (simulate only),
// 2 validation error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scenrisk/scenrisk.hpp"

namespace {

using namespace scenrisk;

constexpr int kOk = 0;
constexpr int kStatFail = 1;
constexpr int kBadConfig = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MultiIndex parse_multi(const std::string& text, std::size_t broadcast_m) {
  std::vector<std::int64_t> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      vals.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse '" + tok + "' as an integer");
    }
  }
  if (vals.empty()) throw ConfigError("empty multi-index");
  if (vals.size() == 1 && broadcast_m > 1)  // the paper's "n * 1" shorthand
    return MultiIndex::constant(broadcast_m, vals[0]);
  for (auto v : vals)
    if (v < 0) throw ConfigError("multi-index entries must be >= 0");
  return MultiIndex(vals);
}

std::vector<std::int64_t> parse_m_range(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) {
      out.push_back(std::stoll(tok));
      continue;
    }
    const std::int64_t lo = std::stoll(tok.substr(0, colon));
    const auto rest = tok.substr(colon + 1);
    const auto colon2 = rest.find(':');
    const std::int64_t hi =
        std::stoll(colon2 == std::string::npos ? rest : rest.substr(0, colon2));
    const std::int64_t step =
        colon2 == std::string::npos ? 1 : std::stoll(rest.substr(colon2 + 1));
    if (step < 1 || hi < lo) throw ConfigError("bad m-range '" + tok + "'");
    for (std::int64_t m = lo; m <= hi; m += step) out.push_back(m);
  }
  if (out.empty()) throw ConfigError("empty m-range");
  return out;
}

// --out is resolved against SCENRISK_OUT_DIR when relative; empty means
// stdout.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::path p(out_path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SCENRISK_OUT_DIR"))
      p = std::filesystem::path(dir) / p;
  }
  std::ofstream f(p);
  if (!f) throw ConfigError("cannot open output file " + p.string());
  f << content;
}

Scheme parse_scheme(const std::string& s) {
  if (s == "uniform") return Scheme::kUniform;
  if (s == "axial") return Scheme::kAxial;
  if (s == "diagonal") return Scheme::kDiagonal;
  throw ConfigError("unknown scheme '" + s + "'");
}

// ---------------------------------------------------------------------------

struct CertifyArgs {
  std::string n, k, h, scheme = "diagonal", out;
  double beta = 0.0;
  std::size_t m = 1;
  std::size_t dims_limit = 3;
};

int run_certify(const CertifyArgs& a) {
  const MultiIndex N = parse_multi(a.n, a.m);
  const MultiIndex k = parse_multi(a.k, std::max(a.m, N.size()));
  const MultiIndex H = a.h.empty() ? N : parse_multi(a.h, N.size());
  if (k.size() != N.size()) throw ConfigError("k and n have different lengths");
  if (!all_le(k, N)) throw ConfigError("k exceeds N");
  if (!(a.beta > 0.0 && a.beta < 1.0))
    throw ConfigError("beta must lie in (0,1)");
  const Scheme scheme = parse_scheme(a.scheme);

  Json j;
  if (scheme == Scheme::kDiagonal) {
    const RegionCertificate region = diagonal_region(N, H, k, a.beta);
    j["region"] = to_json(region);
    // max |v| over the band sits on the upper hyperbola; AM-GM closed form
    JointRiskCertificate joint;
    joint.bound =
        std::min(raw_diagonal_bound(N.size(), region.band.t_bar), 1.0);
    joint.confidence = 1.0 - a.beta;
    joint.method = JointMethod::kDiagonalClosedForm;
    joint.k = k;
    joint.N = N;
    joint.beta = a.beta;
    j["joint"] = to_json(joint);
  } else {
    AllocationSpec alloc{scheme, N, H, a.beta, {}};
    const RegionCertificate region = allocation_region(alloc, k);
    j["region"] = to_json(region);
    if (N.size() <= a.dims_limit) {
      j["joint"] = to_json(joint_bound_region_max(region, a.dims_limit));
    } else {
      j["joint_note"] =
          "region max needs m <= " + std::to_string(a.dims_limit);
    }
  }
  emit(a.out, j.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------------------

struct GridArgs {
  std::string n, k, h, scheme = "diagonal", box_choice = "auto", out;
  double beta = 0.0;
  std::size_t resolution = 400;
};

int run_region_grid(const GridArgs& a) {
  const MultiIndex N = parse_multi(a.n, 1);
  if (N.size() != 2) throw ConfigError("region-grid supports m = 2 only");
  const MultiIndex k = parse_multi(a.k, 2);
  const MultiIndex H = a.h.empty() ? N : parse_multi(a.h, 2);
  if (k.size() != 2) throw ConfigError("k must have length 2");
  if (!all_le(k, N)) throw ConfigError("k exceeds N");
  if (!(a.beta > 0.0 && a.beta < 1.0))
    throw ConfigError("beta must lie in (0,1)");
  if (a.resolution < 2 || a.resolution > 20000)
    throw ConfigError("resolution out of range");
  const Scheme scheme = parse_scheme(a.scheme);
  AllocationSpec alloc{scheme, N, H, a.beta, {}};
  alloc.validate();

  Theorem1Choice box_choice;
  if (a.box_choice == "upper")
    box_choice = Theorem1Choice::kUpperOnlyHN;
  else if (a.box_choice == "threeband")
    box_choice = Theorem1Choice::kThreeBandH4N;
  else if (a.box_choice == "auto")
    box_choice = all_lt(N, H) ? Theorem1Choice::kThreeBandH4N
                              : Theorem1Choice::kUpperOnlyHN;
  else
    throw ConfigError("box-choice must be auto, upper, or threeband");
  const RegionCertificate box = box_region(
      {{N[0], k[0], a.beta / 2.0}, {N[1], k[1], a.beta / 2.0}}, box_choice);

  const std::size_t R = a.resolution;
  std::ostringstream os;
  os << region_grid_header(2, "member_box") << "\n";
  char buf[160];
  std::vector<double> v(2);
  for (std::size_t i = 0; i < R; ++i) {
    v[0] = double(i) / double(R);
    for (std::size_t jx = 0; jx < R; ++jx) {
      v[1] = double(jx) / double(R);
      const double g = region_function(alloc, k, v);
      const bool member = g >= 0.0;
      const bool in_box = box.contains(v);
      std::snprintf(buf, sizeof buf, "%.15g,%.15g,%d,%.15g,%d\n", v[0], v[1],
                    member ? 1 : 0, g, in_box ? 1 : 0);
      os << buf;
    }
  }
  emit(a.out, os.str());
  return kOk;
}

// ---------------------------------------------------------------------------

struct AprioriArgs {
  std::int64_t n_lower = 0, k_star = 0, h_factor = 2;
  double beta = 0.0;
  std::string m_range = "1:250", format = "csv", out;
};

int run_apriori(const AprioriArgs& a) {
  if (a.n_lower < 1) throw ConfigError("n-lower must be >= 1");
  if (a.k_star < 0) throw ConfigError("kstar must be >= 0");
  if (!(a.beta > 0.0 && a.beta < 1.0))
    throw ConfigError("beta must lie in (0,1)");
  if (a.h_factor < 1) throw ConfigError("h-factor must be >= 1");
  const auto ms = parse_m_range(a.m_range);
  const auto rows =
      apriori_sweep(ms, a.n_lower, a.beta, a.k_star, a.h_factor);

  if (a.format == "csv") {
    std::ostringstream os;
    os << "m,eps_independent_raw,eps_independent,eps_worst_raw,eps_worst,"
          "eps_best_raw,eps_best,eps_uniform\n";
    for (const auto& r : rows) {
      os << r.m << ',' << real_str(r.eps_independent) << ','
         << real_str(std::min(r.eps_independent, 1.0)) << ','
         << real_str(r.eps_worst) << ','
         << real_str(std::min(r.eps_worst, 1.0)) << ','
         << real_str(r.eps_best) << ','
         << real_str(std::min(r.eps_best, 1.0)) << ','
         << real_str(r.eps_uniform) << "\n";
    }
    emit(a.out, os.str());
  } else if (a.format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json jr;
      jr["m"] = r.m;
      jr["eps_independent_raw"] = real_str(r.eps_independent);
      jr["eps_independent"] = real_str(std::min(r.eps_independent, 1.0));
      jr["eps_worst_raw"] = real_str(r.eps_worst);
      jr["eps_worst"] = real_str(std::min(r.eps_worst, 1.0));
      jr["eps_best_raw"] = real_str(r.eps_best);
      jr["eps_best"] = real_str(std::min(r.eps_best, 1.0));
      jr["eps_uniform"] = real_str(r.eps_uniform);
      arr.push_back(jr);
    }
    Json j;
    j["type"] = "apriori_sweep";
    j["n_lower"] = a.n_lower;
    j["k_star"] = a.k_star;
    j["beta"] = real_str(a.beta);
    j["h_factor"] = a.h_factor;
    j["rows"] = arr;
    emit(a.out, j.dump(2) + "\n");
  } else {
    throw ConfigError("format must be csv or json");
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct Table1Args {
  double beta_sum = 1e-7, beta_diag = 1e-5;
  std::string rows, out;
};

int run_table1(const Table1Args& a) {
  std::vector<Table1Config> cfgs = table1_configs();
  if (!a.rows.empty()) {
    cfgs.clear();
    std::stringstream ss(a.rows);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::int64_t m, N, k;
      if (std::sscanf(tok.c_str(), "%ld:%ld:%ld", &m, &N, &k) != 3)
        throw ConfigError("rows must be m:N:k,m:N:k,...");
      cfgs.push_back({m, N, k});
    }
  }
  std::ostringstream os;
  os << "m,N,k,k_total,sum_bound_raw,sum_bound,diag_bound_raw,diag_bound\n";
  for (const auto& cfg : cfgs) {
    const Table1Row r = table1_row(cfg, a.beta_sum, a.beta_diag);
    os << cfg.m << ',' << cfg.N << ',' << cfg.k << ',' << r.k_total << ','
       << real_str(r.sum_bound_raw) << ',' << real_str(r.sum_bound_capped)
       << ',' << real_str(r.diag_bound_raw) << ','
       << real_str(r.diag_bound_capped) << "\n";
  }
  emit(a.out, os.str());
  return kOk;
}

// ---------------------------------------------------------------------------

struct SizeArgs {
  std::int64_t m = 0, k_star = -1;
  double beta = 0.0, eps = 0.0;
  bool uniform = false;
  std::string out;
};

int run_size(const SizeArgs& a) {
  SizingRequest req;
  req.mode = a.uniform ? SizingMode::kUniformInM : SizingMode::kFiniteM;
  if (!a.uniform) {
    if (a.m < 1) throw ConfigError("need --m >= 1 or --uniform");
    req.m = std::size_t(a.m);
  } else {
    req.m = 1;
  }
  if (a.k_star < 0) throw ConfigError("kstar must be >= 0");
  req.k_star = a.k_star;
  req.beta = a.beta;
  req.eps_target = a.eps;
  try {
    req.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const std::int64_t n_lower = size_datasets(req);
  const double achieved =
      a.uniform ? uniform_in_m_bound(n_lower, a.beta, a.k_star).bound
                : apriori_bound_diagonal(
                      MultiIndex::constant(req.m, n_lower), a.beta, a.k_star)
                      .bound;
  Json j;
  j["type"] = "sizing_result";
  j["mode"] = a.uniform ? "uniform_in_m" : "finite_m";
  if (!a.uniform) j["m"] = a.m;
  j["k_star"] = a.k_star;
  j["beta"] = real_str(a.beta);
  j["eps_target"] = real_str(a.eps);
  j["n_lower"] = n_lower;
  j["achieved_bound"] = real_str(achieved);
  emit(a.out, j.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string problem = "max-of-samples", n, certificate = "diagonal", out;
  double beta = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 1;
};

int run_simulate(const SimulateArgs& a) {
  if (a.trials < 1) throw ConfigError("trials must be >= 1");
  if (!(a.beta > 0.0 && a.beta < 1.0))
    throw ConfigError("beta must lie in (0,1)");
  const MultiIndex N = parse_multi(a.n, 1);
  CertificateKind kind;
  if (a.certificate == "diagonal")
    kind = CertificateKind::kDiagonalBand;
  else if (a.certificate == "box")
    kind = CertificateKind::kIndependentBox;
  else
    throw ConfigError("certificate must be box or diagonal");

  CoverageReport rep;
  if (a.problem == "max-of-samples") {
    rep = coverage_experiment(MaxOfSamples::standard(N.size()), N, a.beta,
                              a.trials, kind, a.seed);
  } else if (a.problem == "robust-lp2d") {
    RobustLp2d::Params p;
    p.m = N.size();
    rep = coverage_experiment(RobustLp2d(p), N, a.beta, a.trials, kind,
                              a.seed);
  } else {
    throw ConfigError("problem must be max-of-samples or robust-lp2d");
  }
  emit(a.out, to_json(rep).dump(2) + "\n");
  return rep.passes() ? kOk : kStatFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "scenrisk: risk certificates for multi-criteria scenario decisions"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // --h is a real option below

  CertifyArgs ca;
  auto* certify = app.add_subcommand(
      "certify", "a-posteriori region and joint-risk certificates");
  certify->set_help_flag("--help", "print help");
  certify->add_option("--n", ca.n, "dataset sizes (comma separated)")
      ->required();
  certify->add_option("--k", ca.k, "observed complexity")->required();
  certify->add_option("--beta", ca.beta, "confidence parameter")->required();
  certify->add_option("--scheme", ca.scheme, "uniform|axial|diagonal");
  certify->add_option("--h", ca.h, "H multi-index (default: equals --n)");
  certify->add_option("--m", ca.m, "broadcast scalar --n/--k to m criteria");
  certify->add_option("--out", ca.out, "output file (default: stdout)");

  GridArgs ga;
  auto* grid = app.add_subcommand("region-grid",
                                  "export an m=2 region membership grid");
  grid->set_help_flag("--help", "print help");
  grid->add_option("--n", ga.n)->required();
  grid->add_option("--k", ga.k)->required();
  grid->add_option("--beta", ga.beta)->required();
  grid->add_option("--scheme", ga.scheme, "uniform|axial|diagonal");
  grid->add_option("--h", ga.h, "H multi-index (default: equals --n)");
  grid->add_option("--resolution", ga.resolution, "grid points per axis");
  grid->add_option("--box-choice", ga.box_choice,
                   "overlay interval choice: auto|upper|threeband");
  grid->add_option("--out", ga.out);

  AprioriArgs aa;
  auto* apriori = app.add_subcommand(
      "apriori", "a-priori joint-risk bounds as a function of m");
  apriori->add_option("--n-lower", aa.n_lower)->required();
  apriori->add_option("--beta", aa.beta)->required();
  apriori->add_option("--kstar", aa.k_star)->required();
  apriori->add_option("--m-range", aa.m_range, "e.g. 1:250 or 1,10,100");
  apriori->add_option("--h-factor", aa.h_factor, "H = h_factor * N");
  apriori->add_option("--format", aa.format, "csv|json");
  apriori->add_option("--out", aa.out);

  Table1Args ta;
  auto* table1 = app.add_subcommand(
      "table1", "benchmark comparison of joint-risk bounds");
  table1->add_option("--beta-sum", ta.beta_sum,
                     "confidence for the independent-sum column");
  table1->add_option("--beta-diag", ta.beta_diag,
                     "confidence for the diagonal closed-form column");
  table1->add_option("--rows", ta.rows, "override rows as m:N:k,...");
  table1->add_option("--out", ta.out);

  SizeArgs sa;
  auto* size = app.add_subcommand("size", "minimal dataset size for a target");
  size->add_option("--m", sa.m, "number of criteria (finite-m mode)");
  size->add_flag("--uniform", sa.uniform, "use the uniform-in-m bound");
  size->add_option("--kstar", sa.k_star)->required();
  size->add_option("--beta", sa.beta)->required();
  size->add_option("--eps", sa.eps, "target joint risk")->required();
  size->add_option("--out", sa.out);

  SimulateArgs ma;
  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo coverage experiment");
  simulate->add_option("--problem", ma.problem,
                       "max-of-samples|robust-lp2d");
  simulate->add_option("--n", ma.n, "dataset sizes")->required();
  simulate->add_option("--beta", ma.beta)->required();
  simulate->add_option("--trials", ma.trials)->required();
  simulate->add_option("--seed", ma.seed);
  simulate->add_option("--certificate", ma.certificate, "box|diagonal");
  simulate->add_option("--out", ma.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return kBadConfig;
  }

  try {
    if (certify->parsed()) return run_certify(ca);
    if (grid->parsed()) return run_region_grid(ga);
    if (apriori->parsed()) return run_apriori(aa);
    if (table1->parsed()) return run_table1(ta);
    if (size->parsed()) return run_size(sa);
    if (simulate->parsed()) return run_simulate(ma);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  }
  return kBadConfig;
}
