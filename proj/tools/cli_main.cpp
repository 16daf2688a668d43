// samplizer-lab: experiment runner for the entropy estimators, the
// sample-based block-encoding experiments, the certified polynomial
// builders, and the inequality verifiers. Emits versioned JSON reports
// (schema 1) and plot-ready CSV.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsl/bounds.hpp"
#include "qsl/config.hpp"
#include "qsl/errors.hpp"
#include "qsl/estimators.hpp"
#include "qsl/polyapprox.hpp"
#include "qsl/qcore.hpp"
#include "qsl/rng.hpp"
#include "qsl/samplizer.hpp"

using json = nlohmann::ordered_json;
using namespace qsl;

namespace {

struct CommonOpts {
  std::string out_path;  // empty = stdout
  bool no_timestamp = false;
  std::uint64_t seed = 1;
};

struct StateOpts {
  std::string family = "maximally-mixed";
  std::string state_file;
  int n = 4;
  int rank = 2;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out_path, "output file (default stdout)");
  cmd->add_flag("--no-timestamp", c.no_timestamp, "omit the timestamp field");
  cmd->add_option("--seed", c.seed, "64-bit master seed");
}

void add_state(CLI::App* cmd, StateOpts& s) {
  cmd->add_option("--family", s.family,
                  "state family: maximally-mixed | pure | random-rank-r");
  cmd->add_option("--state-file", s.state_file, "explicit state JSON (overrides --family)");
  cmd->add_option("--N", s.n, "Hilbert-space dimension");
  cmd->add_option("--r", s.rank, "rank for random-rank-r");
}

Mat parse_matrix(const json& rows) {
  int d = static_cast<int>(rows.size());
  Mat m(d, d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(rows[i].size()) != d)
      throw ParameterError("state file: matrix is not square");
    for (int j = 0; j < d; ++j) {
      const json& e = rows[i][j];
      if (!e.is_array() || e.size() != 2)
        throw ParameterError("state file: entries must be [re, im] pairs");
      m(i, j) = cd(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

DensityMatrix load_state(const StateOpts& s, std::uint64_t seed) {
  if (!s.state_file.empty()) {
    std::ifstream in(s.state_file);
    if (!in) throw ParameterError("cannot open state file: " + s.state_file);
    json j = json::parse(in);
    if (j.contains("matrix")) return DensityMatrix(parse_matrix(j["matrix"]));
    if (j.contains("eigenvalues")) {
      std::vector<double> ev = j["eigenvalues"].get<std::vector<double>>();
      int d = static_cast<int>(ev.size());
      Mat m = Mat::Zero(d, d);
      int rank = 0;
      for (int i = 0; i < d; ++i) {
        m(i, i) = ev[i];
        if (ev[i] > 1e-14) ++rank;
      }
      if (j.contains("eigenvectors")) {
        Mat v = parse_matrix(j["eigenvectors"]);
        m = (v * m * v.adjoint()).eval();
      }
      return DensityMatrix(std::move(m), rank);
    }
    throw ParameterError("state file: expected 'matrix' or 'eigenvalues'");
  }
  if (s.n < 2) throw ParameterError("--N must be >= 2");
  if (s.family == "maximally-mixed")
    return DensityMatrix(Mat::Identity(s.n, s.n) / double(s.n), s.n);
  if (s.family == "pure") {
    Mat m = Mat::Zero(s.n, s.n);
    m(0, 0) = 1.0;
    return DensityMatrix(std::move(m), 1);
  }
  if (s.family == "random-rank-r") {
    SplitRng rng(seed, 42);
    return random_density(s.n, s.rank, rng);
  }
  throw ParameterError("unknown state family: " + s.family);
}

void emit(const CommonOpts& c, json& j) {
  if (!c.no_timestamp) {
    char buf[64];
    std::time_t t = std::time(nullptr);
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    j["timestamp"] = buf;
  }
  std::string text = j.dump(2) + "\n";
  if (c.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.out_path);
    if (!out) throw ParameterError("cannot open output file: " + c.out_path);
    out << text;
  }
}

json report_json(const EstimatorReport& r) {
  json j;
  j["schema"] = 1;
  j["estimate"] = r.estimate;
  j["truth"] = r.truth;
  j["abs_error"] = r.abs_error;
  j["bound"] = r.bound;
  j["within_bound"] = r.bound <= 0.0 ? json(nullptr) : json(r.abs_error <= r.bound);
  j["shots_used"] = r.shots_used;
  j["samples_consumed"] = r.samples_consumed;
  j["seed"] = r.seed;
  j["sample_mode"] = r.sample_mode == SampleMode::Ideal ? "ideal" : "faithful";
  j["eval_mode"] = r.eval_mode == EvalMode::ExactExpectation ? "exact" : "sampled";
  json p = json::object();
  for (const auto& [k, v] : r.params) p[k] = v;
  j["params"] = p;
  return j;
}

json verifier_json(const VerifierReport& r) {
  json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["min_margin"] = r.min_margin;
  j["points"] = r.points;
  json a = json::object();
  for (const auto& [k, v] : r.arg_min) a[k] = v;
  j["arg_min"] = a;
  return j;
}

std::pair<SampleMode, EvalMode> parse_mode(const std::string& mode) {
  if (mode == "ideal-exact") return {SampleMode::Ideal, EvalMode::ExactExpectation};
  if (mode == "ideal-sampled") return {SampleMode::Ideal, EvalMode::Sampled};
  if (mode == "faithful-exact") return {SampleMode::Faithful, EvalMode::ExactExpectation};
  if (mode == "faithful-sampled") return {SampleMode::Faithful, EvalMode::Sampled};
  throw ParameterError("unknown --mode: " + mode +
                       " (want ideal-exact|ideal-sampled|faithful-exact|faithful-sampled)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"samplizer-lab: sample-based quantum entropy estimation experiments"};
  app.require_subcommand(1);

  CommonOpts common;
  StateOpts state;

  // estimate-von-neumann
  double eps = 0.5, fail = 0.25, alpha = 2.0;
  std::string mode = "ideal-exact";
  auto* vn = app.add_subcommand("estimate-von-neumann", "von Neumann entropy estimator");
  add_common(vn, common);
  add_state(vn, state);
  vn->add_option("--eps", eps, "target accuracy");
  vn->add_option("--delta", fail, "failure probability");
  vn->add_option("--mode", mode, "ideal|faithful x exact|sampled, e.g. ideal-exact");

  // estimate-renyi
  auto* ry = app.add_subcommand("estimate-renyi", "alpha-Renyi entropy estimator");
  add_common(ry, common);
  add_state(ry, state);
  ry->add_option("--alpha", alpha, "Renyi order (alpha != 1)");
  ry->add_option("--eps", eps, "target accuracy");
  ry->add_option("--delta", fail, "failure probability");
  ry->add_option("--mode", mode, "ideal|faithful x exact|sampled");

  // purity
  auto* pu = app.add_subcommand("purity", "SWAP-test purity / Renyi-2 estimator");
  add_common(pu, common);
  add_state(pu, state);
  pu->add_option("--eps", eps, "target accuracy");
  pu->add_option("--delta", fail, "failure probability");

  // samplizer-scaling
  double scal_t = 1.0;
  std::string steps_csv = "4,8,16,32";
  auto* sc = app.add_subcommand("samplizer-scaling",
                                "LMR convergence experiment, CSV output");
  add_common(sc, common);
  add_state(sc, state);
  sc->add_option("--t", scal_t, "evolution time");
  sc->add_option("--steps", steps_csv, "comma-separated step counts");

  // poly-certify
  std::string kind = "log";
  double p_delta = 0.1, p_eps = 0.01, p_t = 0.5, p_c = 0.5, p_beta = 0.25;
  int p_norm = 2;
  auto* pc = app.add_subcommand("poly-certify", "build and certify an approximation polynomial");
  add_common(pc, common);
  pc->add_option("--kind", kind, "rectangle|negative-power|positive-power|log|arcsin-half");
  pc->add_option("--delta", p_delta, "transition width");
  pc->add_option("--eps", p_eps, "approximation accuracy");
  pc->add_option("--t", p_t, "rectangle half-width");
  pc->add_option("--c", p_c, "power exponent");
  pc->add_option("--beta", p_beta, "positive-power domain edge");
  pc->add_option("--normalization", p_norm, "log normalization (2 or 4)");

  // bounds-verify
  auto* bv = app.add_subcommand("bounds-verify", "run the inequality verifiers");
  add_common(bv, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*vn) {
      auto [sm, em] = parse_mode(mode);
      DensityMatrix rho = load_state(state, common.seed);
      EstimatorReport r = estimate_von_neumann(rho, eps, fail, sm, em, common.seed);
      json j = report_json(r);
      j["command"] = "estimate-von-neumann";
      j["state"] = {{"family", state.family}, {"N", rho.dim}, {"rank", rho.rank_or_dim()}};
      emit(common, j);
    } else if (*ry) {
      auto [sm, em] = parse_mode(mode);
      DensityMatrix rho = load_state(state, common.seed);
      EstimatorReport r = estimate_renyi_alpha(rho, alpha, eps, fail, sm, em, common.seed);
      json j = report_json(r);
      j["command"] = "estimate-renyi";
      j["state"] = {{"family", state.family}, {"N", rho.dim}, {"rank", rho.rank_or_dim()}};
      emit(common, j);
    } else if (*pu) {
      DensityMatrix rho = load_state(state, common.seed);
      EstimatorReport r = estimate_purity_swap(rho, eps, fail, common.seed);
      json j = report_json(r);
      j["command"] = "purity";
      j["state"] = {{"family", state.family}, {"N", rho.dim}, {"rank", rho.rank_or_dim()}};
      emit(common, j);
    } else if (*sc) {
      StateOpts s = state;
      if (sc->count("--family") == 0 && sc->count("--state-file") == 0) {
        s.family = "random-rank-r";
        s.n = 2;
        s.rank = 2;
      }
      DensityMatrix rho = load_state(s, common.seed);
      Mat exact = matrix_function_c(
          rho.data, [&](double x) { return std::exp(cd(0.0, -scal_t * x)); });
      QuantumChannel target = QuantumChannel::from_unitary(exact);
      std::string csv = "t,steps,diamond_lower,diamond_upper,samples,wall_ms\n";
      for (const auto& tok : CLI::detail::split(steps_csv, ',')) {
        int n = std::stoi(tok);
        if (n < 1) throw ParameterError("--steps entries must be >= 1");
        auto t0 = std::chrono::steady_clock::now();
        QuantumChannel approx = lmr_channel(rho, {scal_t, n});
        DiamondDistanceResult d = diamond_distance(approx, target);
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        char line[256];
        std::snprintf(line, sizeof(line), "%.6g,%d,%.12g,%.12g,%d,%.3f\n", scal_t, n, d.lower,
                      d.upper, n, ms);
        csv += line;
      }
      if (common.out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(common.out_path);
        if (!out) throw ParameterError("cannot open output file: " + common.out_path);
        out << csv;
      }
    } else if (*pc) {
      CertifiedPolynomial p;
      if (kind == "rectangle")
        p = build_rectangle(p_t, p_delta, p_eps);
      else if (kind == "negative-power")
        p = build_negative_power(p_c, p_delta, p_eps);
      else if (kind == "positive-power")
        p = build_positive_power(p_c, p_delta, p_beta, p_eps);
      else if (kind == "log")
        p = build_log(p_delta, p_eps, p_norm);
      else if (kind == "arcsin-half")
        p = build_arcsin_half(p_eps);
      else
        throw ParameterError("unknown --kind: " + kind);
      CertificateReport cert = certify(p);
      json j;
      j["schema"] = 1;
      j["command"] = "poly-certify";
      j["kind"] = kind;
      j["certified"] = cert.certified;
      j["degree"] = p.degree();
      j["parity"] = p.parity;
      j["global_bound"] = p.global_bound;
      j["grid_points"] = p.certificate_grid_points;
      json regions = json::array();
      for (const auto& r : cert.regions) {
        regions.push_back({{"target", r.target_id},
                           {"lo", r.lo},
                           {"hi", r.hi},
                           {"margin", r.margin},
                           {"worst_x", r.worst_x},
                           {"pass", r.pass}});
      }
      j["regions"] = regions;
      emit(common, j);
      if (!cert.certified) return 3;
    } else if (*bv) {
      json j;
      j["schema"] = 1;
      j["command"] = "bounds-verify";

      j["log_eq"] = verifier_json(verify_log_eq(100, 100));

      SplitRng rng(common.seed, 9);
      std::vector<std::vector<double>> dists;
      for (int i = 0; i < 500; ++i) {
        int n = 2 + int(rng.next_u64() % 15);
        std::vector<double> p(n);
        double tot = 0;
        for (double& x : p) tot += (x = rng.uniform(0.02, 1.0));
        for (double& x : p) x /= tot;
        dists.push_back(std::move(p));
      }
      j["renyi_lt1"] = verifier_json(verify_renyi_lt1_ineq(dists, 0.5));

      std::vector<DensityMatrix> states;
      SplitRng srng(common.seed, 10);
      for (int i = 0; i < 200; ++i) {
        int d = 2 << (srng.next_u64() % 2);
        states.push_back(random_density(d, d, srng));
      }
      j["alpha_ordering"] = verifier_json(verify_alpha_ordering(states, {1.5, 2.0, 4.0}));

      HardInstancePair pair = make_distinguishing_pair(4, 0.3);
      HelstromReport h = helstrom_bound_check(pair.rho0, pair.rho1, 3, 20000, common.seed);
      j["helstrom"] = {{"pass", h.pass},
                       {"empirical_success", h.empirical_success},
                       {"bound", h.bound},
                       {"sigma", h.sigma},
                       {"copies", h.copies},
                       {"trials", h.trials},
                       {"copies_half_norm", h.copies_half_norm},
                       {"fidelity_rhs", h.fidelity_rhs},
                       {"fidelity_pass", h.fidelity_pass}};

      double worst = 1e300;
      json arg;
      for (double e : {0.1, 0.2, 0.3}) {
        for (double z : {0.25, 0.5, 0.7}) {
          DensityMatrix rho = make_mixedness_instance(16, e, z);
          double margin = (std::log(16.0) - e * e) - von_neumann_entropy(rho);
          if (margin < worst) {
            worst = margin;
            arg = {{"eps", e}, {"z", z}};
          }
        }
      }
      j["mixedness_entropy_deficit"] = {
          {"name", "mixedness-entropy-deficit"}, {"pass", worst >= 0.0},
          {"min_margin", worst}, {"arg_min", arg}, {"points", 9}};

      bool all = j["log_eq"]["pass"].get<bool>() && j["renyi_lt1"]["pass"].get<bool>() &&
                 j["alpha_ordering"]["pass"].get<bool>() && h.pass && h.fidelity_pass &&
                 worst >= 0.0;
      j["pass"] = all;
      emit(common, j);
    }
  } catch (const CertificationError& e) {
    json j = {{"schema", 1}, {"error", e.what()}, {"error_kind", "certification"},
              {"failing_point", e.failing_point}};
    std::cerr << j.dump(2) << "\n";
    return 3;
  } catch (const ParameterError& e) {
    json j = {{"schema", 1}, {"error", e.what()}, {"error_kind", "parameter"}};
    std::cerr << j.dump(2) << "\n";
    return 2;
  } catch (const DimensionError& e) {
    json j = {{"schema", 1}, {"error", e.what()}, {"error_kind", "dimension"}};
    std::cerr << j.dump(2) << "\n";
    return 2;
  } catch (const Error& e) {
    json j = {{"schema", 1}, {"error", e.what()}, {"error_kind", "runtime"}};
    std::cerr << j.dump(2) << "\n";
    return 1;
  }
  return 0;
}
