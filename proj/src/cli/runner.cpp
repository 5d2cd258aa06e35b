#include "levlab/cli/runner.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "levlab/ab_tables.hpp"
#include "levlab/aharonov_bohm.hpp"
#include "levlab/chern_pairing.hpp"
#include "levlab/error.hpp"
#include "levlab/point_models.hpp"
#include "levlab/schrodinger.hpp"
#include "levlab/winding.hpp"

namespace levlab::cli {
namespace {

namespace ab = aharonov_bohm;
namespace pm = point_models;
namespace sch = schrodinger;

std::string fmt(double x, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

Json segments_json(const winding::WindingReport& w) {
  // + 0.0 drops negative zeros from the printed report.
  return Json::array({w.per_segment[0] + 0.0, w.per_segment[1] + 0.0, w.per_segment[2] + 0.0, w.per_segment[3] + 0.0});
}

// Runs `body` for one row; numerical failures become a failed row naming `id`.
void guarded(Report& rep, const std::string& id, const std::function<Json()>& body) {
  try {
    rep.add_row(body());
  } catch (const InvalidInput&) {
    throw;
  } catch (const DomainError&) {
    throw;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    Json row = Json::object();
    row["id"] = id;
    row["pass"] = false;
    row["detail"] = e.what();
    row["summary"] = std::string("error: ") + e.what();
    rep.add_row(std::move(row));
  }
}

void append_trace(Table& plot, double run, const std::vector<winding::PhaseSample>& trace) {
  for (const auto& s : trace) {
    plot.rows.push_back({run, static_cast<double>(static_cast<int>(s.edge) + 1), s.parameter, s.unwrapped_phase});
  }
}

const std::vector<std::string> kTraceColumns = {"run", "edge", "parameter", "unwrapped_phase"};

// ---------------------------------------------------------------- commands

void verify_point(const RunConfig& cfg, Report& rep) {
  const Json& p = cfg.parameters;
  std::vector<std::string> models = get_strings(p, "model", {"all"});
  if (models.size() == 1 && models[0] == "all") models = {"baby", "delta", "delta-prime", "point2d", "point3d"};
  const std::vector<double> couplings = get_numbers(p, "coupling", {-3.0, -1.0, -0.1, 0.0, 0.1, 1.0, 3.0});
  const bool has_expected = p.contains("expected");
  const double expected = get_number(p, "expected", 0.0);
  rep.plot.columns = kTraceColumns;
  int run = 0;
  for (const auto& name : models) {
    pm::PointModel model{pm::ModelKind::BabyHalfLine, 0.0};
    try {
      model.kind = pm::parse_model_kind(name);
    } catch (const Error& e) {
      throw ConfigError(std::string("parameter 'model': ") + e.what());
    }
    for (double c : couplings) {
      model.coupling = c;
      const std::string id = name + "(alpha=" + fmt(c) + ")";
      guarded(rep, id, [&] {
        std::vector<winding::PhaseSample> trace;
        const auto w = winding::wind_phase_trace(pm::gamma_boundary(model), {}, trace);
        append_trace(rep.plot, run, trace);
        const int n = pm::bound_state_count(model);
        const double target = has_expected ? expected : n;
        const double residual = std::abs(w.total - target);
        Json row = Json::object();
        row["id"] = id;
        row["model"] = name;
        row["coupling"] = c;
        row["per_segment"] = segments_json(w);
        row["total"] = w.total;
        row["bound_states"] = n;
        row["expected"] = target;
        row["residual"] = residual;
        row["samples"] = w.samples_used;
        row["pass"] = residual < rep.tol;
        row["summary"] = "wind " + fmt(w.total) + " vs " + fmt(target);
        return row;
      });
      ++run;
    }
  }
}

void verify_ab(const RunConfig& cfg, Report& rep) {
  const Json& p = cfg.parameters;
  const bool explicit_pair = p.contains("C") || p.contains("D");
  const bool has_expected = p.contains("expected");
  const double expected = get_number(p, "expected", 0.0);
  std::vector<std::tuple<std::string, ab::AdmissiblePair, std::vector<double>>> cases;
  if (explicit_pair) {
    const ab::AdmissiblePair pair = ab::make_admissible_pair(get_matrix2(p, "C"), get_matrix2(p, "D"));
    cases.emplace_back("pair", pair, get_numbers(p, "alpha", {0.3, 0.5, 0.7}));
  } else {
    const std::string only = get_string(p, "row", "");
    for (const auto& w : ab::representative_pairs()) {
      if (!only.empty() && w.row->id() != only) continue;
      cases.emplace_back(w.row->id(), w.pair, p.contains("alpha") ? get_numbers(p, "alpha", {}) : w.alphas);
    }
    if (cases.empty()) throw ConfigError("parameter 'row': no table row '" + only + "'");
  }
  for (const auto& [label, pair, alphas] : cases) {
    for (double a : alphas) {
      const std::string id = label + "(alpha=" + fmt(a) + ")";
      guarded(rep, id, [&] {
        const auto w = winding::wind_phase(ab::gamma_boundary(pair, a));
        const auto count = ab::bound_state_count(pair);
        const double target = has_expected ? expected : count.count;
        Json row = Json::object();
        row["id"] = id;
        row["alpha"] = a;
        row["per_segment"] = segments_json(w);
        row["total"] = w.total;
        row["bound_states"] = count.count;
        row["expected"] = target;
        double residual = std::abs(w.total - target);
        try {
          const auto c = ab::classify_case(pair, a);
          row["table_row"] = c.row->id();
          double wres = 0.0;
          for (int s = 0; s < 3; ++s) wres = std::max(wres, std::abs(w.per_segment[s] - c.row->w[s].at(a)));
          row["table_residual"] = wres;
          residual = std::max(residual, wres);
        } catch (const DegenerateClassification& e) {
          row["table_row"] = std::string("degenerate: ") + e.what();
        }
        row["residual"] = residual;
        row["pass"] = residual < rep.tol;
        row["summary"] = "wind " + fmt(w.total) + " vs " + fmt(target);
        return row;
      });
    }
  }
}

void ab_tables(const RunConfig& cfg, Report& rep) {
  const int only = get_int(cfg.parameters, "table", 0);
  if (only < 0 || only > 6) throw ConfigError("parameter 'table': expected 1..6 (0 for all)");
  for (const auto& w : ab::representative_pairs()) {
    if (only != 0 && w.row->table != only) continue;
    const std::string id = w.row->id();
    guarded(rep, id, [&] {
      double worst = 0.0;
      bool all = true;
      Json per_alpha = Json::array();
      for (double a : w.alphas) {
        const auto r = ab::levinson_verify(w.pair, a, rep.tol);
        worst = std::max({worst, r.w_residual, r.total_residual});
        all = all && r.passed;
        per_alpha.push_back(Json::array({a, r.computed.per_segment[0], r.computed.per_segment[1],
                                         r.computed.per_segment[2], r.computed.total}));
      }
      Json row = Json::object();
      row["id"] = id;
      row["condition"] = w.row->condition;
      row["count"] = w.row->count;
      row["w1"] = ab::to_string(w.row->w[0]);
      row["w2"] = ab::to_string(w.row->w[1]);
      row["w3"] = ab::to_string(w.row->w[2]);
      row["alphas"] = w.alphas;
      row["computed"] = per_alpha;
      row["residual"] = worst;
      row["pass"] = all;
      row["summary"] = w.row->condition + "  max residual " + fmt(worst, 3);
      return row;
    });
  }
}

void phi_ab(const RunConfig& cfg, Report& rep) {
  const Json& p = cfg.parameters;
  const std::vector<double> as = get_numbers(p, "a", {2.0, 1.0, 1.0});
  const std::vector<double> bs = get_numbers(p, "b", {1.0, 2.0, 3.0});
  if (as.size() != bs.size()) throw ConfigError("parameters 'a' and 'b' must have the same length");
  const int extra = get_int(p, "extra_orders", 2);
  if (extra < 0 || extra > 6) throw ConfigError("parameter 'extra_orders': expected 0..6");
  const double expected = get_number(p, "expected", 1.0);
  rep.plot.columns = kTraceColumns;
  for (std::size_t i = 0; i < as.size(); ++i) {
    const double a = as[i], b = bs[i];
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("parameters 'a', 'b' must be positive");
    const auto loop = winding::phi_ab_loop(a, b);
    const int p0 = winding::minimal_p(a, b);
    const std::string base = "phi(" + fmt(a) + "," + fmt(b) + ")";
    guarded(rep, base + ":phase", [&] {
      std::vector<winding::PhaseSample> trace;
      const auto w = winding::wind_phase_trace(winding::loop_as_boundary(loop), {}, trace);
      append_trace(rep.plot, static_cast<double>(i), trace);
      Json row = Json::object();
      row["id"] = base + ":phase";
      row["a"] = a;
      row["b"] = b;
      row["p"] = nullptr;
      row["value"] = w.total;
      row["expected"] = expected;
      row["residual"] = std::abs(w.total - expected);
      row["pass"] = std::abs(w.total - expected) < rep.tol;
      row["summary"] = "phase winding " + fmt(w.total);
      return row;
    });
    for (int q = p0; q <= p0 + extra; ++q) {
      const std::string id = base + ":p=" + std::to_string(q);
      guarded(rep, id, [&] {
        const auto r = winding::wind_regularized(loop, q);
        Json row = Json::object();
        row["id"] = id;
        row["a"] = a;
        row["b"] = b;
        row["p"] = q;
        row["value"] = r.value;
        row["imag_part"] = r.imag_part;
        row["error_estimate"] = r.error_estimate;
        row["expected"] = expected;
        row["residual"] = std::abs(r.value - expected);
        row["pass"] = std::abs(r.value - expected) < rep.tol && !r.integrability_warning;
        row["summary"] = "regularized " + fmt(r.value, 9);
        return row;
      });
    }
  }
}

void chern(const RunConfig& cfg, Report& rep) {
  const Json& p = cfg.parameters;
  const double t1 = get_number(p, "lambda1_arg", -kPi / 3.0);
  const double t2 = get_number(p, "lambda2_arg", kPi / 3.0);
  const double alpha = get_number(p, "alpha", 0.5);
  const int n0 = get_int(p, "n_start", 8);
  const int levels = get_int(p, "levels", 3);
  const double expected = get_number(p, "expected", 1.0);
  if (levels < 1 || levels > 5) throw ConfigError("parameter 'levels': expected 1..5");
  chern::GridSpec3D g;
  g.n_rho = g.n_phi = n0;
  g.n_xi = get_int(p, "n_xi", n0);
  g.fd_step = get_number(p, "fd_step", g.fd_step);
  const auto X = chern::make_sphere(std::polar(1.0, t1), std::polar(1.0, t2));
  guarded(rep, "ladder", [&] {
    const auto ladder = chern::convergence_ladder(X, alpha, g, levels, rep.tol);
    for (std::size_t i = 0; i + 1 < ladder.steps.size(); ++i) {
      const auto& s = ladder.steps[i];
      Json row = Json::object();
      row["id"] = "n=" + std::to_string(s.grid.n_rho);
      row["n"] = s.grid.n_rho;
      row["value"] = s.value;
      row["delta"] = s.delta;
      row["pass"] = true;
      row["summary"] = "I = " + fmt(s.value, 8);
      rep.add_row(std::move(row));
    }
    const auto& last = ladder.steps.back();
    const double mag = std::abs(last.value);
    Json row = Json::object();
    row["id"] = "n=" + std::to_string(last.grid.n_rho);
    row["n"] = last.grid.n_rho;
    row["value"] = last.value;
    row["delta"] = last.delta;
    row["magnitude"] = mag;
    row["sign"] = last.value < 0.0 ? -1 : 1;
    row["expected"] = expected;
    row["residual"] = std::abs(mag - expected);
    row["pass"] = std::abs(mag - expected) < rep.tol;
    row["summary"] = "I = " + fmt(last.value, 8) + " (|I| vs " + fmt(expected) + ")";
    return row;
  });
}

void schrodinger_1d(const RunConfig& cfg, Report& rep) {
  const Json& p = cfg.parameters;
  const auto specs = get_strings(p, "potential", {"sech2(2)"});
  const bool has_expected = p.contains("expected");
  const double expected = get_number(p, "expected", 0.0);
  rep.plot.columns = kTraceColumns;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto v = parse_potential_1d(specs[i]);
    guarded(rep, specs[i], [&] {
      const auto s0 = sch::s0_classify(v);
      std::vector<winding::PhaseSample> trace;
      const auto w = winding::wind_phase_trace(sch::gamma_boundary_1d(v, s0), {}, trace);
      append_trace(rep.plot, static_cast<double>(i), trace);
      const int n = sch::bound_count_1d(v);
      const double target_n = has_expected ? expected : n;
      const double offset = s0.cls == sch::S0Class::Generic ? 0.5 : 0.0;
      const double residual = std::max(std::abs(w.per_segment[1] - (target_n - offset)), std::abs(w.total - target_n));
      const Mat2 s1 = sch::jost_smatrix_1d(v, 1.0);
      Json row = Json::object();
      row["id"] = specs[i];
      row["classification"] = sch::to_string(s0.cls);
      row["det_s0"] = Json::array({s0.det_extrapolated.real(), s0.det_extrapolated.imag()});
      row["per_segment"] = segments_json(w);
      row["wind_s"] = w.per_segment[1];
      row["total"] = w.total;
      row["bound_states"] = n;
      row["expected_wind_s"] = target_n - offset;
      row["unitarity_defect_k1"] = (s1.adjoint() * s1 - Mat2::Identity()).norm();
      row["residual"] = residual;
      row["pass"] = residual < rep.tol;
      row["summary"] = std::string(sch::to_string(s0.cls)) + ", Wind(S) " + fmt(w.per_segment[1]) + ", N " +
                       std::to_string(n);
      return row;
    });
  }
}

void schrodinger_3d(const RunConfig& cfg, Report& rep, bool want_plot) {
  const Json& p = cfg.parameters;
  const auto specs = get_strings(p, "potential", {"gaussian(5,1)"});
  std::vector<int> ps;
  for (double x : get_numbers(p, "p", {2.0, 3.0})) {
    if (x != std::floor(x) || x < 2) throw ConfigError("parameter 'p': entries must be integers >= 2");
    ps.push_back(static_cast<int>(x));
  }
  sch::Levinson3DOptions o;
  o.l_max = get_int(p, "l_max", o.l_max);
  o.k_min = get_number(p, "k_min", o.k_min);
  o.k_max = get_number(p, "k_max", o.k_max);
  o.n_k = get_int(p, "n_k", o.n_k);
  o.tol = rep.tol;
  if (o.l_max < 0 || o.l_max > 60) throw ConfigError("parameter 'l_max': expected 0..60");
  if (!(o.k_min > 0.0) || !(o.k_max > o.k_min) || o.n_k < 8) throw ConfigError("k grid: need 0 < k_min < k_max, n_k >= 8");
  const bool has_expected = p.contains("expected");
  const double expected = get_number(p, "expected", 0.0);
  for (const auto& spec : specs) {
    const auto v = parse_potential_3d(spec);
    std::vector<double> lhs;
    for (int q : ps) {
      const std::string id = spec + ":p=" + std::to_string(q);
      guarded(rep, id, [&] {
        o.p = q;
        const auto r = sch::regularized_levinson_3d(v, o);
        lhs.push_back(r.lhs);
        const double target = has_expected ? expected : r.bound_total;
        Json row = Json::object();
        row["id"] = id;
        row["p"] = q;
        row["lhs"] = r.lhs;
        row["lhs_imag"] = r.lhs_imag;
        row["per_l"] = r.per_l;
        row["bound_per_l"] = r.bound_per_l;
        row["bound_states"] = r.bound_total;
        row["expected"] = target;
        row["delta0_threshold"] = r.delta0_threshold;
        row["max_jump"] = r.max_jump;
        row["truncation_warning"] = r.truncation_warning;
        row["residual"] = std::abs(r.lhs - target);
        row["pass"] = std::abs(r.lhs - target) < rep.tol;
        row["summary"] = "LHS " + fmt(r.lhs, 8) + " vs N " + fmt(target) + (r.truncation_warning ? " (truncation warning)" : "");
        return row;
      });
    }
    if (lhs.size() == ps.size() && ps.size() > 1) {
      const double spread = *std::max_element(lhs.begin(), lhs.end()) - *std::min_element(lhs.begin(), lhs.end());
      Json row = Json::object();
      row["id"] = spec + ":p-independence";
      row["spread"] = spread;
      row["pass"] = spread < 1e-2;
      row["summary"] = "max |LHS(p) - LHS(q)| " + fmt(spread, 3);
      rep.add_row(std::move(row));
    }
    if (want_plot && rep.plot.empty()) {
      const auto k = sch::log_grid(o.k_min, o.k_max, o.n_k);
      const auto t = sch::phase_shift_table(v, o.l_max, k);
      rep.plot.columns = {"k", "lambda"};
      for (int l = 0; l <= o.l_max; ++l) rep.plot.columns.push_back("delta_" + std::to_string(l));
      for (std::size_t j = 0; j < k.size(); ++j) {
        std::vector<double> row{k[j], k[j] * k[j]};
        for (int l = 0; l <= o.l_max; ++l) row.push_back(t.delta[l][j]);
        rep.plot.rows.push_back(std::move(row));
      }
    }
  }
}

}  // namespace

double default_tol(const std::string& command) {
  if (command == "chern") return 0.02;
  if (command == "schrodinger-1d") return 1e-2;
  if (command == "schrodinger-3d") return 5e-2;
  return 1e-3;
}

Report run(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
  Report rep;
  rep.command = cfg.command;
  rep.parameters = cfg.parameters;
  rep.tol = cfg.tol.value_or(default_tol(cfg.command));
  const std::string& c = cfg.command;
  if (c == "verify-point") {
    verify_point(cfg, rep);
  } else if (c == "verify-ab") {
    verify_ab(cfg, rep);
  } else if (c == "ab-tables") {
    ab_tables(cfg, rep);
  } else if (c == "phi-ab") {
    phi_ab(cfg, rep);
  } else if (c == "chern") {
    chern(cfg, rep);
  } else if (c == "schrodinger-1d") {
    schrodinger_1d(cfg, rep);
  } else if (c == "schrodinger-3d") {
    schrodinger_3d(cfg, rep, !cfg.plot_path.empty());
  }
  return rep;
}

int run_main(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Report rep;
  try {
    rep = run(cfg);
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  try {
    if (!cfg.out_path.empty()) write_report(rep, cfg.out_path, cfg.format);
    if (!cfg.plot_path.empty()) emit_plot_data(rep, cfg.plot_path);
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << "\n";
    return kExitInvalid;
  }
  print_summary(rep, out);
  for (const auto& f : rep.failures) err << "failed: " << f << "\n";
  return rep.passed() ? kExitPass : kExitCheckFailed;
}

}  // namespace levlab::cli
