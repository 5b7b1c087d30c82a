#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhblow/flow.hpp"
#include "qhblow/infinity.hpp"
#include "qhblow/scenarios.hpp"
#include "qhblow/svg.hpp"

using namespace qhblow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitDivergence = 4;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Vec parse_vec(const std::string& text) {
  Vec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    double v;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw input_error("bad number in list: " + item);
    }
    if (pos != item.size()) throw input_error("bad number in list: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw input_error("empty number list");
  return out;
}

unsigned horizon_seed_env() {
  if (const char* s = std::getenv("HORIZON_SEED")) {
    try {
      return static_cast<unsigned>(std::stoul(s));
    } catch (const std::exception&) {
      throw input_error("HORIZON_SEED must be a non-negative integer");
    }
  }
  return 0;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw input_error("cannot open output path: " + path);
  f << text;
}

// -------- model / problem assembly --------

struct ScenarioFlags {
  std::string scenario;
  std::string model_path;
  int n = 2;
  double rho1 = 1.0, rho2 = 2.0;
  std::string uL = "1.9,0.25", uR = "1.5,0.2";
  std::string scheme_a;
};

struct Problem {
  std::optional<Scenario> scenario;
  std::optional<PolyVectorField> source;
  std::optional<DesingField> field;  // the chart used for integration/analysis
  std::optional<CompactScheme> scheme;
  std::optional<QHSignature> sig;
  double model_rtol = 1e-10, model_atol = 1e-12;
  std::optional<double> model_tau_max;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& sf) {
  cmd->add_option("--scenario", sf.scenario, "registered scenario name");
  cmd->add_option("--model", sf.model_path, "model JSON document path");
  cmd->add_option("--n", sf.n, "Lienard degree parameter");
  cmd->add_option("--rho1", sf.rho1, "two-fluid density 1");
  cmd->add_option("--rho2", sf.rho2, "two-fluid density 2");
  cmd->add_option("--uL", sf.uL, "two-fluid left state beta,r");
  cmd->add_option("--uR", sf.uR, "two-fluid right state beta,r");
  cmd->add_option("--scheme-a", sf.scheme_a, "override weights a (comma list)");
}

Problem build_problem(const ScenarioFlags& sf) {
  Problem pb;
  if (!sf.scenario.empty() && !sf.model_path.empty())
    throw input_error("give either --scenario or --model, not both");

  if (!sf.scenario.empty()) {
    ScenarioParams params;
    params.n = sf.n;
    params.two_fluid.rho1 = sf.rho1;
    params.two_fluid.rho2 = sf.rho2;
    params.two_fluid.xL = parse_vec(sf.uL);
    params.two_fluid.xR = parse_vec(sf.uR);
    if (!sf.scheme_a.empty()) params.scheme_a = parse_vec(sf.scheme_a);
    pb.scenario = make_scenario(sf.scenario, params);
    pb.field = pb.scenario->analysis_field();
    pb.scheme = pb.field->scheme;
    pb.source = pb.scenario->source;
    return pb;
  }

  if (sf.model_path.empty()) throw input_error("need --scenario or --model");
  std::ifstream f(sf.model_path);
  if (!f) throw input_error("cannot read model file: " + sf.model_path);
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();

  PolyVectorField F = parse_field_json(text);
  pb.source = F;

  // optional scheme block + integration options
  std::optional<std::vector<int>> alpha;
  std::optional<Vec> a;
  std::optional<int> k;
  try {
    auto doc = nlohmann::json::parse(text);
    if (doc.contains("scheme")) {
      const auto& s = doc["scheme"];
      alpha = s.at("alpha").get<std::vector<int>>();
      k = s.at("k").get<int>();
      if (s.contains("a")) a = s["a"].get<Vec>();
    }
    if (doc.contains("integration")) {
      const auto& o = doc["integration"];
      if (o.contains("rtol")) pb.model_rtol = o["rtol"].get<double>();
      if (o.contains("atol")) pb.model_atol = o["atol"].get<double>();
      if (o.contains("tau_max")) pb.model_tau_max = o["tau_max"].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("model JSON: ") + e.what());
  }

  if (!alpha) {
    auto sigs = detect_signatures(F, 6);
    if (sigs.empty()) return pb;  // no signature: caller reports and exits 0
    alpha = sigs.front().first;
    k = sigs.front().second;
  } else {
    auto kv = validate_signature(F, *alpha);
    if (!kv || (k && *kv != *k))
      throw input_error("scheme block does not match the field's weights");
    k = *kv;
  }
  if (!a) a = Vec(alpha->size(), 1.0);
  if (!sf.scheme_a.empty()) a = parse_vec(sf.scheme_a);

  pb.scheme = make_scheme(*alpha, *a, *k);
  pb.sig = decompose(F, *alpha, *k);
  pb.field = make_global_field(*pb.scheme, *pb.sig);
  return pb;
}

// -------- report rendering --------

std::string json_complex_list(const std::vector<std::complex<double>>& ev) {
  std::string s = "[";
  for (size_t i = 0; i < ev.size(); ++i) {
    if (i) s += ",";
    s += "[" + fmt17(ev[i].real()) + "," + fmt17(ev[i].imag()) + "]";
  }
  return s + "]";
}

std::string json_vec(const Vec& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt17(v[i]);
  }
  return s + "]";
}

const char* class_name(StabilityClass c) {
  switch (c) {
    case StabilityClass::Sink: return "sink";
    case StabilityClass::Source: return "source";
    case StabilityClass::Saddle: return "saddle";
    case StabilityClass::Nonhyperbolic: return "nonhyperbolic";
  }
  return "?";
}

std::string equilibrium_json(const HorizonEquilibrium& eq) {
  std::string s = "{";
  s += "\"x\":" + json_vec(eq.x);
  s += ",\"chart_state\":" + json_vec(eq.chart_state);
  s += ",\"eigenvalues\":" + json_complex_list(eq.eigenvalues);
  s += std::string(",\"classification\":\"") + class_name(eq.classification.cls) + "\"";
  s += ",\"n_stable\":" + std::to_string(eq.classification.n_stable);
  s += ",\"n_unstable\":" + std::to_string(eq.classification.n_unstable);
  s += ",\"exponents\":[";
  for (size_t i = 0; i < eq.blowup_exponents.size(); ++i) {
    if (i) s += ",";
    s += eq.blowup_exponents[i] ? fmt17(*eq.blowup_exponents[i]) : "null";
  }
  s += "],\"norm_exponent\":" + fmt17(eq.norm_exponent) + "}";
  return s;
}

std::string scheme_json(const CompactScheme& sc) {
  std::string s = "{\"alpha\":[";
  for (size_t i = 0; i < sc.alpha.size(); ++i)
    s += (i ? "," : "") + std::to_string(sc.alpha[i]);
  s += "],\"a\":" + json_vec(sc.a);
  s += ",\"k\":" + std::to_string(sc.k);
  s += ",\"c\":" + std::to_string(sc.c) + "}";
  return s;
}

std::string trajectory_csv(const DesingField& field, const Trajectory& traj) {
  const CompactScheme& sc = field.scheme;
  const int n = sc.dim();
  std::string csv = "tau,t,";
  if (field.chart == DesingField::Chart::Global) {
    for (int i = 0; i < n; ++i) csv += "x" + std::to_string(i + 1) + ",";
  } else {
    csv += "s,";
    for (int i = 1; i < n; ++i) csv += "theta" + std::to_string(i) + ",";
  }
  csv += "p\n";
  for (const auto& smp : traj.samples) {
    csv += fmt17(smp.tau) + "," + fmt17(smp.t);
    for (double v : smp.state) csv += "," + fmt17(v);
    double p = 0.0;
    if (field.chart == DesingField::Chart::Global) {
      p = p_functional(sc, smp.state);
    } else if (field.chart == DesingField::Chart::Directional) {
      DirectionalPoint dp;
      dp.chart_index = field.chart_index;
      dp.chart_sign = field.chart_sign;
      dp.s = std::max(smp.state[0], 0.0);
      dp.theta.assign(smp.state.begin() + 1, smp.state.end());
      p = p_functional(sc, chart_to_global(sc, dp));
    } else {
      p = 1.0 - smp.state[0];  // quasi-polar radius measures the horizon gap
    }
    csv += "," + fmt17(p) + "\n";
  }
  return csv;
}

// -------- commands --------

int cmd_scenario_list() {
  for (const auto& name : scenario_names()) std::cout << name << "\n";
  return kExitOk;
}

int cmd_analyze(const ScenarioFlags& sf, const std::string& out_path) {
  Problem pb = build_problem(sf);
  if (!pb.field) {
    std::cout << "no quasi-homogeneous signature found\n";
    if (!out_path.empty()) write_text(out_path, "{\"signatures\":[]}\n");
    return kExitOk;
  }

  std::string js = "{";
  js += "\"scheme\":" + scheme_json(*pb.scheme);

  if (pb.source) {
    auto sigs = detect_signatures(*pb.source, 6);
    js += ",\"signatures\":[";
    for (size_t i = 0; i < sigs.size(); ++i) {
      if (i) js += ",";
      js += "{\"alpha\":[";
      for (size_t j = 0; j < sigs[i].first.size(); ++j)
        js += (j ? "," : "") + std::to_string(sigs[i].first[j]);
      js += "],\"k\":" + std::to_string(sigs[i].second) + "}";
    }
    js += "]";
    QHSignature sig = decompose(*pb.source, pb.scheme->alpha, pb.scheme->k);
    C1Report c1 = check_c1_extension(sig, *pb.scheme);
    js += std::string(",\"c1_extension\":") + (c1.ok ? "true" : "false");
    std::cout << "scheme: alpha=(";
    for (size_t i = 0; i < pb.scheme->alpha.size(); ++i)
      std::cout << (i ? "," : "") << pb.scheme->alpha[i];
    std::cout << ") k=" << pb.scheme->k << " c=" << pb.scheme->c
              << "  C1-extension: " << (c1.ok ? "yes" : "no") << "\n";
  }

  const std::vector<Vec>& seeds =
      pb.scenario ? pb.scenario->horizon_seeds : std::vector<Vec>{};
  auto eqs = find_horizon_equilibria(*pb.field, seeds, horizon_seed_env());

  js += ",\"equilibria\":[";
  std::cout << "horizon equilibria: " << eqs.size() << "\n";
  for (size_t i = 0; i < eqs.size(); ++i) {
    if (i) js += ",";
    js += equilibrium_json(eqs[i]);
    const auto& eq = eqs[i];
    std::cout << "  #" << i << " " << class_name(eq.classification.cls) << " at (";
    const Vec& loc = eq.x.empty() ? eq.chart_state : eq.x;
    for (size_t j = 0; j < loc.size(); ++j)
      std::cout << (j ? ", " : "") << fmt17(loc[j]);
    std::cout << ")  eigenvalues:";
    for (const auto& ev : eq.eigenvalues)
      std::cout << " " << fmt17(ev.real())
                << (ev.imag() != 0.0 ? "+" + fmt17(ev.imag()) + "i" : "");
    std::cout << "\n";
  }
  js += "]";

  // a scenario with a quasi-polar chart and no equilibria has a horizon cycle
  if (eqs.empty() && pb.scenario && pb.scenario->polar_field) {
    HorizonCycle cyc = horizon_cycle_analysis(*pb.scenario->polar_field);
    js += ",\"horizon_cycle\":{\"period\":" + fmt17(cyc.period);
    js += ",\"alpha_T\":" + fmt17(cyc.alpha_T);
    js += ",\"multiplier\":" + fmt17(cyc.multiplier);
    js += ",\"orientation\":" + std::to_string(cyc.orientation);
    js += std::string(",\"class\":\"") +
          (cyc.cls == CycleClass::Attracting
               ? "attracting"
               : cyc.cls == CycleClass::Repelling ? "repelling" : "nonhyperbolic") +
          "\"}";
    std::cout << "horizon cycle: period=" << fmt17(cyc.period)
              << " multiplier=" << fmt17(cyc.multiplier) << " ("
              << (cyc.cls == CycleClass::Attracting ? "attracting" : "repelling")
              << ")\n";
  }
  js += "}\n";

  if (!out_path.empty())
    write_text(out_path, js);
  else
    std::cout << js;
  return kExitOk;
}

struct BlowupFlags {
  std::string x0;
  bool backward = false;
  double tau_max = 50.0;
  double tol_rel = 1e-10, tol_abs = 1e-12;
};

int cmd_blowup(const ScenarioFlags& sf, const BlowupFlags& bf,
               const std::string& out_path) {
  Problem pb = build_problem(sf);
  if (!pb.field) throw input_error("blowup: no quasi-homogeneous signature found");
  const DesingField& field = *pb.field;
  const CompactScheme& sc = field.scheme;

  Vec y0 = parse_vec(bf.x0);
  if (static_cast<int>(y0.size()) != sc.dim())
    throw input_error("--x0 dimension mismatch");

  Vec start;
  if (field.chart == DesingField::Chart::Global) {
    start = compactify(sc, y0);
  } else if (field.chart == DesingField::Chart::Directional) {
    DirectionalPoint dp = dir_compactify(sc, field.chart_index, field.chart_sign, y0);
    start.push_back(dp.s);
    start.insert(start.end(), dp.theta.begin(), dp.theta.end());
  } else {
    throw unsupported_error("blowup: quasi-polar start states not supported");
  }

  const std::vector<Vec>& seeds =
      pb.scenario ? pb.scenario->horizon_seeds : std::vector<Vec>{};
  auto eqs = find_horizon_equilibria(field, seeds, horizon_seed_env());

  IntegrateOptions opts;
  opts.rtol = bf.tol_rel;
  opts.atol = bf.tol_abs;
  opts.backward = bf.backward;
  opts.horizon_cycle_target = true;
  double tau_max = pb.model_tau_max.value_or(bf.tau_max);

  Trajectory traj = integrate(field, start, tau_max, opts, &eqs);

  std::string js = "{";
  js += std::string("\"termination\":\"") + termination_name(traj.termination) + "\"";
  js += ",\"samples\":" + std::to_string(traj.samples.size());
  js += ",\"tau_end\":" + fmt17(traj.samples.back().tau);
  js += ",\"t_end\":" + fmt17(traj.samples.back().t);

  int code = kExitOk;
  if (traj.termination == Termination::ConvergedEquilibrium ||
      traj.termination == Termination::ConvergedCycle) {
    const HorizonEquilibrium* target =
        traj.target_id >= 0 ? &eqs[traj.target_id] : nullptr;
    const bool cycle = traj.termination == Termination::ConvergedCycle;
    BlowUpEstimate est = estimate_tmax(field, traj, target, cycle);
    try {
      fit_blowup_rate(field, traj, est, cycle);
    } catch (const numeric_error&) {
      // window too short for a rate fit; t_max is still reported
    }
    js += ",\"t_max\":" + fmt17(est.t_max);
    js += ",\"tail_bound\":" + fmt17(est.tail_bound);
    js += ",\"lambda_tail\":" + fmt17(est.lambda_tail);
    js += ",\"lambda_predicted\":" + fmt17(est.lambda_predicted);
    js += ",\"norm_exponent\":" + fmt17(est.fitted_norm_exponent);
    js += ",\"fit_residual\":" + fmt17(est.fit_residual);
    js += ",\"component_exponents\":[";
    for (size_t i = 0; i < est.fitted_component_exponents.size(); ++i) {
      if (i) js += ",";
      js += est.fitted_component_exponents[i]
                ? fmt17(*est.fitted_component_exponents[i])
                : "null";
    }
    js += "],\"target\":" + std::to_string(est.target);
    std::cout << "t_max = " << fmt17(est.t_max) << "  (tail bound "
              << fmt17(est.tail_bound) << ")\n";
  } else {
    code = kExitDivergence;
    std::cout << "trajectory did not converge to a classified target ("
              << termination_name(traj.termination) << ")\n";
  }
  js += "}\n";

  if (!out_path.empty()) {
    write_text(out_path + ".json", js);
    write_text(out_path + ".csv", trajectory_csv(field, traj));
  } else {
    std::cout << js;
  }
  return code;
}

struct PortraitFlags {
  std::string grid;
  double tau_max = 50.0;
  int jobs = 1;
  bool svg = false;
  double tol_rel = 1e-8, tol_abs = 1e-10;
};

std::vector<Vec> build_grid(const std::string& spec, int dim) {
  // "min:max:n" per dimension, comma-separated; n = 0 gives the empty grid
  std::vector<double> lo, hi;
  std::vector<int> cnt;
  std::stringstream ss(spec);
  std::string axis;
  while (std::getline(ss, axis, ',')) {
    double a, b;
    int n;
    if (std::sscanf(axis.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3 || n < 0)
      throw input_error("bad grid axis: " + axis);
    lo.push_back(a);
    hi.push_back(b);
    cnt.push_back(n);
  }
  if (static_cast<int>(lo.size()) != dim)
    throw input_error("grid spec dimension mismatch");
  std::vector<Vec> pts;
  for (int n : cnt)
    if (n == 0) return pts;
  std::vector<int> idx(dim, 0);
  while (true) {
    Vec p(dim);
    for (int d = 0; d < dim; ++d)
      p[d] = cnt[d] == 1 ? lo[d] : lo[d] + (hi[d] - lo[d]) * idx[d] / (cnt[d] - 1);
    pts.push_back(p);
    int d = dim - 1;
    while (d >= 0 && ++idx[d] == cnt[d]) idx[d--] = 0;
    if (d < 0) break;
  }
  return pts;
}

int cmd_portrait(const ScenarioFlags& sf, const PortraitFlags& pf,
                 const std::string& out_path) {
  Problem pb = build_problem(sf);
  if (!pb.field) throw input_error("portrait: no quasi-homogeneous signature found");
  const DesingField& field = *pb.field;
  const int n = field.scheme.dim();

  std::vector<Vec> grid = build_grid(pf.grid, n);
  const std::vector<Vec>& seeds =
      pb.scenario ? pb.scenario->horizon_seeds : std::vector<Vec>{};
  auto eqs = find_horizon_equilibria(field, seeds, horizon_seed_env());

  IntegrateOptions opts;
  opts.rtol = pf.tol_rel;
  opts.atol = pf.tol_abs;
  opts.eps_converge = 1e-6;
  auto rows = sweep_portrait(field, grid, pf.tau_max, eqs, opts, pf.jobs);

  std::string csv;
  if (field.chart == DesingField::Chart::Global) {
    for (int i = 0; i < n; ++i) csv += "x" + std::to_string(i + 1) + ",";
  } else {
    csv += "s,";
    for (int i = 1; i < n; ++i) csv += "theta" + std::to_string(i) + ",";
  }
  csv += "termination,target,final_t\n";
  for (const auto& row : rows) {
    for (double v : row.start) csv += fmt17(v) + ",";
    csv += std::string(termination_name(row.termination)) + "," +
           std::to_string(row.target_id) + "," + fmt17(row.final_t) + "\n";
  }

  if (!out_path.empty())
    write_text(out_path + ".csv", csv);
  else
    std::cout << csv;

  if (pf.svg) {
    if (n != 2) throw unsupported_error("--svg needs a planar field");
    std::vector<Trajectory> trajs;
    trajs.reserve(grid.size());
    for (const auto& p : grid)
      trajs.push_back(integrate(field, p, pf.tau_max, opts, &eqs));
    double lim = field.chart == DesingField::Chart::Global ? 1.3 : 3.0;
    std::string svg = render_portrait(field, trajs, eqs, -lim, lim, -lim, lim);
    write_text(out_path.empty() ? "portrait.svg" : out_path + ".svg", svg);
  }
  return kExitOk;
}

struct PlotFlags {
  std::string csv_path;
  std::string xcol = "tau";
  std::string ycol;
};

int cmd_plot(const PlotFlags& pf, const std::string& out_path) {
  std::ifstream f(pf.csv_path);
  if (!f) throw input_error("cannot read CSV: " + pf.csv_path);
  std::string line;
  if (!std::getline(f, line)) throw input_error("empty CSV");
  std::vector<std::string> cols;
  {
    std::stringstream hs(line);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  auto col_of = [&](const std::string& name) {
    for (size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name) return static_cast<int>(i);
    throw input_error("no column named '" + name + "' in CSV");
  };
  std::string ycol = pf.ycol.empty() ? (cols.size() > 2 ? cols[2] : cols.back()) : pf.ycol;
  const int xi = col_of(pf.xcol), yi = col_of(ycol);

  std::vector<Vec> pts;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream rs(line);
    std::string cell;
    Vec row;
    while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
    pts.push_back({row.at(xi), row.at(yi)});
  }
  if (pts.size() < 2) throw input_error("CSV has fewer than two data rows");

  double xmin = pts[0][0], xmax = xmin, ymin = pts[0][1], ymax = ymin;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  double padx = 0.05 * (xmax - xmin + 1e-12), pady = 0.05 * (ymax - ymin + 1e-12);
  SvgCanvas canvas(xmin - padx, xmax + padx, ymin - pady, ymax + pady);
  canvas.polyline(pts, "#3060c0", 1.2);
  canvas.text(xmin, ymax, pf.xcol + " vs " + ycol);
  write_text(out_path.empty() ? "plot.svg" : out_path, canvas.render());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-homogeneous compactification and blow-up analysis"};
  app.require_subcommand(1);

  std::string out_path;

  auto* scn = app.add_subcommand("scenario", "scenario registry");
  auto* scn_list = scn->add_subcommand("list", "list registered scenarios");
  scn->require_subcommand(1);

  ScenarioFlags a_sf;
  auto* an = app.add_subcommand("analyze", "signatures, C1 certificate, horizon equilibria");
  add_scenario_flags(an, a_sf);
  an->add_option("--out", out_path, "write report JSON here");

  ScenarioFlags b_sf;
  BlowupFlags bf;
  auto* bl = app.add_subcommand("blowup", "blow-up time and rate estimation");
  add_scenario_flags(bl, b_sf);
  bl->add_option("--x0", bf.x0, "initial point in original coordinates")->required();
  bl->add_flag("--backward", bf.backward, "integrate the time-reversed field");
  bl->add_option("--tau-max", bf.tau_max, "desingularized time horizon");
  bl->add_option("--tol-rel", bf.tol_rel, "relative tolerance");
  bl->add_option("--tol-abs", bf.tol_abs, "absolute tolerance");
  bl->add_option("--out", out_path, "output prefix (.json/.csv)");

  ScenarioFlags p_sf;
  PortraitFlags pf;
  auto* po = app.add_subcommand("portrait", "phase-portrait sweep");
  add_scenario_flags(po, p_sf);
  po->add_option("--grid", pf.grid, "per-axis min:max:n, comma separated")->required();
  po->add_option("--tau-max", pf.tau_max, "desingularized time horizon");
  po->add_option("--jobs", pf.jobs, "worker threads");
  po->add_flag("--svg", pf.svg, "also render an SVG portrait (planar only)");
  po->add_option("--tol-rel", pf.tol_rel, "relative tolerance");
  po->add_option("--tol-abs", pf.tol_abs, "absolute tolerance");
  po->add_option("--out", out_path, "output prefix (.csv/.svg)");

  PlotFlags plf;
  auto* pl = app.add_subcommand("plot", "render a trajectory CSV as SVG");
  pl->add_option("--csv", plf.csv_path, "trajectory CSV path")->required();
  pl->add_option("--x", plf.xcol, "x column name (default tau)");
  pl->add_option("--y", plf.ycol, "y column name (default first coordinate)");
  pl->add_option("--out", out_path, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (scn_list->parsed()) return cmd_scenario_list();
    if (an->parsed()) return cmd_analyze(a_sf, out_path);
    if (bl->parsed()) return cmd_blowup(b_sf, bf, out_path);
    if (po->parsed()) return cmd_portrait(p_sf, pf, out_path);
    if (pl->parsed()) return cmd_plot(plf, out_path);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
