// Command-line front end for the coarse-metric toolkit: parses the exchange
// formats, runs the checks and constructions, and emits one canonical JSON
// report per invocation on standard output.
//
// Exit codes: 0 pass, 1 fail (violations found, with witnesses in the
// report), 2 input or usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "roe/io.hpp"
#include "roe/numeric.hpp"

using nlohmann::json;
using namespace roe;

namespace {

struct Witness {
  std::string rule;
  std::string message;
  json data = json::object();
};

struct CommandFailure {
  std::vector<Witness> witnesses;
};

struct Report {
  std::string command;
  std::string status = "pass";
  std::vector<Witness> witnesses;
  json result = json::object();
  std::vector<std::string> outputs;

  json to_json() const {
    json doc;
    doc["command"] = command;
    doc["status"] = status;
    doc["witnesses"] = json::array();
    for (const auto& w : witnesses) {
      json entry;
      entry["rule"] = w.rule;
      entry["message"] = w.message;
      entry["data"] = w.data;
      doc["witnesses"].push_back(entry);
    }
    doc["result"] = result;
    doc["outputs"] = outputs;
    return doc;
  }
};

int exit_code(const std::string& status) {
  if (status == "pass") return 0;
  if (status == "fail") return 1;
  return 2;
}

// ---------------------------------------------------------------------------
// Loading helpers. Parse errors throw (exit 2); semantic violations in the
// data turn into CommandFailure (exit 1).

ExtMetric load_metric(const std::string& path) {
  auto file = io::parse_emx(io::read_file(path));
  auto result = validate_metric(file.points, file.table);
  if (!result.ok()) {
    CommandFailure failure;
    for (const auto& v : result.violations) {
      json data = {{"file", path}, {"x", v.x}, {"y", v.y}};
      if (!v.z.empty()) data["z"] = v.z;
      failure.witnesses.push_back({v.rule(), path + ": " + v.message(), data});
    }
    if (result.truncated)
      failure.witnesses.push_back({"metric.truncated", "witness list truncated", {}});
    throw failure;
  }
  return std::move(*result.metric);
}

SparseOp load_op(const std::string& path) { return io::parse_smx(io::read_file(path)); }

HRFamily load_family(const std::string& path) { return io::parse_hrf(io::read_file(path)); }

void require_same_points(const PointSet& a, const PointSet& b, const std::string& what) {
  if (!(a == b)) throw std::invalid_argument("points: headers disagree between " + what);
}

void emit_output(Report& report, const std::string& path, const std::string& content) {
  io::write_file(path, content);
  report.outputs.push_back(path);
}

json profile_json(const GrowthProfile& profile) {
  json doc;
  doc["breakpoints"] = json::array();
  for (double b : profile.breakpoints) doc["breakpoints"].push_back(format_scalar(b));
  doc["counts"] = profile.counts;
  return doc;
}

json cert_json(const MetricCert& cert) {
  json doc;
  doc["gap"] = format_scalar(cert.gap);
  doc["C"] = format_scalar(cert.C);
  doc["profile"] = profile_json(cert.profile);
  return doc;
}

[[noreturn]] void fail_membership(const std::string& path,
                                  const std::vector<MembershipViolation>& violations) {
  CommandFailure failure;
  for (const auto& v : violations)
    failure.witnesses.push_back(
        {v.rule(), path + ": " + v.message(), {{"file", path}, {"x", v.x}, {"y", v.y}}});
  throw failure;
}

// ---------------------------------------------------------------------------
// Option storage

struct Opts {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  bool pretty = false;

  std::string file_a, file_b;
  std::string base, metric, out;
  std::vector<std::string> points;
  double radius = 0.0;
  double eps = 0.0;
  double support = kInf;
  std::optional<double> expect;
  std::optional<std::size_t> expect_terms;
  std::vector<std::string> stages;
  std::vector<std::string> ops;
  std::string dx, dy;
  bool surjective = false;
  bool restrict_image = false;
  bool skip_psd = false;
  std::vector<std::string> bg_subset;
  std::optional<double> bg_radius;
  std::vector<std::string> subset;
  std::vector<std::string> section;
  std::size_t window = 4;
  std::optional<std::size_t> out_window;
  std::string element;
};

// ---------------------------------------------------------------------------
// Handlers

void run_check_metric(const Opts& o, Report& report) {
  auto d = load_metric(o.file_a);
  report.result["points"] = d.size();
  report.result["gap"] = format_scalar(discreteness_gap(d));
  if (!o.base.empty()) {
    auto base = load_metric(o.base);
    require_same_points(base.points(), d.points(), o.base + " and " + o.file_a);
    auto membership = check_membership(base, d);
    if (!membership.ok()) fail_membership(o.file_a, membership.violations);
    report.result["membership"] = cert_json(*membership.cert);
  }
  if (!o.out.empty()) emit_output(report, o.out, io::write_emx(d));
}

void run_join(const Opts& o, Report& report) {
  auto base = load_metric(o.base);
  auto d1 = load_metric(o.file_a);
  auto d2 = load_metric(o.file_b);
  require_same_points(base.points(), d1.points(), o.base + " and " + o.file_a);
  require_same_points(base.points(), d2.points(), o.base + " and " + o.file_b);
  try {
    auto join = join_metric(base, d1, d2);
    auto cert = check_membership(base, join);
    report.result["C1"] = format_scalar(check_membership(base, d1).cert->C);
    report.result["C2"] = format_scalar(check_membership(base, d2).cert->C);
    report.result["membership"] = cert_json(*cert.cert);
    if (!o.out.empty()) emit_output(report, o.out, io::write_emx(join));
  } catch (const MembershipError& e) {
    fail_membership(e.input_index == 1 ? o.file_a : o.file_b, e.violations);
  }
}

void run_restrict(const Opts& o, Report& report) {
  auto base = load_metric(o.file_a);
  auto restricted = restriction_metric(base, o.points);
  report.result["subset_size"] = o.points.size();
  if (!o.out.empty()) emit_output(report, o.out, io::write_emx(restricted));
}

void run_propagation(const Opts& o, Report& report) {
  auto d = load_metric(o.metric);
  auto T = load_op(o.file_a);
  require_same_points(d.points(), T.points(), o.metric + " and " + o.file_a);
  report.result["propagation"] = format_scalar(propagation(T, d));
  report.result["band_sparsity"] = band_sparsity(T);
}

void run_certify(const Opts& o, Report& report) {
  auto base = load_metric(o.base);
  auto T = load_op(o.file_a);
  require_same_points(base.points(), T.points(), o.base + " and " + o.file_a);
  auto result = certify_membership(T, base);
  if (!result.ok()) {
    auto [x, y] = *result.infinite_pair;
    throw CommandFailure{{{"certify.infinite-propagation",
                           "entry at (" + base.points().id(x) + "," + base.points().id(y) +
                               ") sits on an inf-distant pair",
                           {{"x", base.points().id(x)}, {"y", base.points().id(y)}}}}};
  }
  report.result["k"] = result.cert->k;
  report.result["S"] = format_scalar(result.cert->S);
  report.result["support_metric_cert"] = cert_json(result.cert->cert);
  if (!o.out.empty()) emit_output(report, o.out, io::write_emx(result.cert->d));
}

void run_support_metric(const Opts& o, Report& report) {
  auto base = load_metric(o.base);
  auto T = load_op(o.file_a);
  require_same_points(base.points(), T.points(), o.base + " and " + o.file_a);
  double prop = propagation(T, base);
  if (prop > o.radius) {
    throw CommandFailure{{{"support-metric.propagation",
                           "propagation " + format_scalar(prop) + " exceeds the bound " +
                               format_scalar(o.radius),
                           {{"propagation", format_scalar(prop)}}}}};
  }
  auto d = support_metric(T, base, o.radius);
  report.result["propagation"] = format_scalar(prop);
  if (!o.out.empty()) emit_output(report, o.out, io::write_emx(d));
}

void run_decompose(const Opts& o, Report& report) {
  auto T = load_op(o.file_a);
  auto dec = decompose_banded(T);
  const std::size_t N = band_sparsity(T);
  report.result["band_sparsity"] = N;
  report.result["terms"] = json::array();
  double sum_max_f = 0.0;
  for (const auto& term : dec.terms) {
    json tj;
    tj["f"] = json::array();
    double max_f = 0.0;
    for (const auto& [row, value] : term.f) {
      tj["f"].push_back({{"x", T.points().id(row)},
                         {"re", format_scalar(value.real())},
                         {"im", format_scalar(value.imag())}});
      max_f = std::max(max_f, std::abs(value));
    }
    tj["v"] = json::array();
    for (const auto& [col, row] : term.v)
      tj["v"].push_back({{"from", T.points().id(col)}, {"to", T.points().id(row)}});
    sum_max_f += max_f;
    report.result["terms"].push_back(tj);
  }
  auto norm = op_norm(T);
  report.result["sum_max_f"] = format_scalar(sum_max_f);
  report.result["norm_bound"] = format_scalar(static_cast<double>(N) * norm.value);
  report.result["term_count"] = dec.terms.size();
  if (o.expect_terms && *o.expect_terms != dec.terms.size()) {
    throw CommandFailure{{{"decompose.term-count",
                           "expected " + std::to_string(*o.expect_terms) + " terms, produced " +
                               std::to_string(dec.terms.size()),
                           {{"terms", dec.terms.size()}}}}};
  }
}

void run_norm(const Opts& o, Report& report) {
  auto T = load_op(o.file_a);
  auto result = op_norm(T);
  report.result["value"] = format_scalar(result.value);
  report.result["converged"] = result.converged;
  report.result["iterations"] = result.iterations;
  if (!result.converged) {
    throw CommandFailure{{{"norm.no-convergence",
                           "power iteration hit the cap; best estimate " +
                               format_scalar(result.value),
                           {{"value", format_scalar(result.value)}}}}};
  }
  if (o.expect && std::abs(result.value - *o.expect) > o.tol) {
    throw CommandFailure{{{"norm.expect",
                           "norm " + format_scalar(result.value) + " differs from expected " +
                               format_scalar(*o.expect),
                           {{"value", format_scalar(result.value)}}}}};
  }
}

void run_net(const Opts& o, Report& report) {
  auto d = load_metric(o.file_a);
  auto net = greedy_net(d, o.radius);
  report.result["net"] = json::array();
  for (std::size_t u : net.net) report.result["net"].push_back(d.points().id(u));
  report.result["assignment"] = json::object();
  for (std::size_t x = 0; x < d.size(); ++x)
    report.result["assignment"][d.points().id(x)] = d.points().id(net.assignment[x]);
}

void run_clusters(const Opts& o, Report& report) {
  auto d = load_metric(o.file_a);
  auto chain = greedy_clusters(d, o.radius);
  report.result["diameter_bound"] = format_scalar(chain.radius);
  report.result["clusters"] = json::array();
  for (std::size_t t = 0; t < chain.clusters.size(); ++t) {
    json cj;
    cj["center"] = d.points().id(chain.centers[t]);
    cj["points"] = json::array();
    for (std::size_t p : chain.clusters[t]) cj["points"].push_back(d.points().id(p));
    report.result["clusters"].push_back(cj);
  }
}

void run_hr_check(const Opts& o, Report& report) {
  auto d = load_metric(o.metric);
  auto fam = load_family(o.file_a).with_params(HRParams{o.radius, o.eps, o.support});
  require_same_points(d.points(), fam.points(), o.metric + " and " + o.file_a);
  auto hr = hr_check(fam, d, o.radius, o.eps);
  report.result["eps_star"] = format_scalar(hr.eps_star);
  report.result["s_star"] = format_scalar(hr.s_star);
  if (!hr.pass) {
    CommandFailure failure;
    for (const auto& v : hr.hr1_violations)
      failure.witnesses.push_back({"hr.hr1", v.message, {{"x", fam.points().id(v.x)}}});
    if (hr.eps_star >= o.eps) {
      json data = json::object();
      if (hr.eps_witness)
        data = {{"x", fam.points().id(hr.eps_witness->first)},
                {"y", fam.points().id(hr.eps_witness->second)}};
      failure.witnesses.push_back(
          {"hr.hr2", "deviation " + format_scalar(hr.eps_star) + " reaches eps", data});
    }
    if (hr.s_star > o.support)
      failure.witnesses.push_back(
          {"hr.hr3", "support radius " + format_scalar(hr.s_star) + " exceeds S", {}});
    throw failure;
  }
}

SchurKernel kernel_from_op_file(const std::string& path, double tol, bool check_psd) {
  auto op = io::parse_smx(io::read_file(path));
  const std::size_t n = op.size();
  CommandFailure failure;
  std::vector<double> values(n * n, 0.0);
  for (const auto& e : op.entries()) {
    if (e.value.imag() != 0.0)
      failure.witnesses.push_back({"kernel.real",
                                   path + ": kernel entries must be real at (" +
                                       op.points().id(e.row) + "," + op.points().id(e.col) + ")",
                                   json::object()});
    values[e.row * n + e.col] = e.value.real();
  }
  for (std::size_t i = 0; i < n && failure.witnesses.empty(); ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (values[i * n + j] != values[j * n + i]) {
        failure.witnesses.push_back({"kernel.symmetry",
                                     path + ": kernel not symmetric at (" + op.points().id(i) +
                                         "," + op.points().id(j) + ")",
                                     json::object()});
        break;
      }
      if (std::abs(values[i * n + j]) > 1.0 + tol) {
        failure.witnesses.push_back({"kernel.range",
                                     path + ": kernel value " + format_scalar(values[i * n + j]) +
                                         " outside [-1, 1] at (" + op.points().id(i) + "," +
                                         op.points().id(j) + ")",
                                     json::object()});
        break;
      }
    }
  if (!failure.witnesses.empty()) throw failure;
  if (check_psd) {
    double min_eig = numeric::min_symmetric_eigenvalue(values, n);
    if (min_eig < -1e-9) {
      throw CommandFailure{{{"kernel.psd",
                             path + ": minimum eigenvalue " + format_scalar(min_eig) +
                                 " below -1e-9",
                             {{"min_eigenvalue", format_scalar(min_eig)}}}}};
    }
  }
  return SchurKernel(op.points(), std::move(values), false);
}

void run_gram(const Opts& o, Report& report) {
  auto fam = load_family(o.file_a);
  SchurKernel kernel = [&] {
    try {
      return gram_kernel(fam);
    } catch (const std::invalid_argument& e) {
      throw CommandFailure{{{"gram.hr1", e.what(), json::object()}}};
    }
  }();
  report.result["min_eigenvalue"] =
      format_scalar(numeric::min_symmetric_eigenvalue(kernel.matrix(), kernel.size()));
  if (!o.out.empty()) {
    std::vector<OpEntry> entries;
    for (std::size_t i = 0; i < kernel.size(); ++i)
      for (std::size_t j = 0; j < kernel.size(); ++j)
        if (kernel.at(i, j) != 0.0) entries.push_back({i, j, {kernel.at(i, j), 0.0}});
    emit_output(report, o.out, io::write_smx(SparseOp(kernel.points(), std::move(entries))));
  }
}

void run_schur(const Opts& o, Report& report) {
  auto kernel = kernel_from_op_file(o.file_a, o.tol, !o.skip_psd);
  auto T = load_op(o.file_b);
  require_same_points(kernel.points(), T.points(), o.file_a + " and " + o.file_b);
  auto result = schur_apply(kernel, T);
  report.result["entries"] = result.entries().size();
  if (!o.out.empty()) emit_output(report, o.out, io::write_smx(result));
}

void run_cp_decompose(const Opts& o, Report& report) {
  auto d = load_metric(o.metric);
  auto fam = load_family(o.file_a);
  require_same_points(d.points(), fam.points(), o.metric + " and " + o.file_a);
  CPTerms terms;
  SchurKernel kernel = [&] {
    try {
      terms = cp_decomposition(fam, d, o.support);
      return gram_kernel(fam);
    } catch (const std::invalid_argument& e) {
      throw CommandFailure{{{"cp.precondition", e.what(), json::object()}}};
    }
  }();
  report.result["group_count"] = terms.group_count;
  report.result["coloring_bound"] = terms.coloring_bound;
  report.result["raw_terms"] = terms.zs.size();
  report.result["checked_ops"] = json::array();
  for (const auto& path : o.ops) {
    auto T = load_op(path);
    require_same_points(d.points(), T.points(), o.metric + " and " + path);
    double dev = max_entry_distance(apply_cp(terms, T), schur_apply(kernel, T));
    report.result["checked_ops"].push_back(
        {{"file", path}, {"max_deviation", format_scalar(dev)}});
    if (dev > 1e-12) {
      throw CommandFailure{{{"cp.identity",
                             path + ": sum of compressions deviates from the multiplier by " +
                                 format_scalar(dev),
                             {{"file", path}}}}};
    }
  }
}

void run_converge(const Opts& o, Report& report) {
  auto d = load_metric(o.metric);
  auto T = load_op(o.file_a);
  require_same_points(d.points(), T.points(), o.metric + " and " + o.file_a);
  std::vector<ConvergenceStage> schedule;
  for (const auto& spec : o.stages) {
    auto first = spec.find(',');
    auto second = spec.find(',', first + 1);
    if (first == std::string::npos || second == std::string::npos)
      throw std::invalid_argument("--stage expects 'R,eps,file.hrf'");
    double R, eps;
    if (!parse_scalar(spec.substr(0, first), R) ||
        !parse_scalar(spec.substr(first + 1, second - first - 1), eps))
      throw std::invalid_argument("bad numbers in --stage '" + spec + "'");
    auto fam = load_family(spec.substr(second + 1));
    require_same_points(d.points(), fam.points(), o.metric + " and " + spec.substr(second + 1));
    schedule.push_back({R, eps, std::move(fam)});
  }
  try {
    auto deviations = convergence_run(d, T, schedule);
    report.result["deviations"] = json::array();
    for (double dev : deviations) report.result["deviations"].push_back(format_scalar(dev));
  } catch (const StageFailure& e) {
    throw CommandFailure{{{"converge.stage",
                           "stage " + std::to_string(e.stage) + " fails its family check",
                           {{"stage", e.stage}}}}};
  }
}

json expansion_json(const ExpansionProfile& profile) {
  json doc;
  doc["breakpoints"] = json::array();
  doc["bounds"] = json::array();
  for (double b : profile.breakpoints) doc["breakpoints"].push_back(format_scalar(b));
  for (double s : profile.bounds) doc["bounds"].push_back(format_scalar(s));
  doc["all_finite"] = profile.all_finite;
  return doc;
}

void run_coarse_check(const Opts& o, Report& report) {
  auto dX = load_metric(o.dx);
  auto dY = load_metric(o.dy);
  auto data = io::bind_map(io::parse_map(io::read_file(o.file_a)), dX.points(), dY.points());
  data.claims_surjective = o.surjective;

  if (o.restrict_image) {
    auto reduced = restrict_to_image(data);
    json dropped = json::array();
    for (std::size_t y : reduced.dropped) dropped.push_back(dY.points().id(y));
    report.result["dropped"] = dropped;
    data = std::move(reduced.data);
    dY = subspace(dY, reduced.image);
  }

  auto check = check_coarse_equivalence(data, dX, dY);
  report.result["C_gf"] = format_scalar(check.C_gf);
  report.result["C_fg"] = format_scalar(check.C_fg);
  report.result["rho_f"] = expansion_json(check.rho_f);
  report.result["rho_g"] = expansion_json(check.rho_g);
  if (!check.pass) {
    CommandFailure failure;
    for (const auto& w : check.witnesses)
      failure.witnesses.push_back({w.rule, w.message, json::object()});
    throw failure;
  }

  if (o.bg_radius) {
    std::vector<std::size_t> A;
    if (o.bg_subset.empty()) {
      for (std::size_t x = 0; x < dX.size(); ++x) A.push_back(x);
    } else {
      for (const auto& id : o.bg_subset) A.push_back(dX.points().index_of(id));
    }
    auto bg = image_bg_bound(data, A, dX, dY, *o.bg_radius);
    report.result["bg_transfer_radius"] = format_scalar(bg.transfer_radius);
    if (!bg.pass) {
      CommandFailure failure;
      for (const auto& w : bg.witnesses)
        failure.witnesses.push_back({w.rule, w.message, json::object()});
      throw failure;
    }
  }
}

void run_morita(const Opts& o, Report& report) {
  auto dX = load_metric(o.dx);
  auto dY = load_metric(o.dy);
  auto data = io::bind_map(io::parse_map(io::read_file(o.file_a)), dX.points(), dY.points());

  std::vector<std::size_t> A;
  if (!o.subset.empty()) {
    for (const auto& id : o.subset) A.push_back(dX.points().index_of(id));
  } else if (!o.section.empty()) {
    std::vector<std::size_t> B;
    for (const auto& id : o.section) B.push_back(dY.points().index_of(id));
    A = choose_section(data, B);
  } else {
    for (std::size_t x = 0; x < dX.size(); ++x) A.push_back(x);
  }
  auto idx = morita_index(data, A);
  report.result["max_fiber"] = idx.max_fiber;
  report.result["fibers"] = json::object();
  for (std::size_t y = 0; y < idx.fiber_count.size(); ++y) {
    if (idx.fiber_count[y] > 0)
      report.result["fibers"][dY.points().id(y)] = idx.fiber_count[y];
  }
  report.result["forward"] = json::array();
  for (std::size_t x : idx.A)
    for (std::size_t j = 0; j < o.window; ++j) {
      auto [y, m] = morita_forward(idx, x, j);
      report.result["forward"].push_back(dX.points().id(x) + "#" + std::to_string(j) + " -> " +
                                         dY.points().id(y) + "#" + std::to_string(m));
    }

  if (!o.file_b.empty()) {
    auto T = load_op(o.file_b);
    require_same_points(T.points(), window_points(dX.points(), idx.A, o.window),
                        o.file_b + " and the A-window");
    try {
      auto moved = induced_conjugation(idx, T, o.window, o.out_window);
      if (!o.out.empty()) emit_output(report, o.out, io::write_smx(moved));
    } catch (const WindowError& e) {
      throw CommandFailure{{{"morita.window", e.what(), json::object()}}};
    }
  }
}

void run_block_embed(const Opts& o, Report& report) {
  std::string text = io::read_file(o.file_a);
  BlockRep rep = [&]() -> BlockRep {
    try {
      return io::parse_grp(text);
    } catch (const std::invalid_argument& e) {
      // JSON was fine but the data is not a group acting by homomorphisms.
      throw CommandFailure{{{"blockrep.invalid", o.file_a + ": " + e.what(), json::object()}}};
    }
  }();
  auto op = block_embedding(rep, std::string_view(o.element));
  report.result["element"] = o.element;
  report.result["band_sparsity"] = band_sparsity(op);
  report.result["unitary"] = (op.adjoint() * op == SparseOp::identity(rep.points()));
  if (!o.out.empty()) emit_output(report, o.out, io::write_smx(op));
}

}  // namespace

int main(int argc, char** argv) {
  Opts o;
  CLI::App app{"Finite-scale coarse geometry toolkit"};
  app.require_subcommand(1);
  app.add_option("--tol", o.tol, "Tolerance for norm comparisons")->capture_default_str();
  app.add_option("--seed", o.seed, "Reserved; every internal is deterministic");
  app.add_flag("--pretty", o.pretty, "Indent the JSON report");

  auto* check_metric = app.add_subcommand("check-metric", "Validate a metric file");
  check_metric->add_option("file", o.file_a)->required();
  check_metric->add_option("--base", o.base, "Also certify membership over this base metric");
  check_metric->add_option("-o,--out", o.out, "Write the canonical form");

  auto* join = app.add_subcommand("join", "Geodesic join of two dominating metrics");
  join->add_option("--base", o.base)->required();
  join->add_option("d1", o.file_a)->required();
  join->add_option("d2", o.file_b)->required();
  join->add_option("-o,--out", o.out);

  auto* restrict_cmd = app.add_subcommand("restrict", "Restriction metric of a subset");
  restrict_cmd->add_option("file", o.file_a)->required();
  restrict_cmd->add_option("--points", o.points, "Subset ids")->expected(-1);
  restrict_cmd->add_option("-o,--out", o.out);

  auto* prop = app.add_subcommand("propagation", "Propagation of an operator under a metric");
  prop->add_option("file", o.file_a)->required();
  prop->add_option("--metric", o.metric)->required();

  auto* certify = app.add_subcommand("certify", "Two-way band/propagation certificate");
  certify->add_option("file", o.file_a)->required();
  certify->add_option("--base", o.base)->required();
  certify->add_option("-o,--out", o.out, "Write the support metric");

  auto* support = app.add_subcommand("support-metric", "Unit-length support-graph metric");
  support->add_option("file", o.file_a)->required();
  support->add_option("--base", o.base)->required();
  support->add_option("--radius", o.radius, "Declared propagation bound")->required();
  support->add_option("-o,--out", o.out);

  auto* decompose = app.add_subcommand("decompose", "Diagonal-times-permutation decomposition");
  decompose->add_option("file", o.file_a)->required();
  decompose->add_option("--expect-terms", o.expect_terms);

  auto* norm = app.add_subcommand("norm", "Operator norm by power iteration");
  norm->add_option("file", o.file_a)->required();
  norm->add_option("--expect", o.expect, "Fail when the norm differs beyond --tol");

  auto* net = app.add_subcommand("net", "Greedy separated net with assignment");
  net->add_option("file", o.file_a)->required();
  net->add_option("--radius", o.radius)->required();

  auto* clusters = app.add_subcommand("clusters", "Greedy growing cluster chain");
  clusters->add_option("file", o.file_a)->required();
  clusters->add_option("--radius", o.radius)->required();

  auto* hr = app.add_subcommand("hr-check", "Slow-variation family check");
  hr->add_option("file", o.file_a)->required();
  hr->add_option("--metric", o.metric)->required();
  hr->add_option("--radius", o.radius)->required();
  hr->add_option("--eps", o.eps)->required();
  hr->add_option("--support", o.support, "Declared support radius S");

  auto* gram = app.add_subcommand("gram", "Gram kernel of a unit family");
  gram->add_option("file", o.file_a)->required();
  gram->add_option("-o,--out", o.out, "Write the kernel as .smx");

  auto* schur = app.add_subcommand("schur", "Schur multiplier applied to an operator");
  schur->add_option("kernel", o.file_a)->required();
  schur->add_option("op", o.file_b)->required();
  schur->add_flag("--skip-psd", o.skip_psd, "Skip the positive-semidefiniteness check");
  schur->add_option("-o,--out", o.out);

  auto* cp = app.add_subcommand("cp-decompose", "Two-sided compression form of the multiplier");
  cp->add_option("file", o.file_a)->required();
  cp->add_option("--metric", o.metric)->required();
  cp->add_option("--support", o.support, "Declared support radius S")->required();
  cp->add_option("--op", o.ops, "Certify the identity on these operators")->expected(-1);

  auto* converge = app.add_subcommand("converge", "Deviation of Schur multipliers from identity");
  converge->add_option("op", o.file_a)->required();
  converge->add_option("--metric", o.metric)->required();
  converge->add_option("--stage", o.stages, "R,eps,family.hrf per stage")->expected(-1);

  auto* coarse = app.add_subcommand("coarse-check", "Coarse equivalence report");
  coarse->add_option("map", o.file_a)->required();
  coarse->add_option("--dx", o.dx)->required();
  coarse->add_option("--dy", o.dy)->required();
  coarse->add_flag("--surjective", o.surjective, "Require f onto");
  coarse->add_flag("--restrict-to-image", o.restrict_image, "Replace Y by f(X) first");
  coarse->add_option("--bg-subset", o.bg_subset, "Subset for the transfer inequality")
      ->expected(-1);
  coarse->add_option("--bg-radius", o.bg_radius, "Radius for the transfer inequality");

  auto* morita = app.add_subcommand("morita", "Fiber bijection and window conjugation");
  morita->add_option("map", o.file_a)->required();
  morita->add_option("--dx", o.dx)->required();
  morita->add_option("--dy", o.dy)->required();
  morita->add_option("--subset", o.subset, "A as X ids")->expected(-1);
  morita->add_option("--section", o.section, "Choose A as a section over these Y ids")
      ->expected(-1);
  morita->add_option("--window", o.window, "Window size J")->capture_default_str();
  morita->add_option("--op", o.file_b, "Conjugate this window operator");
  morita->add_option("--out-window", o.out_window, "Explicit output window size");
  morita->add_option("-o,--out", o.out);

  auto* block = app.add_subcommand("block-embed", "Block permutation operator of a group element");
  block->add_option("file", o.file_a)->required();
  block->add_option("--element", o.element)->required();
  block->add_option("-o,--out", o.out);

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Report report;
  try {
    if (app.got_subcommand(check_metric)) {
      report.command = "check-metric";
      run_check_metric(o, report);
    } else if (app.got_subcommand(join)) {
      report.command = "join";
      run_join(o, report);
    } else if (app.got_subcommand(restrict_cmd)) {
      report.command = "restrict";
      run_restrict(o, report);
    } else if (app.got_subcommand(prop)) {
      report.command = "propagation";
      run_propagation(o, report);
    } else if (app.got_subcommand(certify)) {
      report.command = "certify";
      run_certify(o, report);
    } else if (app.got_subcommand(support)) {
      report.command = "support-metric";
      run_support_metric(o, report);
    } else if (app.got_subcommand(decompose)) {
      report.command = "decompose";
      run_decompose(o, report);
    } else if (app.got_subcommand(norm)) {
      report.command = "norm";
      run_norm(o, report);
    } else if (app.got_subcommand(net)) {
      report.command = "net";
      run_net(o, report);
    } else if (app.got_subcommand(clusters)) {
      report.command = "clusters";
      run_clusters(o, report);
    } else if (app.got_subcommand(hr)) {
      report.command = "hr-check";
      run_hr_check(o, report);
    } else if (app.got_subcommand(gram)) {
      report.command = "gram";
      run_gram(o, report);
    } else if (app.got_subcommand(schur)) {
      report.command = "schur";
      run_schur(o, report);
    } else if (app.got_subcommand(cp)) {
      report.command = "cp-decompose";
      run_cp_decompose(o, report);
    } else if (app.got_subcommand(converge)) {
      report.command = "converge";
      run_converge(o, report);
    } else if (app.got_subcommand(coarse)) {
      report.command = "coarse-check";
      run_coarse_check(o, report);
    } else if (app.got_subcommand(morita)) {
      report.command = "morita";
      run_morita(o, report);
    } else if (app.got_subcommand(block)) {
      report.command = "block-embed";
      run_block_embed(o, report);
    }
  } catch (const CommandFailure& failure) {
    report.status = "fail";
    report.witnesses = failure.witnesses;
  } catch (const std::exception& e) {
    report.status = "error";
    report.witnesses.push_back({"input", e.what(), json::object()});
  }

  std::cout << report.to_json().dump(o.pretty ? 2 : -1) << "\n";
  return exit_code(report.status);
}
