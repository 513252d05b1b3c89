// Copyright 2026 The Komatsu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Reports are JSON on stdout (or --report FILE);
// exit codes: 0 ok, 1 invalid input, 2 condition violation detected.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "komatsu/diophantine.hpp"
#include "komatsu/error.hpp"
#include "komatsu/field_io.hpp"
#include "komatsu/perturbation.hpp"
#include "komatsu/s3_example.hpp"
#include "komatsu/scan.hpp"
#include "komatsu/solver.hpp"
#include "komatsu/spec_io.hpp"
#include "komatsu/transforms.hpp"
#include "komatsu/weights.hpp"
#include "reports.hpp"

namespace {

using nlohmann::json;
using namespace komatsu;
namespace rj = komatsu::report;

constexpr const char* kVersion = "1.0.0";
constexpr int kExitOk = 0, kExitInvalid = 1, kExitViolation = 2;

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot read " + path);
  std::vector<char> buf(1 << 16);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char b[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(b, sizeof b, "%02x", md[i]);
    hex += b;
  }
  return hex;
}

/// Reports embed the manifest. Wall time is included only on request so
/// that reruns stay byte-identical.
struct RunManifest {
  std::string command;
  json inputs = json::object();
  json truncation = json::object();
  json precision = json::object();
  bool timing = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void add_input(const std::string& role, const std::string& path) {
    inputs[role] = {{"path", path}, {"sha256", sha256_file(path)}};
  }
  json to_json() const {
    json j{{"command", command},       {"inputs", inputs},
           {"truncation", truncation}, {"precision", precision},
           {"tool_version", kVersion}};
    if (timing) {
      j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return j;
  }
};

int precision_bits_from_env() {
  const char* v = std::getenv("KOMATSU_PRECISION_BITS");
  if (!v || !*v) return 256;
  try {
    std::size_t used = 0;
    const int bits = std::stoi(v, &used);
    if (used != std::string(v).size() || bits < 64) throw std::invalid_argument("bits");
    return bits;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidInput, "KOMATSU_PRECISION_BITS must be an integer >= 64");
  }
}

struct Common {
  std::string report_path;
  bool timing = false;
  bool curves = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--report", c.report_path, "write the JSON report to this file instead of stdout");
  sub->add_flag("--timing", c.timing, "record wall time in the manifest (breaks byte-identical reruns)");
  sub->add_flag("--curves", c.curves, "include plot-ready residual curves");
}

void emit(const Common& c, RunManifest& m, json body) {
  m.timing = c.timing;
  json out{{"schema", rj::kSchema}, {"manifest", m.to_json()}};
  for (auto& [k, v] : body.items()) out[k] = std::move(v);
  const std::string text = out.dump(2) + "\n";
  if (c.report_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.report_path);
  if (!f) throw Error(ErrorCode::kInvalidInput, "cannot write " + c.report_path);
  f << text;
}

/// Cutoff of an operator factor: --kmax on tori, --lmax on SU2.
std::int64_t factor_cut(const GroupTag& g, std::int64_t kmax, std::int64_t lmax) {
  switch (g.kind) {
    case GroupKind::kTorus: return kmax;
    case GroupKind::kSU2: return lmax;
    case GroupKind::kTrivial: return 0;
  }
  return 0;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidInput, "malformed number '" + tok + "' in list");
    }
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidInput, "empty list");
  return out;
}

// ---- weights check -------------------------------------------------------

struct WeightsArgs {
  Common c;
  std::string seq;
  std::int64_t cutoff = 128;
};

int run_weights_check(const WeightsArgs& a) {
  RunManifest m;
  m.command = "weights check";
  m.add_input("sequence", a.seq);
  m.truncation = {{"cutoff", a.cutoff}};
  const WeightSequence seq = parse_sequence(read_json_file(a.seq));
  const auto reports = check_conditions(seq, a.cutoff);
  json conds = json::array();
  bool standing = true;
  for (const auto& r : reports) {
    conds.push_back(rj::to_json(r));
    if ((r.id == "M.0" || r.id == "M.1" || r.id == "M.2" || r.id == "M.3") && !r.holds) standing = false;
  }
  json body{{"sequence", sequence_to_json(seq)}, {"conditions", conds}, {"standing_assumptions_hold", standing}};
  if (standing) {
    const AssociatedFunction af(seq);
    json dom = json::array(), halv = json::array();
    for (double q : {0.5, 1.0, 2.0}) {
      dom.push_back({{"p", 2}, {"q", q}, {"delta", 0.5},
                     {"result", rj::to_json(polynomial_domination_constant(af, 2.0, q, 0.5))}});
      halv.push_back(rj::to_json(halving_inequality_check(af, q)));
    }
    body["polynomial_domination"] = dom;
    body["halving_inequality"] = halv;
  }
  emit(a.c, m, body);
  return standing ? kExitOk : kExitInvalid;
}

// ---- cf profile ----------------------------------------------------------

struct CfArgs {
  Common c;
  std::string pattern;
  std::string digits;
  int depth = 4;
  double s = 1.0;
  int bits = 512;
};

int run_cf_profile(const CfArgs& a) {
  RunManifest m;
  m.command = "cf profile";
  m.truncation = {{"depth", a.depth}};
  m.precision = {{"bits", a.bits}};
  if (a.pattern.empty() == a.digits.empty()) {
    throw Error(ErrorCode::kInvalidInput, "give exactly one of --pattern and --digits");
  }
  ContinuedFraction cf = ContinuedFraction::golden();
  if (!a.pattern.empty()) {
    cf = ContinuedFraction::from_pattern(a.pattern);
  } else {
    json d = json::array();
    std::stringstream ss(a.digits);
    std::string tok;
    while (std::getline(ss, tok, ',')) d.push_back(tok);
    cf = parse_continued_fraction(json{{"cf", d}});
  }
  const auto prof = approximation_profile(cf, a.depth, a.s, a.bits);
  emit(a.c, m, {{"continued_fraction", cf.describe()}, {"profile", rj::to_json(prof)}});
  return kExitOk;
}

// ---- analyze -------------------------------------------------------------

struct AnalyzeArgs {
  Common c;
  std::string op, seq, mode = "roumieu", n_grid, smooth_orders, csv;
  std::int64_t kmax = 1000, lmax = 20;
  int bits = 0;
};

void write_curves_csv(const std::string& path, const DiophantineVerdict& v) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  f << "comparison,n,w_upper,log_c\n";
  for (const auto& fit : v.fits) {
    for (const auto& [w, c] : fit.curve) {
      f << v.comparison << ',' << format_double(fit.n) << ',' << format_double(w) << ',' << format_double(c) << '\n';
    }
  }
}

int run_analyze(const AnalyzeArgs& a) {
  RunManifest m;
  m.command = "analyze";
  m.add_input("operator", a.op);
  m.add_input("sequence", a.seq);
  const VectorFieldSpec spec = parse_operator(read_json_file(a.op));
  const AssociatedFunction af(parse_sequence(read_json_file(a.seq)));
  const Truncation trunc{factor_cut(spec.x1.group, a.kmax, a.lmax), factor_cut(spec.x2.group, a.kmax, a.lmax)};
  const int bits = a.bits > 0 ? a.bits : precision_bits_from_env();
  const auto grid = a.n_grid.empty() ? default_n_grid() : parse_list(a.n_grid);
  const auto orders = a.smooth_orders.empty() ? std::vector<double>{} : parse_list(a.smooth_orders);
  m.truncation = {{"cut1", trunc.cut1}, {"cut2", trunc.cut2}, {"n_grid", grid}};
  m.precision = {{"divisor_bits", bits}};
  const FitMode mode = parse_fit_mode(a.mode);
  const OperatorAnalysis res = analyze_operator(spec, trunc, af, mode, grid, orders, bits);
  json body{{"operator", operator_to_json(spec)},
            {"scan", {{"level_pairs", res.scan.level_pairs},
                      {"nonzero", res.scan.nonzero},
                      {"refined", res.scan.refined},
                      {"ambiguous", res.scan.ambiguous},
                      {"w_max", rj::number(res.scan.w_max)}}},
            {"verdict", rj::to_json(res.komatsu, a.c.curves)}};
  if (res.smooth) body["smooth_verdict"] = rj::to_json(*res.smooth, a.c.curves);
  if (!a.csv.empty()) write_curves_csv(a.csv, res.komatsu);
  emit(a.c, m, body);
  return res.komatsu.condition_consistent ? kExitOk : kExitViolation;
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
  Common c;
  std::string op, f, out;
  int bits = 0;
};

double relative_roundtrip_error(const CoefficientField& f, const CoefficientField& lu) {
  double err = 0.0;
  const double scale = std::max(f.max_abs(), 1e-300);
  for (const auto& [key, blk] : f.blocks()) {
    const Block& other = lu.block(key.first, key.second);
    for (std::size_t i = 0; i < blk.a.size(); ++i) err = std::max(err, std::abs(blk.a[i] - other.a[i]) / scale);
  }
  return err;
}

int run_solve(const SolveArgs& a) {
  RunManifest m;
  m.command = "solve";
  m.add_input("operator", a.op);
  m.add_input("field", a.f);
  const VectorFieldSpec spec = parse_operator(read_json_file(a.op));
  const int bits = a.bits > 0 ? a.bits : precision_bits_from_env();
  m.precision = {{"divisor_bits", bits}};
  const CoefficientField f = load_field(a.f, spec.x1.group, spec.x2.group);
  m.truncation = {{"cut1", f.band().cut1}, {"cut2", f.band().cut2}};
  const AdmissibilityReport adm = check_admissible(f, spec, bits);
  json body{{"operator", operator_to_json(spec)}, {"admissibility", rj::to_json(adm)}};
  if (!adm.admissible) {
    emit(a.c, m, body);
    return kExitInvalid;
  }
  const CoefficientField u = solve(f, spec, bits);
  const CoefficientField lu = apply(spec, u, bits);
  const CoefficientField fp = project_off_kernel(f, spec, bits);
  body["roundtrip_relative_error"] = rj::number(relative_roundtrip_error(fp, lu));
  body["solution_nonzero"] = u.nonzero_count();
  if (!a.out.empty()) {
    save_field(u, a.out);
    body["output"] = a.out;
  }
  emit(a.c, m, body);
  return kExitOk;
}

// ---- classify ------------------------------------------------------------

struct ClassifyArgs {
  Common c;
  std::string f, seq, op, groups, n_grid, orders;
};

int run_classify(const ClassifyArgs& a) {
  RunManifest m;
  m.command = "classify";
  m.add_input("field", a.f);
  m.add_input("sequence", a.seq);
  std::optional<GroupTag> g1, g2;
  if (!a.op.empty()) {
    m.add_input("operator", a.op);
    const VectorFieldSpec spec = parse_operator(read_json_file(a.op));
    g1 = spec.x1.group;
    g2 = spec.x2.group;
  } else if (!a.groups.empty()) {
    const auto comma = a.groups.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::kInvalidInput, "--groups takes G1,G2");
    g1 = GroupTag::parse(a.groups.substr(0, comma));
    g2 = GroupTag::parse(a.groups.substr(comma + 1));
  }
  const CoefficientField f = load_field(a.f, g1, g2);
  const AssociatedFunction af(parse_sequence(read_json_file(a.seq)));
  const auto grid = a.n_grid.empty() ? default_n_grid() : parse_list(a.n_grid);
  const auto orders = a.orders.empty() ? default_poly_orders() : parse_list(a.orders);
  m.truncation = {{"cut1", f.band().cut1}, {"cut2", f.band().cut2}, {"n_grid", grid}, {"poly_orders", orders}};
  const DecayVerdict v = classify_decay(f, af, grid, orders);
  emit(a.c, m, {{"classification", rj::to_json(v, a.c.curves)}, {"qualifier", "up to truncation"}});
  return kExitOk;
}

// ---- perturb -------------------------------------------------------------

struct PerturbArgs {
  Common c;
  std::string op, q, q0;
  bool check_conjugation = false;
  std::int64_t vband = 4, vband_l = 2;
  int samples = 10;
  std::uint64_t seed = 1;
  int bits = 0;
};

json problem_json(const PerturbationProblem& p) {
  return {{"q0", {rj::number(p.q0.real()), rj::number(p.q0.imag())}},
          {"q0_exact", p.q0_exact},
          {"shift", p.shifted.q.to_string()},
          {"primitive_found", p.primitive.has_value()},
          {"primitive_residual", rj::number(p.primitive_residual)},
          {"admissibility", rj::to_json(p.admissibility)},
          {"note", p.note}};
}

int run_perturb(const PerturbArgs& a) {
  RunManifest m;
  m.command = "perturb";
  m.add_input("operator", a.op);
  m.add_input("potential", a.q);
  const VectorFieldSpec spec = parse_operator(read_json_file(a.op));
  const int bits = a.bits > 0 ? a.bits : precision_bits_from_env();
  m.precision = {{"divisor_bits", bits}};
  const CoefficientField q = load_field(a.q, spec.x1.group, spec.x2.group);
  std::optional<ExactScalar> hint;
  if (!a.q0.empty()) hint = ExactScalar::parse(a.q0);
  const PerturbationProblem prob = reduce(q, spec, hint, bits);
  json body{{"operator", operator_to_json(spec)}, {"problem", problem_json(prob)}};
  const Truncation vb{factor_cut(spec.x1.group, a.vband, a.vband_l), factor_cut(spec.x2.group, a.vband, a.vband_l)};
  m.truncation = {{"q_band", {q.band().cut1, q.band().cut2}}, {"v_band", {vb.cut1, vb.cut2}}};
  if (a.check_conjugation && prob.primitive) {
    std::mt19937_64 rng(a.seed);
    json res = json::array();
    double worst = 0.0;
    const ConjugationCheck check(prob, vb);
    for (int i = 0; i < a.samples; ++i) {
      const double r = check.residual(random_field(spec.x1.group, spec.x2.group, vb, rng));
      res.push_back(rj::number(r));
      worst = std::max(worst, r);
    }
    body["conjugation"] = {{"seed", a.seed}, {"residuals", res}, {"max_residual", rj::number(worst)},
                          {"exp", rj::to_json(check.exp_report())}};
  }
  emit(a.c, m, body);
  return kExitOk;
}

// ---- reproduce-s3-example ------------------------------------------------

struct ReproduceArgs {
  Common c;
  double s = 2.0;
  std::int64_t lmax = 100, kmax = 20000;
  std::string variant = "both";
  int bits = 0;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_table(const std::vector<S3Variant>& vs, double s) {
  std::printf("%-8s %-10s %-9s %-8s %-16s %-16s %-10s %-10s\n", "variant", "mean", "kernel", "growing",
              "gevrey-roumieu", "smooth-order-10", "GH", "GS");
  for (const auto& v : vs) {
    const auto& k = v.analysis.komatsu;
    const bool smooth_ok = v.analysis.smooth && v.analysis.smooth->condition_consistent;
    std::printf("%-8s %-10s %-9zu %-8s %-16s %-16s %-10s %-10s\n", v.name.c_str(),
                v.problem.shifted.q.to_string().c_str(), k.census.count, yes_no(k.census.still_growing).c_str(),
                k.condition_consistent ? "consistent" : "violated", smooth_ok ? "consistent" : "violated",
                k.hypoelliptic_consistent ? "consistent" : "fails", k.solvable_consistent ? "consistent" : "fails");
  }
  for (const auto& v : vs) {
    std::printf("\n%s: fitted log C_N (Gevrey %.17g), full / w < w_max/100\n", v.name.c_str(), s);
    for (const auto& f : v.analysis.komatsu.fits) {
      std::printf("  N=%-6.17g %.17g / %.17g  %s\n", f.n, f.log_c, f.log_c_w100, f.stable ? "stable" : "unstable");
    }
    if (v.analysis.smooth) {
      for (const auto& f : v.analysis.smooth->fits) {
        std::printf("  order %-3.17g %.17g / %.17g  %s, %zu witnesses\n", f.n, f.log_c, f.log_c_w100,
                    f.stable ? "stable" : "unstable", f.witnesses.size());
      }
    }
  }
  std::printf("\nverdicts hold up to truncation\n");
}

int run_reproduce(const ReproduceArgs& a) {
  RunManifest m;
  m.command = "reproduce-s3-example";
  const int bits = a.bits > 0 ? a.bits : precision_bits_from_env();
  const Truncation trunc{a.kmax, a.lmax};
  m.truncation = {{"kmax", a.kmax}, {"lmax", a.lmax}, {"n_grid", s3_n_grid()}, {"smooth_order", 10}};
  m.precision = {{"divisor_bits", bits}};
  if (a.variant != "both" && a.variant != "q0" && a.variant != "q1") {
    throw Error(ErrorCode::kInvalidInput, "--variant must be q0, q1 or both");
  }
  const double alpha = s3_operator().alpha_double();
  std::vector<S3Variant> vs;
  if (a.variant != "q1") vs.push_back(run_s3_variant("q0", cplx(0.0, 0.5), a.s, trunc, bits));
  if (a.variant != "q0") vs.push_back(run_s3_variant("q1", cplx(0.0, alpha), a.s, trunc, bits));
  print_table(vs, a.s);
  if (!a.c.report_path.empty()) {
    json arr = json::array();
    for (const auto& v : vs) {
      json j{{"variant", v.name},
             {"problem", problem_json(v.problem)},
             {"primitive_error", rj::number(v.primitive_error)},
             {"scan", {{"level_pairs", v.analysis.scan.level_pairs}, {"refined", v.analysis.scan.refined}}},
             {"gevrey", rj::to_json(v.analysis.komatsu, a.c.curves)}};
      if (v.analysis.smooth) j["smooth"] = rj::to_json(*v.analysis.smooth, a.c.curves);
      arr.push_back(j);
    }
    emit(a.c, m, {{"operator", operator_to_json(s3_operator())}, {"s", a.s}, {"variants", arr}});
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of vector fields on products of compact Lie groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  WeightsArgs wa;
  auto* weights = app.add_subcommand("weights", "weight sequences");
  weights->require_subcommand(1);
  auto* wcheck = weights->add_subcommand("check", "check the Komatsu conditions of a sequence");
  wcheck->add_option("--seq", wa.seq, "sequence JSON")->required();
  wcheck->add_option("--cutoff", wa.cutoff, "largest k checked");
  add_common(wcheck, wa.c);

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "divisor spectrum, kernel census and Diophantine fit");
  analyze_cmd->add_option("--op", aa.op, "operator JSON")->required();
  analyze_cmd->add_option("--seq", aa.seq, "sequence JSON")->required();
  analyze_cmd->add_option("--kmax", aa.kmax, "torus cutoff |k| <= kmax");
  analyze_cmd->add_option("--lmax", aa.lmax, "SU2 cutoff l <= lmax");
  analyze_cmd->add_option("--mode", aa.mode, "roumieu or beurling");
  analyze_cmd->add_option("--n-grid", aa.n_grid, "comma-separated N values (default 2^-4..2^4)");
  analyze_cmd->add_option("--smooth-orders", aa.smooth_orders, "comma-separated polynomial orders");
  analyze_cmd->add_option("--csv", aa.csv, "write the fitted C_N curves as CSV");
  analyze_cmd->add_option("--bits", aa.bits, "divisor precision (default KOMATSU_PRECISION_BITS or 256)");
  add_common(analyze_cmd, aa.c);

  CfArgs ca;
  auto* cf = app.add_subcommand("cf", "continued fractions");
  cf->require_subcommand(1);
  auto* profile = cf->add_subcommand("profile", "convergents and approximation profile");
  profile->add_option("--pattern", ca.pattern, "factorial-pow10, liouville, golden or sqrt2");
  profile->add_option("--digits", ca.digits, "comma-separated partial quotients");
  profile->add_option("--depth", ca.depth, "last convergent index");
  profile->add_option("--s", ca.s, "order of the exponential comparison");
  profile->add_option("--bits", ca.bits, "working precision (>= 512)");
  add_common(profile, ca.c);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "canonical solution of L u = f");
  solve_cmd->add_option("--op", sa.op, "operator JSON")->required();
  solve_cmd->add_option("--f", sa.f, "right-hand side CSV")->required();
  solve_cmd->add_option("--out", sa.out, "solution CSV");
  solve_cmd->add_option("--bits", sa.bits, "divisor precision");
  add_common(solve_cmd, sa.c);

  ClassifyArgs cla;
  auto* classify = app.add_subcommand("classify", "decay class of a coefficient field");
  classify->add_option("--f", cla.f, "field CSV")->required();
  classify->add_option("--seq", cla.seq, "sequence JSON")->required();
  classify->add_option("--op", cla.op, "operator JSON supplying the groups");
  classify->add_option("--groups", cla.groups, "G1,G2 when the field has no manifest");
  classify->add_option("--n-grid", cla.n_grid, "comma-separated N values");
  classify->add_option("--orders", cla.orders, "comma-separated polynomial orders");
  add_common(classify, cla.c);

  PerturbArgs pa;
  auto* perturb = app.add_subcommand("perturb", "reduction of X + q to a constant shift");
  perturb->add_option("--op", pa.op, "operator JSON (the field X)")->required();
  perturb->add_option("--q", pa.q, "potential CSV")->required();
  perturb->add_option("--q0", pa.q0, "exact mean, e.g. \"1/2 i\"");
  perturb->add_flag("--check-conjugation", pa.check_conjugation, "evaluate the conjugation identity");
  perturb->add_option("--vband", pa.vband, "torus band of the test fields");
  perturb->add_option("--vband-l", pa.vband_l, "SU2 band of the test fields");
  perturb->add_option("--samples", pa.samples, "number of random test fields");
  perturb->add_option("--seed", pa.seed, "random seed");
  perturb->add_option("--bits", pa.bits, "divisor precision");
  add_common(perturb, pa.c);

  ReproduceArgs ra;
  auto* repro = app.add_subcommand("reproduce-s3-example", "the T1 x SU2 example, both shifts");
  repro->add_option("--s", ra.s, "Gevrey order");
  repro->add_option("--lmax", ra.lmax, "SU2 cutoff");
  repro->add_option("--kmax", ra.kmax, "torus cutoff");
  repro->add_option("--variant", ra.variant, "q0, q1 or both");
  repro->add_option("--bits", ra.bits, "divisor precision");
  add_common(repro, ra.c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  try {
    if (*wcheck) return run_weights_check(wa);
    if (*analyze_cmd) return run_analyze(aa);
    if (*profile) return run_cf_profile(ca);
    if (*solve_cmd) return run_solve(sa);
    if (*classify) return run_classify(cla);
    if (*perturb) return run_perturb(pa);
    if (*repro) return run_reproduce(ra);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
