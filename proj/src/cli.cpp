#include "cob/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cob/groups.hpp"
#include "cob/matrix_io.hpp"
#include "cob/random.hpp"
#include "cob/schur.hpp"
#include "cob/superop.hpp"

namespace cob::cli {

using nlohmann::json;

namespace {

constexpr double kSamplerSlack = 1e-6;
constexpr double kIdentityTol = 1e-10;

using groups::GroupFunction;

// Clamped below: the interior-point path stalls long before 1e-10.
double sdp_tol(const RunConfig& c) { return std::clamp(c.tol / 100.0, 1e-10, 1e-7); }

SchattenP parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity") return SchattenP::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("--p: not a number: '" + s + "'");
  }
  if (used != s.size()) throw DomainError("--p: not a number: '" + s + "'");
  return SchattenP(v);
}

std::string group_name(const RunConfig& c) { return c.group_file ? *c.group_file : c.group; }

groups::IrrepCatalog load_group(const RunConfig& c) {
  if (!c.group_file) return groups::catalog(c.group);
  std::ifstream in(*c.group_file);
  if (!in) throw DomainError("cannot open group file '" + *c.group_file + "'");
  return groups::read_catalog(in);
}

// Runs `body` under a timer; a numerical failure becomes a failing record.
Record timed(std::string operation, std::string anchor, json inputs, const std::function<void(Record&)>& body) {
  Record r;
  r.operation = std::move(operation);
  r.anchor = std::move(anchor);
  r.inputs = std::move(inputs);
  r.values = json::object();
  r.tolerances = json::object();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const NumericalFailure& e) {
    r.values["error"] = e.what();
    r.pass = false;
  }
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

json trial_inputs(const RunConfig& c, int trial) {
  return json{{"n", c.n}, {"seed", c.seed}, {"trial", trial}};
}

std::vector<std::pair<json, CMatrix>> schur_symbols(const RunConfig& c) {
  std::vector<std::pair<json, CMatrix>> out;
  if (c.symbol_file) {
    const CMatrix phi = load_matrix(*c.symbol_file);
    out.emplace_back(json{{"symbol", matrix_to_json(phi)}}, phi);
    return out;
  }
  for (int t = 0; t < c.trials; ++t) {
    Rng rng(trial_seed(c.seed, static_cast<std::uint64_t>(t)));
    out.emplace_back(trial_inputs(c, t), rng.gaussian(c.n, c.n));
  }
  return out;
}

SamplerOptions sampler_options(const RunConfig& c, int trial) {
  SamplerOptions o;
  o.trials = 8;
  o.ascent_steps = 100;
  o.seed = trial_seed(c.seed ^ 0x5a5a5a5aULL, static_cast<std::uint64_t>(trial));
  return o;
}

Record sampler_record(const RunConfig& c, const json& inputs, const SuperOp& map, double sdp_value, int trial) {
  return timed("cb_lower_bound_sampler", "sampler-below-sdp", inputs, [&](Record& r) {
    const double lower = cb_lower_bound_sampler(map, map.in_dim(), sampler_options(c, trial));
    r.values = {{"sampler", lower}, {"sdp", sdp_value}};
    r.tolerances = {{"abs", kSamplerSlack}};
    r.pass = lower <= sdp_value + kSamplerSlack;
  });
}

void suite_transpose(const RunConfig& c, std::vector<Record>& out) {
  const json inputs{{"n", c.n}};
  double value = 0.0;
  out.push_back(timed("cb_norm(transpose_map)", "transposition-cb-norm-equals-n", inputs, [&](Record& r) {
    const NormCertificate cert = cb_norm_certified(transpose_map(c.n), sdp_tol(c));
    value = cert.value;
    r.values = {{"value", cert.value}, {"lower", cert.lower}, {"upper", cert.upper}, {"expected", c.n}};
    r.tolerances = {{"abs", c.tol}};
    r.pass = std::abs(cert.value - c.n) <= c.tol;
  }));
  out.push_back(sampler_record(c, inputs, transpose_map(c.n), value, 0));
}

void suite_cob_schur(const RunConfig& c, std::vector<Record>& out) {
  const auto symbols = schur_symbols(c);
  for (std::size_t t = 0; t < symbols.size(); ++t) {
    const auto& [inputs, phi] = symbols[t];
    const SchurSymbol sym(phi);
    double sdp = 0.0;
    out.push_back(timed("cob_norm(from_schur)", "schur-cob-equals-modulus-norm", inputs, [&](Record& r) {
      const double formula = cob_norm_formula(sym);
      sdp = cob_norm(sym.as_superop(), sdp_tol(c));
      r.values = {{"formula", formula}, {"sdp", sdp}, {"abs_diff", std::abs(formula - sdp)}};
      r.tolerances = {{"abs_scaled", c.tol}};
      r.pass = std::abs(formula - sdp) <= c.tol * (1.0 + formula);
    }));
    out.push_back(timed("verify_flip_witnesses", "schur-cob-proof-witnesses", inputs, [&](Record& r) {
      const FlipWitnessReport w = verify_flip_witnesses(phi);
      r.values = {{"norm_aligned", w.norm_aligned},
                  {"operator_norm", w.operator_norm_x},
                  {"norm_flipped", w.norm_flipped},
                  {"max_entry", w.max_entry_x}};
      r.tolerances = {{"abs_scaled", kIdentityTol}};
      r.pass = w.pass;
    }));
    if (t < 3) {
      out.push_back(sampler_record(c, inputs, compose(transpose_map(sym.size()), sym.as_superop()), sdp,
                                   static_cast<int>(t)));
    }
  }
}

void suite_cb_schur(const RunConfig& c, std::vector<Record>& out) {
  for (const auto& [inputs, phi] : schur_symbols(c)) {
    out.push_back(timed("cb_norm_haagerup vs cb_norm", "schur-cb-two-oracles-agree", inputs, [&](Record& r) {
      const double h = cb_norm_haagerup(SchurSymbol(phi), sdp_tol(c));
      const double d = cb_norm(from_schur(phi), sdp_tol(c));
      r.values = {{"haagerup", h}, {"diamond", d}, {"abs_diff", std::abs(h - d)}};
      r.tolerances = {{"abs", c.tol}};
      r.pass = std::abs(h - d) <= c.tol;
    }));
  }
  CMatrix hadamard(2, 2);
  hadamard << 1, 1, 1, -1;
  out.push_back(timed("cb_norm_haagerup vs cb_norm", "schur-cb-two-oracles-agree",
                      json{{"symbol", matrix_to_json(hadamard)}}, [&](Record& r) {
                        const double h = cb_norm_haagerup(SchurSymbol(hadamard), sdp_tol(c));
                        const double d = cb_norm(from_schur(hadamard), sdp_tol(c));
                        r.values = {{"haagerup", h}, {"diamond", d}, {"expected", std::sqrt(2.0)}};
                        r.tolerances = {{"abs", 1e-5}};
                        r.pass = std::abs(h - std::sqrt(2.0)) <= 1e-5 && std::abs(d - std::sqrt(2.0)) <= 1e-5;
                      }));
}

void suite_sandwich(const RunConfig& c, std::vector<Record>& out) {
  for (int t = 0; t < c.trials; ++t) {
    Rng rng(trial_seed(c.seed, static_cast<std::uint64_t>(t)));
    const CMatrix a = rng.gaussian(c.n, c.n);
    const CMatrix b = rng.gaussian(c.n, c.n);
    const SuperOp map = sandwich(a, b);
    const json inputs = trial_inputs(c, t);
    double sdp = 0.0;
    out.push_back(timed("cob_norm(sandwich)", "sandwich-cob-equals-hs-product", inputs, [&](Record& r) {
      const double formula = hs_norm(a) * hs_norm(b);
      sdp = cob_norm(map, sdp_tol(c));
      r.values = {{"formula", formula}, {"sdp", sdp}, {"abs_diff", std::abs(formula - sdp)}};
      r.tolerances = {{"abs_scaled", c.tol}};
      r.pass = std::abs(formula - sdp) <= c.tol * (1.0 + formula);
    }));
    if (t < 3) {
      out.push_back(timed("cob_norm vs cob_norm_trace_class", "cob-adjoint-invariance", inputs, [&](Record& r) {
        const double dual = cob_norm_trace_class(hs_adjoint(map), sdp_tol(c));
        r.values = {{"cob", sdp}, {"adjoint_side", dual}};
        r.tolerances = {{"abs", c.tol}};
        r.pass = std::abs(sdp - dual) <= c.tol;
      }));
      out.push_back(sampler_record(c, inputs, compose(transpose_map(c.n), map), sdp, t));
    }
  }
}

std::vector<SchattenP> exponents(const RunConfig& c) {
  if (!c.p.empty()) return {parse_p(c.p)};
  return {SchattenP(1.0), SchattenP(1.5), SchattenP(2.0), SchattenP(3.0), SchattenP::infinity()};
}

void suite_schatten(const RunConfig& c, std::vector<Record>& out) {
  for (const SchattenP& p : exponents(c)) {
    for (int t = 0; t < c.trials; ++t) {
      Rng rng(trial_seed(c.seed, static_cast<std::uint64_t>(t)));
      const int m = 1 + t % 3;
      BlockFamily x(c.n, std::vector<CMatrix>(c.n));
      for (auto& row : x) {
        for (auto& blk : row) blk = rng.gaussian(m, m);
      }
      json inputs = trial_inputs(c, t);
      inputs["p"] = p.str();
      inputs["m"] = m;
      out.push_back(timed("schatten_identities", "schatten-block-identities", inputs, [&](Record& r) {
        const SchattenIdentityReport s = schatten_identities(p, x);
        r.values = {{"flipped_lhs", s.flipped_lhs},
                    {"flipped_rhs", s.flipped_rhs},
                    {"aligned_lhs", s.aligned_lhs},
                    {"aligned_rhs", s.aligned_rhs}};
        r.tolerances = {{"rel", 1e-10}};
        r.pass = s.pass;
      }));
    }
    if (p.value() < 2.0) continue;
    const auto symbols = schur_symbols(c);
    const std::size_t count = std::min<std::size_t>(symbols.size(), 5);
    for (std::size_t t = 0; t < count; ++t) {
      json inputs = symbols[t].first;
      inputs["p"] = p.str();
      out.push_back(timed("sp_multiplier_bounds", "sp-multiplier-endpoints", inputs, [&](Record& r) {
        SpSamplingOptions o;
        o.trials = 200;
        o.ascent_steps = 50;
        o.seed = trial_seed(c.seed ^ 0xa5a5a5a5ULL, t);
        const SpBoundsReport s = sp_multiplier_bounds(SchurSymbol(symbols[t].second), p, o);
        r.values = {{"lower", s.lower}, {"upper", s.upper}, {"max_entry", s.max_entry}, {"cob_formula", s.cob_formula},
                    {"ordered", s.ordered}, {"endpoint_ok", s.endpoint_ok}};
        r.tolerances = {{"p2_abs", 1e-8}, {"pinf_lower_rel", 0.05}};
        r.pass = s.pass;
      }));
    }
  }
}

void suite_s1(const RunConfig& c, std::vector<Record>& out) {
  for (int t = 0; t < c.trials; ++t) {
    Rng rng(trial_seed(c.seed, static_cast<std::uint64_t>(t)));
    RVector lambda(c.n);
    RVector mu(c.n);
    for (int i = 0; i < c.n; ++i) lambda(i) = rng.uniform();
    for (int i = 0; i < c.n; ++i) mu(i) = rng.uniform();
    CMatrix phi(c.n, c.n);
    for (int i = 0; i < c.n; ++i) {
      for (int j = 0; j < c.n; ++j) {
        const double phase = 2.0 * 3.141592653589793 * rng.uniform();
        phi(i, j) = std::polar((lambda(i) + mu(j)) * rng.uniform(), phase);
      }
    }
    out.push_back(timed("s1_multiplier_check", "s1-domination-bound", trial_inputs(c, t), [&](Record& r) {
      const S1CheckReport s =
          s1_multiplier_check(SchurSymbol(phi), make_s1_witness(lambda, mu), 100, trial_seed(c.seed, 1000 + t));
      r.values = {{"dominated", s.dominated}, {"c", s.c}, {"max_ratio", s.max_ratio}, {"pairs", s.trials}};
      r.tolerances = {{"ratio_slack", 1e-9}};
      r.pass = s.pass;
    }));
  }
}

GroupFunction random_function(Rng& rng, int order) {
  GroupFunction f(order);
  for (auto& v : f) v = rng.complex_normal();
  return f;
}

json catalog_record_values(const groups::CatalogValidation& v) {
  return {{"homomorphism_err", v.homomorphism_err}, {"unitarity_err", v.unitarity_err},
          {"irreducibility_err", v.irreducibility_err}, {"orthogonality_err", v.orthogonality_err},
          {"dimension_sum", v.dimension_sum}};
}

void catalog_checks(const std::string& name, const groups::IrrepCatalog& cat, std::vector<Record>& out) {
  const json inputs{{"group", name}};
  out.push_back(timed("validate(catalog)", "irrep-catalog-invariants", inputs, [&](Record& r) {
    const auto v = groups::validate(cat.group(), cat.irreps());
    r.values = catalog_record_values(v);
    r.values["order"] = cat.group().order();
    r.tolerances = {{"homomorphism", 1e-12}, {"unitarity", 1e-12}, {"characters", 1e-10}};
    r.pass = v.pass;
  }));
  out.push_back(timed("peter_weyl_pattern_error", "peter-weyl-block-pattern", inputs, [&](Record& r) {
    const double err = groups::peter_weyl_pattern_error(cat);
    r.values = {{"max_deviation", err}};
    r.tolerances = {{"abs", 1e-10}};
    r.pass = err <= 1e-10;
  }));
}

int max_dimension(const groups::IrrepCatalog& cat) {
  const auto d = cat.dimensions();
  return *std::max_element(d.begin(), d.end());
}

void suite_group(const RunConfig& c, std::vector<Record>& out) {
  const auto cat = load_group(c);
  const auto& g = cat.group();
  const int n = g.order();
  const std::string name = group_name(c);
  catalog_checks(name, cat, out);

  out.push_back(timed("identity_cob", "identity-cob-equals-max-irrep-dimension", json{{"group", name}}, [&](Record& r) {
    const auto e = groups::delta(g, g.identity(), static_cast<double>(n));
    const auto rep = groups::group_multiplier_cob(e, e, cat, true, sdp_tol(c));
    const double id = groups::identity_cob(cat);
    const int d = max_dimension(cat);
    r.values = {{"identity_cob", id}, {"formula", rep.formula_value}, {"max_dimension", d},
                {"max_block_sdp_diff", rep.max_block_discrepancy}};
    r.tolerances = {{"formula", 0.0}, {"sdp_abs", c.tol}};
    r.pass = id == d && rep.formula_value == d && rep.max_block_discrepancy <= c.tol &&
             rep.block_structure_err <= 1e-10;
  }));

  for (int t = 0; t < c.trials; ++t) {
    Rng rng(trial_seed(c.seed, static_cast<std::uint64_t>(t)));
    const GroupFunction f = random_function(rng, n);
    const GroupFunction h = random_function(rng, n);
    json inputs{{"group", name}, {"seed", c.seed}, {"trial", t}};
    groups::GroupMultiplierReport rep;
    out.push_back(timed("group_multiplier_cob", "group-multiplier-cob-equals-hs-sup", inputs, [&](Record& r) {
      rep = groups::group_multiplier_cob(f, h, cat, true, sdp_tol(c));
      json blocks = json::array();
      for (const auto& b : rep.per_block) blocks.push_back({{"irrep", b.irrep}, {"dim", b.dim}, {"formula", b.formula}, {"sdp", b.sdp}});
      r.values = {{"formula", rep.formula_value}, {"blocks", blocks},
                  {"block_structure_err", rep.block_structure_err},
                  {"max_block_sdp_diff", rep.max_block_discrepancy}};
      r.tolerances = {{"block_structure", 1e-10}, {"sdp_abs", c.tol}};
      r.pass = rep.block_structure_err <= 1e-10 && rep.max_block_discrepancy <= c.tol;
    }));
    if (t >= 3) continue;
    // Same multiplier after relabelling elements and after conjugating each
    // irrep by a random unitary.
    out.push_back(timed("group_multiplier_cob(relabel, conjugate)", "group-multiplier-representative-invariance", inputs,
                        [&](Record& r) {
                          std::vector<int> perm(n);
                          std::iota(perm.begin(), perm.end(), 0);
                          for (int i = n - 1; i > 0; --i) {
                            std::swap(perm[i], perm[static_cast<int>(rng.uniform() * (i + 1)) % (i + 1)]);
                          }
                          const auto moved = groups::relabel(cat, perm);
                          GroupFunction f2(n);
                          GroupFunction h2(n);
                          for (int s = 0; s < n; ++s) {
                            f2[perm[s]] = f[s];
                            h2[perm[s]] = h[s];
                          }
                          std::vector<groups::Irrep> conj;
                          for (const auto& pi : cat.irreps()) {
                            const CMatrix u = rng.unitary(pi.dim);
                            groups::Irrep q{pi.dim, {}};
                            for (const auto& m : pi.matrices) q.matrices.push_back(u * m * u.adjoint());
                            conj.push_back(q);
                          }
                          const groups::IrrepCatalog rotated(cat.group(), conj);
                          const double a = groups::group_multiplier_cob(f2, h2, moved, false).formula_value;
                          const double b = groups::group_multiplier_cob(f, h, rotated, false).formula_value;
                          const double scale = 1.0 + rep.formula_value;
                          r.values = {{"original", rep.formula_value}, {"relabelled", a}, {"conjugated", b}};
                          r.tolerances = {{"rel", 1e-12}};
                          r.pass = std::abs(a - rep.formula_value) <= 1e-12 * scale &&
                                   std::abs(b - rep.formula_value) <= 1e-12 * scale;
                        }));
  }
}

void suite_kesten(const RunConfig& c, std::vector<Record>& out) {
  const auto cat = load_group(c);
  const auto& g = cat.group();
  for (int t = 0; t < c.trials; ++t) {
    Rng rng(trial_seed(c.seed, static_cast<std::uint64_t>(t)));
    const GroupFunction f = random_function(rng, g.order());
    out.push_back(timed("kesten_check", "kesten-equality-finite-group",
                        json{{"group", group_name(c)}, {"seed", c.seed}, {"trial", t}}, [&](Record& r) {
                          const auto k = groups::kesten_check(g, f);
                          r.values = {{"l1", k.l1_value}, {"matrix_norm", k.matrix_norm}, {"ratio", k.ratio}};
                          r.tolerances = {{"rel", 1e-10}};
                          r.pass = k.pass;
                        }));
  }
}

void suite_herz_schur(const RunConfig& c, std::vector<Record>& out) {
  const auto cat = load_group(c);
  out.push_back(timed("herz_schur_vs_schur_report", "constant-symbol-schur-vs-herz-schur",
                      json{{"group", group_name(c)}}, [&](Record& r) {
                        const auto h = groups::herz_schur_vs_schur_report(cat);
                        const int n = cat.group().order();
                        const int d = max_dimension(cat);
                        r.values = {{"schur_cob", h.schur_cob}, {"herz_schur_cob", h.herz_schur_cob},
                                    {"ratio", h.ratio}, {"expected_schur", n}, {"expected_herz_schur", d}};
                        r.tolerances = {{"abs", 0.0}};
                        r.pass = h.schur_cob == n && h.herz_schur_cob == d;
                      }));
}

void suite_validate(const RunConfig& c, std::vector<Record>& out) {
  for (const auto& name : groups::catalog_names()) catalog_checks(name, groups::catalog(name), out);
  if (c.group_file) catalog_checks(*c.group_file, load_group(c), out);
  RunConfig sc = c;
  sc.trials = std::min(c.trials, 5);
  suite_schatten(sc, out);
  for (int t = 0; t < c.trials; ++t) {
    Rng rng(trial_seed(c.seed, static_cast<std::uint64_t>(t)));
    const CMatrix x = rng.gaussian(c.n, c.n);
    out.push_back(timed("verify_flip_witnesses", "schur-cob-proof-witnesses", trial_inputs(c, t), [&](Record& r) {
      const FlipWitnessReport w = verify_flip_witnesses(x);
      r.values = {{"norm_aligned", w.norm_aligned}, {"operator_norm", w.operator_norm_x},
                  {"norm_flipped", w.norm_flipped}, {"max_entry", w.max_entry_x}};
      r.tolerances = {{"abs_scaled", kIdentityTol}};
      r.pass = w.pass;
    }));
  }
}

using Suite = void (*)(const RunConfig&, std::vector<Record>&);

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> table = {
      {"cob-schur", suite_cob_schur},
      {"cb-schur", suite_cb_schur},
      {"transpose-norm", suite_transpose},
      {"sandwich", suite_sandwich},
      {"schatten-identities", suite_schatten},
      {"s1-check", suite_s1},
      {"group", suite_group},
      {"kesten", suite_kesten},
      {"compare-herz-schur", suite_herz_schur},
      {"validate", suite_validate},
  };
  return table;
}

std::string json_number(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : suites()) v.push_back(name);
    v.push_back("report");
    return v;
  }();
  return names;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw DomainError("--format must be json, csv or text");
}

std::string format_name(Format f) {
  switch (f) {
    case Format::Json:
      return "json";
    case Format::Csv:
      return "csv";
    case Format::Text:
      return "text";
  }
  return "json";
}

std::string config_error(const RunConfig& c) {
  const auto& names = commands();
  if (std::find(names.begin(), names.end(), c.command) == names.end()) return "unknown command '" + c.command + "'";
  if (c.n < 1) return "--n must be >= 1";
  if (!(c.tol > 0.0) || !std::isfinite(c.tol)) return "--tol must be a positive number";
  if (c.trials < 1) return "--trials must be >= 1";
  try {
    if (!c.p.empty()) parse_p(c.p);
    if (!c.group_file) groups::catalog(c.group);
  } catch (const Error& e) {
    return e.what();
  }
  if (c.group_file && !std::ifstream(*c.group_file)) return "cannot open group file '" + *c.group_file + "'";
  if (c.symbol_file && !std::ifstream(*c.symbol_file)) return "cannot open symbol file '" + *c.symbol_file + "'";
  return {};
}

std::vector<Record> run_suite(const RunConfig& config) {
  const std::string err = config_error(config);
  if (!err.empty()) throw DomainError(err);
  std::vector<Record> out;
  for (const auto& [name, fn] : suites()) {
    if (config.command == name || (config.command == "report" && name != "validate")) fn(config, out);
  }
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json record_json(const Record& r) {
  return {{"operation", r.operation},   {"anchor", r.anchor},       {"inputs", r.inputs},
          {"inputs_digest", fnv1a_hex(r.inputs.dump())}, {"values", r.values}, {"tolerances", r.tolerances},
          {"pass", r.pass},             {"wall_time_s", r.wall_time_s}};
}

json report_json(const RunConfig& c, const std::vector<Record>& records, bool with_timing) {
  json recs = json::array();
  double total = 0.0;
  bool pass = true;
  for (const auto& r : records) {
    json j = record_json(r);
    if (!with_timing) j.erase("wall_time_s");
    recs.push_back(std::move(j));
    total += r.wall_time_s;
    pass = pass && r.pass;
  }
  json cfg = {{"n", c.n}, {"p", c.p}, {"group", group_name(c)}, {"seed", c.seed}, {"tol", c.tol}, {"trials", c.trials}};
  if (c.symbol_file) cfg["symbol_file"] = *c.symbol_file;
  json rep = {{"schema", 1}, {"command", c.command}, {"config", cfg}, {"records", recs}, {"pass", pass}};
  if (with_timing) rep["wall_time_s"] = total;
  return rep;
}

void render(std::ostream& os, const RunConfig& c, const std::vector<Record>& records) {
  switch (c.format) {
    case Format::Json:
      os << report_json(c, records).dump(2) << '\n';
      return;
    case Format::Csv:
      os << "operation,anchor,inputs_digest,pass,wall_time_s,values\n";
      for (const auto& r : records) {
        os << csv_quote(r.operation) << ',' << r.anchor << ',' << fnv1a_hex(r.inputs.dump()) << ','
           << (r.pass ? "true" : "false") << ',' << json_number(r.wall_time_s) << ',' << csv_quote(r.values.dump())
           << '\n';
      }
      return;
    case Format::Text: {
      int failed = 0;
      for (const auto& r : records) {
        failed += r.pass ? 0 : 1;
        os << (r.pass ? "PASS " : "FAIL ") << r.anchor << "  " << r.operation << "  " << r.inputs.dump() << '\n';
        for (const auto& [k, v] : r.values.items()) {
          if (!v.is_array()) os << "    " << k << " = " << (v.is_number_float() ? json_number(v.get<double>()) : v.dump()) << '\n';
        }
      }
      os << records.size() - failed << '/' << records.size() << " records passed\n";
      return;
    }
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string problem = config_error(config);
  if (!problem.empty()) {
    err << "invalid configuration: " << problem << '\n';
    return 2;
  }
  std::vector<Record> records;
  try {
    records = run_suite(config);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (config.out) {
    std::ofstream file(*config.out);
    if (!file) {
      err << "cannot write '" << *config.out << "'\n";
      return 2;
    }
    render(file, config, records);
  } else {
    render(out, config, records);
  }
  bool pass = true;
  for (const auto& r : records) {
    if (!r.pass) {
      pass = false;
      err << "FAILED: " << record_json(r).dump() << '\n';
    }
  }
  return pass ? 0 : 1;
}

}  // namespace cob::cli
