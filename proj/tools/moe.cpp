// moe: command-line front end for the minimum-output-entropy toolkit.

#include "moe/bases.hpp"
#include "moe/bounds.hpp"
#include "moe/channels.hpp"
#include "moe/entropy.hpp"
#include "moe/io.hpp"
#include "moe/oracle.hpp"
#include "moe/qubit_exact.hpp"
#include "moe/rep.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace {

using ojson = nlohmann::ordered_json;
using moe::Map;

enum ExitCode { kOk = 0, kOther = 1, kParse = 2, kVerification = 3, kBudget = 4 };

std::string fmt12(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

ojson json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v == 0.0 ? 0.0 : v;
}

/// Ordered key/value report rendered as text lines or as the JSON envelope.
struct Report {
  std::string command;
  ojson inputs = ojson::array();
  ojson params = ojson::object();
  ojson results = ojson::object();
  ojson diagnostics = ojson::object();
  std::vector<std::string> text;

  void value(const std::string& key, double v) {
    results[key] = json_number(v);
    text.push_back(key + " = " + fmt12(v));
  }
  void value(const std::string& key, const std::string& v) {
    results[key] = v;
    text.push_back(key + " = " + v);
  }
  void flag(const std::string& key, bool v) { value(key, std::string(v ? "true" : "false")); }
  void diag(const std::string& key, const ojson& v) { diagnostics[key] = v; }

  ojson envelope() const {
    return ojson{{"command", command}, {"inputs", inputs}, {"params", params}, {"results", results},
                 {"diagnostics", diagnostics}};
  }
};

struct Common {
  std::string format = "text";
  std::string out;
  std::string alpha = "2";
  std::uint64_t seed = 42;
  int restarts = 200;
  bool complement = false;
  bool alpha_set = false;
  std::vector<std::string> files;
};

double parse_alpha(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return moe::kInfinity;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw moe::ParseError("--alpha: not a number: " + s);
  }
  if (used != s.size()) throw moe::ParseError("--alpha: not a number: " + s);
  return v;
}

Map load(const std::string& path, bool complement) {
  Map m = moe::read_channel_file(path);
  if (complement) {
    if (!std::holds_alternative<moe::Channel>(m))
      throw moe::VerificationError("completely_positive", "complement needs a Kraus-form channel");
    m = moe::complementary(std::get<moe::Channel>(m));
  }
  return m;
}

moe::OracleOptions oracle_options(const Common& c) {
  moe::OracleOptions o;
  o.seed = c.seed;
  o.restarts = c.restarts;
  return o;
}

void require_flag(bool ok, const char* invariant, const std::string& detail) {
  if (!ok) throw moe::VerificationError(invariant, detail);
}

void emit(const Report& r, const Common& c) {
  std::ostringstream os;
  if (c.format == "json") {
    os << r.envelope().dump(2) << '\n';
  } else {
    for (const auto& line : r.text) os << line << '\n';
  }
  if (c.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw moe::ParseError("cannot write " + c.out);
    f << os.str();
  }
}

void describe_inputs(Report& r, const Common& c) {
  for (const auto& f : c.files) r.inputs.push_back(f);
  r.params["seed"] = c.seed;
  r.params["restarts"] = c.restarts;
  r.params["complement"] = c.complement;
}

void add_flags(Report& r, const Map& m) {
  r.diag("in_dim", moe::in_dim(m));
  r.diag("out_dim", moe::out_dim(m));
  r.diag("trace_preserving", moe::flags(m).trace_preserving);
  r.diag("unital", moe::flags(m).unital);
  r.diag("completely_positive", moe::flags(m).completely_positive);
}

void oracle_diag(Report& r, const moe::OracleResult& o, const std::string& prefix = "oracle") {
  r.diag(prefix + "_restarts", o.restarts);
  r.diag(prefix + "_converged_fraction", o.converged_fraction);
  r.diag(prefix + "_seed", o.seed);
}

// ---------------------------------------------------------------------------
// Commands

Report cmd_channel_show(const Common& c) {
  Report r{"channel show"};
  describe_inputs(r, c);
  const Map m = load(c.files.at(0), c.complement);
  add_flags(r, m);
  r.value("in_dim", moe::in_dim(m));
  r.value("out_dim", moe::out_dim(m));
  r.flag("trace_preserving", moe::flags(m).trace_preserving);
  r.flag("unital", moe::flags(m).unital);
  r.flag("completely_positive", moe::flags(m).completely_positive);
  if (const auto* ch = std::get_if<moe::Channel>(&m)) {
    r.value("kraus_count", static_cast<double>(ch->kraus().size()));
    r.results["channel"] = ojson::parse(moe::channel_to_json(*ch).dump());
  } else {
    r.value("representation", std::string("basis_action"));
  }
  return r;
}

Report cmd_weyl_basis(int n, bool check, const Common& c) {
  Report r{"weyl-basis"};
  r.params["n"] = n;
  if (n < 2) throw moe::VerificationError("dimension", "n must be >= 2");
  const auto basis = moe::weyl_basis(n);
  ojson labels = ojson::array();
  for (const auto& l : basis.labels) {
    labels.push_back(l.str());
    r.text.push_back(l.str());
  }
  r.results["labels"] = labels;
  r.value("count", static_cast<double>(basis.size()));
  if (check) {
    r.value("gram_residual", moe::gram_residual(basis));
    r.value("traceless_residual", moe::traceless_residual(basis));
    r.value("hermiticity_residual", moe::hermiticity_residual(basis));
  }
  (void)c;
  return r;
}

Report cmd_qubit_exact(const Common& c) {
  Report r{"qubit-exact"};
  describe_inputs(r, c);
  const double alpha = parse_alpha(c.alpha);
  r.params["alpha"] = json_number(alpha);
  const Map m = load(c.files.at(0), c.complement);
  add_flags(r, m);
  require_flag(moe::in_dim(m) == 2, "in_dim_2", "qubit-exact needs a qubit input");
  require_flag(moe::flags(m).trace_preserving, "trace_preserving", "");
  const auto q = moe::qubit_norm12(m);
  r.value("norm12", q.norm12);
  r.value("norm12_squared", q.norm12 * q.norm12);
  r.diag("mu", q.solution.mu);
  r.diag("hard_case", q.solution.hard_case);
  r.diag("a", {q.a(0), q.a(1), q.a(2)});
  r.diag("b", {q.b(0), q.b(1), q.b(2)});
  r.diag("bloch", {q.bloch(0), q.bloch(1), q.bloch(2)});
  std::ostringstream key;
  key << "S_min," << c.alpha;
  if (moe::out_dim(m) == 2) r.value(key.str(), moe::qubit_smin_alpha(m, alpha));
  if (alpha >= 1.0 && alpha <= 2.0) {
    const auto lb = moe::smin_lower_bound(m, alpha, q.norm12);
    r.value("lower_bound", lb.value);
    r.flag("lower_bound_exact", lb.exact);
  }
  r.value("holevo_upper_bound", moe::holevo_upper_bound(m));
  return r;
}

Report cmd_moe(const Common& c) {
  Report r{"moe"};
  describe_inputs(r, c);
  const double alpha = parse_alpha(c.alpha);
  r.params["alpha"] = json_number(alpha);
  const Map m = load(c.files.at(0), c.complement);
  add_flags(r, m);
  require_flag(moe::flags(m).trace_preserving, "trace_preserving", "");
  const std::string key = "S_min," + c.alpha;
  if (moe::in_dim(m) == 2 && moe::out_dim(m) == 2) {
    r.value(key, moe::qubit_smin_alpha(m, alpha));
    r.diag("method", "qubit_exact");
  } else {
    const auto o = moe::oracle_smin_alpha(m, alpha, oracle_options(c));
    r.value(key, o.value);
    r.diag("method", "oracle");
    oracle_diag(r, o);
  }
  return r;
}

Report cmd_norm(const Common& c) {
  Report r{"norm"};
  describe_inputs(r, c);
  const Map m = load(c.files.at(0), c.complement);
  add_flags(r, m);
  if (moe::in_dim(m) == 2 && moe::flags(m).trace_preserving) {
    r.value("norm12", moe::qubit_norm12(m).norm12);
    r.diag("method", "qubit_exact");
  } else {
    const auto o = moe::oracle_norm_1to2(m, oracle_options(c));
    r.value("norm12", o.value);
    r.diag("method", "oracle");
    oracle_diag(r, o);
  }
  return r;
}

moe::ChannelRep checked_rep(const Map& m, const std::string& basis) {
  require_flag(moe::flags(m).trace_preserving, "trace_preserving", "");
  require_flag(moe::flags(m).unital, "unital", "");
  if (basis == "weyl") return moe::build_rep(m, moe::weyl_basis(moe::in_dim(m)), moe::weyl_basis(moe::out_dim(m)));
  return moe::build_rep(m);
}

void gamma_values(Report& r, const moe::GammaResult& g) {
  r.value("a_norm", g.a_norm);
  r.value("branch", std::string(g.branch == moe::GammaBranch::small ? "small" : "large"));
  r.value("gamma", g.gamma);
}

Report cmd_gamma(const Common& c, const std::string& basis) {
  Report r{"gamma"};
  describe_inputs(r, c);
  r.params["basis"] = basis;
  const Map m = load(c.files.at(0), c.complement);
  add_flags(r, m);
  gamma_values(r, moe::gamma(checked_rep(m, basis)));
  return r;
}

Report cmd_bound(const Common& c) {
  Report r{"bound"};
  describe_inputs(r, c);
  std::vector<moe::ChannelRep> reps;
  for (const auto& f : c.files) reps.push_back(checked_rep(load(f, c.complement), "gellmann"));
  const auto b = moe::tensor_bound(reps);
  ojson factors = ojson::array();
  for (const auto& g : b.factors) factors.push_back(g.gamma);
  r.diag("factor_gamma", factors);
  for (std::size_t i = 0; i < b.factors.size(); ++i) r.value("gamma[" + std::to_string(i) + "]", b.factors[i].gamma);
  r.value("norm12_bound", b.product_bound_norm12);
  r.value("smin2_bound", b.product_bound_smin2);
  r.value("capacity_bound", b.capacity_bound);
  return r;
}

Report cmd_capacity(const Common& c) {
  Report r{"capacity-bound"};
  describe_inputs(r, c);
  const Map m = load(c.files.at(0), c.complement);
  add_flags(r, m);
  const auto cb = moe::capacity_bound(checked_rep(m, "gellmann"));
  r.value("gamma", cb.gamma.gamma);
  r.value("capacity_bound", cb.capacity);
  r.value("regularized_smin_lower_bound", cb.regularized_smin_lower);
  return r;
}

Report cmd_holevo(const Common& c) {
  Report r{"holevo-bound"};
  describe_inputs(r, c);
  const Map m = load(c.files.at(0), c.complement);
  add_flags(r, m);
  require_flag(moe::in_dim(m) == 2, "in_dim_2", "holevo-bound needs a qubit input");
  require_flag(moe::flags(m).trace_preserving, "trace_preserving", "");
  r.value("norm12", moe::qubit_norm12(m).norm12);
  r.value("holevo_upper_bound", moe::holevo_upper_bound(m));
  return r;
}

void verdict_values(Report& r, const moe::AdditivityVerdict& v, const std::string& prefix) {
  r.flag(prefix + "gamma_equals_norm", v.gamma_equals_norm);
  r.flag(prefix + "top_eigenspace_state_found", v.top_eigenspace_state_found);
  r.flag(prefix + "branch_condition", v.branch_condition);
  r.value(prefix + "gamma", v.gamma);
  r.value(prefix + "oracle_norm12_squared", v.oracle_norm2);
  r.diag(prefix + "structural_residual", v.structural_residual);
  r.diag(prefix + "top_multiplicity", v.top_multiplicity);
}

// Minimum output entropy is additive for Phi exactly when it is for Phi^C, so a C_add
// certificate for a unital complement also settles Phi.
Report cmd_additivity(const Common& c) {
  Report r{"additivity-test"};
  describe_inputs(r, c);
  const Map m = load(c.files.at(0), c.complement);
  add_flags(r, m);
  moe::AdditivityOptions opts;
  opts.oracle = oracle_options(c);
  const auto v = moe::c_add_test(m, checked_rep(m, "gellmann"), opts);
  auto status = v.status;
  std::string via = "channel";
  std::optional<moe::AdditivityVerdict> vc;
  if (status != moe::AdditivityStatus::additive) {
    if (const auto* ch = std::get_if<moe::Channel>(&m)) {
      const Map comp = moe::complementary(*ch);
      if (moe::flags(comp).unital && moe::flags(comp).trace_preserving) {
        vc = moe::c_add_test(comp, checked_rep(comp, "gellmann"), opts);
        if (vc->status == moe::AdditivityStatus::additive) {
          status = vc->status;
          via = "complement";
        }
      }
    }
  }
  r.value("status", std::string(moe::to_string(status)));
  r.value("certified_by", status == moe::AdditivityStatus::additive ? via : std::string("none"));
  verdict_values(r, v, "");
  if (vc) verdict_values(r, *vc, "complement_");
  return r;
}

Report cmd_oracle(const Common& c, const std::string& objective) {
  Report r{"oracle"};
  describe_inputs(r, c);
  const double alpha = parse_alpha(c.alpha);
  r.params["objective"] = objective;
  r.params["alpha"] = json_number(alpha);
  if (objective != "norm12" && objective != "smin") throw moe::ParseError("--objective must be norm12 or smin");
  if (c.files.size() > 2) throw moe::ParseError("oracle takes one or two channel files");
  const Map a = load(c.files.at(0), c.complement);
  const std::string key = objective == "norm12" ? "norm12" : "S_min," + c.alpha;
  if (c.files.size() == 1) {
    const auto o = objective == "norm12" ? moe::oracle_norm_1to2(a, oracle_options(c))
                                         : moe::oracle_smin_alpha(a, alpha, oracle_options(c));
    r.value(key, o.value);
    oracle_diag(r, o);
    return r;
  }
  const Map b = load(c.files.at(1), c.complement);
  auto opts = oracle_options(c);
  const auto t = moe::oracle_tensor(a, b, objective == "norm12" ? moe::TensorObjective::norm12 : moe::TensorObjective::smin,
                                    alpha, opts);
  r.value(key, t.best.value);
  r.value("joint", t.joint_value);
  r.value("product", t.product_value);
  r.value("gap", t.gap);
  r.value("factor_0", t.phi.value);
  r.value("factor_1", t.omega.value);
  oracle_diag(r, t.best);
  return r;
}

std::string fmt17(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Report cmd_gcurve(const Common& c, double from, double to, int steps) {
  Report r{"gcurve"};
  const double alpha = c.alpha_set ? parse_alpha(c.alpha) : 1.0;
  r.params["alpha"] = alpha;
  r.params["from"] = from;
  r.params["to"] = to;
  r.params["steps"] = steps;
  if (!(from > 0.0) || to > 1.0 || from > to) throw moe::VerificationError("grid_in_unit_interval", "need 0 < from <= to <= 1");
  const auto curve = moe::g_curve(alpha, moe::linear_grid(from, to, steps));
  r.text.push_back("c,g,neg_log2_c");
  ojson rows = ojson::array();
  for (const auto& p : curve) {
    r.text.push_back(fmt17(p.c) + "," + fmt17(p.g) + "," + fmt17(p.neg_log2_c));
    rows.push_back({p.c, p.g, p.neg_log2_c});
  }
  r.results["columns"] = {"c", "g", "neg_log2_c"};
  r.results["rows"] = rows;
  return r;
}

const std::set<std::string> kCommands{"channel", "weyl-basis", "qubit-exact", "moe", "norm", "gamma", "bound",
                                      "capacity-bound", "holevo-bound", "additivity-test", "oracle", "gcurve"};

}  // namespace

int main(int argc, char** argv) {
  // A bare "moe [options] file" invocation means the moe subcommand.
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && !kCommands.count(args[0]) && args[0] != "--help" && args[0] != "-h")
    args.insert(args.begin(), "moe");

  CLI::App app{"Minimum output entropy, exact qubit norms and gamma bounds for quantum channels"};
  app.require_subcommand(1);
  Common common;
  std::string objective = "norm12", basis = "gellmann";
  int weyl_n = 2;
  bool weyl_check = false;
  double from = 0.05, to = 1.0;
  int steps = 100;

  auto add_common = [&](CLI::App* s, bool files, bool random) {
    s->add_option("--format", common.format, "text or json")->check(CLI::IsMember({"text", "json", "csv"}));
    s->add_option("--out", common.out, "write the report to this path");
    if (files) {
      s->add_option("files", common.files, "channel file(s)")->required();
      s->add_flag("--complement", common.complement, "use the complementary channel");
    }
    if (random) {
      s->add_option("--seed", common.seed, "oracle seed");
      s->add_option("--restarts", common.restarts, "oracle restarts")->check(CLI::PositiveNumber);
    }
  };

  auto* channel = app.add_subcommand("channel", "channel file operations");
  channel->require_subcommand(1);
  auto* show = channel->add_subcommand("show", "print dimensions, flags and Kraus operators");
  add_common(show, true, false);

  auto* weyl = app.add_subcommand("weyl-basis", "list the Weyl F/G/H basis");
  weyl->add_option("--n", weyl_n, "dimension")->required();
  weyl->add_flag("--check", weyl_check, "print Gram, trace and Hermiticity residuals");
  add_common(weyl, false, false);

  auto* qubit = app.add_subcommand("qubit-exact", "exact 1->2 norm and entropies for qubit inputs");
  qubit->add_option("--alpha", common.alpha, "Renyi order");
  add_common(qubit, true, false);

  auto* moe_cmd = app.add_subcommand("moe", "minimum output Renyi entropy");
  moe_cmd->add_option("--alpha", common.alpha, "Renyi order (inf allowed)");
  add_common(moe_cmd, true, true);

  auto* norm = app.add_subcommand("norm", "1->2 norm");
  add_common(norm, true, true);

  auto* gamma = app.add_subcommand("gamma", "||A|| and gamma");
  gamma->add_option("--basis", basis, "gellmann or weyl")->check(CLI::IsMember({"gellmann", "weyl"}));
  add_common(gamma, true, false);

  auto* bound = app.add_subcommand("bound", "multiplicative bounds for a tensor product of unital channels");
  add_common(bound, true, false);

  auto* capacity = app.add_subcommand("capacity-bound", "log2 k + log2 gamma");
  add_common(capacity, true, false);

  auto* holevo = app.add_subcommand("holevo-bound", "Holevo quantity upper bound for qubit inputs");
  add_common(holevo, true, false);

  auto* additivity = app.add_subcommand("additivity-test", "check the C_add condition");
  add_common(additivity, true, true);

  auto* oracle = app.add_subcommand("oracle", "brute-force optimum over pure inputs");
  oracle->add_option("--objective", objective, "norm12 or smin")->check(CLI::IsMember({"norm12", "smin"}));
  oracle->add_option("--alpha", common.alpha, "Renyi order for smin");
  add_common(oracle, true, true);

  auto* gcurve = app.add_subcommand("gcurve", "CSV of g(c) and -log2 c");
  auto* gc_alpha = gcurve->add_option("--alpha", common.alpha, "Renyi order in [1, 2] (default 1)");
  gcurve->add_option("--from", from, "first c");
  gcurve->add_option("--to", to, "last c");
  gcurve->add_option("--steps", steps, "number of intervals")->check(CLI::PositiveNumber);
  add_common(gcurve, false, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    Report r;
    if (show->parsed()) r = cmd_channel_show(common);
    else if (weyl->parsed()) r = cmd_weyl_basis(weyl_n, weyl_check, common);
    else if (qubit->parsed()) r = cmd_qubit_exact(common);
    else if (moe_cmd->parsed()) r = cmd_moe(common);
    else if (norm->parsed()) r = cmd_norm(common);
    else if (gamma->parsed()) r = cmd_gamma(common, basis);
    else if (bound->parsed()) r = cmd_bound(common);
    else if (capacity->parsed()) r = cmd_capacity(common);
    else if (holevo->parsed()) r = cmd_holevo(common);
    else if (additivity->parsed()) r = cmd_additivity(common);
    else if (oracle->parsed()) r = cmd_oracle(common, objective);
    else if (gcurve->parsed()) {
      common.alpha_set = gc_alpha->count() > 0;
      r = cmd_gcurve(common, from, to, steps);
    }
    emit(r, common);
  } catch (const moe::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const moe::VerificationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerification;
  } catch (const moe::BudgetError& e) {
    std::cerr << "error: budget: " << e.what() << '\n';
    return kBudget;
  } catch (const moe::DomainError& e) {
    std::cerr << "error: verification failed: " << e.what() << '\n';
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}
