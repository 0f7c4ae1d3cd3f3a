#include "toricmld/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "toricmld/instance_io.hpp"
#include "toricmld/mfs.hpp"
#include "toricmld/mld.hpp"
#include "toricmld/witness.hpp"

namespace toricmld::cli {

namespace {

ToricMfs require_mfs(Instance inst) {
  if (auto* m = std::get_if<ToricMfs>(&inst)) return std::move(*m);
  throw Error(ErrorCode::Parse, "$.kind: expected an mfs instance");
}

nlohmann::json vec_json(const RatVec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : v) out.push_back(c.get_str());
  return out;
}

int cmd_mld(const std::string& path, const std::string& part, bool brute, bool as_json, std::ostream& out,
            std::ostream& err) {
  Instance inst = load_instance(path);
  const ToricVariety* x = nullptr;
  if (auto* t = std::get_if<ToricVariety>(&inst)) {
    x = t;
  } else {
    auto& mfs = std::get<ToricMfs>(inst);
    x = part == "base" ? &mfs.base : &mfs.total;
  }
  MldResult r = mld(*x);
  std::optional<MldResult> oracle;
  if (brute) oracle = mld_bruteforce(*x);

  if (as_json) {
    nlohmann::json doc;
    doc["mld"] = r.value.get_str();
    doc["witness"] = vec_json(r.witness);
    doc["cone"] = r.cone_index;
    if (oracle) {
      doc["brute_force"] = {{"mld", oracle->value.get_str()},
                            {"witness", vec_json(oracle->witness)},
                            {"cone", oracle->cone_index}};
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "mld = " << to_string(r.value) << '\n';
    out << "witness = " << to_string(r.witness) << '\n';
    out << "cone = " << r.cone_index << '\n';
    if (oracle) {
      out << "brute_force mld = " << to_string(oracle->value) << '\n';
      out << "brute_force witness = " << to_string(oracle->witness) << '\n';
    }
  }
  if (oracle && (oracle->value != r.value || oracle->witness != r.witness)) {
    err << "error: brute-force oracle disagrees: " << to_string(oracle->value) << " at "
        << to_string(oracle->witness) << " vs " << to_string(r.value) << " at " << to_string(r.witness) << '\n';
    return kOracleMismatch;
  }
  return kOk;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  ToricMfs mfs = require_mfs(load_instance(path));
  ValidationReport report = validate(mfs);
  std::size_t width = 0;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  for (const auto& c : report.checks)
    out << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << c.name << "  "
        << c.detail << '\n';
  out << (report.overall ? "valid" : "invalid") << '\n';
  return report.overall ? kOk : kFailure;
}

int cmd_family(long l, const std::string& emit, std::ostream& out) {
  ToricMfs f = example_family(l);
  if (emit == "json") {
    out << serialize(f);
    return kOk;
  }
  out << "l = " << l << '\n';
  out << "r = " << to_string(example_family_order(l)) << '\n';
  out << "lattice generators:";
  for (const auto& g : lattice_generators(f.total.lattice())) out << ' ' << to_string(g);
  out << '\n';
  out << "rays:";
  for (const auto& ray : f.total.fan().rays()) out << ' ' << to_string(ray);
  out << '\n';
  out << "mld_X = " << to_string(mld(f.total).value) << '\n';
  out << "mld_Y = " << to_string(mld(f.base).value) << '\n';
  return kOk;
}

int cmd_sweep(long l_min, long l_max, const std::string& path, std::ostream& out, std::ostream& err) {
  auto rows = sweep_family(l_min, l_max);
  if (path.empty() || path == "-") {
    write_sweep_csv(out, rows);
    return kOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << path << '\n';
    return kFailure;
  }
  write_sweep_csv(file, rows);
  if (!file) {
    err << "error: write to " << path << " failed\n";
    return kFailure;
  }
  return kOk;
}

// Re-derives the claims of a witness report from scratch.
std::vector<std::string> audit(const ToricMfs& mfs, const WitnessReport& rep) {
  std::vector<std::string> problems;
  const auto& q = rep.point;
  if (is_zero(q)) problems.push_back("Q is zero");
  if (!mfs.total.lattice().contains(q)) problems.push_back("Q is not in N_X");
  for (std::size_t k = mfs.fiber_dim; k < q.size(); ++k)
    if (q[k] < 0) problems.push_back("F(Q) has a negative coordinate");
  const auto& cones = mfs.total.fan().cones();
  if (rep.cone_index >= cones.size()) {
    problems.push_back("cone index out of range");
    return problems;
  }
  auto x = cones[rep.cone_index].barycentric(q);
  if (!x || std::any_of(x->begin(), x->end(), [](const Rat& c) { return c < 0; }))
    problems.push_back("Q is not in the reported cone");
  else if (sum(*x) != rep.log_discrepancy)
    problems.push_back("reported ld(Q) differs from the cone functional");
  if (rep.standard_fiber && !rep.bound_satisfied) problems.push_back("bound violated for a standard-simplex fiber");
  return problems;
}

int cmd_witness(const std::string& path, const std::string& delta_text, std::ostream& out, std::ostream& err) {
  ToricMfs mfs = require_mfs(load_instance(path));
  if (!validate(mfs).overall) throw Error(ErrorCode::InvalidMfs, "instance fails validation");
  WitnessReport rep;
  try {
    rep = delta_text == "auto" ? find_witness(mfs) : find_witness(mfs, parse_rat(delta_text));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PreconditionFailed) throw;
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  if (auto problems = audit(mfs, rep); !problems.empty()) {
    for (const auto& p : problems) err << "internal error: " << p << '\n';
    return kInternal;
  }
  out << "delta = " << to_string(rep.delta) << '\n';
  out << "A = " << to_string(rep.base_point) << '\n';
  out << "P = " << to_string(rep.lift) << '\n';
  out << "t = " << to_string(rep.t) << '\n';
  out << "multiples = " << rep.multiples << '\n';
  out << "(i, j) = (" << rep.i << ", " << rep.j << ")\n";
  out << "Q = " << to_string(rep.point) << '\n';
  out << "cone = " << rep.cone_index << '\n';
  out << "ld(Q) = " << to_string(rep.log_discrepancy) << '\n';
  out << "bound = " << rep.bound.to_string() << '\n';
  out << "bound_approx = " << std::setprecision(8) << rep.bound.approx() << '\n';
  out << "standard_fiber = " << (rep.standard_fiber ? "true" : "false") << '\n';
  out << "bound_satisfied = " << (rep.bound_satisfied ? "true" : "false") << '\n';
  return kOk;
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  ToricMfs mfs = require_mfs(load_instance(path));
  if (!validate(mfs).overall) throw Error(ErrorCode::InvalidMfs, "instance fails validation");
  EpsDeltaCertificate c = check_eps_delta(mfs);
  const std::string e = std::to_string(c.exponent);
  out << "mld_X = " << to_string(c.mld_total.value) << '\n';
  out << "mld_Y = " << to_string(c.mld_base.value) << '\n';
  out << "mld_X^" << e << " = " << to_string(c.lhs) << '\n';
  out << "(" << to_string(c.constant) << ")^" << e << " * mld_Y = " << to_string(c.rhs) << '\n';
  out << (c.holds ? "holds" : "VIOLATED") << '\n';
  if (!c.holds) {
    err << "!!! inequality mld_X^" << e << " <= (" << to_string(c.constant) << ")^" << e
        << " * mld_Y is VIOLATED for " << path << " !!!\n";
    return kInequalityViolated;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact minimal log discrepancies of toric varieties and toric Mori fiber spaces", "toricmld"};
  app.require_subcommand(1);

  std::string path, part = "total", emit = "summary", out_path = "-", delta = "auto";
  bool brute = false, as_json = false;
  long l = 0, l_min = 0, l_max = 0;

  auto* mld_cmd = app.add_subcommand("mld", "Minimal log discrepancy of an instance");
  mld_cmd->add_option("path", path, "Instance file")->required();
  mld_cmd->add_flag("--brute-force", brute, "Cross-check against the brute-force oracle");
  mld_cmd->add_flag("--json", as_json, "Emit JSON");
  mld_cmd->add_option("--part", part, "For mfs instances: total or base")->check(CLI::IsMember({"total", "base"}));

  auto* validate_cmd = app.add_subcommand("validate", "Check the Mori fiber space normal form");
  validate_cmd->add_option("path", path, "Instance file")->required();

  auto* family_cmd = app.add_subcommand("family", "Emit a member of the example family");
  family_cmd->add_option("--l", l, "Family parameter (>= 2)")->required()->check(CLI::Range(2L, 1000000L));
  family_cmd->add_option("--emit", emit, "json or summary")->check(CLI::IsMember({"json", "summary"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate the example family as CSV");
  sweep_cmd->add_option("--l-min", l_min, "Smallest l (>= 2)")->required()->check(CLI::Range(2L, 1000000L));
  sweep_cmd->add_option("--l-max", l_max, "Largest l")->required()->check(CLI::Range(2L, 1000000L));
  sweep_cmd->add_option("--out", out_path, "Output CSV path, - for stdout");

  auto* witness_cmd = app.add_subcommand("witness", "Construct a small-discrepancy point of X");
  witness_cmd->add_option("path", path, "Instance file")->required();
  witness_cmd->add_option("--delta", delta, "auto (= mld(Y)) or p/q");

  auto* check_cmd = app.add_subcommand("check", "Certify mld(X)^(m+1) <= (C+1)^(m+1) mld(Y)");
  check_cmd->add_option("path", path, "Instance file")->required();

  std::vector<std::string> stack(args.rbegin(), args.rend());
  try {
    app.parse(stack);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kFailure;
  }

  try {
    if (*mld_cmd) return cmd_mld(path, part, brute, as_json, out, err);
    if (*validate_cmd) return cmd_validate(path, out);
    if (*family_cmd) return cmd_family(l, emit, out);
    if (*sweep_cmd) {
      if (l_max < l_min) {
        err << "usage error: --l-max must be at least --l-min\n";
        return kFailure;
      }
      return cmd_sweep(l_min, l_max, out_path, out, err);
    }
    if (*witness_cmd) return cmd_witness(path, delta, out, err);
    if (*check_cmd) return cmd_check(path, out, err);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace toricmld::cli
