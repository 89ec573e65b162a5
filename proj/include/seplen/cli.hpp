#pragma once

// The seplen command line: argument parsing and dispatch.
//
// Exit codes: 0 on success / confirmed / all checks passed, 1 on
// not-confirmed or a failed check, 2 on usage errors.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seplen/io.hpp"

namespace seplen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::string dims;
  std::size_t r = 1;
  std::string r_list;
  std::size_t samples = 3;
  std::uint64_t seed = 0;
  Backend backend = Backend::automatic;
  std::optional<double> tol;
  std::string format = "text";
  std::optional<std::size_t> cap;
  bool force = false;
  std::string point_path;
  std::string operator_path;
  std::size_t n = 2;
  std::string a;
  std::string b;
  std::string fixture;
};

inline std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      throw usage_error("malformed list: " + text);
    }
    if (used != item.size() || item.empty() || item[0] == '-') throw usage_error("malformed list: " + text);
    out.push_back(v);
  }
  if (out.empty()) throw usage_error("empty list");
  return out;
}

inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const std::invalid_argument&) {
      throw usage_error("malformed rational list: " + text);
    }
  }
  return out;
}

inline RunLimits limits_for(const RunConfig& cfg) {
  RunLimits lim;
  lim.force = cfg.force;
  if (cfg.cap) {
    lim.hermitian_cap = *cfg.cap;
  } else if (const char* env = std::getenv("SEPLEN_CAP")) {
    try {
      lim.hermitian_cap = std::stoul(env);
    } catch (const std::exception&) {
      throw usage_error(std::string("SEPLEN_CAP is not an integer: ") + env);
    }
  }
  return lim;
}

namespace detail {

inline void emit(std::ostream& out, const RunConfig& cfg, const json& j, const std::string& text) {
  if (cfg.format == "json") out << canonical_dump(j) << "\n";
  else out << text;
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

inline std::string rank_text(const RankReport& r) {
  std::ostringstream os;
  os << "dims " << r.dims.to_string() << ", r = " << r.r << ", backend " << to_string(r.backend) << ", seed "
     << r.seed << "\n";
  for (const auto& s : r.samples) os << "  sample " << s.sample_seed << ": rank " << s.rank << "\n";
  os << "generic rank " << r.generic_rank << " (upper bound " << r.upper_bound << ")\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

template <class T>
int classify_with(const RunConfig& cfg, std::ostream& out, const HermitianOperator<T>& rho, const Dims& dims) {
  const auto cls = small_length_classify(rho, dims, cfg.tol);
  std::ostringstream os;
  os << "ranks of partial transposes (by party mask): " << join(cls.ranks) << "\n";
  os << "verdict: " << to_string(cls.verdict);
  if (cls.length) os << " " << *cls.length;
  os << " (lower bound " << cls.lower_bound << "; input assumed separable)\n";
  json j = to_json(cls);
  j["dims"] = to_json(dims);
  emit(out, cfg, j, os.str());
  return kExitOk;
}

}  // namespace detail

inline int run_lc(const RunConfig& cfg, std::ostream& out) {
  const Dims dims = parse_dims(cfg.dims);
  const auto b = length_bounds(dims);
  json j = {{"dims", to_json(dims)},
            {"d", b.d},
            {"l_c", b.l_c},
            {"l_c_equals_d", l_c_equals_d(dims)},
            {"l_crit_lower", b.l_crit_lower},
            {"l_max_upper", b.l_max_upper},
            {"product_cone_dim", product_cone_dim(dims)}};
  detail::emit(out, cfg, j, std::to_string(b.l_c) + "\n");
  return kExitOk;
}

inline int run_classify(const RunConfig& cfg, std::ostream& out) {
  const bool exact = resolve_backend(Dims{2, 2}, cfg.backend) == Backend::exact;
  if (!cfg.point_path.empty() == !cfg.operator_path.empty())
    throw usage_error("classify needs exactly one of --point or --operator");
  const json j = read_json_file(cfg.point_path.empty() ? cfg.operator_path : cfg.point_path);
  if (!cfg.point_path.empty()) {
    if (exact) {
      const auto z = point_from_json<GaussianRational>(j);
      return detail::classify_with(cfg, out, phi_r(z), z.dims());
    }
    const auto z = point_from_json<Complex>(j);
    return detail::classify_with(cfg, out, phi_r(z), z.dims());
  }
  Dims dims;
  if (exact) {
    const auto rho = operator_from_json<GaussianRational>(j, dims);
    return detail::classify_with(cfg, out, rho, dims);
  }
  const auto rho = operator_from_json<Complex>(j, dims);
  return detail::classify_with(cfg, out, rho, dims);
}

inline int run_rank(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.point_path.empty()) {
    const json j = read_json_file(cfg.point_path);
    const Dims dims = dims_from_json(j.at("dims"));
    const Backend backend = resolve_backend(dims, cfg.backend);
    check_resources(dims, limits_for(cfg));
    std::size_t rk = 0;
    std::size_t rows = 0;
    bool zero = false;
    if (backend == Backend::exact) {
      const auto z = point_from_json<GaussianRational>(j);
      rk = jacobian_rank(z);
      rows = z.rows();
      zero = z.has_zero_component();
    } else {
      const auto z = point_from_json<Complex>(j);
      rk = jacobian_rank(z, cfg.tol);
      rows = z.rows();
      zero = z.has_zero_component();
    }
    json rep = {{"dims", to_json(dims)},
                {"r", rows},
                {"backend", std::string(to_string(backend))},
                {"rank", rk},
                {"upper_bound", dims.hermitian_dim()}};
    if (zero) rep["warnings"] = json::array({"point has a zero local vector"});
    detail::emit(out, cfg, rep,
                 "rank " + std::to_string(rk) + " (upper bound " + std::to_string(dims.hermitian_dim()) + ")\n" +
                     (zero ? "warning: point has a zero local vector\n" : ""));
    return kExitOk;
  }
  const Dims dims = parse_dims(cfg.dims);
  check_resources(dims, limits_for(cfg));
  const auto rep = generic_rank(dims, cfg.r, cfg.samples, cfg.seed, cfg.backend, cfg.tol);
  detail::emit(out, cfg, to_json(rep), detail::rank_text(rep));
  return kExitOk;
}

inline int run_verify_critical(const RunConfig& cfg, std::ostream& out) {
  const Dims dims = parse_dims(cfg.dims);
  const auto rep = verify_critical(dims, cfg.samples, cfg.seed, cfg.backend, cfg.tol, limits_for(cfg));
  std::ostringstream os;
  os << "dims " << dims.to_string() << ": d = " << rep.d << ", L_c = " << rep.l_c << "\n"
     << "generic rank of dPhi_{L_c}: " << rep.ranks.generic_rank << " of " << dims.hermitian_dim() << " ("
     << to_string(rep.ranks.backend) << ", " << rep.ranks.samples.size() << " samples, seed " << cfg.seed << ")\n"
     << to_string(rep.verdict) << "\n";
  detail::emit(out, cfg, to_json(rep), os.str());
  return rep.verdict == ConjectureVerdict::confirmed ? kExitOk : kExitFailed;
}

inline int run_filtration(const RunConfig& cfg, std::ostream& out) {
  const Dims dims = parse_dims(cfg.dims);
  const auto rs = parse_size_list(cfg.r_list);
  const auto entries = filtration_dims(dims, rs, cfg.samples, cfg.seed, cfg.backend, cfg.tol, limits_for(cfg));
  std::ostringstream os;
  os << "dims " << dims.to_string() << " (d^2 - 1 = " << dims.hermitian_dim() - 1 << ")\n";
  for (const auto& e : entries) os << "  r = " << e.r << ": generic rank " << e.generic_rank << ", dim S'_r = " << e.dim << "\n";
  detail::emit(out, cfg, to_json(entries, dims), os.str());
  return kExitOk;
}

inline int run_twoxn(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < 2) throw usage_error("--n must be >= 2");
  if (cfg.a.empty() != cfg.b.empty()) throw usage_error("--a and --b must be given together");
  TheoremReport rep;
  if (!cfg.a.empty()) {
    TwoNParams p{cfg.n, parse_rational_list(cfg.a), parse_rational_list(cfg.b)};
    if (p.a.size() != cfg.n || p.b.size() != cfg.n) throw usage_error("--a and --b need exactly N values");
    rep = verify_theorem(p);
  } else {
    rep = verify_theorem(cfg.n, cfg.seed);
  }
  std::ostringstream os;
  os << "2 x " << cfg.n << (rep.generic() ? " (generic parameters)" : " (non-generic parameters)") << "\n";
  for (const auto& v : rep.violations) os << "  genericity violated: " << v << "\n";
  os << "det M#        = " << to_string(rep.det_msharp) << "\n"
     << "closed form   = " << to_string(rep.closed_form) << "\n"
     << "det M##       = " << to_string(rep.det_mdoublesharp) << "\n"
     << "rank M        = " << rep.jacobian_rank << " of " << rep.params.order() << "\n";
  for (const auto& c : rep.checks)
    os << (c.passed ? "  pass  " : "  FAIL  ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
  detail::emit(out, cfg, to_json(rep), os.str());
  return rep.passed() ? kExitOk : kExitFailed;
}

inline int run_gallery(const RunConfig& cfg, std::ostream& out) {
  Fixture f;
  if (cfg.fixture == "tiles") f = tiles();
  else if (cfg.fixture == "birank43") f = birank43();
  else if (cfg.fixture == "identity") f = identity_point(parse_dims(cfg.dims.empty() ? "2,2" : cfg.dims));
  else throw usage_error("unknown fixture: " + cfg.fixture);
  std::ostringstream os;
  os << f.name << " (dims " << f.dims.to_string() << ")\n";
  for (const auto& a : f.assertions)
    os << (a.passed ? "  pass  " : "  FAIL  ") << a.name << ": " << a.observed
       << (a.passed ? "" : " (expected " + a.expected + ")") << "\n";
  detail::emit(out, cfg, to_json(f), os.str());
  return f.passed() ? kExitOk : kExitFailed;
}

/// Dispatches a parsed configuration.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "text" && cfg.format != "json") throw usage_error("--format must be text or json");
    if (cfg.command == "lc") return run_lc(cfg, out);
    if (cfg.command == "classify") return run_classify(cfg, out);
    if (cfg.command == "rank") return run_rank(cfg, out);
    if (cfg.command == "verify-critical") return run_verify_critical(cfg, out);
    if (cfg.command == "filtration-dims") return run_filtration(cfg, out);
    if (cfg.command == "twoxn") return run_twoxn(cfg, out);
    if (cfg.command == "gallery") return run_gallery(cfg, out);
    throw usage_error("unknown command: " + cfg.command);
  } catch (const resource_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}

/// Parses argv into a RunConfig and runs it.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"seplen: length invariants of multipartite separable states"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string backend = "auto";

  auto common = [&](CLI::App* sub, bool with_dims) {
    if (with_dims) sub->add_option("--dims", cfg.dims, "comma-separated local dimensions, each >= 2");
    sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--backend", backend, "auto, exact or float")->check(CLI::IsMember({"auto", "exact", "float"}));
    sub->add_option("--tol", cfg.tol, "relative singular value tolerance (float backend)");
  };
  auto sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples, "random points per rank estimate")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "run seed");
    sub->add_option("--cap", cfg.cap, "largest d^2 allowed without --force (env SEPLEN_CAP)");
    sub->add_flag("--force", cfg.force, "ignore the d^2 cap");
  };

  auto* lc = app.add_subcommand("lc", "closed-form L_c and the length bounds");
  common(lc, true);
  lc->get_option("--dims")->required();

  auto* classify = app.add_subcommand("classify", "small-length classification from partial-transpose ranks");
  common(classify, false);
  classify->add_option("--point", cfg.point_path, "point file; classifies Phi_r(z)");
  classify->add_option("--operator", cfg.operator_path, "operator file");

  auto* rank_cmd = app.add_subcommand("rank", "rank of the Jacobian of Phi_r");
  common(rank_cmd, true);
  sampling(rank_cmd);
  rank_cmd->add_option("--r", cfg.r, "number of product vectors")->check(CLI::PositiveNumber);
  rank_cmd->add_option("--point", cfg.point_path, "evaluate at this point instead of random samples");

  auto* crit = app.add_subcommand("verify-critical", "check that dPhi_{L_c} generically has rank d^2");
  common(crit, true);
  sampling(crit);
  crit->get_option("--dims")->required();

  auto* filt = app.add_subcommand("filtration-dims", "estimated dim S'_r for each r");
  common(filt, true);
  sampling(filt);
  filt->get_option("--dims")->required();
  filt->add_option("--r", cfg.r_list, "comma-separated list of r")->required();

  auto* twoxn = app.add_subcommand("twoxn", "verify the 2 x N determinant identity");
  common(twoxn, false);
  twoxn->add_option("--n", cfg.n, "N >= 2")->required();
  twoxn->add_option("--seed", cfg.seed, "seed for random generic parameters");
  twoxn->add_option("--a", cfg.a, "comma-separated a_1..a_N (rationals)");
  twoxn->add_option("--b", cfg.b, "comma-separated b_1..b_N (rationals)");

  auto* gallery = app.add_subcommand("gallery", "constructive fixtures: tiles, identity, birank43");
  common(gallery, true);
  gallery->add_option("fixture", cfg.fixture, "tiles | identity | birank43")
      ->required()
      ->check(CLI::IsMember({"tiles", "identity", "birank43"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream x;
    app.exit(e, o, x);
    err << x.str() << o.str();
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }
  for (auto* sub : {lc, classify, rank_cmd, crit, filt, twoxn, gallery})
    if (sub->parsed()) cfg.command = sub->get_name();
  try {
    cfg.backend = parse_backend(backend);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return run(cfg, out, err);
}

}  // namespace seplen::cli
