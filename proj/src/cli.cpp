#include "kflag/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "kflag/cache.hpp"
#include "kflag/casselman.hpp"
#include "kflag/errors.hpp"
#include "kflag/heckeops.hpp"
#include "kflag/io.hpp"
#include "kflag/motivic.hpp"
#include "kflag/stable.hpp"

namespace kflag {

namespace {

const std::map<std::string, std::string>& family_map() {
  static const std::map<std::string, std::string> m = {
      {"mc-x", "MC_X_cell"},
      {"mc-y", "MC_Y_cell"},
      {"mc-x-variety", "MC_X_variety"},
      {"mc-y-variety", "MC_Y_variety"},
      {"mc-dual", "MC_dual_Y_cell"},
      {"mc-dual-variety", "MC_dual_Y_variety"},
      {"mc-dual-normalized", "MC_dual_normalized"},
      {"stab-plus", "stab_plus"},
      {"stab-minus", "stab_minus"},
  };
  return m;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

// Accepts the CLI spelling or the internal family name.
std::string internal_family(const std::string& name) {
  if (auto it = family_map().find(name); it != family_map().end()) return it->second;
  for (const auto& [cli, internal] : family_map())
    if (internal == name) return internal;
  throw UsageError("unknown family '" + name + "'; valid families: " + join(cli_family_names()));
}

bool is_stab(const std::string& internal) { return internal.rfind("stab_", 0) == 0; }

std::vector<LocalizedClass> family_rows(const FlagPtr& fv, const std::string& internal) {
  if (internal == "stab_plus") return stab_plus_matrix(fv).rows;
  if (internal == "stab_minus") return stab_minus_matrix(fv).rows;
  return mc_family(fv, internal);
}

Basis family_basis(const std::string& internal) {
  if (internal == "stab_plus") return Basis::Schubert;
  if (internal == "stab_minus") return Basis::OppositeSchubert;
  return natural_basis(internal);
}

std::optional<Substitution> substitution(const RunConfig& cfg) {
  if (!cfg.non_equivariant && !cfg.y_value && !cfg.q_prime) return std::nullopt;
  Substitution s;
  s.e_to_one = cfg.non_equivariant;
  if (cfg.y_value) s.y_to = std::make_pair(Rational(*cfg.y_value), 0);
  if (cfg.q_prime) s.y_to = std::make_pair(-Rational(*cfg.q_prime), 0);
  return s;
}

std::vector<std::string> persistable() {
  std::vector<std::string> v = mc_family_names();
  v.push_back("stab_plus");
  v.push_back("stab_minus");
  return v;
}

// --- commands -------------------------------------------------------------------------

int cmd_expand(const RunConfig& cfg, const FlagPtr& fv, std::ostream& out) {
  const WeylGroup& W = fv->W();
  const std::string fam = internal_family(cfg.family);
  const auto rows = family_rows(fv, fam);
  std::vector<Elt> which;
  if (cfg.element.empty()) {
    for (Elt w = 0; w < W.size(); ++w) which.push_back(w);
  } else {
    which.push_back(W.parse(cfg.element));
  }
  const auto subst = substitution(cfg);
  const Basis basis = family_basis(fam);
  std::vector<SchubertExpansion> ex;
  for (Elt w : which) {
    SchubertExpansion e = expand(rows[w], basis, !is_stab(fam));
    if (subst)
      for (auto& c : e.coeff) c = substitute(c, *subst);
    ex.push_back(std::move(e));
  }
  const std::string format = cfg.format.empty() ? "pretty" : cfg.format;
  if (format == "json") {
    ojson j;
    j["root_system"] = root_system_json(fv->roots());
    j["family"] = fam;
    j["basis"] = basis_name(basis);
    j["non_equivariant"] = cfg.non_equivariant;
    ojson arr = ojson::array();
    for (std::size_t k = 0; k < which.size(); ++k)
      arr.push_back({{"w", W.format(which[k])}, {"tag", rows[which[k]].tag()}, {"expansion", to_json(fv, ex[k])}});
    j["classes"] = std::move(arr);
    out << j.dump(2) << "\n";
  } else if (format == "tsv") {
    out << "w\tu\tcoefficient\n";
    for (std::size_t k = 0; k < which.size(); ++k)
      for (Elt u = W.size() - 1; u >= 0; --u)
        if (!ex[k].coeff[u].is_zero())
          out << W.format(which[k]) << '\t' << W.format(u) << '\t' << pretty(fv->roots(), ex[k].coeff[u]) << '\n';
  } else {
    for (std::size_t k = 0; k < which.size(); ++k) out << rows[which[k]].tag() << " = " << pretty(fv, ex[k]) << "\n";
  }
  return kExitOk;
}

Report run_suite(const FlagPtr& fv, const std::string& suite, int verification_cap) {
  if (suite == "relations") return verify_relations(fv, verification_cap);
  if (suite == "duality" || suite == "motivic") return verify_motivic(fv);
  if (suite == "divisibility") return divisibility_check(fv);
  if (suite == "casselman") return verify_casselman(fv);
  if (suite == "bnn") return bnn_scan(fv);
  if (suite == "holomorphy") return holomorphy_check(fv);
  if (suite == "stable") return verify_stable(fv);
  throw UsageError("unknown suite '" + suite + "'; valid suites: " + join(cli_suite_names()));
}

int cmd_verify(const RunConfig& cfg, const FlagPtr& fv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> asserted, findings;
  if (cfg.suite == "all") {
    asserted = {"relations", "duality", "divisibility", "casselman", "bnn", "holomorphy", "stable"};
    findings = {"positivity"};
  } else if (cfg.suite == "positivity") {
    findings = {"positivity"};
  } else {
    asserted = {cfg.suite};
  }
  std::vector<Report> reports, notes;
  for (const auto& s : asserted) reports.push_back(run_suite(fv, s, cfg.verification_cap));
  if (!findings.empty()) {
    notes.push_back(positivity_scan(fv, PositivityMode::Equivariant));
    notes.push_back(positivity_scan(fv, PositivityMode::NonEquivariant));
  }
  bool ok = true;
  std::string first;
  for (const auto& r : reports)
    if (!r.ok()) {
      ok = false;
      if (first.empty()) first = r.suite() + ": " + r.first_failure();
    }
  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  if (format == "json") {
    ojson j;
    j["root_system"] = root_system_json(fv->roots());
    j["suite"] = cfg.suite;
    j["status"] = ok ? "pass" : "fail";
    ojson arr = ojson::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    j["reports"] = std::move(arr);
    if (!notes.empty()) {
      ojson f = ojson::array();
      for (const auto& r : notes) f.push_back(r.to_json());
      j["findings"] = std::move(f);
    }
    out << j.dump(2) << "\n";
  } else {
    auto lines = [&](const Report& r, const char* pass, const char* fail) {
      for (const auto& e : r.entries())
        out << (e.ok ? pass : fail) << "\t" << r.suite() << "\t" << e.relation << "\t" << e.checked
            << (e.ok ? "" : "\t" + e.counterexample) << "\n";
    };
    for (const auto& r : reports) lines(r, "PASS", "FAIL");
    for (const auto& r : notes) lines(r, "CONJECTURE-HOLDS", "CONJECTURE-VIOLATED");
    out << (ok ? "PASS" : "FAIL") << "\t" << fv->label() << "\t" << cfg.suite << "\n";
  }
  for (const auto& r : notes)
    if (!r.ok()) err << "finding (conjecture, not asserted): " << r.first_failure() << "\n";
  if (!ok) {
    err << "first counterexample: " << first << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

int cmd_casselman(const RunConfig& cfg, const FlagPtr& fv, std::ostream& out) {
  const auto table = casselman_table(fv, substitution(cfg));
  const std::string format = cfg.format.empty() ? "tsv" : cfg.format;
  if (format == "json") {
    ojson j;
    j["root_system"] = root_system_json(fv->roots());
    j["rows"] = table;
    out << j.dump(2) << "\n";
  } else {
    out << casselman_table_tsv(table);
  }
  return kExitOk;
}

int cmd_dump(const RunConfig& cfg, const FlagPtr& fv, std::ostream& out) {
  const std::string fam = internal_family(cfg.family);
  if (fam == "stab_plus" || fam == "stab_minus") {
    out << to_json(fv, fam == "stab_plus" ? stab_plus_matrix(fv) : stab_minus_matrix(fv)).dump(2) << "\n";
    return kExitOk;
  }
  const auto& rows = mc_family(fv, fam);
  ojson j;
  j["root_system"] = root_system_json(fv->roots());
  j["family"] = fam;
  ojson classes = ojson::array(), exps = ojson::array();
  for (const auto& c : rows) {
    classes.push_back(to_json(c));
    exps.push_back(to_json(fv, expand(c, natural_basis(fam), true)));
  }
  j["classes"] = std::move(classes);
  j["expansions"] = std::move(exps);
  out << j.dump(2) << "\n";
  return kExitOk;
}

char parse_type(const std::string& s) {
  if (s.size() != 1 || !std::strchr("ABCDEFGabcdefg", s[0]))
    throw ConfigError("Lie type must be one of A..G, got '" + s + "'");
  return static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
}

bool looks_like_type(const std::string& s) { return s.size() == 1 && std::strchr("ABCDEFGabcdefg", s[0]); }

}  // namespace

const std::vector<std::string>& cli_family_names() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> r;
    for (const auto& [k, _] : family_map()) r.push_back(k);
    return r;
  }();
  return v;
}

const std::vector<std::string>& cli_suite_names() {
  static const std::vector<std::string> v = {"relations", "duality",    "motivic",  "positivity", "divisibility",
                                             "casselman", "bnn",        "holomorphy", "stable",   "all"};
  return v;
}

void RunConfig::validate() const {
  if (lie_type == 0 || rank <= 0) throw ConfigError("a Lie type and rank are required (e.g. 'A 2' or --type A --rank 2)");
  if (!format.empty() && format != "json" && format != "tsv" && format != "pretty")
    throw ConfigError("format must be json, tsv or pretty, got '" + format + "'");
  if (y_value && q_prime) throw ConfigError("--y-value and --q-prime both set the value of y; give one");
  for (const auto* v : {&y_value, &q_prime})
    if (*v) {
      try {
        Rational r(**v);
        (void)r;
      } catch (const std::exception&) {
        throw ConfigError("not a rational number: '" + **v + "'");
      }
    }
  if (max_rank_cap < 1) throw ConfigError("--max-rank-cap must be positive");
  if (verification_cap < 1) throw ConfigError("--verification-cap must be positive");
  if (rank > max_rank_cap)
    throw ResourceError("rank " + std::to_string(rank) + " exceeds the rank cap " + std::to_string(max_rank_cap) +
                        " (raise it with --max-rank-cap or KFLAG_MAX_RANK_CAP)");
  if ((command == "expand" || command == "dump") && family.empty())
    throw ConfigError("missing family; valid families: " + join(cli_family_names()));
  if (command == "verify") {
    if (suite.empty()) throw ConfigError("missing suite; valid suites: " + join(cli_suite_names()));
    bool known = false;
    for (const auto& s : cli_suite_names()) known = known || s == suite;
    if (!known) throw ConfigError("unknown suite '" + suite + "'; valid suites: " + join(cli_suite_names()));
  }
  if (command == "expand" || command == "dump") internal_family(family);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact GKM localization for torus-equivariant K-theory of flag varieties", "kflag"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option values; unknown keys are rejected");
  app.allow_config_extras(CLI::config_extras_mode::error);

  RunConfig cfg;
  std::string type_opt;
  int rank_opt = 0;
  std::vector<std::string> pos;
  app.add_option("--type", type_opt, "Lie type A..G")->envname("KFLAG_TYPE");
  app.add_option("--rank", rank_opt, "rank")->envname("KFLAG_RANK");
  app.add_option("--format", cfg.format, "json, tsv or pretty")->envname("KFLAG_FORMAT");
  app.add_flag("--non-equivariant", cfg.non_equivariant, "set every e^lambda to 1");
  app.add_option("--y-value", cfg.y_value, "substitute a rational value for y");
  app.add_option("--q-prime", cfg.q_prime, "substitute y = -q'");
  app.add_option("--cache-dir", cfg.cache_dir, "persist class families here")->envname("KFLAG_CACHE_DIR");
  app.add_option("--max-rank-cap", cfg.max_rank_cap, "refuse larger ranks (default 4)")->envname("KFLAG_MAX_RANK_CAP");
  app.add_option("--verification-cap", cfg.verification_cap, "largest rank for the relations suite (default 3)")
      ->envname("KFLAG_VERIFICATION_CAP");

  auto* expand_cmd = app.add_subcommand("expand", "Schubert expansions of a class family: [TYPE RANK] FAMILY [W]");
  auto* verify_cmd = app.add_subcommand("verify", "run an invariant suite: [TYPE RANK] SUITE");
  auto* cass_cmd = app.add_subcommand("casselman", "Casselman transition table: [TYPE RANK]");
  auto* dump_cmd = app.add_subcommand("dump", "JSON dump of a class family: [TYPE RANK] FAMILY");
  for (auto* s : {expand_cmd, verify_cmd, cass_cmd, dump_cmd}) {
    s->fallthrough();
    s->add_option("args", pos, "positional arguments");
  }

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    std::size_t k = 0;
    if (pos.size() >= 2 && looks_like_type(pos[0])) {
      char t = parse_type(pos[0]);
      int r = 0;
      try {
        r = std::stoi(pos[1]);
      } catch (const std::exception&) {
        throw ConfigError("rank must be an integer, got '" + pos[1] + "'");
      }
      if ((!type_opt.empty() && parse_type(type_opt) != t) || (rank_opt && rank_opt != r))
        throw ConfigError("positional type/rank disagree with --type/--rank");
      cfg.lie_type = t;
      cfg.rank = r;
      k = 2;
    } else {
      if (!type_opt.empty()) cfg.lie_type = parse_type(type_opt);
      cfg.rank = rank_opt;
    }
    std::vector<std::string> rest(pos.begin() + k, pos.end());
    const std::size_t max_rest = cfg.command == "expand" ? 2 : cfg.command == "casselman" ? 0 : 1;
    if (rest.size() > max_rest) throw ConfigError("too many arguments for '" + cfg.command + "'");
    if (cfg.command == "verify" && !rest.empty()) cfg.suite = rest[0];
    if ((cfg.command == "expand" || cfg.command == "dump") && !rest.empty()) cfg.family = rest[0];
    if (cfg.command == "expand" && rest.size() > 1) cfg.element = rest[1];
    cfg.validate();

    FlagPtr fv = FlagVariety::make(cfg.lie_type, cfg.rank);
    if (!cfg.element.empty()) {
      try {
        fv->W().parse(cfg.element);
      } catch (const Error& e) {
        throw UsageError(std::string(e.what()) + "; elements are canonical words such as 's1 s2', or 'e'");
      }
    }
    std::mutex warn_mu;
    if (!cfg.cache_dir.empty())
      attach_disk_cache(cfg.cache_dir, fv, persistable(), [&](const std::string& w) {
        std::lock_guard lock(warn_mu);
        err << "warning: " << w << "\n";
      });
    int code = kExitOk;
    if (cfg.command == "expand") code = cmd_expand(cfg, fv, out);
    else if (cfg.command == "verify") code = cmd_verify(cfg, fv, out, err);
    else if (cfg.command == "casselman") code = cmd_casselman(cfg, fv, out);
    else code = cmd_dump(cfg, fv, out);
    return code;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const PoleError& e) {
    err << "pole: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  }
}

}  // namespace kflag
