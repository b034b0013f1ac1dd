#include "ginv/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ginv/block_forms.hpp"
#include "ginv/core.hpp"
#include "ginv/fuzz.hpp"
#include "ginv/io.hpp"
#include "ginv/perturbation.hpp"

namespace ginv {

using nlohmann::json;

namespace {

InputDocument load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_input(text.str());
}

json checks_to_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const Check& c : checks) out.push_back({{"name", c.name}, {"holds", c.holds}});
  return out;
}

json named_to_json(const NamedMatrices& named) {
  json out = json::object();
  for (const auto& [name, m] : named) out[name] = matrix_to_json(m);
  return out;
}

/// What a subcommand produced: result matrices and scalars, the checklist
/// and the oracle flag.
struct Outcome {
  json result = json::object();
  std::vector<Check> checks;
  bool oracle_agrees = true;
  /// Set when a consistency property decided at this level fails.
  std::optional<std::string> violated;
};

/// Everything a subcommand needs to report a replayable failure.
struct Invocation {
  std::string command;
  Field field;
  NamedMatrices inputs;  // under the names passed on the command line
  std::string replay;
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int report_violation(std::ostream& out, std::ostream& err, const Invocation& inv, const std::string& assertion,
                     const NamedMatrices& witnesses) {
  InputDocument doc;
  doc.field = inv.field;
  for (const auto& [name, m] : inv.inputs) doc.matrices[name] = m;
  emit(out, {{"command", inv.command},
             {"status", "invariant_violation"},
             {"assertion", assertion},
             {"counterexample", document_to_json(doc)},
             {"replay", inv.replay},
             {"witnesses", named_to_json(witnesses)}});
  err << "ginv: invariant violated: " << assertion << "\n";
  return kExitInvariantViolation;
}

/// Runs `body`, translating library outcomes into JSON and exit codes.
int execute(std::ostream& out, std::ostream& err, const Invocation& inv, const std::function<Outcome()>& body) {
  try {
    Outcome o = body();
    if (o.violated) return report_violation(out, err, inv, *o.violated, {});
    emit(out, {{"command", inv.command},
               {"status", "ok"},
               {"field", field_to_json(inv.field)},
               {"result", std::move(o.result)},
               {"checks", checks_to_json(o.checks)},
               {"oracle_agrees", o.oracle_agrees}});
    return kExitOk;
  } catch (const HypothesisNotMet& e) {
    emit(out, {{"command", inv.command},
               {"status", "hypothesis_not_met"},
               {"hypothesis", e.hypothesis()},
               {"detail", e.detail()},
               {"checks", checks_to_json(e.checklist())},
               {"witnesses", named_to_json(e.witnesses())}});
    err << "ginv: hypothesis not met: " << e.what() << "\n";
    return kExitHypothesisNotMet;
  } catch (const InvariantViolation& e) {
    return report_violation(out, err, inv, e.assertion(), e.counterexample());
  } catch (const InputError& e) {
    err << "ginv: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PreconditionError& e) {
    err << "ginv: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DimensionError& e) {
    err << "ginv: " << e.what() << "\n";
    return kExitInputError;
  } catch (const FieldError& e) {
    err << "ginv: " << e.what() << "\n";
    return kExitInputError;
  }
}

const Matrix& square(const InputDocument& doc, const std::string& name) {
  const Matrix& m = doc.at(name);
  if (!m.is_square()) throw InputError("matrix \"" + name + "\" must be square");
  return m;
}

void require_same_size(const Matrix& a, const Matrix& b, const std::string& an, const std::string& bn) {
  if (a.rows() != b.rows()) throw InputError("matrices \"" + an + "\" and \"" + bn + "\" differ in size");
}

std::string quote_args(const std::vector<std::pair<std::string, std::string>>& flags) {
  std::string out;
  for (const auto& [flag, value] : flags) out += " --" + flag + " " + value;
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const char* seed_override) {
  CLI::App app{"Exact generalized, group and Drazin inverses with perturbation and block formulas", "ginv"};
  app.require_subcommand(1);

  std::string file;
  std::string name_a, name_b, name_c, name_d, name_aplus, name_da, name_abar, name;
  std::string kind;
  std::optional<std::size_t> l_opt, k_opt;
  bool anti_diagonal = false, simplified = false;
  std::string star;

  auto* inverse_cmd = app.add_subcommand("ginv", "{1}-, {1,2}-, group or Drazin inverse of one matrix");
  inverse_cmd->add_option("FILE", file)->required();
  inverse_cmd->add_option("--name", name)->required();
  inverse_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember({"one", "reflexive", "group", "drazin"}));

  auto* reflexive_cmd = app.add_subcommand("lemma23", "group inverse from a {1,2}-inverse");
  reflexive_cmd->add_option("FILE", file)->required();
  reflexive_cmd->add_option("--a", name_a)->required();
  reflexive_cmd->add_option("--aplus", name_aplus)->required();

  auto* stable_cmd = app.add_subcommand("check-stable", "the six stable-perturbation conditions");
  stable_cmd->add_option("FILE", file)->required();
  stable_cmd->add_option("--a", name_a)->required();
  stable_cmd->add_option("--da", name_da)->required();
  stable_cmd->add_option("--aplus", name_aplus, "{1,2}-inverse of a (default: canonical)");

  auto* perturb_cmd = app.add_subcommand("perturb", "group inverse of a + da");
  perturb_cmd->add_option("FILE", file)->required();
  perturb_cmd->add_option("--a", name_a)->required();
  perturb_cmd->add_option("--da", name_da)->required();

  auto* kcheck_cmd = app.add_subcommand("k-check", "K(a, abar) equivalences and the phi implication");
  kcheck_cmd->add_option("FILE", file)->required();
  kcheck_cmd->add_option("--a", name_a)->required();
  kcheck_cmd->add_option("--abar", name_abar)->required();

  auto* drazin_cmd = app.add_subcommand("drazin-perturb", "Drazin inverse of b from that of a");
  drazin_cmd->add_option("FILE", file)->required();
  drazin_cmd->add_option("--a", name_a)->required();
  drazin_cmd->add_option("--b", name_b)->required();
  drazin_cmd->add_option("--l", l_opt, "power of a (default: max(ind(a), 1))");
  drazin_cmd->add_option("--k", k_opt, "power of b (default: max(ind(b), 1))");

  auto* block_cmd = app.add_subcommand("block", "group inverse of a 2 x 2 block matrix [[d, b], [c, 0]]");
  block_cmd->add_option("FILE", file)->required();
  block_cmd->add_option("--d", name_d);
  block_cmd->add_option("--b", name_b)->required();
  block_cmd->add_option("--c", name_c);
  auto* anti_flag = block_cmd->add_flag("--anti-diagonal", anti_diagonal);
  auto* simple_flag = block_cmd->add_flag("--simplified", simplified);
  auto* star_opt = block_cmd->add_option("--star", star, "[[p p*, p], [p, 0]] (pp) or [[p* p, p], [p, 0]] (ps), p = --b")
                       ->check(CLI::IsMember({"pp", "ps"}));
  anti_flag->excludes(simple_flag)->excludes(star_opt);
  simple_flag->excludes(star_opt);

  std::string suite = "all";
  std::string field_name = "GF(7)";
  std::size_t dim = 4;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  bool fixed_dim = false;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "seeded property checks");
  fuzz_cmd->add_option("--suite", suite);
  fuzz_cmd->add_option("--field", field_name, "Q or GF(p)");
  fuzz_cmd->add_option("--dim", dim, "largest dimension");
  fuzz_cmd->add_option("--trials", trials);
  fuzz_cmd->add_option("--seed", seed);
  fuzz_cmd->add_flag("--fixed-dim", fixed_dim, "use --dim for every trial");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ginv: " << e.what() << "\n";
    return kExitInputError;
  }

  if (*fuzz_cmd) {
    try {
      FuzzOptions options;
      options.field = parse_field_name(field_name);
      options.dim = dim;
      options.trials = trials;
      options.seed = seed;
      options.fixed_dim = fixed_dim;
      if (seed_override != nullptr && *seed_override != '\0') {
        const std::string text = seed_override;
        std::size_t used = 0;
        try {
          options.seed = std::stoull(text, &used, 0);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != text.size()) throw InputError("GINV_SEED is not an unsigned integer: " + text);
      }
      const FuzzReport report = run_fuzz(suite, options);
      out << serialize(report);
      if (!report.ok()) {
        err << "ginv: " << report.failures.size() << " of " << report.trials << " trials failed\n";
        return kExitInvariantViolation;
      }
      return kExitOk;
    } catch (const Error& e) {
      err << "ginv: " << e.what() << "\n";
      return kExitInputError;
    }
  }

  InputDocument doc;
  try {
    doc = load(file);
  } catch (const Error& e) {
    err << "ginv: " << e.what() << "\n";
    return kExitInputError;
  }

  Invocation inv;
  inv.field = doc.field;
  const auto input = [&](const std::string& flag_name, const std::string& matrix_name) -> const Matrix& {
    const Matrix& m = square(doc, matrix_name);
    inv.inputs.emplace_back(matrix_name, m);
    (void)flag_name;
    return m;
  };
  const auto replay = [&](const std::string& cmd, const std::vector<std::pair<std::string, std::string>>& flags) {
    inv.command = cmd;
    inv.replay = "ginv " + cmd + " FILE" + quote_args(flags);
  };

  if (*inverse_cmd) {
    replay("ginv", {{"name", name}, {"kind", kind}});
    return execute(out, err, inv, [&] {
      const Matrix& a = input("name", name);
      Outcome o;
      if (kind == "one") {
        const Matrix x = one_inverse(a);
        o.oracle_agrees = is_one_inverse(a, x);
        o.checks.push_back({"a x a = a", o.oracle_agrees});
        o.result["inverse"] = matrix_to_json(x);
      } else if (kind == "reflexive") {
        const Matrix x = reflexive_ginv(a).value;
        o.oracle_agrees = is_reflexive_inverse(a, x);
        o.checks.push_back({"a x a = a and x a x = x", o.oracle_agrees});
        o.result["inverse"] = matrix_to_json(x);
      } else if (kind == "group") {
        const auto g = group_inverse(a);
        const std::size_t r1 = rank(a);
        const std::size_t r2 = rank(a * a);
        if (!g) {
          throw HypothesisNotMet("rank(a) = rank(a^2)",
                                 "rank(a) = " + std::to_string(r1) + ", rank(a^2) = " + std::to_string(r2),
                                 {{"rank(a) = rank(a^2)", false}});
        }
        o.checks = g->checks;
        o.oracle_agrees = g->oracle_agrees;
        o.result["inverse"] = matrix_to_json(g->inverse);
        o.result["index"] = g->index;
      } else {
        const GroupInverseCertificate d = drazin_inverse(a);
        o.checks = d.checks;
        o.oracle_agrees = d.oracle_agrees;
        o.result["inverse"] = matrix_to_json(d.inverse);
        o.result["index"] = d.index;
      }
      return o;
    });
  }

  if (*reflexive_cmd) {
    replay("lemma23", {{"a", name_a}, {"aplus", name_aplus}});
    return execute(out, err, inv, [&] {
      const Matrix& a = input("a", name_a);
      const Matrix& aplus = input("aplus", name_aplus);
      require_same_size(a, aplus, name_a, name_aplus);
      const GroupInverseCertificate cert = group_from_reflexive(a, {aplus});
      Outcome o;
      o.checks = cert.checks;
      o.oracle_agrees = cert.oracle_agrees;
      o.result["a_sharp"] = matrix_to_json(cert.inverse);
      o.result["s"] = matrix_to_json(aplus * a + a * aplus - a.one());
      return o;
    });
  }

  if (*stable_cmd) {
    std::vector<std::pair<std::string, std::string>> flags{{"a", name_a}, {"da", name_da}};
    if (!name_aplus.empty()) flags.emplace_back("aplus", name_aplus);
    replay("check-stable", flags);
    return execute(out, err, inv, [&] {
      const Matrix& a = input("a", name_a);
      const Matrix& da = input("da", name_da);
      require_same_size(a, da, name_a, name_da);
      Matrix aplus = name_aplus.empty() ? reflexive_ginv(a).value : input("aplus", name_aplus);
      require_same_size(a, aplus, name_a, "aplus");
      const StableCheckReport report = stable_checks(a, aplus, da);
      Outcome o;
      static const char* const kNames[6] = {
          "(1 + a+ da)^-1 a+ is a {1,2}-inverse of abar",
          "abar R cap (1 - a a+) R = {0}",
          "abar (1 + a+ da)^-1 (1 - a+ a) = 0",
          "(1 - a a+)(1 + da a+)^-1 abar = 0",
          "(1 - a a+) da (1 - a+ a) = (1 - a a+) da (1 + a+ da)^-1 a+ da (1 - a+ a)",
          "R abar cap R (1 - a+ a) = {0}",
      };
      json conditions = json::array();
      for (std::size_t i = 0; i < 6; ++i) {
        conditions.push_back(report.conditions[i]);
        o.checks.push_back({kNames[i], report.conditions[i]});
      }
      o.result["conditions"] = conditions;
      o.result["aplus"] = matrix_to_json(aplus);
      o.result["abar_plus"] = report.abar_plus ? matrix_to_json(*report.abar_plus) : json(nullptr);
      o.oracle_agrees = report.all_equal();
      if (!o.oracle_agrees) o.violated = "the six stable-perturbation conditions disagree";
      return o;
    });
  }

  if (*perturb_cmd) {
    replay("perturb", {{"a", name_a}, {"da", name_da}});
    return execute(out, err, inv, [&] {
      const Matrix& a = input("a", name_a);
      const Matrix& da = input("da", name_da);
      require_same_size(a, da, name_a, name_da);
      const GroupInverseCertificate cert = perturbed_group_inverse(a, da);
      const PerturbationContext ctx = build_context(a, da);
      Outcome o;
      o.checks = cert.checks;
      o.oracle_agrees = cert.oracle_agrees;
      o.result["abar_sharp"] = matrix_to_json(cert.inverse);
      o.result["a_sharp"] = matrix_to_json(ctx.a_sharp);
      o.result["phi"] = matrix_to_json(ctx.phi);
      o.result["B"] = matrix_to_json(ctx.big_b);
      o.result["C"] = matrix_to_json(ctx.c_corr);
      o.result["D"] = matrix_to_json(ctx.d_main);
      return o;
    });
  }

  if (*kcheck_cmd) {
    replay("k-check", {{"a", name_a}, {"abar", name_abar}});
    return execute(out, err, inv, [&] {
      const Matrix& a = input("a", name_a);
      const Matrix& abar = input("abar", name_abar);
      require_same_size(a, abar, name_a, name_abar);
      const KEquivalenceReport report = k_equivalence_checks(a, abar);
      const bool implication = k_implies_phi_invertible(a, abar);
      Outcome o;
      o.checks = {{"direct-sum splittings", report.splittings},
                  {"K invertible", report.k_invertible},
                  {"trivial intersections and 1 + da a^# invertible", report.intersections},
                  {"K invertible implies phi invertible", implication}};
      o.result["splittings"] = report.splittings;
      o.result["k_invertible"] = report.k_invertible;
      o.result["intersections"] = report.intersections;
      o.result["K"] = matrix_to_json(report.k);
      o.result["K_inverse"] = report.k_inverse ? matrix_to_json(*report.k_inverse) : json(nullptr);
      o.result["abar_plus"] = report.abar_plus ? matrix_to_json(*report.abar_plus) : json(nullptr);
      o.oracle_agrees = report.agree() && implication;
      if (!report.agree()) o.violated = "splittings, K invertible and intersections disagree";
      else if (!implication) o.violated = "K invertible but phi singular";
      return o;
    });
  }

  if (*drazin_cmd) {
    return execute(out, err, inv, [&] {
      const Matrix& a = input("a", name_a);
      const Matrix& b = input("b", name_b);
      require_same_size(a, b, name_a, name_b);
      const std::size_t l = l_opt.value_or(std::max<std::size_t>(drazin_index(a), 1));
      const std::size_t k = k_opt.value_or(std::max<std::size_t>(drazin_index(b), 1));
      replay("drazin-perturb", {{"a", name_a}, {"b", name_b}, {"l", std::to_string(l)}, {"k", std::to_string(k)}});
      DrazinPerturbationTrace trace;
      const GroupInverseCertificate cert = drazin_perturbation(a, b, l, k, &trace);
      Outcome o;
      o.checks = cert.checks;
      o.oracle_agrees = cert.oracle_agrees;
      o.result["b_drazin"] = matrix_to_json(cert.inverse);
      o.result["index_b"] = cert.index;
      o.result["l"] = l;
      o.result["k"] = k;
      o.result["E"] = matrix_to_json(trace.e);
      o.result["Z"] = matrix_to_json(trace.z);
      o.result["W"] = matrix_to_json(trace.w);
      o.result["phi_at_power"] = matrix_to_json(trace.phi_sub);
      o.result["W_equals_phi"] = trace.w == trace.phi_sub;
      return o;
    });
  }

  // block
  std::vector<std::pair<std::string, std::string>> flags;
  if (!name_d.empty()) flags.emplace_back("d", name_d);
  flags.emplace_back("b", name_b);
  if (!name_c.empty()) flags.emplace_back("c", name_c);
  std::string suffix;
  if (anti_diagonal) suffix = " --anti-diagonal";
  if (simplified) suffix = " --simplified";
  if (!star.empty()) suffix = " --star " + star;
  replay("block", flags);
  inv.replay += suffix;
  return execute(out, err, inv, [&] {
    BlockGroupInverse r;
    if (!star.empty()) {
      r = star_idempotent_group_inverse(input("b", name_b), star == "pp" ? StarVariant::PPStar : StarVariant::PStarP);
    } else {
      if (name_c.empty()) throw InputError("--c is required");
      const Matrix& b = input("b", name_b);
      const Matrix& c = input("c", name_c);
      require_same_size(b, c, name_b, name_c);
      if (anti_diagonal) {
        r = anti_diagonal_group_inverse(b, c);
      } else {
        if (name_d.empty()) throw InputError("--d is required");
        const Matrix& d = input("d", name_d);
        require_same_size(b, d, name_b, name_d);
        r = simplified ? simplified_anti_triangular({d, b, c}) : anti_triangular_group_inverse({d, b, c});
      }
    }
    Outcome o;
    o.checks = r.certificate.checks;
    o.oracle_agrees = r.certificate.oracle_agrees;
    o.result["blocks"] = {{"top_left", matrix_to_json(r.blocks[0])},
                          {"top_right", matrix_to_json(r.blocks[1])},
                          {"bottom_left", matrix_to_json(r.blocks[2])},
                          {"bottom_right", matrix_to_json(r.blocks[3])}};
    o.result["matrix"] = matrix_to_json(r.matrix);
    o.result["inverse"] = matrix_to_json(r.certificate.inverse);
    return o;
  });
}

}  // namespace ginv
