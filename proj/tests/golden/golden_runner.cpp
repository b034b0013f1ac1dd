// Replays tests/golden/examples.json against the library and the CLI.
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ginv/block_forms.hpp"
#include "ginv/cli.hpp"
#include "ginv/core.hpp"
#include "ginv/fuzz.hpp"
#include "ginv/io.hpp"
#include "ginv/perturbation.hpp"

using nlohmann::json;
using namespace ginv;

namespace {

struct Mismatch {
  std::string what;
};

InputDocument document(const json& c) {
  return parse_input(json{{"field", c["field"]}, {"matrices", c["inputs"]}}.dump());
}

Matrix expected(const json& field, const json& grid) {
  return parse_input(json{{"field", field}, {"matrices", {{"x", grid}}}}.dump()).at("x");
}

void same(const Matrix& got, const json& c, const char* key) {
  const json& want = c["expect"][key];
  if (!(got == expected(c["field"], want))) {
    throw Mismatch{std::string(key) + ": got " + matrix_to_json(got).dump() + ", want " + want.dump()};
  }
}

void check(bool ok, const std::string& what) {
  if (!ok) throw Mismatch{what};
}

bool has(const json& c, const char* key) { return c["expect"].contains(key) && !c["expect"][key].is_null(); }

std::string write_temp(const json& c) {
  char path[] = "/tmp/ginv_golden_XXXXXX";
  const int fd = mkstemp(path);
  check(fd >= 0, "cannot create temporary file");
  const std::string text = json{{"field", c["field"]}, {"matrices", c["inputs"]}}.dump();
  FILE* f = fdopen(fd, "w");
  std::fputs(text.c_str(), f);
  std::fclose(f);
  return path;
}

int run_args(const std::vector<std::string>& args, std::string& out_text) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  out_text = out.str();
  return code;
}

std::vector<std::string> fuzz_args(const json& c) {
  const json& p = c["params"];
  const json& f = c["field"];
  const std::string field = f.is_string() ? f.get<std::string>() : "GF(" + std::to_string(f["GF"].get<int>()) + ")";
  return {"fuzz", "--suite", p["suite"], "--field", field, "--dim", std::to_string(p["dim"].get<int>()),
          "--trials", std::to_string(p["trials"].get<int>()), "--seed", std::to_string(p["seed"].get<long>())};
}

const std::map<std::string, std::function<void(const json&)>>& handlers() {
  static const std::map<std::string, std::function<void(const json&)>> h{
      {"invert",
       [](const json& c) {
         const auto inv = invert(document(c).at("a"));
         check(inv.has_value() == has(c, "inverse"), "existence");
         if (inv) same(*inv, c, "inverse");
       }},
      {"drazin_index",
       [](const json& c) { check(drazin_index(document(c).at("a")) == c["expect"]["index"], "index"); }},
      {"full_rank_factorization",
       [](const json& c) {
         const InputDocument doc = document(c);
         const Matrix& a = doc.at("a");
         const RankFactorization f = full_rank_factorization(a);
         check(f.rank == c["expect"]["rank"], "rank");
         check(f.left * f.right == a, "F G = a");
         if (has(c, "left")) same(f.left, c, "left");
         if (has(c, "right")) same(f.right, c, "right");
       }},
      {"one_plus_ab_inverse",
       [](const json& c) {
         const InputDocument d = document(c);
         const auto r = one_plus_ab_inverse(d.at("a"), d.at("b"));
         check(r.has_value() == has(c, "outer"), "existence");
         if (r) same(r->outer, c, "outer");
       }},
      {"one_inverse",
       [](const json& c) {
         const InputDocument doc = document(c);
         const Matrix& a = doc.at("a");
         const Matrix x = one_inverse(a);
         check(is_one_inverse(a, x), "a x a = a");
         if (has(c, "value")) same(x, c, "value");
       }},
      {"reflexive_ginv",
       [](const json& c) {
         const InputDocument doc = document(c);
         const Matrix& a = doc.at("a");
         const Matrix x = reflexive_ginv(a).value;
         check(is_reflexive_inverse(a, x), "{1,2} axioms");
         if (has(c, "value")) same(x, c, "value");
       }},
      {"group_inverse",
       [](const json& c) {
         const auto g = group_inverse(document(c).at("a"));
         check(g.has_value() == has(c, "inverse"), "existence");
         if (g) same(g->inverse, c, "inverse");
       }},
      {"drazin_inverse",
       [](const json& c) {
         const GroupInverseCertificate d = drazin_inverse(document(c).at("a"));
         same(d.inverse, c, "inverse");
         check(d.index == c["expect"]["index"], "index");
       }},
      {"group_from_reflexive",
       [](const json& c) {
         const InputDocument d = document(c);
         const Matrix& a = d.at("a");
         const Matrix& ap = d.at("aplus");
         same(ap * a + a * ap - a.one(), c, "s");
         same(group_from_reflexive(a, {ap}).inverse, c, "inverse");
       }},
      {"split_group_inverse",
       [](const json& c) {
         const InputDocument d = document(c);
         const Matrix& p = d.at("p");
         same(p * d.at("a") * p + p * d.at("b") * (p.one() - p), c, "x");
         if (has(c, "inverse")) {
           same(split_group_inverse(p, d.at("a"), d.at("b")).inverse, c, "inverse");
           return;
         }
         bool refused = false;
         try {
           split_group_inverse(p, d.at("a"), d.at("b"));
         } catch (const HypothesisNotMet&) {
           refused = true;
         }
         check(refused, "expected the hypotheses to fail");
       }},
      {"stable_checks",
       [](const json& c) {
         const InputDocument d = document(c);
         const StableCheckReport r = stable_checks(d.at("a"), d.at("aplus"), d.at("da"));
         for (std::size_t i = 0; i < 6; ++i) {
           check(r.conditions[i] == c["expect"]["conditions"][i].get<bool>(), "condition " + std::to_string(i + 1));
         }
         check(r.abar_plus.has_value() == has(c, "abar_plus"), "abar_plus existence");
         if (r.abar_plus) same(*r.abar_plus, c, "abar_plus");
       }},
      {"build_context",
       [](const json& c) {
         const InputDocument d = document(c);
         const PerturbationContext ctx = build_context(d.at("a"), d.at("da"));
         same(ctx.phi, c, "phi");
         same(ctx.big_b, c, "big_b");
         same(ctx.c_corr, c, "c_corr");
         same(ctx.d_main, c, "d_main");
       }},
      {"ba_group_inverse",
       [](const json& c) {
         const InputDocument d = document(c);
         same(ba_group_inverse(build_context(d.at("a"), d.at("da"))).inverse, c, "inverse");
       }},
      {"perturbed_group_inverse",
       [](const json& c) {
         const InputDocument d = document(c);
         same(perturbed_group_inverse(d.at("a"), d.at("da")).inverse, c, "inverse");
       }},
      {"k_equivalence",
       [](const json& c) {
         const InputDocument d = document(c);
         const KEquivalenceReport r = k_equivalence_checks(d.at("a"), d.at("abar"));
         same(r.k, c, "k");
         check(r.splittings == c["expect"]["splittings"].get<bool>(), "splittings");
         check(r.k_invertible == c["expect"]["k_invertible"].get<bool>(), "k_invertible");
         check(r.intersections == c["expect"]["intersections"].get<bool>(), "intersections");
       }},
      {"dual_context",
       [](const json& c) {
         const InputDocument d = document(c);
         const DualPerturbationContext ctx = dual_context(d.at("a"), d.at("da"));
         same(ctx.e_corr, c, "e_corr");
         same(ctx.psi, c, "psi");
       }},
      {"k_implication",
       [](const json& c) {
         const InputDocument d = document(c);
         check(k_implies_phi_invertible(d.at("a"), d.at("abar")) == c["expect"]["holds"].get<bool>(), "implication");
       }},
      {"k_implication_sweep",
       [](const json& c) {
         FuzzOptions o;
         o.field = Field::prime(2);
         o.dim = 2;
         const FuzzReport r = run_fuzz("thm34", o);
         check(r.trials == c["expect"]["pairs"], "pair count " + std::to_string(r.trials));
         check(r.ok() == c["expect"]["holds"].get<bool>(), "sweep outcome");
       }},
      {"drazin_perturbation",
       [](const json& c) {
         const InputDocument d = document(c);
         DrazinPerturbationTrace trace;
         const GroupInverseCertificate r =
             drazin_perturbation(d.at("a"), d.at("b"), c["params"]["l"], c["params"]["k"], &trace);
         same(r.inverse, c, "inverse");
         same(trace.e, c, "e");
         if (has(c, "z")) same(trace.z, c, "z");
         if (has(c, "w")) same(trace.w, c, "w");
       }},
      {"anti_diagonal",
       [](const json& c) {
         const InputDocument d = document(c);
         same(anti_diagonal_group_inverse(d.at("b"), d.at("c")).certificate.inverse, c, "inverse");
       }},
      {"anti_triangular",
       [](const json& c) {
         const InputDocument d = document(c);
         same(anti_triangular_group_inverse({d.at("d"), d.at("b"), d.at("c")}).certificate.inverse, c, "inverse");
       }},
      {"simplified",
       [](const json& c) {
         const InputDocument d = document(c);
         same(simplified_anti_triangular({d.at("d"), d.at("b"), d.at("c")}).certificate.inverse, c, "inverse");
       }},
      {"star",
       [](const json& c) {
         const InputDocument d = document(c);
         const StarVariant v = c["params"]["variant"] == "pp" ? StarVariant::PPStar : StarVariant::PStarP;
         same(star_idempotent_group_inverse(d.at("p"), v).certificate.inverse, c, "inverse");
       }},
      {"parse",
       [](const json& c) {
         const std::string text = c["params"]["text"];
         if (c["expect"].contains("error")) {
           try {
             parse_input(text);
           } catch (const InputError& e) {
             check(std::string(e.what()) == c["expect"]["error"].get<std::string>(),
                   std::string("message: ") + e.what());
             return;
           }
           throw Mismatch{"parse succeeded"};
         }
         const InputDocument d = parse_input(text);
         check(document_to_json(d)["matrices"] == c["expect"]["matrices"], "matrices");
         check(parse_input(serialize(d)) == d, "round-trip");
         check(serialize(parse_input(serialize(d))) == serialize(d), "canonical");
       }},
      {"cli",
       [](const json& c) {
         const std::string path = write_temp(c);
         std::vector<std::string> args;
         for (const auto& a : c["params"]["args"]) args.push_back(a == "FILE" ? path : a.get<std::string>());
         std::string out;
         const int code = run_args(args, out);
         std::remove(path.c_str());
         check(code == c["expect"]["exit"], "exit code " + std::to_string(code));
         if (code != 0) return;
         const json r = json::parse(out);
         if (c["expect"].contains("oracle_agrees")) check(r["oracle_agrees"] == c["expect"]["oracle_agrees"], "oracle flag");
         for (const auto& [key, value] : c["expect"]["result"].items()) {
           check(r["result"][key] == value, key + ": " + r["result"][key].dump());
         }
       }},
      {"fuzz",
       [](const json& c) {
         std::string out;
         const int code = run_args(fuzz_args(c), out);
         check(code == c["expect"]["exit"], "exit code " + std::to_string(code));
         const json r = json::parse(out);
         check(r["trials"] == c["expect"]["trials"], "trials");
         check(r["failures"].size() == c["expect"]["failures"].get<std::size_t>(), "failures");
         if (c["expect"].contains("passes")) check(r["passes"] == c["expect"]["passes"], "passes");
       }},
      {"fuzz_twice",
       [](const json& c) {
         std::string first, second;
         run_args(fuzz_args(c), first);
         run_args(fuzz_args(c), second);
         check((first == second) == c["expect"]["identical"].get<bool>(), "reports differ");
       }},
  };
  return h;
}

}  // namespace

int main() {
  std::ifstream in(GINV_GOLDEN_FILE);
  if (!in) {
    std::cerr << "cannot open " << GINV_GOLDEN_FILE << "\n";
    return 2;
  }
  const json golden = json::parse(in);
  int failed = 0;
  int total = 0;
  for (const json& c : golden["cases"]) {
    ++total;
    const std::string name = c["op"].get<std::string>() + ": " + c["name"].get<std::string>();
    const auto it = handlers().find(c["op"]);
    try {
      if (it == handlers().end()) throw Mismatch{"unknown op"};
      it->second(c);
      std::cout << "ok    " << name << "\n";
    } catch (const Mismatch& m) {
      ++failed;
      std::cout << "FAIL  " << name << ": " << m.what << "\n";
    } catch (const std::exception& e) {
      ++failed;
      std::cout << "FAIL  " << name << ": exception " << e.what() << "\n";
    }
  }
  std::cout << (total - failed) << "/" << total << " golden cases passed\n";
  return failed == 0 ? 0 : 1;
}
