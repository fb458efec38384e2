#include "prevcalc/document.hpp"
#include "prevcalc/lawlab.hpp"
#include "prevcalc/polarity.hpp"
#include "prevcalc/shadow.hpp"
#include "prevcalc/transforms.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace prevcalc;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PrevisionDocument load_prevision(const std::string& path) {
  json doc = read_document_file(path);
  try {
    return prevision_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Prevision load(const std::string& path) { return load_prevision(path).prevision; }

Point cli_point(const std::string& text, const std::string& flag) {
  try {
    return parse_point(text);
  } catch (const std::exception& e) {
    throw ParseError(flag + ": " + e.what());
  }
}

Rat cli_rat(const std::string& text, const std::string& flag) {
  try {
    return parse_rat(text);
  } catch (const std::exception& e) {
    throw ParseError(flag + ": " + e.what());
  }
}

Flavor cli_flavor(const std::string& text) {
  try {
    return parse_flavor(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("--flavor: ") + e.what());
  }
}

Flavor resolve_flavor(const std::string& flag, const PrevisionDocument& doc) {
  if (!flag.empty()) return cli_flavor(flag);
  return doc.flavor.value_or(Flavor::Plain);
}

void print_json(const json& j) { std::cout << dump_document(j); }

json wrapper_json(const QPredSub& q) {
  return {{"version", kDocumentVersion}, {"kind", "nim"}, {"flavor", to_string(q.flavor)}, {"canonical", prevision_to_json(q.canonical)}};
}

json wrapper_json(const CPredSuper& c) {
  json j = {{"version", kDocumentVersion}, {"kind", "qus"}, {"flavor", to_string(c.flavor)}, {"n", c.n}, {"top", c.is_top()}};
  if (!c.is_top()) j["canonical"] = prevision_to_json(*c.canonical);
  return j;
}

std::string flags_text(const ClassFlags& f) {
  auto b = [](bool x) { return x ? "true" : "false"; };
  return std::string("sublinear: ") + b(f.sublinear) + "\nsuperlinear: " + b(f.superlinear) + "\nsubnormalized: " +
         b(f.subnormalized) + "\nnormalized: " + b(f.normalized) + "\n";
}

struct Args {
  std::string p_file, f_file, s_file, q_file, a_file, b_file, t_file, hs_file, poset_file, at_file;
  std::string at, below, flavor, which, id, mutant = "none";
  std::uint64_t seed = 42;
  std::size_t trials = 50, n = 2;
  bool as_json = false, timing = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus of previsions on finite spaces"};
  app.require_subcommand(1);
  Args a;

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a prevision at points");
  eval_cmd->add_option("-P", a.p_file, "Prevision document")->required();
  eval_cmd->add_option("--at", a.at, "Point, e.g. \"1,1/2\"");
  eval_cmd->add_option("--at-file", a.at_file, "Points document");

  auto* check_cmd = app.add_subcommand("check", "Print classification flags");
  check_cmd->add_option("-P", a.p_file, "Prevision document")->required();
  check_cmd->add_flag("--json", a.as_json, "Machine-readable output");

  auto* compare_cmd = app.add_subcommand("compare", "Compare two previsions pointwise");
  compare_cmd->add_option("A", a.a_file, "First prevision document")->required();
  compare_cmd->add_option("B", a.b_file, "Second prevision document")->required();
  compare_cmd->add_flag("--json", a.as_json, "Machine-readable output");

  auto* transform_cmd = app.add_subcommand("transform", "minP, supP, nimP or qusP");
  transform_cmd->add_option("which", a.which, "min | sup | nim | qus")->required()->check(CLI::IsMember({"min", "sup", "nim", "qus"}));
  transform_cmd->add_option("-S", a.s_file, "Smyth or Hoare document (min, sup)");
  transform_cmd->add_option("-P", a.p_file, "Prevision document (nim, qus)");
  transform_cmd->add_option("--flavor", a.flavor, "plain | subnorm | norm (default: the -P/-p document, else plain)");

  auto* member_cmd = app.add_subcommand("member", "Membership in nimP(P) or qusP(P)");
  member_cmd->add_option("which", a.which, "nim | qus")->required()->check(CLI::IsMember({"nim", "qus"}));
  member_cmd->add_option("-P", a.p_file, "Canonical prevision document")->required();
  member_cmd->add_option("-F", a.f_file, "Candidate prevision document")->required();
  member_cmd->add_option("--flavor", a.flavor, "plain | subnorm | norm (default: the -P/-p document, else plain)");

  auto* sandwich_cmd = app.add_subcommand("sandwich", "Linear prevision between a superlinear and a sublinear one");
  sandwich_cmd->add_option("-q", a.q_file, "Superlinear prevision document")->required();
  sandwich_cmd->add_option("-p", a.p_file, "Sublinear prevision document")->required();
  sandwich_cmd->add_option("--flavor", a.flavor, "plain | subnorm | norm (default: the -P/-p document, else plain)");

  auto* witness_cmd = app.add_subcommand("witness", "Tight sublinear or corner superlinear witness");
  witness_cmd->add_option("which", a.which, "tight-sub | corner-super")->required()->check(CLI::IsMember({"tight-sub", "corner-super"}));
  witness_cmd->add_option("-P", a.p_file, "Prevision document")->required();
  witness_cmd->add_option("--at", a.at, "Strictly positive point")->required();
  witness_cmd->add_option("--below", a.below, "Level r with 0 < r < P(h) (corner-super)");
  witness_cmd->add_option("--flavor", a.flavor, "plain | subnorm | norm (default: the -P/-p document, else plain)");

  auto* criterion_cmd = app.add_subcommand("criterion", "Box union or diamond intersection criterion");
  criterion_cmd->add_option("which", a.which, "box | dia")->required()->check(CLI::IsMember({"box", "dia"}));
  criterion_cmd->add_option("-P", a.p_file, "Prevision document")->required();
  criterion_cmd->add_option("--hs", a.hs_file, "Points document")->required();

  auto* mix_cmd = app.add_subcommand("mixrange", "Set of a with T >= a A + (1 - a) B");
  mix_cmd->add_option("-T", a.t_file, "Upper prevision document")->required();
  mix_cmd->add_option("-A", a.a_file, "First prevision document")->required();
  mix_cmd->add_option("-B", a.b_file, "Second prevision document")->required();

  auto* shadow_cmd = app.add_subcommand("shadow", "Shadow constructions");
  shadow_cmd->add_option("which", a.which, "stable | gauge | subnorm-below | norm-between")
      ->required()
      ->check(CLI::IsMember({"stable", "gauge", "subnorm-below", "norm-between"}));
  shadow_cmd->add_option("-P", a.p_file, "Prevision document")->required();
  shadow_cmd->add_option("-F", a.f_file, "Bound F0 (subnorm-below, norm-between)");

  auto* hyper_cmd = app.add_subcommand("hyper", "Finite hyperspace polarity");
  hyper_cmd->add_option("which", a.which, "verify")->required()->check(CLI::IsMember({"verify"}));
  hyper_cmd->add_option("--poset", a.poset_file, "Poset document")->required();
  hyper_cmd->add_flag("--json", a.as_json, "Machine-readable output");

  auto* laws_cmd = app.add_subcommand("laws", "Randomized law suite");
  laws_cmd->add_option("--seed", a.seed, "Seed");
  laws_cmd->add_option("--trials", a.trials, "Trials per law");
  laws_cmd->add_option("--n", a.n, "Dimension (1..3)");
  laws_cmd->add_option("--mutant", a.mutant, "none | minp-as-max | no-shadow-closure | no-gamma-ray");
  laws_cmd->add_flag("--json", a.as_json, "Machine-readable output");
  laws_cmd->add_flag("--timing", a.timing, "Include runtimes");

  auto* example_cmd = app.add_subcommand("example", "Reproduce a worked counterexample");
  example_cmd->add_option("id", a.id, "qbox-inf | qbox-plus | hdia-sup | hdia-plus")->required();
  example_cmd->add_flag("--json", a.as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed()) {
      if (!a.at.empty() == !a.at_file.empty()) throw UsageError("eval: give exactly one of --at and --at-file");
      Prevision p = load(a.p_file);
      std::vector<Point> pts = a.at.empty() ? points_from_json(read_document_file(a.at_file))
                                            : std::vector<Point>{cli_point(a.at, "--at")};
      for (const auto& h : pts) {
        require_dim(p.n(), h.size(), "eval");
        std::cout << eval(p, h).str() << "\n";
      }
    } else if (check_cmd->parsed()) {
      ClassFlags f = classify(load(a.p_file));
      if (a.as_json) {
        print_json({{"sublinear", f.sublinear}, {"superlinear", f.superlinear}, {"subnormalized", f.subnormalized},
                    {"normalized", f.normalized}});
      } else {
        std::cout << flags_text(f);
      }
    } else if (compare_cmd->parsed()) {
      Comparison c = compare(load(a.a_file), load(a.b_file));
      if (a.as_json) {
        json j = {{"order", to_string(c.order)}};
        if (c.p_above) j["a_above_at"] = point_to_json(*c.p_above);
        if (c.p_below) j["a_below_at"] = point_to_json(*c.p_below);
        print_json(j);
      } else {
        std::cout << to_string(c.order) << "\n";
        if (c.p_above) std::cout << "A > B at " << to_string(*c.p_above) << "\n";
        if (c.p_below) std::cout << "A < B at " << to_string(*c.p_below) << "\n";
      }
    } else if (transform_cmd->parsed()) {
      if (!a.flavor.empty()) cli_flavor(a.flavor);
      if (a.which == "min" || a.which == "sup") {
        if (a.s_file.empty()) throw UsageError("transform " + a.which + ": -S is required");
        json doc = read_document_file(a.s_file);
        Prevision p = a.which == "min" ? minP(smyth_from_json(doc)) : supP(hoare_from_json(doc));
        print_json(prevision_to_json(p));
      } else {
        if (a.p_file.empty()) throw UsageError("transform " + a.which + ": -P is required");
        PrevisionDocument doc = load_prevision(a.p_file);
        const Prevision& p = doc.prevision;
        Flavor fl = resolve_flavor(a.flavor, doc);
        if (a.which == "nim") {
          print_json(wrapper_json(nimP(p, fl)));
        } else {
          print_json(wrapper_json(qusP(p, fl)));
        }
      }
    } else if (member_cmd->parsed()) {
      PrevisionDocument doc = load_prevision(a.p_file);
      Flavor fl = resolve_flavor(a.flavor, doc);
      const Prevision& p = doc.prevision;
      Prevision f = load(a.f_file);
      bool in = a.which == "nim" ? member_nim(nimP(p, fl), f, fl) : member_qus(qusP(p, fl), f, fl);
      std::cout << (in ? "true" : "false") << "\n";
    } else if (sandwich_cmd->parsed()) {
      PrevisionDocument doc = load_prevision(a.p_file);
      Flavor fl = resolve_flavor(a.flavor, doc);
      SandwichResult r = sandwich(as_up_gen(load(a.q_file)), as_down_gen(doc.prevision), fl);
      if (const auto* w = std::get_if<LinearPrev>(&r)) {
        print_json(prevision_to_json(Prevision::linear(w->weights)));
      } else {
        std::cout << "domination fails at " << to_string(std::get<DominationFailure>(r).witness) << "\n";
      }
    } else if (witness_cmd->parsed()) {
      PrevisionDocument doc = load_prevision(a.p_file);
      Flavor fl = resolve_flavor(a.flavor, doc);
      const Prevision& p = doc.prevision;
      Point h = cli_point(a.at, "--at");
      if (a.which == "tight-sub") {
        print_json(prevision_to_json(tight_sublinear_witness(p, h, fl), fl));
      } else {
        if (a.below.empty()) throw UsageError("witness corner-super: --below is required");
        print_json(prevision_to_json(corner_superlinear_witness(p, h, cli_rat(a.below, "--below"), fl), fl));
      }
    } else if (criterion_cmd->parsed()) {
      Prevision p = load(a.p_file);
      std::vector<Point> hs = points_from_json(read_document_file(a.hs_file));
      if (a.which == "box") {
        BoxResult r = box_union_criterion(p, hs);
        if (const auto* h = std::get_if<BoxHolds>(&r)) {
          std::cout << "holds a=" << to_string(h->a) << " value=" << to_string(h->value) << "\n";
        } else {
          std::cout << "fails\n";
          print_json(prevision_to_json(std::get<BoxFails>(r).f));
        }
      } else {
        DiaResult r = dia_intersection_criterion(p, hs);
        if (const auto* h = std::get_if<DiaHolds>(&r)) {
          std::cout << "holds infimum=" << to_string(h->infimum) << "\n";
          print_json(prevision_to_json(h->f));
        } else {
          const auto& f = std::get<DiaFails>(r);
          std::cout << "fails a=" << to_string(f.a) << " value=" << to_string(f.value) << "\n";
        }
      }
    } else if (mix_cmd->parsed()) {
      std::cout << to_string(mix_dominance_range(load(a.t_file), load(a.a_file), load(a.b_file))) << "\n";
    } else if (shadow_cmd->parsed()) {
      Prevision p = load(a.p_file);
      if (a.which == "stable") {
        std::cout << (shadow_stable(p) ? "true" : "false") << "\n";
      } else if (a.which == "gauge") {
        print_json(prevision_to_json(shadow_gauge(p)));
      } else {
        if (a.f_file.empty()) throw UsageError("shadow " + a.which + ": -F is required");
        Prevision f0 = load(a.f_file);
        Prevision f = a.which == "subnorm-below" ? subnorm_superlinear_below(p, f0) : normalized_sublinear_between(p, f0);
        print_json(prevision_to_json(f));
      }
    } else if (hyper_cmd->parsed()) {
      FinitePoset poset = poset_from_json(read_document_file(a.poset_file));
      PolarityReport rep = verify_polarity_images(poset);
      if (a.as_json) {
        json ce = json::array();
        for (Subset s : rep.counterexample) ce.push_back(format_subset(s, poset.size()));
        print_json({{"pass", rep.pass}, {"failure", rep.failure}, {"counterexample", ce}, {"families_checked", rep.families_checked}});
      } else if (rep.pass) {
        std::cout << "pass (" << rep.families_checked << " families)\n";
      } else {
        std::cout << "fail: " << rep.failure << "\n";
        for (Subset s : rep.counterexample) std::cout << "  " << format_subset(s, poset.size()) << "\n";
      }
      return rep.pass ? 0 : 1;
    } else if (laws_cmd->parsed()) {
      Mutant m = parse_mutant(a.mutant);
      auto reports = run_law_suite(a.seed, a.trials, a.n, m);
      if (a.as_json) {
        json j = reports_to_json(reports, a.timing);
        j["seed"] = a.seed;
        j["trials"] = a.trials;
        j["n"] = a.n;
        j["mutant"] = to_string(m);
        print_json(j);
      } else {
        for (const auto& r : reports) {
          std::cout << (r.failures.empty() ? "PASS " : "FAIL ") << r.law << " " << r.passes << "/" << r.trials;
          if (a.timing) std::cout << " " << r.runtime_ms << " ms";
          std::cout << "\n";
          for (const auto& f : r.failures) {
            std::cout << "  trial " << f.trial << ": " << f.detail << "\n    inputs: " << f.inputs.dump() << "\n";
          }
        }
      }
      return all_pass(reports) ? 0 : 1;
    } else if (example_cmd->parsed()) {
      ExampleVerdict v = reproduce_example(a.id);
      if (a.as_json) {
        print_json(verdict_to_json(v));
      } else {
        std::cout << "example " << v.id << "\n";
        for (const auto& c : v.checks) {
          std::cout << (c.pass ? "  PASS " : "  FAIL ") << c.description << ": expected " << c.expected << ", computed "
                    << c.computed << "\n";
        }
        std::cout << (v.pass() ? "verdict: pass" : "verdict: fail") << "\n";
      }
      return v.pass() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EngineBoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
