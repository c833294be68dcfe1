// Command-line front end: runs axiom suites over the shipped dependent-adder
// instances, evaluates one-off objects from fixture files, and lists the
// instance/axiom catalog.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "depsum/runner.hpp"

using namespace depsum;

namespace {

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open output path: " << out_path << "\n";
    return 3;
  }
  out << text;
  return 0;
}

int cmd_check(const RunConfig& config) {
  Report report = run_report(config);
  std::string rendered =
      config.format == "json" ? report.to_json().dump(2) + "\n" : report.to_text();
  int rc = write_output(rendered, config.out_path);
  if (rc) return rc;
  return report.passed() ? 0 : 1;
}

int cmd_list() {
  for (const auto& info : instance_catalog_info()) {
    std::cout << info.name << ": ";
    if (info.name == "set") {
      std::cout << "left module over sets (étalé sums); axioms:";
    } else {
      std::cout << (info.commutative ? "commutative" : "non-commutative")
                << (info.has_zero ? ", zero object" : ", no zero object") << "; axioms:";
    }
    for (const auto& ax : info.axioms) std::cout << " " << ax;
    std::cout << "\n";
  }
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read fixture: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// fixture lines: `alpha: w` then `piece: <cut> -> <value>` per segment
int eval_ord_sum(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfOrdinal alpha;
  StepFamily fam;
  bool have_alpha = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("alpha:", 0) == 0) {
      alpha = cnf_parse(line.substr(6));
      fam.domain = alpha;
      have_alpha = true;
    } else if (line.rfind("piece:", 0) == 0) {
      auto arrow = line.find("->");
      if (arrow == std::string::npos)
        throw std::invalid_argument("ord fixture: piece needs `cut -> value`");
      fam.pieces.push_back({cnf_parse(line.substr(6, arrow - 6)),
                            cnf_parse(line.substr(arrow + 2))});
    } else {
      throw std::invalid_argument("ord fixture: unrecognized line: " + line);
    }
  }
  if (!have_alpha) throw std::invalid_argument("ord fixture: missing alpha");
  std::cout << cnf_to_string(ord_sum(alpha, fam)) << "\n";
  return 0;
}

int eval_faulhaber(const std::string& text) {
  std::string digits;
  for (char c : text)
    if (c >= '0' && c <= '9') digits += c;
  if (digits.empty()) throw std::invalid_argument("faulhaber fixture: expected a degree");
  int d = std::stoi(digits);
  std::cout << faulhaber_poly(d).to_string_common_den() << "\n";
  return 0;
}

int eval_oplax(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CatFamily fam;
  fam.index = cat_from_json(j.at("index"));
  for (const auto& jf : j.at("fibers")) fam.fibers.push_back(cat_from_json(jf));
  for (const auto& ja : j.at("actions")) {
    int a = static_cast<int>(fam.actions.size());
    const auto& am = fam.index.mors[static_cast<std::size_t>(a)];
    FinFunctor fn{fam.fiber(am.src), fam.fiber(am.tgt), ja.at("obj").get<std::vector<int>>(),
                  ja.at("mor").get<std::vector<int>>()};
    fam.actions.push_back(fn);
  }
  auto col = oplax_colim(fam.index, fam);
  std::cout << cat_to_json(col.total).dump(2) << "\n";
  return 0;
}

int eval_etale(const std::string& text) {
  Presheaf f = presheaf_from_json(nlohmann::json::parse(text));
  EtaleSpace et = etale(f);
  nlohmann::json out = fintop_to_json(et.space);
  out["germs"] = nlohmann::json::array();
  for (const auto& [x, s] : et.point_of) out["germs"].push_back({{"point", x}, {"germ", s}});
  std::cout << out.dump(2) << "\n";
  return 0;
}

int eval_product(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::string inst = j.at("instance").get<std::string>();
  std::string xs = j.at("x").get<std::string>();
  std::string ys = j.at("y").get<std::string>();
  if (inst == "nat") {
    std::cout << product(NatAdder{}, std::stoll(xs), std::stoll(ys)) << "\n";
  } else if (inst == "int") {
    std::cout << product(IntAdder{}, std::stoll(xs), std::stoll(ys)) << "\n";
  } else if (inst == "ord") {
    std::cout << cnf_to_string(product(OrdAdder{}, cnf_parse(xs), cnf_parse(ys))) << "\n";
  } else if (inst == "monoid") {
    MonoidAdder a;
    std::cout << a.show_elem(product(a, xs, ys)) << "\n";
  } else {
    throw std::invalid_argument("product fixture: unsupported instance " + inst);
  }
  return 0;
}

int cmd_eval(const std::string& kind, const std::string& fixture) {
  std::string text = read_file(fixture);
  if (kind == "ord-sum") return eval_ord_sum(text);
  if (kind == "faulhaber") return eval_faulhaber(text);
  if (kind == "oplax-colim") return eval_oplax(text);
  if (kind == "etale") return eval_etale(text);
  if (kind == "product") return eval_product(text);
  throw std::invalid_argument("unknown eval kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dependent-adder law checker"};
  app.require_subcommand(1);

  RunConfig config;
  auto* check = app.add_subcommand("check", "run axiom suites");
  check->add_option("--instance", config.instances, "instance names (repeatable)")
      ->check(CLI::IsMember(instance_names()));
  check->add_option("--axiom", config.axioms, "axiom names or 'all' (repeatable)");
  check->add_option("--cases", config.cases, "cases per suite")->check(CLI::PositiveNumber);
  check->add_option("--seed", config.seed, "base seed");
  check->add_option("--tol", config.tol, "tolerance for analytic instances")
      ->check(CLI::PositiveNumber);
  check->add_option("--format", config.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  check->add_option("--out", config.out_path, "write the report to a file");

  std::string eval_kind, fixture_path;
  auto* eval = app.add_subcommand("eval", "evaluate a fixture");
  eval->add_option("kind", eval_kind, "ord-sum | faulhaber | oplax-colim | etale | product")
      ->required();
  eval->add_option("--fixture", fixture_path, "fixture file")->required();

  auto* list = app.add_subcommand("list", "list instances and applicable axioms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) {
      if (config.instances.empty()) config.instances = instance_names();
      return cmd_check(config);
    }
    if (eval->parsed()) return cmd_eval(eval_kind, fixture_path);
    if (list->parsed()) return cmd_list();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
