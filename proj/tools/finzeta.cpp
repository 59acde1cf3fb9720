#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "finzeta/catalog.hpp"
#include "finzeta/dimension.hpp"
#include "finzeta/evaluator.hpp"
#include "finzeta/relations.hpp"
#include "finzeta/verify.hpp"
#include "finzeta/words.hpp"
#include "json.hpp"

using namespace finzeta;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

constexpr int kMaxWeightFmzv = 12;
constexpr int kMaxWeightFes = 8;

void check_superbity(int l) {
  if (l < 1 || l > kMaxSuperbity) throw UsageError("--superbity must be in [1, " + std::to_string(kMaxSuperbity) + "]");
}

void check_weight(int w, Mode m, int lo = 1) {
  const int cap = m == Mode::fmzv ? kMaxWeightFmzv : kMaxWeightFes;
  if (w < lo || w > cap)
    throw UsageError("--weight must be in [" + std::to_string(lo) + ", " + std::to_string(cap) + "] in " +
                     mode_name(m) + " mode");
}

struct PrimeSelection {
  std::string range;
  std::size_t first = 0;
  u64 min_prime = 5;

  std::vector<u64> resolve() const {
    if (!range.empty() && first != 0) throw UsageError("use either --primes or --first, not both");
    std::vector<u64> ps;
    if (!range.empty()) {
      auto dots = range.find("..");
      if (dots == std::string::npos) throw UsageError("--primes expects a..b, got '" + range + "'");
      u64 a = 0, b = 0;
      try {
        std::size_t ua = 0, ub = 0;
        a = std::stoull(range.substr(0, dots), &ua);
        b = std::stoull(range.substr(dots + 2), &ub);
        if (ua != dots || ub != range.size() - dots - 2) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw UsageError("--primes expects integers a..b, got '" + range + "'");
      }
      if (a < 2 || a > b) throw UsageError("--primes needs 2 <= a <= b");
      if (b > 1000000) throw UsageError("--primes upper end too large (max 1000000)");
      ps = primes_in(a, b);
    } else {
      ps = first_primes(first == 0 ? 100 : first);
    }
    std::vector<u64> out;
    for (u64 p : ps)
      if (p >= min_prime) out.push_back(p);
    if (out.empty()) std::cerr << "warning: no primes left after the --min-prime filter; results are vacuous\n";
    return out;
  }
};

void add_prime_options(CLI::App* cmd, PrimeSelection& sel) {
  cmd->add_option("--primes", sel.range, "prime range a..b");
  cmd->add_option("--first", sel.first, "use the first N primes (default 100)");
  cmd->add_option("--min-prime", sel.min_prime, "drop primes below this bound")->capture_default_str();
}

unsigned default_jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

std::set<Family> parse_families(const std::string& csv, Mode mode) {
  if (csv.empty()) return default_families(mode);
  std::set<Family> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.insert(parse_family(tok));
  return out;
}

nlohmann::ordered_json ycomb_json(const YComb& c) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [w, x] : c.terms()) arr.push_back({{"coeff", format_rational(x)}, {"comp", w.to_ints()}});
  return arr;
}

void print_ycomb(const YComb& c) {
  for (const auto& [w, x] : c.terms()) std::cout << format_rational(x) << " (" << to_string(w) << ")\n";
}

void print_reports(const std::vector<Report>& reports, bool json, const std::string& title) {
  if (json) {
    nlohmann::ordered_json j;
    j["title"] = title;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    j["reports"] = std::move(arr);
    j["refuted"] = std::count_if(reports.begin(), reports.end(), [](const Report& r) { return r.refuted(); });
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::size_t refuted = 0, vacuous = 0;
  for (const auto& r : reports) {
    std::cout << status_name(r.status) << "  " << r.provenance << "  (checked " << r.primes_checked;
    if (!r.primes_skipped.empty()) std::cout << ", below guard " << r.primes_skipped.size();
    if (!r.primes_skipped_budget.empty()) std::cout << ", beyond Bernoulli cap " << r.primes_skipped_budget.size();
    std::cout << ")";
    if (r.corrected) std::cout << " [corrected]";
    if (r.conjectural) std::cout << " [conjectural]";
    std::cout << "\n";
    for (std::size_t i = 0; i < r.counterexamples.size() && i < 5; ++i) {
      const auto& c = r.counterexamples[i];
      std::cout << "    p=" << c.p << ": lhs " << c.lhs << ", rhs " << c.rhs << "\n";
    }
    if (r.counterexamples.size() > 5) std::cout << "    ... " << r.counterexamples.size() - 5 << " more\n";
    refuted += r.refuted();
    vacuous += r.status == Status::vacuous;
  }
  std::cout << title << ": " << reports.size() << " items, " << refuted << " refuted, " << vacuous << " vacuous\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite multiple zeta values and finite Euler sums"};
  app.require_subcommand(1);
  std::function<int()> action;

  // eval
  std::string e_comp;
  u64 e_prime = 0;
  int e_l = 1;
  bool e_star = false, e_json = false;
  long long e_n = -1;
  auto* eval = app.add_subcommand("eval", "H_{p-1}(s) mod p^l");
  eval->add_option("--comp", e_comp, "composition, e.g. 2,-1,3")->required();
  eval->add_option("--prime", e_prime, "prime p")->required();
  eval->add_option("--superbity", e_l, "l in [1,4]")->capture_default_str();
  eval->add_option("--n", e_n, "upper summation bound (default p-1)");
  eval->add_flag("--star", e_star, "star version");
  eval->add_flag("--json", e_json);
  eval->callback([&] {
    action = [&] {
      check_superbity(e_l);
      auto s = parse_composition(e_comp);
      PrimeContext ctx(e_prime, e_l);
      const u64 n = e_n < 0 ? e_prime - 1 : static_cast<u64>(e_n);
      Residue v = amhs(s, n, ctx, e_star);
      if (e_json) {
        nlohmann::ordered_json j{{"comp", s.to_ints()}, {"prime", e_prime}, {"superbity", e_l}, {"star", e_star},
                                 {"n", n},           {"modulus", ctx.modulus()}, {"value", std::to_string(v.value())}};
        std::cout << j.dump() << "\n";
      } else {
        std::cout << v.value() << "\n";
        ZetaSymbol z{s, e_star, e_l, 0};
        auto cf = closed_form_catalog(z);
        if (cf && n == e_prime - 1 && e_prime >= prime_guard(s)) {
          std::cout << "closed form: " << to_string(*cf) << " = "
                    << eval_closed_form(*cf, e_prime, e_l, Strictness::lenient).value() << "\n";
        }
      }
      return 0;
    };
  });

  // stuffle / shuffle
  std::vector<std::string> w_comps;
  bool w_json = false;
  auto* stf = app.add_subcommand("stuffle", "stuffle product of two words");
  auto* shf = app.add_subcommand("shuffle", "shuffle product of two words (in x-letters)");
  for (auto* cmd : {stf, shf}) {
    cmd->add_option("--comp", w_comps, "two compositions")->required()->expected(2);
    cmd->add_flag("--json", w_json);
  }
  auto word_pair = [&] { return std::make_pair(parse_composition(w_comps.at(0)), parse_composition(w_comps.at(1))); };
  stf->callback([&] {
    action = [&] {
      auto [u, v] = word_pair();
      YComb r = stuffle(u, v);
      if (w_json) std::cout << nlohmann::ordered_json{{"terms", ycomb_json(r)}}.dump() << "\n";
      else print_ycomb(r);
      return 0;
    };
  });
  shf->callback([&] {
    action = [&] {
      auto [u, v] = word_pair();
      YComb r = to_ycomb(shuffle(to_xword(u), to_xword(v)));
      if (w_json) std::cout << nlohmann::ordered_json{{"terms", ycomb_json(r)}}.dump() << "\n";
      else print_ycomb(r);
      return 0;
    };
  });

  // relations
  std::string r_family, r_mode = "fmzv";
  int r_weight = 0, r_l = 1;
  bool r_json = false;
  auto* rel = app.add_subcommand("relations", "generate one relation family");
  rel->add_option("--family", r_family, "stuffle|shuffle|reversal|vdual|phi|concat")->required();
  rel->add_option("--weight", r_weight)->required();
  rel->add_option("--superbity", r_l)->capture_default_str();
  rel->add_option("--mode", r_mode, "fmzv|fes")->capture_default_str();
  rel->add_flag("--json", r_json);
  rel->callback([&] {
    action = [&] {
      const Mode mode = parse_mode(r_mode);
      check_superbity(r_l);
      check_weight(r_weight, mode);
      const Family fam = parse_family(r_family);
      auto rels = generate(fam, r_weight, r_l, mode == Mode::fes);
      std::size_t checks = fam == Family::concat ? generate_product_checks(r_weight, mode == Mode::fes).size() : 0;
      if (r_json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : rels) arr.push_back(to_json(r));
        std::cout << nlohmann::ordered_json{{"relations", std::move(arr)}}.dump(2) << "\n";
      } else {
        for (const auto& r : rels) std::cout << to_string(r) << "    [" << r.provenance() << "]\n";
        std::cout << "# " << rels.size() << " relations";
        if (checks) std::cout << ", " << checks << " nonlinear checks not listed";
        std::cout << "\n";
      }
      return 0;
    };
  });

  // dim
  std::string d_mode = "fmzv", d_fams;
  int d_weight = 0, d_l = 1;
  bool d_json = false;
  auto* dim = app.add_subcommand("dim", "dimension upper bound from generated relations");
  dim->add_option("--weight", d_weight)->required();
  dim->add_option("--superbity", d_l)->capture_default_str();
  dim->add_option("--mode", d_mode, "fmzv|fes")->capture_default_str();
  dim->add_option("--families", d_fams, "comma-separated families (default depends on mode)");
  dim->add_flag("--json", d_json);
  dim->callback([&] {
    action = [&] {
      const Mode mode = parse_mode(d_mode);
      check_superbity(d_l);
      check_weight(d_weight, mode, 0);
      const auto fams = parse_families(d_fams, mode);
      DimensionResult r = dimension_bound(d_weight, d_l, mode, fams);
      if (d_json) {
        auto fj = nlohmann::ordered_json::array();
        for (Family f : fams) fj.push_back(family_name(f));
        nlohmann::ordered_json j{{"weight", r.weight},
                                 {"superbity", r.superbity},
                                 {"mode", mode_name(mode)},
                                 {"families", fj},
                                 {"symbols", r.targets},
                                 {"columns", r.columns},
                                 {"relations", r.relations},
                                 {"rank", r.rank},
                                 {"skipped_pairs", r.skipped_pairs},
                                 {"dim_upper_bound", r.dim},
                                 {"bound", "upper bound (symbolic)"}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "weight " << r.weight << ", superbity " << r.superbity << ", " << mode_name(mode) << "\n"
                  << "symbols: " << r.targets << "\n"
                  << "relations: " << r.relations << "\n"
                  << "rank: " << r.rank << "\n"
                  << "skipped stuffle lifts: " << r.skipped_pairs << "\n"
                  << "dimension: <= " << r.dim << " (upper bound, symbolic)\n";
      }
      return 0;
    };
  });

  // verify
  std::string v_file;
  PrimeSelection v_primes;
  unsigned v_jobs = default_jobs();
  bool v_json = false, v_unlimited = false;
  auto* ver = app.add_subcommand("verify", "check relations from a JSON file over primes");
  ver->add_option("--relation-file", v_file)->required();
  add_prime_options(ver, v_primes);
  ver->add_option("--jobs", v_jobs)->capture_default_str();
  ver->add_flag("--no-bernoulli-cap", v_unlimited, "evaluate beta beyond the Bernoulli cap");
  ver->add_flag("--json", v_json);
  ver->callback([&] {
    action = [&] {
      std::ifstream in(v_file);
      if (!in) throw UsageError("cannot open relation file '" + v_file + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("relation file is not valid JSON: ") + e.what());
      }
      auto rels = relations_from_json(j);
      std::vector<CheckItem> items;
      for (const auto& r : rels) items.push_back(make_item(r));
      auto reports = sweep(items, v_primes.resolve(), {v_unlimited ? Budget::unlimited : Budget::capped, v_jobs});
      print_reports(reports, v_json, v_file);
      return exit_code(reports);
    };
  });

  // table
  std::string t_name;
  PrimeSelection t_primes;
  unsigned t_jobs = default_jobs();
  bool t_json = false, t_raw = false, t_list = false, t_unlimited = false;
  auto* tab = app.add_subcommand("table", "verify a built-in table over primes");
  tab->add_option("--name", t_name);
  tab->add_flag("--list", t_list, "list table names");
  add_prime_options(tab, t_primes);
  tab->add_option("--jobs", t_jobs)->capture_default_str();
  tab->add_flag("--no-corrections", t_raw, "check flagged entries in their printed form");
  tab->add_flag("--no-bernoulli-cap", t_unlimited, "evaluate beta beyond the Bernoulli cap");
  tab->add_flag("--json", t_json);
  tab->callback([&] {
    action = [&] {
      if (t_list) {
        for (const auto& n : table_names()) std::cout << n << " (" << table(n).size() << " entries)\n";
        return 0;
      }
      if (t_name.empty()) throw UsageError("table: --name or --list is required");
      table(t_name);  // unknown names fail before the sweep
      auto reports = verify_table(t_name, t_primes.resolve(), t_raw ? Corrections::off : Corrections::on,
                                  {t_unlimited ? Budget::unlimited : Budget::capped, t_jobs});
      print_reports(reports, t_json, t_name);
      return exit_code(reports);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
