#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "finzeta/catalog.hpp"
#include "finzeta/evaluator.hpp"
#include "finzeta/relation.hpp"
#include "json.hpp"

namespace finzeta {

enum class Status { verified, refuted, refuted_conjectural, vacuous };

inline std::string status_name(Status s) {
  switch (s) {
    case Status::verified: return "verified";
    case Status::refuted: return "refuted";
    case Status::refuted_conjectural: return "refuted-conjectural";
    case Status::vacuous: return "vacuous";
  }
  return "?";
}

struct Counterexample {
  u64 p;
  u64 lhs;
  u64 rhs;
};

struct Report {
  std::string provenance;
  bool corrected = false;
  bool conjectural = false;
  std::size_t primes_checked = 0;
  std::vector<u64> primes_skipped;         // below the item's guard
  std::vector<u64> primes_skipped_budget;  // beyond the Bernoulli cap
  std::vector<Counterexample> counterexamples;
  Status status = Status::vacuous;

  [[nodiscard]] bool refuted() const { return !counterexamples.empty(); }
};

// capped: items with beta on the right side skip primes above bernoulli_cap().
enum class Budget { capped, unlimited };

struct SweepOptions {
  Budget budget = Budget::capped;
  unsigned jobs = 1;
};

// One thing to check at every prime.
struct CheckItem {
  std::string provenance;
  u64 min_prime = 5;
  bool uses_beta = false;
  bool corrected = false;
  bool conjectural = false;
  std::function<Sides(PrimeEvaluator&)> eval;
};

inline CheckItem make_item(const Relation& r, Strictness mode = Strictness::strict) {
  return {r.provenance(), r.min_prime(), r.rhs().uses_beta(), false, false,
          [r, mode](PrimeEvaluator& ev) { return evaluate(r, ev, mode); }};
}

inline CheckItem make_item(const ProductCheck& pc) {
  return {pc.provenance, pc.min_prime(), pc.rhs.uses_beta(), false, false,
          [pc](PrimeEvaluator& ev) { return evaluate(pc, ev); }};
}

namespace detail {

enum class Outcome : unsigned char { pass, fail, guard, budget };

struct PrimeResult {
  std::vector<Outcome> outcome;
  std::vector<Sides> sides;  // filled for failures only
};

inline PrimeResult run_prime(const std::vector<CheckItem>& items, u64 p, Budget budget, u64 cap) {
  PrimeResult res{std::vector<Outcome>(items.size(), Outcome::pass), std::vector<Sides>(items.size())};
  PrimeEvaluator ev(p);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    if (p < it.min_prime) {
      res.outcome[i] = Outcome::guard;
      continue;
    }
    if (budget == Budget::capped && it.uses_beta && p > cap) {
      res.outcome[i] = Outcome::budget;
      continue;
    }
    Sides s = it.eval(ev);
    if (!s.holds()) {
      res.outcome[i] = Outcome::fail;
      res.sides[i] = s;
    }
  }
  return res;
}

}  // namespace detail

// Checks every item at every prime. Workers take primes from a shared
// counter; results are merged in ascending prime order.
inline std::vector<Report> sweep(const std::vector<CheckItem>& items, std::vector<u64> primes,
                                 const SweepOptions& opt = {}) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (u64 p : primes)
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  const u64 cap = bernoulli_cap();
  std::vector<detail::PrimeResult> results(primes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < primes.size();)
      results[k] = detail::run_prime(items, primes[k], opt.budget, cap);
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(opt.jobs, static_cast<unsigned>(primes.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        try {
          worker();
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          next = primes.size();
        }
      });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
  }

  std::vector<Report> reports(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    Report& r = reports[i];
    r.provenance = items[i].provenance;
    r.corrected = items[i].corrected;
    r.conjectural = items[i].conjectural;
    for (std::size_t k = 0; k < primes.size(); ++k) {
      switch (results[k].outcome[i]) {
        case detail::Outcome::pass: ++r.primes_checked; break;
        case detail::Outcome::fail:
          ++r.primes_checked;
          r.counterexamples.push_back(
              {primes[k], results[k].sides[i].lhs.value(), results[k].sides[i].rhs.value()});
          break;
        case detail::Outcome::guard: r.primes_skipped.push_back(primes[k]); break;
        case detail::Outcome::budget: r.primes_skipped_budget.push_back(primes[k]); break;
      }
    }
    if (r.refuted()) r.status = r.conjectural ? Status::refuted_conjectural : Status::refuted;
    else r.status = r.primes_checked == 0 ? Status::vacuous : Status::verified;
  }
  return reports;
}

inline Report verify_relation(const Relation& r, const std::vector<u64>& primes, Budget budget = Budget::capped,
                              unsigned jobs = 1) {
  return sweep({make_item(r)}, primes, {budget, jobs}).front();
}

inline Report verify_nonlinear(const ProductCheck& pc, const std::vector<u64>& primes, unsigned jobs = 1) {
  return sweep({make_item(pc)}, primes, {Budget::capped, jobs}).front();
}

enum class Corrections { on, off };

// One report per entry. With corrections off, flagged entries are checked in
// their printed form.
inline std::vector<Report> verify_table(const std::string& name, const std::vector<u64>& primes,
                                        Corrections corr = Corrections::on, const SweepOptions& opt = {}) {
  std::vector<CheckItem> items;
  for (const auto& e : table(name)) {
    const bool printed = corr == Corrections::off && e.uncorrected.has_value();
    CheckItem it = printed ? make_item(*e.uncorrected, e.uncorrected_mode) : make_item(e.relation);
    it.provenance = name + ": " + e.label + (printed ? " (as printed)" : "");
    it.min_prime = e.relation.min_prime();
    it.corrected = e.corrected;
    it.conjectural = e.conjectural;
    items.push_back(std::move(it));
  }
  return sweep(items, primes, opt);
}

// 0 when nothing is refuted, 1 otherwise.
inline int exit_code(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (r.refuted()) return 1;
  return 0;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["provenance"] = r.provenance;
  j["status"] = status_name(r.status);
  j["corrected"] = r.corrected;
  j["conjectural"] = r.conjectural;
  j["primes_checked"] = r.primes_checked;
  j["primes_skipped"] = r.primes_skipped;
  j["primes_skipped_budget"] = r.primes_skipped_budget;
  auto ce = nlohmann::ordered_json::array();
  for (const auto& c : r.counterexamples)
    ce.push_back({{"p", c.p}, {"lhs", std::to_string(c.lhs)}, {"rhs", std::to_string(c.rhs)}});
  j["counterexamples"] = std::move(ce);
  return j;
}

}  // namespace finzeta
