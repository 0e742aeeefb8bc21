#include <algorithm>
#include <atomic>
#include <charconv>
#include <thread>

#include "internal.hpp"
#include "json.hpp"

namespace dtop::verify {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::fixture: return "fixture";
    case Mode::exhaustive: return "exhaustive";
    case Mode::randomized: return "randomized";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

namespace {

// (section, item) from "Kind-S.N"; non-numeric items sort last in their section.
std::pair<int, int> order_key(const std::string& id) {
  auto dash = id.find('-'), dot = id.find('.');
  int s = 0, n = 999;
  std::from_chars(id.data() + dash + 1, id.data() + dot, s);
  auto [p, ec] = std::from_chars(id.data() + dot + 1, id.data() + id.size(), n);
  if (ec != std::errc() || p != id.data() + id.size()) n = 999;
  return {s, n};
}

std::uint64_t check_seed(const std::string& id, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : id) h = (h ^ c) * 1099511628211ULL;
  std::uint64_t z = h ^ (seed + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

const std::vector<TheoremCheck>& registry() {
  static const std::vector<TheoremCheck> r = [] {
    std::vector<TheoremCheck> v;
    add_adjacency_checks(v);
    add_product_map_checks(v);
    add_connectivity_checks(v);
    add_homotopy_checks(v);
    add_retraction_checks(v);
    add_afpp_checks(v);
    add_multivalued_checks(v);
    add_shy_checks(v);
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      auto ka = order_key(a.id), kb = order_key(b.id);
      return ka != kb ? ka < kb : a.id < b.id;
    });
    return v;
  }();
  return r;
}

const TheoremCheck& find_check(const std::string& id) {
  for (const auto& c : registry())
    if (c.id == id) return c;
  throw UnknownCheck("unknown check id: " + id);
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["mode"] = to_string(mode);
  j["instances"] = instances;
  j["outcome"] = to_string(outcome);
  j["witness"] = witness;
  return j.dump();
}

std::string Report::text() const {
  std::string s = id + "  " + to_string(outcome) + "  mode=" + to_string(mode) +
                  "  instances=" + std::to_string(instances);
  if (!witness.empty()) s += "\n    " + witness;
  return s;
}

Report run_check(const std::string& id, std::uint64_t budget, std::uint64_t seed) {
  const auto& check = find_check(id);
  Context ctx;
  ctx.budget = budget;
  ctx.rng.seed(check_seed(id, seed));
  Report rep{id, check.mode, 0, Outcome::pass, ""};
  try {
    if (budget == 0) throw BudgetExhausted{};
    check.run(ctx);
    rep.witness = ctx.note;
  } catch (const CheckFailed& f) {
    rep.outcome = Outcome::fail;
    rep.witness = f.witness;
  } catch (const BudgetExhausted&) {
    rep.outcome = Outcome::budget_exceeded;
  } catch (const Error& e) {
    rep.outcome = Outcome::fail;
    rep.witness = std::string("error: ") + e.what();
  }
  rep.instances = std::min(ctx.used, budget);
  return rep;
}

std::vector<Report> run_all(std::uint64_t budget, std::uint64_t seed, unsigned threads) {
  const auto& reg = registry();
  std::vector<Report> out(reg.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(reg.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < reg.size();) out[i] = run_check(reg[i].id, budget, seed);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace dtop::verify
