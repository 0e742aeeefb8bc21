#include <algorithm>
#include <map>

#include "internal.hpp"
#include "json.hpp"

namespace dtop::verify {

std::string to_string(OpenOutcome o) {
  switch (o) {
    case OpenOutcome::no_counterexample_found: return "no_counterexample_found";
    case OpenOutcome::counterexample: return "counterexample";
    case OpenOutcome::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

std::string OpenReport::json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["outcome"] = to_string(outcome);
  j["instances"] = instances;
  j["family"] = family;
  j["witness"] = witness;
  return j.dump();
}

std::string OpenReport::text() const {
  std::string s = id + "  " + to_string(outcome) + "  instances=" + std::to_string(instances) +
                  "\n    family: " + family;
  if (!witness.empty()) s += "\n    " + witness;
  return s;
}

namespace {

struct Found {
  std::string witness;
};

struct Search {
  std::string claim;
  bool multi = false;
  std::function<void(Context&, const std::vector<ImageGraph>&)> run;  // throws Found on a counterexample
};

std::vector<ImageGraph> pool(const OpenFamily& fam, std::size_t cap) {
  std::size_t n = std::min(fam.max_points, cap);
  std::vector<ImageGraph> all;
  if (fam.intervals_only)
    for (std::size_t k = 1; k <= n; ++k) all.push_back(fixtures::interval_graph(0, static_cast<int>(k) - 1));
  else
    all = images_upto(n);
  std::vector<ImageGraph> out;
  for (auto& g : all)
    if (!fam.edges_only || has_edge(g)) out.push_back(g);
  return out;
}

std::string describe(const OpenFamily& fam, std::size_t cap) {
  std::string s = fam.intervals_only ? "intervals [0,k]" : "classes";
  s += " <= " + std::to_string(std::min(fam.max_points, cap)) + " points";
  if (fam.edges_only) s += " with an edge";
  return s;
}

bool retract(Context& ctx, const ImageGraph& x, const DigitalImage& a) {
  auto res = exists_retraction(x, a, kSearchBudget);
  ctx.searched(res.status);
  return res.found();
}

void tensor_retract_factor(Context& ctx, const std::vector<ImageGraph>& xs) {
  struct Entry {
    ImageGraph x, a;
    bool retract;
  };
  std::vector<Entry> pool;
  for (const auto& x : xs)
    for (const auto& a : nonempty_subsets(x.image())) pool.push_back({x, x.induced(a), retract(ctx, x, a)});
  for (const auto& p : pool)
    for (const auto& q : pool) {
      ctx.instance();
      if (p.retract && q.retract) continue;
      ProductSpace px({p.x, q.x}, ProductKind::tensor()), pa({p.a, q.a}, ProductKind::tensor());
      auto res = exists_retraction(px.graph(), pa.graph().image(), kSearchBudget);
      ctx.searched(res.status);
      if (res.found())
        throw Found{"T retraction " + show(*res.witness) + " although " + show(p.a) + " in " + show(p.x) +
                    " or " + show(q.a) + " in " + show(q.x) + " is not a retract"};
    }
}

bool afpp(Context& ctx, const ImageGraph& x) {
  auto res = has_afpp(x, kSearchBudget);
  ctx.searched(res.verdict);
  return res.verdict == Verdict::yes;
}

void afpp_factor(Context& ctx, const std::vector<ImageGraph>& imgs, const ProductKind& kind) {
  std::vector<bool> has(imgs.size());
  for (std::size_t i = 0; i < imgs.size(); ++i) has[i] = afpp(ctx, imgs[i]);
  for (std::size_t i = 0; i < imgs.size(); ++i)
    for (std::size_t j = 0; j < imgs.size(); ++j) {
      ctx.instance();
      if (has[i] && has[j]) continue;
      ProductSpace p({imgs[i], imgs[j]}, kind);
      if (afpp(ctx, p.graph()))
        throw Found{show(p.graph()) + " has the AFPP but a factor does not"};
    }
}

struct Factor {
  MultiMap f;
  bool cont;
};

std::vector<Factor> small_multimaps(Context& ctx, const std::vector<ImageGraph>& imgs) {
  std::vector<Factor> out;
  for (auto& m : multimap_instances(imgs, imgs)) {
    auto res = is_continuous_multimap(m.f, 2, kSearchBudget);
    ctx.searched(res.status);
    out.push_back({m.f, res.found()});
  }
  return out;
}

// Generator search on S(X1,r) x S(X2,r) carrying the product adjacency itself.
SearchStatus product_generator(const MultiMap& f1, const MultiMap& f2, const ProductKind& kind, int r) {
  Subdivision s1(f1.domain(), r), s2(f2.domain(), r);
  ProductSpace sdom({s1.graph(), s2.graph()}, kind), xdom({f1.domain(), f2.domain()}, kind),
      cod({f1.codomain(), f2.codomain()}, kind);
  auto big = product_multi(xdom, cod, f1, f2);
  const std::size_t n = sdom.graph().size();
  std::vector<Index> base(n);
  std::vector<IndexSet> cand(n);
  for (std::size_t p = 0; p < n; ++p) {
    Index parts[2] = {s1.project(sdom.part(p, 0)), s2.project(sdom.part(p, 1))};
    base[p] = static_cast<Index>(xdom.index(parts));
    cand[p] = big[base[p]];
  }
  return enumerate_continuous_maps(sdom.graph(), cod.graph(), std::move(cand), {}, kSearchBudget,
                                   [&](std::span<const Index> t) {
                                     std::vector<IndexSet> got(big.table().size());
                                     for (std::size_t p = 0; p < n; ++p) got[base[p]].push_back(t[p]);
                                     for (auto& s : got) {
                                       std::sort(s.begin(), s.end());
                                       s.erase(std::unique(s.begin(), s.end()), s.end());
                                     }
                                     return got != big.table();
                                   });
}

void tensor_multicont_converse(Context& ctx, const std::vector<ImageGraph>& imgs) {
  auto fs = small_multimaps(ctx, imgs);
  for (const auto& a : fs)
    for (const auto& b : fs) {
      ctx.instance();
      if (a.cont && b.cont) continue;
      for (int r = 1; r <= 2; ++r) {
        auto st = product_generator(a.f, b.f, ProductKind::tensor(), r);
        ctx.searched(st);
        if (st == SearchStatus::found)
          throw Found{"T product of " + show(a.f) + " and " + show(b.f) + " has a generator at r=" +
                      std::to_string(r) + " but a factor has none for r <= 2"};
      }
    }
}

void cartesian_multicont_converse(Context& ctx, const std::vector<ImageGraph>& imgs) {
  auto fs = small_multimaps(ctx, imgs);
  for (const auto& a : fs)
    for (const auto& b : fs) {
      ctx.instance();
      if (a.cont && b.cont) continue;
      ProductSpace dom({a.f.domain(), b.f.domain()}, ProductKind::cartesian()),
          cod({a.f.codomain(), b.f.codomain()}, ProductKind::cartesian());
      auto res = is_continuous_multimap(product_multi(dom, cod, a.f, b.f), 2, kSearchBudget);
      ctx.searched(res.status);
      if (res.found())
        throw Found{"Cartesian product of " + show(a.f) + " and " + show(b.f) + " has a generator at r=" +
                    std::to_string(res.r) + " but a factor has none for r <= 2"};
    }
}

const std::map<std::string, Search>& searches() {
  static const std::map<std::string, Search> s{
      {"tensor-retract-factor",
       {"A1 x A2 a T-retract of X1 x X2 => each Ai a retract of Xi; every nonempty Ai", false,
        tensor_retract_factor}},
      {"tensor-AFPP-factor",
       {"X1 x X2 under T has the AFPP => each Xi does", false,
        [](Context& c, const std::vector<ImageGraph>& x) { afpp_factor(c, x, ProductKind::tensor()); }}},
      {"cartesian-AFPP-factor",
       {"X1 x X2 under Cartesian adjacency has the AFPP => each Xi does", false,
        [](Context& c, const std::vector<ImageGraph>& x) { afpp_factor(c, x, ProductKind::cartesian()); }}},
      {"tensor-multicont-converse",
       {"F1 x F2 generated on S(X1,r) x S(X2,r) under T => each Fi continuous; r <= 2", true,
        tensor_multicont_converse}},
      {"cartesian-multicont-converse",
       {"F1 x F2 continuous under Cartesian adjacency => each Fi continuous; r <= 2", true,
        cartesian_multicont_converse}},
  };
  return s;
}

constexpr std::size_t kMultiCap = 2;

}  // namespace

const std::vector<std::string>& open_problem_ids() {
  static const std::vector<std::string> ids{"tensor-retract-factor", "tensor-AFPP-factor",
                                            "cartesian-AFPP-factor", "tensor-multicont-converse",
                                            "cartesian-multicont-converse"};
  return ids;
}

OpenReport search_open_problem(const std::string& id, const OpenFamily& family, std::uint64_t budget) {
  auto it = searches().find(id);
  if (it == searches().end()) throw UnknownCheck("unknown open problem id: " + id);
  OpenReport rep;
  rep.id = id;
  const auto& search = it->second;
  std::size_t cap = search.multi ? kMultiCap : 4;
  rep.family = search.claim + "; factors: " + describe(family, cap);
  Context ctx;
  ctx.budget = budget;
  try {
    if (budget == 0) throw BudgetExhausted{};
    search.run(ctx, pool(family, cap));
  } catch (const Found& f) {
    rep.outcome = OpenOutcome::counterexample;
    rep.witness = f.witness;
  } catch (const BudgetExhausted&) {
    rep.outcome = OpenOutcome::budget_exceeded;
  }
  rep.instances = std::min(ctx.used, budget);
  return rep;
}

}  // namespace dtop::verify
