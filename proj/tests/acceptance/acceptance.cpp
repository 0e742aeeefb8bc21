// One line per acceptance criterion; exit status 1 if any fails or overruns its limit.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>

#include "dtop/fixtures.hpp"
#include "dtop/homotopy.hpp"
#include "dtop/multivalued.hpp"
#include "dtop/verifier.hpp"
#include "../../src/verifier/internal.hpp"

using namespace dtop;
namespace v = dtop::verify;

namespace {

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

constexpr std::uint64_t kSeed = 7;
constexpr std::uint64_t kBudget = 50'000'000;

// Runs registered checks; every one must pass.
std::string checks(const std::vector<std::string>& ids) {
  std::uint64_t instances = 0;
  for (const auto& id : ids) {
    auto r = v::run_check(id, v::kDefaultBudget, kSeed);
    require(r.outcome == v::Outcome::pass, r.text());
    instances += r.instances;
  }
  return std::to_string(ids.size()) + " checks, " + std::to_string(instances) + " instances";
}

std::vector<std::string> section(int s) {
  std::vector<std::string> out;
  auto prefix = "-" + std::to_string(s) + ".";
  for (const auto& c : v::registry())
    if (c.id.find(prefix) != std::string::npos) out.push_back(c.id);
  return out;
}

std::set<std::set<Point>> as_sets(const std::vector<std::vector<Point>>& comps) {
  std::set<std::set<Point>> out;
  for (const auto& c : comps) out.emplace(c.begin(), c.end());
  return out;
}

std::string adjacency_fixtures() {
  auto a = AdjacencyOracle::bind(parse_adjacency("T(c2@3,c2@3)"), 6);
  auto b = AdjacencyOracle::bind(parse_adjacency("T(c1@3,c3@3)"), 6);
  Point p{0, 0, 0, 0, 0, 0}, q{1, 1, 0, 1, 1, 0}, r{1, 0, 0, 1, 1, 1};
  require(a.adjacent(p, q) && !b.adjacent(p, q), "p,q: T(c2,c2) yes, T(c1,c3) no");
  require(b.adjacent(p, r) && !a.adjacent(p, r), "p,r: T(c1,c3) yes, T(c2,c2) no");
  auto w = cube(6, 0, 1);
  require(!dominates(a, b, w), "T(c2,c2) dominates T(c1,c3) on [0,1]^6");
  require(!dominates(b, a, w), "T(c1,c3) dominates T(c2,c2) on [0,1]^6");
  return checks({"Ex-3.3"});
}

std::string connectivity_fixtures() {
  auto i01 = fixtures::interval_graph(0, 1);
  auto sq = ProductSpace({i01, i01}, ProductKind::tensor()).graph();
  require(as_sets(components(sq)) ==
              std::set<std::set<Point>>{{Point{0, 0}, Point{1, 1}}, {Point{1, 0}, Point{0, 1}}},
          "[0,1]^2 T components");
  auto cyc = fixtures::msc8();
  auto msc = fixtures::graph(DigitalImage(cyc), "c2");
  require(is_connected(ProductSpace({msc, i01}, ProductKind::cartesian()).graph()), "MSC_8 x [0,1] under c2 x c1");
  require(is_connected(ProductSpace({msc, i01}, ProductKind::np(1)).graph()), "MSC_8 x [0,1] under NP1");
  auto t = ProductSpace({msc, i01}, ProductKind::tensor()).graph();
  require(!is_connected(t), "MSC_8 x [0,1] should be T-disconnected");
  const Coord n = static_cast<Coord>(cyc.size());
  std::size_t checked = 0;
  for (Coord i = 0; i < n; ++i)
    for (Coord s = 0; s <= 1; ++s) {
      Point pt = concat(std::vector<Point>{cyc[i], Point{s}});
      std::set<Point> want{concat(std::vector<Point>{cyc[(i + 1) % n], Point{1 - s}}),
                           concat(std::vector<Point>{cyc[(i + n - 1) % n], Point{1 - s}})};
      std::set<Point> got;
      for (Index j : t.neighbors(t.index_of(pt))) got.insert(t.point(j));
      require(got == want, "neighbor formula at " + pt.str());
      ++checked;
    }
  require(checked == 12, "12 points");
  return "neighbor formula on 12 points; " + checks({"Ex-4.3"});
}

std::string lex_asymmetry() {
  auto a = fixtures::points_c1({0, 1}), b = fixtures::points_c1({0, 2});
  auto ab = ProductSpace({a, b}, ProductKind::lex()).graph(), ba = ProductSpace({b, a}, ProductKind::lex()).graph();
  require(is_connected(ab), "{0,1} x {0,2} L-connected");
  require(!is_connected(ba), "{0,2} x {0,1} L-disconnected");
  std::uint64_t tried = 0;
  require(!find_isomorphism(ab, ba, &tried), "no isomorphism");
  require(tried == 24, "24 bijections, tried " + std::to_string(tried));
  return "24 bijections; " + checks({"Ex-3.26"});
}

std::string continuity_suite() {
  return checks({"Thm-3.7", "Thm-3.13", "Thm-3.14", "Thm-3.15", "Thm-3.16", "Prop-3.17", "Thm-3.17",
                 "Thm-3.19", "Thm-3.21", "Thm-3.22", "Ex-3.12", "Ex-3.20"});
}

std::string homotopy() {
  return checks({"Def-2.15", "Ex-5.1", "Thm-5.3", "Thm-5.6"});
}

std::string retraction() {
  auto x1 = fixtures::interval_graph(0, 1), x2 = fixtures::interval_graph(0, 5);
  ProductSpace px({x1, x2}, ProductKind::lex()),
      pa({fixtures::points_c1({0}), fixtures::interval_graph(1, 4)}, ProductKind::lex());
  auto res = exists_retraction(px.graph(), pa.graph().image(), kBudget);
  require(res.status == SearchStatus::absent, "L retraction should be absent");
  require(res.nodes <= 16'777'216, "L search exceeded 4^12 nodes");
  auto corner = fixtures::graph(fixtures::corner3(), "c2");
  ProductSpace tx({corner, x1}, ProductKind::tensor()),
      ta({corner.induced(fixtures::corner2()), fixtures::points_c1({0})}, ProductKind::tensor());
  require(exists_retraction(tx.graph(), ta.graph().image(), kBudget).status == SearchStatus::absent,
          "T retraction should be absent");
  return "L search " + std::to_string(res.nodes) + " nodes; " +
         checks({"Def-6.1", "Ex-6.3", "Thm-6.4", "Ex-6.5"});
}

std::string afpp() {
  auto i01 = fixtures::interval_graph(0, 1);
  std::size_t maps = 0;
  for_each_map(2, 2, [&](std::span<const Index> t) {
    DigitalMap f(i01, i01, {t.begin(), t.end()});
    require(static_cast<bool>(is_continuous(f)) && approximate_fixed_point(f).has_value(),
            "self-map of [0,1] without approximate fixed point");
    ++maps;
    return true;
  });
  require(maps == 4, "4 self-maps");
  require(has_afpp(i01, kBudget).verdict == Verdict::yes, "has_afpp([0,1])");
  auto check_witness = [&](ProductKind kind, std::function<Point(const Point&)> fn) {
    ProductSpace p({i01, i01}, kind);
    auto f = DigitalMap::from_function(p.graph(), p.graph(), fn);
    auto all = afpp_counterexamples(p.graph(), kBudget);
    require(all.found() || all.status == SearchStatus::absent, "counterexample search budget");
    require(std::find(all.witness->begin(), all.witness->end(), f) != all.witness->end(),
            kind.str() + " witness missing");
  };
  check_witness(ProductKind::tensor(), [](const Point& q) { return Point{1 - q[0], q[1]}; });
  check_witness(ProductKind::cartesian(), [](const Point& q) { return Point{1 - q[0], 1 - q[1]}; });
  return checks({"Def-7.1", "Ex-7.3", "Ex-7.4", "Thm-7.5"});
}

std::string multivalued() {
  auto i01 = fixtures::interval_graph(0, 1), i02 = fixtures::interval_graph(0, 2);
  auto f = MultiMap::from_points(i01, i02, {{Point{0}, {Point{0}, Point{2}}}, {Point{1}, {Point{1}}}});
  auto g = MultiMap::from_points(i01, i02, {{Point{0}, {Point{0}, Point{1}}}, {Point{1}, {Point{2}}}});
  require(has_weak_continuity(f).ok && has_strong_continuity(f).ok, "F(0)={0,2}, F(1)={1}: weak and strong");
  require(has_weak_continuity(g).ok && !has_strong_continuity(g).ok, "F(0)={0,1}, F(1)={2}: weak, not strong");
  for (const auto& img : v::images_upto(4))
    for (int r = 1; r <= 4; ++r) {
      if (img.dim() > 2) continue;
      Subdivision s(img, r);
      std::size_t want = img.size() * static_cast<std::size_t>(img.dim() == 1 ? r : r * r);
      require(s.graph().size() == want, "|S(X,r)| on " + img.image().points().front().str());
    }
  auto ids = section(8);
  for (const char* id : {"Ex-2.28", "Ex-2.29", "Def-2.20"}) ids.push_back(id);
  return checks(ids);
}

std::string shy() {
  auto ids = section(9);
  ids.push_back("Thm-2.32");
  return checks(ids);
}

std::string run_cli(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  require(p != nullptr, "cannot run " + cmd);
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  require(pclose(p) == 0, cmd + " exited nonzero");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to dtop>\n";
    return 2;
  }
  const std::string tool = argv[1];
  struct Criterion {
    std::string name;
    double limit;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria{
      {"adjacency fixtures", 1, adjacency_fixtures},
      {"connectivity fixtures", 1, connectivity_fixtures},
      {"lexicographic asymmetry", 1, lex_asymmetry},
      {"continuity product/factor suite", 300, continuity_suite},
      {"homotopy", 600, homotopy},
      {"retraction", 300, retraction},
      {"AFPP", 120, afpp},
      {"multivalued", 600, multivalued},
      {"shy", 300, shy},
      {"determinism", 600,
       [&] {
         auto cmd = "'" + tool + "' verify --all --seed 7";
         auto a = run_cli(cmd), b = run_cli(cmd);
         require(!a.empty() && a == b, "reports differ between runs");
         require(a.find(std::to_string(v::registry().size()) + "/" + std::to_string(v::registry().size()) +
                        " passed") != std::string::npos,
                 "not every check passed");
         return std::to_string(a.size()) + " identical bytes";
       }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("error: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && s >= c.limit) {
      ok = false;
      detail += "; over time limit";
    }
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << "  " << c.name << "  ("
              << std::fixed << std::setprecision(2) << s << " s, limit " << std::setprecision(0) << c.limit
              << " s)  " << detail << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
