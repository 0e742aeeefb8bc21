#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "dtop/io.hpp"
#include "dtop/verifier.hpp"
#include "json.hpp"

namespace dtop::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Usage : Error {
  using Error::Error;
};

struct Globals {
  std::string format = "text";
  std::uint64_t budget = verify::kDefaultBudget;
  std::uint64_t seed = 0;
  std::string adj, split;
};

std::string pts(const std::vector<Point>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + "}";
}

Json pair_json(const std::optional<PointPair>& p) {
  if (!p) return nullptr;
  return p->first.str() + "~" + p->second.str();
}

Json point_json(const std::optional<Point>& p) { return p ? Json(p->str()) : Json(nullptr); }

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

// Same fields as the JSON form, one per line.
void render_text(const Json& j, std::ostream& out, const std::string& indent = "") {
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      out << indent << key << ":\n";
      render_text(v, out, indent + "  ");
    } else if (v.is_array()) {
      out << indent << key << ":" << (v.empty() ? " none" : "") << "\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          out << indent << "  -\n";
          render_text(e, out, indent + "    ");
        } else {
          out << indent << "  " << scalar(e) << "\n";
        }
      }
    } else {
      out << indent << key << ": " << scalar(v) << "\n";
    }
  }
}

void emit(const Json& j, const Globals& g, std::ostream& out) {
  if (g.format == "json")
    out << j.dump() << "\n";
  else
    render_text(j, out);
}

std::vector<std::size_t> parse_split(const std::string& s) {
  std::vector<std::size_t> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw Usage("--split: expected positive integers separated by commas, got '" + s + "'");
    }
  }
  return out;
}

std::vector<Coord> parse_coords(const std::string& s, const std::string& what) {
  std::vector<Coord> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(static_cast<Coord>(v));
    } catch (const std::logic_error&) {
      throw Usage(what + ": expected integers separated by commas, got '" + s + "'");
    }
  }
  return out;
}

AdjacencySpec parse_spec(const std::string& text, const std::string& flag) {
  try {
    return parse_adjacency(text);
  } catch (const Error& e) {
    throw Error(flag + ": " + e.what());
  }
}

ImageGraph load_graph(const std::string& path, const Globals& g) {
  auto file = io::read_image(path);
  auto split = parse_split(g.split);
  if (g.adj.empty()) return file.graph(std::nullopt, split);
  return file.graph(parse_spec(g.adj, "--adj"), split);
}

ProductKind parse_kind(const std::string& s) {
  if (s == "T") return ProductKind::tensor();
  if (s == "X") return ProductKind::cartesian();
  if (s == "L") return ProductKind::lex();
  if (s.size() > 2 && s.rfind("NP", 0) == 0) {
    try {
      int u = std::stoi(s.substr(2));
      if (u >= 1) return ProductKind::np(u);
    } catch (const std::logic_error&) {
    }
  }
  throw Usage("--kind: expected NP<u>, T, X or L, got '" + s + "'");
}

Json status_answer(SearchStatus s) {
  if (s == SearchStatus::budget_exceeded) return "budget_exceeded";
  return s == SearchStatus::found;
}

Json verdict_answer(Verdict v) {
  if (v == Verdict::budget_exceeded) return "budget_exceeded";
  return v == Verdict::yes;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

std::string dot(const ImageGraph& g) {
  std::string s = "graph G {\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    s += "  n" + std::to_string(i) + " [label=\"" + g.point(i).str() + "\"];\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    for (Index j : g.neighbors(i))
      if (j > i) s += "  n" + std::to_string(i) + " -- n" + std::to_string(j) + ";\n";
  return s + "}\n";
}

std::string connectivity_failure(ConnectivityReport::Failure f) {
  switch (f) {
    case ConnectivityReport::Failure::none: return "none";
    case ConnectivityReport::Failure::point_image_disconnected: return "point_image_disconnected";
    case ConnectivityReport::Failure::images_not_adjacent: return "images_not_adjacent";
  }
  return "?";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Digital images under product adjacencies: connectivity, maps, homotopy, multimaps",
               "dtop"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", g.budget, "search budget");
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_option("--adj", g.adj, "adjacency overriding the image file's");
  app.add_option("--split", g.split, "leaf dimensions for --adj, comma separated");

  std::string file, file2, other, kind = "X", output, pointed, retract_file, open_id;
  std::vector<std::string> files, ids;
  std::vector<long long> coords;
  int r = 2, r_max = 2;
  bool all = false, list = false, intervals = false, edges_only = false;
  std::size_t max_points = 4;
  unsigned threads = 0;

  auto* components = app.add_subcommand("components", "connected components of an image");
  components->add_option("image", file)->required();

  auto* adjacent = app.add_subcommand("adjacent", "are two points adjacent under --adj");
  adjacent->add_option("coords", coords, "p then q, flat, after --")->required();

  auto* dominates = app.add_subcommand("dominates", "does --adj dominate --other on an image");
  dominates->add_option("image", file)->required();
  dominates->add_option("--other", other)->required();

  auto* product = app.add_subcommand("product", "product image of two or more image files");
  product->add_option("images", files)->required()->expected(2, -1);
  product->add_option("--kind", kind, "NP<u>, T, X or L");
  product->add_option("-o,--output", output);

  auto* cont = app.add_subcommand("check-continuity", "is a map file continuous");
  cont->add_option("map", file)->required();

  auto* iso = app.add_subcommand("check-iso", "is a map an isomorphism, or are two images isomorphic");
  iso->add_option("files", files)->required()->expected(1, 2);

  auto* retr = app.add_subcommand("check-retraction", "is a subset a retract of an image");
  retr->add_option("image", file)->required();
  retr->add_option("subset", file2)->required();

  auto* shy = app.add_subcommand("check-shy", "is a map shy");
  shy->add_option("map", file)->required();

  auto* afpp = app.add_subcommand("check-afpp", "approximate fixed point property of an image");
  afpp->add_option("image", file)->required();

  auto* homo = app.add_subcommand("check-homotopic", "are two maps homotopic");
  homo->add_option("map", file)->required();
  homo->add_option("map2", file2)->required();
  homo->add_option("--pointed", pointed, "basepoint held fixed, comma separated");

  auto* multi = app.add_subcommand("check-multimap", "continuity notions of a multimap file");
  multi->add_option("multimap", file)->required();
  multi->add_option("--r-max", r_max, "largest subdivision tried")->check(CLI::PositiveNumber);
  multi->add_option("--retract", retract_file, "also test a multivalued retraction onto this subset");

  auto* sub = app.add_subcommand("subdivide", "S(X,r) of an image");
  sub->add_option("image", file)->required();
  sub->add_option("-r", r)->required()->check(CLI::PositiveNumber);
  sub->add_option("-o,--output", output);

  auto* ver = app.add_subcommand("verify", "run registered checks or an open search");
  ver->add_option("ids", ids);
  ver->add_flag("--all", all);
  ver->add_flag("--list", list);
  ver->add_option("--threads", threads);
  ver->add_option("--open", open_id, "open implication to search");
  ver->add_option("--max-points", max_points);
  ver->add_flag("--intervals", intervals);
  ver->add_flag("--edges-only", edges_only);

  auto* dotc = app.add_subcommand("export-dot", "adjacency graph in DOT");
  dotc->add_option("image", file)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Json j;
    if (*components) {
      auto gr = load_graph(file, g);
      auto cs = dtop::components(gr);
      j["answer"] = cs.size();
      j["image"] = file;
      j["adjacency"] = gr.adjacency().str();
      j["points"] = gr.size();
      j["components"] = Json::array();
      for (const auto& c : cs) j["components"].push_back(pts(c));
    } else if (*adjacent) {
      if (g.adj.empty()) throw Usage("adjacent needs --adj");
      if (coords.empty() || coords.size() % 2) throw Usage("adjacent needs two points of equal dimension");
      std::size_t n = coords.size() / 2;
      Point p(std::vector<Coord>(coords.begin(), coords.begin() + static_cast<long>(n)));
      Point q(std::vector<Coord>(coords.begin() + static_cast<long>(n), coords.end()));
      auto oracle = AdjacencyOracle::bind(parse_spec(g.adj, "--adj"), n, parse_split(g.split));
      j["answer"] = oracle.adjacent(p, q);
      j["p"] = p.str();
      j["q"] = q.str();
      j["adjacency"] = oracle.str();
    } else if (*dominates) {
      auto img = io::read_image(file).image;
      auto split = parse_split(g.split);
      if (g.adj.empty()) throw Usage("dominates needs --adj");
      auto a = AdjacencyOracle::bind(parse_spec(g.adj, "--adj"), img.dim(), split);
      auto b = AdjacencyOracle::bind(parse_spec(other, "--other"), img.dim(), split);
      auto ab = domination_counterexample(a, b, img), ba = domination_counterexample(b, a, img);
      j["answer"] = !ab;
      j["adjacency"] = a.str();
      j["other"] = b.str();
      j["counterexample"] = pair_json(ab);
      j["converse"] = !ba;
      j["converse_counterexample"] = pair_json(ba);
    } else if (*product) {
      std::vector<ImageGraph> gs;
      for (const auto& f : files) gs.push_back(load_graph(f, g));
      ProductSpace ps(gs, parse_kind(kind));
      const auto& pg = ps.graph();
      j["answer"] = pg.size();
      j["kind"] = ps.kind().str();
      j["adjacency"] = pg.adjacency().str();
      j["edges"] = pg.edge_count();
      if (!output.empty()) {
        write_file(output, io::format_image(pg));
        j["output"] = output;
      } else {
        j["points"] = Json::array();
        for (const auto& p : pg.image().points()) j["points"].push_back(p.str());
      }
    } else if (*cont) {
      auto f = io::read_map(file);
      auto rep = is_continuous(f);
      j["answer"] = rep.continuous;
      j["map"] = f.str();
      j["violation"] = pair_json(rep.violation);
    } else if (*iso) {
      if (files.size() == 1) {
        auto f = io::read_map(files[0]);
        auto rep = is_isomorphism(f);
        j["answer"] = rep.iso;
        j["map"] = f.str();
        j["reason"] = rep.reason.empty() ? Json(nullptr) : Json(rep.reason);
        j["violation"] = pair_json(rep.violation);
      } else {
        auto x = load_graph(files[0], g), y = load_graph(files[1], g);
        std::uint64_t tried = 0;
        auto found = find_isomorphism(x, y, &tried);
        j["answer"] = found.has_value();
        j["bijections_tried"] = tried;
        j["witness"] = found ? Json(found->str()) : Json(nullptr);
      }
    } else if (*retr) {
      auto x = load_graph(file, g);
      auto a = io::read_image(file2).image;
      if (!x.image().contains_all(a)) throw Error(file2 + ": subset is not contained in " + file);
      auto res = exists_retraction(x, a, g.budget);
      j["answer"] = status_answer(res.status);
      j["subset"] = pts(a.points());
      j["nodes"] = res.nodes;
      j["witness"] = res.witness ? Json(res.witness->str()) : Json(nullptr);
    } else if (*shy) {
      auto f = io::read_map(file);
      auto rep = is_shy(f);
      j["answer"] = rep.shy;
      j["map"] = f.str();
      j["failure"] = to_string(rep.failure);
      j["point"] = point_json(rep.point);
      j["pair"] = pair_json(rep.pair);
      if (is_surjective(f) && f.codomain().size() <= 20) {
        auto eq = shy_equivalences(f);
        j["equivalent_conditions"] = {
            {"shy", eq.shy},
            {"preimages_of_connected_sets_connected", eq.preimages_of_connected_sets_connected},
            {"inverse_connectivity_preserving", eq.inverse_connectivity_preserving},
            {"inverse_weak_with_connected_fibers", eq.inverse_weak_with_connected_fibers},
            {"agree", eq.agree()}};
      }
    } else if (*afpp) {
      auto x = load_graph(file, g);
      auto res = has_afpp(x, g.budget);
      j["answer"] = verdict_answer(res.verdict);
      j["adjacency"] = x.adjacency().str();
      j["nodes"] = res.nodes;
      j["witness"] = res.witness ? Json(res.witness->str()) : Json(nullptr);
    } else if (*homo) {
      auto f = io::read_map(file), h = io::read_map(file2);
      std::optional<Point> base;
      if (!pointed.empty()) base = Point(parse_coords(pointed, "--pointed"));
      auto res = are_homotopic(f, h, base, g.budget);
      j["answer"] = status_answer(res.status);
      j["pointed"] = point_json(base);
      j["maps_explored"] = res.nodes;
      if (res.witness) {
        j["length"] = res.witness->length();
        j["steps"] = Json::array();
        for (int t = 0; t <= res.witness->length(); ++t) j["steps"].push_back(res.witness->slice(t).str());
      }
    } else if (*multi) {
      auto f = io::read_multimap(file);
      auto weak = has_weak_continuity(f), strong = has_strong_continuity(f);
      auto cp = is_connectivity_preserving(f);
      j["multimap"] = f.str();
      j["weak"] = {{"ok", weak.ok}, {"violation", pair_json(weak.violation)}};
      j["strong"] = {{"ok", strong.ok}, {"violation", pair_json(strong.violation)}};
      j["connectivity_preserving"] = {{"ok", cp.preserving},
                                      {"failure", connectivity_failure(cp.failure)},
                                      {"x", point_json(cp.x)},
                                      {"x2", point_json(cp.x2)}};
      if (subdivision_compatible(f.domain().adjacency())) {
        auto res = is_continuous_multimap(f, r_max, g.budget);
        j["continuous"] = {{"answer", res.found() ? Json(true)
                                      : res.status == SearchStatus::absent
                                          ? Json("no generator for r <= " + std::to_string(r_max))
                                          : Json("budget_exceeded")},
                           {"r", res.found() ? Json(res.r) : Json(nullptr)},
                           {"generator", res.generator ? Json(res.generator->str()) : Json(nullptr)}};
      } else {
        j["continuous"] = {{"answer", "undefined for this domain adjacency"}};
      }
      if (!retract_file.empty()) {
        auto a = io::read_image(retract_file).image;
        auto rep = is_multivalued_retraction(f, a, r_max, g.budget);
        j["retraction"] = {{"answer", verdict_answer(rep.verdict)}, {"reason", rep.reason}};
      }
    } else if (*sub) {
      auto x = load_graph(file, g);
      Subdivision s(x, r);
      j["answer"] = s.graph().size();
      j["r"] = r;
      j["base_points"] = x.size();
      j["adjacency"] = s.graph().adjacency().str();
      if (!output.empty()) {
        write_file(output, io::format_image(s.graph()));
        j["output"] = output;
      } else {
        j["points"] = Json::array();
        for (std::size_t i = 0; i < s.graph().size(); ++i) j["points"].push_back(s.scaled(i));
      }
    } else if (*ver) {
      if (list) {
        for (const auto& c : verify::registry())
          out << c.id << "  " << verify::to_string(c.mode) << "  " << c.family << "\n";
        return 0;
      }
      if (!open_id.empty()) {
        verify::OpenFamily fam{max_points, intervals, edges_only};
        auto rep = verify::search_open_problem(open_id, fam, g.budget);
        out << (g.format == "json" ? rep.json() : rep.text()) << "\n";
        return 0;
      }
      if (all == !ids.empty()) throw Usage("verify needs --all, --list, --open ID, or check ids");
      std::vector<verify::Report> reps;
      if (all) {
        reps = verify::run_all(g.budget, g.seed, threads);
      } else {
        for (const auto& id : ids) verify::find_check(id);
        for (const auto& id : ids) reps.push_back(verify::run_check(id, g.budget, g.seed));
      }
      std::size_t pass = 0;
      for (const auto& rep : reps) {
        out << (g.format == "json" ? rep.json() : rep.text()) << "\n";
        pass += rep.outcome == verify::Outcome::pass;
      }
      if (g.format == "text") out << pass << "/" << reps.size() << " passed\n";
      return 0;
    } else if (*dotc) {
      auto x = load_graph(file, g);
      if (g.format == "text") {
        out << dot(x);
        return 0;
      }
      j["nodes"] = x.size();
      j["edges"] = x.edge_count();
      j["dot"] = dot(x);
    }
    emit(j, g, out);
    return 0;
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const verify::UnknownCheck& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dtop::cli
