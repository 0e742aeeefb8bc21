#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dtop/maps.hpp"

namespace dtop {

// F on X x [0,m]: table[t][x] is F(x,t) as a codomain index.
class HomotopyWitness {
 public:
  HomotopyWitness(DigitalMap f, DigitalMap g, std::vector<std::vector<Index>> table);
  static HomotopyWitness from_slices(const std::vector<DigitalMap>& slices);
  static HomotopyWitness constant(const DigitalMap& f);  // m = 0

  const DigitalMap& f() const { return f_; }
  const DigitalMap& g() const { return g_; }
  int length() const { return static_cast<int>(table_.size()) - 1; }
  const std::vector<std::vector<Index>>& table() const { return table_; }
  DigitalMap slice(int t) const;
  const Point& at(std::size_t x, int t) const { return f_.codomain().point(table_[t][x]); }

 private:
  DigitalMap f_, g_;
  std::vector<std::vector<Index>> table_;
};

struct HomotopyReport {
  enum class Violation { none, endpoint, slice_discontinuous, track_broken, basepoint_moved };
  bool ok = true;
  Violation violation = Violation::none;
  std::optional<Point> x, x2;
  int t = -1;
  std::string describe() const;
  explicit operator bool() const { return ok; }
};

HomotopyReport is_homotopy(const HomotopyWitness& w,
                           const std::optional<Point>& pointed_at = std::nullopt);

// Shortest homotopy f -> g by breadth-first search over continuous maps;
// budget bounds the number of distinct maps generated.
SearchResult<HomotopyWitness> are_homotopic(const DigitalMap& f, const DigitalMap& g,
                                            const std::optional<Point>& pointed_at,
                                            std::uint64_t budget);

// The whole homotopy class of f: every continuous map reachable from f, with
// its distance and a BFS parent for rebuilding shortest witnesses.
class HomotopyClass {
 public:
  HomotopyClass(const DigitalMap& f, const std::optional<Point>& pointed_at,
                std::uint64_t budget);

  SearchStatus status() const { return status_; }  // absent = fully explored
  std::size_t size() const { return maps_.size(); }
  const std::vector<std::vector<Index>>& maps() const { return maps_; }
  std::optional<int> distance(std::span<const Index> table) const;
  // Witness from the class root to the given map (shortest).
  std::optional<HomotopyWitness> witness_to(std::span<const Index> table) const;

 private:
  DigitalMap root_;
  SearchStatus status_ = SearchStatus::absent;
  std::vector<std::vector<Index>> maps_;
  std::vector<int> dist_, parent_;
  std::unordered_map<std::u32string, int> id_;
};

struct HomotopyEquivalence {
  DigitalMap f, g;
  HomotopyWitness gf_to_identity;  // g after f, to 1_X
  HomotopyWitness fg_to_identity;  // f after g, to 1_Y
};

SearchResult<HomotopyEquivalence> homotopy_equivalent(
    const ImageGraph& x, const ImageGraph& y,
    const std::optional<std::pair<Point, Point>>& pointed, std::uint64_t budget);

// post after F_t after pre, for every t.
HomotopyWitness compose(const DigitalMap& post, const HomotopyWitness& h, const DigitalMap& pre);
HomotopyWitness reverse(const HomotopyWitness& h);

// Runs the factor homotopies one coordinate at a time: during stage j the
// earlier coordinates sit at their end maps and the later ones at their start maps.
HomotopyWitness staged_product_homotopy(const ProductSpace& dom, const ProductSpace& cod,
                                        const std::vector<HomotopyWitness>& factors);

// Two-step F from the identity of a lexicographic product to I_k p_k, where k
// is the first factor with more than one point and every other coordinate is
// sent to the basepoint. Not always a homotopy; is_homotopy decides.
HomotopyWitness lex_collapse_homotopy(const ProductSpace& prod, const Point& basepoint);
std::optional<std::size_t> first_nontrivial_factor(const ProductSpace& prod);

}  // namespace dtop
