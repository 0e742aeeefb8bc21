#include "dtop/adjacency.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace dtop {

// ---------------------------------------------------------------- spec tree

std::string ProductKind::str() const {
  switch (kind) {
    case AdjKind::NP: return "NP" + std::to_string(u);
    case AdjKind::Tensor: return "T";
    case AdjKind::Cartesian: return "X";
    case AdjKind::Lex: return "L";
    case AdjKind::Cu: break;
  }
  throw Error("ProductKind holds a non-product head");
}

AdjacencySpec AdjacencySpec::cu(int u, std::optional<int> dim) {
  if (u < 1) throw ArityError("c_u needs u >= 1, got " + std::to_string(u));
  if (dim && *dim < u)
    throw ArityError("c" + std::to_string(u) + " cannot live on Z^" + std::to_string(*dim));
  AdjacencySpec s;
  s.kind_ = AdjKind::Cu;
  s.u_ = u;
  s.dim_ = dim;
  return s;
}

AdjacencySpec AdjacencySpec::product(ProductKind head, std::vector<AdjacencySpec> factors) {
  if (head.kind == AdjKind::Cu) throw Error("product head cannot be c_u");
  if (factors.size() < 2)
    throw ArityError(head.str() + " needs at least 2 factors, got " +
                     std::to_string(factors.size()));
  if (head.kind == AdjKind::NP &&
      (head.u < 1 || static_cast<std::size_t>(head.u) > factors.size()))
    throw ArityError("NP" + std::to_string(head.u) + " needs 1 <= u <= " +
                     std::to_string(factors.size()) + " factors");
  AdjacencySpec s;
  s.kind_ = head.kind;
  s.u_ = head.kind == AdjKind::NP ? head.u : 0;
  s.factors_ = std::move(factors);
  return s;
}

std::size_t AdjacencySpec::leaf_count() const {
  if (kind_ == AdjKind::Cu) return 1;
  std::size_t n = 0;
  for (const auto& f : factors_) n += f.leaf_count();
  return n;
}

std::optional<std::size_t> AdjacencySpec::arity() const {
  if (kind_ == AdjKind::Cu) {
    if (!dim_) return std::nullopt;
    return static_cast<std::size_t>(*dim_);
  }
  std::size_t n = 0;
  for (const auto& f : factors_) {
    auto a = f.arity();
    if (!a) return std::nullopt;
    n += *a;
  }
  return n;
}

std::string AdjacencySpec::str() const { return print_adjacency(*this); }

std::string print_adjacency(const AdjacencySpec& s) {
  if (s.kind() == AdjKind::Cu) {
    std::string out = "c" + std::to_string(s.u());
    if (s.pinned_dim()) out += "@" + std::to_string(*s.pinned_dim());
    return out;
  }
  std::string out = ProductKind{s.kind(), s.u()}.str() + "(";
  for (std::size_t i = 0; i < s.factors().size(); ++i) {
    if (i) out += ',';
    out += print_adjacency(s.factors()[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------- parser

ParseError::ParseError(std::size_t position, std::string expected, std::string_view text)
    : Error("syntax error at offset " + std::to_string(position) + ": expected " + expected +
            " in \"" + std::string(text) + "\""),
      position_(position),
      expected_(std::move(expected)) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view t) : text_(t) {}

  AdjacencySpec parse_all() {
    auto s = spec();
    skip();
    if (pos_ != text_.size()) fail("end of input");
    return s;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError(pos_ + 1, expected, text_);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c, const char* what) {
    if (!peek(c)) fail(what);
    ++pos_;
  }
  int number() {
    skip();
    std::size_t start = pos_;
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000000) {
        pos_ = start;
        fail("a number below 1000000");
      }
      ++pos_;
    }
    if (pos_ == start) fail("digits");
    return static_cast<int>(v);
  }

  AdjacencySpec spec() {
    skip();
    if (pos_ >= text_.size()) fail("one of 'c', 'NP', 'T', 'X', 'L'");
    char c = text_[pos_];
    if (c == 'c') {
      ++pos_;
      std::size_t at = pos_;
      int u = number();
      std::optional<int> dim;
      if (peek('@')) {
        ++pos_;
        dim = number();
      }
      try {
        return AdjacencySpec::cu(u, dim);
      } catch (const ArityError& e) {
        throw ArityError(std::string(e.what()) + " (offset " + std::to_string(at + 1) + ")");
      }
    }
    ProductKind head;
    std::size_t at = pos_;
    if (c == 'N' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'P') {
      pos_ += 2;
      head = ProductKind::np(number());
    } else if (c == 'T') {
      ++pos_;
      head = ProductKind::tensor();
    } else if (c == 'X') {
      ++pos_;
      head = ProductKind::cartesian();
    } else if (c == 'L') {
      ++pos_;
      head = ProductKind::lex();
    } else {
      fail("one of 'c', 'NP', 'T', 'X', 'L'");
    }
    expect('(', "'('");
    std::vector<AdjacencySpec> fs;
    fs.push_back(spec());
    expect(',', "','");
    fs.push_back(spec());
    while (peek(',')) {
      ++pos_;
      fs.push_back(spec());
    }
    expect(')', "',' or ')'");
    try {
      return AdjacencySpec::product(head, std::move(fs));
    } catch (const ArityError& e) {
      throw ArityError(std::string(e.what()) + " (offset " + std::to_string(at + 1) + ")");
    }
  }
};

}  // namespace

AdjacencySpec parse_adjacency(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------- oracle

struct AdjacencyOracle::Node {
  AdjKind kind = AdjKind::Cu;
  int u = 1;
  std::size_t dim = 0;
  std::vector<std::size_t> offsets;
  std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using NodePtr = std::shared_ptr<const AdjacencyOracle::Node>;

bool block_equal(std::span<const Coord> p, std::span<const Coord> q) {
  return std::equal(p.begin(), p.end(), q.begin());
}

bool eval(const AdjacencyOracle::Node& n, std::span<const Coord> p, std::span<const Coord> q) {
  auto block = [&](std::size_t i, std::span<const Coord> s) {
    return s.subspan(n.offsets[i], n.kids[i]->dim);
  };
  switch (n.kind) {
    case AdjKind::Cu: return cu_adjacent_raw(n.u, p, q);
    case AdjKind::Tensor:
      for (std::size_t i = 0; i < n.kids.size(); ++i)
        if (!eval(*n.kids[i], block(i, p), block(i, q))) return false;
      return true;
    case AdjKind::NP:
    case AdjKind::Cartesian: {
      int limit = n.kind == AdjKind::NP ? n.u : 1;
      int adj = 0;
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        auto a = block(i, p), b = block(i, q);
        if (block_equal(a, b)) continue;
        if (!eval(*n.kids[i], a, b) || ++adj > limit) return false;
      }
      return adj >= 1;
    }
    case AdjKind::Lex:
      // The first block where the points differ decides; later blocks are free.
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        auto a = block(i, p), b = block(i, q);
        if (block_equal(a, b)) continue;
        return eval(*n.kids[i], a, b);
      }
      return false;
  }
  return false;
}

void collect_leaves(const AdjacencySpec& s, std::vector<const AdjacencySpec*>& out) {
  if (s.kind() == AdjKind::Cu) {
    out.push_back(&s);
    return;
  }
  for (const auto& f : s.factors()) collect_leaves(f, out);
}

NodePtr build(const AdjacencySpec& s, std::span<const std::size_t> dims, std::size_t& next) {
  auto n = std::make_shared<AdjacencyOracle::Node>();
  n->kind = s.kind();
  n->u = s.u();
  if (s.kind() == AdjKind::Cu) {
    n->dim = dims[next++];
    if (static_cast<std::size_t>(s.u()) > n->dim)
      throw ArityError("c" + std::to_string(s.u()) + " cannot live on Z^" +
                       std::to_string(n->dim));
    return n;
  }
  for (const auto& f : s.factors()) {
    n->offsets.push_back(n->dim);
    n->kids.push_back(build(f, dims, next));
    n->dim += n->kids.back()->dim;
  }
  return n;
}

AdjacencySpec to_spec(const AdjacencyOracle::Node& n) {
  if (n.kind == AdjKind::Cu) return AdjacencySpec::cu(n.u, static_cast<int>(n.dim));
  std::vector<AdjacencySpec> fs;
  for (const auto& k : n.kids) fs.push_back(to_spec(*k));
  return AdjacencySpec::product({n.kind, n.u}, std::move(fs));
}

void leaf_dims_of(const AdjacencyOracle::Node& n, std::vector<std::size_t>& out) {
  if (n.kind == AdjKind::Cu) {
    out.push_back(n.dim);
    return;
  }
  for (const auto& k : n.kids) leaf_dims_of(*k, out);
}

}  // namespace

AdjacencyOracle AdjacencyOracle::bind(const AdjacencySpec& spec, std::size_t dim,
                                      std::span<const std::size_t> split) {
  std::vector<const AdjacencySpec*> leaves;
  collect_leaves(spec, leaves);
  std::vector<std::size_t> dims(leaves.size(), 0);
  const std::string where = " binding " + spec.str() + " to Z^" + std::to_string(dim);

  if (!split.empty()) {
    if (split.size() != leaves.size())
      throw ArityError("split lists " + std::to_string(split.size()) + " dimensions for " +
                       std::to_string(leaves.size()) + " leaves" + where);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (split[i] == 0) throw ArityError("split dimension 0" + where);
      auto pin = leaves[i]->pinned_dim();
      if (pin && static_cast<std::size_t>(*pin) != split[i])
        throw ArityError("split disagrees with pinned leaf dimension" + where);
      dims[i] = split[i];
    }
  } else {
    std::size_t fixed = 0, minimum = 0, free_count = 0, last_free = 0;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (auto pin = leaves[i]->pinned_dim()) {
        dims[i] = static_cast<std::size_t>(*pin);
        fixed += dims[i];
      } else {
        ++free_count;
        last_free = i;
        minimum += static_cast<std::size_t>(leaves[i]->u());
      }
    }
    if (fixed + minimum > dim)
      throw ArityError("dimension too small" + where);
    std::size_t rest = dim - fixed;
    if (free_count == 1) {
      dims[last_free] = rest;
    } else if (free_count > 1) {
      if (rest != minimum)
        throw ArityError("ambiguous factor dimensions" + where +
                         "; pin leaves with '@' or give a split");
      for (std::size_t i = 0; i < leaves.size(); ++i)
        if (!leaves[i]->pinned_dim()) dims[i] = static_cast<std::size_t>(leaves[i]->u());
    }
  }
  std::size_t next = 0;
  auto root = build(spec, dims, next);
  if (root->dim != dim)
    throw ArityError("spec consumes " + std::to_string(root->dim) + " coordinates" + where);
  return AdjacencyOracle(std::move(root));
}

AdjacencyOracle AdjacencyOracle::cu(int u, std::size_t dim) {
  return bind(AdjacencySpec::cu(u), dim);
}

AdjacencyOracle AdjacencyOracle::product(ProductKind head, std::vector<AdjacencyOracle> factors) {
  // validates arity the same way the grammar does
  std::vector<AdjacencySpec> specs;
  for (const auto& f : factors) specs.push_back(f.spec());
  (void)AdjacencySpec::product(head, std::move(specs));
  auto n = std::make_shared<Node>();
  n->kind = head.kind;
  n->u = head.kind == AdjKind::NP ? head.u : 0;
  for (const auto& f : factors) {
    n->offsets.push_back(n->dim);
    n->kids.push_back(f.root_);
    n->dim += f.root_->dim;
  }
  return AdjacencyOracle(std::move(n));
}

std::size_t AdjacencyOracle::dim() const { return root_->dim; }
AdjKind AdjacencyOracle::kind() const { return root_->kind; }
std::size_t AdjacencyOracle::factor_count() const { return root_->kids.size(); }

AdjacencyOracle AdjacencyOracle::factor(std::size_t i) const {
  if (i >= root_->kids.size()) throw DomainError("factor index out of range");
  return AdjacencyOracle(root_->kids[i]);
}

std::vector<std::size_t> AdjacencyOracle::factor_dims() const {
  std::vector<std::size_t> out;
  for (const auto& k : root_->kids) out.push_back(k->dim);
  return out;
}

std::vector<std::size_t> AdjacencyOracle::leaf_dims() const {
  std::vector<std::size_t> out;
  leaf_dims_of(*root_, out);
  return out;
}

AdjacencySpec AdjacencyOracle::spec() const { return to_spec(*root_); }

bool AdjacencyOracle::adjacent(const Point& p, const Point& q) const {
  if (p.dim() != root_->dim || q.dim() != root_->dim)
    throw DimensionError("adjacency " + str() + " expects dimension " +
                         std::to_string(root_->dim));
  return eval(*root_, p.coords(), q.coords());
}

bool AdjacencyOracle::adjacent_raw(std::span<const Coord> p, std::span<const Coord> q) const {
  return eval(*root_, p, q);
}

bool operator==(const AdjacencyOracle& a, const AdjacencyOracle& b) {
  return a.root_ == b.root_ || a.spec() == b.spec();
}

bool adjacent(const AdjacencySpec& spec, const Point& p, const Point& q) {
  if (p.dim() != q.dim()) throw DimensionError("points of different dimension");
  return AdjacencyOracle::bind(spec, p.dim()).adjacent(p, q);
}

// ---------------------------------------------------------------- products

DigitalImage product_image(std::span<const DigitalImage> factors) {
  if (factors.size() < 2) throw DomainError("product needs at least 2 factors");
  std::size_t total = 1;
  for (const auto& f : factors) total *= f.size();
  std::vector<Point> pts;
  pts.reserve(total);
  std::vector<std::size_t> idx(factors.size(), 0);
  std::vector<Point> parts;
  for (std::size_t n = 0; n < total; ++n) {
    parts.clear();
    for (std::size_t i = 0; i < factors.size(); ++i) parts.push_back(factors[i][idx[i]]);
    pts.push_back(concat(parts));
    for (std::size_t k = factors.size(); k-- > 0;) {
      if (++idx[k] < factors[k].size()) break;
      idx[k] = 0;
    }
  }
  return DigitalImage(std::move(pts));
}

// ---------------------------------------------------------------- domination

std::optional<std::pair<Point, Point>> domination_counterexample(const AdjacencyOracle& a,
                                                                 const AdjacencyOracle& b,
                                                                 const DigitalImage& domain) {
  if (a.dim() != domain.dim() || b.dim() != domain.dim())
    throw DimensionError("domination: arity differs from domain dimension");
  const auto& pts = domain.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (a.adjacent_raw(pts[i].coords(), pts[j].coords()) &&
          !b.adjacent_raw(pts[i].coords(), pts[j].coords()))
        return std::pair{pts[i], pts[j]};
  return std::nullopt;
}

bool dominates(const AdjacencyOracle& a, const AdjacencyOracle& b, const DigitalImage& domain) {
  return !domination_counterexample(a, b, domain);
}

bool dominates(const AdjacencySpec& a, const AdjacencySpec& b, const DigitalImage& domain) {
  return dominates(AdjacencyOracle::bind(a, domain.dim()), AdjacencyOracle::bind(b, domain.dim()),
                   domain);
}

}  // namespace dtop
