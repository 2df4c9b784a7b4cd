#pragma once

// Brute-force Kripke semantics for propositional modal formulas. Frames are
// enumerated up to isomorphism; valuations are enumerated bit-parallel, one
// bit per valuation. Shares nothing with the embedding or the evaluator
// beyond reading the term structure.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "herm/embedding.hpp"
#include "herm/term.hpp"

namespace herm::testing {

struct KripkeFrame {
  int n = 1;
  std::uint32_t rel = 0;  // bit i*n+j set when world i sees world j
  bool sees(int i, int j) const { return rel >> (i * n + j) & 1u; }
};

inline bool frame_in_class(const KripkeFrame& f, const LogicSpec& spec) {
  for (int i = 0; i < f.n; ++i) {
    if (spec.has(FrameCondition::Reflexive) && !f.sees(i, i)) return false;
    for (int j = 0; j < f.n; ++j) {
      if (spec.has(FrameCondition::Symmetric) && f.sees(i, j) && !f.sees(j, i)) return false;
      for (int k = 0; k < f.n; ++k) {
        if (spec.has(FrameCondition::Transitive) && f.sees(i, j) && f.sees(j, k) && !f.sees(i, k)) return false;
        if (spec.has(FrameCondition::Euclidean) && f.sees(i, j) && f.sees(i, k) && !f.sees(j, k)) return false;
      }
    }
  }
  return true;
}

// One representative per isomorphism class of frames with n worlds.
inline std::vector<KripkeFrame> frames_up_to_iso(int n, const LogicSpec& spec) {
  std::vector<int> perm(n);
  std::vector<std::vector<int>> perms;
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<KripkeFrame> out;
  const std::uint32_t count = 1u << (n * n);
  for (std::uint32_t rel = 0; rel < count; ++rel) {
    KripkeFrame f{n, rel};
    if (!frame_in_class(f, spec)) continue;
    bool canonical = true;
    for (const auto& p : perms) {
      std::uint32_t image = 0;
      for (int i = 0; i < n && canonical; ++i) {
        for (int j = 0; j < n; ++j) {
          if (f.sees(i, j)) image |= 1u << (p[i] * n + p[j]);
        }
      }
      if (image < rel) {
        canonical = false;
        break;
      }
    }
    if (canonical) out.push_back(f);
  }
  return out;
}

class KripkeOracle {
 public:
  explicit KripkeOracle(const Term& formula) { root_ = flatten(formula); }

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int modal_count() const {
    return static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(),
                                          [](const Node& n) { return n.kind == K::Box || n.kind == K::Dia; }));
  }

  // True when the formula holds at every world under every valuation.
  bool valid_on(const KripkeFrame& f) const {
    const int bits = atom_count() * f.n;
    if (bits > 24) throw std::runtime_error("valuation space too large");
    const std::size_t words = bits <= 6 ? 1 : std::size_t(1) << (bits - 6);
    const std::uint64_t tail = bits >= 6 ? ~0ull : (1ull << (1u << bits)) - 1;
    const std::size_t stride = words * f.n;
    buf_.assign(nodes_.size() * stride, 0);
    auto at = [&](int node, int w) { return buf_.data() + node * stride + w * words; };
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      const Node& nd = nodes_[k];
      for (int w = 0; w < f.n; ++w) {
        std::uint64_t* out = at(static_cast<int>(k), w);
        const std::uint64_t* x = nd.a >= 0 && nd.kind != K::Atom ? at(nd.a, w) : nullptr;
        const std::uint64_t* y = nd.b >= 0 ? at(nd.b, w) : nullptr;
        switch (nd.kind) {
          case K::Top: std::fill(out, out + words, ~0ull); break;
          case K::Bot: break;
          case K::Atom: {
            const int bit = nd.a * f.n + w;
            for (std::size_t i = 0; i < words; ++i) out[i] = pattern(bit, i);
            break;
          }
          case K::Not:
            for (std::size_t i = 0; i < words; ++i) out[i] = ~x[i];
            break;
          case K::And:
            for (std::size_t i = 0; i < words; ++i) out[i] = x[i] & y[i];
            break;
          case K::Or:
            for (std::size_t i = 0; i < words; ++i) out[i] = x[i] | y[i];
            break;
          case K::Imp:
            for (std::size_t i = 0; i < words; ++i) out[i] = ~x[i] | y[i];
            break;
          case K::Iff:
            for (std::size_t i = 0; i < words; ++i) out[i] = ~(x[i] ^ y[i]);
            break;
          case K::Box:
            std::fill(out, out + words, ~0ull);
            for (int v = 0; v < f.n; ++v) {
              if (!f.sees(w, v)) continue;
              const std::uint64_t* z = at(nd.a, v);
              for (std::size_t i = 0; i < words; ++i) out[i] &= z[i];
            }
            break;
          case K::Dia:
            for (int v = 0; v < f.n; ++v) {
              if (!f.sees(w, v)) continue;
              const std::uint64_t* z = at(nd.a, v);
              for (std::size_t i = 0; i < words; ++i) out[i] |= z[i];
            }
            break;
        }
      }
    }
    for (int w = 0; w < f.n; ++w) {
      const std::uint64_t* v = at(root_, w);
      for (std::size_t i = 0; i < words; ++i) {
        const std::uint64_t need = words == 1 ? tail : ~0ull;
        if ((v[i] & need) != need) return false;
      }
    }
    return true;
  }

  // Smallest world count (up to max_worlds) with a falsifying frame in the
  // class, or 0 when the formula holds on every such frame.
  int countermodel_size(const LogicSpec& spec, int max_worlds) const {
    for (int n = 1; n <= max_worlds; ++n) {
      for (const auto& f : cached_frames(n, spec)) {
        if (!valid_on(f)) return n;
      }
    }
    return 0;
  }

 private:
  enum class K { Top, Bot, Atom, Not, And, Or, Imp, Iff, Box, Dia };
  struct Node {
    K kind;
    int a = -1, b = -1;
  };

  static std::uint64_t pattern(int bit, std::size_t word) {
    static const std::uint64_t low[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                         0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    if (bit < 6) return low[bit];
    return (word >> (bit - 6) & 1) ? ~0ull : 0ull;
  }

  static const std::vector<KripkeFrame>& cached_frames(int n, const LogicSpec& spec) {
    static std::map<std::string, std::vector<KripkeFrame>> cache;
    const std::string key = std::to_string(n) + spec.str();
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, frames_up_to_iso(n, spec)).first;
    return it->second;
  }

  int push(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int flatten(const Term& t) {
    if (t.ty().is_lifted() && t.kind() == TermKind::Lam) {
      const Term& body = t.body();
      if (body.is_logical() && body.op() == LogicalOp::True) return push({K::Top});
      if (body.is_logical() && body.op() == LogicalOp::False) return push({K::Bot});
    }
    const Term& h = t.head();
    const auto args = t.spine_args();
    if (h.kind() != TermKind::Const) throw std::runtime_error("not propositional modal: " + t.key());
    if (!h.is_logical()) {
      if (!args.empty() || !t.ty().is_lifted()) throw std::runtime_error("not an atom: " + t.key());
      auto it = atoms_.find(h.name());
      if (it == atoms_.end()) it = atoms_.emplace(h.name(), static_cast<int>(atoms_.size())).first;
      return push({K::Atom, it->second});
    }
    auto unary = [&](K k) { return push({k, flatten(args.at(0))}); };
    auto binary = [&](K k) {
      const int a = flatten(args.at(0));
      const int b = flatten(args.at(1));
      return push({k, a, b});
    };
    switch (h.op()) {
      case LogicalOp::MNot: return unary(K::Not);
      case LogicalOp::MAnd: return binary(K::And);
      case LogicalOp::MOr: return binary(K::Or);
      case LogicalOp::MImplies: return binary(K::Imp);
      case LogicalOp::MIff: return binary(K::Iff);
      case LogicalOp::Box: return unary(K::Box);
      case LogicalOp::Dia: return unary(K::Dia);
      default: break;
    }
    throw std::runtime_error("not propositional modal: " + t.key());
  }

  std::vector<Node> nodes_;
  std::map<std::string, int> atoms_;
  int root_ = -1;
  mutable std::vector<std::uint64_t> buf_;
};

}  // namespace herm::testing
