#pragma once

// Deterministic random generators shared by the unit and acceptance
// suites.  Everything draws from an explicit engine so failures replay.

#include <random>
#include <vector>

#include "cusemi/elem.hpp"
#include "cusemi/stepfn.hpp"
#include "cusemi/xn.hpp"

namespace cusemi::testing {

using Rng = std::mt19937_64;

inline long rand_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// Random rational k/den with 0 <= k <= den.
inline Rational rand_grid_point(Rng& rng, long den) {
  return Rational(BigInt(rand_int(rng, 0, den)), BigInt(den));
}

/// Random open set with endpoints on the 1/den grid.
inline OpenSet rand_openset(Rng& rng, long den, int max_comps = 3) {
  std::vector<long> cuts;
  int comps = static_cast<int>(rand_int(rng, 0, max_comps));
  for (int i = 0; i < 2 * comps; ++i) cuts.push_back(rand_int(rng, 0, den));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> pieces;
  for (int i = 0; i + 1 < static_cast<int>(cuts.size()); i += 2) {
    long a = cuts[i], b = cuts[i + 1];
    if (a == b) continue;
    bool left_closed = a == 0 && rand_int(rng, 0, 1) == 0;
    bool right_closed = b == den && rand_int(rng, 0, 1) == 0;
    Cut lo = left_closed ? Cut::below() : Cut::at(Rational(BigInt(a), BigInt(den)));
    Cut hi = right_closed ? Cut::above() : Cut::at(Rational(BigInt(b), BigInt(den)));
    pieces.push_back(Interval::from_cuts(lo, hi));
  }
  return OpenSet::from_pieces(std::move(pieces));
}

/// Random basic element on the 1/den grid, as a sum of indicators.
inline StepFn rand_stepfn(Rng& rng, long den, int max_indicators = 3) {
  StepFn f;
  int m = static_cast<int>(rand_int(rng, 0, max_indicators));
  for (int i = 0; i < m; ++i) f = stepfn_add(f, StepFn::indicator(rand_openset(rng, den)));
  return f;
}

inline SemigroupElem rand_elem(Rng& rng, long arity, long den, int max_indicators = 3) {
  std::vector<StepFn> parts;
  for (long s = 0; s < arity; ++s) parts.push_back(rand_stepfn(rng, den, max_indicators));
  return SemigroupElem(std::move(parts));
}

/// Random valid pair of X_n, excluding the empty-image degenerates
/// (-inf,0) and (n,inf) when `nondegenerate` is set.
inline XnPair rand_pair(Rng& rng, long n, bool nondegenerate = false) {
  while (true) {
    long lo = rand_int(rng, -1, n);      // -1 encodes -inf
    long hi = rand_int(rng, lo + 1, n + 1);  // n+1 encodes +inf
    Omega a = lo < 0 ? Omega::neg_inf() : Omega::fin(static_cast<int32_t>(lo));
    Omega b = hi > n ? Omega::pos_inf() : Omega::fin(static_cast<int32_t>(hi));
    if (lo < 0 && hi > n) return {a, b};
    if (lo >= hi && !(lo < 0 || hi > n)) continue;
    XnPair p{a, b};
    if (nondegenerate) {
      bool empty_image = (a.is_neg() && b.finite() && b.v == 0) || (b.is_pos() && a.finite() && a.v == n);
      if (empty_image) continue;
    }
    return p;
  }
}

inline XnElem rand_xn(Rng& rng, long n, int max_pairs, bool nondegenerate = false) {
  XnElem w(n);
  int m = static_cast<int>(rand_int(rng, 0, max_pairs));
  for (int i = 0; i < m; ++i) w.add(rand_pair(rng, n, nondegenerate));
  return w;
}

/// All elements of X_n with at most max_pairs pairs (multisets over the
/// full pair alphabet).
inline std::vector<XnElem> enumerate_xn(long n, int max_pairs) {
  std::vector<XnPair> alphabet;
  for (long lo = -1; lo <= n; ++lo) {
    for (long hi = lo + 1; hi <= n + 1; ++hi) {
      if (lo == -1 && hi == n + 1) {
        alphabet.push_back({Omega::neg_inf(), Omega::pos_inf()});
      } else if (lo == -1) {
        alphabet.push_back({Omega::neg_inf(), Omega::fin(static_cast<int32_t>(hi))});
      } else if (hi == n + 1) {
        alphabet.push_back({Omega::fin(static_cast<int32_t>(lo)), Omega::pos_inf()});
      } else {
        alphabet.push_back({Omega::fin(static_cast<int32_t>(lo)), Omega::fin(static_cast<int32_t>(hi))});
      }
    }
  }
  std::vector<XnElem> out{XnElem(n)};
  // Multisets as nondecreasing index sequences.
  std::vector<std::vector<size_t>> frontier{{}};
  for (int sz = 1; sz <= max_pairs; ++sz) {
    std::vector<std::vector<size_t>> next;
    for (const auto& seq : frontier) {
      size_t start = seq.empty() ? 0 : seq.back();
      for (size_t i = start; i < alphabet.size(); ++i) {
        auto ext = seq;
        ext.push_back(i);
        XnElem w(n);
        for (size_t j : ext) w.add(alphabet[j]);
        out.push_back(w);
        next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// Random ascending << chain of length `len`, endpoints on the 1/den
/// grid: built top-down by one-cell retractions.
inline std::vector<StepFn> rand_ll_chain(Rng& rng, long den, int len, long bound) {
  // Top element: random grid function <= bound with comfortable margins.
  StepFn top;
  int m = static_cast<int>(rand_int(rng, 1, 2));
  for (int i = 0; i < m && top.sup() < bound; ++i)
    top = stepfn_add(top, StepFn::indicator(rand_openset(rng, den / 2 > 2 ? den / 2 : 2)));
  std::vector<StepFn> chain{top};
  Rational cell(BigInt(1), BigInt(den));
  while (static_cast<int>(chain.size()) < len) {
    StepFn next = stepfn_retract(chain.back(), cell);
    chain.push_back(next);
    if (next.is_zero()) break;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;  // increasing; chain[i] << chain[i+1], last <= bound
}

}  // namespace cusemi::testing
