#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace lorlab::oracle {

enum class Scale { B, F };
enum class Pair { BF, FB, BB, FF };
enum class Clause { i, ii, iii, iv, v, vi };

inline const char* clause_name(Clause c) {
  switch (c) {
    case Clause::i: return "i";
    case Clause::ii: return "ii";
    case Clause::iii: return "iii";
    case Clause::iv: return "iv";
    case Clause::v: return "v";
    case Clause::vi: return "vi";
  }
  return "?";
}

inline const char* pair_name(Pair p) {
  switch (p) {
    case Pair::BF: return "BF";
    case Pair::FB: return "FB";
    case Pair::BB: return "BB";
    case Pair::FF: return "FF";
  }
  return "?";
}

/// One side of an embedding: scale with exact exponents.  q and r may be
/// infinite; s and p are finite and p is positive.
struct SpaceSide {
  Scale scale;
  Rat s;
  Rat p;
  ExtRat q;
  ExtRat r;

  void validate() const {
    if (p.num <= 0) throw std::invalid_argument("SpaceSide: p must be positive and finite");
    if (!q.is_inf() && q.fin.num <= 0) throw std::invalid_argument("SpaceSide: q must be positive");
    if (!r.is_inf() && r.fin.num <= 0) throw std::invalid_argument("SpaceSide: r must be positive");
  }
};

struct EmbeddingQuery {
  SpaceSide source;
  SpaceSide target;
  Rat d = Rat::integer(1);

  Pair pair() const {
    if (source.scale == Scale::B)
      return target.scale == Scale::F ? Pair::BF : Pair::BB;
    return target.scale == Scale::B ? Pair::FB : Pair::FF;
  }
};

struct Verdict {
  bool holds = false;
  std::optional<Clause> clause;
  Pair theorem = Pair::BB;
};

namespace detail {

inline ExtRat min3(const Rat& a, const ExtRat& b, const ExtRat& c) {
  return min(ExtRat::of(a), min(b, c));
}
inline bool ge_all(const ExtRat& x, const Rat& a, const ExtRat& b, const ExtRat& c) {
  return x >= a && x >= b && x >= c;
}

/// Bitmask of satisfied clauses, bit k <-> clause (k+1).  The boolean verdict
/// is the disjunction; the reported clause is the lowest set bit.
inline unsigned satisfied_clauses(const EmbeddingQuery& qq) {
  qq.source.validate();
  qq.target.validate();
  if (qq.d.num <= 0) throw std::invalid_argument("EmbeddingQuery: d must be positive");
  const Rat s0 = qq.source.s, s1 = qq.target.s;
  const Rat p0 = qq.source.p, p1 = qq.target.p;
  const ExtRat q0 = qq.source.q, q1 = qq.target.q;
  const ExtRat r0 = qq.source.r, r1 = qq.target.r;
  const Rat gap = qq.d / p0 - qq.d / p1;
  const Rat sdiff = s0 - s1;
  const Rat zero = Rat::integer(0);
  const bool supercrit = sdiff > gap && gap > zero;
  const bool vertical = s0 > s1 && p0 == p1 && r0 <= r1;
  const bool critical = sdiff == gap && gap > zero;
  const bool flat = s0 == s1 && p0 == p1;

  unsigned mask = 0;
  auto set = [&mask](Clause c, bool cond) {
    if (cond) mask |= 1u << static_cast<unsigned>(c);
  };

  switch (qq.pair()) {
    case Pair::BF:
      set(Clause::i, supercrit);
      set(Clause::ii, vertical);
      set(Clause::iii, critical && q0 <= r1);
      set(Clause::iv, flat && q1 != p1 && r0 <= r1 && q0 <= min3(p1, q1, r1));
      set(Clause::v, flat && q1 == p1 && r0 <= p1 && r0 <= r1 && q0 <= min(ExtRat::of(p1), r1));
      set(Clause::vi, flat && q1 == p1 && r0 > p1 && r0 <= r1 && q0 < p1);
      break;
    case Pair::FB:
      set(Clause::i, supercrit);
      set(Clause::ii, vertical);
      set(Clause::iii, critical && r0 <= q1);
      set(Clause::iv, flat && q0 != p0 && r0 <= r1 && ge_all(q1, p0, q0, r0));
      set(Clause::v, flat && q0 == p0 && r1 >= p0 && r0 <= r1 && q1 >= p0 && q1 >= r0);
      set(Clause::vi, flat && q0 == p0 && r1 < p0 && r0 <= r1 && q1 > p0);
      break;
    case Pair::BB:
      set(Clause::i, supercrit);
      set(Clause::ii, vertical);
      set(Clause::iii, critical && q0 <= q1);
      set(Clause::iv, flat && r0 <= r1 && q0 <= q1);
      break;
    case Pair::FF:
      set(Clause::i, supercrit);
      set(Clause::ii, vertical);
      set(Clause::iii, critical && r0 <= r1);
      set(Clause::iv, flat && r0 <= r1 && q0 <= q1);
      break;
  }
  return mask;
}

}  // namespace detail

/// Exact decision for the four embedding theorems.  Clauses are evaluated as
/// an exact disjunction over rationals (infinity as supremum element); the
/// reported clause is the first satisfied one in order (i) -> (vi).
inline Verdict decide(const EmbeddingQuery& q) {
  Verdict v;
  v.theorem = q.pair();
  const unsigned mask = detail::satisfied_clauses(q);
  v.holds = mask != 0;
  if (v.holds) {
    for (unsigned bit = 0; bit < 6; ++bit) {
      if (mask & (1u << bit)) {
        v.clause = static_cast<Clause>(bit);
        break;
      }
    }
  }
  return v;
}

/// True iff evaluating the clauses in reversed order yields the same holds
/// bit (it always must; exposed for the disjointness sanity test).
inline bool order_independent(const EmbeddingQuery& q) {
  const unsigned mask = detail::satisfied_clauses(q);
  bool fwd = mask != 0, rev = false;
  for (int bit = 5; bit >= 0; --bit)
    if (mask & (1u << bit)) rev = true;
  return fwd == rev;
}

struct SelfTestReport {
  long checked = 0;
  long violations = 0;
  std::string first_violation;
};

namespace detail {

inline std::vector<EmbeddingQuery> relaxations(const EmbeddingQuery& q) {
  std::vector<EmbeddingQuery> out;
  const Rat half = Rat::of(1, 2);
  {
    EmbeddingQuery r = q;  // decrease s1
    r.target.s = r.target.s - half;
    out.push_back(r);
  }
  {
    EmbeddingQuery r = q;  // increase s0
    r.source.s = r.source.s + half;
    out.push_back(r);
  }
  {
    EmbeddingQuery r = q;  // increase r1
    r.target.r = r.target.r.is_inf() ? r.target.r : ExtRat::of(r.target.r.fin + Rat::integer(1));
    out.push_back(r);
    r.target.r = ExtRat::infinity();
    out.push_back(r);
  }
  {
    EmbeddingQuery r = q;  // increase q1
    r.target.q = r.target.q.is_inf() ? r.target.q : ExtRat::of(r.target.q.fin + Rat::integer(1));
    out.push_back(r);
    r.target.q = ExtRat::infinity();
    out.push_back(r);
  }
  {
    EmbeddingQuery r = q;  // decrease r0
    if (!r.source.r.is_inf()) r.source.r = ExtRat::of(r.source.r.fin * half);
    out.push_back(r);
  }
  {
    EmbeddingQuery r = q;  // decrease q0
    if (!r.source.q.is_inf()) r.source.q = ExtRat::of(r.source.q.fin * half);
    out.push_back(r);
  }
  return out;
}

inline std::string describe(const EmbeddingQuery& q) {
  auto side = [](const SpaceSide& s) {
    return std::string(s.scale == Scale::B ? "B" : "F") + "^" + s.s.str() + "_" + s.q.str() +
           "[L^{" + s.p.str() + "," + s.r.str() + "}]";
  };
  return side(q.source) + " -> " + side(q.target) + " (d=" + q.d.str() + ")";
}

}  // namespace detail

/// Every relaxation of a holding embedding (shrink source, enlarge target)
/// must still hold.  Raising r0 enlarges the source and is excluded.
inline SelfTestReport self_test_monotonicity(const std::vector<EmbeddingQuery>& grid) {
  SelfTestReport rep;
  for (const auto& q : grid) {
    if (!decide(q).holds) continue;
    for (const auto& relaxed : detail::relaxations(q)) {
      ++rep.checked;
      if (!decide(relaxed).holds) {
        ++rep.violations;
        if (rep.first_violation.empty())
          rep.first_violation = detail::describe(q) + " relaxed to " + detail::describe(relaxed);
      }
    }
  }
  return rep;
}

/// decide(X->Y) and decide(Y->Z) must imply decide(X->Z), for every
/// combination of scales along the triple.
inline SelfTestReport self_test_transitivity(const std::vector<std::array<SpaceSide, 3>>& triples,
                                             const Rat& d) {
  SelfTestReport rep;
  for (const auto& t : triples) {
    EmbeddingQuery xy{t[0], t[1], d};
    EmbeddingQuery yz{t[1], t[2], d};
    EmbeddingQuery xz{t[0], t[2], d};
    ++rep.checked;
    if (decide(xy).holds && decide(yz).holds && !decide(xz).holds) {
      ++rep.violations;
      if (rep.first_violation.empty())
        rep.first_violation = detail::describe(xy) + " and " + detail::describe(yz) +
                              " but not " + detail::describe(xz);
    }
  }
  return rep;
}

/// The two-step chain B^{s3}_1[L^{d/s3}] -> F^{s2}_q[L^{d/s2,1}] ->
/// B^{s1}_1[L^{d/s1}] for 0 < s1 < s2 < s3 < d.
inline bool check_appendixA_chain(const Rat& s1, const Rat& s2, const Rat& s3, const Rat& d,
                                  const ExtRat& q) {
  const Rat zero = Rat::integer(0);
  if (!(zero < s1 && s1 < s2 && s2 < s3 && s3 < d))
    throw std::invalid_argument("check_appendixA_chain: need 0 < s1 < s2 < s3 < d");
  const Rat one = Rat::integer(1);
  SpaceSide b3{Scale::B, s3, d / s3, ExtRat::of(one), ExtRat::of(d / s3)};
  SpaceSide f2{Scale::F, s2, d / s2, q, ExtRat::of(one)};
  SpaceSide b1{Scale::B, s1, d / s1, ExtRat::of(one), ExtRat::of(d / s1)};
  return decide({b3, f2, d}).holds && decide({f2, b1, d}).holds;
}

}  // namespace lorlab::oracle
