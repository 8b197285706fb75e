#include "delone/choquet.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "delone/patch_io.hpp"

namespace delone::choquet {

using delone::to_string;

namespace {

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::string one_based(std::size_t n, std::size_t j) {
  return "(n=" + std::to_string(n) + ", j=" + std::to_string(j + 1) + ")";
}

IntMatrix product_upto(const ChoquetSeq& seq, std::size_t n) {
  // A_1 ... A_n; identity for n = 0
  IntMatrix P = IntMatrix::identity(seq.k.at(0));
  for (std::size_t i = 0; i < n; ++i) P = P * seq.A.at(i);
  return P;
}

void check_sizes(const ChoquetSeq& seq) {
  if (seq.p.empty()) throw DomainError("empty p-sequence");
  if (seq.r.size() + 1 < seq.p.size()) throw DomainError("r-sequence shorter than p-sequence");
  if (seq.k.size() < seq.p.size()) throw DomainError("k-sequence shorter than p-sequence");
}

}  // namespace

BigInt ChoquetSeq::l(std::size_t n) const {
  const BigInt& pn = p.at(n - 1);
  const BigInt& pn1 = p.at(n);
  if (pn1 % (2 * pn) != 0) throw DomainError("p_{n+1} not a multiple of 2 p_n at n=" + std::to_string(n));
  return pn1 / (2 * pn) - 1;
}

ChoquetSeq p_sequence(std::optional<std::size_t> dimension, std::size_t n_max, std::size_t k) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  ChoquetSeq seq;
  seq.dimension = dimension;
  seq.p.push_back(BigInt(std::max<std::size_t>(4, dimension.value_or(4))));
  for (std::size_t n = 1; n <= n_max; ++n) {
    const BigInt rn = factorial(n);
    seq.r.push_back(rn);
    seq.p.push_back(2 * rn * seq.p.back() * seq.p.back());
  }
  seq.k.assign(seq.p.size(), k);
  return seq;
}

ChoquetSeq make_sequence(std::vector<BigInt> p, std::vector<BigInt> r, std::size_t k,
                         std::optional<std::size_t> dimension) {
  ChoquetSeq seq;
  seq.p = std::move(p);
  seq.r = std::move(r);
  seq.k.assign(seq.p.size(), k);
  seq.dimension = dimension;
  check_sizes(seq);
  for (std::size_t n = 1; n < seq.p.size(); ++n) (void)seq.l(n);
  return seq;
}

bool ojo_holds(const ChoquetSeq& seq, std::size_t n) {
  const Rational kn(static_cast<long long>(seq.k.at(n - 1)));
  if (kn <= 2) return false;
  const Rational pn(seq.p.at(n - 1));
  const Rational rhs = (kn - 1) * pn * pn / (kn - 2) * (Rational(seq.r.at(n - 1)) / pn + 1);
  return Rational(seq.p.at(n)) > rhs;
}

SchemeReport validate_matrices(const ChoquetSeq& seq) {
  check_sizes(seq);
  SchemeReport rep;
  rep.properties.reserve(16);
  auto add = [&](std::string name) -> PropertyResult& {
    rep.properties.push_back({std::move(name), true, {}});
    return rep.properties.back();
  };
  auto fail = [](PropertyResult& pr, const std::string& w) {
    if (pr.passed) pr.witness = w;
    pr.passed = false;
  };

  const std::size_t N = seq.A.size();
  {
    auto& k1 = add("p_1 size");
    const BigInt want = std::max<std::size_t>(4, seq.dimension.value_or(4));
    if (seq.p[0] != want) fail(k1, "p_1 = " + to_string(seq.p[0]) + ", expected " + to_string(want));
  }
  auto& k2 = add("k_n >= 3");
  auto& k3 = add("first row ones");
  auto& k4 = add("column sums");
  auto& k5 = add("entries >= k_{n+1}");
  auto& k6 = add("entries >= r_n p_{n+1}");
  auto& shape = add("shape");
  auto& rp = add("r_n p_n < p_{n+1}");
  auto& ojo = add("ojo");

  for (std::size_t i = 0; i < seq.k.size(); ++i)
    if (seq.k[i] < 3) fail(k2, "k_" + std::to_string(i + 1) + " = " + std::to_string(seq.k[i]));
  if (seq.p.size() < N + 1) fail(shape, "p-sequence shorter than matrix list");

  for (std::size_t n = 1; n <= N && n < seq.p.size(); ++n) {
    const IntMatrix& A = seq.A[n - 1];
    if (A.rows() != seq.k[n - 1] || A.cols() != seq.k[n]) {
      fail(shape, "A_" + std::to_string(n) + " is " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
      continue;
    }
    const BigInt qn = seq.q(n), qn1 = seq.q(n + 1);
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (A(0, j) != 1) fail(k3, one_based(n, j) + " A(1,j) = " + to_string(A(0, j)));
      const BigInt s = A.column_sum(j);
      if (s * qn != qn1) fail(k4, one_based(n, j) + " column sum " + to_string(s));
    }
    BigInt mn = -1;
    for (std::size_t i = 1; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j)
        if (mn < 0 || A(i, j) < mn) mn = A(i, j);
    if (mn >= 0 && mn < BigInt(seq.k[n]))
      fail(k5, "n=" + std::to_string(n) + " min " + to_string(mn) + " < k_{n+1}");
    // sqrt(q_{n+1}) = p_{n+1}
    const BigInt bound = seq.r.at(n - 1) * seq.p[n];
    if (mn >= 0 && mn < bound)
      fail(k6, "n=" + std::to_string(n) + " min " + to_string(mn) + " < " + to_string(bound));
  }
  for (std::size_t n = 1; n < seq.p.size(); ++n) {
    if (!(seq.r[n - 1] * seq.p[n - 1] < seq.p[n])) fail(rp, "n=" + std::to_string(n));
    if (!ojo_holds(seq, n)) fail(ojo, "n=" + std::to_string(n));
  }
  rep.properties.push_back({"separation", true, "not machine-checkable - diagnostics only"});
  return rep;
}

std::vector<IntMatrix> make_finite_dim_matrices(std::size_t e, const std::vector<LevelSize>& sizes) {
  if (e < 2) throw DomainError("need at least 2 extreme points");
  const std::size_t k = e + 1;
  std::vector<IntMatrix> out;
  for (std::size_t n = 0; n < sizes.size(); ++n) {
    const BigInt T = std::max(BigInt(k), sizes[n].threshold);
    const BigInt b = T + 1;
    const BigInt x = sizes[n].q_ratio - BigInt(e) * b;
    if (x < 0)
      throw DomainError("infeasible sizes at n=" + std::to_string(n + 1) + ": column sum " +
                        to_string(sizes[n].q_ratio) + " < " + to_string(BigInt(e) * b));
    // e x e core b J + x I, then row 1 of ones and a duplicated first column
    IntMatrix A(k, k);
    for (std::size_t col = 0; col < k; ++col) {
      const std::size_t c = col == 0 ? 0 : col - 1;
      A(0, col) = 1;
      for (std::size_t i = 0; i < e; ++i) {
        BigInt v = b + (i == c ? x : BigInt(0));
        if (i == 0) v -= 1;
        A(i + 1, col) = v;
      }
    }
    out.push_back(std::move(A));
  }
  return out;
}

void make_finite_dim_matrices(ChoquetSeq& seq, std::size_t e) {
  std::vector<LevelSize> sizes;
  for (std::size_t n = 1; n < seq.p.size(); ++n) {
    const BigInt G = seq.p[n] / seq.p[n - 1];
    sizes.push_back({G * G, seq.r.at(n - 1) * seq.p[n]});
  }
  seq.A = make_finite_dim_matrices(e, sizes);
  seq.k.assign(seq.p.size(), e + 1);
}

std::vector<Patch> build_initial_patches_v(std::int64_t p1, std::size_t k1, std::size_t i0) {
  if (p1 < 4 || p1 % 2 != 0) throw DomainError("p1 must be even and >= 4");
  if (k1 < 3) throw DomainError("k1 must be >= 3");
  if (i0 < 1 || i0 > k1) throw DomainError("i0 outside [1, k1]");
  if (static_cast<std::int64_t>(k1) >= p1) throw DomainError("k1 too large for p1");
  std::vector<Patch> out;
  for (std::size_t k = 1; k <= k1; ++k) {
    Patch P(p1, p1);
    if (k == i0) {
      P = Patch::full(p1, p1);
      P.set(p1 - 1, p1 - 1, false);
    } else {
      for (std::int64_t x = 0; x < p1; ++x)
        for (std::int64_t y = 0; y < p1; ++y)
          if (x % 2 == 0 || y == 0) P.set(x, y);
      P.set(1, static_cast<std::int64_t>(k));
    }
    out.push_back(std::move(P));
  }
  return out;
}

StripeRule parse_stripe_rule(const std::string& name) {
  if (name == "literal") return StripeRule::literal;
  if (name == "scaled") return StripeRule::scaled;
  if (name == "square_blocks") return StripeRule::square_blocks;
  throw DomainError("unknown stripe rule: " + name);
}

std::string to_string(StripeRule rule) {
  switch (rule) {
    case StripeRule::literal: return "literal";
    case StripeRule::scaled: return "scaled";
    case StripeRule::square_blocks: return "square_blocks";
  }
  return "?";
}

bool stripe_takes_j(StripeRule rule, std::int64_t s, const BigInt& p_n, const BigInt& p_next, const BigInt& r_n) {
  BigInt v;
  switch (rule) {
    case StripeRule::literal: v = floor_div(BigInt(s) * p_next, r_n); break;
    case StripeRule::scaled: v = floor_div(BigInt(s) * p_n * r_n, p_next); break;
    case StripeRule::square_blocks: {
      const BigInt l = p_next / (2 * p_n) - 1;
      v = floor_div(BigInt(s) + l + 1, r_n);
      break;
    }
  }
  return v % 2 == 0;
}

void build_level_v(HierarchySpec& spec, const IntMatrix& A_n, const BigInt& p_n, const BigInt& p_next,
                   const BigInt& r_n, std::uint32_t j_n, std::uint32_t j_n_prime, StripeRule rule) {
  const std::size_t top = spec.depth();
  const std::size_t kn = spec.patch_count(top);
  if (BigInt(spec.width(top)) != p_n || BigInt(spec.height(top)) != p_n)
    throw DomainError("top level is not p_n x p_n");
  if (A_n.rows() != kn) throw DomainError("A_n has " + std::to_string(A_n.rows()) + " rows, level has " +
                                          std::to_string(kn) + " patches");
  if (p_next % (2 * p_n) != 0) throw DomainError("p_{n+1} not a multiple of 2 p_n");
  if (j_n == 0 || j_n_prime == 0 || j_n >= kn || j_n_prime >= kn || j_n == j_n_prime)
    throw DomainError("j_n, j'_n must be distinct ids >= 2");
  if (r_n < 1) throw DomainError("r_n must be positive");
  const std::int64_t G = to_int64(p_next / p_n);
  const std::int64_t l = G / 2 - 1;
  const std::int64_t rows = to_int64(r_n);
  if (rows >= G) throw DomainError("stripe infeasible: r_n p_n >= p_{n+1}");
  const std::size_t k_next = A_n.cols();
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < k_next) ++bits;
  if (bits > kn) throw DomainError("too many output patches for the distinctness device");

  constexpr std::uint32_t unset = 0xFFFFFFFFu;
  std::vector<Arrangement> arrs;
  for (std::size_t k = 0; k < k_next; ++k) {
    Arrangement a(G, G, unset);
    a.set(G - 1, G - 1, 0);
    for (std::int64_t row = 0; row < rows; ++row)
      for (std::int64_t col = 0; col < G; ++col)
        a.set(row, col, stripe_takes_j(rule, col - l - 1, p_n, p_next, r_n) ? j_n : j_n_prime);

    std::vector<BigInt> need(kn);
    for (std::size_t i = 0; i < kn; ++i) need[i] = A_n(i, k);
    BigInt total = 0;
    for (auto& v : need) total += v;
    if (total != BigInt(G) * G)
      throw DomainError("column " + std::to_string(k + 1) + " of A_n sums to " + to_string(total) +
                        ", expected " + std::to_string(G * G));
    std::vector<std::uint64_t> fixed(kn, 0);
    for (std::uint32_t id : a.cells())
      if (id != unset) ++fixed[id];
    for (std::size_t i = 0; i < kn; ++i) {
      need[i] -= fixed[i];
      if (need[i] < 0)
        throw DomainError("stripe infeasible: A_n(" + std::to_string(i + 1) + "," + std::to_string(k + 1) +
                          ") = " + to_string(A_n(i, k)) + " < " + std::to_string(fixed[i]) + " fixed blocks");
    }

    std::int64_t cell = 0;
    auto next_free = [&]() {
      while (cell < G * G && a.at(cell / G, cell % G) != unset) ++cell;
      return cell;
    };
    // first k_n free cells carry the bits of k
    for (std::size_t b = 0; b < kn; ++b) {
      const std::int64_t c = next_free();
      if (c >= G * G) throw DomainError("not enough free cells for the distinctness device");
      const std::uint32_t id = (b < bits && ((k >> b) & 1U)) ? j_n_prime : j_n;
      if (need[id] <= 0)
        throw DomainError("stripe infeasible: no free copies of patch " + std::to_string(id + 1) +
                          " left for the distinctness device in column " + std::to_string(k + 1));
      a.set(c / G, c % G, id);
      --need[id];
    }
    std::uint32_t id = 0;
    while (next_free() < G * G) {
      while (id < kn && need[id] == 0) ++id;
      a.set(cell / G, cell % G, id);
      --need[id];
    }
    arrs.push_back(std::move(a));
  }
  spec.add_level(std::move(arrs), GridCell{l + 1, l + 1}, false, "v-level rule=" + to_string(rule));
}

SeparationWitness find_separating_coordinates(const ChoquetSeq& seq, std::size_t depth) {
  if (depth < 1 || depth > seq.A.size()) throw DomainError("depth outside the matrix list");
  if (seq.p.size() < depth + 1) throw DomainError("p-sequence too short");
  std::vector<RatMatrix> norm;
  IntMatrix P = IntMatrix::identity(seq.k.at(0));
  for (std::size_t n = 1; n <= depth; ++n) {
    P = P * seq.A[n - 1];
    RatMatrix R = to_rational(P);
    const Rational q(seq.q(n + 1));
    for (std::size_t i = 0; i < R.rows(); ++i)
      for (std::size_t j = 0; j < R.cols(); ++j) R(i, j) /= q;
    norm.push_back(std::move(R));
  }
  auto row_range = [](const RatMatrix& R, std::size_t i) {
    std::size_t jmax = 1, jmin = 1;
    for (std::size_t j = 1; j < R.cols(); ++j) {
      if (R(i, j) > R(i, jmax)) jmax = j;
      if (R(i, j) < R(i, jmin)) jmin = j;
    }
    return std::pair{jmax, jmin};
  };
  const RatMatrix& deep = norm.back();
  if (deep.cols() < 3) throw DomainError("need at least 3 columns");
  std::size_t i0 = 0;
  Rational best = -1;
  for (std::size_t i = 0; i < deep.rows(); ++i) {
    auto [jmax, jmin] = row_range(deep, i);
    const Rational a = deep(i, jmax) - deep(i, jmin);
    if (a > best) best = a, i0 = i;
  }
  if (best <= 0) throw DomainError("no separation found at this depth");

  SeparationWitness w;
  w.i0 = i0;
  {
    const std::uint32_t j1 = i0 >= 1 ? static_cast<std::uint32_t>(i0) : 1;
    const std::uint32_t j1p = j1 == 1 ? 2 : 1;
    w.j.emplace_back(j1, j1p);
  }
  for (std::size_t n = 0; n < depth; ++n) {
    auto [jmax, jmin] = row_range(norm[n], i0);
    const Rational hi = norm[n](i0, jmax), lo = norm[n](i0, jmin);
    if (hi == lo) throw DomainError("no separation found at this depth");
    w.j.emplace_back(static_cast<std::uint32_t>(jmax), static_cast<std::uint32_t>(jmin));
    w.spread.push_back(hi - lo);
    if (n == 0 || hi < w.dbar) w.dbar = hi;
    if (n == 0 || lo > w.dbar_prime) w.dbar_prime = lo;
  }
  if (!(w.dbar > w.dbar_prime)) throw DomainError("no separation found at this depth");
  return w;
}

BigInt patch_cardinality_formula(const ChoquetSeq& seq, const SeparationWitness& w, std::size_t n, std::size_t k) {
  if (n < 1) throw DomainError("n must be >= 1");
  const IntMatrix P = product_upto(seq, n - 1);
  const BigInt p1 = seq.p.at(0);
  const BigInt pn = seq.p.at(n - 1);
  const BigInt c1 = p1 * p1 / 2 - p1 / 2 - 2;
  const BigInt c2 = p1 * p1 / 2 + p1 / 2 + 1;
  return P(w.i0, k) * c1 + (pn * pn / (p1 * p1)) * c2;
}

std::pair<Rational, Rational> density_bounds(const ChoquetSeq& seq, const SeparationWitness& w) {
  const BigInt p1 = seq.p.at(0);
  const Rational c1(p1 * p1 / 2 - p1 / 2 - 2);
  const Rational c2 = Rational(p1 * p1 / 2 + p1 / 2 + 1) / Rational(p1 * p1);
  return {w.dbar * c1 + c2, w.dbar_prime * c1 + c2};
}

ChoquetBuild build_choquet_spec(const ChoquetSeq& seq, std::size_t depth, StripeRule rule) {
  ChoquetBuild b;
  b.rule = rule;
  b.witness = find_separating_coordinates(seq, depth);
  b.spec = HierarchySpec(build_initial_patches_v(to_int64(seq.p[0]), seq.k[0], b.witness.i0 + 1));
  for (std::size_t n = 1; n <= depth; ++n) {
    const auto [j, jp] = b.witness.j[n - 1];
    build_level_v(b.spec, seq.A[n - 1], seq.p[n - 1], seq.p[n], seq.r.at(n - 1), j, jp, rule);
  }
  return b;
}

SchemeReport validate_levels(const ChoquetBuild& build, const ChoquetSeq& seq) {
  SchemeReport rep;
  PropertyResult p1{"top corner", true, {}}, p1u{"corner unique", true, {}}, p2{"stripe", true, {}}, p3{"ids in range", true, {}},
      p4{"counts match", true, {}}, distinct{"distinct", true, {}};
  auto fail = [](PropertyResult& pr, const std::string& w) {
    if (pr.passed) pr.witness = w;
    pr.passed = false;
  };
  const HierarchySpec& spec = build.spec;
  for (std::size_t lev = 2; lev <= spec.depth(); ++lev) {
    const std::size_t n = lev - 1;
    const auto& L = spec.level(lev);
    const std::size_t kn = spec.patch_count(n);
    const auto [j, jp] = build.witness.j.at(n - 1);
    const BigInt& pn = seq.p.at(n - 1);
    const BigInt& pn1 = seq.p.at(n);
    const std::int64_t rows = to_int64(seq.r.at(n - 1));
    for (std::size_t k = 0; k < L.arrangements.size(); ++k) {
      const Arrangement& a = L.arrangements[k];
      const std::int64_t G = a.rows();
      const std::int64_t l = G / 2 - 1;
      const std::string tag = "level " + std::to_string(lev) + " patch " + std::to_string(k + 1);
      if (a.at(G - 1, G - 1) != 0) fail(p1, tag);
      for (std::uint32_t id : a.cells())
        if (id >= kn) fail(p3, tag + " id " + std::to_string(id + 1));
      const auto h = a.histogram(kn);
      if (h[0] != 1) fail(p1u, tag + " has " + std::to_string(h[0]) + " copies of patch 1");
      for (std::int64_t r = 0; r < rows; ++r)
        for (std::int64_t c = 0; c < G; ++c) {
          const std::uint32_t want = stripe_takes_j(build.rule, c - l - 1, pn, pn1, seq.r.at(n - 1)) ? j : jp;
          if (a.at(r, c) != want) fail(p2, tag + " cell (" + std::to_string(r) + "," + std::to_string(c) + ")");
        }
      for (std::size_t k2 = 0; k2 < k; ++k2)
        if (L.arrangements[k2] == a) fail(distinct, tag + " equals patch " + std::to_string(k2 + 1));
    }
    const IntMatrix counts = block_count_matrix(spec, n, lev);
    if (!(counts == seq.A.at(n - 1))) fail(p4, "level " + std::to_string(lev));
  }
  rep.properties = {p1, p1u, p2, p3, p4, distinct};
  return rep;
}

std::vector<std::vector<Rational>> measure_vectors(const ChoquetSeq& seq, std::size_t depth,
                                                   const std::vector<Rational>& terminal) {
  if (depth > seq.A.size()) throw DomainError("depth outside the matrix list");
  const std::size_t kt = depth == 0 ? seq.k.at(0) : seq.A[depth - 1].cols();
  if (terminal.size() != kt) throw DomainError("terminal outside simplex: wrong length");
  Rational sum = 0;
  for (const auto& v : terminal) {
    if (v < 0) throw DomainError("terminal outside simplex: negative entry");
    sum += v;
  }
  if (sum * Rational(seq.q(depth + 1)) != 1) throw DomainError("terminal outside simplex: q * sum != 1");
  std::vector<std::vector<Rational>> mu(depth + 1);
  mu[depth] = terminal;
  for (std::size_t n = depth; n >= 1; --n) {
    const IntMatrix& A = seq.A[n - 1];
    std::vector<Rational> v(A.rows(), Rational(0));
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t c = 0; c < A.cols(); ++c) v[i] += Rational(A(i, c)) * mu[n][c];
    mu[n - 1] = std::move(v);
  }
  return mu;
}

std::vector<std::vector<Rational>> measure_vectors(const ChoquetSeq& seq, std::size_t depth, const Terminal& t) {
  if (depth > seq.A.size()) throw DomainError("depth outside the matrix list");
  const std::size_t kt = depth == 0 ? seq.k.at(0) : seq.A[depth - 1].cols();
  const Rational q(seq.q(depth + 1));
  std::vector<Rational> term(kt, Rational(0));
  if (t.kind == Terminal::vertex) {
    if (t.index >= kt) throw DomainError("terminal outside simplex: vertex index");
    term[t.index] = 1 / q;
  } else {
    for (auto& v : term) v = 1 / (q * static_cast<long long>(kt));
  }
  return measure_vectors(seq, depth, term);
}

Rational recursion_residual(const ChoquetSeq& seq, const std::vector<std::vector<Rational>>& mu) {
  Rational worst = 0;
  for (std::size_t n = 1; n < mu.size(); ++n) {
    const IntMatrix& A = seq.A.at(n - 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
      Rational v = 0;
      for (std::size_t c = 0; c < A.cols(); ++c) v += Rational(A(i, c)) * mu[n].at(c);
      Rational d = mu[n - 1].at(i) - v;
      if (d < 0) d = -d;
      worst = std::max(worst, d);
    }
  }
  return worst;
}

std::vector<IntMatrix> read_matrices(std::istream& in) {
  io::LineReader rd(in);
  std::vector<IntMatrix> out;
  std::string line;
  while (rd.next(line)) {
    const auto tok = io::split_ws(line);
    if (tok.size() != 3 || tok[0] != "matrix") rd.fail("expected 'matrix <rows> <cols>'");
    const std::size_t rows = std::stoul(tok[1]), cols = std::stoul(tok[2]);
    IntMatrix M(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!rd.next(line)) rd.fail("truncated matrix");
      const auto vals = io::split_ws(line);
      if (vals.size() != cols) rd.fail("expected " + std::to_string(cols) + " entries");
      for (std::size_t j = 0; j < cols; ++j) {
        try {
          M(i, j) = BigInt(vals[j]);
        } catch (const std::exception&) {
          rd.fail("bad integer '" + vals[j] + "'");
        }
      }
    }
    out.push_back(std::move(M));
  }
  return out;
}

SimplexSpec read_simplex_spec(std::istream& in, const std::string& base_dir) {
  io::LineReader rd(in);
  SimplexSpec s;
  std::string line;
  auto big_list = [&](const std::vector<std::string>& tok) {
    std::vector<BigInt> v;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      try {
        v.emplace_back(tok[i]);
      } catch (const std::exception&) {
        rd.fail("bad integer '" + tok[i] + "'");
      }
    }
    return v;
  };
  while (rd.next(line)) {
    const auto tok = io::split_ws(line);
    if (tok[0] == "extreme_points" && tok.size() == 2) {
      s.extreme_points = std::stoul(tok[1]);
    } else if (tok[0] == "matrices" && tok.size() == 2) {
      std::string path = tok[1];
      if (!path.empty() && path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
      std::ifstream f(path);
      if (!f) rd.fail("cannot open " + path);
      s.matrices = read_matrices(f);
    } else if (tok[0] == "p") {
      s.p = big_list(tok);
    } else if (tok[0] == "r") {
      s.r = big_list(tok);
    } else if (tok[0] == "dimension" && tok.size() == 2) {
      if (tok[1] == "inf")
        s.infinite = true;
      else
        s.dimension = std::stoul(tok[1]);
    } else {
      rd.fail("unknown directive '" + tok[0] + "'");
    }
  }
  if (s.extreme_points.has_value() == !s.matrices.empty())
    throw io::ParseError("simplex spec needs exactly one of extreme_points / matrices");
  return s;
}

ChoquetSeq toy_sequence(std::size_t e, std::size_t depth) {
  if (depth < 1 || depth > 2) throw DomainError("toy sequence supports depth 1 or 2");
  std::vector<BigInt> p{4, 48, 4800};
  p.resize(depth + 1);
  ChoquetSeq seq = make_sequence(p, std::vector<BigInt>(depth, 1), e + 1, e - 1);
  make_finite_dim_matrices(seq, e);
  return seq;
}

std::string ledger(const ChoquetSeq& seq, const SchemeReport& k_report) {
  std::ostringstream os;
  os << "p";
  for (const auto& v : seq.p) os << ' ' << v;
  os << "\nr";
  for (const auto& v : seq.r) os << ' ' << v;
  os << "\nk";
  for (auto v : seq.k) os << ' ' << v;
  os << '\n';
  for (std::size_t n = 1; n < seq.p.size(); ++n) os << "l_" << n << ' ' << seq.l(n) << '\n';
  for (std::size_t n = 0; n < seq.A.size(); ++n) os << "A_" << n + 1 << '\n' << format_matrix(seq.A[n]);
  for (const auto& pr : k_report.properties)
    os << pr.name << '\t' << (pr.passed ? "pass" : "fail") << '\t' << pr.witness << '\n';
  return os.str();
}

}  // namespace delone::choquet
