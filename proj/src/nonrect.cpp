#include "delone/nonrect.hpp"

#include <cmath>
#include <sstream>

namespace delone::nonrect {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

BigInt ceil_rat(const Rational& q) { return delone::ceil(q); }

double log10_big(const BigInt& n) {
  const std::string s = n.str();
  const std::size_t keep = std::min<std::size_t>(s.size(), 17);
  return std::log10(std::stod(s.substr(0, keep))) + static_cast<double>(s.size() - keep);
}

}  // namespace

RectificationConstants rectification_constants(const Rational& L, const Rational& eps, const BigInt& P) {
  require(L >= 1, "L must be >= 1");
  require(eps > 0 && eps <= 1, "eps must lie in (0, 1]");
  require(P >= 1, "P must be a positive integer");
  const Rational L2 = L * L, e2 = eps * eps, p(P);
  RectificationConstants c;
  c.lambda = e2 / (108 * p * L2);
  c.M0 = ceil_rat(108 * p * p * L2 * (L + 4) / e2);
  c.N0 = 2 + ceil_rat(216 * L2 * p * (3 * L2 + p + 1) / e2);
  return c;
}

ExpansionConstants expansion_constants(const Rational& L, const Rational& d, const Rational& d_prime) {
  require(L >= 1, "L must be >= 1");
  require(d <= 1 && d > d_prime && d_prime > 0, "densities must satisfy 1 >= d > d' > 0");
  const Rational g = d - d_prime;
  const Rational ten10 = pow10(10), ten15 = pow10(15);
  ExpansionConstants c;
  c.lambda = pow(g, 3) / (ten10 * pow(L, 7));
  c.M_star = ceil_rat(ten15 * pow(L, 11) / pow(g, 4));
  c.N_star = ceil_rat(ten10 * pow(L, 10) / pow(g, 4));
  return c;
}

BigInt constant_p0(const Rational& L, const Rational& eps) {
  require(L >= 1, "L must be >= 1");
  require(eps > 0, "eps must be positive");
  const Rational Lh = 6 * L;
  const Rational a = 4 * pow(Lh, 4);
  const Rational b = 3 * Lh * Lh / eps;
  return ceil_rat(a > b ? a : b);
}

bool growth_condition_holds(const Rational& L, const Rational& lambda, const BigInt& ell) {
  require(lambda > 0, "lambda must be positive");
  require(ell >= 1, "ell must be positive");
  const Rational target = L * L;
  if (1 + lambda * Rational(ell) > target) return true;
  if (ell <= 20000) return pow(1 + lambda, static_cast<std::uint64_t>(ell)) > target;
  // binomial partial sums are exact lower bounds
  Rational term = 1, sum = 1;
  for (int k = 1; k <= 400; ++k) {
    term = term * Rational(ell - (k - 1)) / k * lambda;
    sum += term;
    if (sum > target) return true;
  }
  return false;
}

BigInt ell_min(const Rational& L, const Rational& lambda) {
  require(lambda > 0, "lambda must be positive");
  require(L >= 1, "L must be >= 1");
  BigInt ell = ceil_rat(L * L / lambda);
  if (ell < 1) ell = 1;
  if (!growth_condition_holds(L, lambda, ell))
    throw DomainError("growth condition (1+lambda)^ell > L^2 fails for ell = " + to_string(ell));
  return ell;
}

BigInt n_min(const BigInt& N_star, const Rational& d1, const Rational& d2, const Rational& d1p,
             const Rational& d2p) {
  require(d2 > d2p && d2p > d1p && d1p > d1, "densities must satisfy d2 > d2' > d1' > d1");
  Rational best = Rational(N_star) / 2;
  const Rational a = 1 / (d2 - d2p), b = 1 / (d1p - d1);
  if (a > best) best = a;
  if (b > best) best = b;
  BigInt N = ceil_rat(2 * best);
  if (N < 2) N = 2;
  if (N % 2 != 0) ++N;
  return N;
}

std::pair<Rational, Rational> thirds(const Rational& d1, const Rational& d2) {
  const Rational gap = (d2 - d1) / 3;
  return {d1 + gap, d2 - gap};
}

Patch initial_square(int which) {
  require(which == 1 || which == 2, "initial square index must be 1 or 2");
  if (which == 2) return Patch::full(5, 5, {-2, -2});
  return Patch::from_rows({"11111", "10101", "10101", "10101", "11111"}, {-2, -2}, true);
}

std::vector<Patch> initial_corners() {
  std::vector<Patch> out;
  for (int i = 1; i <= 2; ++i) {
    Patch c = initial_square(i).crop(0, 0, 4, 4);
    c.set_origin({0, 0});
    out.push_back(std::move(c));
  }
  return out;
}

Arrangement alternating_arrangement(std::int64_t blocks, std::int64_t N, std::uint32_t primary,
                                    std::uint32_t secondary) {
  require(blocks >= 1 && N >= 1, "blocks and N must be positive");
  const std::int64_t G = (2 * N + 1) * blocks;
  Arrangement a(G, G, primary);
  for (std::int64_t b = 1; b < 2 * N + 1; b += 2) a.fill(0, b * blocks, blocks, blocks, secondary);
  return a;
}

void append_step(HierarchySpec& spec, std::int64_t blocks, std::int64_t N, const std::string& note) {
  require(spec.patch_count(spec.depth()) == 2, "alternating step needs exactly two patches");
  require(blocks % 2 == 1, "m * P_star must be odd so that the frame is centred");
  const std::int64_t G = (2 * N + 1) * blocks;
  std::vector<Arrangement> arrs{alternating_arrangement(blocks, N, 0, 1), alternating_arrangement(blocks, N, 1, 0)};
  spec.add_level(std::move(arrs), {(G - 1) / 2, (G - 1) / 2}, true, note);
}

HierarchySpec build_new_patches(const Patch& Q1, const Patch& Q2, const BuildParams& params) {
  require(Q1.width() == Q1.height() && Q2.width() == Q2.height(), "patches must be square");
  require(Q1.width() == Q2.width(), "patches must have equal sides");
  const std::int64_t side = Q1.width() - 1;
  require(side >= 2 && side % 2 == 0, "side length must be even");
  require(Q1.boundary_is_full() && Q2.boundary_is_full(), "patches must contain all boundary points");
  const std::int64_t M = side / 2;
  for (const Patch* q : {&Q1, &Q2}) {
    Patch centred = *q;
    centred.set_origin({-M, -M});
    require(has_2z_property(centred), "patch lacks the 2Z-property when centred");
  }
  require(params.m >= 1 && params.m % 2 == 1, "m must be an odd positive integer");
  require(params.P_star >= 1 && params.N >= 1 && params.ell >= 1, "P_star, N and ell must be positive");
  Patch c1 = Q1.crop(0, 0, side, side), c2 = Q2.crop(0, 0, side, side);
  require(c2.count() > c1.count(), "corner of Q2 must hold more points than corner of Q1");
  c1.set_origin({0, 0});
  c2.set_origin({0, 0});
  HierarchySpec spec({c1, c2});
  for (std::int64_t i = 1; i <= params.ell; ++i)
    append_step(spec, params.m * params.P_star, params.N,
                "step 1." + std::to_string(i) + " N=" + std::to_string(params.N));
  return spec;
}

std::vector<Rational> level_densities(const HierarchySpec& spec, std::size_t level) {
  const IntMatrix counts = block_count_matrix(spec, 1, level);
  const auto& base = spec.level(1).patches;
  const BigInt area = BigInt(spec.width(level)) * spec.height(level);
  std::vector<Rational> out;
  for (std::size_t j = 0; j < counts.cols(); ++j) {
    BigInt pts = 0;
    for (std::size_t i = 0; i < counts.rows(); ++i) pts += counts(i, j) * base[i].count();
    out.emplace_back(pts, area);
  }
  return out;
}

Rational Schedule::L_at(std::size_t step) const {
  if (L.empty()) return Rational(1);
  return step <= L.size() ? L[step - 1] : L.back();
}

StepRecord plan_step(const HierarchySpec& spec, const Schedule& schedule, std::size_t s) {
  StepRecord rec;
  rec.step = s;
  rec.L = schedule.L_at(s);
  require(rec.L >= 1, "L_n must be >= 1");
  const auto dens = level_densities(spec, spec.depth());
  require(dens.size() == 2, "construction step needs exactly two patches");
  rec.d1 = dens[0];
  rec.d2 = dens[1];
  std::tie(rec.d1p, rec.d2p) = thirds(rec.d1, rec.d2);
  if (s == 1 && schedule.d1p) rec.d1p = *schedule.d1p;
  if (s == 1 && schedule.d2p) rec.d2p = *schedule.d2p;
  rec.n1 = schedule.n1_steps.count(s) != 0;
  rec.params = schedule.toy;
  if (rec.n1)
    rec.params.N = 1;
  else if (schedule.auto_N)
    rec.params.N = to_int64(n_min(schedule.N_star_toy, rec.d1, rec.d2, rec.d1p, rec.d2p));
  require(rec.params.m >= 1 && rec.params.m % 2 == 1, "m must be odd");
  require(rec.params.P_star >= 1 && rec.params.N >= 1 && rec.params.ell >= 1, "P_star, N and ell must be positive");
  return rec;
}

void apply_step(HierarchySpec& spec, StepRecord& rec) {
  rec.first_level = spec.depth() + 1;
  for (std::int64_t i = 1; i <= rec.params.ell; ++i) {
    std::string note = "step " + std::to_string(rec.step) + "." + std::to_string(i) + " N=" + std::to_string(rec.params.N);
    if (rec.n1) note += " control";
    append_step(spec, rec.params.m * rec.params.P_star, rec.params.N, note);
  }
}

ToyBuild build_toy_spec(const Schedule& schedule) {
  require(schedule.depth >= 1, "depth must be >= 1");
  ToyBuild out{HierarchySpec(initial_corners()), {}};
  for (std::size_t s = 1; s <= schedule.depth; ++s) {
    StepRecord rec = plan_step(out.spec, schedule, s);
    apply_step(out.spec, rec);
    out.steps.push_back(rec);
  }
  return out;
}

RigorousPlan build_rigorous_plan(const Schedule& schedule) {
  require(schedule.depth >= 1, "depth must be >= 1");
  RigorousPlan plan;
  Rational d1(10, 16), d2(1);
  std::optional<BigInt> exact_M = BigInt(2);
  double log_M = std::log10(2.0);
  for (std::size_t s = 1; s <= schedule.depth; ++s) {
    RigorousStep st;
    st.step = s;
    st.L = schedule.L_at(s);
    st.d1 = d1;
    st.d2 = d2;
    std::tie(st.d1p, st.d2p) = thirds(d1, d2);
    if (s == 1 && schedule.d1p) st.d1p = *schedule.d1p;
    if (s == 1 && schedule.d2p) st.d2p = *schedule.d2p;
    require(st.d2 > st.d2p && st.d2p > st.d1p && st.d1p > st.d1, "densities must satisfy d2 > d2' > d1' > d1");
    st.expansion = expansion_constants(st.L, st.d2p, st.d1p);
    st.eps = (st.d2p - st.d1p) / (40 * (2 + 5 * st.L));
    st.P_star = constant_p0(st.L, st.eps);
    st.n1 = schedule.n1_steps.count(s) != 0;
    st.N = st.n1 ? BigInt(1) : n_min(st.expansion.N_star, st.d1, st.d2, st.d1p, st.d2p);
    st.ell = ell_min(st.L, st.expansion.lambda);
    st.log10_half_side = log_M;
    if (exact_M) {
      BigInt m = ceil_div(st.expansion.M_star, 2 * st.P_star * *exact_M);
      if (m < 1) m = 1;
      if (m % 2 == 0) ++m;
      st.m = m;
    } else {
      st.m_from_log = true;
      const double need = log10_big(st.expansion.M_star) - std::log10(2.0) - log10_big(st.P_star);
      require(log_M > need + 1e-6, "half side too close to M_star for a log-scale decision");
      st.m = 1;
    }
    st.block_factor = (2 * st.N + 1) * st.m * st.P_star;
    // first iteration uses m, later ones m = 1 since the side already exceeds M_star
    const BigInt later = (2 * st.N + 1) * st.P_star;
    log_M += log10_big(st.block_factor) + (to_double(Rational(st.ell)) - 1) * log10_big(later);
    if (exact_M && st.ell <= 4 && log_M < 5000)
      exact_M = *exact_M * st.block_factor * boost::multiprecision::pow(later, static_cast<unsigned>(st.ell - 1));
    else
      exact_M.reset();
    d1 = st.d1p;
    d2 = st.d2p;
    plan.steps.push_back(st);
  }
  return plan;
}

std::string RigorousPlan::ledger() const {
  std::ostringstream out;
  out << "# symbolic construction plan (no materialization)\n";
  for (const auto& s : steps) {
    out << "step " << s.step << "\n";
    out << "  L = " << to_string(s.L) << "\n";
    out << "  density bounds d1 = " << to_string(s.d1) << ", d2 = " << to_string(s.d2) << "\n";
    out << "  interpolated d1' = " << to_string(s.d1p) << ", d2' = " << to_string(s.d2p) << "\n";
    out << "  lambda (expanding-pair estimate) = " << to_string(s.expansion.lambda) << "\n";
    out << "  M_star (expanding-pair estimate) = " << to_string(s.expansion.M_star) << "\n";
    out << "  N_star (expanding-pair estimate) = " << to_string(s.expansion.N_star) << "\n";
    out << "  eps (density comparison) = " << to_string(s.eps) << "\n";
    out << "  P_star (interior/exterior containment) = " << to_string(s.P_star) << "\n";
    out << "  m (odd, 2 m P_star M >= M_star) = " << to_string(s.m) << (s.m_from_log ? "  [log-scale]" : "") << "\n";
    out << "  N (alternation count" << (s.n1 ? ", forced control step" : ", density bracketing") << ") = " << to_string(s.N)
        << "\n";
    out << "  ell (growth condition (1+lambda)^ell > L^2) = " << to_string(s.ell) << "\n";
    out << "  side factor per iteration (2N+1) m P_star = " << to_string(s.block_factor) << "\n";
    out << "  log10 M before step = " << s.log10_half_side << "\n";
  }
  return out.str();
}

ChainReport expansion_chain_report(const HierarchySpec& spec, std::size_t top_level, const CandidateMap& f,
                                   const Rational& lambda, const Rational& L) {
  require(top_level >= 1 && top_level <= spec.depth(), "top level outside the hierarchy");
  require(lambda > 0 && L >= 1, "need lambda > 0 and L >= 1");
  const HatMap hat = hat_extend(f);
  auto image = [&](Point p) {
    auto it = hat.find(p);
    if (it == hat.end()) throw DomainError("window too small: " + to_string(p) + " not covered");
    return it->second;
  };
  auto exp_sq = [&](Point c, std::int64_t side) {
    return expansion_sq(image(c), image(c + Point{side, 0}), c, c + Point{side, 0});
  };

  ChainReport rep;
  rep.L = L;
  rep.lambda = lambda;
  rep.product_sq = 1;
  Point corner = spec.frame_origin(top_level);
  std::int64_t side = spec.width(top_level);
  rep.links.push_back({top_level, corner, side, exp_sq(corner, side), false});
  const Rational step_sq = (1 + lambda) * (1 + lambda);
  for (std::size_t n = top_level; n >= 2; --n) {
    const auto& lvl = spec.level(n);
    const std::int64_t cs = spec.width(n - 1);
    const std::int64_t cols = lvl.arrangements.front().cols();
    Point best_c = corner;
    Rational best = -1;
    for (std::int64_t k = 0; k < cols; ++k) {
      const Point c = corner + Point{k * cs, 0};
      Rational e = exp_sq(c, cs);
      if (e > best) {
        best = e;
        best_c = c;
      }
    }
    const bool skipped = lvl.note.find("control") != std::string::npos;
    const Rational parent = rep.links.back().expansion_sq;
    if (!skipped) {
      const Rational ratio = best / parent;
      rep.product_sq *= ratio;
      if (ratio >= step_sq) ++rep.steps_at_least_1_plus_lambda;
    }
    rep.links.back().skipped = skipped;
    corner = best_c;
    side = cs;
    rep.links.push_back({n - 1, corner, side, best, false});
  }
  rep.contradiction = rep.product_sq > pow(L, 4);
  return rep;
}

}  // namespace delone::nonrect
